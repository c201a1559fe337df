use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::ParamPath;
use crate::analytic::{analyze, SolverOptions};
use crate::error::Error;
use crate::model::ScenarioConfig;
use crate::sim::run_trials;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    Analytic,
    Simulate,
    #[default]
    Both,
}

impl Mode {
    pub fn analytic(self) -> bool {
        matches!(self, Mode::Analytic | Mode::Both)
    }

    pub fn simulate(self) -> bool {
        matches!(self, Mode::Simulate | Mode::Both)
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "analytic" => Ok(Mode::Analytic),
            "simulate" => Ok(Mode::Simulate),
            "both" => Ok(Mode::Both),
            _ => Err(Error::Parse(format!("mode `{s}` is not analytic|simulate|both"))),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Analytic => "analytic",
            Mode::Simulate => "simulate",
            Mode::Both => "both",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepAxis {
    pub param: ParamPath,
    /// Column label for plots, e.g. `md1` or `m_surgical`.
    pub label: String,
    pub values: Vec<f64>,
}

impl SweepAxis {
    pub fn new(param: ParamPath, label: impl Into<String>, values: Vec<f64>) -> Self {
        Self {
            param,
            label: label.into(),
            values,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub base: ScenarioConfig,
    /// One or two axes; the grid is their Cartesian product, first axis outermost.
    pub axes: Vec<SweepAxis>,
    pub trials: usize,
    pub mode: Mode,
    pub solver: SolverOptions,
    /// Record per-point wall time. Off by default so output is reproducible.
    pub timing: bool,
    /// Free-form metadata carried into the CSV comment header.
    pub notes: Vec<String>,
}

impl SweepSpec {
    pub fn check(&self) -> Result<(), Error> {
        self.base.validate()?;
        if self.axes.is_empty() || self.axes.len() > 2 {
            return Err(Error::Parse(format!("a sweep needs one or two axes, got {}", self.axes.len())));
        }
        for axis in &self.axes {
            axis.param.check(&self.base)?;
            if axis.values.is_empty() {
                return Err(Error::Parse(format!("axis `{}` has no values", axis.label)));
            }
        }
        if self.mode.simulate() && self.trials == 0 {
            return Err(Error::Parse("simulation needs at least one trial".into()));
        }
        Ok(())
    }

    /// Grid points in emission order.
    pub fn points(&self) -> Vec<(f64, Option<f64>)> {
        let first = &self.axes[0].values;
        match self.axes.get(1) {
            None => first.iter().map(|a| (*a, None)).collect(),
            Some(second) => first
                .iter()
                .flat_map(|a| second.values.iter().map(move |b| (*a, Some(*b))))
                .collect(),
        }
    }

    pub fn scenario_at(&self, point: (f64, Option<f64>)) -> Result<ScenarioConfig, Error> {
        let mut cfg = self.base.clone();
        self.axes[0].param.apply(&mut cfg, point.0)?;
        if let (Some(axis), Some(v)) = (self.axes.get(1), point.1) {
            axis.param.apply(&mut cfg, v)?;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ResultRow {
    pub axis1: f64,
    pub axis2: Option<f64>,
    pub pe_analytic: Option<f64>,
    pub rho: Option<f64>,
    pub es_analytic: Option<f64>,
    pub pe_sim: Option<f64>,
    pub pe_sim_se: Option<f64>,
    pub es_sim: Option<f64>,
    pub es_sim_se: Option<f64>,
    pub trials: Option<usize>,
    pub wall_time_s: Option<f64>,
    /// Why this point has missing columns, if it failed.
    pub error: Option<String>,
}

/// Seed for grid point `index`, independent of every other point.
pub fn point_seed(master_seed: u64, index: usize) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(index as u64);
    rng.next_u64()
}

fn run_point(spec: &SweepSpec, point: (f64, Option<f64>), seed: u64) -> ResultRow {
    let start = Instant::now();
    let mut row = ResultRow {
        axis1: point.0,
        axis2: point.1,
        ..ResultRow::default()
    };
    let mut errors = Vec::new();
    match spec.scenario_at(point) {
        Err(e) => errors.push(e.to_string()),
        Ok(cfg) => {
            if spec.mode.analytic() {
                match analyze(&cfg, &spec.solver) {
                    Ok(r) => {
                        row.pe_analytic = Some(r.pe_avg);
                        row.rho = Some(r.rho);
                        row.es_analytic = Some(r.es_total);
                    }
                    Err(e) => errors.push(format!("analytic: {e}")),
                }
            }
            if spec.mode.simulate() {
                match run_trials(&cfg, spec.trials, seed) {
                    Ok(s) => {
                        row.pe_sim = Some(s.pe_hat);
                        row.pe_sim_se = Some(s.pe_se);
                        row.es_sim = s.es_hat;
                        row.es_sim_se = s.es_se;
                        row.trials = Some(s.trials);
                    }
                    Err(e) => errors.push(format!("simulate: {e}")),
                }
            }
        }
    }
    if !errors.is_empty() {
        row.error = Some(errors.join("; "));
    }
    if spec.timing {
        row.wall_time_s = Some(start.elapsed().as_secs_f64());
    }
    row
}

/// Runs every grid point on the current rayon pool. Rows come back in grid
/// order and, without timing, are identical for any thread count. A failing
/// point leaves its columns empty and records the error in the row.
pub fn run_sweep(spec: &SweepSpec, master_seed: u64) -> Result<Vec<ResultRow>, Error> {
    spec.check()?;
    Ok(spec
        .points()
        .into_par_iter()
        .enumerate()
        .map(|(i, p)| run_point(spec, p, point_seed(master_seed, i)))
        .collect())
}
