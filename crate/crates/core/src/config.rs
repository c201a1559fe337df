//! Scenario files.
//!
//! ```toml
//! [layers]
//! n = 10000
//! alpha = 0.5
//! dist_c = "poisson:6"
//! dist_s = "explicit:0.1,0.2,0.7"
//! tc = 0.6
//! ts = 0.5
//!
//! [masks]
//! m = [0.2, 0.8]
//! eps_in = [0.5, 0]
//! eps_out = [0.6, 0]
//!
//! [run]                          # optional
//! emergence_threshold = 0.05
//! trials = 1000
//! seed = 42
//! tol = 1e-10
//! max_iter = 100000
//! eigen_tol = 1e-10
//! tail_tolerance = 1e-10
//! backend = "auto"               # or "grid"
//!
//! [sweep]                        # optional, used by `maskperc sweep`
//! mode = "both"
//! [[sweep.axis]]
//! param = "dist_c.mean"
//! label = "md1"
//! values = [2, 4, 6]
//! ```
//!
//! Unknown keys are rejected so typos do not silently fall back to defaults.

use std::path::Path;

use toml::{Table, Value};

use crate::analytic::{PgfBackend, SolverOptions};
use crate::error::Error;
use crate::harness::{Mode, ParamPath, SweepAxis, SweepSpec};
use crate::model::{DegreePmf, MaskSet, ScenarioConfig, DEFAULT_EMERGENCE_THRESHOLD};

#[derive(Debug, Clone, PartialEq)]
pub struct RunSettings {
    pub trials: Option<usize>,
    pub seed: Option<u64>,
    pub solver: SolverOptions,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSettings {
    pub mode: Mode,
    pub axes: Vec<SweepAxis>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioFile {
    pub scenario: ScenarioConfig,
    pub run: RunSettings,
    pub sweep: Option<SweepSettings>,
}

struct Section<'a> {
    name: &'a str,
    table: &'a Table,
}

impl<'a> Section<'a> {
    fn of(root: &'a Table, name: &'a str, allowed: &[&str], required: bool) -> Result<Option<Self>, Error> {
        let table = match root.get(name) {
            None if required => return Err(Error::Parse(format!("missing [{name}] section"))),
            None => return Ok(None),
            Some(Value::Table(t)) => t,
            Some(_) => return Err(Error::Parse(format!("`{name}` must be a section"))),
        };
        if let Some(key) = table.keys().find(|k| !allowed.contains(&k.as_str())) {
            return Err(Error::Parse(format!("unknown key `{key}` in [{name}]")));
        }
        Ok(Some(Self { name, table }))
    }

    fn err(&self, key: &str, what: &str) -> Error {
        Error::Parse(format!("[{}] {key}: expected {what}", self.name))
    }

    fn required(&self, key: &str) -> Result<&'a Value, Error> {
        self.table
            .get(key)
            .ok_or_else(|| Error::Parse(format!("[{}] is missing `{key}`", self.name)))
    }

    fn number(&self, key: &str) -> Result<Option<f64>, Error> {
        self.table.get(key).map(|v| as_number(v).ok_or_else(|| self.err(key, "a number"))).transpose()
    }

    fn req_number(&self, key: &str) -> Result<f64, Error> {
        self.required(key)?;
        Ok(self.number(key)?.unwrap())
    }

    fn integer(&self, key: &str) -> Result<Option<u64>, Error> {
        self.table
            .get(key)
            .map(|v| match v {
                Value::Integer(i) if *i >= 0 => Ok(*i as u64),
                _ => Err(self.err(key, "a non-negative integer")),
            })
            .transpose()
    }

    fn string(&self, key: &str) -> Result<Option<&'a str>, Error> {
        self.table
            .get(key)
            .map(|v| v.as_str().ok_or_else(|| self.err(key, "a string")))
            .transpose()
    }

    fn numbers(&self, key: &str) -> Result<Vec<f64>, Error> {
        let arr = self.required(key)?.as_array().ok_or_else(|| self.err(key, "an array of numbers"))?;
        arr.iter()
            .map(|v| as_number(v).ok_or_else(|| self.err(key, "an array of numbers")))
            .collect()
    }
}

fn as_number(v: &Value) -> Option<f64> {
    match v {
        Value::Float(f) => Some(*f),
        Value::Integer(i) => Some(*i as f64),
        _ => None,
    }
}

impl ScenarioFile {
    pub fn parse(text: &str) -> Result<Self, Error> {
        let root: Table = text.parse().map_err(|e: toml::de::Error| Error::Parse(e.to_string()))?;
        if let Some(key) = root.keys().find(|k| !["layers", "masks", "run", "sweep"].contains(&k.as_str())) {
            return Err(Error::Parse(format!("unknown section `{key}`")));
        }
        let layers = Section::of(&root, "layers", &["n", "alpha", "dist_c", "dist_s", "tc", "ts"], true)?.unwrap();
        let masks = Section::of(&root, "masks", &["m", "eps_in", "eps_out"], true)?.unwrap();
        let run = Section::of(
            &root,
            "run",
            &["emergence_threshold", "trials", "seed", "tol", "max_iter", "eigen_tol", "tail_tolerance", "backend"],
            false,
        )?;

        let n = layers.integer("n")?.ok_or_else(|| layers.err("n", "a node count"))? as usize;
        let tail = match &run {
            Some(r) => r.number("tail_tolerance")?,
            None => None,
        };
        let dist = |key: &str| -> Result<DegreePmf, Error> {
            let s = layers.string(key)?.ok_or_else(|| layers.err(key, "\"poisson:<mean>\" or \"explicit:<p0,p1,...>\""))?;
            let pmf: DegreePmf = s.parse()?;
            Ok(match tail {
                Some(t) => pmf.with_tail_tolerance(t),
                None => pmf,
            })
        };

        let mut solver = SolverOptions::default();
        let mut settings = RunSettings {
            trials: None,
            seed: None,
            solver,
        };
        let mut emergence_threshold = DEFAULT_EMERGENCE_THRESHOLD;
        if let Some(r) = &run {
            emergence_threshold = r.number("emergence_threshold")?.unwrap_or(emergence_threshold);
            settings.trials = r.integer("trials")?.map(|t| t as usize);
            settings.seed = r.integer("seed")?;
            if let Some(tol) = r.number("tol")? {
                solver.tol = tol;
            }
            if let Some(it) = r.integer("max_iter")? {
                solver.max_iter = it as usize;
            }
            if let Some(tol) = r.number("eigen_tol")? {
                solver.eigen_tol = tol;
            }
            solver.backend = match r.string("backend")? {
                None | Some("auto") => PgfBackend::Auto,
                Some("grid") => PgfBackend::Grid,
                Some(_) => return Err(r.err("backend", "\"auto\" or \"grid\"")),
            };
            settings.solver = solver;
        }

        let scenario = ScenarioConfig {
            n,
            alpha: layers.req_number("alpha")?,
            dist_c: dist("dist_c")?,
            dist_s: dist("dist_s")?,
            tc: layers.req_number("tc")?,
            ts: layers.req_number("ts")?,
            masks: MaskSet::new(masks.numbers("m")?, masks.numbers("eps_in")?, masks.numbers("eps_out")?),
            emergence_threshold,
        };
        scenario.validate()?;

        let sweep = match Section::of(&root, "sweep", &["mode", "axis"], false)? {
            None => None,
            Some(s) => Some(parse_sweep(&s)?),
        };
        Ok(Self {
            scenario,
            run: settings,
            sweep,
        })
    }

    pub fn load(path: &Path) -> Result<Self, Error> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    /// The sweep described by the file, with `trials` falling back to the
    /// `[run]` value and then to `default_trials`.
    pub fn sweep_spec(&self, default_trials: usize) -> Result<SweepSpec, Error> {
        let sweep = self.sweep.as_ref().ok_or_else(|| Error::Parse("the file has no [sweep] section".into()))?;
        let spec = SweepSpec {
            base: self.scenario.clone(),
            axes: sweep.axes.clone(),
            trials: self.run.trials.unwrap_or(default_trials),
            mode: sweep.mode,
            solver: self.run.solver,
            timing: false,
            notes: Vec::new(),
        };
        spec.check()?;
        Ok(spec)
    }
}

fn parse_sweep(s: &Section<'_>) -> Result<SweepSettings, Error> {
    let mode = match s.string("mode")? {
        Some(m) => m.parse()?,
        None => Mode::default(),
    };
    let axes = s
        .required("axis")?
        .as_array()
        .ok_or_else(|| s.err("axis", "[[sweep.axis]] tables"))?
        .iter()
        .map(|v| {
            let t = v.as_table().ok_or_else(|| s.err("axis", "[[sweep.axis]] tables"))?;
            let wrapper = Table::from_iter([("axis".to_string(), Value::Table(t.clone()))]);
            let axis = Section::of(&wrapper, "axis", &["param", "label", "values"], true)?.unwrap();
            let param: ParamPath = axis.string("param")?.ok_or_else(|| axis.err("param", "a parameter path"))?.parse()?;
            let label = axis.string("label")?.map(str::to_string).unwrap_or_else(|| param.to_string());
            Ok(SweepAxis::new(param, label, axis.numbers("values")?))
        })
        .collect::<Result<Vec<_>, Error>>()?;
    Ok(SweepSettings { mode, axes })
}

fn toml_list(v: &[f64]) -> String {
    let items: Vec<String> = v.iter().map(|x| format!("{x:?}")).collect();
    format!("[{}]", items.join(", "))
}

/// Renders a scenario as a file `ScenarioFile::parse` reads back to the same value.
pub fn scenario_to_toml(cfg: &ScenarioConfig) -> String {
    let mut out = format!(
        "[layers]\nn = {}\nalpha = {:?}\ndist_c = \"{}\"\ndist_s = \"{}\"\ntc = {:?}\nts = {:?}\n\n",
        cfg.n, cfg.alpha, cfg.dist_c, cfg.dist_s, cfg.tc, cfg.ts
    );
    out += &format!(
        "[masks]\nm = {}\neps_in = {}\neps_out = {}\n\n",
        toml_list(&cfg.masks.fractions),
        toml_list(&cfg.masks.eps_in),
        toml_list(&cfg.masks.eps_out)
    );
    out += &format!("[run]\nemergence_threshold = {:?}\n", cfg.emergence_threshold);
    if cfg.dist_c.tail_tolerance == cfg.dist_s.tail_tolerance {
        out += &format!("tail_tolerance = {:?}\n", cfg.dist_c.tail_tolerance);
    }
    out
}
