//! Branching-process analysis of the two-layer mask model: probability of
//! emergence, epidemic threshold and expected epidemic size.

mod extinction;
mod jacobian;
mod pgf;
mod report;
mod size;
mod spectral;

pub use extinction::{emergence_probability, extinction_step, solve_extinction, Emergence, ExtinctionState};
pub use jacobian::{build_jacobian, critical_scaling, CriticalScaling, JacobianMatrix};
pub use pgf::{ActiveLayers, ColoredPgf, GridPgf, PgfBackend, PoissonPgf};
pub use report::{analyze, AnalyticReport};
pub use size::{epidemic_size, size_step, EpidemicSize, SizeState};
pub use spectral::{spectral_radius, spectral_radius_dense, spectral_radius_power};

use crate::model::{build_transmissibility, DegreeMoments, ScenarioConfig, TransmissibilityMatrices};

/// Knobs for the fixed-point and eigenvalue iterations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    /// Sup-norm change at which a fixed-point iteration stops.
    pub tol: f64,
    pub max_iter: usize,
    /// Relative tolerance on the spectral radius.
    pub eigen_tol: f64,
    pub backend: PgfBackend,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            max_iter: 100_000,
            eigen_tol: 1e-10,
            backend: PgfBackend::Auto,
        }
    }
}

/// Everything the recursions need, derived once per scenario.
#[derive(Debug, Clone)]
pub struct BranchingModel {
    pub fractions: Vec<f64>,
    pub transmissibility: TransmissibilityMatrices,
    pub pgf: ColoredPgf,
    pub moments: DegreeMoments,
    pub layers: ActiveLayers,
}

impl BranchingModel {
    pub fn new(cfg: &ScenarioConfig, transmissibility: TransmissibilityMatrices, backend: PgfBackend) -> Self {
        let (moments, layers) = pgf::moments_and_layers(cfg, backend);
        Self {
            fractions: cfg.masks.fractions.clone(),
            transmissibility,
            pgf: ColoredPgf::new(cfg, backend),
            moments,
            layers,
        }
    }

    pub fn from_scenario(cfg: &ScenarioConfig, backend: PgfBackend) -> Self {
        Self::new(cfg, build_transmissibility(cfg), backend)
    }

    pub fn mask_types(&self) -> usize {
        self.fractions.len()
    }
}

/// Iterates `step` from `start` until the sup-norm change drops below `tol`.
pub(crate) fn iterate_to_fixed_point<S>(
    what: &'static str,
    start: S,
    opts: &SolverOptions,
    mut step: impl FnMut(&S) -> S,
    distance: impl Fn(&S, &S) -> f64,
) -> crate::Result<(S, usize, f64)> {
    let mut current = start;
    let mut residual = f64::INFINITY;
    for iter in 1..=opts.max_iter {
        let next = step(&current);
        residual = distance(&current, &next);
        current = next;
        if residual < opts.tol {
            return Ok((current, iter, residual));
        }
    }
    Err(crate::Error::NotConverged {
        what,
        iterations: opts.max_iter,
        residual,
    })
}

pub(crate) fn sup_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).fold(0.0, |acc, (x, y)| acc.max((x - y).abs()))
}
