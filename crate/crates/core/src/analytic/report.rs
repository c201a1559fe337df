use std::fmt;

use super::{
    build_jacobian, emergence_probability, epidemic_size, solve_extinction, spectral_radius, BranchingModel,
    EpidemicSize, ExtinctionState, SizeState, SolverOptions,
};
use crate::model::ScenarioConfig;

#[derive(Debug, Clone, PartialEq)]
pub struct AnalyticReport {
    pub pe_by_type: Vec<f64>,
    pub pe_avg: f64,
    pub rho: f64,
    pub es_by_type: Vec<f64>,
    pub es_total: f64,
    pub extinction: ExtinctionState,
    pub extinction_iterations: usize,
    pub extinction_residual: f64,
    pub size_iterations: usize,
    pub size_residual: f64,
}

/// Full analytic pipeline for one scenario.
///
/// At or below the threshold (`rho <= 1`) the trivial fixed point is the
/// solution and both recursions are skipped; the boundary counts as
/// non-epidemic.
pub fn analyze(cfg: &ScenarioConfig, opts: &SolverOptions) -> crate::Result<AnalyticReport> {
    cfg.validate()?;
    let model = BranchingModel::from_scenario(cfg, opts.backend);
    let rho = spectral_radius(&build_jacobian(&model).matrix, opts.eigen_tol)?;
    let m = model.mask_types();

    let (extinction, ext_iter, ext_res, size) = if rho <= 1.0 {
        let trivial = EpidemicSize::from_state(&model, SizeState::filled(m, 1.0), 0, 0.0);
        (ExtinctionState::filled(m, 1.0), 0, 0.0, trivial)
    } else {
        let (state, iters, res) = solve_extinction(&model, opts)?;
        (state, iters, res, epidemic_size(&model, opts)?)
    };
    let pe = emergence_probability(&model, &extinction);

    Ok(AnalyticReport {
        pe_by_type: pe.pe_by_type,
        pe_avg: pe.pe_avg,
        rho,
        es_by_type: size.es_by_type,
        es_total: size.es_total,
        extinction,
        extinction_iterations: ext_iter,
        extinction_residual: ext_res,
        size_iterations: size.iterations,
        size_residual: size.residual,
    })
}

impl fmt::Display for AnalyticReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[f64]| v.iter().map(|x| format!("{x:.10}")).collect::<Vec<_>>().join(", ");
        writeln!(f, "rho          {:.10}", self.rho)?;
        writeln!(f, "pe_avg       {:.10}", self.pe_avg)?;
        writeln!(f, "pe_by_type   [{}]", list(&self.pe_by_type))?;
        writeln!(f, "es_total     {:.10}", self.es_total)?;
        writeln!(f, "es_by_type   [{}]", list(&self.es_by_type))?;
        writeln!(f, "h_c          [{}]", list(&self.extinction.h_c))?;
        writeln!(f, "h_s          [{}]", list(&self.extinction.h_s))?;
        writeln!(
            f,
            "iterations   extinction {} (residual {:.2e}), size {} (residual {:.2e})",
            self.extinction_iterations, self.extinction_residual, self.size_iterations, self.size_residual
        )
    }
}
