use super::{spectral_radius, ActiveLayers, BranchingModel, SolverOptions};
use crate::linalg::SquareMatrix;
use crate::model::ScenarioConfig;

/// Linearization of the extinction recursion around the all-ones fixed point.
///
/// Rows and columns list the community equations first, then the school
/// equations, mask types ascending within each block. A layer without edges
/// contributes no block, so a closed school leaves only `J_cc`.
#[derive(Debug, Clone, PartialEq)]
pub struct JacobianMatrix {
    pub matrix: SquareMatrix,
    pub mask_types: usize,
    pub layers: ActiveLayers,
}

impl JacobianMatrix {
    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }
}

pub fn build_jacobian(model: &BranchingModel) -> JacobianMatrix {
    let m = model.mask_types();
    let mo = &model.moments;
    let layers = model.layers;
    let tc = &model.transmissibility.community;
    let ts = &model.transmissibility.school;

    // (row layer, column layer) -> degree factor; rows of one layer share its normalizer
    let factor = |row_c: bool, col_c: bool| -> f64 {
        match (row_c, col_c) {
            (true, true) => (mo.mean_kc2 - mo.mean_kc) / mo.mean_kc,
            (true, false) => mo.mean_kcks / mo.mean_kc,
            (false, true) => mo.mean_kcks / mo.mean_ks,
            (false, false) => (mo.mean_ks2 - mo.mean_ks) / mo.mean_ks,
        }
    };
    let blocks: Vec<bool> = [(layers.community, true), (layers.school, false)]
        .iter()
        .filter(|(active, _)| *active)
        .map(|(_, is_c)| *is_c)
        .collect();

    let dim = m * blocks.len();
    let matrix = SquareMatrix::from_fn(dim, |r, c| {
        let (row_c, i) = (blocks[r / m], r % m);
        let (col_c, j) = (blocks[c / m], c % m);
        let t = if row_c { tc[(i, j)] } else { ts[(i, j)] };
        model.fractions[j] * t * factor(row_c, col_c)
    });
    JacobianMatrix {
        matrix,
        mask_types: m,
        layers,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalScaling {
    /// Spectral radius at the configured transmissibilities.
    pub rho: f64,
    /// Common factor on both base transmissibilities that puts the
    /// spectral radius at exactly one. Above one means currently subcritical.
    pub theta: f64,
}

/// Locates the threshold along a common rescaling of both base
/// transmissibilities, using that the Jacobian is linear in them.
pub fn critical_scaling(cfg: &ScenarioConfig, opts: &SolverOptions) -> crate::Result<CriticalScaling> {
    cfg.validate()?;
    let model = BranchingModel::from_scenario(cfg, opts.backend);
    let rho = spectral_radius(&build_jacobian(&model).matrix, opts.eigen_tol)?;
    if rho <= 0.0 {
        return Err(crate::Error::NoEpidemic);
    }
    let theta = 1.0 / rho;

    let scaled = BranchingModel {
        transmissibility: model.transmissibility.scaled(theta),
        ..model
    };
    let check = spectral_radius(&build_jacobian(&scaled).matrix, opts.eigen_tol)?;
    if (check - 1.0).abs() > 1e-9 {
        return Err(crate::Error::NotConverged {
            what: "critical scaling check",
            iterations: 1,
            residual: (check - 1.0).abs(),
        });
    }
    Ok(CriticalScaling { rho, theta })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::PgfBackend;
    use crate::model::{DegreePmf, MaskSet};

    fn single_type(lc: f64, ls: f64, alpha: f64, tc: f64, ts: f64) -> ScenarioConfig {
        ScenarioConfig {
            n: 100,
            alpha,
            dist_c: DegreePmf::poisson(lc),
            dist_s: DegreePmf::poisson(ls),
            tc,
            ts,
            masks: MaskSet::unmasked(),
            emergence_threshold: 0.05,
        }
    }

    #[test]
    fn single_type_poisson_blocks() {
        let (lc, ls, a, tc, ts) = (3.0, 5.0, 0.4, 0.6, 0.5);
        let model = BranchingModel::from_scenario(&single_type(lc, ls, a, tc, ts), PgfBackend::Auto);
        let j = build_jacobian(&model).matrix;
        let expect = [[tc * lc, tc * a * ls], [ts * lc, ts * ls]];
        for i in 0..2 {
            for k in 0..2 {
                assert!((j[(i, k)] - expect[i][k]).abs() < 1e-8, "{j}");
            }
        }
    }

    #[test]
    fn zero_transmission_zero_matrix() {
        let model = BranchingModel::from_scenario(&single_type(3.0, 5.0, 0.4, 0.0, 0.0), PgfBackend::Auto);
        assert_eq!(build_jacobian(&model).matrix.max_abs(), 0.0);
    }

    #[test]
    fn closed_school_reduces_to_community_block() {
        let model = BranchingModel::from_scenario(&single_type(4.0, 5.0, 0.0, 1.0, 0.5), PgfBackend::Auto);
        let j = build_jacobian(&model);
        assert_eq!(j.dim(), 1);
        assert!(!j.layers.school);
    }

    #[test]
    fn single_layer_threshold() {
        let cs = critical_scaling(&single_type(4.0, 5.0, 0.0, 1.0, 0.5), &SolverOptions::default()).unwrap();
        assert!((cs.rho - 4.0).abs() < 1e-8);
        assert!((cs.theta - 0.25).abs() < 1e-9);
    }

    #[test]
    fn theta_is_reciprocal_of_rho() {
        // rho = T * lambda on a single community layer
        let half = critical_scaling(&single_type(4.0, 5.0, 0.0, 0.5, 0.5), &SolverOptions::default()).unwrap();
        assert!((half.rho - 2.0).abs() < 1e-8 && (half.theta - 0.5).abs() < 1e-9);
        let sub = critical_scaling(&single_type(4.0, 5.0, 0.0, 0.2, 0.5), &SolverOptions::default()).unwrap();
        assert!((sub.rho - 0.8).abs() < 1e-8 && (sub.theta - 1.25).abs() < 1e-8);
    }

    #[test]
    fn no_epidemic_signal() {
        let err = critical_scaling(&single_type(4.0, 5.0, 0.5, 0.0, 0.0), &SolverOptions::default()).unwrap_err();
        assert!(matches!(err, crate::Error::NoEpidemic));
    }
}
