use super::{iterate_to_fixed_point, sup_distance, BranchingModel, SolverOptions};

/// Probabilities that the infection reached along a community (`h_c`) or
/// school (`h_s`) edge from a type-`i` infector stays finite.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtinctionState {
    pub h_c: Vec<f64>,
    pub h_s: Vec<f64>,
}

impl ExtinctionState {
    pub fn filled(mask_types: usize, value: f64) -> Self {
        Self {
            h_c: vec![value; mask_types],
            h_s: vec![value; mask_types],
        }
    }

    pub fn distance(&self, other: &Self) -> f64 {
        sup_distance(&self.h_c, &other.h_c).max(sup_distance(&self.h_s, &other.h_s))
    }
}

/// One synchronous update of the extinction recursion at x = 1.
///
/// `h_c[i] = Σ_j m_j (1 - Tc[i,j] + Tc[i,j] Φc(h_c[j], h_s[j]))`, written as
/// `1 - Σ_j m_j Tc[i,j] (1 - Φc)` so the all-ones vector maps to itself exactly.
/// A layer without edges keeps its entries at one.
pub fn extinction_step(model: &BranchingModel, state: &ExtinctionState) -> ExtinctionState {
    let m = model.mask_types();
    let t = &model.transmissibility;
    let layer = |active: bool, matrix: &crate::linalg::SquareMatrix, phi: &dyn Fn(f64, f64) -> f64| -> Vec<f64> {
        if !active {
            return vec![1.0; m];
        }
        let escape: Vec<f64> = (0..m)
            .map(|j| model.fractions[j] * (1.0 - phi(state.h_c[j], state.h_s[j])))
            .collect();
        (0..m)
            .map(|i| 1.0 - matrix.row(i).iter().zip(&escape).map(|(tij, e)| tij * e).sum::<f64>())
            .collect()
    };
    ExtinctionState {
        h_c: layer(model.layers.community, &t.community, &|x, y| model.pgf.edge_community(x, y)),
        h_s: layer(model.layers.school, &t.school, &|x, y| model.pgf.edge_school(x, y)),
    }
}

/// Smallest fixed point of the extinction recursion, reached from all zeros.
pub fn solve_extinction(model: &BranchingModel, opts: &SolverOptions) -> crate::Result<(ExtinctionState, usize, f64)> {
    iterate_to_fixed_point(
        "extinction recursion",
        ExtinctionState::filled(model.mask_types(), 0.0),
        opts,
        |s| extinction_step(model, s),
        ExtinctionState::distance,
    )
}

#[derive(Debug, Clone, PartialEq)]
pub struct Emergence {
    /// `1 - H_i(1)` for a type-`i` initiator.
    pub pe_by_type: Vec<f64>,
    /// Average over initiator types weighted by the mask fractions.
    pub pe_avg: f64,
}

pub fn emergence_probability(model: &BranchingModel, state: &ExtinctionState) -> Emergence {
    let pe_by_type: Vec<f64> = (0..model.mask_types())
        .map(|i| 1.0 - model.pgf.root(state.h_c[i], state.h_s[i]))
        .collect();
    let pe_avg = pe_by_type.iter().zip(&model.fractions).map(|(p, m)| p * m).sum();
    Emergence { pe_by_type, pe_avg }
}
