use super::{iterate_to_fixed_point, sup_distance, BranchingModel, SolverOptions};

/// Non-infection probabilities in the level recursion for the final size.
#[derive(Debug, Clone, PartialEq)]
pub struct SizeState {
    /// Type-`i` node reached through a community edge stays uninfected.
    pub q_c: Vec<f64>,
    /// Same through a school edge.
    pub q_s: Vec<f64>,
    /// Type-`i` root stays uninfected.
    pub q_inf: Vec<f64>,
}

impl SizeState {
    pub fn filled(mask_types: usize, value: f64) -> Self {
        Self {
            q_c: vec![value; mask_types],
            q_s: vec![value; mask_types],
            q_inf: vec![value; mask_types],
        }
    }

    fn edge_distance(&self, other: &Self) -> f64 {
        sup_distance(&self.q_c, &other.q_c).max(sup_distance(&self.q_s, &other.q_s))
    }
}

/// Per focal type `i`, the probability that one community (resp. school)
/// neighbour does not pass the infection on:
/// `Σ_j m_j (1 - T[j,i] + q[j] T[j,i])`. The neighbour `j` is the infector,
/// hence the transposed index.
fn neighbour_escape(model: &BranchingModel, q_c: &[f64], q_s: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let m = model.mask_types();
    let t = &model.transmissibility;
    let side = |matrix: &crate::linalg::SquareMatrix, q: &[f64]| -> Vec<f64> {
        (0..m)
            .map(|i| 1.0 - (0..m).map(|j| model.fractions[j] * matrix[(j, i)] * (1.0 - q[j])).sum::<f64>())
            .collect()
    };
    (side(&t.community, q_c), side(&t.school, q_s))
}

/// One level of the recursion. `q_inf` is the root probability evaluated on
/// the incoming level, so at the fixed point it is the final non-infection
/// probability.
pub fn size_step(model: &BranchingModel, state: &SizeState) -> SizeState {
    let m = model.mask_types();
    let (a, b) = neighbour_escape(model, &state.q_c, &state.q_s);
    let pgf = &model.pgf;
    SizeState {
        q_c: if model.layers.community {
            (0..m).map(|i| pgf.edge_community(a[i], b[i])).collect()
        } else {
            vec![1.0; m]
        },
        q_s: if model.layers.school {
            (0..m).map(|i| pgf.edge_school(a[i], b[i])).collect()
        } else {
            vec![1.0; m]
        },
        q_inf: (0..m).map(|i| pgf.root(a[i], b[i])).collect(),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EpidemicSize {
    /// Fraction of type-`i` nodes eventually infected, given emergence.
    pub es_by_type: Vec<f64>,
    pub es_total: f64,
    pub state: SizeState,
    pub iterations: usize,
    pub residual: f64,
}

impl EpidemicSize {
    pub(crate) fn from_state(model: &BranchingModel, state: SizeState, iterations: usize, residual: f64) -> Self {
        let es_by_type: Vec<f64> = state.q_inf.iter().map(|q| 1.0 - q).collect();
        let es_total = es_by_type.iter().zip(&model.fractions).map(|(e, m)| e * m).sum();
        Self {
            es_by_type,
            es_total,
            state,
            iterations,
            residual,
        }
    }
}

/// Iterates the level recursion from all zeros to its smallest fixed point.
pub fn epidemic_size(model: &BranchingModel, opts: &SolverOptions) -> crate::Result<EpidemicSize> {
    let (state, iterations, residual) = iterate_to_fixed_point(
        "epidemic size recursion",
        SizeState::filled(model.mask_types(), 0.0),
        opts,
        |s| size_step(model, s),
        SizeState::edge_distance,
    )?;
    // one more root evaluation so q_inf sits on the converged level
    let state = size_step(model, &state);
    Ok(EpidemicSize::from_state(model, state, iterations, residual))
}
