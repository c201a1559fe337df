use std::collections::VecDeque;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::model::{MaskSet, TransmissibilityMatrices};
use crate::network::{Layer, MultilayerGraph};

/// Mask type (0-based) of every node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaskAssignment {
    pub type_of: Vec<usize>,
}

impl MaskAssignment {
    pub fn counts(&self, mask_types: usize) -> Vec<usize> {
        let mut c = vec![0; mask_types];
        for &t in &self.type_of {
            c[t] += 1;
        }
        c
    }
}

/// I.i.d. categorical mask draws with probabilities `masks.fractions`.
pub fn assign_masks(n: usize, masks: &MaskSet, seed: u64) -> MaskAssignment {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cumulative = Vec::with_capacity(masks.len());
    let mut acc = 0.0;
    for f in &masks.fractions {
        acc += f;
        cumulative.push(acc);
    }
    let last = masks.len() - 1;
    let type_of = (0..n)
        .map(|_| {
            let u = rng.random::<f64>() * acc;
            cumulative.partition_point(|c| *c <= u).min(last)
        })
        .collect();
    MaskAssignment { type_of }
}

/// Uniform in [0, 1) for one directed transmission attempt, a pure function of
/// the trial key and the attempt's slot. SplitMix64 finalizer over a Weyl
/// sequence.
#[inline]
pub fn slot_uniform(key: u64, slot: u32) -> f64 {
    let mut z = key.wrapping_add((slot as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^= z >> 31;
    (z >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Final infected set of a single-pass SIR outbreak from `seed_node`.
///
/// Each directed attempt `u -> v` along one edge succeeds when its slot
/// uniform falls below `T[type(u), type(v)]` of the edge's layer. Fixing the
/// key fixes every coin, so raising any transmissibility can only grow the set.
pub fn infected_set(
    graph: &MultilayerGraph,
    assignment: &MaskAssignment,
    t: &TransmissibilityMatrices,
    seed_node: usize,
    key: u64,
) -> Vec<bool> {
    let mut infected = vec![false; graph.n()];
    let mut queue = VecDeque::new();
    infected[seed_node] = true;
    queue.push_back(seed_node);
    let layers = [
        (graph.adjacency(Layer::Community), &t.community),
        (graph.adjacency(Layer::School), &t.school),
    ];
    while let Some(u) = queue.pop_front() {
        let i = assignment.type_of[u];
        for (adj, matrix) in &layers {
            let row = matrix.row(i);
            for arc in adj.neighbors(u) {
                let v = arc.target as usize;
                if infected[v] {
                    continue;
                }
                if slot_uniform(key, arc.slot) < row[assignment.type_of[v]] {
                    infected[v] = true;
                    queue.push_back(v);
                }
            }
        }
    }
    infected
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutbreakOutcome {
    pub infected_total: usize,
    pub infected_by_type: Vec<usize>,
    pub population_by_type: Vec<usize>,
    pub is_epidemic: bool,
    pub seed_type: usize,
}

/// Smallest final size that counts as an epidemic: `ceil(fraction * n)`, at least 1.
pub fn epidemic_cutoff(fraction: f64, n: usize) -> usize {
    ((fraction * n as f64 - 1e-9).ceil() as usize).max(1)
}

pub fn spread_from_seed(
    graph: &MultilayerGraph,
    assignment: &MaskAssignment,
    t: &TransmissibilityMatrices,
    seed_node: usize,
    key: u64,
    cutoff: usize,
) -> OutbreakOutcome {
    let m = t.mask_types();
    let infected = infected_set(graph, assignment, t, seed_node, key);
    let mut infected_by_type = vec![0; m];
    for (node, _) in infected.iter().enumerate().filter(|(_, x)| **x) {
        infected_by_type[assignment.type_of[node]] += 1;
    }
    let infected_total = infected_by_type.iter().sum();
    OutbreakOutcome {
        infected_total,
        infected_by_type,
        population_by_type: assignment.counts(m),
        is_epidemic: infected_total >= cutoff,
        seed_type: assignment.type_of[seed_node],
    }
}
