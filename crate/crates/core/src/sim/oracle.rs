//! Brute-force ground truth for tiny graphs: enumerate every open/closed
//! configuration of the directed transmission attempts.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{infected_set, MaskAssignment};
use crate::error::Error;
use crate::model::{MaskSet, TransmissibilityMatrices};
use crate::network::{read_edge_list, Layer, MultilayerGraph};

pub const ORACLE_MAX_ARCS: usize = 24;
const ORACLE_MAX_NODES: usize = 64;

#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    /// Probability that the final size from each seed reaches the cutoff.
    pub exact_pe_per_seed: Vec<f64>,
    pub exact_mean_size_per_seed: Vec<f64>,
    /// `E[size^2]` per seed, for exact Monte-Carlo error bars.
    pub exact_size_second_moment_per_seed: Vec<f64>,
}

impl OracleResult {
    /// Averages over a uniformly chosen seed node.
    pub fn seed_averaged(&self) -> (f64, f64, f64) {
        let n = self.exact_pe_per_seed.len() as f64;
        let avg = |v: &[f64]| v.iter().sum::<f64>() / n;
        (
            avg(&self.exact_pe_per_seed),
            avg(&self.exact_mean_size_per_seed),
            avg(&self.exact_size_second_moment_per_seed),
        )
    }
}

pub fn exact_small_graph_oracle(
    graph: &MultilayerGraph,
    assignment: &MaskAssignment,
    t: &TransmissibilityMatrices,
    cutoff: usize,
) -> crate::Result<OracleResult> {
    let n = graph.n();
    let mut arcs: Vec<(usize, usize, f64)> = Vec::new();
    for (layer, matrix) in [(Layer::Community, &t.community), (Layer::School, &t.school)] {
        let adj = graph.adjacency(layer);
        for u in 0..n {
            for arc in adj.neighbors(u) {
                let v = arc.target as usize;
                arcs.push((u, v, matrix[(assignment.type_of[u], assignment.type_of[v])]));
            }
        }
    }
    if arcs.len() > ORACLE_MAX_ARCS {
        return Err(Error::OracleTooLarge {
            found: arcs.len(),
            max: ORACLE_MAX_ARCS,
        });
    }
    assert!(n <= ORACLE_MAX_NODES, "oracle graphs are limited to {ORACLE_MAX_NODES} nodes");

    let mut pe = vec![0.0; n];
    let mut mean = vec![0.0; n];
    let mut second = vec![0.0; n];
    let mut out = vec![0u64; n];
    for config in 0u64..(1 << arcs.len()) {
        let mut weight = 1.0;
        out.iter_mut().for_each(|o| *o = 0);
        for (k, &(u, v, p)) in arcs.iter().enumerate() {
            if config >> k & 1 == 1 {
                weight *= p;
                out[u] |= 1 << v;
            } else {
                weight *= 1.0 - p;
            }
        }
        if weight == 0.0 {
            continue;
        }
        for seed in 0..n {
            let mut reached = 1u64 << seed;
            let mut frontier = reached;
            while frontier != 0 {
                let mut next = 0;
                let mut f = frontier;
                while f != 0 {
                    let u = f.trailing_zeros() as usize;
                    f &= f - 1;
                    next |= out[u];
                }
                frontier = next & !reached;
                reached |= next;
            }
            let size = reached.count_ones() as f64;
            mean[seed] += weight * size;
            second[seed] += weight * size * size;
            if size as usize >= cutoff {
                pe[seed] += weight;
            }
        }
    }
    Ok(OracleResult {
        exact_pe_per_seed: pe,
        exact_mean_size_per_seed: mean,
        exact_size_second_moment_per_seed: second,
    })
}

/// A tiny graph with everything needed to run both the oracle and the
/// simulator: the edge-list dump plus `masks`, `eps_in`, `eps_out`, `tc`, `ts`
/// and `cutoff` lines.
#[derive(Debug, Clone, PartialEq)]
pub struct Fixture {
    pub graph: MultilayerGraph,
    pub assignment: MaskAssignment,
    pub transmissibility: TransmissibilityMatrices,
    pub cutoff: usize,
}

impl Fixture {
    pub fn parse(text: &str) -> crate::Result<Self> {
        let dump = read_edge_list(text)?;
        let type_of = dump
            .mask_types
            .ok_or_else(|| Error::Parse("fixture needs a `masks` line".into()))?;
        let lookup = |key: &str| -> crate::Result<&Vec<String>> {
            dump.extra
                .iter()
                .find(|(k, _)| k == key)
                .map(|(_, v)| v)
                .ok_or_else(|| Error::Parse(format!("fixture needs a `{key}` line")))
        };
        let floats = |key: &str| -> crate::Result<Vec<f64>> {
            lookup(key)?
                .iter()
                .map(|s| s.parse::<f64>().map_err(|e| Error::Parse(format!("{key}: {e}"))))
                .collect()
        };
        let scalar = |key: &str| -> crate::Result<f64> {
            match floats(key)?.as_slice() {
                [x] => Ok(*x),
                _ => Err(Error::Parse(format!("`{key}` takes one value"))),
            }
        };
        let eps_in = floats("eps_in")?;
        let eps_out = floats("eps_out")?;
        let m = eps_in.len();
        if eps_out.len() != m || type_of.iter().any(|t| *t >= m) {
            return Err(Error::Parse("mask types and efficiencies disagree".into()));
        }
        let masks = MaskSet::new(vec![1.0 / m as f64; m], eps_in, eps_out);
        let mut issues = Vec::new();
        masks.check(&mut issues);
        if !issues.is_empty() {
            return Err(crate::ValidationReport { issues }.into());
        }
        let cutoff = scalar("cutoff")?;
        if cutoff < 1.0 || cutoff.fract() != 0.0 {
            return Err(Error::Parse("cutoff must be a positive integer".into()));
        }
        Ok(Self {
            transmissibility: TransmissibilityMatrices::from_masks(&masks, scalar("tc")?, scalar("ts")?),
            graph: dump.graph,
            assignment: MaskAssignment { type_of },
            cutoff: cutoff as usize,
        })
    }

    pub fn oracle(&self) -> crate::Result<OracleResult> {
        exact_small_graph_oracle(&self.graph, &self.assignment, &self.transmissibility, self.cutoff)
    }

    /// Monte-Carlo estimates from `runs` outbreaks, each from a uniformly
    /// chosen seed with fresh transmission coins.
    pub fn monte_carlo(&self, runs: usize, seed: u64) -> MonteCarloEstimate {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut exceed = 0usize;
        let mut total = 0.0;
        for _ in 0..runs {
            let seed_node = rng.random_range(0..self.graph.n());
            let key = rng.next_u64();
            let size = infected_set(&self.graph, &self.assignment, &self.transmissibility, seed_node, key)
                .iter()
                .filter(|x| **x)
                .count();
            total += size as f64;
            if size >= self.cutoff {
                exceed += 1;
            }
        }
        MonteCarloEstimate {
            runs,
            pe_hat: exceed as f64 / runs as f64,
            mean_size_hat: total / runs as f64,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonteCarloEstimate {
    pub runs: usize,
    pub pe_hat: f64,
    pub mean_size_hat: f64,
}

/// Distances of a Monte-Carlo estimate from the exact seed-averaged values,
/// in units of the exact standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleComparison {
    pub exact_pe: f64,
    pub exact_mean_size: f64,
    pub estimate: MonteCarloEstimate,
    pub pe_sigmas: f64,
    pub size_sigmas: f64,
}

impl OracleComparison {
    pub fn new(exact: &OracleResult, estimate: MonteCarloEstimate) -> Self {
        let (pe, mean, second) = exact.seed_averaged();
        let runs = estimate.runs as f64;
        let sigmas = |diff: f64, var: f64| {
            let se = (var.max(0.0) / runs).sqrt();
            if se == 0.0 {
                if diff.abs() < 1e-12 { 0.0 } else { f64::INFINITY }
            } else {
                diff.abs() / se
            }
        };
        Self {
            exact_pe: pe,
            exact_mean_size: mean,
            estimate,
            pe_sigmas: sigmas(estimate.pe_hat - pe, pe * (1.0 - pe)),
            size_sigmas: sigmas(estimate.mean_size_hat - mean, second - mean * mean),
        }
    }

    pub fn within(&self, sigmas: f64) -> bool {
        self.pe_sigmas <= sigmas && self.size_sigmas <= sigmas
    }
}
