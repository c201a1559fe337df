//! Independent reference computations shared by the integration suites.
#![allow(dead_code)]

use maskperc::analytic::{extinction_step, BranchingModel, ExtinctionState, PgfBackend};
use maskperc::linalg::SquareMatrix;
use maskperc::model::{DegreePmf, MaskSet, ScenarioConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let flo = f(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if (f(mid) > 0.0) == (flo > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Nonzero root of `x = 1 - exp(-r x)` for `r > 1`.
pub fn giant_root(r: f64) -> f64 {
    bisect(|x| x - 1.0 + (-r * x).exp(), 1e-9, 1.0)
}

/// Central finite differences of one extinction step around all ones,
/// restricted to the active layers in the same block order as the
/// closed-form Jacobian.
pub fn finite_difference_jacobian(model: &BranchingModel, step: f64) -> SquareMatrix {
    let m = model.mask_types();
    let mut coords = Vec::new();
    if model.layers.community {
        coords.extend((0..m).map(|i| (true, i)));
    }
    if model.layers.school {
        coords.extend((0..m).map(|i| (false, i)));
    }
    let read = |s: &ExtinctionState, (c, i): (bool, usize)| if c { s.h_c[i] } else { s.h_s[i] };
    let shifted = |(c, i): (bool, usize), delta: f64| {
        let mut s = ExtinctionState::filled(m, 1.0);
        if c {
            s.h_c[i] += delta;
        } else {
            s.h_s[i] += delta;
        }
        extinction_step(model, &s)
    };
    let cols: Vec<(ExtinctionState, ExtinctionState)> =
        coords.iter().map(|&c| (shifted(c, step), shifted(c, -step))).collect();
    SquareMatrix::from_fn(coords.len(), |r, c| {
        let (plus, minus) = &cols[c];
        (read(plus, coords[r]) - read(minus, coords[r])) / (2.0 * step)
    })
}

fn pmf_sum(p: &[f64], f: impl Fn(usize, f64) -> f64) -> f64 {
    p.iter().enumerate().map(|(k, pk)| f(k, *pk)).sum()
}

/// Reference solver for one layer and M mask types, written directly from
/// the single-layer branching equations without the two-layer machinery.
/// Returns `(rho, pe_avg, es_total)`.
pub fn single_layer_reference(dist: &DegreePmf, masks: &MaskSet, t: f64) -> (f64, f64, f64) {
    let p = dist.probabilities();
    let poisson = dist.poisson_mean();
    let mean = pmf_sum(&p, |k, pk| k as f64 * pk);
    let excess = match poisson {
        Some(l) => l,
        None => pmf_sum(&p, |k, pk| (k * k.saturating_sub(1)) as f64 * pk) / mean,
    };
    let g0 = |x: f64| match poisson {
        Some(l) => (l * (x - 1.0)).exp(),
        None => pmf_sum(&p, |k, pk| pk * x.powi(k as i32)),
    };
    let g1 = |x: f64| match poisson {
        Some(l) => (l * (x - 1.0)).exp(),
        None => pmf_sum(&p, |k, pk| if k == 0 { 0.0 } else { pk * k as f64 * x.powi(k as i32 - 1) }) / mean,
    };
    let m = masks.len();
    let tm = |i: usize, j: usize| (1.0 - masks.eps_out[i]) * (1.0 - masks.eps_in[j]) * t;

    // rank one: rho = excess * Σ_j m_j T[j,j]
    let rho = excess * (0..m).map(|j| masks.fractions[j] * tm(j, j)).sum::<f64>();
    if rho <= 1.0 {
        return (rho, 0.0, 0.0);
    }

    let mut h = vec![0.0; m];
    for _ in 0..1_000_000 {
        let next: Vec<f64> = (0..m)
            .map(|i| 1.0 - (0..m).map(|j| masks.fractions[j] * tm(i, j) * (1.0 - g1(h[j]))).sum::<f64>())
            .collect();
        let diff = next.iter().zip(&h).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        h = next;
        if diff < 1e-15 {
            break;
        }
    }
    let pe: f64 = (0..m).map(|i| masks.fractions[i] * (1.0 - g0(h[i]))).sum();

    let mut q = vec![0.0; m];
    let escape = |q: &[f64], i: usize| 1.0 - (0..m).map(|j| masks.fractions[j] * tm(j, i) * (1.0 - q[j])).sum::<f64>();
    for _ in 0..1_000_000 {
        let next: Vec<f64> = (0..m).map(|i| g1(escape(&q, i))).collect();
        let diff = next.iter().zip(&q).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        q = next;
        if diff < 1e-15 {
            break;
        }
    }
    let es: f64 = (0..m).map(|i| masks.fractions[i] * (1.0 - g0(escape(&q, i)))).sum();
    (rho, pe, es)
}

pub fn random_masks(rng: &mut impl Rng, m: usize) -> MaskSet {
    let raw: Vec<f64> = (0..m).map(|_| rng.random_range(0.05..1.0)).collect();
    let total: f64 = raw.iter().sum();
    let mut fractions: Vec<f64> = raw.iter().map(|x| x / total).collect();
    let head: f64 = fractions[..m - 1].iter().sum();
    fractions[m - 1] = 1.0 - head;
    MaskSet::new(
        fractions,
        (0..m).map(|_| rng.random_range(0.0..0.9)).collect(),
        (0..m).map(|_| rng.random_range(0.0..0.9)).collect(),
    )
}

pub fn random_pmf(rng: &mut impl Rng) -> DegreePmf {
    if rng.random_bool(0.5) {
        DegreePmf::poisson(rng.random_range(1.0..9.0))
    } else {
        let len = rng.random_range(3..10);
        let raw: Vec<f64> = (0..len).map(|_| rng.random_range(0.0..1.0)).collect();
        let total: f64 = raw.iter().sum();
        DegreePmf::explicit(raw.iter().map(|x| x / total).collect())
    }
}

/// Deterministic family of scenarios cycling through mask counts 1..=3 and
/// school membership 0, 0.5, 1.
pub fn random_scenarios(seed: u64, count: usize) -> Vec<ScenarioConfig> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|k| ScenarioConfig {
            n: 1000,
            alpha: [0.0, 0.5, 1.0][k % 3],
            dist_c: random_pmf(&mut rng),
            dist_s: random_pmf(&mut rng),
            tc: rng.random_range(0.05..1.0),
            ts: rng.random_range(0.05..1.0),
            masks: random_masks(&mut rng, 1 + k % 3),
            emergence_threshold: 0.05,
        })
        .collect()
}

pub fn grid_model(cfg: &ScenarioConfig) -> BranchingModel {
    BranchingModel::from_scenario(cfg, PgfBackend::Grid)
}

/// Largest entrywise relative difference; entries far below the matrix scale
/// are compared against that scale instead.
pub fn max_relative_error(a: &SquareMatrix, b: &SquareMatrix) -> f64 {
    let floor = 1e-12 * a.max_abs().max(b.max_abs()).max(1e-300);
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).abs() / x.abs().max(y.abs()).max(floor))
        .fold(0.0, f64::max)
}
