//! Generating functions of the colored degree distribution.
//!
//! Three sums over the joint pmf drive every recursion in the solver:
//! the root sum `G(x, y) = Σ p_d x^kc y^ks` and the two edge-biased sums
//! reached along a community or school edge,
//! `Φc(x, y) = Σ p_d kc x^(kc-1) y^ks / <kc>` and
//! `Φs(x, y) = Σ p_d ks x^kc y^(ks-1) / <ks>`.

use crate::model::{colored_degree_pmf, degree_moments, ColoredDegreePmf, DegreeMoments, ScenarioConfig};

/// How the sums over colored degrees are evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PgfBackend {
    /// Closed forms when both layers are Poisson, grid summation otherwise.
    #[default]
    Auto,
    /// Always sum over the truncated joint pmf.
    Grid,
}

#[derive(Debug, Clone)]
pub enum ColoredPgf {
    Grid(GridPgf),
    Poisson(PoissonPgf),
}

impl ColoredPgf {
    pub fn new(cfg: &ScenarioConfig, backend: PgfBackend) -> Self {
        match (backend, cfg.poisson_means()) {
            (PgfBackend::Auto, Some((community, school))) => ColoredPgf::Poisson(PoissonPgf {
                community,
                school,
                alpha: cfg.alpha,
            }),
            _ => ColoredPgf::Grid(GridPgf::new(cfg)),
        }
    }

    pub fn root(&self, x: f64, y: f64) -> f64 {
        match self {
            ColoredPgf::Grid(g) => g.root(x, y),
            ColoredPgf::Poisson(p) => p.root(x, y),
        }
    }

    pub fn edge_community(&self, x: f64, y: f64) -> f64 {
        match self {
            ColoredPgf::Grid(g) => g.edge_community(x, y),
            ColoredPgf::Poisson(p) => p.edge_community(x, y),
        }
    }

    pub fn edge_school(&self, x: f64, y: f64) -> f64 {
        match self {
            ColoredPgf::Grid(g) => g.edge_school(x, y),
            ColoredPgf::Poisson(p) => p.edge_school(x, y),
        }
    }
}

#[derive(Debug, Clone)]
pub struct GridPgf {
    joint: ColoredDegreePmf,
    mass: f64,
    mean_kc: f64,
    mean_ks: f64,
}

impl GridPgf {
    pub fn new(cfg: &ScenarioConfig) -> Self {
        let mut g = Self {
            joint: colored_degree_pmf(cfg),
            mass: 1.0,
            mean_kc: 1.0,
            mean_ks: 1.0,
        };
        // normalizers from the same summation order make Φ(1, 1) == 1 exactly
        g.mass = g.raw_root(1.0, 1.0);
        g.mean_kc = g.raw_edge_community(1.0, 1.0);
        g.mean_ks = g.raw_edge_school(1.0, 1.0);
        g
    }

    fn powers(base: f64, max: usize) -> Vec<f64> {
        let mut out = Vec::with_capacity(max + 1);
        let mut acc = 1.0;
        for _ in 0..=max {
            out.push(acc);
            acc *= base;
        }
        out
    }

    fn sum(&self, x: f64, y: f64, weight: impl Fn(usize, usize, &[f64], &[f64]) -> f64) -> f64 {
        let xs = Self::powers(x, self.joint.max_k_c());
        let ys = Self::powers(y, self.joint.max_k_s());
        self.joint
            .iter()
            .map(|(d, p)| if p == 0.0 { 0.0 } else { p * weight(d.k_c, d.k_s, &xs, &ys) })
            .sum()
    }

    fn raw_root(&self, x: f64, y: f64) -> f64 {
        self.sum(x, y, |kc, ks, xs, ys| xs[kc] * ys[ks])
    }

    fn root(&self, x: f64, y: f64) -> f64 {
        self.raw_root(x, y) / self.mass
    }

    fn raw_edge_community(&self, x: f64, y: f64) -> f64 {
        self.sum(x, y, |kc, ks, xs, ys| {
            if kc == 0 {
                0.0
            } else {
                kc as f64 * xs[kc - 1] * ys[ks]
            }
        })
    }

    fn raw_edge_school(&self, x: f64, y: f64) -> f64 {
        self.sum(x, y, |kc, ks, xs, ys| {
            if ks == 0 {
                0.0
            } else {
                ks as f64 * xs[kc] * ys[ks - 1]
            }
        })
    }

    fn edge_community(&self, x: f64, y: f64) -> f64 {
        if self.mean_kc == 0.0 {
            return 1.0;
        }
        self.raw_edge_community(x, y) / self.mean_kc
    }

    fn edge_school(&self, x: f64, y: f64) -> f64 {
        if self.mean_ks == 0.0 {
            return 1.0;
        }
        self.raw_edge_school(x, y) / self.mean_ks
    }
}

/// Closed forms for Poisson layers, using `Σ_k p_k z^k = e^{λ(z-1)}`.
#[derive(Debug, Clone, Copy)]
pub struct PoissonPgf {
    pub community: f64,
    pub school: f64,
    pub alpha: f64,
}

impl PoissonPgf {
    fn school_root(&self, y: f64) -> f64 {
        self.alpha * (self.school * (y - 1.0)).exp() + (1.0 - self.alpha)
    }

    fn root(&self, x: f64, y: f64) -> f64 {
        (self.community * (x - 1.0)).exp() * self.school_root(y)
    }

    fn edge_community(&self, x: f64, y: f64) -> f64 {
        // the size-biased Poisson minus one is Poisson again
        self.root(x, y)
    }

    fn edge_school(&self, x: f64, y: f64) -> f64 {
        // only members have school edges, so membership drops out
        (self.community * (x - 1.0)).exp() * (self.school * (y - 1.0)).exp()
    }
}

/// Which layers carry edges at all.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ActiveLayers {
    pub community: bool,
    pub school: bool,
}

impl ActiveLayers {
    pub fn from_moments(m: &DegreeMoments) -> Self {
        Self {
            community: !m.community_empty(),
            school: !m.school_empty(),
        }
    }

    pub fn count(&self) -> usize {
        self.community as usize + self.school as usize
    }
}

/// Degree moments matching the generating functions `backend` will use:
/// exact Poisson moments beside the closed forms, pmf sums beside the grid.
pub(crate) fn moments_and_layers(cfg: &ScenarioConfig, backend: PgfBackend) -> (DegreeMoments, ActiveLayers) {
    let m = match (backend, cfg.poisson_means()) {
        (PgfBackend::Auto, Some((lc, ls))) => DegreeMoments {
            mean_kc: lc,
            mean_ks: cfg.alpha * ls,
            mean_kc2: lc + lc * lc,
            mean_ks2: cfg.alpha * (ls + ls * ls),
            mean_kcks: lc * cfg.alpha * ls,
        },
        _ => degree_moments(cfg),
    };
    (m, ActiveLayers::from_moments(&m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{DegreePmf, MaskSet};

    fn cfg(dc: DegreePmf, ds: DegreePmf, alpha: f64) -> ScenarioConfig {
        ScenarioConfig {
            n: 10,
            alpha,
            dist_c: dc,
            dist_s: ds,
            tc: 0.5,
            ts: 0.5,
            masks: MaskSet::unmasked(),
            emergence_threshold: 0.05,
        }
    }

    #[test]
    fn grid_matches_closed_form() {
        let c = cfg(DegreePmf::poisson(6.0), DegreePmf::poisson(8.0), 0.3);
        let grid = ColoredPgf::new(&c, PgfBackend::Grid);
        let fast = ColoredPgf::new(&c, PgfBackend::Auto);
        assert!(matches!(fast, ColoredPgf::Poisson(_)));
        for &(x, y) in &[(0.0, 0.0), (0.3, 0.9), (0.75, 0.1), (1.0, 1.0), (0.99, 0.5)] {
            assert!((grid.root(x, y) - fast.root(x, y)).abs() < 1e-9);
            assert!((grid.edge_community(x, y) - fast.edge_community(x, y)).abs() < 1e-9);
            assert!((grid.edge_school(x, y) - fast.edge_school(x, y)).abs() < 1e-9);
        }
    }

    #[test]
    fn conservation_at_one_is_exact() {
        let c = cfg(
            DegreePmf::explicit(vec![0.1, 0.3, 0.2, 0.4]),
            DegreePmf::explicit(vec![0.3, 0.3, 0.4]),
            0.7,
        );
        let g = ColoredPgf::new(&c, PgfBackend::Auto);
        assert_eq!(g.edge_community(1.0, 1.0), 1.0);
        assert_eq!(g.edge_school(1.0, 1.0), 1.0);
    }

    #[test]
    fn explicit_edge_sum_by_hand() {
        // p_c = [0, 0.5, 0.5], alpha = 1, p_s = [1]: Φc(x) = (0.5 + 2*0.5 x)/1.5
        let c = cfg(DegreePmf::explicit(vec![0.0, 0.5, 0.5]), DegreePmf::explicit(vec![1.0]), 1.0);
        let g = ColoredPgf::new(&c, PgfBackend::Auto);
        let x = 0.4;
        assert!((g.edge_community(x, 0.2) - (0.5 + x) / 1.5).abs() < 1e-15);
        assert!((g.root(x, 0.2) - (0.5 * x + 0.5 * x * x)).abs() < 1e-15);
    }
}
