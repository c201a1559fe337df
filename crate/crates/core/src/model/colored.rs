use crate::model::{ColoredDegree, ScenarioConfig};

/// Joint pmf of (community degree, school degree) on a dense truncated grid.
///
/// School membership is folded into the school factor:
/// `P[(k_c, k_s)] = p_c(k_c) * (alpha * p_s(k_s) + (1 - alpha) * 1[k_s = 0])`.
#[derive(Debug, Clone, PartialEq)]
pub struct ColoredDegreePmf {
    community: Vec<f64>,
    school: Vec<f64>,
}

impl ColoredDegreePmf {
    pub fn max_k_c(&self) -> usize {
        self.community.len() - 1
    }

    pub fn max_k_s(&self) -> usize {
        self.school.len() - 1
    }

    pub fn prob(&self, d: ColoredDegree) -> f64 {
        match (self.community.get(d.k_c), self.school.get(d.k_s)) {
            (Some(a), Some(b)) => a * b,
            _ => 0.0,
        }
    }

    /// All grid cells with their probability, community degree outermost.
    pub fn iter(&self) -> impl Iterator<Item = (ColoredDegree, f64)> + '_ {
        self.community.iter().enumerate().flat_map(move |(k_c, pc)| {
            self.school
                .iter()
                .enumerate()
                .map(move |(k_s, ps)| (ColoredDegree { k_c, k_s }, pc * ps))
        })
    }

    pub fn community_marginal(&self) -> Vec<f64> {
        (0..self.community.len())
            .map(|k_c| (0..self.school.len()).map(|k_s| self.prob(ColoredDegree { k_c, k_s })).sum())
            .collect()
    }

    pub fn school_marginal(&self) -> Vec<f64> {
        (0..self.school.len())
            .map(|k_s| (0..self.community.len()).map(|k_c| self.prob(ColoredDegree { k_c, k_s })).sum())
            .collect()
    }
}

pub fn colored_degree_pmf(cfg: &ScenarioConfig) -> ColoredDegreePmf {
    let community = cfg.dist_c.probabilities();
    let mut school: Vec<f64> = cfg.dist_s.probabilities().iter().map(|p| cfg.alpha * p).collect();
    if school.is_empty() {
        school.push(0.0);
    }
    school[0] += 1.0 - cfg.alpha;
    if cfg.alpha == 0.0 {
        school.truncate(1);
    }
    ColoredDegreePmf { community, school }
}

/// Population moments of the joint colored degree.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DegreeMoments {
    pub mean_kc: f64,
    /// Includes the zero degrees of non-members.
    pub mean_ks: f64,
    pub mean_kc2: f64,
    pub mean_ks2: f64,
    pub mean_kcks: f64,
}

impl DegreeMoments {
    /// No community edges exist; community equations are skipped.
    pub fn community_empty(&self) -> bool {
        self.mean_kc <= 0.0
    }

    /// No school edges exist; school equations are skipped.
    pub fn school_empty(&self) -> bool {
        self.mean_ks <= 0.0
    }
}

pub fn degree_moments(cfg: &ScenarioConfig) -> DegreeMoments {
    let pc = cfg.dist_c.probabilities();
    let ps = cfg.dist_s.probabilities();
    let moment = |p: &[f64], order: i32| -> f64 {
        p.iter()
            .enumerate()
            .map(|(k, v)| (k as f64).powi(order) * v)
            .sum()
    };
    let mean_kc = moment(&pc, 1);
    let mean_ks = cfg.alpha * moment(&ps, 1);
    DegreeMoments {
        mean_kc,
        mean_ks,
        mean_kc2: moment(&pc, 2),
        mean_ks2: cfg.alpha * moment(&ps, 2),
        mean_kcks: mean_kc * mean_ks,
    }
}
