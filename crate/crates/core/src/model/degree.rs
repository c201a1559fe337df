use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::error::{Error, ValidationIssue};

pub const DEFAULT_TAIL_TOLERANCE: f64 = 1e-10;
const EXPLICIT_SUM_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub enum DegreeKind {
    Poisson { mean: f64 },
    /// `p[k]` is the probability of degree `k`.
    Explicit(Vec<f64>),
}

/// Degree distribution of one layer.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreePmf {
    pub kind: DegreeKind,
    /// Poisson tails beyond this mass are cut off.
    pub tail_tolerance: f64,
}

impl DegreePmf {
    pub fn poisson(mean: f64) -> Self {
        Self {
            kind: DegreeKind::Poisson { mean },
            tail_tolerance: DEFAULT_TAIL_TOLERANCE,
        }
    }

    pub fn explicit(p: Vec<f64>) -> Self {
        Self {
            kind: DegreeKind::Explicit(p),
            tail_tolerance: DEFAULT_TAIL_TOLERANCE,
        }
    }

    pub fn with_tail_tolerance(mut self, tol: f64) -> Self {
        self.tail_tolerance = tol;
        self
    }

    pub fn poisson_mean(&self) -> Option<f64> {
        match self.kind {
            DegreeKind::Poisson { mean } => Some(mean),
            DegreeKind::Explicit(_) => None,
        }
    }

    /// Probability vector over `k = 0..=k_max`.
    ///
    /// Poisson laws are truncated at the first `k_max` whose tail mass is
    /// below `tail_tolerance` and renormalized.
    pub fn probabilities(&self) -> Vec<f64> {
        match &self.kind {
            DegreeKind::Explicit(p) => p.clone(),
            DegreeKind::Poisson { mean } => truncated_poisson(*mean, self.tail_tolerance),
        }
    }

    pub fn mean(&self) -> f64 {
        self.probabilities()
            .iter()
            .enumerate()
            .map(|(k, p)| k as f64 * p)
            .sum()
    }

    pub fn second_moment(&self) -> f64 {
        self.probabilities()
            .iter()
            .enumerate()
            .map(|(k, p)| (k * k) as f64 * p)
            .sum()
    }

    pub fn sampler(&self) -> DegreeSampler {
        DegreeSampler::new(&self.probabilities())
    }

    pub(crate) fn check(&self, field: &str, issues: &mut Vec<ValidationIssue>) {
        if !(self.tail_tolerance > 0.0 && self.tail_tolerance < 1.0) {
            issues.push(ValidationIssue::new(
                field,
                format!("tail tolerance {} outside (0,1)", self.tail_tolerance),
            ));
        }
        match &self.kind {
            DegreeKind::Poisson { mean } => {
                if !(mean.is_finite() && *mean >= 0.0) {
                    issues.push(ValidationIssue::new(
                        field,
                        format!("poisson mean {mean} must be finite and >= 0"),
                    ));
                }
            }
            DegreeKind::Explicit(p) => {
                if p.is_empty() {
                    issues.push(ValidationIssue::new(field, "explicit pmf is empty"));
                    return;
                }
                if let Some((k, v)) = p.iter().enumerate().find(|(_, v)| v.is_nan() || **v < 0.0) {
                    issues.push(ValidationIssue::new(
                        field,
                        format!("explicit pmf entry p[{k}] = {v} is negative"),
                    ));
                }
                let total: f64 = p.iter().sum();
                if total.is_nan() || (total - 1.0).abs() > EXPLICIT_SUM_TOL {
                    issues.push(ValidationIssue::new(
                        field,
                        format!("explicit pmf does not sum to 1 (sum = {total})"),
                    ));
                }
            }
        }
    }
}

fn truncated_poisson(mean: f64, tail_tolerance: f64) -> Vec<f64> {
    let mut p = Vec::new();
    // log-space keeps large means from underflowing e^{-mean}
    let ln_mean = mean.ln();
    let mut ln_pk = -mean;
    let mut k = 0usize;
    loop {
        let pk = ln_pk.exp();
        p.push(pk);
        let next = if mean > 0.0 {
            (ln_pk + ln_mean - ((k + 1) as f64).ln()).exp()
        } else {
            0.0
        };
        // geometric bound on the tail beyond k once the terms are decreasing
        let ratio = mean / (k + 2) as f64;
        if ratio < 1.0 && next / (1.0 - ratio) < tail_tolerance {
            break;
        }
        if mean > 0.0 {
            ln_pk += ln_mean - ((k + 1) as f64).ln();
        }
        k += 1;
    }
    let total: f64 = p.iter().sum();
    p.iter_mut().for_each(|v| *v /= total);
    p
}

/// Inverse-CDF sampler over a finite degree pmf.
#[derive(Debug, Clone)]
pub struct DegreeSampler {
    cumulative: Vec<f64>,
    has_even: bool,
}

impl DegreeSampler {
    fn new(p: &[f64]) -> Self {
        let mut acc = 0.0;
        let cumulative: Vec<f64> = p
            .iter()
            .map(|v| {
                acc += v;
                acc
            })
            .collect();
        let has_even = p.iter().step_by(2).any(|v| *v > 0.0);
        Self {
            cumulative,
            has_even,
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        let total = *self.cumulative.last().unwrap_or(&1.0);
        let u: f64 = rng.random::<f64>() * total;
        let idx = self.cumulative.partition_point(|c| *c <= u);
        idx.min(self.cumulative.len().saturating_sub(1))
    }

    /// True if some even degree has positive probability.
    pub fn has_even_support(&self) -> bool {
        self.has_even
    }

    /// True if some odd degree has positive probability.
    pub fn has_odd_support(&self) -> bool {
        let mut prev = 0.0;
        for (k, c) in self.cumulative.iter().enumerate() {
            if k % 2 == 1 && *c > prev {
                return true;
            }
            prev = *c;
        }
        false
    }
}

impl fmt::Display for DegreePmf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            DegreeKind::Poisson { mean } => write!(f, "poisson:{mean}"),
            DegreeKind::Explicit(p) => {
                write!(f, "explicit:")?;
                for (i, v) in p.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{v}")?;
                }
                Ok(())
            }
        }
    }
}

/// Parses `poisson:<mean>` or `explicit:<p0,p1,...>`.
impl FromStr for DegreePmf {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (kind, rest) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("degree distribution `{s}` lacks a `kind:` prefix")))?;
        let num = |t: &str| {
            t.trim()
                .parse::<f64>()
                .map_err(|e| Error::Parse(format!("bad number `{t}` in `{s}`: {e}")))
        };
        match kind.trim() {
            "poisson" => Ok(DegreePmf::poisson(num(rest)?)),
            "explicit" => {
                let p = rest.split(',').map(num).collect::<Result<Vec<_>, _>>()?;
                Ok(DegreePmf::explicit(p))
            }
            other => Err(Error::Parse(format!("unknown degree distribution kind `{other}`"))),
        }
    }
}

/// Community and school degree of one node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ColoredDegree {
    pub k_c: usize,
    pub k_s: usize,
}
