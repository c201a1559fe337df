use crate::error::{ValidationIssue, ValidationReport};
use crate::model::{DegreePmf, MaskSet};

pub const DEFAULT_EMERGENCE_THRESHOLD: f64 = 0.05;

/// A full model instance: both layers, school membership and the mask mix.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    /// Population size for finite networks.
    pub n: usize,
    /// Probability that a node belongs to the school layer. Zero closes the school.
    pub alpha: f64,
    pub dist_c: DegreePmf,
    pub dist_s: DegreePmf,
    /// Unmasked transmissibility over a community edge.
    pub tc: f64,
    /// Unmasked transmissibility over a school edge.
    pub ts: f64,
    pub masks: MaskSet,
    /// Final-size fraction from which a simulated outbreak counts as an epidemic.
    pub emergence_threshold: f64,
}

impl ScenarioConfig {
    /// Collects every violated invariant.
    pub fn validate(&self) -> Result<(), ValidationReport> {
        let mut issues = Vec::new();
        if self.n == 0 {
            issues.push(ValidationIssue::new("n", "node count must be positive"));
        }
        if !(0.0..=1.0).contains(&self.alpha) {
            issues.push(ValidationIssue::new(
                "alpha",
                format!("school membership {} outside [0,1]", self.alpha),
            ));
        }
        for (name, t) in [("tc", self.tc), ("ts", self.ts)] {
            if !(0.0..=1.0).contains(&t) {
                issues.push(ValidationIssue::new(
                    name,
                    format!("transmissibility {t} outside [0,1]"),
                ));
            }
        }
        if !(self.emergence_threshold > 0.0 && self.emergence_threshold < 1.0) {
            issues.push(ValidationIssue::new(
                "emergence_threshold",
                format!("{} outside (0,1)", self.emergence_threshold),
            ));
        }
        self.dist_c.check("dist_c", &mut issues);
        self.dist_s.check("dist_s", &mut issues);
        self.masks.check(&mut issues);
        if issues.is_empty() {
            Ok(())
        } else {
            Err(ValidationReport { issues })
        }
    }

    pub fn mask_types(&self) -> usize {
        self.masks.len()
    }

    /// Both layers Poisson, so closed-form generating functions apply.
    pub fn poisson_means(&self) -> Option<(f64, f64)> {
        Some((self.dist_c.poisson_mean()?, self.dist_s.poisson_mean()?))
    }
}

/// Returns the scenario unchanged if valid, otherwise every violation.
pub fn validate_scenario(cfg: ScenarioConfig) -> Result<ScenarioConfig, ValidationReport> {
    cfg.validate()?;
    Ok(cfg)
}
