use crate::error::ValidationIssue;

const FRACTION_SUM_TOL: f64 = 1e-12;

/// The mask types present in the population.
///
/// Type `i` is worn by a fraction `fractions[i]` of nodes and filters incoming
/// droplets with probability `eps_in[i]`, outgoing ones with `eps_out[i]`.
/// "No mask" is just a type with both efficiencies at zero.
#[derive(Debug, Clone, PartialEq)]
pub struct MaskSet {
    pub fractions: Vec<f64>,
    pub eps_in: Vec<f64>,
    pub eps_out: Vec<f64>,
}

impl MaskSet {
    pub fn new(fractions: Vec<f64>, eps_in: Vec<f64>, eps_out: Vec<f64>) -> Self {
        Self {
            fractions,
            eps_in,
            eps_out,
        }
    }

    /// A single unmasked type covering the whole population.
    pub fn unmasked() -> Self {
        Self::new(vec![1.0], vec![0.0], vec![0.0])
    }

    pub fn len(&self) -> usize {
        self.fractions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fractions.is_empty()
    }

    pub(crate) fn check(&self, issues: &mut Vec<ValidationIssue>) {
        let m = self.fractions.len();
        if m == 0 {
            issues.push(ValidationIssue::new("m", "at least one mask type is required"));
        }
        if self.eps_in.len() != m {
            issues.push(ValidationIssue::new(
                "eps_in",
                format!("length {} does not match m length {m}", self.eps_in.len()),
            ));
        }
        if self.eps_out.len() != m {
            issues.push(ValidationIssue::new(
                "eps_out",
                format!("length {} does not match m length {m}", self.eps_out.len()),
            ));
        }
        for (i, &f) in self.fractions.iter().enumerate() {
            if f < 0.0 || !f.is_finite() {
                issues.push(ValidationIssue::new(
                    format!("m[{i}]"),
                    format!("fraction {f} is negative or not finite"),
                ));
            }
        }
        let total: f64 = self.fractions.iter().sum();
        if m > 0 && (total.is_nan() || (total - 1.0).abs() > FRACTION_SUM_TOL) {
            issues.push(ValidationIssue::new(
                "m",
                format!("m does not sum to 1 (sum = {total})"),
            ));
        }
        for (name, eps) in [("eps_in", &self.eps_in), ("eps_out", &self.eps_out)] {
            for (i, &e) in eps.iter().enumerate() {
                if !(0.0..=1.0).contains(&e) {
                    issues.push(ValidationIssue::new(
                        format!("{name}[{i}]"),
                        format!("efficiency out of range [0,1]: {e}"),
                    ));
                }
            }
        }
    }
}
