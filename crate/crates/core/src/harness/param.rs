use std::fmt;
use std::str::FromStr;

use crate::error::Error;
use crate::model::{DegreeKind, ScenarioConfig};

/// A numeric scenario field that a sweep axis can set.
///
/// Mask indices are 0-based. `m[i]` rescales the other fractions
/// proportionally; `m[i]:m[j]` moves the difference onto `m[j]` only.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParamPath {
    N,
    Alpha,
    Tc,
    Ts,
    MeanCommunity,
    MeanSchool,
    Fraction(usize),
    FractionAgainst { set: usize, absorb: usize },
    EpsIn(usize),
    EpsOut(usize),
    EmergenceThreshold,
}

fn indexed(s: &str, name: &str) -> Option<Result<usize, Error>> {
    let inner = s.strip_prefix(name)?.strip_prefix('[')?.strip_suffix(']')?;
    Some(
        inner
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad index in parameter `{s}`"))),
    )
}

impl FromStr for ParamPath {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if let Some((a, b)) = s.split_once(':') {
            let set = indexed(a.trim(), "m");
            let absorb = indexed(b.trim(), "m");
            return match (set, absorb) {
                (Some(set), Some(absorb)) => {
                    let (set, absorb) = (set?, absorb?);
                    if set == absorb {
                        return Err(Error::Parse(format!("`{s}` pairs a fraction with itself")));
                    }
                    Ok(ParamPath::FractionAgainst { set, absorb })
                }
                _ => Err(Error::Parse(format!("`{s}`: only `m[i]:m[j]` pairs are supported"))),
            };
        }
        Ok(match s {
            "n" => ParamPath::N,
            "alpha" => ParamPath::Alpha,
            "tc" => ParamPath::Tc,
            "ts" => ParamPath::Ts,
            "dist_c.mean" => ParamPath::MeanCommunity,
            "dist_s.mean" => ParamPath::MeanSchool,
            "emergence_threshold" => ParamPath::EmergenceThreshold,
            _ => {
                if let Some(i) = indexed(s, "m") {
                    ParamPath::Fraction(i?)
                } else if let Some(i) = indexed(s, "eps_in") {
                    ParamPath::EpsIn(i?)
                } else if let Some(i) = indexed(s, "eps_out") {
                    ParamPath::EpsOut(i?)
                } else {
                    return Err(Error::Parse(format!("unknown sweep parameter `{s}`")));
                }
            }
        })
    }
}

impl fmt::Display for ParamPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamPath::N => write!(f, "n"),
            ParamPath::Alpha => write!(f, "alpha"),
            ParamPath::Tc => write!(f, "tc"),
            ParamPath::Ts => write!(f, "ts"),
            ParamPath::MeanCommunity => write!(f, "dist_c.mean"),
            ParamPath::MeanSchool => write!(f, "dist_s.mean"),
            ParamPath::Fraction(i) => write!(f, "m[{i}]"),
            ParamPath::FractionAgainst { set, absorb } => write!(f, "m[{set}]:m[{absorb}]"),
            ParamPath::EpsIn(i) => write!(f, "eps_in[{i}]"),
            ParamPath::EpsOut(i) => write!(f, "eps_out[{i}]"),
            ParamPath::EmergenceThreshold => write!(f, "emergence_threshold"),
        }
    }
}

impl ParamPath {
    /// Checks that the path resolves against `cfg` (indices in range, Poisson
    /// layer for a mean-degree axis).
    pub fn check(&self, cfg: &ScenarioConfig) -> Result<(), Error> {
        let m = cfg.mask_types();
        let in_range = |i: usize| {
            if i < m {
                Ok(())
            } else {
                Err(Error::Parse(format!("parameter `{self}` indexes past {m} mask types")))
            }
        };
        match *self {
            ParamPath::Fraction(i) | ParamPath::EpsIn(i) | ParamPath::EpsOut(i) => in_range(i),
            ParamPath::FractionAgainst { set, absorb } => in_range(set).and(in_range(absorb)),
            ParamPath::MeanCommunity if cfg.dist_c.poisson_mean().is_none() => {
                Err(Error::Parse("dist_c.mean needs a Poisson community layer".into()))
            }
            ParamPath::MeanSchool if cfg.dist_s.poisson_mean().is_none() => {
                Err(Error::Parse("dist_s.mean needs a Poisson school layer".into()))
            }
            _ => Ok(()),
        }
    }

    /// Writes `value` into `cfg`. The result may be invalid; callers validate.
    pub fn apply(&self, cfg: &mut ScenarioConfig, value: f64) -> Result<(), Error> {
        self.check(cfg)?;
        match *self {
            ParamPath::N => {
                if value < 1.0 || value.fract() != 0.0 {
                    return Err(Error::Parse(format!("n = {value} is not a positive integer")));
                }
                cfg.n = value as usize;
            }
            ParamPath::Alpha => cfg.alpha = value,
            ParamPath::Tc => cfg.tc = value,
            ParamPath::Ts => cfg.ts = value,
            ParamPath::MeanCommunity => cfg.dist_c.kind = DegreeKind::Poisson { mean: value },
            ParamPath::MeanSchool => cfg.dist_s.kind = DegreeKind::Poisson { mean: value },
            ParamPath::Fraction(i) => {
                let f = &mut cfg.masks.fractions;
                let rest: f64 = f.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, x)| x).sum();
                let others = f.len() - 1;
                for (j, x) in f.iter_mut().enumerate() {
                    if j == i {
                        *x = value;
                    } else if rest > 0.0 {
                        *x *= (1.0 - value) / rest;
                    } else {
                        *x = (1.0 - value) / others as f64;
                    }
                }
            }
            ParamPath::FractionAgainst { set, absorb } => {
                let f = &mut cfg.masks.fractions;
                f[absorb] += f[set] - value;
                f[set] = value;
            }
            ParamPath::EpsIn(i) => cfg.masks.eps_in[i] = value,
            ParamPath::EpsOut(i) => cfg.masks.eps_out[i] = value,
            ParamPath::EmergenceThreshold => cfg.emergence_threshold = value,
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{DegreePmf, MaskSet};

    fn base() -> ScenarioConfig {
        ScenarioConfig {
            n: 100,
            alpha: 0.5,
            dist_c: DegreePmf::poisson(6.0),
            dist_s: DegreePmf::poisson(8.0),
            tc: 0.6,
            ts: 0.5,
            masks: MaskSet::new(vec![0.2, 0.3, 0.5], vec![0.7, 0.3, 0.0], vec![0.3, 0.7, 0.0]),
            emergence_threshold: 0.05,
        }
    }

    #[test]
    fn round_trips_names() {
        for s in ["n", "alpha", "tc", "ts", "dist_c.mean", "dist_s.mean", "m[2]", "m[1]:m[0]", "eps_in[0]", "eps_out[1]", "emergence_threshold"] {
            assert_eq!(s.parse::<ParamPath>().unwrap().to_string(), s);
        }
        assert!("beta".parse::<ParamPath>().is_err());
        assert!("m[x]".parse::<ParamPath>().is_err());
        assert!("m[1]:m[1]".parse::<ParamPath>().is_err());
    }

    #[test]
    fn proportional_renormalization() {
        let mut c = base();
        ParamPath::Fraction(2).apply(&mut c, 0.0).unwrap();
        assert!((c.masks.fractions[0] - 0.4).abs() < 1e-15);
        assert!((c.masks.fractions[1] - 0.6).abs() < 1e-15);
        assert!(c.validate().is_ok());
    }

    #[test]
    fn pair_moves_difference() {
        let mut c = base();
        ParamPath::FractionAgainst { set: 1, absorb: 0 }.apply(&mut c, 0.7).unwrap();
        assert!((c.masks.fractions[0] - (-0.2)).abs() < 1e-15);
        assert!(c.validate().is_err());
        let mut c = base();
        ParamPath::FractionAgainst { set: 1, absorb: 0 }.apply(&mut c, 0.1).unwrap();
        assert_eq!(c.masks.fractions[2], 0.5);
        assert!((c.masks.fractions[0] - 0.4).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_targets() {
        let mut c = base();
        assert!(ParamPath::EpsIn(3).apply(&mut c, 0.1).is_err());
        assert!(ParamPath::N.apply(&mut c, 10.5).is_err());
        c.dist_s = DegreePmf::explicit(vec![0.5, 0.5]);
        assert!(ParamPath::MeanSchool.apply(&mut c, 3.0).is_err());
    }
}
