//! The three published experiments as ready-made sweeps.
//!
//! Experiments A and C leave the school membership unstated; both use
//! `alpha = 0.25`. Experiment A also leaves `tc`, `ts` unstated and reuses
//! `0.6` and `0.5` from the other two. Both choices are written into the CSV
//! metadata.

use std::fmt;
use std::str::FromStr;

use super::{Mode, ParamPath, SweepAxis, SweepSpec};
use crate::analytic::SolverOptions;
use crate::error::Error;
use crate::model::{DegreePmf, MaskSet, ScenarioConfig, DEFAULT_EMERGENCE_THRESHOLD};

const N: usize = 10_000;
const UNSTATED_ALPHA: f64 = 0.25;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    /// PE and ES against both layers' mean degrees, one masked type.
    FigA,
    /// School membership against the surgical-mask share.
    FigB,
    /// Inward-good against outward-good masks at a fixed no-mask share.
    FigC,
}

impl Preset {
    pub const ALL: [Preset; 3] = [Preset::FigA, Preset::FigB, Preset::FigC];

    pub fn default_trials(self) -> usize {
        match self {
            Preset::FigB => 500,
            Preset::FigA | Preset::FigC => 1000,
        }
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "figA" => Ok(Preset::FigA),
            "figB" => Ok(Preset::FigB),
            "figC" => Ok(Preset::FigC),
            _ => Err(Error::Parse(format!("unknown preset `{s}` (figA, figB, figC)"))),
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Preset::FigA => "figA",
            Preset::FigB => "figB",
            Preset::FigC => "figC",
        })
    }
}

fn scenario(alpha: f64, md1: f64, md2: f64, masks: MaskSet) -> ScenarioConfig {
    ScenarioConfig {
        n: N,
        alpha,
        dist_c: DegreePmf::poisson(md1),
        dist_s: DegreePmf::poisson(md2),
        tc: 0.6,
        ts: 0.5,
        masks,
        emergence_threshold: DEFAULT_EMERGENCE_THRESHOLD,
    }
}

fn spec(base: ScenarioConfig, axes: Vec<SweepAxis>, trials: usize, notes: &[&str]) -> SweepSpec {
    SweepSpec {
        base,
        axes,
        trials,
        mode: Mode::Both,
        solver: SolverOptions::default(),
        timing: false,
        notes: notes.iter().map(|s| s.to_string()).collect(),
    }
}

/// The sweep for `which` with `trials` simulation runs per point.
pub fn preset(which: Preset, trials: usize) -> SweepSpec {
    let tenths = vec![0.1, 0.3, 0.5, 0.7, 0.9];
    match which {
        Preset::FigA => spec(
            scenario(
                UNSTATED_ALPHA,
                4.0,
                4.0,
                MaskSet::new(vec![0.2, 0.8], vec![0.5, 0.0], vec![0.6, 0.0]),
            ),
            vec![
                SweepAxis::new(ParamPath::MeanCommunity, "md1", (1..=8).map(f64::from).collect()),
                SweepAxis::new(ParamPath::MeanSchool, "md2", vec![2.0, 4.0, 6.0, 8.0]),
            ],
            trials,
            &[
                "figA: masked type 0 (m = 0.2), unmasked type 1",
                "tc = 0.6 and ts = 0.5 are assumed; the experiment does not state them",
                "alpha = 0.25 is assumed; the experiment does not state it",
            ],
        ),
        Preset::FigB => spec(
            scenario(0.5, 6.0, 8.0, MaskSet::new(vec![0.5, 0.5], vec![0.7, 0.5], vec![0.8, 0.5])),
            vec![
                SweepAxis::new(ParamPath::Alpha, "alpha", tenths.clone()),
                SweepAxis::new(ParamPath::Fraction(0), "m_surgical", tenths),
            ],
            trials,
            &["figB: type 0 surgical (eps_in 0.7, eps_out 0.8), type 1 cloth (0.5, 0.5)"],
        ),
        Preset::FigC => spec(
            scenario(
                UNSTATED_ALPHA,
                6.0,
                8.0,
                MaskSet::new(vec![0.8, 0.1, 0.1], vec![0.7, 0.3, 0.0], vec![0.3, 0.7, 0.0]),
            ),
            vec![SweepAxis::new(
                ParamPath::FractionAgainst { set: 1, absorb: 0 },
                "m_outward_good",
                vec![0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7],
            )],
            trials,
            &[
                "figC: type 0 inward-good, type 1 outward-good, type 2 no mask fixed at 0.1",
                "alpha = 0.25 is assumed; the experiment does not state it",
            ],
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_point_is_valid() {
        for p in Preset::ALL {
            let s = preset(p, 10);
            s.check().unwrap();
            for point in s.points() {
                s.scenario_at(point).unwrap();
            }
            assert_eq!(p.to_string().parse::<Preset>().unwrap(), p);
        }
    }

    #[test]
    fn fig_c_keeps_no_mask_share() {
        let s = preset(Preset::FigC, 10);
        for point in s.points() {
            let cfg = s.scenario_at(point).unwrap();
            assert_eq!(cfg.masks.fractions[2], 0.1);
            assert!((cfg.masks.fractions[0] + cfg.masks.fractions[1] - 0.9).abs() < 1e-12);
        }
    }
}
