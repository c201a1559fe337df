use std::fmt;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{assign_masks, epidemic_cutoff, spread_from_seed, OutbreakOutcome};
use crate::model::{build_transmissibility, ScenarioConfig};
use crate::network::generate_multilayer;

/// Seeds for everything random in one trial, a pure function of
/// `(master_seed, trial)` so trials can run in any order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrialSeeds {
    pub graph: u64,
    pub masks: u64,
    pub seed_node: u64,
    pub spread: u64,
}

impl TrialSeeds {
    pub fn derive(master_seed: u64, trial: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
        rng.set_stream(trial);
        Self {
            graph: rng.next_u64(),
            masks: rng.next_u64(),
            seed_node: rng.next_u64(),
            spread: rng.next_u64(),
        }
    }
}

/// One independent trial: fresh network, fresh masks, uniform seed node.
pub fn run_trial(cfg: &ScenarioConfig, master_seed: u64, trial: u64) -> OutbreakOutcome {
    let seeds = TrialSeeds::derive(master_seed, trial);
    let graph = generate_multilayer(cfg, seeds.graph);
    let assignment = assign_masks(cfg.n, &cfg.masks, seeds.masks);
    let seed_node = ChaCha8Rng::seed_from_u64(seeds.seed_node).random_range(0..cfg.n);
    let t = build_transmissibility(cfg);
    let cutoff = epidemic_cutoff(cfg.emergence_threshold, cfg.n);
    spread_from_seed(&graph, &assignment, &t, seed_node, seeds.spread, cutoff)
}

/// Monte-Carlo estimates over independent trials.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialSummary {
    pub trials: usize,
    pub epidemics: usize,
    pub pe_hat: f64,
    /// Binomial standard error `sqrt(p(1-p)/trials)`.
    pub pe_se: f64,
    /// Mean final fraction over epidemic trials; `None` without any.
    pub es_hat: Option<f64>,
    pub es_se: Option<f64>,
    /// Mean fraction of each type infected, over epidemic trials.
    pub es_by_type_hat: Option<Vec<f64>>,
    pub es_by_type_se: Option<Vec<f64>>,
    /// Mean final fraction over all trials.
    pub mean_size_all: f64,
}

fn mean_and_se(values: &[f64]) -> (f64, f64) {
    let k = values.len() as f64;
    let mean = values.iter().sum::<f64>() / k;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (k - 1.0);
    (mean, (var / k).sqrt())
}

impl TrialSummary {
    /// Sequential reduction over outcomes in trial order.
    pub fn from_outcomes(n: usize, mask_types: usize, outcomes: &[OutbreakOutcome]) -> Self {
        let trials = outcomes.len();
        let epidemic: Vec<&OutbreakOutcome> = outcomes.iter().filter(|o| o.is_epidemic).collect();
        let pe_hat = epidemic.len() as f64 / trials as f64;
        let pe_se = (pe_hat * (1.0 - pe_hat) / trials as f64).sqrt();
        let mean_size_all = outcomes.iter().map(|o| o.infected_total as f64 / n as f64).sum::<f64>() / trials as f64;

        let (es_hat, es_se, es_by_type_hat, es_by_type_se) = if epidemic.is_empty() {
            (None, None, None, None)
        } else {
            let sizes: Vec<f64> = epidemic.iter().map(|o| o.infected_total as f64 / n as f64).collect();
            let (es, se) = mean_and_se(&sizes);
            let (by_type, by_type_se): (Vec<f64>, Vec<f64>) = (0..mask_types)
                .map(|i| {
                    let fr: Vec<f64> = epidemic
                        .iter()
                        .filter(|o| o.population_by_type[i] > 0)
                        .map(|o| o.infected_by_type[i] as f64 / o.population_by_type[i] as f64)
                        .collect();
                    if fr.is_empty() {
                        (0.0, 0.0)
                    } else {
                        mean_and_se(&fr)
                    }
                })
                .unzip();
            (Some(es), Some(se), Some(by_type), Some(by_type_se))
        };

        Self {
            trials,
            epidemics: epidemic.len(),
            pe_hat,
            pe_se,
            es_hat,
            es_se,
            es_by_type_hat,
            es_by_type_se,
            mean_size_all,
        }
    }
}

/// Runs `trials` independent trials on the current rayon pool. The result is
/// bit-identical for any number of worker threads.
pub fn run_trials(cfg: &ScenarioConfig, trials: usize, master_seed: u64) -> crate::Result<TrialSummary> {
    cfg.validate()?;
    assert!(trials >= 1, "at least one trial is required");
    let outcomes: Vec<OutbreakOutcome> = (0..trials as u64)
        .into_par_iter()
        .map(|t| run_trial(cfg, master_seed, t))
        .collect();
    Ok(TrialSummary::from_outcomes(cfg.n, cfg.mask_types(), &outcomes))
}

impl fmt::Display for TrialSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let opt = |v: Option<f64>| v.map_or("undefined (no epidemic trial)".to_string(), |x| format!("{x:.6}"));
        writeln!(f, "trials         {}", self.trials)?;
        writeln!(f, "epidemics      {}", self.epidemics)?;
        writeln!(f, "pe_hat         {:.6} ± {:.6}", self.pe_hat, self.pe_se)?;
        writeln!(f, "es_hat         {} ± {}", opt(self.es_hat), opt(self.es_se))?;
        if let Some(by_type) = &self.es_by_type_hat {
            let s: Vec<String> = by_type.iter().map(|x| format!("{x:.6}")).collect();
            writeln!(f, "es_by_type     [{}]", s.join(", "))?;
        }
        writeln!(f, "mean_size_all  {:.6}", self.mean_size_all)
    }
}
