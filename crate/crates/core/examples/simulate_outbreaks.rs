//! Monte-Carlo estimates next to the analytic values for one scenario.
//!
//! cargo run --release --example simulate_outbreaks -- [trials] [seed]

use maskperc::analytic::{analyze, SolverOptions};
use maskperc::model::{DegreePmf, MaskSet, ScenarioConfig};
use maskperc::sim::run_trials;

fn main() -> Result<(), maskperc::Error> {
    let mut args = std::env::args().skip(1);
    let trials = args.next().and_then(|a| a.parse().ok()).unwrap_or(500);
    let seed = args.next().and_then(|a| a.parse().ok()).unwrap_or(7);

    let cfg = ScenarioConfig {
        n: 10_000,
        alpha: 0.25,
        dist_c: DegreePmf::poisson(4.0),
        dist_s: DegreePmf::poisson(6.0),
        tc: 0.6,
        ts: 0.5,
        masks: MaskSet::new(vec![0.2, 0.8], vec![0.5, 0.0], vec![0.6, 0.0]),
        emergence_threshold: 0.05,
    };
    let exact = analyze(&cfg, &SolverOptions::default())?;
    let sim = run_trials(&cfg, trials, seed)?;

    println!("{:<12} {:>10} {:>18}", "", "analytic", "simulated");
    println!("{:<12} {:>10.4} {:>10.4} ± {:.4}", "PE", exact.pe_avg, sim.pe_hat, sim.pe_se);
    if let (Some(es), Some(se)) = (sim.es_hat, sim.es_se) {
        println!("{:<12} {:>10.4} {:>10.4} ± {:.4}", "ES", exact.es_total, es, se);
    }
    if let Some(by_type) = &sim.es_by_type_hat {
        for (i, (a, s)) in exact.es_by_type.iter().zip(by_type).enumerate() {
            println!("{:<12} {a:>10.4} {s:>10.4}", format!("ES type {i}"));
        }
    }
    Ok(())
}
