//! How far the baseline transmissibilities can be scaled before the
//! epidemic threshold is crossed, for several mask mixes.

use maskperc::analytic::{critical_scaling, SolverOptions};
use maskperc::model::{DegreePmf, MaskSet, ScenarioConfig};

fn main() -> Result<(), maskperc::Error> {
    let opts = SolverOptions::default();
    println!("{:>10} {:>10} {:>10}", "masked", "rho", "theta*");
    for masked in [0.0, 0.2, 0.4, 0.6, 0.8, 1.0] {
        let cfg = ScenarioConfig {
            n: 10_000,
            alpha: 0.25,
            dist_c: DegreePmf::poisson(4.0),
            dist_s: DegreePmf::poisson(6.0),
            tc: 0.6,
            ts: 0.5,
            masks: MaskSet::new(vec![masked, 1.0 - masked], vec![0.5, 0.0], vec![0.6, 0.0]),
            emergence_threshold: 0.05,
        };
        let c = critical_scaling(&cfg, &opts)?;
        // theta* < 1 means the current transmissibilities are already supercritical
        println!("{masked:>10.1} {:>10.4} {:>10.4}", c.rho, c.theta);
    }
    Ok(())
}
