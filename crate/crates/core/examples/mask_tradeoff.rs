//! Inward-good against outward-good masks with a fixed unmasked tenth.
//! PE falls while ES rises as outward-good masks replace inward-good ones.

use maskperc::analytic::analyze;
use maskperc::harness::{preset, Preset};

fn main() -> Result<(), maskperc::Error> {
    let spec = preset(Preset::FigC, 0);
    println!("{:>8} {:>10} {:>10} {:>10}", "outward", "PE", "ES", "rho");
    for &m in &spec.axes[0].values {
        let r = analyze(&spec.scenario_at((m, None))?, &spec.solver)?;
        println!("{m:>8.1} {:>10.6} {:>10.6} {:>10.6}", r.pe_avg, r.es_total, r.rho);
    }
    Ok(())
}
