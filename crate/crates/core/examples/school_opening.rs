//! School membership against the share of surgical masks: where does the
//! threshold sit?

use maskperc::harness::{preset, Preset};
use maskperc::analytic::analyze;

fn main() -> Result<(), maskperc::Error> {
    let spec = preset(Preset::FigB, 0);
    let shares = &spec.axes[1].values;
    print!("{:>6}", "alpha");
    for m in shares {
        print!("   m={m:.1} (rho)  ");
    }
    println!();
    for &alpha in &spec.axes[0].values {
        print!("{alpha:>6.1}");
        for &m in shares {
            let r = analyze(&spec.scenario_at((alpha, Some(m)))?, &spec.solver)?;
            print!("  {:>6.4} ({:.3})", r.pe_avg, r.rho);
        }
        println!();
    }
    Ok(())
}
