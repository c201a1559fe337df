//! Exact enumeration on a tiny graph against the simulator.

use maskperc::sim::{Fixture, OracleComparison};

// A 4-node path plus one school edge; type 1 wears an outward-filtering mask.
const FIXTURE: &str = "\
4 0.5 0
school 2 3
masks 1 2 1 2
eps_in 0 0.3
eps_out 0 0.7
tc 0.8
ts 0.6
cutoff 3
0 1 c
1 2 c
2 3 s
";

fn main() -> Result<(), maskperc::Error> {
    let fixture = Fixture::parse(FIXTURE)?;
    let exact = fixture.oracle()?;
    for (seed, (pe, size)) in exact.exact_pe_per_seed.iter().zip(&exact.exact_mean_size_per_seed).enumerate() {
        println!("seed {seed}: P(size >= 3) = {pe:.6}, E[size] = {size:.6}");
    }
    let cmp = OracleComparison::new(&exact, fixture.monte_carlo(100_000, 1));
    println!(
        "uniform seed: exact pe {:.5} vs mc {:.5} ({:.2} se); exact size {:.5} vs mc {:.5} ({:.2} se)",
        cmp.exact_pe, cmp.estimate.pe_hat, cmp.pe_sigmas, cmp.exact_mean_size, cmp.estimate.mean_size_hat, cmp.size_sigmas
    );
    Ok(())
}
