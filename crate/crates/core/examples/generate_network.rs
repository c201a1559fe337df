//! Build one two-layer network and compare its empirical statistics with the
//! degree distributions it was drawn from.

use maskperc::model::{DegreePmf, MaskSet, ScenarioConfig};
use maskperc::network::{generate_multilayer, write_edge_list, Layer};

fn main() {
    let cfg = ScenarioConfig {
        n: 20_000,
        alpha: 0.3,
        dist_c: DegreePmf::poisson(6.0),
        dist_s: DegreePmf::poisson(8.0),
        tc: 0.6,
        ts: 0.5,
        masks: MaskSet::unmasked(),
        emergence_threshold: 0.05,
    };
    let g = generate_multilayer(&cfg, 42);
    let members = g.school_members().iter().filter(|m| **m).count();
    let mean = |layer| g.degrees(layer).iter().sum::<usize>() as f64 / cfg.n as f64;

    println!("nodes                {}", g.n());
    println!("community edges      {}", g.edges(Layer::Community).len());
    println!("school edges         {}", g.edges(Layer::School).len());
    println!("school members       {members} (expected {:.0})", cfg.alpha * cfg.n as f64);
    println!("mean community deg   {:.4} (target 6)", mean(Layer::Community));
    println!("mean school deg      {:.4} (target {:.1} over everyone)", mean(Layer::School), 0.3 * 8.0);
    println!("clustering           {:.5}", g.global_clustering());

    if std::env::args().any(|a| a == "--dump") {
        print!("{}", write_edge_list(&g, None));
    }
}
