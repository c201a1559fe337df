//! Analytic report for a scenario file.
//!
//! cargo run --example analyze_scenario -- crates/core/scenarios/school_open.toml

use maskperc::analytic::analyze;
use maskperc::config::ScenarioFile;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/scenarios/school_open.toml").into());
    let file = ScenarioFile::load(path.as_ref())?;
    let report = analyze(&file.scenario, &file.run.solver)?;
    print!("{report}");
    Ok(())
}
