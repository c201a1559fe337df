//! The mean-degree experiment, analytic only, written as CSV to stdout.

use maskperc::harness::{preset, run_sweep, sweep_comments, write_csv, Mode, Preset};

fn main() -> Result<(), maskperc::Error> {
    let mut spec = preset(Preset::FigA, 0);
    spec.mode = Mode::Analytic;
    let rows = run_sweep(&spec, 0)?;
    write_csv(std::io::stdout().lock(), &rows, &sweep_comments(&spec, 0, &rows))?;
    Ok(())
}
