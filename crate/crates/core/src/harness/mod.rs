//! Parameter sweeps, the figure presets and CSV output.

mod csv;
mod param;
mod presets;
mod sweep;

pub use csv::{csv_string, emit_csv, format_row, format_sig, sweep_comments, write_csv, CSV_HEADER};
pub use param::ParamPath;
pub use presets::{preset, Preset};
pub use sweep::{point_seed, run_sweep, Mode, ResultRow, SweepAxis, SweepSpec};
