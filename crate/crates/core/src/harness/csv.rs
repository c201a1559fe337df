//! Sweep results as CSV: `#` metadata lines, the fixed header, one row per
//! grid point. Empty fields mark missing values.

use std::fs;
use std::io::Write;
use std::path::Path;

use super::{ResultRow, SweepSpec};
use crate::error::Error;

pub const CSV_HEADER: &str = "axis1,axis2,pe_analytic,rho,es_analytic,pe_sim,pe_sim_se,es_sim,es_sim_se,trials,wall_time_s";

/// `%.10g`: ten significant digits, trailing zeros dropped, exponent form
/// outside `[1e-5, 1e10)`.
pub fn format_sig(x: f64) -> String {
    const DIGITS: i32 = 10;
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.*e}", (DIGITS - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').unwrap();
    let exp: i32 = exp.parse().unwrap();
    if (-5..DIGITS).contains(&exp) {
        let decimals = (DIGITS - 1 - exp).max(0) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mantissa.to_string()), exp.abs())
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

fn field(x: Option<f64>) -> String {
    x.map(format_sig).unwrap_or_default()
}

pub fn format_row(row: &ResultRow) -> String {
    [
        format_sig(row.axis1),
        field(row.axis2),
        field(row.pe_analytic),
        field(row.rho),
        field(row.es_analytic),
        field(row.pe_sim),
        field(row.pe_sim_se),
        field(row.es_sim),
        field(row.es_sim_se),
        row.trials.map(|t| t.to_string()).unwrap_or_default(),
        field(row.wall_time_s),
    ]
    .join(",")
}

/// Metadata lines describing how a sweep was run, plus one line per failed point.
pub fn sweep_comments(spec: &SweepSpec, master_seed: u64, rows: &[ResultRow]) -> Vec<String> {
    let base = &spec.base;
    let list = |v: &[f64]| v.iter().map(|x| format_sig(*x)).collect::<Vec<_>>().join(" ");
    let mut out = Vec::new();
    for (i, axis) in spec.axes.iter().enumerate() {
        out.push(format!("axis{} = {} ({}): {}", i + 1, axis.label, axis.param, list(&axis.values)));
    }
    out.push(format!("mode = {}, trials = {}, seed = {master_seed}", spec.mode, spec.trials));
    out.push(format!(
        "base: n = {}, alpha = {}, dist_c = {}, dist_s = {}, tc = {}, ts = {}, emergence_threshold = {}",
        base.n, base.alpha, base.dist_c, base.dist_s, base.tc, base.ts, base.emergence_threshold
    ));
    out.push(format!(
        "masks: m = [{}], eps_in = [{}], eps_out = [{}]",
        list(&base.masks.fractions),
        list(&base.masks.eps_in),
        list(&base.masks.eps_out)
    ));
    out.extend(spec.notes.iter().cloned());
    for row in rows {
        if let Some(e) = &row.error {
            let at = match row.axis2 {
                Some(b) => format!("{}, {}", format_sig(row.axis1), format_sig(b)),
                None => format_sig(row.axis1),
            };
            out.push(format!("error at ({at}): {}", e.replace('\n', " ")));
        }
    }
    out
}

pub fn write_csv<W: Write>(mut w: W, rows: &[ResultRow], comments: &[String]) -> std::io::Result<()> {
    for c in comments {
        writeln!(w, "# {c}")?;
    }
    writeln!(w, "{CSV_HEADER}")?;
    for row in rows {
        writeln!(w, "{}", format_row(row))?;
    }
    w.flush()
}

pub fn csv_string(rows: &[ResultRow], comments: &[String]) -> String {
    let mut buf = Vec::new();
    write_csv(&mut buf, rows, comments).expect("writing to memory");
    String::from_utf8(buf).expect("ascii output")
}

/// Writes the CSV to `destination`, creating parent directories.
pub fn emit_csv(rows: &[ResultRow], comments: &[String], destination: &Path) -> Result<(), Error> {
    if rows.is_empty() {
        return Err(Error::Parse("refusing to write a CSV without rows".into()));
    }
    if let Some(parent) = destination.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent)?;
    }
    fs::write(destination, csv_string(rows, comments))?;
    Ok(())
}
