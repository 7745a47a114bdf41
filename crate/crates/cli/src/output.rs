//! Trajectory CSV, metrics and report files.

use std::fmt::Write as _;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use delaycomp::{Metrics64, SweepRow, Termination, Trajectory64};

pub const TRAJECTORY_HEADER: &str = "t,v,omega,e_m,e_d,v_pred,omega_pred,x,y,heading";
pub const SWEEP_HEADER: &str = "h,naive_settled,naive_settling_time,predictor_settled,predictor_settling_time,max_pred_error";

/// 17 significant digits, enough to reload every `f64` exactly.
pub fn fmt_number(x: f64) -> String {
    format!("{x:.16e}")
}

fn fmt_optional(x: Option<f64>) -> String {
    x.map(fmt_number).unwrap_or_default()
}

fn component(values: &delaycomp::Vector64, i: usize) -> f64 {
    values.as_slice().get(i).copied().unwrap_or(0.0)
}

pub fn write_trajectory<W: Write>(mut out: W, traj: &Trajectory64) -> io::Result<()> {
    writeln!(out, "{TRAJECTORY_HEADER}")?;
    for s in traj.samples() {
        let (v_pred, omega_pred) = match &s.prediction {
            Some(p) => (fmt_number(component(p, 0)), fmt_number(component(p, 1))),
            None => (String::new(), String::new()),
        };
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{}",
            fmt_number(s.t),
            fmt_number(component(&s.state, 0)),
            fmt_number(component(&s.state, 1)),
            fmt_number(component(&s.control, 0)),
            fmt_number(component(&s.control, 1)),
            v_pred,
            omega_pred,
            fmt_number(s.pose.x),
            fmt_number(s.pose.y),
            fmt_number(s.pose.heading),
        )?;
    }
    out.flush()
}

pub fn write_trajectory_file(path: &Path, traj: &Trajectory64) -> io::Result<()> {
    write_trajectory(BufWriter::new(File::create(path)?), traj)
}

/// One parsed CSV row; empty cells read back as `None`.
pub type CsvRow = Vec<Option<f64>>;

/// Reads a trajectory CSV back, checking the header.
pub fn read_trajectory(text: &str) -> Result<Vec<CsvRow>, String> {
    let mut lines = text.lines();
    match lines.next() {
        Some(TRAJECTORY_HEADER) => {}
        other => return Err(format!("unexpected header {other:?}")),
    }
    lines
        .enumerate()
        .map(|(i, line)| {
            let cells = line
                .split(',')
                .map(|cell| {
                    if cell.is_empty() {
                        Ok(None)
                    } else {
                        cell.parse::<f64>()
                            .map(Some)
                            .map_err(|_| format!("row {}: bad number `{cell}`", i + 1))
                    }
                })
                .collect::<Result<CsvRow, String>>()?;
            if cells.len() != 10 {
                return Err(format!("row {}: expected 10 columns, got {}", i + 1, cells.len()));
            }
            Ok(cells)
        })
        .collect()
}

pub fn metrics_text(controller: &str, metrics: &Metrics64, termination: Termination<f64>) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "controller = {controller}");
    let _ = writeln!(s, "settled = {}", metrics.settled);
    let _ = writeln!(s, "settling_time = {}", fmt_optional(metrics.settling_time));
    let _ = writeln!(s, "max_excursion = {}", fmt_number(metrics.max_excursion));
    let _ = writeln!(s, "max_prediction_error = {}", fmt_optional(metrics.max_prediction_error));
    let _ = writeln!(s, "diverged = {}", metrics.diverged);
    if let Termination::Diverged { at } = termination {
        let _ = writeln!(s, "diverged_at = {}", fmt_number(at));
    }
    s
}

fn short(x: Option<f64>) -> String {
    x.map_or_else(|| "-".to_string(), |v| format!("{v:.6}"))
}

/// Side-by-side table for `compare`.
pub fn comparison_report(rows: &[(&str, &Metrics64)]) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{:<18} {:>8} {:>14} {:>14} {:>14} {:>9}",
        "controller", "settled", "settling_time", "max_excursion", "max_pred_err", "diverged"
    );
    for (name, m) in rows {
        let _ = writeln!(
            s,
            "{:<18} {:>8} {:>14} {:>14} {:>14} {:>9}",
            name,
            m.settled,
            short(m.settling_time),
            format!("{:.6e}", m.max_excursion),
            m.max_prediction_error.map_or_else(|| "-".to_string(), |e| format!("{e:.3e}")),
            m.diverged
        );
    }
    s
}

pub fn write_sweep<W: Write>(mut out: W, rows: &[SweepRow<f64>]) -> io::Result<()> {
    writeln!(out, "{SWEEP_HEADER}")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            fmt_number(r.delay),
            r.naive.settled,
            fmt_optional(r.naive.settling_time),
            r.predictor.settled,
            fmt_optional(r.predictor.settling_time),
            fmt_optional(r.predictor.max_prediction_error),
        )?;
    }
    out.flush()
}
