//! Plain-text signals (one sample per line) and convergence traces.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::solver::SweepRecord;

pub const TRACE_HEADER: &str = "sweep,lyapunov,total_abs_residual";

/// Blank lines are ignored.
pub fn parse_signal(text: &str) -> Result<Vec<f64>> {
    text.lines()
        .enumerate()
        .filter(|(_, line)| !line.trim().is_empty())
        .map(|(i, line)| {
            line.trim()
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| Error::Format(format!("line {}: not a finite number: {line:?}", i + 1)))
        })
        .collect()
}

pub fn format_signal(samples: &[f64]) -> String {
    let mut out = String::with_capacity(samples.len() * 20);
    for v in samples {
        writeln!(out, "{v}").unwrap();
    }
    out
}

/// Trace rows use 17 significant digits.
pub fn format_trace(records: &[SweepRecord]) -> String {
    let mut out = String::with_capacity(64 * (records.len() + 1));
    out.push_str(TRACE_HEADER);
    out.push('\n');
    for r in records {
        writeln!(out, "{},{:.16e},{:.16e}", r.sweep, r.lyapunov, r.total_abs).unwrap();
    }
    out
}

pub fn parse_trace(text: &str) -> Result<Vec<SweepRecord>> {
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h.trim() == TRACE_HEADER => {}
        other => {
            return Err(Error::Format(format!(
                "trace header should be {TRACE_HEADER:?}, found {:?}",
                other.unwrap_or("")
            )))
        }
    }
    lines
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, line)| {
            let bad = || Error::Format(format!("trace line {}: {line:?}", i + 2));
            let mut cols = line.split(',');
            let sweep = cols.next().and_then(|c| c.trim().parse().ok()).ok_or_else(bad)?;
            let lyapunov = cols.next().and_then(|c| c.trim().parse().ok()).ok_or_else(bad)?;
            let total_abs = cols.next().and_then(|c| c.trim().parse().ok()).ok_or_else(bad)?;
            if cols.next().is_some() {
                return Err(bad());
            }
            Ok(SweepRecord {
                sweep,
                lyapunov,
                total_abs,
            })
        })
        .collect()
}
