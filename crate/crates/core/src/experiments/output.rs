//! Stable JSON and per-trial CSV.

use std::io::{self, Write};

use serde::Serialize;
use serde_json::Value;

use super::{ExperimentReport, Mode, TrialRecord};

/// Significant digits kept for every non-integer number in JSON output.
pub const SIGNIFICANT_DIGITS: usize = 12;

/// Rounds `x` to [`SIGNIFICANT_DIGITS`] significant digits.
pub fn round_significant(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x).parse().unwrap_or(x)
}

fn round_value(v: &mut Value) {
    match v {
        Value::Number(num) if !num.is_u64() && !num.is_i64() => {
            if let Some(x) = num.as_f64() {
                if let Some(r) = serde_json::Number::from_f64(round_significant(x)) {
                    *num = r;
                }
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_value),
        Value::Object(map) => map.values_mut().for_each(round_value),
        _ => {}
    }
}

/// Pretty JSON with floats rounded to [`SIGNIFICANT_DIGITS`] significant
/// digits. Non-finite floats serialize as `null`.
pub fn to_stable_json<T: Serialize>(value: &T) -> serde_json::Result<String> {
    let mut v = serde_json::to_value(value)?;
    round_value(&mut v);
    let mut s = serde_json::to_string_pretty(&v)?;
    s.push('\n');
    Ok(s)
}

fn value_columns(mode: Mode, rec: &TrialRecord) -> Vec<(&'static str, Option<u64>)> {
    let us = |x: Option<usize>| x.map(|v| v as u64);
    match mode {
        Mode::Concentration => vec![("alpha", us(rec.alpha))],
        Mode::Lemma1Fuzz => vec![("alpha", us(rec.alpha)), ("hat_alpha", us(rec.hat_alpha))],
        Mode::ExpectationCheck => vec![("x_s", rec.x_s), ("y_s", rec.y_s), ("z_sr", rec.z_sr)],
        Mode::Coupling => vec![
            ("alpha_p1", us(rec.alpha)),
            ("alpha_p2", us(rec.alpha_p2)),
            ("alpha_p_prime", us(rec.alpha_p_prime)),
        ],
    }
}

/// One row per trial: `schema_version, trial_index, seed, <values>, micros, timed_out`.
/// Missing values are empty cells.
pub fn write_csv<W: Write>(report: &ExperimentReport, mut out: W) -> io::Result<()> {
    let mode = report.config.mode;
    let names: Vec<_> = value_columns(mode, &TrialRecord::default()).into_iter().map(|(n, _)| n).collect();
    writeln!(out, "schema_version,trial_index,seed,{},micros,timed_out", names.join(","))?;
    for rec in &report.records {
        let cells: Vec<String> = value_columns(mode, rec)
            .into_iter()
            .map(|(_, v)| v.map(|x| x.to_string()).unwrap_or_default())
            .collect();
        writeln!(
            out,
            "{},{},{},{},{},{}",
            report.schema_version,
            rec.trial_index,
            rec.seed,
            cells.join(","),
            rec.micros,
            rec.timed_out
        )?;
    }
    Ok(())
}
