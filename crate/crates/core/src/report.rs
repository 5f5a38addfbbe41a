//! Output formats: JSON, versioned CSV and plain text.

use std::io::Write;

use serde::Serialize;
use serde_json::Value;

use crate::error::Result;
use crate::harness::{Counterexample, Expect, TheoremReport};
use crate::radii::RadiusResult;

pub const REPORT_CSV_HEADER: &str = "# bohr report csv v1";
pub const RADIUS_CSV_HEADER: &str = "# bohr radius csv v1";
pub const SCAN_CSV_HEADER: &str = "# bohr scan csv v1";
pub const COUNTEREXAMPLE_CSV_HEADER: &str = "# bohr counterexample csv v1";

/// `x` with 15 significant digits, trailing zeros trimmed. Large and tiny
/// magnitudes use exponent notation.
pub fn fmt_num(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return if x.is_nan() { "nan".into() } else if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let mag = x.abs().log10().floor() as i32;
    if (-5..15).contains(&mag) {
        let decimals = (14 - mag).max(0) as usize;
        let s = format!("{x:.decimals$}");
        let s = if s.contains('.') { s.trim_end_matches('0').trim_end_matches('.').to_string() } else { s };
        if s == "-0" { "0".into() } else { s }
    } else {
        let s = format!("{x:.14e}");
        let (mant, exp) = s.split_once('e').expect("exponent form");
        let mant = mant.trim_end_matches('0').trim_end_matches('.');
        format!("{mant}e{exp}")
    }
}

/// Round every float in a JSON tree to 15 significant digits.
fn round_value(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().expect("f64 number");
            if let Some(r) = fmt_num(x).parse::<f64>().ok().and_then(serde_json::Number::from_f64) {
                *n = r;
            }
        }
        Value::Array(a) => a.iter_mut().for_each(round_value),
        Value::Object(o) => o.values_mut().for_each(round_value),
        _ => {}
    }
}

/// Pretty JSON with floats at 15 significant digits.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut v = serde_json::to_value(value)?;
    round_value(&mut v);
    Ok(serde_json::to_string_pretty(&v)?)
}

fn csv_writer<'a>(out: &'a mut dyn Write, header: &str) -> Result<csv::Writer<&'a mut dyn Write>> {
    writeln!(out, "{header}")?;
    Ok(csv::Writer::from_writer(out))
}

fn csv_err(e: csv::Error) -> crate::error::Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => io.into(),
        other => crate::error::Error::Parse(format!("csv: {other:?}")),
    }
}

/// One row per check, fact, sharpness row and counterexample.
pub fn write_reports_csv(reports: &[TheoremReport], out: &mut dyn Write) -> Result<()> {
    let mut w = csv_writer(out, REPORT_CSV_HEADER)?;
    let cols = ["suite", "kind", "description", "r", "lhs_lower", "lhs_upper", "rhs_lower", "rhs_upper", "margin", "passed"];
    w.write_record(cols).map_err(csv_err)?;
    for rep in reports {
        let suite = rep.suite_id.name();
        for c in &rep.checks {
            let kind = match c.expect {
                Expect::Holds => "check",
                Expect::Violated => "violation",
            };
            w.write_record([
                suite.to_string(),
                kind.into(),
                c.description.clone(),
                fmt_num(c.r),
                fmt_num(c.lhs.lower),
                fmt_num(c.lhs.upper),
                fmt_num(c.rhs.lower),
                fmt_num(c.rhs.upper),
                fmt_num(c.margin),
                c.passed.to_string(),
            ])
            .map_err(csv_err)?;
        }
        for t in &rep.sharpness_table {
            for row in &t.rows {
                let (expected, dev) = match row.expected {
                    Some(e) => (fmt_num(e), fmt_num(-(row.threshold - e).abs())),
                    None => (String::new(), String::new()),
                };
                w.write_record([
                    suite.to_string(),
                    "sharpness".into(),
                    format!("{} (param {})", t.description, fmt_num(row.param)),
                    fmt_num(row.threshold),
                    String::new(),
                    String::new(),
                    expected.clone(),
                    expected,
                    dev,
                    t.passed.to_string(),
                ])
                .map_err(csv_err)?;
            }
        }
        for c in &rep.counterexamples {
            w.write_record([
                suite.to_string(),
                "counterexample".into(),
                format!("{}: {}", c.name, c.description),
                String::new(),
                String::new(),
                String::new(),
                String::new(),
                String::new(),
                String::new(),
                c.confirmed.to_string(),
            ])
            .map_err(csv_err)?;
        }
        for f in &rep.facts {
            let mut rec = vec![String::new(); cols.len()];
            rec[0] = suite.to_string();
            rec[1] = "fact".into();
            rec[2] = f.description.clone();
            rec[9] = f.passed.to_string();
            w.write_record(rec).map_err(csv_err)?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn write_reports_plain(reports: &[TheoremReport], out: &mut dyn Write) -> Result<()> {
    for rep in reports {
        let radius = rep.radius.map_or_else(|| "parameter-dependent".to_string(), fmt_num);
        writeln!(
            out,
            "{}: {} (radius {radius}, offset {}, seed {}, order {}, samples {})",
            rep.suite_id,
            if rep.passed() { "PASS" } else { "FAIL" },
            fmt_num(rep.radius_offset),
            rep.seed,
            rep.order,
            rep.samples
        )?;
        let violations = rep.checks.iter().filter(|c| c.expect == Expect::Violated).count();
        writeln!(
            out,
            "  checks: {} positive (min margin {}), {violations} violation exhibits",
            rep.checks.len() - violations,
            fmt_num(rep.min_positive_margin())
        )?;
        for t in &rep.sharpness_table {
            writeln!(out, "  sharpness: {} [{}]", t.description, if t.passed { "ok" } else { "FAILED" })?;
            for row in &t.rows {
                match row.expected {
                    Some(e) => writeln!(out, "    {:>8}  {}  (closed form {})", fmt_num(row.param), fmt_num(row.threshold), fmt_num(e))?,
                    None => writeln!(out, "    {:>8}  {}", fmt_num(row.param), fmt_num(row.threshold))?,
                }
            }
            writeln!(out, "    {}", t.detail)?;
        }
        for c in &rep.counterexamples {
            write_counterexample_plain(c, out, "  ")?;
        }
        let failed_facts = rep.facts.iter().filter(|f| !f.passed).count();
        writeln!(out, "  facts: {} checked, {failed_facts} failed", rep.facts.len())?;
        for f in rep.failures() {
            writeln!(out, "  {f}")?;
        }
    }
    Ok(())
}

pub fn write_counterexample_plain(c: &Counterexample, out: &mut dyn Write, indent: &str) -> Result<()> {
    writeln!(out, "{indent}counterexample {}: {}", c.name, if c.confirmed { "confirmed" } else { "NOT confirmed" })?;
    writeln!(out, "{indent}  {}", c.description)?;
    for (k, v) in &c.values {
        writeln!(out, "{indent}  {k} = {}", fmt_num(*v))?;
    }
    Ok(())
}

pub fn write_counterexample_csv(c: &Counterexample, out: &mut dyn Write) -> Result<()> {
    let mut w = csv_writer(out, COUNTEREXAMPLE_CSV_HEADER)?;
    w.write_record(["name", "quantity", "value"]).map_err(csv_err)?;
    for (k, v) in &c.values {
        w.write_record([c.name.as_str(), k.as_str(), &fmt_num(*v)]).map_err(csv_err)?;
    }
    w.write_record([c.name.as_str(), "confirmed", if c.confirmed { "1" } else { "0" }]).map_err(csv_err)?;
    w.flush()?;
    Ok(())
}

pub fn write_radius_csv(r: &RadiusResult, out: &mut dyn Write) -> Result<()> {
    let mut w = csv_writer(out, RADIUS_CSV_HEADER)?;
    w.write_record(["setting", "closed_form", "bisected", "discrepancy", "iterations"]).map_err(csv_err)?;
    w.write_record([
        r.setting.id.name().to_string(),
        fmt_num(r.closed_form),
        fmt_num(r.bisected),
        fmt_num(r.discrepancy),
        r.iterations.to_string(),
    ])
    .map_err(csv_err)?;
    w.flush()?;
    Ok(())
}

/// Scan rows `(a, threshold)` followed by a `limit` row when known.
pub fn write_scan_csv(target: &str, rows: &[(f64, f64)], limit: Option<f64>, out: &mut dyn Write) -> Result<()> {
    let mut w = csv_writer(out, SCAN_CSV_HEADER)?;
    w.write_record(["target", "a", "threshold"]).map_err(csv_err)?;
    for (a, t) in rows {
        w.write_record([target, &fmt_num(*a), &fmt_num(*t)]).map_err(csv_err)?;
    }
    if let Some(l) = limit {
        w.write_record([target, "limit", &fmt_num(l)]).map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}
