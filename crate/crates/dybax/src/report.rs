//! Machine-readable verification reports and deterministic emission:
//! alphabetical JSON keys, floats at 17 significant digits, no RNG anywhere,
//! so identical inputs give identical bytes apart from the timing field.

use std::io::Write;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::checks::CheckReport;
use crate::error::Result;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportItem {
    pub vertex: String,
    pub residual: f64,
}

/// Verification report: the check name, the echoed inputs, per-item
/// residuals, and the verdict `pass = max_residual < tol`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub check: String,
    pub graph: String,
    pub family: String,
    pub params: Value,
    pub per_vertex: Vec<ReportItem>,
    pub skipped: Vec<String>,
    pub notes: Vec<String>,
    pub max_residual: f64,
    pub tol: f64,
    pub pass: bool,
    pub wall_time_ms: f64,
}

impl Report {
    pub fn from_check(
        check: &CheckReport,
        graph: &str,
        family: &str,
        params: Value,
        wall_time_ms: f64,
    ) -> Report {
        Report {
            check: check.check.clone(),
            graph: graph.to_string(),
            family: family.to_string(),
            params,
            per_vertex: check
                .items
                .iter()
                .map(|i| ReportItem {
                    vertex: i.label.clone(),
                    residual: i.residual,
                })
                .collect(),
            skipped: check.skipped.clone(),
            notes: check.notes.clone(),
            max_residual: check.max_residual(),
            tol: check.tol,
            pass: check.pass(),
            wall_time_ms,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EmitFormat {
    Json,
    Csv,
    Text,
}

/// Serializes a JSON value with every float printed at 17 significant
/// digits, so emission round-trips losslessly and reruns are byte-identical.
pub fn render_json(value: &Value) -> String {
    let mut out = String::new();
    write_value(value, &mut out);
    out
}

fn write_value(value: &Value, out: &mut String) {
    match value {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                out.push_str(&i.to_string());
            } else if let Some(u) = n.as_u64() {
                out.push_str(&u.to_string());
            } else {
                let f = n.as_f64().unwrap_or(f64::NAN);
                if f.is_finite() {
                    out.push_str(&format!("{f:.16e}"));
                } else {
                    out.push_str("null");
                }
            }
        }
        Value::String(s) => {
            out.push_str(&serde_json::to_string(s).expect("string serializes"));
        }
        Value::Array(items) => {
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write_value(item, out);
            }
            out.push(']');
        }
        Value::Object(map) => {
            // serde_json's default map is a BTreeMap: alphabetical, stable
            out.push('{');
            for (i, (k, v)) in map.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push_str(&serde_json::to_string(k).expect("key serializes"));
                out.push(':');
                write_value(v, out);
            }
            out.push('}');
        }
    }
}

pub fn emit<W: Write>(report: &Report, format: EmitFormat, mut w: W) -> Result<()> {
    match format {
        EmitFormat::Json => {
            let value = serde_json::to_value(report)?;
            writeln!(w, "{}", render_json(&value))?;
        }
        EmitFormat::Csv => {
            writeln!(w, "check,vertex,residual")?;
            for item in &report.per_vertex {
                writeln!(w, "{},{},{:.16e}", report.check, item.vertex, item.residual)?;
            }
        }
        EmitFormat::Text => {
            writeln!(
                w,
                "{} {} [{} / {}] max_residual={:.3e} tol={:.1e}{}",
                if report.pass { "PASS" } else { "FAIL" },
                report.check,
                report.graph,
                report.family,
                report.max_residual,
                report.tol,
                if report.skipped.is_empty() {
                    String::new()
                } else {
                    format!(" (skipped {})", report.skipped.len())
                },
            )?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn sample() -> Report {
        Report {
            check: "dtl".into(),
            graph: "A3".into(),
            family: "A3".into(),
            params: json!({"tol": 1e-10, "z": 0.3}),
            per_vertex: vec![ReportItem {
                vertex: "square@1".into(),
                residual: 2.220446049250313e-16,
            }],
            skipped: vec![],
            notes: vec![],
            max_residual: 2.220446049250313e-16,
            tol: 1e-10,
            pass: true,
            wall_time_ms: 1.25,
        }
    }

    #[test]
    fn json_round_trip_loses_nothing() {
        let r = sample();
        let mut buf = Vec::new();
        emit(&r, EmitFormat::Json, &mut buf).unwrap();
        let parsed: Report = serde_json::from_slice(&buf).unwrap();
        assert_eq!(parsed, r);
    }

    #[test]
    fn json_emission_is_deterministic() {
        let r = sample();
        let mut a = Vec::new();
        let mut b = Vec::new();
        emit(&r, EmitFormat::Json, &mut a).unwrap();
        emit(&r, EmitFormat::Json, &mut b).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn floats_carry_17_significant_digits() {
        let v = json!({"x": 0.1});
        let s = render_json(&v);
        assert!(s.contains("1.0000000000000001e-1"), "{s}");
    }

    #[test]
    fn csv_and_text_shapes() {
        let r = sample();
        let mut buf = Vec::new();
        emit(&r, EmitFormat::Csv, &mut buf).unwrap();
        let s = String::from_utf8(buf).unwrap();
        assert!(s.starts_with("check,vertex,residual\n"));

        let mut buf = Vec::new();
        emit(&r, EmitFormat::Text, &mut buf).unwrap();
        let s = String::from_utf8(buf).unwrap();
        assert!(s.starts_with("PASS dtl"));
        assert_eq!(s.lines().count(), 1);
    }
}
