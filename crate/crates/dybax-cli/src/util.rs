//! Shared CLI plumbing: source resolution, parameter parsing, report output.

use std::fs;
use std::io::Write;
use std::path::Path;
use std::time::Instant;

use serde_json::{json, Value};

use dybax::baxter::{abf_family, baxterize_tl, RFamily, SpectralParam};
use dybax::catalog::{build_diagram, coxeter_number, pf_eigen, Family};
use dybax::checks::CheckReport;
use dybax::error::{Error, Result};
use dybax::families::{
    build_tl_graph, build_tl_line, hecke_from_tl_const, HeckeFamily, LineKind, LineWindow, TLFamily,
};
use dybax::fiber::C64;
use dybax::report::{emit, render_json, EmitFormat, Report};

use crate::{OutputArgs, SourceArgs};

pub const PF_TOL: f64 = 1e-13;

/// Parses `RE+IMi` complex literals, with shorthands like `0.8i`, `-i`, `2`.
pub fn parse_complex(s: &str) -> Result<C64> {
    let t: String = s.trim().replace(' ', "");
    let bad = || Error::Input(format!("cannot parse complex number {s:?}; use RE+IMi"));
    if t.is_empty() {
        return Err(bad());
    }
    if !t.ends_with('i') {
        return t
            .parse::<f64>()
            .map(|re| C64::new(re, 0.0))
            .map_err(|_| bad());
    }
    let body = &t[..t.len() - 1];
    // split at the last +/- that is not a leading sign or an exponent sign
    let split = body
        .char_indices()
        .rev()
        .find(|&(idx, c)| {
            (c == '+' || c == '-') && idx != 0 && !matches!(body.as_bytes()[idx - 1], b'e' | b'E')
        })
        .map(|(idx, _)| idx);
    let (re_str, im_str) = match split {
        Some(idx) => (&body[..idx], &body[idx..]),
        None => ("", body),
    };
    let re = if re_str.is_empty() {
        0.0
    } else {
        re_str.parse::<f64>().map_err(|_| bad())?
    };
    let im = match im_str {
        "" | "+" => 1.0,
        "-" => -1.0,
        other => other.parse::<f64>().map_err(|_| bad())?,
    };
    Ok(C64::new(re, im))
}

pub fn parse_window(s: &str) -> Result<(i64, i64)> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 2 {
        return Err(Error::Input(format!("window must be lo:hi, got {s:?}")));
    }
    let lo: i64 = parts[0]
        .trim()
        .parse()
        .map_err(|_| Error::Input(format!("bad window bound {:?}", parts[0])))?;
    let hi: i64 = parts[1]
        .trim()
        .parse()
        .map_err(|_| Error::Input(format!("bad window bound {:?}", parts[1])))?;
    Ok((lo, hi))
}

/// A resolved family source: the Temperley-Lieb family plus bookkeeping for
/// labels and spectral-parameter selection.
pub struct Source {
    pub family: TLFamily,
    pub line: Option<(LineKind, u32)>,
}

pub fn resolve_source(args: &SourceArgs) -> Result<Source> {
    if let Some(name) = &args.graph {
        let family = Family::parse(name)?;
        let graph = build_diagram(&family)?;
        let pf = pf_eigen(&graph, PF_TOL)?;
        return Ok(Source {
            family: build_tl_graph(&family.to_string(), &graph, &pf)?,
            line: None,
        });
    }
    if let Some(path) = &args.graph_file {
        let text = fs::read_to_string(path)?;
        let graph = dybax::graph::Graph::parse_edge_list(&text)?;
        let pf = pf_eigen(&graph, PF_TOL)?;
        let label = path
            .file_stem()
            .map(|s| s.to_string_lossy().to_string())
            .unwrap_or_else(|| "custom".into());
        return Ok(Source {
            family: build_tl_graph(&label, &graph, &pf)?,
            line: None,
        });
    }
    if let Some(kind_name) = &args.line {
        let kind = match kind_name.as_str() {
            "tri" => LineKind::Tri,
            "hyp" => LineKind::Hyp,
            "ell" => LineKind::Ell(parse_complex(&args.tau)?),
            other => {
                return Err(Error::Input(format!(
                    "unknown line kind {other:?}; use tri | hyp | ell"
                )))
            }
        };
        let (lo, hi) = match &args.window {
            Some(w) => parse_window(w)?,
            // default windows: 13 vertices for tri/hyp, the positive-bracket
            // window for elliptic
            None => match kind {
                LineKind::Ell(_) => (-1, 5),
                _ => (0, 12),
            },
        };
        let window = LineWindow::new(lo, hi, args.shift_b)?;
        let family = build_tl_line(&kind, args.l, window)?;
        return Ok(Source {
            family,
            line: Some((kind, args.l)),
        });
    }
    Err(Error::Input(
        "no source given: use --graph, --graph-file or --line".into(),
    ))
}

/// Spectral parameterization for a resolved source. Line sources keep height
/// units (`<z>/<1-z>`); graph sources read lambda off the constant kappa,
/// unless an explicit `lambda` override is given — any combination may then
/// be probed and the functional-relation checker decides validity.
pub fn spectral_for(source: &Source, param: &str, lambda: Option<f64>) -> Result<SpectralParam> {
    if let Some(lambda) = lambda {
        return match param {
            "tri" => Ok(SpectralParam::Tri { lambda }),
            "hyp" => Ok(SpectralParam::Hyp { lambda }),
            "rational" => Err(Error::Input(
                "--lambda does not apply to the rational parameterization".into(),
            )),
            other => Err(Error::Input(format!(
                "unknown parameterization {other:?}; use tri | hyp | rational"
            ))),
        };
    }
    match (param, &source.line) {
        ("rational", _) => Ok(SpectralParam::Rational),
        ("tri", Some((_, l))) => Ok(SpectralParam::BracketTri { l: *l }),
        ("hyp", Some((_, l))) => Ok(SpectralParam::BracketHyp { l: *l }),
        ("tri", None) => {
            let kappa = constant_kappa_re(source)?;
            if kappa >= 2.0 {
                return Err(Error::Input(format!(
                    "kappa = {kappa} >= 2 has no trigonometric lambda; pass --lambda to probe anyway"
                )));
            }
            Ok(SpectralParam::Tri {
                lambda: (kappa / 2.0).acos(),
            })
        }
        ("hyp", None) => {
            let kappa = constant_kappa_re(source)?;
            if kappa <= 2.0 {
                return Err(Error::Input(format!(
                    "kappa = {kappa} <= 2 has no hyperbolic lambda; pass --lambda to probe anyway"
                )));
            }
            Ok(SpectralParam::Hyp {
                lambda: (kappa / 2.0).acosh(),
            })
        }
        (other, _) => Err(Error::Input(format!(
            "unknown parameterization {other:?}; use tri | hyp | rational"
        ))),
    }
}

fn constant_kappa_re(source: &Source) -> Result<f64> {
    let kappa = source.family.constant_kappa().ok_or_else(|| {
        Error::NotBaxterizable(format!(
            "kappa is not constant (obstruction {:e}); the ansatz parameterizations do not apply",
            source.family.kappa_obstruction()
        ))
    })?;
    if kappa.im.abs() > 1e-12 {
        return Err(Error::Input("kappa must be real for tri/hyp".into()));
    }
    Ok(kappa.re)
}

/// R-matrix family for a source: the TL ansatz for tri/hyp/rational, or the
/// elliptic face weights for `abf`.
pub fn rfamily_for(source: &Source, param: &str, lambda: Option<f64>) -> Result<RFamily> {
    if param == "abf" {
        let (kind, l) = source
            .line
            .as_ref()
            .ok_or_else(|| Error::Input("--param abf requires --line ell".into()))?;
        let tau = match kind {
            LineKind::Ell(tau) => *tau,
            _ => return Err(Error::Input("--param abf requires --line ell".into())),
        };
        let window = source
            .family
            .window
            .ok_or_else(|| Error::Input("abf needs a height window".into()))?;
        return abf_family(tau, *l, window);
    }
    let spectral = spectral_for(source, param, lambda)?;
    baxterize_tl(source.family.clone(), spectral)
}

/// Default qbar for a Hecke construction: the phase with
/// `qbar + qbar^{-1} = kappa` (kappa < 2), or the explicit angle.
pub fn hecke_for(source: &Source, qbar_arg: Option<f64>) -> Result<HeckeFamily> {
    let q = match qbar_arg {
        Some(theta) => C64::from_polar(1.0, theta),
        None => {
            let kappa = constant_kappa_re(source)?;
            if kappa >= 2.0 {
                return Err(Error::Input(
                    "kappa >= 2: pass --qbar-arg explicitly".into(),
                ));
            }
            C64::from_polar(1.0, (kappa / 2.0).acos())
        }
    };
    hecke_from_tl_const(&source.family, q)
}

pub fn source_params_json(args: &SourceArgs) -> Value {
    json!({
        "graph": args.graph,
        "graph_file": args.graph_file.as_ref().map(|p| p.display().to_string()),
        "line": args.line,
        "L": args.l,
        "window": args.window,
        "shift_b": args.shift_b,
        "tau": args.tau,
    })
}

/// Catalog row for `graphs list`.
pub fn catalog_row(family: &Family) -> Result<Value> {
    let graph = build_diagram(family)?;
    let pf = pf_eigen(&graph, PF_TOL)?;
    let h = coxeter_number(family).ok();
    Ok(json!({
        "family": family.to_string(),
        "vertices": graph.vertex_count(),
        "coxeter": h,
        "eigenvalue": pf.eigenvalue,
        "pf_residual": pf.residual,
        "pf_iterations": pf.iterations,
    }))
}

pub struct Timer(Instant);

impl Timer {
    pub fn start() -> Timer {
        Timer(Instant::now())
    }

    pub fn ms(&self) -> f64 {
        self.0.elapsed().as_secs_f64() * 1e3
    }
}

/// Builds the report, writes it in the requested format, and returns the
/// pass verdict.
pub fn finish_report(
    check: &CheckReport,
    graph_label: &str,
    family_label: &str,
    params: Value,
    timer: &Timer,
    output: &OutputArgs,
) -> Result<bool> {
    let report = Report::from_check(check, graph_label, family_label, params, timer.ms());
    write_reports(std::slice::from_ref(&report), output)?;
    Ok(report.pass)
}

pub fn write_reports(reports: &[Report], output: &OutputArgs) -> Result<()> {
    let format = if output.json {
        EmitFormat::Json
    } else {
        EmitFormat::Text
    };
    let mut buf: Vec<u8> = Vec::new();
    if output.json && reports.len() > 1 {
        let value = serde_json::to_value(reports)?;
        writeln!(buf, "{}", render_json(&value))?;
    } else {
        for report in reports {
            emit(report, format, &mut buf)?;
        }
    }
    write_out(&buf, output.out.as_deref())
}

pub fn write_out(bytes: &[u8], out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => {
            fs::write(path, bytes)?;
            Ok(())
        }
        None => {
            std::io::stdout().write_all(bytes)?;
            Ok(())
        }
    }
}
