//! Individual subcommand implementations.

use std::fs;

use serde_json::json;

use dybax::baxter::{
    baxterize_bmw, baxterize_hecke, check_dybe, check_dybe2, check_functional_relation,
    default_samples, default_triples, scaled_samples, sigma_from_hecke,
};
use dybax::catalog::Family;
use dybax::checks::{
    check_dbmw, check_dhecke, check_diagram_algebra, check_dtl, check_global, murphy_check,
    CheckReport,
};
use dybax::error::{Error, Result};
use dybax::families::{bmw_from_file, bmw_from_hecke, tl_from_file, tl_to_file};
use dybax::fiber::C64;
use dybax::lattice::{closed_basis, diagonalize, hamiltonian, transfer_matrix, translation};
use dybax::report::render_json;

use crate::util::*;
use crate::{
    BuildArgs, ChainArgs, TransferArgs, VerifyBmwArgs, VerifyFamilyArgs, VerifyHeckeArgs,
    VerifyParamArgs, VerifySitesArgs, VerifyYbe2Args, VerifyYbeArgs,
};

pub fn graphs_list(as_json: bool) -> Result<bool> {
    let rows: Result<Vec<_>> = Family::catalog().iter().map(catalog_row).collect();
    let rows = rows?;
    let mut buf = String::new();
    if as_json {
        buf.push_str(&render_json(&serde_json::Value::Array(rows)));
        buf.push('\n');
    } else {
        buf.push_str(&format!(
            "{:<8} {:>8} {:>8} {:>16} {:>12}\n",
            "family", "vertices", "coxeter", "eigenvalue", "residual"
        ));
        for row in &rows {
            let h = row["coxeter"]
                .as_u64()
                .map(|v| v.to_string())
                .unwrap_or_else(|| "-".into());
            buf.push_str(&format!(
                "{:<8} {:>8} {:>8} {:>16.12} {:>12.3e}\n",
                row["family"].as_str().unwrap(),
                row["vertices"].as_u64().unwrap(),
                h,
                row["eigenvalue"].as_f64().unwrap(),
                row["pf_residual"].as_f64().unwrap(),
            ));
        }
    }
    write_out(buf.as_bytes(), None)?;
    Ok(true)
}

pub fn build(args: &BuildArgs) -> Result<bool> {
    let source = resolve_source(&args.source)?;
    let file = tl_to_file(&source.family);
    let value = serde_json::to_value(&file)?;
    let mut bytes = render_json(&value).into_bytes();
    bytes.push(b'\n');
    write_out(&bytes, args.output.out.as_deref())?;
    Ok(true)
}

pub fn verify_tl(args: &VerifyFamilyArgs) -> Result<bool> {
    let timer = Timer::start();
    let (family, label) = match &args.family_file {
        Some(path) => {
            let file: dybax::families::FamilyFile =
                serde_json::from_str(&fs::read_to_string(path)?)?;
            let label = path
                .file_stem()
                .map(|s| s.to_string_lossy().to_string())
                .unwrap_or_else(|| "file".into());
            (tl_from_file(&file, &label)?, label)
        }
        None => {
            let source = resolve_source(&args.source)?;
            let label = source.family.label.clone();
            (source.family, label)
        }
    };
    let report = check_dtl(&family, args.tol)?;
    finish_report(
        &report,
        &label,
        &family.label,
        json!({"source": source_params_json(&args.source), "tol": args.tol}),
        &timer,
        &args.output,
    )
}

pub fn verify_global(args: &VerifySitesArgs) -> Result<bool> {
    let timer = Timer::start();
    let source = resolve_source(&args.source)?;
    let report = check_global(&source.family, args.sites, args.tol)?;
    finish_report(
        &report,
        &source.family.label.clone(),
        &source.family.label,
        json!({"source": source_params_json(&args.source), "sites": args.sites, "tol": args.tol}),
        &timer,
        &args.output,
    )
}

pub fn verify_hecke(args: &VerifyHeckeArgs) -> Result<bool> {
    let timer = Timer::start();
    let source = resolve_source(&args.source)?;
    let h = hecke_for(&source, args.qbar_arg)?;
    let report = check_dhecke(&h, args.tol)?;
    finish_report(
        &report,
        &source.family.label,
        &h.label,
        json!({"source": source_params_json(&args.source), "qbar_arg": args.qbar_arg, "tol": args.tol}),
        &timer,
        &args.output,
    )
}

pub fn verify_bmw(args: &VerifyBmwArgs) -> Result<bool> {
    let timer = Timer::start();
    let (bmw, graph_label) = match &args.family_file {
        Some(path) => {
            let file: dybax::families::FamilyFile =
                serde_json::from_str(&fs::read_to_string(path)?)?;
            let label = path
                .file_stem()
                .map(|s| s.to_string_lossy().to_string())
                .unwrap_or_else(|| "file".into());
            (bmw_from_file(&file, &label)?, label)
        }
        None => {
            let source = resolve_source(&args.source)?;
            let h = hecke_for(&source, args.qbar_arg)?;
            let label = source.family.label.clone();
            (bmw_from_hecke(&h, C64::new(1.0, 0.0))?, label)
        }
    };
    let report = check_dbmw(&bmw, args.tol)?;
    finish_report(
        &report,
        &graph_label,
        &bmw.label.clone(),
        json!({"source": source_params_json(&args.source), "tol": args.tol}),
        &timer,
        &args.output,
    )
}

pub fn verify_murphy(args: &VerifySitesArgs) -> Result<bool> {
    let timer = Timer::start();
    let source = resolve_source(&args.source)?;
    let h = hecke_for(&source, args.qbar_arg)?;
    let report = murphy_check(&h, args.sites, args.tol)?;
    finish_report(
        &report,
        &source.family.label,
        &h.label,
        json!({"source": source_params_json(&args.source), "sites": args.sites, "tol": args.tol}),
        &timer,
        &args.output,
    )
}

pub fn verify_diagram(args: &VerifySitesArgs) -> Result<bool> {
    let timer = Timer::start();
    let source = resolve_source(&args.source)?;
    let report = check_diagram_algebra(&source.family, args.sites, args.tol)?;
    finish_report(
        &report,
        &source.family.label.clone(),
        &source.family.label,
        json!({"source": source_params_json(&args.source), "sites": args.sites, "tol": args.tol}),
        &timer,
        &args.output,
    )
}

pub fn verify_funcrel(args: &VerifyParamArgs) -> Result<bool> {
    let timer = Timer::start();
    let source = resolve_source(&args.source)?;
    let spectral = spectral_for(&source, &args.param, args.lambda)?;
    let samples = scaled_samples(spectral.grid_scale());
    let report = check_functional_relation(
        &spectral,
        &source.family.kappa,
        source.family.graph.edges(),
        &samples,
        args.tol,
    )?;
    finish_report(
        &report,
        &source.family.label,
        &spectral.name(),
        json!({"source": source_params_json(&args.source), "param": args.param, "tol": args.tol}),
        &timer,
        &args.output,
    )
}

pub fn verify_ybe(args: &VerifyYbeArgs) -> Result<bool> {
    let timer = Timer::start();
    let source = resolve_source(&args.source)?;
    let r = rfamily_for(&source, &args.param, args.lambda)?;
    let samples = match (args.z, args.w) {
        (Some(z), Some(w)) => vec![(z, w)],
        (None, None) => default_samples(),
        _ => {
            return Err(Error::Input(
                "--z and --w must be given together (or neither)".into(),
            ))
        }
    };
    let bases = r.check_bases(3);
    let report = check_dybe(&r, &bases, &samples, args.tol)?;
    finish_report(
        &report,
        &source.family.label,
        &r.label(),
        json!({
            "source": source_params_json(&args.source),
            "param": args.param,
            "z": args.z, "w": args.w,
            "samples": samples.len(),
            "tol": args.tol,
        }),
        &timer,
        &args.output,
    )
}

pub fn verify_ybe2(args: &VerifyYbe2Args) -> Result<bool> {
    let timer = Timer::start();
    let source = resolve_source(&args.source)?;
    let h = hecke_for(&source, args.qbar_arg)?;
    let bmw = bmw_from_hecke(&h, C64::new(1.0, 0.0))?;
    let r = baxterize_bmw(bmw)?;
    let triples = match (args.u1, args.u2, args.u3) {
        (Some(u1), Some(u2), Some(u3)) => vec![(u1, u2, u3)],
        (None, None, None) => default_triples(),
        _ => {
            return Err(Error::Input(
                "--u1/--u2/--u3 must be given together (or none)".into(),
            ))
        }
    };
    let bases = r.family.check_bases(3);
    let report = check_dybe2(&r, &bases, &triples, args.tol)?;
    finish_report(
        &report,
        &source.family.label,
        &r.family.label.clone(),
        json!({
            "source": source_params_json(&args.source),
            "u1": args.u1, "u2": args.u2, "u3": args.u3,
            "triples": triples.len(),
            "tol": args.tol,
        }),
        &timer,
        &args.output,
    )
}

pub fn transfer(args: &TransferArgs) -> Result<bool> {
    let timer = Timer::start();
    let source = resolve_source(&args.source)?;
    let r = rfamily_for(&source, &args.param, None)?;
    let basis = closed_basis(r.graph(), args.sites)?;
    let mut report = CheckReport::new("transfer", args.tol);
    report
        .notes
        .push(format!("basis dimension {}", basis.dim()));
    let m0 = transfer_matrix(&r, 0.0, &basis)?;
    let t = translation(&basis);
    report.push("M(0)-translation", m0.sub(&t)?.max_abs());
    let mz = transfer_matrix(&r, args.z, &basis)?;
    if mz.structural_zeros > 0 {
        report
            .notes
            .push(format!("{} structural zeros recorded", mz.structural_zeros));
    }
    if args.check_commute {
        let w = args
            .w
            .ok_or_else(|| Error::Input("--check-commute needs --w".into()))?;
        let mw = transfer_matrix(&r, w, &basis)?;
        report.push(
            format!("commutator(z={},w={w})", args.z),
            mz.commutator_norm(&mw)?,
        );
    }
    finish_report(
        &report,
        &source.family.label,
        &r.label(),
        json!({
            "source": source_params_json(&args.source),
            "param": args.param,
            "sites": args.sites,
            "z": args.z, "w": args.w,
            "tol": args.tol,
        }),
        &timer,
        &args.output,
    )
}

pub fn chain(args: &ChainArgs) -> Result<bool> {
    let timer = Timer::start();
    let source = resolve_source(&args.source)?;
    let basis = closed_basis(&source.family.graph, args.sites)?;
    let h = hamiltonian(&source.family, &basis)?;
    let mut report = CheckReport::new("chain", args.tol);
    report
        .notes
        .push(format!("basis dimension {}", basis.dim()));
    report.push("symmetry", h.symmetry_defect().max(h.max_imag()));
    report.push(
        "translation-commutator",
        h.commutator_norm(&translation(&basis))?,
    );
    if args.diagonalize || args.csv.is_some() {
        let spec = diagonalize(&h, args.tol)?;
        // reconstruction residual || H - Q Lambda Q^T ||_max
        let n = h.dim;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let mut v = 0.0;
                for k in 0..n {
                    v += spec.vectors[k][i] * spec.eigenvalues[k] * spec.vectors[k][j];
                }
                worst = worst.max((v - h.get(i, j).re).abs());
            }
        }
        report.push("jacobi-reconstruction", worst);
        report
            .notes
            .push(format!("ground energy {:.12}", spec.eigenvalues[0]));
        if let Some(path) = &args.csv {
            let mut csv = String::from("index,eigenvalue\n");
            for (i, ev) in spec.eigenvalues.iter().enumerate() {
                csv.push_str(&format!("{i},{ev:.16e}\n"));
            }
            fs::write(path, csv)?;
        }
    }
    finish_report(
        &report,
        &source.family.label.clone(),
        &source.family.label,
        json!({
            "source": source_params_json(&args.source),
            "sites": args.sites,
            "diagonalize": args.diagonalize,
            "tol": args.tol,
        }),
        &timer,
        &args.output,
    )
}

/// Kept exercised by the suite: the Hecke exponential route.
pub fn hecke_exp_ybe_report(family: Family, tol: f64) -> Result<CheckReport> {
    let source = resolve_source(&crate::SourceArgs {
        graph: Some(family.to_string()),
        graph_file: None,
        line: None,
        l: 3,
        window: None,
        shift_b: dybax::families::DEFAULT_SHIFT_B,
        tau: "0.0+0.8i".into(),
    })?;
    let h = hecke_for(&source, None)?;
    let (sigma, _f) = sigma_from_hecke(&h)?;
    let r = baxterize_hecke(&h.label, &h.graph, sigma, None)?;
    let bases = r.check_bases(3);
    check_dybe(&r, &bases, &default_samples(), tol)
}
