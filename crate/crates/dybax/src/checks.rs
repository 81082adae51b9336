//! Relation checkers. Each checker walks the eligible bases, builds the
//! embedded operators on order-2 or order-3 fibers (order-N for the global
//! and Murphy checks), and reports one residual per base per relation.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::families::{BMWFamily, HeckeFamily, TLFamily};
use crate::fiber::{embed_at, FiberOperator, C64};
use crate::graph::{paths_from, Vertex};

/// Cap on the per-base fiber size for order-N checks.
const MAX_FIBER_PATHS: usize = 100_000;

#[derive(Debug, Clone)]
pub struct CheckItem {
    pub label: String,
    pub residual: f64,
}

/// Outcome of one checker run: residual per item, skipped bases, and the
/// pass verdict `max residual < tol`.
#[derive(Debug, Clone)]
pub struct CheckReport {
    pub check: String,
    pub tol: f64,
    pub items: Vec<CheckItem>,
    pub skipped: Vec<String>,
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn new(check: &str, tol: f64) -> CheckReport {
        CheckReport {
            check: check.to_string(),
            tol,
            items: Vec::new(),
            skipped: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn push(&mut self, label: impl Into<String>, residual: f64) {
        self.items.push(CheckItem {
            label: label.into(),
            residual,
        });
    }

    pub fn skip(&mut self, reason: impl Into<String>) {
        self.skipped.push(reason.into());
    }

    pub fn max_residual(&self) -> f64 {
        self.items.iter().map(|i| i.residual).fold(0.0, f64::max)
    }

    pub fn pass(&self) -> bool {
        self.max_residual() < self.tol
    }
}

fn missing_vertices(
    ops: &BTreeMap<Vertex, FiberOperator>,
    needed: impl IntoIterator<Item = Vertex>,
) -> Vec<Vertex> {
    needed
        .into_iter()
        .filter(|v| !ops.contains_key(v))
        .collect()
}

/// Local dynamical Temperley-Lieb relations at every eligible base:
/// `T(a)^2 = kappa(a) T(a)` on the order-2 fiber, and the two sandwich
/// relations on the order-3 fiber via the shift embedding.
pub fn check_dtl(family: &TLFamily, tol: f64) -> Result<CheckReport> {
    let mut report = CheckReport::new("dtl", tol);
    let eligible = family.check_bases(3);
    for &a in family.graph.vertices() {
        if !eligible.contains(&a) {
            report.skip(format!("base {a}: outside the checkable window"));
            continue;
        }
        let needed: Vec<Vertex> = std::iter::once(a)
            .chain(family.graph.neighbors(a)?.iter().copied())
            .collect();
        let missing = missing_vertices(&family.ops, needed);
        if !missing.is_empty() {
            report.skip(format!("base {a}: family missing vertices {missing:?}"));
            continue;
        }
        let t = &family.ops[&a];
        let kappa = family.kappa_at(a)?;
        report.push(
            format!("square@{a}"),
            t.compose(t)?.residual(&t.scale(kappa))?,
        );
        let t1 = embed_at(&family.graph, &family.ops, a, 1, 3)?;
        let t2 = embed_at(&family.graph, &family.ops, a, 2, 3)?;
        report.push(
            format!("sandwich121@{a}"),
            t1.compose(&t2)?.compose(&t1)?.residual(&t1)?,
        );
        report.push(
            format!("sandwich212@{a}"),
            t2.compose(&t1)?.compose(&t2)?.residual(&t2)?,
        );
    }
    Ok(report)
}

/// Local dynamical Hecke relations: the quadratic relation per base and the
/// dynamical braid relation on order-3 fibers.
pub fn check_dhecke(h: &HeckeFamily, tol: f64) -> Result<CheckReport> {
    let mut report = CheckReport::new("dhecke", tol);
    let eligible = h.check_bases(3);
    for &a in h.graph.vertices() {
        if !eligible.contains(&a) {
            report.skip(format!("base {a}: outside the checkable window"));
            continue;
        }
        let needed: Vec<Vertex> = std::iter::once(a)
            .chain(h.graph.neighbors(a)?.iter().copied())
            .collect();
        let missing = missing_vertices(&h.ops, needed);
        if !missing.is_empty() {
            report.skip(format!("base {a}: family missing vertices {missing:?}"));
            continue;
        }
        let s = &h.ops[&a];
        let q = h.qbar_at(a)?;
        let id = FiberOperator::identity(&h.graph, a, 2)?;
        let quad = s.sub(&id.scale(q))?.compose(&s.add(&id.scale(q.inv()))?)?;
        report.push(format!("quadratic@{a}"), quad.max_abs());
        let s1 = embed_at(&h.graph, &h.ops, a, 1, 3)?;
        let s2 = embed_at(&h.graph, &h.ops, a, 2, 3)?;
        let lhs = s1.compose(&s2)?.compose(&s1)?;
        let rhs = s2.compose(&s1)?.compose(&s2)?;
        report.push(format!("braid@{a}"), lhs.residual(&rhs)?);
    }
    Ok(report)
}

/// Local dynamical BMW relations: braid for `U`, the eigenvalue relation
/// `K U = U K = nubar K`, and the four tangle relations (both signs) with the
/// shifted scalar on the `(23)` side.
pub fn check_dbmw(b: &BMWFamily, tol: f64) -> Result<CheckReport> {
    let mut report = CheckReport::new("dbmw", tol);
    let eligible = b.check_bases(3);
    for &a in b.graph.vertices() {
        if !eligible.contains(&a) {
            report.skip(format!("base {a}: outside the checkable window"));
            continue;
        }
        let needed: Vec<Vertex> = std::iter::once(a)
            .chain(b.graph.neighbors(a)?.iter().copied())
            .collect();
        let missing = missing_vertices(&b.u_ops, needed);
        if !missing.is_empty() {
            report.skip(format!("base {a}: family missing vertices {missing:?}"));
            continue;
        }
        let u = &b.u_ops[&a];
        let k = &b.k_ops[&a];
        let nu = b.nubar_at(a)?;

        let u1 = embed_at(&b.graph, &b.u_ops, a, 1, 3)?;
        let u2 = embed_at(&b.graph, &b.u_ops, a, 2, 3)?;
        let lhs = u1.compose(&u2)?.compose(&u1)?;
        let rhs = u2.compose(&u1)?.compose(&u2)?;
        report.push(format!("braid@{a}"), lhs.residual(&rhs)?);

        let nu_k = k.scale(nu);
        report.push(format!("ku@{a}"), k.compose(u)?.residual(&nu_k)?);
        report.push(format!("uk@{a}"), u.compose(k)?.residual(&nu_k)?);

        let k1 = embed_at(&b.graph, &b.k_ops, a, 1, 3)?;
        let k2 = embed_at(&b.graph, &b.k_ops, a, 2, 3)?;
        let uinv1 = embed_at(&b.graph, &b.u_inv, a, 1, 3)?;
        let uinv2 = embed_at(&b.graph, &b.u_inv, a, 2, 3)?;
        for (eps, u1e, u2e) in [(1i32, &u1, &u2), (-1, &uinv1, &uinv2)] {
            // K^(23)(ah) (U^eps)^(12)(a) K^(23)(ah) = nubar^{-eps}(ah) K^(23)(ah)
            let lhs = k2.compose(u1e)?.compose(&k2)?;
            let shifted = k2.scale_by_vertex_at(1, &|v| {
                let nv = b.nubar.get(&v).copied().unwrap_or(C64::new(f64::NAN, 0.0));
                if eps == 1 {
                    nv.inv()
                } else {
                    nv
                }
            });
            report.push(format!("tangle23(eps={eps})@{a}"), lhs.residual(&shifted)?);

            // K^(12)(a) (U^eps)^(23)(ah) K^(12)(a) = nubar^{-eps}(a) K^(12)(a)
            let lhs = k1.compose(u2e)?.compose(&k1)?;
            let scalar = if eps == 1 { nu.inv() } else { nu };
            report.push(
                format!("tangle12(eps={eps})@{a}"),
                lhs.residual(&k1.scale(scalar))?,
            );
        }
    }
    Ok(report)
}

/// Global dynamical Temperley-Lieb relations on order-`n` fibers: the square
/// relation with the shifted kappa, both sandwich relations for adjacent
/// positions, and far commutation.
pub fn check_global(family: &TLFamily, n: usize, tol: f64) -> Result<CheckReport> {
    if n < 3 {
        return Err(Error::Input("global check needs at least 3 legs".into()));
    }
    let mut report = CheckReport::new("global-dtl", tol);
    let eligible = family.check_bases(n);
    for &a in family.graph.vertices() {
        if !eligible.contains(&a) {
            report.skip(format!("base {a}: outside the checkable window"));
            continue;
        }
        if paths_from(&family.graph, a, n)?.len() > MAX_FIBER_PATHS {
            return Err(Error::Input(format!(
                "order-{n} fiber at base {a} exceeds {MAX_FIBER_PATHS} paths"
            )));
        }
        let ops: Result<Vec<FiberOperator>> = (1..n)
            .map(|i| embed_at(&family.graph, &family.ops, a, i, n))
            .collect();
        let ops = match ops {
            Ok(o) => o,
            Err(Error::Domain(msg)) => {
                report.skip(format!("base {a}: {msg}"));
                continue;
            }
            Err(e) => return Err(e),
        };
        let kap = &family.kappa;
        for (idx, ti) in ops.iter().enumerate() {
            let i = idx + 1;
            // T_i^2 = kappa(a h^{i-1}) T_i, kappa evaluated at the shifted vertex
            let scaled = ti.scale_by_vertex_at(i - 1, &|v| {
                kap.get(&v).copied().unwrap_or(C64::new(f64::NAN, 0.0))
            });
            report.push(
                format!("square(i={i})@{a}"),
                ti.compose(ti)?.residual(&scaled)?,
            );
        }
        for idx in 0..ops.len().saturating_sub(1) {
            let i = idx + 1;
            let ti = &ops[idx];
            let tj = &ops[idx + 1];
            report.push(
                format!("sandwich(i={i},i+1)@{a}"),
                ti.compose(tj)?.compose(ti)?.residual(ti)?,
            );
            report.push(
                format!("sandwich(i+1={},i)@{a}", i + 1),
                tj.compose(ti)?.compose(tj)?.residual(tj)?,
            );
        }
        for i in 0..ops.len() {
            for j in i + 2..ops.len() {
                let lhs = ops[i].compose(&ops[j])?;
                let rhs = ops[j].compose(&ops[i])?;
                report.push(
                    format!("far(i={},j={})@{a}", i + 1, j + 1),
                    lhs.residual(&rhs)?,
                );
            }
        }
    }
    Ok(report)
}

/// Murphy elements `J_1 = S_1^2`, `J_i = S_i J_{i-1} S_i` on order-`n`
/// fibers, with the commutation relations they satisfy for constant `qbar`.
pub fn murphy_check(h: &HeckeFamily, n: usize, tol: f64) -> Result<CheckReport> {
    if n < 3 {
        return Err(Error::Input("Murphy check needs at least 3 legs".into()));
    }
    if h.constant_qbar().is_none() {
        return Err(Error::Precondition(
            "Murphy relations require a constant qbar".into(),
        ));
    }
    let mut report = CheckReport::new("murphy", tol);
    let eligible = h.check_bases(n);
    let comm = |x: &FiberOperator, y: &FiberOperator| -> Result<f64> {
        x.compose(y)?.residual(&y.compose(x)?)
    };
    for &a in h.graph.vertices() {
        if !eligible.contains(&a) {
            report.skip(format!("base {a}: outside the checkable window"));
            continue;
        }
        let s: Result<Vec<FiberOperator>> = (1..n)
            .map(|i| embed_at(&h.graph, &h.ops, a, i, n))
            .collect();
        let s = match s {
            Ok(o) => o,
            Err(Error::Domain(msg)) => {
                report.skip(format!("base {a}: {msg}"));
                continue;
            }
            Err(e) => return Err(e),
        };
        let mut j: Vec<FiberOperator> = Vec::with_capacity(s.len());
        j.push(s[0].compose(&s[0])?);
        for i in 1..s.len() {
            j.push(s[i].compose(&j[i - 1])?.compose(&s[i])?);
        }
        for x in 0..j.len() {
            for y in x..j.len() {
                report.push(format!("[J{},J{}]@{a}", x + 1, y + 1), comm(&j[x], &j[y])?);
            }
        }
        for (y, jy) in j.iter().enumerate() {
            report.push(format!("[S1,J{}]@{a}", y + 1), comm(&s[0], jy)?);
        }
        for x in 1..s.len() {
            let i = x + 1; // operator index S_i, i >= 2
            for (y, jy) in j.iter().enumerate() {
                let jdx = y + 1;
                if jdx == i || jdx == i - 1 {
                    continue;
                }
                report.push(format!("[S{i},J{jdx}]@{a}"), comm(&s[x], jy)?);
            }
            let prod = j[x - 1].compose(&j[x])?;
            report.push(format!("[S{i},J{}J{i}]@{a}", i - 1), comm(&s[x], &prod)?);
            let sum = j[x - 1].add(&j[x])?;
            report.push(format!("[S{i},J{}+J{i}]@{a}", i - 1), comm(&s[x], &sum)?);
        }
    }
    Ok(report)
}

/// Component-level diagram algebra relations: with `w_a(x, y)` the block of
/// `T(a)` between the round trips through `x` and `y`, the sum rule
/// `sum_c w_a(c,d) w_a(b,c) = phi w_a(b,d)` and the two contraction rules
/// mixing adjacent positions. Requires constant kappa (the loop value `phi`).
pub fn check_diagram_algebra(family: &TLFamily, n: usize, tol: f64) -> Result<CheckReport> {
    if n < 3 {
        return Err(Error::Input("diagram algebra check needs n >= 3".into()));
    }
    let phi = family
        .constant_kappa()
        .ok_or_else(|| Error::Precondition("diagram algebra requires constant kappa".into()))?;
    let mut report = CheckReport::new("diagram-algebra", tol);
    let eligible = family.check_bases(3);
    let w = |d: Vertex, x: Vertex, y: Vertex| -> C64 {
        family.ops[&d].get(
            &crate::graph::Path::new(vec![d, y, d]),
            &crate::graph::Path::new(vec![d, x, d]),
        )
    };
    for &a in family.graph.vertices() {
        if !eligible.contains(&a) {
            report.skip(format!("base {a}: outside the checkable window"));
            continue;
        }
        let nbrs = family.graph.neighbors(a)?;
        let mut worst_sum = 0.0f64;
        let mut worst_con12 = 0.0f64;
        for &b in nbrs {
            for &d in nbrs {
                let total: C64 = nbrs.iter().map(|&c| w(a, c, d) * w(a, b, c)).sum();
                worst_sum = worst_sum.max((total - phi * w(a, b, d)).norm());
                for &c in nbrs {
                    if !family.ops.contains_key(&c) {
                        continue;
                    }
                    let lhs = w(a, c, d) * w(c, a, a) * w(a, b, c);
                    worst_con12 = worst_con12.max((lhs - w(a, b, d)).norm());
                }
            }
        }
        report.push(format!("sum@{a}"), worst_sum);
        report.push(format!("contract-i@{a}"), worst_con12);

        let mut worst_con21 = 0.0f64;
        for &b in nbrs {
            let bn = family.graph.neighbors(b)?;
            if !family.ops.contains_key(&b) {
                continue;
            }
            for &c in bn {
                for &d in bn {
                    let lhs = w(b, a, d) * w(a, b, b) * w(b, c, a);
                    worst_con21 = worst_con21.max((lhs - w(b, c, d)).norm());
                }
            }
        }
        report.push(format!("contract-i+1@{a}"), worst_con21);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::Family;
    use crate::families::{
        bmw_from_hecke, build_tl_family, build_tl_line, hecke_from_tl_const, BMWFamily, LineKind,
        LineWindow, DEFAULT_SHIFT_B,
    };
    use crate::graph::Path;

    fn tl(family: Family) -> TLFamily {
        build_tl_family(&family, 1e-13).unwrap()
    }

    /// Independent component oracle for the sandwich relations, from the
    /// block sums over intermediate vertices:
    /// `t_a(x,z) t_z(a,a) t_a(z,v) = t_a(x,v)` and
    /// `t_x(y,a) t_a(x,x) t_x(a,y') = t_x(y,y')`.
    fn component_oracle_worst(fam: &TLFamily) -> f64 {
        let t = |d: Vertex, x: Vertex, y: Vertex| -> C64 {
            fam.ops[&d].get(&Path::new(vec![d, x, d]), &Path::new(vec![d, y, d]))
        };
        let mut worst = 0.0f64;
        for &a in fam.graph.vertices() {
            let nbrs = fam.graph.neighbors(a).unwrap();
            for &x in nbrs {
                for &z in nbrs {
                    for &v in nbrs {
                        let lhs = t(a, x, z) * t(z, a, a) * t(a, z, v);
                        worst = worst.max((lhs - t(a, x, v)).norm());
                    }
                }
            }
            for &x in nbrs {
                for &y in fam.graph.neighbors(x).unwrap() {
                    for &yp in fam.graph.neighbors(x).unwrap() {
                        let lhs = t(x, y, a) * t(a, x, x) * t(x, a, yp);
                        worst = worst.max((lhs - t(x, y, yp)).norm());
                    }
                }
            }
        }
        worst
    }

    #[test]
    fn dtl_a5_passes_tightly() {
        let fam = tl(Family::A(5));
        let report = check_dtl(&fam, 1e-12).unwrap();
        assert!(report.pass(), "max {}", report.max_residual());
        // cross-check with the independent component oracle
        assert!(component_oracle_worst(&fam) < 1e-12);
    }

    #[test]
    fn dtl_zero_family_degenerate_pass() {
        // the zero family satisfies every relation as 0 = 0
        let mut fam = tl(Family::A(3));
        for &v in fam.graph.vertices() {
            fam.ops.insert(v, FiberOperator::zero(v, 2));
        }
        let report = check_dtl(&fam, 1e-12).unwrap();
        assert_eq!(report.max_residual(), 0.0);
        assert!(report.pass());
    }

    #[test]
    fn dtl_elliptic_line() {
        let window = LineWindow::new(-1, 5, DEFAULT_SHIFT_B).unwrap();
        let fam = build_tl_line(&LineKind::Ell(C64::new(0.0, 0.8)), 4, window).unwrap();
        let report = check_dtl(&fam, 1e-10).unwrap();
        assert!(!report.items.is_empty());
        assert!(report.pass(), "max {}", report.max_residual());
        assert!(!report.skipped.is_empty());
    }

    #[test]
    fn dtl_line_skips_margins() {
        let window = LineWindow::new(0, 12, DEFAULT_SHIFT_B).unwrap();
        let fam = build_tl_line(&LineKind::Tri, 3, window).unwrap();
        let report = check_dtl(&fam, 1e-10).unwrap();
        // 13 vertices, margin 3 on both sides: 7 checked, 6 skipped
        assert_eq!(report.skipped.len(), 6);
        assert_eq!(report.items.len(), 7 * 3);
        assert!(report.pass(), "max {}", report.max_residual());
    }

    #[test]
    fn dhecke_a5() {
        let fam = tl(Family::A(5));
        let q = C64::from_polar(1.0, std::f64::consts::PI / 6.0);
        let h = hecke_from_tl_const(&fam, q).unwrap();
        let report = check_dhecke(&h, 1e-11).unwrap();
        assert!(report.pass(), "max {}", report.max_residual());
        let braid_worst = report
            .items
            .iter()
            .filter(|i| i.label.starts_with("braid"))
            .map(|i| i.residual)
            .fold(0.0, f64::max);
        assert!(braid_worst < 1e-12);
    }

    #[test]
    fn dbmw_hecke_degenerate() {
        let fam = tl(Family::A(5));
        let q = C64::from_polar(1.0, std::f64::consts::PI / 6.0);
        let h = hecke_from_tl_const(&fam, q).unwrap();
        let b = bmw_from_hecke(&h, C64::new(1.0, 0.0)).unwrap();
        let report = check_dbmw(&b, 1e-10).unwrap();
        assert!(report.pass(), "max {}", report.max_residual());
    }

    #[test]
    fn dbmw_identity_u_requires_nubar_one() {
        // U = id gives K = id and K U = K, so nubar != 1 must fail
        let fam = tl(Family::A(3));
        let graph = fam.graph.clone();
        let q = C64::from_polar(1.0, std::f64::consts::PI / 5.0);
        let mut u_ops = BTreeMap::new();
        let mut qbar = BTreeMap::new();
        let mut nubar = BTreeMap::new();
        for &v in graph.vertices() {
            u_ops.insert(v, FiberOperator::identity(&graph, v, 2).unwrap());
            qbar.insert(v, q);
            nubar.insert(v, C64::new(2.0, 0.0));
        }
        let b = BMWFamily::new("idU", graph, u_ops, qbar, nubar, None).unwrap();
        for k in b.k_ops.values() {
            let id = FiberOperator::identity(&b.graph, k.base(), 2).unwrap();
            assert!(k.residual(&id).unwrap() < 1e-14);
        }
        let report = check_dbmw(&b, 1e-10).unwrap();
        assert!(!report.pass());
        // with nubar = 1 everything holds
        let mut nubar1 = BTreeMap::new();
        for &v in b.graph.vertices() {
            nubar1.insert(v, C64::new(1.0, 0.0));
        }
        let b1 = BMWFamily::new(
            "idU1",
            b.graph.clone(),
            b.u_ops.clone(),
            b.qbar.clone(),
            nubar1,
            None,
        )
        .unwrap();
        let report1 = check_dbmw(&b1, 1e-10).unwrap();
        assert!(report1.pass(), "max {}", report1.max_residual());
    }

    #[test]
    fn global_a4_n4() {
        let fam = tl(Family::A(4));
        let report = check_global(&fam, 4, 1e-11).unwrap();
        assert!(report.pass(), "max {}", report.max_residual());
        let far_worst = report
            .items
            .iter()
            .filter(|i| i.label.starts_with("far"))
            .map(|i| i.residual)
            .fold(0.0, f64::max);
        assert_eq!(far_worst, 0.0);
    }

    #[test]
    fn global_shifted_kappa_matches_eigenvalue() {
        // constant kappa: the shifted evaluation equals phi at every base
        let fam = tl(Family::A(4));
        let phi = 2.0 * (std::f64::consts::PI / 5.0).cos();
        for &v in fam.graph.vertices() {
            assert!((fam.kappa[&v] - C64::new(phi, 0.0)).norm() < 1e-12);
        }
        let report = check_global(&fam, 3, 1e-11).unwrap();
        assert!(report.pass());
    }

    #[test]
    fn murphy_a4_n3_and_errors() {
        let fam = tl(Family::A(4));
        let q = C64::from_polar(1.0, std::f64::consts::PI / 5.0);
        let h = hecke_from_tl_const(&fam, q).unwrap();
        let report = murphy_check(&h, 3, 1e-10).unwrap();
        assert!(report.pass(), "max {}", report.max_residual());
        // [J1, J1] is exactly zero
        let j11 = report
            .items
            .iter()
            .find(|i| i.label.starts_with("[J1,J1]"))
            .unwrap();
        assert_eq!(j11.residual, 0.0);

        let mut h2 = h.clone();
        h2.qbar.insert(1, q * C64::new(1.001, 0.0));
        assert!(matches!(
            murphy_check(&h2, 3, 1e-10),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn murphy_a5_j1_j2_commute() {
        let fam = tl(Family::A(5));
        let q = C64::from_polar(1.0, std::f64::consts::PI / 6.0);
        let h = hecke_from_tl_const(&fam, q).unwrap();
        let report = murphy_check(&h, 3, 1e-10).unwrap();
        let j12 = report
            .items
            .iter()
            .filter(|i| i.label.starts_with("[J1,J2]"))
            .map(|i| i.residual)
            .fold(0.0, f64::max);
        assert!(j12 < 1e-10);
    }

    #[test]
    fn diagram_algebra_a3() {
        let fam = tl(Family::A(3));
        let report = check_diagram_algebra(&fam, 3, 1e-12).unwrap();
        assert!(report.pass(), "max {}", report.max_residual());
    }

    #[test]
    fn diagram_algebra_zero_family_and_nonconstant_kappa() {
        let mut fam = tl(Family::A(3));
        for &v in fam.graph.vertices() {
            fam.ops.insert(v, FiberOperator::zero(v, 2));
        }
        let report = check_diagram_algebra(&fam, 3, 1e-12).unwrap();
        assert_eq!(report.max_residual(), 0.0);

        let window = LineWindow::new(-1, 5, DEFAULT_SHIFT_B).unwrap();
        let ell = build_tl_line(&LineKind::Ell(C64::new(0.0, 0.8)), 4, window).unwrap();
        assert!(matches!(
            check_diagram_algebra(&ell, 3, 1e-12),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn dtl_all_catalog_families() {
        for family in Family::catalog() {
            let fam = tl(family);
            let report = check_dtl(&fam, 1e-10).unwrap();
            assert!(report.pass(), "{family}: {}", report.max_residual());
        }
    }
}
