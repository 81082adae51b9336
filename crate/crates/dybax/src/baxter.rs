//! Spectral parameterizations, the functional relation gating the
//! Temperley-Lieb ansatz, the three Baxterization routes, the elliptic face
//! R-matrix, and the dynamical Yang-Baxter checkers.

use std::collections::BTreeMap;

use crate::checks::CheckReport;
use crate::error::{Error, Result};
use crate::families::{BMWFamily, HeckeFamily, LineWindow, TLFamily};
use crate::fiber::{embed_at, FiberOperator, C64};
use crate::graph::{Graph, Path, Vertex};
use crate::theta::{bracket_ell, bracket_hyp, bracket_tri, EllipticParams};

/// Samples closer than this to a pole are skipped with a warning.
const POLE_GUARD: f64 = 1e-8;

/// Named spectral parameterization `x = f(z)` with `f(0) = 0`.
///
/// `Tri`/`Hyp` are the `sin z / sin(lambda - z)` forms used for finite
/// diagrams (`lambda = pi/h`); `Rational` is `z/(1-z)` for the affine ones;
/// the bracket forms are the same functions in height units,
/// `<z>/<1-z>`, matching the line families and the elliptic degeneration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpectralParam {
    Tri { lambda: f64 },
    Hyp { lambda: f64 },
    Rational,
    BracketTri { l: u32 },
    BracketHyp { l: u32 },
}

impl SpectralParam {
    pub fn eval(&self, z: f64) -> Result<f64> {
        if self.pole_distance(z) < POLE_GUARD {
            return Err(Error::Singularity(format!(
                "spectral parameter z = {z} is within {POLE_GUARD} of a pole of {}",
                self.name()
            )));
        }
        Ok(match *self {
            SpectralParam::Tri { lambda } => z.sin() / (lambda - z).sin(),
            SpectralParam::Hyp { lambda } => z.sinh() / (lambda - z).sinh(),
            SpectralParam::Rational => z / (1.0 - z),
            SpectralParam::BracketTri { l } => bracket_tri(z, l) / bracket_tri(1.0 - z, l),
            SpectralParam::BracketHyp { l } => bracket_hyp(z, l) / bracket_hyp(1.0 - z, l),
        })
    }

    /// Distance from `z` to the nearest real pole.
    pub fn pole_distance(&self, z: f64) -> f64 {
        let dist_to_lattice = |x: f64, period: f64| -> f64 {
            let r = (x / period).rem_euclid(1.0);
            r.min(1.0 - r) * period
        };
        match *self {
            SpectralParam::Tri { lambda } => dist_to_lattice(lambda - z, std::f64::consts::PI),
            SpectralParam::Hyp { lambda } => (lambda - z).abs(),
            SpectralParam::Rational => (1.0 - z).abs(),
            SpectralParam::BracketTri { l } => dist_to_lattice(1.0 - z, l as f64 + 1.0),
            SpectralParam::BracketHyp { .. } => (1.0 - z).abs(),
        }
    }

    pub fn name(&self) -> String {
        match *self {
            SpectralParam::Tri { lambda } => format!("tri(lambda={lambda})"),
            SpectralParam::Hyp { lambda } => format!("hyp(lambda={lambda})"),
            SpectralParam::Rational => "rational".to_string(),
            SpectralParam::BracketTri { l } => format!("bracket-tri(L={l})"),
            SpectralParam::BracketHyp { l } => format!("bracket-hyp(L={l})"),
        }
    }

    /// Human-readable description of the excluded spectral values.
    pub fn pole_set(&self) -> String {
        match *self {
            SpectralParam::Tri { lambda } => format!("z = {lambda} + k pi"),
            SpectralParam::Hyp { lambda } => format!("z = {lambda}"),
            SpectralParam::Rational => "z = 1".to_string(),
            SpectralParam::BracketTri { l } => format!("z = 1 + k ({})", l + 1),
            SpectralParam::BracketHyp { .. } => "z = 1".to_string(),
        }
    }

    /// Natural scale of the spectral variable, used to place sample grids
    /// inside the pole-free box.
    pub fn grid_scale(&self) -> f64 {
        match *self {
            SpectralParam::Tri { lambda } | SpectralParam::Hyp { lambda } => lambda,
            _ => 1.0,
        }
    }
}

/// 20 deterministic low-discrepancy points in `(0.05, 0.45)^2`, from a fixed
/// Kronecker sequence. No RNG: reruns are byte-identical.
pub fn default_samples() -> Vec<(f64, f64)> {
    scaled_samples(1.0)
}

/// The default grid scaled by `scale` in both coordinates.
pub fn scaled_samples(scale: f64) -> Vec<(f64, f64)> {
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    let alpha = 2f64.sqrt() - 1.0;
    (1..=20)
        .map(|k| {
            let s = (0.5 + k as f64 * phi).fract();
            let t = (0.5 + k as f64 * alpha).fract();
            ((0.05 + 0.4 * s) * scale, (0.05 + 0.4 * t) * scale)
        })
        .collect()
}

/// Functional relation required by the Temperley-Lieb ansatz: with
/// `x = f(z)`, `x' = f(z')`, `x'' = f(z' - z)`, the residual of
/// `x'' (1 + kappa x + x x') - (x' - x)` per sample and per vertex, for the
/// kappa value at each edge endpoint. Near-pole samples are skipped. For
/// non-constant kappa the obstruction `max |kappa(a) - kappa(b)|` over edges
/// is recorded in the notes.
pub fn check_functional_relation(
    param: &SpectralParam,
    kappa: &BTreeMap<Vertex, C64>,
    edges: &[(Vertex, Vertex)],
    samples: &[(f64, f64)],
    tol: f64,
) -> Result<CheckReport> {
    let mut report = CheckReport::new("functional-relation", tol);
    let mut per_vertex: BTreeMap<Vertex, f64> = BTreeMap::new();
    let mut identical_pairs = true;
    for &(z, zp) in samples {
        let values = (param.eval(z), param.eval(zp), param.eval(zp - z));
        let (x, xp, xpp) = match values {
            (Ok(a), Ok(b), Ok(c)) => (a, b, c),
            _ => {
                report.skip(format!(
                    "sample (z={z}, z'={zp}) is within {POLE_GUARD} of a pole"
                ));
                continue;
            }
        };
        for &(a, b) in edges {
            let (ka, kb) = match (kappa.get(&a), kappa.get(&b)) {
                (Some(&ka), Some(&kb)) => (ka, kb),
                _ => continue,
            };
            let res = |k: C64| -> f64 {
                (C64::new(xpp, 0.0) * (C64::new(1.0 + x * xp, 0.0) + k * x) - C64::new(xp - x, 0.0))
                    .norm()
            };
            let (ra, rb) = (res(ka), res(kb));
            if (ka - kb).norm() == 0.0 && ra != rb {
                identical_pairs = false;
            }
            let ea = per_vertex.entry(a).or_insert(0.0);
            *ea = ea.max(ra);
            let eb = per_vertex.entry(b).or_insert(0.0);
            *eb = eb.max(rb);
        }
    }
    for (v, r) in per_vertex {
        report.push(format!("kappa@{v}"), r);
    }
    let obstruction = edges
        .iter()
        .filter_map(|&(a, b)| match (kappa.get(&a), kappa.get(&b)) {
            (Some(&ka), Some(&kb)) => Some((ka - kb).norm()),
            _ => None,
        })
        .fold(0.0, f64::max);
    if obstruction > 0.0 {
        report.notes.push(format!(
            "kappa obstruction max|kappa(a)-kappa(b)| = {obstruction:e}"
        ));
    }
    if identical_pairs {
        report
            .notes
            .push("constant-kappa edge conditions produced identical residuals".into());
    }
    Ok(report)
}

/// One-parameter dynamical R-matrix family.
#[derive(Debug, Clone)]
pub enum RFamily {
    /// `R(z, a) = id + f(z) T(a)`.
    TlAnsatz {
        family: TLFamily,
        param: SpectralParam,
    },
    /// `R(z, a) = e^z sigma(a) + e^{-z} sigma(a)^{-1}`.
    HeckeExp {
        label: String,
        graph: Graph,
        sigma: BTreeMap<Vertex, FiberOperator>,
        sigma_inv: BTreeMap<Vertex, FiberOperator>,
        f_const: C64,
        window: Option<LineWindow>,
    },
    /// The elliptic face R-matrix on a height window.
    AbfElliptic {
        params: EllipticParams,
        window: LineWindow,
        graph: Graph,
    },
}

impl RFamily {
    pub fn graph(&self) -> &Graph {
        match self {
            RFamily::TlAnsatz { family, .. } => &family.graph,
            RFamily::HeckeExp { graph, .. } => graph,
            RFamily::AbfElliptic { graph, .. } => graph,
        }
    }

    pub fn label(&self) -> String {
        match self {
            RFamily::TlAnsatz { family, param } => {
                format!("tl-ansatz({}, {})", family.label, param.name())
            }
            RFamily::HeckeExp { label, .. } => format!("hecke-exp({label})"),
            RFamily::AbfElliptic { params, .. } => {
                format!("abf-elliptic(L={}, tau={})", params.l, params.tau)
            }
        }
    }

    pub fn check_bases(&self, order: usize) -> Vec<Vertex> {
        match self {
            RFamily::TlAnsatz { family, .. } => family.check_bases(order),
            RFamily::HeckeExp { graph, window, .. } => match window {
                Some(w) => w.interior(order as i64),
                None => graph.vertices().to_vec(),
            },
            RFamily::AbfElliptic { window, .. } => window.interior(order as i64),
        }
    }

    /// The operator `R(z, v)` on the order-2 fiber at `v`.
    pub fn r_op(&self, z: f64, v: Vertex) -> Result<FiberOperator> {
        match self {
            RFamily::TlAnsatz { family, param } => {
                let t = family
                    .ops
                    .get(&v)
                    .ok_or_else(|| Error::Domain(format!("family has no operator at {v}")))?;
                let x = param.eval(z)?;
                let id = FiberOperator::identity(&family.graph, v, 2)?;
                id.add(&t.scale(C64::new(x, 0.0)))
            }
            RFamily::HeckeExp {
                sigma, sigma_inv, ..
            } => {
                let s = sigma
                    .get(&v)
                    .ok_or_else(|| Error::Domain(format!("sigma has no operator at {v}")))?;
                let si = &sigma_inv[&v];
                s.scale(C64::new(z.exp(), 0.0))
                    .add(&si.scale(C64::new((-z).exp(), 0.0)))
            }
            RFamily::AbfElliptic {
                params,
                window,
                graph,
            } => build_abf_r(params, window, graph, z, v),
        }
    }
}

/// Temperley-Lieb Baxterization `R(z, a) = id + f(z) T(a)`. Refused when the
/// functional relation fails on the default grid for the family's kappa,
/// reporting the obstruction.
pub fn baxterize_tl(family: TLFamily, param: SpectralParam) -> Result<RFamily> {
    let gate_tol = 1e-10;
    let samples = scaled_samples(param.grid_scale());
    let report = check_functional_relation(
        &param,
        &family.kappa,
        family.graph.edges(),
        &samples,
        gate_tol,
    )?;
    if !report.pass() {
        let mut msg = format!(
            "functional relation fails for {} with {}: max residual {:e} at tol {gate_tol:e}",
            family.label,
            param.name(),
            report.max_residual()
        );
        for note in &report.notes {
            msg.push_str("; ");
            msg.push_str(note);
        }
        return Err(Error::NotBaxterizable(msg));
    }
    Ok(RFamily::TlAnsatz { family, param })
}

/// Adapter from a Hecke family to the braid-plus-scalar normal form:
/// `sigma(a) = i S(a)`, so that `sigma + sigma^{-1} = i(qbar - qbar^{-1}) id`.
pub fn sigma_from_hecke(h: &HeckeFamily) -> Result<(BTreeMap<Vertex, FiberOperator>, C64)> {
    let q = h
        .constant_qbar()
        .ok_or_else(|| Error::Precondition("sigma adapter requires constant qbar".into()))?;
    let i = C64::new(0.0, 1.0);
    let sigma = h.ops.iter().map(|(&v, s)| (v, s.scale(i))).collect();
    Ok((sigma, i * (q - q.inv())))
}

/// Hecke-route Baxterization `R(z, a) = e^z sigma(a) + e^{-z} sigma(a)^{-1}`.
/// Requires `sigma(a) + sigma(a)^{-1} = f id` with one constant `f` across
/// the (connected) graph.
pub fn baxterize_hecke(
    label: &str,
    graph: &Graph,
    sigma: BTreeMap<Vertex, FiberOperator>,
    window: Option<LineWindow>,
) -> Result<RFamily> {
    let mut sigma_inv = BTreeMap::new();
    let mut f_const: Option<C64> = None;
    for (&v, s) in &sigma {
        let si = s
            .invert(graph)
            .map_err(|_| Error::Input(format!("sigma is not invertible at vertex {v}")))?;
        let total = s.add(&si)?;
        let id = FiberOperator::identity(graph, v, 2)?;
        // extract f from the first diagonal block, then verify proportionality
        let f = match id.blocks().keys().next() {
            Some((p, _)) => total.get(p, p),
            None => C64::new(0.0, 0.0),
        };
        if total.residual(&id.scale(f))? > 1e-10 {
            return Err(Error::Precondition(format!(
                "sigma + sigma^-1 is not proportional to the identity at vertex {v}"
            )));
        }
        match f_const {
            None => f_const = Some(f),
            Some(prev) if (prev - f).norm() > 1e-10 => {
                return Err(Error::Precondition(format!(
                    "sigma + sigma^-1 = f id with non-constant f ({prev} vs {f} at vertex {v})"
                )));
            }
            _ => {}
        }
        sigma_inv.insert(v, si);
    }
    Ok(RFamily::HeckeExp {
        label: label.to_string(),
        graph: graph.clone(),
        sigma,
        sigma_inv,
        f_const: f_const.ok_or_else(|| Error::Input("empty sigma family".into()))?,
        window,
    })
}

/// Two-parameter BMW R-matrix family
/// `R(u, v)[a] = U(a) + (q - q^{-1})/(v/u - 1) id + (q - q^{-1})/(1 + nu^{-1} q v/u) K(a)`.
#[derive(Debug, Clone)]
pub struct BmwRFamily {
    pub family: BMWFamily,
}

pub fn baxterize_bmw(family: BMWFamily) -> Result<BmwRFamily> {
    let q = family
        .qbar
        .values()
        .next()
        .copied()
        .ok_or_else(|| Error::Input("empty BMW family".into()))?;
    if family.qbar.values().any(|&x| (x - q).norm() > 1e-12) {
        return Err(Error::Precondition(
            "BMW Baxterization requires constant qbar".into(),
        ));
    }
    let nu = family.nubar.values().next().copied().unwrap();
    if family.nubar.values().any(|&x| (x - nu).norm() > 1e-12) {
        return Err(Error::Precondition(
            "BMW Baxterization requires constant nubar".into(),
        ));
    }
    Ok(BmwRFamily { family })
}

impl BmwRFamily {
    pub fn r_op(&self, u: f64, v: f64, vertex: Vertex) -> Result<FiberOperator> {
        let fam = &self.family;
        let uop = fam
            .u_ops
            .get(&vertex)
            .ok_or_else(|| Error::Domain(format!("family has no operator at {vertex}")))?;
        let k = &fam.k_ops[&vertex];
        let q = fam.qbar_at(vertex)?;
        let nu = fam.nubar_at(vertex)?;
        let ratio = v / u;
        let qdiff = q - q.inv();
        let den1 = C64::new(ratio - 1.0, 0.0);
        if den1.norm() < POLE_GUARD {
            return Err(Error::Domain(
                "BMW R-matrix pole: v/u = 1 makes the identity term singular".into(),
            ));
        }
        let den2 = C64::new(1.0, 0.0) + nu.inv() * q * ratio;
        if den2.norm() < POLE_GUARD {
            return Err(Error::Domain(
                "BMW R-matrix pole: 1 + nubar^{-1} qbar v/u vanishes".into(),
            ));
        }
        let id = FiberOperator::identity(&fam.graph, vertex, 2)?;
        uop.add(&id.scale(qdiff / den1))?
            .add(&k.scale(qdiff / den2))
    }
}

/// Elliptic face R-matrix on the order-2 fiber at `base`: unit weights on the
/// two straight paths, `[a±z][1]/([a][1-z])` on the round trips, and
/// `sqrt([a-1][a+1]) [z]/([a][1-z])` on the two cross blocks (heights
/// `a = base + shift_b`).
pub fn build_abf_r(
    params: &EllipticParams,
    window: &LineWindow,
    graph: &Graph,
    z: f64,
    base: Vertex,
) -> Result<FiberOperator> {
    if !graph.has_vertex(base) {
        return Err(Error::Input(format!("unknown vertex {base}")));
    }
    let a = window.height(base);
    let br = |x: f64| bracket_ell(C64::new(x, 0.0), params);
    let bra = br(a)?;
    let br1z = br(1.0 - z)?;
    if bra.norm() < 1e-12 || br1z.norm() < 1e-12 {
        return Err(Error::Singularity(format!(
            "elliptic bracket vanishes at height {a} or at 1-z = {}",
            1.0 - z
        )));
    }
    let den = bra * br1z;
    let mut op = FiberOperator::zero(base, 2);
    let up = base + 1;
    let dn = base - 1;
    if graph.has_vertex(up) && graph.has_vertex(base + 2) {
        let p = Path::new(vec![base, up, base + 2]);
        op.set_block(p.clone(), p, C64::new(1.0, 0.0))?;
    }
    if graph.has_vertex(dn) && graph.has_vertex(base - 2) {
        let p = Path::new(vec![base, dn, base - 2]);
        op.set_block(p.clone(), p, C64::new(1.0, 0.0))?;
    }
    let one = br(1.0)?;
    if graph.has_vertex(up) {
        let p = Path::new(vec![base, up, base]);
        op.set_block(p.clone(), p.clone(), br(a + z)? * one / den)?;
    }
    if graph.has_vertex(dn) {
        let p = Path::new(vec![base, dn, base]);
        op.set_block(p.clone(), p.clone(), br(a - z)? * one / den)?;
    }
    if graph.has_vertex(up) && graph.has_vertex(dn) {
        let cross = (br(a - 1.0)? * br(a + 1.0)?).sqrt() * br(z)? / den;
        let pu = Path::new(vec![base, up, base]);
        let pd = Path::new(vec![base, dn, base]);
        op.set_block(pu.clone(), pd.clone(), cross)?;
        op.set_block(pd, pu, cross)?;
    }
    Ok(op)
}

/// Elliptic R-matrix family on a window.
pub fn abf_family(tau: C64, l: u32, window: LineWindow) -> Result<RFamily> {
    let params = EllipticParams::new(tau, l, window.shift_b)?;
    let graph = window.graph();
    Ok(RFamily::AbfElliptic {
        params,
        window,
        graph,
    })
}

fn family_for_bases(
    r: &RFamily,
    z: f64,
    vertices: &[Vertex],
) -> Result<BTreeMap<Vertex, FiberOperator>> {
    let mut map = BTreeMap::new();
    for &v in vertices {
        map.insert(v, r.r_op(z, v)?);
    }
    Ok(map)
}

/// Residual of the dynamical Yang-Baxter equation at one base:
/// `R23(z-w, ah) R12(z, a) R23(w, ah) - R12(w, a) R23(z, ah) R12(z-w, a)`
/// on the order-3 fiber at `a`.
pub fn check_dybe_at(r: &RFamily, base: Vertex, z: f64, w: f64) -> Result<f64> {
    let graph = r.graph();
    let nbrs: Vec<Vertex> = graph.neighbors(base)?.to_vec();
    let at_base = vec![base];
    let e12 = |x: f64| -> Result<FiberOperator> {
        let fam = family_for_bases(r, x, &at_base)?;
        embed_at(graph, &fam, base, 1, 3)
    };
    let e23 = |x: f64| -> Result<FiberOperator> {
        let fam = family_for_bases(r, x, &nbrs)?;
        embed_at(graph, &fam, base, 2, 3)
    };
    let lhs = e23(z - w)?.compose(&e12(z)?)?.compose(&e23(w)?)?;
    let rhs = e12(w)?.compose(&e23(z)?)?.compose(&e12(z - w)?)?;
    lhs.residual(&rhs)
}

/// Sweeps the dynamical Yang-Baxter residual over bases and `(z, w)` samples.
/// Bases or samples whose operators hit a pole or leave the window are
/// skipped and recorded.
pub fn check_dybe(
    r: &RFamily,
    bases: &[Vertex],
    samples: &[(f64, f64)],
    tol: f64,
) -> Result<CheckReport> {
    let mut report = CheckReport::new("dybe", tol);
    for &a in bases {
        let mut worst = 0.0f64;
        let mut counted = 0usize;
        for &(z, w) in samples {
            match check_dybe_at(r, a, z, w) {
                Ok(res) => {
                    worst = worst.max(res);
                    counted += 1;
                }
                Err(Error::Singularity(msg)) | Err(Error::Domain(msg)) => {
                    report.skip(format!("base {a}, (z,w)=({z},{w}): {msg}"));
                }
                Err(e) => return Err(e),
            }
        }
        if counted > 0 {
            report.push(format!("base@{a}"), worst);
        }
    }
    Ok(report)
}

/// Generalized form of the Yang-Baxter check for the Temperley-Lieb ansatz,
/// taking precomputed multipliers `(x, x', x'')` directly:
/// `R23(x, ah) R12(x', a) R23(x'', ah) - R12(x'', a) R23(x', ah) R12(x, a)`.
pub fn check_gdybe_at(family: &TLFamily, base: Vertex, x: f64, xp: f64, xpp: f64) -> Result<f64> {
    let graph = &family.graph;
    let build = |mult: f64, v: Vertex| -> Result<FiberOperator> {
        let id = FiberOperator::identity(graph, v, 2)?;
        id.add(&family.ops[&v].scale(C64::new(mult, 0.0)))
    };
    let nbrs: Vec<Vertex> = graph.neighbors(base)?.to_vec();
    let e12 = |mult: f64| -> Result<FiberOperator> {
        let mut fam = BTreeMap::new();
        fam.insert(base, build(mult, base)?);
        embed_at(graph, &fam, base, 1, 3)
    };
    let e23 = |mult: f64| -> Result<FiberOperator> {
        let mut fam = BTreeMap::new();
        for &v in &nbrs {
            fam.insert(v, build(mult, v)?);
        }
        embed_at(graph, &fam, base, 2, 3)
    };
    let lhs = e23(x)?.compose(&e12(xp)?)?.compose(&e23(xpp)?)?;
    let rhs = e12(xpp)?.compose(&e23(xp)?)?.compose(&e12(x)?)?;
    lhs.residual(&rhs)
}

/// Residual of the two-parameter dynamical Yang-Baxter equation at one base:
/// `R12(u2,u3)[a] R23(u1,u3)[ah] R12(u1,u2)[a]
///  - R23(u1,u2)[ah] R12(u1,u3)[a] R23(u2,u3)[ah]`.
pub fn check_dybe2_at(r: &BmwRFamily, base: Vertex, u: (f64, f64, f64)) -> Result<f64> {
    let graph = &r.family.graph;
    let (u1, u2, u3) = u;
    let nbrs: Vec<Vertex> = graph.neighbors(base)?.to_vec();
    let e12 = |a: f64, b: f64| -> Result<FiberOperator> {
        let mut fam = BTreeMap::new();
        fam.insert(base, r.r_op(a, b, base)?);
        embed_at(graph, &fam, base, 1, 3)
    };
    let e23 = |a: f64, b: f64| -> Result<FiberOperator> {
        let mut fam = BTreeMap::new();
        for &v in &nbrs {
            fam.insert(v, r.r_op(a, b, v)?);
        }
        embed_at(graph, &fam, base, 2, 3)
    };
    let lhs = e12(u2, u3)?
        .compose(&e23(u1, u3)?)?
        .compose(&e12(u1, u2)?)?;
    let rhs = e23(u1, u2)?
        .compose(&e12(u1, u3)?)?
        .compose(&e23(u2, u3)?)?;
    lhs.residual(&rhs)
}

/// Deterministic positive triples for the two-parameter check.
pub fn default_triples() -> Vec<(f64, f64, f64)> {
    vec![
        (1.0, 1.7, 2.3),
        (1.1, 1.9, 2.6),
        (0.8, 1.3, 3.1),
        (1.4, 2.2, 2.9),
        (0.9, 2.5, 3.7),
    ]
}

pub fn check_dybe2(
    r: &BmwRFamily,
    bases: &[Vertex],
    triples: &[(f64, f64, f64)],
    tol: f64,
) -> Result<CheckReport> {
    let mut report = CheckReport::new("dybe-2param", tol);
    for &a in bases {
        let mut worst = 0.0f64;
        let mut counted = 0usize;
        for &u in triples {
            match check_dybe2_at(r, a, u) {
                Ok(res) => {
                    worst = worst.max(res);
                    counted += 1;
                }
                Err(Error::Singularity(msg)) | Err(Error::Domain(msg)) => {
                    report.skip(format!("base {a}, u={u:?}: {msg}"));
                }
                Err(e) => return Err(e),
            }
        }
        if counted > 0 {
            report.push(format!("base@{a}"), worst);
        }
    }
    Ok(report)
}
