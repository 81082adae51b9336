//! Built-in simply-laced diagrams, classical and affine, with Coxeter numbers
//! and the dominant-eigenpair solver that supplies all face-weight data.
//!
//! Vertex numbering (stable, used by every report):
//! - `A(L)`: path `1 - 2 - ... - L`.
//! - `D(L)`: path `1 - ... - (L-2)` with fork tips `L-1, L` on vertex `L-2`.
//! - `E6/E7/E8`: path `1 - ... - (n-1)` with vertex `n` attached to vertex 3.
//! - `AAff(L)`: cycle on `L+1` vertices `1 ... L+1`.
//! - `DAff(L)`: central path `3 - ... - (L-1)`, tips `1, 2` on vertex 3 and
//!   tips `L, L+1` on vertex `L-1` (`L+1` vertices).
//! - `E6Aff/E7Aff/E8Aff`: the classical diagram with one extra vertex `n+1`
//!   extending the appropriate leg.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

/// Catalog family tag. The affine parameter follows the superscript-1
/// convention: `AAff(L)` is the cycle with `L+1` vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Family {
    A(u32),
    D(u32),
    E6,
    E7,
    E8,
    AAff(u32),
    DAff(u32),
    E6Aff,
    E7Aff,
    E8Aff,
}

impl Family {
    pub fn is_affine(&self) -> bool {
        matches!(
            self,
            Family::AAff(_) | Family::DAff(_) | Family::E6Aff | Family::E7Aff | Family::E8Aff
        )
    }

    /// Parses names like `A5`, `D6`, `E7`, `A5aff`, `E6aff` (case-insensitive
    /// `aff` suffix for the affine diagram).
    pub fn parse(s: &str) -> Result<Family> {
        let t = s.trim();
        let (body, affine) = match t.to_ascii_lowercase().strip_suffix("aff") {
            Some(_) => (&t[..t.len() - 3], true),
            None => (t, false),
        };
        let bad = || Error::Input(format!("unknown graph family {s:?}"));
        if body.len() < 2 {
            return Err(bad());
        }
        let (letter, digits) = body.split_at(1);
        let l: u32 = digits.parse().map_err(|_| bad())?;
        let fam = match (letter.to_ascii_uppercase().as_str(), affine) {
            ("A", false) => Family::A(l),
            ("A", true) => Family::AAff(l),
            ("D", false) => Family::D(l),
            ("D", true) => Family::DAff(l),
            ("E", false) => match l {
                6 => Family::E6,
                7 => Family::E7,
                8 => Family::E8,
                _ => return Err(bad()),
            },
            ("E", true) => match l {
                6 => Family::E6Aff,
                7 => Family::E7Aff,
                8 => Family::E8Aff,
                _ => return Err(bad()),
            },
            _ => return Err(bad()),
        };
        // validate the range eagerly so `parse` rejects A1, D3aff, ...
        build_diagram(&fam)?;
        Ok(fam)
    }

    /// Desk-scale catalog listing used by `graphs list` and the suite.
    pub fn catalog() -> Vec<Family> {
        let mut out = Vec::new();
        for l in 2..=8 {
            out.push(Family::A(l));
        }
        for l in 4..=8 {
            out.push(Family::D(l));
        }
        out.extend([Family::E6, Family::E7, Family::E8]);
        for l in 2..=7 {
            out.push(Family::AAff(l));
        }
        for l in 4..=8 {
            out.push(Family::DAff(l));
        }
        out.extend([Family::E6Aff, Family::E7Aff, Family::E8Aff]);
        out
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::A(l) => write!(f, "A{l}"),
            Family::D(l) => write!(f, "D{l}"),
            Family::E6 => write!(f, "E6"),
            Family::E7 => write!(f, "E7"),
            Family::E8 => write!(f, "E8"),
            Family::AAff(l) => write!(f, "A{l}aff"),
            Family::DAff(l) => write!(f, "D{l}aff"),
            Family::E6Aff => write!(f, "E6aff"),
            Family::E7Aff => write!(f, "E7aff"),
            Family::E8Aff => write!(f, "E8aff"),
        }
    }
}

/// Standard (affine) Dynkin diagram as a simple graph.
pub fn build_diagram(family: &Family) -> Result<Graph> {
    let path = |n: u32| -> Vec<(Vertex, Vertex)> { (1..n as Vertex).map(|v| (v, v + 1)).collect() };
    let edges: Vec<(Vertex, Vertex)> = match *family {
        Family::A(l) => {
            if l < 2 {
                return Err(Error::Input("A(L) needs L >= 2".into()));
            }
            path(l)
        }
        Family::D(l) => {
            if l < 4 {
                return Err(Error::Input("D(L) needs L >= 4".into()));
            }
            let mut e = path(l - 2);
            let hub = (l - 2) as Vertex;
            e.push((hub, (l - 1) as Vertex));
            e.push((hub, l as Vertex));
            e
        }
        Family::E6 => {
            let mut e = path(5);
            e.push((3, 6));
            e
        }
        Family::E7 => {
            let mut e = path(6);
            e.push((3, 7));
            e
        }
        Family::E8 => {
            let mut e = path(7);
            e.push((3, 8));
            e
        }
        Family::AAff(l) => {
            if l < 2 {
                return Err(Error::Input("AAff(L) needs L >= 2 (simple cycle)".into()));
            }
            let n = (l + 1) as Vertex;
            let mut e = path(l + 1);
            e.push((n, 1));
            e
        }
        Family::DAff(l) => {
            if l < 4 {
                return Err(Error::Input("DAff(L) needs L >= 4".into()));
            }
            // central path 3..L-1, tips 1,2 at vertex 3 and tips L, L+1 at L-1
            let mut e: Vec<(Vertex, Vertex)> = (3..(l - 1) as Vertex).map(|v| (v, v + 1)).collect();
            e.push((1, 3));
            e.push((2, 3));
            e.push(((l - 1) as Vertex, l as Vertex));
            e.push(((l - 1) as Vertex, (l + 1) as Vertex));
            e
        }
        Family::E6Aff => {
            let mut e = path(5);
            e.push((3, 6));
            e.push((6, 7));
            e
        }
        Family::E7Aff => {
            let mut e = path(6);
            e.push((3, 7));
            e.push((1, 8));
            e
        }
        Family::E8Aff => {
            let mut e = path(7);
            e.push((3, 8));
            e.push((7, 9));
            e
        }
    };
    Graph::from_edges(&edges)
}

/// Coxeter number of a classical family: `A_L -> L+1`, `D_L -> 2L-2`,
/// `E6 -> 12`, `E7 -> 18`, `E8 -> 30`.
pub fn coxeter_number(family: &Family) -> Result<u64> {
    match *family {
        Family::A(l) => Ok(l as u64 + 1),
        Family::D(l) => Ok(2 * l as u64 - 2),
        Family::E6 => Ok(12),
        Family::E7 => Ok(18),
        Family::E8 => Ok(30),
        _ => Err(Error::Unsupported(format!(
            "no Coxeter number for affine family {family}"
        ))),
    }
}

/// Dominant eigenpair of a connected nonnegative matrix, with the eigenvector
/// normalized to maximum entry 1.
#[derive(Debug, Clone)]
pub struct PFData {
    pub eigenvalue: f64,
    pub eigenvector: BTreeMap<Vertex, f64>,
    pub iterations: usize,
    pub residual: f64,
}

const PF_MAX_ITERATIONS: usize = 100_000;

/// Power iteration for the Perron-Frobenius pair of the adjacency matrix.
///
/// Bipartite diagrams make plain power iteration oscillate between the +/-
/// dominant pair, so the iteration runs on `Y + I` (same eigenvectors, shifted
/// spectrum) and subtracts 1 from the converged Rayleigh quotient. Stops once
/// successive Rayleigh quotients differ by less than `tol` and the residual
/// `max |Y xi - phi xi|` drops below `tol`.
pub fn pf_eigen(graph: &Graph, tol: f64) -> Result<PFData> {
    if tol <= 0.0 {
        return Err(Error::Input("tolerance must be positive".into()));
    }
    let y = graph.adjacency_matrix();
    let n = y.len();
    let mut x = vec![1.0f64; n];
    let mut rayleigh_prev = f64::NAN;
    let mut iterations = 0usize;
    loop {
        iterations += 1;
        if iterations > PF_MAX_ITERATIONS {
            return Err(Error::Numeric(format!(
                "power iteration did not converge in {PF_MAX_ITERATIONS} iterations"
            )));
        }
        // one step of (Y + I) x
        let mut next = x.clone();
        for i in 0..n {
            for j in 0..n {
                if y[i][j] != 0 {
                    next[i] += x[j];
                }
            }
        }
        let norm = next.iter().map(|v| v * v).sum::<f64>().sqrt();
        for v in next.iter_mut() {
            *v /= norm;
        }
        // Rayleigh quotient of Y + I in the new vector
        let mut yx = vec![0.0f64; n];
        for i in 0..n {
            yx[i] = next[i];
            for j in 0..n {
                if y[i][j] != 0 {
                    yx[i] += next[j];
                }
            }
        }
        let rayleigh: f64 = next.iter().zip(&yx).map(|(a, b)| a * b).sum();
        let phi = rayleigh - 1.0;
        let max = next.iter().cloned().fold(0.0, f64::max);
        // residual of the max-normalized eigenvector, as reported
        let residual = (0..n)
            .map(|i| (yx[i] - next[i] - phi * next[i]).abs())
            .fold(0.0, f64::max)
            / max;
        x = next;
        if (rayleigh - rayleigh_prev).abs() < tol && residual < tol {
            let eigenvector = graph
                .vertices()
                .iter()
                .zip(&x)
                .map(|(&v, &e)| (v, e / max))
                .collect::<BTreeMap<_, _>>();
            if eigenvector.values().any(|&e| e <= 0.0) {
                return Err(Error::Numeric(
                    "dominant eigenvector failed positivity".into(),
                ));
            }
            return Ok(PFData {
                eigenvalue: phi,
                eigenvector,
                iterations,
                residual,
            });
        }
        rayleigh_prev = rayleigh;
    }
}

/// Tabulated integer eigenvector (the marks) of an affine diagram, in catalog
/// numbering. Eigenvalue 2 exactly.
pub fn affine_marks(family: &Family) -> Option<Vec<f64>> {
    match *family {
        Family::AAff(l) => Some(vec![1.0; l as usize + 1]),
        Family::DAff(l) => {
            let mut m = vec![1.0, 1.0];
            m.extend(vec![2.0; (l - 3) as usize]);
            m.extend([1.0, 1.0]);
            Some(m)
        }
        Family::E6Aff => Some(vec![1.0, 2.0, 3.0, 2.0, 1.0, 2.0, 1.0]),
        Family::E7Aff => Some(vec![2.0, 3.0, 4.0, 3.0, 2.0, 1.0, 2.0, 1.0]),
        Family::E8Aff => Some(vec![2.0, 4.0, 6.0, 5.0, 4.0, 3.0, 2.0, 3.0, 1.0]),
        _ => None,
    }
}

/// Closed-form dominant eigenvector for families where one is trusted:
/// sines for `A_L`, cosines for `D_L`, and the affine marks. The published
/// closed forms for the E-series do not satisfy the eigen-equation as
/// printed, so the E-series returns `None` and the computed vector is the
/// reference.
pub fn closed_form_eigenvector(family: &Family) -> Option<Vec<f64>> {
    match *family {
        Family::A(l) => {
            let h = l as f64 + 1.0;
            Some(
                (1..=l as i64)
                    .map(|k| (std::f64::consts::PI * k as f64 / h).sin())
                    .collect(),
            )
        }
        Family::D(l) => {
            let h = 2.0 * l as f64 - 2.0;
            let mut v: Vec<f64> = (1..=(l - 2) as i64)
                .map(|j| 2.0 * (std::f64::consts::PI * (l as f64 - 1.0 - j as f64) / h).cos())
                .collect();
            v.extend([1.0, 1.0]);
            Some(v)
        }
        _ => affine_marks(family),
    }
}
