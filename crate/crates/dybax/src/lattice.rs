//! Closed-path state spaces, face-type transfer matrices, the translation
//! operator, the dynamical spin-chain Hamiltonian, and a cyclic Jacobi
//! eigensolver for the resulting real symmetric matrices.

use std::collections::BTreeMap;

use crate::baxter::RFamily;
use crate::error::{Error, Result};
use crate::families::TLFamily;
use crate::fiber::C64;
use crate::graph::{Graph, Path, Vertex};

/// Dense cap; larger state spaces are refused (desk-scale tool).
pub const MAX_DENSE_DIM: usize = 2000;

/// Periodic height-chain states: vertex sequences with cyclic adjacency,
/// in lexicographic order. Completeness: `|states| = trace(Y^N)`.
#[derive(Debug, Clone)]
pub struct ClosedPathBasis {
    pub graph: Graph,
    pub sites: usize,
    pub states: Vec<Vec<Vertex>>,
}

pub fn closed_basis(graph: &Graph, sites: usize) -> Result<ClosedPathBasis> {
    if sites == 0 {
        return Err(Error::Input("need at least one site".into()));
    }
    let mut states = Vec::new();
    if sites == 1 {
        // a single site needs a self-adjacent vertex; simple graphs have none
        return Ok(ClosedPathBasis {
            graph: graph.clone(),
            sites,
            states,
        });
    }
    let mut current: Vec<Vertex> = Vec::with_capacity(sites);
    for &v in graph.vertices() {
        current.push(v);
        extend_closed(graph, &mut current, sites, &mut states)?;
        current.pop();
    }
    Ok(ClosedPathBasis {
        graph: graph.clone(),
        sites,
        states,
    })
}

fn extend_closed(
    graph: &Graph,
    current: &mut Vec<Vertex>,
    sites: usize,
    out: &mut Vec<Vec<Vertex>>,
) -> Result<()> {
    if current.len() == sites {
        if graph.has_edge(current[sites - 1], current[0]) {
            out.push(current.clone());
            if out.len() > MAX_DENSE_DIM {
                return Err(Error::Input(format!(
                    "closed-path basis exceeds the dense cap of {MAX_DENSE_DIM} states"
                )));
            }
        }
        return Ok(());
    }
    let last = *current.last().unwrap();
    for &u in graph.neighbors(last)? {
        current.push(u);
        extend_closed(graph, current, sites, out)?;
        current.pop();
    }
    Ok(())
}

impl ClosedPathBasis {
    pub fn dim(&self) -> usize {
        self.states.len()
    }

    pub fn index_of(&self, state: &[Vertex]) -> Option<usize> {
        self.states
            .binary_search_by(|s| s.as_slice().cmp(state))
            .ok()
    }
}

/// Dense labeled operator on a closed-path basis, row = out state,
/// column = in state.
#[derive(Debug, Clone)]
pub struct LatticeOperator {
    pub label: String,
    pub dim: usize,
    pub data: Vec<C64>,
    /// Entries zeroed because a face block was unavailable (window edges).
    pub structural_zeros: usize,
}

impl LatticeOperator {
    pub fn zeros(label: &str, dim: usize) -> LatticeOperator {
        LatticeOperator {
            label: label.to_string(),
            dim,
            data: vec![C64::new(0.0, 0.0); dim * dim],
            structural_zeros: 0,
        }
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.data[row * self.dim + col]
    }

    pub fn set(&mut self, row: usize, col: usize, v: C64) {
        self.data[row * self.dim + col] = v;
    }

    pub fn mul(&self, other: &LatticeOperator) -> Result<LatticeOperator> {
        if self.dim != other.dim {
            return Err(Error::Shape("operator dimensions differ".into()));
        }
        let n = self.dim;
        let mut out = LatticeOperator::zeros(&format!("{}*{}", self.label, other.label), n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &LatticeOperator) -> Result<LatticeOperator> {
        if self.dim != other.dim {
            return Err(Error::Shape("operator dimensions differ".into()));
        }
        let mut out = self.clone();
        for (a, &b) in out.data.iter_mut().zip(&other.data) {
            *a -= b;
        }
        Ok(out)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn commutator_norm(&self, other: &LatticeOperator) -> Result<f64> {
        Ok(self.mul(other)?.sub(&other.mul(self)?)?.max_abs())
    }

    pub fn is_permutation(&self) -> bool {
        let n = self.dim;
        let one = C64::new(1.0, 0.0);
        let zero = C64::new(0.0, 0.0);
        for i in 0..n {
            let row_ones = (0..n).filter(|&j| self.get(i, j) == one).count();
            let row_zeros = (0..n).filter(|&j| self.get(i, j) == zero).count();
            if row_ones != 1 || row_zeros != n - 1 {
                return false;
            }
            let col_ones = (0..n).filter(|&j| self.get(j, i) == one).count();
            if col_ones != 1 {
                return false;
            }
        }
        true
    }

    /// Hermitian-free symmetry defect `max |A - A^T|` (no conjugation).
    pub fn symmetry_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.dim {
            for j in 0..i {
                worst = worst.max((self.get(i, j) - self.get(j, i)).norm());
            }
        }
        worst
    }

    pub fn max_imag(&self) -> f64 {
        self.data.iter().map(|v| v.im.abs()).fold(0.0, f64::max)
    }
}

/// One-step rotation `v1 ⊗ ... ⊗ vN -> vN ⊗ v1 ⊗ ... ⊗ v(N-1)` as a
/// permutation matrix on the closed-path basis.
pub fn translation(basis: &ClosedPathBasis) -> LatticeOperator {
    let n = basis.dim();
    let mut op = LatticeOperator::zeros("translation", n);
    for (col, state) in basis.states.iter().enumerate() {
        let mut rotated = Vec::with_capacity(state.len());
        rotated.push(*state.last().unwrap());
        rotated.extend_from_slice(&state[..state.len() - 1]);
        let row = basis
            .index_of(&rotated)
            .expect("rotation of a closed path is closed");
        op.set(row, col, C64::new(1.0, 0.0));
    }
    op
}

/// Face-type transfer matrix at spectral value `z`: the entry between bottom
/// state `p` and top state `q` is the product over sites of the R block whose
/// face has corners SW `p_i`, SE `p_{i+1}`, NW `q_i`, NE `q_{i+1}` (indices
/// cyclic, base = NW corner). At `z = 0` the TL ansatz collapses every face
/// to the identity and the matrix equals the translation.
pub fn transfer_matrix(r: &RFamily, z: f64, basis: &ClosedPathBasis) -> Result<LatticeOperator> {
    let n = basis.dim();
    let sites = basis.sites;
    let graph = &basis.graph;
    let mut ops: BTreeMap<Vertex, Option<crate::fiber::FiberOperator>> = BTreeMap::new();
    let mut last_failure = None;
    for &v in graph.vertices() {
        ops.insert(
            v,
            match r.r_op(z, v) {
                Ok(op) => Some(op),
                Err(e @ Error::Singularity(_)) | Err(e @ Error::Domain(_)) => {
                    last_failure = Some(e);
                    None
                }
                Err(e) => return Err(e),
            },
        );
    }
    if ops.values().all(|o| o.is_none()) {
        // a pole of the parameterization, not a window boundary
        return Err(last_failure.expect("at least one vertex failed"));
    }
    let mut m = LatticeOperator::zeros(&format!("transfer(z={z})"), n);
    let mut structural = 0usize;
    for (row, q) in basis.states.iter().enumerate() {
        'col: for (col, p) in basis.states.iter().enumerate() {
            // vertical edges of the two-row lattice
            for i in 0..sites {
                if !graph.has_edge(q[i], p[i]) {
                    continue 'col;
                }
            }
            let mut weight = C64::new(1.0, 0.0);
            for i in 0..sites {
                let ip = (i + 1) % sites;
                let op = match &ops[&q[i]] {
                    Some(op) => op,
                    None => {
                        structural += 1;
                        continue 'col;
                    }
                };
                let block = op.get(
                    &Path::new(vec![q[i], p[i], p[ip]]),
                    &Path::new(vec![q[i], q[ip], p[ip]]),
                );
                if block == C64::new(0.0, 0.0) {
                    continue 'col;
                }
                weight *= block;
            }
            m.set(row, col, weight);
        }
    }
    m.structural_zeros = structural;
    Ok(m)
}

/// Periodic spin-chain Hamiltonian: sum over sites of the local term that
/// swaps the height `a_i` to any `a_i'` with weight `T(a_{i-1})` block
/// `(a_{i-1} -> a_i -> a_{i-1}) -> (a_{i-1} -> a_i' -> a_{i-1})` whenever
/// `a_{i-1} = a_{i+1}`, indices cyclic. Real symmetric for graph families.
pub fn hamiltonian(family: &TLFamily, basis: &ClosedPathBasis) -> Result<LatticeOperator> {
    let n = basis.dim();
    let sites = basis.sites;
    let mut h = LatticeOperator::zeros("hamiltonian", n);
    let mut structural = 0usize;
    // summands per entry, summed in a canonical order so that entries of
    // rotated state pairs come out bit-identical (exact translation
    // invariance)
    let mut terms: BTreeMap<(usize, usize), Vec<C64>> = BTreeMap::new();
    for (col, p) in basis.states.iter().enumerate() {
        for i in 0..sites {
            let im = (i + sites - 1) % sites;
            let ip = (i + 1) % sites;
            if p[im] != p[ip] {
                continue;
            }
            let d = p[im];
            let t = match family.ops.get(&d) {
                Some(t) => t,
                None => {
                    structural += 1;
                    continue;
                }
            };
            let inp = Path::new(vec![d, p[i], d]);
            for &next in basis.graph.neighbors(d)? {
                let block = t.get(&inp, &Path::new(vec![d, next, d]));
                if block == C64::new(0.0, 0.0) {
                    continue;
                }
                let mut q = p.clone();
                q[i] = next;
                if let Some(row) = basis.index_of(&q) {
                    terms.entry((row, col)).or_default().push(block);
                }
            }
        }
    }
    for ((row, col), mut blocks) in terms {
        blocks.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        h.set(row, col, blocks.into_iter().sum());
    }
    h.structural_zeros = structural;
    Ok(h)
}

/// Eigenvalues (ascending) and orthonormal eigenvectors.
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    /// Column eigenvectors, `vectors[k]` pairs with `eigenvalues[k]`.
    pub vectors: Vec<Vec<f64>>,
}

const JACOBI_MAX_SWEEPS: usize = 100;

/// Cyclic Jacobi diagonalization of a real symmetric operator. Refuses
/// matrices that are not real symmetric within `1e-10`; sweeps until the
/// off-diagonal Frobenius norm drops below `tol`.
#[allow(clippy::needless_range_loop)] // index loops mirror the rotation updates
pub fn diagonalize(op: &LatticeOperator, tol: f64) -> Result<Spectrum> {
    if tol <= 0.0 {
        return Err(Error::Input("tolerance must be positive".into()));
    }
    if op.max_imag() > 1e-10 || op.symmetry_defect() > 1e-10 {
        return Err(Error::Precondition(
            "diagonalize requires a real symmetric matrix within 1e-10".into(),
        ));
    }
    let n = op.dim;
    let mut a: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| op.get(i, j).re).collect())
        .collect();
    // symmetrize exactly to guard the rotation updates
    for i in 0..n {
        for j in 0..i {
            let v = 0.5 * (a[i][j] + a[j][i]);
            a[i][j] = v;
            a[j][i] = v;
        }
    }
    let mut q: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();

    let off = |a: &Vec<Vec<f64>>| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..i {
                s += 2.0 * a[i][j] * a[i][j];
            }
        }
        s.sqrt()
    };

    let mut sweeps = 0usize;
    while off(&a) >= tol {
        sweeps += 1;
        if sweeps > JACOBI_MAX_SWEEPS {
            return Err(Error::Numeric(format!(
                "Jacobi did not reach off-diagonal norm {tol} in {JACOBI_MAX_SWEEPS} sweeps"
            )));
        }
        for p in 0..n {
            for r in p + 1..n {
                let apr = a[p][r];
                if apr.abs() == 0.0 {
                    continue;
                }
                let tau = (a[r][r] - a[p][p]) / (2.0 * apr);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k][p];
                    let akr = a[k][r];
                    a[k][p] = c * akp - s * akr;
                    a[k][r] = s * akp + c * akr;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let ark = a[r][k];
                    a[p][k] = c * apk - s * ark;
                    a[r][k] = s * apk + c * ark;
                }
                for k in 0..n {
                    let qkp = q[k][p];
                    let qkr = q[k][r];
                    q[k][p] = c * qkp - s * qkr;
                    q[k][r] = s * qkp + c * qkr;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| a[x][x].total_cmp(&a[y][y]));
    let eigenvalues: Vec<f64> = order.iter().map(|&k| a[k][k]).collect();
    let vectors: Vec<Vec<f64>> = order
        .iter()
        .map(|&k| (0..n).map(|i| q[i][k]).collect())
        .collect();
    Ok(Spectrum {
        eigenvalues,
        vectors,
    })
}

/// Trace of the `rows`-th power of the transfer matrix at `z`.
pub fn partition_function(
    r: &RFamily,
    z: f64,
    basis: &ClosedPathBasis,
    rows: usize,
) -> Result<C64> {
    if rows == 0 {
        return Ok(C64::new(basis.dim() as f64, 0.0));
    }
    let m = transfer_matrix(r, z, basis)?;
    let mut acc = m.clone();
    for _ in 1..rows {
        acc = acc.mul(&m)?;
        if acc.max_abs() > 1e300 {
            return Err(Error::Numeric(
                "partition function overflow: magnitude exceeds 1e300".into(),
            ));
        }
    }
    Ok(acc.trace())
}
