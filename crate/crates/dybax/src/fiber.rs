//! Block operators on the source fiber of a k-fold tensor power: sparse maps
//! from length-k in-paths to length-k out-paths with complex scalar blocks,
//! plus the dynamical-shift embedding into longer fibers.
//!
//! Under the one-dimensional grading every edge carries a line, so the fiber
//! at `a` has the length-k paths from `a` as its basis and every block is a
//! scalar. Grading is preserved: a block may only connect paths with equal
//! free reductions, which in particular forces equal endpoints.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::graph::{paths_from, reduce, Graph, Path, Vertex};

pub type C64 = Complex64;

/// Base-vertex-indexed block map between length-`order` paths.
#[derive(Debug, Clone, PartialEq)]
pub struct FiberOperator {
    base: Vertex,
    order: usize,
    blocks: BTreeMap<(Path, Path), C64>,
}

impl FiberOperator {
    pub fn zero(base: Vertex, order: usize) -> FiberOperator {
        assert!(order >= 1, "order must be at least 1");
        FiberOperator {
            base,
            order,
            blocks: BTreeMap::new(),
        }
    }

    /// Identity on the full order-`order` fiber at `base`.
    pub fn identity(graph: &Graph, base: Vertex, order: usize) -> Result<FiberOperator> {
        let mut op = FiberOperator::zero(base, order);
        for p in paths_from(graph, base, order)? {
            op.blocks.insert((p.clone(), p), C64::new(1.0, 0.0));
        }
        Ok(op)
    }

    pub fn base(&self) -> Vertex {
        self.base
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn blocks(&self) -> &BTreeMap<(Path, Path), C64> {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Inserts (accumulating) one block. Rejects paths of the wrong base or
    /// length and blocks that would break degree preservation.
    pub fn set_block(&mut self, input: Path, output: Path, value: C64) -> Result<()> {
        if input.base() != self.base || output.base() != self.base {
            return Err(Error::Shape(format!(
                "block paths must start at base {}",
                self.base
            )));
        }
        if input.len() != self.order || output.len() != self.order {
            return Err(Error::Shape(format!(
                "block paths must have length {}",
                self.order
            )));
        }
        if reduce(&input) != reduce(&output) {
            return Err(Error::Shape(format!(
                "degree violation: {input} and {output} reduce differently"
            )));
        }
        *self
            .blocks
            .entry((input, output))
            .or_insert(C64::new(0.0, 0.0)) += value;
        Ok(())
    }

    pub fn get(&self, input: &Path, output: &Path) -> C64 {
        self.blocks
            .get(&(input.clone(), output.clone()))
            .copied()
            .unwrap_or(C64::new(0.0, 0.0))
    }

    /// Composition `self ∘ other`: apply `other` first.
    /// `(f∘g)[p→r] = Σ_q f[q→r] g[p→q]`.
    pub fn compose(&self, other: &FiberOperator) -> Result<FiberOperator> {
        self.check_same_shape(other)?;
        // index self by input path
        let mut by_input: BTreeMap<&Path, Vec<(&Path, C64)>> = BTreeMap::new();
        for ((inp, out), &v) in &self.blocks {
            by_input.entry(inp).or_default().push((out, v));
        }
        let mut result = FiberOperator::zero(self.base, self.order);
        for ((p, q), &gv) in &other.blocks {
            if let Some(rows) = by_input.get(q) {
                for &(r, fv) in rows {
                    *result
                        .blocks
                        .entry((p.clone(), r.clone()))
                        .or_insert(C64::new(0.0, 0.0)) += fv * gv;
                }
            }
        }
        Ok(result)
    }

    pub fn add(&self, other: &FiberOperator) -> Result<FiberOperator> {
        self.check_same_shape(other)?;
        let mut result = self.clone();
        for (k, &v) in &other.blocks {
            *result.blocks.entry(k.clone()).or_insert(C64::new(0.0, 0.0)) += v;
        }
        Ok(result)
    }

    pub fn sub(&self, other: &FiberOperator) -> Result<FiberOperator> {
        self.add(&other.scale(C64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, c: C64) -> FiberOperator {
        FiberOperator {
            base: self.base,
            order: self.order,
            blocks: self
                .blocks
                .iter()
                .map(|(k, &v)| (k.clone(), c * v))
                .collect(),
        }
    }

    /// Maximum absolute difference over the union of block supports.
    pub fn residual(&self, other: &FiberOperator) -> Result<f64> {
        self.check_same_shape(other)?;
        let mut worst = 0.0f64;
        for (k, &v) in &self.blocks {
            let w = other.blocks.get(k).copied().unwrap_or(C64::new(0.0, 0.0));
            worst = worst.max((v - w).norm());
        }
        for (k, &w) in &other.blocks {
            if !self.blocks.contains_key(k) {
                worst = worst.max(w.norm());
            }
        }
        Ok(worst)
    }

    pub fn max_abs(&self) -> f64 {
        self.blocks.values().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Multiplies each block by `f(v)` where `v` is the vertex reached after
    /// `k` arrows. Blocks of a well-formed operator agree on that vertex
    /// between in- and out-path whenever legs outside `k` are untouched; the
    /// out-path value is used. Realizes diagonal dynamical multipliers such
    /// as a vertex map evaluated at a shifted base.
    pub fn scale_by_vertex_at(&self, k: usize, f: &dyn Fn(Vertex) -> C64) -> FiberOperator {
        FiberOperator {
            base: self.base,
            order: self.order,
            blocks: self
                .blocks
                .iter()
                .map(|((p, q), &v)| ((p.clone(), q.clone()), f(q.vertex_at(k)) * v))
                .collect(),
        }
    }

    /// Inverse on the full fiber. The operator is block-diagonal with respect
    /// to the grading (reduced words), so each sector is inverted densely and
    /// a missing or singular sector means the operator is not invertible.
    pub fn invert(&self, graph: &Graph) -> Result<FiberOperator> {
        let basis = paths_from(graph, self.base, self.order)?;
        let mut sectors: BTreeMap<Vec<Vertex>, Vec<Path>> = BTreeMap::new();
        for p in basis {
            sectors
                .entry(reduce(&p).verts().to_vec())
                .or_default()
                .push(p);
        }
        let mut result = FiberOperator::zero(self.base, self.order);
        for paths in sectors.values() {
            let n = paths.len();
            let index: BTreeMap<&Path, usize> =
                paths.iter().enumerate().map(|(i, p)| (p, i)).collect();
            // m[out][in]
            let mut m = vec![vec![C64::new(0.0, 0.0); n]; n];
            for (i, p) in paths.iter().enumerate() {
                for (j, q) in paths.iter().enumerate() {
                    if let Some(&v) = self.blocks.get(&(p.clone(), q.clone())) {
                        m[j][i] = v;
                    }
                }
            }
            let inv = invert_dense(&m).ok_or_else(|| {
                Error::Numeric(format!(
                    "operator at vertex {} is singular on a grading sector",
                    self.base
                ))
            })?;
            for (p, &i) in &index {
                for (q, &j) in &index {
                    let v = inv[j][i];
                    if v != C64::new(0.0, 0.0) {
                        result.blocks.insert(((*p).clone(), (*q).clone()), v);
                    }
                }
            }
        }
        Ok(result)
    }

    /// Dense matrix in the given path basis, entry `[row=out][col=in]`.
    pub fn to_dense(&self, basis: &[Path]) -> Vec<Vec<C64>> {
        let index: BTreeMap<&Path, usize> = basis.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let n = basis.len();
        let mut m = vec![vec![C64::new(0.0, 0.0); n]; n];
        for ((p, q), &v) in &self.blocks {
            if let (Some(&i), Some(&j)) = (index.get(p), index.get(q)) {
                m[j][i] += v;
            }
        }
        m
    }

    /// Structural validity against a graph: all block paths are graph paths.
    /// Degree preservation is already enforced on insertion.
    pub fn validate(&self, graph: &Graph) -> Result<()> {
        for (p, q) in self.blocks.keys() {
            if !p.is_valid_in(graph) || !q.is_valid_in(graph) {
                return Err(Error::Shape(format!(
                    "block path {p} or {q} is not a path of the graph"
                )));
            }
        }
        Ok(())
    }

    fn check_same_shape(&self, other: &FiberOperator) -> Result<()> {
        if self.base != other.base || self.order != other.order {
            return Err(Error::Shape(format!(
                "operator shapes differ: base {}/{}, order {}/{}",
                self.base, other.base, self.order, other.order
            )));
        }
        Ok(())
    }
}

fn invert_dense(m: &[Vec<C64>]) -> Option<Vec<Vec<C64>>> {
    let n = m.len();
    let mut a: Vec<Vec<C64>> = m.to_vec();
    let mut inv = vec![vec![C64::new(0.0, 0.0); n]; n];
    for (i, row) in inv.iter_mut().enumerate() {
        row[i] = C64::new(1.0, 0.0);
    }
    let scale = a
        .iter()
        .flat_map(|r| r.iter())
        .map(|v| v.norm())
        .fold(0.0, f64::max)
        .max(1.0);
    for col in 0..n {
        let (pivot_row, pivot_norm) = (col..n)
            .map(|r| (r, a[r][col].norm()))
            .max_by(|x, y| x.1.total_cmp(&y.1))?;
        if pivot_norm < 1e-14 * scale {
            return None;
        }
        a.swap(col, pivot_row);
        inv.swap(col, pivot_row);
        let pivot = a[col][col];
        for j in 0..n {
            a[col][j] /= pivot;
            inv[col][j] /= pivot;
        }
        for r in 0..n {
            if r == col {
                continue;
            }
            let factor = a[r][col];
            if factor == C64::new(0.0, 0.0) {
                continue;
            }
            for j in 0..n {
                let ac = a[col][j];
                let ic = inv[col][j];
                a[r][j] -= factor * ac;
                inv[r][j] -= factor * ic;
            }
        }
    }
    Some(inv)
}

/// Embeds an order-2 operator family into the order-`total` fiber at `base`,
/// acting on legs `position, position+1` with the family evaluated at the
/// vertex reached after `position - 1` arrows of the in-path (the dynamical
/// shift). All other legs must match identically.
pub fn embed_at(
    graph: &Graph,
    family: &BTreeMap<Vertex, FiberOperator>,
    base: Vertex,
    position: usize,
    total: usize,
) -> Result<FiberOperator> {
    if total < 2 || position == 0 || position > total - 1 {
        return Err(Error::Input(format!(
            "position must satisfy 1 <= {position} <= {total} - 1"
        )));
    }
    let mut result = FiberOperator::zero(base, total);
    for p in paths_from(graph, base, total)? {
        let shift_vertex = p.vertex_at(position - 1);
        let op = family.get(&shift_vertex).ok_or_else(|| {
            Error::Domain(format!(
                "operator family has no entry at vertex {shift_vertex}"
            ))
        })?;
        if op.order() != 2 {
            return Err(Error::Shape("embedded family must have order 2".into()));
        }
        let segment = Path::new(vec![
            shift_vertex,
            p.vertex_at(position),
            p.vertex_at(position + 1),
        ]);
        for ((inp, out), &v) in op.blocks() {
            if *inp != segment {
                continue;
            }
            debug_assert_eq!(out.target(), segment.target(), "degree preservation");
            let mut verts = p.verts().to_vec();
            verts[position] = out.vertex_at(1);
            result.set_block(p.clone(), Path::new(verts), v)?;
        }
    }
    Ok(result)
}

/// Map form of [`embed_at`]: one embedded operator per graph vertex.
pub fn embed_with_shift(
    graph: &Graph,
    family: &BTreeMap<Vertex, FiberOperator>,
    position: usize,
    total: usize,
) -> Result<BTreeMap<Vertex, FiberOperator>> {
    let mut out = BTreeMap::new();
    for &v in graph.vertices() {
        out.insert(v, embed_at(graph, family, v, position, total)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a_graph(l: i64) -> Graph {
        let edges: Vec<(Vertex, Vertex)> = (1..l).map(|v| (v, v + 1)).collect();
        Graph::from_edges(&edges).unwrap()
    }

    /// Graph TL blocks on A_L with the sine eigenvector, built by hand.
    fn tl_a(graph: &Graph, l: i64) -> BTreeMap<Vertex, FiberOperator> {
        let s = |v: Vertex| (std::f64::consts::PI * v as f64 / (l as f64 + 1.0)).sin();
        let mut fam = BTreeMap::new();
        for &d in graph.vertices() {
            let mut op = FiberOperator::zero(d, 2);
            for &x in graph.neighbors(d).unwrap() {
                for &y in graph.neighbors(d).unwrap() {
                    let val = if x == y {
                        s(x) / s(d)
                    } else {
                        (s(x) * s(y)).sqrt() / s(d)
                    };
                    op.set_block(
                        Path::new(vec![d, x, d]),
                        Path::new(vec![d, y, d]),
                        C64::new(val, 0.0),
                    )
                    .unwrap();
                }
            }
            fam.insert(d, op);
        }
        fam
    }

    #[test]
    fn compose_with_identity() {
        let g = a_graph(3);
        let fam = tl_a(&g, 3);
        let id = FiberOperator::identity(&g, 2, 2).unwrap();
        let t = &fam[&2];
        assert_eq!(id.compose(t).unwrap().residual(t).unwrap(), 0.0);
        assert_eq!(t.compose(&id).unwrap().residual(t).unwrap(), 0.0);
    }

    #[test]
    fn tl_square_is_sqrt2_tl_on_a3() {
        // oracle: direct block multiplication, kappa = 2 cos(pi/4)
        let g = a_graph(3);
        let fam = tl_a(&g, 3);
        let t = &fam[&2];
        let kappa = 2.0 * (std::f64::consts::PI / 4.0).cos();
        assert!((kappa - std::f64::consts::SQRT_2).abs() < 1e-15);

        let mut oracle = FiberOperator::zero(2, 2);
        for ((p, q), &a) in t.blocks() {
            for ((p2, q2), &b) in t.blocks() {
                if q2 == p {
                    oracle.set_block(p2.clone(), q.clone(), a * b).unwrap();
                }
            }
        }
        let squared = t.compose(t).unwrap();
        assert!(squared.residual(&oracle).unwrap() < 1e-15);
        let scaled = t.scale(C64::new(kappa, 0.0));
        assert!(squared.residual(&scaled).unwrap() < 1e-12);
    }

    #[test]
    fn add_scale_cancel() {
        let g = a_graph(3);
        let fam = tl_a(&g, 3);
        let t = &fam[&2];
        let zero = t.add(&t.scale(C64::new(-1.0, 0.0))).unwrap();
        assert_eq!(zero.max_abs(), 0.0);
    }

    #[test]
    fn residual_trivials() {
        let g = a_graph(3);
        let id = FiberOperator::identity(&g, 1, 2).unwrap();
        let zero = FiberOperator::zero(1, 2);
        assert_eq!(id.residual(&id).unwrap(), 0.0);
        assert_eq!(id.residual(&zero).unwrap(), 1.0);
    }

    #[test]
    fn degree_preservation_rejected_on_insert() {
        let mut op = FiberOperator::zero(1, 2);
        // 1->2->1 reduces to the identity word, 1->2->3 does not
        let err = op.set_block(
            Path::new(vec![1, 2, 1]),
            Path::new(vec![1, 2, 3]),
            C64::new(1.0, 0.0),
        );
        assert!(matches!(err, Err(Error::Shape(_))));
    }

    #[test]
    fn embed_identity_family_is_identity() {
        let g = a_graph(4);
        let mut fam = BTreeMap::new();
        for &v in g.vertices() {
            fam.insert(v, FiberOperator::identity(&g, v, 2).unwrap());
        }
        for position in 1..=2 {
            for &v in g.vertices() {
                let e = embed_at(&g, &fam, v, position, 3).unwrap();
                let id = FiberOperator::identity(&g, v, 3).unwrap();
                assert_eq!(e.residual(&id).unwrap(), 0.0);
            }
        }
    }

    #[test]
    fn embed_position_one_uses_base_vertex() {
        let g = a_graph(3);
        let fam = tl_a(&g, 3);
        let e = embed_at(&g, &fam, 1, 1, 2).unwrap();
        assert_eq!(e.residual(&fam[&1]).unwrap(), 0.0);
    }

    #[test]
    fn embed_matches_brute_force_tensor_on_a3() {
        // oracle: build the order-3 operator directly from the weight formula,
        // acting on legs 2,3 with the base shifted to the first-leg target
        let g = a_graph(3);
        let fam = tl_a(&g, 3);
        let s = |v: Vertex| (std::f64::consts::PI * v as f64 / 4.0).sin();

        for &a in g.vertices() {
            let mut oracle = FiberOperator::zero(a, 3);
            for p in paths_from(&g, a, 3).unwrap() {
                let d = p.vertex_at(1);
                // legs 2,3 of the in-path must form a round trip at d
                if p.vertex_at(3) != d {
                    continue;
                }
                let x = p.vertex_at(2);
                for &y in g.neighbors(d).unwrap() {
                    let val = if x == y {
                        s(x) / s(d)
                    } else {
                        (s(x) * s(y)).sqrt() / s(d)
                    };
                    let mut verts = p.verts().to_vec();
                    verts[2] = y;
                    oracle
                        .set_block(p.clone(), Path::new(verts), C64::new(val, 0.0))
                        .unwrap();
                }
            }
            let e = embed_at(&g, &fam, a, 2, 3).unwrap();
            assert!(e.residual(&oracle).unwrap() < 1e-15);
        }

        // spot check from the in-path 1->2->1->2: the block base is vertex 2
        let e = embed_at(&g, &fam, 1, 2, 3).unwrap();
        let inp = Path::new(vec![1, 2, 1, 2]);
        let out = Path::new(vec![1, 2, 3, 2]);
        let expected = (s(1) * s(3)).sqrt() / s(2);
        assert!((e.get(&inp, &out) - C64::new(expected, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn embed_missing_vertex_is_domain_error() {
        let g = a_graph(3);
        let mut fam = tl_a(&g, 3);
        fam.remove(&2);
        let err = embed_at(&g, &fam, 1, 2, 3);
        assert!(matches!(err, Err(Error::Domain(_))));
    }

    #[test]
    fn far_embeddings_commute_exactly() {
        let g = a_graph(4);
        let fam = tl_a(&g, 4);
        for &a in g.vertices() {
            let t1 = embed_at(&g, &fam, a, 1, 4).unwrap();
            let t3 = embed_at(&g, &fam, a, 3, 4).unwrap();
            let lhs = t1.compose(&t3).unwrap();
            let rhs = t3.compose(&t1).unwrap();
            assert_eq!(lhs.residual(&rhs).unwrap(), 0.0);
        }
    }

    #[test]
    fn compose_associative_on_pseudorandom_triples() {
        let g = a_graph(4);
        // deterministic value stream
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        for &base in g.vertices() {
            let ps = paths_from(&g, base, 2).unwrap();
            let mut ops = Vec::new();
            for _ in 0..3 {
                let mut op = FiberOperator::zero(base, 2);
                for p in &ps {
                    for q in &ps {
                        if reduce(p) == reduce(q) {
                            op.set_block(p.clone(), q.clone(), C64::new(next(), next()))
                                .unwrap();
                        }
                    }
                }
                ops.push(op);
            }
            let left = ops[0].compose(&ops[1]).unwrap().compose(&ops[2]).unwrap();
            let right = ops[0].compose(&ops[1].compose(&ops[2]).unwrap()).unwrap();
            assert!(left.residual(&right).unwrap() < 1e-14);
        }
    }

    #[test]
    fn invert_identity_and_singular() {
        let g = a_graph(3);
        let id = FiberOperator::identity(&g, 2, 2).unwrap();
        let inv = id.invert(&g).unwrap();
        assert_eq!(inv.residual(&id).unwrap(), 0.0);

        let zero = FiberOperator::zero(2, 2);
        assert!(zero.invert(&g).is_err());
    }

    #[test]
    fn invert_round_trip() {
        let g = a_graph(3);
        let fam = tl_a(&g, 3);
        // q id - T is invertible for q = e^{i pi/4}
        let q = C64::from_polar(1.0, std::f64::consts::PI / 4.0);
        let id = FiberOperator::identity(&g, 2, 2).unwrap();
        let s = id.scale(q).sub(&fam[&2]).unwrap();
        let sinv = s.invert(&g).unwrap();
        let prod = s.compose(&sinv).unwrap();
        assert!(prod.residual(&id).unwrap() < 1e-13);
    }
}
