//! Finite simple connected graphs and the path combinatorics of their
//! groupoids: oriented arrows, composable paths, and free reduction.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};

/// Vertex identifier. Integer ids keep catalog diagrams, custom edge lists
/// and line windows (which may start at negative offsets) in one type.
pub type Vertex = i64;

/// Oriented edge of the ambient graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Arrow {
    pub source: Vertex,
    pub target: Vertex,
}

impl Arrow {
    pub fn inverse(self) -> Arrow {
        Arrow {
            source: self.target,
            target: self.source,
        }
    }
}

/// Finite simple connected graph with ordered integer vertex ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertices: Vec<Vertex>,
    adjacency: BTreeMap<Vertex, Vec<Vertex>>,
    edges: Vec<(Vertex, Vertex)>,
}

impl Graph {
    /// Builds a graph from an unordered edge list. Rejects self-loops,
    /// parallel edges and disconnected graphs.
    pub fn from_edges(list: &[(Vertex, Vertex)]) -> Result<Graph> {
        if list.is_empty() {
            return Err(Error::Input("graph needs at least one edge".into()));
        }
        let mut edges = BTreeSet::new();
        let mut adjacency: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
        for &(u, v) in list {
            if u == v {
                return Err(Error::Input(format!("self-loop at vertex {u}")));
            }
            let e = (u.min(v), u.max(v));
            if !edges.insert(e) {
                return Err(Error::Input(format!("parallel edge {u}-{v}")));
            }
            adjacency.entry(u).or_default().push(v);
            adjacency.entry(v).or_default().push(u);
        }
        for nbrs in adjacency.values_mut() {
            nbrs.sort_unstable();
        }
        let vertices: Vec<Vertex> = adjacency.keys().copied().collect();

        // connectivity by BFS from the smallest vertex
        let mut seen = BTreeSet::new();
        let mut queue = vec![vertices[0]];
        seen.insert(vertices[0]);
        while let Some(v) = queue.pop() {
            for &u in &adjacency[&v] {
                if seen.insert(u) {
                    queue.push(u);
                }
            }
        }
        if seen.len() != vertices.len() {
            return Err(Error::Input("graph is not connected".into()));
        }

        Ok(Graph {
            vertices,
            adjacency,
            edges: edges.into_iter().collect(),
        })
    }

    /// Parses the plain-text edge list format: one `u v` pair per line,
    /// blank lines and `#` comments ignored.
    pub fn parse_edge_list(text: &str) -> Result<Graph> {
        let mut list = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = match raw.find('#') {
                Some(i) => &raw[..i],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let mut it = line.split_whitespace();
            let u = it.next();
            let v = it.next();
            match (u, v, it.next()) {
                (Some(u), Some(v), None) => {
                    let u: Vertex = u.parse().map_err(|_| {
                        Error::Input(format!("line {}: bad vertex id {u:?}", lineno + 1))
                    })?;
                    let v: Vertex = v.parse().map_err(|_| {
                        Error::Input(format!("line {}: bad vertex id {v:?}", lineno + 1))
                    })?;
                    list.push((u, v));
                }
                _ => {
                    return Err(Error::Input(format!(
                        "line {}: expected `u v`, got {raw:?}",
                        lineno + 1
                    )))
                }
            }
        }
        Graph::from_edges(&list)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn has_vertex(&self, v: Vertex) -> bool {
        self.adjacency.contains_key(&v)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.edges.binary_search(&(u.min(v), u.max(v))).is_ok()
    }

    /// Sorted neighbor list of `v`.
    pub fn neighbors(&self, v: Vertex) -> Result<&[Vertex]> {
        self.adjacency
            .get(&v)
            .map(|n| n.as_slice())
            .ok_or_else(|| Error::Input(format!("unknown vertex {v}")))
    }

    pub fn degree(&self, v: Vertex) -> Result<usize> {
        Ok(self.neighbors(v)?.len())
    }

    /// Adjacency matrix in vertex order, for eigen-data and count oracles.
    pub fn adjacency_matrix(&self) -> Vec<Vec<u64>> {
        let n = self.vertices.len();
        let index: BTreeMap<Vertex, usize> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, i))
            .collect();
        let mut m = vec![vec![0u64; n]; n];
        for &(u, v) in &self.edges {
            m[index[&u]][index[&v]] = 1;
            m[index[&v]][index[&u]] = 1;
        }
        m
    }
}

/// Composable arrow sequence with a fixed base vertex, stored as the visited
/// vertex sequence `base, v1, ..., vk`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    verts: Vec<Vertex>,
}

impl Path {
    /// `verts` must be non-empty; consecutive entries are the arrow endpoints.
    pub fn new(verts: Vec<Vertex>) -> Path {
        assert!(!verts.is_empty(), "path needs a base vertex");
        Path { verts }
    }

    pub fn base(&self) -> Vertex {
        self.verts[0]
    }

    /// Number of arrows.
    pub fn len(&self) -> usize {
        self.verts.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn target(&self) -> Vertex {
        *self.verts.last().unwrap()
    }

    pub fn verts(&self) -> &[Vertex] {
        &self.verts
    }

    /// Vertex reached after `k` arrows (`k = 0` is the base).
    pub fn vertex_at(&self, k: usize) -> Vertex {
        self.verts[k]
    }

    pub fn arrows(&self) -> impl Iterator<Item = Arrow> + '_ {
        self.verts.windows(2).map(|w| Arrow {
            source: w[0],
            target: w[1],
        })
    }

    /// Every arrow is an edge of `g`.
    pub fn is_valid_in(&self, g: &Graph) -> bool {
        g.has_vertex(self.base()) && self.arrows().all(|a| g.has_edge(a.source, a.target))
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.verts.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join("->"))
    }
}

/// Freely reduced word of a graph groupoid: no adjacent inverse arrow pair.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ReducedWord {
    verts: Vec<Vertex>,
}

impl ReducedWord {
    pub fn base(&self) -> Vertex {
        self.verts[0]
    }

    pub fn target(&self) -> Vertex {
        *self.verts.last().unwrap()
    }

    pub fn len(&self) -> usize {
        self.verts.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.verts.len() == 1
    }

    pub fn is_identity(&self) -> bool {
        self.is_empty()
    }

    pub fn verts(&self) -> &[Vertex] {
        &self.verts
    }
}

/// Free reduction: cancels adjacent inverse pairs until none remain. The
/// normal form is unique, so two paths represent the same groupoid arrow
/// exactly when their reductions agree.
pub fn reduce(p: &Path) -> ReducedWord {
    let mut stack: Vec<Vertex> = Vec::with_capacity(p.verts().len());
    for &v in p.verts() {
        if stack.len() >= 2 && stack[stack.len() - 2] == v {
            stack.pop();
        } else {
            stack.push(v);
        }
    }
    ReducedWord { verts: stack }
}

/// All length-`k` paths starting at `base`, in lexicographic order of the
/// visited vertex sequence.
pub fn paths_from(graph: &Graph, base: Vertex, k: usize) -> Result<Vec<Path>> {
    if !graph.has_vertex(base) {
        return Err(Error::Input(format!("unknown vertex {base}")));
    }
    if k == 0 {
        return Err(Error::Input("path length must be at least 1".into()));
    }
    let mut out = Vec::new();
    let mut current = vec![base];
    extend_paths(graph, &mut current, k, &mut out);
    Ok(out)
}

fn extend_paths(graph: &Graph, current: &mut Vec<Vertex>, remaining: usize, out: &mut Vec<Path>) {
    if remaining == 0 {
        out.push(Path::new(current.clone()));
        return;
    }
    let last = *current.last().unwrap();
    // neighbor lists are sorted, so the recursion emits lexicographic order
    for &u in graph.neighbors(last).unwrap() {
        current.push(u);
        extend_paths(graph, current, remaining - 1, out);
        current.pop();
    }
}

/// Count of length-`k` paths from `base`, via the adjacency power. Used as an
/// independent completeness oracle for `paths_from`.
pub fn path_count_by_matrix_power(graph: &Graph, base: Vertex, k: usize) -> Result<u64> {
    if !graph.has_vertex(base) {
        return Err(Error::Input(format!("unknown vertex {base}")));
    }
    let y = graph.adjacency_matrix();
    let n = y.len();
    let idx = graph
        .vertices()
        .iter()
        .position(|&v| v == base)
        .expect("vertex present");
    let mut row = vec![0u64; n];
    row[idx] = 1;
    for _ in 0..k {
        let mut next = vec![0u64; n];
        for (j, nj) in next.iter_mut().enumerate() {
            for (i, &ri) in row.iter().enumerate() {
                *nj += ri * y[i][j];
            }
        }
        row = next;
    }
    Ok(row.iter().sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn a_graph(l: i64) -> Graph {
        let edges: Vec<(Vertex, Vertex)> = (1..l).map(|v| (v, v + 1)).collect();
        Graph::from_edges(&edges).unwrap()
    }

    #[test]
    fn rejects_self_loop_parallel_disconnected() {
        assert!(Graph::from_edges(&[(1, 1)]).is_err());
        assert!(Graph::from_edges(&[(1, 2), (2, 1)]).is_err());
        assert!(Graph::from_edges(&[(1, 2), (3, 4)]).is_err());
    }

    #[test]
    fn parse_edge_list_comments_and_blanks() {
        let g = Graph::parse_edge_list("# path\n1 2\n\n2 3  # tail\n").unwrap();
        assert_eq!(g.vertices(), &[1, 2, 3]);
        assert!(g.has_edge(2, 3));
        assert!(Graph::parse_edge_list("1 2 3\n").is_err());
    }

    #[test]
    fn paths_from_a3_base2_k1() {
        let g = a_graph(3);
        let ps = paths_from(&g, 2, 1).unwrap();
        assert_eq!(ps, vec![Path::new(vec![2, 1]), Path::new(vec![2, 3])]);
    }

    #[test]
    fn paths_from_a3_base1_k2() {
        let g = a_graph(3);
        let ps = paths_from(&g, 1, 2).unwrap();
        assert_eq!(ps, vec![Path::new(vec![1, 2, 1]), Path::new(vec![1, 2, 3])]);
    }

    #[test]
    fn paths_from_unknown_vertex() {
        let g = a_graph(3);
        assert!(matches!(paths_from(&g, 9, 1), Err(Error::Input(_))));
    }

    #[test]
    fn closed_path_count_a4_k6_is_36() {
        // oracle: trace of Y^6 by direct matrix power
        let g = a_graph(4);
        let y = g.adjacency_matrix();
        let n = y.len();
        let mut p = y.clone();
        for _ in 0..5 {
            let mut next = vec![vec![0u64; n]; n];
            for i in 0..n {
                for k in 0..n {
                    if p[i][k] == 0 {
                        continue;
                    }
                    for j in 0..n {
                        next[i][j] += p[i][k] * y[k][j];
                    }
                }
            }
            p = next;
        }
        let trace: u64 = (0..n).map(|i| p[i][i]).sum();
        assert_eq!(trace, 36);

        let mut closed = 0u64;
        for &b in g.vertices() {
            closed += paths_from(&g, b, 6)
                .unwrap()
                .iter()
                .filter(|p| p.target() == b)
                .count() as u64;
        }
        assert_eq!(closed, trace);
    }

    #[test]
    fn path_enumeration_complete_vs_matrix_power() {
        for l in 2..=6 {
            let g = a_graph(l);
            for &b in g.vertices() {
                for k in 1..=5 {
                    let count = paths_from(&g, b, k).unwrap().len() as u64;
                    assert_eq!(count, path_count_by_matrix_power(&g, b, k).unwrap());
                }
            }
        }
    }

    #[test]
    fn reduce_round_trip_and_tree() {
        let id = reduce(&Path::new(vec![1, 2, 1]));
        assert!(id.is_identity());
        assert_eq!(id.base(), 1);

        let w = reduce(&Path::new(vec![1, 2, 3]));
        assert_eq!(w.verts(), &[1, 2, 3]);
    }

    #[test]
    fn reduce_cycle_word_stays() {
        // 3-cycle: 1->2->3->1 has no adjacent inverse pair
        let w = reduce(&Path::new(vec![1, 2, 3, 1]));
        assert_eq!(w.len(), 3);
        assert_eq!(w.base(), 1);
        assert_eq!(w.target(), 1);
    }

    proptest! {
        #[test]
        fn reduce_is_idempotent_and_preserves_endpoints(
            steps in proptest::collection::vec(0usize..2, 1..12),
            base in 1i64..6,
        ) {
            let g = a_graph(6);
            let mut verts = vec![base];
            for s in steps {
                let nbrs = g.neighbors(*verts.last().unwrap()).unwrap();
                verts.push(nbrs[s % nbrs.len()]);
            }
            let p = Path::new(verts);
            let r = reduce(&p);
            prop_assert_eq!(r.base(), p.base());
            prop_assert_eq!(r.target(), p.target());
            let again = reduce(&Path::new(r.verts().to_vec()));
            prop_assert_eq!(again.verts(), r.verts());
        }
    }
}
