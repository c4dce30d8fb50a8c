//! Simple graphs on `[1, n]`, the family constructors used throughout the
//! crate, and the bipartite doubling `D(G)`.
//!
//! Vertices are 1-indexed everywhere in the public API so that labels line up
//! with the usual conventions (`K_n \ E(P)` deletes `{i, i+1}` for the last
//! `m` values of `i`, and so on). Internally the doubling stores 0-indexed
//! bitsets.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::bitset::VertexSet;
use crate::error::{Error, Result};

/// An unordered pair `{u, v}` with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    u: usize,
    v: usize,
}

impl Edge {
    /// Normalizes the endpoints so that `u < v`. Self-loops are rejected.
    pub fn new(a: usize, b: usize) -> Result<Self> {
        if a == b {
            return Err(Error::SelfLoop(a));
        }
        Ok(Edge {
            u: a.min(b),
            v: a.max(b),
        })
    }

    /// Smaller endpoint.
    pub fn u(&self) -> usize {
        self.u
    }

    /// Larger endpoint.
    pub fn v(&self) -> usize {
        self.v
    }

    pub fn contains(&self, w: usize) -> bool {
        self.u == w || self.v == w
    }

    pub fn shares_vertex(&self, other: &Edge) -> bool {
        self.contains(other.u) || self.contains(other.v)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.u, self.v)
    }
}

/// A simple undirected graph on the vertex set `[1, n]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: BTreeSet<Edge>,
}

impl Graph {
    /// Builds a graph, rejecting out-of-range endpoints and repeated edges.
    pub fn new(n: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyVertexSet);
        }
        let mut set = BTreeSet::new();
        for e in edges {
            if e.v > n || e.u == 0 {
                return Err(Error::VertexOutOfRange {
                    vertex: e.v.max(e.u),
                    n,
                });
            }
            if !set.insert(e) {
                return Err(Error::DuplicateEdge(e));
            }
        }
        Ok(Graph { n, edges: set })
    }

    /// Convenience constructor from raw pairs.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let edges = pairs
            .iter()
            .map(|&(a, b)| Edge::new(a, b))
            .collect::<Result<Vec<_>>>()?;
        Graph::new(n, edges)
    }

    pub fn empty(n: usize) -> Result<Self> {
        Graph::new(n, [])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Edges in ascending order.
    pub fn edges(&self) -> impl ExactSizeIterator<Item = &Edge> + '_ {
        self.edges.iter()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        Edge::new(a, b).is_ok_and(|e| self.edges.contains(&e))
    }

    /// Neighbors of `v` in ascending order.
    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter_map(|e| {
                if e.u == v {
                    Some(e.v)
                } else if e.v == v {
                    Some(e.u)
                } else {
                    None
                }
            })
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.contains(v)).count()
    }

    /// Returns a copy with `extra` added. Fails on duplicates.
    pub fn with_edge(&self, extra: Edge) -> Result<Self> {
        Graph::new(self.n, self.edges.iter().copied().chain([extra]))
    }

    /// Returns a copy with the given edges removed. Every edge must be present.
    pub fn without_edges(&self, removed: &[Edge]) -> Result<Self> {
        let mut edges = self.edges.clone();
        for e in removed {
            if !edges.remove(e) {
                return Err(Error::NotAnEdge(*e));
            }
        }
        Ok(Graph { n: self.n, edges })
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() == 1
    }

    /// Applies the vertex permutation `perm`, given as `perm[i - 1] = π(i)`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        check_permutation(perm, self.n)?;
        let edges = self
            .edges
            .iter()
            .map(|e| Edge::new(perm[e.u - 1], perm[e.v - 1]))
            .collect::<Result<Vec<_>>>()?;
        Graph::new(self.n, edges)
    }

    /// Maximal connected induced subgraphs, ordered by smallest original
    /// vertex, each relabeled onto `[1, n_i]` preserving relative order.
    pub fn connected_components(&self) -> Vec<Component> {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut root = x;
            while parent[root] != root {
                root = parent[root];
            }
            let mut cur = x;
            while parent[cur] != root {
                let next = parent[cur];
                parent[cur] = root;
                cur = next;
            }
            root
        }
        for e in &self.edges {
            let (a, b) = (find(&mut parent, e.u - 1), find(&mut parent, e.v - 1));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut slot_of_root = vec![usize::MAX; self.n];
        for x in 0..self.n {
            let r = find(&mut parent, x);
            if slot_of_root[r] == usize::MAX {
                slot_of_root[r] = groups.len();
                groups.push(Vec::new());
            }
            groups[slot_of_root[r]].push(x + 1);
        }
        groups
            .into_iter()
            .map(|vertices| {
                let mut local = vec![0usize; self.n + 1];
                for (k, &v) in vertices.iter().enumerate() {
                    local[v] = k + 1;
                }
                let edges = self.edges.iter().filter(|e| local[e.u] != 0).map(|e| Edge {
                    u: local[e.u],
                    v: local[e.v],
                });
                let graph = Graph {
                    n: vertices.len(),
                    edges: edges.collect(),
                };
                Component {
                    graph,
                    original: vertices,
                }
            })
            .collect()
    }

    /// Parses the plain-text edge-list format: the first meaningful line is
    /// the vertex count, every other non-empty line is `u v`. Lines starting
    /// with `#` are ignored.
    pub fn parse_text(text: &str) -> Result<Self> {
        let mut n: Option<usize> = None;
        let mut edges = BTreeSet::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let parse_err = |message: String| Error::Parse {
                line: line_no,
                message,
            };
            let mut fields = line.split_whitespace();
            match n {
                None => {
                    let count: usize = line
                        .parse()
                        .map_err(|_| parse_err(format!("expected vertex count, found {line:?}")))?;
                    if count == 0 {
                        return Err(parse_err("vertex count must be positive".into()));
                    }
                    n = Some(count);
                }
                Some(count) => {
                    let (a, b) = match (fields.next(), fields.next(), fields.next()) {
                        (Some(a), Some(b), None) => (a, b),
                        _ => return Err(parse_err(format!("expected \"u v\", found {line:?}"))),
                    };
                    let a: usize = a
                        .parse()
                        .map_err(|_| parse_err(format!("bad vertex {a:?}")))?;
                    let b: usize = b
                        .parse()
                        .map_err(|_| parse_err(format!("bad vertex {b:?}")))?;
                    for w in [a, b] {
                        if w == 0 || w > count {
                            return Err(parse_err(format!("vertex {w} outside [1, {count}]")));
                        }
                    }
                    let e = Edge::new(a, b).map_err(|_| parse_err(format!("self-loop at {a}")))?;
                    if !edges.insert(e) {
                        return Err(parse_err(format!("duplicate edge {e}")));
                    }
                }
            }
        }
        let n = n.ok_or(Error::Parse {
            line: 0,
            message: "missing vertex count".into(),
        })?;
        Ok(Graph { n, edges })
    }

    /// Serializes to the text format accepted by [`Graph::parse_text`].
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for e in &self.edges {
            out.push_str(&format!("{} {}\n", e.u, e.v));
        }
        out
    }

    /// graph6 encoding (n ≤ 62).
    pub fn to_graph6(&self) -> String {
        assert!(self.n <= 62, "graph6 short form covers n <= 62");
        let mut bits = Vec::with_capacity(self.n * (self.n - 1) / 2);
        for j in 1..self.n {
            for i in 0..j {
                bits.push(self.has_edge(i + 1, j + 1));
            }
        }
        let mut out = String::new();
        out.push((self.n as u8 + 63) as char);
        for chunk in bits.chunks(6) {
            let mut value = 0u8;
            for (k, &b) in chunk.iter().enumerate() {
                if b {
                    value |= 1 << (5 - k);
                }
            }
            out.push((value + 63) as char);
        }
        out
    }

    /// Compact human-readable descriptor, e.g. `n=3 E=[12,13,23]`.
    pub fn descriptor(&self) -> String {
        let list: Vec<String> = self
            .edges
            .iter()
            .map(|e| {
                if self.n < 10 {
                    format!("{}{}", e.u, e.v)
                } else {
                    format!("{}-{}", e.u, e.v)
                }
            })
            .collect();
        format!("n={} E=[{}]", self.n, list.join(","))
    }
}

impl FromStr for Graph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Graph::parse_text(s)
    }
}

/// A connected component together with the map back to the host graph:
/// `original[k - 1]` is the host label of local vertex `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub graph: Graph,
    pub original: Vec<usize>,
}

/// A set of pairwise vertex-disjoint edges of a host graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    edges: Vec<Edge>,
}

impl Matching {
    pub fn new(host: &Graph, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let mut list: Vec<Edge> = Vec::new();
        for e in edges {
            if !host.has_edge(e.u, e.v) {
                return Err(Error::NotAnEdge(e));
            }
            if list.iter().any(|f| f.shares_vertex(&e)) {
                return Err(Error::NotAMatching(e));
            }
            list.push(e);
        }
        list.sort();
        Ok(Matching { edges: list })
    }

    /// `{1,2}, {3,4}, ...` with `m` edges on `K_n`.
    pub fn canonical(n: usize, m: usize) -> Result<Self> {
        if 2 * m > n {
            return Err(Error::Hypothesis(format!(
                "a matching of K_{n} has at most {} edges, got {m}",
                n / 2
            )));
        }
        let host = complete_graph(n)?;
        Matching::new(
            &host,
            (0..m).map(|k| Edge {
                u: 2 * k + 1,
                v: 2 * k + 2,
            }),
        )
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

fn check_permutation(perm: &[usize], n: usize) -> Result<()> {
    if perm.len() != n {
        return Err(Error::NotAPermutation(format!(
            "length {} but graph has {n} vertices",
            perm.len()
        )));
    }
    let mut seen = vec![false; n + 1];
    for &p in perm {
        if p == 0 || p > n || seen[p] {
            return Err(Error::NotAPermutation(format!(
                "{perm:?} is not a bijection on [1, {n}]"
            )));
        }
        seen[p] = true;
    }
    Ok(())
}

/// `K_n`.
pub fn complete_graph(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::EmptyVertexSet);
    }
    let edges = (1..=n).flat_map(|u| (u + 1..=n).map(move |v| Edge { u, v }));
    Graph::new(n, edges)
}

/// `G△e`: a new vertex `n + 1` joined to both endpoints of `e`.
pub fn triangle_extend(g: &Graph, e: Edge) -> Result<Graph> {
    triangle_extend_set(g, &[e])
}

/// `G△F`: one new vertex per edge of `F`, numbered `n + 1, n + 2, ...` in
/// ascending edge order.
pub fn triangle_extend_set(g: &Graph, f: &[Edge]) -> Result<Graph> {
    let sorted: BTreeSet<Edge> = f.iter().copied().collect();
    for e in &sorted {
        if !g.has_edge(e.u, e.v) {
            return Err(Error::NotAnEdge(*e));
        }
    }
    let mut edges: Vec<Edge> = g.edges.iter().copied().collect();
    for (k, e) in sorted.iter().enumerate() {
        let w = g.n + k + 1;
        edges.push(Edge { u: e.u, v: w });
        edges.push(Edge { u: e.v, v: w });
    }
    Graph::new(g.n + sorted.len(), edges)
}

/// `K_n` minus the length-`m` path `{i, i+1}`, `n - m ≤ i ≤ n - 1`.
pub fn delete_path(n: usize, m: usize) -> Result<Graph> {
    if n < 4 || m >= n {
        return Err(Error::Hypothesis(format!(
            "path deletion needs N >= 4 and 0 <= M < N, got N={n}, M={m}"
        )));
    }
    let path: Vec<Edge> = (n - m..n).map(|i| Edge { u: i, v: i + 1 }).collect();
    complete_graph(n)?.without_edges(&path)
}

/// Vertices `v_0, ..., v_{m-1}` of the canonical deleted cycle:
/// `v_i = n - m + 1 + i`.
pub fn cycle_vertices(n: usize, m: usize) -> Vec<usize> {
    (0..m).map(|i| n - m + 1 + i).collect()
}

/// `K_n` minus the edges of an `m`-cycle on `v_i = n - m + 1 + i`.
pub fn delete_cycle(n: usize, m: usize) -> Result<Graph> {
    if n < 5 || m > n || m == 1 || m == 2 {
        return Err(Error::Hypothesis(format!(
            "cycle deletion needs N >= 5 and M = 0 or 3 <= M <= N, got N={n}, M={m}"
        )));
    }
    let vs = cycle_vertices(n, m);
    let cycle = (0..m)
        .map(|i| Edge::new(vs[i], vs[(i + 1) % m]))
        .collect::<Result<Vec<_>>>()?;
    complete_graph(n)?.without_edges(&cycle)
}

/// The doubled bipartite graph `D(G)`: left vertex `i` sees `ī` and `j̄` for
/// every neighbor `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteDouble {
    neighborhoods: Vec<VertexSet>,
}

impl BipartiteDouble {
    pub fn n(&self) -> usize {
        self.neighborhoods.len()
    }

    /// Right-side neighborhood of left vertex `i` (1-indexed), as a 0-indexed
    /// bitset over right vertices.
    pub fn neighborhood(&self, i: usize) -> &VertexSet {
        &self.neighborhoods[i - 1]
    }

    /// Right vertices adjacent to left vertex `i`, 1-indexed.
    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        self.neighborhoods[i - 1].iter().map(|j| j + 1).collect()
    }

    pub(crate) fn sets(&self) -> &[VertexSet] {
        &self.neighborhoods
    }

    /// Adjacency lists (0-indexed) suitable for the flow kernel.
    pub(crate) fn adjacency(&self) -> Vec<Vec<usize>> {
        self.neighborhoods
            .iter()
            .map(|s| s.iter().collect())
            .collect()
    }
}

/// Builds `D(G)`.
pub fn doubling(g: &Graph) -> BipartiteDouble {
    let mut neighborhoods: Vec<VertexSet> = (0..g.n)
        .map(|i| {
            let mut s = VertexSet::new(g.n);
            s.insert(i);
            s
        })
        .collect();
    for e in &g.edges {
        neighborhoods[e.u - 1].insert(e.v - 1);
        neighborhoods[e.v - 1].insert(e.u - 1);
    }
    BipartiteDouble { neighborhoods }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn edge_list(g: &Graph) -> Vec<(usize, usize)> {
        g.edges().map(|e| (e.u(), e.v())).collect()
    }

    #[test]
    fn complete_graph_examples() {
        assert_eq!(complete_graph(1).unwrap().edge_count(), 0);
        assert_eq!(
            edge_list(&complete_graph(3).unwrap()),
            vec![(1, 2), (1, 3), (2, 3)]
        );
        assert_eq!(complete_graph(5).unwrap().edge_count(), 10);
        assert!(complete_graph(0).is_err());
    }

    #[test]
    fn triangle_extension_examples() {
        let k2 = complete_graph(2).unwrap();
        assert_eq!(
            triangle_extend(&k2, Edge::new(1, 2).unwrap()).unwrap(),
            complete_graph(3).unwrap()
        );

        let k3 = complete_graph(3).unwrap();
        let g = triangle_extend(&k3, Edge::new(1, 2).unwrap()).unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(edge_list(&g), vec![(1, 2), (1, 3), (1, 4), (2, 3), (2, 4)]);

        let path = Graph::from_pairs(3, &[(1, 2), (2, 3)]).unwrap();
        let g = triangle_extend(&path, Edge::new(2, 3).unwrap()).unwrap();
        assert_eq!(edge_list(&g), vec![(1, 2), (2, 3), (2, 4), (3, 4)]);

        assert!(triangle_extend(&path, Edge::new(1, 3).unwrap()).is_err());
    }

    #[test]
    fn triangle_extension_of_sets() {
        let k4 = complete_graph(4).unwrap();
        assert_eq!(triangle_extend_set(&k4, &[]).unwrap(), k4);
        let k2 = complete_graph(2).unwrap();
        assert_eq!(
            triangle_extend_set(&k2, &[Edge::new(1, 2).unwrap()]).unwrap(),
            complete_graph(3).unwrap()
        );
        let f = [Edge::new(3, 4).unwrap(), Edge::new(1, 2).unwrap()];
        let g = triangle_extend_set(&k4, &f).unwrap();
        assert_eq!((g.n(), g.edge_count()), (6, 10));
        // {1,2} sorts first, so it owns vertex 5.
        assert!(g.has_edge(1, 5) && g.has_edge(2, 5) && g.has_edge(3, 6) && g.has_edge(4, 6));
        // Same as iterating single extensions in ascending order.
        let step = triangle_extend(&k4, f[1]).unwrap();
        assert_eq!(triangle_extend(&step, f[0]).unwrap(), g);
    }

    #[test]
    fn path_and_cycle_deletion() {
        assert_eq!(delete_path(4, 0).unwrap(), complete_graph(4).unwrap());
        let g = delete_path(4, 2).unwrap();
        assert!(!g.has_edge(2, 3) && !g.has_edge(3, 4));
        assert_eq!(g.edge_count(), 4);
        let g = delete_path(5, 2).unwrap();
        assert!(!g.has_edge(3, 4) && !g.has_edge(4, 5));
        assert_eq!(g.edge_count(), 8);
        assert!(delete_path(4, 4).is_err());
        assert!(delete_path(3, 1).is_err());

        assert_eq!(delete_cycle(5, 0).unwrap(), complete_graph(5).unwrap());
        let g = delete_cycle(5, 3).unwrap();
        assert_eq!(g.edge_count(), 7);
        assert!(!g.has_edge(3, 4) && !g.has_edge(4, 5) && !g.has_edge(3, 5));
        // The complement of C_5 is again a 5-cycle.
        let g = delete_cycle(5, 5).unwrap();
        assert_eq!(g.edge_count(), 5);
        assert!((1..=5).all(|v| g.degree(v) == 2));
        assert!(g.is_connected());
        assert!(delete_cycle(5, 1).is_err());
        assert!(delete_cycle(5, 2).is_err());
        assert!(delete_cycle(4, 3).is_err());
    }

    #[test]
    fn doubling_examples() {
        let d = doubling(&complete_graph(2).unwrap());
        assert_eq!(d.neighbors(1), vec![1, 2]);
        assert_eq!(d.neighbors(2), vec![1, 2]);
        let d = doubling(&complete_graph(1).unwrap());
        assert_eq!(d.neighbors(1), vec![1]);
        let d = doubling(&delete_path(4, 2).unwrap());
        let sizes: Vec<usize> = (1..=4).map(|i| d.neighborhood(i).len()).collect();
        assert_eq!(sizes, vec![4, 3, 2, 3]);
    }

    #[test]
    fn relabel_examples() {
        let k3 = complete_graph(3).unwrap();
        assert_eq!(k3.relabel(&[3, 1, 2]).unwrap(), k3);
        let path = Graph::from_pairs(3, &[(1, 2), (2, 3)]).unwrap();
        assert_eq!(path.relabel(&[3, 2, 1]).unwrap(), path);
        let g = Graph::from_pairs(3, &[(1, 2)]).unwrap();
        assert_eq!(edge_list(&g.relabel(&[1, 3, 2]).unwrap()), vec![(1, 3)]);
        assert!(g.relabel(&[1, 1, 2]).is_err());
        assert!(g.relabel(&[1, 2]).is_err());
    }

    #[test]
    fn components() {
        let k5 = complete_graph(5).unwrap();
        let comps = k5.connected_components();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].graph, k5);

        let two = Graph::from_pairs(4, &[(1, 3), (2, 4)]).unwrap();
        let comps = two.connected_components();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].original, vec![1, 3]);
        assert_eq!(comps[1].original, vec![2, 4]);
        assert!(comps.iter().all(|c| c.graph == complete_graph(2).unwrap()));

        let comps = Graph::empty(3).unwrap().connected_components();
        assert_eq!(comps.len(), 3);
        assert!(comps.iter().all(|c| c.graph == complete_graph(1).unwrap()));
    }

    #[test]
    fn text_format() {
        let g: Graph = "# two edges\n4\n1 2\n\n3 4\n".parse().unwrap();
        assert_eq!(edge_list(&g), vec![(1, 2), (3, 4)]);
        assert_eq!(Graph::parse_text(&g.to_text()).unwrap(), g);

        match Graph::parse_text("3\n1 2\n2 1\n") {
            Err(Error::Parse { line, message }) => {
                assert_eq!(line, 3);
                assert!(message.contains("duplicate"));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            Graph::parse_text("3\n1 4\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            Graph::parse_text("3\n2 2\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            Graph::parse_text("x\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(Graph::parse_text("# nothing\n").is_err());
    }

    #[test]
    fn graph6() {
        assert_eq!(complete_graph(3).unwrap().to_graph6(), "Bw");
        assert_eq!(complete_graph(4).unwrap().to_graph6(), "C~");
        assert_eq!(Graph::empty(1).unwrap().to_graph6(), "@");
    }

    #[test]
    fn matchings() {
        let k4 = complete_graph(4).unwrap();
        let m = Matching::canonical(4, 2).unwrap();
        assert_eq!(
            m.edges(),
            &[Edge::new(1, 2).unwrap(), Edge::new(3, 4).unwrap()]
        );
        assert!(Matching::canonical(4, 3).is_err());
        assert!(Matching::new(&k4, [Edge::new(1, 2).unwrap(), Edge::new(2, 3).unwrap()]).is_err());
        let path = Graph::from_pairs(3, &[(1, 2)]).unwrap();
        assert!(Matching::new(&path, [Edge::new(2, 3).unwrap()]).is_err());
    }
}
