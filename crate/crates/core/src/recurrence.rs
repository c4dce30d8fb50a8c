//! The three injections `α`, `β`, `γ` from `𝔇(G)` into `𝔇(G△e)`, checks of
//! the disjoint-union decomposition they induce, and a search over small
//! graphs for edges where `|𝔇(G△e)| = 3 |𝔇(G)|`.
//!
//! The new vertex of `G△e` is always `n + 1`, so each map appends one entry.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::composition::{CompositionSequence, SequenceSet};
use crate::draconian::{count_raw, draconian_set, EnumOptions};
use crate::error::{Error, Result};
use crate::graph::{doubling, triangle_extend, Edge, Graph};

/// `α(c) = (c, 1)`.
pub fn alpha(c: &CompositionSequence) -> CompositionSequence {
    let mut v = c.entries().to_vec();
    v.push(1);
    CompositionSequence::from_vec_unchecked(v)
}

/// `β(c) = (c + e_u, 0)`.
pub fn beta(c: &CompositionSequence, u: usize) -> Result<CompositionSequence> {
    if u == 0 || u > c.len() {
        return Err(Error::VertexOutOfRange {
            vertex: u,
            n: c.len(),
        });
    }
    let mut v = c.entries().to_vec();
    v[u - 1] += 1;
    v.push(0);
    Ok(CompositionSequence::from_vec_unchecked(v))
}

/// `γ(c) = (c + e_v, 0)` unless that lies in `b_image`, else `(c − e_u, 2)`.
///
/// `b_image` must be the `β`-image for the same graph and orientation.
pub fn gamma(
    c: &CompositionSequence,
    u: usize,
    v: usize,
    b_image: &SequenceSet,
) -> Result<CompositionSequence> {
    for w in [u, v] {
        if w == 0 || w > c.len() {
            return Err(Error::VertexOutOfRange {
                vertex: w,
                n: c.len(),
            });
        }
    }
    let mut first = c.entries().to_vec();
    first[v - 1] += 1;
    first.push(0);
    let first = CompositionSequence::from_vec_unchecked(first);
    if !b_image.contains(&first) {
        return Ok(first);
    }
    let mut second = c.entries().to_vec();
    if second[u - 1] == 0 {
        return Err(Error::NegativeEntry(format!(
            "gamma({c}) would make entry {u} negative"
        )));
    }
    second[u - 1] -= 1;
    second.push(2);
    Ok(CompositionSequence::from_vec_unchecked(second))
}

/// Image checks for one orientation `(u, v)` of the extended edge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrientationReport {
    pub u: usize,
    pub v: usize,
    pub a_size: usize,
    pub b_size: usize,
    pub c_size: usize,
    /// Every image has as many elements as `𝔇(g)`.
    pub injective: bool,
    pub pairwise_disjoint: bool,
    pub a_contained: bool,
    pub b_contained: bool,
    pub c_contained: bool,
    /// `A ∪ B ∪ C = 𝔇(g△e)`.
    pub union_equals: bool,
    /// Inputs on which `γ` signalled an error.
    pub gamma_errors: usize,
}

impl OrientationReport {
    pub fn partition_holds(&self) -> bool {
        self.injective
            && self.pairwise_disjoint
            && self.a_contained
            && self.b_contained
            && self.c_contained
            && self.union_equals
            && self.gamma_errors == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartitionReport {
    pub graph: String,
    pub edge: [usize; 2],
    pub matching_mode: bool,
    pub domain_size: usize,
    pub extended_size: usize,
    /// Sequences of `𝔇(g△e)` ending in 1 strip to members of `𝔇(g)`.
    pub last_one_strips: bool,
    pub orientations: Vec<OrientationReport>,
    pub partition_holds: bool,
}

fn images(
    domain: &SequenceSet,
    u: usize,
    v: usize,
    target: &SequenceSet,
) -> Result<OrientationReport> {
    let n1 = domain.n() + 1;
    let mut a = SequenceSet::new(n1);
    let mut b = SequenceSet::new(n1);
    for c in domain.iter() {
        a.insert(alpha(c))?;
        b.insert(beta(c, u)?)?;
    }
    let mut gamma_errors = 0;
    let mut c_img = SequenceSet::new(n1);
    for c in domain.iter() {
        match gamma(c, u, v, &b) {
            Ok(g) => {
                c_img.insert(g)?;
            }
            Err(_) => gamma_errors += 1,
        }
    }
    let k = domain.len();
    Ok(OrientationReport {
        u,
        v,
        a_size: a.len(),
        b_size: b.len(),
        c_size: c_img.len(),
        injective: a.len() == k && b.len() == k && c_img.len() + gamma_errors == k,
        pairwise_disjoint: a.is_disjoint(&b) && a.is_disjoint(&c_img) && b.is_disjoint(&c_img),
        a_contained: a.is_subset(target),
        b_contained: b.is_subset(target),
        c_contained: c_img.is_subset(target),
        union_equals: a.union(&b).union(&c_img) == *target,
        gamma_errors,
    })
}

/// Computes `α`, `β`, `γ` images of `𝔇(g)` for both orientations of `e` and
/// compares them with `𝔇(g△e)`. `matching_mode` only labels the report: in
/// that setting every check is expected to pass.
pub fn verify_partition(g: &Graph, e: Edge, matching_mode: bool) -> Result<PartitionReport> {
    let extended = triangle_extend(g, e)?;
    let domain = draconian_set(g);
    let target = draconian_set(&extended);
    let orientations = vec![
        images(&domain, e.u(), e.v(), &target)?,
        images(&domain, e.v(), e.u(), &target)?,
    ];
    let last_one_strips = target
        .iter()
        .filter(|d| *d.entries().last().unwrap() == 1)
        .all(|d| {
            let head = d.entries()[..d.len() - 1].to_vec();
            CompositionSequence::new(head).is_ok_and(|c| domain.contains(&c))
        });
    let partition_holds = orientations.iter().all(|o| o.partition_holds());
    Ok(PartitionReport {
        graph: g.descriptor(),
        edge: [e.u(), e.v()],
        matching_mode,
        domain_size: domain.len(),
        extended_size: target.len(),
        last_one_strips,
        orientations,
        partition_holds,
    })
}

/// The sufficient condition for tripling: for some orientation `(u, v)` of
/// `e`, `deg(u) = 2` and either `deg(v) = 2` or the two neighbors of `u` are
/// adjacent.
pub fn triangle_hypotheses_hold(g: &Graph, e: Edge) -> bool {
    let oriented = |u: usize, v: usize| {
        if g.degree(u) != 2 {
            return false;
        }
        if g.degree(v) == 2 {
            return true;
        }
        let others: Vec<usize> = g.neighbors(u).into_iter().filter(|&w| w != v).collect();
        others.len() == 1 && g.has_edge(others[0], v)
    };
    oriented(e.u(), e.v()) || oriented(e.v(), e.u())
}

/// Outcome class of one `(graph, edge)` search task.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RecurrenceClass {
    HypothesesHoldTriples,
    HypothesesFailTriples,
    HypothesesFailNoTriple,
    /// The hypotheses hold but the count does not triple: a counterexample.
    HypothesesHoldNoTriple,
}

impl RecurrenceClass {
    fn of(hypotheses: bool, triples: bool) -> Self {
        match (hypotheses, triples) {
            (true, true) => RecurrenceClass::HypothesesHoldTriples,
            (false, true) => RecurrenceClass::HypothesesFailTriples,
            (false, false) => RecurrenceClass::HypothesesFailNoTriple,
            (true, false) => RecurrenceClass::HypothesesHoldNoTriple,
        }
    }

    pub fn is_forbidden(&self) -> bool {
        *self == RecurrenceClass::HypothesesHoldNoTriple
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub base: u64,
    pub extended: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchRecord {
    pub graph_encoding: String,
    pub n: usize,
    pub edge: [usize; 2],
    pub hypotheses_hold: bool,
    pub triples: bool,
    pub counts: Counts,
    pub class: RecurrenceClass,
}

/// Evaluates the tripling identity for one edge of a connected graph.
pub fn recurrence_record(g: &Graph, e: Edge) -> Result<SearchRecord> {
    if !g.is_connected() {
        return Err(Error::Disconnected(g.descriptor()));
    }
    let extended = triangle_extend(g, e)?;
    let opts = EnumOptions::default();
    let base = count_raw(&doubling(g), opts);
    let ext = count_raw(&doubling(&extended), opts);
    let hypotheses_hold = triangle_hypotheses_hold(g, e);
    let triples = ext == 3 * base;
    Ok(SearchRecord {
        graph_encoding: g.to_graph6(),
        n: g.n(),
        edge: [e.u(), e.v()],
        hypotheses_hold,
        triples,
        counts: Counts {
            base,
            extended: ext,
        },
        class: RecurrenceClass::of(hypotheses_hold, triples),
    })
}

/// Upper-triangle adjacency bits, pair `(i, j)` with `i < j` at index
/// `j(j−1)/2 + i` (0-based), as in graph6.
fn encode(g: &Graph, perm: &[usize]) -> u64 {
    let mut code = 0u64;
    for e in g.edges() {
        let (a, b) = (perm[e.u() - 1], perm[e.v() - 1]);
        let (i, j) = (a.min(b), a.max(b));
        code |= 1 << (j * (j - 1) / 2 + i);
    }
    code
}

/// A canonical relabeling: vertices are grouped by descending degree and
/// the smallest adjacency encoding over all degree-respecting labelings is
/// kept. Isomorphic graphs get identical results. Limited to `n ≤ 11`.
pub fn canonical_form(g: &Graph) -> Graph {
    let n = g.n();
    assert!(n <= 11, "canonical form is limited to 11 vertices");
    let mut order: Vec<usize> = (1..=n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut slot_start = Vec::new();
    for (slot, &v) in order.iter().enumerate() {
        let deg = g.degree(v);
        match classes.last_mut() {
            Some(class) if g.degree(class[0]) == deg => class.push(v),
            _ => {
                classes.push(vec![v]);
                slot_start.push(slot);
            }
        }
    }

    // perm[v - 1] = 0-based slot of v.
    let mut perm = vec![0usize; n];
    let mut best: Option<(u64, Vec<usize>)> = None;

    fn permute_class(
        ci: usize,
        classes: &mut [Vec<usize>],
        slot_start: &[usize],
        perm: &mut [usize],
        g: &Graph,
        best: &mut Option<(u64, Vec<usize>)>,
    ) {
        if ci == classes.len() {
            let code = encode(g, perm);
            if best.as_ref().is_none_or(|(b, _)| code < *b) {
                *best = Some((code, perm.to_vec()));
            }
            return;
        }
        // Heap's algorithm over the members of class `ci`.
        let k = classes[ci].len();
        let mut counters = vec![0usize; k];
        let assign = |class: &[usize], perm: &mut [usize]| {
            for (off, &v) in class.iter().enumerate() {
                perm[v - 1] = slot_start[ci] + off;
            }
        };
        assign(&classes[ci], perm);
        permute_class(ci + 1, classes, slot_start, perm, g, best);
        let mut i = 0;
        while i < k {
            if counters[i] < i {
                if i % 2 == 0 {
                    classes[ci].swap(0, i);
                } else {
                    classes[ci].swap(counters[i], i);
                }
                assign(&classes[ci], perm);
                permute_class(ci + 1, classes, slot_start, perm, g, best);
                counters[i] += 1;
                i = 0;
            } else {
                counters[i] = 0;
                i += 1;
            }
        }
    }

    permute_class(0, &mut classes, &slot_start, &mut perm, g, &mut best);
    let (_, perm) = best.expect("at least one labeling");
    let relabel: Vec<usize> = perm.iter().map(|&slot| slot + 1).collect();
    g.relabel(&relabel)
        .expect("degree-class labeling is a permutation")
}

/// Connected graphs on `1..=n_max` vertices, one per isomorphism class
/// (canonical form), ordered by vertex count then encoding.
///
/// Every connected graph has a vertex whose removal leaves it connected, so
/// extending each connected graph on `n − 1` vertices by a vertex with a
/// nonempty neighborhood reaches every class on `n` vertices.
pub fn connected_graphs_up_to(n_max: usize) -> Vec<Graph> {
    if n_max == 0 {
        return Vec::new();
    }
    let mut level = vec![Graph::empty(1).expect("n = 1 is valid")];
    let mut all = level.clone();
    for n in 2..=n_max {
        let mut seen: HashSet<u64> = HashSet::new();
        let mut next: Vec<(u64, Graph)> = Vec::new();
        let identity: Vec<usize> = (0..n).collect();
        for h in &level {
            for mask in 1u32..1 << (n - 1) {
                let extra = (1..n)
                    .filter(|&v| mask >> (v - 1) & 1 == 1)
                    .map(|v| Edge::new(v, n).expect("distinct endpoints"));
                let g = Graph::new(n, h.edges().copied().chain(extra)).expect("fresh edges");
                let canon = canonical_form(&g);
                let code = encode(&canon, &identity);
                if seen.insert(code) {
                    next.push((code, canon));
                }
            }
        }
        next.sort_by_key(|(code, _)| *code);
        level = next.into_iter().map(|(_, g)| g).collect();
        all.extend(level.iter().cloned());
    }
    all
}

/// Where the search takes its graphs from.
#[derive(Debug, Clone)]
pub enum GraphSource {
    /// Every connected graph up to isomorphism with `n ≤ n_max`.
    Exhaustive,
    /// Caller-supplied graphs; disconnected ones and those above `n_max`
    /// are skipped.
    Given(Vec<Graph>),
}

/// One record per `(graph, edge)`, in task order regardless of `jobs`.
pub fn search_triple_recurrence(
    n_max: usize,
    source: GraphSource,
    jobs: usize,
) -> Vec<SearchRecord> {
    let graphs: Vec<Graph> = match source {
        GraphSource::Exhaustive => connected_graphs_up_to(n_max),
        GraphSource::Given(list) => list
            .into_iter()
            .filter(|g| g.n() <= n_max && g.is_connected())
            .collect(),
    };
    let tasks: Vec<(&Graph, Edge)> = graphs
        .iter()
        .flat_map(|g| g.edges().map(move |&e| (g, e)))
        .collect();
    let run = || -> Vec<SearchRecord> {
        tasks
            .par_iter()
            .map(|(g, e)| recurrence_record(g, *e).expect("connected graph with its own edge"))
            .collect()
    };
    if jobs <= 1 {
        return tasks
            .iter()
            .map(|(g, e)| recurrence_record(g, *e).expect("connected graph with its own edge"))
            .collect();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool.install(run),
        Err(_) => run(),
    }
}
