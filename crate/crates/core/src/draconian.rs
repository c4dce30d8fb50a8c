//! Draconian sequences of `D(G)`: membership checks, enumeration and the
//! volume count.
//!
//! A weak composition `c` of `n - 1` into `n` parts is draconian when every
//! nonempty index set `S` satisfies
//!
//! ```text
//! Σ_{i ∈ S} c_i  <  |∪_{i ∈ S} N(i)|
//! ```
//!
//! Two independent deciders are provided. The subset decider walks the
//! subsets of `support(c)` (indices with `c_i = 0` only grow the right-hand
//! side, so they never create a violation). The flow decider uses the fact
//! that the strict inequality holds for every `S` exactly when, for every
//! `i`, the demand vector `c + e_i` can be routed into unit-capacity right
//! vertices (weak Hall condition).

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigUint;
use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;

use crate::bitset::{words_for, VertexSet};
use crate::composition::{CompositionSequence, SequenceSet};
use crate::error::{Error, Result};
use crate::flow::Transport;
use crate::graph::{doubling, BipartiteDouble, Graph};

/// Above this support size the automatic engine switches to the flow check.
pub const AUTO_SUBSET_LIMIT: usize = 20;

/// Which decider backs a check or an enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Engine {
    #[default]
    Auto,
    Subset,
    Flow,
}

impl FromStr for Engine {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(Engine::Auto),
            "subset" => Ok(Engine::Subset),
            "flow" => Ok(Engine::Flow),
            other => Err(Error::Parse {
                line: 0,
                message: format!("unknown engine {other:?} (expected auto, subset or flow)"),
            }),
        }
    }
}

/// Which subsets the subset decider inspects.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SubsetMode {
    /// Nonempty subsets of `support(c)`.
    #[default]
    Support,
    /// All `2^n - 1` nonempty subsets; the literal definition.
    Full,
}

fn check_len(d: &BipartiteDouble, c: &CompositionSequence) -> Result<()> {
    if c.len() != d.n() {
        return Err(Error::LengthMismatch {
            expected: d.n(),
            found: c.len(),
        });
    }
    Ok(())
}

/// `|∪_{i ∈ S} N(i)|` for a nonempty set of 1-based left vertices.
pub fn neighborhood_union_size(d: &BipartiteDouble, s: &[usize]) -> Result<usize> {
    if s.is_empty() {
        return Err(Error::EmptySubset);
    }
    let mut acc = VertexSet::new(d.n());
    for &i in s {
        if i == 0 || i > d.n() {
            return Err(Error::VertexOutOfRange {
                vertex: i,
                n: d.n(),
            });
        }
        acc.union_with(d.neighborhood(i));
    }
    Ok(acc.len())
}

pub fn is_draconian_subset(d: &BipartiteDouble, c: &CompositionSequence) -> Result<bool> {
    is_draconian_subset_with(d, c, SubsetMode::Support)
}

pub fn is_draconian_subset_with(
    d: &BipartiteDouble,
    c: &CompositionSequence,
    mode: SubsetMode,
) -> Result<bool> {
    check_len(d, c)?;
    Ok(match mode {
        SubsetMode::Support => support_subsets_ok(d, c),
        SubsetMode::Full => all_subsets_ok(d, c),
    })
}

fn support_subsets_ok(d: &BipartiteDouble, c: &CompositionSequence) -> bool {
    struct Walk<'a> {
        support: Vec<usize>,
        entries: &'a [u32],
        sets: &'a [VertexSet],
        w: usize,
        // levels[k] holds the running union after k inclusions.
        levels: Vec<u64>,
    }

    impl Walk<'_> {
        fn go(&mut self, pos: usize, depth: usize, sum: u32) -> bool {
            if pos == self.support.len() {
                return true;
            }
            let (i, w) = (self.support[pos], self.w);
            let (head, tail) = self.levels.split_at_mut((depth + 1) * w);
            let cur = &head[depth * w..];
            let mut pop = 0u32;
            for ((next, &a), &b) in tail[..w].iter_mut().zip(cur).zip(self.sets[i].words()) {
                *next = a | b;
                pop += next.count_ones();
            }
            let with = sum + self.entries[i];
            if with >= pop {
                return false;
            }
            self.go(pos + 1, depth + 1, with) && self.go(pos + 1, depth, sum)
        }
    }

    let support = c.support();
    let w = words_for(d.n());
    let levels = vec![0u64; (support.len() + 1) * w];
    Walk {
        support,
        entries: c.entries(),
        sets: d.sets(),
        w,
        levels,
    }
    .go(0, 0, 0)
}

fn all_subsets_ok(d: &BipartiteDouble, c: &CompositionSequence) -> bool {
    let n = d.n();
    assert!(n < 64, "full subset check is limited to n < 64");
    (1u64..1 << n).all(|mask| {
        let mut union = VertexSet::new(n);
        let mut sum = 0u64;
        for i in 0..n {
            if mask >> i & 1 == 1 {
                union.union_with(d.neighborhood(i + 1));
                sum += c.entries()[i] as u64;
            }
        }
        sum < union.len() as u64
    })
}

/// Flow formulation: `c + e_i` routable into unit right capacities for all `i`.
pub fn is_draconian_flow(d: &BipartiteDouble, c: &CompositionSequence) -> Result<bool> {
    check_len(d, c)?;
    Ok(routable_with_each_extra(d, c.entries(), d.n()))
}

/// Routes `supply` and then checks that one more unit fits at each left
/// vertex in `0..upto`. Augmenting from any max flow is enough: the extra
/// unit fits iff a residual path exists from that vertex.
fn routable_with_each_extra(d: &BipartiteDouble, supply: &[u32], upto: usize) -> bool {
    let mut base = Transport::new(d.adjacency(), supply.to_vec(), vec![1; d.n()]);
    if !base.saturate() {
        return false;
    }
    (0..upto).all(|i| {
        let mut t = base.clone();
        t.add_supply(i, 1);
        t.push_unit(i)
    })
}

/// Dispatches on `engine`; `Auto` picks the subset check for small supports.
pub fn is_draconian(d: &BipartiteDouble, c: &CompositionSequence, engine: Engine) -> Result<bool> {
    match engine {
        Engine::Subset => is_draconian_subset(d, c),
        Engine::Flow => is_draconian_flow(d, c),
        Engine::Auto => {
            if c.support().len() <= AUTO_SUBSET_LIMIT {
                is_draconian_subset(d, c)
            } else {
                is_draconian_flow(d, c)
            }
        }
    }
}

/// Options for enumeration and counting.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumOptions {
    pub engine: Engine,
    /// Worker threads; `0` or `1` runs on the calling thread.
    pub jobs: usize,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions {
            engine: Engine::Auto,
            jobs: 1,
        }
    }
}

/// Backtracking over prefixes `c_1..c_k`, pruned with running subset sums.
///
/// The walker keeps `(Σ_S c, ∪_S N)` for every subset `S` of the current
/// prefix support (empty set included). Extending by index `k` gives the
/// largest admissible value directly:
/// `c_k ≤ min_S (|∪_S N ∪ N(k)| − Σ_S c) − 1`.
struct SubsetWalker<'a> {
    n: usize,
    w: usize,
    sets: &'a [VertexSet],
    /// `tail_caps[k] = Σ_{j ≥ k} (|N(j)| − 1)`.
    tail_caps: Vec<u32>,
}

struct WalkState {
    prefix: Vec<u32>,
    sums: Vec<u32>,
    unions: Vec<u64>,
}

impl<'a> SubsetWalker<'a> {
    fn new(d: &'a BipartiteDouble) -> Self {
        let n = d.n();
        let mut tail_caps = vec![0u32; n + 1];
        for k in (0..n).rev() {
            tail_caps[k] = tail_caps[k + 1] + d.sets()[k].len() as u32 - 1;
        }
        SubsetWalker {
            n,
            w: words_for(n),
            sets: d.sets(),
            tail_caps,
        }
    }

    fn first_values(&self) -> std::ops::RangeInclusive<u32> {
        let total = self.n as u32 - 1;
        let hi = (self.sets[0].len() as u32 - 1).min(total);
        let lo = total.saturating_sub(self.tail_caps[1]);
        lo..=hi
    }

    fn walk<F: FnMut(&[u32])>(&self, first: Option<u32>, visit: &mut F) {
        let mut state = WalkState {
            prefix: Vec::with_capacity(self.n),
            sums: vec![0],
            unions: vec![0; self.w],
        };
        self.step(0, self.n as u32 - 1, first, &mut state, visit);
    }

    fn step<F: FnMut(&[u32])>(
        &self,
        k: usize,
        rem: u32,
        only: Option<u32>,
        st: &mut WalkState,
        visit: &mut F,
    ) {
        if k == self.n {
            if rem == 0 {
                visit(&st.prefix);
            }
            return;
        }
        let lo = rem.saturating_sub(self.tail_caps[k + 1]);
        let (lo, cap) = match only {
            Some(v) => (v.max(lo), v.min(rem)),
            None => (lo, rem),
        };
        // Every old subset already satisfies the strict inequality, so a zero
        // entry is always admissible.
        if lo == 0 {
            st.prefix.push(0);
            self.step(k + 1, rem, None, st, visit);
            st.prefix.pop();
        }
        let start = lo.max(1);
        if start > cap {
            return;
        }
        let w = self.w;
        let nk = self.sets[k].words();
        let old = st.sums.len();
        let mut slack = u32::MAX;
        st.unions.reserve(old * w);
        for e in 0..old {
            let mut pop = 0u32;
            for (t, &b) in nk.iter().enumerate() {
                let word = st.unions[e * w + t] | b;
                pop += word.count_ones();
                st.unions.push(word);
            }
            slack = slack.min(pop - st.sums[e]);
        }
        let hi = (slack - 1).min(cap);
        if start <= hi {
            for e in 0..old {
                st.sums.push(st.sums[e] + start);
            }
            for v in start..=hi {
                st.prefix.push(v);
                self.step(k + 1, rem - v, None, st, visit);
                st.prefix.pop();
                for s in &mut st.sums[old..] {
                    *s += 1;
                }
            }
            st.sums.truncate(old);
        }
        st.unions.truncate(old * w);
    }
}

/// Backtracking pruned by the flow decider on prefixes.
///
/// A prefix `c_1..c_k` (remaining entries zero) passes when `prefix + e_k`
/// is routable. Across all positions this covers every subset whose largest
/// support index is `k`.
struct FlowWalker<'a> {
    d: &'a BipartiteDouble,
    n: usize,
}

impl<'a> FlowWalker<'a> {
    fn first_values(&self) -> std::ops::RangeInclusive<u32> {
        let total = self.n as u32 - 1;
        if self.n == 1 {
            0..=0
        } else {
            0..=total
        }
    }

    fn prefix_ok(&self, prefix: &[u32]) -> bool {
        let k = prefix.len() - 1;
        if prefix[k] == 0 {
            return true;
        }
        let mut supply = prefix.to_vec();
        supply.resize(self.n, 0);
        supply[k] += 1;
        let mut t = Transport::new(self.d.adjacency(), supply, vec![1; self.n]);
        t.saturate()
    }

    fn walk<F: FnMut(&[u32])>(&self, first: Option<u32>, visit: &mut F) {
        let mut prefix = Vec::with_capacity(self.n);
        self.step(self.n as u32 - 1, first, &mut prefix, visit);
    }

    fn step<F: FnMut(&[u32])>(
        &self,
        rem: u32,
        only: Option<u32>,
        prefix: &mut Vec<u32>,
        visit: &mut F,
    ) {
        let k = prefix.len();
        if k == self.n {
            if rem == 0 {
                visit(prefix);
            }
            return;
        }
        let (lo, hi) = if k + 1 == self.n {
            (rem, rem)
        } else {
            (0, rem)
        };
        let (lo, hi) = match only {
            Some(v) => (v.max(lo), v.min(hi)),
            None => (lo, hi),
        };
        for v in lo..=hi {
            prefix.push(v);
            let ok = self.prefix_ok(prefix);
            if ok {
                self.step(rem - v, None, prefix, visit);
            }
            prefix.pop();
            if !ok {
                break;
            }
        }
    }
}

enum Walker<'a> {
    Subset(SubsetWalker<'a>),
    Flow(FlowWalker<'a>),
}

impl<'a> Walker<'a> {
    fn new(d: &'a BipartiteDouble, engine: Engine) -> Self {
        match engine {
            Engine::Flow => Walker::Flow(FlowWalker { d, n: d.n() }),
            Engine::Subset => Walker::Subset(SubsetWalker::new(d)),
            Engine::Auto => Walker::new(d, enumeration_engine(d.n(), engine)),
        }
    }

    fn first_values(&self) -> Vec<u32> {
        match self {
            Walker::Subset(w) => w.first_values().collect(),
            Walker::Flow(w) => w.first_values().collect(),
        }
    }

    fn walk<F: FnMut(&[u32])>(&self, first: Option<u32>, visit: &mut F) {
        match self {
            Walker::Subset(w) => w.walk(first, visit),
            Walker::Flow(w) => w.walk(first, visit),
        }
    }
}

fn in_pool<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> T {
    match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

/// The engine an enumeration actually runs. `Auto` keeps the subset walker
/// while every support (at most `n − 1` entries) is within
/// [`AUTO_SUBSET_LIMIT`].
pub fn enumeration_engine(n: usize, engine: Engine) -> Engine {
    match engine {
        Engine::Auto if n.saturating_sub(1) <= AUTO_SUBSET_LIMIT => Engine::Subset,
        Engine::Auto => Engine::Flow,
        other => other,
    }
}

/// Visits the draconian sequences of `d` in lexicographic order.
pub fn for_each_draconian<F: FnMut(&[u32])>(d: &BipartiteDouble, engine: Engine, mut visit: F) {
    Walker::new(d, engine).walk(None, &mut visit);
}

/// All draconian sequences of `d` in lexicographic order.
pub fn enumerate_draconian(d: &BipartiteDouble) -> Vec<CompositionSequence> {
    enumerate_draconian_with(d, EnumOptions::default())
}

/// Enumeration split on the first entry when `jobs > 1`; the per-value
/// chunks are concatenated in order, so output does not depend on `jobs`.
pub fn enumerate_draconian_with(
    d: &BipartiteDouble,
    opts: EnumOptions,
) -> Vec<CompositionSequence> {
    let walker = Walker::new(d, opts.engine);
    let collect_from = |first: Option<u32>| {
        let mut out = Vec::new();
        walker.walk(first, &mut |c: &[u32]| {
            out.push(CompositionSequence::from_vec_unchecked(c.to_vec()))
        });
        out
    };
    if opts.jobs <= 1 {
        return collect_from(None);
    }
    let firsts = walker.first_values();
    let chunks: Vec<Vec<CompositionSequence>> = in_pool(opts.jobs, || {
        firsts.par_iter().map(|&v| collect_from(Some(v))).collect()
    });
    chunks.into_iter().flatten().collect()
}

/// `|𝔇|` of the bipartite graph as given, with no component handling.
pub fn count_raw(d: &BipartiteDouble, opts: EnumOptions) -> u64 {
    let walker = Walker::new(d, opts.engine);
    let count_from = |first: Option<u32>| {
        let mut count = 0u64;
        walker.walk(first, &mut |_| count += 1);
        count
    };
    if opts.jobs <= 1 {
        return count_from(None);
    }
    let firsts = walker.first_values();
    in_pool(opts.jobs, || {
        firsts.par_iter().map(|&v| count_from(Some(v))).sum()
    })
}

/// The draconian sequences of `D(g)` as a [`SequenceSet`].
pub fn draconian_set(g: &Graph) -> SequenceSet {
    let d = doubling(g);
    let mut set = SequenceSet::new(g.n());
    for c in enumerate_draconian(&d) {
        set.insert(c)
            .expect("enumeration yields length-n sequences");
    }
    set
}

/// How a [`VolumeReport`] value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    SubsetEnumeration,
    FlowEnumeration,
    Formula,
    Ehrhart,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::SubsetEnumeration => "subset-enumeration",
            Method::FlowEnumeration => "flow-enumeration",
            Method::Formula => "formula",
            Method::Ehrhart => "ehrhart",
        })
    }
}

/// A volume value together with how it was computed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VolumeReport {
    pub graph: String,
    pub method: Method,
    #[serde(serialize_with = "crate::report::biguint_decimal")]
    pub count: BigUint,
    pub elapsed_ms: Option<u64>,
    pub notes: Vec<String>,
}

/// Normalized volume via draconian counting with default options.
pub fn count_draconian(g: &Graph) -> VolumeReport {
    count_draconian_with(g, EnumOptions::default())
}

/// Connected graphs are counted directly. Disconnected graphs get the
/// product of the counts of their components, each relabeled onto `[1, n_i]`.
pub fn count_draconian_with(g: &Graph, opts: EnumOptions) -> VolumeReport {
    let start = Instant::now();
    let components = g.connected_components();
    let mut notes = Vec::new();
    let count = if components.len() == 1 {
        notes.push("connected".to_string());
        BigUint::from(count_raw(&doubling(g), opts))
    } else {
        notes.push(format!(
            "disconnected: product rule over {} components",
            components.len()
        ));
        if components.iter().any(|c| c.graph.n() == 1) {
            notes.push("isolated vertices contribute factor 1 (|D(K_1)| = 1)".to_string());
        }
        components.iter().fold(BigUint::one(), |acc, c| {
            acc * BigUint::from(count_raw(&doubling(&c.graph), opts))
        })
    };
    VolumeReport {
        graph: g.descriptor(),
        method: match enumeration_engine(g.n(), opts.engine) {
            Engine::Flow => Method::FlowEnumeration,
            _ => Method::SubsetEnumeration,
        },
        count,
        elapsed_ms: Some(start.elapsed().as_millis() as u64),
        notes,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::composition::all_compositions;
    use crate::graph::{complete_graph, delete_path};

    fn seq(v: &[u32]) -> CompositionSequence {
        CompositionSequence::new(v.to_vec()).unwrap()
    }

    #[test]
    fn auto_enumeration_switches_on_size() {
        assert_eq!(enumeration_engine(21, Engine::Auto), Engine::Subset);
        assert_eq!(enumeration_engine(22, Engine::Auto), Engine::Flow);
        assert_eq!(enumeration_engine(30, Engine::Subset), Engine::Subset);
        assert_eq!(enumeration_engine(3, Engine::Flow), Engine::Flow);
    }

    #[test]
    fn union_sizes() {
        let d = doubling(&complete_graph(3).unwrap());
        assert_eq!(neighborhood_union_size(&d, &[1]).unwrap(), 3);
        let d = doubling(&delete_path(4, 2).unwrap());
        assert_eq!(neighborhood_union_size(&d, &[2, 4]).unwrap(), 3);
        assert_eq!(neighborhood_union_size(&d, &[2, 3]).unwrap(), 4);
        assert_eq!(neighborhood_union_size(&d, &[]), Err(Error::EmptySubset));
    }

    #[test]
    fn membership_examples() {
        let k3 = doubling(&complete_graph(3).unwrap());
        let p42 = doubling(&delete_path(4, 2).unwrap());
        let k4_minus = doubling(
            &complete_graph(4)
                .unwrap()
                .without_edges(&[crate::graph::Edge::new(3, 4).unwrap()])
                .unwrap(),
        );
        for mode in [SubsetMode::Support, SubsetMode::Full] {
            assert!(is_draconian_subset_with(&k3, &seq(&[1, 1, 0]), mode).unwrap());
            assert!(!is_draconian_subset_with(&p42, &seq(&[0, 0, 2, 1]), mode).unwrap());
            assert!(!is_draconian_subset_with(&k4_minus, &seq(&[0, 0, 3, 0]), mode).unwrap());
        }
        assert!(is_draconian_flow(&k3, &seq(&[1, 1, 0])).unwrap());
        assert!(!is_draconian_flow(&p42, &seq(&[0, 0, 2, 1])).unwrap());
        assert!(is_draconian_flow(&doubling(&complete_graph(2).unwrap()), &seq(&[1, 0])).unwrap());
        assert!(matches!(
            is_draconian_flow(&k3, &seq(&[1, 0])),
            Err(Error::LengthMismatch {
                expected: 3,
                found: 2
            })
        ));
        assert!(is_draconian_subset(&k3, &seq(&[0, 1])).is_err());
    }

    #[test]
    fn enumeration_examples() {
        let k2 = doubling(&complete_graph(2).unwrap());
        assert_eq!(enumerate_draconian(&k2), vec![seq(&[0, 1]), seq(&[1, 0])]);
        let k3 = doubling(&complete_graph(3).unwrap());
        assert_eq!(
            enumerate_draconian(&k3),
            all_compositions(3).collect::<Vec<_>>()
        );
        let p42 = doubling(&delete_path(4, 2).unwrap());
        let list = enumerate_draconian(&p42);
        assert_eq!(list.len(), 12);
        // c_2 + c_4 ≤ 2 and c_3 ≤ 1 cut K_4's twenty sequences down to twelve.
        assert!(list
            .iter()
            .all(|c| c.get(2) + c.get(4) <= 2 && c.get(3) <= 1));
    }

    #[test]
    fn engines_and_jobs_agree() {
        for g in [complete_graph(5).unwrap(), delete_path(6, 3).unwrap()] {
            let d = doubling(&g);
            let base = enumerate_draconian(&d);
            for engine in [Engine::Subset, Engine::Flow] {
                for jobs in [1, 3] {
                    assert_eq!(
                        enumerate_draconian_with(&d, EnumOptions { engine, jobs }),
                        base
                    );
                    assert_eq!(
                        count_raw(&d, EnumOptions { engine, jobs }),
                        base.len() as u64
                    );
                }
            }
        }
    }

    #[test]
    fn counting_rule() {
        assert_eq!(
            count_draconian(&complete_graph(4).unwrap()).count,
            BigUint::from(20u32)
        );
        let k1 = count_draconian(&complete_graph(1).unwrap());
        assert_eq!(k1.count, BigUint::one());

        let two = Graph::from_pairs(4, &[(1, 2), (3, 4)]).unwrap();
        let report = count_draconian(&two);
        assert_eq!(report.count, BigUint::from(4u32));
        assert!(report.notes[0].starts_with("disconnected: product rule"));
        assert_eq!(count_raw(&doubling(&two), EnumOptions::default()), 0);

        let isolated = Graph::from_pairs(3, &[(1, 2)]).unwrap();
        let report = count_draconian_with(
            &isolated,
            EnumOptions {
                engine: Engine::Flow,
                jobs: 1,
            },
        );
        assert_eq!(report.count, BigUint::from(2u32));
        assert_eq!(report.method, Method::FlowEnumeration);
        assert!(report.notes.iter().any(|n| n.contains("factor 1")));
    }

    #[test]
    fn report_json_shape() {
        let mut r = count_draconian(&complete_graph(3).unwrap());
        r.elapsed_ms = None;
        assert_eq!(
            serde_json::to_string(&r).unwrap(),
            r#"{"graph":"n=3 E=[12,13,23]","method":"subset-enumeration","count":"6","elapsed_ms":null,"notes":["connected"]}"#
        );
    }

    #[test]
    fn engine_parsing() {
        assert_eq!("flow".parse::<Engine>().unwrap(), Engine::Flow);
        assert!("fast".parse::<Engine>().is_err());
    }
}
