//! Explicit sets of sequences lost when a path or a cycle is deleted from
//! `K_n`, and checks of the set identities they are supposed to satisfy.
//!
//! Path deletion uses the labeling `K_n \ {{i, i+1} : n−m ≤ i ≤ n−1}`.
//! Cycle deletion uses `v_i = n − m + 1 + i` for `i = 0..m`, with indices
//! on `v` taken mod `m`.
//!
//! Constructions always deduplicate. The cardinalities asserted for these
//! sets are evaluated separately and reported next to the real sizes.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::composition::{CompositionSequence, SequenceSet};
use crate::draconian::draconian_set;
use crate::error::{Error, Result};
use crate::graph::{complete_graph, cycle_vertices, delete_cycle, delete_path};

/// Largest `n` the identity checks will enumerate unless told otherwise.
pub const DEFAULT_VERIFY_CAP: usize = 9;

fn check_path_params(n: usize, m: usize) -> Result<()> {
    if n < 4 || m < 2 || m >= n {
        return Err(Error::Hypothesis(format!(
            "path exception sets need N >= 4 and 2 <= M < N, got N={n}, M={m}"
        )));
    }
    Ok(())
}

fn check_cycle_params(n: usize, m: usize) -> Result<()> {
    if n < 5 || m < 3 || m > n {
        return Err(Error::Hypothesis(format!(
            "cycle exception sets need N >= 5 and 3 <= M <= N, got N={n}, M={m}"
        )));
    }
    Ok(())
}

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        return Err(Error::SizeCap(format!(
            "N={n} exceeds enumeration cap {cap}"
        )));
    }
    Ok(())
}

fn collect(n: usize, items: impl IntoIterator<Item = Vec<(usize, u32)>>) -> Result<SequenceSet> {
    let mut set = SequenceSet::new(n);
    for terms in items {
        set.insert(CompositionSequence::from_terms(n, &terms)?)?;
    }
    Ok(set)
}

/// `P₁ = { e_i + (n−2) e_j : i ∈ [1, n], j ∈ [n−m+1, n−1] }`.
pub fn build_p1(n: usize, m: usize) -> Result<SequenceSet> {
    check_path_params(n, m)?;
    let big = n as u32 - 2;
    collect(
        n,
        (n - m + 1..n).flat_map(|j| (1..=n).map(move |i| vec![(i, 1), (j, big)])),
    )
}

/// `P₂ = { r e_i + (n−1−r) e_{i+2} : 0 ≤ r ≤ n−1, n−m ≤ i ≤ n−2 }`.
pub fn build_p2(n: usize, m: usize) -> Result<SequenceSet> {
    check_path_params(n, m)?;
    let total = n as u32 - 1;
    collect(
        n,
        (n - m..=n - 2).flat_map(|i| (0..=total).map(move |r| vec![(i, r), (i + 2, total - r)])),
    )
}

/// `X = { (n−2) e_{v_i} + e_j : 0 ≤ i < m, j ∈ [1, n] }`.
pub fn build_x(n: usize, m: usize) -> Result<SequenceSet> {
    check_cycle_params(n, m)?;
    let vs = cycle_vertices(n, m);
    let big = n as u32 - 2;
    collect(
        n,
        vs.iter()
            .flat_map(|&v| (1..=n).map(move |j| vec![(v, big), (j, 1)])),
    )
}

/// `Y = { r e_{v_i} + (n−1−r) e_{v_{i+2}} : 0 ≤ i < m, 2 ≤ r ≤ n−3 }`.
pub fn build_y(n: usize, m: usize) -> Result<SequenceSet> {
    check_cycle_params(n, m)?;
    let vs = cycle_vertices(n, m);
    let total = n as u32 - 1;
    let vs = &vs;
    collect(
        n,
        (0..m).flat_map(|i| {
            (2..=n as u32 - 3).map(move |r| vec![(vs[i], r), (vs[(i + 2) % m], total - r)])
        }),
    )
}

/// `Z = { r e_{v_i} + (n−2−r) e_{v_{i+2}} + e_s : 1 ≤ r ≤ n−3, s ∉ {v_i, v_{i+2}} }`,
/// defined for `m = 4` only.
pub fn build_z(n: usize, m: usize) -> Result<SequenceSet> {
    check_cycle_params(n, m)?;
    if m != 4 {
        return Err(Error::Hypothesis(format!(
            "the Z exception set exists only for M = 4, got M={m}"
        )));
    }
    let vs = cycle_vertices(n, m);
    let vs = &vs;
    let rest = n as u32 - 2;
    collect(
        n,
        (0..m).flat_map(|i| {
            let (a, b) = (vs[i], vs[(i + 2) % m]);
            (1..=n as u32 - 3).flat_map(move |r| {
                (1..=n)
                    .filter(move |&s| s != a && s != b)
                    .map(move |s| vec![(a, r), (b, rest - r), (s, 1)])
            })
        }),
    )
}

/// Asserted vs. actual sizes, keyed by set name.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Default)]
pub struct Cardinalities {
    pub claimed: BTreeMap<String, i64>,
    pub actual: BTreeMap<String, usize>,
}

impl Cardinalities {
    fn claim(&mut self, name: &str, value: i64) {
        self.claimed.insert(name.to_string(), value);
    }

    fn actual(&mut self, name: &str, value: usize) {
        self.actual.insert(name.to_string(), value);
    }

    /// Names whose claimed and actual sizes are both present and differ.
    pub fn mismatches(&self) -> Vec<String> {
        self.claimed
            .iter()
            .filter(|(k, &v)| self.actual.get(*k).is_some_and(|&a| a as i64 != v))
            .map(|(k, _)| k.clone())
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Params {
    pub n: usize,
    pub m: usize,
}

/// Result of comparing the enumerated exceptions with the constructed sets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub params: Params,
    pub identity_holds: bool,
    /// Pairwise disjointness of the constructed pieces (always true for the
    /// two path pieces, which are not claimed disjoint).
    pub pieces_disjoint: bool,
    /// `|𝔇(K_n)|` and `|𝔇(G)|` from enumeration.
    pub complete_count: usize,
    pub deleted_count: usize,
    pub cardinalities: Cardinalities,
    pub symmetric_difference: SequenceSet,
}

impl IdentityReport {
    /// `|𝔇(G)| = |𝔇(K_n)| − |exceptions|` with the constructed union.
    pub fn count_matches_complement(&self) -> bool {
        self.cardinalities
            .actual
            .get("union")
            .is_some_and(|&u| self.complete_count == self.deleted_count + u)
    }
}

/// `𝔇(K_n) ∖ 𝔇(K_n ∖ E(P))` against `P₁ ∪ P₂`.
pub fn verify_path_identity(n: usize, m: usize, cap: usize) -> Result<IdentityReport> {
    check_path_params(n, m)?;
    check_cap(n, cap)?;
    let complete = draconian_set(&complete_graph(n)?);
    let deleted = draconian_set(&delete_path(n, m)?);
    let exceptions = complete.difference(&deleted);
    let p1 = build_p1(n, m)?;
    let p2 = build_p2(n, m)?;
    let union = p1.union(&p2);
    let both = p1.intersection(&p2);

    let (ni, mi) = (n as i64, m as i64);
    let mut card = Cardinalities::default();
    card.claim("P1", ni * (mi - 1));
    card.claim("P2", ni * (mi - 1) - (mi - 3));
    card.claim("P1&P2", 2 * (mi - 1) + (mi - 2));
    card.actual("P1", p1.len());
    card.actual("P2", p2.len());
    card.actual("P1&P2", both.len());
    card.actual("union", union.len());
    card.actual("exceptions", exceptions.len());

    let symmetric_difference = exceptions.symmetric_difference(&union);
    Ok(IdentityReport {
        params: Params { n, m },
        identity_holds: symmetric_difference.is_empty(),
        pieces_disjoint: true,
        complete_count: complete.len(),
        deleted_count: deleted.len(),
        cardinalities: card,
        symmetric_difference,
    })
}

/// `𝔇(K_n) ∖ 𝔇(K_n ∖ E(C_m))` against `X ∪ Y`, plus `Z` when `m = 4`.
pub fn verify_cycle_identity(n: usize, m: usize, cap: usize) -> Result<IdentityReport> {
    check_cycle_params(n, m)?;
    check_cap(n, cap)?;
    let complete = draconian_set(&complete_graph(n)?);
    let deleted = draconian_set(&delete_cycle(n, m)?);
    let exceptions = complete.difference(&deleted);
    let x = build_x(n, m)?;
    let y = build_y(n, m)?;
    let z = if m == 4 {
        build_z(n, m)?
    } else {
        SequenceSet::new(n)
    };
    let disjoint = x.is_disjoint(&y) && x.is_disjoint(&z) && y.is_disjoint(&z);
    let union = x.union(&y).union(&z);

    let (ni, mi) = (n as i64, m as i64);
    let mut card = Cardinalities::default();
    card.claim("X", mi * ni);
    card.claim("Y", mi * (ni - 4));
    card.actual("X", x.len());
    card.actual("Y", y.len());
    if m == 4 {
        card.claim("Z", 2 * (ni - 3) * (ni - 2));
        card.actual("Z", z.len());
    }
    card.actual("union", union.len());
    card.actual("exceptions", exceptions.len());

    let symmetric_difference = exceptions.symmetric_difference(&union);
    Ok(IdentityReport {
        params: Params { n, m },
        identity_holds: symmetric_difference.is_empty(),
        pieces_disjoint: disjoint,
        complete_count: complete.len(),
        deleted_count: deleted.len(),
        cardinalities: card,
        symmetric_difference,
    })
}
