//! Weak compositions of `n - 1` into `n` parts and canonically ordered sets
//! of them.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A length-`n` vector of nonnegative integers summing to `n - 1`.
///
/// Ordering is lexicographic on the entries.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CompositionSequence {
    entries: Vec<u32>,
}

impl CompositionSequence {
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::LengthMismatch {
                expected: 1,
                found: 0,
            });
        }
        let expected = entries.len() as u64 - 1;
        let found: u64 = entries.iter().map(|&c| c as u64).sum();
        if found != expected {
            return Err(Error::BadSum { expected, found });
        }
        Ok(CompositionSequence { entries })
    }

    pub(crate) fn from_vec_unchecked(entries: Vec<u32>) -> Self {
        debug_assert_eq!(
            entries.iter().map(|&c| c as usize).sum::<usize>() + 1,
            entries.len()
        );
        CompositionSequence { entries }
    }

    /// Builds `Σ coeff · e_index` in dimension `n` (indices 1-based). Terms on
    /// the same index accumulate.
    pub fn from_terms(n: usize, terms: &[(usize, u32)]) -> Result<Self> {
        let mut entries = vec![0u32; n];
        for &(index, coeff) in terms {
            if index == 0 || index > n {
                return Err(Error::VertexOutOfRange { vertex: index, n });
            }
            entries[index - 1] += coeff;
        }
        CompositionSequence::new(entries)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    /// Entry at the 1-based index `i`.
    pub fn get(&self, i: usize) -> u32 {
        self.entries[i - 1]
    }

    /// 0-based indices of the nonzero entries.
    pub fn support(&self) -> Vec<usize> {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn into_entries(self) -> Vec<u32> {
        self.entries
    }
}

impl fmt::Display for CompositionSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in self.entries.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl Serialize for CompositionSequence {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.entries.serialize(s)
    }
}

/// All weak compositions of `total` into `parts` parts, in lexicographic order.
#[derive(Debug, Clone)]
pub struct WeakCompositions {
    current: Option<Vec<u32>>,
}

impl WeakCompositions {
    pub fn new(total: u32, parts: usize) -> Self {
        let current = if parts == 0 {
            (total == 0).then(Vec::new)
        } else {
            let mut first = vec![0; parts];
            first[parts - 1] = total;
            Some(first)
        };
        WeakCompositions { current }
    }
}

impl Iterator for WeakCompositions {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        let out = self.current.take()?;
        let k = out.len();
        if k > 0 {
            // Rightmost nonzero entry past position 0; bump its left neighbor.
            if let Some(p) = (1..k).rev().find(|&j| out[j] > 0) {
                let mut next = out.clone();
                let moved = next[p];
                next[p - 1] += 1;
                next[p] = 0;
                next[k - 1] = moved - 1;
                self.current = Some(next);
            }
        }
        Some(out)
    }
}

/// Every weak composition of `n - 1` into `n` parts as a
/// [`CompositionSequence`].
pub fn all_compositions(n: usize) -> impl Iterator<Item = CompositionSequence> {
    WeakCompositions::new(n.saturating_sub(1) as u32, n)
        .map(CompositionSequence::from_vec_unchecked)
}

/// A duplicate-free, lexicographically ordered set of sequences of a fixed
/// length `n`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SequenceSet {
    n: usize,
    members: BTreeSet<CompositionSequence>,
}

impl SequenceSet {
    pub fn new(n: usize) -> Self {
        SequenceSet {
            n,
            members: BTreeSet::new(),
        }
    }

    pub fn from_iter_checked(
        n: usize,
        items: impl IntoIterator<Item = CompositionSequence>,
    ) -> Result<Self> {
        let mut set = SequenceSet::new(n);
        for c in items {
            set.insert(c)?;
        }
        Ok(set)
    }

    /// Inserts `c`; returns whether it was new.
    pub fn insert(&mut self, c: CompositionSequence) -> Result<bool> {
        if c.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                found: c.len(),
            });
        }
        Ok(self.members.insert(c))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, c: &CompositionSequence) -> bool {
        self.members.contains(c)
    }

    pub fn iter(&self) -> impl Iterator<Item = &CompositionSequence> + '_ {
        self.members.iter()
    }

    pub fn union(&self, other: &SequenceSet) -> SequenceSet {
        SequenceSet {
            n: self.n,
            members: self.members.union(&other.members).cloned().collect(),
        }
    }

    pub fn intersection(&self, other: &SequenceSet) -> SequenceSet {
        SequenceSet {
            n: self.n,
            members: self.members.intersection(&other.members).cloned().collect(),
        }
    }

    pub fn difference(&self, other: &SequenceSet) -> SequenceSet {
        SequenceSet {
            n: self.n,
            members: self.members.difference(&other.members).cloned().collect(),
        }
    }

    pub fn symmetric_difference(&self, other: &SequenceSet) -> SequenceSet {
        SequenceSet {
            n: self.n,
            members: self
                .members
                .symmetric_difference(&other.members)
                .cloned()
                .collect(),
        }
    }

    pub fn is_subset(&self, other: &SequenceSet) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn is_disjoint(&self, other: &SequenceSet) -> bool {
        self.members.is_disjoint(&other.members)
    }
}

impl IntoIterator for SequenceSet {
    type Item = CompositionSequence;
    type IntoIter = std::collections::btree_set::IntoIter<CompositionSequence>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.into_iter()
    }
}

impl Serialize for SequenceSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.members.iter())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn binomial(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn sequence_validation() {
        assert!(CompositionSequence::new(vec![1, 1, 0]).is_ok());
        assert!(matches!(
            CompositionSequence::new(vec![1, 1, 1]),
            Err(Error::BadSum {
                expected: 2,
                found: 3
            })
        ));
        assert!(CompositionSequence::new(vec![]).is_err());
        let c = CompositionSequence::from_terms(4, &[(3, 2), (1, 1)]).unwrap();
        assert_eq!(c.entries(), &[1, 0, 2, 0]);
        assert_eq!(c.to_string(), "1 0 2 0");
        assert_eq!(c.support(), vec![0, 2]);
    }

    #[test]
    fn small_composition_lists() {
        let all: Vec<Vec<u32>> = WeakCompositions::new(2, 2).collect();
        assert_eq!(all, vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
        assert_eq!(WeakCompositions::new(0, 3).count(), 1);
        assert_eq!(
            WeakCompositions::new(3, 1).collect::<Vec<_>>(),
            vec![vec![3]]
        );
        assert_eq!(WeakCompositions::new(0, 0).count(), 1);
        assert_eq!(WeakCompositions::new(1, 0).count(), 0);
    }

    proptest! {
        #[test]
        fn compositions_are_lex_sorted_and_complete(total in 0u32..7, parts in 1usize..6) {
            let all: Vec<Vec<u32>> = WeakCompositions::new(total, parts).collect();
            prop_assert_eq!(all.len() as u64, binomial(total as u64 + parts as u64 - 1, parts as u64 - 1));
            prop_assert!(all.windows(2).all(|w| w[0] < w[1]));
            prop_assert!(all.iter().all(|c| c.len() == parts && c.iter().sum::<u32>() == total));
        }
    }

    #[test]
    fn set_algebra() {
        let s = |v: &[u32]| CompositionSequence::new(v.to_vec()).unwrap();
        let a = SequenceSet::from_iter_checked(2, [s(&[0, 1]), s(&[1, 0])]).unwrap();
        let b = SequenceSet::from_iter_checked(2, [s(&[1, 0])]).unwrap();
        assert_eq!(a.difference(&b).len(), 1);
        assert_eq!(a.symmetric_difference(&b).len(), 1);
        assert!(b.is_subset(&a));
        let mut c = SequenceSet::new(3);
        assert!(c.insert(s(&[1, 0])).is_err());
        assert_eq!(serde_json::to_string(&a).unwrap(), "[[0,1],[1,0]]");
    }
}
