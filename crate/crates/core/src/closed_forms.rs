//! Closed-form normalized volumes for the graph families with known
//! formulas. Everything here is exact integer arithmetic.

use num_bigint::{BigInt, BigUint};
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};

/// `C(n, k)` by the multiplicative formula; every partial product is itself
/// a binomial coefficient, so each division is exact.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::ZERO;
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `C(2(n−1), n−1)`, the normalized volume for `K_n`.
pub fn nvol_complete(n: u64) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::Hypothesis("complete graph needs N >= 1".into()));
    }
    Ok(binomial(2 * (n - 1), n - 1))
}

/// `3^m · C(2(n−1), n−1)` for `K_n △ M` with `M` an `m`-edge matching.
pub fn nvol_matching_triangles(n: u64, m: u64) -> Result<BigUint> {
    if n < 2 || m > n / 2 {
        return Err(Error::Hypothesis(format!(
            "matching-triangles needs N >= 2 and 0 <= M <= floor(N/2), got N={n}, M={m}"
        )));
    }
    Ok(BigUint::from(3u32).pow(m as u32) * nvol_complete(n)?)
}

/// The two ways of reading `C − (2N − 4)(M − 1) + 4`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PathFormula {
    /// `C − (2n−4)(m−1) + 4`, left to right.
    #[serde(serialize_with = "crate::report::bigint_decimal")]
    pub as_printed: BigInt,
    /// `C − ((2n−4)(m−1) + 4)`.
    #[serde(serialize_with = "crate::report::bigint_decimal")]
    pub grouped: BigInt,
}

/// `K_n` minus a length-`m` path, under both readings.
pub fn nvol_path_deleted(n: u64, m: u64) -> Result<PathFormula> {
    if n < 4 || m >= n {
        return Err(Error::Hypothesis(format!(
            "path-deleted needs N >= 4 and 0 <= M < N, got N={n}, M={m}"
        )));
    }
    let c = BigInt::from(nvol_complete(n)?);
    let term = BigInt::from(2 * n as i64 - 4) * BigInt::from(m as i64 - 1);
    Ok(PathFormula {
        as_printed: &c - &term + 4,
        grouped: c - (term + 4),
    })
}

/// `K_n` minus an `m`-cycle: `C − 2m(n−2)`, or `C − 2(n+1)(n−2)` when `m = 4`.
pub fn nvol_cycle_deleted(n: u64, m: u64) -> Result<BigInt> {
    if n < 5 || m > n || m == 1 || m == 2 {
        return Err(Error::Hypothesis(format!(
            "cycle-deleted needs N >= 5 and 0 <= M <= N with M not in {{1, 2}}, got N={n}, M={m}"
        )));
    }
    let c = BigInt::from(nvol_complete(n)?);
    let (n, m) = (n as i64, m as i64);
    Ok(if m == 4 {
        c - 2 * (n + 1) * (n - 2)
    } else {
        c - 2 * m * (n - 2)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pascal(n: usize, k: usize) -> BigUint {
        let mut row = vec![BigUint::one()];
        for _ in 0..n {
            let mut next = vec![BigUint::one(); row.len() + 1];
            for j in 1..row.len() {
                next[j] = &row[j - 1] + &row[j];
            }
            row = next;
        }
        row.get(k).cloned().unwrap_or_default()
    }

    #[test]
    fn complete_values() {
        assert_eq!(nvol_complete(2).unwrap(), 2u32.into());
        assert_eq!(nvol_complete(4).unwrap(), 20u32.into());
        assert_eq!(nvol_complete(7).unwrap(), 924u32.into());
        assert_eq!(nvol_complete(1).unwrap(), 1u32.into());
        assert!(nvol_complete(0).is_err());
    }

    #[test]
    fn no_wraparound_past_64_bits() {
        // C(64, 32) = 1832624140942590534 still fits; C(68, 34) does not.
        assert_eq!(nvol_complete(33).unwrap(), pascal(64, 32));
        assert_eq!(nvol_complete(35).unwrap(), pascal(68, 34));
        assert!(nvol_complete(35).unwrap() > BigUint::from(u64::MAX));
    }

    #[test]
    fn matching_values() {
        assert_eq!(nvol_matching_triangles(2, 1).unwrap(), 6u32.into());
        assert_eq!(
            nvol_matching_triangles(2, 1).unwrap(),
            nvol_complete(3).unwrap()
        );
        assert_eq!(nvol_matching_triangles(4, 2).unwrap(), 180u32.into());
        assert!(nvol_matching_triangles(4, 3).is_err());
        assert!(nvol_matching_triangles(1, 0).is_err());
    }

    #[test]
    fn path_values() {
        let f = nvol_path_deleted(5, 2).unwrap();
        assert_eq!((f.as_printed, f.grouped), (68.into(), 60.into()));
        let f = nvol_path_deleted(4, 2).unwrap();
        assert_eq!((f.as_printed, f.grouped), (20.into(), 12.into()));
        assert!(nvol_path_deleted(4, 4).is_err());
        assert!(nvol_path_deleted(3, 0).is_err());
    }

    #[test]
    fn cycle_values() {
        assert_eq!(nvol_cycle_deleted(5, 5).unwrap(), 40.into());
        assert_eq!(nvol_cycle_deleted(5, 3).unwrap(), 52.into());
        assert_eq!(nvol_cycle_deleted(5, 4).unwrap(), 34.into());
        assert!(nvol_cycle_deleted(5, 1).is_err());
        assert!(nvol_cycle_deleted(5, 2).is_err());
        assert!(nvol_cycle_deleted(5, 6).is_err());
    }

    proptest! {
        #[test]
        fn binomial_matches_pascal(n in 0usize..60, k in 0usize..62) {
            prop_assert_eq!(binomial(n as u64, k as u64), pascal(n, k));
        }

        #[test]
        fn empty_families_reduce_to_complete(n in 5u64..40) {
            let c = nvol_complete(n).unwrap();
            prop_assert_eq!(nvol_matching_triangles(n, 0).unwrap(), c.clone());
            prop_assert_eq!(nvol_cycle_deleted(n, 0).unwrap(), BigInt::from(c));
        }
    }
}
