//! Geometric cross-check: count lattice points in dilates of the type-PQ
//! adjacency polytope and read the normalized volume off the Ehrhart
//! polynomial.
//!
//! A point `(a, b) ∈ Z^{2n}` lies in `t·P` exactly when nonnegative weights
//! on the allowed pairs `(i, j)` (`i = j` or `ij ∈ E`) have row sums `a`,
//! column sums `b` and total `t`. Integer marginals always admit an integer
//! solution, so this is a max-flow feasibility question. `L(t)` is a
//! polynomial of degree `d = dim P`, and its `d`-th finite difference is
//! `d!` times the leading coefficient, i.e. the normalized volume.

use rayon::prelude::*;
use serde::Serialize;

use crate::composition::WeakCompositions;
use crate::error::{Error, Result};
use crate::flow::Transport;
use crate::graph::Graph;

/// Default vertex cap for [`ehrhart_nvol`].
pub const DEFAULT_EHRHART_CAP: usize = 4;

/// Vertices `(e_i, e_j)` for `i = j` or `ij ∈ E`, ordered by `(i, j)`.
pub fn polytope_vertices(g: &Graph) -> Vec<Vec<i64>> {
    let n = g.n();
    let mut out = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            if i == j || g.has_edge(i, j) {
                let mut v = vec![0i64; 2 * n];
                v[i - 1] = 1;
                v[n + j - 1] = 1;
                out.push(v);
            }
        }
    }
    out
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Exact integer rank of `{v − v₀}` by fraction-free elimination, each row
/// divided by the gcd of its entries after every update.
pub fn affine_dimension(vertices: &[Vec<i64>]) -> usize {
    let Some(first) = vertices.first() else {
        return 0;
    };
    let mut rows: Vec<Vec<i128>> = vertices[1..]
        .iter()
        .map(|v| {
            v.iter()
                .zip(first)
                .map(|(&x, &y)| (x - y) as i128)
                .collect()
        })
        .collect();
    let cols = first.len();
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for row in rows.iter_mut().skip(rank + 1) {
            let factor = row[col];
            if factor == 0 {
                continue;
            }
            let mut g = 0;
            for (x, &y) in row.iter_mut().zip(&pivot) {
                *x = *x * pivot[col] - y * factor;
                g = gcd(g, *x);
            }
            if g > 1 {
                row.iter_mut().for_each(|x| *x /= g);
            }
        }
        rank += 1;
    }
    rank
}

fn allowed_columns(g: &Graph) -> Vec<Vec<usize>> {
    (1..=g.n())
        .map(|i| {
            let mut cols = vec![i - 1];
            cols.extend(g.neighbors(i).into_iter().map(|j| j - 1));
            cols.sort_unstable();
            cols
        })
        .collect()
}

fn feasible(adj: &[Vec<usize>], a: &[u32], b: &[u32]) -> bool {
    let mut t = Transport::new(adj.to_vec(), a.to_vec(), b.to_vec());
    t.saturate()
}

/// Whether `z = (a, b)` lies in the `t`-th dilate.
pub fn is_in_dilate(g: &Graph, t: u64, z: &[i64]) -> Result<bool> {
    let n = g.n();
    if z.len() != 2 * n {
        return Err(Error::LengthMismatch {
            expected: 2 * n,
            found: z.len(),
        });
    }
    if z.iter().any(|&x| x < 0) {
        return Ok(false);
    }
    let (a, b) = z.split_at(n);
    let t = t as i64;
    if a.iter().sum::<i64>() != t || b.iter().sum::<i64>() != t {
        return Ok(false);
    }
    let a: Vec<u32> = a.iter().map(|&x| x as u32).collect();
    let b: Vec<u32> = b.iter().map(|&x| x as u32).collect();
    Ok(feasible(&allowed_columns(g), &a, &b))
}

/// `L(t)` for `t = 0..=t_max`.
pub fn lattice_counts(g: &Graph, t_max: u32) -> Vec<u64> {
    let n = g.n();
    let adj = allowed_columns(g);
    (0..=t_max)
        .map(|t| {
            let rows: Vec<Vec<u32>> = WeakCompositions::new(t, n).collect();
            rows.par_iter()
                .map(|a| {
                    let mut reach = vec![false; n];
                    for (i, &ai) in a.iter().enumerate() {
                        if ai > 0 {
                            adj[i].iter().for_each(|&j| reach[j] = true);
                        }
                    }
                    WeakCompositions::new(t, n)
                        .filter(|b| b.iter().enumerate().all(|(j, &bj)| bj == 0 || reach[j]))
                        .filter(|b| feasible(&adj, a, b))
                        .count() as u64
                })
                .sum()
        })
        .collect()
}

/// `Σ_{k=0..d} (−1)^k C(d, k) L(d − k)`.
pub fn finite_difference(values: &[u64], order: usize) -> i128 {
    let mut binom: i128 = 1;
    let mut acc: i128 = 0;
    for k in 0..=order {
        let term = binom * values[order - k] as i128;
        acc += if k % 2 == 0 { term } else { -term };
        binom = binom * (order - k) as i128 / (k + 1) as i128;
    }
    acc
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EhrhartTable {
    pub dimension: usize,
    /// `L(0), ..., L(d)`.
    pub counts: Vec<u64>,
    pub nvol: u64,
}

pub fn ehrhart_nvol(g: &Graph) -> Result<EhrhartTable> {
    ehrhart_nvol_with_cap(g, DEFAULT_EHRHART_CAP)
}

/// Refuses disconnected graphs and graphs above `cap` vertices.
pub fn ehrhart_nvol_with_cap(g: &Graph, cap: usize) -> Result<EhrhartTable> {
    if !g.is_connected() {
        return Err(Error::Disconnected(format!(
            "{}: the lattice-point oracle is only defined for connected graphs",
            g.descriptor()
        )));
    }
    if g.n() > cap {
        return Err(Error::SizeCap(format!(
            "{} vertices exceeds the Ehrhart cap of {cap}",
            g.n()
        )));
    }
    let dimension = affine_dimension(&polytope_vertices(g));
    let counts = lattice_counts(g, dimension as u32);
    let nvol = finite_difference(&counts, dimension);
    Ok(EhrhartTable {
        dimension,
        counts,
        nvol: u64::try_from(nvol).expect("normalized volume is positive"),
    })
}
