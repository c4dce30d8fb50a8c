//! Named graph families with canonical labelings, as accepted on the
//! command line: `complete:N`, `matching-triangles:N,M`, `path-deleted:N,M`
//! and `cycle-deleted:N,M`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::Serialize;

use crate::closed_forms::{
    nvol_complete, nvol_cycle_deleted, nvol_matching_triangles, nvol_path_deleted, PathFormula,
};
use crate::error::{Error, Result};
use crate::graph::{
    complete_graph, delete_cycle, delete_path, triangle_extend_set, Graph, Matching,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyKind {
    Complete,
    MatchingTriangles,
    PathDeleted,
    CycleDeleted,
}

impl FamilyKind {
    pub fn name(&self) -> &'static str {
        match self {
            FamilyKind::Complete => "complete",
            FamilyKind::MatchingTriangles => "matching-triangles",
            FamilyKind::PathDeleted => "path-deleted",
            FamilyKind::CycleDeleted => "cycle-deleted",
        }
    }

    /// Largest `m` the family admits for a given `n`.
    pub fn max_m(&self, n: usize) -> usize {
        match self {
            FamilyKind::Complete => 0,
            FamilyKind::MatchingTriangles => n / 2,
            FamilyKind::PathDeleted => n.saturating_sub(1),
            FamilyKind::CycleDeleted => n,
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "complete" => Ok(FamilyKind::Complete),
            "matching-triangles" => Ok(FamilyKind::MatchingTriangles),
            "path-deleted" => Ok(FamilyKind::PathDeleted),
            "cycle-deleted" => Ok(FamilyKind::CycleDeleted),
            other => Err(Error::Parse {
                line: 0,
                message: format!(
                    "unknown family {other:?} (expected complete, matching-triangles, path-deleted or cycle-deleted)"
                ),
            }),
        }
    }
}

/// A family member `(kind, n, m)`; `m` is 0 for complete graphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Family {
    pub kind: FamilyKind,
    pub n: usize,
    pub m: usize,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            FamilyKind::Complete => write!(f, "complete:{}", self.n),
            kind => write!(f, "{kind}:{},{}", self.n, self.m),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: String| Error::Parse {
            line: 0,
            message: msg,
        };
        let (name, args) = s
            .split_once(':')
            .ok_or_else(|| bad(format!("family spec {s:?} must look like NAME:ARGS")))?;
        let kind: FamilyKind = name.parse()?;
        let nums = args
            .split(',')
            .map(|a| a.trim().parse::<usize>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| bad(format!("bad numbers in family spec {s:?}")))?;
        match (kind, nums.as_slice()) {
            (FamilyKind::Complete, &[n]) => Ok(Family { kind, n, m: 0 }),
            (FamilyKind::Complete, _) => Err(bad(format!("{s:?}: complete takes one argument N"))),
            (_, &[n, m]) => Ok(Family { kind, n, m }),
            _ => Err(bad(format!("{s:?}: {name} takes two arguments N,M"))),
        }
    }
}

/// Either a single value or the two readings of the path formula.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum FormulaValue {
    Single {
        #[serde(serialize_with = "crate::report::bigint_decimal")]
        value: BigInt,
    },
    Path(PathFormula),
}

impl FormulaValue {
    /// Labels of the readings equal to `count`.
    pub fn matching_readings(&self, count: &BigInt) -> Vec<&'static str> {
        match self {
            FormulaValue::Single { value } => {
                if value == count {
                    vec!["value"]
                } else {
                    vec![]
                }
            }
            FormulaValue::Path(p) => {
                let mut out = Vec::new();
                if &p.as_printed == count {
                    out.push("as_printed");
                }
                if &p.grouped == count {
                    out.push("grouped");
                }
                out
            }
        }
    }
}

impl fmt::Display for FormulaValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormulaValue::Single { value } => write!(f, "{value}"),
            FormulaValue::Path(p) => write!(f, "as_printed {} grouped {}", p.as_printed, p.grouped),
        }
    }
}

impl Family {
    pub fn new(kind: FamilyKind, n: usize, m: usize) -> Self {
        Family { kind, n, m }
    }

    /// The canonically labeled graph.
    pub fn graph(&self) -> Result<Graph> {
        match self.kind {
            FamilyKind::Complete => complete_graph(self.n),
            FamilyKind::MatchingTriangles => {
                let matching = Matching::canonical(self.n, self.m)?;
                triangle_extend_set(&complete_graph(self.n)?, matching.edges())
            }
            FamilyKind::PathDeleted => delete_path(self.n, self.m),
            FamilyKind::CycleDeleted => delete_cycle(self.n, self.m),
        }
    }

    /// Number of vertices of [`Family::graph`], without building it.
    pub fn vertex_count(&self) -> usize {
        match self.kind {
            FamilyKind::MatchingTriangles => self.n + self.m,
            _ => self.n,
        }
    }

    pub fn formula(&self) -> Result<FormulaValue> {
        let (n, m) = (self.n as u64, self.m as u64);
        Ok(match self.kind {
            FamilyKind::Complete => FormulaValue::Single {
                value: nvol_complete(n)?.into(),
            },
            FamilyKind::MatchingTriangles => FormulaValue::Single {
                value: nvol_matching_triangles(n, m)?.into(),
            },
            FamilyKind::PathDeleted => FormulaValue::Path(nvol_path_deleted(n, m)?),
            FamilyKind::CycleDeleted => FormulaValue::Single {
                value: nvol_cycle_deleted(n, m)?,
            },
        })
    }
}
