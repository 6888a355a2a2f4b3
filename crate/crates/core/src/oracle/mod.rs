//! Exhaustive maximization of Z₁ over the constrained families, compared
//! against the value the matching construction predicts.
//!
//! Everything is compared in Z₁; cherry counts are derived from
//! `Z₁ = 2·N(S₂) + 2|G|` for display only. Searches run on the current
//! rayon pool, so callers choose the worker count with
//! [`rayon::ThreadPool::install`].

mod bipartite;
pub mod enumerate;
mod general;
mod theorems;

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::constructions::ConstructionError;
use crate::graph::AnyGraphJson;

pub use bipartite::{phi_bipartite, phi_bipartite_right, verify_ak_bipartite};
pub use general::{
    construction_candidates, general_profile, max_cherries_general, verify_ak_general,
    GeneralProfile,
};
pub use theorems::{construction_dominance, verify_theorem, DominanceRow, Theorem, TheoremRow};

/// Default limit on edge slots (bits) a search may enumerate.
pub const DEFAULT_EDGE_CAP: u32 = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("search needs {slots} edge slots, above the cap of {cap}")]
    CapExceeded { slots: u32, cap: u32 },
    #[error("infeasible parameters: {0}")]
    Infeasible(String),
    #[error("{0}")]
    Unsupported(String),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
}

pub(crate) fn check_cap(slots: u64, cap: u32) -> Result<u32, OracleError> {
    if slots > cap as u64 || slots >= 64 {
        return Err(OracleError::CapExceeded {
            slots: slots.min(u32::MAX as u64) as u32,
            cap,
        });
    }
    Ok(slots as u32)
}

/// Search space for the bipartite oracles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// Every `m`-edge subset.
    Full,
    /// Only graphs whose rows are column prefixes of nonincreasing length.
    Shifted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// `ℓ` left vertices of degree at least `k`.
    BipartiteLeft,
    /// `k` right vertices of degree at least `ℓ`.
    BipartiteRight,
    /// `ℓ` independent vertices of degree at least `k` in a general graph.
    General,
}

/// Value of one named construction on a parameter tuple.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CandidateValue {
    pub name: &'static str,
    pub feasible: bool,
    pub z1: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    /// Degrees in nonincreasing order, when the graph could be built.
    #[serde(skip)]
    pub degrees: Option<Vec<usize>>,
}

/// Result of one exhaustive maximization.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleReport {
    pub family: Family,
    pub params: BTreeMap<&'static str, u64>,
    pub mode: Mode,
    /// Maximum Z₁ over the family; `None` when the family is empty.
    pub optimum_z1: Option<u64>,
    pub optimum_cherries: Option<u64>,
    /// Number of optimal graphs in the enumerated space.
    pub optimal_count: u64,
    /// The optimal graph with the lexicographically smallest edge list.
    pub witness: Option<AnyGraphJson>,
    /// Vertices (or rows / columns) certifying the witness's membership.
    pub witness_set: Option<Vec<usize>>,
    pub predicted_z1: Option<u64>,
    pub branch: Option<String>,
    /// At `m = rk`, whether the two case statements predict the same value.
    pub boundary_agreement: Option<bool>,
    /// Whether the predicted graph itself lies in the family.
    pub prediction_feasible: Option<bool>,
    /// `optimum_z1 == predicted_z1`.
    pub matches: Option<bool>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub candidates: Vec<CandidateValue>,
    pub enumerated: u64,
}

pub(crate) fn cherries_from_z1(z1: u64, edges: u64) -> u64 {
    (z1 - 2 * edges) / 2
}
