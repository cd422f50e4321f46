//! Generators for the three graph families with closed forms.
//!
//! Member indexing follows each family's own convention: path `n` is `P_n`
//! on `n` vertices, complete `n` is `K_n`, and star `n` is `S_n` with `n`
//! leaves (vertex 0 is the center, so it has `n + 1` vertices).

use std::fmt;
use std::str::FromStr;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{PricedGraph, STANDARD_PRICE};

#[derive(
    Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, ValueEnum,
)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Path,
    Complete,
    Star,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::Path, Family::Complete, Family::Star];

    pub fn name(self) -> &'static str {
        match self {
            Family::Path => "path",
            Family::Complete => "complete",
            Family::Star => "star",
        }
    }

    /// Number of vertices of member `n`.
    pub fn vertex_count(self, n: usize) -> usize {
        match self {
            Family::Path | Family::Complete => n,
            Family::Star => n + 1,
        }
    }

    /// Smallest member index whose ratio `pi^(t+1) / pi^t` is defined.
    pub fn first_member(self, t: usize) -> usize {
        match self {
            Family::Path | Family::Complete => t + 1,
            Family::Star => t.max(2),
        }
    }

    /// Member `n` with the standard price everywhere.
    pub fn member(self, n: usize) -> Result<PricedGraph> {
        self.member_with_prices(n, None)
    }

    /// Member `n`, optionally with explicit prices (one per vertex, the star
    /// center first).
    pub fn member_with_prices(self, n: usize, prices: Option<&[u64]>) -> Result<PricedGraph> {
        let vertices = self.vertex_count(n);
        let edges = match self {
            Family::Path => path_edges(n),
            Family::Complete => complete_edges(n),
            Family::Star => star_edges(n),
        };
        if vertices == 0 || (self == Family::Star && n == 0) {
            return Err(Error::Domain(format!("{self} member {n} is empty")));
        }
        match prices {
            Some(p) => PricedGraph::new(vertices, &edges, p),
            None => PricedGraph::new(vertices, &edges, &vec![STANDARD_PRICE; vertices]),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Domain(format!("unknown family {s:?}")))
    }
}

pub fn path_edges(n: usize) -> Vec<(usize, usize)> {
    (1..n).map(|i| (i - 1, i)).collect()
}

pub fn complete_edges(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect()
}

pub fn star_edges(leaves: usize) -> Vec<(usize, usize)> {
    (1..=leaves).map(|i| (0, i)).collect()
}

pub fn cycle_edges(n: usize) -> Vec<(usize, usize)> {
    let mut edges = path_edges(n);
    if n >= 3 {
        edges.push((0, n - 1));
    }
    edges
}
