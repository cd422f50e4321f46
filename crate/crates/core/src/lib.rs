//! Exact computation of generalized pebbling numbers on priced graphs.
//!
//! A price function assigns every vertex a cost `p(v) >= 2`: a pebbling move
//! removes `p(v)` pebbles from `v` and places one on a neighbor. The crate
//! computes `pi_P^t(G)`, the least `k` such that every configuration of `k`
//! pebbles can be pebbled to cover any `t` chosen vertices, and the weighted
//! cover number `gamma_W(G)`, together with closed forms and bounds for
//! complete graphs, paths and stars, and an audit layer that checks those
//! formulas against the exhaustive oracle.

pub mod audit;
pub mod budget;
pub mod config;
pub mod error;
pub mod exact;
pub mod families;
pub mod formulas;
pub mod graph;
pub mod ratio;
pub mod solver;

pub use budget::{Budget, Meter};
pub use config::{Configuration, PebblingMove, Spec, TargetSet, WeightFunction};
pub use error::{Error, Result};
pub use exact::{CriticalSet, Exact, NumberQuery, NumberResult};
pub use graph::{GraphFile, PricedGraph};
pub use solver::{SolveResult, Solver};
