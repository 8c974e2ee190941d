//! Extremal triangle-free graphs with bounded maximum degree and matching number.
//!
//! The crate answers one question: how many edges can a triangle-free graph
//! have when its maximum degree is at most `d` and its matching number is at
//! most `m`?  It provides
//!
//! * [`graph`] and [`matching`]: a bit-row graph type, Edmonds' blossom
//!   matching, and the predicates used to certify every witness;
//! * [`io`]: graph6, DOT and JSON adjacency-list formats;
//! * [`formulas`]: the closed-form values `Z(d)`, `f_GEN`, `f△`, `g△`, `h△`
//!   tagged with proof status;
//! * [`knapsack`]: the component-multiplicity knapsack solved exactly by DP;
//! * [`constructions`]: C5 blow-ups and the witness families built from them;
//! * [`oracle`]: isomorph-free exhaustive enumeration used as ground truth.

pub mod constructions;
pub mod error;
pub mod formulas;
pub mod graph;
pub mod io;
pub mod knapsack;
pub mod matching;
pub mod oracle;
pub mod verify;

pub use error::{Error, Result};
pub use graph::Graph;
pub use matching::Matching;
