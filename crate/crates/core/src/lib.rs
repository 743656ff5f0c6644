//! Enumeration and maximum search for k-defective cliques.
//!
//! A vertex set is a `k`-defective clique when at most `k` of its vertex
//! pairs are non-adjacent. [`solve::enumerate`] lists every maximal one
//! with at least `q` vertices; [`maximum::find_maximum`] returns a largest
//! one.

pub mod bnb;
pub mod decomp;
pub mod error;
pub mod generators;
pub mod graph;
pub mod maximum;
pub mod oracle;
pub mod order;
pub mod reduce;
pub mod sink;
pub mod solve;

pub use error::{Error, Result};
pub use graph::{Graph, VertexSet};
pub use maximum::{find_maximum, MaxOptions, MaxOutcome, Solution};
pub use sink::{SearchStats, SolutionSink};
pub use solve::{enumerate, EnumOptions, EnumOutcome};
