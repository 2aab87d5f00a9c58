//! Weighted Hurwitz numbers: exact character, brute-force, tropical and
//! Feynman-graph computations for double and elliptic counts.

pub mod characters;
pub mod error;
pub mod explog;
pub mod oracles;
pub mod exact;
pub mod feynman;
pub mod linalg;
pub mod partition;
pub mod perm;
pub mod poly;
pub mod quasimod;
pub mod tropical;
pub mod weight;

pub use error::{Error, Result};
pub use exact::{format_rational, parse_rational, Rational, TruncSeries, Var};
pub use partition::{Composition, Partition};
pub use weight::WeightFunction;
