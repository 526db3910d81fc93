//! Anti-Ramsey numbers for linear forests `kP4 + tP2`.
//!
//! The crate is organised around one object, the edge-colored complete graph
//! [`EdgeColoring`], and the questions one asks about it:
//!
//! - [`formulas`]: closed-form values of `AR(n, tP2)` and `AR(n, kP4 + tP2)`
//!   together with the parameter regions where they are known to hold.
//! - [`detect`]: does a coloring contain a rainbow copy of a linear forest?
//! - [`construct`]: the classical extremal colorings for matchings.
//! - [`exact`]: complete search for `AR(n, F)` on very small hosts.
//! - [`search`]: randomized lower-bound search and a probe for larger hosts.
//! - [`claimcheck`]: exhaustive exact-arithmetic scans of the inequalities
//!   that drive the upper-bound argument for `kP4 + tP2`.

pub mod claimcheck;
pub mod construct;
pub mod detect;
mod error;
pub mod exact;
pub mod formulas;
pub mod model;
pub mod search;

pub use error::{Error, Result};
pub use model::{EdgeColoring, Embedding, LinearForest, SimpleGraph};
