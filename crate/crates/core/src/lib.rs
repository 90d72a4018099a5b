//! Exact detection of extremal and constant scalar curvature Sasaki rays on
//! joins fibred over products of a cscK manifold with an admissible ruled
//! surface.
//!
//! Every certification runs on exact rationals: profiles are solved and
//! verified symbolically, positivity is decided with Sturm chains, and roots
//! are isolated with certified intervals.

pub mod error;
pub mod cli;
pub mod conescan;
pub mod cscs;
pub mod exactmath;
pub mod joinsetup;
pub mod profile;
pub mod twins;

pub use error::{Error, Result};
