//! Exact computations with diametrically complete sets in two- and
//! three-dimensional normed spaces.

pub mod cli;
pub mod completeness;
pub mod error;
pub mod geometry;
pub mod hulls;
pub mod lp;
pub mod metrics;
pub mod norms;
pub mod oracle;
pub mod render;
pub mod query;
pub mod sampled;
pub mod scenarios;
pub mod scalar;

pub use error::{Error, Result};
pub use geometry::{Halfspace, Polytope, Vector};
pub use norms::{Ball, DualFunctional, Norm, NormKind};
pub use scalar::{Rational, Scalar};
