//! Exact convex-polytope arithmetic in the plane and in space.

mod halfspace;
mod hull;
mod intersect;
pub mod linalg;
mod polytope;
mod section;
mod vector;

pub use halfspace::Halfspace;
pub use hull::convex_hull;
pub use intersect::intersect_halfspaces;
pub use polytope::Polytope;
pub use section::{lift, plane_section};
pub use vector::Vector;
