use num_traits::Signed;
use serde::{Deserialize, Serialize};

use super::{convex_hull, Halfspace, Vector};
use crate::error::{Error, Result};
use crate::scalar::{int, Rational};

/// A bounded convex polytope in R^2 or R^3, possibly lower-dimensional.
///
/// Vertices are irredundant and sorted lexicographically; facets are
/// normalized and sorted. Both representations describe the same set, so
/// structural equality is set equality. Lower-dimensional polytopes carry
/// the equations of their affine hull as pairs of opposite halfspaces.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polytope {
    dim: usize,
    affine_dim: usize,
    vertices: Vec<Vector>,
    facets: Vec<Halfspace>,
}

impl Polytope {
    pub(crate) fn from_parts(
        dim: usize,
        affine_dim: usize,
        vertices: Vec<Vector>,
        facets: Vec<Halfspace>,
    ) -> Self {
        Polytope {
            dim,
            affine_dim,
            vertices,
            facets,
        }
    }

    pub fn from_points(points: &[Vector]) -> Result<Self> {
        convex_hull(points)
    }

    /// Segment `[a, b]`.
    pub fn segment(a: &Vector, b: &Vector) -> Result<Self> {
        convex_hull(&[a.clone(), b.clone()])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn affine_dim(&self) -> usize {
        self.affine_dim
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.affine_dim == self.dim
    }

    /// A single point or empty-interior flat body.
    pub fn is_degenerate(&self) -> bool {
        !self.is_full_dimensional()
    }

    pub fn vertices(&self) -> &[Vector] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Halfspace] {
        &self.facets
    }

    pub fn check_dim(&self, dim: usize) -> Result<()> {
        if self.dim == dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: dim,
                found: self.dim,
            })
        }
    }

    pub fn contains(&self, x: &Vector) -> bool {
        self.facets.iter().all(|h| h.contains(x))
    }

    pub fn contains_polytope(&self, other: &Polytope) -> bool {
        other.vertices.iter().all(|v| self.contains(v))
    }

    /// Set equality; identical to `==` on the canonical form.
    pub fn equal(&self, other: &Polytope) -> bool {
        self == other
    }

    /// True when `x` satisfies at least one facet inequality with equality.
    pub fn on_boundary(&self, x: &Vector) -> bool {
        self.contains(x) && self.facets.iter().any(|h| h.is_tight(x))
    }

    /// Average of the vertex set.
    pub fn vertex_centroid(&self) -> Vector {
        let sum = self
            .vertices
            .iter()
            .fold(Vector::zero(self.dim), |acc, v| &acc + v);
        sum.scale(&Rational::new(1.into(), (self.vertices.len() as i64).into()))
    }

    /// `lambda * P + t`; `lambda` may be negative or zero.
    pub fn scale_translate(&self, lambda: &Rational, t: &Vector) -> Result<Polytope> {
        t.check_dim(self.dim)?;
        let pts: Vec<Vector> = self.vertices.iter().map(|v| &v.scale(lambda) + t).collect();
        convex_hull(&pts)
    }

    pub fn translate(&self, t: &Vector) -> Result<Polytope> {
        self.scale_translate(&int(1), t)
    }

    /// `-P`.
    pub fn reflect(&self) -> Polytope {
        self.scale_translate(&int(-1), &Vector::zero(self.dim))
            .expect("dimensions agree")
    }

    pub fn minkowski_sum(&self, other: &Polytope) -> Result<Polytope> {
        other.check_dim(self.dim)?;
        let pts: Vec<Vector> = self
            .vertices
            .iter()
            .flat_map(|p| other.vertices.iter().map(move |q| p + q))
            .collect();
        convex_hull(&pts)
    }

    /// `lambda * P + (1 - lambda) * Q`.
    pub fn convex_combination(&self, other: &Polytope, lambda: &Rational) -> Result<Polytope> {
        let zero = Vector::zero(self.dim);
        let a = self.scale_translate(lambda, &zero)?;
        let b = other.scale_translate(&(int(1) - lambda), &zero)?;
        a.minkowski_sum(&b)
    }

    /// Difference body `P - P`.
    pub fn difference_body(&self) -> Polytope {
        self.minkowski_sum(&self.reflect()).expect("dimensions agree")
    }

    pub fn is_centrally_symmetric_about_origin(&self) -> bool {
        self.vertices
            .iter()
            .all(|v| self.vertices.binary_search(&-v).is_ok())
    }

    pub fn contains_origin_in_interior(&self) -> bool {
        let origin = Vector::zero(self.dim);
        self.is_full_dimensional() && self.facets.iter().all(|h| h.slack(&origin).is_positive())
    }

    /// Canonical `{"dim", "vertices", "facets"}` form.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "dim": self.dim,
            "vertices": self.vertices.iter().map(Vector::to_json).collect::<Vec<_>>(),
            "facets": self.facets.iter().map(Halfspace::to_json).collect::<Vec<_>>(),
        })
    }

    /// Accepts the canonical form, or any object with a `vertices` list, or a
    /// bare array of points. The hull is recomputed from the vertices; given
    /// facets must agree with it.
    pub fn from_json(v: &serde_json::Value) -> Result<Polytope> {
        let (points, facets) = match v {
            serde_json::Value::Array(_) => (v, None),
            serde_json::Value::Object(map) => (
                map.get("vertices")
                    .ok_or_else(|| Error::Parse("polytope without `vertices`".into()))?,
                map.get("facets"),
            ),
            _ => return Err(Error::Parse(format!("expected a polytope, got {v}"))),
        };
        let pts: Vec<Vector> = points
            .as_array()
            .ok_or_else(|| Error::Parse("`vertices` must be an array".into()))?
            .iter()
            .map(Vector::from_json)
            .collect::<Result<_>>()?;
        let p = convex_hull(&pts)?;
        if let Some(dim) = v.get("dim").and_then(|d| d.as_u64()) {
            p.check_dim(dim as usize)?;
        }
        if let Some(facets) = facets.and_then(|f| f.as_array()) {
            let given: Vec<Halfspace> = facets
                .iter()
                .map(|f| Halfspace::from_json(f).map(|h| h.normalized()))
                .collect::<Result<_>>()?;
            if !given.iter().all(|h| p.facets.contains(h)) || given.len() != p.facets.len() {
                return Err(Error::Parse(
                    "facets do not match the hull of the vertices".into(),
                ));
            }
        }
        Ok(p)
    }
}

impl Serialize for Polytope {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Polytope {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let v = serde_json::Value::deserialize(d)?;
        Polytope::from_json(&v).map_err(D::Error::custom)
    }
}

/// `conv{v1, v2, ...}` with vertices in canonical order.
impl std::fmt::Display for Polytope {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "conv{{")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}
