//! Wide and tight spherical hulls.
//!
//! `η(K)` is the intersection of the balls of radius `diam K` centred at the
//! points of `K`, `τ(K)` the intersection of the balls of the same radius
//! centred at the points of `η(K)`. Since a gauge is convex, both reduce to
//! balls centred at vertices.

use std::collections::BTreeMap;

use serde_json::json;

use crate::error::{Error, Result};
use crate::geometry::{intersect_halfspaces, Halfspace, Polytope, Vector};
use crate::metrics::{diameter, exact_diameter};
use crate::norms::{ball_halfspaces, Norm};
use crate::sampled::BallIntersection;
use crate::scalar::{format_rational, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HullKind {
    Wide,
    Tight,
}

impl HullKind {
    pub fn name(self) -> &'static str {
        match self {
            HullKind::Wide => "wide",
            HullKind::Tight => "tight",
        }
    }
}

/// Which ball produced a facet of the hull.
#[derive(Clone, Debug, PartialEq)]
pub struct FacetSource {
    pub facet: Halfspace,
    /// `None` for the equations of a flat hull.
    pub center: Option<Vector>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct HullResult {
    pub hull: Polytope,
    /// `diam K`, the radius of every ball.
    pub base_diameter: Rational,
    pub kind: HullKind,
    pub provenance: Vec<FacetSource>,
}

impl HullResult {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "kind": self.kind.name(),
            "base_diameter": format_rational(&self.base_diameter),
            "hull": self.hull.to_json(),
            "provenance": self.provenance.iter().map(|p| json!({
                "facet": p.facet.to_json(),
                "center": p.center.as_ref().map(Vector::to_json),
            })).collect::<Vec<_>>(),
        })
    }
}

/// `∩ B(c, radius)` over `centers`, with the center generating each facet.
pub fn ball_intersection(
    norm: &Norm,
    centers: &[Vector],
    radius: &Rational,
) -> Result<(Polytope, Vec<FacetSource>)> {
    let ball = norm.require_polytopal("ball intersection")?;
    let mut origin: BTreeMap<Halfspace, Vector> = BTreeMap::new();
    let mut hs = Vec::with_capacity(centers.len() * ball.facets().len());
    for c in centers {
        norm.check_dim(c.dim())?;
        for h in ball_halfspaces(ball, c, radius) {
            origin.entry(h.normalized()).or_insert_with(|| c.clone());
            hs.push(h);
        }
    }
    let hull = intersect_halfspaces(&hs)?;
    let provenance = hull
        .facets()
        .iter()
        .map(|f| FacetSource {
            facet: f.clone(),
            center: origin.get(f).cloned(),
        })
        .collect();
    Ok((hull, provenance))
}

pub fn wide_spherical_hull(norm: &Norm, body: &Polytope) -> Result<HullResult> {
    norm.require_polytopal("wide spherical hull")?;
    let d = exact_diameter(norm, body)?;
    let (hull, provenance) = ball_intersection(norm, body.vertices(), &d)?;
    Ok(HullResult {
        hull,
        base_diameter: d,
        kind: HullKind::Wide,
        provenance,
    })
}

/// `τ(K)` from an already computed `η(K)`; the radius stays `diam K`.
pub fn tight_from_wide(norm: &Norm, wide: &HullResult) -> Result<HullResult> {
    let (hull, provenance) = ball_intersection(norm, wide.hull.vertices(), &wide.base_diameter)?;
    Ok(HullResult {
        hull,
        base_diameter: wide.base_diameter.clone(),
        kind: HullKind::Tight,
        provenance,
    })
}

pub fn tight_spherical_hull(norm: &Norm, body: &Polytope) -> Result<HullResult> {
    tight_from_wide(norm, &wide_spherical_hull(norm, body)?)
}

/// `η(K)` for any norm as a membership/boundary oracle: the intersection of
/// the balls `B(v, diam K)` over the vertices `v`, seen from the vertex
/// centroid.
pub fn wide_hull_sampled<'a>(norm: &'a Norm, body: &Polytope) -> Result<BallIntersection<'a>> {
    let d = diameter(norm, body)?.value.to_f64();
    if d == 0.0 {
        return Err(Error::Precondition("body is a single point".into()));
    }
    Ok(BallIntersection::new(
        norm,
        body.vertices().iter().map(Vector::to_f64).collect(),
        d,
        body.vertex_centroid().to_f64(),
    ))
}

/// Membership in `τ(K)` given boundary samples of `η(K)`: the farthest
/// point of `η(K)` from `x` lies on its boundary.
pub fn tight_hull_contains_sampled(
    eta: &BallIntersection<'_>,
    eta_boundary: &[Vec<f64>],
    x: &[f64],
    tol: f64,
) -> bool {
    crate::sampled::farthest(eta.norm, eta_boundary, x) <= eta.radius + tol
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn segment(d: usize) -> Polytope {
        let e = Vector::unit(d, 0);
        Polytope::segment(&-&e, &e).unwrap()
    }

    #[test]
    fn l1_segment_hulls_are_the_ball() {
        let l1 = Norm::l1(2).unwrap();
        let eta = wide_spherical_hull(&l1, &segment(2)).unwrap();
        assert_eq!(&eta.hull, l1.ball().unwrap());
        assert_eq!(eta.base_diameter, int(2));
        assert!(eta.provenance.iter().all(|p| p.center.is_some()));
        let tau = tight_spherical_hull(&l1, &segment(2)).unwrap();
        assert_eq!(&tau.hull, l1.ball().unwrap());
    }

    #[test]
    fn linf_segment_hull() {
        let linf = Norm::linf(2).unwrap();
        let eta = wide_spherical_hull(&linf, &segment(2)).unwrap();
        let expected = Polytope::from_points(&[
            Vector::from_ints(&[1, 2]),
            Vector::from_ints(&[-1, 2]),
            Vector::from_ints(&[1, -2]),
            Vector::from_ints(&[-1, -2]),
        ])
        .unwrap();
        assert_eq!(eta.hull, expected);
    }

    #[test]
    fn analytic_norms_are_rejected() {
        let e = Norm::euclidean(2).unwrap();
        assert!(matches!(
            wide_spherical_hull(&e, &segment(2)),
            Err(Error::NeedsPolytopalNorm(_))
        ));
    }

    #[test]
    fn euclidean_tight_hull_membership() {
        let e = Norm::euclidean(2).unwrap();
        let eta = wide_hull_sampled(&e, &segment(2)).unwrap();
        let boundary = eta.boundary(720);
        assert!(tight_hull_contains_sampled(&eta, &boundary, &[0.0, 0.0], 1e-9));
        assert!(!tight_hull_contains_sampled(&eta, &boundary, &[0.0, 1.1], 1e-9));
        assert!(eta.contains(&[0.0, 1.1], 1e-9));
    }
}
