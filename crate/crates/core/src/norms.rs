//! Gauges of centrally symmetric unit balls.
//!
//! Polytopal norms (including ℓ¹ and ℓ∞, which are materialized as their
//! cross-polytope and cube balls) are evaluated exactly as the maximum of the
//! facet functionals. The Euclidean and bicone norms are evaluated in
//! floating point and never produce polytopes.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::geometry::{convex_hull, Halfspace, Polytope, Vector};
use crate::sampled;
use crate::scalar::{format_rational, int, Rational, Scalar, DEFAULT_TOL};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NormKind {
    Polytopal,
    L1,
    L2,
    Linf,
    /// `‖(p, z)‖ = |p|₂ + |z|` on R³; unit ball `conv(disk ∪ {±e₃})`.
    Bicone,
}

impl NormKind {
    pub fn name(self) -> &'static str {
        match self {
            NormKind::Polytopal => "polytopal",
            NormKind::L1 => "l1",
            NormKind::L2 => "l2",
            NormKind::Linf => "linf",
            NormKind::Bicone => "bicone",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Norm {
    dim: usize,
    kind: NormKind,
    ball: Option<Polytope>,
    // f64 copies of the facet normals (offsets are all 1)
    facets_f64: Vec<Vec<f64>>,
}

impl Norm {
    /// Norm whose unit ball is `ball`; the ball must be full-dimensional,
    /// symmetric about the origin and contain it in its interior.
    pub fn polytopal(ball: Polytope) -> Result<Norm> {
        Self::with_ball(NormKind::Polytopal, ball)
    }

    pub fn from_ball_vertices(points: &[Vector]) -> Result<Norm> {
        Self::polytopal(convex_hull(points)?)
    }

    /// The ball `conv{±p}` over the given points.
    pub fn from_symmetric_points(points: &[Vector]) -> Result<Norm> {
        let both: Vec<Vector> = points.iter().flat_map(|p| [p.clone(), -p]).collect();
        Self::from_ball_vertices(&both)
    }

    fn with_ball(kind: NormKind, ball: Polytope) -> Result<Norm> {
        if !ball.is_full_dimensional() {
            return Err(Error::InvalidNorm("unit ball is not full-dimensional".into()));
        }
        if !ball.contains_origin_in_interior() {
            return Err(Error::InvalidNorm("origin is not interior to the unit ball".into()));
        }
        if !ball.is_centrally_symmetric_about_origin() {
            return Err(Error::InvalidNorm("unit ball is not centrally symmetric".into()));
        }
        debug_assert!(ball.facets().iter().all(|h| h.offset().is_one()));
        let facets_f64 = ball.facets().iter().map(|h| h.normal().to_f64()).collect();
        Ok(Norm {
            dim: ball.dim(),
            kind,
            ball: Some(ball),
            facets_f64,
        })
    }

    fn check_supported(dim: usize) -> Result<()> {
        if dim == 2 || dim == 3 {
            Ok(())
        } else {
            Err(Error::UnsupportedDimension(dim))
        }
    }

    pub fn l1(dim: usize) -> Result<Norm> {
        Self::check_supported(dim)?;
        let pts: Vec<Vector> = (0..dim)
            .flat_map(|k| [Vector::unit(dim, k), -&Vector::unit(dim, k)])
            .collect();
        Self::with_ball(NormKind::L1, convex_hull(&pts)?)
    }

    pub fn linf(dim: usize) -> Result<Norm> {
        Self::check_supported(dim)?;
        let pts: Vec<Vector> = (0..1usize << dim)
            .map(|mask| {
                Vector::new(
                    (0..dim)
                        .map(|k| if mask >> k & 1 == 1 { int(1) } else { int(-1) })
                        .collect(),
                )
            })
            .collect();
        Self::with_ball(NormKind::Linf, convex_hull(&pts)?)
    }

    pub fn euclidean(dim: usize) -> Result<Norm> {
        Self::check_supported(dim)?;
        Ok(Norm {
            dim,
            kind: NormKind::L2,
            ball: None,
            facets_f64: Vec::new(),
        })
    }

    pub fn bicone() -> Norm {
        Norm {
            dim: 3,
            kind: NormKind::Bicone,
            ball: None,
            facets_f64: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kind(&self) -> NormKind {
        self.kind
    }

    pub fn is_polytopal(&self) -> bool {
        self.ball.is_some()
    }

    /// The unit ball for polytopal norms.
    pub fn ball(&self) -> Option<&Polytope> {
        self.ball.as_ref()
    }

    pub fn require_polytopal(&self, op: &'static str) -> Result<&Polytope> {
        self.ball.as_ref().ok_or(Error::NeedsPolytopalNorm(op))
    }

    pub fn check_dim(&self, dim: usize) -> Result<()> {
        if dim == self.dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.dim,
                found: dim,
            })
        }
    }

    /// Exact gauge; `None` for analytic norms.
    pub fn eval_exact(&self, x: &Vector) -> Option<Rational> {
        let ball = self.ball.as_ref()?;
        let best = ball
            .facets()
            .iter()
            .map(|h| h.normal().dot(x))
            .max()
            .expect("a full-dimensional ball has facets");
        Some(best)
    }

    pub fn eval_f64(&self, x: &[f64]) -> f64 {
        match self.kind {
            NormKind::L2 => x.iter().map(|c| c * c).sum::<f64>().sqrt(),
            NormKind::Bicone => x[0].hypot(x[1]) + x[2].abs(),
            _ => self
                .facets_f64
                .iter()
                .map(|a| a.iter().zip(x).map(|(p, q)| p * q).sum::<f64>())
                .fold(f64::NEG_INFINITY, f64::max),
        }
    }

    /// `‖x‖`: exact for polytopal norms, a double otherwise.
    pub fn eval(&self, x: &Vector) -> Result<Scalar> {
        self.check_dim(x.dim())?;
        Ok(match self.eval_exact(x) {
            Some(r) => Scalar::Exact(r),
            None => Scalar::Float(self.eval_f64(&x.to_f64())),
        })
    }

    pub fn distance(&self, x: &Vector, y: &Vector) -> Result<Scalar> {
        self.eval(&(x - y))
    }

    /// Exact dual norm `sup{<a, x> : ‖x‖ <= 1}` for polytopal norms.
    pub fn dual_eval_exact(&self, a: &Vector) -> Option<Rational> {
        let ball = self.ball.as_ref()?;
        ball.vertices().iter().map(|v| a.dot(v)).max()
    }

    pub fn dual_eval_f64(&self, a: &[f64]) -> f64 {
        match self.kind {
            NormKind::L2 => a.iter().map(|c| c * c).sum::<f64>().sqrt(),
            NormKind::Bicone => a[0].hypot(a[1]).max(a[2].abs()),
            _ => self
                .ball
                .as_ref()
                .expect("polytopal")
                .vertices()
                .iter()
                .map(|v| v.to_f64().iter().zip(a).map(|(p, q)| p * q).sum::<f64>())
                .fold(f64::NEG_INFINITY, f64::max),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match (self.kind, &self.ball) {
            (NormKind::Polytopal, Some(ball)) => {
                serde_json::json!({"kind": "polytopal", "ball": ball.to_json()})
            }
            (kind, _) => serde_json::json!({"kind": kind.name(), "dim": self.dim}),
        }
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Norm> {
        let kind = v
            .get("kind")
            .and_then(|k| k.as_str())
            .ok_or_else(|| Error::Parse("norm without `kind`".into()))?;
        let dim = || -> Result<usize> {
            v.get("dim")
                .and_then(|d| d.as_u64())
                .map(|d| d as usize)
                .ok_or_else(|| Error::Parse(format!("norm `{kind}` needs `dim`")))
        };
        match kind {
            "polytopal" => {
                let ball = v
                    .get("ball")
                    .ok_or_else(|| Error::Parse("polytopal norm without `ball`".into()))?;
                Norm::polytopal(Polytope::from_json(ball)?)
            }
            "l1" => Norm::l1(dim()?),
            "linf" => Norm::linf(dim()?),
            "l2" => Norm::euclidean(dim()?),
            "bicone" => {
                if v.get("dim").and_then(|d| d.as_u64()).is_some_and(|d| d != 3) {
                    return Err(Error::InvalidNorm("the bicone norm lives in R^3".into()));
                }
                Ok(Norm::bicone())
            }
            other => Err(Error::Parse(format!("unknown norm kind `{other}`"))),
        }
    }
}

impl fmt::Display for Norm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.ball {
            Some(b) if self.kind == NormKind::Polytopal => {
                write!(f, "polytopal norm in R^{} ({} vertices)", self.dim, b.vertices().len())
            }
            _ => write!(f, "{} norm in R^{}", self.kind.name(), self.dim),
        }
    }
}

/// The closed ball `B(center, radius)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Ball {
    pub center: Vector,
    pub radius: Rational,
    /// `radius * unit_ball + center` for polytopal norms.
    pub materialized: Option<Polytope>,
}

impl Ball {
    pub fn contains(&self, norm: &Norm, x: &Vector) -> Result<bool> {
        let d = norm.distance(x, &self.center)?;
        Ok(d <= Scalar::Exact(self.radius.clone()))
    }
}

pub fn make_ball(norm: &Norm, center: &Vector, radius: &Rational) -> Result<Ball> {
    norm.check_dim(center.dim())?;
    if radius.is_negative() {
        return Err(Error::NegativeRadius(format_rational(radius)));
    }
    let materialized = match norm.ball() {
        Some(b) => Some(b.scale_translate(radius, center)?),
        None => None,
    };
    Ok(Ball {
        center: center.clone(),
        radius: radius.clone(),
        materialized,
    })
}

/// Facet inequalities of `B(center, radius)` under a polytopal norm.
pub fn ball_halfspaces(unit_ball: &Polytope, center: &Vector, radius: &Rational) -> Vec<Halfspace> {
    unit_ball
        .facets()
        .iter()
        .map(|h| {
            Halfspace::new(h.normal().clone(), radius + h.normal().dot(center))
                .expect("unit-ball normals are nonzero")
        })
        .collect()
}

/// Coefficients of a linear functional.
#[derive(Clone, Debug, PartialEq)]
pub enum Coefficients {
    Exact(Vector),
    Float(Vec<f64>),
}

/// The functional `x -> <a, x>`.
#[derive(Clone, Debug, PartialEq)]
pub struct DualFunctional {
    pub coeffs: Coefficients,
    /// `sup{<a, x> : x in unit ball} = 1`.
    pub dual_unit: bool,
}

impl DualFunctional {
    pub fn exact(norm: &Norm, a: Vector) -> DualFunctional {
        let dual_unit = match norm.dual_eval_exact(&a) {
            Some(d) => d.is_one(),
            None => (norm.dual_eval_f64(&a.to_f64()) - 1.0).abs() <= DEFAULT_TOL,
        };
        DualFunctional {
            coeffs: Coefficients::Exact(a),
            dual_unit,
        }
    }

    pub fn float(norm: &Norm, a: Vec<f64>) -> DualFunctional {
        let dual_unit = (norm.dual_eval_f64(&a) - 1.0).abs() <= DEFAULT_TOL;
        DualFunctional {
            coeffs: Coefficients::Float(a),
            dual_unit,
        }
    }

    pub fn apply(&self, x: &Vector) -> Scalar {
        match &self.coeffs {
            Coefficients::Exact(a) => Scalar::Exact(a.dot(x)),
            Coefficients::Float(a) => Scalar::Float(self.apply_f64_with(a, &x.to_f64())),
        }
    }

    pub fn apply_f64(&self, x: &[f64]) -> f64 {
        match &self.coeffs {
            Coefficients::Exact(a) => self.apply_f64_with(&a.to_f64(), x),
            Coefficients::Float(a) => self.apply_f64_with(a, x),
        }
    }

    fn apply_f64_with(&self, a: &[f64], x: &[f64]) -> f64 {
        a.iter().zip(x).map(|(p, q)| p * q).sum()
    }

    pub fn dual_norm(&self, norm: &Norm) -> Scalar {
        match &self.coeffs {
            Coefficients::Exact(a) => match norm.dual_eval_exact(a) {
                Some(d) => Scalar::Exact(d),
                None => Scalar::Float(norm.dual_eval_f64(&a.to_f64())),
            },
            Coefficients::Float(a) => Scalar::Float(norm.dual_eval_f64(a)),
        }
    }

    pub fn coefficients_f64(&self) -> Vec<f64> {
        match &self.coeffs {
            Coefficients::Exact(a) => a.to_f64(),
            Coefficients::Float(a) => a.clone(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match &self.coeffs {
            Coefficients::Exact(a) => a.to_json(),
            Coefficients::Float(a) => serde_json::json!(a),
        }
    }
}

/// Default sample count for analytic duals in the plane.
pub const PLANAR_DIRECTIONS: usize = 720;
/// Default sample count for analytic duals in space.
pub const SPATIAL_DIRECTIONS: usize = 2562;

/// Extreme points of the dual ball for polytopal norms (the facet normals of
/// the unit ball); a deterministic dual-unit sample of `samples` directions
/// for analytic norms.
pub fn dual_unit_functionals(norm: &Norm, samples: Option<usize>) -> Vec<DualFunctional> {
    if let Some(ball) = norm.ball() {
        return ball
            .facets()
            .iter()
            .map(|h| DualFunctional {
                coeffs: Coefficients::Exact(h.normal().clone()),
                dual_unit: true,
            })
            .collect();
    }
    let count = samples.unwrap_or(if norm.dim() == 2 {
        PLANAR_DIRECTIONS
    } else {
        SPATIAL_DIRECTIONS
    });
    sampled::directions(norm.dim(), count)
        .into_iter()
        .map(|d| {
            let s = norm.dual_eval_f64(&d);
            DualFunctional {
                coeffs: Coefficients::Float(d.iter().map(|c| c / s).collect()),
                dual_unit: true,
            }
        })
        .collect()
}

/// Whether the unit vector `u` is an extreme point of the unit ball.
pub fn is_unit_ball_vertex(norm: &Norm, u: &Vector) -> Result<bool> {
    let len = norm.eval(u)?;
    if !len.approx_eq(&Scalar::Exact(Rational::one()), DEFAULT_TOL) {
        return Err(Error::NotUnitVector(len.to_string()));
    }
    Ok(match norm.kind() {
        NormKind::L2 => true,
        NormKind::Bicone => {
            let x = u.to_f64();
            x[2].abs() <= DEFAULT_TOL || x[0].hypot(x[1]) <= DEFAULT_TOL
        }
        _ => norm
            .ball()
            .expect("polytopal")
            .vertices()
            .binary_search(u)
            .is_ok(),
    })
}

/// Named unit balls used throughout the corpus.
pub mod catalog {
    use super::*;
    use crate::scalar::frac;

    /// Bipyramid over the lattice hexagon `conv{±(1,0), ±(0,1), ±(1,-1)}`
    /// (an affine image of the regular hexagon) with apexes `±e₃`.
    pub fn hexagonal_bipyramid() -> Norm {
        let mut pts: Vec<Vector> = [[1, 0, 0], [0, 1, 0], [1, -1, 0]]
            .iter()
            .flat_map(|c| {
                let v = Vector::from_ints(c);
                [-&v, v]
            })
            .collect();
        pts.push(Vector::from_ints(&[0, 0, 1]));
        pts.push(Vector::from_ints(&[0, 0, -1]));
        Norm::from_ball_vertices(&pts).expect("valid ball")
    }

    /// Icosahedron `conv{cyclic permutations of (0, ±1, ±phi)}` with a
    /// rational stand-in for the golden ratio.
    pub fn icosahedron(phi: &Rational) -> Norm {
        Norm::from_ball_vertices(&icosahedron_vertices(phi)).expect("valid ball")
    }

    pub fn icosahedron_vertices(phi: &Rational) -> Vec<Vector> {
        let mut pts = Vec::with_capacity(12);
        for s1 in [1, -1] {
            for s2 in [1, -1] {
                let a = int(s1);
                let b = phi * int(s2);
                let z = Rational::zero();
                pts.push(Vector::new(vec![z.clone(), a.clone(), b.clone()]));
                pts.push(Vector::new(vec![a.clone(), b.clone(), z.clone()]));
                pts.push(Vector::new(vec![b, z, a]));
            }
        }
        pts
    }

    /// `1618/1000`, the default golden-ratio stand-in.
    pub fn golden_ratio_approx() -> Rational {
        frac(1618, 1000)
    }

    /// Icosahedral ball with the decimal golden-ratio approximation.
    pub fn icosahedron_default() -> Norm {
        icosahedron(&golden_ratio_approx())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::frac;

    #[test]
    fn l1_and_linf_values() {
        let l1 = Norm::l1(2).unwrap();
        assert_eq!(l1.eval(&Vector::from_ints(&[1, 1])).unwrap(), Scalar::Exact(int(2)));
        let linf = Norm::linf(3).unwrap();
        assert_eq!(
            linf.eval(&Vector::from_ints(&[-3, 2, 1])).unwrap(),
            Scalar::Exact(int(3))
        );
    }

    #[test]
    fn bicone_value() {
        let b = Norm::bicone();
        let v = b.eval(&Vector::from_ints(&[3, 4, 2])).unwrap();
        assert!(v.approx_eq(&Scalar::Float(7.0), 1e-12));
    }

    #[test]
    fn balls() {
        let l1 = Norm::l1(2).unwrap();
        let b = make_ball(&l1, &Vector::from_ints(&[1, 0]), &int(2)).unwrap();
        let m = b.materialized.as_ref().unwrap();
        assert!(m.vertices().contains(&Vector::from_ints(&[3, 0])));
        assert!(m.vertices().contains(&Vector::from_ints(&[1, -2])));
        assert!(matches!(
            make_ball(&l1, &Vector::from_ints(&[0, 0]), &int(-1)),
            Err(Error::NegativeRadius(_))
        ));
        let e = make_ball(&Norm::euclidean(2).unwrap(), &Vector::zero(2), &int(1)).unwrap();
        assert!(e.materialized.is_none());
        assert!(e.contains(&Norm::euclidean(2).unwrap(), &Vector::parse(&["0.6", "0.8"]).unwrap()).unwrap());
    }

    #[test]
    fn dual_functionals_of_l1_and_linf() {
        let f = dual_unit_functionals(&Norm::l1(2).unwrap(), None);
        let mut got: Vec<Vector> = f
            .iter()
            .map(|d| match &d.coeffs {
                Coefficients::Exact(a) => a.clone(),
                _ => unreachable!(),
            })
            .collect();
        got.sort();
        assert_eq!(
            got,
            vec![
                Vector::from_ints(&[-1, -1]),
                Vector::from_ints(&[-1, 1]),
                Vector::from_ints(&[1, -1]),
                Vector::from_ints(&[1, 1])
            ]
        );
        assert_eq!(dual_unit_functionals(&Norm::linf(3).unwrap(), None).len(), 6);
        let e = dual_unit_functionals(&Norm::euclidean(2).unwrap(), Some(8));
        assert_eq!(e.len(), 8);
        let a = e[1].coefficients_f64();
        assert!((a[0] - (std::f64::consts::PI / 4.0).cos()).abs() < 1e-12);
    }

    #[test]
    fn unit_ball_vertices() {
        let l1 = Norm::l1(2).unwrap();
        assert!(is_unit_ball_vertex(&l1, &Vector::from_ints(&[1, 0])).unwrap());
        let mid = Vector::new(vec![frac(1, 2), frac(1, 2)]);
        assert!(!is_unit_ball_vertex(&l1, &mid).unwrap());
        assert!(matches!(
            is_unit_ball_vertex(&l1, &Vector::from_ints(&[1, 1])),
            Err(Error::NotUnitVector(_))
        ));
        assert!(is_unit_ball_vertex(&Norm::bicone(), &Vector::from_ints(&[0, 0, 1])).unwrap());
        assert!(!is_unit_ball_vertex(&Norm::bicone(), &Vector::parse(&["0.5", "0", "0.5"]).unwrap()).unwrap());
    }

    #[test]
    fn rejects_asymmetric_balls() {
        let tri = convex_hull(&[
            Vector::from_ints(&[1, 0]),
            Vector::from_ints(&[0, 1]),
            Vector::from_ints(&[-1, -1]),
        ])
        .unwrap();
        assert!(matches!(Norm::polytopal(tri), Err(Error::InvalidNorm(_))));
    }

    #[test]
    fn catalog_balls() {
        let hex = catalog::hexagonal_bipyramid();
        assert_eq!(hex.ball().unwrap().vertices().len(), 8);
        assert_eq!(hex.ball().unwrap().facets().len(), 12);
        let ico = catalog::icosahedron_default();
        assert_eq!(ico.ball().unwrap().vertices().len(), 12);
        assert_eq!(ico.ball().unwrap().facets().len(), 20);
    }
}
