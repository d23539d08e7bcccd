//! Diameter, widths, circumradius and the modulus of convexity.

use num_traits::{One, Signed, Zero};
use serde_json::json;

use crate::error::{Error, Result};
use crate::geometry::{Polytope, Vector};
use crate::lp::{LinearProgram, LpOutcome};
use crate::norms::{dual_unit_functionals, DualFunctional, Norm};
use crate::sampled;
use crate::scalar::{format_rational, int, to_f64, Rational, Scalar};

/// Sample counts used when the modulus of convexity is estimated.
pub const MODULUS_ANGLES: usize = 720;
pub const MODULUS_PLANES: usize = 64;

#[derive(Clone, Debug, PartialEq)]
pub struct Diameter {
    pub value: Scalar,
    /// Lexicographically smallest vertex pair attaining the value.
    pub witness: (Vector, Vector),
    /// Set when the body is a single point.
    pub trivial: bool,
}

impl Diameter {
    pub fn to_json(&self) -> serde_json::Value {
        let mut v = json!({
            "diam": self.value.to_json(),
            "witness": [self.witness.0.to_json(), self.witness.1.to_json()],
        });
        if self.trivial {
            v["warning"] = json!("body is a single point");
        }
        v
    }
}

pub fn diameter(norm: &Norm, body: &Polytope) -> Result<Diameter> {
    norm.check_dim(body.dim())?;
    let vs = body.vertices();
    let mut best = Scalar::zero();
    let mut witness = (vs[0].clone(), vs[0].clone());
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            let d = norm.distance(&vs[i], &vs[j])?;
            if d > best {
                best = d;
                witness = (vs[i].clone(), vs[j].clone());
            }
        }
    }
    Ok(Diameter {
        value: best,
        witness,
        trivial: vs.len() == 1,
    })
}

/// Diameter as an exact rational; polytopal norms only.
pub fn exact_diameter(norm: &Norm, body: &Polytope) -> Result<Rational> {
    norm.require_polytopal("exact diameter")?;
    let d = diameter(norm, body)?;
    Ok(d.value.as_exact().expect("polytopal norms are exact").clone())
}

/// `(max <a, v>, argmax, min <a, v>, argmin)` over the vertices.
fn extent(f: &DualFunctional, body: &Polytope) -> (Scalar, Vector, Scalar, Vector) {
    let vs = body.vertices();
    let mut hi = (f.apply(&vs[0]), vs[0].clone());
    let mut lo = hi.clone();
    for v in &vs[1..] {
        let x = f.apply(v);
        if x > hi.0 {
            hi = (x.clone(), v.clone());
        }
        if x < lo.0 {
            lo = (x, v.clone());
        }
    }
    (hi.0, hi.1, lo.0, lo.1)
}

/// `sup f(K) - inf f(K)` for a dual-unit `f`.
pub fn width(norm: &Norm, body: &Polytope, f: &DualFunctional) -> Result<Scalar> {
    norm.check_dim(body.dim())?;
    if !f.dual_unit {
        return Err(Error::NotDualUnit(f.dual_norm(norm).to_string()));
    }
    let (hi, _, lo, _) = extent(f, body);
    Ok(hi - lo)
}

#[derive(Clone, Debug)]
pub struct WidthReport {
    /// Widths along the extreme dual functionals; their maximum is the
    /// diameter.
    pub widths: Vec<(DualFunctional, Scalar)>,
    pub min_width: Scalar,
    pub max_width: Scalar,
    pub diameter: Diameter,
    /// A dual-unit functional attaining `min_width`.
    pub min_functional: DualFunctional,
    /// Vertices attaining `max f` and `min f` for that functional.
    pub min_width_witness: (Vector, Vector),
    /// `max_width == diameter` (exactly, or within `tol` for analytic norms).
    pub consistent: bool,
}

impl WidthReport {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "diam": self.diameter.value.to_json(),
            "diam_witness": [self.diameter.witness.0.to_json(), self.diameter.witness.1.to_json()],
            "min_width": self.min_width.to_json(),
            "max_width": self.max_width.to_json(),
            "min_width_functional": self.min_functional.to_json(),
            "min_width_witness": [self.min_width_witness.0.to_json(), self.min_width_witness.1.to_json()],
            "consistent": self.consistent,
            "widths": self.widths.iter().map(|(f, w)| json!({"f": f.to_json(), "width": w.to_json()})).collect::<Vec<_>>(),
        })
    }
}

/// Least width over all dual-unit functionals with a functional attaining
/// it.
///
/// The width is convex in `f` but the dual unit sphere is not convex, so
/// the minimum need not sit at an extreme dual functional. The sphere is the
/// union of the dual-ball facets `{f : <f, u> = 1, <f, u'> <= 1}`, one per
/// vertex `u` of the unit ball, and on each facet the minimum is an LP.
/// Analytic norms minimize over the sampled functionals.
pub fn min_width(norm: &Norm, body: &Polytope) -> Result<(Scalar, DualFunctional)> {
    norm.check_dim(body.dim())?;
    let Some(ball) = norm.ball() else {
        let mut best: Option<(Scalar, DualFunctional)> = None;
        for f in dual_unit_functionals(norm, None) {
            let (hi, _, lo, _) = extent(&f, body);
            let w = hi - lo;
            if best.as_ref().is_none_or(|(b, _)| w < *b) {
                best = Some((w, f));
            }
        }
        return Ok(best.expect("samples are nonempty"));
    };
    let dim = norm.dim();
    let vs = body.vertices();
    let zero = Vector::zero(dim);
    let mut best: Option<(Rational, Vector)> = None;
    // w_f = w_{-f}: half of the dual facets suffice
    for u in ball.vertices().iter().filter(|u| **u > zero) {
        let mut lp = LinearProgram::new(dim + 1);
        for k in 0..=dim {
            lp.set_free(k);
        }
        let mut obj = vec![Rational::zero(); dim + 1];
        obj[dim] = int(-1);
        lp.maximize(obj);
        for (i, p) in vs.iter().enumerate() {
            for (j, q) in vs.iter().enumerate() {
                if i != j {
                    let mut row = (p - q).0;
                    row.push(int(-1));
                    lp.add_le(row, Rational::zero());
                }
            }
        }
        for w in ball.vertices() {
            let mut row = w.0.clone();
            row.push(Rational::zero());
            if w == u {
                lp.add_eq(row, Rational::one());
            } else {
                lp.add_le(row, Rational::one());
            }
        }
        if let LpOutcome::Optimal { value, x } = lp.solve() {
            let w = -value;
            if best.as_ref().is_none_or(|(b, _)| w < *b) {
                best = Some((w, Vector::new(x[..dim].to_vec())));
            }
        }
    }
    let (w, f) = best.expect("the dual facets cover the dual sphere");
    // a single point has width zero along every functional
    let w = if vs.len() == 1 { Rational::zero() } else { w };
    Ok((Scalar::Exact(w), DualFunctional::exact(norm, f)))
}

pub fn width_report(norm: &Norm, body: &Polytope, tol: f64) -> Result<WidthReport> {
    let diameter = diameter(norm, body)?;
    let widths: Vec<(DualFunctional, Scalar)> = dual_unit_functionals(norm, None)
        .into_iter()
        .map(|f| {
            let (hi, _, lo, _) = extent(&f, body);
            (f, hi - lo)
        })
        .collect();
    let max_width = widths
        .iter()
        .map(|(_, w)| w.clone())
        .fold(Scalar::zero(), Scalar::max);
    let (min_width, min_functional) = min_width(norm, body)?;
    let (_, arg_hi, _, arg_lo) = extent(&min_functional, body);
    let consistent = max_width.approx_eq(&diameter.value, tol);
    Ok(WidthReport {
        widths,
        min_width,
        max_width,
        diameter,
        min_functional,
        min_width_witness: (arg_hi, arg_lo),
        consistent,
    })
}

/// `sup{‖x - a‖ : a in K}`.
pub fn farthest_distance(norm: &Norm, body: &Polytope, x: &Vector) -> Result<Scalar> {
    norm.check_dim(x.dim())?;
    body.vertices()
        .iter()
        .map(|v| norm.distance(x, v))
        .try_fold(Scalar::zero(), |acc, d| Ok(acc.max(d?)))
}

#[derive(Clone, Debug, PartialEq)]
pub struct Circumradius {
    pub radius: Scalar,
    pub center: Vector,
    /// Compass-search estimate (analytic norms).
    pub estimated: bool,
}

impl Circumradius {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "radius": self.radius.to_json(),
            "center": self.center.to_json(),
            "estimated": self.estimated,
        })
    }
}

/// Smallest `r` with `K ⊆ B(x, r)` for some `x`. Polytopal norms solve the
/// exact LP `min r` subject to `<a_i, v - x> <= r` for every ball facet
/// `a_i` and body vertex `v`.
pub fn circumradius(norm: &Norm, body: &Polytope) -> Result<Circumradius> {
    norm.check_dim(body.dim())?;
    let dim = body.dim();
    let Some(ball) = norm.ball() else {
        let pts: Vec<Vec<f64>> = body.vertices().iter().map(Vector::to_f64).collect();
        let (c, r) = sampled::enclosing_ball(norm, &pts);
        return Ok(Circumradius {
            radius: Scalar::Float(r),
            center: Vector::from_f64(&c)?,
            estimated: true,
        });
    };
    let mut lp = LinearProgram::new(dim + 1);
    for k in 0..dim {
        lp.set_free(k);
    }
    let mut obj = vec![Rational::zero(); dim + 1];
    obj[dim] = int(-1);
    lp.maximize(obj);
    for h in ball.facets() {
        for v in body.vertices() {
            let mut row: Vec<Rational> = h.normal().coords().iter().map(|c| -c).collect();
            row.push(int(-1));
            lp.add_le(row, -h.normal().dot(v));
        }
    }
    match lp.solve() {
        LpOutcome::Optimal { value, x } => Ok(Circumradius {
            radius: Scalar::Exact(-value),
            center: Vector::new(x[..dim].to_vec()),
            estimated: false,
        }),
        other => unreachable!("circumradius LP is feasible and bounded: {other:?}"),
    }
}

/// `min{‖x - p‖ : p in K}`; polytopal norms only. An LP over convex
/// weights `λ` on the vertices of `K` and the radius `r`.
pub fn distance_to_polytope(norm: &Norm, x: &Vector, body: &Polytope) -> Result<Rational> {
    let ball = norm.require_polytopal("distance to a polytope")?;
    norm.check_dim(x.dim())?;
    let n = body.vertices().len();
    let mut lp = LinearProgram::new(n + 1);
    let mut obj = vec![Rational::zero(); n + 1];
    obj[n] = int(-1);
    lp.maximize(obj);
    let mut weights = vec![Rational::one(); n];
    weights.push(Rational::zero());
    lp.add_eq(weights, Rational::one());
    for h in ball.facets() {
        let mut row: Vec<Rational> = body.vertices().iter().map(|v| -h.normal().dot(v)).collect();
        row.push(int(-1));
        lp.add_le(row, -h.normal().dot(x));
    }
    match lp.solve() {
        LpOutcome::Optimal { value, .. } => Ok(-value),
        other => unreachable!("distance LP is feasible and bounded: {other:?}"),
    }
}

fn check_epsilon(eps: &Rational) -> Result<()> {
    if eps.is_negative() || *eps > int(2) {
        Err(Error::EpsilonOutOfRange(format_rational(eps)))
    } else {
        Ok(())
    }
}

/// `δ(ε) = inf{1 - ‖(x + y)/2‖ : x, y in B, ‖x - y‖ >= ε}`.
///
/// Polytopal norms: the maximum of `‖(x+y)/2‖` splits into one LP per pair
/// of ball facets `(k, l)`: maximize `<a_k, (x+y)/2>` over `x, y in B` with
/// `<a_l, x - y> >= ε`. Analytic norms are estimated by sampling.
pub fn modulus_of_convexity(norm: &Norm, eps: &Rational) -> Result<Scalar> {
    check_epsilon(eps)?;
    let Some(ball) = norm.ball() else {
        let e = to_f64(eps);
        let value = if norm.dim() == 2 {
            let gauge = |s: f64, t: f64| norm.eval_f64(&[s, t]);
            sampled::planar_modulus(&gauge, e, MODULUS_ANGLES)
        } else {
            sampled::spatial_modulus(norm, e, MODULUS_PLANES, MODULUS_ANGLES / 4)
        };
        return Ok(Scalar::Float(value));
    };
    if eps.is_zero() {
        return Ok(Scalar::zero());
    }
    let dim = norm.dim();
    let normals: Vec<&Vector> = ball.facets().iter().map(|h| h.normal()).collect();
    let mut best = Rational::zero();
    // (x, y) feasible for l  ⟺  (y, x) feasible for -l, so half the l suffice
    let zero = Vector::zero(dim);
    for l in normals.iter().filter(|a| ***a > zero) {
        for k in &normals {
            let mut lp = LinearProgram::new(2 * dim);
            for j in 0..2 * dim {
                lp.set_free(j);
            }
            let half = Rational::new(1.into(), 2.into());
            let obj: Vec<Rational> = k.coords().iter().chain(k.coords()).map(|c| c * &half).collect();
            lp.maximize(obj);
            for a in &normals {
                let mut row_x = a.coords().to_vec();
                row_x.extend(std::iter::repeat_n(Rational::zero(), dim));
                lp.add_le(row_x, Rational::one());
                let mut row_y = vec![Rational::zero(); dim];
                row_y.extend(a.coords().iter().cloned());
                lp.add_le(row_y, Rational::one());
            }
            let mut sep = l.coords().to_vec();
            sep.extend(l.coords().iter().map(|c| -c));
            lp.add_ge(sep, eps.clone());
            if let LpOutcome::Optimal { value, .. } = lp.solve() {
                if value > best {
                    best = value;
                }
            }
        }
        if best.is_one() {
            break;
        }
    }
    Ok(Scalar::Exact(Rational::one() - best))
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvexityProfile {
    pub epsilons: Vec<Rational>,
    pub delta: Vec<Scalar>,
    /// Largest grid value with `δ <= tol` (exactly zero for polytopal norms).
    pub eps0: Rational,
    /// False when the values are sampled estimates.
    pub exact: bool,
}

impl ConvexityProfile {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "epsilons": self.epsilons.iter().map(format_rational).collect::<Vec<_>>(),
            "delta": self.delta.iter().map(Scalar::to_json).collect::<Vec<_>>(),
            "eps0": format_rational(&self.eps0),
            "exact": self.exact,
        })
    }
}

/// `0, 1/4, ..., 2`.
pub fn default_epsilon_grid() -> Vec<Rational> {
    (0..=8).map(|k| Rational::new(k.into(), 4.into())).collect()
}

pub fn convexity_profile(norm: &Norm, grid: &[Rational], tol: f64) -> Result<ConvexityProfile> {
    let mut epsilons = grid.to_vec();
    for e in &epsilons {
        check_epsilon(e)?;
    }
    epsilons.sort();
    epsilons.dedup();
    let delta = epsilons
        .iter()
        .map(|e| modulus_of_convexity(norm, e))
        .collect::<Result<Vec<_>>>()?;
    let eps0 = epsilons
        .iter()
        .zip(&delta)
        .filter(|(_, d)| match d {
            Scalar::Exact(r) => r.is_zero(),
            Scalar::Float(f) => *f <= tol,
        })
        .map(|(e, _)| e.clone())
        .max()
        .unwrap_or_else(Rational::zero);
    Ok(ConvexityProfile {
        epsilons,
        delta,
        eps0,
        exact: norm.is_polytopal(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::convex_hull;
    use crate::norms::Coefficients;
    use crate::scalar::frac;

    pub(crate) fn tetrahedron() -> Polytope {
        convex_hull(&[
            Vector::from_ints(&[-1, -1, -1]),
            Vector::from_ints(&[1, 1, -1]),
            Vector::from_ints(&[1, -1, 1]),
            Vector::from_ints(&[-1, 1, 1]),
        ])
        .unwrap()
    }

    #[test]
    fn diameter_of_segments_and_points() {
        let l1 = Norm::l1(2).unwrap();
        let seg = Polytope::segment(&Vector::from_ints(&[-1, 0]), &Vector::from_ints(&[1, 0])).unwrap();
        assert_eq!(diameter(&l1, &seg).unwrap().value, Scalar::Exact(int(2)));
        let pt = convex_hull(&[Vector::from_ints(&[3, 3])]).unwrap();
        let d = diameter(&l1, &pt).unwrap();
        assert!(d.trivial);
        assert_eq!(d.value, Scalar::zero());
    }

    #[test]
    fn tetrahedron_widths() {
        let l1 = Norm::l1(3).unwrap();
        let k = tetrahedron();
        let f = DualFunctional::exact(&l1, Vector::from_ints(&[1, 0, 0]));
        assert_eq!(width(&l1, &k, &f).unwrap(), Scalar::Exact(int(2)));
        let r = width_report(&l1, &k, 0.0).unwrap();
        assert_eq!(r.widths.len(), 8);
        assert_eq!(r.min_width, Scalar::Exact(int(2)));
        assert!(r.min_functional.dual_unit);
        assert_eq!(width(&l1, &k, &r.min_functional).unwrap(), Scalar::Exact(int(2)));
        assert_eq!(r.max_width, Scalar::Exact(int(4)));
        // every extreme dual functional sees the full diameter
        assert!(r.widths.iter().all(|(_, w)| *w == Scalar::Exact(int(4))));
        assert!(r.consistent);
        let not_unit = DualFunctional::exact(&l1, Vector::from_ints(&[2, 0, 0]));
        assert!(matches!(width(&l1, &k, &not_unit), Err(Error::NotDualUnit(_))));
    }

    #[test]
    fn segment_width_under_l1() {
        let l1 = Norm::l1(2).unwrap();
        let seg = Polytope::segment(&Vector::from_ints(&[-1, 0]), &Vector::from_ints(&[1, 0])).unwrap();
        let f = DualFunctional::exact(&l1, Vector::from_ints(&[1, 1]));
        assert!(matches!(f.coeffs, Coefficients::Exact(_)));
        assert_eq!(width(&l1, &seg, &f).unwrap(), Scalar::Exact(int(2)));
    }

    #[test]
    fn circumradius_of_balls_and_segments() {
        let linf = Norm::linf(2).unwrap();
        let ball = linf
            .ball()
            .unwrap()
            .scale_translate(&frac(3, 2), &Vector::from_ints(&[1, 2]))
            .unwrap();
        let c = circumradius(&linf, &ball).unwrap();
        assert_eq!(c.radius, Scalar::Exact(frac(3, 2)));
        assert_eq!(c.center, Vector::from_ints(&[1, 2]));
        let l1 = Norm::l1(2).unwrap();
        let seg = Polytope::segment(&Vector::from_ints(&[-1, 0]), &Vector::from_ints(&[1, 0])).unwrap();
        let c = circumradius(&l1, &seg).unwrap();
        assert_eq!(c.radius, Scalar::Exact(int(1)));
        assert!(farthest_distance(&l1, &seg, &c.center).unwrap() <= Scalar::Exact(int(1)));
    }

    #[test]
    fn distance_to_a_square() {
        let l1 = Norm::l1(2).unwrap();
        let square = convex_hull(&[[0, 0], [1, 0], [0, 1], [1, 1]].map(|c| Vector::from_ints(&c))).unwrap();
        assert_eq!(distance_to_polytope(&l1, &Vector::from_ints(&[3, 3]), &square).unwrap(), int(4));
        assert_eq!(distance_to_polytope(&l1, &Vector::new(vec![frac(1, 2), frac(1, 3)]), &square).unwrap(), int(0));
    }

    #[test]
    fn modulus_values() {
        let l1 = Norm::l1(2).unwrap();
        assert_eq!(modulus_of_convexity(&l1, &int(2)).unwrap(), Scalar::zero());
        assert!(matches!(
            modulus_of_convexity(&l1, &frac(5, 2)),
            Err(Error::EpsilonOutOfRange(_))
        ));
        let e = Norm::euclidean(2).unwrap();
        let d = modulus_of_convexity(&e, &int(1)).unwrap().to_f64();
        assert!((d - (1.0 - 3f64.sqrt() / 2.0)).abs() < 1e-9);
        let p = convexity_profile(&l1, &default_epsilon_grid(), 1e-9).unwrap();
        assert_eq!(p.eps0, int(2));
    }
}
