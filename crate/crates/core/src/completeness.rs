//! Completeness, constant width, completions and the uniqueness properties.
//!
//! Exact procedures require a polytopal norm. The `_sampled` variants and the
//! simplex checks accept analytic norms and report float verdicts.

use std::fmt;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::geometry::linalg::affine_rank;
use crate::geometry::{intersect_halfspaces, plane_section, Halfspace, Polytope, Vector};
use crate::hulls::{wide_hull_sampled, wide_spherical_hull, HullResult};
use crate::metrics::{diameter, distance_to_polytope, exact_diameter, min_width};
use crate::norms::{ball_halfspaces, dual_unit_functionals, make_ball, DualFunctional, Norm};
use crate::sampled::{self, EquidistantCurve};
use crate::scalar::{format_rational, frac, Rational, Scalar, DEFAULT_TOL};

/// Boundary samples of sampled wide hulls.
pub const PLANAR_BOUNDARY_SAMPLES: usize = 720;
pub const SPATIAL_BOUNDARY_SAMPLES: usize = 2562;
/// Samples of the equidistant curve when searching for extensions.
pub const CURVE_SAMPLES: usize = 720;

fn boundary_samples(dim: usize) -> usize {
    if dim == 2 {
        PLANAR_BOUNDARY_SAMPLES
    } else {
        SPATIAL_BOUNDARY_SAMPLES
    }
}

/// `η(K) = K`.
pub fn is_complete(norm: &Norm, body: &Polytope) -> Result<bool> {
    Ok(wide_spherical_hull(norm, body)?.hull == *body)
}

/// Whether boundary samples of `η(K)` all lie in `K` (within `tol`).
pub fn is_complete_sampled(norm: &Norm, body: &Polytope, tol: f64) -> Result<bool> {
    let eta = wide_hull_sampled(norm, body)?;
    let facets: Vec<(Vec<f64>, f64)> = body
        .facets()
        .iter()
        .map(|h| (h.normal().to_f64(), crate::scalar::to_f64(h.offset())))
        .collect();
    Ok(eta.boundary(boundary_samples(norm.dim())).iter().all(|p| {
        facets
            .iter()
            .all(|(a, b)| sampled::dot(a, p) <= b + tol * (1.0 + b.abs()))
    }))
}

#[derive(Clone, Debug)]
pub struct ConstantWidth {
    pub holds: bool,
    pub diameter: Scalar,
    pub min_width: Scalar,
    /// A functional of least width; it witnesses failure when `!holds`.
    pub witness: DualFunctional,
    /// Whether `K - K = diam(K) B` agrees with `holds` (polytopal norms).
    pub difference_body_agrees: Option<bool>,
}

impl ConstantWidth {
    pub fn to_json(&self) -> Value {
        json!({
            "holds": self.holds,
            "diam": self.diameter.to_json(),
            "min_width": self.min_width.to_json(),
            "witness": self.witness.to_json(),
            "difference_body_agrees": self.difference_body_agrees,
        })
    }
}

/// `w_f(K) = diam K` for every dual-unit `f`, decided by the least width.
/// Polytopal norms are exact and cross-checked against `K - K = diam(K) B`;
/// analytic norms compare sampled widths within `tol`.
pub fn is_constant_width(norm: &Norm, body: &Polytope, tol: f64) -> Result<ConstantWidth> {
    let diam = diameter(norm, body)?.value;
    let (min_w, witness) = min_width(norm, body)?;
    let holds = min_w.approx_eq(&diam, tol);
    let difference_body_agrees = match (norm.ball(), diam.as_exact()) {
        (Some(ball), Some(d)) => {
            let scaled = ball.scale_translate(d, &Vector::zero(norm.dim()))?;
            Some((body.difference_body() == scaled) == holds)
        }
        _ => None,
    };
    Ok(ConstantWidth {
        holds,
        diameter: diam,
        min_width: min_w,
        witness,
        difference_body_agrees,
    })
}

/// `Some(B(c, diam/2))` when `K` is that ball, with `c` the vertex average.
pub fn is_ball(norm: &Norm, body: &Polytope) -> Result<Option<(Vector, Rational)>> {
    norm.require_polytopal("ball detection")?;
    let d = exact_diameter(norm, body)?;
    let center = body.vertex_centroid();
    let radius = d * frac(1, 2);
    let ball = make_ball(norm, &center, &radius)?;
    Ok((ball.materialized.as_ref() == Some(body)).then_some((center, radius)))
}

#[derive(Clone, Debug)]
pub struct Uniqueness {
    pub unique: bool,
    pub diam: Rational,
    pub diam_eta: Rational,
    pub eta: HullResult,
}

/// `K` has a unique completion iff `diam η(K) = diam K`.
pub fn unique_completion_report(norm: &Norm, body: &Polytope) -> Result<Uniqueness> {
    let eta = wide_spherical_hull(norm, body)?;
    let diam_eta = exact_diameter(norm, &eta.hull)?;
    Ok(Uniqueness {
        unique: diam_eta == eta.base_diameter,
        diam: eta.base_diameter.clone(),
        diam_eta,
        eta,
    })
}

pub fn unique_completion(norm: &Norm, body: &Polytope) -> Result<bool> {
    Ok(unique_completion_report(norm, body)?.unique)
}

#[derive(Clone, Debug, PartialEq)]
pub struct CompletenessReport {
    pub is_complete: bool,
    pub is_constant_width: bool,
    pub ball: Option<(Vector, Rational)>,
    pub unique_completion: bool,
    pub diam: Rational,
    pub diam_eta: Rational,
}

impl CompletenessReport {
    pub fn is_ball(&self) -> bool {
        self.ball.is_some()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "is_complete": self.is_complete,
            "is_constant_width": self.is_constant_width,
            "is_ball": self.is_ball(),
            "ball": self.ball.as_ref().map(|(c, r)| json!({"center": c.to_json(), "radius": format_rational(r)})),
            "unique_completion": self.unique_completion,
            "diam": format_rational(&self.diam),
            "diam_eta": format_rational(&self.diam_eta),
        })
    }
}

pub fn completeness_report(norm: &Norm, body: &Polytope) -> Result<CompletenessReport> {
    let u = unique_completion_report(norm, body)?;
    Ok(CompletenessReport {
        is_complete: u.eta.hull == *body,
        is_constant_width: is_constant_width(norm, body, 0.0)?.holds,
        ball: is_ball(norm, body)?,
        unique_completion: u.unique,
        diam: u.diam,
        diam_eta: u.diam_eta,
    })
}

/// Which new vertex of `η(K)` the greedy completion adds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum TieRule {
    #[default]
    Lexicographic,
    ReverseLexicographic,
}

impl TieRule {
    pub fn name(self) -> &'static str {
        match self {
            TieRule::Lexicographic => "lexicographic",
            TieRule::ReverseLexicographic => "reverse-lexicographic",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Completion {
    pub body: Polytope,
    /// False only when the iteration guard tripped.
    pub complete: bool,
    pub iterations: usize,
    pub added: Vec<Vector>,
    /// Distance of each added vertex from the body it was added to.
    pub progress: Vec<Rational>,
}

impl Completion {
    pub fn to_json(&self) -> Value {
        json!({
            "completion": self.body.to_json(),
            "complete": self.complete,
            "iterations": self.iterations,
            "added": self.added.iter().map(Vector::to_json).collect::<Vec<_>>(),
            "progress": self.progress.iter().map(format_rational).collect::<Vec<_>>(),
        })
    }
}

/// Grows `K` by one vertex of `η(K)` outside `K` at a time until
/// `η(K) = K`. Any point of `η(K)` can be added without raising the
/// diameter. The default guard is `10 · #ball facets · #initial vertices`
/// iterations.
pub fn complete_greedily(
    norm: &Norm,
    body: &Polytope,
    rule: TieRule,
    max_iters: Option<usize>,
) -> Result<Completion> {
    let ball = norm.require_polytopal("greedy completion")?;
    let guard = max_iters.unwrap_or(10 * ball.facets().len() * body.vertices().len());
    let d = exact_diameter(norm, body)?;
    let mut current = body.clone();
    let mut added = Vec::new();
    let mut progress = Vec::new();
    for iteration in 0..=guard {
        let (eta, _) = crate::hulls::ball_intersection(norm, current.vertices(), &d)?;
        let mut outside = eta.vertices().iter().filter(|v| !current.contains(v));
        let next = match rule {
            TieRule::Lexicographic => outside.next(),
            TieRule::ReverseLexicographic => outside.next_back(),
        };
        let Some(v) = next.cloned() else {
            return Ok(Completion {
                body: current,
                complete: true,
                iterations: iteration,
                added,
                progress,
            });
        };
        if iteration == guard {
            break;
        }
        progress.push(distance_to_polytope(norm, &v, &current)?);
        let mut pts = current.vertices().to_vec();
        pts.push(v.clone());
        current = Polytope::from_points(&pts)?;
        added.push(v);
    }
    Ok(Completion {
        body: current,
        complete: false,
        iterations: guard,
        added,
        progress,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct BallIdentity {
    pub holds: bool,
    /// `B(x, γ) ∩ B(y, γ)`.
    pub intersection: Polytope,
    /// `B((x + y)/2, γ - ‖x - y‖/2)`.
    pub ball: Polytope,
}

impl BallIdentity {
    pub fn to_json(&self) -> Value {
        json!({
            "holds": self.holds,
            "intersection": self.intersection.to_json(),
            "ball": self.ball.to_json(),
        })
    }
}

/// Compares `B(x, γ) ∩ B(y, γ)` with `B((x + y)/2, γ - ‖x - y‖/2)`.
pub fn ball_intersection_identity(
    norm: &Norm,
    x: &Vector,
    y: &Vector,
    gamma: &Rational,
) -> Result<BallIdentity> {
    let unit = norm.require_polytopal("ball intersection identity")?;
    norm.check_dim(x.dim())?;
    norm.check_dim(y.dim())?;
    let half = frac(1, 2);
    let dist = norm.eval_exact(&(x - y)).expect("polytopal");
    if *gamma < &dist * &half {
        return Err(Error::Precondition(format!(
            "radius {} is below half the distance {}",
            format_rational(gamma),
            format_rational(&dist)
        )));
    }
    let mut hs = ball_halfspaces(unit, x, gamma);
    hs.extend(ball_halfspaces(unit, y, gamma));
    let intersection = intersect_halfspaces(&hs)?;
    let center = (x + y).scale(&half);
    let ball = make_ball(norm, &center, &(gamma - dist * half))?
        .materialized
        .expect("polytopal");
    Ok(BallIdentity {
        holds: intersection == ball,
        intersection,
        ball,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Property {
    U1,
    /// Some `m`-simplex that is equilateral has a unique completion.
    Um(usize),
    /// ... whose unique completion is a ball.
    Umb(usize),
    A,
    B,
    C,
    D,
    E,
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Property::U1 => write!(f, "U1"),
            Property::Um(m) => write!(f, "U{m}"),
            Property::Umb(m) => write!(f, "U{m}b"),
            Property::A => write!(f, "A"),
            Property::B => write!(f, "B"),
            Property::C => write!(f, "C"),
            Property::D => write!(f, "D"),
            Property::E => write!(f, "E"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails,
    HoldsOnInstances,
    FailsOnInstance,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::HoldsOnInstances => "holds_on_instances",
            Verdict::FailsOnInstance => "fails_on_instance",
        }
    }

    pub fn is_positive(self) -> bool {
        matches!(self, Verdict::Holds | Verdict::HoldsOnInstances)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PropertyVerdict {
    pub property: Property,
    pub verdict: Verdict,
    pub witness: Value,
}

impl PropertyVerdict {
    pub fn to_json(&self) -> Value {
        json!({
            "property": self.property.to_string(),
            "verdict": self.verdict.name(),
            "witness": self.witness,
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VertexTrial {
    pub u: Vector,
    pub diam_eta: Rational,
    pub unique: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct U1Check {
    pub verdict: PropertyVerdict,
    /// First vertex, in descending lexicographic order, whose segment
    /// `[-u, u]` has a unique completion.
    pub direction: Option<Vector>,
    /// One entry per vertex of the unit ball, in descending order.
    pub trials: Vec<VertexTrial>,
    /// Every tested two-dimensional section through `direction` is a
    /// parallelogram with `direction` as a vertex.
    pub sections_consistent: Option<bool>,
}

impl U1Check {
    pub fn to_json(&self) -> Value {
        let mut v = self.verdict.to_json();
        v["u"] = self.direction.as_ref().map_or(Value::Null, Vector::to_json);
        v["sections_consistent"] = json!(self.sections_consistent);
        v["trials"] = self
            .trials
            .iter()
            .map(|t| json!({"u": t.u.to_json(), "diam_eta": format_rational(&t.diam_eta), "unique": t.unique}))
            .collect();
        v
    }
}

/// Decides whether some segment has a unique completion.
///
/// Only segments `[-u, u]` with `u` a vertex of the unit ball can qualify,
/// so the scan is finite. `[-u, u]` and `[u, -u]` coincide, so each
/// antipodal pair is computed once.
pub fn check_u1(norm: &Norm) -> Result<U1Check> {
    let ball = norm.require_polytopal("U1 check")?;
    let mut trials: Vec<VertexTrial> = Vec::with_capacity(ball.vertices().len());
    for u in ball.vertices().iter().rev() {
        let opposite = -u;
        let known = trials.iter().find(|t| t.u == opposite).cloned();
        let (diam_eta, unique) = match known {
            Some(t) => (t.diam_eta, t.unique),
            None => {
                let r = unique_completion_report(norm, &Polytope::segment(&opposite, u)?)?;
                (r.diam_eta, r.unique)
            }
        };
        trials.push(VertexTrial {
            u: u.clone(),
            diam_eta,
            unique,
        });
    }
    let direction = trials.iter().find(|t| t.unique).map(|t| t.u.clone());
    let sections_consistent = match &direction {
        Some(u) => Some(sections_are_parallelograms(ball, u)?),
        None => None,
    };
    let witness = match &direction {
        Some(u) => json!({"u": u.to_json()}),
        None => json!({
            "min_diam_eta": trials.iter().map(|t| t.diam_eta.clone()).min().map(|d| format_rational(&d)),
        }),
    };
    Ok(U1Check {
        verdict: PropertyVerdict {
            property: Property::U1,
            verdict: if direction.is_some() {
                Verdict::Holds
            } else {
                Verdict::Fails
            },
            witness,
        },
        direction,
        trials,
        sections_consistent,
    })
}

/// Sections of the ball by planes through `u`, spanned with every other
/// ball vertex and every coordinate axis, are parallelograms with `u` as a
/// vertex. In the plane the ball itself is the only section.
fn sections_are_parallelograms(ball: &Polytope, u: &Vector) -> Result<bool> {
    if ball.dim() == 2 {
        return Ok(ball.vertices().len() == 4 && ball.vertices().contains(u));
    }
    let first = Vector::new(vec![Rational::one(), Rational::zero()]);
    let mut partners: Vec<Vector> = ball.vertices().to_vec();
    partners.extend((0..3).map(|k| Vector::unit(3, k)));
    for w in partners {
        if u.cross(&w).is_zero() {
            continue;
        }
        let s = plane_section(ball, u, &w)?;
        if s.vertices().len() != 4 || s.vertices().binary_search(&first).is_err() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SimplexCheck {
    pub side: Scalar,
    pub diam_eta: Scalar,
    pub unique: PropertyVerdict,
    pub ball: PropertyVerdict,
    /// Least and greatest width of `η(T)` over the (sampled) dual sphere.
    pub eta_widths: (Scalar, Scalar),
    /// Circumradius of `η(T)`; it equals `side / 2` iff a complete `η(T)`
    /// is a ball.
    pub eta_circumradius: Scalar,
    /// Sampled runs only.
    pub estimated: bool,
}

impl SimplexCheck {
    pub fn to_json(&self) -> Value {
        json!({
            "side": self.side.to_json(),
            "diam_eta": self.diam_eta.to_json(),
            "unique_completion": self.unique.to_json(),
            "completion_is_ball": self.ball.to_json(),
            "eta_min_width": self.eta_widths.0.to_json(),
            "eta_max_width": self.eta_widths.1.to_json(),
            "eta_circumradius": self.eta_circumradius.to_json(),
            "estimated": self.estimated,
        })
    }
}

/// Side length of an equilateral `m`-simplex, or the offending pair.
fn equilateral_side(norm: &Norm, simplex: &Polytope, m: usize) -> Result<Scalar> {
    let vs = simplex.vertices();
    if vs.len() != m + 1 || affine_rank(vs) != m || m > norm.dim() {
        return Err(Error::NotSimplex {
            expected: m,
            found: affine_rank(vs) + 1,
        });
    }
    let side = norm.distance(&vs[0], &vs[1])?;
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            let d = norm.distance(&vs[i], &vs[j])?;
            let ok = match (&d, &side) {
                (Scalar::Exact(a), Scalar::Exact(b)) => a == b,
                _ => (d.to_f64() - side.to_f64()).abs() <= DEFAULT_TOL * side.to_f64().max(1.0),
            };
            if !ok {
                return Err(Error::NotEquilateral {
                    i,
                    j,
                    found: d.to_string(),
                    expected: side.to_string(),
                });
            }
        }
    }
    Ok(side)
}

/// Whether an equilateral `m`-simplex has a unique completion, and whether
/// that completion is a ball.
pub fn check_um(norm: &Norm, simplex: &Polytope, m: usize, tol: f64) -> Result<SimplexCheck> {
    norm.check_dim(simplex.dim())?;
    let side = equilateral_side(norm, simplex, m)?;
    if norm.is_polytopal() {
        let u = unique_completion_report(norm, simplex)?;
        let ball = if u.unique { is_ball(norm, &u.eta.hull)? } else { None };
        let widths = crate::metrics::width_report(norm, &u.eta.hull, 0.0)?;
        let radius = crate::metrics::circumradius(norm, &u.eta.hull)?.radius;
        let verdict = |p, holds: bool, witness| PropertyVerdict {
            property: p,
            verdict: if holds { Verdict::Holds } else { Verdict::Fails },
            witness,
        };
        return Ok(SimplexCheck {
            side,
            diam_eta: Scalar::Exact(u.diam_eta.clone()),
            unique: verdict(
                Property::Um(m),
                u.unique,
                json!({"simplex": simplex.to_json(), "eta": u.eta.hull.to_json()}),
            ),
            ball: verdict(
                Property::Umb(m),
                ball.is_some(),
                json!({"ball": ball.as_ref().map(|(c, r)| json!({"center": c.to_json(), "radius": format_rational(r)}))}),
            ),
            eta_widths: (widths.min_width, widths.max_width),
            eta_circumradius: radius,
            estimated: false,
        });
    }

    let eta = wide_hull_sampled(norm, simplex)?;
    let ring = eta.boundary(boundary_samples(norm.dim()));
    let mut boundary = ring.clone();
    boundary.extend(simplex.vertices().iter().map(Vector::to_f64));
    let d = side.to_f64();
    let (diam_eta, _, _) = sampled::diameter(norm, &boundary);
    let unique = diam_eta <= d + tol * d.max(1.0);
    let (center, radius) = sampled::enclosing_ball(norm, &boundary);
    let is_ball = unique && (radius - d / 2.0).abs() <= tol * d.max(1.0);
    let farthest = boundary
        .iter()
        .max_by(|p, q| {
            sampled::dist(norm, p, &center).total_cmp(&sampled::dist(norm, q, &center))
        })
        .cloned()
        .expect("nonempty samples");
    let (mut lo, mut hi) = (f64::INFINITY, 0f64);
    for f in dual_unit_functionals(norm, None) {
        let a = f.coefficients_f64();
        let neg: Vec<f64> = a.iter().map(|x| -x).collect();
        let w = eta.support(&a, &ring) + eta.support(&neg, &ring);
        lo = lo.min(w);
        hi = hi.max(w);
    }
    let verdict = |p, holds: bool, witness| PropertyVerdict {
        property: p,
        verdict: if holds {
            Verdict::HoldsOnInstances
        } else {
            Verdict::FailsOnInstance
        },
        witness,
    };
    Ok(SimplexCheck {
        side,
        diam_eta: Scalar::Float(diam_eta),
        unique: verdict(Property::Um(m), unique, json!({"simplex": simplex.to_json(), "diam_eta": diam_eta})),
        ball: verdict(
            Property::Umb(m),
            is_ball,
            json!({"center": center, "radius": radius, "farthest_boundary_point": farthest}),
        ),
        eta_widths: (Scalar::Float(lo), Scalar::Float(hi)),
        eta_circumradius: Scalar::Float(radius),
        estimated: true,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct Extension {
    pub side: Scalar,
    /// Points at distance `side` from every vertex of `T`: all vertices of
    /// the exact solution faces, or the sampled solutions.
    pub candidates: Vec<Vector>,
    /// Exact solution set as a union of faces (polytopal norms).
    pub faces: Vec<Polytope>,
    /// Samples of `{y : ‖y - a‖ = ‖y - b‖ = side}` for the first two
    /// vertices (analytic norms).
    pub curve: Vec<Vec<f64>>,
    /// Some candidate lies off the plane of `T`, so `T` extends to an
    /// equilateral 3-simplex.
    pub extension_exists: bool,
    pub exact: bool,
}

impl Extension {
    pub fn to_json(&self) -> Value {
        json!({
            "side": self.side.to_json(),
            "candidates": self.candidates.iter().map(Vector::to_json).collect::<Vec<_>>(),
            "faces": self.faces.iter().map(Polytope::to_json).collect::<Vec<_>>(),
            "extension_exists": self.extension_exists,
            "exact": self.exact,
        })
    }
}

/// The set `{y : ‖y - w‖ = diam T for every vertex w of T}` of an
/// equilateral triangle `T` in space.
///
/// Polytopal norms: the set lies in `η(T)` and is the union, over choices
/// of one facet of each ball `B(w, diam T)` touching `η(T)`, of the faces of
/// `η(T)` on which the chosen facets are tight. Analytic norms: the curve
/// equidistant from the first two vertices is sampled and intersected with
/// the sphere around the third.
pub fn experiment_extend_simplex(norm: &Norm, triangle: &Polytope, tol: f64) -> Result<Extension> {
    if norm.dim() != 3 {
        return Err(Error::UnsupportedDimension(norm.dim()));
    }
    let side = equilateral_side(norm, triangle, 2)?;
    let vs = triangle.vertices();
    let normal = (&vs[1] - &vs[0]).cross(&(&vs[2] - &vs[0]));
    let plane_offset = normal.dot(&vs[0]);
    let Some(unit) = norm.ball() else {
        let d = side.to_f64();
        let pts: Vec<Vec<f64>> = vs.iter().map(Vector::to_f64).collect();
        let curve = EquidistantCurve::new(norm, &pts[0], &pts[1], d);
        let samples = curve.sample(CURVE_SAMPLES);
        let hits = curve.meet(&pts[2], CURVE_SAMPLES, tol);
        let n = normal.to_f64();
        let off = crate::scalar::to_f64(&plane_offset);
        let scale = sampled::dot(&n, &n).sqrt();
        let extension_exists = hits
            .iter()
            .any(|y| (sampled::dot(&n, y) - off).abs() > 1e-6 * scale);
        return Ok(Extension {
            side,
            candidates: hits.iter().map(|y| Vector::from_f64(y)).collect::<Result<_>>()?,
            faces: Vec::new(),
            curve: samples,
            extension_exists,
            exact: false,
        });
    };
    let d = side.as_exact().expect("polytopal").clone();
    let eta = wide_spherical_hull(norm, triangle)?.hull;
    let touching: Vec<Vec<Halfspace>> = vs
        .iter()
        .map(|w| {
            ball_halfspaces(unit, w, &d)
                .into_iter()
                .filter(|h| eta.vertices().iter().any(|v| h.is_tight(v)))
                .collect()
        })
        .collect();
    let mut faces: Vec<Polytope> = Vec::new();
    for f0 in &touching[0] {
        for f1 in &touching[1] {
            for f2 in &touching[2] {
                let mut hs = eta.facets().to_vec();
                for f in [f0, f1, f2] {
                    hs.push(f.clone());
                    hs.push(Halfspace::new(-f.normal(), -f.offset())?);
                }
                match intersect_halfspaces(&hs) {
                    Ok(face) => {
                        if !faces.contains(&face) {
                            faces.push(face);
                        }
                    }
                    Err(Error::EmptyIntersection) => {}
                    Err(e) => return Err(e),
                }
            }
        }
    }
    faces.sort_by(|a, b| a.vertices().cmp(b.vertices()));
    let mut candidates: Vec<Vector> = faces.iter().flat_map(|f| f.vertices().to_vec()).collect();
    candidates.sort();
    candidates.dedup();
    let extension_exists = candidates.iter().any(|y| normal.dot(y) != plane_offset);
    Ok(Extension {
        side,
        candidates,
        faces,
        curve: Vec::new(),
        extension_exists,
        exact: true,
    })
}

/// Instance-level evidence for (A) complete sets have constant width,
/// (D) sums of complete sets are complete and (E) the completions of a set
/// form a convex family. Each instance is completed under both tie rules.
pub fn experiment_properties_ade(norm: &Norm, instances: &[Polytope]) -> Result<Vec<PropertyVerdict>> {
    norm.require_polytopal("property experiments")?;
    let mut a_fail: Option<Value> = None;
    let mut d_fail: Option<Value> = None;
    let mut e_fail: Option<Value> = None;
    let mut e_tested = 0usize;
    for (idx, k) in instances.iter().enumerate() {
        let d = exact_diameter(norm, k)?;
        let c1 = complete_greedily(norm, k, TieRule::Lexicographic, None)?;
        let c2 = complete_greedily(norm, k, TieRule::ReverseLexicographic, None)?;
        for c in [&c1, &c2] {
            if a_fail.is_none() && c.complete {
                let cw = is_constant_width(norm, &c.body, 0.0)?;
                if !cw.holds {
                    a_fail = Some(json!({
                        "instance": idx,
                        "complete_set": c.body.to_json(),
                        "functional": cw.witness.to_json(),
                        "width": cw.min_width.to_json(),
                        "diam": cw.diameter.to_json(),
                    }));
                }
            }
        }
        if d_fail.is_none() {
            let sum = c1.body.minkowski_sum(&c2.body)?;
            if !is_complete(norm, &sum)? {
                d_fail = Some(json!({"instance": idx, "summands": [c1.body.to_json(), c2.body.to_json()]}));
            }
        }
        if c1.body != c2.body {
            e_tested += 1;
            for lambda in [frac(1, 4), frac(1, 2), frac(3, 4)] {
                if e_fail.is_some() {
                    break;
                }
                let mix = c1.body.convex_combination(&c2.body, &lambda)?;
                let ok = mix.contains_polytope(k)
                    && exact_diameter(norm, &mix)? == d
                    && is_complete(norm, &mix)?;
                if !ok {
                    e_fail = Some(json!({
                        "instance": idx,
                        "lambda": format_rational(&lambda),
                        "combination": mix.to_json(),
                    }));
                }
            }
        }
    }
    let verdict = |property, fail: Option<Value>, extra: Value| match fail {
        Some(w) => PropertyVerdict {
            property,
            verdict: Verdict::FailsOnInstance,
            witness: w,
        },
        None => PropertyVerdict {
            property,
            verdict: Verdict::HoldsOnInstances,
            witness: extra,
        },
    };
    Ok(vec![
        verdict(Property::A, a_fail, json!({"instances": instances.len()})),
        verdict(Property::D, d_fail, json!({"instances": instances.len()})),
        verdict(Property::E, e_fail, json!({"instances_with_distinct_completions": e_tested})),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::convex_hull;
    use crate::scalar::int;

    fn segment(d: usize) -> Polytope {
        let e = Vector::unit(d, 0);
        Polytope::segment(&-&e, &e).unwrap()
    }

    fn tetrahedron() -> Polytope {
        convex_hull(&[[-1, -1, -1], [1, 1, -1], [1, -1, 1], [-1, 1, 1]].map(|c| Vector::from_ints(&c)))
            .unwrap()
    }

    #[test]
    fn tetrahedron_is_complete_without_constant_width() {
        let l1 = Norm::l1(3).unwrap();
        let k = tetrahedron();
        assert!(is_complete(&l1, &k).unwrap());
        let cw = is_constant_width(&l1, &k, 0.0).unwrap();
        assert!(!cw.holds);
        assert_eq!(cw.min_width, Scalar::Exact(int(2)));
        assert_eq!(cw.difference_body_agrees, Some(true));
        assert!(is_ball(&l1, &k).unwrap().is_none());
    }

    #[test]
    fn balls_are_complete_and_of_constant_width() {
        let l1 = Norm::l1(2).unwrap();
        let b = l1.ball().unwrap().scale_translate(&int(3), &Vector::from_ints(&[1, 1])).unwrap();
        let r = completeness_report(&l1, &b).unwrap();
        assert!(r.is_complete && r.is_constant_width && r.unique_completion);
        assert_eq!(r.ball, Some((Vector::from_ints(&[1, 1]), int(3))));
    }

    #[test]
    fn unique_segment_completions() {
        assert!(unique_completion(&Norm::l1(2).unwrap(), &segment(2)).unwrap());
        assert!(unique_completion(&Norm::l1(3).unwrap(), &segment(3)).unwrap());
        let r = unique_completion_report(&Norm::linf(2).unwrap(), &segment(2)).unwrap();
        assert!(!r.unique);
        assert_eq!(r.diam_eta, int(4));
    }

    #[test]
    fn greedy_completion_of_l1_segment() {
        let l1 = Norm::l1(2).unwrap();
        let c = complete_greedily(&l1, &segment(2), TieRule::Lexicographic, None).unwrap();
        assert!(c.complete);
        assert_eq!(&c.body, l1.ball().unwrap());
        assert_eq!(c.added.len(), c.progress.len());
    }

    #[test]
    fn greedy_completion_of_linf_diagonal() {
        let linf = Norm::linf(2).unwrap();
        let k = Polytope::segment(&Vector::from_ints(&[0, 0]), &Vector::from_ints(&[1, 1])).unwrap();
        for rule in [TieRule::Lexicographic, TieRule::ReverseLexicographic] {
            let c = complete_greedily(&linf, &k, rule, None).unwrap();
            assert!(c.complete);
            assert!(is_complete(&linf, &c.body).unwrap());
            assert_eq!(exact_diameter(&linf, &c.body).unwrap(), int(1));
            assert!(c.body.contains_polytope(&k));
        }
    }

    #[test]
    fn guard_trips_are_flagged() {
        let l1 = Norm::l1(2).unwrap();
        let c = complete_greedily(&l1, &segment(2), TieRule::Lexicographic, Some(0)).unwrap();
        assert!(!c.complete);
        assert_eq!(c.body, segment(2));
    }

    #[test]
    fn ball_lemma() {
        let l1 = Norm::l1(2).unwrap();
        let e = Vector::unit(2, 0);
        for g in [int(1), frac(3, 2), int(2), int(3)] {
            assert!(ball_intersection_identity(&l1, &e, &-&e, &g).unwrap().holds);
        }
        let linf = Norm::linf(2).unwrap();
        assert!(!ball_intersection_identity(&linf, &e, &-&e, &int(2)).unwrap().holds);
        assert!(matches!(
            ball_intersection_identity(&l1, &e, &-&e, &frac(1, 2)),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn u1_for_l1() {
        let c = check_u1(&Norm::l1(2).unwrap()).unwrap();
        assert_eq!(c.verdict.verdict, Verdict::Holds);
        assert_eq!(c.direction, Some(Vector::unit(2, 0)));
        assert_eq!(c.sections_consistent, Some(true));
        let c = check_u1(&Norm::l1(3).unwrap()).unwrap();
        assert_eq!(c.direction, Some(Vector::unit(3, 0)));
        assert_eq!(c.sections_consistent, Some(true));
    }

    #[test]
    fn l1_triangle_has_ball_completion() {
        let l1 = Norm::l1(3).unwrap();
        let t = convex_hull(&[[-1, 0, 0], [0, 1, 0], [1, 0, 0]].map(|c| Vector::from_ints(&c))).unwrap();
        let c = check_um(&l1, &t, 2, 0.0).unwrap();
        assert_eq!(c.side, Scalar::Exact(int(2)));
        assert_eq!(c.unique.verdict, Verdict::Holds);
        assert_eq!(c.ball.verdict, Verdict::Holds);
    }

    #[test]
    fn non_equilateral_simplices_are_rejected() {
        let l1 = Norm::l1(2).unwrap();
        let t = convex_hull(&[[0, 0], [1, 0], [0, 2]].map(|c| Vector::from_ints(&c))).unwrap();
        assert!(matches!(check_um(&l1, &t, 2, 0.0), Err(Error::NotEquilateral { .. })));
        assert!(matches!(check_um(&l1, &segment(2), 2, 0.0), Err(Error::NotSimplex { .. })));
    }

    #[test]
    fn tetrahedron_refutes_a() {
        let l1 = Norm::l1(3).unwrap();
        let v = experiment_properties_ade(&l1, &[tetrahedron()]).unwrap();
        assert_eq!(v[0].property, Property::A);
        assert_eq!(v[0].verdict, Verdict::FailsOnInstance);
    }
}
