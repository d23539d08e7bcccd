//! One entry point for every operation, shared by scenes and the CLI.
//!
//! A query is a JSON object `{"op": ..., ...arguments}` evaluated against a
//! norm and a table of named bodies. The result is a JSON payload plus an
//! optional verdict used for exit codes.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use crate::completeness::{
    check_u1, check_um, complete_greedily, completeness_report, experiment_extend_simplex,
    experiment_properties_ade, is_complete, is_complete_sampled, is_constant_width,
    unique_completion_report, ball_intersection_identity, TieRule,
};
use crate::error::{Error, Result};
use crate::geometry::{Polytope, Vector};
use crate::hulls::{tight_from_wide, tight_hull_contains_sampled, wide_hull_sampled, wide_spherical_hull};
use crate::metrics::{circumradius, convexity_profile, default_epsilon_grid, diameter, width, width_report};
use crate::norms::{DualFunctional, Norm};
use crate::oracle::{self, GridSpec};
use crate::sampled;
use crate::scalar::{parse_rational, rational_from_json, to_f64, Rational, Scalar, DEFAULT_TOL};

/// Every operation name accepted by [`execute`].
pub const OPERATIONS: &[&str] = &[
    "diam",
    "width",
    "circumradius",
    "eta",
    "tau",
    "complete",
    "is-complete",
    "is-constant-width",
    "unique-completion",
    "report",
    "check-u1",
    "check-um",
    "ball-lemma",
    "convexity",
    "extend",
    "properties",
];

/// Random points used for membership cross-checks.
pub const MEMBERSHIP_SAMPLES: usize = 1000;

#[derive(Clone, Debug, PartialEq)]
pub struct Options {
    pub tol: f64,
    /// Route through the sampled algorithms even for polytopal norms.
    pub float: bool,
    /// Attach an independent oracle cross-check to the payload.
    pub oracle: bool,
    pub grid: usize,
    pub seed: u64,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            tol: DEFAULT_TOL,
            float: false,
            oracle: false,
            grid: oracle::DEFAULT_RESOLUTION,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub payload: Value,
    /// `Some(true)` for "holds", `Some(false)` for "fails".
    pub verdict: Option<bool>,
}

impl Outcome {
    fn plain(payload: Value) -> Outcome {
        Outcome {
            payload,
            verdict: None,
        }
    }

    fn judged(payload: Value, verdict: bool) -> Outcome {
        Outcome {
            payload,
            verdict: Some(verdict),
        }
    }
}

pub type Bodies = BTreeMap<String, Polytope>;

fn arg<'a>(query: &'a Value, key: &str) -> Option<&'a Value> {
    query.get(key).filter(|v| !v.is_null())
}

fn body<'a>(bodies: &'a Bodies, query: &Value) -> Result<&'a Polytope> {
    let name = arg(query, "body").and_then(Value::as_str).unwrap_or("K");
    bodies
        .get(name)
        .ok_or_else(|| Error::Scene(format!("no body named `{name}`")))
}

fn vector_arg(query: &Value, key: &str) -> Result<Vector> {
    Vector::from_json(arg(query, key).ok_or_else(|| Error::Parse(format!("missing `{key}`")))?)
}

fn rational_arg(query: &Value, key: &str) -> Result<Rational> {
    rational_from_json(arg(query, key).ok_or_else(|| Error::Parse(format!("missing `{key}`")))?)
}

fn grid_around(body: &Polytope, pad: f64, opts: &Options) -> Result<GridSpec> {
    let pts: Vec<Vec<f64>> = body.vertices().iter().map(Vector::to_f64).collect();
    GridSpec::around(&pts, pad, opts.grid, opts.seed)
}

/// Exact `η(K)` membership against the oracle on random rational points of
/// a padded bounding box. Disagreements are tolerated only within twice
/// the grid spacing of the boundary.
fn membership_crosscheck(norm: &Norm, k: &Polytope, eta: &Polytope, opts: &Options) -> Result<Value> {
    let grid = grid_around(eta, 0.25, opts)?;
    let spacing = grid.spacing();
    let mut agree = 0usize;
    let mut tolerated = 0usize;
    let mut inside = 0usize;
    for p in grid.random_points(MEMBERSHIP_SAMPLES) {
        // snap to a rational grid so the exact test sees exactly this point
        let snapped: Vec<f64> = p.iter().map(|c| (c * 1024.0).round() / 1024.0).collect();
        let x = Vector::from_f64(&snapped)?;
        let exact = eta.contains(&x);
        let reference = oracle::oracle_membership_eta(norm, k, &snapped, 1e-12);
        inside += exact as usize;
        if exact == reference {
            agree += 1;
        } else {
            let near = eta
                .facets()
                .iter()
                .map(|h| to_f64(&h.slack(&x)).abs() / h.normal().to_f64().iter().map(|c| c.abs()).sum::<f64>())
                .fold(f64::INFINITY, f64::min)
                <= 2.0 * spacing;
            tolerated += near as usize;
        }
    }
    Ok(json!({
        "points": MEMBERSHIP_SAMPLES,
        "inside": inside,
        "agree": agree,
        "near_boundary_disagreements": tolerated,
        "agrees": agree + tolerated == MEMBERSHIP_SAMPLES,
    }))
}

fn tie_rule(query: &Value) -> Result<TieRule> {
    match arg(query, "tie_rule").and_then(Value::as_str) {
        None | Some("lexicographic") => Ok(TieRule::Lexicographic),
        Some("reverse-lexicographic") | Some("reverse") => Ok(TieRule::ReverseLexicographic),
        Some(other) => Err(Error::Parse(format!("unknown tie rule `{other}`"))),
    }
}

/// Runs `query["op"]`.
pub fn execute(norm: &Norm, bodies: &Bodies, query: &Value, opts: &Options) -> Result<Outcome> {
    for b in bodies.values() {
        norm.check_dim(b.dim())?;
    }
    let op = query
        .get("op")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Parse("query without `op`".into()))?;
    let sampled_mode = opts.float || !norm.is_polytopal();
    let mut out = match op {
        "diam" => {
            let k = body(bodies, query)?;
            let d = diameter(norm, k)?;
            let mut p = d.to_json();
            if opts.oracle {
                let reference = oracle::oracle_diameter(norm, k, &grid_around(k, 0.0, opts)?);
                let v = d.value.to_f64();
                p["oracle"] = json!({
                    "diam": reference,
                    "agrees": (reference - v).abs() <= 1e-9 * v.max(1.0),
                });
            }
            Outcome::plain(p)
        }
        "width" => {
            let k = body(bodies, query)?;
            let mut p = match arg(query, "f") {
                Some(f) => {
                    let f = DualFunctional::exact(norm, Vector::from_json(f)?);
                    json!({"width": width(norm, k, &f)?.to_json(), "f": f.to_json()})
                }
                None => width_report(norm, k, opts.tol)?.to_json(),
            };
            if opts.oracle {
                let (lo, hi) = oracle::oracle_widths(norm, k, 2000);
                p["oracle"] = json!({"min_width": lo, "max_width": hi});
            }
            Outcome::plain(p)
        }
        "circumradius" => {
            let k = body(bodies, query)?;
            let c = circumradius(norm, k)?;
            let mut p = c.to_json();
            if opts.oracle {
                let (center, r) = oracle::oracle_circumradius(norm, k, &grid_around(k, 0.5, opts)?);
                p["oracle"] = json!({
                    "radius": r,
                    "center": center,
                    "agrees": (r - c.radius.to_f64()).abs() <= 1e-6 * r.max(1.0),
                });
            }
            Outcome::plain(p)
        }
        "eta" | "tau" => {
            let k = body(bodies, query)?;
            if sampled_mode {
                let eta = wide_hull_sampled(norm, k)?;
                let count = if norm.dim() == 2 { 720 } else { 2562 };
                let ring = eta.boundary(count);
                let (d, _, _) = sampled::diameter(norm, &ring);
                let mut p = json!({"boundary_samples": count, "diam_eta": d, "radius": eta.radius});
                if let Some(points) = arg(query, "points").and_then(Value::as_array) {
                    let mut verdicts = Vec::new();
                    for q in points {
                        let x = Vector::from_json(q)?.to_f64();
                        verdicts.push(if op == "eta" {
                            eta.contains(&x, opts.tol)
                        } else {
                            tight_hull_contains_sampled(&eta, &ring, &x, opts.tol)
                        });
                    }
                    p["contains"] = json!(verdicts);
                }
                Outcome::plain(p)
            } else {
                let wide = wide_spherical_hull(norm, k)?;
                let hull = if op == "eta" { wide.clone() } else { tight_from_wide(norm, &wide)? };
                let mut p = hull.to_json();
                if let Some(points) = arg(query, "points").and_then(Value::as_array) {
                    let verdicts: Vec<bool> = points
                        .iter()
                        .map(|q| Vector::from_json(q).map(|x| hull.hull.contains(&x)))
                        .collect::<Result<_>>()?;
                    p["contains"] = json!(verdicts);
                }
                if opts.oracle && op == "eta" {
                    p["oracle"] = membership_crosscheck(norm, k, &wide.hull, opts)?;
                }
                Outcome::plain(p)
            }
        }
        "complete" => {
            let k = body(bodies, query)?;
            let max_iters = arg(query, "max_iters").and_then(Value::as_u64).map(|n| n as usize);
            let c = complete_greedily(norm, k, tie_rule(query)?, max_iters)?;
            let mut p = c.to_json();
            if opts.oracle {
                let grid = grid_around(&c.body, 0.0, opts)?;
                let d = oracle::oracle_diameter(norm, &c.body, &grid);
                p["oracle"] = json!({"diam": d});
            }
            Outcome::judged(p, c.complete)
        }
        "is-complete" => {
            let k = body(bodies, query)?;
            let holds = if sampled_mode {
                is_complete_sampled(norm, k, opts.tol)?
            } else {
                is_complete(norm, k)?
            };
            let mut p = json!({"is_complete": holds, "estimated": sampled_mode});
            if opts.oracle && !sampled_mode {
                p["oracle"] = membership_crosscheck(norm, k, &wide_spherical_hull(norm, k)?.hull, opts)?;
            }
            Outcome::judged(p, holds)
        }
        "is-constant-width" => {
            let k = body(bodies, query)?;
            let cw = is_constant_width(norm, k, opts.tol)?;
            let mut p = cw.to_json();
            if opts.oracle {
                let reference = oracle::oracle_constant_width(norm, k, 2000, 1e-9);
                p["oracle"] = json!({"holds": reference, "agrees": reference == cw.holds});
            }
            Outcome::judged(p, cw.holds)
        }
        "unique-completion" => {
            let k = body(bodies, query)?;
            if sampled_mode {
                let eta = wide_hull_sampled(norm, k)?;
                let mut pts = eta.boundary(if norm.dim() == 2 { 720 } else { 2562 });
                pts.extend(k.vertices().iter().map(Vector::to_f64));
                let (d_eta, _, _) = sampled::diameter(norm, &pts);
                let unique = d_eta <= eta.radius * (1.0 + opts.tol);
                Outcome::judged(
                    json!({"unique_completion": unique, "diam": eta.radius, "diam_eta": d_eta, "estimated": true}),
                    unique,
                )
            } else {
                let u = unique_completion_report(norm, k)?;
                let tau = tight_from_wide(norm, &u.eta)?;
                Outcome::judged(
                    json!({
                        "unique_completion": u.unique,
                        "diam": Scalar::Exact(u.diam.clone()).to_json(),
                        "diam_eta": Scalar::Exact(u.diam_eta.clone()).to_json(),
                        "eta_equals_tau": u.eta.hull == tau.hull,
                        "eta": u.eta.hull.to_json(),
                    }),
                    u.unique,
                )
            }
        }
        "report" => {
            let k = body(bodies, query)?;
            let r = completeness_report(norm, k)?;
            let mut p = r.to_json();
            if opts.oracle {
                let grid = grid_around(k, 0.0, opts)?;
                p["oracle"] = json!({
                    "diam": oracle::oracle_diameter(norm, k, &grid),
                    "constant_width": oracle::oracle_constant_width(norm, k, 2000, 1e-9),
                });
            }
            Outcome::plain(p)
        }
        "check-u1" => {
            let c = check_u1(norm)?;
            let holds = c.verdict.verdict.is_positive();
            Outcome::judged(c.to_json(), holds)
        }
        "check-um" => {
            let k = body(bodies, query)?;
            let m = arg(query, "m")
                .and_then(Value::as_u64)
                .map(|m| m as usize)
                .unwrap_or(k.vertices().len().saturating_sub(1));
            let c = check_um(norm, k, m, if sampled_mode { 1e-6 } else { 0.0 })?;
            let holds = c.unique.verdict.is_positive();
            Outcome::judged(c.to_json(), holds)
        }
        "ball-lemma" => {
            let x = vector_arg(query, "x")?;
            let y = vector_arg(query, "y")?;
            let gamma = rational_arg(query, "gamma")?;
            let l = ball_intersection_identity(norm, &x, &y, &gamma)?;
            Outcome::judged(l.to_json(), l.holds)
        }
        "convexity" => {
            let grid = match arg(query, "epsilons").and_then(Value::as_array) {
                Some(list) => list.iter().map(rational_from_json).collect::<Result<Vec<_>>>()?,
                None => default_epsilon_grid(),
            };
            let p = convexity_profile(norm, &grid, opts.tol)?;
            Outcome::plain(p.to_json())
        }
        "extend" => {
            let k = body(bodies, query)?;
            let e = experiment_extend_simplex(norm, k, opts.tol)?;
            let mut p = e.to_json();
            if !e.curve.is_empty() {
                // deviation of the sampled equidistant curve from its best
                // circle about the axis through the first two vertices
                p["curve_samples"] = json!(e.curve.len());
            }
            Outcome::judged(p, e.extension_exists)
        }
        "properties" => {
            let names: Vec<String> = match arg(query, "instances").and_then(Value::as_array) {
                Some(list) => list.iter().filter_map(|v| v.as_str().map(String::from)).collect(),
                None => bodies.keys().cloned().collect(),
            };
            let instances = names
                .iter()
                .map(|n| {
                    bodies
                        .get(n)
                        .cloned()
                        .ok_or_else(|| Error::Scene(format!("no body named `{n}`")))
                })
                .collect::<Result<Vec<_>>>()?;
            let verdicts = experiment_properties_ade(norm, &instances)?;
            let all = verdicts.iter().all(|v| v.verdict.is_positive());
            let mut p = Map::new();
            for v in verdicts {
                p.insert(v.property.to_string(), v.to_json());
            }
            Outcome::judged(Value::Object(p), all)
        }
        other => return Err(Error::Parse(format!("unknown operation `{other}`"))),
    };
    if let Value::Object(map) = &mut out.payload {
        map.insert("op".into(), json!(op));
    }
    Ok(out)
}

/// Parses a list of coordinate strings such as `"1/2,0,-1"`.
pub fn parse_point(text: &str) -> Result<Vector> {
    text.split(',')
        .map(|c| parse_rational(c.trim()))
        .collect::<Result<Vec<_>>>()
        .map(Vector::new)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l1_segment() -> (Norm, Bodies) {
        let mut b = Bodies::new();
        b.insert(
            "K".into(),
            Polytope::segment(&Vector::from_ints(&[-1, 0]), &Vector::from_ints(&[1, 0])).unwrap(),
        );
        (Norm::l1(2).unwrap(), b)
    }

    #[test]
    fn diam_with_oracle() {
        let (n, b) = l1_segment();
        let opts = Options {
            oracle: true,
            ..Options::default()
        };
        let out = execute(&n, &b, &json!({"op": "diam"}), &opts).unwrap();
        assert_eq!(out.payload["diam"], json!("2/1"));
        assert_eq!(out.payload["oracle"]["agrees"], json!(true));
    }

    #[test]
    fn eta_membership_crosscheck() {
        let (n, b) = l1_segment();
        let opts = Options {
            oracle: true,
            ..Options::default()
        };
        let out = execute(&n, &b, &json!({"op": "eta"}), &opts).unwrap();
        assert_eq!(out.payload["oracle"]["agrees"], json!(true));
    }

    #[test]
    fn unknown_operations_fail() {
        let (n, b) = l1_segment();
        assert!(execute(&n, &b, &json!({"op": "nope"}), &Options::default()).is_err());
        assert!(execute(&n, &b, &json!({"op": "diam", "body": "L"}), &Options::default()).is_err());
    }

    #[test]
    fn points_parse() {
        assert_eq!(parse_point("1/2, -1").unwrap().to_string(), Vector::parse(&["1/2", "-1"]).unwrap().to_string());
    }
}
