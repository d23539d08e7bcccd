//! Floating-point machinery for analytic norms.
//!
//! Nothing here is exact. Boundaries of ball intersections are found by
//! bisection along rays, extrema by golden-section search around the best
//! sample. Every routine is deterministic.

use std::f64::consts::PI;

use crate::norms::Norm;

/// Bisection steps; enough to reach the f64 resolution on unit-scale data.
const BISECTION_STEPS: usize = 200;
const GOLDEN_STEPS: usize = 120;

/// `count` deterministic unit directions: equally spaced angles `2πk/count`
/// in the plane, a Fibonacci lattice on the sphere in space.
pub fn directions(dim: usize, count: usize) -> Vec<Vec<f64>> {
    match dim {
        2 => (0..count)
            .map(|k| {
                let t = 2.0 * PI * k as f64 / count as f64;
                vec![t.cos(), t.sin()]
            })
            .collect(),
        3 => {
            let golden = PI * (3.0 - 5f64.sqrt());
            (0..count)
                .map(|k| {
                    let z = 1.0 - 2.0 * (k as f64 + 0.5) / count as f64;
                    let r = (1.0 - z * z).sqrt();
                    let t = golden * k as f64;
                    vec![r * t.cos(), r * t.sin(), z]
                })
                .collect()
        }
        _ => panic!("directions are only defined in the plane and in space"),
    }
}

pub fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(p, q)| p - q).collect()
}

pub fn axpy(origin: &[f64], t: f64, dir: &[f64]) -> Vec<f64> {
    origin.iter().zip(dir).map(|(o, d)| o + t * d).collect()
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(p, q)| p * q).sum()
}

pub fn dist(norm: &Norm, a: &[f64], b: &[f64]) -> f64 {
    norm.eval_f64(&sub(a, b))
}

/// `max_i ‖x - c_i‖`.
pub fn farthest(norm: &Norm, points: &[Vec<f64>], x: &[f64]) -> f64 {
    points
        .iter()
        .map(|p| dist(norm, x, p))
        .fold(0.0, f64::max)
}

/// Largest pairwise distance with the first pair attaining it.
pub fn diameter(norm: &Norm, points: &[Vec<f64>]) -> (f64, usize, usize) {
    let mut best = (0.0, 0, 0);
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let d = dist(norm, &points[i], &points[j]);
            if d > best.0 {
                best = (d, i, j);
            }
        }
    }
    best
}

/// Smallest `t` where `f(t)` flips from true to false; `f(lo)` holds,
/// `f(hi)` does not.
fn bisect(mut lo: f64, mut hi: f64, f: impl Fn(f64) -> bool) -> f64 {
    for _ in 0..BISECTION_STEPS {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Maximizer of a unimodal `f` on `[lo, hi]`.
pub fn golden_max(mut lo: f64, mut hi: f64, f: impl Fn(f64) -> f64) -> (f64, f64) {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut a = hi - r * (hi - lo);
    let mut b = lo + r * (hi - lo);
    let (mut fa, mut fb) = (f(a), f(b));
    for _ in 0..GOLDEN_STEPS {
        if fa < fb {
            lo = a;
            a = b;
            fa = fb;
            b = lo + r * (hi - lo);
            fb = f(b);
        } else {
            hi = b;
            b = a;
            fb = fa;
            a = hi - r * (hi - lo);
            fa = f(a);
        }
        if hi - lo <= f64::EPSILON * (1.0 + lo.abs()) {
            break;
        }
    }
    if fa >= fb {
        (a, fa)
    } else {
        (b, fb)
    }
}

/// Intersection of the balls `B(c, radius)` over all centers `c`, seen from
/// an interior point.
#[derive(Clone, Debug)]
pub struct BallIntersection<'a> {
    pub norm: &'a Norm,
    pub centers: Vec<Vec<f64>>,
    pub radius: f64,
    pub origin: Vec<f64>,
}

impl<'a> BallIntersection<'a> {
    /// `origin` must lie in every ball.
    pub fn new(norm: &'a Norm, centers: Vec<Vec<f64>>, radius: f64, origin: Vec<f64>) -> Self {
        BallIntersection {
            norm,
            centers,
            radius,
            origin,
        }
    }

    pub fn contains(&self, x: &[f64], tol: f64) -> bool {
        farthest(self.norm, &self.centers, x) <= self.radius + tol
    }

    /// Boundary point on the ray `origin + t * dir`, `t >= 0`.
    pub fn exit_point(&self, dir: &[f64]) -> Vec<f64> {
        let reach = self.norm.eval_f64(dir);
        let spread = farthest(self.norm, &self.centers, &self.origin);
        let hi = (self.radius + spread) / reach * 1.01 + 1e-12;
        let t = bisect(0.0, hi, |t| {
            farthest(self.norm, &self.centers, &axpy(&self.origin, t, dir)) <= self.radius
        });
        axpy(&self.origin, t, dir)
    }

    /// Boundary point in the planar direction of angle `theta`.
    pub fn exit_at_angle(&self, theta: f64) -> Vec<f64> {
        self.exit_point(&[theta.cos(), theta.sin()])
    }

    pub fn boundary(&self, count: usize) -> Vec<Vec<f64>> {
        directions(self.origin.len(), count)
            .iter()
            .map(|d| self.exit_point(d))
            .collect()
    }

    /// `max <a, x>` over the body, given `ring = self.boundary(n)`. Planar
    /// bodies refine the best sample by golden-section search over the ray
    /// angle; spatial bodies return the best sample.
    pub fn support(&self, a: &[f64], ring: &[Vec<f64>]) -> f64 {
        let (k, best) = ring
            .iter()
            .enumerate()
            .map(|(k, p)| (k, dot(a, p)))
            .fold((0, f64::NEG_INFINITY), |acc, x| if x.1 > acc.1 { x } else { acc });
        if self.origin.len() != 2 || ring.is_empty() {
            return best;
        }
        let step = 2.0 * PI / ring.len() as f64;
        let center = step * k as f64;
        let (_, refined) = golden_max(center - step, center + step, |t| {
            dot(a, &self.exit_at_angle(t))
        });
        refined.max(best)
    }
}

/// Center and radius of a smallest enclosing ball of `points`, by compass
/// search from the bounding-box center.
pub fn enclosing_ball(norm: &Norm, points: &[Vec<f64>]) -> (Vec<f64>, f64) {
    let dim = points[0].len();
    let mut c: Vec<f64> = (0..dim)
        .map(|k| {
            let lo = points.iter().map(|p| p[k]).fold(f64::INFINITY, f64::min);
            let hi = points.iter().map(|p| p[k]).fold(f64::NEG_INFINITY, f64::max);
            0.5 * (lo + hi)
        })
        .collect();
    let mut value = farthest(norm, points, &c);
    let mut moves: Vec<Vec<f64>> = Vec::new();
    for mask in 1..3usize.pow(dim as u32) {
        let mut m = Vec::with_capacity(dim);
        let mut rest = mask;
        for _ in 0..dim {
            m.push(match rest % 3 {
                0 => 0.0,
                1 => 1.0,
                _ => -1.0,
            });
            rest /= 3;
        }
        moves.push(m);
    }
    let mut step = value.max(1e-12) / 2.0;
    while step > 1e-13 * value.max(1.0) {
        let mut improved = false;
        for m in &moves {
            let trial = axpy(&c, step, m);
            let v = farthest(norm, points, &trial);
            if v < value {
                c = trial;
                value = v;
                improved = true;
            }
        }
        if !improved {
            step /= 2.0;
        }
    }
    (c, value)
}

fn normalize(v: &[f64]) -> Vec<f64> {
    let n = dot(v, v).sqrt();
    v.iter().map(|x| x / n).collect()
}

fn cross(a: &[f64], b: &[f64]) -> Vec<f64> {
    vec![
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// Orthonormal pair spanning the plane orthogonal to `e`.
fn orthonormal_complement(e: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let k = (0..3)
        .min_by(|&i, &j| e[i].abs().total_cmp(&e[j].abs()))
        .expect("three coordinates");
    let mut axis = vec![0.0; 3];
    axis[k] = 1.0;
    let p = normalize(&cross(e, &axis));
    let q = cross(e, &p);
    (p, q)
}

/// The curve `{y : ‖y - a‖ = ‖y - b‖ = radius}` in space, one point per
/// half-plane bounded by the line through `a` and `b`, parametrized by the
/// angle `phi` of that half-plane.
#[derive(Clone, Debug)]
pub struct EquidistantCurve<'a> {
    norm: &'a Norm,
    a: Vec<f64>,
    b: Vec<f64>,
    radius: f64,
    mid: Vec<f64>,
    axis: Vec<f64>,
    frame: (Vec<f64>, Vec<f64>),
}

impl<'a> EquidistantCurve<'a> {
    /// Requires `‖a - b‖ <= 2 * radius`.
    pub fn new(norm: &'a Norm, a: &[f64], b: &[f64], radius: f64) -> Self {
        let axis = normalize(&sub(b, a));
        let frame = orthonormal_complement(&axis);
        EquidistantCurve {
            norm,
            a: a.to_vec(),
            b: b.to_vec(),
            radius,
            mid: a.iter().zip(b).map(|(p, q)| 0.5 * (p + q)).collect(),
            axis,
            frame,
        }
    }

    fn point(&self, s: f64, t: f64, phi: f64) -> Vec<f64> {
        let r: Vec<f64> = (0..3)
            .map(|k| phi.cos() * self.frame.0[k] + phi.sin() * self.frame.1[k])
            .collect();
        (0..3)
            .map(|k| self.mid[k] + t * self.axis[k] + s * r[k])
            .collect()
    }

    /// Point of the bisector `‖y - a‖ = ‖y - b‖` at radial offset `s`.
    fn balanced(&self, s: f64, phi: f64) -> Vec<f64> {
        let reach = self.norm.eval_f64(&self.axis);
        let span = (dist(self.norm, &self.a, &self.b) + 4.0 * self.radius + s) / reach;
        let t = bisect(-span, span, |t| {
            let y = self.point(s, t, phi);
            dist(self.norm, &y, &self.a) <= dist(self.norm, &y, &self.b)
        });
        self.point(s, t, phi)
    }

    pub fn at(&self, phi: f64) -> Vec<f64> {
        let r: Vec<f64> = (0..3)
            .map(|k| phi.cos() * self.frame.0[k] + phi.sin() * self.frame.1[k])
            .collect();
        let hi = 4.0 * self.radius / self.norm.eval_f64(&r) + 1e-12;
        let s = bisect(0.0, hi, |s| {
            dist(self.norm, &self.balanced(s, phi), &self.a) <= self.radius
        });
        self.balanced(s, phi)
    }

    pub fn sample(&self, count: usize) -> Vec<Vec<f64>> {
        (0..count)
            .map(|k| self.at(2.0 * PI * k as f64 / count as f64))
            .collect()
    }

    /// Points of the curve also at distance `radius` from `c`: sign changes
    /// of `‖y - c‖ - radius` refined by bisection, plus tangential maxima
    /// that reach zero within `touch_tol`.
    pub fn meet(&self, c: &[f64], count: usize, touch_tol: f64) -> Vec<Vec<f64>> {
        let g = |phi: f64| dist(self.norm, &self.at(phi), c) - self.radius;
        let step = 2.0 * PI / count as f64;
        let values: Vec<f64> = (0..count).map(|k| g(step * k as f64)).collect();
        let mut found: Vec<Vec<f64>> = Vec::new();
        let mut push = |y: Vec<f64>| {
            if !found.iter().any(|p| dist(self.norm, p, &y) < 1e-6) {
                found.push(y);
            }
        };
        for k in 0..count {
            let (p0, p1) = (step * k as f64, step * (k + 1) as f64);
            let (v0, v1) = (values[k], values[(k + 1) % count]);
            if v0 == 0.0 {
                push(self.at(p0));
            } else if (v0 < 0.0) != (v1 < 0.0) && v1 != 0.0 {
                let below = v0 < 0.0;
                let phi = bisect(p0, p1, |p| (g(p) < 0.0) == below);
                push(self.at(phi));
            }
            let prev = values[(k + count - 1) % count];
            if v0 < 0.0 && v0 >= prev && v0 >= v1 {
                let (phi, top) = golden_max(p0 - step, p0 + step, g);
                if top.abs() <= touch_tol {
                    push(self.at(phi));
                }
            }
        }
        found
    }
}

/// `δ(ε)` of a planar gauge: the least `1 - g((x + y) / 2)` over unit
/// vectors `x`, `y` with `g(x - y) = ε`, minimized over `samples` angles
/// of `x` and refined by golden-section search.
pub fn planar_modulus(gauge: &dyn Fn(f64, f64) -> f64, eps: f64, samples: usize) -> f64 {
    if eps <= 0.0 {
        return 0.0;
    }
    let unit = |t: f64| {
        let (c, s) = (t.cos(), t.sin());
        let g = gauge(c, s);
        (c / g, s / g)
    };
    let objective = |theta: f64| {
        let x = unit(theta);
        let phi = bisect(theta, theta + PI, |p| {
            let y = unit(p);
            gauge(x.0 - y.0, x.1 - y.1) < eps
        });
        let y = unit(phi);
        gauge(0.5 * (x.0 + y.0), 0.5 * (x.1 + y.1))
    };
    let step = 2.0 * PI / samples as f64;
    let (k, best) = (0..samples)
        .map(|k| (k, objective(step * k as f64)))
        .fold((0, f64::NEG_INFINITY), |acc, x| if x.1 > acc.1 { x } else { acc });
    let center = step * k as f64;
    let (_, refined) = golden_max(center - step, center + step, objective);
    (1.0 - refined.max(best)).max(0.0)
}

/// `δ(ε)` of a spatial norm estimated as the least planar modulus over
/// `planes` sampled two-dimensional subspaces (an upper estimate).
pub fn spatial_modulus(norm: &Norm, eps: f64, planes: usize, samples: usize) -> f64 {
    directions(3, planes)
        .iter()
        .map(|n| {
            let (u, w) = orthonormal_complement(n);
            let gauge = |s: f64, t: f64| {
                let x: Vec<f64> = (0..3).map(|k| s * u[k] + t * w[k]).collect();
                norm.eval_f64(&x)
            };
            planar_modulus(&gauge, eps, samples)
        })
        .fold(f64::INFINITY, f64::min)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fibonacci_directions_are_unit() {
        for d in directions(3, 50) {
            assert!((dot(&d, &d) - 1.0).abs() < 1e-12);
        }
        assert_eq!(directions(2, 8).len(), 8);
    }

    #[test]
    fn euclidean_lens() {
        let e = Norm::euclidean(2).unwrap();
        let lens = BallIntersection::new(&e, vec![vec![-1.0, 0.0], vec![1.0, 0.0]], 2.0, vec![0.0, 0.0]);
        let top = lens.exit_at_angle(PI / 2.0);
        assert!((top[1] - 3f64.sqrt()).abs() < 1e-12);
        let (d, _, _) = diameter(&e, &lens.boundary(720));
        assert!((d - 2.0 * 3f64.sqrt()).abs() < 1e-6);
    }

    #[test]
    fn enclosing_ball_of_a_square() {
        let e = Norm::euclidean(2).unwrap();
        let pts = vec![vec![0.0, 0.0], vec![2.0, 0.0], vec![0.0, 2.0], vec![2.0, 2.0]];
        let (c, r) = enclosing_ball(&e, &pts);
        assert!((r - 2f64.sqrt()).abs() < 1e-9);
        assert!((c[0] - 1.0).abs() < 1e-6 && (c[1] - 1.0).abs() < 1e-6);
    }

    #[test]
    fn euclidean_modulus() {
        let g = |x: f64, y: f64| x.hypot(y);
        let d = planar_modulus(&g, 1.0, 90);
        assert!((d - (1.0 - 3f64.sqrt() / 2.0)).abs() < 1e-9);
    }

    #[test]
    fn bicone_equidistant_circle() {
        let b = Norm::bicone();
        let curve = EquidistantCurve::new(&b, &[0.0, 0.0, -1.0], &[0.0, 0.0, 1.0], 2.0);
        for y in curve.sample(16) {
            assert!((y[0].hypot(y[1]) - 1.0).abs() < 1e-9);
            assert!(y[2].abs() < 1e-9);
        }
        let hits = curve.meet(&[1.0, 0.0, 0.0], 720, 1e-9);
        assert_eq!(hits.len(), 1);
        assert!((hits[0][0] + 1.0).abs() < 1e-6);
    }
}
