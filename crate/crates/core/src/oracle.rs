//! Brute-force reference implementations for differential testing.
//!
//! Nothing here touches the exact pipeline: the gauge of a polytopal ball
//! is recomputed from its vertices alone (the least total weight over cone
//! decompositions `x = Σ μ_i v_i`, `μ >= 0`), all arithmetic is `f64`, and
//! every search is a grid or a random sample.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::Polytope;
use crate::norms::{Norm, NormKind};

/// Grid points per axis when none is given.
pub const DEFAULT_RESOLUTION: usize = 201;
/// Upper bound on the number of points any oracle materializes at once.
pub const POINT_CAP: usize = 70_000;

/// Axis-aligned box sampled on a regular grid.
#[derive(Clone, Debug, PartialEq)]
pub struct GridSpec {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
    /// Points per axis, at least 3.
    pub resolution: usize,
    pub seed: u64,
}

impl GridSpec {
    pub fn new(lo: Vec<f64>, hi: Vec<f64>, resolution: usize, seed: u64) -> Result<GridSpec> {
        if resolution < 3 {
            return Err(Error::Precondition(format!("grid resolution {resolution} is below 3")));
        }
        if lo.len() != hi.len() {
            return Err(Error::DimensionMismatch {
                expected: lo.len(),
                found: hi.len(),
            });
        }
        Ok(GridSpec {
            lo,
            hi,
            resolution,
            seed,
        })
    }

    /// Bounding box of `points` padded by `pad` on every side.
    pub fn around(points: &[Vec<f64>], pad: f64, resolution: usize, seed: u64) -> Result<GridSpec> {
        let dim = points.first().ok_or(Error::EmptyInput)?.len();
        let lo = (0..dim)
            .map(|k| points.iter().map(|p| p[k]).fold(f64::INFINITY, f64::min) - pad)
            .collect();
        let hi = (0..dim)
            .map(|k| points.iter().map(|p| p[k]).fold(f64::NEG_INFINITY, f64::max) + pad)
            .collect();
        GridSpec::new(lo, hi, resolution, seed)
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    /// Largest distance between neighbouring grid points along an axis.
    pub fn spacing(&self) -> f64 {
        self.lo
            .iter()
            .zip(&self.hi)
            .map(|(l, h)| (h - l) / (self.resolution - 1) as f64)
            .fold(0.0, f64::max)
    }

    /// Resolution actually used, shrunk so the grid stays under `POINT_CAP`.
    pub fn capped_resolution(&self) -> usize {
        let mut r = self.resolution;
        while r > 3 && r.pow(self.dim() as u32) > POINT_CAP {
            r -= 1;
        }
        r
    }

    pub fn points(&self) -> Vec<Vec<f64>> {
        let r = self.capped_resolution();
        let dim = self.dim();
        let total = r.pow(dim as u32);
        (0..total)
            .map(|mut idx| {
                (0..dim)
                    .map(|k| {
                        let i = idx % r;
                        idx /= r;
                        self.lo[k] + (self.hi[k] - self.lo[k]) * i as f64 / (r - 1) as f64
                    })
                    .collect()
            })
            .collect()
    }

    /// `count` uniform points in the box, deterministic in the seed.
    pub fn random_points(&self, count: usize) -> Vec<Vec<f64>> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        (0..count)
            .map(|_| {
                self.lo
                    .iter()
                    .zip(&self.hi)
                    .map(|(l, h)| rng.gen_range(*l..=*h))
                    .collect()
            })
            .collect()
    }
}

/// A gauge evaluated without facets.
#[derive(Clone, Debug)]
pub enum OracleGauge {
    /// Unit ball `conv(vertices)`; `cones` lists the linearly independent
    /// `d`-subsets of vertex indices.
    Vertices {
        vertices: Vec<Vec<f64>>,
        cones: Vec<Vec<usize>>,
    },
    Euclidean,
    /// `conv(unit disk × {0} ∪ {±e₃})`.
    Bicone,
}

fn det2(m: [[f64; 2]; 2]) -> f64 {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

fn det3(m: [[f64; 3]; 3]) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Cramer's rule for `Σ μ_i cols[i] = x`.
fn cramer(cols: &[&Vec<f64>], x: &[f64]) -> Option<Vec<f64>> {
    match x.len() {
        2 => {
            let m = |c: [&[f64]; 2]| [[c[0][0], c[1][0]], [c[0][1], c[1][1]]];
            let d = det2(m([cols[0], cols[1]]));
            if d.abs() < 1e-14 {
                return None;
            }
            Some(vec![det2(m([x, cols[1]])) / d, det2(m([cols[0], x])) / d])
        }
        3 => {
            let m = |c: [&[f64]; 3]| {
                [
                    [c[0][0], c[1][0], c[2][0]],
                    [c[0][1], c[1][1], c[2][1]],
                    [c[0][2], c[1][2], c[2][2]],
                ]
            };
            let d = det3(m([cols[0], cols[1], cols[2]]));
            if d.abs() < 1e-14 {
                return None;
            }
            Some(vec![
                det3(m([x, cols[1], cols[2]])) / d,
                det3(m([cols[0], x, cols[2]])) / d,
                det3(m([cols[0], cols[1], x])) / d,
            ])
        }
        _ => None,
    }
}

impl OracleGauge {
    pub fn from_norm(norm: &Norm) -> OracleGauge {
        match (norm.kind(), norm.ball()) {
            (NormKind::L2, _) => OracleGauge::Euclidean,
            (NormKind::Bicone, _) => OracleGauge::Bicone,
            (_, Some(ball)) => {
                let vertices: Vec<Vec<f64>> = ball.vertices().iter().map(|v| v.to_f64()).collect();
                let dim = norm.dim();
                let n = vertices.len();
                let mut cones = Vec::new();
                let mut idx: Vec<usize> = (0..dim).collect();
                loop {
                    let cols: Vec<&Vec<f64>> = idx.iter().map(|&i| &vertices[i]).collect();
                    if cramer(&cols, &vec![0.0; dim]).is_some() {
                        cones.push(idx.clone());
                    }
                    // next index combination
                    let mut i = dim;
                    while i > 0 && idx[i - 1] == n - dim + i - 1 {
                        i -= 1;
                    }
                    if i == 0 {
                        break;
                    }
                    idx[i - 1] += 1;
                    for j in i..dim {
                        idx[j] = idx[j - 1] + 1;
                    }
                }
                OracleGauge::Vertices { vertices, cones }
            }
            _ => unreachable!("non-analytic norms carry a ball"),
        }
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        match self {
            OracleGauge::Euclidean => x.iter().map(|c| c * c).sum::<f64>().sqrt(),
            OracleGauge::Bicone => {
                // (p, z) = (1 - s)(q, 0) + s(0, 0, ±1) with |q| <= 1 forces
                // s = |z| and |p| <= 1 - |z|
                let inside = |t: f64| x[0].hypot(x[1]) / t <= 1.0 - x[2].abs() / t;
                if x.iter().all(|c| *c == 0.0) {
                    return 0.0;
                }
                let (mut lo, mut hi) = (0.0, 1.0);
                while !inside(hi) {
                    lo = hi;
                    hi *= 2.0;
                }
                for _ in 0..200 {
                    let mid = 0.5 * (lo + hi);
                    if mid <= lo || mid >= hi {
                        break;
                    }
                    if inside(mid) {
                        hi = mid;
                    } else {
                        lo = mid;
                    }
                }
                hi
            }
            OracleGauge::Vertices { vertices, cones } => {
                if x.iter().all(|c| *c == 0.0) {
                    return 0.0;
                }
                let mut best = f64::INFINITY;
                for cone in cones {
                    let cols: Vec<&Vec<f64>> = cone.iter().map(|&i| &vertices[i]).collect();
                    if let Some(mu) = cramer(&cols, x) {
                        if mu.iter().all(|m| *m >= -1e-12) {
                            best = best.min(mu.iter().sum());
                        }
                    }
                }
                best
            }
        }
    }

    /// `max <a, x>` over the unit ball.
    pub fn dual(&self, a: &[f64]) -> f64 {
        match self {
            OracleGauge::Euclidean => a.iter().map(|c| c * c).sum::<f64>().sqrt(),
            // support of the disk or of a pole
            OracleGauge::Bicone => a[0].hypot(a[1]).max(a[2].abs()),
            OracleGauge::Vertices { vertices, .. } => vertices
                .iter()
                .map(|v| v.iter().zip(a).map(|(p, q)| p * q).sum::<f64>())
                .fold(f64::NEG_INFINITY, f64::max),
        }
    }

    pub fn dist(&self, x: &[f64], y: &[f64]) -> f64 {
        let d: Vec<f64> = x.iter().zip(y).map(|(p, q)| p - q).collect();
        self.eval(&d)
    }
}

fn vertices_f64(body: &Polytope) -> Vec<Vec<f64>> {
    body.vertices().iter().map(|v| v.to_f64()).collect()
}

/// Largest pairwise distance in a point set.
pub fn oracle_diameter_points(gauge: &OracleGauge, points: &[Vec<f64>]) -> f64 {
    let mut best: f64 = 0.0;
    for (i, p) in points.iter().enumerate() {
        for q in &points[i + 1..] {
            best = best.max(gauge.dist(p, q));
        }
    }
    best
}

/// Diameter from the vertices plus points spread along every vertex pair;
/// never above the true value.
pub fn oracle_diameter(norm: &Norm, body: &Polytope, grid: &GridSpec) -> f64 {
    let gauge = OracleGauge::from_norm(norm);
    let vs = vertices_f64(body);
    let pairs = vs.len() * (vs.len() - 1) / 2;
    let per_pair = 2000usize.checked_div(pairs).map_or(0, |cap| (grid.resolution - 2).min(cap));
    let mut pts = vs.clone();
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            for k in 1..=per_pair {
                let t = k as f64 / (per_pair + 1) as f64;
                pts.push(vs[i].iter().zip(&vs[j]).map(|(a, b)| a + t * (b - a)).collect());
            }
        }
    }
    oracle_diameter_points(&gauge, &pts)
}

/// `‖x - v‖ <= diam K` for every vertex `v`, with a relative slack `tol`.
pub fn oracle_membership_eta(norm: &Norm, body: &Polytope, x: &[f64], tol: f64) -> bool {
    let gauge = OracleGauge::from_norm(norm);
    let vs = vertices_f64(body);
    let d = oracle_diameter_points(&gauge, &vs);
    vs.iter().all(|v| gauge.dist(x, v) <= d * (1.0 + tol))
}

/// Least and greatest width over `directions` dual-normalized directions
/// (spread evenly on the circle or on the sphere).
pub fn oracle_widths(norm: &Norm, body: &Polytope, directions: usize) -> (f64, f64) {
    let gauge = OracleGauge::from_norm(norm);
    let vs = vertices_f64(body);
    let dim = norm.dim();
    let mut lo = f64::INFINITY;
    let mut hi: f64 = 0.0;
    for k in 0..directions {
        let dir: Vec<f64> = if dim == 2 {
            let t = std::f64::consts::PI * k as f64 / directions as f64;
            vec![t.cos(), t.sin()]
        } else {
            // spiral on the upper half sphere
            let z = (k as f64 + 0.5) / directions as f64;
            let r = (1.0 - z * z).sqrt();
            let t = 2.399_963_229_728_653 * k as f64;
            vec![r * t.cos(), r * t.sin(), z]
        };
        let s = gauge.dual(&dir);
        let values: Vec<f64> = vs
            .iter()
            .map(|v| v.iter().zip(&dir).map(|(p, q)| p * q).sum::<f64>() / s)
            .collect();
        let w = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
            - values.iter().cloned().fold(f64::INFINITY, f64::min);
        lo = lo.min(w);
        hi = hi.max(w);
    }
    (lo, hi)
}

/// Sampled widths all reach the diameter (within `tol`, relative).
pub fn oracle_constant_width(norm: &Norm, body: &Polytope, directions: usize, tol: f64) -> bool {
    let gauge = OracleGauge::from_norm(norm);
    let d = oracle_diameter_points(&gauge, &vertices_f64(body));
    let (lo, _) = oracle_widths(norm, body, directions);
    lo >= d * (1.0 - tol)
}

/// Circumradius by exhaustive grid search followed by compass refinement.
pub fn oracle_circumradius(norm: &Norm, body: &Polytope, grid: &GridSpec) -> (Vec<f64>, f64) {
    let gauge = OracleGauge::from_norm(norm);
    let vs = vertices_f64(body);
    let reach = |c: &[f64]| vs.iter().map(|v| gauge.dist(c, v)).fold(0.0, f64::max);
    let mut best = (vec![0.0; norm.dim()], f64::INFINITY);
    for p in grid.points() {
        let r = reach(&p);
        if r < best.1 {
            best = (p, r);
        }
    }
    let dim = norm.dim();
    // every move in {-1, 0, 1}^d except zero
    let moves: Vec<Vec<f64>> = (1..3usize.pow(dim as u32))
        .map(|m| (0..dim).map(|k| [0.0, 1.0, -1.0][m / 3usize.pow(k as u32) % 3]).collect())
        .collect();
    let mut step = grid.spacing();
    while step > 1e-12 {
        let mut moved = false;
        for m in &moves {
            let c: Vec<f64> = best.0.iter().zip(m).map(|(x, d)| x + step * d).collect();
            let r = reach(&c);
            if r < best.1 {
                best = (c, r);
                moved = true;
            }
        }
        if !moved {
            step /= 2.0;
        }
    }
    best
}

/// Boundary of `∩ B(c, radius)` along `count` rays from `origin`, by
/// bisection on the ray parameter.
pub fn oracle_ball_intersection_boundary(
    norm: &Norm,
    centers: &[Vec<f64>],
    radius: f64,
    origin: &[f64],
    count: usize,
) -> Vec<Vec<f64>> {
    let gauge = OracleGauge::from_norm(norm);
    let inside = |p: &[f64]| centers.iter().all(|c| gauge.dist(p, c) <= radius);
    let dim = origin.len();
    let mut rng = ChaCha8Rng::seed_from_u64(count as u64);
    (0..count)
        .map(|k| {
            let dir: Vec<f64> = if dim == 2 {
                let t = 2.0 * std::f64::consts::PI * k as f64 / count as f64;
                vec![t.cos(), t.sin()]
            } else {
                // rejection-sampled uniform direction
                loop {
                    let v: Vec<f64> = (0..3).map(|_| rng.gen_range(-1.0..=1.0)).collect();
                    let n = v.iter().map(|c| c * c).sum::<f64>().sqrt();
                    if n > 1e-3 && n <= 1.0 {
                        break v.iter().map(|c| c / n).collect();
                    }
                }
            };
            let (mut lo, mut hi) = (0.0, 1.0);
            let at = |t: f64| -> Vec<f64> { origin.iter().zip(&dir).map(|(o, d)| o + t * d).collect() };
            while inside(&at(hi)) {
                hi *= 2.0;
            }
            for _ in 0..100 {
                let mid = 0.5 * (lo + hi);
                if inside(&at(mid)) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            at(lo)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{convex_hull, Vector};

    fn tetrahedron() -> Polytope {
        convex_hull(&[[-1, -1, -1], [1, 1, -1], [1, -1, 1], [-1, 1, 1]].map(|c| Vector::from_ints(&c)))
            .unwrap()
    }

    #[test]
    fn cone_gauge_matches_closed_forms() {
        let l1 = OracleGauge::from_norm(&Norm::l1(3).unwrap());
        assert!((l1.eval(&[1.0, -2.0, 0.5]) - 3.5).abs() < 1e-12);
        let bicone = OracleGauge::from_norm(&Norm::bicone());
        assert!((bicone.eval(&[3.0, 4.0, 2.0]) - 7.0).abs() < 1e-12);
        let linf = OracleGauge::from_norm(&Norm::linf(2).unwrap());
        assert!((linf.eval(&[0.3, -0.7]) - 0.7).abs() < 1e-12);
        assert!((linf.dual(&[1.0, 1.0]) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn grid_rules() {
        assert!(GridSpec::new(vec![0.0], vec![1.0], 2, 0).is_err());
        let g = GridSpec::new(vec![0.0, 0.0, 0.0], vec![1.0, 1.0, 1.0], 201, 0).unwrap();
        assert!(g.capped_resolution().pow(3) <= POINT_CAP);
        assert_eq!(g.random_points(5), g.random_points(5));
    }

    #[test]
    fn tetrahedron_reference_values() {
        let l1 = Norm::l1(3).unwrap();
        let k = tetrahedron();
        let grid = GridSpec::around(&vertices_f64(&k), 0.5, 21, 7).unwrap();
        assert!((oracle_diameter(&l1, &k, &grid) - 4.0).abs() < 1e-12);
        assert!(!oracle_constant_width(&l1, &k, 400, 1e-9));
        let (_, r) = oracle_circumradius(&l1, &k, &grid);
        assert!((r - 3.0).abs() < 1e-9);
    }

    #[test]
    fn eta_membership_for_l1_segment() {
        let l1 = Norm::l1(2).unwrap();
        let k = Polytope::segment(&Vector::from_ints(&[-1, 0]), &Vector::from_ints(&[1, 0])).unwrap();
        assert!(oracle_membership_eta(&l1, &k, &[0.0, 1.0], 1e-12));
        assert!(!oracle_membership_eta(&l1, &k, &[0.0, 1.01], 1e-12));
    }
}
