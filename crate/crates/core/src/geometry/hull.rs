//! Exact convex hulls in the plane and in space.
//!
//! Planar hulls use the monotone chain. Spatial hulls are built
//! incrementally over a triangulated boundary; coplanar triangles are merged
//! afterwards and a point is kept as a vertex only when it lies on at least
//! three distinct facet planes.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{Signed, Zero};

use super::linalg::affine_rank;
use super::{Halfspace, Polytope, Vector};
use crate::error::{Error, Result};
use crate::scalar::Rational;

pub fn convex_hull(points: &[Vector]) -> Result<Polytope> {
    let first = points.first().ok_or(Error::EmptyInput)?;
    let dim = first.dim();
    if dim != 2 && dim != 3 {
        return Err(Error::UnsupportedDimension(dim));
    }
    for p in points {
        p.check_dim(dim)?;
    }
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();

    match affine_rank(&pts) {
        0 => Ok(point(pts.swap_remove(0))),
        1 => {
            // Lexicographic order is monotone along a line.
            let q = pts.pop().unwrap();
            Ok(segment(pts.swap_remove(0), q))
        }
        2 if dim == 2 => Ok(polygon_2d(&pts)),
        2 => Ok(polygon_3d(&pts)),
        _ => Ok(polyhedron(&pts)),
    }
}

fn canonical(dim: usize, affine_dim: usize, vertices: Vec<Vector>, facets: Vec<Halfspace>) -> Polytope {
    let mut vertices = vertices;
    vertices.sort();
    vertices.dedup();
    let facets: BTreeSet<Halfspace> = facets.iter().map(Halfspace::normalized).collect();
    Polytope::from_parts(dim, affine_dim, vertices, facets.into_iter().collect())
}

fn hs(normal: Vector, offset: Rational) -> Halfspace {
    Halfspace::new(normal, offset).expect("hull facet normals are nonzero")
}

/// Both halfspaces of the hyperplane `<n, x> = <n, p>`.
fn equality(n: &Vector, p: &Vector) -> [Halfspace; 2] {
    let b = n.dot(p);
    [hs(n.clone(), b.clone()), hs(-n, -b)]
}

fn point(p: Vector) -> Polytope {
    let dim = p.dim();
    let facets = (0..dim)
        .flat_map(|k| equality(&Vector::unit(dim, k), &p))
        .collect();
    canonical(dim, 0, vec![p], facets)
}

fn segment(p: Vector, q: Vector) -> Polytope {
    let dim = p.dim();
    let d = &q - &p;
    let mut facets = vec![hs(d.clone(), d.dot(&q)), hs(-&d, -d.dot(&p))];
    if dim == 2 {
        let n = Vector(vec![-d.0[1].clone(), d.0[0].clone()]);
        facets.extend(equality(&n, &p));
    } else {
        let n1 = (0..3)
            .map(|k| d.cross(&Vector::unit(3, k)))
            .find(|c| !c.is_zero())
            .unwrap();
        let n2 = d.cross(&n1);
        facets.extend(equality(&n1, &p));
        facets.extend(equality(&n2, &p));
    }
    canonical(dim, 1, vec![p, q], facets)
}

fn cross2(o: &[Rational], a: &[Rational], b: &[Rational]) -> Rational {
    (&a[0] - &o[0]) * (&b[1] - &o[1]) - (&a[1] - &o[1]) * (&b[0] - &o[0])
}

/// Indices of the strictly convex hull of sorted, distinct planar points in
/// counter-clockwise order.
fn monotone_chain(pts: &[[Rational; 2]]) -> Vec<usize> {
    let mut lower: Vec<usize> = Vec::new();
    for i in 0..pts.len() {
        while lower.len() >= 2
            && !cross2(&pts[lower[lower.len() - 2]], &pts[lower[lower.len() - 1]], &pts[i])
                .is_positive()
        {
            lower.pop();
        }
        lower.push(i);
    }
    let mut upper: Vec<usize> = Vec::new();
    for i in (0..pts.len()).rev() {
        while upper.len() >= 2
            && !cross2(&pts[upper[upper.len() - 2]], &pts[upper[upper.len() - 1]], &pts[i])
                .is_positive()
        {
            upper.pop();
        }
        upper.push(i);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

fn polygon_2d(pts: &[Vector]) -> Polytope {
    let planar: Vec<[Rational; 2]> = pts
        .iter()
        .map(|p| [p.0[0].clone(), p.0[1].clone()])
        .collect();
    let ring = monotone_chain(&planar);
    let vertices: Vec<Vector> = ring.iter().map(|&i| pts[i].clone()).collect();
    let facets = (0..vertices.len())
        .map(|k| {
            let p = &vertices[k];
            let q = &vertices[(k + 1) % vertices.len()];
            let d = q - p;
            let n = Vector(vec![d.0[1].clone(), -d.0[0].clone()]);
            let b = n.dot(p);
            hs(n, b)
        })
        .collect();
    canonical(2, 2, vertices, facets)
}

fn polygon_3d(pts: &[Vector]) -> Polytope {
    let p0 = &pts[0];
    let normal = pts[1..]
        .iter()
        .flat_map(|a| pts[1..].iter().map(move |b| (a - p0).cross(&(b - p0))))
        .find(|n| !n.is_zero())
        .expect("planar point set has a nonzero normal");
    // Project along a coordinate the plane is not parallel to.
    let drop = (0..3).find(|&k| !normal.0[k].is_zero()).unwrap();
    let keep: Vec<usize> = (0..3).filter(|&k| k != drop).collect();
    let mut order: Vec<usize> = (0..pts.len()).collect();
    let projected: Vec<[Rational; 2]> = pts
        .iter()
        .map(|p| [p.0[keep[0]].clone(), p.0[keep[1]].clone()])
        .collect();
    order.sort_by(|&a, &b| projected[a].cmp(&projected[b]));
    let sorted: Vec<[Rational; 2]> = order.iter().map(|&i| projected[i].clone()).collect();
    let ring: Vec<Vector> = monotone_chain(&sorted)
        .into_iter()
        .map(|i| pts[order[i]].clone())
        .collect();

    let mut facets: Vec<Halfspace> = equality(&normal, p0).into();
    for k in 0..ring.len() {
        let p = &ring[k];
        let q = &ring[(k + 1) % ring.len()];
        let r = &ring[(k + 2) % ring.len()];
        let mut m = (q - p).cross(&normal);
        if m.dot(&(r - p)).is_positive() {
            m = -&m;
        }
        let b = m.dot(p);
        facets.push(hs(m, b));
    }
    canonical(3, 2, ring, facets)
}

struct Face {
    v: [usize; 3],
    normal: Vector,
    offset: Rational,
}

fn face(pts: &[Vector], v: [usize; 3], interior: &Vector) -> Face {
    let [a, b, c] = v;
    let mut normal = (&pts[b] - &pts[a]).cross(&(&pts[c] - &pts[a]));
    let mut offset = normal.dot(&pts[a]);
    if normal.dot(interior) > offset {
        normal = -&normal;
        offset = -offset;
    }
    Face { v, normal, offset }
}

fn polyhedron(pts: &[Vector]) -> Polytope {
    let i0 = 0;
    let i1 = 1;
    let d1 = &pts[i1] - &pts[i0];
    let i2 = (2..pts.len())
        .find(|&j| !d1.cross(&(&pts[j] - &pts[i0])).is_zero())
        .unwrap();
    let n = d1.cross(&(&pts[i2] - &pts[i0]));
    let i3 = (2..pts.len())
        .find(|&j| !n.dot(&(&pts[j] - &pts[i0])).is_zero())
        .unwrap();
    let interior = [i0, i1, i2, i3]
        .iter()
        .fold(Vector::zero(3), |acc, &i| &acc + &pts[i])
        .scale(&Rational::new(1.into(), 4.into()));

    let mut faces: Vec<Face> = [[i0, i1, i2], [i0, i1, i3], [i0, i2, i3], [i1, i2, i3]]
        .into_iter()
        .map(|v| face(pts, v, &interior))
        .collect();

    for (j, p) in pts.iter().enumerate() {
        if [i0, i1, i2, i3].contains(&j) {
            continue;
        }
        let visible: Vec<bool> = faces.iter().map(|f| f.normal.dot(p) > f.offset).collect();
        if !visible.iter().any(|&v| v) {
            continue;
        }
        let mut edge_count: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for (f, _) in faces.iter().zip(&visible).filter(|(_, &v)| v) {
            for k in 0..3 {
                let (a, b) = (f.v[k], f.v[(k + 1) % 3]);
                *edge_count.entry((a.min(b), a.max(b))).or_default() += 1;
            }
        }
        let mut next: Vec<Face> = faces
            .into_iter()
            .zip(&visible)
            .filter(|(_, &v)| !v)
            .map(|(f, _)| f)
            .collect();
        for ((a, b), count) in edge_count {
            if count == 1 {
                next.push(face(pts, [a, b, j], &interior));
            }
        }
        faces = next;
    }

    let planes: BTreeSet<Halfspace> = faces
        .iter()
        .map(|f| hs(f.normal.clone(), f.offset.clone()).normalized())
        .collect();
    let used: BTreeSet<usize> = faces.iter().flat_map(|f| f.v).collect();
    let vertices: Vec<Vector> = used
        .into_iter()
        .map(|i| &pts[i])
        .filter(|p| planes.iter().filter(|h| h.is_tight(p)).count() >= 3)
        .cloned()
        .collect();
    canonical(3, 3, vertices, planes.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn pts(list: &[&[i64]]) -> Vec<Vector> {
        list.iter().map(|c| Vector::from_ints(c)).collect()
    }

    #[test]
    fn diamond() {
        let p = convex_hull(&pts(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1], &[0, 0]])).unwrap();
        assert_eq!(p.vertices().len(), 4);
        assert_eq!(p.facets().len(), 4);
        for f in p.facets() {
            assert_eq!(f.offset(), &int(1));
            assert!(f.normal().0.iter().all(|c| c.abs() == int(1)));
        }
    }

    #[test]
    fn tetrahedron() {
        let p = convex_hull(&pts(&[&[-1, -1, -1], &[1, 1, -1], &[1, -1, 1], &[-1, 1, 1]])).unwrap();
        assert_eq!(p.affine_dim(), 3);
        assert_eq!(p.vertices().len(), 4);
        assert_eq!(p.facets().len(), 4);
    }

    #[test]
    fn collinear_points_give_a_segment() {
        let p = convex_hull(&pts(&[&[1, 1], &[0, 0], &[2, 2]])).unwrap();
        assert_eq!(p.affine_dim(), 1);
        assert_eq!(p.vertices(), &pts(&[&[0, 0], &[2, 2]])[..]);
    }

    #[test]
    fn cube_with_interior_and_face_points() {
        let mut list = Vec::new();
        for x in [-1, 0, 1] {
            for y in [-1, 0, 1] {
                for z in [-1, 0, 1] {
                    list.push(Vector::from_ints(&[x, y, z]));
                }
            }
        }
        let p = convex_hull(&list).unwrap();
        assert_eq!(p.vertices().len(), 8);
        assert_eq!(p.facets().len(), 6);
    }

    #[test]
    fn planar_polygon_in_space() {
        let p = convex_hull(&pts(&[&[0, 0, 1], &[1, 0, 1], &[1, 1, 1], &[0, 1, 1], &[1, 0, 1]])).unwrap();
        assert_eq!(p.affine_dim(), 2);
        assert_eq!(p.vertices().len(), 4);
        // plane pair + four edges
        assert_eq!(p.facets().len(), 6);
        assert!(p.contains(&Vector::parse(&["1/2", "1/2", "1"]).unwrap()));
        assert!(!p.contains(&Vector::parse(&["1/2", "1/2", "2"]).unwrap()));
    }

    #[test]
    fn empty_and_mixed_dimension_inputs() {
        assert_eq!(convex_hull(&[]), Err(Error::EmptyInput));
        assert!(matches!(
            convex_hull(&pts(&[&[0, 0], &[1, 0, 0]])),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
