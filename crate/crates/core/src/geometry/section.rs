use num_traits::Signed;

use super::linalg::rank;
use super::{intersect_halfspaces, Halfspace, Polytope, Vector};
use crate::error::{Error, Result};

/// `P ∩ span{u, w}` expressed in `(u, w)` coordinates: the point `α u + β w`
/// becomes `(α, β)`.
pub fn plane_section(p: &Polytope, u: &Vector, w: &Vector) -> Result<Polytope> {
    p.check_dim(3)?;
    u.check_dim(3)?;
    w.check_dim(3)?;
    if rank(&[u.clone(), w.clone()]) < 2 {
        return Err(Error::DependentVectors);
    }
    let mut hs = Vec::with_capacity(p.facets().len());
    for f in p.facets() {
        let a = Vector(vec![f.normal().dot(u), f.normal().dot(w)]);
        if a.is_zero() {
            // plane parallel to the facet's normal complement
            if f.offset().is_negative() {
                return Err(Error::EmptyIntersection);
            }
            continue;
        }
        hs.push(Halfspace::new(a, f.offset().clone())?);
    }
    intersect_halfspaces(&hs)
}

/// Maps section coordinates back into space.
pub fn lift(point: &Vector, u: &Vector, w: &Vector) -> Vector {
    &u.scale(&point.0[0]) + &w.scale(&point.0[1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::convex_hull;
    use crate::scalar::frac;

    fn octahedron() -> Polytope {
        let mut pts = Vec::new();
        for k in 0..3 {
            for s in [1, -1] {
                let mut c = [0; 3];
                c[k] = s;
                pts.push(Vector::from_ints(&c));
            }
        }
        convex_hull(&pts).unwrap()
    }

    #[test]
    fn coordinate_section_of_octahedron() {
        let s = plane_section(&octahedron(), &Vector::unit(3, 0), &Vector::unit(3, 1)).unwrap();
        let expected =
            convex_hull(&[[1, 0], [-1, 0], [0, 1], [0, -1]].map(|c| Vector::from_ints(&c))).unwrap();
        assert_eq!(s, expected);
    }

    #[test]
    fn diagonal_section_is_a_parallelogram() {
        let s = plane_section(&octahedron(), &Vector::unit(3, 2), &Vector::from_ints(&[1, 1, 0])).unwrap();
        let expected = convex_hull(&[
            Vector::from_ints(&[1, 0]),
            Vector::from_ints(&[-1, 0]),
            Vector::new(vec![frac(0, 1), frac(1, 2)]),
            Vector::new(vec![frac(0, 1), frac(-1, 2)]),
        ])
        .unwrap();
        assert_eq!(s, expected);
    }

    #[test]
    fn dependent_spanning_vectors() {
        let u = Vector::from_ints(&[1, 2, 3]);
        let w = Vector::from_ints(&[2, 4, 6]);
        assert_eq!(plane_section(&octahedron(), &u, &w), Err(Error::DependentVectors));
    }
}
