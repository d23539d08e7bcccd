//! Halfspace intersection.
//!
//! Full-dimensional case: an exact LP finds a strictly interior point, the
//! normals are polarized around it, and the vertices are read off the facets
//! of the polar hull. Flat intersections (no interior) fall back to
//! enumerating d-subsets of tight constraints.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};

use super::linalg::solve;
use super::{convex_hull, Halfspace, Polytope, Vector};
use crate::error::{Error, Result};
use crate::lp::{LinearProgram, LpOutcome};
use crate::scalar::Rational;

pub fn intersect_halfspaces(halfspaces: &[Halfspace]) -> Result<Polytope> {
    let first = halfspaces.first().ok_or(Error::EmptyInput)?;
    let dim = first.dim();
    if dim != 2 && dim != 3 {
        return Err(Error::UnsupportedDimension(dim));
    }
    for h in halfspaces {
        if h.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: h.dim(),
            });
        }
    }
    let hs: Vec<Halfspace> = halfspaces
        .iter()
        .map(Halfspace::normalized)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();

    // maximize t  s.t.  <a_i, x> + |a_i|_1 t <= b_i,  t <= 1
    let mut lp = LinearProgram::new(dim + 1);
    for k in 0..dim {
        lp.set_free(k);
    }
    let mut obj = vec![Rational::zero(); dim + 1];
    obj[dim] = Rational::one();
    lp.maximize(obj);
    for h in &hs {
        let mut row = h.normal().0.clone();
        row.push(h.normal().0.iter().map(|c| c.abs()).sum());
        lp.add_le(row, h.offset().clone());
    }
    let mut cap = vec![Rational::zero(); dim + 1];
    cap[dim] = Rational::one();
    lp.add_le(cap, Rational::one());

    match lp.solve() {
        LpOutcome::Infeasible => Err(Error::EmptyIntersection),
        LpOutcome::Unbounded => unreachable!("the slack variable is capped"),
        LpOutcome::Optimal { value, x } => {
            if value.is_positive() {
                full_dimensional(&hs, Vector(x[..dim].to_vec()))
            } else {
                flat(&hs, dim)
            }
        }
    }
}

fn full_dimensional(hs: &[Halfspace], center: Vector) -> Result<Polytope> {
    let dual: Vec<Vector> = hs
        .iter()
        .map(|h| {
            let c = h.slack(&center);
            h.normal().scale(&c.recip())
        })
        .collect();
    let polar = convex_hull(&dual)?;
    if !polar.is_full_dimensional() {
        return Err(Error::UnboundedIntersection);
    }
    let mut vertices = Vec::with_capacity(polar.facets().len());
    for f in polar.facets() {
        // The origin must be strictly inside the polar hull.
        if !f.offset().is_positive() {
            return Err(Error::UnboundedIntersection);
        }
        // normalized facets have offset 1
        vertices.push(f.normal() + &center);
    }
    convex_hull(&vertices)
}

fn flat(hs: &[Halfspace], dim: usize) -> Result<Polytope> {
    for k in 0..dim {
        for sign in [1, -1] {
            let mut lp = LinearProgram::new(dim);
            for j in 0..dim {
                lp.set_free(j);
            }
            let mut obj = vec![Rational::zero(); dim];
            obj[k] = Rational::from_integer(sign.into());
            lp.maximize(obj);
            for h in hs {
                lp.add_le(h.normal().0.clone(), h.offset().clone());
            }
            if lp.solve() == LpOutcome::Unbounded {
                return Err(Error::UnboundedIntersection);
            }
        }
    }

    let mut vertices = BTreeSet::new();
    let mut idx: Vec<usize> = (0..dim).collect();
    loop {
        let rows: Vec<Vector> = idx.iter().map(|&i| hs[i].normal().clone()).collect();
        let rhs: Vec<Rational> = idx.iter().map(|&i| hs[i].offset().clone()).collect();
        if let Some(p) = solve(&rows, &rhs) {
            if !vertices.contains(&p) && hs.iter().all(|h| h.contains(&p)) {
                vertices.insert(p);
            }
        }
        if !next_combination(&mut idx, hs.len()) {
            break;
        }
    }
    if vertices.is_empty() {
        return Err(Error::UnboundedIntersection);
    }
    convex_hull(&vertices.into_iter().collect::<Vec<_>>())
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    for i in (0..k).rev() {
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn h(a: &[i64], b: i64) -> Halfspace {
        Halfspace::new(Vector::from_ints(a), int(b)).unwrap()
    }

    #[test]
    fn unit_square() {
        let p = intersect_halfspaces(&[h(&[1, 0], 1), h(&[-1, 0], 1), h(&[0, 1], 1), h(&[0, -1], 1)])
            .unwrap();
        assert_eq!(p.vertices().len(), 4);
        assert!(p.contains(&Vector::from_ints(&[1, 1])));
    }

    #[test]
    fn empty_and_unbounded() {
        assert_eq!(
            intersect_halfspaces(&[h(&[1, 0], 0), h(&[-1, 0], -1)]),
            Err(Error::EmptyIntersection)
        );
        assert_eq!(
            intersect_halfspaces(&[h(&[1, 0], 1), h(&[0, 1], 1)]),
            Err(Error::UnboundedIntersection)
        );
        // a flat but unbounded strip
        assert_eq!(
            intersect_halfspaces(&[h(&[1, 0], 0), h(&[-1, 0], 0), h(&[0, 1], 1)]),
            Err(Error::UnboundedIntersection)
        );
    }

    #[test]
    fn flat_intersections() {
        let p = intersect_halfspaces(&[h(&[1, 0], 0), h(&[-1, 0], 0), h(&[0, 1], 1), h(&[0, -1], 1)])
            .unwrap();
        assert_eq!(p.affine_dim(), 1);
        let q = intersect_halfspaces(&[
            h(&[1, 1], 1),
            h(&[-1, -1], 1),
            h(&[1, -1], 1),
            h(&[-1, 1], 1),
            h(&[1, 0], 0),
            h(&[-1, 0], 0),
            h(&[0, 1], 0),
            h(&[0, -1], 0),
        ])
        .unwrap();
        assert_eq!(q.affine_dim(), 0);
        assert_eq!(q.vertices(), &[Vector::from_ints(&[0, 0])]);
    }

    #[test]
    fn redundant_halfspaces_in_space() {
        let mut list = Vec::new();
        for k in 0..3 {
            for s in [1, -1] {
                let mut a = [0; 3];
                a[k] = s;
                list.push(h(&a, 1));
                list.push(h(&a, 2));
            }
        }
        list.push(h(&[1, 1, 1], 10));
        let cube = intersect_halfspaces(&list).unwrap();
        assert_eq!(cube.vertices().len(), 8);
        assert_eq!(cube.facets().len(), 6);
    }
}
