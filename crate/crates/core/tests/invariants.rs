//! Property-based invariants of the exact modules, each checked against an
//! independent computation where one exists.

use num_traits::Signed;
use proptest::prelude::*;

use widthlab::geometry::{convex_hull, intersect_halfspaces};
use widthlab::hulls::{tight_from_wide, wide_spherical_hull};
use widthlab::metrics::{circumradius, exact_diameter, width_report};
use widthlab::norms::catalog;
use widthlab::oracle::{oracle_circumradius, oracle_widths, GridSpec, OracleGauge};
use widthlab::scalar::{format_rational, frac, parse_rational};
use widthlab::{Norm, Polytope, Rational, Scalar, Vector};

fn point(dim: usize, range: i64) -> impl Strategy<Value = Vector> {
    proptest::collection::vec(-range..=range, dim).prop_map(|c| Vector::from_ints(&c))
}

fn body(dim: usize, range: i64, count: usize) -> impl Strategy<Value = Polytope> {
    proptest::collection::vec(point(dim, range), dim + 1..=count)
        .prop_filter_map("single point", |p| Polytope::from_points(&p).ok().filter(|k| k.vertices().len() >= 2))
}

fn rational() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=12).prop_map(|(n, d)| frac(n, d))
}

fn planar_norm() -> impl Strategy<Value = Norm> {
    prop_oneof![
        Just(Norm::l1(2).unwrap()),
        Just(Norm::linf(2).unwrap()),
        proptest::collection::vec(point(2, 3), 3)
            .prop_filter_map("degenerate ball", |half| Norm::from_symmetric_points(&half).ok()),
    ]
}

fn spatial_norm() -> impl Strategy<Value = Norm> {
    prop_oneof![
        Just(Norm::l1(3).unwrap()),
        Just(Norm::linf(3).unwrap()),
        Just(catalog::hexagonal_bipyramid()),
    ]
}

fn exact(s: Scalar) -> Rational {
    s.as_exact().cloned().expect("polytopal norms are exact")
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn rationals_round_trip(r in rational()) {
        prop_assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
    }

    #[test]
    fn norm_axioms(n in planar_norm(), x in point(2, 5), y in point(2, 5), s in rational()) {
        let nx = exact(n.eval(&x).unwrap());
        let ny = exact(n.eval(&y).unwrap());
        prop_assert_eq!(exact(n.eval(&x.scale(&s)).unwrap()), nx.clone() * s.abs());
        prop_assert!(exact(n.eval(&(&x + &y)).unwrap()) <= nx.clone() + ny);
        prop_assert_eq!(exact(n.eval(&-&x).unwrap()), nx);
    }

    #[test]
    fn exact_gauge_matches_cone_oracle(n in planar_norm(), x in point(2, 7)) {
        let g = OracleGauge::from_norm(&n);
        let v = exact(n.eval(&x).unwrap());
        prop_assert!((g.eval(&x.to_f64()) - widthlab::scalar::to_f64(&v)).abs() < 1e-9);
    }

    #[test]
    fn hull_is_idempotent_and_round_trips(k in body(3, 3, 8)) {
        prop_assert_eq!(&convex_hull(k.vertices()).unwrap(), &k);
        prop_assert_eq!(&Polytope::from_json(&k.to_json()).unwrap(), &k);
        if k.is_full_dimensional() {
            prop_assert_eq!(&intersect_halfspaces(k.facets()).unwrap(), &k);
        }
    }

    #[test]
    fn minkowski_sums_contain_vertex_sums(a in body(2, 3, 5), b in body(2, 3, 5)) {
        let s = a.minkowski_sum(&b).unwrap();
        prop_assert!(s.vertices().len() <= a.vertices().len() + b.vertices().len());
        for p in a.vertices() {
            for q in b.vertices() {
                prop_assert!(s.contains(&(p + q)));
            }
        }
    }

    #[test]
    fn largest_width_is_the_diameter(n in planar_norm(), k in body(2, 4, 6)) {
        let r = width_report(&n, &k, 0.0).unwrap();
        prop_assert_eq!(exact(r.max_width.clone()), exact_diameter(&n, &k).unwrap());
        prop_assert!(exact(r.min_width.clone()) <= exact(r.max_width.clone()));
        // sampled directions can only overestimate the least width
        let (lo, hi) = oracle_widths(&n, &k, 720);
        prop_assert!(lo >= r.min_width.to_f64() - 1e-9);
        prop_assert!(hi <= r.max_width.to_f64() + 1e-9);
    }

    #[test]
    fn circumradius_bounds(n in planar_norm(), k in body(2, 4, 6)) {
        let d = exact_diameter(&n, &k).unwrap();
        let c = circumradius(&n, &k).unwrap();
        let r = exact(c.radius.clone());
        // half the diameter below, two thirds of it above in the plane
        prop_assert!(r >= d.clone() * frac(1, 2));
        prop_assert!(r <= d * frac(2, 3));
        let pts: Vec<Vec<f64>> = k.vertices().iter().map(Vector::to_f64).collect();
        let grid = GridSpec::around(&pts, 1.0, 41, 0).unwrap();
        let (_, reference) = oracle_circumradius(&n, &k, &grid);
        prop_assert!((reference - c.radius.to_f64()).abs() < 1e-6);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 16, ..ProptestConfig::default() })]

    #[test]
    fn spatial_sandwich(n in spatial_norm(), k in body(3, 2, 5)) {
        let wide = wide_spherical_hull(&n, &k).unwrap();
        let tight = tight_from_wide(&n, &wide).unwrap();
        prop_assert!(tight.hull.contains_polytope(&k));
        prop_assert!(wide.hull.contains_polytope(&tight.hull));
        prop_assert_eq!(exact_diameter(&n, &tight.hull).unwrap(), wide.base_diameter.clone());
        // every vertex of eta(K) lies within diam K of every vertex of K
        for x in wide.hull.vertices() {
            for v in k.vertices() {
                prop_assert!(exact(n.distance(x, v).unwrap()) <= wide.base_diameter);
            }
        }
    }
}
