//! Every derived corpus value is reproduced here by the oracle its scene
//! names, independently of the exact modules.

use serde_json::Value;

use widthlab::oracle::{oracle_ball_intersection_boundary, oracle_diameter_points, oracle_membership_eta, oracle_widths, OracleGauge};
use widthlab::sampled::spatial_modulus;
use widthlab::scenarios::{load_corpus, load_scene, Provenance, Scene, CORPUS_DIR};
use widthlab::{Polytope, Vector};

fn scene(name: &str) -> Scene {
    load_scene(format!("{CORPUS_DIR}/{name}.json")).unwrap()
}

fn expected<'a>(s: &'a Scene, key: &str) -> &'a Value {
    s.expected[key].value.as_ref().unwrap()
}

fn floats(v: &Value) -> Vec<f64> {
    Vector::from_json(v).unwrap().to_f64()
}

#[test]
fn every_derived_value_is_covered_here() {
    let covered = [
        ("l1_tetrahedron_width", "min_width_functional"),
        ("linf_segment", "diam_eta"),
        ("linf_segment", "eta"),
        ("l1_3d_u1", "u"),
        ("hex_bipyramid_triangle", "extension_exists"),
        ("convexity_icosahedron", "eps0"),
    ];
    for s in load_corpus(CORPUS_DIR).unwrap() {
        for (key, e) in &s.expected {
            if e.provenance == Provenance::Derived {
                assert!(covered.contains(&(s.name.as_str(), key.as_str())), "{}: {key}", s.name);
            }
        }
    }
}

#[test]
fn tetrahedron_least_width_functional() {
    let s = scene("l1_tetrahedron_width");
    let k = &s.bodies["K"];
    let gauge = OracleGauge::from_norm(&s.norm);
    let f = floats(expected(&s, "min_width_functional"));
    assert!((gauge.dual(&f) - 1.0).abs() < 1e-12);
    let values: Vec<f64> = k
        .vertices()
        .iter()
        .map(|v| v.to_f64().iter().zip(&f).map(|(a, b)| a * b).sum())
        .collect();
    let w = values.iter().cloned().fold(f64::MIN, f64::max) - values.iter().cloned().fold(f64::MAX, f64::min);
    assert!((w - 2.0).abs() < 1e-12);
    // no sampled direction does better
    let (lo, _) = oracle_widths(&s.norm, k, 4000);
    assert!(lo >= 2.0 - 1e-9, "{lo}");
}

#[test]
fn linf_segment_wide_hull() {
    let s = scene("linf_segment");
    let k = &s.bodies["K"];
    let centers: Vec<Vec<f64>> = k.vertices().iter().map(Vector::to_f64).collect();
    let boundary = oracle_ball_intersection_boundary(&s.norm, &centers, 2.0, &[0.0, 0.0], 720);
    let d = oracle_diameter_points(&OracleGauge::from_norm(&s.norm), &boundary);
    let frozen = Vector::from_json(&Value::Array(vec![expected(&s, "diam_eta").clone()]))
        .unwrap()
        .to_f64()[0];
    assert!((d - frozen).abs() < 1e-9, "{d}");

    let eta = Polytope::from_json(expected(&s, "eta")).unwrap();
    for v in eta.vertices() {
        let p = v.to_f64();
        assert!(oracle_membership_eta(&s.norm, k, &p, 1e-12));
        let outside: Vec<f64> = p.iter().map(|c| c * 1.01).collect();
        assert!(!oracle_membership_eta(&s.norm, k, &outside, 1e-12));
    }
}

#[test]
fn l1_space_first_unique_direction() {
    let s = scene("l1_3d_u1");
    let u = floats(expected(&s, "u"));
    let minus: Vec<f64> = u.iter().map(|c| -c).collect();
    let boundary = oracle_ball_intersection_boundary(&s.norm, &[u.clone(), minus], 2.0, &[0.0; 3], 4000);
    let d = oracle_diameter_points(&OracleGauge::from_norm(&s.norm), &boundary);
    assert!((d - 2.0).abs() < 1e-6, "{d}");
    // the scan is in descending lexicographic order and (1, 0, 0) is the
    // largest vertex of the cross-polytope
    let ball = s.norm.ball().unwrap();
    assert_eq!(ball.vertices().last().unwrap().to_f64(), u);
}

#[test]
fn hex_bipyramid_triangle_extends() {
    let s = scene("hex_bipyramid_triangle");
    let t = &s.bodies["T"];
    let gauge = OracleGauge::from_norm(&s.norm);
    let vs: Vec<Vec<f64>> = t.vertices().iter().map(Vector::to_f64).collect();
    // (-1, 1, 0) lies off the plane y = 0 of the triangle
    let y = [-1.0, 1.0, 0.0];
    for v in &vs {
        assert!((gauge.dist(&y, v) - 2.0).abs() < 1e-12);
    }
    assert!(vs.iter().all(|v| v[1] == 0.0));
    assert_eq!(expected(&s, "extension_exists"), &Value::Bool(true));
}

#[test]
fn icosahedron_convexity_threshold() {
    let s = scene("convexity_icosahedron");
    // the sampled modulus bounds the true one from above
    assert!(spatial_modulus(&s.norm, 1.0, 64, 720) < 1e-9);
    assert!(spatial_modulus(&s.norm, 1.25, 64, 720) > 1e-6);
    assert_eq!(expected(&s, "eps0"), &Value::String("1".into()));
}
