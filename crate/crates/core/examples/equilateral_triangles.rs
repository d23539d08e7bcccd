//! Equilateral triangles: unique completions and extensions to simplices.

use widthlab::completeness::{check_um, experiment_extend_simplex};
use widthlab::norms::catalog;
use widthlab::{Norm, Polytope, Result, Vector};

fn triangle(points: &[[i64; 3]]) -> Result<Polytope> {
    Polytope::from_points(&points.iter().map(|p| Vector::from_ints(p)).collect::<Vec<_>>())
}

fn main() -> Result<()> {
    let l1 = Norm::l1(3)?;
    let t = triangle(&[[-1, 0, 0], [0, 1, 0], [1, 0, 0]])?;
    let c = check_um(&l1, &t, 2, 0.0)?;
    println!(
        "l1: side {}, unique completion {}, completion is a ball {}",
        c.side,
        c.unique.verdict.name(),
        c.ball.verdict.name()
    );

    let axis = triangle(&[[0, 0, 1], [0, 0, -1], [1, 0, 0]])?;
    for norm in [Norm::bicone(), catalog::hexagonal_bipyramid()] {
        let e = experiment_extend_simplex(&norm, &axis, 1e-6)?;
        let candidates: Vec<String> = e.candidates.iter().map(|v| format!("{:.6?}", v.to_f64())).collect();
        println!(
            "{norm}: points at distance {} from all vertices: {}; extends to a simplex: {}",
            e.side,
            candidates.join(" "),
            e.extension_exists
        );
    }
    Ok(())
}
