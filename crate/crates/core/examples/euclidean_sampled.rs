//! Sampled computations for analytic norms: the Euclidean Reuleaux
//! triangle and the bicone equidistant circle.

use widthlab::completeness::check_um;
use widthlab::sampled::EquidistantCurve;
use widthlab::{Norm, Polytope, Result, Vector};

fn main() -> Result<()> {
    let euclid = Norm::euclidean(2)?;
    let height = Vector::from_f64(&[0.5, 3f64.sqrt() / 2.0])?;
    let t = Polytope::from_points(&[Vector::from_ints(&[0, 0]), Vector::from_ints(&[1, 0]), height])?;
    let c = check_um(&euclid, &t, 2, 1e-6)?;
    println!(
        "Euclidean triangle: diam eta = {}, widths of eta in [{}, {}], circumradius {}",
        c.diam_eta, c.eta_widths.0, c.eta_widths.1, c.eta_circumradius
    );
    println!("  unique completion: {}, completion is a ball: {}", c.unique.verdict.name(), c.ball.verdict.name());

    let bicone = Norm::bicone();
    let curve = EquidistantCurve::new(&bicone, &[0.0, 0.0, 1.0], &[0.0, 0.0, -1.0], 2.0);
    let worst = curve
        .sample(200)
        .iter()
        .map(|p| (p[0].hypot(p[1]) - 1.0).abs().max(p[2].abs()))
        .fold(0.0, f64::max);
    println!("bicone: points at distance 2 from both poles stay within {worst:.1e} of the unit circle");
    let meet = curve.meet(&[1.0, 0.0, 0.0], 720, 1e-9);
    println!("  and the one also at distance 2 from (1, 0, 0) is {meet:.6?}");
    Ok(())
}
