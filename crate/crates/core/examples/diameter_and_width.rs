//! Diameter, widths and circumradius of the l1 tetrahedron.

use widthlab::metrics::{circumradius, diameter, width_report};
use widthlab::{Norm, Polytope, Result, Vector};

fn main() -> Result<()> {
    let l1 = Norm::l1(3)?;
    let k = Polytope::from_points(&[
        Vector::from_ints(&[-1, -1, -1]),
        Vector::from_ints(&[1, 1, -1]),
        Vector::from_ints(&[1, -1, 1]),
        Vector::from_ints(&[-1, 1, 1]),
    ])?;
    let d = diameter(&l1, &k)?;
    println!("diam K = {} between {} and {}", d.value, d.witness.0, d.witness.1);

    let report = width_report(&l1, &k, 0.0)?;
    for (f, w) in &report.widths {
        println!("  width along facet normal {:?} = {w}", f.coefficients_f64());
    }
    println!(
        "least width {} attained by {:?}; greatest width {}",
        report.min_width,
        report.min_functional.coefficients_f64(),
        report.max_width
    );

    let c = circumradius(&l1, &k)?;
    println!("circumradius {} about {}", c.radius, c.center);
    Ok(())
}
