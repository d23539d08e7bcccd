//! Polytopal and analytic norms, their duals and JSON form.

use widthlab::norms::catalog;
use widthlab::{DualFunctional, Norm, Polytope, Result, Vector};

fn main() -> Result<()> {
    let x = Vector::parse(&["3/2", "-1/2", "1"])?;
    for norm in [Norm::l1(3)?, Norm::linf(3)?, Norm::euclidean(3)?, Norm::bicone(), catalog::hexagonal_bipyramid()] {
        println!("{norm:<40} |x| = {}", norm.eval(&x)?);
    }

    // a custom norm from the vertices of a symmetric hexagon
    let hexagon = Norm::polytopal(Polytope::from_points(&[
        Vector::from_ints(&[1, 0]),
        Vector::from_ints(&[0, 1]),
        Vector::from_ints(&[-1, 1]),
        Vector::from_ints(&[-1, 0]),
        Vector::from_ints(&[0, -1]),
        Vector::from_ints(&[1, -1]),
    ])?)?;
    let y = Vector::from_ints(&[2, 1]);
    println!("hexagon norm of {y}: {}", hexagon.eval(&y)?);
    let f = DualFunctional::exact(&hexagon, Vector::from_ints(&[1, 1]));
    println!("dual norm of (1, 1): {}", f.dual_norm(&hexagon));
    println!("as JSON: {}", hexagon.to_json());

    let lopsided = Polytope::from_points(&[
        Vector::from_ints(&[2, 0]),
        Vector::from_ints(&[0, 1]),
        Vector::from_ints(&[-1, 0]),
        Vector::from_ints(&[0, -1]),
    ])?;
    match Norm::polytopal(lopsided) {
        Ok(_) => println!("unexpectedly accepted"),
        Err(e) => println!("rejected: {e}"),
    }
    Ok(())
}
