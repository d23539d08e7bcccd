//! Independent floating-point oracles next to the exact results.

use widthlab::metrics::{circumradius, diameter};
use widthlab::oracle::{oracle_circumradius, oracle_constant_width, oracle_diameter, GridSpec};
use widthlab::completeness::is_constant_width;
use widthlab::{Norm, Polytope, Result, Vector};

fn main() -> Result<()> {
    let hexagon = Norm::from_symmetric_points(&[
        Vector::from_ints(&[1, 0]),
        Vector::from_ints(&[0, 1]),
        Vector::from_ints(&[-1, 1]),
    ])?;
    let k = Polytope::from_points(&[
        Vector::from_ints(&[0, 0]),
        Vector::from_ints(&[3, 1]),
        Vector::from_ints(&[1, 2]),
        Vector::from_ints(&[-1, 1]),
    ])?;
    let pts: Vec<Vec<f64>> = k.vertices().iter().map(Vector::to_f64).collect();
    let grid = GridSpec::around(&pts, 0.5, 201, 7)?;

    println!("diameter      exact {}  oracle {}", diameter(&hexagon, &k)?.value, oracle_diameter(&hexagon, &k, &grid));
    let (center, r) = oracle_circumradius(&hexagon, &k, &grid);
    println!(
        "circumradius  exact {}  oracle {r:.9} about {center:.4?}",
        circumradius(&hexagon, &k)?.radius
    );
    println!(
        "constant width exact {}  oracle {}",
        is_constant_width(&hexagon, &k, 0.0)?.holds,
        oracle_constant_width(&hexagon, &k, 2000, 1e-9)
    );
    Ok(())
}
