//! Modulus of convexity profiles.

use widthlab::metrics::{convexity_profile, default_epsilon_grid, modulus_of_convexity};
use widthlab::norms::catalog;
use widthlab::scalar::frac;
use widthlab::{Norm, Result};

fn main() -> Result<()> {
    for norm in [Norm::l1(2)?, Norm::linf(3)?, catalog::hexagonal_bipyramid()] {
        let p = convexity_profile(&norm, &default_epsilon_grid(), 0.0)?;
        let values: Vec<String> = p.delta.iter().map(|d| d.to_string()).collect();
        println!("{norm}: delta = [{}], eps0 = {}", values.join(", "), p.eps0);
    }
    let euclid = Norm::euclidean(2)?;
    let d = modulus_of_convexity(&euclid, &frac(1, 1))?;
    println!("Euclidean delta(1) = {d} (closed form {})", 1.0 - 3f64.sqrt() / 2.0);
    Ok(())
}
