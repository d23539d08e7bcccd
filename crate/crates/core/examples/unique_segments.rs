//! Which norms have a segment with a unique completion.

use widthlab::completeness::check_u1;
use widthlab::norms::catalog;
use widthlab::{Norm, Result};

fn main() -> Result<()> {
    let norms = [
        Norm::l1(2)?,
        Norm::l1(3)?,
        Norm::linf(3)?,
        catalog::hexagonal_bipyramid(),
        catalog::icosahedron_default(),
    ];
    for norm in &norms {
        let c = check_u1(norm)?;
        match &c.direction {
            Some(u) => println!("{norm}: [-u, u] is uniquely completable for u = {u}"),
            None => {
                let least = c.trials.iter().map(|t| t.diam_eta.clone()).min();
                println!(
                    "{norm}: no segment qualifies; least diam eta([-u, u]) = {}",
                    least.map_or("-".into(), |d| widthlab::scalar::format_rational(&d))
                );
            }
        }
    }
    Ok(())
}
