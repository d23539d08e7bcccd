//! Completeness tests and greedy diametric completion.

use widthlab::completeness::{complete_greedily, completeness_report, is_constant_width, TieRule};
use widthlab::{Norm, Polytope, Result, Vector};

fn main() -> Result<()> {
    let linf = Norm::linf(2)?;
    let triangle = Polytope::from_points(&[
        Vector::from_ints(&[0, 0]),
        Vector::from_ints(&[2, 0]),
        Vector::from_ints(&[0, 1]),
    ])?;
    for rule in [TieRule::Lexicographic, TieRule::ReverseLexicographic] {
        let c = complete_greedily(&linf, &triangle, rule, None)?;
        println!("{} completion after {} steps: {}", rule.name(), c.iterations, c.body);
        let cw = is_constant_width(&linf, &c.body, 0.0)?;
        println!("  constant width {} (diam {}, least width {})", cw.holds, cw.diameter, cw.min_width);
    }

    let l1 = Norm::l1(3)?;
    let tetrahedron = Polytope::from_points(&[
        Vector::from_ints(&[-1, -1, -1]),
        Vector::from_ints(&[1, 1, -1]),
        Vector::from_ints(&[1, -1, 1]),
        Vector::from_ints(&[-1, 1, 1]),
    ])?;
    let r = completeness_report(&l1, &tetrahedron)?;
    println!(
        "l1 tetrahedron: complete {}, constant width {}, ball {}",
        r.is_complete,
        r.is_constant_width,
        r.is_ball()
    );
    Ok(())
}
