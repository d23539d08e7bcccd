//! Writes SVG figures of a planar segment and of the l1 tetrahedron's
//! coordinate sections into the system temporary directory.

use widthlab::render::render_svg;
use widthlab::{Norm, Polytope, Result, Vector};

fn main() -> Result<()> {
    let dir = std::env::temp_dir();
    let segment = Polytope::segment(&Vector::from_ints(&[-1, 0]), &Vector::from_ints(&[1, 0]))?;
    for (name, norm) in [("linf", Norm::linf(2)?), ("euclid", Norm::euclidean(2)?)] {
        let path = dir.join(format!("widthlab_{name}_segment.svg"));
        std::fs::write(&path, render_svg(&norm, &segment, None)?)?;
        println!("wrote {}", path.display());
    }

    let tetrahedron = Polytope::from_points(&[
        Vector::from_ints(&[-1, -1, -1]),
        Vector::from_ints(&[1, 1, -1]),
        Vector::from_ints(&[1, -1, 1]),
        Vector::from_ints(&[-1, 1, 1]),
    ])?;
    let (u, w) = (Vector::from_ints(&[1, 1, 0]), Vector::from_ints(&[0, 0, 1]));
    let path = dir.join("widthlab_l1_tetrahedron.svg");
    std::fs::write(&path, render_svg(&Norm::l1(3)?, &tetrahedron, Some((&u, &w)))?)?;
    println!("wrote {}", path.display());
    Ok(())
}
