//! Wide and tight spherical hulls of a segment under three plane norms.

use widthlab::hulls::{tight_from_wide, tight_hull_contains_sampled, wide_hull_sampled, wide_spherical_hull};
use widthlab::{Norm, Polytope, Result, Vector};

fn main() -> Result<()> {
    let segment = Polytope::segment(&Vector::from_ints(&[-1, 0]), &Vector::from_ints(&[1, 0]))?;
    for norm in [Norm::l1(2)?, Norm::linf(2)?] {
        let eta = wide_spherical_hull(&norm, &segment)?;
        let tau = tight_from_wide(&norm, &eta)?;
        println!("{norm}");
        println!("  eta = {}", eta.hull);
        println!("  tau = {}", tau.hull);
        for source in &eta.provenance {
            if let Some(c) = &source.center {
                println!("    facet {} . x <= {} from the ball about {c}", source.facet.normal(), source.facet.offset());
            }
        }
    }

    // the Euclidean lens is only available through sampling
    let euclid = Norm::euclidean(2)?;
    let eta = wide_hull_sampled(&euclid, &segment)?;
    let ring = eta.boundary(720);
    for p in [[0.0, 0.2], [0.0, 0.5], [0.0, 1.5]] {
        println!(
            "Euclidean: {p:?} in eta: {}, in tau: {}",
            eta.contains(&p, 1e-12),
            tight_hull_contains_sampled(&eta, &ring, &p, 1e-12)
        );
    }
    Ok(())
}
