//! Exact polytope arithmetic: hulls, halfspace intersections, Minkowski
//! sums and planar sections.

use widthlab::geometry::{convex_hull, intersect_halfspaces, plane_section};
use widthlab::scalar::int;
use widthlab::{Halfspace, Result, Vector};

fn main() -> Result<()> {
    let square = convex_hull(&[
        Vector::from_ints(&[1, 0]),
        Vector::from_ints(&[0, 1]),
        Vector::from_ints(&[-1, 0]),
        Vector::from_ints(&[0, -1]),
        Vector::from_ints(&[0, 0]),
    ])?;
    println!("hull of the diamond and its centre: {square}");
    for h in square.facets() {
        println!("  facet {} . x <= {}", h.normal(), h.offset());
    }

    let collinear = convex_hull(&[
        Vector::from_ints(&[0, 0]),
        Vector::from_ints(&[1, 1]),
        Vector::from_ints(&[2, 2]),
    ])?;
    println!("collinear points give {collinear} (degenerate: {})", collinear.is_degenerate());

    let strip = intersect_halfspaces(&[
        Halfspace::new(Vector::from_ints(&[1, 0]), int(1))?,
        Halfspace::new(Vector::from_ints(&[-1, 0]), int(1))?,
        Halfspace::new(Vector::from_ints(&[0, 1]), int(2))?,
        Halfspace::new(Vector::from_ints(&[0, -1]), int(2))?,
    ])?;
    println!("box from halfspaces: {strip}");

    let sum = square.minkowski_sum(&strip)?;
    println!("Minkowski sum has {} vertices: {sum}", sum.vertices().len());
    println!("difference body of the diamond: {}", square.difference_body());

    let tetrahedron = convex_hull(&[
        Vector::from_ints(&[-1, -1, -1]),
        Vector::from_ints(&[1, 1, -1]),
        Vector::from_ints(&[1, -1, 1]),
        Vector::from_ints(&[-1, 1, 1]),
    ])?;
    let section = plane_section(&tetrahedron, &Vector::unit(3, 0), &Vector::unit(3, 1))?;
    println!("tetrahedron cut by z = 0 (in x, y coordinates): {section}");
    Ok(())
}
