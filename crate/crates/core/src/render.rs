//! SVG 1.1 figures of a body and its spherical hulls.
//!
//! Planar bodies are drawn directly with `τ(K)` and `η(K)` underneath `K`.
//! Bodies in space are drawn as sections by the three coordinate planes, and
//! optionally by one more plane `span{u, w}`.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::geometry::{plane_section, Polytope, Vector};
use crate::hulls::{tight_from_wide, tight_hull_contains_sampled, wide_hull_sampled, wide_spherical_hull};
use crate::norms::Norm;

const PANEL: f64 = 360.0;
const MARGIN: f64 = 20.0;
const SAMPLES: usize = 720;

/// A closed polygon in panel coordinates, or a lone point/segment.
#[derive(Clone, Debug, PartialEq)]
struct Layer {
    class: &'static str,
    points: Vec<[f64; 2]>,
}

#[derive(Clone, Debug, PartialEq)]
struct Panel {
    title: String,
    layers: Vec<Layer>,
}

fn polygon(p: &Polytope) -> Vec<[f64; 2]> {
    let mut pts: Vec<[f64; 2]> = p
        .vertices()
        .iter()
        .map(|v| {
            let c = v.to_f64();
            [c[0], c[1]]
        })
        .collect();
    // angular order about the vertex centroid
    let n = pts.len().max(1) as f64;
    let cx = pts.iter().map(|p| p[0]).sum::<f64>() / n;
    let cy = pts.iter().map(|p| p[1]).sum::<f64>() / n;
    pts.sort_by(|a, b| {
        let ta = (a[1] - cy).atan2(a[0] - cx);
        let tb = (b[1] - cy).atan2(b[0] - cx);
        ta.total_cmp(&tb)
    });
    pts
}

type Outline = Vec<[f64; 2]>;

/// Boundary of `τ(K)` for an analytic norm: bisection along rays from the
/// centroid of `K` against the sampled membership test.
fn sampled_tight_boundary(norm: &Norm, body: &Polytope) -> Result<(Outline, Outline)> {
    let eta = wide_hull_sampled(norm, body)?;
    let ring = eta.boundary(SAMPLES);
    let origin = body.vertex_centroid().to_f64();
    let mut tau = Vec::with_capacity(SAMPLES);
    for k in 0..SAMPLES {
        let t = std::f64::consts::TAU * k as f64 / SAMPLES as f64;
        let dir = [t.cos(), t.sin()];
        let at = |s: f64| [origin[0] + s * dir[0], origin[1] + s * dir[1]];
        let (mut lo, mut hi) = (0.0, 2.0 * eta.radius);
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if tight_hull_contains_sampled(&eta, &ring, &at(mid), 1e-12) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        tau.push(at(lo));
    }
    let eta_pts = ring.iter().map(|p| [p[0], p[1]]).collect();
    Ok((eta_pts, tau))
}

fn planar_panel(norm: &Norm, body: &Polytope) -> Result<Panel> {
    let (eta, tau) = if norm.is_polytopal() {
        let wide = wide_spherical_hull(norm, body)?;
        let tight = tight_from_wide(norm, &wide)?;
        (polygon(&wide.hull), polygon(&tight.hull))
    } else {
        sampled_tight_boundary(norm, body)?
    };
    Ok(Panel {
        title: format!("{norm}"),
        layers: vec![
            Layer { class: "eta", points: eta },
            Layer { class: "tau", points: tau },
            Layer { class: "body", points: polygon(body) },
        ],
    })
}

fn section_panel(title: String, bodies: &[(&'static str, &Polytope)], u: &Vector, w: &Vector) -> Panel {
    let layers = bodies
        .iter()
        .filter_map(|(class, p)| {
            // planes missing a body simply leave its layer out
            plane_section(p, u, w).ok().map(|s| Layer {
                class,
                points: polygon(&s),
            })
        })
        .collect();
    Panel { title, layers }
}

fn spatial_panels(norm: &Norm, body: &Polytope, extra: Option<(&Vector, &Vector)>) -> Result<Vec<Panel>> {
    let wide = wide_spherical_hull(norm, body)?;
    let tight = tight_from_wide(norm, &wide)?;
    let layers = [("eta", &wide.hull), ("tau", &tight.hull), ("body", body)];
    let mut planes: Vec<(String, Vector, Vector)> = [(0, 1, "xy"), (0, 2, "xz"), (1, 2, "yz")]
        .into_iter()
        .map(|(i, j, name)| (format!("{name} section"), Vector::unit(3, i), Vector::unit(3, j)))
        .collect();
    if let Some((u, w)) = extra {
        planes.push((format!("section span{{{u}, {w}}}"), u.clone(), w.clone()));
    }
    Ok(planes
        .iter()
        .map(|(t, u, w)| section_panel(t.clone(), &layers, u, w))
        .collect())
}

fn style(class: &str) -> &'static str {
    match class {
        "eta" => "fill:#dbe9f6;stroke:#2b6cb0;stroke-width:1",
        "tau" => "fill:#f6e3c5;stroke:#c05621;stroke-width:1",
        _ => "fill:#4a5568;fill-opacity:0.6;stroke:#1a202c;stroke-width:1.5",
    }
}

fn write_panel(out: &mut String, panel: &Panel, offset: f64) {
    let all: Vec<[f64; 2]> = panel.layers.iter().flat_map(|l| l.points.iter().copied()).collect();
    let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
    for p in &all {
        for k in 0..2 {
            lo[k] = lo[k].min(p[k]);
            hi[k] = hi[k].max(p[k]);
        }
    }
    let span = (hi[0] - lo[0]).max(hi[1] - lo[1]).max(1e-9);
    let scale = (PANEL - 2.0 * MARGIN) / span;
    let map = |p: &[f64; 2]| {
        (
            offset + MARGIN + (p[0] - lo[0]) * scale,
            PANEL - MARGIN - (p[1] - lo[1]) * scale,
        )
    };
    let _ = writeln!(out, "  <g>");
    let _ = writeln!(
        out,
        "    <text x=\"{:.2}\" y=\"14\" font-size=\"12\" font-family=\"sans-serif\">{}</text>",
        offset + MARGIN,
        panel.title
    );
    for layer in &panel.layers {
        let pts: Vec<String> = layer
            .points
            .iter()
            .map(|p| {
                let (x, y) = map(p);
                format!("{x:.3},{y:.3}")
            })
            .collect();
        let _ = match layer.points.len() {
            0 => Ok(()),
            1 => {
                let (x, y) = map(&layer.points[0]);
                writeln!(out, "    <circle class=\"{}\" cx=\"{x:.3}\" cy=\"{y:.3}\" r=\"2\" style=\"{}\"/>", layer.class, style(layer.class))
            }
            _ => writeln!(
                out,
                "    <polygon class=\"{}\" points=\"{}\" style=\"{}\"/>",
                layer.class,
                pts.join(" "),
                style(layer.class)
            ),
        };
    }
    let _ = writeln!(out, "  </g>");
}

fn document(panels: &[Panel]) -> String {
    let width = PANEL * panels.len() as f64;
    let mut out = String::new();
    let _ = writeln!(out, "<?xml version=\"1.0\" encoding=\"UTF-8\"?>");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{width}\" height=\"{PANEL}\" viewBox=\"0 0 {width} {PANEL}\">"
    );
    for (k, p) in panels.iter().enumerate() {
        write_panel(&mut out, p, PANEL * k as f64);
    }
    out.push_str("</svg>\n");
    out
}

/// The figure for `body`: one panel in the plane, three or four section
/// panels in space. Sections need a polytopal norm.
pub fn render_svg(norm: &Norm, body: &Polytope, section: Option<(&Vector, &Vector)>) -> Result<String> {
    norm.check_dim(body.dim())?;
    let panels = match norm.dim() {
        2 => vec![planar_panel(norm, body)?],
        3 => {
            norm.require_polytopal("rendering sections")?;
            spatial_panels(norm, body, section)?
        }
        d => return Err(Error::UnsupportedDimension(d)),
    };
    Ok(document(&panels))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn planar_figure_has_three_layers() {
        let n = Norm::linf(2).unwrap();
        let k = Polytope::segment(&Vector::from_ints(&[-1, 0]), &Vector::from_ints(&[1, 0])).unwrap();
        let svg = render_svg(&n, &k, None).unwrap();
        for class in ["eta", "tau", "body"] {
            assert!(svg.contains(&format!("class=\"{class}\"")), "{class}");
        }
        assert_eq!(svg, render_svg(&n, &k, None).unwrap());
    }

    #[test]
    fn spatial_figure_has_section_panels() {
        let n = Norm::l1(3).unwrap();
        let k = Polytope::from_points(&[
            Vector::from_ints(&[-1, -1, -1]),
            Vector::from_ints(&[1, 1, -1]),
            Vector::from_ints(&[1, -1, 1]),
            Vector::from_ints(&[-1, 1, 1]),
        ])
        .unwrap();
        let u = Vector::from_ints(&[1, 1, 0]);
        let w = Vector::from_ints(&[0, 0, 1]);
        let svg = render_svg(&n, &k, Some((&u, &w))).unwrap();
        assert_eq!(svg.matches("<g>").count(), 4);
    }

    #[test]
    fn euclidean_tight_hull_sits_inside_the_wide_hull() {
        let n = Norm::euclidean(2).unwrap();
        let k = Polytope::segment(&Vector::from_ints(&[-1, 0]), &Vector::from_ints(&[1, 0])).unwrap();
        let (eta, tau) = sampled_tight_boundary(&n, &k).unwrap();
        let top = |pts: &[[f64; 2]]| pts.iter().map(|p| p[1]).fold(f64::MIN, f64::max);
        assert!(top(&tau) <= top(&eta) + 1e-9);
        // τ of a Euclidean segment is the lens η cut by B(apex, 2): height 2 - √3
        assert!((top(&tau) - (2.0 - 3f64.sqrt())).abs() < 1e-3, "{}", top(&tau));
    }
}
