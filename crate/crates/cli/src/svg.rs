//! SVG figure of a porism family drawn in the plane of its ellipse.

use std::fmt::Write as _;

use altitude_core::{Ellipse3, InscribedTriangle, Vec3};

use crate::CliError;

const SIZE: f64 = 480.0;
const MARGIN: f64 = 20.0;

/// One `<ellipse>`, one `<polygon>` per triangle and a mark at the common
/// orthocenter (the ellipse center).
pub fn emit_svg_porism(
    family: &[InscribedTriangle],
    ellipse: &Ellipse3,
) -> Result<String, CliError> {
    if family.is_empty() {
        return Err(CliError::EmptyFamily);
    }
    let [a, b] = ellipse.semi_axes;
    let (rx, ry) = (a.norm(), b.norm());
    let (u, v) = (a / rx, b / ry);
    let scale = (SIZE - 2.0 * MARGIN) / (2.0 * rx.max(ry));
    let half = SIZE / 2.0;
    // y grows downwards in SVG
    let to_px = |p: Vec3| {
        let d = p - ellipse.center;
        (half + scale * d.dot(u), half - scale * d.dot(v))
    };

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(out, r#"  <rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        out,
        r#"  <ellipse cx="{half:.3}" cy="{half:.3}" rx="{:.3}" ry="{:.3}" fill="none" stroke="black" stroke-width="1.5"/>"#,
        scale * rx,
        scale * ry
    );
    let n = family.len();
    for (k, tri) in family.iter().enumerate() {
        let points: Vec<String> = tri
            .vertices
            .iter()
            .map(|p| {
                let (x, y) = to_px(*p);
                format!("{x:.3},{y:.3}")
            })
            .collect();
        let hue = 360.0 * k as f64 / n as f64;
        let _ = writeln!(
            out,
            r#"  <polygon points="{}" fill="none" stroke="hsl({hue:.0},70%,45%)" stroke-width="1"/>"#,
            points.join(" ")
        );
    }
    let _ = writeln!(
        out,
        r#"  <circle class="orthocenter" cx="{half:.3}" cy="{half:.3}" r="3" fill="red"/>"#
    );
    out.push_str("</svg>\n");
    Ok(out)
}
