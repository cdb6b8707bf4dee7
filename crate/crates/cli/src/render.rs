//! ASCII and SVG pictures of an image, optionally with retraction arrows.

use std::fmt::Write as _;

use dplane_core::{DigitalImage, Point, PointMap, Window};

/// Arrows `p → r(p)` for the points of `window` outside `x` where `r` is defined.
pub fn arrows<M: PointMap + ?Sized>(x: &DigitalImage, r: &M, window: &Window) -> Vec<(Point, Point)> {
    window.points().filter(|p| !x.contains(*p)).filter_map(|p| r.map_point(p).map(|q| (p, q))).collect()
}

/// Rows from the top of `window` down: `#` for points of `x`, `.` otherwise.
/// Arrows follow the grid, one `x,y -> rx,ry` per line.
pub fn ascii(x: &DigitalImage, arrows: &[(Point, Point)], window: &Window) -> String {
    let mut out = String::new();
    for y in (window.y_min..=window.y_max).rev() {
        for px in window.x_min..=window.x_max {
            out.push(if x.contains(Point::new(px, y)) { '#' } else { '.' });
        }
        out.push('\n');
    }
    for (p, q) in arrows {
        writeln!(out, "{},{} -> {},{}", p.x, p.y, q.x, q.y).unwrap();
    }
    out
}

const CELL: i64 = 24;
const MARGIN: i64 = 12;

/// SVG with one lattice cell per window point, filled dots for `x` and arrows.
pub fn svg(x: &DigitalImage, arrows: &[(Point, Point)], window: &Window) -> String {
    let w = window.width() * CELL + 2 * MARGIN;
    let h = window.height() * CELL + 2 * MARGIN;
    let center =
        |p: Point| (MARGIN + (p.x - window.x_min) * CELL + CELL / 2, MARGIN + (window.y_max - p.y) * CELL + CELL / 2);
    let mut out = String::new();
    writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#)
        .unwrap();
    out.push_str(concat!(
        r#"<defs><marker id="head" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="6" markerHeight="6" orient="auto">"#,
        r##"<path d="M0,0L10,5L0,10z" fill="#c0392b"/></marker></defs>"##,
        "\n"
    ));
    out.push_str(r##"<g stroke="#d0d0d0" fill="none">"##);
    out.push('\n');
    for p in window.points() {
        let (cx, cy) = center(p);
        writeln!(out, r#"<rect x="{}" y="{}" width="{CELL}" height="{CELL}"/>"#, cx - CELL / 2, cy - CELL / 2).unwrap();
    }
    out.push_str("</g>\n<g fill=\"#1f3a5f\">\n");
    for p in x.points().filter(|p| window.contains(*p)) {
        let (cx, cy) = center(p);
        writeln!(out, r#"<circle cx="{cx}" cy="{cy}" r="6"/>"#).unwrap();
    }
    out.push_str("</g>\n<g stroke=\"#c0392b\" stroke-width=\"2\" marker-end=\"url(#head)\">\n");
    for &(p, q) in arrows {
        let ((x1, y1), (x2, y2)) = (center(p), center(q));
        // Stop short of the target dot.
        let (dx, dy) = (x2 - x1, y2 - y1);
        let len = ((dx * dx + dy * dy) as f64).sqrt();
        let shrink = if len > 0.0 { 8.0 / len } else { 0.0 };
        let (ex, ey) = (x2 as f64 - dx as f64 * shrink, y2 as f64 - dy as f64 * shrink);
        writeln!(out, r#"<line x1="{x1}" y1="{y1}" x2="{ex:.1}" y2="{ey:.1}"/>"#).unwrap();
    }
    out.push_str("</g>\n</svg>\n");
    out
}
