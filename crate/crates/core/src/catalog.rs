//! Named example images and the explicit retractions that accompany them.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::image::{AdjacencyKind, DigitalImage, Point, Window};
use crate::retraction::{build_axis_retraction, FiniteRetraction, Retraction};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("empty range {0}..={1}")]
    EmptyRange(i64, i64),
    #[error("block U needs n > 2, got {0}")]
    BlockTooSmall(i64),
    #[error("no simple closed curve with {0} points in the catalog (supported: 4, 8)")]
    UnsupportedCurve(usize),
    #[error("unknown catalog entry {0:?}")]
    UnknownName(String),
}

fn p(x: i64, y: i64) -> Point {
    Point::new(x, y)
}

/// All lattice points of `[x0, x1] × [y0, y1]`, under c2.
pub fn make_rectangle(x0: i64, x1: i64, y0: i64, y1: i64) -> Result<DigitalImage, CatalogError> {
    if x0 > x1 {
        return Err(CatalogError::EmptyRange(x0, x1));
    }
    let window = Window::new(x0, x1, y0, y1).ok_or(CatalogError::EmptyRange(y0, y1))?;
    Ok(window.to_image(AdjacencyKind::C2))
}

/// Lattice points of the closed triangle with the given vertices.
pub fn lattice_triangle(a: Point, b: Point, c: Point) -> DigitalImage {
    let cross = |o: Point, u: Point, v: Point| (u.x - o.x) * (v.y - o.y) - (u.y - o.y) * (v.x - o.x);
    let orient = cross(a, b, c).signum();
    let xs = [a.x, b.x, c.x];
    let ys = [a.y, b.y, c.y];
    let window = Window::new(
        *xs.iter().min().unwrap(),
        *xs.iter().max().unwrap(),
        *ys.iter().min().unwrap(),
        *ys.iter().max().unwrap(),
    )
    .expect("min <= max");
    DigitalImage::c2(
        window.points().filter(|&q| [cross(a, b, q), cross(b, c, q), cross(c, a, q)].iter().all(|v| v * orient >= 0)),
    )
}

/// Lattice points with x, y, x + y and y − x in the given inclusive ranges.
pub fn make_octagon(
    x: (i64, i64),
    y: (i64, i64),
    sum: (i64, i64),
    diff: (i64, i64),
) -> Result<DigitalImage, CatalogError> {
    let window = Window::new(x.0, x.1, y.0, y.1).ok_or(CatalogError::EmptyRange(x.0, x.1))?;
    Ok(DigitalImage::c2(
        window.points().filter(|q| (sum.0..=sum.1).contains(&(q.x + q.y)) && (diff.0..=diff.1).contains(&(q.y - q.x))),
    ))
}

/// The triangle with vertices (0,0), (4,0), (4,3): 11 points, not convex.
pub fn make_fig1_triangle() -> DigitalImage {
    lattice_triangle(p(0, 0), p(4, 0), p(4, 3))
}

/// `[-n, n]² ∖ ({0} × [1, n])`.
pub fn make_block_u(n: i64) -> Result<DigitalImage, CatalogError> {
    if n <= 2 {
        return Err(CatalogError::BlockTooSmall(n));
    }
    let square = Window::square(-n, n).expect("n > 0");
    Ok(DigitalImage::c2(square.points().filter(|q| !(q.x == 0 && (1..=n).contains(&q.y)))))
}

/// `{|x| + |y| <= r}`.
pub fn make_diamond_disk(r: i64) -> DigitalImage {
    let square = Window::square(-r, r).expect("r >= 0");
    DigitalImage::c2(square.points().filter(|q| q.x.abs() + q.y.abs() <= r))
}

/// Simple closed curves: the 4-point diamond or the 8-point ring.
pub fn make_scc_diamond(k: usize) -> Result<DigitalImage, CatalogError> {
    match k {
        4 => Ok(DigitalImage::c2([p(0, 0), p(1, 1), p(2, 0), p(1, -1)])),
        8 => Ok(make_ring()),
        other => Err(CatalogError::UnsupportedCurve(other)),
    }
}

/// The eight points with max(|x|, |y|) = 1.
pub fn make_ring() -> DigitalImage {
    DigitalImage::c2(Window::square(-1, 1).expect("nonempty").points().filter(|&q| q != p(0, 0)))
}

/// Two triangles meeting only at the origin, each with a 45° angle there.
pub fn make_wedge_45_45() -> (DigitalImage, DigitalImage) {
    (lattice_triangle(p(0, 0), p(2, 2), p(2, 0)), lattice_triangle(p(0, 0), p(-2, -2), p(-2, 0)))
}

/// Two triangles sharing the slanted edge from (0,0) to (2,2).
pub fn make_two_triangles() -> (DigitalImage, DigitalImage) {
    (lattice_triangle(p(0, 0), p(2, 2), p(0, 2)), lattice_triangle(p(0, 0), p(2, 2), p(2, 0)))
}

/// The tee: two rectangles whose shared segment is an edge of only one of them.
#[derive(Debug, Clone)]
pub struct Tee {
    pub x1: DigitalImage,
    pub x2: DigitalImage,
    pub union: DigitalImage,
    /// The tabulated map on `[0,4]²` (identity on the tee plus [`TEE_TABLE`]),
    /// extended to Z² through the column clamp onto that square. It is not
    /// continuous: (1,1) sits between the fixed points (0,2) and (2,0), so no
    /// c2-retraction of the square onto the tee exists.
    pub retraction: Retraction,
}

/// Values of the tee retraction off the image, on `[0,4]²`.
pub const TEE_TABLE: [(Point, Point); 4] = [
    (Point::new(0, 1), Point::new(1, 2)),
    (Point::new(0, 0), Point::new(2, 2)),
    (Point::new(1, 1), Point::new(2, 2)),
    (Point::new(1, 0), Point::new(2, 1)),
];

pub fn make_tee() -> Tee {
    let x1 = Window::new(0, 4, 2, 4).expect("nonempty").to_image(AdjacencyKind::C2);
    let x2 = Window::new(2, 4, 0, 2).expect("nonempty").to_image(AdjacencyKind::C2);
    let union = x1.union(&x2);
    let square = Window::square(0, 4).expect("nonempty").to_image(AdjacencyKind::C2);
    let base = build_axis_retraction(&square).expect("a square is a convex disk");
    let retraction = Retraction::with_overrides(union.clone(), base, TEE_TABLE.into_iter().collect());
    Tee { x1, x2, union, retraction }
}

/// `[-3,3]² ∖ {(0,0)}` as a union of four triangular quadrant disks,
/// with a retraction onto the inner ring.
#[derive(Debug, Clone)]
pub struct Annulus {
    pub x: DigitalImage,
    /// East, north, west and south quadrants.
    pub quadrants: [DigitalImage; 4],
    pub ring: DigitalImage,
    pub retraction: FiniteRetraction,
}

/// The value of every case of the ring retraction that applies at `q`, in
/// case order. Each quadrant contributes the case selected by the clamped
/// free coordinate.
pub fn annulus_cases(q: Point) -> Vec<Point> {
    let (x, y) = (q.x, q.y);
    if q == p(0, 0) || x.abs() > 3 || y.abs() > 3 {
        return Vec::new();
    }
    let mut out = Vec::new();
    // east: 1 <= x, -x <= y <= x
    if x >= 1 && -x <= y && y <= x {
        out.push(if y <= -1 {
            p(1, -1)
        } else if y >= 1 {
            p(1, 1)
        } else {
            p(1, y)
        });
    }
    // north: 1 <= y, -y <= x <= y
    if y >= 1 && -y <= x && x <= y {
        out.push(if x >= 1 {
            p(1, 1)
        } else if x <= -1 {
            p(-1, 1)
        } else {
            p(x, 1)
        });
    }
    // west: x <= -1, x <= y <= -x
    if x <= -1 && x <= y && y <= -x {
        out.push(if y >= 1 {
            p(-1, 1)
        } else if y <= -1 {
            p(-1, -1)
        } else {
            p(-1, y)
        });
    }
    // south: y <= -1, y <= x <= -y
    if y <= -1 && y <= x && x <= -y {
        out.push(if x <= -1 {
            p(-1, -1)
        } else if x >= 1 {
            p(1, -1)
        } else {
            p(x, -1)
        });
    }
    out
}

pub fn make_annulus() -> Annulus {
    let square = Window::square(-3, 3).expect("nonempty");
    let x = DigitalImage::c2(square.points().filter(|&q| q != p(0, 0)));
    let quadrant = |f: fn(i64, i64) -> bool| DigitalImage::c2(x.points().filter(|q| f(q.x, q.y)));
    let quadrants = [
        quadrant(|x, y| x >= 1 && -x <= y && y <= x),
        quadrant(|x, y| y >= 1 && -y <= x && x <= y),
        quadrant(|x, y| x <= -1 && x <= y && y <= -x),
        quadrant(|x, y| y <= -1 && y <= x && x <= -y),
    ];
    let ring = make_ring();
    let table: BTreeMap<Point, Point> = x
        .points()
        .map(|q| {
            let cases = annulus_cases(q);
            debug_assert!(cases.windows(2).all(|w| w[0] == w[1]), "cases disagree at {q}");
            (q, cases[0])
        })
        .collect();
    Annulus {
        x: x.clone(),
        quadrants,
        ring: ring.clone(),
        retraction: FiniteRetraction { domain: x, target: ring, table },
    }
}

/// Names accepted by [`named_image`].
pub const NAMES: [&str; 16] = [
    "square2",
    "square3",
    "square4",
    "fig1",
    "fig1-minus-origin",
    "block-u3",
    "tee",
    "annulus",
    "diamond4",
    "ring8",
    "c1-block",
    "diamond-disk",
    "wedge-45-45",
    "two-triangles",
    "corner-squares",
    "interval",
];

/// A catalog image by name; pairs are returned as their union.
pub fn named_image(name: &str) -> Result<DigitalImage, CatalogError> {
    let square = |hi| make_rectangle(0, hi, 0, hi).expect("nonempty");
    Ok(match name {
        "square2" => square(2),
        "square3" => square(3),
        "square4" => square(4),
        "fig1" => make_fig1_triangle(),
        "fig1-minus-origin" => make_fig1_triangle().without(p(0, 0)),
        "block-u3" => make_block_u(3).expect("n = 3"),
        "tee" => make_tee().union,
        "annulus" => make_annulus().x,
        "diamond4" => make_scc_diamond(4).expect("supported"),
        "ring8" => make_ring(),
        "c1-block" => square(1).with_kind(AdjacencyKind::C1),
        "diamond-disk" => make_diamond_disk(2),
        "wedge-45-45" => {
            let (a, b) = make_wedge_45_45();
            a.union(&b)
        }
        "two-triangles" => {
            let (a, b) = make_two_triangles();
            a.union(&b)
        }
        "corner-squares" => make_rectangle(-2, 0, -2, 0).expect("nonempty").union(&square(2)),
        "interval" => make_rectangle(0, 1, 0, 0).expect("nonempty"),
        other => return Err(CatalogError::UnknownName(other.to_string())),
    })
}
