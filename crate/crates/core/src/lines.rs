//! Digital segments and lines, half-planes, sandwich lines and lines of
//! separation.
//!
//! A digital line is one of four orientations together with an integer
//! offset `b` of its linear form:
//!
//! | orientation  | form    | line    |
//! |--------------|---------|---------|
//! | `Horizontal` | `y`     | `y = b` |
//! | `Vertical`   | `x`     | `x = b` |
//! | `SlopePlus`  | `y - x` | `y - x = b` |
//! | `SlopeMinus` | `x + y` | `x + y = b` |

use std::fmt;

use thiserror::Error;

use crate::convexity::{is_convex, ConvexityReport};
use crate::image::{adjacent, AdjacencyKind, DigitalImage, Point, Window};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Orientation {
    Horizontal,
    Vertical,
    SlopePlus,
    SlopeMinus,
}

impl Orientation {
    pub const ALL: [Orientation; 4] =
        [Orientation::Horizontal, Orientation::Vertical, Orientation::SlopePlus, Orientation::SlopeMinus];

    /// Order in which candidate lines of separation are tried.
    pub const SEPARATION_ORDER: [Orientation; 4] =
        [Orientation::Horizontal, Orientation::Vertical, Orientation::SlopeMinus, Orientation::SlopePlus];

    /// The linear form whose level sets are the lines of this orientation.
    pub fn form(self, p: Point) -> i64 {
        match self {
            Orientation::Horizontal => p.y,
            Orientation::Vertical => p.x,
            Orientation::SlopePlus => p.y - p.x,
            Orientation::SlopeMinus => p.x + p.y,
        }
    }

    pub fn is_slanted(self) -> bool {
        matches!(self, Orientation::SlopePlus | Orientation::SlopeMinus)
    }

    /// Orientation of a unit c2 step, `None` for the zero step.
    pub fn of_step(dx: i64, dy: i64) -> Option<Orientation> {
        match (dx, dy) {
            (0, 0) => None,
            (_, 0) => Some(Orientation::Horizontal),
            (0, _) => Some(Orientation::Vertical),
            _ if dx == dy => Some(Orientation::SlopePlus),
            _ if dx == -dy => Some(Orientation::SlopeMinus),
            _ => None,
        }
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Orientation::Horizontal => "horizontal",
            Orientation::Vertical => "vertical",
            Orientation::SlopePlus => "slope+1",
            Orientation::SlopeMinus => "slope-1",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DigitalLine {
    pub orientation: Orientation,
    pub offset: i64,
}

impl DigitalLine {
    pub const fn new(orientation: Orientation, offset: i64) -> Self {
        DigitalLine { orientation, offset }
    }

    /// The line of the given orientation through `p`.
    pub fn through(orientation: Orientation, p: Point) -> Self {
        DigitalLine::new(orientation, orientation.form(p))
    }

    pub fn form(&self, p: Point) -> i64 {
        self.orientation.form(p)
    }

    pub fn contains(&self, p: Point) -> bool {
        self.form(p) == self.offset
    }

    /// Signed position of `p` relative to the line: form(p) − b.
    pub fn level(&self, p: Point) -> i64 {
        self.form(p) - self.offset
    }

    /// The points of the line inside `window`.
    pub fn points_in(&self, window: &Window) -> impl Iterator<Item = Point> + '_ {
        let line = *self;
        window.points().filter(move |p| line.contains(*p))
    }

    pub fn half_plane(&self, side: Side) -> HalfPlane {
        HalfPlane { line: *self, side }
    }
}

impl fmt::Display for DigitalLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.orientation {
            Orientation::Horizontal => write!(f, "y={}", self.offset),
            Orientation::Vertical => write!(f, "x={}", self.offset),
            Orientation::SlopePlus => write!(f, "y-x={}", self.offset),
            Orientation::SlopeMinus => write!(f, "x+y={}", self.offset),
        }
    }
}

/// Which side of a line's linear form a half-plane lies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    /// form(p) ≥ b
    Plus,
    /// form(p) ≤ b
    Minus,
}

impl Side {
    pub fn sign(self) -> i64 {
        match self {
            Side::Plus => 1,
            Side::Minus => -1,
        }
    }

    pub fn opposite(self) -> Side {
        match self {
            Side::Plus => Side::Minus,
            Side::Minus => Side::Plus,
        }
    }
}

/// A line together with one of its closed sides.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HalfPlane {
    pub line: DigitalLine,
    pub side: Side,
}

impl HalfPlane {
    pub fn new(line: DigitalLine, side: Side) -> Self {
        HalfPlane { line, side }
    }

    pub fn contains(&self, p: Point) -> bool {
        let s = self.line.level(p).signum();
        s == 0 || s == self.side.sign()
    }

    pub fn opposite(&self) -> HalfPlane {
        HalfPlane::new(self.line, self.side.opposite())
    }
}

/// Side of `line` that holds every point of `image`, if there is one.
/// An image lying entirely on the line gets `Side::Plus`.
pub fn closed_side(image: &DigitalImage, line: &DigitalLine) -> Option<Side> {
    let levels: Vec<i64> = image.points().map(|p| line.level(p)).collect();
    let lo = *levels.iter().min()?;
    let hi = *levels.iter().max()?;
    if lo >= 0 {
        Some(Side::Plus)
    } else if hi <= 0 {
        Some(Side::Minus)
    } else {
        None
    }
}

/// Shape of a digital segment; a single point has no direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SegmentShape {
    Degenerate,
    Line(Orientation),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Segment {
    pub shape: SegmentShape,
    pub start: Point,
    pub end: Point,
}

impl Segment {
    pub fn orientation(&self) -> Option<Orientation> {
        match self.shape {
            SegmentShape::Degenerate => None,
            SegmentShape::Line(o) => Some(o),
        }
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.shape {
            SegmentShape::Degenerate => write!(f, "point {}", self.start),
            SegmentShape::Line(o) => write!(f, "{} {}-{}", o, self.start, self.end),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SegmentError {
    #[error("no points given")]
    Empty,
    #[error("points are not collinear")]
    NotCollinear,
    #[error("collinear points leave a gap between {0} and {1}")]
    NotConnected(Point, Point),
    #[error("collinear points have slope other than 0, infinite, or ±1")]
    BadSlope,
}

/// Decide whether `points` (as a set) form a digital segment.
pub fn classify_segment(points: &[Point]) -> Result<Segment, SegmentError> {
    let mut sorted = points.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let (&start, &end) = match (sorted.first(), sorted.last()) {
        (Some(s), Some(e)) => (s, e),
        _ => return Err(SegmentError::Empty),
    };
    if start == end {
        return Ok(Segment { shape: SegmentShape::Degenerate, start, end });
    }
    let (dx, dy) = (end.x - start.x, end.y - start.y);
    let collinear = sorted.iter().all(|p| (p.x - start.x) * dy - (p.y - start.y) * dx == 0);
    if !collinear {
        return Err(SegmentError::NotCollinear);
    }
    let orientation = Orientation::of_step(dx, dy).ok_or(SegmentError::BadSlope)?;
    // Along an admissible direction the lexicographic order is the order on the line.
    for pair in sorted.windows(2) {
        if !adjacent(pair[0], pair[1], AdjacencyKind::C2) {
            return Err(SegmentError::NotConnected(pair[0], pair[1]));
        }
    }
    Ok(Segment { shape: SegmentShape::Line(orientation), start, end })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LineError {
    #[error("image is not a convex disk")]
    NotConvexDisk,
}

/// The two extreme lines of `orientation` meeting the convex disk `x`,
/// lower offset first.
pub fn sandwich_lines(x: &DigitalImage, orientation: Orientation) -> Result<(DigitalLine, DigitalLine), LineError> {
    match is_convex(x) {
        ConvexityReport::ConvexDisk { .. } => Ok(extreme_lines(x, orientation)),
        _ => Err(LineError::NotConvexDisk),
    }
}

/// Min and max level lines of `orientation` over a nonempty image.
pub(crate) fn extreme_lines(x: &DigitalImage, orientation: Orientation) -> (DigitalLine, DigitalLine) {
    let lo = x.points().map(|p| orientation.form(p)).min().expect("nonempty image");
    let hi = x.points().map(|p| orientation.form(p)).max().expect("nonempty image");
    (DigitalLine::new(orientation, lo), DigitalLine::new(orientation, hi))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeparationError {
    #[error("the two images do not meet")]
    Disjoint,
    #[error("no horizontal, vertical or slanted line separates the images")]
    NoSeparation,
}

/// Whether `line` is a line of separation of `x1` and `x2`: the images lie on
/// opposite closed sides, and either the shared set lies on the line (edge
/// case, more than one shared point) or the union meets the line only in the
/// single shared point (wedge case).
pub fn is_separation_line(x1: &DigitalImage, x2: &DigitalImage, line: &DigitalLine) -> bool {
    let shared = x1.intersection(x2);
    if shared.is_empty() || !shared.points().all(|p| line.contains(p)) {
        return false;
    }
    let strictly = |img: &DigitalImage, sign: i64| img.points().all(|p| line.level(p) * sign >= 0);
    let opposite = (strictly(x1, 1) && strictly(x2, -1)) || (strictly(x1, -1) && strictly(x2, 1));
    if !opposite {
        return false;
    }
    if shared.len() == 1 {
        x1.union(x2).points().filter(|p| line.contains(*p)).count() == 1
    } else {
        true
    }
}

/// Every line of separation through the shared set, in search order.
pub fn separation_candidates(x1: &DigitalImage, x2: &DigitalImage) -> Vec<DigitalLine> {
    let Some(anchor) = x1.intersection(x2).points().next() else {
        return Vec::new();
    };
    Orientation::SEPARATION_ORDER
        .into_iter()
        .map(|o| DigitalLine::through(o, anchor))
        .filter(|line| is_separation_line(x1, x2, line))
        .collect()
}

/// First line of separation in the fixed order horizontal, vertical,
/// slope −1, slope +1.
pub fn separation_line(x1: &DigitalImage, x2: &DigitalImage) -> Result<DigitalLine, SeparationError> {
    if x1.intersection(x2).is_empty() {
        return Err(SeparationError::Disjoint);
    }
    separation_candidates(x1, x2).into_iter().next().ok_or(SeparationError::NoSeparation)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i64, y: i64) -> Point {
        Point::new(x, y)
    }

    fn pts(coords: &[(i64, i64)]) -> Vec<Point> {
        coords.iter().copied().map(Point::from).collect()
    }

    #[test]
    fn classify_examples() {
        let diag = classify_segment(&pts(&[(0, 0), (1, 1), (2, 2)])).unwrap();
        assert_eq!(diag.shape, SegmentShape::Line(Orientation::SlopePlus));
        assert_eq!((diag.start, diag.end), (p(0, 0), p(2, 2)));

        let row = classify_segment(&pts(&[(2, 0), (0, 0), (1, 0)])).unwrap();
        assert_eq!(row.shape, SegmentShape::Line(Orientation::Horizontal));
        assert_eq!((row.start, row.end), (p(0, 0), p(2, 0)));

        assert_eq!(classify_segment(&pts(&[(0, 0), (2, 2)])), Err(SegmentError::NotConnected(p(0, 0), p(2, 2))));
    }

    #[test]
    fn classify_error_paths() {
        assert_eq!(classify_segment(&[]), Err(SegmentError::Empty));
        assert_eq!(classify_segment(&pts(&[(0, 0), (1, 0), (1, 1)])), Err(SegmentError::NotCollinear));
        assert_eq!(classify_segment(&pts(&[(0, 0), (1, 2), (2, 4)])), Err(SegmentError::BadSlope));
        let single = classify_segment(&pts(&[(4, 4)])).unwrap();
        assert_eq!(single.shape, SegmentShape::Degenerate);
        assert_eq!(single.start, single.end);
        let anti = classify_segment(&pts(&[(0, 2), (1, 1), (2, 0)])).unwrap();
        assert_eq!(anti.orientation(), Some(Orientation::SlopeMinus));
        let col = classify_segment(&pts(&[(3, 1), (3, 0)])).unwrap();
        assert_eq!(col.orientation(), Some(Orientation::Vertical));
    }

    #[test]
    fn half_plane_examples() {
        let h = HalfPlane::new(DigitalLine::new(Orientation::Horizontal, 2), Side::Plus);
        assert!(h.contains(p(0, 2)));
        let h = HalfPlane::new(DigitalLine::new(Orientation::SlopeMinus, 0), Side::Minus);
        assert!(!h.contains(p(3, 3)));
        let h = HalfPlane::new(DigitalLine::new(Orientation::SlopePlus, -2), Side::Plus);
        assert!(h.contains(p(1, 1)));
    }

    #[test]
    fn opposite_half_planes_tile_the_window() {
        let window = Window::square(-6, 6).unwrap();
        for o in Orientation::ALL {
            for b in -3..=3 {
                let line = DigitalLine::new(o, b);
                let plus = line.half_plane(Side::Plus);
                let minus = plus.opposite();
                for q in window.points() {
                    assert!(plus.contains(q) || minus.contains(q));
                    assert_eq!(plus.contains(q) && minus.contains(q), line.contains(q));
                }
            }
        }
    }

    #[test]
    fn sandwich_lines_of_rectangle_and_diamond() {
        let rect = Window::new(0, 4, 2, 4).unwrap().to_image(AdjacencyKind::C2);
        let (lo, hi) = sandwich_lines(&rect, Orientation::Vertical).unwrap();
        assert_eq!((lo, hi), (DigitalLine::new(Orientation::Vertical, 0), DigitalLine::new(Orientation::Vertical, 4)));

        let diamond = DigitalImage::c2(Window::square(-2, 2).unwrap().points().filter(|q| q.x.abs() + q.y.abs() <= 2));
        assert_eq!(diamond.len(), 13);
        let (lo, hi) = sandwich_lines(&diamond, Orientation::SlopeMinus).unwrap();
        assert_eq!((lo.offset, hi.offset), (-2, 2));
        // brute force over the 13 points
        let forms: Vec<i64> = diamond.points().map(|q| q.x + q.y).collect();
        assert_eq!(lo.offset, *forms.iter().min().unwrap());
        assert_eq!(hi.offset, *forms.iter().max().unwrap());

        let seg = DigitalImage::from_coords(&[(0, 0), (1, 0)], AdjacencyKind::C2);
        assert_eq!(sandwich_lines(&seg, Orientation::Vertical), Err(LineError::NotConvexDisk));
    }

    #[test]
    fn separation_of_rectangle_halves() {
        let x = Window::square(0, 4).unwrap().to_image(AdjacencyKind::C2);
        let upper = DigitalImage::c2(x.points().filter(|q| q.y >= q.x - 2));
        let lower = DigitalImage::c2(x.points().filter(|q| q.y <= q.x - 2));
        let line = separation_line(&upper, &lower).unwrap();
        assert_eq!(line, DigitalLine::new(Orientation::SlopePlus, -2));
    }

    #[test]
    fn separation_errors() {
        let a = DigitalImage::from_coords(&[(0, 0)], AdjacencyKind::C2);
        let b = DigitalImage::from_coords(&[(5, 5)], AdjacencyKind::C2);
        assert_eq!(separation_line(&a, &b), Err(SeparationError::Disjoint));
        // overlapping squares share a 2x2 block that lies on no line
        let s1 = Window::square(0, 2).unwrap().to_image(AdjacencyKind::C2);
        let s2 = Window::square(1, 3).unwrap().to_image(AdjacencyKind::C2);
        assert_eq!(separation_line(&s1, &s2), Err(SeparationError::NoSeparation));
    }

    #[test]
    fn closed_side_reports_sides() {
        let rect = Window::new(0, 4, 2, 4).unwrap().to_image(AdjacencyKind::C2);
        let line = DigitalLine::new(Orientation::Horizontal, 2);
        assert_eq!(closed_side(&rect, &line), Some(Side::Plus));
        let line = DigitalLine::new(Orientation::Horizontal, 3);
        assert_eq!(closed_side(&rect, &line), None);
        let line = DigitalLine::new(Orientation::Vertical, 9);
        assert_eq!(closed_side(&rect, &line), Some(Side::Minus));
    }
}
