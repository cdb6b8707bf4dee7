//! Constructive c2-retractions of Z² onto convex disks, onto unions of two
//! convex disks sharing an edge, and onto wedges of two convex disks, plus
//! window-based verification of the retraction properties.
//!
//! Every [`Retraction`] evaluates lazily from its scheme parameters and is
//! total on Z².

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::convexity::{decompose_disk, is_convex, DiskReport};
use crate::image::{adjacent_or_equal, AdjacencyKind, DigitalImage, Point, SelfMap, Symmetry, Window};
use crate::lines::{
    closed_side, extreme_lines, separation_line, DigitalLine, HalfPlane, Orientation, SeparationError, Side,
};

/// Anything that sends some points of the plane to points of the plane.
pub trait PointMap {
    /// Value at `p`, or `None` where the map is undefined.
    fn map_point(&self, p: Point) -> Option<Point>;
}

impl PointMap for SelfMap {
    fn map_point(&self, p: Point) -> Option<Point> {
        self.get(p)
    }
}

impl<F: Fn(Point) -> Point> PointMap for F {
    fn map_point(&self, p: Point) -> Option<Point> {
        Some(self(p))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RetractionError {
    #[error("{0} is not a convex disk")]
    NotConvexDisk(&'static str),
    #[error("the shared set is not an edge of both bounding curves")]
    SharedSetNotEdge,
    #[error(transparent)]
    Separation(#[from] SeparationError),
    #[error(transparent)]
    Wedge(#[from] WedgeError),
    #[error("glued retractions disagree at {point}: {first} vs {second}")]
    GlueMismatch { point: Point, first: Point, second: Point },
    #[error("{0} is not a sandwich line of the target")]
    NotASandwichLine(DigitalLine),
    #[error("the disk leaves the perpendicular strip over its face on {0}")]
    FaceNotAnchorable(DigitalLine),
    #[error("window {window} does not contain the target's bounding box padded by 2")]
    WindowTooSmall { window: Window },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WedgeError {
    #[error("images share {0} points, expected exactly one")]
    IntersectionNotSingleton(usize),
    #[error("{0} and {1} are adjacent across the two images")]
    CrossAdjacency(Point, Point),
}

/// Slope of a slanted line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Slope {
    Plus,
    Minus,
}

impl Slope {
    pub fn orientation(self) -> Orientation {
        match self {
            Slope::Plus => Orientation::SlopePlus,
            Slope::Minus => Orientation::SlopeMinus,
        }
    }
}

/// Column clamp onto a convex disk; `transposed` makes it a row clamp.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxisScheme {
    transposed: bool,
    first_column: i64,
    /// `(low, high)` of each column, west to east.
    columns: Vec<(i64, i64)>,
}

impl AxisScheme {
    fn new(disk: &DigitalImage, transposed: bool) -> Self {
        let mut by_column: BTreeMap<i64, (i64, i64)> = BTreeMap::new();
        for p in disk.points() {
            let (c, v) = if transposed { (p.y, p.x) } else { (p.x, p.y) };
            let e = by_column.entry(c).or_insert((v, v));
            e.0 = e.0.min(v);
            e.1 = e.1.max(v);
        }
        let first_column = *by_column.keys().next().expect("nonempty disk");
        AxisScheme { transposed, first_column, columns: by_column.into_values().collect() }
    }

    pub fn orientation(&self) -> Orientation {
        if self.transposed {
            Orientation::Horizontal
        } else {
            Orientation::Vertical
        }
    }

    fn eval(&self, p: Point) -> Point {
        let (c, v) = if self.transposed { (p.y, p.x) } else { (p.x, p.y) };
        let last = self.first_column + self.columns.len() as i64 - 1;
        let col = c.clamp(self.first_column, last);
        let (lo, hi) = self.columns[(col - self.first_column) as usize];
        let v = v.clamp(lo, hi);
        if self.transposed {
            Point::new(v, col)
        } else {
            Point::new(col, v)
        }
    }
}

/// A slanted sandwich line whose far closed half-plane is sent onto its face.
///
/// Valid only when the disk lies in the perpendicular strip over the face;
/// points of the near side beyond the face endpoints are then collapsed onto
/// the perpendicular rays through the endpoints.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FaceAnchor {
    pub line: DigitalLine,
    /// Sends `line` to `x + y = b` with the disk on `x + y >= b`.
    frame: Symmetry,
    b: i64,
    /// Frame x-range of the face.
    face: (i64, i64),
}

impl FaceAnchor {
    fn new(disk: &DigitalImage, line: DigitalLine) -> Option<Self> {
        let side = closed_side(disk, &line)?;
        let frame = match (line.orientation, side) {
            (Orientation::SlopeMinus, Side::Plus) => Symmetry::Identity,
            (Orientation::SlopeMinus, Side::Minus) => Symmetry::Rot180,
            (Orientation::SlopePlus, Side::Plus) => Symmetry::FlipX,
            (Orientation::SlopePlus, Side::Minus) => Symmetry::FlipY,
            _ => return None,
        };
        let b = line.offset * side.sign();
        let face_x: Vec<i64> = disk.points().filter(|p| line.contains(*p)).map(|p| frame.apply(p).x).collect();
        let face = (*face_x.iter().min()?, *face_x.iter().max()?);
        let anchor = FaceAnchor { line, frame, b, face };
        let (d_lo, d_hi) = anchor.strip();
        disk.points().map(|p| frame.apply(p)).all(|q| (d_lo..=d_hi).contains(&(q.x - q.y))).then_some(anchor)
    }

    /// Range of `x - y` in the frame over the face.
    fn strip(&self) -> (i64, i64) {
        (2 * self.face.0 - self.b, 2 * self.face.1 - self.b)
    }

    fn to_frame(self, p: Point) -> Point {
        self.frame.apply(p)
    }

    fn unframe(self, q: Point) -> Point {
        self.frame.inverse().apply(q)
    }

    /// Whether `p` lies in the closed half-plane beyond the line.
    fn beyond(&self, p: Point) -> bool {
        let q = self.to_frame(p);
        q.x + q.y <= self.b
    }

    /// Image of a point beyond the line: the perpendicular foot when it is a
    /// lattice point of the face, the image of the west neighbour when the
    /// foot is a half-integer inside the face, and otherwise the nearest
    /// endpoint.
    fn face_point(&self, p: Point) -> Point {
        let (a, c) = self.face;
        let b = self.b;
        let mut q = self.to_frame(p);
        // the west neighbour in original coordinates
        let west = self.frame.apply(Point::new(-1, 0));
        loop {
            // twice the frame x-coordinate of the perpendicular foot on x + y = b
            let twice_foot = q.x - q.y + b;
            let x = if a == c || twice_foot <= 2 * a {
                a
            } else if twice_foot >= 2 * c {
                c
            } else if twice_foot % 2 == 0 {
                twice_foot / 2
            } else {
                q = q.offset(west.x, west.y);
                continue;
            };
            return self.unframe(Point::new(x, b - x));
        }
    }

    /// Slide near-side points beyond the strip onto the perpendicular ray
    /// through the nearer face endpoint; identity inside the strip.
    fn collapse(&self, p: Point) -> Point {
        let (d_lo, d_hi) = self.strip();
        let q = self.to_frame(p);
        let d = q.x - q.y;
        let moved = if d > d_hi {
            let e = d - d_hi;
            q.offset(-(e / 2) - e % 2, e / 2)
        } else if d < d_lo {
            let e = d_lo - d;
            q.offset(e / 2, -(e / 2) - e % 2)
        } else {
            q
        };
        self.unframe(moved)
    }
}

/// Retraction organised around the slanted sandwich lines of a convex disk.
///
/// Each anchored sandwich line sends its far half-plane onto its face; the
/// rest of the plane is collapsed by the anchors and then clamped by columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlantedScheme {
    slope: Slope,
    anchors: Vec<FaceAnchor>,
    disk: BTreeSet<Point>,
    columns: AxisScheme,
}

impl SlantedScheme {
    fn new(disk: &DigitalImage, slope: Slope, anchors: Vec<FaceAnchor>) -> Self {
        SlantedScheme { slope, anchors, disk: disk.point_set().clone(), columns: AxisScheme::new(disk, false) }
    }

    pub fn slope(&self) -> Slope {
        self.slope
    }

    /// Sandwich lines whose far half-plane maps onto the face.
    pub fn anchored_lines(&self) -> impl Iterator<Item = DigitalLine> + '_ {
        self.anchors.iter().map(|a| a.line)
    }

    fn eval(&self, p: Point) -> Point {
        if self.disk.contains(&p) {
            return p;
        }
        if let Some(a) = self.anchors.iter().find(|a| a.beyond(p)) {
            return a.face_point(p);
        }
        let q = self.anchors.iter().fold(p, |q, a| a.collapse(q));
        self.columns.eval(q)
    }
}

/// Two retractions glued along a line: `first` on its closed side, `second`
/// on the other.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GluedScheme {
    pub line: DigitalLine,
    pub first_side: Side,
    pub first: Retraction,
    pub second: Retraction,
}

impl GluedScheme {
    fn eval(&self, p: Point) -> Point {
        if HalfPlane::new(self.line, self.first_side).contains(p) {
            self.first.eval(p)
        } else {
            self.second.eval(p)
        }
    }

    /// First point of `line ∩ window` where the two halves disagree.
    fn mismatch(&self, window: &Window) -> Option<RetractionError> {
        self.line.points_in(window).find_map(|p| {
            let (a, b) = (self.first.eval(p), self.second.eval(p));
            (a != b).then_some(RetractionError::GlueMismatch { point: p, first: a, second: b })
        })
    }
}

/// Explicit overrides applied after a base retraction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableScheme {
    pub base: Retraction,
    pub overrides: BTreeMap<Point, Point>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Scheme {
    Axis(AxisScheme),
    Slanted(SlantedScheme),
    EdgeUnion(Box<GluedScheme>),
    Wedge { wedge_point: Point, glued: Box<GluedScheme> },
    Table(Box<TableScheme>),
}

/// A c2-retraction of Z² onto `target`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Retraction {
    target: DigitalImage,
    scheme: Scheme,
}

impl Retraction {
    pub fn target(&self) -> &DigitalImage {
        &self.target
    }

    pub fn scheme(&self) -> &Scheme {
        &self.scheme
    }

    pub fn eval(&self, p: Point) -> Point {
        match &self.scheme {
            Scheme::Axis(s) => s.eval(p),
            Scheme::Slanted(s) => s.eval(p),
            Scheme::EdgeUnion(g) => g.eval(p),
            Scheme::Wedge { glued, .. } => glued.eval(p),
            Scheme::Table(t) => {
                let q = t.base.eval(p);
                t.overrides.get(&q).copied().unwrap_or(q)
            }
        }
    }

    /// `base` followed by the explicit `overrides`. The overrides must move
    /// base values into `target`; nothing is checked here.
    pub fn with_overrides(target: DigitalImage, base: Retraction, overrides: BTreeMap<Point, Point>) -> Self {
        Retraction { target, scheme: Scheme::Table(Box::new(TableScheme { base, overrides })) }
    }

    /// `(p, r(p))` for every window point, lexicographic.
    pub fn table(&self, window: &Window) -> Vec<(Point, Point)> {
        window.points().map(|p| (p, self.eval(p))).collect()
    }

    pub fn name(&self) -> &'static str {
        match self.scheme {
            Scheme::Axis(_) => "axis",
            Scheme::Slanted(_) => "slanted",
            Scheme::EdgeUnion(_) => "edge-union",
            Scheme::Wedge { .. } => "wedge",
            Scheme::Table(_) => "table",
        }
    }
}

impl PointMap for Retraction {
    fn map_point(&self, p: Point) -> Option<Point> {
        Some(self.eval(p))
    }
}

impl fmt::Display for Retraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} retraction onto {} points", self.name(), self.target.len())
    }
}

/// A retraction of a finite image onto a subset, given pointwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteRetraction {
    pub domain: DigitalImage,
    pub target: DigitalImage,
    pub table: BTreeMap<Point, Point>,
}

impl PointMap for FiniteRetraction {
    fn map_point(&self, p: Point) -> Option<Point> {
        self.table.get(&p).copied()
    }
}

fn convex_disk(x: &DigitalImage, which: &'static str) -> Result<DiskReport, RetractionError> {
    match is_convex(x).disk() {
        Some(d) => Ok(d.clone()),
        None => Err(RetractionError::NotConvexDisk(which)),
    }
}

/// Column-clamp retraction onto a convex disk, organised around its
/// vertical sandwich lines.
pub fn build_axis_retraction(x: &DigitalImage) -> Result<Retraction, RetractionError> {
    build_parallel_retraction(x, Orientation::Vertical)
}

/// Retraction onto a convex disk organised around its sandwich lines of
/// `orientation`.
pub fn build_parallel_retraction(x: &DigitalImage, orientation: Orientation) -> Result<Retraction, RetractionError> {
    match orientation {
        Orientation::Vertical | Orientation::Horizontal => {
            convex_disk(x, "target")?;
            let scheme = Scheme::Axis(AxisScheme::new(x, orientation == Orientation::Horizontal));
            Ok(Retraction { target: x.clone(), scheme })
        }
        Orientation::SlopePlus => build_slanted_retraction(x, Slope::Plus),
        Orientation::SlopeMinus => build_slanted_retraction(x, Slope::Minus),
    }
}

/// Retraction onto a convex disk organised around its sandwich lines of the
/// given slope.
///
/// Both sandwich lines are anchored when the result is continuous on the
/// self-check window, otherwise a single one, otherwise none (then the map
/// is the column clamp).
pub fn build_slanted_retraction(x: &DigitalImage, slope: Slope) -> Result<Retraction, RetractionError> {
    convex_disk(x, "target")?;
    let (lo, hi) = extreme_lines(x, slope.orientation());
    let valid: Vec<FaceAnchor> = [lo, hi].into_iter().filter_map(|l| FaceAnchor::new(x, l)).collect();
    let mut choices: Vec<Vec<FaceAnchor>> = Vec::new();
    if valid.len() == 2 {
        choices.push(valid.clone());
    }
    choices.extend(valid.iter().map(|a| vec![*a]));
    let window = self_check_window(x).to_image(AdjacencyKind::C2);
    for anchors in choices {
        let r = slanted(x, slope, anchors);
        if verify_restriction(&r, &window, x, VerifyOptions { boundary: true }).passed() {
            return Ok(r);
        }
    }
    log::debug!("no slanted sandwich line of slope {slope:?} can be anchored; using the column clamp");
    Ok(slanted(x, slope, Vec::new()))
}

fn slanted(x: &DigitalImage, slope: Slope, anchors: Vec<FaceAnchor>) -> Retraction {
    Retraction { target: x.clone(), scheme: Scheme::Slanted(SlantedScheme::new(x, slope, anchors)) }
}

fn self_check_window(x: &DigitalImage) -> Window {
    let bbox = x.bounding_box().expect("nonempty disk");
    bbox.padded(bbox.width().max(bbox.height()) + 3)
}

/// Retraction onto a convex disk sending the closed half-plane beyond the
/// sandwich line `line` onto `line ∩ X`, each point of `line` going to its
/// nearest point of `line ∩ X`.
pub fn build_anchored_retraction(x: &DigitalImage, line: DigitalLine) -> Result<Retraction, RetractionError> {
    convex_disk(x, "target")?;
    let sandwich = extreme_lines(x, line.orientation);
    if line != sandwich.0 && line != sandwich.1 {
        return Err(RetractionError::NotASandwichLine(line));
    }
    let scheme = match line.orientation {
        Orientation::Vertical => Scheme::Axis(AxisScheme::new(x, false)),
        Orientation::Horizontal => Scheme::Axis(AxisScheme::new(x, true)),
        Orientation::SlopeMinus | Orientation::SlopePlus => {
            let anchor = FaceAnchor::new(x, line).ok_or(RetractionError::FaceNotAnchorable(line))?;
            let slope = if line.orientation == Orientation::SlopePlus { Slope::Plus } else { Slope::Minus };
            Scheme::Slanted(SlantedScheme::new(x, slope, vec![anchor]))
        }
    };
    Ok(Retraction { target: x.clone(), scheme })
}

const GLUE_PAD: i64 = 4;

fn glue(x1: &DigitalImage, x2: &DigitalImage, line: DigitalLine) -> Result<GluedScheme, RetractionError> {
    let first_side = closed_side(x1, &line).ok_or(SeparationError::NoSeparation)?;
    let first = build_anchored_retraction(x1, line)?;
    let second = build_anchored_retraction(x2, line)?;
    let glued = GluedScheme { line, first_side, first, second };
    let window = Window::around(&x1.union(x2), GLUE_PAD).expect("nonempty union");
    match glued.mismatch(&window) {
        Some(e) => Err(e),
        None => Ok(glued),
    }
}

/// Retraction onto `x1 ∪ x2` for convex disks meeting in an edge of both
/// bounding curves.
pub fn build_edge_union_retraction(x1: &DigitalImage, x2: &DigitalImage) -> Result<Retraction, RetractionError> {
    let d1 = convex_disk(x1, "first image")?;
    let d2 = convex_disk(x2, "second image")?;
    let shared: BTreeSet<Point> = x1.intersection(x2).points().collect();
    if shared.len() < 2 || d1.edge_with_points(&shared).is_none() || d2.edge_with_points(&shared).is_none() {
        return Err(RetractionError::SharedSetNotEdge);
    }
    let line = separation_line(x1, x2)?;
    let glued = glue(x1, x2, line)?;
    Ok(Retraction { target: x1.union(x2), scheme: Scheme::EdgeUnion(Box::new(glued)) })
}

/// Outcome of a successful wedge check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WedgeInfo {
    pub point: Point,
    /// Whether the wedge point is an edge endpoint of both bounding curves
    /// (false when either image is not a disk).
    pub endpoint_of_both: bool,
}

/// Check that `x1 ∪ x2` is a wedge: one shared point and no c2-adjacency
/// between the remaining parts.
pub fn check_wedge(x1: &DigitalImage, x2: &DigitalImage) -> Result<WedgeInfo, WedgeError> {
    let shared = x1.intersection(x2);
    if shared.len() != 1 {
        return Err(WedgeError::IntersectionNotSingleton(shared.len()));
    }
    let x0 = shared.points().next().expect("one point");
    for p in x1.points().filter(|&p| p != x0) {
        if let Some(q) = p.neighbors(AdjacencyKind::C2).filter(|&q| q != x0 && x2.contains(q)).min() {
            return Err(WedgeError::CrossAdjacency(p, q));
        }
    }
    let is_vertex = |x: &DigitalImage| decompose_disk(x).is_ok_and(|d| d.vertices().contains(&x0));
    Ok(WedgeInfo { point: x0, endpoint_of_both: is_vertex(x1) && is_vertex(x2) })
}

/// Retraction onto the wedge of two convex disks.
pub fn build_wedge_retraction(x1: &DigitalImage, x2: &DigitalImage) -> Result<Retraction, RetractionError> {
    let info = check_wedge(x1, x2)?;
    convex_disk(x1, "first image")?;
    convex_disk(x2, "second image")?;
    let line = separation_line(x1, x2)?;
    let glued = glue(x1, x2, line)?;
    Ok(Retraction { target: x1.union(x2), scheme: Scheme::Wedge { wedge_point: info.point, glued: Box::new(glued) } })
}

/// The first failed retraction property found.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    NotFixed {
        point: Point,
        image: Point,
    },
    Undefined {
        point: Point,
    },
    OutsideTarget {
        point: Point,
        image: Point,
    },
    Discontinuous {
        p: Point,
        q: Point,
        rp: Point,
        rq: Point,
    },
    /// A point outside the interior mapped off the bounding curve.
    BoundaryEscape {
        point: Point,
        image: Point,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotFixed { point, image } => write!(f, "target point {point} moved to {image}"),
            Violation::Undefined { point } => write!(f, "no value at {point}"),
            Violation::OutsideTarget { point, image } => write!(f, "{point} maps to {image} outside the target"),
            Violation::Discontinuous { p, q, rp, rq } => {
                write!(f, "adjacent {p} and {q} map to {rp} and {rq}")
            }
            Violation::BoundaryEscape { point, image } => {
                write!(f, "{point} maps to {image}, off the bounding curve")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub checked_points: usize,
    pub violation: Option<Violation>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct VerifyOptions {
    /// Also require r(p) ∈ S for every p outside Int(S), S the bounding
    /// curve of the target. Ignored when the target is not a disk.
    pub boundary: bool,
}

/// Check that `map`, restricted to `domain`, is a c2-retraction onto
/// `target`: identity on the target, values in the target, and continuous.
pub fn verify_restriction<M: PointMap + ?Sized>(
    map: &M,
    domain: &DigitalImage,
    target: &DigitalImage,
    options: VerifyOptions,
) -> VerificationReport {
    let report = |violation| VerificationReport { checked_points: domain.len(), violation };
    let mut values = BTreeMap::new();
    for p in domain.points() {
        let Some(v) = map.map_point(p) else {
            return report(Some(Violation::Undefined { point: p }));
        };
        values.insert(p, v);
    }
    for p in target.points().filter(|p| domain.contains(*p)) {
        if values[&p] != p {
            return report(Some(Violation::NotFixed { point: p, image: values[&p] }));
        }
    }
    for (&p, &v) in &values {
        if !target.contains(v) {
            return report(Some(Violation::OutsideTarget { point: p, image: v }));
        }
    }
    for (&p, &rp) in &values {
        for q in p.neighbors(AdjacencyKind::C2).filter(|q| *q > p) {
            if let Some(&rq) = values.get(&q) {
                if !adjacent_or_equal(rp, rq, target.kind()) {
                    return report(Some(Violation::Discontinuous { p, q, rp, rq }));
                }
            }
        }
    }
    if options.boundary {
        if let Ok(disk) = decompose_disk(target) {
            let curve = disk.curve_set();
            for (&p, &v) in &values {
                if !disk.interior.contains(&p) && !curve.contains(&v) {
                    return report(Some(Violation::BoundaryEscape { point: p, image: v }));
                }
            }
        }
    }
    report(None)
}

/// Verify `r` on `window`, which must contain the target's bounding box
/// padded by 2.
pub fn verify_retraction(r: &Retraction, window: &Window) -> Result<VerificationReport, RetractionError> {
    verify_retraction_with(r, window, VerifyOptions::default())
}

pub fn verify_retraction_with(
    r: &Retraction,
    window: &Window,
    options: VerifyOptions,
) -> Result<VerificationReport, RetractionError> {
    let needed = Window::around(r.target(), 2);
    if !needed.is_some_and(|n| window.contains_window(&n)) {
        return Err(RetractionError::WindowTooSmall { window: *window });
    }
    Ok(verify_restriction(r, &window.to_image(AdjacencyKind::C2), r.target(), options))
}

/// Unique nearest point of `candidates` to `p`, if the minimum is attained once.
pub fn unique_nearest(p: Point, candidates: impl IntoIterator<Item = Point>) -> Option<Point> {
    let mut best: Option<(i64, Point)> = None;
    let mut tied = false;
    for c in candidates {
        let d = p.dist2(c);
        match best {
            Some((bd, _)) if d > bd => {}
            Some((bd, _)) if d == bd => tied = true,
            _ => {
                best = Some((d, c));
                tied = false;
            }
        }
    }
    if tied {
        None
    } else {
        best.map(|(_, c)| c)
    }
}
