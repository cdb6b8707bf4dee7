//! Lattice points, c_u-adjacency, finite digital images and maps between them.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// A point of the digital plane. Ordered lexicographically (x, then y).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

/// Offsets of the eight c2-neighbours, counterclockwise starting east.
pub(crate) const RING: [(i64, i64); 8] = [(1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1), (0, -1), (1, -1)];

const CROSS: [(i64, i64); 4] = [(1, 0), (0, 1), (-1, 0), (0, -1)];

impl Point {
    pub const fn new(x: i64, y: i64) -> Self {
        Point { x, y }
    }

    /// First projection.
    pub const fn p1(self) -> i64 {
        self.x
    }

    /// Second projection.
    pub const fn p2(self) -> i64 {
        self.y
    }

    pub const fn offset(self, dx: i64, dy: i64) -> Self {
        Point::new(self.x + dx, self.y + dy)
    }

    /// The lattice neighbours of `self` under `kind`, in counterclockwise order.
    pub fn neighbors(self, kind: AdjacencyKind) -> impl Iterator<Item = Point> {
        let offsets: &'static [(i64, i64)] = match kind {
            AdjacencyKind::C1 => &CROSS,
            AdjacencyKind::C2 => &RING,
        };
        offsets.iter().map(move |&(dx, dy)| self.offset(dx, dy))
    }

    /// Squared Euclidean distance.
    pub fn dist2(self, other: Point) -> i64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        dx * dx + dy * dy
    }
}

impl From<(i64, i64)> for Point {
    fn from((x, y): (i64, i64)) -> Self {
        Point::new(x, y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// The c_u adjacencies of the plane: c1 is 4-adjacency, c2 is 8-adjacency.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AdjacencyKind {
    C1,
    C2,
}

impl AdjacencyKind {
    /// Maximum number of coordinates allowed to differ.
    pub const fn u(self) -> usize {
        match self {
            AdjacencyKind::C1 => 1,
            AdjacencyKind::C2 => 2,
        }
    }

    pub fn from_u(u: usize) -> Result<Self, ImageError> {
        match u {
            1 => Ok(AdjacencyKind::C1),
            2 => Ok(AdjacencyKind::C2),
            other => Err(ImageError::UnsupportedAdjacency(other)),
        }
    }
}

impl fmt::Display for AdjacencyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c{}", self.u())
    }
}

impl FromStr for AdjacencyKind {
    type Err = ImageError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "c1" => Ok(AdjacencyKind::C1),
            "c2" => Ok(AdjacencyKind::C2),
            _ => Err(ImageError::UnknownAdjacency(s.to_owned())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ImageError {
    #[error("point {0} is not in the image")]
    PointNotInImage(Point),
    #[error("map sends {point} to {value}, which is outside the target image")]
    ValueOutsideTarget { point: Point, value: Point },
    #[error("map has no value at {0}")]
    MissingValue(Point),
    #[error("c{0} adjacency is not supported in the plane")]
    UnsupportedAdjacency(usize),
    #[error("unknown adjacency {0:?}, expected \"c1\" or \"c2\"")]
    UnknownAdjacency(String),
}

/// c_u-adjacency of integer tuples of equal length: `a != b`, at most `u`
/// coordinates differ, and each differing coordinate differs by exactly one.
pub fn adjacent_tuples(a: &[i64], b: &[i64], u: usize) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut differing = 0;
    for (&ai, &bi) in a.iter().zip(b) {
        match (ai - bi).abs() {
            0 => {}
            1 => differing += 1,
            _ => return false,
        }
    }
    differing >= 1 && differing <= u
}

pub fn adjacent(p: Point, q: Point, kind: AdjacencyKind) -> bool {
    adjacent_tuples(&[p.x, p.y], &[q.x, q.y], kind.u())
}

pub fn adjacent_or_equal(p: Point, q: Point, kind: AdjacencyKind) -> bool {
    p == q || adjacent(p, q, kind)
}

/// A finite set of lattice points together with an adjacency.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DigitalImage {
    points: BTreeSet<Point>,
    kind: AdjacencyKind,
}

impl DigitalImage {
    pub fn new<I: IntoIterator<Item = Point>>(points: I, kind: AdjacencyKind) -> Self {
        DigitalImage { points: points.into_iter().collect(), kind }
    }

    /// Shorthand for an image under c2-adjacency.
    pub fn c2<I: IntoIterator<Item = Point>>(points: I) -> Self {
        Self::new(points, AdjacencyKind::C2)
    }

    pub fn from_coords(coords: &[(i64, i64)], kind: AdjacencyKind) -> Self {
        Self::new(coords.iter().copied().map(Point::from), kind)
    }

    pub fn empty(kind: AdjacencyKind) -> Self {
        Self::new(std::iter::empty(), kind)
    }

    pub fn kind(&self) -> AdjacencyKind {
        self.kind
    }

    pub fn with_kind(mut self, kind: AdjacencyKind) -> Self {
        self.kind = kind;
        self
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: Point) -> bool {
        self.points.contains(&p)
    }

    /// Points in canonical (lexicographic) order.
    pub fn points(&self) -> impl DoubleEndedIterator<Item = Point> + ExactSizeIterator + '_ {
        self.points.iter().copied()
    }

    pub fn point_set(&self) -> &BTreeSet<Point> {
        &self.points
    }

    /// Smallest window containing every point, `None` for the empty image.
    pub fn bounding_box(&self) -> Option<Window> {
        let first = self.points.first()?;
        let mut w = Window::unchecked(first.x, first.x, first.y, first.y);
        for p in self.points() {
            w.y_min = w.y_min.min(p.y);
            w.y_max = w.y_max.max(p.y);
        }
        w.x_max = self.points.last().map_or(first.x, |p| p.x);
        Some(w)
    }

    /// N*(X, κ, p): the points of the image adjacent or equal to `p`.
    pub fn closed_neighborhood(&self, p: Point) -> Result<BTreeSet<Point>, ImageError> {
        if !self.contains(p) {
            return Err(ImageError::PointNotInImage(p));
        }
        let mut out: BTreeSet<Point> = p.neighbors(self.kind).filter(|q| self.contains(*q)).collect();
        out.insert(p);
        Ok(out)
    }

    /// Adjacent points of the image (excluding `p`).
    pub fn neighbors_in(&self, p: Point) -> impl Iterator<Item = Point> + '_ {
        p.neighbors(self.kind).filter(move |q| self.contains(*q))
    }

    /// The κ-components, each sorted, listed by their least point.
    pub fn components(&self) -> Vec<BTreeSet<Point>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for start in self.points() {
            if seen.contains(&start) {
                continue;
            }
            let mut part = BTreeSet::new();
            let mut queue = VecDeque::from([start]);
            seen.insert(start);
            while let Some(p) = queue.pop_front() {
                part.insert(p);
                for q in self.neighbors_in(p) {
                    if seen.insert(q) {
                        queue.push_back(q);
                    }
                }
            }
            out.push(part);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// True iff no point of the image is adjacent-or-equal to both `p` and `q`.
    pub fn no_common_neighbor(&self, p: Point, q: Point) -> bool {
        !self.points().any(|y| adjacent_or_equal(y, p, self.kind) && adjacent_or_equal(y, q, self.kind))
    }

    pub fn union(&self, other: &DigitalImage) -> DigitalImage {
        DigitalImage::new(self.points.union(&other.points).copied(), self.kind)
    }

    pub fn intersection(&self, other: &DigitalImage) -> DigitalImage {
        DigitalImage::new(self.points.intersection(&other.points).copied(), self.kind)
    }

    pub fn difference(&self, other: &DigitalImage) -> DigitalImage {
        DigitalImage::new(self.points.difference(&other.points).copied(), self.kind)
    }

    pub fn without(&self, p: Point) -> DigitalImage {
        let mut points = self.points.clone();
        points.remove(&p);
        DigitalImage { points, kind: self.kind }
    }

    pub fn is_subset(&self, other: &DigitalImage) -> bool {
        self.points.is_subset(&other.points)
    }

    /// Image of the point set under `f`, same adjacency.
    pub fn map_points<F: Fn(Point) -> Point>(&self, f: F) -> DigitalImage {
        DigitalImage::new(self.points().map(f), self.kind)
    }
}

/// Local continuity test: every adjacent pair of `source` must map to an
/// adjacent-or-equal pair of `target`.
pub fn is_continuous<F>(f: F, source: &DigitalImage, target: &DigitalImage) -> Result<bool, ImageError>
where
    F: Fn(Point) -> Point,
{
    let values: BTreeMap<Point, Point> = source.points().map(|p| (p, f(p))).collect();
    for (&p, &v) in &values {
        if !target.contains(v) {
            return Err(ImageError::ValueOutsideTarget { point: p, value: v });
        }
    }
    for (&p, &v) in &values {
        for q in source.neighbors_in(p) {
            if q > p && !adjacent_or_equal(v, values[&q], target.kind()) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A total map of a finite image into itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelfMap {
    domain: DigitalImage,
    table: BTreeMap<Point, Point>,
}

impl SelfMap {
    pub fn new(domain: DigitalImage, table: BTreeMap<Point, Point>) -> Result<Self, ImageError> {
        for p in domain.points() {
            match table.get(&p) {
                None => return Err(ImageError::MissingValue(p)),
                Some(&v) if !domain.contains(v) => return Err(ImageError::ValueOutsideTarget { point: p, value: v }),
                Some(_) => {}
            }
        }
        if let Some(&extra) = table.keys().find(|k| !domain.contains(**k)) {
            return Err(ImageError::PointNotInImage(extra));
        }
        Ok(SelfMap { domain, table })
    }

    pub fn from_fn<F: Fn(Point) -> Point>(domain: DigitalImage, f: F) -> Result<Self, ImageError> {
        let table = domain.points().map(|p| (p, f(p))).collect();
        Self::new(domain, table)
    }

    pub fn identity(domain: DigitalImage) -> Self {
        let table = domain.points().map(|p| (p, p)).collect();
        SelfMap { domain, table }
    }

    pub fn domain(&self) -> &DigitalImage {
        &self.domain
    }

    pub fn get(&self, p: Point) -> Option<Point> {
        self.table.get(&p).copied()
    }

    /// Value at a domain point. Panics outside the domain.
    pub fn at(&self, p: Point) -> Point {
        self.table[&p]
    }

    pub fn iter(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        self.table.iter().map(|(&p, &v)| (p, v))
    }

    pub fn is_continuous(&self) -> bool {
        is_continuous(|p| self.at(p), &self.domain, &self.domain).unwrap_or(false)
    }

    /// `self ∘ inner`: apply `inner` first.
    pub fn compose(&self, inner: &SelfMap) -> Result<SelfMap, ImageError> {
        let table = inner
            .iter()
            .map(|(p, v)| self.get(v).map(|w| (p, w)).ok_or(ImageError::PointNotInImage(v)))
            .collect::<Result<_, _>>()?;
        SelfMap::new(inner.domain.clone(), table)
    }

    /// Points with `f(x)` adjacent or equal to `x`.
    pub fn approximate_fixed_points(&self) -> impl Iterator<Item = Point> + '_ {
        let kind = self.domain.kind();
        self.iter().filter(move |&(p, v)| adjacent_or_equal(p, v, kind)).map(|(p, _)| p)
    }
}

/// An inclusive rectangle of lattice points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Window {
    pub x_min: i64,
    pub x_max: i64,
    pub y_min: i64,
    pub y_max: i64,
}

impl Window {
    /// `None` when either range is empty.
    pub fn new(x_min: i64, x_max: i64, y_min: i64, y_max: i64) -> Option<Self> {
        (x_min <= x_max && y_min <= y_max).then_some(Window { x_min, x_max, y_min, y_max })
    }

    pub(crate) const fn unchecked(x_min: i64, x_max: i64, y_min: i64, y_max: i64) -> Self {
        Window { x_min, x_max, y_min, y_max }
    }

    /// The square [lo, hi]².
    pub fn square(lo: i64, hi: i64) -> Option<Self> {
        Self::new(lo, hi, lo, hi)
    }

    /// Bounding box of `image` grown by `pad` on every side.
    pub fn around(image: &DigitalImage, pad: i64) -> Option<Self> {
        image.bounding_box().map(|w| w.padded(pad))
    }

    pub fn padded(&self, pad: i64) -> Self {
        Window::unchecked(self.x_min - pad, self.x_max + pad, self.y_min - pad, self.y_max + pad)
    }

    pub fn contains(&self, p: Point) -> bool {
        (self.x_min..=self.x_max).contains(&p.x) && (self.y_min..=self.y_max).contains(&p.y)
    }

    pub fn contains_window(&self, other: &Window) -> bool {
        self.x_min <= other.x_min && self.x_max >= other.x_max && self.y_min <= other.y_min && self.y_max >= other.y_max
    }

    pub fn on_frame(&self, p: Point) -> bool {
        p.x == self.x_min || p.x == self.x_max || p.y == self.y_min || p.y == self.y_max
    }

    pub fn width(&self) -> i64 {
        self.x_max - self.x_min + 1
    }

    pub fn height(&self) -> i64 {
        self.y_max - self.y_min + 1
    }

    /// All points, lexicographic order.
    pub fn points(&self) -> impl Iterator<Item = Point> {
        let w = *self;
        (w.x_min..=w.x_max).flat_map(move |x| (w.y_min..=w.y_max).map(move |y| Point::new(x, y)))
    }

    pub fn to_image(&self, kind: AdjacencyKind) -> DigitalImage {
        DigitalImage::new(self.points(), kind)
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]x[{},{}]", self.x_min, self.x_max, self.y_min, self.y_max)
    }
}

/// The eight symmetries of the square lattice fixing the origin.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Symmetry {
    Identity,
    Rot90,
    Rot180,
    Rot270,
    /// (x, y) ↦ (−x, y)
    FlipX,
    /// (x, y) ↦ (x, −y)
    FlipY,
    /// (x, y) ↦ (y, x)
    Transpose,
    /// (x, y) ↦ (−y, −x)
    AntiTranspose,
}

impl Symmetry {
    pub const ALL: [Symmetry; 8] = [
        Symmetry::Identity,
        Symmetry::Rot90,
        Symmetry::Rot180,
        Symmetry::Rot270,
        Symmetry::FlipX,
        Symmetry::FlipY,
        Symmetry::Transpose,
        Symmetry::AntiTranspose,
    ];

    pub fn apply(self, p: Point) -> Point {
        let Point { x, y } = p;
        match self {
            Symmetry::Identity => Point::new(x, y),
            Symmetry::Rot90 => Point::new(-y, x),
            Symmetry::Rot180 => Point::new(-x, -y),
            Symmetry::Rot270 => Point::new(y, -x),
            Symmetry::FlipX => Point::new(-x, y),
            Symmetry::FlipY => Point::new(x, -y),
            Symmetry::Transpose => Point::new(y, x),
            Symmetry::AntiTranspose => Point::new(-y, -x),
        }
    }

    pub fn inverse(self) -> Symmetry {
        match self {
            Symmetry::Rot90 => Symmetry::Rot270,
            Symmetry::Rot270 => Symmetry::Rot90,
            other => other,
        }
    }
}
