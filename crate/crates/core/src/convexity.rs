//! Convex hulls, bounding-curve tracing, disk decomposition and the digital
//! convexity classifier.
//!
//! The bounding curve of a disk `D` is taken to be the set of points of `D`
//! that are c1-adjacent to the unbounded c1-component of Z² \ D, ordered by a
//! counterclockwise boundary trace (interior on the left) that starts at the
//! lexicographically least point of `D`.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::image::{AdjacencyKind, DigitalImage, Point, Window, RING};
use crate::lines::{classify_segment, Orientation, Segment};

/// Vertices of the Euclidean convex hull, counterclockwise from the least
/// point. Collinear points are dropped; a collinear set yields its two ends.
pub fn hull_vertices(points: &[Point]) -> Vec<Point> {
    let mut pts = points.to_vec();
    pts.sort_unstable();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    fn cross(o: Point, a: Point, b: Point) -> i64 {
        (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)
    }
    let mut hull: Vec<Point> = Vec::with_capacity(2 * pts.len());
    for &p in &pts {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0 {
            hull.pop();
        }
        hull.push(p);
    }
    let lower = hull.len() + 1;
    for &p in pts.iter().rev().skip(1) {
        while hull.len() >= lower && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0 {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();
    hull
}

/// A cyclic sequence of distinct points, consecutive entries c2-adjacent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedCurve {
    cycle: Vec<Point>,
}

impl ClosedCurve {
    pub fn points(&self) -> &[Point] {
        &self.cycle
    }

    pub fn len(&self) -> usize {
        self.cycle.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycle.is_empty()
    }

    /// Unit step from entry `i` to entry `i + 1` (indices mod m).
    fn step(&self, i: usize) -> (i64, i64) {
        let m = self.cycle.len();
        let (a, b) = (self.cycle[i % m], self.cycle[(i + 1) % m]);
        (b.x - a.x, b.y - a.y)
    }
}

/// A maximal run of the curve along one direction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub orientation: Orientation,
    pub start: Point,
    pub end: Point,
    pub points: Vec<Point>,
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}-{}", self.orientation, self.start, self.end)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiskReport {
    pub disk: DigitalImage,
    pub curve: ClosedCurve,
    pub interior: BTreeSet<Point>,
    /// In curve order; edge `i` ends where edge `i + 1` starts.
    pub edges: Vec<Edge>,
    /// `(vertex, interior angle in degrees)` in curve order.
    pub angles: Vec<(Point, u16)>,
}

impl DiskReport {
    pub fn vertices(&self) -> Vec<Point> {
        self.angles.iter().map(|&(v, _)| v).collect()
    }

    pub fn curve_set(&self) -> BTreeSet<Point> {
        self.curve.points().iter().copied().collect()
    }

    pub fn edge_with_points(&self, points: &BTreeSet<Point>) -> Option<&Edge> {
        self.edges.iter().find(|e| e.points.len() == points.len() && e.points.iter().all(|p| points.contains(p)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiskError {
    #[error("empty input")]
    EmptyInput,
    #[error("complement has a bounded component containing {0}")]
    HoleDetected(Point),
    #[error("boundary cannot be ordered as a closed curve (at {0})")]
    NotAClosedCurve(Point),
    #[error("interior splits into {0} c1-components")]
    InteriorDisconnected(usize),
    #[error("{0} is not a vertex of the bounding curve")]
    NotAVertex(Point),
}

fn direction_index(step: (i64, i64)) -> usize {
    RING.iter().position(|&d| d == step).expect("unit c2 step")
}

/// c1 flood fill of `window \ blocked`, seeded from every free frame point.
fn exterior_fill(window: &Window, blocked: &BTreeSet<Point>) -> BTreeSet<Point> {
    let mut seen = BTreeSet::new();
    let mut queue: VecDeque<Point> = window.points().filter(|p| window.on_frame(*p) && !blocked.contains(p)).collect();
    seen.extend(queue.iter().copied());
    while let Some(p) = queue.pop_front() {
        for q in p.neighbors(AdjacencyKind::C1) {
            if window.contains(q) && !blocked.contains(&q) && seen.insert(q) {
                queue.push_back(q);
            }
        }
    }
    seen
}

/// Moore-neighbour trace around `disk`, counterclockwise from its least point.
fn trace_boundary(disk: &BTreeSet<Point>) -> Result<Vec<Point>, DiskError> {
    let start = *disk.first().ok_or(DiskError::EmptyInput)?;
    // Nothing lies west of the least point, so we enter it from the west.
    let next_from = |p: Point, back: usize| -> Option<(Point, usize)> {
        (1..=8).map(|k| (back + k) % 8).find_map(|d| {
            let q = p.offset(RING[d].0, RING[d].1);
            disk.contains(&q).then_some((q, (d + 4) % 8))
        })
    };
    let Some(first_move) = next_from(start, 4) else {
        return Ok(vec![start]);
    };
    let mut cycle = vec![start];
    let (mut current, mut back) = first_move;
    let cap = 8 * disk.len() + 8;
    while cycle.len() <= cap {
        if current == start {
            let following = next_from(current, back).expect("start has a neighbour");
            if following == first_move {
                return Ok(cycle);
            }
        }
        cycle.push(current);
        (current, back) = next_from(current, back).expect("traced point has a neighbour");
    }
    Err(DiskError::NotAClosedCurve(start))
}

/// Decompose a finite set into its bounding curve and interior, and compute
/// the edges, vertices and interior angles of the curve. Adjacency of the
/// input is ignored; curves are c2 and complements c1.
pub fn decompose_disk(d: &DigitalImage) -> Result<DiskReport, DiskError> {
    let window = Window::around(d, 2).ok_or(DiskError::EmptyInput)?;
    let points = d.point_set();

    let exterior = exterior_fill(&window, points);
    if let Some(hole) = window.points().find(|p| !points.contains(p) && !exterior.contains(p)) {
        return Err(DiskError::HoleDetected(hole));
    }
    let boundary: BTreeSet<Point> =
        d.points().filter(|p| p.neighbors(AdjacencyKind::C1).any(|q| exterior.contains(&q))).collect();

    let cycle = trace_boundary(points)?;
    let mut seen = BTreeSet::new();
    for &p in &cycle {
        if !seen.insert(p) {
            return Err(DiskError::NotAClosedCurve(p));
        }
    }
    if cycle.len() < 3 {
        return Err(DiskError::NotAClosedCurve(cycle[0]));
    }
    if seen != boundary {
        let culprit = *seen.symmetric_difference(&boundary).next().expect("sets differ");
        return Err(DiskError::NotAClosedCurve(culprit));
    }
    let curve = ClosedCurve { cycle };

    // Z² \ S must split into the exterior and one (possibly empty) finite part.
    let outside = exterior_fill(&window, &seen);
    let interior: BTreeSet<Point> = points.difference(&seen).copied().collect();
    let rest =
        DigitalImage::new(window.points().filter(|p| !seen.contains(p) && !outside.contains(p)), AdjacencyKind::C1);
    if rest.point_set() != &interior {
        let culprit = *rest.point_set().symmetric_difference(&interior).next().expect("sets differ");
        return Err(DiskError::NotAClosedCurve(culprit));
    }
    let parts = rest.components().len();
    if parts > 1 {
        return Err(DiskError::InteriorDisconnected(parts));
    }

    let (edges, angles) = edges_and_angles(&curve);
    Ok(DiskReport { disk: d.clone(), curve, interior, edges, angles })
}

fn edges_and_angles(curve: &ClosedCurve) -> (Vec<Edge>, Vec<(Point, u16)>) {
    let m = curve.len();
    let pts = curve.points();
    // Entry 0 is the least point, which is always a vertex.
    let mut edges = Vec::new();
    let mut angles = Vec::new();
    let mut i = 0;
    while i < m {
        let step = curve.step(i);
        let incoming = curve.step(i + m - 1);
        let turn = (direction_index(step) + 8 - direction_index(incoming)) % 8;
        angles.push((pts[i], interior_angle_of_turn(turn)));
        let mut run = vec![pts[i]];
        let mut j = i;
        while j < m && curve.step(j) == step {
            j += 1;
            run.push(pts[j % m]);
        }
        let (dx, dy) = step;
        edges.push(Edge {
            orientation: Orientation::of_step(dx, dy).expect("unit step"),
            start: pts[i],
            end: pts[j % m],
            points: run,
        });
        i = j;
    }
    (edges, angles)
}

/// Counterclockwise turn of `k` eighths of a full turn → interior angle.
fn interior_angle_of_turn(k: usize) -> u16 {
    if k <= 4 {
        180 - 45 * k as u16
    } else {
        180 + 45 * (8 - k) as u16
    }
}

/// Interior angle (degrees) of the disk at vertex `v`.
pub fn interior_angle(report: &DiskReport, v: Point) -> Result<u16, DiskError> {
    report.angles.iter().find(|&&(w, _)| w == v).map(|&(_, a)| a).ok_or(DiskError::NotAVertex(v))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NotConvexReason {
    Empty,
    NotADisk(DiskError),
    /// Edge endpoints of the bounding curve differ from the hull vertices.
    VerticesDiffer {
        curve_vertices: Vec<Point>,
        hull: Vec<Point>,
    },
}

impl fmt::Display for NotConvexReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NotConvexReason::Empty => f.write_str("empty image"),
            NotConvexReason::NotADisk(e) => write!(f, "not a disk: {e}"),
            NotConvexReason::VerticesDiffer { curve_vertices, hull } => {
                write!(f, "curve has {} vertices, hull has {}", curve_vertices.len(), hull.len())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConvexityReport {
    SinglePoint(Point),
    Segment(Segment),
    ConvexDisk { disk: Box<DiskReport>, hull: Vec<Point> },
    NotConvex(NotConvexReason),
}

impl ConvexityReport {
    pub fn is_convex(&self) -> bool {
        !matches!(self, ConvexityReport::NotConvex(_))
    }

    pub fn disk(&self) -> Option<&DiskReport> {
        match self {
            ConvexityReport::ConvexDisk { disk, .. } => Some(disk),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            ConvexityReport::SinglePoint(_) => "SinglePoint",
            ConvexityReport::Segment(_) => "Segment",
            ConvexityReport::ConvexDisk { .. } => "ConvexDisk",
            ConvexityReport::NotConvex(_) => "NotConvex",
        }
    }
}

/// Classify `y` as a point, a segment, a convex disk, or not digitally convex.
pub fn is_convex(y: &DigitalImage) -> ConvexityReport {
    let pts: Vec<Point> = y.points().collect();
    match pts.as_slice() {
        [] => return ConvexityReport::NotConvex(NotConvexReason::Empty),
        [only] => return ConvexityReport::SinglePoint(*only),
        _ => {}
    }
    if let Ok(seg) = classify_segment(&pts) {
        return ConvexityReport::Segment(seg);
    }
    let disk = match decompose_disk(y) {
        Ok(d) => d,
        Err(e) => return ConvexityReport::NotConvex(NotConvexReason::NotADisk(e)),
    };
    let hull = hull_vertices(&pts);
    let curve_vertices = disk.vertices();
    let same = curve_vertices.iter().collect::<BTreeSet<_>>() == hull.iter().collect::<BTreeSet<_>>();
    if same {
        ConvexityReport::ConvexDisk { disk: Box::new(disk), hull }
    } else {
        ConvexityReport::NotConvex(NotConvexReason::VerticesDiffer { curve_vertices, hull })
    }
}
