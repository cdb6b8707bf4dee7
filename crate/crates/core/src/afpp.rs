//! Exhaustive decision procedures for the approximate fixed point property
//! and the fixed point property of finite digital images.
//!
//! A continuous self-map of X is a solution of a binary constraint problem:
//! one variable per point, values in X, and every adjacent pair of points
//! forced onto an adjacent-or-equal pair of values. Excluding N*(x) from the
//! domain of x turns solutions into maps without approximate fixed points.
//! The search runs backtracking with minimum-remaining-values ordering and
//! full arc consistency after every assignment; it is deterministic given
//! the canonical point order.

use std::collections::BTreeMap;
use std::fmt;

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::image::{adjacent_or_equal, DigitalImage, ImageError, Point, SelfMap};
use crate::retraction::PointMap;

/// Node limit used when the caller has no preference.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SearchStats {
    /// Value assignments tried.
    pub nodes: u64,
    /// Domain revisions performed by arc consistency.
    pub propagations: u64,
}

impl fmt::Display for SearchStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} nodes, {} propagations", self.nodes, self.propagations)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AfppCertificate {
    /// A continuous self-map with no approximate fixed point.
    Witness { map: SelfMap, stats: SearchStats },
    /// The search space was exhausted without a witness.
    HasAfpp { stats: SearchStats },
}

impl AfppCertificate {
    pub fn has_afpp(&self) -> bool {
        matches!(self, AfppCertificate::HasAfpp { .. })
    }

    pub fn witness(&self) -> Option<&SelfMap> {
        match self {
            AfppCertificate::Witness { map, .. } => Some(map),
            AfppCertificate::HasAfpp { .. } => None,
        }
    }

    pub fn stats(&self) -> SearchStats {
        match self {
            AfppCertificate::Witness { stats, .. } | AfppCertificate::HasAfpp { stats } => *stats,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FppCertificate {
    /// A continuous self-map with no fixed point.
    Witness {
        map: SelfMap,
        stats: SearchStats,
    },
    HasFpp {
        stats: SearchStats,
    },
}

impl FppCertificate {
    pub fn has_fpp(&self) -> bool {
        matches!(self, FppCertificate::HasFpp { .. })
    }

    pub fn witness(&self) -> Option<&SelfMap> {
        match self {
            FppCertificate::Witness { map, .. } => Some(map),
            FppCertificate::HasFpp { .. } => None,
        }
    }

    pub fn stats(&self) -> SearchStats {
        match self {
            FppCertificate::Witness { stats, .. } | FppCertificate::HasFpp { stats } => *stats,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("the image is empty")]
    EmptyImage,
    #[error("node budget of {budget} exceeded ({stats})")]
    BudgetExceeded { budget: u64, stats: SearchStats },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComposeError {
    #[error("the retraction is undefined at {0}")]
    Undefined(Point),
    #[error("{point} retracts to {image}, outside the domain of the inner map")]
    OutsideDomain { point: Point, image: Point },
    #[error(transparent)]
    Image(#[from] ImageError),
}

/// How the domain of a point excludes values.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Exclusion {
    None,
    Point,
    Neighborhood,
}

struct Problem {
    points: Vec<Point>,
    /// Adjacency lists of the image graph, by index.
    neighbors: Vec<Vec<usize>>,
    /// `compat[v]`: indices of the closed neighbourhood of value `v`.
    compat: Vec<FixedBitSet>,
}

impl Problem {
    fn new(x: &DigitalImage) -> Self {
        let points: Vec<Point> = x.points().collect();
        let index: BTreeMap<Point, usize> = points.iter().enumerate().map(|(i, p)| (*p, i)).collect();
        let n = points.len();
        let mut neighbors = vec![Vec::new(); n];
        let mut compat = vec![FixedBitSet::with_capacity(n); n];
        for (i, p) in points.iter().enumerate() {
            compat[i].insert(i);
            for q in x.neighbors_in(*p) {
                let j = index[&q];
                neighbors[i].push(j);
                compat[i].insert(j);
            }
        }
        Problem { points, neighbors, compat }
    }

    fn len(&self) -> usize {
        self.points.len()
    }

    fn initial_domains(&self, exclusion: Exclusion) -> Vec<FixedBitSet> {
        let n = self.len();
        (0..n)
            .map(|i| {
                let mut d = FixedBitSet::with_capacity(n);
                d.insert_range(..);
                match exclusion {
                    Exclusion::None => {}
                    Exclusion::Point => d.set(i, false),
                    Exclusion::Neighborhood => d.difference_with(&self.compat[i]),
                }
                d
            })
            .collect()
    }

    fn to_map(&self, x: &DigitalImage, values: &[usize]) -> SelfMap {
        let table = self.points.iter().zip(values).map(|(p, &v)| (*p, self.points[v])).collect();
        SelfMap::new(x.clone(), table).expect("solution values lie in the image")
    }
}

struct Exceeded;

struct Search<'a> {
    problem: &'a Problem,
    budget: u64,
    stats: SearchStats,
}

impl<'a> Search<'a> {
    fn new(problem: &'a Problem, budget: u64) -> Self {
        Search { problem, budget, stats: SearchStats::default() }
    }

    /// Arc consistency from the variables in `queue`; false on a wipe-out.
    fn propagate(&mut self, domains: &mut [FixedBitSet], mut queue: Vec<usize>) -> bool {
        let n = self.problem.len();
        let mut queued = FixedBitSet::with_capacity(n);
        for &j in &queue {
            queued.insert(j);
        }
        let mut support = FixedBitSet::with_capacity(n);
        while let Some(j) = queue.pop() {
            queued.set(j, false);
            support.clear();
            for v in domains[j].ones() {
                support.union_with(&self.problem.compat[v]);
            }
            for &i in &self.problem.neighbors[j] {
                self.stats.propagations += 1;
                let before = domains[i].count_ones(..);
                domains[i].intersect_with(&support);
                let after = domains[i].count_ones(..);
                if after == 0 {
                    return false;
                }
                if after < before && !queued.contains(i) {
                    queued.insert(i);
                    queue.push(i);
                }
            }
        }
        true
    }

    /// Unassigned variable with the fewest values, ties by index.
    fn choose(&self, domains: &[FixedBitSet]) -> Option<usize> {
        (0..domains.len()).map(|i| (domains[i].count_ones(..), i)).filter(|&(size, _)| size > 1).min().map(|(_, i)| i)
    }

    fn tick(&mut self) -> Result<(), Exceeded> {
        self.stats.nodes += 1;
        if self.stats.nodes > self.budget {
            Err(Exceeded)
        } else {
            Ok(())
        }
    }

    /// First solution in canonical order, given arc-consistent domains.
    fn first(&mut self, domains: Vec<FixedBitSet>) -> Result<Option<Vec<usize>>, Exceeded> {
        let Some(var) = self.choose(&domains) else {
            // all singletons; arc consistency makes them pairwise compatible
            return Ok(Some(domains.iter().map(|d| d.ones().next().expect("nonempty")).collect()));
        };
        for v in domains[var].ones() {
            self.tick()?;
            let mut next = domains.clone();
            next[var].clear();
            next[var].insert(v);
            if self.propagate(&mut next, vec![var]) {
                if let Some(solution) = self.first(next)? {
                    return Ok(Some(solution));
                }
            }
        }
        Ok(None)
    }

    fn count(&mut self, domains: Vec<FixedBitSet>) -> Result<u64, Exceeded> {
        let Some(var) = self.choose(&domains) else {
            return Ok(1);
        };
        let mut total = 0;
        for v in domains[var].ones() {
            self.tick()?;
            let mut next = domains.clone();
            next[var].clear();
            next[var].insert(v);
            if self.propagate(&mut next, vec![var]) {
                total += self.count(next)?;
            }
        }
        Ok(total)
    }

    fn run(&mut self, exclusion: Exclusion) -> Result<Option<Vec<usize>>, Exceeded> {
        let mut domains = self.problem.initial_domains(exclusion);
        if domains.iter().any(|d| d.is_clear()) {
            return Ok(None);
        }
        let all: Vec<usize> = (0..self.problem.len()).collect();
        if !self.propagate(&mut domains, all) {
            return Ok(None);
        }
        self.first(domains)
    }
}

fn search(x: &DigitalImage, budget: u64, exclusion: Exclusion) -> Result<(Option<SelfMap>, SearchStats), SearchError> {
    if x.is_empty() {
        return Err(SearchError::EmptyImage);
    }
    let problem = Problem::new(x);
    let mut search = Search::new(&problem, budget);
    match search.run(exclusion) {
        Ok(solution) => Ok((solution.map(|s| problem.to_map(x, &s)), search.stats)),
        Err(Exceeded) => Err(SearchError::BudgetExceeded { budget, stats: search.stats }),
    }
}

/// Look for a continuous self-map of `x` without approximate fixed points;
/// exhaustion proves the approximate fixed point property.
pub fn search_afpp_violation(x: &DigitalImage, budget: u64) -> Result<AfppCertificate, SearchError> {
    let (map, stats) = search(x, budget, Exclusion::Neighborhood)?;
    log::debug!("afpp search on {} points: {stats}", x.len());
    Ok(match map {
        Some(map) => AfppCertificate::Witness { map, stats },
        None => AfppCertificate::HasAfpp { stats },
    })
}

/// Look for a continuous self-map of `x` without fixed points.
pub fn search_fixed_point_free(x: &DigitalImage, budget: u64) -> Result<FppCertificate, SearchError> {
    let (map, stats) = search(x, budget, Exclusion::Point)?;
    Ok(match map {
        Some(map) => FppCertificate::Witness { map, stats },
        None => FppCertificate::HasFpp { stats },
    })
}

/// Number of continuous self-maps of `x`.
pub fn count_continuous_self_maps(x: &DigitalImage, budget: u64) -> Result<u64, SearchError> {
    if x.is_empty() {
        return Ok(1);
    }
    let problem = Problem::new(x);
    let mut search = Search::new(&problem, budget);
    let mut domains = problem.initial_domains(Exclusion::None);
    let all: Vec<usize> = (0..problem.len()).collect();
    search.propagate(&mut domains, all);
    search.count(domains).map_err(|Exceeded| SearchError::BudgetExceeded { budget, stats: search.stats })
}

/// Whether `f` is a continuous self-map of `x` with f(p) ∉ N*(x, p) for
/// every p.
pub fn verify_no_approx_fixed_point(x: &DigitalImage, f: &SelfMap) -> bool {
    if f.domain().point_set() != x.point_set() || f.domain().kind() != x.kind() {
        return false;
    }
    f.is_continuous() && f.iter().all(|(p, v)| !adjacent_or_equal(p, v, x.kind()))
}

/// `w ∘ r` restricted to `x`, where `r` sends `x` into the domain of `w`.
pub fn compose_through_retraction<R: PointMap + ?Sized>(
    r: &R,
    w: &SelfMap,
    x: &DigitalImage,
) -> Result<SelfMap, ComposeError> {
    let mut table = BTreeMap::new();
    for p in x.points() {
        let u = r.map_point(p).ok_or(ComposeError::Undefined(p))?;
        let v = w.get(u).ok_or(ComposeError::OutsideDomain { point: p, image: u })?;
        table.insert(p, v);
    }
    Ok(SelfMap::new(x.clone(), table)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::image::{AdjacencyKind, Window};

    fn p(x: i64, y: i64) -> Point {
        Point::new(x, y)
    }

    /// Every self-map of `x`, by brute force.
    fn all_maps(x: &DigitalImage) -> Vec<SelfMap> {
        let pts: Vec<Point> = x.points().collect();
        let n = pts.len();
        let total = n.pow(n as u32);
        (0..total)
            .map(|mut code| {
                let table = pts
                    .iter()
                    .map(|&q| {
                        let v = pts[code % n];
                        code /= n;
                        (q, v)
                    })
                    .collect();
                SelfMap::new(x.clone(), table).unwrap()
            })
            .collect()
    }

    fn brute_has_afpp(x: &DigitalImage) -> bool {
        !all_maps(x).iter().any(|f| verify_no_approx_fixed_point(x, f))
    }

    fn diamond4() -> DigitalImage {
        DigitalImage::from_coords(&[(0, 0), (1, 1), (2, 0), (1, -1)], AdjacencyKind::C2)
    }

    #[test]
    fn diamond_curve_has_a_witness() {
        let x = diamond4();
        let cert = search_afpp_violation(&x, DEFAULT_BUDGET).unwrap();
        let f = cert.witness().expect("witness");
        assert!(verify_no_approx_fixed_point(&x, f));
        assert_eq!(f.at(p(0, 0)), p(2, 0));
        assert_eq!(f.at(p(1, 1)), p(1, -1));
        assert!(!brute_has_afpp(&x));
    }

    #[test]
    fn square_has_afpp() {
        let x = Window::square(0, 3).unwrap().to_image(AdjacencyKind::C2);
        assert!(search_afpp_violation(&x, DEFAULT_BUDGET).unwrap().has_afpp());
    }

    #[test]
    fn c1_block_has_a_witness() {
        let x = DigitalImage::from_coords(&[(0, 0), (0, 1), (1, 0), (1, 1)], AdjacencyKind::C1);
        let cert = search_afpp_violation(&x, DEFAULT_BUDGET).unwrap();
        assert!(verify_no_approx_fixed_point(&x, cert.witness().unwrap()));
        assert!(!brute_has_afpp(&x));
    }

    #[test]
    fn verifier_rejects_identity_and_swap() {
        let x = diamond4();
        assert!(!verify_no_approx_fixed_point(&x, &SelfMap::identity(x.clone())));
        let seg = DigitalImage::from_coords(&[(0, 0), (1, 0)], AdjacencyKind::C2);
        let swap = SelfMap::from_fn(seg.clone(), |q| if q == p(0, 0) { p(1, 0) } else { p(0, 0) }).unwrap();
        assert!(!verify_no_approx_fixed_point(&seg, &swap));
    }

    #[test]
    fn fixed_point_free_examples() {
        let single = DigitalImage::from_coords(&[(0, 0)], AdjacencyKind::C2);
        assert!(search_fixed_point_free(&single, DEFAULT_BUDGET).unwrap().has_fpp());
        let seg = DigitalImage::from_coords(&[(0, 0), (1, 0)], AdjacencyKind::C2);
        let cert = search_fixed_point_free(&seg, DEFAULT_BUDGET).unwrap();
        assert_eq!(cert.witness().unwrap().at(p(0, 0)), p(1, 0));
        let sq = Window::square(0, 2).unwrap().to_image(AdjacencyKind::C2);
        let f = search_fixed_point_free(&sq, DEFAULT_BUDGET).unwrap().witness().cloned().unwrap();
        assert!(f.is_continuous());
        assert!(f.iter().all(|(a, b)| a != b));
    }

    #[test]
    fn map_counts() {
        let single = DigitalImage::from_coords(&[(0, 0)], AdjacencyKind::C2);
        assert_eq!(count_continuous_self_maps(&single, DEFAULT_BUDGET).unwrap(), 1);
        let seg = DigitalImage::from_coords(&[(0, 0), (1, 0)], AdjacencyKind::C2);
        assert_eq!(count_continuous_self_maps(&seg, DEFAULT_BUDGET).unwrap(), 4);
        for x in [diamond4(), Window::new(0, 2, 0, 1).unwrap().to_image(AdjacencyKind::C1)] {
            let brute = all_maps(&x).iter().filter(|f| f.is_continuous()).count() as u64;
            assert_eq!(count_continuous_self_maps(&x, DEFAULT_BUDGET).unwrap(), brute);
        }
    }

    #[test]
    fn budget_is_reported() {
        // the annulus needs a few dozen nodes; the squares are refuted by propagation alone
        let x = DigitalImage::c2(Window::square(-3, 3).unwrap().points().filter(|q| q.x.abs().max(q.y.abs()) >= 1));
        assert!(matches!(search_afpp_violation(&x, 3), Err(SearchError::BudgetExceeded { budget: 3, .. })));
        let sq = Window::square(0, 3).unwrap().to_image(AdjacencyKind::C2);
        assert_eq!(search_afpp_violation(&sq, 0).unwrap().stats().nodes, 0);
        assert_eq!(search_afpp_violation(&DigitalImage::empty(AdjacencyKind::C2), 10), Err(SearchError::EmptyImage));
    }

    #[test]
    fn composition_with_identity_inner_map_is_the_retraction() {
        let x = Window::square(0, 2).unwrap().to_image(AdjacencyKind::C2);
        let u = x.without(p(2, 2)).without(p(2, 1)).without(p(2, 0));
        let r = |q: Point| Point::new(q.x.min(1), q.y);
        let f = compose_through_retraction(&r, &SelfMap::identity(u), &x).unwrap();
        for q in x.points() {
            assert_eq!(f.at(q), r(q));
        }
        let bad = |q: Point| q;
        assert!(matches!(
            compose_through_retraction(&bad, &SelfMap::identity(x.without(p(0, 0))), &x),
            Err(ComposeError::OutsideDomain { .. })
        ));
    }
}
