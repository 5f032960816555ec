//! Region geometry: membership, union boundaries on an R1 grid, the
//! time-sharing convex hull, and dominance between regions.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::channel::SplitParams;
use crate::error::{Result, TwrcError};
use crate::schemes::{grid_value, RateConstraintSet, SumBound};

/// Absolute tolerance for point-in-set tests.
pub const MEMBERSHIP_TOL: f64 = 1e-12;

/// Default slack for cross-scheme dominance comparisons, in bits.
pub const DOMINANCE_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RatePoint {
    pub r1: f64,
    pub r2: f64,
}

impl RatePoint {
    pub const fn new(r1: f64, r2: f64) -> Self {
        Self { r1, r2 }
    }
}

/// Point membership in a constraint set, with [`MEMBERSHIP_TOL`] slack.
pub fn contains(set: &RateConstraintSet, p: RatePoint) -> bool {
    let tol = MEMBERSHIP_TOL;
    p.r1 >= -tol
        && p.r2 >= -tol
        && p.r1 <= set.r1_max + tol
        && p.r2 <= set.r2_max + tol
        && match set.sum_max {
            SumBound::Finite(s) => p.r1 + p.r2 <= s + tol,
            SumBound::Unbounded => true,
        }
}

/// Uniform grid of R1 values `[0, max]` with `resolution` points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct R1Grid {
    pub max: f64,
    pub resolution: usize,
}

impl R1Grid {
    pub fn new(max: f64, resolution: usize) -> Result<Self> {
        if resolution < 2 {
            return Err(TwrcError::Argument(format!(
                "boundary resolution must be at least 2, got {resolution}"
            )));
        }
        if !max.is_finite() || max < 0.0 {
            return Err(TwrcError::Argument(format!("grid extent must be finite and nonnegative, got {max}")));
        }
        Ok(Self { max, resolution })
    }

    pub fn value(&self, k: usize) -> f64 {
        if k + 1 >= self.resolution {
            self.max
        } else {
            self.max * grid_value(k, self.resolution)
        }
    }

    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.resolution).map(|k| self.value(k))
    }
}

/// A region boundary sampled on an [`R1Grid`].
///
/// `points[k]` sits at grid value `k`; columns beyond the region's R1 extent
/// are absent, so `points` is a prefix of the grid. `sources[k]` is the index
/// of a pentagon attaining the column maximum.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Boundary {
    pub grid: R1Grid,
    pub points: Vec<RatePoint>,
    pub sources: Vec<usize>,
}

impl Boundary {
    /// Pareto polyline view: equal-R1 columns keep only the largest R2.
    pub fn pareto(&self) -> Vec<RatePoint> {
        let mut out: Vec<RatePoint> = Vec::with_capacity(self.points.len());
        for &p in &self.points {
            match out.last_mut() {
                Some(last) if last.r1 == p.r1 => last.r2 = last.r2.max(p.r2),
                _ => out.push(p),
            }
        }
        out
    }
}

fn column_max(pentagons: &[RateConstraintSet], r1: f64) -> Option<(f64, usize)> {
    let mut best: Option<(f64, usize)> = None;
    for (i, set) in pentagons.iter().enumerate() {
        if let Some(v) = set.max_r2_at(r1) {
            if best.is_none_or(|(b, _)| v > b) {
                best = Some((v, i));
            }
        }
    }
    best
}

/// Upper boundary of a union of pentagons on the given R1 grid.
pub fn union_boundary_on(pentagons: &[RateConstraintSet], grid: R1Grid) -> Result<Boundary> {
    if pentagons.is_empty() {
        return Err(TwrcError::Argument("union of an empty pentagon list".into()));
    }
    let columns: Vec<Option<(f64, usize)>> = (0..grid.resolution)
        .into_par_iter()
        .map(|k| column_max(pentagons, grid.value(k)))
        .collect();

    let mut points = Vec::new();
    let mut sources = Vec::new();
    for (k, col) in columns.into_iter().enumerate() {
        // the feasible R1 range of a union is an interval starting at 0
        let Some((r2, src)) = col else { break };
        points.push(RatePoint::new(grid.value(k), r2));
        sources.push(src);
    }
    Ok(Boundary { grid, points, sources })
}

/// Largest R1 extent among the pentagons.
pub fn max_r1_extent(pentagons: &[RateConstraintSet]) -> f64 {
    pentagons.iter().map(RateConstraintSet::r1_extent).fold(0.0, f64::max)
}

/// Pareto polyline of the union, on a grid from 0 to the largest R1 extent.
pub fn union_boundary(pentagons: &[RateConstraintSet], resolution: usize) -> Result<Vec<RatePoint>> {
    if pentagons.is_empty() {
        return Err(TwrcError::Argument("union of an empty pentagon list".into()));
    }
    let grid = R1Grid::new(max_r1_extent(pentagons), resolution)?;
    Ok(union_boundary_on(pentagons, grid)?.pareto())
}

/// A union of constraint sets, optionally with its sampled boundary.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RateRegion {
    pub pentagons: Vec<RateConstraintSet>,
    /// Split parameters that produced each pentagon (same length as `pentagons`).
    pub params: Vec<SplitParams>,
    pub boundary: Option<Boundary>,
}

impl RateRegion {
    pub fn new(pentagons: Vec<RateConstraintSet>) -> Self {
        let params = vec![SplitParams::ZERO; pentagons.len()];
        Self { pentagons, params, boundary: None }
    }

    pub fn with_params(pentagons: Vec<RateConstraintSet>, params: Vec<SplitParams>) -> Self {
        let params = if params.len() == pentagons.len() {
            params
        } else {
            vec![SplitParams::ZERO; pentagons.len()]
        };
        Self { pentagons, params, boundary: None }
    }

    pub fn contains(&self, p: RatePoint) -> bool {
        self.pentagons.iter().any(|s| contains(s, p))
    }

    /// Exact upper boundary value at an arbitrary R1.
    pub fn max_r2_at(&self, r1: f64) -> Option<f64> {
        column_max(&self.pentagons, r1).map(|(v, _)| v)
    }

    pub fn max_r1(&self) -> f64 {
        max_r1_extent(&self.pentagons)
    }

    /// Samples and caches the boundary on `grid`.
    pub fn compute_boundary(&mut self, grid: R1Grid) -> Result<&Boundary> {
        let b = union_boundary_on(&self.pentagons, grid)?;
        Ok(self.boundary.insert(b))
    }

    /// Boundary on the region's own grid `[0, max_r1]`.
    pub fn with_boundary(mut self, resolution: usize) -> Result<Self> {
        let grid = R1Grid::new(self.max_r1(), resolution)?;
        self.compute_boundary(grid)?;
        Ok(self)
    }
}

/// `true` iff on every grid column `a(R1) ≥ b(R1) − tol`.
///
/// A column where `b` is defined but `a` is not counts as a violation.
pub fn dominates(a: &RateRegion, b: &RateRegion, tol: f64) -> Result<bool> {
    let (Some(ba), Some(bb)) = (&a.boundary, &b.boundary) else {
        return Err(TwrcError::Argument("dominance needs computed boundaries".into()));
    };
    if ba.grid != bb.grid {
        return Err(TwrcError::Argument("boundaries sampled on different R1 grids".into()));
    }
    Ok(bb
        .points
        .iter()
        .enumerate()
        .all(|(k, pb)| ba.points.get(k).is_some_and(|pa| pa.r2 >= pb.r2 - tol)))
}

/// Largest column-wise excess `a(R1) − b(R1)` over the columns where both are defined,
/// together with the R1 where it occurs.
pub fn max_excess(a: &Boundary, b: &Boundary) -> Result<Option<(f64, f64)>> {
    if a.grid != b.grid {
        return Err(TwrcError::Argument("boundaries sampled on different R1 grids".into()));
    }
    Ok(a.points
        .iter()
        .zip(&b.points)
        .map(|(pa, pb)| (pa.r2 - pb.r2, pa.r1))
        .fold(None, |acc: Option<(f64, f64)>, x| match acc {
            Some(best) if best.0 >= x.0 => Some(best),
            _ => Some(x),
        }))
}

fn cross(o: RatePoint, a: RatePoint, b: RatePoint) -> f64 {
    (a.r1 - o.r1) * (b.r2 - o.r2) - (a.r2 - o.r2) * (b.r1 - o.r1)
}

/// Upper-right convex hull (time-sharing region) of a point set.
///
/// Runs the monotone-chain upper hull on the points together with their axis
/// projections `(0, max R2)` and `(max R1, 0)`. The result starts on the R2
/// axis, ends on the R1 axis, and drops collinear interior points.
pub fn convex_hull(points: &[RatePoint]) -> Result<Vec<RatePoint>> {
    if points.is_empty() {
        return Err(TwrcError::Argument("convex hull of an empty point set".into()));
    }
    let max_r1 = points.iter().map(|p| p.r1).fold(0.0, f64::max);
    let max_r2 = points.iter().map(|p| p.r2).fold(0.0, f64::max);

    let mut pts: Vec<RatePoint> = points.to_vec();
    pts.push(RatePoint::new(0.0, max_r2));
    pts.push(RatePoint::new(max_r1, 0.0));
    pts.sort_by(|a, b| a.r1.total_cmp(&b.r1).then(b.r2.total_cmp(&a.r2)));
    pts.dedup();

    let mut hull: Vec<RatePoint> = Vec::with_capacity(pts.len());
    for p in pts {
        if hull.last().is_some_and(|last| last.r1 == p.r1) {
            // same R1 with smaller R2 (sort order): not on the upper chain
            continue;
        }
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) >= 0.0 {
            hull.pop();
        }
        hull.push(p);
    }
    if let Some(&last) = hull.last() {
        if last.r2 > 0.0 {
            hull.push(RatePoint::new(last.r1, 0.0));
        }
    }
    Ok(hull)
}

/// Height of a hull polyline at `r1` by linear interpolation; `None` past its R1 extent.
pub fn hull_height_at(hull: &[RatePoint], r1: f64) -> Option<f64> {
    let first = hull.first()?;
    if r1 < first.r1 {
        return None;
    }
    let mut best: Option<f64> = None;
    for w in hull.windows(2) {
        let (a, b) = (w[0], w[1]);
        if r1 >= a.r1 && r1 <= b.r1 {
            let h = if b.r1 > a.r1 {
                a.r2 + (b.r2 - a.r2) * (r1 - a.r1) / (b.r1 - a.r1)
            } else {
                a.r2.max(b.r2)
            };
            best = Some(best.map_or(h, |x: f64| x.max(h)));
        }
    }
    if hull.len() == 1 && r1 == first.r1 {
        return Some(first.r2);
    }
    best
}

/// Whether `p` lies in the region under a hull polyline (within `tol`).
pub fn hull_contains(hull: &[RatePoint], p: RatePoint, tol: f64) -> bool {
    match hull_height_at(hull, p.r1.max(0.0)) {
        Some(h) => p.r2 <= h + tol && p.r2 >= -tol,
        None => false,
    }
}
