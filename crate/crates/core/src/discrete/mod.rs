//! Discrete-memoryless two-way relay channels.
//!
//! The achievable region for a fixed input law `p(u1,x1)·p(u2,x2)·p(xr)` is
//!
//! ```text
//! R1      ≤ min{ I(U1;Yr|U2,Xr) + I(X1;Y2|U1,X2,Xr),  I(X1,Xr;Y2|X2) }
//! R2      ≤ min{ I(U2;Yr|U1,Xr) + I(X2;Y1|U2,X1,Xr),  I(X2,Xr;Y1|X1) }
//! R1 + R2 ≤ I(U1,U2;Yr|Xr) + I(X1;Y2|U1,X2,Xr) + I(X2;Y1|U2,X1,Xr)
//! ```
//!
//! [`exhaustive_search`] takes the union over a quantized simplex of input laws.

mod format;
mod pmf;

pub use format::{parse_channel_file, write_channel_file};
pub use pmf::{mutual_information, Pmf, NORM_TOL};

use rayon::prelude::*;

use crate::error::{Result, TwrcError};
use crate::geometry::RateRegion;
use crate::oracle::RawBounds1;
use crate::schemes::RateConstraintSet;

/// Largest alphabet accepted for any channel or auxiliary variable.
pub const MAX_ALPHABET: usize = 4;

/// Default cap on the number of input laws [`exhaustive_search`] may enumerate.
pub const DEFAULT_MAX_ENUM: u128 = 2_000_000;

// Variable positions in the joint pmf built by `theorem1_joint`.
pub const U1: usize = 0;
pub const X1: usize = 1;
pub const U2: usize = 2;
pub const X2: usize = 3;
pub const XR: usize = 4;
pub const Y1: usize = 5;
pub const Y2: usize = 6;
pub const YR: usize = 7;

/// Alphabet sizes of the six channel variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Alphabets {
    pub x1: usize,
    pub x2: usize,
    pub xr: usize,
    pub y1: usize,
    pub y2: usize,
    pub yr: usize,
}

impl Alphabets {
    pub fn binary_inputs(y1: usize, y2: usize, yr: usize) -> Self {
        Self { x1: 2, x2: 2, xr: 2, y1, y2, yr }
    }

    pub fn as_array(&self) -> [usize; 6] {
        [self.x1, self.x2, self.xr, self.y1, self.y2, self.yr]
    }

    pub fn inputs(&self) -> usize {
        self.x1 * self.x2 * self.xr
    }

    pub fn outputs(&self) -> usize {
        self.y1 * self.y2 * self.yr
    }
}

/// Transition law `p(y1, y2, yr | x1, x2, xr)` as a dense table.
///
/// Row `(x1·|X2| + x2)·|Xr| + xr` holds the output pmf with `y1` most significant.
#[derive(Debug, Clone, PartialEq)]
pub struct DmTwrc {
    alphabets: Alphabets,
    table: Vec<f64>,
}

impl DmTwrc {
    pub fn new(alphabets: Alphabets, table: Vec<f64>) -> Result<Self> {
        if alphabets.as_array().contains(&0) {
            return Err(TwrcError::Domain("alphabet sizes must be at least 1".into()));
        }
        let (rows, cols) = (alphabets.inputs(), alphabets.outputs());
        if table.len() != rows * cols {
            return Err(TwrcError::Domain(format!(
                "transition table has {} entries, expected {}",
                table.len(),
                rows * cols
            )));
        }
        for (r, row) in table.chunks(cols).enumerate() {
            pmf::check_distribution(row, &format!("transition row {r}"))?;
        }
        Ok(Self { alphabets, table })
    }

    /// Builds the table from a probability function.
    pub fn from_fn(alphabets: Alphabets, law: impl Fn([usize; 3], [usize; 3]) -> f64) -> Result<Self> {
        let Alphabets { x1, x2, xr, y1, y2, yr } = alphabets;
        let mut table = Vec::with_capacity(alphabets.inputs() * alphabets.outputs());
        for a in 0..x1 {
            for b in 0..x2 {
                for r in 0..xr {
                    for o1 in 0..y1 {
                        for o2 in 0..y2 {
                            for orr in 0..yr {
                                table.push(law([a, b, r], [o1, o2, orr]));
                            }
                        }
                    }
                }
            }
        }
        Self::new(alphabets, table)
    }

    /// A channel whose outputs are a deterministic function of the inputs.
    pub fn deterministic(alphabets: Alphabets, f: impl Fn([usize; 3]) -> [usize; 3]) -> Result<Self> {
        Self::from_fn(alphabets, |x, y| if f(x) == y { 1.0 } else { 0.0 })
    }

    /// The noiseless binary channel: `Yr = (X1, X2)`, `Y2 = (X1, Xr)`, `Y1 = (X2, Xr)`.
    pub fn noiseless_binary() -> Self {
        Self::deterministic(Alphabets::binary_inputs(4, 4, 4), |[a, b, r]| [2 * b + r, 2 * a + r, 2 * a + b])
            .expect("valid deterministic channel")
    }

    pub fn alphabets(&self) -> Alphabets {
        self.alphabets
    }

    pub fn table(&self) -> &[f64] {
        &self.table
    }

    /// Output pmf row for the given inputs.
    pub fn row(&self, x1: usize, x2: usize, xr: usize) -> &[f64] {
        let a = &self.alphabets;
        let r = (x1 * a.x2 + x2) * a.xr + xr;
        let cols = a.outputs();
        &self.table[r * cols..(r + 1) * cols]
    }
}

/// Factorized input law `p(u1, x1)·p(u2, x2)·p(xr)`.
///
/// Joint tables are row-major with the auxiliary variable most significant.
#[derive(Debug, Clone, PartialEq)]
pub struct InputDistribution {
    pub u1_size: usize,
    pub u2_size: usize,
    pub p_u1x1: Vec<f64>,
    pub p_u2x2: Vec<f64>,
    pub p_xr: Vec<f64>,
}

impl InputDistribution {
    pub fn new(u1_size: usize, p_u1x1: Vec<f64>, u2_size: usize, p_u2x2: Vec<f64>, p_xr: Vec<f64>) -> Result<Self> {
        if u1_size == 0 || u2_size == 0 {
            return Err(TwrcError::Domain("auxiliary alphabets must be nonempty".into()));
        }
        if !p_u1x1.len().is_multiple_of(u1_size) || !p_u2x2.len().is_multiple_of(u2_size) {
            return Err(TwrcError::Domain("joint input table not divisible by auxiliary size".into()));
        }
        pmf::check_distribution(&p_u1x1, "p(u1,x1)")?;
        pmf::check_distribution(&p_u2x2, "p(u2,x2)")?;
        pmf::check_distribution(&p_xr, "p(xr)")?;
        Ok(Self { u1_size, u2_size, p_u1x1, p_u2x2, p_xr })
    }

    /// `U1 = X1` and `U2 = X2` with the given marginals.
    pub fn auxiliary_equals_input(p_x1: &[f64], p_x2: &[f64], p_xr: &[f64]) -> Result<Self> {
        let diag = |p: &[f64]| {
            let n = p.len();
            let mut t = vec![0.0; n * n];
            for (i, &v) in p.iter().enumerate() {
                t[i * n + i] = v;
            }
            t
        };
        Self::new(p_x1.len(), diag(p_x1), p_x2.len(), diag(p_x2), p_xr.to_vec())
    }

    /// Degenerate single-symbol auxiliaries.
    pub fn trivial_auxiliary(p_x1: &[f64], p_x2: &[f64], p_xr: &[f64]) -> Result<Self> {
        Self::new(1, p_x1.to_vec(), 1, p_x2.to_vec(), p_xr.to_vec())
    }

    pub fn x1_size(&self) -> usize {
        self.p_u1x1.len() / self.u1_size
    }

    pub fn x2_size(&self) -> usize {
        self.p_u2x2.len() / self.u2_size
    }
}

fn check_sizes(dm: &DmTwrc, dist: &InputDistribution) -> Result<()> {
    let a = dm.alphabets();
    if dist.x1_size() != a.x1 || dist.x2_size() != a.x2 || dist.p_xr.len() != a.xr {
        return Err(TwrcError::Argument(format!(
            "input law alphabets ({}, {}, {}) do not match the channel ({}, {}, {})",
            dist.x1_size(),
            dist.x2_size(),
            dist.p_xr.len(),
            a.x1,
            a.x2,
            a.xr
        )));
    }
    let largest = a.as_array().into_iter().chain([dist.u1_size, dist.u2_size]).max().unwrap_or(0);
    if largest > MAX_ALPHABET {
        return Err(TwrcError::Resource(format!(
            "alphabet of size {largest} exceeds the limit of {MAX_ALPHABET}"
        )));
    }
    Ok(())
}

/// Joint pmf of `(U1, X1, U2, X2, Xr, Y1, Y2, Yr)`, indexed by the `U1`..`YR` constants.
pub fn theorem1_joint(dm: &DmTwrc, dist: &InputDistribution) -> Result<Pmf> {
    check_sizes(dm, dist)?;
    let a = dm.alphabets();
    let (nu1, nu2) = (dist.u1_size, dist.u2_size);
    let outputs = a.outputs();
    let mut probs = Vec::with_capacity(nu1 * a.x1 * nu2 * a.x2 * a.xr * outputs);
    for u1 in 0..nu1 {
        for x1 in 0..a.x1 {
            let p1 = dist.p_u1x1[u1 * a.x1 + x1];
            for u2 in 0..nu2 {
                for x2 in 0..a.x2 {
                    let p12 = p1 * dist.p_u2x2[u2 * a.x2 + x2];
                    for xr in 0..a.xr {
                        let p_in = p12 * dist.p_xr[xr];
                        probs.extend(dm.row(x1, x2, xr).iter().map(|w| p_in * w));
                    }
                }
            }
        }
    }
    Pmf::new(vec![nu1, a.x1, nu2, a.x2, a.xr, a.y1, a.y2, a.yr], probs)
}

/// The seven mutual-information terms behind the region, before elimination.
pub fn theorem1_bounds(dm: &DmTwrc, dist: &InputDistribution) -> Result<RawBounds1> {
    let joint = theorem1_joint(dm, dist)?;
    let mi = |a: &[usize], b: &[usize], c: &[usize]| joint.mutual_information(a, b, c);
    Ok(RawBounds1 {
        b_u1: mi(&[U1], &[YR], &[U2, XR])?,
        b_u2: mi(&[U2], &[YR], &[U1, XR])?,
        b_u12: mi(&[U1, U2], &[YR], &[XR])?,
        b_x1_given: mi(&[X1], &[Y2], &[U1, X2, XR])?,
        b_x1_total: mi(&[X1, XR], &[Y2], &[X2])?,
        b_x2_given: mi(&[X2], &[Y1], &[U2, X1, XR])?,
        b_x2_total: mi(&[X2, XR], &[Y1], &[X1])?,
    })
}

/// The eliminated region in terms of R1 and R2.
pub fn theorem1_pentagon(b: &RawBounds1) -> RateConstraintSet {
    RateConstraintSet::new(
        (b.b_u1 + b.b_x1_given).min(b.b_x1_total),
        (b.b_u2 + b.b_x2_given).min(b.b_x2_total),
        Some(b.b_u12 + b.b_x1_given + b.b_x2_given),
    )
}

/// Achievable pentagon for one input law.
pub fn theorem1_region(dm: &DmTwrc, dist: &InputDistribution) -> Result<RateConstraintSet> {
    Ok(theorem1_pentagon(&theorem1_bounds(dm, dist)?))
}

fn binomial(n: u128, k: u128) -> u128 {
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Number of pmfs on `cells` points with masses in multiples of `1/steps`.
pub fn simplex_grid_size(cells: usize, steps: usize) -> u128 {
    binomial((steps + cells - 1) as u128, (cells - 1) as u128)
}

/// All compositions of `steps` into `cells` nonnegative parts, lexicographic.
fn compositions(cells: usize, steps: usize) -> Vec<Vec<usize>> {
    fn rec(cells: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cells == 1 {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for v in 0..=left {
            cur.push(v);
            rec(cells - 1, left - v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(cells, steps, &mut Vec::with_capacity(cells), &mut out);
    out
}

fn simplex_grid(cells: usize, steps: usize) -> Vec<Vec<f64>> {
    compositions(cells, steps)
        .into_iter()
        .map(|c| c.into_iter().map(|k| k as f64 / steps as f64).collect())
        .collect()
}

/// Search settings for [`exhaustive_search`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchConfig {
    /// Probability masses are multiples of `1/steps`.
    pub steps: usize,
    /// Alphabet size of both auxiliaries `U1`, `U2`.
    pub u_size: usize,
    /// Refuse enumerations larger than this.
    pub max_enum: u128,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self { steps: 2, u_size: 2, max_enum: DEFAULT_MAX_ENUM }
    }
}

impl SearchConfig {
    /// Number of input laws the search visits on `dm`.
    pub fn enumeration_size(&self, dm: &DmTwrc) -> u128 {
        let a = dm.alphabets();
        simplex_grid_size(self.u_size * a.x1, self.steps)
            .saturating_mul(simplex_grid_size(self.u_size * a.x2, self.steps))
            .saturating_mul(simplex_grid_size(a.xr, self.steps))
    }
}

/// Union of the achievable pentagons over every factorized input law on the
/// quantized simplex grid.
pub fn exhaustive_search(dm: &DmTwrc, cfg: &SearchConfig) -> Result<RateRegion> {
    if cfg.steps == 0 {
        return Err(TwrcError::Argument("quantization needs at least one step".into()));
    }
    if cfg.u_size == 0 || cfg.u_size > MAX_ALPHABET {
        return Err(TwrcError::Resource(format!(
            "auxiliary alphabet size {} outside 1..={MAX_ALPHABET}",
            cfg.u_size
        )));
    }
    let a = dm.alphabets();
    if let Some(big) = a.as_array().into_iter().find(|&s| s > MAX_ALPHABET) {
        return Err(TwrcError::Resource(format!(
            "alphabet of size {big} exceeds the limit of {MAX_ALPHABET}"
        )));
    }
    let total = cfg.enumeration_size(dm);
    if total > cfg.max_enum {
        return Err(TwrcError::Resource(format!(
            "enumeration of {total} input distributions exceeds the cap of {}",
            cfg.max_enum
        )));
    }

    let g1 = simplex_grid(cfg.u_size * a.x1, cfg.steps);
    let g2 = simplex_grid(cfg.u_size * a.x2, cfg.steps);
    let gr = simplex_grid(a.xr, cfg.steps);
    let (n2, nr) = (g2.len(), gr.len());

    let pentagons = (0..g1.len() * n2 * nr)
        .into_par_iter()
        .map(|k| {
            let dist = InputDistribution {
                u1_size: cfg.u_size,
                u2_size: cfg.u_size,
                p_u1x1: g1[k / (n2 * nr)].clone(),
                p_u2x2: g2[(k / nr) % n2].clone(),
                p_xr: gr[k % nr].clone(),
            };
            theorem1_region(dm, &dist)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RateRegion::new(pentagons))
}
