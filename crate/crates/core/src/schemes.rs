//! Closed-form rate-region evaluators for the Gaussian two-way relay channel.
//!
//! Every evaluator returns a [`RateConstraintSet`], i.e. a pentagon
//! `{R1 ≤ a, R2 ≤ b, R1 + R2 ≤ c}` valid at fixed split parameters. Sweeping
//! the parameters and taking the union is done by [`region_sweep`].

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::channel::{c, GaussianTwrc, SplitParams};
use crate::error::{Result, TwrcError};
use crate::geometry::{RatePoint, RateRegion, MEMBERSHIP_TOL};

/// Default number of grid points per swept parameter axis.
pub const DEFAULT_GRID: usize = 101;

/// Upper bound on the sum rate of a constraint set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SumBound {
    Finite(f64),
    Unbounded,
}

impl SumBound {
    pub fn value(&self) -> Option<f64> {
        match *self {
            SumBound::Finite(v) => Some(v),
            SumBound::Unbounded => None,
        }
    }

    /// `+∞` for the unbounded case.
    pub fn or_infinity(&self) -> f64 {
        self.value().unwrap_or(f64::INFINITY)
    }
}

/// A pentagon-shaped rate region `{0 ≤ R1 ≤ r1_max, 0 ≤ R2 ≤ r2_max, R1 + R2 ≤ sum_max}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RateConstraintSet {
    pub r1_max: f64,
    pub r2_max: f64,
    pub sum_max: SumBound,
}

/// Negative (or NaN) bounds become 0.
fn clamp(v: f64) -> f64 {
    if v > 0.0 {
        v
    } else {
        0.0
    }
}

impl RateConstraintSet {
    pub fn new(r1_max: f64, r2_max: f64, sum_max: Option<f64>) -> Self {
        Self {
            r1_max: clamp(r1_max),
            r2_max: clamp(r2_max),
            sum_max: match sum_max {
                Some(s) => SumBound::Finite(clamp(s)),
                None => SumBound::Unbounded,
            },
        }
    }

    pub fn rectangle(r1_max: f64, r2_max: f64) -> Self {
        Self::new(r1_max, r2_max, None)
    }

    /// Largest achievable R1 once the sum constraint is taken into account.
    pub fn r1_extent(&self) -> f64 {
        self.r1_max.min(self.sum_max.or_infinity())
    }

    pub fn r2_extent(&self) -> f64 {
        self.r2_max.min(self.sum_max.or_infinity())
    }

    /// Largest R2 compatible with the given R1, or `None` when R1 is outside
    /// the set's extent.
    pub fn max_r2_at(&self, r1: f64) -> Option<f64> {
        if !(0.0..=self.r1_extent()).contains(&r1) {
            return None;
        }
        Some(self.r2_max.min(self.sum_max.or_infinity() - r1).max(0.0))
    }

    pub fn contains(&self, p: RatePoint) -> bool {
        crate::geometry::contains(self, p)
    }

    /// Pareto corners from the R2 axis to the R1 axis, R1 ascending.
    pub fn corners(&self) -> Vec<RatePoint> {
        let r1e = self.r1_extent();
        let r2e = self.r2_extent();
        let mut pts = vec![RatePoint::new(0.0, r2e)];
        match self.sum_max {
            SumBound::Finite(s) if s < r1e + r2e => {
                pts.push(RatePoint::new(s - r2e, r2e));
                pts.push(RatePoint::new(r1e, s - r1e));
            }
            _ => pts.push(RatePoint::new(r1e, r2e)),
        }
        pts.push(RatePoint::new(r1e, 0.0));
        pts.dedup();
        pts
    }

    /// Pointwise comparison of every bound, with `tol` slack.
    pub fn is_within(&self, outer: &RateConstraintSet, tol: f64) -> bool {
        self.r1_max <= outer.r1_max + tol
            && self.r2_max <= outer.r2_max + tol
            && match (self.sum_max, outer.sum_max) {
                (_, SumBound::Unbounded) => true,
                (SumBound::Finite(a), SumBound::Finite(b)) => a <= b + tol,
                (SumBound::Unbounded, SumBound::Finite(_)) => false,
            }
    }
}

/// The nine bounds of the combined decode-forward/compute-forward scheme.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IValues {
    pub i1: f64,
    pub i2: f64,
    pub i3: f64,
    pub i4: f64,
    pub i5: f64,
    pub i6: f64,
    pub i7: f64,
    pub i8: f64,
    pub i9: f64,
}

/// `max{½·log2(ratio + own/nr), 0}` for the compute-forward lattice part,
/// where `ratio = own / (own + other)` and `0/0` is taken as 0.
fn lattice_rate(own: f64, other: f64, nr: f64) -> f64 {
    let total = own + other;
    let ratio = if total > 0.0 { own / total } else { 0.0 };
    let arg = ratio + own / nr;
    if arg > 1.0 {
        0.5 * arg.log2()
    } else {
        0.0
    }
}

impl IValues {
    pub fn evaluate(ch: &GaussianTwrc, sp: &SplitParams) -> Self {
        let (a, ab) = (sp.alpha, sp.alpha_bar());
        let (b, bb) = (sp.beta, sp.beta_bar());
        let (g, gb) = (sp.gamma, sp.gamma_bar());
        let GaussianTwrc { p1, p2, pr, n1, n2, nr } = *ch;

        let relay_noise = ab * p1 + bb * p2 + nr;
        Self {
            i1: c(a * p1 / relay_noise),
            i2: c(b * p2 / relay_noise),
            i3: c((a * p1 + b * p2) / relay_noise),
            i4: lattice_rate(ab * p1, bb * p2, nr),
            i5: lattice_rate(bb * p2, ab * p1, nr),
            i6: c((a * p1 + g * pr) / (ab * p1 + gb * pr + n2)),
            i7: c((b * p2 + g * pr) / (bb * p2 + gb * pr + n1)),
            i8: c(gb * pr / (p1 + n2)) + c(ab * p1 / n2),
            i9: c(gb * pr / (p2 + n1)) + c(bb * p2 / n1),
        }
    }

    /// The eliminated region in terms of R1 and R2.
    pub fn region(&self) -> RateConstraintSet {
        let lattice1 = self.i4.min(self.i8);
        let lattice2 = self.i5.min(self.i9);
        RateConstraintSet::new(
            self.i1.min(self.i6) + lattice1,
            self.i2.min(self.i7) + lattice2,
            Some(self.i3 + lattice1 + lattice2),
        )
    }

    pub fn as_array(&self) -> [f64; 9] {
        [self.i1, self.i2, self.i3, self.i4, self.i5, self.i6, self.i7, self.i8, self.i9]
    }
}

/// Transmission without the relay.
pub fn direct_transmission(ch: &GaussianTwrc) -> RateConstraintSet {
    RateConstraintSet::rectangle(c(ch.p1 / ch.n2), c(ch.p2 / ch.n1))
}

/// Partial decode-forward with user power splits `alpha`, `beta`. `gamma` is unused.
pub fn partial_decode_forward(ch: &GaussianTwrc, sp: &SplitParams) -> RateConstraintSet {
    let GaussianTwrc { p1, p2, pr, n1, n2, nr } = *ch;
    let (a, ab) = (sp.alpha, sp.alpha_bar());
    let (b, bb) = (sp.beta, sp.beta_bar());

    let relay_noise = ab * p1 + bb * p2 + nr;
    let private1 = c(ab * p1 / n2);
    let private2 = c(bb * p2 / n1);

    let r1 = (c(a * p1 / relay_noise) + private1).min(c((p1 + pr) / n2));
    let r2 = (c(b * p2 / relay_noise) + private2).min(c((p2 + pr) / n1));
    let sum = c((a * p1 + b * p2) / relay_noise) + private1 + private2;
    RateConstraintSet::new(r1, r2, Some(sum))
}

/// Full decode-forward: the relay decodes both messages entirely.
pub fn decode_forward(ch: &GaussianTwrc) -> RateConstraintSet {
    partial_decode_forward(ch, &SplitParams::FULL_DECODE)
}

/// Combined decode-forward / compute-forward region at fixed splits.
///
/// With `alpha = beta = 0` nothing is decoded at the relay, so the sum
/// bound equals `r1 + r2` and is reported as unbounded.
pub fn combined_df_cf(ch: &GaussianTwrc, sp: &SplitParams) -> RateConstraintSet {
    let set = IValues::evaluate(ch, sp).region();
    if sp.alpha == 0.0 && sp.beta == 0.0 {
        RateConstraintSet::rectangle(set.r1_max, set.r2_max)
    } else {
        set
    }
}

/// Pure compute-forward baseline: the combined scheme with every split at 0.
pub fn compute_forward(ch: &GaussianTwrc) -> RateConstraintSet {
    combined_df_cf(ch, &SplitParams::ZERO)
}

/// Both disjuncts of the partial-DF strict-improvement condition.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ImprovementCheck {
    /// `nr > min(n1, n2)`
    pub relay_noisier: bool,
    pub min_user_noise: f64,
    /// `C(p1/n2) + C(p2/n1)`
    pub direct_sum: f64,
    /// `C((p1 + p2)/nr)`
    pub relay_mac_sum: f64,
    pub direct_beats_relay: bool,
    pub verdict: bool,
}

pub fn improvement_check(ch: &GaussianTwrc) -> ImprovementCheck {
    let min_user_noise = ch.n1.min(ch.n2);
    let direct_sum = c(ch.p1 / ch.n2) + c(ch.p2 / ch.n1);
    let relay_mac_sum = c((ch.p1 + ch.p2) / ch.nr);
    let relay_noisier = ch.nr > min_user_noise;
    let direct_beats_relay = direct_sum > relay_mac_sum;
    ImprovementCheck {
        relay_noisier,
        min_user_noise,
        direct_sum,
        relay_mac_sum,
        direct_beats_relay,
        verdict: relay_noisier || direct_beats_relay,
    }
}

/// Whether partial decode-forward strictly enlarges the decode-forward region.
pub fn pdf_improvement_condition(ch: &GaussianTwrc) -> bool {
    improvement_check(ch).verdict
}

/// Sequential Gaussian conditioning on a small covariance matrix.
///
/// Returns `Var(target | given)`. Pivots with (numerically) zero variance are
/// already determined by earlier conditioning and are skipped.
fn conditional_variance<const N: usize>(mut cov: [[f64; N]; N], target: usize, given: &[usize]) -> f64 {
    let scale = (0..N).map(|i| cov[i][i].abs()).fold(0.0, f64::max).max(1.0);
    for &g in given {
        let pivot = cov[g][g];
        if pivot <= 1e-12 * scale {
            continue;
        }
        let col: [f64; N] = std::array::from_fn(|i| cov[i][g]);
        for i in 0..N {
            for j in 0..N {
                cov[i][j] -= col[i] * col[j] / pivot;
            }
        }
    }
    cov[target][target].max(0.0)
}

/// Cut-set bound on R1 for inputs with `Xr = a·X1 + b·X2 + W`, where
/// `a = rho_own·sqrt(pr/p1)` and `b = rho_other·sqrt(pr/p2)`.
///
/// Returns the two cut values `(I(X1; Yr, Y2 | X2, Xr), I(X1, Xr; Y2 | X2))`.
fn cutset_terms(ch: &GaussianTwrc, rho_own: f64, rho_other: f64) -> (f64, f64) {
    let GaussianTwrc { p1, p2, pr, n2, nr, .. } = *ch;
    // indices: 0 = X1, 1 = X2, 2 = Xr, 3 = X1 + Xr
    let c1r = rho_own * (p1 * pr).sqrt();
    let c2r = rho_other * (p2 * pr).sqrt();
    let cov = [
        [p1, 0.0, c1r, p1 + c1r],
        [0.0, p2, c2r, c2r],
        [c1r, c2r, pr, c1r + pr],
        [p1 + c1r, c2r, c1r + pr, p1 + pr + 2.0 * c1r],
    ];
    let v_x1 = conditional_variance(cov, 0, &[1, 2]);
    let v_sum = conditional_variance(cov, 3, &[1]);
    let broadcast = c(v_x1 * (1.0 / nr + 1.0 / n2));
    let mac = c(v_sum / n2);
    (broadcast, mac)
}

/// `max over rho_own ∈ [0, sqrt(1 - rho_other²)]` of the smaller cut.
///
/// The broadcast cut is nonincreasing and the MAC cut nondecreasing in
/// `rho_own`, so the maximum of their minimum sits at the crossing.
fn cutset_row_max(ch: &GaussianTwrc, rho_other: f64) -> f64 {
    let hi = (1.0 - rho_other * rho_other).max(0.0).sqrt();
    let gap = |r: f64| {
        let (bc, mac) = cutset_terms(ch, r, rho_other);
        (bc - mac, bc.min(mac))
    };
    let (g_lo, v_lo) = gap(0.0);
    if g_lo <= 0.0 {
        return v_lo;
    }
    let (g_hi, v_hi) = gap(hi);
    if g_hi >= 0.0 {
        return v_hi;
    }
    let (mut lo, mut up) = (0.0, hi);
    let mut best = v_lo.max(v_hi);
    for _ in 0..200 {
        let mid = 0.5 * (lo + up);
        if mid <= lo || mid >= up {
            break;
        }
        let (g, v) = gap(mid);
        best = best.max(v);
        if g > 0.0 {
            lo = mid;
        } else {
            up = mid;
        }
    }
    best
}

fn cutset_r1(ch: &GaussianTwrc, corr_grid: usize) -> f64 {
    (0..corr_grid)
        .map(|k| cutset_row_max(ch, grid_value(k, corr_grid)))
        .fold(0.0, f64::max)
}

/// Cut-set outer bound with correlated relay input.
///
/// The relay input is `Xr = a·X1 + b·X2 + W` with `X1 ⟂ X2` and `W`
/// independent. The correlation coefficient toward the other user is swept
/// over `corr_grid` points; the coefficient toward the own user is maximized
/// exactly on each row. The result is the rectangle of coordinate-wise maxima.
pub fn cutset_bound(ch: &GaussianTwrc, corr_grid: usize) -> Result<RateConstraintSet> {
    if corr_grid < 2 {
        return Err(TwrcError::Argument(format!(
            "correlation grid needs at least 2 points, got {corr_grid}"
        )));
    }
    let r1 = cutset_r1(ch, corr_grid);
    let r2 = cutset_r1(&ch.swapped(), corr_grid);
    Ok(RateConstraintSet::rectangle(r1, r2))
}

/// Identifies one of the transmission schemes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scheme {
    Direct,
    Df,
    PartialDf,
    Cf,
    Combined,
    Cutset,
}

impl Scheme {
    pub const ALL: [Scheme; 6] = [
        Scheme::Direct,
        Scheme::Df,
        Scheme::PartialDf,
        Scheme::Cf,
        Scheme::Combined,
        Scheme::Cutset,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Scheme::Direct => "direct",
            Scheme::Df => "df",
            Scheme::PartialDf => "partial-df",
            Scheme::Cf => "cf",
            Scheme::Combined => "combined",
            Scheme::Cutset => "cutset",
        }
    }

    /// Number of swept split parameters.
    pub fn free_params(&self) -> usize {
        match self {
            Scheme::PartialDf => 2,
            Scheme::Combined => 3,
            _ => 0,
        }
    }

    pub fn uses_gamma(&self) -> bool {
        matches!(self, Scheme::Combined)
    }

    /// Evaluates the scheme at fixed splits. Parameter-free schemes ignore `sp`.
    pub fn evaluate(&self, ch: &GaussianTwrc, sp: &SplitParams) -> RateConstraintSet {
        match self {
            Scheme::Direct => direct_transmission(ch),
            Scheme::Df => decode_forward(ch),
            Scheme::PartialDf => partial_decode_forward(ch, sp),
            Scheme::Cf => compute_forward(ch),
            Scheme::Combined => combined_df_cf(ch, sp),
            Scheme::Cutset => RateConstraintSet::rectangle(
                cutset_r1(ch, DEFAULT_GRID),
                cutset_r1(&ch.swapped(), DEFAULT_GRID),
            ),
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scheme {
    type Err = TwrcError;

    fn from_str(s: &str) -> Result<Self> {
        Scheme::ALL
            .into_iter()
            .find(|sch| sch.name() == s)
            .ok_or_else(|| TwrcError::Argument(format!("unknown scheme '{s}'")))
    }
}

/// `k/(n-1)` on `[0, 1]`, with both endpoints exact.
pub(crate) fn grid_value(k: usize, n: usize) -> f64 {
    if k + 1 >= n {
        1.0
    } else {
        k as f64 / (n - 1) as f64
    }
}

/// Union of a scheme's constraint sets over a uniform parameter grid.
///
/// Partial DF sweeps `(alpha, beta)`, the combined scheme sweeps
/// `(alpha, beta, gamma)`; both need `grid ≥ 2`. The cut-set bound uses
/// `grid` as its correlation resolution. Other schemes yield one pentagon.
pub fn region_sweep(ch: &GaussianTwrc, scheme: Scheme, grid: usize) -> Result<RateRegion> {
    ch.validate()?;
    let free = scheme.free_params();
    if (free > 0 || scheme == Scheme::Cutset) && grid < 2 {
        return Err(TwrcError::Argument(format!(
            "scheme {scheme} needs at least 2 grid points per parameter, got {grid}"
        )));
    }

    let params: Vec<SplitParams> = match free {
        0 => vec![match scheme {
            Scheme::Df => SplitParams::FULL_DECODE,
            _ => SplitParams::ZERO,
        }],
        2 => (0..grid * grid)
            .map(|k| SplitParams {
                alpha: grid_value(k / grid, grid),
                beta: grid_value(k % grid, grid),
                gamma: 0.0,
            })
            .collect(),
        _ => (0..grid * grid * grid)
            .map(|k| SplitParams {
                alpha: grid_value(k / (grid * grid), grid),
                beta: grid_value((k / grid) % grid, grid),
                gamma: grid_value(k % grid, grid),
            })
            .collect(),
    };

    let pentagons: Vec<RateConstraintSet> = if scheme == Scheme::Cutset {
        vec![cutset_bound(ch, grid)?]
    } else {
        params.par_iter().map(|sp| scheme.evaluate(ch, sp)).collect()
    };
    Ok(RateRegion::with_params(pentagons, params))
}

/// The split parameters, among `candidates`, that maximize `r1_max + r2_max`.
/// Ties keep the earliest candidate.
pub fn best_split<I>(ch: &GaussianTwrc, scheme: Scheme, candidates: I) -> Option<(SplitParams, RateConstraintSet)>
where
    I: IntoIterator<Item = SplitParams>,
{
    let mut best: Option<(SplitParams, RateConstraintSet)> = None;
    for sp in candidates {
        let set = scheme.evaluate(ch, &sp);
        let better = match &best {
            None => true,
            Some((_, b)) => set.r1_max + set.r2_max > b.r1_max + b.r2_max + MEMBERSHIP_TOL,
        };
        if better {
            best = Some((sp, set));
        }
    }
    best
}

/// Maximizes the combined scheme over `gamma` on an `n`-point grid at fixed `alpha`, `beta`.
pub fn combined_best_gamma(ch: &GaussianTwrc, alpha: f64, beta: f64, n: usize) -> Result<(SplitParams, RateConstraintSet)> {
    if n < 2 {
        return Err(TwrcError::Argument(format!("gamma grid needs at least 2 points, got {n}")));
    }
    let candidates = (0..n).map(|k| SplitParams { alpha, beta, gamma: grid_value(k, n) });
    Ok(best_split(ch, Scheme::Combined, candidates).expect("nonempty grid"))
}
