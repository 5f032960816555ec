//! Feasibility of the rate-split inequality systems before elimination.
//!
//! A rate pair `(R1, R2)` is feasible when it splits as `R1 = R10 + R11`,
//! `R2 = R20 + R22` with every part nonnegative and every bound satisfied.
//! After substituting the sums only `(R10, R20)` remain free, and each
//! remaining constraint is either an interval on one of them or the joint
//! cap on `R10 + R20`, so feasibility is decided exactly by interval
//! arithmetic. No closed-form region is consulted here.

use serde::{Deserialize, Serialize};

use crate::geometry::RatePoint;
use crate::schemes::IValues;

/// Mutual-information bounds of the partial decode-forward split system.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RawBounds1 {
    /// `R10 ≤ I(U1; Yr | U2, Xr)`
    pub b_u1: f64,
    /// `R20 ≤ I(U2; Yr | U1, Xr)`
    pub b_u2: f64,
    /// `R10 + R20 ≤ I(U1, U2; Yr | Xr)`
    pub b_u12: f64,
    /// `R11 ≤ I(X1; Y2 | U1, X2, Xr)`
    pub b_x1_given: f64,
    /// `R10 + R11 ≤ I(X1, Xr; Y2 | X2)`
    pub b_x1_total: f64,
    /// `R22 ≤ I(X2; Y1 | U2, X1, Xr)`
    pub b_x2_given: f64,
    /// `R20 + R22 ≤ I(X2, Xr; Y1 | X1)`
    pub b_x2_total: f64,
}

/// I-value bounds of the combined DF/CF split system.
pub type RawBounds2 = IValues;

/// Feasible interval for the relay-decoded part `R_common` of a user rate
/// `rate = R_common + R_private`, given `R_common ≤ common_cap` and
/// `R_private ≤ private_cap`. `None` when empty.
fn common_part_interval(rate: f64, common_cap: f64, private_cap: f64) -> Option<(f64, f64)> {
    let lo = (rate - private_cap).max(0.0);
    let hi = rate.min(common_cap);
    (lo <= hi).then_some((lo, hi))
}

fn split_feasible(p: RatePoint, caps1: (f64, f64), caps2: (f64, f64), joint_cap: f64) -> bool {
    if p.r1 < 0.0 || p.r2 < 0.0 {
        return false;
    }
    let Some((lo1, _)) = common_part_interval(p.r1, caps1.0, caps1.1) else {
        return false;
    };
    let Some((lo2, _)) = common_part_interval(p.r2, caps2.0, caps2.1) else {
        return false;
    };
    lo1 + lo2 <= joint_cap
}

/// Whether `p` admits a valid rate split under the partial decode-forward system.
pub fn theorem1_raw_feasible(b: &RawBounds1, p: RatePoint) -> bool {
    p.r1 <= b.b_x1_total
        && p.r2 <= b.b_x2_total
        && split_feasible(p, (b.b_u1, b.b_x1_given), (b.b_u2, b.b_x2_given), b.b_u12)
}

/// Whether `p` admits a valid rate split under the combined DF/CF system.
pub fn theorem2_raw_feasible(b: &RawBounds2, p: RatePoint) -> bool {
    split_feasible(
        p,
        (b.i1.min(b.i6), b.i4.min(b.i8)),
        (b.i2.min(b.i7), b.i5.min(b.i9)),
        b.i3,
    )
}
