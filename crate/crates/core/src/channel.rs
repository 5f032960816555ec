//! Gaussian two-way relay channel model and the capacity function.
//!
//! The full-duplex AWGN channel is
//!
//! ```text
//! Y1 = Xr + X2 + Z1
//! Y2 = Xr + X1 + Z2
//! Yr = X1 + X2 + Zr
//! ```
//!
//! with independent noises of variance `n1`, `n2`, `nr` and average power
//! constraints `p1`, `p2`, `pr`. All quantities are linear (not dB) and all
//! rates are in bits per channel use.

use serde::{Deserialize, Serialize};

use crate::error::{Result, TwrcError};

/// Gaussian capacity `½·log2(1 + snr)` in bits per channel use.
pub fn capacity(snr: f64) -> Result<f64> {
    if !snr.is_finite() || snr < 0.0 {
        return Err(TwrcError::Domain(format!(
            "capacity requires a finite nonnegative snr, got {snr}"
        )));
    }
    Ok(c(snr))
}

/// Unchecked capacity for internal evaluators whose arguments are
/// nonnegative by construction.
#[inline]
pub(crate) fn c(snr: f64) -> f64 {
    0.5 * (1.0 + snr).log2()
}

/// Converts a dB value to linear scale.
pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// The six scalars defining the AWGN two-way relay channel.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussianTwrc {
    pub p1: f64,
    pub p2: f64,
    pub pr: f64,
    pub n1: f64,
    pub n2: f64,
    pub nr: f64,
}

impl GaussianTwrc {
    /// Builds a validated channel.
    pub fn new(p1: f64, p2: f64, pr: f64, n1: f64, n2: f64, nr: f64) -> Result<Self> {
        let ch = Self { p1, p2, pr, n1, n2, nr };
        ch.validate()?;
        Ok(ch)
    }

    /// Checks every invariant, reporting the first violated one by field name.
    pub fn validate(&self) -> Result<()> {
        for (field, value) in [("p1", self.p1), ("p2", self.p2), ("pr", self.pr)] {
            if !value.is_finite() || value < 0.0 {
                return Err(TwrcError::InvalidChannel {
                    field,
                    reason: "power must be nonnegative",
                });
            }
        }
        for (field, value) in [("n1", self.n1), ("n2", self.n2), ("nr", self.nr)] {
            if !value.is_finite() || value <= 0.0 {
                return Err(TwrcError::InvalidChannel {
                    field,
                    reason: "noise variance must be positive",
                });
            }
        }
        Ok(())
    }

    /// Same channel with user 1 and user 2 exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            p1: self.p2,
            p2: self.p1,
            pr: self.pr,
            n1: self.n2,
            n2: self.n1,
            nr: self.nr,
        }
    }
}

/// Power-split fractions.
///
/// `alpha` and `beta` are the fractions of user 1 and user 2 power carried by
/// the part the relay decodes; `gamma` is the fraction of relay power on its
/// Gaussian-part codeword. Complements are derived on demand.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SplitParams {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl SplitParams {
    pub const ZERO: SplitParams = SplitParams { alpha: 0.0, beta: 0.0, gamma: 0.0 };
    pub const FULL_DECODE: SplitParams = SplitParams { alpha: 1.0, beta: 1.0, gamma: 0.0 };

    pub fn new(alpha: f64, beta: f64, gamma: f64) -> Result<Self> {
        for (name, v) in [("alpha", alpha), ("beta", beta), ("gamma", gamma)] {
            if !(0.0..=1.0).contains(&v) {
                return Err(TwrcError::Argument(format!("{name} must lie in [0,1], got {v}")));
            }
        }
        Ok(Self { alpha, beta, gamma })
    }

    #[inline]
    pub fn alpha_bar(&self) -> f64 {
        1.0 - self.alpha
    }

    #[inline]
    pub fn beta_bar(&self) -> f64 {
        1.0 - self.beta
    }

    #[inline]
    pub fn gamma_bar(&self) -> f64 {
        1.0 - self.gamma
    }
}

impl Default for SplitParams {
    fn default() -> Self {
        Self::ZERO
    }
}
