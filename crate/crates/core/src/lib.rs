//! Achievable rate regions and outer bounds for the full-duplex two-way relay
//! channel with a direct link between the users.
//!
//! * [`channel`]: the Gaussian channel model and `C(x) = ½·log2(1 + x)`.
//! * [`schemes`]: direct transmission, decode-forward, partial decode-forward,
//!   compute-forward, the combined DF/CF scheme, and a cut-set outer bound.
//! * [`geometry`]: region unions, boundaries, time-sharing hulls.
//! * [`discrete`]: the discrete-memoryless region via a finite-alphabet
//!   mutual-information engine and grid search over input distributions.
//! * [`oracle`]: feasibility of the rate-split inequality systems, used to
//!   check the eliminated closed-form regions.
//! * [`cli`]: the `twrc` command-line front end.

pub mod channel;
pub mod cli;
pub mod discrete;
pub mod error;
pub mod geometry;
pub mod oracle;
pub mod schemes;

pub use channel::{capacity, GaussianTwrc, SplitParams};
pub use error::{Result, TwrcError};
pub use geometry::{RatePoint, RateRegion};
pub use schemes::{RateConstraintSet, Scheme, SumBound};
