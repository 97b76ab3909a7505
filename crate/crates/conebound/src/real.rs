//! Scalar abstraction for the numeric core.
//!
//! Every algorithm in this crate is written against [`Real`] so the same code
//! runs in `f32` and `f64`. The trait is `num_traits::Float` plus the constant
//! traits and formatting bounds the routines need, with two small additions
//! that `num-traits` does not provide.

use std::fmt::{Debug, Display, LowerExp};

use num_traits::{Float, FloatConst};

pub trait Real: Float + FloatConst + Debug + Display + LowerExp + Send + Sync + 'static {
    /// Euler's constant, gamma = 0.5772...
    fn euler_gamma() -> Self {
        Self::lit(0.577_215_664_901_532_9)
    }

    /// Converts an `f64` literal into `Self`.
    ///
    /// Used for tabulated coefficients and tolerances. The cast cannot fail
    /// for finite literals on the supported scalar types.
    fn lit(x: f64) -> Self {
        num_traits::cast(x).expect("finite f64 literal converts to any Real")
    }

    /// Lossy view of `self` as `f64`, for diagnostics and error payloads.
    fn as_f64(self) -> f64 {
        num_traits::cast(self).unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}
