//! Scalar abstraction shared by every numerical routine in the crate.

use std::fmt;

use nalgebra::RealField;
use num_traits::{FromPrimitive, ToPrimitive};

/// Real scalar usable by the library: `f32` or `f64`.
///
/// Everything is written against this trait; the `f64` aliases at the crate
/// root are what the CLI and most callers use.
pub trait Scalar:
    RealField + Copy + FromPrimitive + ToPrimitive + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    /// Default residual tolerance for algebras built over this scalar.
    fn default_tolerance() -> Self;

    /// Lossy conversion from `f64` (used for literals).
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    /// Widening conversion used for reports and error payloads.
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f64 {
    fn default_tolerance() -> Self {
        1e-9
    }
}

impl Scalar for f32 {
    fn default_tolerance() -> Self {
        1e-4
    }
}
