use std::fmt::Debug;

use num_rational::Rational64;
use num_traits::{FromPrimitive, Num, ToPrimitive};

/// Real coefficient field of the algebra: `f64` or exact rationals.
pub trait Real:
    Num + Copy + std::ops::Neg<Output = Self> + FromPrimitive + ToPrimitive + PartialEq + Debug + Send + Sync + 'static
{
    fn from_int(n: i64) -> Self {
        Self::from_i64(n).expect("small integers are representable")
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f64 {}
impl Real for Rational64 {}
