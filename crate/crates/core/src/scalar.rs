use std::fmt::Debug;

use num_traits::{FromPrimitive, Num};

/// Numeric type usable as a probability: `f64`, `f32`, or an exact rational.
pub trait Scalar: Clone + Num + FromPrimitive + PartialOrd + Debug {
    /// Convert a survival probability read from a graph.
    fn from_prob(p: f64) -> Self {
        Self::from_f64(p).expect("finite probability")
    }
}

impl<T: Clone + Num + FromPrimitive + PartialOrd + Debug> Scalar for T {}

/// Complement `1 - p`.
pub(crate) fn complement<T: Scalar>(p: &T) -> T {
    T::one() - p.clone()
}
