//! The coefficient scalar abstraction.
//!
//! Polynomials, transfer functions and ODE models are generic over the
//! coefficient type. The exact pipeline instantiates them with
//! [`ExactScalar`]; numeric experiments can use `f64` or `f32` directly.
//! Everything numeric (root finding, frequency response, simulation) first
//! lowers coefficients to binary64 through [`Scalar::to_binary64`].

use std::fmt::Debug;

use num_traits::{Num, Signed};

use crate::exactnum::{self, ExactError, ExactScalar};

pub trait Scalar: Clone + Debug + PartialEq + PartialOrd + Num + Signed {
    /// Nearest binary64 value; fails when the value is out of range.
    fn to_binary64(&self) -> Result<f64, ExactError>;

    /// The exact rational value; `None` for non-finite floats.
    fn to_exact(&self) -> Option<ExactScalar>;
}

impl Scalar for ExactScalar {
    fn to_binary64(&self) -> Result<f64, ExactError> {
        exactnum::to_float(self)
    }

    fn to_exact(&self) -> Option<ExactScalar> {
        Some(self.clone())
    }
}

macro_rules! impl_float_scalar {
    ($($t:ty),*) => {$(
        impl Scalar for $t {
            fn to_binary64(&self) -> Result<f64, ExactError> {
                let value = f64::from(*self);
                if value.is_finite() {
                    Ok(value)
                } else {
                    Err(ExactError::Overflow(format!("{self}")))
                }
            }

            fn to_exact(&self) -> Option<ExactScalar> {
                ExactScalar::from_float(f64::from(*self))
            }
        }
    )*};
}

impl_float_scalar!(f32, f64);
