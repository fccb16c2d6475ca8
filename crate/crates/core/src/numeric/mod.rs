//! Floating-point numerical kernels, generic over `num_traits::Float`.
//!
//! These are the only places where the toolchain leaves exact arithmetic:
//! polynomial root finding, adaptive quadrature of complex integrands and
//! fixed-step Runge–Kutta integration.

mod quadrature;
mod rk4;
mod roots;

pub use quadrature::{adaptive_simpson, QuadratureError, SimpsonConfig};
pub use rk4::Rk4;
pub use roots::{durand_kerner, sort_roots, RootError, DEFAULT_MAX_ITERATIONS, DEFAULT_ROOT_TOL};

use num_complex::Complex;
use thiserror::Error;

/// Binary64 complex number used for the Laplace variable and all numeric
/// evaluation.
pub type ComplexF = Complex<f64>;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
#[error("complex value {re} + {im}i is not finite")]
pub struct NonFiniteError {
    pub re: f64,
    pub im: f64,
}

/// Builds a [`ComplexF`], rejecting NaN and infinite components.
pub fn complex(re: f64, im: f64) -> Result<ComplexF, NonFiniteError> {
    if re.is_finite() && im.is_finite() {
        Ok(Complex::new(re, im))
    } else {
        Err(NonFiniteError { re, im })
    }
}
