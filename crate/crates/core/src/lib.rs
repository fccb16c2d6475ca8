//! Transfer-function toolchain for linear analog circuits.
//!
//! Coefficients are carried as exact rationals end to end; floating point is
//! used only for analysis and numeric cross-checks. The core types are
//! generic over [`scalar::Scalar`], implemented for [`ExactScalar`], `f64`
//! and `f32`.

pub mod analysis;
pub mod circuits;
pub mod exactnum;
pub mod laplace;
pub mod numeric;
pub mod odefile;
pub mod poly;
pub mod scalar;
pub mod translator;

pub use exactnum::ExactScalar;
pub use numeric::ComplexF;

pub type ExactPoly = poly::Poly<ExactScalar>;
pub type ExactTf = poly::TransferFunction<ExactScalar>;
pub type Ode = laplace::LinearOde<ExactScalar>;

pub type Poly64 = poly::Poly<f64>;
pub type Tf64 = poly::TransferFunction<f64>;
pub type Ode64 = laplace::LinearOde<f64>;

pub type Poly32 = poly::Poly<f32>;
pub type Tf32 = poly::TransferFunction<f32>;
pub type Ode32 = laplace::LinearOde<f32>;
