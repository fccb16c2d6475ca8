//! The ODE/transfer-function correspondence.
//!
//! A constant-coefficient linear ODE
//!
//! ```text
//! sum_k out[k] * d^k v_o/dt^k  =  sum_k in[k] * d^k v_i/dt^k
//! ```
//!
//! with zero initial conditions has Laplace image
//! `V_o(s) / V_i(s) = in(s) / out(s)`, where `in(s)` and `out(s)` are the
//! coefficient lists read as ascending polynomials. Conversion in either
//! direction is therefore a relabelling; what this module adds is the exact
//! cross-multiplication check and the ledger of side conditions under which
//! the correspondence holds.

mod obligations;
mod signal;

pub use obligations::{
    Obligation, ObligationReport, ObligationStatus, TheoremTemplate, ALGEBRAIC_ID, NUMERIC_ID,
    REPORT_SCHEMA,
};
pub use signal::{
    exp_order_check, numeric_laplace, ExpOrderBound, ExpOrderCheck, LaplaceEstimate, SignalKind,
    TimeSignal,
};

use thiserror::Error;

use crate::exactnum::ExactError;
use crate::numeric::{QuadratureError, DEFAULT_ROOT_TOL};
use crate::poly::{Poly, PolyError, TransferFunction};
use crate::scalar::Scalar;

pub const DEFAULT_ABSCISSA_MARGIN: f64 = 1.0;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LaplaceError {
    #[error("degenerate ODE: output coefficient list is empty or has a zero leading coefficient")]
    DegenerateOde,
    #[error("input coefficient list is empty")]
    EmptyInputCoefficients,
    #[error("transfer function denominator is the zero polynomial")]
    ZeroDenominator,
    #[error("nonzero initial conditions are not supported (zero initial state is assumed)")]
    NonzeroInitialConditions,
    #[error("Laplace tail unbounded: Re s = {re_s} does not exceed the growth rate a = {a}")]
    TailUnbounded { re_s: f64, a: f64 },
    #[error("quadrature failed: {0}")]
    Quadrature(#[from] QuadratureError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),
}

/// Constant-coefficient linear ODE relating an input `v_i` to an output
/// `v_o`. Both coefficient lists are ascending by derivative order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearOde<T> {
    out_coeffs: Vec<T>,
    in_coeffs: Vec<T>,
}

impl<T: Scalar> LinearOde<T> {
    pub fn new(out_coeffs: Vec<T>, in_coeffs: Vec<T>) -> Result<Self, LaplaceError> {
        if out_coeffs.last().is_none_or(|c| c.is_zero()) {
            return Err(LaplaceError::DegenerateOde);
        }
        if in_coeffs.is_empty() {
            return Err(LaplaceError::EmptyInputCoefficients);
        }
        Ok(Self {
            out_coeffs,
            in_coeffs,
        })
    }

    pub fn out_coeffs(&self) -> &[T] {
        &self.out_coeffs
    }

    pub fn in_coeffs(&self) -> &[T] {
        &self.in_coeffs
    }

    /// Highest derivative of the output.
    pub fn order(&self) -> usize {
        self.out_coeffs.len() - 1
    }

    /// Highest derivative of the input.
    pub fn input_order(&self) -> usize {
        self.in_coeffs.len() - 1
    }

    pub fn output_poly(&self) -> Poly<T> {
        Poly::new(self.out_coeffs.clone())
    }

    pub fn input_poly(&self) -> Poly<T> {
        Poly::new(self.in_coeffs.clone())
    }

    /// Both lists scaled by `c`.
    pub fn scale(&self, c: &T) -> Self {
        let mul = |v: &[T]| v.iter().map(|x| x.clone() * c.clone()).collect();
        Self {
            out_coeffs: mul(&self.out_coeffs),
            in_coeffs: mul(&self.in_coeffs),
        }
    }

    /// Returns `c` with `self = c * other` (both lists, one common `c`).
    pub fn equal_up_to_scale(&self, other: &Self) -> Option<T> {
        common_scale(
            (&self.input_poly(), &self.output_poly()),
            (&other.input_poly(), &other.output_poly()),
        )
    }
}

/// `c` with `a.0 = c * b.0` and `a.1 = c * b.1`.
fn common_scale<T: Scalar>(a: (&Poly<T>, &Poly<T>), b: (&Poly<T>, &Poly<T>)) -> Option<T> {
    let c = a.1.equal_up_to_scale(b.1)?;
    (*a.0 == b.0.scale(&c)).then_some(c)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LedgerOptions {
    pub margin: f64,
    pub root_tol: f64,
}

impl Default for LedgerOptions {
    fn default() -> Self {
        Self {
            margin: DEFAULT_ABSCISSA_MARGIN,
            root_tol: DEFAULT_ROOT_TOL,
        }
    }
}

/// `max(0, max Re(pole)) + margin`. A constant denominator has no poles and
/// yields `margin`.
pub fn abscissa<T: Scalar>(tf: &TransferFunction<T>, margin: f64) -> Result<f64, LaplaceError> {
    abscissa_with_tol(tf, margin, DEFAULT_ROOT_TOL)
}

fn abscissa_with_tol<T: Scalar>(
    tf: &TransferFunction<T>,
    margin: f64,
    root_tol: f64,
) -> Result<f64, LaplaceError> {
    if !(margin > 0.0 && margin.is_finite()) {
        return Err(LaplaceError::InvalidArgument("abscissa margin must be positive"));
    }
    if tf.den().degree() == 0 {
        return Ok(margin);
    }
    let rightmost = tf
        .den()
        .roots(root_tol)?
        .iter()
        .map(|p| p.re)
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(rightmost.max(0.0) + margin)
}

/// Laplace image of an ODE under zero initial conditions.
pub fn ode_to_tf<T: Scalar>(
    ode: &LinearOde<T>,
) -> Result<(TransferFunction<T>, ObligationReport), LaplaceError> {
    ode_to_tf_with(ode, &LedgerOptions::default())
}

pub fn ode_to_tf_with<T: Scalar>(
    ode: &LinearOde<T>,
    options: &LedgerOptions,
) -> Result<(TransferFunction<T>, ObligationReport), LaplaceError> {
    let den = ode.output_poly();
    if den.is_zero() {
        return Err(LaplaceError::DegenerateOde);
    }
    let tf = TransferFunction::new(ode.input_poly(), den)?;
    let report = check_equivalence_with(ode, &tf, options);
    Ok((tf, report))
}

/// Recovers the ODE whose Laplace image is `tf`.
pub fn tf_to_ode<T: Scalar>(
    tf: &TransferFunction<T>,
) -> Result<(LinearOde<T>, ObligationReport), LaplaceError> {
    tf_to_ode_with(tf, &LedgerOptions::default())
}

pub fn tf_to_ode_with<T: Scalar>(
    tf: &TransferFunction<T>,
    options: &LedgerOptions,
) -> Result<(LinearOde<T>, ObligationReport), LaplaceError> {
    if tf.den().is_zero() {
        return Err(LaplaceError::ZeroDenominator);
    }
    let ode = LinearOde::new(tf.den().coeffs().to_vec(), tf.num().coeffs().to_vec())?;

    let mut report = ObligationReport::new(TheoremTemplate::OdeFromTf);
    let (n, m) = (ode.order(), ode.input_order());
    let sigma0 = abscissa_with_tol(tf, options.margin, options.root_tol);
    report.sigma0 = sigma0.as_ref().ok().copied();

    use ObligationStatus::*;
    report.record("A1", format!("input VI differentiable up to order {m}"), EmittedAssumption,
        format!("(!t. differentiable_higher_deriv {m} VI t)"));
    report.record("A2", format!("output V0 differentiable up to order {n}"), EmittedAssumption,
        format!("(!t. differentiable_higher_deriv {n} V0 t)"));
    report.record("A3", "zero initial conditions for V0", EmittedAssumption, zero_init_detail(n));
    match &sigma0 {
        Ok(s) => report.record("A4", "denominator nonzero for Re r <= Re s", CheckedNumeric,
            format!("every pole has Re < sigma0 = {s}; taking Re r = sigma0")),
        Err(e) => report.record("A4", "denominator nonzero for Re r <= Re s", EmittedAssumption,
            format!("pole location unavailable: {e}")),
    }
    report.record("A5", "Laplace transform of VI nonzero for Re r <= Re s", EmittedAssumption,
        "depends on the input signal; forwarded to the prover");
    match &sigma0 {
        Ok(s) => report.record("A6", "0 < Re r", CheckedNumeric, format!("Re r = sigma0 = {s} > 0")),
        Err(_) => report.record("A6", "0 < Re r", EmittedAssumption, "sigma0 unavailable"),
    }
    report.record("A7", format!("Laplace transforms of VI derivatives up to order {m} exist for Re r <= Re s"),
        EmittedAssumption, format!("laplace_exists_higher_deriv {m} VI s"));
    report.record("A8", format!("Laplace transforms of V0 derivatives up to order {n} exist for Re r <= Re s"),
        EmittedAssumption, format!("laplace_exists_higher_deriv {n} V0 s"));
    report.record("A9", "transfer-function ratio holds for Re r <= Re s", EmittedAssumption,
        "hypothesis of the theorem");

    let recovered = ode_to_tf_pair(&ode);
    let exact = tf.same_function(&recovered);
    report.record(
        ALGEBRAIC_ID,
        "recovered ODE reproduces the transfer function (num * out = den * in)",
        if exact { VerifiedExact } else { Failed },
        if exact { "exact cross-multiplication".to_string() } else { "cross-multiplication mismatch".to_string() },
    );
    report.scale = ode
        .equal_up_to_scale(&LinearOde {
            out_coeffs: tf.den().coeffs().to_vec(),
            in_coeffs: tf.num().coeffs().to_vec(),
        })
        .and_then(|c| c.to_exact());
    report.notes.push(
        "uniqueness of the Laplace transform (equal transforms on Re s >= Re r imply equal signals for t >= 0) \
         justifies reading the ODE off the transfer function; it is cited, not re-checked"
            .to_string(),
    );
    Ok((ode, report))
}

fn ode_to_tf_pair<T: Scalar>(ode: &LinearOde<T>) -> TransferFunction<T> {
    TransferFunction::new(ode.input_poly(), ode.output_poly())
        .expect("LinearOde has a nonzero leading output coefficient")
}

fn zero_init_detail(order: usize) -> String {
    match order {
        0 => "order 0: no initial conditions required".to_string(),
        n => format!("zero_init_conditions {} V0", n - 1),
    }
}

/// Exact check that `tf` is the Laplace image of `ode`, with the full
/// assumption ledger of the ODE-to-transfer-function theorem.
pub fn check_equivalence<T: Scalar>(ode: &LinearOde<T>, tf: &TransferFunction<T>) -> ObligationReport {
    check_equivalence_with(ode, tf, &LedgerOptions::default())
}

pub fn check_equivalence_with<T: Scalar>(
    ode: &LinearOde<T>,
    tf: &TransferFunction<T>,
    options: &LedgerOptions,
) -> ObligationReport {
    let mut report = ObligationReport::new(TheoremTemplate::TfFromOde);
    let (n, m) = (ode.order(), ode.input_order());
    let sigma0 = abscissa_with_tol(tf, options.margin, options.root_tol);
    report.sigma0 = sigma0.as_ref().ok().copied();
    let region = match &sigma0 {
        Ok(s) => format!("holds throughout Re s >= sigma0 = {s}"),
        Err(e) => format!("pole location unavailable: {e}"),
    };

    use ObligationStatus::*;
    report.record("A1", format!("input VI differentiable up to order {m}"), EmittedAssumption,
        format!("(!t. differentiable_higher_deriv {m} VI t)"));
    report.record("A2", format!("output V0 differentiable up to order {n}"), EmittedAssumption,
        format!("(!t. differentiable_higher_deriv {n} V0 t)"));
    report.record("A3", "zero initial conditions for V0", EmittedAssumption, zero_init_detail(n));
    report.record("A4", "Laplace transform of VI nonzero at s", EmittedAssumption,
        "stated pointwise in the theorem; treated here as a region condition on Re s >= sigma0");
    report.record("A5", "transfer-function denominator nonzero at s", EmittedAssumption, region);
    report.record("A6", format!("Laplace transforms of VI derivatives up to order {m} exist at s"),
        EmittedAssumption, format!("laplace_exists_higher_deriv {m} VI s"));
    report.record("A7", format!("Laplace transforms of V0 derivatives up to order {n} exist at s"),
        EmittedAssumption, format!("laplace_exists_higher_deriv {n} V0 s"));
    report.record("A8", "VI and V0 satisfy the differential equation for all t", EmittedAssumption,
        format!("diff_eq_n_order {n} outlst V0 t = diff_eq_n_order {m} inlst VI t"));

    let lhs = tf.num() * &ode.output_poly();
    let rhs = tf.den() * &ode.input_poly();
    let description = "transfer function equals the Laplace image of the ODE (num * out = den * in)";
    match lhs.first_difference(&rhs) {
        None => {
            report.scale = common_scale(
                (&ode.input_poly(), &ode.output_poly()),
                (tf.num(), tf.den()),
            )
            .and_then(|c| c.to_exact());
            let detail = match &report.scale {
                Some(_) => "exact cross-multiplication; ODE lists are a common multiple of the TF lists",
                None => "exact cross-multiplication; lists differ by a common polynomial factor",
            };
            report.record(ALGEBRAIC_ID, description, VerifiedExact, detail);
        }
        Some(k) => {
            report.record(ALGEBRAIC_ID, description, Failed, format!("Failed at coefficient {k}"));
        }
    }
    report
}
