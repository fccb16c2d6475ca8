//! Frequency- and time-domain analysis of transfer functions, and the
//! simulation oracle that cross-checks a transfer function against its ODE.

use std::f64::consts::PI;
use std::fmt::Write as _;

use num_complex::Complex;
use thiserror::Error;

use crate::exactnum::ExactError;
use crate::laplace::{
    abscissa, numeric_laplace, LaplaceError, LinearOde, TimeSignal, DEFAULT_ABSCISSA_MARGIN,
};
use crate::numeric::{ComplexF, DEFAULT_ROOT_TOL};
use crate::poly::{horner, Poly, PolyError, TransferFunction};
use crate::scalar::Scalar;

/// Relative size below which `den(j omega)` counts as a pole on the axis.
pub const POLE_ON_AXIS_TOL: f64 = 1e-12;
/// Minimum relative separation for two poles to count as distinct.
pub const DISTINCT_POLE_TOL: f64 = 1e-6;
/// Bound on the imaginary residue sum of a real system's time response,
/// relative to the size of the summed terms.
pub const IMAGINARY_RESIDUAL_TOL: f64 = 1e-9;
/// Simulation step must stay below this fraction of the fastest time
/// constant.
pub const STIFFNESS_FRACTION: f64 = 0.1;

pub const BODE_CSV_HEADER: &str = "omega_rad_s,magnitude,magnitude_db,phase_rad";
pub const STEP_CSV_HEADER: &str = "t_s,step_response";

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalysisError {
    #[error("transfer function has a pole on the imaginary axis at omega = {omega}")]
    PoleOnAxis { omega: f64 },
    #[error("poles {a} and {b} are not distinct; repeated poles are not supported")]
    RepeatedPole { a: ComplexF, b: ComplexF },
    #[error("transfer function is not strictly proper")]
    NotStrictlyProper,
    #[error("step dt = {dt} is not below {limit} (0.1 / fastest pole magnitude)")]
    StiffnessWarning { dt: f64, limit: f64 },
    #[error("ODE is improper: input order {input} exceeds output order {output}")]
    ImproperOde { input: usize, output: usize },
    #[error("Re s = {re_s} does not exceed the abscissa {abscissa}")]
    BelowAbscissa { re_s: f64, abscissa: f64 },
    #[error("imaginary residual {residual} too large for a real-coefficient system")]
    ImaginaryResidual { residual: f64 },
    #[error("Laplace transform of the simulated input vanishes at s = {s}")]
    VanishingInputTransform { s: ComplexF },
    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Laplace(#[from] LaplaceError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FreqPoint {
    /// rad/s
    pub omega: f64,
    pub magnitude: f64,
    /// `20 log10(magnitude)`; `-inf` at a transmission zero.
    pub magnitude_db: f64,
    /// Principal argument in `(-pi, pi]`.
    pub phase: f64,
}

/// `H(j omega)`.
pub fn freq_response<T: Scalar>(
    tf: &TransferFunction<T>,
    omega: f64,
) -> Result<FreqPoint, AnalysisError> {
    let num = tf.num().to_binary64()?;
    let den = tf.den().to_binary64()?;
    freq_point(num.coeffs(), den.coeffs(), omega)
}

fn freq_point(num: &[f64], den: &[f64], omega: f64) -> Result<FreqPoint, AnalysisError> {
    if !omega.is_finite() {
        return Err(AnalysisError::InvalidArgument("omega must be finite"));
    }
    let jw = Complex::new(0.0, omega);
    let d = horner(den, jw);
    let scale: f64 = den
        .iter()
        .enumerate()
        .map(|(k, c)| c.abs() * omega.abs().powi(k as i32))
        .sum();
    if d.norm() <= POLE_ON_AXIS_TOL * scale {
        return Err(AnalysisError::PoleOnAxis { omega });
    }
    let h = horner(num, jw) / d;
    let magnitude = h.norm();
    Ok(FreqPoint {
        omega,
        magnitude,
        magnitude_db: 20.0 * magnitude.log10(),
        phase: h.arg(),
    })
}

/// `n` log-spaced frequencies from `lo` to `hi` inclusive.
pub fn log_sweep(lo: f64, hi: f64, n: usize) -> Result<Vec<f64>, AnalysisError> {
    if !(lo > 0.0 && hi >= lo && hi.is_finite()) || n == 0 {
        return Err(AnalysisError::InvalidArgument("sweep needs 0 < lo <= hi and n >= 1"));
    }
    if n == 1 {
        return Ok(vec![lo]);
    }
    let (a, b) = (lo.log10(), hi.log10());
    let step = (b - a) / (n - 1) as f64;
    Ok((0..n)
        .map(|i| match i {
            0 => lo,
            i if i == n - 1 => hi,
            i => 10f64.powf(a + step * i as f64),
        })
        .collect())
}

pub fn bode<T: Scalar>(
    tf: &TransferFunction<T>,
    omegas: &[f64],
) -> Result<Vec<FreqPoint>, AnalysisError> {
    let num = tf.num().to_binary64()?;
    let den = tf.den().to_binary64()?;
    omegas
        .iter()
        .map(|&w| freq_point(num.coeffs(), den.coeffs(), w))
        .collect()
}

pub fn bode_csv(points: &[FreqPoint]) -> String {
    let mut out = String::from(BODE_CSV_HEADER);
    out.push('\n');
    for p in points {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            format_g(p.omega),
            format_g(p.magnitude),
            format_g(p.magnitude_db),
            format_g(p.phase)
        );
    }
    out
}

pub fn step_csv(times: &[f64], values: &[f64]) -> String {
    let mut out = String::from(STEP_CSV_HEADER);
    out.push('\n');
    for (t, y) in times.iter().zip(values) {
        let _ = writeln!(out, "{},{}", format_g(*t), format_g(*y));
    }
    out
}

/// C `printf("%.12g")` formatting.
pub fn format_g(x: f64) -> String {
    const PRECISION: i32 = 12;
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let sci = format!("{:.*e}", (PRECISION - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..PRECISION).contains(&exp) {
        let fixed = format!("{:.*}", (PRECISION - 1 - exp) as usize, x);
        strip_fraction_zeros(&fixed).to_string()
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{}{:02}", strip_fraction_zeros(mantissa), sign, exp.abs())
    }
}

fn strip_fraction_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Poles and finite zeros, each sorted by (Re, Im). A constant
/// denominator (or numerator) contributes none.
pub fn poles_zeros<T: Scalar>(
    tf: &TransferFunction<T>,
) -> Result<(Vec<ComplexF>, Vec<ComplexF>), AnalysisError> {
    Ok((finite_roots(tf.den())?, finite_roots(tf.num())?))
}

fn finite_roots<T: Scalar>(p: &Poly<T>) -> Result<Vec<ComplexF>, AnalysisError> {
    if p.degree() == 0 {
        return Ok(Vec::new());
    }
    Ok(p.roots(DEFAULT_ROOT_TOL)?)
}

/// Every pole strictly in the open left half-plane.
pub fn is_stable<T: Scalar>(tf: &TransferFunction<T>) -> Result<bool, AnalysisError> {
    Ok(finite_roots(tf.den())?.iter().all(|p| p.re < 0.0))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoleResidue {
    pub pole: ComplexF,
    pub residue: ComplexF,
    /// Always 1: repeated poles are rejected.
    pub multiplicity: u32,
}

/// `H(s) = sum r_i / (s - p_i)` for a strictly proper `H` with simple poles,
/// residues from `N(p) / D'(p)`.
pub fn partial_fractions<T: Scalar>(
    tf: &TransferFunction<T>,
) -> Result<Vec<PoleResidue>, AnalysisError> {
    if !tf.is_strictly_proper() {
        return Err(AnalysisError::NotStrictlyProper);
    }
    if tf.num().is_zero() {
        return Ok(Vec::new());
    }
    let poles = tf.den().roots(DEFAULT_ROOT_TOL)?;
    for (i, a) in poles.iter().enumerate() {
        for b in &poles[i + 1..] {
            let scale = 1f64.max(a.norm()).max(b.norm());
            if (a - b).norm() <= DISTINCT_POLE_TOL * scale {
                return Err(AnalysisError::RepeatedPole { a: *a, b: *b });
            }
        }
    }
    let num = tf.num().to_binary64()?;
    let dden = tf.den().derivative().to_binary64()?;
    Ok(poles
        .into_iter()
        .map(|p| PoleResidue {
            pole: p,
            residue: horner(num.coeffs(), p) / horner(dden.coeffs(), p),
            multiplicity: 1,
        })
        .collect())
}

/// Evaluates `sum r_i / (s - p_i)`.
pub fn eval_partial_fractions(terms: &[PoleResidue], s: ComplexF) -> ComplexF {
    terms.iter().map(|t| t.residue / (s - t.pole)).sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResponseKind {
    Impulse,
    Step,
}

/// Residue expansion of the impulse or step response, evaluated
/// analytically at any `t >= 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeResponse {
    pub kind: ResponseKind,
    pub terms: Vec<PoleResidue>,
}

impl TimeResponse {
    pub fn new<T: Scalar>(tf: &TransferFunction<T>, kind: ResponseKind) -> Result<Self, AnalysisError> {
        let terms = match kind {
            ResponseKind::Impulse => partial_fractions(tf)?,
            ResponseKind::Step => {
                // H(s) / s must be strictly proper, so H itself need only be proper.
                let over_s = TransferFunction::new(tf.num().clone(), tf.den().shift(1))?;
                partial_fractions(&over_s)?
            }
        };
        Ok(Self { kind, terms })
    }

    /// `y(t) = sum Re(r_i e^{p_i t})`.
    pub fn at(&self, t: f64) -> Result<f64, AnalysisError> {
        if !(t >= 0.0 && t.is_finite()) {
            return Err(AnalysisError::InvalidArgument("time must be finite and non-negative"));
        }
        let mut sum = Complex::new(0.0, 0.0);
        let mut size = 0.0;
        for term in &self.terms {
            let v = term.residue * (term.pole * t).exp();
            size += v.norm();
            sum += v;
        }
        if sum.im.abs() > IMAGINARY_RESIDUAL_TOL * size.max(f64::MIN_POSITIVE) {
            return Err(AnalysisError::ImaginaryResidual { residual: sum.im });
        }
        Ok(sum.re)
    }
}

pub fn time_response<T: Scalar>(
    tf: &TransferFunction<T>,
    kind: ResponseKind,
    t: f64,
) -> Result<f64, AnalysisError> {
    TimeResponse::new(tf, kind)?.at(t)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimSample {
    pub t: f64,
    pub v_i: f64,
    pub v_o: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimTrace {
    pub dt: f64,
    pub samples: Vec<SimSample>,
}

impl SimTrace {
    pub fn input_signal(&self) -> Result<TimeSignal, AnalysisError> {
        Ok(TimeSignal::table(self.dt, self.samples.iter().map(|s| s.v_i).collect())?)
    }

    pub fn output_signal(&self) -> Result<TimeSignal, AnalysisError> {
        Ok(TimeSignal::table(self.dt, self.samples.iter().map(|s| s.v_o).collect())?)
    }
}

/// Magnitude of the fastest pole of the ODE's characteristic polynomial;
/// zero for an algebraic (order 0) relation.
pub fn fastest_pole<T: Scalar>(ode: &LinearOde<T>) -> Result<f64, AnalysisError> {
    Ok(finite_roots(&ode.output_poly())?
        .iter()
        .map(|p| p.norm())
        .fold(0.0, f64::max))
}

/// Classic RK4 on the controllable canonical form with zero initial state,
/// sampled at `t = k dt` for `k = 0..=round(horizon / dt)`.
pub fn simulate_ode<T: Scalar>(
    ode: &LinearOde<T>,
    input: &TimeSignal,
    horizon: f64,
    dt: f64,
) -> Result<SimTrace, AnalysisError> {
    if !(dt > 0.0 && dt.is_finite() && horizon > 0.0 && horizon.is_finite()) {
        return Err(AnalysisError::InvalidArgument("dt and horizon must be positive and finite"));
    }
    let n = ode.order();
    let m = ode.input_order();
    if m > n {
        return Err(AnalysisError::ImproperOde { input: m, output: n });
    }
    let fastest = fastest_pole(ode)?;
    if fastest > 0.0 {
        let limit = STIFFNESS_FRACTION / fastest;
        if dt >= limit {
            return Err(AnalysisError::StiffnessWarning { dt, limit });
        }
    }

    // Monic normalization in exact arithmetic, rounded once.
    let lead = ode.out_coeffs()[n].clone();
    let normalize = |c: &T| (c.clone() / lead.clone()).to_binary64();
    let a = ode.out_coeffs().iter().map(normalize).collect::<Result<Vec<_>, _>>()?;
    let mut b = ode.in_coeffs().iter().map(normalize).collect::<Result<Vec<_>, _>>()?;
    b.resize(n + 1, 0.0);
    let feedthrough = b[n];
    let c: Vec<f64> = (0..n).map(|k| b[k] - feedthrough * a[k]).collect();

    let steps = (horizon / dt).round() as usize;
    let mut samples = Vec::with_capacity(steps + 1);
    let mut state = vec![0.0; n];
    let mut rk = crate::numeric::Rk4::new(n);
    let output = |x: &[f64], u: f64| c.iter().zip(x).map(|(ck, xk)| ck * xk).sum::<f64>() + feedthrough * u;
    let rhs = |t: f64, x: &[f64], dx: &mut [f64]| {
        let u = input.eval(t);
        dx[..n - 1].copy_from_slice(&x[1..n]);
        dx[n - 1] = u - a[..n].iter().zip(x).map(|(ak, xk)| ak * xk).sum::<f64>();
    };
    for k in 0..=steps {
        let t = k as f64 * dt;
        let u = input.eval(t);
        samples.push(SimSample { t, v_i: u, v_o: output(&state, u) });
        if n > 0 && k < steps {
            rk.step(rhs, t, &mut state, dt);
        }
    }
    Ok(SimTrace { dt, samples })
}

#[derive(Debug, Clone)]
pub struct NumericCheckConfig {
    pub input: TimeSignal,
    pub horizon: f64,
    pub dt: f64,
    /// Relative quadrature tolerance.
    pub tol: f64,
    pub margin: f64,
}

impl NumericCheckConfig {
    pub fn new(input: TimeSignal, horizon: f64, dt: f64, tol: f64) -> Self {
        Self {
            input,
            horizon,
            dt,
            tol,
            margin: DEFAULT_ABSCISSA_MARGIN,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumericSample {
    pub s: ComplexF,
    /// `H(s)` from the transfer function.
    pub tf_value: ComplexF,
    /// `L[v_o](s) / L[v_i](s)` from the simulated trace.
    pub sim_ratio: ComplexF,
    /// `|tf_value - sim_ratio| / |sim_ratio|`.
    pub rel_error: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NumericCheck {
    pub samples: Vec<NumericSample>,
    pub max_rel_error: f64,
}

/// Simulates `ode`, takes numeric Laplace transforms of the traced input
/// and output, and compares their ratio with `tf` at each `s`.
///
/// The error is relative to the simulated ratio, so a transfer function
/// off by a factor of two reports 1.0.
pub fn tf_numeric_check<T: Scalar>(
    tf: &TransferFunction<T>,
    ode: &LinearOde<T>,
    s_samples: &[ComplexF],
    config: &NumericCheckConfig,
) -> Result<NumericCheck, AnalysisError> {
    if s_samples.is_empty() {
        return Err(AnalysisError::InvalidArgument("at least one s sample is required"));
    }
    if !(config.tol > 0.0) {
        return Err(AnalysisError::InvalidArgument("quadrature tolerance must be positive"));
    }
    let ode_tf = TransferFunction::new(ode.input_poly(), ode.output_poly())?;
    let sigma0 = abscissa(tf, config.margin)?.max(abscissa(&ode_tf, config.margin)?);
    if let Some(s) = s_samples.iter().find(|s| s.re <= sigma0) {
        return Err(AnalysisError::BelowAbscissa { re_s: s.re, abscissa: sigma0 });
    }

    let trace = simulate_ode(ode, &config.input, config.horizon, config.dt)?;
    let vi = trace.input_signal()?;
    let vo = trace.output_signal()?;
    let peak = |sig: &TimeSignal| sig.bound().map_or(1.0, |b| b.m());

    let mut samples = Vec::with_capacity(s_samples.len());
    for &s in s_samples {
        // |L[f](s)| <= peak / Re s, so this is a relative tolerance.
        let abs_tol = |sig: &TimeSignal| config.tol * peak(sig) / s.re;
        let li = numeric_laplace(&vi, s, config.horizon, abs_tol(&vi))?.value;
        let lo = numeric_laplace(&vo, s, config.horizon, abs_tol(&vo))?.value;
        if li.norm() == 0.0 {
            return Err(AnalysisError::VanishingInputTransform { s });
        }
        let sim_ratio = lo / li;
        let tf_value = tf.eval_complex(s)?;
        let rel_error = (tf_value - sim_ratio).norm() / sim_ratio.norm().max(f64::MIN_POSITIVE);
        samples.push(NumericSample { s, tf_value, sim_ratio, rel_error });
    }
    let max_rel_error = samples.iter().map(|s| s.rel_error).fold(0.0, f64::max);
    Ok(NumericCheck { samples, max_rel_error })
}

/// Phase of `H(j omega)` mapped to `(-pi, pi]`; exposed for callers that
/// unwrap phase across a sweep.
pub fn wrap_phase(phase: f64) -> f64 {
    let wrapped = (phase + PI).rem_euclid(2.0 * PI) - PI;
    if wrapped == -PI {
        PI
    } else {
        wrapped
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, parse_decimal, ratio, ExactScalar};
    use crate::laplace::ode_to_tf;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> Poly<ExactScalar> {
        Poly::new(c.iter().map(|&v| int(v)).collect())
    }

    fn tf(num: &[i64], den: &[i64]) -> TransferFunction<ExactScalar> {
        TransferFunction::new(p(num), p(den)).unwrap()
    }

    fn sallen_key() -> TransferFunction<ExactScalar> {
        tf(&[7_812_500_000], &[3_906_250_000, 62500, 1])
    }

    fn sklp_ode() -> LinearOde<ExactScalar> {
        let d = |t: &str| parse_decimal(t).unwrap();
        LinearOde::new(
            vec![d("3906249999.75586"), d("62500.0000039063"), d("1")],
            vec![d("7812500000.48828")],
        )
        .unwrap()
    }

    #[test]
    fn frequency_response_examples() {
        let dc = freq_response(&sallen_key(), 0.0).unwrap();
        assert_eq!(dc.magnitude, 2.0);
        assert_eq!(dc.phase, 0.0);
        let w0 = freq_response(&sallen_key(), 62500.0).unwrap();
        assert!((w0.magnitude - 2.0).abs() < 1e-12);
        assert!((w0.phase + PI / 2.0).abs() < 1e-12);
        let unity = freq_response(&tf(&[1], &[1]), 123.0).unwrap();
        assert_eq!((unity.magnitude, unity.phase, unity.magnitude_db), (1.0, 0.0, 0.0));
    }

    #[test]
    fn pole_on_axis_is_rejected() {
        let resonator = tf(&[1], &[4, 0, 1]);
        assert!(matches!(freq_response(&resonator, 2.0), Err(AnalysisError::PoleOnAxis { .. })));
        assert!(matches!(freq_response(&tf(&[1], &[0, 1]), 0.0), Err(AnalysisError::PoleOnAxis { .. })));
        assert!(freq_response(&resonator, 1.0).is_ok());
    }

    #[test]
    fn poles_and_zeros_examples() {
        let (poles, zeros) = poles_zeros(&sallen_key()).unwrap();
        assert!(zeros.is_empty());
        let im = 31250.0 * 3f64.sqrt();
        assert_eq!(poles[0].re, -31250.0);
        assert!((poles[0].im + im).abs() < 1e-6 * im && (poles[1].im - im).abs() < 1e-6 * im);
        assert!((im - 54126.5876).abs() < 1e-6 * im);
        assert!(is_stable(&sallen_key()).unwrap());

        let unstable = tf(&[1], &[-1, 1]);
        assert_eq!(poles_zeros(&unstable).unwrap().0, vec![Complex::new(1.0, 0.0)]);
        assert!(!is_stable(&unstable).unwrap());

        let lead = tf(&[1, 1], &[2, 1]);
        let (poles, zeros) = poles_zeros(&lead).unwrap();
        assert_eq!((poles, zeros), (vec![Complex::new(-2.0, 0.0)], vec![Complex::new(-1.0, 0.0)]));
        assert!(is_stable(&lead).unwrap());
    }

    #[test]
    fn partial_fraction_examples() {
        let two_pole = partial_fractions(&tf(&[1], &[2, 3, 1])).unwrap();
        assert_eq!(two_pole.len(), 2);
        assert_eq!(two_pole[0].pole, Complex::new(-2.0, 0.0));
        assert!((two_pole[0].residue - Complex::new(-1.0, 0.0)).norm() < 1e-12);
        assert!((two_pole[1].residue - Complex::new(1.0, 0.0)).norm() < 1e-12);

        let one = partial_fractions(&tf(&[1], &[3, 1])).unwrap();
        assert_eq!((one[0].pole, one[0].residue), (Complex::new(-3.0, 0.0), Complex::new(1.0, 0.0)));

        let sk = partial_fractions(&sallen_key()).unwrap();
        assert_eq!(sk[0].residue, sk[1].residue.conj());
        assert_eq!(sk[0].pole, sk[1].pole.conj());

        assert_eq!(partial_fractions(&tf(&[1, 1], &[2, 1])), Err(AnalysisError::NotStrictlyProper));
        assert!(matches!(partial_fractions(&tf(&[1], &[1, 2, 1])), Err(AnalysisError::RepeatedPole { .. })));
    }

    #[test]
    fn time_response_examples() {
        let lag = tf(&[1], &[1, 1]);
        assert!((time_response(&lag, ResponseKind::Step, 30.0).unwrap() - 1.0).abs() < 1e-6);
        assert!((time_response(&lag, ResponseKind::Step, 1.0).unwrap() - (1.0 - (-1f64).exp())).abs() < 1e-12);
        assert!((time_response(&lag, ResponseKind::Impulse, 0.0).unwrap() - 1.0).abs() < 1e-15);
        let settled = time_response(&sallen_key(), ResponseKind::Step, 1e-2).unwrap();
        assert!((settled - 2.0).abs() < 1e-4);
        assert!(time_response(&lag, ResponseKind::Step, -1.0).is_err());
    }

    #[test]
    fn step_of_a_biproper_system() {
        // (s + 2)/(s + 1) steps to 2 - e^{-t}.
        let y = time_response(&tf(&[2, 1], &[1, 1]), ResponseKind::Step, 0.5).unwrap();
        assert!((y - (2.0 - (-0.5f64).exp())).abs() < 1e-12);
    }

    #[test]
    fn simulation_examples() {
        let lag = LinearOde::new(vec![int(1), int(1)], vec![int(1)]).unwrap();
        let trace = simulate_ode(&lag, &TimeSignal::unit_step(), 10.0, 1e-3).unwrap();
        let last = trace.samples.last().unwrap();
        assert!((last.t - 10.0).abs() < 1e-9);
        assert!((last.v_o - (1.0 - (-10f64).exp())).abs() < 1e-6);

        let quiet = simulate_ode(&lag, &TimeSignal::zero(), 1.0, 1e-2).unwrap();
        assert!(quiet.samples.iter().all(|s| s.v_o == 0.0));
        assert_eq!(quiet.samples.len(), 101);
        assert_eq!(quiet.samples[0].t, 0.0);
    }

    #[test]
    fn simulation_rejects_stiff_steps_and_improper_odes() {
        let fast = LinearOde::new(vec![int(100), int(1)], vec![int(1)]).unwrap();
        assert!(matches!(
            simulate_ode(&fast, &TimeSignal::unit_step(), 1.0, 1e-3),
            Err(AnalysisError::StiffnessWarning { .. })
        ));
        let improper = LinearOde::new(vec![int(1)], vec![int(0), int(1)]).unwrap();
        assert!(matches!(
            simulate_ode(&improper, &TimeSignal::unit_step(), 1.0, 1e-3),
            Err(AnalysisError::ImproperOde { .. })
        ));
    }

    #[test]
    fn algebraic_and_biproper_simulation() {
        let gain = LinearOde::new(vec![int(2)], vec![int(6)]).unwrap();
        let trace = simulate_ode(&gain, &TimeSignal::sin(1.0), 1.0, 0.1).unwrap();
        assert!(trace.samples.iter().all(|s| (s.v_o - 3.0 * s.v_i).abs() < 1e-15));
        // v_o' + v_o = v_i' + 2 v_i under a unit step: 2 - e^{-t}.
        let lead = LinearOde::new(vec![int(1), int(1)], vec![int(2), int(1)]).unwrap();
        let trace = simulate_ode(&lead, &TimeSignal::unit_step(), 2.0, 1e-3).unwrap();
        let last = trace.samples.last().unwrap();
        assert!((last.v_o - (2.0 - (-2f64).exp())).abs() < 1e-9);
    }

    #[test]
    fn numeric_check_first_order() {
        let lag = LinearOde::new(vec![int(2), int(1)], vec![int(1)]).unwrap();
        let (h, _) = ode_to_tf(&lag).unwrap();
        let cfg = NumericCheckConfig::new(TimeSignal::exp(1.0, -1.0), 20.0, 1e-3, 1e-12);
        let s = [Complex::new(3.0, 0.0), Complex::new(5.0, 0.0)];
        let check = tf_numeric_check(&h, &lag, &s, &cfg).unwrap();
        assert!(check.max_rel_error < 1e-3, "{check:?}");

        let identity = LinearOde::new(vec![int(1)], vec![int(1)]).unwrap();
        let gain_two = tf(&[2], &[1]);
        let check = tf_numeric_check(&gain_two, &identity, &s, &cfg).unwrap();
        assert!((check.max_rel_error - 1.0).abs() < 1e-9);
    }

    #[test]
    fn numeric_check_respects_abscissa() {
        let lag = LinearOde::new(vec![int(2), int(1)], vec![int(1)]).unwrap();
        let (h, _) = ode_to_tf(&lag).unwrap();
        let cfg = NumericCheckConfig::new(TimeSignal::exp(1.0, -1.0), 20.0, 1e-3, 1e-12);
        let err = tf_numeric_check(&h, &lag, &[Complex::new(0.5, 0.0)], &cfg).unwrap_err();
        assert!(matches!(err, AnalysisError::BelowAbscissa { .. }));
    }

    #[test]
    fn numeric_check_halving_dt_is_fourth_order() {
        let ode = LinearOde::new(vec![int(2), int(3), int(1)], vec![int(2)]).unwrap();
        let (h, _) = ode_to_tf(&ode).unwrap();
        let s = [Complex::new(3.0, 0.0)];
        let run = |dt: f64| {
            let cfg = NumericCheckConfig::new(TimeSignal::damped_sin(1.0, 2.0), 30.0, dt, 1e-14);
            tf_numeric_check(&h, &ode, &s, &cfg).unwrap().max_rel_error
        };
        let (coarse, fine) = (run(0.04), run(0.02));
        assert!(coarse / fine >= 8.0, "coarse {coarse:e} fine {fine:e}");
    }

    #[test]
    fn sklp_ode_against_exact_tf() {
        let cfg = NumericCheckConfig::new(TimeSignal::exp(1.0, -1e4), 1e-3, 1e-8, 1e-10);
        let s = [Complex::new(1e5, 0.0), Complex::new(2e5, 0.0)];
        let check = tf_numeric_check(&sallen_key(), &sklp_ode(), &s, &cfg).unwrap();
        assert!(check.max_rel_error < 1e-2, "{check:?}");
    }

    #[test]
    fn general_format_matches_printf() {
        let cases = [
            (0.0, "0"),
            (1.0, "1"),
            (2.5, "2.5"),
            (62500.0, "62500"),
            (1e-5, "1e-05"),
            (1e12, "1e+12"),
            (123456789012.0, "123456789012"),
            (1234567890123.0, "1.23456789012e+12"),
            (-PI / 2.0, "-1.57079632679"),
            (0.0001, "0.0001"),
            (6.0206, "6.0206"),
            (f64::NEG_INFINITY, "-inf"),
        ];
        for (x, want) in cases {
            assert_eq!(format_g(x), want, "{x}");
        }
    }

    #[test]
    fn sweep_and_csv() {
        let w = log_sweep(1.0, 1e4, 5).unwrap();
        assert_eq!(w[0], 1.0);
        assert_eq!(w[4], 1e4);
        assert!((w[2] - 100.0).abs() < 1e-9);
        let pts = bode(&tf(&[1], &[1, 1]), &[1.0]).unwrap();
        let csv = bode_csv(&pts);
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some(BODE_CSV_HEADER));
        assert_eq!(lines.next(), Some("1,0.707106781187,-3.01029995664,-0.785398163397"));
        assert!(log_sweep(0.0, 1.0, 3).is_err());
    }

    #[test]
    fn phase_wrapping() {
        assert_eq!(wrap_phase(PI), PI);
        assert!((wrap_phase(3.0 * PI / 2.0) + PI / 2.0).abs() < 1e-15);
    }

    proptest! {
        #[test]
        fn stability_matches_routh_for_quadratics(a in 1i64..50, b in -50i64..50, c in -50i64..50, d in 1i64..7) {
            let den = Poly::new(vec![ratio(c, d), ratio(b, d), int(a)]);
            let h = TransferFunction::new(Poly::one(), den).unwrap();
            prop_assert_eq!(is_stable(&h).unwrap(), b > 0 && c > 0);
        }

        #[test]
        fn partial_fractions_reconstruct(roots in prop::collection::btree_set(-20i64..0, 1..5), num in prop::collection::vec(-9i64..10, 1..4), re in 0.1f64..3.0, im in -3.0f64..3.0) {
            let den = roots.iter().fold(Poly::<ExactScalar>::one(), |acc, &r| &acc * &p(&[-r, 1]));
            let num = p(&num[..num.len().min(roots.len())]);
            prop_assume!(!num.is_zero());
            let h = TransferFunction::new(num, den).unwrap();
            let terms = partial_fractions(&h).unwrap();
            let s = Complex::new(re, im);
            let want = h.eval_complex(s).unwrap();
            let got = eval_partial_fractions(&terms, s);
            prop_assert!((want - got).norm() <= 1e-6 * want.norm().max(1e-12), "{} vs {}", want, got);
        }

        #[test]
        fn frequency_response_is_conjugate_symmetric(num in prop::collection::vec(-9i64..10, 1..4), den in prop::collection::vec(1i64..10, 2..5), w in 0.01f64..100.0) {
            let h = TransferFunction::new(p(&num), p(&den)).unwrap();
            let (pos, neg) = match (freq_response(&h, w), freq_response(&h, -w)) {
                (Ok(a), Ok(b)) => (a, b),
                _ => return Ok(()),
            };
            prop_assert_eq!(pos.magnitude, neg.magnitude);
            if pos.magnitude > 0.0 && pos.phase.abs() < PI {
                prop_assert_eq!(pos.phase, -neg.phase);
            }
        }
    }
}
