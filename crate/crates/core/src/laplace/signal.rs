//! Time-domain signals, exponential-order bounds and the numeric Laplace
//! integral used as an oracle against the exact algebra.

use std::fmt;
use std::sync::Arc;


use super::LaplaceError;
use crate::numeric::{adaptive_simpson, ComplexF, SimpsonConfig};

/// `|f(t)| <= m * exp(a * t)` for all `t >= 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpOrderBound {
    m: f64,
    a: f64,
}

impl ExpOrderBound {
    pub fn new(m: f64, a: f64) -> Result<Self, LaplaceError> {
        if !(m > 0.0 && m.is_finite() && a.is_finite()) {
            return Err(LaplaceError::InvalidArgument("exponential-order bound needs finite M > 0 and finite a"));
        }
        Ok(Self { m, a })
    }

    pub fn m(&self) -> f64 {
        self.m
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn at(&self, t: f64) -> f64 {
        self.m * (self.a * t).exp()
    }

    fn nonzero(m: f64, a: f64) -> Self {
        Self {
            m: if m > 0.0 { m } else { f64::MIN_POSITIVE },
            a,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum SignalKind {
    Zero,
    /// `amplitude` for `t >= 0`.
    Step { amplitude: f64 },
    /// `amplitude * exp(rate * t)`.
    Exp { amplitude: f64, rate: f64 },
    /// `sin(omega * t)`.
    Sin { omega: f64 },
    /// `exp(-decay * t) * sin(omega * t)`.
    DampedSin { decay: f64, omega: f64 },
    /// `slope * t`.
    Ramp { slope: f64 },
    /// Uniformly sampled values, cubic interpolation between samples and
    /// the last sample held past the end.
    Table { dt: f64, len: usize },
    /// Linear combination of two signals.
    Sum,
    Custom(String),
}

/// A real signal on `t >= 0` with a descriptor and, when known, an
/// exponential-order bound.
#[derive(Clone)]
pub struct TimeSignal {
    kind: SignalKind,
    eval: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    bound: Option<ExpOrderBound>,
}

impl fmt::Debug for TimeSignal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TimeSignal")
            .field("kind", &self.kind)
            .field("bound", &self.bound)
            .finish()
    }
}

impl TimeSignal {
    pub fn zero() -> Self {
        Self {
            kind: SignalKind::Zero,
            eval: Arc::new(|_| 0.0),
            bound: Some(ExpOrderBound::nonzero(0.0, 0.0)),
        }
    }

    pub fn step(amplitude: f64) -> Self {
        Self {
            kind: SignalKind::Step { amplitude },
            eval: Arc::new(move |_| amplitude),
            bound: Some(ExpOrderBound::nonzero(amplitude.abs(), 0.0)),
        }
    }

    pub fn unit_step() -> Self {
        Self::step(1.0)
    }

    pub fn exp(amplitude: f64, rate: f64) -> Self {
        Self {
            kind: SignalKind::Exp { amplitude, rate },
            eval: Arc::new(move |t| amplitude * (rate * t).exp()),
            bound: Some(ExpOrderBound::nonzero(amplitude.abs(), rate)),
        }
    }

    pub fn sin(omega: f64) -> Self {
        Self {
            kind: SignalKind::Sin { omega },
            eval: Arc::new(move |t| (omega * t).sin()),
            bound: Some(ExpOrderBound::nonzero(1.0, 0.0)),
        }
    }

    pub fn damped_sin(decay: f64, omega: f64) -> Self {
        Self {
            kind: SignalKind::DampedSin { decay, omega },
            eval: Arc::new(move |t| (-decay * t).exp() * (omega * t).sin()),
            bound: Some(ExpOrderBound::nonzero(1.0, -decay)),
        }
    }

    pub fn ramp(slope: f64) -> Self {
        // t * exp(-t) <= 1/e, so |slope * t| <= (|slope| / e) * exp(t).
        Self {
            kind: SignalKind::Ramp { slope },
            eval: Arc::new(move |t| slope * t),
            bound: Some(ExpOrderBound::nonzero(slope.abs() / std::f64::consts::E, 1.0)),
        }
    }

    /// Samples `values[k]` at `t = k * dt`.
    pub fn table(dt: f64, values: Vec<f64>) -> Result<Self, LaplaceError> {
        if !(dt > 0.0 && dt.is_finite()) || values.is_empty() {
            return Err(LaplaceError::InvalidArgument("table signal needs dt > 0 and at least one sample"));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(LaplaceError::InvalidArgument("table signal samples must be finite"));
        }
        let peak = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let len = values.len();
        let values: Arc<[f64]> = values.into();
        Ok(Self {
            kind: SignalKind::Table { dt, len },
            eval: Arc::new(move |t| interpolate(&values, dt, t)),
            bound: Some(ExpOrderBound::nonzero(peak, 0.0)),
        })
    }

    pub fn custom<F>(name: impl Into<String>, f: F, bound: Option<ExpOrderBound>) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self {
            kind: SignalKind::Custom(name.into()),
            eval: Arc::new(f),
            bound,
        }
    }

    /// `a * f + b * g`.
    pub fn scaled_sum(a: f64, f: &TimeSignal, b: f64, g: &TimeSignal) -> Self {
        let bound = match (f.bound, g.bound) {
            (Some(bf), Some(bg)) => Some(ExpOrderBound::nonzero(
                a.abs() * bf.m + b.abs() * bg.m,
                bf.a.max(bg.a),
            )),
            _ => None,
        };
        let (fe, ge) = (f.eval.clone(), g.eval.clone());
        Self {
            kind: SignalKind::Sum,
            eval: Arc::new(move |t| a * fe(t) + b * ge(t)),
            bound,
        }
    }

    pub fn kind(&self) -> &SignalKind {
        &self.kind
    }

    pub fn bound(&self) -> Option<ExpOrderBound> {
        self.bound
    }

    pub fn eval(&self, t: f64) -> f64 {
        (self.eval)(t)
    }
}

/// Four-point Lagrange interpolation on a uniform grid (fourth-order
/// accurate), clamped to the sampled range.
fn interpolate(values: &[f64], dt: f64, t: f64) -> f64 {
    let n = values.len();
    if n == 1 || t <= 0.0 {
        return values[0];
    }
    let x = t / dt;
    let last = (n - 1) as f64;
    if x >= last {
        return values[n - 1];
    }
    if n < 4 {
        let i = x.floor() as usize;
        let w = x - i as f64;
        return values[i] * (1.0 - w) + values[i + 1] * w;
    }
    let i = (x.floor() as usize).saturating_sub(1).min(n - 4);
    let u = x - i as f64;
    let (y0, y1, y2, y3) = (values[i], values[i + 1], values[i + 2], values[i + 3]);
    let l0 = -(u - 1.0) * (u - 2.0) * (u - 3.0) / 6.0;
    let l1 = u * (u - 2.0) * (u - 3.0) / 2.0;
    let l2 = -u * (u - 1.0) * (u - 3.0) / 2.0;
    let l3 = u * (u - 1.0) * (u - 2.0) / 6.0;
    y0 * l0 + y1 * l1 + y2 * l2 + y3 * l3
}

/// Numeric Laplace transform over a finite horizon.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaplaceEstimate {
    /// Integral of `f(t) e^{-st}` over `[0, horizon]`.
    pub value: ComplexF,
    /// Bound on the neglected tail `[horizon, inf)`, when the signal carries
    /// an exponential-order bound.
    pub tail_bound: Option<f64>,
}

/// Adaptive-Simpson estimate of `integral_0^horizon f(t) e^{-st} dt` to
/// absolute tolerance `tol`.
pub fn numeric_laplace(
    f: &TimeSignal,
    s: ComplexF,
    horizon: f64,
    tol: f64,
) -> Result<LaplaceEstimate, LaplaceError> {
    if !(horizon > 0.0 && horizon.is_finite()) {
        return Err(LaplaceError::InvalidArgument("horizon must be positive and finite"));
    }
    if !(tol > 0.0) {
        return Err(LaplaceError::InvalidArgument("quadrature tolerance must be positive"));
    }
    if !(s.re.is_finite() && s.im.is_finite()) {
        return Err(LaplaceError::InvalidArgument("Laplace variable must be finite"));
    }
    let tail_bound = match f.bound {
        Some(b) if s.re <= b.a => {
            return Err(LaplaceError::TailUnbounded { re_s: s.re, a: b.a });
        }
        Some(b) => Some(b.m * ((b.a - s.re) * horizon).exp() / (s.re - b.a)),
        None => None,
    };
    let integrand = |t: f64| (-s * t).exp() * f.eval(t);
    let value = adaptive_simpson(integrand, 0.0, horizon, &SimpsonConfig::with_tol(tol))?;
    Ok(LaplaceEstimate { value, tail_bound })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExpOrderCheck {
    pub holds_on_grid: bool,
    /// First grid point where `|f(t)| > M e^{at}`.
    pub witness: Option<f64>,
    pub samples: usize,
}

impl ExpOrderCheck {
    /// Always false: only finitely many points are sampled.
    pub fn exhaustive(&self) -> bool {
        false
    }
}

/// Samples `|f(t)| <= M e^{at}` on a uniform grid over `[0, grid_max]`.
pub fn exp_order_check(
    f: &TimeSignal,
    bound: &ExpOrderBound,
    grid_max: f64,
    grid_n: usize,
) -> Result<ExpOrderCheck, LaplaceError> {
    if grid_n < 2 || !(grid_max > 0.0 && grid_max.is_finite()) {
        return Err(LaplaceError::InvalidArgument("grid needs at least two points and a positive extent"));
    }
    let step = grid_max / (grid_n - 1) as f64;
    let witness = (0..grid_n).map(|i| i as f64 * step).find(|&t| {
        let value = f.eval(t).abs();
        let limit = bound.at(t);
        // One part in 1e12 of slack absorbs rounding when f sits on the bound.
        !(value <= limit * (1.0 + 1e-12))
    });
    Ok(ExpOrderCheck {
        holds_on_grid: witness.is_none(),
        witness,
        samples: grid_n,
    })
}

#[cfg(test)]
fn real(x: f64) -> ComplexF {
    ComplexF::new(x, 0.0)
}
