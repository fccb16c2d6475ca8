use num_complex::Complex;
use num_traits::Float;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuadratureError {
    #[error("adaptive Simpson did not reach tolerance on [{a}, {b}] at depth {depth}")]
    NotConverged { a: f64, b: f64, depth: u32 },
    #[error("integrand is not finite at t = {0}")]
    NonFinite(f64),
    #[error("invalid integration interval")]
    InvalidInterval,
}

#[derive(Debug, Clone, Copy)]
pub struct SimpsonConfig<F> {
    /// Absolute error target for the whole interval.
    pub tol: F,
    pub max_depth: u32,
    /// Equal-width panels refined independently; guards against the
    /// coarse first estimate missing a narrow feature.
    pub panels: usize,
}

impl<F: Float> SimpsonConfig<F> {
    pub fn with_tol(tol: F) -> Self {
        Self {
            tol,
            max_depth: 48,
            panels: 64,
        }
    }
}

struct Segment<F> {
    a: F,
    b: F,
    fa: Complex<F>,
    fm: Complex<F>,
    fb: Complex<F>,
    whole: Complex<F>,
}

fn simpson<F: Float>(a: F, b: F, fa: Complex<F>, fm: Complex<F>, fb: Complex<F>) -> Complex<F> {
    let six = F::from(6.0).unwrap();
    let four = F::from(4.0).unwrap();
    (fa + fm * four + fb) * ((b - a) / six)
}

/// Adaptive Simpson quadrature of a complex-valued integrand on `[a, b]`.
pub fn adaptive_simpson<F, G>(
    integrand: G,
    a: F,
    b: F,
    config: &SimpsonConfig<F>,
) -> Result<Complex<F>, QuadratureError>
where
    F: Float,
    G: Fn(F) -> Complex<F>,
{
    if !(a.is_finite() && b.is_finite()) || b < a || config.panels == 0 {
        return Err(QuadratureError::InvalidInterval);
    }
    let eval = |t: F| {
        let v = integrand(t);
        if v.re.is_finite() && v.im.is_finite() {
            Ok(v)
        } else {
            Err(QuadratureError::NonFinite(t.to_f64().unwrap_or(f64::NAN)))
        }
    };
    let two = F::from(2.0).unwrap();
    let panels = F::from(config.panels).unwrap();
    let width = (b - a) / panels;
    let panel_tol = config.tol / panels;

    let mut total = Complex::new(F::zero(), F::zero());
    let mut left = a;
    let mut f_left = eval(a)?;
    for k in 1..=config.panels {
        let right = if k == config.panels {
            b
        } else {
            a + width * F::from(k).unwrap()
        };
        let mid = (left + right) / two;
        let f_mid = eval(mid)?;
        let f_right = eval(right)?;
        let seg = Segment {
            a: left,
            b: right,
            fa: f_left,
            fm: f_mid,
            fb: f_right,
            whole: simpson(left, right, f_left, f_mid, f_right),
        };
        total = total + refine(&eval, seg, panel_tol, config.max_depth, 0)?;
        left = right;
        f_left = f_right;
    }
    Ok(total)
}

fn refine<F, E>(
    eval: &E,
    seg: Segment<F>,
    tol: F,
    max_depth: u32,
    depth: u32,
) -> Result<Complex<F>, QuadratureError>
where
    F: Float,
    E: Fn(F) -> Result<Complex<F>, QuadratureError>,
{
    let two = F::from(2.0).unwrap();
    let fifteen = F::from(15.0).unwrap();
    let m = (seg.a + seg.b) / two;
    let lm = (seg.a + m) / two;
    let rm = (m + seg.b) / two;
    let f_lm = eval(lm)?;
    let f_rm = eval(rm)?;
    let left = simpson(seg.a, m, seg.fa, f_lm, seg.fm);
    let right = simpson(m, seg.b, seg.fm, f_rm, seg.fb);
    let halves = left + right;
    let diff = halves - seg.whole;

    let roundoff = F::from(64.0).unwrap() * F::epsilon() * halves.norm();
    if diff.norm() <= fifteen * tol.max(roundoff) {
        return Ok(halves + diff / fifteen);
    }
    if depth >= max_depth || lm <= seg.a || rm >= seg.b {
        return Err(QuadratureError::NotConverged {
            a: seg.a.to_f64().unwrap_or(f64::NAN),
            b: seg.b.to_f64().unwrap_or(f64::NAN),
            depth,
        });
    }
    let half_tol = tol / two;
    let l = refine(
        eval,
        Segment { a: seg.a, b: m, fa: seg.fa, fm: f_lm, fb: seg.fm, whole: left },
        half_tol,
        max_depth,
        depth + 1,
    )?;
    let r = refine(
        eval,
        Segment { a: m, b: seg.b, fa: seg.fm, fm: f_rm, fb: seg.fb, whole: right },
        half_tol,
        max_depth,
        depth + 1,
    )?;
    Ok(l + r)
}
