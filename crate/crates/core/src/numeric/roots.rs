use std::cmp::Ordering;

use num_complex::Complex;
use num_traits::Float;
use thiserror::Error;

pub const DEFAULT_ROOT_TOL: f64 = 1e-12;
pub const DEFAULT_MAX_ITERATIONS: usize = 200;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RootError {
    #[error("polynomial has degree zero and no roots")]
    DegreeZero,
    #[error("leading coefficient is zero")]
    ZeroLeading,
    #[error("root iteration did not converge after {0} iterations")]
    NoConvergence(usize),
    #[error("non-finite coefficient")]
    NonFinite,
}

/// Simultaneous Durand–Kerner (Weierstrass) iteration on a polynomial given
/// by ascending coefficients.
///
/// Starting points lie on a circle of radius `1 + max |c_k / c_n|` (a bound
/// on every root modulus), equally spaced and rotated by 0.4 rad. The
/// iteration stops once every correction is below `tol` relative to the
/// current root estimate.
pub fn durand_kerner<F: Float>(
    coeffs: &[F],
    tol: F,
    max_iterations: usize,
) -> Result<Vec<Complex<F>>, RootError> {
    let n = coeffs.len().saturating_sub(1);
    if n == 0 {
        return Err(RootError::DegreeZero);
    }
    if coeffs.iter().any(|c| !c.is_finite()) {
        return Err(RootError::NonFinite);
    }
    let lead = coeffs[n];
    if lead.is_zero() {
        return Err(RootError::ZeroLeading);
    }
    let monic: Vec<F> = coeffs.iter().map(|&c| c / lead).collect();

    let radius = F::one()
        + monic[..n]
            .iter()
            .fold(F::zero(), |acc, c| acc.max(c.abs()));
    let two_pi = F::from(std::f64::consts::TAU).unwrap();
    let rotation = F::from(0.4).unwrap();
    let mut z: Vec<Complex<F>> = (0..n)
        .map(|k| {
            let angle = two_pi * F::from(k).unwrap() / F::from(n).unwrap() + rotation;
            Complex::from_polar(radius, angle)
        })
        .collect();

    let eval = |s: Complex<F>| {
        monic
            .iter()
            .rev()
            .fold(Complex::new(F::zero(), F::zero()), |acc, &c| acc * s + c)
    };

    for _ in 0..max_iterations {
        let mut converged = true;
        for i in 0..n {
            let mut denom = Complex::new(F::one(), F::zero());
            for j in 0..n {
                if i != j {
                    denom = denom * (z[i] - z[j]);
                }
            }
            if denom.norm().is_zero() {
                // Coincident estimates; nudge apart and keep iterating.
                z[i] = z[i] + Complex::new(tol, tol) * (F::one() + z[i].norm());
                converged = false;
                continue;
            }
            let delta = eval(z[i]) / denom;
            if !(delta.re.is_finite() && delta.im.is_finite()) {
                return Err(RootError::NonFinite);
            }
            z[i] = z[i] - delta;
            if delta.norm() > tol * z[i].norm() {
                converged = false;
            }
        }
        if converged {
            sort_roots(&mut z);
            return Ok(z);
        }
    }
    Err(RootError::NoConvergence(max_iterations))
}

/// Orders roots by real part, then imaginary part.
pub fn sort_roots<F: Float>(roots: &mut [Complex<F>]) {
    roots.sort_by(|a, b| {
        a.re.partial_cmp(&b.re)
            .unwrap_or(Ordering::Equal)
            .then(a.im.partial_cmp(&b.im).unwrap_or(Ordering::Equal))
    });
}
