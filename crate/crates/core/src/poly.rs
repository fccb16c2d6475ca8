//! Dense polynomials in `s` and rational transfer functions.
//!
//! Coefficients are stored in ascending power order: index `k` holds the
//! coefficient of `s^k`. This matches the derivative-order indexing of the
//! ODE coefficient lists; descending lists (the simulation-tool convention)
//! are converted at the boundary with [`Poly::from_descending`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;
use thiserror::Error;

use crate::exactnum::ExactError;
use crate::numeric::{self, ComplexF, RootError};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PolyError {
    #[error(transparent)]
    Conversion(#[from] ExactError),
    #[error(transparent)]
    Roots(#[from] RootError),
    #[error("transfer function denominator is the zero polynomial")]
    ZeroDenominator,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Poly<T> {
    /// Builds a polynomial from ascending coefficients, trimming high-order
    /// zeros. An empty list is the zero polynomial.
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(T::zero());
        }
        Self { coeffs }
    }

    pub fn from_descending(mut coeffs: Vec<T>) -> Self {
        coeffs.reverse();
        Self::new(coeffs)
    }

    pub fn zero() -> Self {
        Self { coeffs: vec![T::zero()] }
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `s^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![T::zero(); k + 1];
        coeffs[k] = T::one();
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn descending(&self) -> Vec<T> {
        self.coeffs.iter().rev().cloned().collect()
    }

    /// Coefficient of `s^k` (zero past the degree).
    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_zero()
    }

    pub fn leading(&self) -> &T {
        self.coeffs.last().expect("non-empty by construction")
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// Multiplies by `s^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![T::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    pub fn derivative(&self) -> Self {
        let mut k = T::zero();
        let coeffs = self
            .coeffs
            .iter()
            .skip(1)
            .map(|c| {
                k = k.clone() + T::one();
                c.clone() * k.clone()
            })
            .collect();
        Self::new(coeffs)
    }

    /// Horner evaluation in the coefficient field.
    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    /// Lowers every coefficient to binary64.
    pub fn to_binary64(&self) -> Result<Poly<f64>, ExactError> {
        let coeffs = self
            .coeffs
            .iter()
            .map(Scalar::to_binary64)
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Poly::new(coeffs))
    }

    /// Horner evaluation at a complex point after converting coefficients
    /// to binary64.
    pub fn eval_complex(&self, s: ComplexF) -> Result<ComplexF, ExactError> {
        let lowered = self.to_binary64()?;
        Ok(horner(lowered.coeffs(), s))
    }

    /// Returns `c` with `self = c * other`, if such a nonzero `c` exists.
    pub fn equal_up_to_scale(&self, other: &Self) -> Option<T> {
        if self.is_zero() || other.is_zero() {
            return (self.is_zero() && other.is_zero()).then(T::one);
        }
        if self.coeffs.len() != other.coeffs.len() {
            return None;
        }
        let pivot = other.coeffs.iter().position(|c| !c.is_zero())?;
        let c = self.coeffs[pivot].clone() / other.coeffs[pivot].clone();
        if c.is_zero() {
            return None;
        }
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .all(|(a, b)| *a == c.clone() * b.clone())
            .then_some(c)
    }

    /// Index of the first coefficient where `self` and `other` differ.
    pub fn first_difference(&self, other: &Self) -> Option<usize> {
        let len = self.coeffs.len().max(other.coeffs.len());
        (0..len).find(|&k| self.coeff(k) != other.coeff(k))
    }

    /// Roots in the complex plane, sorted by (Re, Im).
    ///
    /// Degrees one and two use closed forms evaluated in the coefficient
    /// field, with the conversion to binary64 done last. Higher degrees use
    /// Durand–Kerner with relative tolerance `tol`.
    pub fn roots(&self, tol: f64) -> Result<Vec<ComplexF>, PolyError> {
        let mut roots = match self.degree() {
            0 => return Err(RootError::DegreeZero.into()),
            1 => {
                let r = -(self.coeffs[0].clone() / self.coeffs[1].clone());
                vec![Complex::new(r.to_binary64()?, 0.0)]
            }
            2 => self.quadratic_roots()?,
            _ => {
                let lowered = self.to_binary64()?;
                numeric::durand_kerner(lowered.coeffs(), tol, numeric::DEFAULT_MAX_ITERATIONS)?
            }
        };
        numeric::sort_roots(&mut roots);
        Ok(roots)
    }

    fn quadratic_roots(&self) -> Result<Vec<ComplexF>, PolyError> {
        let c = &self.coeffs[0];
        let b = &self.coeffs[1];
        let a = &self.coeffs[2];
        let two = T::one() + T::one();
        let four = two.clone() + two.clone();
        let disc = b.clone() * b.clone() - four * a.clone() * c.clone();
        let two_a = two * a.clone();

        if disc.is_negative() {
            let re = (-b.clone() / two_a.clone()).to_binary64()?;
            let im = (-disc).to_binary64()?.sqrt() / two_a.abs().to_binary64()?;
            return Ok(vec![Complex::new(re, -im), Complex::new(re, im)]);
        }
        if disc.is_zero() {
            let r = (-b.clone() / two_a).to_binary64()?;
            return Ok(vec![Complex::new(r, 0.0), Complex::new(r, 0.0)]);
        }
        let sd = disc.to_binary64()?.sqrt();
        let (af, bf, cf) = (a.to_binary64()?, b.to_binary64()?, c.to_binary64()?);
        // Cancellation-free form: q = -(b + sign(b) sqrt(disc)) / 2.
        let q = -0.5 * (bf + bf.signum() * sd);
        let q = if bf == 0.0 { -0.5 * sd } else { q };
        Ok(vec![Complex::new(q / af, 0.0), Complex::new(cf / q, 0.0)])
    }
}

pub(crate) fn horner(coeffs: &[f64], s: ComplexF) -> ComplexF {
    coeffs
        .iter()
        .rev()
        .fold(Complex::new(0.0, 0.0), |acc, &c| acc * s + c)
}

impl<T: Scalar> Add for &Poly<T> {
    type Output = Poly<T>;
    fn add(self, rhs: &Poly<T>) -> Poly<T> {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..len).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<T: Scalar> Sub for &Poly<T> {
    type Output = Poly<T>;
    fn sub(self, rhs: &Poly<T>) -> Poly<T> {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..len).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<T: Scalar> Mul for &Poly<T> {
    type Output = Poly<T>;
    fn mul(self, rhs: &Poly<T>) -> Poly<T> {
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }
}

impl<T: Scalar> Neg for &Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl<T: Scalar> $trait for Poly<T> {
            type Output = Poly<T>;
            fn $method(self, rhs: Poly<T>) -> Poly<T> {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl<T: Scalar + fmt::Display> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() && !(self.is_zero() && k == 0) {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*s")?,
                _ => write!(f, "({c})*s^{k}")?,
            }
        }
        Ok(())
    }
}

/// Ratio `num(s) / den(s)` of two polynomials.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TransferFunction<T> {
    num: Poly<T>,
    den: Poly<T>,
}

impl<T: Scalar> TransferFunction<T> {
    pub fn new(num: Poly<T>, den: Poly<T>) -> Result<Self, PolyError> {
        if den.is_zero() {
            return Err(PolyError::ZeroDenominator);
        }
        Ok(Self { num, den })
    }

    pub fn num(&self) -> &Poly<T> {
        &self.num
    }

    pub fn den(&self) -> &Poly<T> {
        &self.den
    }

    /// `deg(num) <= deg(den)`.
    pub fn is_proper(&self) -> bool {
        self.num.is_zero() || self.num.degree() <= self.den.degree()
    }

    pub fn is_strictly_proper(&self) -> bool {
        self.num.is_zero() || self.num.degree() < self.den.degree()
    }

    /// Scales numerator and denominator so the denominator is monic.
    pub fn monic(&self) -> Self {
        let inv = T::one() / self.den.leading().clone();
        Self {
            num: self.num.scale(&inv),
            den: self.den.scale(&inv),
        }
    }

    pub fn eval_complex(&self, s: ComplexF) -> Result<ComplexF, ExactError> {
        Ok(self.num.eval_complex(s)? / self.den.eval_complex(s)?)
    }

    /// Exact rational-function equality by cross-multiplication.
    pub fn same_function(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}
