//! Exact rational scalars and their text forms.
//!
//! Every coefficient that enters the toolchain is held as a reduced
//! [`BigRational`]. Decimal and scientific numerals are converted digit by
//! digit, so no binary floating-point value is ever involved between the
//! source text and the stored rational.
//!
//! Two text grammars are handled here:
//!
//! * decimal numerals `[+-]?digits[.digits]?([eE][+-]?digits)?` as written by
//!   simulation tools, plus the exact fraction form `[+-]?digits/digits` used
//!   when a value has no terminating decimal expansion;
//! * HOL Light real literals: `&n` for integers, `#d.ddd` for terminating
//!   decimals, `&p / &q` for every other rational and `--(lit)` for
//!   negatives.

use std::cmp::Ordering;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Arbitrary-precision rational; always stored in lowest terms with a
/// positive denominator.
pub type ExactScalar = BigRational;

/// Largest decimal exponent accepted by [`parse_decimal`].
pub const MAX_DECIMAL_EXPONENT: i64 = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("empty numeric literal")]
    EmptyInput,
    #[error("malformed number {text:?}: {reason}")]
    MalformedNumber { text: String, reason: &'static str },
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} does not fit in a binary64 float")]
    Overflow(String),
}

fn malformed(text: &str, reason: &'static str) -> ExactError {
    ExactError::MalformedNumber {
        text: text.to_string(),
        reason,
    }
}

/// Parses a decimal or scientific numeral into an exact rational.
///
/// ```
/// use fasim_core::exactnum::{parse_decimal, format_decimal};
/// let x = parse_decimal("7.813e9").unwrap();
/// assert_eq!(format_decimal(&x).unwrap(), "7813000000");
/// ```
pub fn parse_decimal(text: &str) -> Result<ExactScalar, ExactError> {
    if text.is_empty() {
        return Err(ExactError::EmptyInput);
    }
    let bytes = text.as_bytes();
    let mut pos = 0;

    let negative = match bytes[0] {
        b'+' => {
            pos += 1;
            false
        }
        b'-' => {
            pos += 1;
            true
        }
        _ => false,
    };

    let int_start = pos;
    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
        pos += 1;
    }
    let int_digits = &text[int_start..pos];
    if int_digits.is_empty() {
        return Err(malformed(text, "expected a digit"));
    }

    let mut frac_digits = "";
    if pos < bytes.len() && bytes[pos] == b'.' {
        pos += 1;
        let frac_start = pos;
        while pos < bytes.len() && bytes[pos].is_ascii_digit() {
            pos += 1;
        }
        frac_digits = &text[frac_start..pos];
        if frac_digits.is_empty() {
            return Err(malformed(text, "expected a digit after the decimal point"));
        }
    }

    let mut exponent: i64 = 0;
    if pos < bytes.len() && (bytes[pos] == b'e' || bytes[pos] == b'E') {
        pos += 1;
        let mut exp_negative = false;
        if pos < bytes.len() && (bytes[pos] == b'+' || bytes[pos] == b'-') {
            exp_negative = bytes[pos] == b'-';
            pos += 1;
        }
        let exp_start = pos;
        while pos < bytes.len() && bytes[pos].is_ascii_digit() {
            pos += 1;
        }
        let exp_digits = &text[exp_start..pos];
        if exp_digits.is_empty() {
            return Err(malformed(text, "expected exponent digits"));
        }
        let magnitude = exp_digits
            .parse::<i64>()
            .ok()
            .filter(|e| *e <= MAX_DECIMAL_EXPONENT)
            .ok_or_else(|| malformed(text, "exponent out of range"))?;
        exponent = if exp_negative { -magnitude } else { magnitude };
    }

    if pos != bytes.len() {
        return Err(malformed(text, "unexpected trailing characters"));
    }

    let mut digits = String::with_capacity(int_digits.len() + frac_digits.len());
    digits.push_str(int_digits);
    digits.push_str(frac_digits);
    let mut mantissa: BigInt = digits.parse().expect("digit string");
    if negative {
        mantissa = -mantissa;
    }

    let scale = exponent - frac_digits.len() as i64;
    let value = if scale >= 0 {
        BigRational::from_integer(mantissa * pow10(scale as u64))
    } else {
        BigRational::new(mantissa, pow10(scale.unsigned_abs()))
    };
    Ok(value)
}

/// Parses either a decimal numeral or an exact fraction `p/q`.
///
/// This is the numeral grammar of `<coeff>` elements and of coefficient
/// files; fractions appear when a coefficient has no terminating decimal.
pub fn parse_numeral(text: &str) -> Result<ExactScalar, ExactError> {
    match text.split_once('/') {
        None => parse_decimal(text),
        Some((p, q)) => {
            let p = p.trim();
            let q = q.trim();
            if p.is_empty() || q.is_empty() {
                return Err(malformed(text, "fraction needs a numerator and a denominator"));
            }
            let num = parse_integer(p).ok_or_else(|| malformed(text, "fraction numerator is not an integer"))?;
            if q.starts_with(['+', '-']) {
                return Err(malformed(text, "fraction denominator must be unsigned"));
            }
            let den = parse_integer(q).ok_or_else(|| malformed(text, "fraction denominator is not an integer"))?;
            if den.is_zero() {
                return Err(ExactError::DivisionByZero);
            }
            Ok(BigRational::new(num, den))
        }
    }
}

fn parse_integer(text: &str) -> Option<BigInt> {
    let digits = text.strip_prefix(['+', '-']).unwrap_or(text);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    text.parse().ok()
}

fn pow10(exp: u64) -> BigInt {
    num_traits::pow(BigInt::from(10u8), exp as usize)
}

/// Number of decimal places needed to write `x` exactly, or `None` when the
/// reduced denominator has a prime factor other than 2 and 5.
pub fn decimal_places(x: &ExactScalar) -> Option<u64> {
    let mut den = x.denom().clone();
    let two = BigInt::from(2u8);
    let five = BigInt::from(5u8);
    let mut twos = 0u64;
    let mut fives = 0u64;
    while den.is_even() {
        den /= &two;
        twos += 1;
    }
    while (&den % &five).is_zero() {
        den /= &five;
        fives += 1;
    }
    den.is_one().then_some(twos.max(fives))
}

pub fn is_terminating(x: &ExactScalar) -> bool {
    decimal_places(x).is_some()
}

/// Standard-form decimal text for `x` (no exponent, no trailing fractional
/// zeros, no point for integers), or `None` when the expansion does not
/// terminate.
pub fn format_decimal(x: &ExactScalar) -> Option<String> {
    let places = decimal_places(x)?;
    let scaled = x.numer() * (pow10(places) / x.denom());
    let negative = scaled.sign() == Sign::Minus;
    let mut digits = scaled.abs().to_string();

    let places = places as usize;
    let mut out = String::with_capacity(digits.len() + 3);
    if negative {
        out.push('-');
    }
    if places == 0 {
        out.push_str(&digits);
        return Some(out);
    }
    if digits.len() <= places {
        digits = "0".repeat(places + 1 - digits.len()) + &digits;
    }
    let (int_part, frac_part) = digits.split_at(digits.len() - places);
    let frac_part = frac_part.trim_end_matches('0');
    out.push_str(int_part);
    if !frac_part.is_empty() {
        out.push('.');
        out.push_str(frac_part);
    }
    Some(out)
}

/// Standard form used in coefficient documents: the decimal expansion when it
/// terminates, `p/q` otherwise.
pub fn format_numeral(x: &ExactScalar) -> String {
    format_decimal(x).unwrap_or_else(|| format!("{}/{}", x.numer(), x.denom()))
}

/// Renders `x` as a HOL Light real literal.
pub fn format_hol_literal(x: &ExactScalar) -> String {
    if x.is_negative() {
        return format!("--({})", format_hol_literal(&-x));
    }
    if x.is_integer() {
        return format!("&{}", x.numer());
    }
    match format_decimal(x) {
        Some(decimal) => format!("#{decimal}"),
        None => format!("&{} / &{}", x.numer(), x.denom()),
    }
}

/// Inverse of [`format_hol_literal`].
pub fn parse_hol_literal(text: &str) -> Result<ExactScalar, ExactError> {
    if text.is_empty() {
        return Err(ExactError::EmptyInput);
    }
    if let Some(inner) = text.strip_prefix("--(") {
        let inner = inner
            .strip_suffix(')')
            .ok_or_else(|| malformed(text, "unbalanced negation"))?;
        return Ok(-parse_hol_literal(inner)?);
    }
    if let Some(decimal) = text.strip_prefix('#') {
        if decimal.starts_with(['+', '-']) || decimal.contains(['e', 'E']) {
            return Err(malformed(text, "HOL decimal must be unsigned standard form"));
        }
        return parse_decimal(decimal);
    }
    let rest = text
        .strip_prefix('&')
        .ok_or_else(|| malformed(text, "HOL literal must start with '&', '#' or '--('"))?;
    let (p, q) = match rest.split_once(" / &") {
        Some((p, q)) => (p, Some(q)),
        None => (rest, None),
    };
    let unsigned = |s: &str| -> Result<BigInt, ExactError> {
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
            return Err(malformed(text, "expected unsigned integer digits"));
        }
        Ok(s.parse().expect("digit string"))
    };
    let num = unsigned(p)?;
    match q {
        None => Ok(BigRational::from_integer(num)),
        Some(q) => {
            let den = unsigned(q)?;
            if den.is_zero() {
                return Err(ExactError::DivisionByZero);
            }
            Ok(BigRational::new(num, den))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    Cmp,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ArithResult {
    Value(ExactScalar),
    Ordering(Ordering),
}

/// Exact field operation on two rationals.
pub fn rational_arith(
    a: &ExactScalar,
    b: &ExactScalar,
    op: ArithOp,
) -> Result<ArithResult, ExactError> {
    let value = match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
        ArithOp::Div => checked_div(a, b)?,
        ArithOp::Cmp => return Ok(ArithResult::Ordering(a.cmp(b))),
    };
    Ok(ArithResult::Value(value))
}

pub fn checked_div(a: &ExactScalar, b: &ExactScalar) -> Result<ExactScalar, ExactError> {
    if b.is_zero() {
        return Err(ExactError::DivisionByZero);
    }
    Ok(a / b)
}

/// Nearest binary64 value (round half to even).
pub fn to_float(x: &ExactScalar) -> Result<f64, ExactError> {
    let value = x.to_f64().unwrap_or(f64::NAN);
    if value.is_finite() {
        Ok(value)
    } else {
        Err(ExactError::Overflow(format_numeral(x)))
    }
}

/// Convenience constructor for integers.
pub fn int(n: i64) -> ExactScalar {
    BigRational::from_integer(BigInt::from(n))
}

/// Convenience constructor for `p/q`. Panics when `q == 0`.
pub fn ratio(p: i64, q: i64) -> ExactScalar {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}
