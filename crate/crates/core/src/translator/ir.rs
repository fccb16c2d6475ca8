//! Intermediate representation and the optimizer pass.

use std::fmt;

use crate::exactnum::{format_numeral, ExactScalar};
use crate::poly::{Poly, PolyError, TransferFunction};

/// How a coefficient is written as a HOL real literal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LiteralForm {
    /// `&n`
    Integer,
    /// `#d.ddd`
    Decimal,
    /// `&p / &q`, for values with no terminating decimal expansion.
    Fraction,
}

impl LiteralForm {
    pub fn classify(value: &ExactScalar) -> Self {
        if value.is_integer() {
            Self::Integer
        } else if crate::exactnum::is_terminating(value) {
            Self::Decimal
        } else {
            Self::Fraction
        }
    }
}

#[derive(Debug, Clone)]
pub struct IrCoeff {
    pub value: ExactScalar,
    /// Text as it appeared in the source document.
    pub source: String,
    /// Set by [`optimize_ir`].
    pub form: Option<LiteralForm>,
}

impl IrCoeff {
    pub fn new(value: ExactScalar, source: impl Into<String>) -> Self {
        Self {
            value,
            source: source.into(),
            form: None,
        }
    }

    /// A coefficient whose source text is its standard form.
    pub fn from_value(value: ExactScalar) -> Self {
        let source = format_numeral(&value);
        Self::new(value, source)
    }
}

/// Exact coefficients of one transfer function, ascending by power of `s`.
///
/// Equality compares the name and the exact values; source text and
/// literal classification are bookkeeping.
#[derive(Debug, Clone)]
pub struct CoeffIR {
    pub name: String,
    pub num: Vec<IrCoeff>,
    pub den: Vec<IrCoeff>,
}

impl PartialEq for CoeffIR {
    fn eq(&self, other: &Self) -> bool {
        let values = |v: &[IrCoeff]| v.iter().map(|c| c.value.clone()).collect::<Vec<_>>();
        self.name == other.name
            && values(&self.num) == values(&other.num)
            && values(&self.den) == values(&other.den)
    }
}

impl CoeffIR {
    /// Builds an IR from ascending value lists, sanitizing the name.
    pub fn from_values(name: &str, num: Vec<ExactScalar>, den: Vec<ExactScalar>) -> Self {
        Self {
            name: sanitize_name(name),
            num: num.into_iter().map(IrCoeff::from_value).collect(),
            den: den.into_iter().map(IrCoeff::from_value).collect(),
        }
    }

    pub fn from_tf(name: &str, tf: &TransferFunction<ExactScalar>) -> Self {
        Self::from_values(name, tf.num().coeffs().to_vec(), tf.den().coeffs().to_vec())
    }

    pub fn num_values(&self) -> Vec<ExactScalar> {
        self.num.iter().map(|c| c.value.clone()).collect()
    }

    pub fn den_values(&self) -> Vec<ExactScalar> {
        self.den.iter().map(|c| c.value.clone()).collect()
    }

    /// Degree of the numerator list (its length minus one).
    pub fn num_order(&self) -> usize {
        self.num.len().saturating_sub(1)
    }

    pub fn den_order(&self) -> usize {
        self.den.len().saturating_sub(1)
    }

    pub fn to_tf(&self) -> Result<TransferFunction<ExactScalar>, PolyError> {
        TransferFunction::new(Poly::new(self.num_values()), Poly::new(self.den_values()))
    }

    pub fn is_optimized(&self) -> bool {
        self.num.iter().chain(&self.den).all(|c| c.form.is_some())
    }
}

impl fmt::Display for CoeffIR {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[IrCoeff]| v.iter().map(|c| format_numeral(&c.value)).collect::<Vec<_>>().join("; ");
        write!(f, "{}: num [{}] den [{}] (ascending)", self.name, list(&self.num), list(&self.den))
    }
}

/// Classifies every coefficient as integer, decimal or fraction. The value
/// is already exact, so scientific notation needs no separate expansion:
/// the literal is rendered from the value, never from the source text.
pub fn optimize_ir(ir: CoeffIR) -> CoeffIR {
    let classify = |mut c: IrCoeff| {
        c.form = Some(LiteralForm::classify(&c.value));
        c
    };
    CoeffIR {
        name: ir.name,
        num: ir.num.into_iter().map(classify).collect(),
        den: ir.den.into_iter().map(classify).collect(),
    }
}

/// Replaces characters outside `[A-Za-z0-9_]` with `_` and prefixes a
/// leading digit with `f_`.
pub fn sanitize_name(name: &str) -> String {
    let mut out: String = name
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '_' { c } else { '_' })
        .collect();
    if out.is_empty() {
        out.push_str("unnamed");
    }
    if out.starts_with(|c: char| c.is_ascii_digit()) {
        out.insert_str(0, "f_");
    }
    out
}
