//! JSON file format for linear ODEs.
//!
//! ```json
//! {
//!   "out_coeffs": ["3906249999.75586", "62500.0000039063", "1"],
//!   "in_coeffs": ["7812500000.48828"]
//! }
//! ```
//!
//! Lists are ascending by derivative order. Values are exact numerals
//! (decimal, scientific or `p/q`) given as strings; JSON numbers are accepted
//! too but pass through binary64 first. An optional `initial_conditions` list
//! must be all zero.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::exactnum::{format_numeral, parse_numeral, ExactError, ExactScalar};
use crate::laplace::{LaplaceError, LinearOde};
use num_traits::Zero;

#[derive(Debug, Error)]
pub enum OdeFileError {
    #[error("invalid ODE file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("bad coefficient {text:?} in {field}[{index}]: {source}")]
    Number {
        field: &'static str,
        index: usize,
        text: String,
        #[source]
        source: ExactError,
    },
    #[error("{field}[{index}] must be a string or number")]
    NotANumber { field: &'static str, index: usize },
    #[error("nonzero initial condition at index {0}; only zero initial conditions are supported")]
    NonzeroInitialCondition(usize),
    #[error(transparent)]
    Ode(#[from] LaplaceError),
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawOde {
    out_coeffs: Vec<Value>,
    in_coeffs: Vec<Value>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    initial_conditions: Vec<Value>,
}

fn values(field: &'static str, raw: &[Value]) -> Result<Vec<ExactScalar>, OdeFileError> {
    raw.iter()
        .enumerate()
        .map(|(index, v)| {
            let text = match v {
                Value::String(s) => s.clone(),
                Value::Number(n) => n.to_string(),
                _ => return Err(OdeFileError::NotANumber { field, index }),
            };
            parse_numeral(text.trim()).map_err(|source| OdeFileError::Number {
                field,
                index,
                text,
                source,
            })
        })
        .collect()
}

pub fn parse_ode_json(text: &str) -> Result<LinearOde<ExactScalar>, OdeFileError> {
    let raw: RawOde = serde_json::from_str(text)?;
    let init = values("initial_conditions", &raw.initial_conditions)?;
    if let Some(k) = init.iter().position(|v| !v.is_zero()) {
        return Err(OdeFileError::NonzeroInitialCondition(k));
    }
    let out = values("out_coeffs", &raw.out_coeffs)?;
    let inp = values("in_coeffs", &raw.in_coeffs)?;
    Ok(LinearOde::new(out, inp)?)
}

/// Pretty-printed with two-space indent and a trailing newline.
pub fn ode_to_json(ode: &LinearOde<ExactScalar>) -> String {
    let list = |c: &[ExactScalar]| c.iter().map(|v| Value::String(format_numeral(v))).collect();
    let raw = RawOde {
        out_coeffs: list(ode.out_coeffs()),
        in_coeffs: list(ode.in_coeffs()),
        initial_conditions: Vec::new(),
    };
    let mut text = serde_json::to_string_pretty(&raw).expect("plain JSON values serialize");
    text.push('\n');
    text
}
