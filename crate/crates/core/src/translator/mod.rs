//! XML transfer-function descriptions to HOL Light scripts.
//!
//! Pipeline: [`parse_xml`] produces a [`CoeffIR`], [`optimize_ir`] picks the
//! literal form of every coefficient, and the code generator emits the
//! definitions and theorem statements.

mod codegen;
mod ir;
mod xml;

use thiserror::Error;

use crate::exactnum::ExactError;

pub use codegen::{
    extract_cx_literals, gen_definitions, gen_script, gen_theorem, gen_theorem_with, hol_polynomial,
    CodegenOptions, HolScript, PowerSyntax, ScriptKind, TheoremSelection,
};
pub use ir::{optimize_ir, sanitize_name, CoeffIR, IrCoeff, LiteralForm};
pub use xml::{parse_xml, print_xml, SCHEMA_VERSION};

#[derive(Debug, Error)]
pub enum TranslateError {
    #[error("malformed XML: {0}")]
    MalformedXml(String),
    #[error("schema violation at {path}: {reason}")]
    SchemaViolation { path: String, reason: String },
    #[error("malformed number {text:?} at {path}: {source}")]
    MalformedNumber {
        path: String,
        text: String,
        #[source]
        source: ExactError,
    },
}

/// Parses, optimizes and generates in one step.
pub fn translate(
    doc: &[u8],
    selection: TheoremSelection,
    options: &CodegenOptions,
) -> Result<String, TranslateError> {
    let ir = optimize_ir(parse_xml(doc)?);
    Ok(gen_script(&ir, selection, options))
}
