//! Code generator: HOL Light definitions and correspondence theorems.

use std::fmt::Write as _;

use num_traits::{One, Zero};

use super::ir::{CoeffIR, IrCoeff, LiteralForm};
use crate::exactnum::format_hol_literal;
use crate::laplace::TheoremTemplate;

/// How powers of `s` are written in generated terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PowerSyntax {
    /// `s^2`, as the theorems are usually typeset.
    #[default]
    Caret,
    /// `s pow 2`, the HOL Light operator.
    HolPow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CodegenOptions {
    pub power: PowerSyntax,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScriptKind {
    Definitions,
    TheoremTf,
    TheoremOde,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HolScript {
    pub text: String,
    pub kind: ScriptKind,
}

/// `Cx (<literal>)`; rendered from the exact value, so no digits are lost.
fn cx(c: &IrCoeff) -> String {
    format!("Cx ({})", format_hol_literal(&c.value))
}

fn power(k: usize, syntax: PowerSyntax) -> String {
    match (k, syntax) {
        (1, _) => "s".to_string(),
        (k, PowerSyntax::Caret) => format!("s^{k}"),
        (k, PowerSyntax::HolPow) => format!("s pow {k}"),
    }
}

/// Ascending coefficients as a polynomial in `s`, leading power first.
/// Unit coefficients of positive powers are omitted and zero terms skipped.
pub fn hol_polynomial(coeffs: &[IrCoeff], syntax: PowerSyntax) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, c)| !c.value.is_zero())
        .map(|(k, c)| match k {
            0 => cx(c),
            k if c.value.is_one() => power(k, syntax),
            k => format!("{} * {}", cx(c), power(k, syntax)),
        })
        .collect();
    if terms.is_empty() {
        "Cx (&0)".to_string()
    } else {
        terms.join(" + ")
    }
}

fn grouped(coeffs: &[IrCoeff], syntax: PowerSyntax) -> String {
    let poly = hol_polynomial(coeffs, syntax);
    if poly.contains(" + ") || poly.contains(" * ") {
        format!("({poly})")
    } else {
        poly
    }
}

fn hol_list(coeffs: &[IrCoeff]) -> String {
    let items: Vec<String> = coeffs.iter().map(cx).collect();
    format!("[{}]", items.join("; "))
}

struct Names {
    inlst: String,
    outlst: String,
    diff_eq: String,
}

impl Names {
    fn new(name: &str) -> Self {
        Self {
            inlst: format!("inlst_{name}"),
            outlst: format!("outlst_{name}"),
            diff_eq: format!("diff_eq_{name}"),
        }
    }

    fn thm_args(&self) -> String {
        format!(
            "[{}; {}; {}]",
            self.diff_eq.to_ascii_uppercase(),
            self.inlst.to_ascii_uppercase(),
            self.outlst.to_ascii_uppercase()
        )
    }
}

/// The two coefficient lists and the differential-equation predicate.
pub fn gen_definitions(ir: &CoeffIR) -> HolScript {
    let names = Names::new(&ir.name);
    let mut text = String::new();
    for (name, list) in [(&names.inlst, &ir.num), (&names.outlst, &ir.den)] {
        let _ = writeln!(
            text,
            "let {} = new_definition\n `{} = {}`;;\n",
            name.to_ascii_uppercase(),
            name,
            hol_list(list)
        );
    }
    let _ = writeln!(
        text,
        "let {} = new_definition\n `{} VI V0 t <=>\n    diff_eq_n_order {} {} V0 t = diff_eq_n_order {} {} VI t`;;",
        names.diff_eq.to_ascii_uppercase(),
        names.diff_eq,
        ir.den_order(),
        names.outlst,
        ir.num_order(),
        names.inlst
    );
    HolScript {
        text,
        kind: ScriptKind::Definitions,
    }
}

pub fn gen_theorem(ir: &CoeffIR, direction: TheoremTemplate) -> HolScript {
    gen_theorem_with(ir, direction, &CodegenOptions::default())
}

pub fn gen_theorem_with(ir: &CoeffIR, direction: TheoremTemplate, options: &CodegenOptions) -> HolScript {
    let names = Names::new(&ir.name);
    let (n, m) = (ir.den_order(), ir.num_order());
    let den = hol_polynomial(&ir.den, options.power);
    let ratio = format!(
        "{} /\n         {}",
        grouped(&ir.num, options.power),
        grouped(&ir.den, options.power)
    );
    let zero_init = match n {
        0 => "T".to_string(),
        n => format!("zero_init_conditions {} V0", n - 1),
    };
    let transforms = "laplace_transform V0 s / laplace_transform VI s";

    let (thm_name, var, hyps, conclusion, kind) = match direction {
        TheoremTemplate::TfFromOde => (
            "TRANSFER_FUNCTION",
            "s",
            vec![
                format!("(!t. differentiable_higher_deriv {m} VI t)"),
                format!("(!t. differentiable_higher_deriv {n} V0 t)"),
                zero_init,
                "~(laplace_transform VI s = Cx (&0))".to_string(),
                format!("~({den} = Cx (&0))"),
                format!("laplace_exists_higher_deriv {m} VI s"),
                format!("laplace_exists_higher_deriv {n} V0 s"),
                format!("(!t. {} VI V0 t)", names.diff_eq),
            ],
            format!("{transforms} =\n         {ratio}"),
            ScriptKind::TheoremTf,
        ),
        TheoremTemplate::OdeFromTf => (
            "DIFF_EQ",
            "r",
            vec![
                format!("(!t. differentiable_higher_deriv {m} VI t)"),
                format!("(!t. differentiable_higher_deriv {n} V0 t)"),
                zero_init,
                format!("(!s. Re r <= Re s ==> ~({den} = Cx (&0)))"),
                "(!s. Re r <= Re s ==> ~(laplace_transform VI s = Cx (&0)))".to_string(),
                "&0 < Re r".to_string(),
                format!("(!s. Re r <= Re s ==> laplace_exists_higher_deriv {m} VI s)"),
                format!("(!s. Re r <= Re s ==> laplace_exists_higher_deriv {n} V0 s)"),
                format!("(!s. Re r <= Re s ==>\n          {transforms} =\n         {ratio})"),
            ],
            format!("(!t. &0 <= drop t ==> {} VI V0 t)", names.diff_eq),
            ScriptKind::TheoremOde,
        ),
    };

    let mut text = String::new();
    let _ = writeln!(text, "(* Hypotheses A1-A{} in order. *)", hyps.len());
    let _ = writeln!(
        text,
        "let {}_{} = prove\n (`!VI V0 {}.\n     {}\n     ==> {}`,",
        ir.name.to_ascii_uppercase(),
        thm_name,
        var,
        hyps.join(" /\\\n     "),
        conclusion
    );
    let _ = writeln!(text, "  {} {});;", direction.tactic(), names.thm_args());
    HolScript { text, kind }
}

/// Which theorems a translation emits alongside the definitions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TheoremSelection {
    None,
    Tf,
    Ode,
    #[default]
    Both,
}

/// Header, definitions and the selected theorems as one `.ml` file.
pub fn gen_script(ir: &CoeffIR, selection: TheoremSelection, options: &CodegenOptions) -> String {
    let mut parts = vec![header(ir)];
    parts.push(gen_definitions(ir).text);
    let theorems: &[TheoremTemplate] = match selection {
        TheoremSelection::None => &[],
        TheoremSelection::Tf => &[TheoremTemplate::TfFromOde],
        TheoremSelection::Ode => &[TheoremTemplate::OdeFromTf],
        TheoremSelection::Both => &[TheoremTemplate::TfFromOde, TheoremTemplate::OdeFromTf],
    };
    for &t in theorems {
        parts.push(gen_theorem_with(ir, t, options).text);
    }
    parts.join("\n")
}

fn header(ir: &CoeffIR) -> String {
    let mut text = format!("(* Generated by fasim from transfer function {}. *)\n", ir.name);
    let has_fraction = ir
        .num
        .iter()
        .chain(&ir.den)
        .any(|c| LiteralForm::classify(&c.value) == LiteralForm::Fraction);
    if has_fraction {
        text.push_str("(* Coefficients without a terminating decimal expansion are written &p / &q. *)\n");
    }
    text
}

/// Every `Cx (...)` argument in `text`, with balanced parentheses.
pub fn extract_cx_literals(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut rest = text;
    while let Some(start) = rest.find("Cx (") {
        let body = &rest[start + 4..];
        let mut depth = 1usize;
        let mut end = None;
        for (i, ch) in body.char_indices() {
            match ch {
                '(' => depth += 1,
                ')' => {
                    depth -= 1;
                    if depth == 0 {
                        end = Some(i);
                        break;
                    }
                }
                _ => {}
            }
        }
        match end {
            Some(i) => {
                out.push(body[..i].to_string());
                rest = &body[i + 1..];
            }
            None => break,
        }
    }
    out
}
