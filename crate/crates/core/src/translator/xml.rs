//! Coefficient documents: parsing (the parser and IR-generator stages) and
//! canonical printing.
//!
//! ```xml
//! <?xml version="1.0" encoding="UTF-8"?>
//! <fasim version="1">
//!   <transfer_function name="SKLP_filter">
//!     <numerator order="desc">
//!       <coeff>7812500000.48828</coeff>
//!     </numerator>
//!     <denominator order="desc">
//!       <coeff>1</coeff>
//!       <coeff>62500.0000039063</coeff>
//!       <coeff>3906249999.75586</coeff>
//!     </denominator>
//!   </transfer_function>
//! </fasim>
//! ```
//!
//! Lists are written leading power first. Leading numerator zeros (the
//! padding simulation tools add to match the denominator length) are
//! dropped; a leading denominator zero is an error.

use std::fmt::Write as _;

use num_traits::Zero;
use roxmltree::{Document, Node};

use super::ir::{sanitize_name, CoeffIR, IrCoeff};
use super::TranslateError;
use crate::exactnum::{format_numeral, parse_numeral};

pub const SCHEMA_VERSION: &str = "1";

fn violation(path: &str, reason: impl Into<String>) -> TranslateError {
    TranslateError::SchemaViolation {
        path: path.to_string(),
        reason: reason.into(),
    }
}

fn element_children<'a, 'i>(node: Node<'a, 'i>, path: &str) -> Result<Vec<Node<'a, 'i>>, TranslateError> {
    let mut out = Vec::new();
    for child in node.children() {
        if child.is_element() {
            out.push(child);
        } else if child.is_text() && !child.text().unwrap_or("").trim().is_empty() {
            return Err(violation(path, "unexpected text content"));
        }
    }
    Ok(out)
}

fn only_attributes(node: Node, allowed: &[&str], path: &str) -> Result<(), TranslateError> {
    match node.attributes().find(|a| !allowed.contains(&a.name())) {
        Some(a) => Err(violation(path, format!("unexpected attribute {:?}", a.name()))),
        None => Ok(()),
    }
}

/// Parses a coefficient document into an ascending-order IR.
pub fn parse_xml(doc: &[u8]) -> Result<CoeffIR, TranslateError> {
    let text = std::str::from_utf8(doc).map_err(|e| TranslateError::MalformedXml(format!("not UTF-8: {e}")))?;
    let doc = Document::parse(text).map_err(|e| TranslateError::MalformedXml(e.to_string()))?;

    let root = doc.root_element();
    if root.tag_name().name() != "fasim" {
        return Err(violation("/", format!("root element must be <fasim>, found <{}>", root.tag_name().name())));
    }
    only_attributes(root, &["version"], "/fasim")?;
    match root.attribute("version") {
        Some(SCHEMA_VERSION) => {}
        Some(v) => return Err(violation("/fasim", format!("unsupported version {v:?}"))),
        None => return Err(violation("/fasim", "missing version attribute")),
    }

    let tfs = element_children(root, "/fasim")?;
    let tf = match tfs.as_slice() {
        [one] if one.tag_name().name() == "transfer_function" => *one,
        [one] => return Err(violation("/fasim", format!("unexpected element <{}>", one.tag_name().name()))),
        [] => return Err(violation("/fasim", "missing <transfer_function>")),
        _ => return Err(violation("/fasim", "exactly one <transfer_function> is allowed")),
    };
    let tf_path = "/fasim/transfer_function";
    only_attributes(tf, &["name"], tf_path)?;
    let name = tf.attribute("name").ok_or_else(|| violation(tf_path, "missing name attribute"))?;

    let mut num = None;
    let mut den = None;
    for child in element_children(tf, tf_path)? {
        let tag = child.tag_name().name();
        let slot = match tag {
            "numerator" => &mut num,
            "denominator" => &mut den,
            other => return Err(violation(tf_path, format!("unexpected element <{other}>"))),
        };
        let path = format!("{tf_path}/{tag}");
        if slot.is_some() {
            return Err(violation(&path, "duplicated element"));
        }
        *slot = Some(parse_list(child, &path)?);
    }
    let mut num = num.ok_or_else(|| violation(tf_path, "missing <numerator>"))?;
    let mut den = den.ok_or_else(|| violation(tf_path, "missing <denominator>"))?;

    let den_path = format!("{tf_path}/denominator/coeff[1]");
    if den[0].value.is_zero() {
        return Err(violation(&den_path, "leading denominator coefficient must be nonzero"));
    }
    while num.len() > 1 && num[0].value.is_zero() {
        num.remove(0);
    }
    num.reverse();
    den.reverse();
    Ok(CoeffIR {
        name: sanitize_name(name),
        num,
        den,
    })
}

/// Coefficients in document (descending) order.
fn parse_list(node: Node, path: &str) -> Result<Vec<IrCoeff>, TranslateError> {
    only_attributes(node, &["order"], path)?;
    match node.attribute("order") {
        None | Some("desc") => {}
        Some(other) => return Err(violation(path, format!("order must be \"desc\", found {other:?}"))),
    }
    let mut out = Vec::new();
    for (i, child) in element_children(node, path)?.into_iter().enumerate() {
        let coeff_path = format!("{path}/coeff[{}]", i + 1);
        if child.tag_name().name() != "coeff" {
            return Err(violation(path, format!("unexpected element <{}>", child.tag_name().name())));
        }
        only_attributes(child, &[], &coeff_path)?;
        if child.children().any(|c| c.is_element()) {
            return Err(violation(&coeff_path, "<coeff> must hold text only"));
        }
        let raw = child.text().unwrap_or("").trim();
        let value = parse_numeral(raw).map_err(|source| TranslateError::MalformedNumber {
            path: coeff_path.clone(),
            text: raw.to_string(),
            source,
        })?;
        out.push(IrCoeff::new(value, raw));
    }
    if out.is_empty() {
        return Err(violation(path, "at least one <coeff> is required"));
    }
    Ok(out)
}

/// Canonical document: two-space indent, LF line endings, coefficients in
/// standard form (`p/q` when the decimal expansion does not terminate).
pub fn print_xml(ir: &CoeffIR) -> Vec<u8> {
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(out, "<fasim version=\"{SCHEMA_VERSION}\">");
    let _ = writeln!(out, "  <transfer_function name=\"{}\">", sanitize_name(&ir.name));
    for (tag, list) in [("numerator", &ir.num), ("denominator", &ir.den)] {
        let _ = writeln!(out, "    <{tag} order=\"desc\">");
        for c in list.iter().rev() {
            let _ = writeln!(out, "      <coeff>{}</coeff>", format_numeral(&c.value));
        }
        let _ = writeln!(out, "    </{tag}>");
    }
    out.push_str("  </transfer_function>\n</fasim>\n");
    out.into_bytes()
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::exactnum::{int, parse_decimal, ratio, ExactScalar};
    use proptest::prelude::*;

    pub(crate) const SKLP_XML: &str = r#"<?xml version="1.0" encoding="UTF-8"?>
<fasim version="1">
  <transfer_function name="SKLP_filter">
    <numerator order="desc">
      <coeff>7812500000.48828</coeff>
    </numerator>
    <denominator order="desc">
      <coeff>1</coeff>
      <coeff>62500.0000039063</coeff>
      <coeff>3906249999.75586</coeff>
    </denominator>
  </transfer_function>
</fasim>
"#;

    fn doc(num: &[&str], den: &[&str]) -> String {
        let list = |v: &[&str]| v.iter().map(|c| format!("<coeff>{c}</coeff>")).collect::<String>();
        format!(
            "<fasim version=\"1\"><transfer_function name=\"t\"><numerator order=\"desc\">{}</numerator><denominator order=\"desc\">{}</denominator></transfer_function></fasim>",
            list(num),
            list(den)
        )
    }

    #[test]
    fn sklp_lists_are_reversed_to_ascending() {
        let ir = parse_xml(SKLP_XML.as_bytes()).unwrap();
        let d = |t: &str| parse_decimal(t).unwrap();
        assert_eq!(ir.name, "SKLP_filter");
        assert_eq!(ir.num_values(), vec![d("7812500000.48828")]);
        assert_eq!(ir.den_values(), vec![d("3906249999.75586"), d("62500.0000039063"), int(1)]);
        assert_eq!(ir.den[1].source, "62500.0000039063");
        assert_eq!(print_xml(&ir), SKLP_XML.as_bytes());
    }

    #[test]
    fn identity_document() {
        let ir = parse_xml(doc(&["1"], &["1"]).as_bytes()).unwrap();
        assert_eq!(ir, CoeffIR::from_values("t", vec![int(1)], vec![int(1)]));
        let printed = String::from_utf8(print_xml(&ir)).unwrap();
        assert_eq!(printed.matches("<coeff>1</coeff>").count(), 2);
    }

    #[test]
    fn schema_violations() {
        let err = parse_xml(doc(&["1"], &["0", "1"]).as_bytes()).unwrap_err();
        assert!(matches!(&err, TranslateError::SchemaViolation { path, .. } if path.ends_with("denominator/coeff[1]")), "{err}");
        let missing_den = "<fasim version=\"1\"><transfer_function name=\"t\"><numerator><coeff>1</coeff></numerator></transfer_function></fasim>";
        assert!(matches!(parse_xml(missing_den.as_bytes()), Err(TranslateError::SchemaViolation { .. })));
        let dup = doc(&["1"], &["1"]).replace("</denominator>", "</denominator><denominator><coeff>1</coeff></denominator>");
        assert!(matches!(parse_xml(dup.as_bytes()), Err(TranslateError::SchemaViolation { .. })));
        let empty = doc(&[], &["1"]);
        assert!(matches!(parse_xml(empty.as_bytes()), Err(TranslateError::SchemaViolation { .. })));
        let wrong_root = "<tf/>";
        assert!(matches!(parse_xml(wrong_root.as_bytes()), Err(TranslateError::SchemaViolation { .. })));
        let asc = doc(&["1"], &["1"]).replace("order=\"desc\"", "order=\"asc\"");
        assert!(matches!(parse_xml(asc.as_bytes()), Err(TranslateError::SchemaViolation { .. })));
        let version = doc(&["1"], &["1"]).replace("version=\"1\"", "version=\"2\"");
        assert!(matches!(parse_xml(version.as_bytes()), Err(TranslateError::SchemaViolation { .. })));
    }

    #[test]
    fn malformed_inputs() {
        assert!(matches!(parse_xml(b"<fasim"), Err(TranslateError::MalformedXml(_))));
        assert!(matches!(parse_xml(&[0xff, 0xfe]), Err(TranslateError::MalformedXml(_))));
        let err = parse_xml(doc(&["1"], &["1", "2.5.1"]).as_bytes()).unwrap_err();
        match err {
            TranslateError::MalformedNumber { path, text, .. } => {
                assert_eq!(path, "/fasim/transfer_function/denominator/coeff[2]");
                assert_eq!(text, "2.5.1");
            }
            other => panic!("{other}"),
        }
    }

    #[test]
    fn numerator_padding_is_dropped() {
        let ir = parse_xml(doc(&["0", "0", "7.813e9"], &["1", "2", "3"]).as_bytes()).unwrap();
        assert_eq!(ir.num_values(), vec![int(7_813_000_000)]);
        assert_eq!(ir.num[0].source, "7.813e9");
        let zero = parse_xml(doc(&["0", "0"], &["1"]).as_bytes()).unwrap();
        assert_eq!(zero.num_values(), vec![int(0)]);
    }

    #[test]
    fn scientific_source_prints_in_standard_form() {
        let ir = parse_xml(doc(&["7.813e9"], &["1"]).as_bytes()).unwrap();
        let printed = String::from_utf8(print_xml(&ir)).unwrap();
        assert!(printed.contains("<coeff>7813000000</coeff>"));
    }

    #[test]
    fn fractions_and_names() {
        let ir = parse_xml(
            doc(&["-1/3"], &["1", "0.5"]).replace("name=\"t\"", "name=\"9 lives\"").as_bytes(),
        )
        .unwrap();
        assert_eq!(ir.name, "f_9_lives");
        assert_eq!(ir.num_values(), vec![ratio(-1, 3)]);
        assert_eq!(parse_xml(&print_xml(&ir)).unwrap(), ir);
    }

    fn coeff() -> impl Strategy<Value = ExactScalar> {
        prop_oneof![
            (-1_000_000i64..1_000_000).prop_map(int),
            (-1_000_000i64..1_000_000, 0u32..12).prop_map(|(n, k)| ratio(n, 10i64.pow(k))),
            (-1000i64..1000, 1i64..1000).prop_map(|(n, d)| ratio(n, d)),
        ]
    }

    proptest! {
        #[test]
        fn print_then_parse_is_identity(num in prop::collection::vec(coeff(), 1..6), den in prop::collection::vec(coeff(), 1..6)) {
            prop_assume!(!den.last().unwrap().is_zero());
            prop_assume!(num.len() == 1 || !num.last().unwrap().is_zero());
            let ir = CoeffIR::from_values("fuzz", num, den);
            prop_assert_eq!(parse_xml(&print_xml(&ir)).unwrap(), ir);
        }
    }
}
