use std::path::{Path, PathBuf};

use fasim_core::circuits::{build_tf, ComponentValues, FilterKind};
use fasim_core::exactnum::parse_decimal;
use fasim_core::odefile::ode_to_json;
use fasim_core::translator::{print_xml, CoeffIR};

use crate::args::ModelArgs;
use crate::{write_output, CmdResult, Failure};

struct Parsed {
    values: ComponentValues,
    output: Option<PathBuf>,
    name: Option<String>,
    ode_out: Option<PathBuf>,
}

/// Splits `--NAME VALUE` / `--NAME=VALUE` pairs; the named options may also
/// appear among them.
fn parse_rest(args: &ModelArgs) -> Result<Parsed, Failure> {
    let mut parsed = Parsed {
        values: ComponentValues::new(),
        output: args.output.clone(),
        name: args.name.clone(),
        ode_out: args.ode_out.clone(),
    };
    let mut iter = args.rest.iter();
    while let Some(arg) = iter.next() {
        let (flag, inline) = match arg.split_once('=') {
            Some((f, v)) if f.starts_with('-') => (f, Some(v.to_string())),
            _ => (arg.as_str(), None),
        };
        let key = if let Some(k) = flag.strip_prefix("--") {
            k
        } else if flag == "-o" {
            "output"
        } else {
            return Err(Failure::usage(format!("unexpected argument {arg:?}; components are --<NAME> <VALUE>")));
        };
        let value = match inline {
            Some(v) => v,
            None => iter
                .next()
                .cloned()
                .ok_or_else(|| Failure::usage(format!("{flag} needs a value")))?,
        };
        match key {
            "output" => parsed.output = Some(PathBuf::from(value)),
            "name" => parsed.name = Some(value),
            "ode-out" => parsed.ode_out = Some(PathBuf::from(value)),
            component => {
                let v = parse_decimal(value.trim())
                    .map_err(|e| Failure::usage(format!("bad value {value:?} for {component}: {e}")))?;
                parsed
                    .values
                    .set(component, v)
                    .map_err(|e| Failure::usage(e.to_string()))?;
            }
        }
    }
    Ok(parsed)
}

fn list() -> String {
    let mut out = String::new();
    for kind in FilterKind::ALL {
        out.push_str(&format!("{:<16} {}\n", kind.name(), kind.required_components().join(" ")));
    }
    out
}

pub fn run(args: &ModelArgs) -> CmdResult {
    if args.list {
        return write_output(None, list().as_bytes());
    }
    let kind_text = args.kind.as_deref().unwrap_or_default();
    let kind: FilterKind = kind_text.parse().map_err(|e: fasim_core::circuits::CircuitError| {
        Failure::usage(format!("{e}; known kinds: {}", FilterKind::ALL.map(|k| k.name()).join(", ")))
    })?;
    let parsed = parse_rest(args)?;
    let model = build_tf(kind, &parsed.values).map_err(|e| Failure::usage(e.to_string()))?;
    for note in &model.notes {
        eprintln!("note: {note}");
    }
    let name = parsed.name.as_deref().unwrap_or(kind.default_model_name());
    let ir = CoeffIR::from_tf(name, &model.tf);
    write_output(parsed.output.as_deref(), &print_xml(&ir))?;
    if let Some(path) = &parsed.ode_out {
        write_output(Some(Path::new(path)), ode_to_json(&model.ode).as_bytes())?;
    }
    Ok(())
}
