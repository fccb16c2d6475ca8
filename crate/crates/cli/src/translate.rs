use std::path::Path;

use fasim_core::translator::{
    gen_script, optimize_ir, parse_xml, CodegenOptions, CoeffIR, PowerSyntax, TheoremSelection,
};

use crate::args::{PowSyntaxArg, TheoremArg, TranslateArgs};
use crate::{read_input, write_output, CmdResult, Failure};

/// Reads and parses an XML transfer-function file.
pub fn load_ir(path: &Path) -> Result<CoeffIR, Failure> {
    let bytes = read_input(path)?;
    parse_xml(&bytes).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

pub fn run(args: &TranslateArgs) -> CmdResult {
    let ir = optimize_ir(load_ir(&args.input)?);
    let selection = match args.theorem {
        TheoremArg::Tf => TheoremSelection::Tf,
        TheoremArg::Ode => TheoremSelection::Ode,
        TheoremArg::Both => TheoremSelection::Both,
        TheoremArg::None => TheoremSelection::None,
    };
    let options = CodegenOptions {
        power: match args.pow_syntax {
            PowSyntaxArg::Caret => PowerSyntax::Caret,
            PowSyntaxArg::Pow => PowerSyntax::HolPow,
        },
    };
    write_output(args.output.as_deref(), gen_script(&ir, selection, &options).as_bytes())
}
