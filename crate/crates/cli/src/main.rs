//! `fasim`: model, translate, verify and analyze analog filter transfer
//! functions.

mod analyze;
mod args;
mod model;
mod translate;
mod verify;

use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

/// Exit status of a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok = 0,
    VerificationFailed = 1,
    Usage = 2,
    Input = 3,
}

/// A one-line diagnostic and the status it maps to.
#[derive(Debug)]
pub struct Failure {
    pub status: Status,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Self { status: Status::Usage, message: message.into() }
    }

    pub fn input(message: impl Into<String>) -> Self {
        Self { status: Status::Input, message: message.into() }
    }

    pub fn verification(message: impl Into<String>) -> Self {
        Self { status: Status::VerificationFailed, message: message.into() }
    }
}

pub type CmdResult = Result<(), Failure>;

pub fn read_input(path: &Path) -> Result<Vec<u8>, Failure> {
    std::fs::read(path).map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))
}

/// Writes to `path`, or stdout when `path` is `None` or `-`.
pub fn write_output(path: Option<&Path>, bytes: &[u8]) -> CmdResult {
    match path {
        Some(p) if p != Path::new("-") => std::fs::write(p, bytes)
            .map_err(|e| Failure::input(format!("cannot write {}: {e}", p.display()))),
        _ => {
            let mut out = std::io::stdout().lock();
            out.write_all(bytes)
                .and_then(|_| out.flush())
                .map_err(|e| Failure::input(format!("cannot write to stdout: {e}")))
        }
    }
}

pub fn run<I, T>(argv: I) -> Status
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { Status::Usage } else { Status::Ok };
        }
    };
    let result = match &cli.command {
        Command::Model(a) => model::run(a),
        Command::Translate(a) => translate::run(a),
        Command::Verify(a) => verify::run(a),
        Command::Analyze(a) => analyze::run(a),
    };
    match result {
        Ok(()) => Status::Ok,
        Err(f) => {
            eprintln!("fasim: {}", f.message);
            f.status
        }
    }
}

fn main() -> ExitCode {
    ExitCode::from(run(std::env::args_os()) as u8)
}
