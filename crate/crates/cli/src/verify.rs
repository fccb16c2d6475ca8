use fasim_core::analysis::{tf_numeric_check, NumericCheckConfig};
use fasim_core::laplace::{
    check_equivalence_with, tf_to_ode_with, LedgerOptions, ObligationReport, ObligationStatus, TimeSignal,
    NUMERIC_ID,
};
use fasim_core::numeric::ComplexF;
use fasim_core::odefile::parse_ode_json;
use fasim_core::{ExactTf, Ode};

use crate::args::{LedgerArg, ReportFormat, VerifyArgs};
use crate::translate::load_ir;
use crate::{read_input, write_output, CmdResult, Failure};

pub const DEFAULT_QUAD_TOL: f64 = 1e-8;
pub const TOL_ENV: &str = "FASIM_TOL";

fn positive(name: &str, v: f64) -> Result<f64, Failure> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(Failure::usage(format!("{name} must be positive and finite, got {v}")))
    }
}

fn quad_tol(args: &VerifyArgs) -> Result<f64, Failure> {
    if let Some(t) = args.quad_tol {
        return positive("--quad-tol", t);
    }
    match std::env::var(TOL_ENV) {
        Ok(text) => {
            let t = text
                .trim()
                .parse::<f64>()
                .map_err(|_| Failure::usage(format!("{TOL_ENV}={text:?} is not a number")))?;
            positive(TOL_ENV, t)
        }
        Err(_) => Ok(DEFAULT_QUAD_TOL),
    }
}

/// Largest pole magnitude, at least 1; sets the time and frequency scale of
/// the automatic numeric check.
fn pole_scale(tf: &ExactTf, root_tol: f64) -> f64 {
    if tf.den().degree() == 0 {
        return 1.0;
    }
    tf.den()
        .roots(root_tol)
        .map(|r| r.iter().map(|p| p.norm()).fold(1.0, f64::max))
        .unwrap_or(1.0)
}

fn numeric_check(
    tf: &ExactTf,
    ode: &Ode,
    args: &VerifyArgs,
    report: &mut ObligationReport,
) -> Result<(), Failure> {
    let description = "simulated L[v_o] / L[v_i] matches the transfer function";
    if args.no_numeric {
        report.record(NUMERIC_ID, description, ObligationStatus::EmittedAssumption, "skipped (--no-numeric)");
        return Ok(());
    }
    let tol = quad_tol(args)?;
    let threshold = positive("--threshold", args.threshold)?;
    let rho = pole_scale(tf, args.root_tol);
    let dt = positive("--sim-dt", args.sim_dt.unwrap_or(0.01 / rho))?;
    let horizon = positive("--sim-horizon", args.sim_horizon.unwrap_or(30.0 / rho))?;
    let input = TimeSignal::exp(1.0, -rho / 4.0);
    let mut config = NumericCheckConfig::new(input, horizon, dt, tol);
    config.margin = args.margin;
    let s: Vec<ComplexF> = [2.0, 4.0].iter().map(|k| ComplexF::new(k * rho + args.margin, 0.0)).collect();

    match tf_numeric_check(tf, ode, &s, &config) {
        Ok(check) => {
            let detail = format!(
                "max relative error {:.3e} over s = {:?} (threshold {threshold:e}, dt {dt:e}, horizon {horizon:e})",
                check.max_rel_error,
                s.iter().map(|z| z.re).collect::<Vec<_>>()
            );
            let status = if check.max_rel_error < threshold {
                ObligationStatus::CheckedNumeric
            } else {
                ObligationStatus::Failed
            };
            report.record(NUMERIC_ID, description, status, detail);
        }
        Err(e) => {
            let status = if args.strict { ObligationStatus::Failed } else { ObligationStatus::EmittedAssumption };
            report.record(NUMERIC_ID, description, status, format!("numeric check did not run: {e}"));
        }
    }
    Ok(())
}

pub fn run(args: &VerifyArgs) -> CmdResult {
    positive("--margin", args.margin)?;
    positive("--root-tol", args.root_tol)?;
    let ir = load_ir(&args.input)?;
    let tf = ir.to_tf().map_err(|e| Failure::input(format!("{}: {e}", args.input.display())))?;
    let options = LedgerOptions { margin: args.margin, root_tol: args.root_tol };

    let (ode, mut report) = match (&args.ode, args.theorem) {
        (Some(_), LedgerArg::Ode) => {
            return Err(Failure::usage("--theorem ode derives the ODE and cannot be combined with --ode"));
        }
        (Some(path), LedgerArg::Tf) => {
            let text = String::from_utf8(read_input(path)?)
                .map_err(|_| Failure::input(format!("{}: not UTF-8", path.display())))?;
            let ode: Ode = parse_ode_json(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
            let report = check_equivalence_with(&ode, &tf, &options);
            (ode, report)
        }
        (None, LedgerArg::Tf) => {
            let ode = Ode::new(tf.den().coeffs().to_vec(), tf.num().coeffs().to_vec())
                .map_err(|e| Failure::input(format!("{}: {e}", args.input.display())))?;
            let report = check_equivalence_with(&ode, &tf, &options);
            (ode, report)
        }
        (None, LedgerArg::Ode) => {
            tf_to_ode_with(&tf, &options).map_err(|e| Failure::input(format!("{}: {e}", args.input.display())))?
        }
    };
    numeric_check(&tf, &ode, args, &mut report)?;

    let text = match args.report {
        ReportFormat::Text => report.to_string(),
        ReportFormat::Structured => {
            let mut s = serde_json::to_string_pretty(&report.to_json()).expect("report serializes");
            s.push('\n');
            s
        }
    };
    write_output(None, text.as_bytes())?;

    match report.first_failure() {
        None => Ok(()),
        Some(o) if o.detail.starts_with("Failed") => Err(Failure::verification(format!("{} {}", o.id, o.detail))),
        Some(o) => Err(Failure::verification(format!("{} Failed: {}", o.id, o.detail))),
    }
}

