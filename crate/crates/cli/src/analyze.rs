use fasim_core::analysis::{
    bode, bode_csv, format_g, is_stable, log_sweep, poles_zeros, step_csv, ResponseKind, TimeResponse,
};
use fasim_core::circuits::tf_dc_gain;
use fasim_core::exactnum::format_numeral;
use fasim_core::numeric::ComplexF;

use crate::args::AnalyzeArgs;
use crate::translate::load_ir;
use crate::{write_output, CmdResult, Failure};

fn parse_sweep(text: &str) -> Result<(f64, f64, usize), Failure> {
    let bad = || Failure::usage(format!("--sweep expects lo:hi:n, got {text:?}"));
    let parts: Vec<&str> = text.split(':').collect();
    let [lo, hi, n] = parts.as_slice() else {
        return Err(bad());
    };
    Ok((
        lo.trim().parse().map_err(|_| bad())?,
        hi.trim().parse().map_err(|_| bad())?,
        n.trim().parse().map_err(|_| bad())?,
    ))
}

fn complex_text(z: &ComplexF) -> String {
    if z.im == 0.0 {
        format_g(z.re)
    } else {
        let sign = if z.im < 0.0 { '-' } else { '+' };
        format!("{} {sign} j{}", format_g(z.re), format_g(z.im.abs()))
    }
}

fn analysis_failure(e: impl std::fmt::Display) -> Failure {
    Failure::verification(format!("analysis failed: {e}"))
}

pub fn run(args: &AnalyzeArgs) -> CmdResult {
    let ir = load_ir(&args.input)?;
    let tf = ir.to_tf().map_err(|e| Failure::input(format!("{}: {e}", args.input.display())))?;
    let (poles, zeros) = poles_zeros(&tf).map_err(analysis_failure)?;
    let stable = is_stable(&tf).map_err(analysis_failure)?;

    let mut summary = format!("transfer function {}\n", ir.name);
    let list = |v: &[ComplexF]| {
        if v.is_empty() {
            "none".to_string()
        } else {
            v.iter().map(complex_text).collect::<Vec<_>>().join(", ")
        }
    };
    summary.push_str(&format!("poles: {}\n", list(&poles)));
    summary.push_str(&format!("zeros: {}\n", list(&zeros)));
    summary.push_str(&format!("stable: {stable}\n"));
    match tf_dc_gain(&tf) {
        Ok(g) => summary.push_str(&format!("dc gain: {}\n", format_numeral(&g))),
        Err(e) => summary.push_str(&format!("dc gain: undefined ({e})\n")),
    }

    let magnitudes: Vec<f64> = poles.iter().chain(&zeros).map(|p| p.norm()).filter(|m| *m > 0.0).collect();
    let scale_lo = magnitudes.iter().copied().fold(f64::INFINITY, f64::min);
    let scale_hi = magnitudes.iter().copied().fold(0.0, f64::max);

    if let Some(path) = &args.bode {
        let (lo, hi, n) = match &args.sweep {
            Some(text) => parse_sweep(text)?,
            None if scale_hi > 0.0 => (scale_lo / 100.0, scale_hi * 100.0, 201),
            None => (1e-2, 1e2, 201),
        };
        let omegas = log_sweep(lo, hi, n).map_err(|e| Failure::usage(e.to_string()))?;
        let points = bode(&tf, &omegas).map_err(analysis_failure)?;
        write_output(Some(path), bode_csv(&points).as_bytes())?;
    } else if args.sweep.is_some() {
        return Err(Failure::usage("--sweep needs --bode <file>"));
    }

    if let Some(path) = &args.step {
        if args.step_points < 2 {
            return Err(Failure::usage("--step-points must be at least 2"));
        }
        let slowest = poles.iter().map(|p| p.re.abs()).filter(|r| *r > 0.0).fold(f64::INFINITY, f64::min);
        let horizon = match args.step_horizon {
            Some(h) if h > 0.0 && h.is_finite() => h,
            Some(h) => return Err(Failure::usage(format!("--step-horizon must be positive, got {h}"))),
            None if slowest.is_finite() => 10.0 / slowest,
            None => 10.0,
        };
        let response = TimeResponse::new(&tf, ResponseKind::Step).map_err(analysis_failure)?;
        let last = (args.step_points - 1) as f64;
        let times: Vec<f64> = (0..args.step_points).map(|i| horizon * i as f64 / last).collect();
        let values = times.iter().map(|&t| response.at(t)).collect::<Result<Vec<_>, _>>().map_err(analysis_failure)?;
        write_output(Some(path), step_csv(&times, &values).as_bytes())?;
    }

    write_output(None, summary.as_bytes())
}
