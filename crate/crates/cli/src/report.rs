use std::f64::consts::PI;
use std::io::Write;

use osc_ops::reference::{DerivativeCase, QuadratureCase};
use osc_ops::Scheme;

use crate::error::CliError;
use crate::sweep::ENVELOPE;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Summary {
    pub a2_exact: f64,
    pub a2_estimate: f64,
    pub a4_exact: f64,
    pub a4_estimate: f64,
    pub quad_max_error: f64,
    /// Points with `ω > 20π` outside `±0.0025/ω`.
    pub envelope_violations: usize,
    pub envelope_points: usize,
}

struct Check {
    name: &'static str,
    value: String,
    target: &'static str,
    pass: bool,
}

fn amplitudes(scheme: Scheme) -> Result<(f64, f64), CliError> {
    let (mut exact, mut est) = (0.0f64, 0.0f64);
    for k in 0..=800 {
        let (e, r) = DerivativeCase::error(scheme, 0.1 * f64::from(k))?;
        exact = exact.max(e.abs());
        est = est.max(r.leading_estimate.abs());
    }
    Ok((exact, est))
}

pub fn summarize() -> Result<Summary, CliError> {
    let (a2_exact, a2_estimate) = amplitudes(Scheme::D1TwoPoint)?;
    let (a4_exact, a4_estimate) = amplitudes(Scheme::D1FourPoint)?;
    let k0 = (200.0 * PI).ceil() as u32;
    let (mut quad_max_error, mut envelope_violations, mut envelope_points) = (0.0f64, 0, 0);
    for k in 0..=5000u32 {
        let w = 0.1 * f64::from(k);
        let (d, _) = QuadratureCase::error(w)?;
        quad_max_error = quad_max_error.max(d.abs());
        if k > k0 {
            envelope_points += 1;
            if d.abs() > ENVELOPE / w {
                envelope_violations += 1;
            }
        }
    }
    Ok(Summary { a2_exact, a2_estimate, a4_exact, a4_estimate, quad_max_error, envelope_violations, envelope_points })
}

fn within(v: f64, want: f64, tol: f64) -> bool {
    ((v - want) / want).abs() <= tol
}

fn checks(s: &Summary) -> Vec<Check> {
    vec![
        Check { name: "A2 exact", value: format!("{:.4e}", s.a2_exact), target: "0.627e-3 +/- 1%", pass: within(s.a2_exact, 0.627e-3, 0.01) },
        Check { name: "A2 estimate", value: format!("{:.4e}", s.a2_estimate), target: "0.625e-3 +/- 0.5%", pass: within(s.a2_estimate, 0.625e-3, 0.005) },
        Check { name: "A4 exact", value: format!("{:.4e}", s.a4_exact), target: "0.633e-5 +/- 1%", pass: within(s.a4_exact, 0.633e-5, 0.01) },
        Check { name: "A4 estimate", value: format!("{:.4e}", s.a4_estimate), target: "0.625e-5 +/- 0.5%", pass: within(s.a4_estimate, 0.625e-5, 0.005) },
        Check { name: "quad max |D|", value: format!("{:.4e}", s.quad_max_error), target: "< 8e-5", pass: s.quad_max_error < 8e-5 },
        Check {
            name: "envelope violations (w > 20pi)",
            value: format!("{} / {}", s.envelope_violations, s.envelope_points),
            target: "0",
            pass: s.envelope_violations == 0,
        },
    ]
}

/// Print the summary table. Returns whether every threshold held.
pub fn run_report(out: &mut impl Write) -> Result<bool, CliError> {
    let s = summarize()?;
    let io = |source| CliError::Io { path: "<stdout>".into(), source };
    writeln!(out, "{:<32} {:>14} {:>18}  status", "quantity", "value", "target").map_err(io)?;
    let mut all = true;
    for c in checks(&s) {
        all &= c.pass;
        writeln!(out, "{:<32} {:>14} {:>18}  {}", c.name, c.value, c.target, if c.pass { "ok" } else { "FAIL" })
            .map_err(io)?;
    }
    Ok(all)
}
