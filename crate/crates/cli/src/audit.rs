use std::io::Write;

use osc_ops::{accuracy_audit, Family};

pub const AUDIT_VAR: &str = "OSC_OPS_PRECISION_AUDIT";

pub fn enabled() -> bool {
    std::env::var(AUDIT_VAR).map(|v| v == "1").unwrap_or(false)
}

/// Series-vs-recurrence comparison for the 0F1 kernel, one CSV line per entry.
pub fn dump(out: &mut impl Write) -> std::io::Result<()> {
    writeln!(out, "family,b,lambda,value,series,recurrence,disagreement")?;
    for r in accuracy_audit() {
        let fam = match r.family {
            Family::Trigonometric => "trig",
            Family::Hyperbolic => "hyp",
        };
        writeln!(
            out,
            "{fam},{}/2,{},{:.16e},{:.16e},{:.16e},{:.3e}",
            r.b_twice, r.lambda, r.value, r.series, r.recurrence, r.disagreement
        )?;
    }
    Ok(())
}
