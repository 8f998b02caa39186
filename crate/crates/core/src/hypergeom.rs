//! `₀F₁(b; z)` at half-odd-integer `b` and `z = ηλ²/4`.
//!
//! These are the kernels of the reduced quadrature integrals. The first two
//! members have closed forms,
//!
//! ```text
//! ₀F₁(1/2; −λ²/4) = cos λ      ₀F₁(3/2; −λ²/4) = sin λ / λ
//! ₀F₁(1/2; +λ²/4) = cosh λ     ₀F₁(3/2; +λ²/4) = sinh λ / λ
//! ```
//!
//! and the rest follow from the contiguous relation
//!
//! ```text
//! ₀F₁(b−1; z) − ₀F₁(b; z) = z / (b(b−1)) · ₀F₁(b+1; z)
//! ```
//!
//! For `|λ| ≤ LAMBDA_SWITCH` the members with `b ≥ 5/2` are summed from the
//! ascending series. Above the switch they are propagated upward in `b` from
//! the closed forms. Upward propagation is only safe while `|λ|` exceeds `b`
//! (the spherical Bessel stability condition); with `b ≤ 13/2` and the switch
//! at 6 that always holds. In the trigonometric case the series loses
//! roughly a digit per unit of `λ` beyond 6 through cancellation, which is
//! why the switch is not placed higher. `accuracy_audit` tabulates both paths.
//!
//! The contiguous relation used here is the standard one for `₀F₁`; it is
//! the relation the reduced integrals are written in terms of.
//!
//! Accuracy: relative error below 1e-13 for `|λ| ≤ 50`, `b ≤ 9/2`, measured
//! against the magnitude of the function's oscillation envelope (values near
//! zeros of the trigonometric members carry an absolute error of a few ulp
//! of that envelope instead). Beyond `|λ| = 50` the closed forms remain
//! accurate to the platform's `sin`/`cos` argument reduction.

use crate::error::{argument, Error, Result};
use crate::weights::{Family, MAX_HYPERBOLIC_ARG};

/// `|λ|` above which upward recurrence replaces the ascending series.
pub const LAMBDA_SWITCH: f64 = 6.0;

/// Largest supported `2b` (so `b ≤ 13/2`).
pub const MAX_B_TWICE: u32 = 13;

/// Largest accepted `|z|`.
pub const MAX_ABS_Z: f64 = 1e8;

const SERIES_CUTOFF: f64 = 1e-17;
const SERIES_MAX_TERMS: usize = 1000;

/// Arguments of `₀F₁(b; ηλ²/4)`, carried as `(λ, η)` so tiny `λ` keeps its sign information.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HypArg {
    /// `2b`, odd and at least 1.
    pub b_twice: u32,
    pub lambda: f64,
    pub family: Family,
}

impl HypArg {
    pub fn new(b_twice: u32, lambda: f64, family: Family) -> Result<Self> {
        let arg = HypArg { b_twice, lambda, family };
        arg.validate()?;
        Ok(arg)
    }

    #[inline]
    pub fn b(&self) -> f64 {
        f64::from(self.b_twice) / 2.0
    }

    /// `z = ηλ²/4`.
    #[inline]
    pub fn z(&self) -> f64 {
        self.family.eta() * self.lambda * self.lambda / 4.0
    }

    fn validate(&self) -> Result<()> {
        check_b_twice(self.b_twice)?;
        check_lambda(self.lambda, self.family)
    }
}

fn check_b_twice(b_twice: u32) -> Result<()> {
    if b_twice.is_multiple_of(2) || b_twice > MAX_B_TWICE {
        return argument(format!("2b must be odd and in 1..={MAX_B_TWICE}, got {b_twice}"));
    }
    Ok(())
}

fn check_lambda(lambda: f64, family: Family) -> Result<()> {
    if !lambda.is_finite() {
        return argument(format!("lambda must be finite, got {lambda}"));
    }
    if lambda * lambda / 4.0 > MAX_ABS_Z {
        return argument(format!("|z| = {} exceeds {MAX_ABS_Z}", lambda * lambda / 4.0));
    }
    if family == Family::Hyperbolic && lambda.abs() > MAX_HYPERBOLIC_ARG {
        return Err(Error::Range(format!(
            "hyperbolic 0F1 at lambda = {lambda} overflows (limit {MAX_HYPERBOLIC_ARG})"
        )));
    }
    Ok(())
}

/// `₀F₁(b; ηλ²/4)`.
pub fn hyp0f1(arg: HypArg) -> Result<f64> {
    arg.validate()?;
    let lambda = arg.lambda.abs();
    match arg.b_twice {
        1 | 3 => Ok(closed_forms(lambda, arg.family)[(arg.b_twice / 2) as usize]),
        b2 if lambda <= LAMBDA_SWITCH => Ok(series_unchecked(b2, lambda, arg.family)),
        b2 => Ok(*upward(lambda, arg.family, b2).last().unwrap()),
    }
}

/// `[₀F₁(1/2; z), ₀F₁(3/2; z), …, ₀F₁(b_max; z)]` with `z = ηλ²/4`.
pub fn hyp0f1_basis(lambda: f64, family: Family, b_max_twice: u32) -> Result<Vec<f64>> {
    check_b_twice(b_max_twice)?;
    check_lambda(lambda, family)?;
    let lambda = lambda.abs();
    if lambda > LAMBDA_SWITCH {
        return Ok(upward(lambda, family, b_max_twice));
    }
    let [f_half, f_three_halves] = closed_forms(lambda, family);
    let mut out = vec![f_half];
    if b_max_twice >= 3 {
        out.push(f_three_halves);
    }
    out.extend((5..=b_max_twice).step_by(2).map(|b2| series_unchecked(b2, lambda, family)));
    Ok(out)
}

/// Ascending series for `₀F₁(b; ηλ²/4)` regardless of `λ`.
///
/// Exposed for auditing; `hyp0f1` is the accurate entry point.
pub fn hyp0f1_series(arg: HypArg) -> Result<f64> {
    arg.validate()?;
    Ok(series_unchecked(arg.b_twice, arg.lambda.abs(), arg.family))
}

/// Upward recurrence from the closed forms regardless of `λ`. Requires `λ ≠ 0`.
///
/// Exposed for auditing; `hyp0f1` is the accurate entry point.
pub fn hyp0f1_recurrence(arg: HypArg) -> Result<f64> {
    arg.validate()?;
    if arg.lambda == 0.0 {
        return argument("upward recurrence is undefined at lambda = 0");
    }
    Ok(*upward(arg.lambda.abs(), arg.family, arg.b_twice).last().unwrap())
}

fn closed_forms(lambda: f64, family: Family) -> [f64; 2] {
    let (even, odd) = match family {
        Family::Trigonometric => (lambda.cos(), lambda.sin()),
        Family::Hyperbolic => (lambda.cosh(), lambda.sinh()),
    };
    let ratio = if lambda == 0.0 { 1.0 } else { odd / lambda };
    [even, ratio]
}

fn series_unchecked(b_twice: u32, lambda: f64, family: Family) -> f64 {
    let b = f64::from(b_twice) / 2.0;
    let z = family.eta() * lambda * lambda / 4.0;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 0..SERIES_MAX_TERMS {
        let k = k as f64;
        term *= z / ((b + k) * (k + 1.0));
        sum += term;
        if term.abs() <= SERIES_CUTOFF * sum.abs() {
            break;
        }
    }
    sum
}

fn upward(lambda: f64, family: Family, b_max_twice: u32) -> Vec<f64> {
    let z = family.eta() * lambda * lambda / 4.0;
    let mut out = Vec::with_capacity((b_max_twice as usize).div_ceil(2));
    out.extend(closed_forms(lambda, family));
    out.truncate((b_max_twice as usize).div_ceil(2));
    // F(b+1) = (F(b-1) - F(b)) b (b-1) / z, starting from b = 3/2
    let mut b = 1.5;
    while out.len() < (b_max_twice as usize).div_ceil(2) {
        let n = out.len();
        let next = (out[n - 2] - out[n - 1]) * b * (b - 1.0) / z;
        out.push(next);
        b += 1.0;
    }
    out
}

/// Relative residual of the contiguous relation at `b` given `F(b−1), F(b), F(b+1)`.
///
/// Normalised by the sum of the three term magnitudes, so it stays meaningful
/// near zeros of the individual members.
pub fn contiguous_residual(b: f64, z: f64, lower: f64, mid: f64, upper: f64) -> f64 {
    let coupled = z / (b * (b - 1.0)) * upper;
    let scale = lower.abs() + mid.abs() + coupled.abs();
    if scale == 0.0 {
        return 0.0;
    }
    (lower - mid - coupled).abs() / scale
}

/// One line of the regime comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct AuditRecord {
    pub b_twice: u32,
    pub lambda: f64,
    pub family: Family,
    pub value: f64,
    pub series: f64,
    pub recurrence: f64,
    /// `|series − recurrence|` over the larger of the two magnitudes and the
    /// `b = 1/2` member, which bounds the oscillation envelope.
    pub disagreement: f64,
}

/// Compare the series and recurrence paths for `b ∈ {5/2, …, 13/2}` on a
/// `λ` grid spanning both regimes.
pub fn accuracy_audit() -> Vec<AuditRecord> {
    let lambdas = [0.5, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0, 10.0, 12.0, 15.0, 20.0, 30.0, 50.0];
    let mut rows = Vec::new();
    for family in [Family::Trigonometric, Family::Hyperbolic] {
        for &lambda in &lambdas {
            for b_twice in (5..=MAX_B_TWICE).step_by(2) {
                let arg = HypArg { b_twice, lambda, family };
                let series = series_unchecked(b_twice, lambda, family);
                let recurrence = *upward(lambda, family, b_twice).last().unwrap();
                let value = hyp0f1(arg).expect("audit grid is in range");
                let scale = series.abs().max(recurrence.abs()).max(envelope(b_twice, lambda, family));
                rows.push(AuditRecord {
                    b_twice,
                    lambda,
                    family,
                    value,
                    series,
                    recurrence,
                    disagreement: (series - recurrence).abs() / scale,
                });
            }
        }
    }
    rows
}

/// Rough size of `₀F₁(b; ηλ²/4)` away from its zeros.
fn envelope(b_twice: u32, lambda: f64, family: Family) -> f64 {
    match family {
        Family::Hyperbolic => 1.0,
        // |F(b)| ≲ Γ(b+1/2)... decays like (λ/2)^{-b} beyond the turning point
        Family::Trigonometric => {
            let b = f64::from(b_twice) / 2.0;
            if lambda <= b {
                1.0
            } else {
                let mut gamma_ratio = 1.0;
                let mut k = 0.5;
                while k < b {
                    gamma_ratio *= k;
                    k += 1.0;
                }
                (gamma_ratio / std::f64::consts::PI.sqrt() * (2.0 / lambda).powf(b - 0.5) * (2.0 / lambda).sqrt()).min(1.0)
            }
        }
    }
}
