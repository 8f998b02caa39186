//! Closed forms for the two standard test cases and brute-force oracles.
//!
//! The oracles use extrapolated composite rules and share no code with the
//! interpolatory sums, so agreement between the two is evidence.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

use crate::derivatives::{DerivErrorReport, DerivativeTable, Factor, HarmonicPair, Scheme, StencilSpec};
use crate::error::{argument, Error, Result};
use crate::quadrature::quad_harmonic;
use crate::weights::{Family, Oscillation};

/// `f(x) = 1/(1+x)`.
pub fn recip(x: f64) -> f64 {
    1.0 / (1.0 + x)
}

/// `f^{(k)}(x) = (−1)^k k! / (1+x)^{k+1}` for `f = 1/(1+x)`.
pub fn recip_derivative(k: u32, x: f64) -> f64 {
    let fact: f64 = (1..=k).map(f64::from).product();
    let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    sign * fact / (1.0 + x).powi(k as i32 + 1)
}

fn zero(_: f64) -> f64 {
    0.0
}

/// Pair with plain function factors.
pub type FnPair = HarmonicPair<fn(f64) -> f64, fn(f64) -> f64>;

/// Derivative case: `Φ(x) = cos(ωx)/(1+x)` differentiated at `x = 1` with step `0.1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivativeCase;

impl DerivativeCase {
    pub const X_EVAL: f64 = 1.0;
    pub const H: f64 = 0.1;
    pub const DELTA: f64 = 0.0;

    pub fn pair(omega: f64) -> Result<FnPair> {
        Ok(HarmonicPair::new(recip, zero, Family::Trigonometric, Oscillation::new(omega, Self::DELTA)?))
    }

    /// Exact `Φ'(1)`.
    pub fn exact_d1(omega: f64) -> Result<f64> {
        let x = Self::X_EVAL;
        Self::pair(omega)?.exact_d1(x, recip_derivative(1, x), 0.0)
    }

    /// Exact `Φ''(1)`.
    pub fn exact_d2(omega: f64) -> Result<f64> {
        let x = Self::X_EVAL;
        Self::pair(omega)?.exact_d2(x, recip_derivative(1, x), 0.0, recip_derivative(2, x), 0.0)
    }

    /// Closed-form derivative magnitudes of `1/(1+x)` for the error reports.
    ///
    /// Suprema cover `[x−h, x+h]` for orders 3 and 4 and `[x−2h, x+2h]` for order 5.
    pub fn derivative_table() -> DerivativeTable {
        let (x, h) = (Self::X_EVAL, Self::H);
        let sup = |k: u32, reach: f64| recip_derivative(k, x - reach).abs();
        DerivativeTable::new()
            .with(Factor::First, 3, sup(3, h), recip_derivative(3, x))
            .with(Factor::First, 4, sup(4, h), recip_derivative(4, x))
            .with(Factor::First, 5, sup(5, 2.0 * h), recip_derivative(5, x))
            .with_zero_factor(Factor::Second, &[3, 4, 5])
    }

    /// `exact − approximation` for `scheme` at frequency `omega`, with its error report.
    pub fn error(scheme: Scheme, omega: f64) -> Result<(f64, DerivErrorReport)> {
        let p = Self::pair(omega)?;
        let st = StencilSpec::new(Self::X_EVAL, Self::H, &p.osc)?;
        let exact = match scheme.derivative_order() {
            1 => Self::exact_d1(omega)?,
            _ => Self::exact_d2(omega)?,
        };
        let err = exact - p.approximate(scheme, &st)?;
        Ok((err, p.error_report(scheme, &st, &Self::derivative_table())?))
    }
}

/// Quadrature case: `Φ(x) = −f²(x) cos(ωx) − ω f(x) sin(ωx)` on `[0.9, 1.1]`, `f = 1/(1+x)`.
///
/// `Φ` is the derivative of `f(x) cos(ωx)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureCase;

impl QuadratureCase {
    pub const A: f64 = 0.9;
    pub const B: f64 = 1.1;
    pub const DELTA: f64 = 0.0;

    pub fn pair(omega: f64) -> Result<HarmonicPair<impl Fn(f64) -> f64, impl Fn(f64) -> f64>> {
        Ok(HarmonicPair::new(
            |x: f64| -recip(x) * recip(x),
            move |x: f64| -omega * recip(x),
            Family::Trigonometric,
            Oscillation::new(omega, Self::DELTA)?,
        ))
    }

    /// `Δ = I − Q` of the uniform-knot harmonic sum, with its leading estimate.
    pub fn error(omega: f64) -> Result<(f64, f64)> {
        let q = quad_harmonic(&Self::pair(omega)?, Self::A, Self::B, (Self::A + Self::B) / 2.0)?;
        Ok((exact_quad_value(omega) - q.value, q.est_error))
    }

    pub fn integrand(omega: f64) -> impl Fn(f64) -> f64 {
        move |x: f64| {
            let f = recip(x);
            -f * f * (omega * x).cos() - omega * f * (omega * x).sin()
        }
    }
}

/// `∫_{0.9}^{1.1} Φ dx` for [`QuadratureCase`] in closed form.
pub fn exact_quad_value(omega: f64) -> f64 {
    let (c, h) = (1.0, 0.1);
    let (phi_c, lambda) = (omega * c, omega * h);
    let (u, v) = ((1.0 + c) / 2.0, h / 2.0);
    -(v * phi_c.cos() * lambda.cos() + u * phi_c.sin() * lambda.sin()) / (u * u - v * v)
}

// 5-point Gauss-Legendre on [-1, 1].
const GL5_NODES: [f64; 5] = [
    -0.906_179_845_938_664,
    -0.538_469_310_105_683,
    0.0,
    0.538_469_310_105_683,
    0.906_179_845_938_664,
];
const GL5_WEIGHTS: [f64; 5] = [
    0.236_926_885_056_189_1,
    0.478_628_670_499_366_5,
    0.568_888_888_888_888_9,
    0.478_628_670_499_366_5,
    0.236_926_885_056_189_1,
];

/// Error ratio of the 5-point rule under panel halving.
const RICHARDSON_FACTOR: f64 = 1024.0;
const MAX_DOUBLINGS: u32 = 24;

fn composite_gl5(f: &dyn Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> (f64, f64) {
    let w = (b - a) / panels as f64;
    let half = w / 2.0;
    let (mut sum, mut abs_sum) = (0.0, 0.0);
    for p in 0..panels {
        let mid = a + (p as f64 + 0.5) * w;
        for (x, wt) in GL5_NODES.iter().zip(GL5_WEIGHTS) {
            let v = f(mid + half * x);
            sum += wt * v;
            abs_sum += wt * v.abs();
        }
    }
    (sum * half, abs_sum * half)
}

/// `∫ₐᵇ f` by panel doubling of a composite Gauss rule with Richardson extrapolation.
///
/// Stops once successive extrapolated values agree to `tol` relative to `∫|f|`.
pub fn oracle_integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> Result<f64> {
    oracle_integrate_with_panels(&f, a, b, tol, 8, MAX_DOUBLINGS)
}

/// [`oracle_integrate`] with the panel floor raised to `8⌈|λ|⌉`, `λ = ω(b−a)/2`.
pub fn oracle_integrate_oscillatory(f: impl Fn(f64) -> f64, a: f64, b: f64, omega: f64, tol: f64) -> Result<f64> {
    let lambda = (omega * (b - a) / 2.0).abs();
    let floor = 8 * (lambda.ceil() as usize).max(1);
    oracle_integrate_with_panels(&f, a, b, tol, floor, MAX_DOUBLINGS)
}

fn oracle_integrate_with_panels(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    tol: f64,
    start: usize,
    max_doublings: u32,
) -> Result<f64> {
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return argument(format!("oracle range needs finite a < b, got [{a}, {b}]"));
    }
    if !(tol >= 1e-14) {
        return argument(format!("oracle tolerance must be at least 1e-14, got {tol}"));
    }
    let mut panels = start;
    let (mut coarse, _) = composite_gl5(f, a, b, panels);
    let mut last: Option<f64> = None;
    for _ in 0..max_doublings {
        panels *= 2;
        let (fine, abs) = composite_gl5(f, a, b, panels);
        let extrapolated = fine + (fine - coarse) / (RICHARDSON_FACTOR - 1.0);
        if let Some(prev) = last {
            let scale = abs.max(extrapolated.abs()).max(f64::MIN_POSITIVE);
            if (extrapolated - prev).abs() <= tol * scale {
                return Ok(extrapolated);
            }
        }
        last = Some(extrapolated);
        coarse = fine;
    }
    Err(Error::Convergence(format!("oracle quadrature on [{a}, {b}] did not reach {tol:e} after {max_doublings} doublings")))
}

/// `f'(x)` or `f''(x)` by Ridders' extrapolation of central differences.
pub fn oracle_derivative(f: impl Fn(f64) -> f64, x: f64, n: u32) -> Result<f64> {
    oracle_derivative_with_step(f, x, n, 0.1)
}

/// [`oracle_derivative`] starting from step `h0`.
pub fn oracle_derivative_with_step(f: impl Fn(f64) -> f64, x: f64, n: u32, h0: f64) -> Result<f64> {
    const NTAB: usize = 12;
    const CON: f64 = 1.4;
    const CON2: f64 = CON * CON;
    let quotient = |h: f64| match n {
        1 => Ok((f(x + h) - f(x - h)) / (2.0 * h)),
        2 => Ok((f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h)),
        _ => argument(format!("oracle derivative order must be 1 or 2, got {n}")),
    };
    if !(h0 > 0.0) {
        return argument(format!("oracle step must be positive, got {h0}"));
    }

    let mut tab = [[0.0f64; NTAB]; NTAB];
    let mut h = h0;
    tab[0][0] = quotient(h)?;
    let (mut best, mut err) = (tab[0][0], f64::INFINITY);
    for i in 1..NTAB {
        h /= CON;
        tab[0][i] = quotient(h)?;
        let mut fac = CON2;
        for j in 1..=i {
            tab[j][i] = (tab[j - 1][i] * fac - tab[j - 1][i - 1]) / (fac - 1.0);
            fac *= CON2;
            let e = (tab[j][i] - tab[j - 1][i]).abs().max((tab[j][i] - tab[j - 1][i - 1]).abs());
            if e <= err {
                err = e;
                best = tab[j][i];
            }
        }
        if (tab[i][i] - tab[i - 1][i - 1]).abs() >= 2.0 * err {
            break;
        }
    }
    Ok(best)
}
