//! Interpolatory Simpson sums for `∫ f(x) g_{s,η}(ωx+δ) dx` and for harmonic pairs.
//!
//! The regular factor is replaced by its parabola through three knots
//! `a = x₀ < x₂ < x₁ = b` and the product with the weight is integrated
//! exactly. After mapping `[a, b]` onto `[−1, 1]` (`x = c + hy`) the two
//! integrals of a family are linked to a pair of reduced integrals on
//! `[−1, 1]` by the transfer matrix
//!
//! ```text
//! ⎡I₁⎤   ⎡R₁  ηR₂⎤ ⎡∫ψ g₁(λy)⎤        R_s = h g_{s,η}(ωc + δ)
//! ⎣I₂⎦ = ⎣R₂   R₁⎦ ⎣∫ψ g₂(λy)⎦
//! ```
//!
//! and the reduced integrals of the parabola are closed forms in
//! `₀F₁(5/2; ηλ²/4)` and `₀F₁(7/2; ηλ²/4)`.
//!
//! Knot labelling: internally the interior knot is `x₂` with sample `f₂`
//! and the right end point is `x₁` with sample `f₁`. Public constructors
//! take samples as `(left, mid, right)` so callers never see that ordering.

use crate::derivatives::HarmonicPair;
use crate::error::{argument, Result};
use crate::hypergeom::hyp0f1_basis;
use crate::weights::{eval_weight, Family, Oscillation, WeightKind};

/// Relative size below which a range is rejected as degenerate.
pub const MIN_RELATIVE_HALF_LENGTH: f64 = 1e-12;

/// `[a, b]` mapped onto `[−1, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RangeMap {
    pub a: f64,
    pub b: f64,
    /// Centre `(a + b)/2`.
    pub c: f64,
    /// Half-length `(b − a)/2`.
    pub h: f64,
    /// Centre phase `ωc + δ`.
    pub phi_c: f64,
    /// Reduced frequency `hω`.
    pub lambda: f64,
}

impl RangeMap {
    pub fn new(a: f64, b: f64, osc: &Oscillation) -> Result<Self> {
        if !a.is_finite() || !b.is_finite() || a >= b {
            return argument(format!("integration range needs finite a < b, got [{a}, {b}]"));
        }
        let c = (b + a) / 2.0;
        let h = (b - a) / 2.0;
        if h < MIN_RELATIVE_HALF_LENGTH * a.abs().max(b.abs()).max(1.0) {
            return argument(format!("integration range [{a}, {b}] is too short to resolve"));
        }
        Ok(RangeMap { a, b, c, h, phi_c: osc.phase(c), lambda: h * osc.omega })
    }

    /// `y = (x − c)/h`.
    #[inline]
    pub fn to_reduced(&self, x: f64) -> f64 {
        (x - self.c) / self.h
    }
}

/// Shorthand for [`RangeMap::new`].
pub fn make_range(a: f64, b: f64, osc: &Oscillation) -> Result<RangeMap> {
    RangeMap::new(a, b, osc)
}

/// `R_s = h g_{s,η}(φ_c)` arranged as `[[R₁, ηR₂], [R₂, R₁]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransferMatrix {
    pub r1: f64,
    pub r2: f64,
    pub family: Family,
}

impl TransferMatrix {
    pub fn new(rm: &RangeMap, family: Family) -> Result<Self> {
        Ok(TransferMatrix {
            r1: rm.h * eval_weight(family.first(), rm.phi_c)?,
            r2: rm.h * eval_weight(family.second(), rm.phi_c)?,
            family,
        })
    }

    pub fn rows(&self) -> [[f64; 2]; 2] {
        [[self.r1, self.family.eta() * self.r2], [self.r2, self.r1]]
    }

    /// Row `s` of the matrix applied to a pair of reduced values.
    pub fn apply(&self, s: u8, first: f64, second: f64) -> f64 {
        let row = self.rows()[usize::from(s == 2)];
        row[0] * first + row[1] * second
    }
}

/// Shorthand for [`TransferMatrix::new`].
pub fn transfer_matrix(rm: &RangeMap, family: Family) -> Result<TransferMatrix> {
    TransferMatrix::new(rm, family)
}

/// Interpolation knots and samples.
///
/// Field names follow the `x₀ < x₂ < x₁` labelling: `f2` is the interior
/// sample and `f1` the right end point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KnotTriple {
    pub x0: f64,
    pub x2: f64,
    pub x1: f64,
    /// Interior knot on `[−1, 1]`.
    pub y2: f64,
    /// Ratio of the subrange lengths, `(1 + y₂)/(1 − y₂)`.
    pub rho: f64,
    pub f0: f64,
    pub f2: f64,
    pub f1: f64,
}

impl KnotTriple {
    /// Knots `a < mid_x < b` with samples given left to right.
    pub fn new(rm: &RangeMap, mid_x: f64, left: f64, mid: f64, right: f64) -> Result<Self> {
        if !(rm.a < mid_x && mid_x < rm.b) {
            return argument(format!("interior knot {mid_x} must lie strictly inside ({}, {})", rm.a, rm.b));
        }
        let y2 = rm.to_reduced(mid_x);
        Ok(KnotTriple { x0: rm.a, x2: mid_x, x1: rm.b, y2, rho: (1.0 + y2) / (1.0 - y2), f0: left, f2: mid, f1: right })
    }

    /// Sample `f` at the three knots.
    pub fn sample(rm: &RangeMap, mid_x: f64, f: impl Fn(f64) -> f64) -> Result<Self> {
        if !(rm.a < mid_x && mid_x < rm.b) {
            return argument(format!("interior knot {mid_x} must lie strictly inside ({}, {})", rm.a, rm.b));
        }
        Self::new(rm, mid_x, f(rm.a), f(mid_x), f(rm.b))
    }

    /// Same knots, new samples (left, mid, right).
    pub fn with_samples(&self, left: f64, mid: f64, right: f64) -> Self {
        KnotTriple { f0: left, f2: mid, f1: right, ..*self }
    }
}

/// Chebyshev coefficients of the interpolating parabola `ℓ₂(y) = Σ β_{i2} T_i(y)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChebCoeffs {
    pub beta02: f64,
    pub beta12: f64,
    pub beta22: f64,
}

impl ChebCoeffs {
    /// `ℓ₂(y)`.
    pub fn eval(&self, y: f64) -> f64 {
        self.beta02 + self.beta12 * y + self.beta22 * (2.0 * y * y - 1.0)
    }
}

pub fn cheb_coeffs(k: &KnotTriple) -> ChebCoeffs {
    let (rho, inv) = (k.rho, 1.0 / k.rho);
    let mid = 2.0 + rho + inv;
    ChebCoeffs {
        beta02: ((3.0 - inv) * k.f0 + mid * k.f2 + (3.0 - rho) * k.f1) / 8.0,
        beta12: (k.f1 - k.f0) / 2.0,
        beta22: ((1.0 + inv) * k.f0 - mid * k.f2 + (1.0 + rho) * k.f1) / 8.0,
    }
}

/// `∫₋₁¹ ℓ₂(y) g_{1,η}(λy) dy` and `∫₋₁¹ ℓ₂(y) g_{2,η}(λy) dy`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedIntegrals {
    pub first: f64,
    pub second: f64,
}

/// Weight of the `₀F₁(5/2)` term: `2β₀₂ − (2/3)β₂₂`, which is the plain
/// Simpson sum `(f₀ + 4f₂ + f₁)/3` at `ρ = 1`.
fn c1_coefficient(k: &KnotTriple) -> f64 {
    let (rho, inv) = (k.rho, 1.0 / k.rho);
    ((2.0 - inv) * k.f0 + (2.0 + rho + inv) * k.f2 + (2.0 - rho) * k.f1) / 3.0
}

pub fn reduced_integrals(k: &KnotTriple, lambda: f64, family: Family) -> Result<ReducedIntegrals> {
    let basis = hyp0f1_basis(lambda, family, 7)?;
    Ok(reduced_from_basis(k, lambda, family, basis[2], basis[3]))
}

fn reduced_from_basis(k: &KnotTriple, lambda: f64, family: Family, f52: f64, f72: f64) -> ReducedIntegrals {
    let eta = family.eta();
    ReducedIntegrals {
        first: c1_coefficient(k) * f52 + eta * lambda * lambda / 15.0 * (k.f0 + k.f1) * f72,
        second: lambda / 3.0 * (k.f1 - k.f0) * f52,
    }
}

/// Leading coefficients of the interpolation error `ψ − ℓ₂`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Alphas {
    /// Non-uniform knot term; zero for equally spaced knots.
    pub alpha0: f64,
    /// `h³ f'''(c) / 6`.
    pub alpha3: f64,
    /// `h⁴ f''''(c) / 24`.
    pub alpha4: f64,
}

/// Leading error estimate of one basic quadrature sum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorEstimate {
    pub alphas: Alphas,
    /// Estimate of `∫₋₁¹ (ψ − ℓ₂) g_{1,η}(λy) dy`.
    pub reduced_err1: f64,
    /// Estimate of `∫₋₁¹ (ψ − ℓ₂) g_{2,η}(λy) dy`.
    pub reduced_err2: f64,
    /// Estimate of `I − Q` over `[a, b]` for the requested weight.
    pub est_error: f64,
}

fn alphas(k: &KnotTriple, h: f64, f3c: f64, f4c: f64) -> Alphas {
    let alpha3 = h.powi(3) * f3c / 6.0;
    let alpha4 = h.powi(4) * f4c / 24.0;
    let y2 = k.y2;
    let alpha0 = if y2 == 0.0 { 0.0 } else { -(3.0 + k.rho) / 4.0 * y2 * alpha3 - y2 * y2 * alpha4 };
    Alphas { alpha0, alpha3, alpha4 }
}

fn reduced_errors(al: &Alphas, lambda: f64, f52: f64, f72: f64) -> (f64, f64) {
    let e1 = -4.0 / 3.0 * ((al.alpha0 + al.alpha4) * f52 - 0.8 * al.alpha4 * f72);
    let e2 = -4.0 / 15.0 * lambda * al.alpha3 * f72;
    (e1, e2)
}

/// Leading error of the basic sum for `kind`, given `f'''(c)` and `f''''(c)`.
pub fn quad_error_estimate(k: &KnotTriple, rm: &RangeMap, kind: WeightKind, f3c: f64, f4c: f64) -> Result<ErrorEstimate> {
    let basis = hyp0f1_basis(rm.lambda, kind.family(), 7)?;
    let al = alphas(k, rm.h, f3c, f4c);
    let (e1, e2) = reduced_errors(&al, rm.lambda, basis[2], basis[3]);
    let r = TransferMatrix::new(rm, kind.family())?;
    Ok(ErrorEstimate { alphas: al, reduced_err1: e1, reduced_err2: e2, est_error: r.apply(kind.s(), e1, e2) })
}

/// Value and leading error estimate of a quadrature sum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadOutcome {
    pub value: f64,
    /// Signed estimate of `I − Q`.
    pub est_error: f64,
    /// Error coefficients of the (first) regular factor.
    pub alphas: Alphas,
    /// Error coefficients of `f₂` for harmonic pairs.
    pub partner_alphas: Option<Alphas>,
}

impl QuadOutcome {
    pub fn alpha0(&self) -> f64 {
        self.alphas.alpha0
    }
    pub fn alpha3(&self) -> f64 {
        self.alphas.alpha3
    }
    pub fn alpha4(&self) -> f64 {
        self.alphas.alpha4
    }
}

/// `O(h²)` centred `f'''(c)` and `f''''(c)` on the five points `c ± h`, `c ± h/2`, `c`.
///
/// The end points reuse the knot samples; `f(c)` is reused when the interior knot sits at the centre.
fn centre_derivatives(k: &KnotTriple, rm: &RangeMap, f: &dyn Fn(f64) -> f64) -> (f64, f64) {
    let s = rm.h / 2.0;
    let centre = if k.y2 == 0.0 { k.f2 } else { f(rm.c) };
    let (lo, hi) = (f(rm.c - s), f(rm.c + s));
    let third = (k.f1 - 2.0 * hi + 2.0 * lo - k.f0) / (2.0 * s * s * s);
    let fourth = (k.f1 - 4.0 * hi + 6.0 * centre - 4.0 * lo + k.f0) / (s * s * s * s);
    (third, fourth)
}

/// Simpson-type sum for `∫ₐᵇ f(x) g_kind(ωx+δ) dx` with interior knot `x2`.
pub fn quad_basic(f: impl Fn(f64) -> f64, kind: WeightKind, osc: &Oscillation, a: f64, b: f64, x2: f64) -> Result<QuadOutcome> {
    let rm = RangeMap::new(a, b, osc)?;
    let k = KnotTriple::sample(&rm, x2, &f)?;
    let family = kind.family();
    let basis = hyp0f1_basis(rm.lambda, family, 7)?;
    let (f52, f72) = (basis[2], basis[3]);
    let r = TransferMatrix::new(&rm, family)?;
    let red = reduced_from_basis(&k, rm.lambda, family, f52, f72);
    let (f3c, f4c) = centre_derivatives(&k, &rm, &f);
    let al = alphas(&k, rm.h, f3c, f4c);
    let (e1, e2) = reduced_errors(&al, rm.lambda, f52, f72);
    Ok(QuadOutcome {
        value: r.apply(kind.s(), red.first, red.second),
        est_error: r.apply(kind.s(), e1, e2),
        alphas: al,
        partner_alphas: None,
    })
}

/// Simpson-type sum for `∫ₐᵇ Φ(x) dx` with `Φ = f₁g_{1,η} + f₂g_{2,η}`.
pub fn quad_harmonic<F1, F2>(p: &HarmonicPair<F1, F2>, a: f64, b: f64, x2: f64) -> Result<QuadOutcome>
where
    F1: Fn(f64) -> f64,
    F2: Fn(f64) -> f64,
{
    let rm = RangeMap::new(a, b, &p.osc)?;
    let k1 = KnotTriple::sample(&rm, x2, &p.f1)?;
    let k2 = KnotTriple::sample(&rm, x2, &p.f2)?;
    let eta = p.family.eta();
    let basis = hyp0f1_basis(rm.lambda, p.family, 7)?;
    let (f52, f72) = (basis[2], basis[3]);
    let r = TransferMatrix::new(&rm, p.family)?;

    let red1 = reduced_from_basis(&k1, rm.lambda, p.family, f52, f72);
    let red2 = reduced_from_basis(&k2, rm.lambda, p.family, f52, f72);
    let value = (red1.first + red2.second) * r.r1 + (red2.first + eta * red1.second) * r.r2;

    let (a3, a4) = centre_derivatives(&k1, &rm, &p.f1);
    let (b3, b4) = centre_derivatives(&k2, &rm, &p.f2);
    let al1 = alphas(&k1, rm.h, a3, a4);
    let al2 = alphas(&k2, rm.h, b3, b4);
    let (e11, e12) = reduced_errors(&al1, rm.lambda, f52, f72);
    let (e21, e22) = reduced_errors(&al2, rm.lambda, f52, f72);
    let est_error = (e11 + e22) * r.r1 + (e21 + eta * e12) * r.r2;

    Ok(QuadOutcome { value, est_error, alphas: al1, partner_alphas: Some(al2) })
}
