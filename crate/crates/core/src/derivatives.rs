//! Leibniz derivatives of harmonic pairs `Φ(x) = f₁(x) g_{1,η}(ωx+δ) + f₂(x) g_{2,η}(ωx+δ)`.
//!
//! Only the regular factors `f₁`, `f₂` are discretized; the weights enter
//! exactly through their derivative cycle. The resulting errors are
//! independent of `ω` for first derivatives and grow linearly in `|ω|` for
//! second derivatives.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::collections::BTreeMap;

use crate::error::{argument, Error, Result};
use crate::weights::{eval_weight, weight_derivative, Family, Oscillation};

/// `Φ = f₁ g_{1,η} + f₂ g_{2,η}` with a shared oscillation.
///
/// The factor handles are called only at the stencil points an operation
/// names. They must be safe to call from every thread that uses the pair.
#[derive(Clone)]
pub struct HarmonicPair<F1, F2> {
    pub f1: F1,
    pub f2: F2,
    pub family: Family,
    pub osc: Oscillation,
}

/// Stencil centre `x`, step `h` and `λ = hω`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StencilSpec {
    pub x: f64,
    pub h: f64,
    pub lambda: f64,
}

impl StencilSpec {
    pub fn new(x: f64, h: f64, osc: &Oscillation) -> Result<Self> {
        if !(h > 0.0) || !h.is_finite() || !x.is_finite() {
            return argument(format!("stencil needs finite x and h > 0 (x={x}, h={h})"));
        }
        Ok(StencilSpec { x, h, lambda: h * osc.omega })
    }
}

/// Accuracy of the classical difference quotients used for `f^{(m)}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AccuracyOrder {
    Second,
    Fourth,
}

/// The three dedicated discretizations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    /// Two-point `O(h²)` first derivative.
    D1TwoPoint,
    /// Four-point `O(h⁴)` first derivative.
    D1FourPoint,
    /// Three-point `O(h²)` second derivative.
    D2ThreePoint,
}

impl Scheme {
    pub const ALL: [Scheme; 3] = [Scheme::D1TwoPoint, Scheme::D1FourPoint, Scheme::D2ThreePoint];

    pub fn name(self) -> &'static str {
        match self {
            Scheme::D1TwoPoint => "d1_2pt",
            Scheme::D1FourPoint => "d1_4pt",
            Scheme::D2ThreePoint => "d2_3pt",
        }
    }

    /// Derivative order of `Φ` this scheme approximates.
    pub fn derivative_order(self) -> u32 {
        match self {
            Scheme::D1TwoPoint | Scheme::D1FourPoint => 1,
            Scheme::D2ThreePoint => 2,
        }
    }
}

impl std::str::FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Scheme::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Argument(format!("unknown scheme {s:?}")))
    }
}

/// Which regular factor a derivative value belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Factor {
    First,
    Second,
}

/// Known derivative data of one factor at one order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivativeSample {
    /// `sup |f^{(k)}|` over the stencil span.
    pub sup: f64,
    /// Signed `f^{(k)}(x)` at the stencil centre.
    pub at_centre: f64,
}

/// Caller-supplied derivative data for the error reports.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct DerivativeTable {
    entries: BTreeMap<(Factor, u32), DerivativeSample>,
}

impl DerivativeTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, factor: Factor, order: u32, sup: f64, at_centre: f64) -> &mut Self {
        self.entries.insert((factor, order), DerivativeSample { sup: sup.abs(), at_centre });
        self
    }

    pub fn with(mut self, factor: Factor, order: u32, sup: f64, at_centre: f64) -> Self {
        self.insert(factor, order, sup, at_centre);
        self
    }

    /// Declare a factor identically zero for all listed orders.
    pub fn with_zero_factor(mut self, factor: Factor, orders: &[u32]) -> Self {
        for &k in orders {
            self.insert(factor, k, 0.0, 0.0);
        }
        self
    }

    pub fn get(&self, factor: Factor, order: u32) -> Result<DerivativeSample> {
        self.entries
            .get(&(factor, order))
            .copied()
            .ok_or_else(|| Error::Argument(format!("missing derivative of order {order} for {factor:?} factor")))
    }
}

/// Approximate `sup |g|` over `[lo, hi]` by sampling `n + 1` equally spaced points.
///
/// Approximate only: a sampled maximum can miss a narrow peak. Use it when
/// the true supremum is not available in closed form.
pub fn sampled_sup(g: impl Fn(f64) -> f64, lo: f64, hi: f64, n: usize) -> f64 {
    let n = n.max(1);
    (0..=n)
        .map(|i| g(lo + (hi - lo) * i as f64 / n as f64).abs())
        .fold(0.0, f64::max)
}

/// Uniform bound and leading estimate of a discretization error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivErrorReport {
    pub absolute_error_bound: f64,
    pub leading_estimate: f64,
    /// Mean-value convention of the estimate (always 1: the leading Taylor
    /// term, with every derivative taken at the stencil centre).
    pub theta_assumption: f64,
}

// Centred difference weights for f^{(m)}, m = 1..=6, offsets -r..=r.
const CENTRED_O2: [&[f64]; 6] = [
    &[-0.5, 0.0, 0.5],
    &[1.0, -2.0, 1.0],
    &[-0.5, 1.0, 0.0, -1.0, 0.5],
    &[1.0, -4.0, 6.0, -4.0, 1.0],
    &[-0.5, 2.0, -2.5, 0.0, 2.5, -2.0, 0.5],
    &[1.0, -6.0, 15.0, -20.0, 15.0, -6.0, 1.0],
];

const CENTRED_O4: [&[f64]; 6] = [
    &[1.0 / 12.0, -2.0 / 3.0, 0.0, 2.0 / 3.0, -1.0 / 12.0],
    &[-1.0 / 12.0, 4.0 / 3.0, -2.5, 4.0 / 3.0, -1.0 / 12.0],
    &[1.0 / 8.0, -1.0, 13.0 / 8.0, 0.0, -13.0 / 8.0, 1.0, -1.0 / 8.0],
    &[-1.0 / 6.0, 2.0, -6.5, 28.0 / 3.0, -6.5, 2.0, -1.0 / 6.0],
    &[1.0 / 6.0, -1.5, 13.0 / 3.0, -29.0 / 6.0, 0.0, 29.0 / 6.0, -13.0 / 3.0, 1.5, -1.0 / 6.0],
    &[-0.25, 3.0, -13.0, 29.0, -37.5, 29.0, -13.0, 3.0, -0.25],
];

/// Largest derivative order accepted by [`HarmonicPair::dn_general`].
pub const MAX_GENERAL_ORDER: u32 = 6;

/// Centred weights for `h^m f^{(m)}(x)` at offsets `−r..=r`.
pub fn centred_weights(m: u32, order: AccuracyOrder) -> Option<&'static [f64]> {
    let table = match order {
        AccuracyOrder::Second => &CENTRED_O2,
        AccuracyOrder::Fourth => &CENTRED_O4,
    };
    match m {
        1..=6 => Some(table[m as usize - 1]),
        _ => None,
    }
}

fn binomial(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * f64::from(n - i) / f64::from(i + 1))
}

impl<F1, F2> HarmonicPair<F1, F2>
where
    F1: Fn(f64) -> f64,
    F2: Fn(f64) -> f64,
{
    pub fn new(f1: F1, f2: F2, family: Family, osc: Oscillation) -> Self {
        HarmonicPair { f1, f2, family, osc }
    }

    fn weights_at(&self, x: f64) -> Result<(f64, f64)> {
        let t = self.osc.phase(x);
        Ok((eval_weight(self.family.first(), t)?, eval_weight(self.family.second(), t)?))
    }

    /// `Φ(x)`.
    pub fn value(&self, x: f64) -> Result<f64> {
        let (g1, g2) = self.weights_at(x)?;
        Ok((self.f1)(x) * g1 + (self.f2)(x) * g2)
    }

    /// Exact `Φ'(x)` from exact `f₁'(x)`, `f₂'(x)`.
    pub fn exact_d1(&self, x: f64, f1p: f64, f2p: f64) -> Result<f64> {
        let (g1, g2) = self.weights_at(x)?;
        let (w, eta) = (self.osc.omega, self.family.eta());
        let (f1, f2) = ((self.f1)(x), (self.f2)(x));
        Ok((f1p + w * f2) * g1 + (f2p + eta * w * f1) * g2)
    }

    /// Exact `Φ''(x)` from exact first and second derivatives of the factors.
    pub fn exact_d2(&self, x: f64, f1p: f64, f2p: f64, f1pp: f64, f2pp: f64) -> Result<f64> {
        let (g1, g2) = self.weights_at(x)?;
        let (w, eta) = (self.osc.omega, self.family.eta());
        let (f1, f2) = ((self.f1)(x), (self.f2)(x));
        let c1 = f1pp + 2.0 * w * f2p + eta * w * w * f1;
        let c2 = f2pp + 2.0 * eta * w * f1p + eta * w * w * f2;
        Ok(c1 * g1 + c2 * g2)
    }

    /// Two-point `O(h²)` approximation of `Φ'(x)`; samples `x−h, x, x+h`.
    pub fn d1_two_point(&self, st: &StencilSpec) -> Result<f64> {
        let (x, h, lambda) = (st.x, st.h, st.lambda);
        let eta = self.family.eta();
        let (g1, g2) = self.weights_at(x)?;
        let (f1m, f1c, f1p) = ((self.f1)(x - h), (self.f1)(x), (self.f1)(x + h));
        let (f2m, f2c, f2p) = ((self.f2)(x - h), (self.f2)(x), (self.f2)(x + h));
        let c1 = f1p - f1m + 2.0 * lambda * f2c;
        let c2 = f2p - f2m + 2.0 * eta * lambda * f1c;
        Ok((c1 * g1 + c2 * g2) / (2.0 * h))
    }

    /// Four-point `O(h⁴)` approximation of `Φ'(x)`; samples `x−2h, …, x+2h`.
    pub fn d1_four_point(&self, st: &StencilSpec) -> Result<f64> {
        let (x, h, lambda) = (st.x, st.h, st.lambda);
        let eta = self.family.eta();
        let (g1, g2) = self.weights_at(x)?;
        let five = |f: &dyn Fn(f64) -> f64| [f(x - 2.0 * h), f(x - h), f(x), f(x + h), f(x + 2.0 * h)];
        let a = five(&self.f1);
        let b = five(&self.f2);
        let c1 = a[0] - 8.0 * a[1] + 8.0 * a[3] - a[4] + 12.0 * lambda * b[2];
        let c2 = b[0] - 8.0 * b[1] + 8.0 * b[3] - b[4] + 12.0 * eta * lambda * a[2];
        Ok((c1 * g1 + c2 * g2) / (12.0 * h))
    }

    /// Three-point `O(h²)` approximation of `Φ''(x)`; samples `x−h, x, x+h`.
    pub fn d2_three_point(&self, st: &StencilSpec) -> Result<f64> {
        let (x, h, lambda) = (st.x, st.h, st.lambda);
        let eta = self.family.eta();
        let (g1, g2) = self.weights_at(x)?;
        let (f1m, f1c, f1p) = ((self.f1)(x - h), (self.f1)(x), (self.f1)(x + h));
        let (f2m, f2c, f2p) = ((self.f2)(x - h), (self.f2)(x), (self.f2)(x + h));
        let centre = eta * lambda * lambda - 2.0;
        let c1 = f1p + centre * f1c + f1m + lambda * (f2p - f2m);
        let c2 = f2p + centre * f2c + f2m + eta * lambda * (f1p - f1m);
        Ok((c1 * g1 + c2 * g2) / (h * h))
    }

    /// Dispatch to one of the dedicated schemes.
    pub fn approximate(&self, scheme: Scheme, st: &StencilSpec) -> Result<f64> {
        match scheme {
            Scheme::D1TwoPoint => self.d1_two_point(st),
            Scheme::D1FourPoint => self.d1_four_point(st),
            Scheme::D2ThreePoint => self.d2_three_point(st),
        }
    }

    /// `Φ^{(n)}(x)` from the Leibniz sum with each `f^{(n−k)}` replaced by a
    /// classical centred difference of the requested accuracy.
    ///
    /// For `n = 2` at second order the `f'` term uses the same three points
    /// `x−h, x, x+h` as the dedicated three-point scheme, so the two agree to
    /// rounding.
    pub fn dn_general(&self, n: u32, order: AccuracyOrder, st: &StencilSpec) -> Result<f64> {
        if n > MAX_GENERAL_ORDER {
            return argument(format!("derivative order {n} exceeds {MAX_GENERAL_ORDER}"));
        }
        let (x, h, omega) = (st.x, st.h, self.osc.omega);
        let t = self.osc.phase(x);
        // half-width of the widest stencil needed (for k = 0, derivative order n)
        let reach = (1..=n)
            .filter_map(|m| centred_weights(m, order))
            .map(|w| w.len() / 2)
            .max()
            .unwrap_or(0);
        let sample = |f: &dyn Fn(f64) -> f64| -> Vec<f64> {
            (0..=2 * reach).map(|i| f(x + (i as f64 - reach as f64) * h)).collect()
        };
        let s1 = sample(&self.f1);
        let s2 = sample(&self.f2);
        let diff = |s: &[f64], m: u32| -> f64 {
            if m == 0 {
                return s[reach];
            }
            let w = centred_weights(m, order).expect("m <= 6");
            let r = w.len() / 2;
            let offset = reach - r;
            w.iter().zip(&s[offset..offset + w.len()]).map(|(c, v)| c * v).sum::<f64>() / h.powi(m as i32)
        };
        let mut total = 0.0;
        for k in 0..=n {
            let scale = binomial(n, k) * omega.powi(k as i32);
            for (kind, samples) in [(self.family.first(), &s1), (self.family.second(), &s2)] {
                let (coeff, out) = weight_derivative(kind, k);
                total += scale * diff(samples, n - k) * coeff * eval_weight(out, t)?;
            }
        }
        Ok(total)
    }

    /// Uniform bound and leading estimate of the error `Φ^{(n)}(x) − approximation`.
    ///
    /// The table must hold, for both factors, the orders the scheme needs:
    /// 3 for `D1TwoPoint`, 5 for `D1FourPoint`, 3 and 4 for `D2ThreePoint`.
    /// Suprema are taken over `[x−h, x+h]` (`[x−2h, x+2h]` for the four-point
    /// scheme).
    pub fn error_report(&self, scheme: Scheme, st: &StencilSpec, table: &DerivativeTable) -> Result<DerivErrorReport> {
        let (g1, g2) = self.weights_at(st.x)?;
        let h2 = st.h * st.h;
        let (bound, estimate) = match scheme {
            Scheme::D1TwoPoint => {
                let (a, b) = (table.get(Factor::First, 3)?, table.get(Factor::Second, 3)?);
                (h2 / 6.0 * (a.sup + b.sup), -h2 / 6.0 * (a.at_centre * g1 + b.at_centre * g2))
            }
            Scheme::D1FourPoint => {
                let (a, b) = (table.get(Factor::First, 5)?, table.get(Factor::Second, 5)?);
                let h4 = h2 * h2;
                (h4 / 30.0 * (a.sup + b.sup), h4 / 30.0 * (a.at_centre * g1 + b.at_centre * g2))
            }
            Scheme::D2ThreePoint => {
                let (a3, b3) = (table.get(Factor::First, 3)?, table.get(Factor::Second, 3)?);
                let (a4, b4) = (table.get(Factor::First, 4)?, table.get(Factor::Second, 4)?);
                let (w, eta) = (self.osc.omega, self.family.eta());
                let bound = h2 / 12.0
                    * (a4.sup + 4.0 * w.abs() * b3.at_centre.abs() + b4.sup + 4.0 * w.abs() * a3.at_centre.abs());
                let c1 = a4.at_centre + 4.0 * w * b3.at_centre;
                let c2 = b4.at_centre + 4.0 * eta * w * a3.at_centre;
                (bound, -h2 / 12.0 * (c1 * g1 + c2 * g2))
            }
        };
        Ok(DerivErrorReport { absolute_error_bound: bound, leading_estimate: estimate, theta_assumption: 1.0 })
    }
}
