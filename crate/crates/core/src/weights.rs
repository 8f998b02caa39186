//! The four weight functions `g_{s,η}` and their closed derivative cycle.
//!
//! | s | η  | g        |
//! |---|----|----------|
//! | 1 | −1 | `cos`    |
//! | 2 | −1 | `sin`    |
//! | 1 | +1 | `cosh`   |
//! | 2 | +1 | `sinh`   |
//!
//! Differentiation maps the family onto itself with a sign:
//! `g' = η^s g_{3−s}`, `g'' = η g_s`, `g''' = η^{s−1} g_{3−s}`, `g'''' = g_s`.

use crate::error::{Error, Result};

/// Largest `|t|` accepted by the hyperbolic weights. `exp` overflows near 709.8.
pub const MAX_HYPERBOLIC_ARG: f64 = 700.0;

/// Sign `η` selecting trigonometric (`−1`) or hyperbolic (`+1`) weights.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Trigonometric,
    Hyperbolic,
}

impl Family {
    pub fn from_sign(eta: i32) -> Result<Self> {
        match eta {
            -1 => Ok(Family::Trigonometric),
            1 => Ok(Family::Hyperbolic),
            _ => Err(Error::Argument(format!("eta must be -1 or +1, got {eta}"))),
        }
    }

    /// `η` as a float.
    #[inline]
    pub fn eta(self) -> f64 {
        match self {
            Family::Trigonometric => -1.0,
            Family::Hyperbolic => 1.0,
        }
    }

    pub fn sign(self) -> i32 {
        match self {
            Family::Trigonometric => -1,
            Family::Hyperbolic => 1,
        }
    }

    /// The `s = 1` member of the family (`cos` or `cosh`).
    pub fn first(self) -> WeightKind {
        WeightKind { s: 1, family: self }
    }

    /// The `s = 2` member of the family (`sin` or `sinh`).
    pub fn second(self) -> WeightKind {
        WeightKind { s: 2, family: self }
    }
}

/// One of the four weight functions, identified by `(s, η)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct WeightKind {
    s: u8,
    family: Family,
}

impl WeightKind {
    pub const COS: WeightKind = WeightKind { s: 1, family: Family::Trigonometric };
    pub const SIN: WeightKind = WeightKind { s: 2, family: Family::Trigonometric };
    pub const COSH: WeightKind = WeightKind { s: 1, family: Family::Hyperbolic };
    pub const SINH: WeightKind = WeightKind { s: 2, family: Family::Hyperbolic };

    pub const ALL: [WeightKind; 4] = [Self::COS, Self::SIN, Self::COSH, Self::SINH];

    pub fn new(s: u8, family: Family) -> Result<Self> {
        if s == 1 || s == 2 {
            Ok(WeightKind { s, family })
        } else {
            Err(Error::Argument(format!("weight index s must be 1 or 2, got {s}")))
        }
    }

    /// Build from the raw index pair `(s, η)`.
    pub fn from_indices(s: u8, eta: i32) -> Result<Self> {
        Self::new(s, Family::from_sign(eta)?)
    }

    #[inline]
    pub fn s(self) -> u8 {
        self.s
    }

    #[inline]
    pub fn family(self) -> Family {
        self.family
    }

    /// `g_{3−s,η}`: the other member of the pair.
    #[inline]
    pub fn partner(self) -> WeightKind {
        WeightKind { s: 3 - self.s, family: self.family }
    }

    pub fn name(self) -> &'static str {
        match (self.s, self.family) {
            (1, Family::Trigonometric) => "cos",
            (2, Family::Trigonometric) => "sin",
            (1, Family::Hyperbolic) => "cosh",
            _ => "sinh",
        }
    }

    pub fn eval(self, t: f64) -> Result<f64> {
        eval_weight(self, t)
    }

    pub fn derivative(self, m: u32) -> (f64, WeightKind) {
        weight_derivative(self, m)
    }
}

impl std::fmt::Display for WeightKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Frequency `ω` and initial phase `δ` of the weight factor `g(ωx + δ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Oscillation {
    pub omega: f64,
    pub delta: f64,
}

impl Oscillation {
    pub fn new(omega: f64, delta: f64) -> Result<Self> {
        if !omega.is_finite() || !delta.is_finite() {
            return Err(Error::Argument(format!(
                "omega and delta must be finite (omega={omega}, delta={delta})"
            )));
        }
        Ok(Oscillation { omega, delta })
    }

    /// `ωx + δ`.
    #[inline]
    pub fn phase(&self, x: f64) -> f64 {
        self.omega.mul_add(x, self.delta)
    }
}

/// Evaluate `g_{s,η}(t)`.
pub fn eval_weight(kind: WeightKind, t: f64) -> Result<f64> {
    if !t.is_finite() {
        return Err(Error::Argument(format!("weight argument must be finite, got {t}")));
    }
    match kind.family {
        Family::Trigonometric => Ok(if kind.s == 1 { t.cos() } else { t.sin() }),
        Family::Hyperbolic => {
            if t.abs() > MAX_HYPERBOLIC_ARG {
                return Err(Error::Range(format!(
                    "{} argument {t} exceeds +/-{MAX_HYPERBOLIC_ARG}",
                    kind.name()
                )));
            }
            Ok(if kind.s == 1 { t.cosh() } else { t.sinh() })
        }
    }
}

/// `d^m g_{s,η}/dt^m = coeff · g_{kind_out}`, by lookup on `m mod 4`.
pub fn weight_derivative(kind: WeightKind, m: u32) -> (f64, WeightKind) {
    let eta = kind.family.eta();
    match m % 4 {
        0 => (1.0, kind),
        // η^s: for s = 1 this is η, for s = 2 it is η² = 1.
        1 => (if kind.s == 1 { eta } else { 1.0 }, kind.partner()),
        2 => (eta, kind),
        // η^{s−1}
        _ => (if kind.s == 1 { 1.0 } else { eta }, kind.partner()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn anchors() {
        assert_eq!(eval_weight(WeightKind::COS, 0.0).unwrap(), 1.0);
        assert_eq!(eval_weight(WeightKind::SINH, 0.0).unwrap(), 0.0);
        assert_abs_diff_eq!(eval_weight(WeightKind::COS, 10.0).unwrap(), -0.8390715290764524, epsilon = 1e-15);
    }

    #[test]
    fn index_mapping_is_total_and_injective() {
        let kinds: Vec<_> = [(1, -1), (2, -1), (1, 1), (2, 1)]
            .iter()
            .map(|&(s, e)| WeightKind::from_indices(s, e).unwrap())
            .collect();
        assert_eq!(kinds, WeightKind::ALL.to_vec());
        let names: std::collections::HashSet<_> = kinds.iter().map(|k| k.name()).collect();
        assert_eq!(names.len(), 4);
        assert!(WeightKind::from_indices(3, 1).is_err());
        assert!(WeightKind::from_indices(1, 0).is_err());
    }

    #[test]
    fn hyperbolic_overflow_is_reported() {
        assert!(matches!(eval_weight(WeightKind::COSH, 701.0), Err(Error::Range(_))));
        assert!(matches!(eval_weight(WeightKind::SINH, -750.0), Err(Error::Range(_))));
        assert!(eval_weight(WeightKind::COSH, 700.0).unwrap().is_finite());
        // trigonometric weights have no such limit
        assert!(eval_weight(WeightKind::COS, 1e6).is_ok());
        assert!(eval_weight(WeightKind::SIN, f64::NAN).is_err());
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(weight_derivative(WeightKind::COS, 1), (-1.0, WeightKind::SIN));
        assert_eq!(weight_derivative(WeightKind::SINH, 2), (1.0, WeightKind::SINH));
        for k in WeightKind::ALL {
            assert_eq!(weight_derivative(k, 4), (1.0, k));
            assert_eq!(weight_derivative(k, 0), (1.0, k));
        }
        assert_eq!(weight_derivative(WeightKind::SIN, 1), (1.0, WeightKind::COS));
        assert_eq!(weight_derivative(WeightKind::SIN, 3), (-1.0, WeightKind::COS));
        assert_eq!(weight_derivative(WeightKind::COS, 3), (1.0, WeightKind::SIN));
    }

    #[test]
    fn cycle_composes() {
        for k in WeightKind::ALL {
            for m in 0..=16 {
                let (c1, k1) = weight_derivative(k, m);
                let (c2, k2) = weight_derivative(k1, m);
                let (c, kk) = weight_derivative(k, 2 * m);
                assert_eq!((c1 * c2, k2), (c, kk), "{k} m={m}");
            }
        }
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let eps = 1e-6;
        for k in WeightKind::ALL {
            for t in [0.0, 0.7, 3.2] {
                let fd = (eval_weight(k, t + eps).unwrap() - eval_weight(k, t - eps).unwrap()) / (2.0 * eps);
                let (c, ko) = weight_derivative(k, 1);
                let exact = c * eval_weight(ko, t).unwrap();
                assert_abs_diff_eq!(fd, exact, epsilon = 1e-8);
            }
        }
    }
}
