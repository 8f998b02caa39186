//! Frequency-uniform derivatives and Simpson-type quadrature for oscillatory
//! products `f(x) g(ωx + δ)` with `g ∈ {cos, sin, cosh, sinh}`.
//!
//! The regular factor `f` is discretized while the weight enters exactly, so
//! first-derivative errors do not grow with `ω` and quadrature errors decay
//! as `ω` increases.
//!
//! ```
//! use osc_ops::reference::oracle_integrate;
//! use osc_ops::{quad_basic, Oscillation, WeightKind};
//!
//! let osc = Oscillation::new(40.0, 0.0).unwrap();
//! let q = quad_basic(|x| 1.0 / (1.0 + x), WeightKind::COS, &osc, 0.9, 1.1, 1.0).unwrap();
//! let exact = oracle_integrate(|x| (40.0 * x).cos() / (1.0 + x), 0.9, 1.1, 1e-13).unwrap();
//! assert!((exact - q.value).abs() <= 1.5 * q.est_error.abs());
//! ```

pub mod derivatives;
pub mod error;
pub mod hypergeom;
pub mod quadrature;
pub mod reference;
pub mod weights;

pub use derivatives::{
    sampled_sup, AccuracyOrder, DerivErrorReport, DerivativeSample, DerivativeTable, Factor, HarmonicPair, Scheme,
    StencilSpec,
};
pub use error::{Error, Result};
pub use hypergeom::{accuracy_audit, hyp0f1, hyp0f1_basis, AuditRecord, HypArg};
pub use quadrature::{
    cheb_coeffs, make_range, quad_basic, quad_error_estimate, quad_harmonic, reduced_integrals, transfer_matrix,
    Alphas, ChebCoeffs, ErrorEstimate, KnotTriple, QuadOutcome, RangeMap, ReducedIntegrals, TransferMatrix,
};
pub use weights::{eval_weight, weight_derivative, Family, Oscillation, WeightKind};
