//! Numerical toolkit for Bohr-radius bounds on unit balls of
//! finite-dimensional complex sequence spaces.
//!
//! The λ-powered Bohr radius of a Reinhardt ball `B_Z ⊂ ℂⁿ` asks for the
//! largest `r` such that every bounded (pluri)harmonic function `f` on `B_Z`
//! satisfies the majorant inequality
//!
//! ```text
//! sup_{z ∈ r·B_Z}  Σ_α ( ‖U(a_α)‖^p + ‖U(b_α)‖^p ) |z^α|^p  ≤  λ^p ‖f‖^p
//! ```
//!
//! where `a_α`, `b_α` are the holomorphic/anti-holomorphic coefficients of
//! `f = h + ḡ` and `U` is a bounded operator on the coefficient algebra.
//! This crate evaluates the closed-form bounds available for that radius,
//! computes the Banach-space invariants they consume, and estimates the
//! radius empirically from test-function families.
//!
//! The crate has four layers:
//!
//! * [`spaces`] — Minkowski `ℓ_q`, mixed `ℓ_s(ℓ_t)`, Lorentz and Orlicz
//!   norms on `ℂⁿ`, plus the invariants the bound formulas consume:
//!   embedding norms of formal identities, dual norms of the ones vector,
//!   Minkowski functionals and domain-scaling factors.
//! * [`poly`] — sparse multi-index polynomials with complex scalar or small
//!   complex matrix coefficients, pluriharmonic evaluation, sup-norm
//!   estimation on Reinhardt balls, and powered coefficient-majorant sums.
//! * [`bounds`] — the closed-form lower/upper bound formulas, with every
//!   existence-only constant exposed through [`bounds::BoundConstants`].
//! * [`estimator`] — empirical upper estimates of the radius by bisection
//!   of majorant margins over function families, homogeneous-radius
//!   estimation, Schwarz–Pick coefficient checks, and the necessity scan
//!   for the `‖U‖ < λ` hypothesis.
//!
//! All numeric search paths are deterministic given an explicit seed; no
//! operation keeps shared mutable state.

pub mod bounds;
pub mod error;
pub mod estimator;
pub mod optimize;
pub mod poly;
pub mod spaces;

pub use error::{Error, Result};

/// Reciprocal in the extended reals: `1/∞ = 0`.
///
/// Exponents like `q`, `s`, `t`, `p` and cotype parameters may be
/// `f64::INFINITY`; every exponent computation goes through this helper so
/// the `1/q = 0` convention is applied uniformly.
pub fn inv_ext(e: f64) -> f64 {
    if e.is_infinite() {
        0.0
    } else {
        1.0 / e
    }
}

/// Validates an exponent in `[1, ∞]` (finite or positive infinity).
pub(crate) fn check_exponent(name: &str, e: f64) -> Result<()> {
    if e.is_nan() || e < 1.0 {
        return Err(Error::InvalidParameter(format!(
            "{name} must lie in [1, inf], got {e}"
        )));
    }
    Ok(())
}
