//! Multi-index power-series model for holomorphic and pluriharmonic
//! polynomials with scalar or matrix coefficients.
//!
//! A [`PluriharmonicPoly`] stores two sparse coefficient maps in
//! graded-lex order: the holomorphic part `a_α` and the anti-holomorphic
//! part `b_α` (with no entry at `α = 0`). Evaluation follows
//!
//! ```text
//! f(z) = Σ_α a_α z^α + Σ_{α≠0} b*_α z̄^α,
//! ```
//!
//! i.e. the stored `b_α` enter through their adjoints. The module also
//! provides the two quantities the Bohr-radius machinery needs from a
//! polynomial: a sup-norm estimate over a space's ball (certified when an
//! analytically known value is attached, a multi-start lower estimate
//! otherwise) and the powered majorant sum
//!
//! ```text
//! M(r) = sup_{z ∈ r·Ω} Σ_α (‖U(a_α)‖^p + ‖U(b_α)‖^p) |z^α|^p,
//! ```
//!
//! which by monotonicity in each `|z_i|` is always attained on the
//! nonnegative boundary shell of the complete Reinhardt domain `r·Ω`.

mod coeff;
pub mod family;
pub mod serial;

pub use coeff::{BoundedOperatorU, CoeffKind, CoeffValue, MultiIndex};

use crate::error::{Error, Result};
use crate::optimize::{multistart_max, nonneg_starts};
use crate::spaces::{NumericBudget, SpaceDescriptor};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

/// An analytically known sup norm, attached by family constructors.
#[derive(Clone, Debug)]
pub struct KnownSup {
    pub value: f64,
    /// The domain the value refers to.
    pub space: SpaceDescriptor,
}

/// Closed-form majorant attached to Möbius-type members.
#[derive(Clone, Debug)]
pub enum MajorantOracle {
    /// `φ_a` in the single variable `coord`: for `U = λ₀I` the full
    /// (untruncated) majorant is
    /// `λ₀^p (a^p + ((1−a²)w)^p / (1−(aw)^p))` at `w = r·sup|z_coord|`.
    MobiusTail { a: f64, coord: usize },
}

/// A pluriharmonic polynomial `f = h + ḡ` with sparse multi-index
/// coefficient maps.
#[derive(Clone, Debug)]
pub struct PluriharmonicPoly {
    dim: usize,
    kind: CoeffKind,
    a: BTreeMap<MultiIndex, CoeffValue>,
    b: BTreeMap<MultiIndex, CoeffValue>,
    known_sup: Option<KnownSup>,
    oracle: Option<MajorantOracle>,
    /// Stable identifier used in estimator reports and serialization.
    pub label: Option<String>,
}

/// Result of a sup-norm query.
#[derive(Clone, Debug)]
pub struct SupEstimate {
    pub value: f64,
    /// True when the value is analytically exact for the queried space.
    pub certified: bool,
    /// Spread across optimizer restarts (0 for certified values); a
    /// proxy for how far below the true sup the estimate may sit.
    pub uncertainty: f64,
    /// False when the search exhausted its sweep budget while still
    /// improving.
    pub converged: bool,
}

/// Majorant-sum value together with its numeric uncertainty (0 on the
/// deterministic evaluation paths).
#[derive(Clone, Debug)]
pub struct MajorantValue {
    pub value: f64,
    pub uncertainty: f64,
}

impl PluriharmonicPoly {
    pub fn new(dim: usize, kind: CoeffKind) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidParameter("dimension must be at least 1".into()));
        }
        if let CoeffKind::Matrix(0) = kind {
            return Err(Error::InvalidParameter("matrix size must be at least 1".into()));
        }
        Ok(PluriharmonicPoly {
            dim,
            kind,
            a: BTreeMap::new(),
            b: BTreeMap::new(),
            known_sup: None,
            oracle: None,
            label: None,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coeff_kind(&self) -> CoeffKind {
        self.kind
    }

    fn check_coeff(&self, alpha: &MultiIndex, value: &CoeffValue) -> Result<()> {
        if alpha.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: alpha.len(),
            });
        }
        if value.kind() != self.kind {
            return Err(Error::InvalidParameter(format!(
                "coefficient kind {} does not match polynomial kind {}",
                value.kind(),
                self.kind
            )));
        }
        if !value.is_finite() {
            return Err(Error::NonFinite(format!("coefficient at {alpha}")));
        }
        Ok(())
    }

    /// Sets (or clears, when zero) the holomorphic coefficient `a_α`.
    pub fn set_a(&mut self, alpha: MultiIndex, value: CoeffValue) -> Result<()> {
        self.check_coeff(&alpha, &value)?;
        if value.is_zero() {
            self.a.remove(&alpha);
        } else {
            self.a.insert(alpha, value);
        }
        Ok(())
    }

    /// Sets the anti-holomorphic coefficient `b_α`; `α = 0` is rejected
    /// (the constant term lives in the holomorphic part only).
    pub fn set_b(&mut self, alpha: MultiIndex, value: CoeffValue) -> Result<()> {
        self.check_coeff(&alpha, &value)?;
        if alpha.degree() == 0 {
            return Err(Error::InvalidParameter(
                "the anti-holomorphic part has no constant coefficient".into(),
            ));
        }
        if value.is_zero() {
            self.b.remove(&alpha);
        } else {
            self.b.insert(alpha, value);
        }
        Ok(())
    }

    pub fn a_coeffs(&self) -> impl Iterator<Item = (&MultiIndex, &CoeffValue)> {
        self.a.iter()
    }

    pub fn b_coeffs(&self) -> impl Iterator<Item = (&MultiIndex, &CoeffValue)> {
        self.b.iter()
    }

    pub fn coeff_a(&self, alpha: &MultiIndex) -> Option<&CoeffValue> {
        self.a.get(alpha)
    }

    pub fn coeff_b(&self, alpha: &MultiIndex) -> Option<&CoeffValue> {
        self.b.get(alpha)
    }

    /// The constant coefficient `a₀` (zero if absent).
    pub fn constant_term(&self) -> CoeffValue {
        self.a
            .get(&MultiIndex::zero(self.dim))
            .cloned()
            .unwrap_or_else(|| CoeffValue::zero(self.kind))
    }

    pub fn with_known_sup(mut self, value: f64, space: SpaceDescriptor) -> Self {
        self.known_sup = Some(KnownSup { value, space });
        self
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub(crate) fn with_oracle(mut self, oracle: MajorantOracle) -> Self {
        self.oracle = Some(oracle);
        self
    }

    pub fn known_sup(&self) -> Option<&KnownSup> {
        self.known_sup.as_ref()
    }

    pub fn oracle(&self) -> Option<&MajorantOracle> {
        self.oracle.as_ref()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty() && self.b.is_empty()
    }

    pub fn is_holomorphic(&self) -> bool {
        self.b.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.a.len() + self.b.len()
    }

    pub fn max_degree(&self) -> u32 {
        self.a
            .keys()
            .chain(self.b.keys())
            .map(|a| a.degree())
            .max()
            .unwrap_or(0)
    }

    /// `Some(m)` when every stored index has total degree `m` (and the
    /// polynomial is nonempty).
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degrees = self.a.keys().chain(self.b.keys()).map(|a| a.degree());
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    /// `Some(i)` when every non-constant index is supported on
    /// coordinate `i` alone; `None` for constants and genuinely
    /// multivariate polynomials.
    pub fn single_variable(&self) -> Option<usize> {
        let mut coord = None;
        for alpha in self.a.keys().chain(self.b.keys()) {
            for (i, &ai) in alpha.entries().iter().enumerate() {
                if ai > 0 {
                    match coord {
                        None => coord = Some(i),
                        Some(c) if c != i => return None,
                        _ => {}
                    }
                }
            }
        }
        coord
    }

    /// `f(z) = Σ a_α z^α + Σ b*_α z̄^α`.
    pub fn evaluate(&self, z: &[Complex64]) -> Result<CoeffValue> {
        if z.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: z.len(),
            });
        }
        let mut acc = CoeffValue::zero(self.kind);
        for (alpha, c) in &self.a {
            acc = acc.add(&c.scale(alpha.monomial(z)))?;
        }
        for (alpha, c) in &self.b {
            acc = acc.add(&c.adjoint().scale(alpha.monomial(z).conj()))?;
        }
        Ok(acc)
    }

    /// Restriction of both coefficient maps to `|α| = m`. Analytic
    /// attributes (known sup, majorant oracle) do not transfer.
    pub fn homogeneous_part(&self, m: u32) -> PluriharmonicPoly {
        let filter = |map: &BTreeMap<MultiIndex, CoeffValue>| {
            map.iter()
                .filter(|(alpha, _)| alpha.degree() == m)
                .map(|(alpha, c)| (alpha.clone(), c.clone()))
                .collect()
        };
        PluriharmonicPoly {
            dim: self.dim,
            kind: self.kind,
            a: filter(&self.a),
            b: filter(&self.b),
            known_sup: None,
            oracle: None,
            label: self
                .label
                .as_ref()
                .map(|l| format!("{l}:deg{m}")),
        }
    }

    /// Coefficient-wise sum; analytic attributes do not transfer.
    pub fn add(&self, other: &PluriharmonicPoly) -> Result<PluriharmonicPoly> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        if self.kind != other.kind {
            return Err(Error::InvalidParameter(
                "cannot add polynomials with different coefficient kinds".into(),
            ));
        }
        let mut out = PluriharmonicPoly::new(self.dim, self.kind)?;
        for (alpha, c) in self.a.iter().chain(other.a.iter()) {
            let cur = out
                .a
                .get(alpha)
                .cloned()
                .unwrap_or_else(|| CoeffValue::zero(self.kind));
            out.set_a(alpha.clone(), cur.add(c)?)?;
        }
        for (alpha, c) in self.b.iter().chain(other.b.iter()) {
            let cur = out
                .b
                .get(alpha)
                .cloned()
                .unwrap_or_else(|| CoeffValue::zero(self.kind));
            out.set_b(alpha.clone(), cur.add(c)?)?;
        }
        Ok(out)
    }

    /// Multiplies every coefficient by `c`; a known sup norm scales by
    /// `|c|`, the majorant oracle (tied to exact Möbius coefficients)
    /// does not transfer.
    pub fn scale_coeffs(&self, c: Complex64) -> PluriharmonicPoly {
        let map = |m: &BTreeMap<MultiIndex, CoeffValue>| {
            m.iter()
                .map(|(alpha, v)| (alpha.clone(), v.scale(c)))
                .collect()
        };
        PluriharmonicPoly {
            dim: self.dim,
            kind: self.kind,
            a: map(&self.a),
            b: map(&self.b),
            known_sup: self.known_sup.as_ref().map(|ks| KnownSup {
                value: ks.value * c.norm(),
                space: ks.space.clone(),
            }),
            oracle: None,
            label: self.label.clone(),
        }
    }

    /// The holomorphic polynomial `Σ_{|α|=m} (a_α ± b_α) z^α` of the
    /// coefficient Schwarz–Pick lemma (`+` for `plus = true`).
    pub fn sign_combined_homogeneous(&self, m: u32, plus: bool) -> Result<PluriharmonicPoly> {
        let mut out = PluriharmonicPoly::new(self.dim, self.kind)?;
        let part = self.homogeneous_part(m);
        for (alpha, c) in &part.a {
            out.set_a(alpha.clone(), c.clone())?;
        }
        for (alpha, c) in &part.b {
            let cur = out
                .a
                .get(alpha)
                .cloned()
                .unwrap_or_else(|| CoeffValue::zero(self.kind));
            let combined = if plus { cur.add(c)? } else { cur.sub(c)? };
            out.set_a(alpha.clone(), combined)?;
        }
        Ok(out)
    }

    /// `Σ_α (‖a_α‖ + ‖b_α‖)`, a triangle-inequality ceiling for the sup
    /// norm on any domain with coordinate widths at most 1.
    pub fn coefficient_ceiling(&self) -> Result<f64> {
        let mut acc = 0.0;
        for c in self.a.values().chain(self.b.values()) {
            acc += c.operator_norm()?;
        }
        Ok(acc)
    }

    /// Estimates `sup_{z ∈ Ω} ‖f(z)‖` for the domain described by
    /// `space`.
    ///
    /// Certified paths: a matching attached [`KnownSup`] (same unit
    /// ball, or a one-variable polynomial whose known value refers to a
    /// disc of exactly the width the queried domain gives that
    /// coordinate), and constant polynomials. Otherwise a multi-start
    /// ascent over boundary moduli and phases returns a lower estimate
    /// with the restart spread as its uncertainty. The reported value is
    /// never below `‖f(0)‖` (valid since `f(0)` is a mean of boundary
    /// values).
    pub fn sup_norm(
        &self,
        space: &SpaceDescriptor,
        budget: &NumericBudget,
        seed: u64,
    ) -> Result<SupEstimate> {
        if space.dim != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: space.dim,
            });
        }
        if let Some(ks) = &self.known_sup {
            if ks.space.unit_ball_eq(space) {
                return Ok(SupEstimate {
                    value: ks.value,
                    certified: true,
                    uncertainty: 0.0,
                    converged: true,
                });
            }
            if ks.space.dim == 1 {
                if let Some(coord) = self.single_variable() {
                    let width = space.coordinate_sup(coord);
                    let known_width = ks.space.coordinate_sup(0);
                    if (width - known_width).abs() <= 1e-12 * known_width.max(1.0) {
                        return Ok(SupEstimate {
                            value: ks.value,
                            certified: true,
                            uncertainty: 0.0,
                            converged: true,
                        });
                    }
                }
            }
        }
        let constant_norm = self.constant_term().operator_norm()?;
        if self.a.keys().chain(self.b.keys()).all(|a| a.degree() == 0) {
            return Ok(SupEstimate {
                value: constant_norm,
                certified: true,
                uncertainty: 0.0,
                converged: true,
            });
        }

        let n = self.dim;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let dirs = nonneg_starts(n, budget.starts, &mut rng);
        let mut starts = Vec::with_capacity(dirs.len());
        for (i, d) in dirs.into_iter().enumerate() {
            let mut s = d;
            if i <= n + 1 {
                s.extend(std::iter::repeat(0.0).take(n));
            } else {
                s.extend((0..n).map(|_| rng.random_range(0.0..std::f64::consts::TAU)));
            }
            starts.push(s);
        }
        let mut step_scale = vec![1.0; n];
        step_scale.extend(std::iter::repeat(std::f64::consts::PI).take(n));
        let eval = |params: &[f64]| {
            let x = match space.project_shell(&params[..n], 1.0) {
                Some(x) => x,
                None => return f64::NEG_INFINITY,
            };
            let z: Vec<Complex64> = x
                .iter()
                .zip(&params[n..])
                .map(|(&m, &theta)| Complex64::from_polar(m, theta))
                .collect();
            match self.evaluate(&z).and_then(|v| v.operator_norm()) {
                Ok(v) => v,
                Err(_) => f64::NEG_INFINITY,
            }
        };
        let out = multistart_max(eval, &starts, &step_scale, &budget.pattern);
        Ok(SupEstimate {
            value: out.value.max(constant_norm),
            certified: false,
            uncertainty: out.spread,
            converged: out.converged,
        })
    }

    /// Powered coefficient weights `w_α = ‖U(a_α)‖^p + ‖U(b_α)‖^p`
    /// merged over the two maps.
    fn majorant_weights(&self, u: &BoundedOperatorU, p: f64) -> Result<Vec<(MultiIndex, f64)>> {
        let mut weights: BTreeMap<MultiIndex, f64> = BTreeMap::new();
        for (alpha, c) in self.a.iter().chain(self.b.iter()) {
            let w = u.apply(c)?.operator_norm()?.powf(p);
            *weights.entry(alpha.clone()).or_insert(0.0) += w;
        }
        Ok(weights.into_iter().collect())
    }

    /// The majorant sum
    /// `M(r) = sup_{z ∈ r·Ω} Σ_α (‖U(a_α)‖^p + ‖U(b_α)‖^p)|z^α|^p`,
    /// nondecreasing in `r`.
    ///
    /// Deterministic evaluation paths (uncertainty 0): `r = 0`,
    /// polynomials in one effective variable (the maximizer is the
    /// coordinate endpoint), and `ℓ_∞` domains (the maximizer is the
    /// corner). The general path maximizes over the nonnegative boundary
    /// shell by seeded multi-start ascent.
    pub fn majorant_sum(
        &self,
        u: &BoundedOperatorU,
        space: &SpaceDescriptor,
        r: f64,
        p: f64,
        budget: &NumericBudget,
        seed: u64,
    ) -> Result<f64> {
        Ok(self
            .majorant_sum_detailed(u, space, r, p, budget, seed)?
            .value)
    }

    /// As [`majorant_sum`](Self::majorant_sum) but also reporting the
    /// numeric uncertainty of the boundary search.
    pub fn majorant_sum_detailed(
        &self,
        u: &BoundedOperatorU,
        space: &SpaceDescriptor,
        r: f64,
        p: f64,
        budget: &NumericBudget,
        seed: u64,
    ) -> Result<MajorantValue> {
        if space.dim != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: space.dim,
            });
        }
        if !(0.0..=1.0).contains(&r) {
            return Err(Error::InvalidParameter(format!(
                "r must lie in [0, 1], got {r}"
            )));
        }
        if !(p >= 1.0) || !p.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "p must be a finite real >= 1, got {p}"
            )));
        }
        let weights = self.majorant_weights(u, p)?;
        if weights.is_empty() {
            return Ok(MajorantValue {
                value: 0.0,
                uncertainty: 0.0,
            });
        }
        let constant: f64 = weights
            .iter()
            .filter(|(alpha, _)| alpha.degree() == 0)
            .map(|(_, w)| *w)
            .sum();
        if r == 0.0 || weights.iter().all(|(alpha, _)| alpha.degree() == 0) {
            return Ok(MajorantValue {
                value: constant,
                uncertainty: 0.0,
            });
        }

        let eval_at = |x: &[f64]| -> f64 {
            weights
                .iter()
                .map(|(alpha, w)| w * alpha.monomial_abs(x).powf(p))
                .sum()
        };

        if let Some(coord) = self.single_variable() {
            let mut x = vec![0.0; self.dim];
            x[coord] = r * space.coordinate_sup(coord);
            return Ok(MajorantValue {
                value: eval_at(&x),
                uncertainty: 0.0,
            });
        }
        if let crate::spaces::SpaceKind::Minkowski { q } = &space.kind {
            if q.is_infinite() {
                let x = vec![r * space.scale; self.dim];
                return Ok(MajorantValue {
                    value: eval_at(&x),
                    uncertainty: 0.0,
                });
            }
        }

        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let starts = nonneg_starts(self.dim, budget.starts, &mut rng);
        let eval = |d: &[f64]| match space.project_shell(d, r) {
            Some(x) => eval_at(&x),
            None => f64::NEG_INFINITY,
        };
        let out = multistart_max(eval, &starts, &vec![1.0; self.dim], &budget.pattern);
        Ok(MajorantValue {
            value: out.value.max(constant),
            uncertainty: out.spread,
        })
    }

    /// Closed-form majorant for members carrying a [`MajorantOracle`],
    /// available when `U` is a scaled identity. This is the untruncated
    /// series value; the stored polynomial's own majorant sits below it
    /// by at most the certified truncation tail.
    pub fn closed_form_majorant(
        &self,
        u: &BoundedOperatorU,
        space: &SpaceDescriptor,
        r: f64,
        p: f64,
    ) -> Option<f64> {
        let MajorantOracle::MobiusTail { a, coord } = self.oracle.as_ref()?;
        let lambda0 = u.as_identity_scaled()?;
        if space.dim != self.dim || !(0.0..=1.0).contains(&r) {
            return None;
        }
        let w = r * space.coordinate_sup(*coord);
        let tail = ((1.0 - a * a) * w).powf(p) / (1.0 - (a * w).powf(p));
        Some(lambda0.powf(p) * (a.powf(p) + tail))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn scalar_poly(dim: usize) -> PluriharmonicPoly {
        PluriharmonicPoly::new(dim, CoeffKind::Scalar).unwrap()
    }

    #[test]
    fn evaluate_basic_examples() {
        // f = z1
        let mut f = scalar_poly(2);
        f.set_a(MultiIndex::unit(2, 0), CoeffValue::scalar(1.0, 0.0))
            .unwrap();
        let v = f.evaluate(&[c(0.5, 0.0), c(0.0, 0.0)]).unwrap();
        assert!((v.operator_norm().unwrap() - 0.5).abs() < 1e-12);

        // f = z1 + conj(z1) with a = b = 1 at z1 = i: i + conj(i)* ... = 0
        let mut g = scalar_poly(1);
        g.set_a(MultiIndex::unit(1, 0), CoeffValue::scalar(1.0, 0.0))
            .unwrap();
        g.set_b(MultiIndex::unit(1, 0), CoeffValue::scalar(1.0, 0.0))
            .unwrap();
        let v = g.evaluate(&[c(0.0, 1.0)]).unwrap();
        assert!(v.operator_norm().unwrap() < 1e-12);

        // constant diag(1,2)
        let mut h = PluriharmonicPoly::new(1, CoeffKind::Matrix(2)).unwrap();
        let diag = CoeffValue::matrix(nalgebra::DMatrix::from_diagonal(
            &nalgebra::DVector::from_vec(vec![c(1.0, 0.0), c(2.0, 0.0)]),
        ))
        .unwrap();
        h.set_a(MultiIndex::zero(1), diag.clone()).unwrap();
        assert_eq!(h.evaluate(&[c(0.7, -0.2)]).unwrap(), diag);
    }

    #[test]
    fn b_coefficients_enter_through_adjoints() {
        // b = i (scalar): f(z) = b* conj(z) = -i conj(z)
        let mut f = scalar_poly(1);
        f.set_b(MultiIndex::unit(1, 0), CoeffValue::scalar(0.0, 1.0))
            .unwrap();
        let v = f.evaluate(&[c(2.0, 0.0)]).unwrap();
        match v {
            CoeffValue::Scalar(s) => {
                assert!((s - c(0.0, -2.0)).norm() < 1e-12);
            }
            _ => panic!("scalar expected"),
        }
    }

    #[test]
    fn homogeneous_parts_reconstruct() {
        let mut f = scalar_poly(2);
        f.set_a(MultiIndex::zero(2), CoeffValue::scalar(1.0, 0.0))
            .unwrap();
        f.set_a(MultiIndex::unit(2, 0), CoeffValue::scalar(2.0, 0.0))
            .unwrap();
        f.set_a(MultiIndex::new(vec![1, 1]), CoeffValue::scalar(0.0, 1.0))
            .unwrap();
        f.set_b(MultiIndex::unit(2, 1), CoeffValue::scalar(-1.0, 0.0))
            .unwrap();
        let p2 = f.homogeneous_part(2);
        assert_eq!(p2.term_count(), 1);
        assert!(f.homogeneous_part(5).is_empty());
        let mut sum = scalar_poly(2);
        for m in 0..=f.max_degree() {
            sum = sum.add(&f.homogeneous_part(m)).unwrap();
        }
        let z = [c(0.3, 0.1), c(-0.4, 0.2)];
        let d = f
            .evaluate(&z)
            .unwrap()
            .sub(&sum.evaluate(&z).unwrap())
            .unwrap();
        assert!(d.operator_norm().unwrap() < 1e-12);
    }

    #[test]
    fn constant_majorant_persists() {
        let mut f = scalar_poly(2);
        f.set_a(MultiIndex::zero(2), CoeffValue::scalar(0.6, 0.8))
            .unwrap();
        f.set_a(MultiIndex::unit(2, 0), CoeffValue::scalar(1.0, 0.0))
            .unwrap();
        let u = BoundedOperatorU::identity();
        let space = SpaceDescriptor::polydisc(2);
        let b = NumericBudget::default();
        let m0 = f.majorant_sum(&u, &space, 0.0, 1.0, &b, 0).unwrap();
        assert!((m0 - 1.0).abs() < 1e-12, "constant term persists at r=0");
        let m = f.majorant_sum(&u, &space, 0.5, 1.0, &b, 0).unwrap();
        assert!((m - 1.5).abs() < 1e-12);
    }

    #[test]
    fn majorant_single_term_and_monotonicity() {
        let mut f = scalar_poly(1);
        f.set_a(MultiIndex::unit(1, 0), CoeffValue::scalar(1.0, 0.0))
            .unwrap();
        let u = BoundedOperatorU::identity();
        let disc = SpaceDescriptor::polydisc(1);
        let b = NumericBudget::default();
        assert!((f.majorant_sum(&u, &disc, 0.5, 1.0, &b, 0).unwrap() - 0.5).abs() < 1e-12);
        let mut prev = 0.0;
        for i in 0..=10 {
            let r = i as f64 / 10.0;
            let m = f.majorant_sum(&u, &disc, r, 2.0, &b, 0).unwrap();
            assert!(m >= prev - 1e-15);
            prev = m;
        }
    }

    #[test]
    fn majorant_amgm_example() {
        // f = z1 z2 on the Euclidean ball: sup |z1 z2| = 1/2 at r = 1.
        let mut f = scalar_poly(2);
        f.set_a(MultiIndex::new(vec![1, 1]), CoeffValue::scalar(1.0, 0.0))
            .unwrap();
        let u = BoundedOperatorU::identity();
        let l2 = SpaceDescriptor::minkowski(2.0, 2).unwrap();
        let b = NumericBudget::default();
        let m = f.majorant_sum(&u, &l2, 1.0, 1.0, &b, 7).unwrap();
        assert!((m - 0.5).abs() < 1e-6, "majorant {m}");
    }

    #[test]
    fn sup_norm_certified_and_numeric() {
        // f = z1 + z2 with known sup 2 on the polydisc
        let mut f = scalar_poly(2);
        f.set_a(MultiIndex::unit(2, 0), CoeffValue::scalar(1.0, 0.0))
            .unwrap();
        f.set_a(MultiIndex::unit(2, 1), CoeffValue::scalar(1.0, 0.0))
            .unwrap();
        let poly2 = SpaceDescriptor::polydisc(2);
        let f = f.with_known_sup(2.0, poly2.clone());
        let b = NumericBudget::default();
        let cert = f.sup_norm(&poly2, &b, 0).unwrap();
        assert!(cert.certified && (cert.value - 2.0).abs() < 1e-12);

        // numeric on l2 ball: sup |z1 + z2| over the Euclidean sphere = sqrt(2)
        let l2 = SpaceDescriptor::minkowski(2.0, 2).unwrap();
        let num = f.sup_norm(&l2, &b, 5).unwrap();
        assert!(!num.certified);
        assert!(
            (num.value - 2f64.sqrt()).abs() < 5e-3,
            "numeric sup {} vs sqrt2",
            num.value
        );
        assert!(num.value <= 2f64.sqrt() + 1e-9, "never exceeds the true sup");
    }

    #[test]
    fn sup_norm_constant_poly() {
        let mut f = PluriharmonicPoly::new(2, CoeffKind::Matrix(2)).unwrap();
        let diag = CoeffValue::matrix(nalgebra::DMatrix::from_diagonal(
            &nalgebra::DVector::from_vec(vec![c(1.0, 0.0), c(2.0, 0.0)]),
        ))
        .unwrap();
        f.set_a(MultiIndex::zero(2), diag).unwrap();
        let est = f
            .sup_norm(&SpaceDescriptor::polydisc(2), &NumericBudget::default(), 0)
            .unwrap();
        assert!(est.certified && (est.value - 2.0).abs() < 1e-12);
    }

    #[test]
    fn sign_combined_parts() {
        let mut f = scalar_poly(1);
        f.set_a(MultiIndex::unit(1, 0), CoeffValue::scalar(1.0, 0.0))
            .unwrap();
        f.set_b(MultiIndex::unit(1, 0), CoeffValue::scalar(0.25, 0.0))
            .unwrap();
        let plus = f.sign_combined_homogeneous(1, true).unwrap();
        let minus = f.sign_combined_homogeneous(1, false).unwrap();
        let get = |g: &PluriharmonicPoly| match g.coeff_a(&MultiIndex::unit(1, 0)).unwrap() {
            CoeffValue::Scalar(s) => *s,
            _ => panic!(),
        };
        assert!((get(&plus) - c(1.25, 0.0)).norm() < 1e-12);
        assert!((get(&minus) - c(0.75, 0.0)).norm() < 1e-12);
        assert!(plus.is_holomorphic());
    }
}
