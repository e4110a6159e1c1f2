//! Coefficient algebra: multi-indices, scalar/matrix coefficient values,
//! and the bounded operator `U` applied to coefficients.

use crate::error::{Error, Result};
use crate::optimize::{multistart_max, PatternSpec};
use nalgebra::DMatrix;
use num_complex::Complex64;
use std::cmp::Ordering;

/// A multi-index `α ∈ ℕ₀ⁿ` keying power-series coefficients.
///
/// Ordered graded-lexicographically (total degree first, then entries),
/// which makes map iteration deterministic.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiIndex {
    entries: Vec<u32>,
}

impl MultiIndex {
    pub fn new(entries: Vec<u32>) -> Self {
        MultiIndex { entries }
    }

    pub fn zero(n: usize) -> Self {
        MultiIndex {
            entries: vec![0; n],
        }
    }

    /// `e_i` as a multi-index: degree one in coordinate `i`.
    pub fn unit(n: usize, i: usize) -> Self {
        let mut entries = vec![0; n];
        entries[i] = 1;
        MultiIndex { entries }
    }

    /// `k·e_i`.
    pub fn axis(n: usize, i: usize, k: u32) -> Self {
        let mut entries = vec![0; n];
        entries[i] = k;
        MultiIndex { entries }
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Total degree `|α|`.
    pub fn degree(&self) -> u32 {
        self.entries.iter().sum()
    }

    /// `z^α` for a complex point.
    pub fn monomial(&self, z: &[Complex64]) -> Complex64 {
        debug_assert_eq!(z.len(), self.entries.len());
        let mut acc = Complex64::new(1.0, 0.0);
        for (zi, &ai) in z.iter().zip(&self.entries) {
            if ai > 0 {
                acc *= zi.powu(ai);
            }
        }
        acc
    }

    /// `x^α` for nonnegative moduli.
    pub fn monomial_abs(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.entries.len());
        let mut acc = 1.0;
        for (&xi, &ai) in x.iter().zip(&self.entries) {
            if ai > 0 {
                acc *= xi.powi(ai as i32);
            }
        }
        acc
    }

    /// `sup{|z^α| : ‖z‖_q ≤ 1} = (α^α / |α|^{|α|})^{1/q}` (with `0⁰ = 1`;
    /// `1` for `q = ∞` or `|α| = 0`), by Lagrange maximization on the
    /// `ℓ_q` sphere.
    pub fn sup_on_lq_ball(&self, q: f64) -> f64 {
        let m = self.degree();
        if m == 0 || q.is_infinite() {
            return 1.0;
        }
        let mf = m as f64;
        let mut log_ratio = -mf * mf.ln();
        for &ai in &self.entries {
            if ai > 0 {
                let af = ai as f64;
                log_ratio += af * af.ln();
            }
        }
        (log_ratio / q).exp()
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.entries.cmp(&other.entries))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl std::fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|a| a.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl std::str::FromStr for MultiIndex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let entries = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad multi-index entry '{t}'")))
            })
            .collect::<Result<Vec<u32>>>()?;
        if entries.is_empty() {
            return Err(Error::Parse("empty multi-index".into()));
        }
        Ok(MultiIndex { entries })
    }
}

/// The coefficient algebra a polynomial draws its values from.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum CoeffKind {
    Scalar,
    /// `k×k` complex matrices with the operator (spectral) norm.
    Matrix(usize),
}

impl std::fmt::Display for CoeffKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CoeffKind::Scalar => write!(f, "scalar"),
            CoeffKind::Matrix(k) => write!(f, "matrix {k}"),
        }
    }
}

/// A coefficient: a complex scalar or a square complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub enum CoeffValue {
    Scalar(Complex64),
    Matrix(DMatrix<Complex64>),
}

impl CoeffValue {
    pub fn scalar(re: f64, im: f64) -> Self {
        CoeffValue::Scalar(Complex64::new(re, im))
    }

    pub fn matrix(m: DMatrix<Complex64>) -> Result<Self> {
        if m.nrows() != m.ncols() || m.nrows() == 0 {
            return Err(Error::InvalidParameter(format!(
                "coefficient matrices must be square and nonempty, got {}x{}",
                m.nrows(),
                m.ncols()
            )));
        }
        Ok(CoeffValue::Matrix(m))
    }

    pub fn kind(&self) -> CoeffKind {
        match self {
            CoeffValue::Scalar(_) => CoeffKind::Scalar,
            CoeffValue::Matrix(m) => CoeffKind::Matrix(m.nrows()),
        }
    }

    pub fn zero(kind: CoeffKind) -> Self {
        match kind {
            CoeffKind::Scalar => CoeffValue::Scalar(Complex64::ZERO),
            CoeffKind::Matrix(k) => CoeffValue::Matrix(DMatrix::zeros(k, k)),
        }
    }

    pub fn identity(kind: CoeffKind) -> Self {
        match kind {
            CoeffKind::Scalar => CoeffValue::Scalar(Complex64::ONE),
            CoeffKind::Matrix(k) => CoeffValue::Matrix(DMatrix::identity(k, k)),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            CoeffValue::Scalar(c) => c.re == 0.0 && c.im == 0.0,
            CoeffValue::Matrix(m) => m.iter().all(|c| c.re == 0.0 && c.im == 0.0),
        }
    }

    pub fn is_finite(&self) -> bool {
        match self {
            CoeffValue::Scalar(c) => c.re.is_finite() && c.im.is_finite(),
            CoeffValue::Matrix(m) => m.iter().all(|c| c.re.is_finite() && c.im.is_finite()),
        }
    }

    /// Conjugate transpose (complex conjugate for scalars).
    pub fn adjoint(&self) -> Self {
        match self {
            CoeffValue::Scalar(c) => CoeffValue::Scalar(c.conj()),
            CoeffValue::Matrix(m) => CoeffValue::Matrix(m.adjoint()),
        }
    }

    /// `(x + x*)/2`; Hermitian by construction.
    pub fn real_part(&self) -> Self {
        self.add(&self.adjoint())
            .expect("self-adjoint sum is conformable")
            .scale(Complex64::new(0.5, 0.0))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        match (self, other) {
            (CoeffValue::Scalar(a), CoeffValue::Scalar(b)) => Ok(CoeffValue::Scalar(a + b)),
            (CoeffValue::Matrix(a), CoeffValue::Matrix(b)) if a.nrows() == b.nrows() => {
                Ok(CoeffValue::Matrix(a + b))
            }
            _ => Err(Error::InvalidParameter(format!(
                "cannot add coefficients of kinds {} and {}",
                self.kind(),
                other.kind()
            ))),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(-Complex64::ONE))
    }

    pub fn scale(&self, c: Complex64) -> Self {
        match self {
            CoeffValue::Scalar(a) => CoeffValue::Scalar(a * c),
            CoeffValue::Matrix(m) => CoeffValue::Matrix(m.map(|e| e * c)),
        }
    }

    /// `‖x‖`: modulus for scalars, largest singular value for matrices.
    /// Submultiplicative and adjoint-invariant.
    pub fn operator_norm(&self) -> Result<f64> {
        if !self.is_finite() {
            return Err(Error::NonFinite("coefficient entries".into()));
        }
        match self {
            CoeffValue::Scalar(c) => Ok(c.norm()),
            CoeffValue::Matrix(m) => Ok(m.clone().singular_values().max()),
        }
    }
}

/// The bounded operator `U` of the powered Bohr inequality, applied to
/// every coefficient before its norm enters the majorant sum.
#[derive(Clone, Debug)]
pub struct BoundedOperatorU {
    kind: UKind,
    norm_u: f64,
}

#[derive(Clone, Debug)]
enum UKind {
    /// `λ₀·I` on any coefficient kind.
    IdentityScaled(f64),
    /// A linear map on `k×k` coefficients, given as a `k²×k²` matrix
    /// acting on column-major vectorizations.
    Explicit { k: usize, matrix: DMatrix<Complex64> },
}

impl BoundedOperatorU {
    /// The identity `U = I` (`‖U‖ = 1`).
    pub fn identity() -> Self {
        BoundedOperatorU {
            kind: UKind::IdentityScaled(1.0),
            norm_u: 1.0,
        }
    }

    /// `U = λ₀·I` with `‖U‖ = λ₀`.
    pub fn identity_scaled(lambda0: f64) -> Result<Self> {
        if !(lambda0 >= 0.0) || !lambda0.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "identity scale must be a finite nonnegative real, got {lambda0}"
            )));
        }
        Ok(BoundedOperatorU {
            kind: UKind::IdentityScaled(lambda0),
            norm_u: lambda0,
        })
    }

    /// An explicit operator on `k×k` coefficients. Its operator norm
    /// (with respect to the spectral norm on both sides) has no closed
    /// form in general; it is estimated at construction by multi-start
    /// maximization of `‖U(X)‖/‖X‖` and cached.
    pub fn explicit(k: usize, matrix: DMatrix<Complex64>) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidParameter("k must be at least 1".into()));
        }
        if matrix.nrows() != k * k || matrix.ncols() != k * k {
            return Err(Error::DimensionMismatch {
                expected: k * k,
                got: matrix.nrows().max(matrix.ncols()),
            });
        }
        if matrix.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::NonFinite("operator matrix entries".into()));
        }
        let norm_u = induced_norm_estimate(k, &matrix);
        Ok(BoundedOperatorU {
            kind: UKind::Explicit { k, matrix },
            norm_u,
        })
    }

    /// `‖U‖` (exact for scaled identities, numeric estimate otherwise).
    pub fn norm_u(&self) -> f64 {
        self.norm_u
    }

    /// `Some(λ₀)` when `U = λ₀·I`.
    pub fn as_identity_scaled(&self) -> Option<f64> {
        match self.kind {
            UKind::IdentityScaled(l) => Some(l),
            UKind::Explicit { .. } => None,
        }
    }

    pub fn apply(&self, x: &CoeffValue) -> Result<CoeffValue> {
        match (&self.kind, x) {
            (UKind::IdentityScaled(l), _) => Ok(x.scale(Complex64::new(*l, 0.0))),
            (UKind::Explicit { k, matrix }, CoeffValue::Matrix(m)) if m.nrows() == *k => {
                let v = DMatrix::from_column_slice(k * k, 1, m.as_slice());
                let w = matrix * v;
                Ok(CoeffValue::Matrix(DMatrix::from_column_slice(
                    *k,
                    *k,
                    w.as_slice(),
                )))
            }
            (UKind::Explicit { k, matrix }, CoeffValue::Scalar(c)) if *k == 1 => {
                Ok(CoeffValue::Scalar(matrix[(0, 0)] * c))
            }
            (UKind::Explicit { k, .. }, _) => Err(Error::InvalidParameter(format!(
                "operator acts on {k}x{k} coefficients, got {}",
                x.kind()
            ))),
        }
    }

    /// Short human-readable form for report parameter echoes.
    pub fn describe(&self) -> String {
        match &self.kind {
            UKind::IdentityScaled(l) if *l == 1.0 => "I".to_string(),
            UKind::IdentityScaled(l) => format!("{l}*I"),
            UKind::Explicit { k, .. } => format!("explicit(k={k})"),
        }
    }
}

/// Multi-start estimate of `sup_{X≠0} ‖M vec⁻¹(X)‖/‖X‖` in spectral
/// norms; deterministic (fixed internal seed).
fn induced_norm_estimate(k: usize, matrix: &DMatrix<Complex64>) -> f64 {
    use rand::{Rng, SeedableRng};
    let dim = 2 * k * k;
    let mut starts: Vec<Vec<f64>> = Vec::new();
    for j in 0..k * k {
        let mut s = vec![0.0; dim];
        s[2 * j] = 1.0;
        starts.push(s);
    }
    let mut ident = vec![0.0; dim];
    for i in 0..k {
        ident[2 * (i * k + i)] = 1.0;
    }
    starts.push(ident);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..4 {
        starts.push((0..dim).map(|_| rng.random_range(-1.0..1.0)).collect());
    }
    let eval = |d: &[f64]| {
        let x = DMatrix::from_fn(k, k, |i, j| {
            let idx = 2 * (j * k + i);
            Complex64::new(d[idx], d[idx + 1])
        });
        let nx = x.clone().singular_values().max();
        if nx < 1e-12 {
            return f64::NEG_INFINITY;
        }
        let v = DMatrix::from_column_slice(k * k, 1, x.as_slice());
        let w = matrix * v;
        let y = DMatrix::from_column_slice(k, k, w.as_slice());
        y.singular_values().max() / nx
    };
    let spec = PatternSpec {
        delta_min: 1e-7,
        ..PatternSpec::default()
    };
    let out = multistart_max(eval, &starts, &vec![1.0; dim], &spec);
    out.value.max(0.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multi_index_graded_lex_order() {
        let a = MultiIndex::new(vec![0, 2]);
        let b = MultiIndex::new(vec![1, 0]);
        let c = MultiIndex::new(vec![1, 1]);
        assert!(b < a, "degree dominates");
        assert!(a < c, "lex breaks ties within a degree");
        assert_eq!(MultiIndex::zero(2).degree(), 0);
    }

    #[test]
    fn multi_index_round_trip_and_monomials() {
        let a: MultiIndex = "1,0,2".parse().unwrap();
        assert_eq!(a.to_string(), "1,0,2");
        assert_eq!(a.degree(), 3);
        let z = [
            Complex64::new(2.0, 0.0),
            Complex64::new(5.0, 0.0),
            Complex64::new(0.0, 1.0),
        ];
        let v = a.monomial(&z);
        assert!((v - Complex64::new(-2.0, 0.0)).norm() < 1e-12);
        assert!((a.monomial_abs(&[2.0, 5.0, 1.0]) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn sup_on_lq_ball_examples() {
        // alpha = (m, 0): sup = 1 for every q
        assert!((MultiIndex::new(vec![3, 0]).sup_on_lq_ball(2.0) - 1.0).abs() < 1e-12);
        // alpha = (1, 1), q = 2: sup = (1/4)^{1/2} = 1/2 (rho = 2)
        assert!((MultiIndex::new(vec![1, 1]).sup_on_lq_ball(2.0) - 0.5).abs() < 1e-12);
        assert_eq!(MultiIndex::new(vec![1, 1]).sup_on_lq_ball(f64::INFINITY), 1.0);
    }

    #[test]
    fn operator_norm_examples() {
        let id = CoeffValue::identity(CoeffKind::Matrix(2));
        assert!((id.operator_norm().unwrap() - 1.0).abs() < 1e-12);
        let diag = CoeffValue::matrix(DMatrix::from_row_slice(
            2,
            2,
            &[
                Complex64::new(1.0, 0.0),
                Complex64::ZERO,
                Complex64::ZERO,
                Complex64::new(2.0, 0.0),
            ],
        ))
        .unwrap();
        assert!((diag.operator_norm().unwrap() - 2.0).abs() < 1e-12);
        let nilpotent = CoeffValue::matrix(DMatrix::from_row_slice(
            2,
            2,
            &[
                Complex64::ZERO,
                Complex64::new(2.0, 0.0),
                Complex64::ZERO,
                Complex64::ZERO,
            ],
        ))
        .unwrap();
        assert!((nilpotent.operator_norm().unwrap() - 2.0).abs() < 1e-12);
        assert!((CoeffValue::scalar(3.0, 4.0).operator_norm().unwrap() - 5.0).abs() < 1e-12);
    }

    #[test]
    fn adjoint_involution_and_real_part() {
        let x = CoeffValue::matrix(DMatrix::from_row_slice(
            2,
            2,
            &[
                Complex64::new(1.0, 2.0),
                Complex64::new(0.0, -1.0),
                Complex64::new(3.0, 0.5),
                Complex64::new(-2.0, 1.0),
            ],
        ))
        .unwrap();
        assert_eq!(x.adjoint().adjoint(), x);
        let re = x.real_part();
        assert_eq!(re.adjoint(), re, "real part is Hermitian");
        assert!((CoeffValue::scalar(1.0, 7.0).real_part().operator_norm().unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn identity_scaled_operator() {
        let u = BoundedOperatorU::identity_scaled(2.0).unwrap();
        assert_eq!(u.norm_u(), 2.0);
        let x = CoeffValue::scalar(0.0, 3.0);
        assert!((u.apply(&x).unwrap().operator_norm().unwrap() - 6.0).abs() < 1e-12);
        assert!(BoundedOperatorU::identity_scaled(-1.0).is_err());
    }

    #[test]
    fn explicit_operator_diag_scaling() {
        // U(X) = diag-rescale: multiply entry (0,0) by 3, rest by 1.
        let k = 2;
        let mut m = DMatrix::identity(k * k, k * k);
        m[(0, 0)] = Complex64::new(3.0, 0.0);
        let u = BoundedOperatorU::explicit(k, m).unwrap();
        let e00 = CoeffValue::matrix(DMatrix::from_fn(2, 2, |i, j| {
            if i == 0 && j == 0 {
                Complex64::ONE
            } else {
                Complex64::ZERO
            }
        }))
        .unwrap();
        assert!((u.apply(&e00).unwrap().operator_norm().unwrap() - 3.0).abs() < 1e-12);
        // ||U|| is attained on E00 here
        assert!((u.norm_u() - 3.0).abs() < 1e-4, "norm_u = {}", u.norm_u());
    }
}
