//! Constructors for the test-function families fed to the radius
//! estimator: truncated Möbius transforms (with certified sup norms and
//! closed-form majorants), single monomials with exact sup norms on
//! `ℓ_q` balls, and seeded random polynomials.

use super::{CoeffKind, CoeffValue, MajorantOracle, MultiIndex, PluriharmonicPoly};
use crate::error::{Error, Result};
use crate::optimize::PatternSpec;
use crate::spaces::{NumericBudget, SpaceDescriptor};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Truncated Möbius transform `φ_a(z) = (a − z)/(1 − az)` on the unit
/// disc, expanded as `a − (1 − a²) Σ_{k≥1} a^{k−1} z^k` and cut after
/// degree `truncation_degree`. Its sup norm on the disc is exactly 1.
pub fn mobius(a: f64, truncation_degree: u32) -> Result<PluriharmonicPoly> {
    mobius_lift(a, truncation_degree, 1, 0)
}

/// [`mobius`] embedded into `dim` variables, depending on the single
/// coordinate `coord`. The certified sup norm refers to the unit disc
/// in that coordinate, which matches any domain giving the coordinate
/// width 1.
pub fn mobius_lift(
    a: f64,
    truncation_degree: u32,
    dim: usize,
    coord: usize,
) -> Result<PluriharmonicPoly> {
    if !(0.0..1.0).contains(&a) {
        return Err(Error::InvalidParameter(format!(
            "mobius parameter must satisfy 0 <= a < 1, got {a}"
        )));
    }
    if truncation_degree == 0 {
        return Err(Error::InvalidParameter(
            "mobius truncation degree must be at least 1".into(),
        ));
    }
    if coord >= dim {
        return Err(Error::InvalidParameter(format!(
            "coordinate {coord} out of range for dimension {dim}"
        )));
    }
    let mut f = PluriharmonicPoly::new(dim, CoeffKind::Scalar)?;
    f.set_a(MultiIndex::zero(dim), CoeffValue::scalar(a, 0.0))?;
    for k in 1..=truncation_degree {
        let c = -(1.0 - a * a) * a.powi(k as i32 - 1);
        f.set_a(MultiIndex::axis(dim, coord, k), CoeffValue::scalar(c, 0.0))?;
    }
    Ok(f
        .with_known_sup(1.0, SpaceDescriptor::polydisc(1))
        .with_oracle(MajorantOracle::MobiusTail { a, coord })
        .with_label(format!("mobius:a={a}")))
}

/// Truncation degree making the discarded majorant tail
/// `Σ_{k>T} (1−a²) a^{k−1} ≤ (1+a) a^T` smaller than `tol`.
pub fn mobius_truncation_for(a: f64, tol: f64) -> u32 {
    if a <= 0.0 {
        return 1;
    }
    let t = ((tol / (1.0 + a)).ln() / a.ln()).ceil();
    (t.max(1.0) as u32).max(1)
}

/// The Möbius family over a parameter grid, truncated so that every
/// member's majorant tail is below `1e-12`.
pub fn mobius_grid_family(params: &[f64]) -> Result<Vec<PluriharmonicPoly>> {
    params
        .iter()
        .map(|&a| mobius(a, mobius_truncation_for(a, 1e-12)))
        .collect()
}

/// The single monomial `z^α`, carrying its exact sup norm
/// `(α^α / m^m)^{1/q}` on the unit ball of `ℓ_q^n`.
pub fn monomial(alpha: MultiIndex, q: f64) -> Result<PluriharmonicPoly> {
    crate::check_exponent("q", q)?;
    let n = alpha.len();
    if n == 0 {
        return Err(Error::InvalidParameter("empty multi-index".into()));
    }
    let space = SpaceDescriptor::minkowski(q, n)?;
    let sup = alpha.sup_on_lq_ball(q);
    let label = format!("monomial:{alpha}:q={}", crate::spaces::fmt_exp(q));
    let mut f = PluriharmonicPoly::new(n, CoeffKind::Scalar)?;
    f.set_a(alpha, CoeffValue::scalar(1.0, 0.0))?;
    Ok(f.with_known_sup(sup, space).with_label(label))
}

/// Shape of a random family; see [`random_family`].
#[derive(Clone, Debug)]
pub struct RandomFamilySpec {
    pub dim: usize,
    pub max_degree: u32,
    pub coeff_kind: CoeffKind,
    pub count: usize,
    /// Also draw anti-holomorphic coefficients.
    pub include_antiholomorphic: bool,
    /// Lifts the default guardrails (`dim ≤ 8`, `max_degree ≤ 8`,
    /// matrix size ≤ 4) for callers that accept the cost.
    pub allow_large: bool,
}

fn random_unit(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::from_polar(1.0, rng.random_range(0.0..std::f64::consts::TAU))
}

fn random_coeff(kind: CoeffKind, magnitude: f64, rng: &mut ChaCha8Rng) -> CoeffValue {
    match kind {
        CoeffKind::Scalar => {
            CoeffValue::Scalar(random_unit(rng) * (magnitude * rng.random_range(0.2..1.0)))
        }
        CoeffKind::Matrix(k) => {
            let m = nalgebra::DMatrix::from_fn(k, k, |_, _| {
                random_unit(rng) * (magnitude * rng.random_range(0.2..1.0))
            });
            CoeffValue::Matrix(m)
        }
    }
}

fn random_index(dim: usize, degree: u32, rng: &mut ChaCha8Rng) -> MultiIndex {
    // Random composition of `degree` into `dim` nonnegative parts.
    let mut entries = vec![0u32; dim];
    for _ in 0..degree {
        entries[rng.random_range(0..dim)] += 1;
    }
    MultiIndex::new(entries)
}

/// Draws `count` random polynomials, each normalized to sup norm
/// approximately 1 on the polydisc. Coefficient magnitudes decay like
/// `2^{-degree}` so low-order structure dominates, mirroring typical
/// extremal candidates. Fully determined by `seed`.
pub fn random_family(spec: &RandomFamilySpec, seed: u64) -> Result<Vec<PluriharmonicPoly>> {
    if spec.dim == 0 || spec.count == 0 {
        return Err(Error::InvalidParameter(
            "random family needs dim >= 1 and count >= 1".into(),
        ));
    }
    if spec.max_degree == 0 {
        return Err(Error::InvalidParameter(
            "random family needs max_degree >= 1".into(),
        ));
    }
    if !spec.allow_large {
        if spec.dim > 8 {
            return Err(Error::Guardrail(format!(
                "dim {} exceeds the default limit 8 (set allow_large to override)",
                spec.dim
            )));
        }
        if spec.max_degree > 8 {
            return Err(Error::Guardrail(format!(
                "max_degree {} exceeds the default limit 8 (set allow_large to override)",
                spec.max_degree
            )));
        }
        if let CoeffKind::Matrix(k) = spec.coeff_kind {
            if k > 4 {
                return Err(Error::Guardrail(format!(
                    "matrix size {k} exceeds the default limit 4 (set allow_large to override)"
                )));
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let budget = NumericBudget {
        starts: 4,
        pattern: PatternSpec {
            delta_init: 0.4,
            delta_min: 1e-4,
            max_sweeps: 60,
        },
    };
    let polydisc = SpaceDescriptor::polydisc(spec.dim);
    let mut out = Vec::with_capacity(spec.count);
    for i in 0..spec.count {
        let mut f = PluriharmonicPoly::new(spec.dim, spec.coeff_kind)?;
        let terms = rng.random_range(3..=8usize);
        for _ in 0..terms {
            let degree = rng.random_range(0..=spec.max_degree);
            let alpha = random_index(spec.dim, degree, &mut rng);
            let c = random_coeff(spec.coeff_kind, 0.5f64.powi(degree as i32), &mut rng);
            f.set_a(alpha, c)?;
        }
        if spec.include_antiholomorphic {
            let terms = rng.random_range(1..=4usize);
            for _ in 0..terms {
                let degree = rng.random_range(1..=spec.max_degree);
                let alpha = random_index(spec.dim, degree, &mut rng);
                if alpha.degree() == 0 {
                    continue;
                }
                let c = random_coeff(spec.coeff_kind, 0.5f64.powi(degree as i32), &mut rng);
                f.set_b(alpha, c)?;
            }
        }
        if f.is_empty() {
            f.set_a(
                MultiIndex::zero(spec.dim),
                CoeffValue::identity(spec.coeff_kind),
            )?;
        }
        let sup = f.sup_norm(&polydisc, &budget, seed.wrapping_add(i as u64))?;
        let scale = if sup.value > 1e-9 { 1.0 / sup.value } else { 1.0 };
        let f = f
            .scale_coeffs(Complex64::new(scale, 0.0))
            .with_label(format!("random:{i}"));
        out.push(f);
    }
    Ok(out)
}
