//! Finite-dimensional complex sequence spaces and their invariants.
//!
//! A [`SpaceDescriptor`] is a norm on `ℂⁿ` from one of four families,
//! together with a positive `scale` so that descriptors denote domains
//! `scale·B_Z`:
//!
//! * `minkowski(q)` — `ℓ_q`, `1 ≤ q ≤ ∞`;
//! * `mixed(s, m, t, n)` — `ℓ^m_s(ℓ^n_t)`, the outer `ℓ_s` norm of `m`
//!   inner `ℓ_t` blocks of length `n`;
//! * `lorentz(s, t)` — `‖z‖ = (Σ_k w_k (z*_k)^t)^{1/t}` on the decreasing
//!   rearrangement `z*` of the moduli, with telescoping weights
//!   `w_k = k^{t/s} − (k−1)^{t/s}` (and `sup_k k^{1/s} z*_k` for `t = ∞`);
//! * `orlicz(ψ)` — the Luxemburg norm `inf{ρ > 0 : Σ ψ(|z_k|/ρ) ≤ 1}`.
//!
//! All four are 1-unconditional in the canonical basis, so their unit
//! balls are complete Reinhardt domains and every maximization over a
//! ball can be restricted to the nonnegative part of its boundary shell.
//!
//! The Lorentz weights telescope so that `Σ_{k≤j} w_k = j^{t/s}` exactly;
//! uniform blocks then have norm `j^{1/s}·c`, which is what makes the
//! closed forms `‖Σ e*_k‖ = n^{1−1/s}` and `lorentz(s,s) = ℓ_s` hold
//! verbatim. Only `t ≤ s` is accepted — for `t > s` the functional is a
//! quasi-norm and the triangle inequality genuinely fails.

mod orlicz;

pub use orlicz::{luxemburg, OrliczFunction};

use crate::error::{Error, Result};
use crate::optimize::{multistart_max, nonneg_starts, PatternSpec};
use crate::{check_exponent, inv_ext};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// The norm family of a space.
#[derive(Clone, Debug, PartialEq)]
pub enum SpaceKind {
    /// `ℓ_q` norm, `q ∈ [1, ∞]`.
    Minkowski { q: f64 },
    /// `ℓ^m_s(ℓ^n_t)`: outer `ℓ_s` over `blocks` inner `ℓ_t` blocks of
    /// length `inner`.
    Mixed {
        s: f64,
        blocks: usize,
        t: f64,
        inner: usize,
    },
    /// Lorentz `ℓ_{s,t}` with telescoping weights, `1 ≤ t ≤ s ≤ ∞`.
    Lorentz { s: f64, t: f64 },
    /// Orlicz space with Luxemburg norm for the given ψ.
    Orlicz { psi: OrliczFunction },
}

/// A sequence-space norm on `ℂⁿ` plus a domain scale (`scale·B_Z`).
#[derive(Clone, Debug, PartialEq)]
pub struct SpaceDescriptor {
    pub kind: SpaceKind,
    pub dim: usize,
    pub scale: f64,
}

impl SpaceDescriptor {
    /// `ℓ_q` on `ℂⁿ`.
    pub fn minkowski(q: f64, n: usize) -> Result<Self> {
        check_exponent("q", q)?;
        check_dim(n)?;
        Ok(SpaceDescriptor {
            kind: SpaceKind::Minkowski { q },
            dim: n,
            scale: 1.0,
        })
    }

    /// The unit polydisc `𝔻ⁿ`, i.e. `ℓ_∞` on `ℂⁿ`.
    pub fn polydisc(n: usize) -> Self {
        SpaceDescriptor::minkowski(f64::INFINITY, n).expect("polydisc dimensions are valid")
    }

    /// `ℓ^m_s(ℓ^n_t)` with `dim = m·n`.
    pub fn mixed(s: f64, blocks: usize, t: f64, inner: usize) -> Result<Self> {
        check_exponent("s", s)?;
        check_exponent("t", t)?;
        check_dim(blocks)?;
        check_dim(inner)?;
        Ok(SpaceDescriptor {
            kind: SpaceKind::Mixed {
                s,
                blocks,
                t,
                inner,
            },
            dim: blocks * inner,
            scale: 1.0,
        })
    }

    /// Lorentz `ℓ_{s,t}` on `ℂⁿ`; requires `t ≤ s` (otherwise the
    /// functional is only a quasi-norm).
    pub fn lorentz(s: f64, t: f64, n: usize) -> Result<Self> {
        check_exponent("s", s)?;
        check_exponent("t", t)?;
        check_dim(n)?;
        if t > s {
            return Err(Error::InvalidParameter(format!(
                "lorentz requires t <= s (got s={s}, t={t}); for t > s the triangle inequality fails"
            )));
        }
        Ok(SpaceDescriptor {
            kind: SpaceKind::Lorentz { s, t },
            dim: n,
            scale: 1.0,
        })
    }

    /// Orlicz space on `ℂⁿ` for a validated ψ.
    pub fn orlicz(psi: OrliczFunction, n: usize) -> Result<Self> {
        check_dim(n)?;
        Ok(SpaceDescriptor {
            kind: SpaceKind::Orlicz { psi },
            dim: n,
            scale: 1.0,
        })
    }

    /// Returns the same norm describing the scaled domain `r·B_Z`.
    pub fn with_scale(mut self, r: f64) -> Result<Self> {
        if !(r > 0.0) || !r.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "scale must be a positive real, got {r}"
            )));
        }
        self.scale = r;
        Ok(self)
    }

    /// Norm of a complex vector, divided by the domain scale; this equals
    /// the Minkowski functional of the described domain.
    pub fn norm(&self, z: &[Complex64]) -> Result<f64> {
        if z.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: z.len(),
            });
        }
        if z.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::NonFinite("norm input vector".into()));
        }
        let moduli: Vec<f64> = z.iter().map(|c| c.norm()).collect();
        Ok(self.norm_moduli(&moduli))
    }

    /// Minkowski functional `p_Ω(z) = inf{t > 0 : z/t ∈ Ω}` of the
    /// described domain `Ω = scale·B_Z`; `p_Ω(z) < 1 ⟺ z ∈ Ω`.
    pub fn minkowski_functional(&self, z: &[Complex64]) -> Result<f64> {
        self.norm(z)
    }

    /// Norm of a vector of nonnegative moduli (the norms here depend only
    /// on moduli), divided by the domain scale.
    pub fn norm_moduli(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.dim);
        raw_norm(&self.kind, x) / self.scale
    }

    /// `sup{|z_i| : z ∈ scale·B_Z}`, the width of the domain along
    /// coordinate `i`. Equals `scale` for every family whose basis
    /// vectors are normalized (all but Orlicz with `ψ(1) ≠ 1`).
    pub fn coordinate_sup(&self, i: usize) -> f64 {
        assert!(i < self.dim);
        let mut e = vec![0.0; self.dim];
        e[i] = 1.0;
        1.0 / self.norm_moduli(&e)
    }

    /// Projects a nonnegative direction onto the shell
    /// `{x ≥ 0 : norm_moduli(x) = radius}` by positive homogeneity.
    /// Returns `None` for directions with no positive component.
    pub fn project_shell(&self, direction: &[f64], radius: f64) -> Option<Vec<f64>> {
        let mut x: Vec<f64> = direction.iter().map(|&d| d.max(0.0)).collect();
        let nm = self.norm_moduli(&x);
        if nm <= 0.0 || !nm.is_finite() {
            return None;
        }
        let c = radius / nm;
        for v in &mut x {
            *v *= c;
        }
        Some(x)
    }

    /// Whether two descriptors denote the same subset of `ℂⁿ` (same unit
    /// ball), up to the parameter collapses `mixed` with one block or
    /// singleton blocks, `lorentz(s,s) = ℓ_s`, and the fact that every
    /// normalized one-dimensional ball is the disc.
    pub fn unit_ball_eq(&self, other: &SpaceDescriptor) -> bool {
        self.dim == other.dim && self.scale == other.scale && self.canonical() == other.canonical()
    }

    fn canonical(&self) -> SpaceKind {
        let canon_q = |q: f64| {
            if self.dim == 1 {
                SpaceKind::Minkowski { q: f64::INFINITY }
            } else {
                SpaceKind::Minkowski { q }
            }
        };
        match &self.kind {
            SpaceKind::Minkowski { q } => canon_q(*q),
            SpaceKind::Mixed {
                s,
                blocks,
                t,
                inner,
            } => {
                if *blocks == 1 {
                    canon_q(*t)
                } else if *inner == 1 {
                    canon_q(*s)
                } else {
                    self.kind.clone()
                }
            }
            SpaceKind::Lorentz { s, t } => {
                if self.dim == 1 {
                    SpaceKind::Minkowski { q: f64::INFINITY }
                } else if s == t {
                    SpaceKind::Minkowski { q: *s }
                } else {
                    self.kind.clone()
                }
            }
            SpaceKind::Orlicz { psi } => {
                if self.dim == 1 && (psi.eval(1.0) - 1.0).abs() <= 1e-12 {
                    SpaceKind::Minkowski { q: f64::INFINITY }
                } else {
                    self.kind.clone()
                }
            }
        }
    }

    /// Plain-text form, e.g. `lq:q=2:n=8` or `orlicz:psi=x^2:n=4`; the
    /// CLI's space argument grammar. `scale` is appended only when it
    /// differs from 1.
    pub fn grammar(&self) -> String {
        let mut out = match &self.kind {
            SpaceKind::Minkowski { q } => format!("lq:q={}:n={}", fmt_exp(*q), self.dim),
            SpaceKind::Mixed {
                s,
                blocks,
                t,
                inner,
            } => format!(
                "mixed:s={}:m={}:t={}:n={}",
                fmt_exp(*s),
                blocks,
                fmt_exp(*t),
                inner
            ),
            SpaceKind::Lorentz { s, t } => {
                format!("lorentz:s={}:t={}:n={}", fmt_exp(*s), fmt_exp(*t), self.dim)
            }
            SpaceKind::Orlicz { psi } => format!("orlicz:psi={}:n={}", psi.expr(), self.dim),
        };
        if self.scale != 1.0 {
            out.push_str(&format!(":scale={}", self.scale));
        }
        out
    }

    /// Parses the grammar emitted by [`SpaceDescriptor::grammar`].
    pub fn parse(text: &str) -> Result<Self> {
        let mut parts = text.trim().split(':');
        let head = parts
            .next()
            .ok_or_else(|| Error::Parse("empty space descriptor".into()))?;
        let mut kv = std::collections::BTreeMap::new();
        for part in parts {
            let (k, v) = part.split_once('=').ok_or_else(|| {
                Error::Parse(format!("expected key=value in space descriptor, got '{part}'"))
            })?;
            if kv.insert(k.to_string(), v.to_string()).is_some() {
                return Err(Error::Parse(format!("duplicate key '{k}' in '{text}'")));
            }
        }
        let take = |kv: &mut std::collections::BTreeMap<String, String>, key: &str| {
            kv.remove(key)
                .ok_or_else(|| Error::Parse(format!("space '{head}' is missing key '{key}'")))
        };
        let exp = |v: &str, key: &str| parse_exp(v, key);
        let dim = |v: &str, key: &str| -> Result<usize> {
            v.parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad integer '{v}' for key '{key}'")))
        };
        let mut kv_owned = kv;
        let space = match head {
            "lq" => {
                let q = exp(&take(&mut kv_owned, "q")?, "q")?;
                let n = dim(&take(&mut kv_owned, "n")?, "n")?;
                SpaceDescriptor::minkowski(q, n)?
            }
            "mixed" => {
                let s = exp(&take(&mut kv_owned, "s")?, "s")?;
                let m = dim(&take(&mut kv_owned, "m")?, "m")?;
                let t = exp(&take(&mut kv_owned, "t")?, "t")?;
                let n = dim(&take(&mut kv_owned, "n")?, "n")?;
                SpaceDescriptor::mixed(s, m, t, n)?
            }
            "lorentz" => {
                let s = exp(&take(&mut kv_owned, "s")?, "s")?;
                let t = exp(&take(&mut kv_owned, "t")?, "t")?;
                let n = dim(&take(&mut kv_owned, "n")?, "n")?;
                SpaceDescriptor::lorentz(s, t, n)?
            }
            "orlicz" => {
                let psi = OrliczFunction::parse(&take(&mut kv_owned, "psi")?)?;
                let n = dim(&take(&mut kv_owned, "n")?, "n")?;
                SpaceDescriptor::orlicz(psi, n)?
            }
            other => {
                return Err(Error::Parse(format!(
                    "unknown space kind '{other}' (expected lq, mixed, lorentz or orlicz)"
                )))
            }
        };
        let space = match kv_owned.remove("scale") {
            Some(v) => {
                let r: f64 = v
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad scale '{v}'")))?;
                space.with_scale(r)?
            }
            None => space,
        };
        if let Some((k, _)) = kv_owned.into_iter().next() {
            return Err(Error::Parse(format!("unknown key '{k}' for space '{head}'")));
        }
        Ok(space)
    }
}

impl std::fmt::Display for SpaceDescriptor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.grammar())
    }
}

fn check_dim(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParameter("dimension must be at least 1".into()));
    }
    Ok(())
}

/// Formats an extended-real exponent (`inf` for infinity, integers
/// without a decimal point).
pub fn fmt_exp(e: f64) -> String {
    if e.is_infinite() {
        "inf".to_string()
    } else if e == e.trunc() && e.abs() < 1e15 {
        format!("{}", e as i64)
    } else {
        format!("{e}")
    }
}

/// Parses an extended-real exponent; `inf`/`infinity` mean infinity.
pub fn parse_exp(v: &str, key: &str) -> Result<f64> {
    let lower = v.to_ascii_lowercase();
    if lower == "inf" || lower == "infinity" {
        return Ok(f64::INFINITY);
    }
    v.parse::<f64>()
        .map_err(|_| Error::Parse(format!("bad exponent '{v}' for key '{key}'")))
}

/// `ℓ_q` norm of nonnegative moduli, normalized against overflow.
fn lq_norm(q: f64, x: &[f64]) -> f64 {
    if q.is_infinite() {
        return x.iter().cloned().fold(0.0, f64::max);
    }
    if q == 1.0 {
        return x.iter().sum();
    }
    let m = x.iter().cloned().fold(0.0, f64::max);
    if m == 0.0 {
        return 0.0;
    }
    if q == 2.0 {
        let s: f64 = x.iter().map(|&v| (v / m) * (v / m)).sum();
        return m * s.sqrt();
    }
    let s: f64 = x.iter().map(|&v| (v / m).powf(q)).sum();
    m * s.powf(1.0 / q)
}

fn raw_norm(kind: &SpaceKind, x: &[f64]) -> f64 {
    match kind {
        SpaceKind::Minkowski { q } => lq_norm(*q, x),
        SpaceKind::Mixed {
            s,
            blocks,
            t,
            inner,
        } => {
            let mut outer = Vec::with_capacity(*blocks);
            for b in 0..*blocks {
                outer.push(lq_norm(*t, &x[b * inner..(b + 1) * inner]));
            }
            lq_norm(*s, &outer)
        }
        SpaceKind::Lorentz { s, t } => {
            let mut sorted = x.to_vec();
            sorted.sort_unstable_by(|a, b| b.total_cmp(a));
            if t.is_infinite() {
                // t = s = inf after the t <= s restriction: sup_k k^{1/s} z*_k
                let si = inv_ext(*s);
                return sorted
                    .iter()
                    .enumerate()
                    .map(|(k, &v)| ((k + 1) as f64).powf(si) * v)
                    .fold(0.0, f64::max);
            }
            let ts = if s.is_infinite() { 0.0 } else { t / s };
            let m = sorted[0];
            if m == 0.0 {
                return 0.0;
            }
            let mut acc = 0.0;
            let mut prev_pow = 0.0;
            for (k, &v) in sorted.iter().enumerate() {
                let kp = ((k + 1) as f64).powf(ts);
                let w = kp - prev_pow;
                prev_pow = kp;
                if w > 0.0 && v > 0.0 {
                    acc += w * (v / m).powf(*t);
                }
            }
            m * acc.powf(1.0 / t)
        }
        SpaceKind::Orlicz { psi } => luxemburg(psi, x),
    }
}

/// How an invariant should be computed.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Method {
    /// Closed form only; errors when none exists for the input.
    ClosedForm,
    /// Multi-start shell maximization.
    Numeric,
    /// Closed form when available, numeric otherwise.
    Auto,
}

/// Budget for the numeric invariant paths.
#[derive(Clone, Debug)]
pub struct NumericBudget {
    /// Number of restart directions (basis vectors, uniform, then random).
    pub starts: usize,
    /// Pattern-search step control.
    pub pattern: PatternSpec,
}

impl Default for NumericBudget {
    fn default() -> Self {
        NumericBudget {
            starts: 16,
            pattern: PatternSpec::default(),
        }
    }
}

/// Value of a space invariant together with how it was obtained.
#[derive(Clone, Debug)]
pub struct NormEstimate {
    pub value: f64,
    /// True when a closed form supplied the value.
    pub closed_form: bool,
    /// False when the numeric search exhausted its sweep budget while
    /// still improving (the value is then a lower estimate and flagged).
    pub converged: bool,
}

impl NormEstimate {
    fn exact(value: f64) -> Self {
        NormEstimate {
            value,
            closed_form: true,
            converged: true,
        }
    }
}

fn lq_embed_factor(s: f64, t: f64, n: usize) -> f64 {
    if s <= t {
        1.0
    } else {
        (n as f64).powf(inv_ext(t) - inv_ext(s))
    }
}

fn embed_closed_form(from: &SpaceDescriptor, to: &SpaceDescriptor) -> Option<f64> {
    let factor = match (&from.kind, &to.kind) {
        (SpaceKind::Minkowski { q: s }, SpaceKind::Minkowski { q: t }) => {
            lq_embed_factor(*s, *t, from.dim)
        }
        (
            SpaceKind::Mixed {
                s: s1,
                blocks: m1,
                t: t1,
                inner: n1,
            },
            SpaceKind::Mixed {
                s: s2,
                blocks: m2,
                t: t2,
                inner: n2,
            },
        ) if m1 == m2 && n1 == n2 => lq_embed_factor(*s1, *s2, *m1) * lq_embed_factor(*t1, *t2, *n1),
        _ => return None,
    };
    Some(factor * from.scale / to.scale)
}

/// Operator norm `‖Id : from → to‖ = sup_{z≠0} ‖z‖_to/‖z‖_from` of the
/// formal identity, scale-adjusted so it equals the domain-scaling factor
/// `S(Ω_from, Ω_to)`.
///
/// Closed forms cover `ℓ_q → ℓ_{q'}` (`1` for `s ≤ t`, `n^{1/t−1/s}`
/// otherwise) and the mixed→mixed factorization
/// `‖Id‖ = ‖Id:ℓ^m_s→ℓ^m_l‖·‖Id:ℓ^n_t→ℓ^n_r‖`. The numeric path
/// maximizes `‖x‖_to` over the nonnegative `from`-shell (1-unconditionality
/// puts a maximizer there).
pub fn embed_norm(
    from: &SpaceDescriptor,
    to: &SpaceDescriptor,
    method: Method,
    budget: &NumericBudget,
    seed: u64,
) -> Result<NormEstimate> {
    if from.dim != to.dim {
        return Err(Error::DimensionMismatch {
            expected: from.dim,
            got: to.dim,
        });
    }
    match method {
        Method::ClosedForm => embed_closed_form(from, to)
            .map(NormEstimate::exact)
            .ok_or_else(|| Error::NoClosedForm(format!("Id: {} -> {}", from, to))),
        Method::Numeric => Ok(numeric_embed(from, to, budget, seed)),
        Method::Auto => Ok(embed_closed_form(from, to)
            .map(NormEstimate::exact)
            .unwrap_or_else(|| numeric_embed(from, to, budget, seed))),
    }
}

fn numeric_embed(
    from: &SpaceDescriptor,
    to: &SpaceDescriptor,
    budget: &NumericBudget,
    seed: u64,
) -> NormEstimate {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let starts = nonneg_starts(from.dim, budget.starts, &mut rng);
    let eval = |d: &[f64]| match from.project_shell(d, 1.0) {
        Some(x) => to.norm_moduli(&x),
        None => f64::NEG_INFINITY,
    };
    let out = multistart_max(eval, &starts, &vec![1.0; from.dim], &budget.pattern);
    NormEstimate {
        value: out.value,
        closed_form: false,
        converged: out.converged,
    }
}

/// Dual norm of the ones functional,
/// `‖Σ_k e*_k‖ = sup{Σ_k Re z_k : z ∈ scale·B_Z}`.
///
/// Closed forms: `ℓ_q → n^{1−1/q}`, Lorentz (finite `t`) → `n^{1−1/s}`,
/// Orlicz → `n·ψ⁻¹(1/n)`; each times `scale`. The numeric path maximizes
/// `Σ x_k` over the nonnegative shell and must agree with the closed
/// forms within the documented optimizer tolerance.
pub fn dual_ones_norm(
    space: &SpaceDescriptor,
    method: Method,
    budget: &NumericBudget,
    seed: u64,
) -> Result<NormEstimate> {
    let closed = |space: &SpaceDescriptor| -> Result<Option<f64>> {
        let n = space.dim as f64;
        let v = match &space.kind {
            SpaceKind::Minkowski { q } => Some(n.powf(1.0 - inv_ext(*q))),
            SpaceKind::Lorentz { s, t } if t.is_finite() => Some(n.powf(1.0 - inv_ext(*s))),
            SpaceKind::Lorentz { .. } => None,
            SpaceKind::Orlicz { psi } => Some(n * psi.inverse(1.0 / n)?),
            SpaceKind::Mixed { .. } => None,
        };
        Ok(v.map(|v| v * space.scale))
    };
    match method {
        Method::ClosedForm => closed(space)?
            .map(NormEstimate::exact)
            .ok_or_else(|| Error::NoClosedForm(format!("dual ones norm on {space}"))),
        Method::Numeric => Ok(numeric_dual_ones(space, budget, seed)),
        Method::Auto => Ok(closed(space)?
            .map(NormEstimate::exact)
            .unwrap_or_else(|| numeric_dual_ones(space, budget, seed))),
    }
}

fn numeric_dual_ones(space: &SpaceDescriptor, budget: &NumericBudget, seed: u64) -> NormEstimate {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let starts = nonneg_starts(space.dim, budget.starts, &mut rng);
    let eval = |d: &[f64]| match space.project_shell(d, 1.0) {
        Some(x) => x.iter().sum(),
        None => f64::NEG_INFINITY,
    };
    let out = multistart_max(eval, &starts, &vec![1.0; space.dim], &budget.pattern);
    NormEstimate {
        value: out.value,
        closed_form: false,
        converged: out.converged,
    }
}

/// `sup_{z ∈ scale·B_Z} ‖z‖_p`, the denominator of the certified lower
/// bounds. Identical to `embed_norm(space, ℓ_p, …)` by definition — this
/// is a literal delegation, so the two agree exactly.
pub fn sup_pnorm_on_ball(
    space: &SpaceDescriptor,
    p: f64,
    method: Method,
    budget: &NumericBudget,
    seed: u64,
) -> Result<NormEstimate> {
    check_exponent("p", p)?;
    let lp = SpaceDescriptor::minkowski(p, space.dim)?;
    embed_norm(space, &lp, method, budget, seed)
}

/// Domain-scaling factor `S(Ω₁, Ω₂) = inf{s > 0 : Ω₁ ⊂ s·Ω₂}`.
///
/// For the scaled unit balls described here this is exactly the
/// (scale-adjusted) embedding norm, so `S(Ω, Ω) = 1`.
pub fn domain_scaling(
    omega1: &SpaceDescriptor,
    omega2: &SpaceDescriptor,
    budget: &NumericBudget,
    seed: u64,
) -> Result<NormEstimate> {
    embed_norm(omega1, omega2, Method::Auto, budget, seed)
}

/// Convenience alias for [`OrliczFunction::inverse`].
pub fn orlicz_inverse(psi: &OrliczFunction, y: f64) -> Result<f64> {
    psi.inverse(y)
}

/// Result of a randomized 1-unconditionality check.
#[derive(Clone, Debug, serde::Serialize)]
pub struct UncondReport {
    pub pass: bool,
    pub max_deviation: f64,
    pub samples: usize,
}

/// Draws random `z` and random unimodular `ε`, and measures
/// `max |‖(ε_k z_k)_k‖ − ‖z‖|`. Passes iff the maximum deviation is at
/// most `1e-9` (the implemented norms depend on moduli only, so the
/// deviation is pure floating-point noise).
pub fn check_unconditionality(
    space: &SpaceDescriptor,
    samples: usize,
    seed: u64,
) -> Result<UncondReport> {
    if samples == 0 {
        return Err(Error::InvalidParameter("samples must be >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_dev: f64 = 0.0;
    for _ in 0..samples {
        let z: Vec<Complex64> = (0..space.dim)
            .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        let rotated: Vec<Complex64> = z
            .iter()
            .map(|&c| {
                let theta = rng.random_range(0.0..std::f64::consts::TAU);
                c * Complex64::new(theta.cos(), theta.sin())
            })
            .collect();
        let n0 = space.norm(&z)?;
        let n1 = space.norm(&rotated)?;
        max_dev = max_dev.max((n1 - n0).abs());
    }
    Ok(UncondReport {
        pass: max_dev <= 1e-9,
        max_deviation: max_dev,
        samples,
    })
}
