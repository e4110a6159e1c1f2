//! Closed-form lower and upper bounds on Bohr radii, parameterized by
//! space invariants and a set of named positive constants.
//!
//! Every evaluator returns a [`BoundReport`] echoing its inputs, the
//! constants that actually participated, and a `certified` flag: the
//! constant-free formulas are certified outright, while formulas whose
//! constants are still at their defaults carry the note "asymptotic
//! shape up to unspecified constants" — their value pins the shape in
//! `n`, `λ`, `p` but not the absolute scale until the caller calibrates
//! the constants.
//!
//! Throughout, `L(λ, p) = ((λ^p − 1)/(2λ^p − 1))^{1/p}` and all
//! logarithms are natural. Extended-real exponents follow `1/∞ = 0`.

use crate::error::{Error, Result};
use crate::inv_ext;
use crate::spaces::fmt_exp;
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;

/// Keys accepted by [`BoundConstants::set`].
pub const CONSTANT_KEYS: [&str; 10] = [
    "E1", "E2", "E3", "E4", "E5", "E6", "E2_prime", "E3_prime", "d", "c_misc",
];

const SHAPE_NOTE: &str = "asymptotic shape up to unspecified constants";

/// The named positive constants the bound formulas depend on. All
/// default to 1; a report records whether any defaulted constant
/// participated in its value.
#[derive(Clone, Debug)]
pub struct BoundConstants {
    values: BTreeMap<String, f64>,
    explicit: std::collections::BTreeSet<String>,
}

impl Default for BoundConstants {
    fn default() -> Self {
        BoundConstants {
            values: CONSTANT_KEYS
                .iter()
                .map(|k| (k.to_string(), 1.0))
                .collect(),
            explicit: Default::default(),
        }
    }
}

impl BoundConstants {
    /// Overrides one constant; the value must be strictly positive and
    /// finite, the key one of [`CONSTANT_KEYS`].
    pub fn set(&mut self, key: &str, value: f64) -> Result<()> {
        if !CONSTANT_KEYS.contains(&key) {
            return Err(Error::InvalidParameter(format!(
                "unknown constant '{key}' (known: {})",
                CONSTANT_KEYS.join(", ")
            )));
        }
        if !(value > 0.0) || !value.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "constant {key} must be strictly positive and finite, got {value}"
            )));
        }
        self.values.insert(key.to_string(), value);
        self.explicit.insert(key.to_string());
        Ok(())
    }

    pub fn get(&self, key: &str) -> Result<f64> {
        self.values
            .get(key)
            .copied()
            .ok_or_else(|| Error::InvalidParameter(format!("unknown constant '{key}'")))
    }

    pub fn is_explicit(&self, key: &str) -> bool {
        self.explicit.contains(key)
    }

    fn used(&self, keys: &[&str]) -> (BTreeMap<String, f64>, bool) {
        let map = keys
            .iter()
            .map(|k| (k.to_string(), self.values[*k]))
            .collect();
        let any_default = keys.iter().any(|k| !self.explicit.contains(*k));
        (map, any_default)
    }
}

/// Whether a report bounds the radius from below or above.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Lower,
    Upper,
}

/// One evaluated bound formula.
#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub formula_id: String,
    pub role: Role,
    pub value: f64,
    /// Echo of all inputs, stringified deterministically.
    pub params: BTreeMap<String, String>,
    /// The constants that participated in the value.
    pub constants_used: BTreeMap<String, f64>,
    /// False when a defaulted constant participated.
    pub certified: bool,
    pub note: Option<String>,
}

impl BoundReport {
    fn new(
        formula_id: &str,
        role: Role,
        value: f64,
        params: BTreeMap<String, String>,
        constants_used: BTreeMap<String, f64>,
        certified: bool,
        notes: Vec<String>,
    ) -> Result<BoundReport> {
        if !value.is_finite() || value < 0.0 {
            return Err(Error::NonFinite(format!(
                "{formula_id} evaluated to {value}"
            )));
        }
        Ok(BoundReport {
            formula_id: formula_id.to_string(),
            role,
            value,
            params,
            constants_used,
            certified,
            note: if notes.is_empty() {
                None
            } else {
                Some(notes.join("; "))
            },
        })
    }
}

fn check_lambda_gt1(lambda: f64) -> Result<()> {
    if !(lambda > 1.0) || !lambda.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "lambda must be a finite real > 1, got {lambda}"
        )));
    }
    Ok(())
}

fn check_p(p: f64) -> Result<()> {
    if !(p >= 1.0) || !p.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "p must be a finite real >= 1, got {p}"
        )));
    }
    Ok(())
}

fn check_positive(name: &str, v: f64) -> Result<()> {
    if !(v > 0.0) || !v.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "{name} must be strictly positive and finite, got {v}"
        )));
    }
    Ok(())
}

fn check_n_ge2(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "n must be at least 2 (log n > 0 required), got {n}"
        )));
    }
    Ok(())
}

/// `((λ^p − 1)/(2λ^p − 1))^{1/p}`.
pub fn lambda_factor(lambda: f64, p: f64) -> f64 {
    let lp = lambda.powf(p);
    ((lp - 1.0) / (2.0 * lp - 1.0)).powf(1.0 / p)
}

/// The two branch ratios shared by the constant-free radius bounds:
/// `((λ^p − u^p)/(2λ^p − u))^{1/p}` and
/// `((λ^p − u^p)/(λ^p − u^p + 1))^{1/p}`.
fn branch_ratios(p: f64, lambda: f64, u: f64) -> (f64, f64) {
    let lp = lambda.powf(p);
    let up = u.powf(p);
    let b1 = ((lp - up) / (2.0 * lp - u)).powf(1.0 / p);
    let b2 = ((lp - up) / (lp - up + 1.0)).powf(1.0 / p);
    (b1, b2)
}

/// Variants of the constant-free family of lower bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Thm11Variant {
    /// Pluriharmonic bound with the threshold split on `‖U‖`.
    PluriharmonicD,
    /// `(1/2^{2+1/p}) (λ^p − 1)^{1/p} / λ²`, independent of `‖U‖`.
    CorollaryIdentity,
    /// Holomorphic-case bound with the split at `‖U‖ = 1`.
    HolomorphicC,
}

impl Thm11Variant {
    fn formula_id(self) -> &'static str {
        match self {
            Thm11Variant::PluriharmonicD => "thm11",
            Thm11Variant::CorollaryIdentity => "cor11",
            Thm11Variant::HolomorphicC => "thm19",
        }
    }
}

impl fmt::Display for Thm11Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Thm11Variant::PluriharmonicD => "pluriharmonic_D",
            Thm11Variant::CorollaryIdentity => "corollary_identity",
            Thm11Variant::HolomorphicC => "holomorphic_C",
        })
    }
}

/// Constant-free lower bounds `D/sup_pnorm`, `C/sup_pnorm`, and the
/// corollary identity. Requires `0 < ‖U‖ < λ` strictly — at `‖U‖ = λ`
/// the radius collapses (see the necessity scan).
pub fn eval_thm11_family(
    variant: Thm11Variant,
    p: f64,
    lambda: f64,
    norm_u: f64,
    sup_pnorm: f64,
) -> Result<BoundReport> {
    check_p(p)?;
    check_lambda_gt1(lambda)?;
    check_positive("sup_pnorm", sup_pnorm)?;
    if !(norm_u > 0.0) || !norm_u.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "normU must be strictly positive and finite, got {norm_u}"
        )));
    }
    if norm_u >= lambda {
        return Err(Error::InvalidParameter(format!(
            "normU = {norm_u} must be strictly below lambda = {lambda}: at normU >= lambda \
             the radius degenerates to 0 (the necessity scan exhibits violating functions \
             at every positive r)"
        )));
    }

    let mut notes = Vec::new();
    let numerator = match variant {
        Thm11Variant::CorollaryIdentity => {
            let lp = lambda.powf(p);
            (lp - 1.0).powf(1.0 / p) / (lambda * lambda) / 2f64.powf(2.0 + 1.0 / p)
        }
        Thm11Variant::PluriharmonicD => {
            let thr = 1.0 / (4.0 * lambda * 2f64.powf(1.0 / p));
            let (b1, b2) = branch_ratios(p, lambda, norm_u);
            let large = thr * b1.max(b2 / norm_u);
            let small = thr * b1.max(b2);
            if norm_u > thr {
                large
            } else if norm_u < thr {
                small
            } else {
                notes.push(
                    "normU sits exactly on the branch threshold; both branches evaluated, \
                     max taken"
                        .to_string(),
                );
                large.max(small)
            }
        }
        Thm11Variant::HolomorphicC => {
            let (b1, b2) = branch_ratios(p, lambda, norm_u);
            let large = b1.max(b2 / norm_u);
            let small = b1.max(b2);
            if norm_u > 1.0 {
                large
            } else if norm_u < 1.0 {
                small
            } else {
                notes.push(
                    "normU sits exactly on the branch threshold; both branches evaluated, \
                     max taken"
                        .to_string(),
                );
                large.max(small)
            }
        }
    };

    let params = BTreeMap::from([
        ("variant".to_string(), variant.to_string()),
        ("p".to_string(), fmt_exp(p)),
        ("lambda".to_string(), fmt_exp(lambda)),
        ("normU".to_string(), fmt_exp(norm_u)),
        ("sup_pnorm".to_string(), fmt_exp(sup_pnorm)),
    ]);
    BoundReport::new(
        variant.formula_id(),
        Role::Lower,
        numerator / sup_pnorm,
        params,
        BTreeMap::new(),
        true,
        notes,
    )
}

/// Case selector for the constant-bearing lower bounds split on `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PCase {
    PEq1,
    PGe2,
    PBetween,
}

impl PCase {
    /// The case matching `p`, preferring `PGe2` at the boundary `p = 2`.
    pub fn classify(p: f64) -> Result<PCase> {
        check_p(p)?;
        Ok(if p == 1.0 {
            PCase::PEq1
        } else if p >= 2.0 {
            PCase::PGe2
        } else {
            PCase::PBetween
        })
    }

    fn check_consistent(self, p: f64) -> Result<()> {
        check_p(p)?;
        let ok = match self {
            PCase::PEq1 => p == 1.0,
            PCase::PGe2 => p >= 2.0,
            PCase::PBetween => p > 1.0 && p < 2.0,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!(
                "case {self} is inconsistent with p = {p}"
            )))
        }
    }
}

impl fmt::Display for PCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PCase::PEq1 => "p_eq_1",
            PCase::PGe2 => "p_ge_2",
            PCase::PBetween => "p_between",
        })
    }
}

/// The three-case lower-bound kernel shared by the identity-`U`
/// theorem and its sequence-space restatement: `aux` is the second
/// invariant (`‖Id: Z → ℓ₁‖` or the dual-ones norm), `embed` the
/// `ℓ₂ → Z` embedding norm (1 in the symmetric 2-convex reading).
/// Returns (value-without-L, constant key).
fn three_case_kernel(
    case: PCase,
    p: f64,
    n: usize,
    embed: f64,
    aux: f64,
    constants: &BoundConstants,
) -> (f64, &'static str) {
    let e = std::f64::consts::E;
    let sqrt_n = (n as f64).sqrt();
    match case {
        PCase::PEq1 => {
            let v = (1.0 / (sqrt_n * embed)).max(1.0 / (e * aux));
            (constants.values["E1"] * v, "E1")
        }
        PCase::PGe2 => (constants.values["E3"] * embed.powf(-2.0 / p), "E3"),
        PCase::PBetween => {
            let theta = 2.0 * (p - 1.0) / p;
            let first = 1.0 / (sqrt_n.powf(1.0 - theta) * embed);
            let second =
                embed.powf(-theta) / (e.powf(1.0 - theta) * aux.powf(1.0 - theta));
            (constants.values["E2"] * first.max(second), "E2")
        }
    }
}

/// Lower bound for identity `U` in terms of the `ℓ₂ → Z` and `Z → ℓ₁`
/// embedding norms, multiplied by `L(λ, p)`.
pub fn eval_thm12(
    case: PCase,
    n: usize,
    lambda: f64,
    p: f64,
    embed_l2_to_z: f64,
    embed_z_to_l1: f64,
    constants: &BoundConstants,
) -> Result<BoundReport> {
    case.check_consistent(p)?;
    check_lambda_gt1(lambda)?;
    check_positive("embed_l2_to_Z", embed_l2_to_z)?;
    check_positive("embed_Z_to_l1", embed_z_to_l1)?;
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }

    let ell = lambda_factor(lambda, p);
    let (kernel, key) = three_case_kernel(case, p, n, embed_l2_to_z, embed_z_to_l1, constants);
    let mut value = kernel * ell;
    let mut keys = vec![key];
    let mut notes = Vec::new();
    if case == PCase::PGe2 && p == 2.0 {
        let (alt, alt_key) =
            three_case_kernel(PCase::PBetween, p, n, embed_l2_to_z, embed_z_to_l1, constants);
        let alt = alt * ell;
        if alt > value {
            value = alt;
        }
        keys.push(alt_key);
        notes.push(
            "p = 2 sits on the case boundary; both adjacent branches evaluated, max taken"
                .to_string(),
        );
    }
    let (constants_used, any_default) = constants.used(&keys);
    if any_default {
        notes.push(SHAPE_NOTE.to_string());
    }

    let mut params = BTreeMap::from([
        ("case".to_string(), case.to_string()),
        ("n".to_string(), n.to_string()),
        ("lambda".to_string(), fmt_exp(lambda)),
        ("p".to_string(), fmt_exp(p)),
        ("embed_l2_to_Z".to_string(), fmt_exp(embed_l2_to_z)),
        ("embed_Z_to_l1".to_string(), fmt_exp(embed_z_to_l1)),
    ]);
    if case == PCase::PBetween {
        params.insert(
            "theta".to_string(),
            fmt_exp(2.0 * (p - 1.0) / p),
        );
    }
    BoundReport::new(
        "thm12",
        Role::Lower,
        value,
        params,
        constants_used,
        !any_default,
        notes,
    )
}

/// Upper bound
/// `d·‖Id:Z→ℓ_q‖·‖Id:ℓ_q→Z‖·λ^{2/log n}·n^{1−1/p}·(log n/n)^{1−1/min{q,2}}`.
///
/// Stated for the holomorphic radius; it applies to the pluriharmonic
/// radius as well since the pluriharmonic radius never exceeds the
/// holomorphic one on these domains (the report note records this
/// provenance).
pub fn eval_thm12_upper(
    n: usize,
    lambda: f64,
    p: f64,
    q: f64,
    embed_z_to_lq: f64,
    embed_lq_to_z: f64,
    constants: &BoundConstants,
) -> Result<BoundReport> {
    check_n_ge2(n)?;
    check_lambda_gt1(lambda)?;
    check_p(p)?;
    crate::check_exponent("q", q)?;
    check_positive("embed_Z_to_lq", embed_z_to_lq)?;
    check_positive("embed_lq_to_Z", embed_lq_to_z)?;

    let nf = n as f64;
    let log_n = nf.ln();
    let exponent = 1.0 - inv_ext(q.min(2.0));
    let value = constants.values["d"]
        * embed_z_to_lq
        * embed_lq_to_z
        * lambda.powf(2.0 / log_n)
        * nf.powf(1.0 - 1.0 / p)
        * (log_n / nf).powf(exponent);

    let (constants_used, any_default) = constants.used(&["d"]);
    let mut notes = vec![
        "stated for the holomorphic radius; transfers to the pluriharmonic radius, which \
         it dominates"
            .to_string(),
    ];
    if any_default {
        notes.push(SHAPE_NOTE.to_string());
    }
    let params = BTreeMap::from([
        ("n".to_string(), n.to_string()),
        ("lambda".to_string(), fmt_exp(lambda)),
        ("p".to_string(), fmt_exp(p)),
        ("q".to_string(), fmt_exp(q)),
        ("embed_Z_to_lq".to_string(), fmt_exp(embed_z_to_lq)),
        ("embed_lq_to_Z".to_string(), fmt_exp(embed_lq_to_z)),
    ]);
    BoundReport::new(
        "thm12u",
        Role::Upper,
        value,
        params,
        constants_used,
        !any_default,
        notes,
    )
}

/// Regime selector for the `ℓ_q` corollary.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cor14Regime {
    PEq1,
    PGeQ,
    PLtQ,
}

impl Cor14Regime {
    /// The regime matching `(p, q)`, preferring `PGeQ` at `p = q`.
    pub fn classify(p: f64, q: f64) -> Result<Cor14Regime> {
        check_p(p)?;
        crate::check_exponent("q", q)?;
        Ok(if p == 1.0 {
            Cor14Regime::PEq1
        } else if p >= q {
            Cor14Regime::PGeQ
        } else {
            Cor14Regime::PLtQ
        })
    }

    fn check_consistent(self, p: f64, q: f64) -> Result<()> {
        check_p(p)?;
        crate::check_exponent("q", q)?;
        let ok = match self {
            Cor14Regime::PEq1 => p == 1.0,
            Cor14Regime::PGeQ => p >= q,
            Cor14Regime::PLtQ => p > 1.0 && p < q,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!(
                "regime {self} is inconsistent with p = {p}, q = {}",
                fmt_exp(q)
            )))
        }
    }
}

impl fmt::Display for Cor14Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Cor14Regime::PEq1 => "p_eq_1",
            Cor14Regime::PGeQ => "p_ge_q",
            Cor14Regime::PLtQ => "p_lt_q",
        })
    }
}

fn cor14_kernel(
    regime: Cor14Regime,
    q: f64,
    p: f64,
    n: usize,
    constants: &BoundConstants,
) -> (f64, &'static str) {
    let nf = n as f64;
    let log_ratio = nf.ln() / nf;
    match regime {
        Cor14Regime::PEq1 => {
            let exponent = 1.0 - inv_ext(q.min(2.0));
            (constants.values["E3_prime"] * log_ratio.powf(exponent), "E3_prime")
        }
        Cor14Regime::PGeQ => (constants.values["E2_prime"] * nf.powf(-1.0 / p), "E2_prime"),
        Cor14Regime::PLtQ => {
            // q = ∞ enters through the limits (p−1)/(p(q−1)) → 0 and
            // (q−p)/(p(q−1)) → 1/p.
            let (a, ratio) = if q.is_infinite() {
                (0.0, 1.0 / p)
            } else {
                ((p - 1.0) / (p * (q - 1.0)), (q - p) / (p * (q - 1.0)))
            };
            let b = (1.0 - inv_ext(q.min(2.0))) * ratio;
            (
                constants.values["E4"] * nf.powf(-a) * log_ratio.powf(b),
                "E4",
            )
        }
    }
}

/// Lower bound for the unit ball of `ℓ_q^n`, multiplied by `L(λ, p)`.
pub fn eval_cor14(
    regime: Cor14Regime,
    q: f64,
    p: f64,
    lambda: f64,
    n: usize,
    constants: &BoundConstants,
) -> Result<BoundReport> {
    regime.check_consistent(p, q)?;
    check_lambda_gt1(lambda)?;
    check_n_ge2(n)?;

    let ell = lambda_factor(lambda, p);
    let (kernel, key) = cor14_kernel(regime, q, p, n, constants);
    let mut value = kernel * ell;
    let mut keys = vec![key];
    let mut notes = Vec::new();
    if regime == Cor14Regime::PGeQ && p == q {
        let (alt, alt_key) = cor14_kernel(Cor14Regime::PLtQ, q, p, n, constants);
        let alt = alt * ell;
        if alt > value {
            value = alt;
        }
        keys.push(alt_key);
        notes.push(
            "p = q sits on the regime boundary; both adjacent branches evaluated, max taken"
                .to_string(),
        );
    }
    let (constants_used, any_default) = constants.used(&keys);
    if any_default {
        notes.push(SHAPE_NOTE.to_string());
    }
    let params = BTreeMap::from([
        ("regime".to_string(), regime.to_string()),
        ("q".to_string(), fmt_exp(q)),
        ("p".to_string(), fmt_exp(p)),
        ("lambda".to_string(), fmt_exp(lambda)),
        ("n".to_string(), n.to_string()),
    ]);
    BoundReport::new(
        "cor14",
        Role::Lower,
        value,
        params,
        constants_used,
        !any_default,
        notes,
    )
}

/// The two sequence-space readings of the paired bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Thm13aItem {
    /// `Z_n` a section of a Banach sequence space inside `ℓ₂`.
    SubsetL2,
    /// `Z` symmetric and 2-convex (the `ℓ₂` embedding norm is 1).
    Symmetric2Convex,
}

impl fmt::Display for Thm13aItem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Thm13aItem::SubsetL2 => "subset_l2",
            Thm13aItem::Symmetric2Convex => "symmetric_2convex",
        })
    }
}

/// Paired lower/upper bounds for sequence-space sections, in terms of
/// the `ℓ₂ → Z_n` embedding norm and the dual-ones norm.
pub fn eval_thm13a(
    item: Thm13aItem,
    case: PCase,
    n: usize,
    lambda: f64,
    p: f64,
    embed_l2_to_zn: f64,
    dual_ones: f64,
    constants: &BoundConstants,
) -> Result<(BoundReport, BoundReport)> {
    case.check_consistent(p)?;
    check_lambda_gt1(lambda)?;
    check_n_ge2(n)?;
    check_positive("embed_l2_to_Zn", embed_l2_to_zn)?;
    check_positive("dual_ones", dual_ones)?;

    let nf = n as f64;
    let log_n = nf.ln();
    let ell = lambda_factor(lambda, p);
    let embed = match item {
        Thm13aItem::SubsetL2 => embed_l2_to_zn,
        Thm13aItem::Symmetric2Convex => 1.0,
    };

    let (kernel, key) = three_case_kernel(case, p, n, embed, dual_ones, constants);
    let mut lower_value = kernel * ell;
    let mut lower_keys = vec![key];
    let mut lower_notes = Vec::new();
    if case == PCase::PGe2 && p == 2.0 {
        let (alt, alt_key) = three_case_kernel(PCase::PBetween, p, n, embed, dual_ones, constants);
        let alt = alt * ell;
        if alt > lower_value {
            lower_value = alt;
        }
        lower_keys.push(alt_key);
        lower_notes.push(
            "p = 2 sits on the case boundary; both adjacent branches evaluated, max taken"
                .to_string(),
        );
    }

    let upper_value = match item {
        Thm13aItem::SubsetL2 => {
            constants.values["d"]
                * lambda.powf(2.0 / log_n)
                * embed_l2_to_zn
                * nf.powf(1.0 - 1.0 / p)
                * (log_n / nf).sqrt()
        }
        Thm13aItem::Symmetric2Convex => {
            constants.values["d"]
                * lambda.powf(2.0 / log_n)
                * dual_ones
                * nf.powf(-1.0 / p)
                * log_n.sqrt()
        }
    };

    let params = BTreeMap::from([
        ("item".to_string(), item.to_string()),
        ("case".to_string(), case.to_string()),
        ("n".to_string(), n.to_string()),
        ("lambda".to_string(), fmt_exp(lambda)),
        ("p".to_string(), fmt_exp(p)),
        ("embed_l2_to_Zn".to_string(), fmt_exp(embed_l2_to_zn)),
        ("dual_ones".to_string(), fmt_exp(dual_ones)),
    ]);

    let (lower_used, lower_default) = constants.used(&lower_keys);
    if lower_default {
        lower_notes.push(SHAPE_NOTE.to_string());
    }
    let lower = BoundReport::new(
        "thm13a",
        Role::Lower,
        lower_value,
        params.clone(),
        lower_used,
        !lower_default,
        lower_notes,
    )?;

    let (upper_used, upper_default) = constants.used(&["d"]);
    let mut upper_notes = Vec::new();
    if upper_default {
        upper_notes.push(SHAPE_NOTE.to_string());
    }
    let upper = BoundReport::new(
        "thm13a",
        Role::Upper,
        upper_value,
        params,
        upper_used,
        !upper_default,
        upper_notes,
    )?;
    Ok((lower, upper))
}

/// Cotype-driven pair: `Ψ₁` (lower shape) splits at `p` vs
/// `min{Cot(X), q}`, `Ψ₂ = 2λ·n^{1/q − 1/p}` or `2λ·n^{1/Cot(X) − 1/p}`
/// splits at `q` vs `Cot(X)`. Accepts `λ ≥ 1` — `Ψ₂` is meaningful at
/// `λ = 1`, where `Ψ₁` degenerates to 0.
pub fn eval_thm13_psi(
    n: usize,
    lambda: f64,
    p: f64,
    q: f64,
    cotype_t: f64,
    cot_x: f64,
    constants: &BoundConstants,
) -> Result<(BoundReport, BoundReport)> {
    if !(lambda >= 1.0) || !lambda.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "lambda must be a finite real >= 1, got {lambda}"
        )));
    }
    check_p(p)?;
    crate::check_exponent("q", q)?;
    for (name, v) in [("cotype_t", cotype_t), ("cot_X", cot_x)] {
        if !(v >= 2.0) {
            return Err(Error::InvalidParameter(format!(
                "{name} must be >= 2 (or infinite), got {v}"
            )));
        }
    }
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }

    let nf = n as f64;
    let core = (lambda.powf(p) - 1.0).powf(1.0 / p) / lambda;
    let split = cot_x.min(q);
    let (psi1_value, psi1_key) = if p > split {
        (constants.values["E5"] * core, "E5")
    } else {
        let exponent = inv_ext(cotype_t.min(q)) - 1.0 / p;
        (constants.values["E6"] * core * nf.powf(exponent), "E6")
    };
    let psi2_value = if q <= cot_x {
        2.0 * lambda * nf.powf(inv_ext(q) - 1.0 / p)
    } else {
        2.0 * lambda * nf.powf(inv_ext(cot_x) - 1.0 / p)
    };

    let params = BTreeMap::from([
        ("n".to_string(), n.to_string()),
        ("lambda".to_string(), fmt_exp(lambda)),
        ("p".to_string(), fmt_exp(p)),
        ("q".to_string(), fmt_exp(q)),
        ("cotype_t".to_string(), fmt_exp(cotype_t)),
        ("cot_X".to_string(), fmt_exp(cot_x)),
    ]);

    let (psi1_used, psi1_default) = constants.used(&[psi1_key]);
    let psi1 = BoundReport::new(
        "thm13",
        Role::Lower,
        psi1_value,
        params.clone(),
        psi1_used,
        !psi1_default,
        if psi1_default {
            vec![SHAPE_NOTE.to_string()]
        } else {
            Vec::new()
        },
    )?;
    // Ψ₂ carries no unspecified constant: the 2λ prefactor is exact.
    let psi2 = BoundReport::new(
        "thm13",
        Role::Upper,
        psi2_value,
        params,
        BTreeMap::new(),
        true,
        Vec::new(),
    )?;
    Ok((psi1, psi2))
}

/// How the domain-comparison factors apply in [`eval_sandwich`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SandwichMode {
    /// Lower divided and upper multiplied by `S_forward·S_backward`.
    TwoSided,
    /// Lower divided by `S_backward` only, upper multiplied by
    /// `S_forward` only (the one-factor-per-side variants).
    OneSided,
}

impl fmt::Display for SandwichMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SandwichMode::TwoSided => "two_sided",
            SandwichMode::OneSided => "one_sided",
        })
    }
}

/// Transports a bound pair through domain-comparison scaling factors.
pub fn eval_sandwich(
    inner: &(BoundReport, BoundReport),
    s_forward: f64,
    s_backward: f64,
    mode: SandwichMode,
) -> Result<(BoundReport, BoundReport)> {
    check_positive("S_forward", s_forward)?;
    check_positive("S_backward", s_backward)?;
    if inner.0.role != Role::Lower || inner.1.role != Role::Upper {
        return Err(Error::InvalidParameter(
            "inner pair must be (lower, upper)".into(),
        ));
    }
    let (lower_div, upper_mul) = match mode {
        SandwichMode::TwoSided => (s_forward * s_backward, s_forward * s_backward),
        SandwichMode::OneSided => (s_backward, s_forward),
    };
    let wrap = |r: &BoundReport, value: f64| -> Result<BoundReport> {
        let mut params = BTreeMap::from([
            ("inner_formula".to_string(), r.formula_id.clone()),
            ("inner_value".to_string(), fmt_exp(r.value)),
            ("S_forward".to_string(), fmt_exp(s_forward)),
            ("S_backward".to_string(), fmt_exp(s_backward)),
            ("mode".to_string(), mode.to_string()),
        ]);
        for (k, v) in &r.params {
            params.insert(format!("inner.{k}"), v.clone());
        }
        BoundReport::new(
            "sandwich",
            r.role,
            value,
            params,
            r.constants_used.clone(),
            r.certified,
            r.note.iter().cloned().collect(),
        )
    };
    Ok((
        wrap(&inner.0, inner.0.value / lower_div)?,
        wrap(&inner.1, inner.1.value * upper_mul)?,
    ))
}
