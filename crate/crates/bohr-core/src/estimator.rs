//! Empirical radius estimation and inequality verification.
//!
//! The estimator bounds a Bohr radius from **above** only: a family
//! member violating the defining inequality at some `r` certifies that
//! the radius lies below `r` (up to sup-norm uncertainty), whereas the
//! absence of violations proves nothing beyond the tested family.
//! Lower bounds come exclusively from the closed forms in
//! [`bounds`](crate::bounds). Reports keep that asymmetry explicit.
//!
//! A function `f` satisfies the radius inequality at `r` when
//! `M_f(r) ≤ λ^p‖f‖^p`, with `M_f` the powered majorant sum. All sup
//! norms are lower estimates, so a violation is only counted when the
//! margin falls below the propagated uncertainty
//! `p·λ^p·‖f‖^{p−1}·u_sup + u_majorant`.

use crate::error::{Error, Result};
use crate::poly::{BoundedOperatorU, PluriharmonicPoly};
use crate::spaces::{fmt_exp, NumericBudget, SpaceDescriptor, SpaceKind};
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};

const MAX_BISECTION_ITERS: usize = 80;

/// Outcome of testing one function at one radius.
#[derive(Clone, Copy, Debug)]
pub struct FunctionCheck {
    pub satisfied: bool,
    /// `λ^p‖f‖^p − M_f(r)`; negative means the inequality fails.
    pub margin: f64,
    /// Propagated numeric uncertainty; `satisfied` tolerates margins
    /// down to `−uncertainty`.
    pub uncertainty: f64,
}

/// Margin of one family member at the returned bracket.
#[derive(Clone, Debug, Serialize)]
pub struct FunctionMargin {
    pub id: String,
    /// Smallest radius at which this member alone violates, `null`
    /// when it never does on `(0, 1]`.
    pub critical_r: Option<f64>,
    /// Margin at the estimate's `upper_bracket`.
    pub margin: f64,
}

/// Bisection result for a family of test functions.
#[derive(Clone, Debug, Serialize)]
pub struct RadiusEstimate {
    pub lower_bracket: f64,
    pub upper_bracket: f64,
    pub family_id: String,
    pub params: BTreeMap<String, String>,
    pub per_function_margins: Vec<FunctionMargin>,
    /// True iff every sup norm in the family was certified.
    pub certified: bool,
    pub notes: Vec<String>,
}

/// Result of one verification suite.
#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub pass: bool,
    pub worst_margin: f64,
    pub uncertainty: f64,
    /// Offending inputs, empty on pass.
    pub witnesses: Vec<String>,
    /// Informational context (reference values, norms used).
    pub info: Vec<String>,
}

impl CheckReport {
    /// Builds the report from `(margin, allowance, description)`
    /// triples so that `pass ⟺ worst_margin ≥ −uncertainty` holds with
    /// the worst check's own allowance as the reported uncertainty.
    fn from_checks(name: &str, checks: &[(f64, f64, String)], info: Vec<String>) -> CheckReport {
        let worst = checks
            .iter()
            .enumerate()
            .min_by(|a, b| (a.1 .0 + a.1 .1).total_cmp(&(b.1 .0 + b.1 .1)))
            .map(|(i, _)| i);
        let (worst_margin, uncertainty) = match worst {
            Some(i) => (checks[i].0, checks[i].1),
            None => (0.0, 0.0),
        };
        let witnesses = checks
            .iter()
            .filter(|(m, a, _)| m + a < 0.0)
            .map(|(m, _, d)| format!("{d} (margin {m:.6e})"))
            .collect::<Vec<_>>();
        CheckReport {
            name: name.to_string(),
            pass: witnesses.is_empty(),
            worst_margin,
            uncertainty,
            witnesses,
            info,
        }
    }
}

/// Necessity-scan outcome: the smallest family index `k` violating the
/// radius inequality at the witness point, if any below the ceiling.
#[derive(Clone, Debug, Serialize)]
pub struct ScanOutcome {
    pub k: Option<u64>,
    /// Nonnegative real witness point (only the first coordinate is
    /// active).
    pub witness: Vec<f64>,
    pub ceiling: u64,
}

fn check_lambda(lambda: f64) -> Result<()> {
    if !(lambda >= 1.0) || !lambda.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "lambda must be a finite real >= 1, got {lambda}"
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

fn member_id(i: usize, f: &PluriharmonicPoly) -> String {
    f.label.clone().unwrap_or_else(|| format!("f{i}"))
}

fn family_id(ids: &[String]) -> String {
    let prefixes: BTreeSet<&str> = ids
        .iter()
        .map(|id| id.split(':').next().unwrap_or(id))
        .collect();
    match prefixes.len() {
        1 => format!("{}[{}]", prefixes.iter().next().unwrap(), ids.len()),
        _ => format!("family[{}]", ids.len()),
    }
}

/// Per-member state cached across bisection steps: the sup norm is
/// independent of `r` and computed once.
struct Member<'a> {
    f: &'a PluriharmonicPoly,
    id: String,
    sup_certified: bool,
    rhs: f64,
    rhs_uncertainty: f64,
    maj_seed: u64,
}

impl<'a> Member<'a> {
    fn build(
        i: usize,
        f: &'a PluriharmonicPoly,
        space: &SpaceDescriptor,
        p: f64,
        lambda: f64,
        budget: &NumericBudget,
        seed: u64,
    ) -> Result<Member<'a>> {
        let member_seed = seed.wrapping_add((i as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
        let sup = f.sup_norm(space, budget, member_seed)?;
        let lam_p = lambda.powf(p);
        Ok(Member {
            f,
            id: member_id(i, f),
            sup_certified: sup.certified,
            rhs: lam_p * sup.value.powf(p),
            rhs_uncertainty: p * lam_p * sup.value.powf(p - 1.0) * sup.uncertainty,
            maj_seed: member_seed.wrapping_add(1),
        })
    }

    fn check_at(
        &self,
        u: &BoundedOperatorU,
        space: &SpaceDescriptor,
        r: f64,
        p: f64,
        budget: &NumericBudget,
    ) -> Result<FunctionCheck> {
        let maj = self
            .f
            .majorant_sum_detailed(u, space, r, p, budget, self.maj_seed)?;
        let margin = self.rhs - maj.value;
        let uncertainty = self.rhs_uncertainty + maj.uncertainty;
        Ok(FunctionCheck {
            satisfied: margin >= -uncertainty,
            margin,
            uncertainty,
        })
    }
}

/// Tests the radius inequality `M_f(r) ≤ λ^p‖f‖^p` for one function.
pub fn check_function_at_r(
    f: &PluriharmonicPoly,
    u: &BoundedOperatorU,
    space: &SpaceDescriptor,
    r: f64,
    p: f64,
    lambda: f64,
    budget: &NumericBudget,
    seed: u64,
) -> Result<FunctionCheck> {
    check_p(p)?;
    check_lambda(lambda)?;
    let member = Member::build(0, f, space, p, lambda, budget, seed)?;
    member.check_at(u, space, r, p, budget)
}

/// Bisects `r ∈ [0, 1]` against the min-over-family margin. The
/// returned `upper_bracket` is an empirical upper estimate of the
/// radius restricted to this family; with no violation in `(0, 1]` the
/// estimate clamps to 1 with a note. Deterministic given `seed`.
pub fn estimate_radius(
    space: &SpaceDescriptor,
    family: &[PluriharmonicPoly],
    u: &BoundedOperatorU,
    p: f64,
    lambda: f64,
    tol: f64,
    budget: &NumericBudget,
    seed: u64,
) -> Result<RadiusEstimate> {
    check_p(p)?;
    check_lambda(lambda)?;
    if family.is_empty() {
        return Err(Error::InvalidParameter(
            "the test family must be nonempty".into(),
        ));
    }
    if !(tol > 0.0) || !tol.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "tol must be strictly positive, got {tol}"
        )));
    }

    let members = family
        .iter()
        .enumerate()
        .map(|(i, f)| Member::build(i, f, space, p, lambda, budget, seed))
        .collect::<Result<Vec<_>>>()?;
    let ids: Vec<String> = members.iter().map(|m| m.id.clone()).collect();
    let params = BTreeMap::from([
        ("space".to_string(), space.to_string()),
        ("p".to_string(), fmt_exp(p)),
        ("lambda".to_string(), fmt_exp(lambda)),
        ("U".to_string(), u.describe()),
        ("tol".to_string(), fmt_exp(tol)),
        ("seed".to_string(), seed.to_string()),
    ]);
    let certified = members.iter().all(|m| m.sup_certified);
    let mut notes = Vec::new();

    let report = |lower: f64,
                      upper: f64,
                      margins: Vec<FunctionMargin>,
                      notes: Vec<String>| RadiusEstimate {
        lower_bracket: lower,
        upper_bracket: upper,
        family_id: family_id(&ids),
        params: params.clone(),
        per_function_margins: margins,
        certified,
        notes,
    };

    if family.iter().all(|f| f.is_empty()) {
        notes.push("family is identically zero; no violation possible, radius 1".into());
        let margins = members
            .iter()
            .map(|m| FunctionMargin {
                id: m.id.clone(),
                critical_r: None,
                margin: 0.0,
            })
            .collect();
        return Ok(report(1.0, 1.0, margins, notes));
    }

    let checks_at = |r: f64| -> Result<Vec<FunctionCheck>> {
        members
            .iter()
            .map(|m| m.check_at(u, space, r, p, budget))
            .collect()
    };
    let violated = |checks: &[FunctionCheck]| checks.iter().any(|c| !c.satisfied);

    let at_one = checks_at(1.0)?;
    if !violated(&at_one) {
        notes.push(
            "no violation found in (0, 1]; the family does not witness any radius below 1"
                .into(),
        );
        let margins = members
            .iter()
            .zip(&at_one)
            .map(|(m, c)| FunctionMargin {
                id: m.id.clone(),
                critical_r: None,
                margin: c.margin,
            })
            .collect();
        return Ok(report(1.0, 1.0, margins, notes));
    }

    let at_zero = checks_at(0.0)?;
    if violated(&at_zero) {
        notes.push("violated already at r = 0; radius estimate 0".into());
        let margins = members
            .iter()
            .zip(&at_zero)
            .map(|(m, c)| FunctionMargin {
                id: m.id.clone(),
                critical_r: if c.satisfied { None } else { Some(0.0) },
                margin: c.margin,
            })
            .collect();
        return Ok(report(0.0, 0.0, margins, notes));
    }

    let mut lo = 0.0;
    let mut hi = 1.0;
    for _ in 0..MAX_BISECTION_ITERS {
        if hi - lo <= tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if violated(&checks_at(mid)?) {
            hi = mid;
        } else {
            lo = mid;
        }
    }

    // Per-member critical radii and margins at the returned bracket.
    let at_upper = checks_at(hi)?;
    let mut margins = Vec::with_capacity(members.len());
    for (m, c) in members.iter().zip(&at_upper) {
        let violates_at_one = !m.check_at(u, space, 1.0, p, budget)?.satisfied;
        let critical_r = if violates_at_one {
            let mut mlo = 0.0;
            let mut mhi = 1.0;
            for _ in 0..MAX_BISECTION_ITERS {
                if mhi - mlo <= tol {
                    break;
                }
                let mid = 0.5 * (mlo + mhi);
                if m.check_at(u, space, mid, p, budget)?.satisfied {
                    mlo = mid;
                } else {
                    mhi = mid;
                }
            }
            Some(mhi)
        } else {
            None
        };
        margins.push(FunctionMargin {
            id: m.id.clone(),
            critical_r,
            margin: c.margin,
        });
    }
    Ok(report(lo, hi, margins, notes))
}

/// Whether the majorant of `f` on `space` evaluates through a
/// deterministic path (no search, zero uncertainty).
fn deterministic_majorant(f: &PluriharmonicPoly, space: &SpaceDescriptor) -> bool {
    f.single_variable().is_some()
        || matches!(&space.kind, SpaceKind::Minkowski { q } if q.is_infinite())
}

/// As [`estimate_radius`] for an `m`-homogeneous family; additionally
/// verifies the scaling identity (the `λ`-radius equals `λ^{1/m}` times
/// the `λ = 1` radius) on single-member families with deterministic
/// majorants, recording the outcome in the notes.
pub fn estimate_homogeneous_radius(
    space: &SpaceDescriptor,
    m: u32,
    family: &[PluriharmonicPoly],
    u: &BoundedOperatorU,
    p: f64,
    lambda: f64,
    tol: f64,
    budget: &NumericBudget,
    seed: u64,
) -> Result<RadiusEstimate> {
    for (i, f) in family.iter().enumerate() {
        if f.homogeneous_degree() != Some(m) {
            return Err(Error::InvalidParameter(format!(
                "family member {} is not {m}-homogeneous",
                member_id(i, f)
            )));
        }
    }
    let mut est = estimate_radius(space, family, u, p, lambda, tol, budget, seed)?;
    let closed_form_member = family.len() == 1 && deterministic_majorant(&family[0], space);
    if closed_form_member && lambda > 1.0 && est.upper_bracket < 1.0 {
        let base = estimate_radius(space, family, u, p, 1.0, tol, budget, seed)?;
        if base.upper_bracket < 1.0 {
            let predicted = lambda.powf(1.0 / m as f64) * base.upper_bracket;
            if predicted <= 1.0 {
                let dev = (est.upper_bracket - predicted).abs();
                if dev <= 4.0 * tol {
                    est.notes.push(format!(
                        "homogeneous scaling identity verified: lambda^(1/m) x base \
                         {predicted:.6} vs {:.6} (deviation {dev:.2e})",
                        est.upper_bracket
                    ));
                } else {
                    est.notes.push(format!(
                        "homogeneous scaling identity DEVIATES: lambda^(1/m) x base \
                         {predicted:.6} vs {:.6} (deviation {dev:.2e})",
                        est.upper_bracket
                    ));
                }
            }
        }
    }
    Ok(est)
}

/// `((λ^p − u^p)/(2λ^p − u^p))^{1/p}`, the prefactor linking the full
/// radius to the infimum of homogeneous radii.
pub fn lemma33_prefactor(p: f64, lambda: f64, norm_u: f64) -> f64 {
    let lp = lambda.powf(p);
    let up = norm_u.powf(p);
    ((lp - up) / (2.0 * lp - up)).powf(1.0 / p)
}

/// Checks the testable half of the homogeneous chain: the full-family
/// upper bracket must not exceed the minimum homogeneous upper bracket
/// (guaranteed when the homogeneous families are subsets of the full
/// family, which is enforced through the member ids). The chain's lower
/// reference `prefactor·inf_m` is reported as info.
pub fn verify_lemma33_chain(
    space: &SpaceDescriptor,
    full: &RadiusEstimate,
    homogeneous: &BTreeMap<u32, RadiusEstimate>,
    p: f64,
    lambda: f64,
    norm_u: f64,
    tol: f64,
) -> Result<CheckReport> {
    check_p(p)?;
    check_lambda(lambda)?;
    if !(norm_u > 0.0) || norm_u >= lambda {
        return Err(Error::InvalidParameter(format!(
            "normU must satisfy 0 < normU < lambda, got {norm_u} vs {lambda}"
        )));
    }
    if homogeneous.is_empty() {
        return Err(Error::InvalidParameter(
            "at least one homogeneous estimate is required".into(),
        ));
    }
    let full_ids: BTreeSet<&str> = full
        .per_function_margins
        .iter()
        .map(|m| m.id.as_str())
        .collect();
    for (m, est) in homogeneous {
        for fm in &est.per_function_margins {
            if !full_ids.contains(fm.id.as_str()) {
                return Err(Error::InvalidParameter(format!(
                    "homogeneous family for degree {m} contains '{}' which is not in the \
                     full family",
                    fm.id
                )));
            }
        }
    }

    let (min_m, min_degree) = homogeneous
        .iter()
        .map(|(m, est)| (est.upper_bracket, *m))
        .min_by(|a, b| a.0.total_cmp(&b.0))
        .unwrap();
    let margin = min_m - full.upper_bracket;
    let prefactor = lemma33_prefactor(p, lambda, norm_u);
    let info = vec![
        format!("space {space}"),
        format!("min homogeneous upper bracket {min_m:.6} at m = {min_degree}"),
        format!(
            "chain lower reference: prefactor {prefactor:.6}, prefactor x inf_m = {:.6}",
            prefactor * min_m
        ),
    ];
    let checks = vec![(
        margin,
        tol,
        format!(
            "full upper bracket {:.6} vs min homogeneous upper bracket {min_m:.6}",
            full.upper_bracket
        ),
    )];
    Ok(CheckReport::from_checks("lemma33_chain", &checks, info))
}

/// Verifies the degree-`m` coefficient inequalities for one
/// polynomial: both sign combinations of
/// `‖Σ_{|α|=m}(a_α ± b_α)z^α‖ ≤ 4·‖‖f‖·I − Re(a₀)‖`, and — when `q`
/// names the Minkowski exponent of `space` — the coefficient clause
/// `‖a_α ± b_α‖ ≤ (4/π)·ρ_α·‖Σ(a_α ± b_α)z^α‖` with
/// `ρ_α = (|α|^{|α|}/α^α)^{1/q}`.
pub fn verify_schwarz_pick(
    space: &SpaceDescriptor,
    f: &PluriharmonicPoly,
    m: u32,
    q: Option<f64>,
    budget: &NumericBudget,
    seed: u64,
) -> Result<CheckReport> {
    if m == 0 {
        return Err(Error::InvalidParameter(
            "the coefficient inequality needs m >= 1".into(),
        ));
    }
    if let Some(qv) = q {
        let matches_q = matches!(&space.kind, SpaceKind::Minkowski { q: sq } if *sq == qv);
        if !matches_q {
            return Err(Error::InvalidParameter(format!(
                "the coefficient clause requires the space to be minkowski with q = {}",
                fmt_exp(qv)
            )));
        }
    }

    let sup = f.sup_norm(space, budget, seed)?;
    let re_a0 = f.constant_term().real_part();
    let rhs_inner = crate::poly::CoeffValue::identity(f.coeff_kind())
        .scale(num_complex::Complex64::new(sup.value, 0.0))
        .sub(&re_a0)?;
    let rhs = 4.0 * rhs_inner.operator_norm()?;
    let rhs_uncertainty = 4.0 * sup.uncertainty;

    let mut checks: Vec<(f64, f64, String)> = Vec::new();
    let mut info = vec![format!(
        "sup norm {:.6} (certified: {}), right-hand side {rhs:.6}",
        sup.value, sup.certified
    )];
    for (plus, sign) in [(true, '+'), (false, '-')] {
        let combined = f.sign_combined_homogeneous(m, plus)?;
        let lhs = combined.sup_norm(space, budget, seed.wrapping_add(plus as u64 + 1))?;
        checks.push((
            rhs - lhs.value,
            rhs_uncertainty + lhs.uncertainty,
            format!("sign {sign}: homogeneous sup {:.6} vs 4-times bound", lhs.value),
        ));
        if let Some(qv) = q {
            let scale = 4.0 / std::f64::consts::PI;
            for (alpha, c) in combined.a_coeffs() {
                let rho = 1.0 / alpha.sup_on_lq_ball(qv);
                let coeff_norm = c.operator_norm()?;
                checks.push((
                    scale * rho * lhs.value - coeff_norm,
                    scale * rho * lhs.uncertainty,
                    format!("sign {sign}, alpha {alpha}: coefficient clause (rho {rho:.4})"),
                ));
            }
        }
        info.push(format!(
            "sign {sign}: homogeneous part has {} terms",
            combined.term_count()
        ));
    }
    Ok(CheckReport::from_checks("schwarz_pick", &checks, info))
}

/// Scans the one-parameter family
/// `F_k = (i·cos(1/k))·I + (½·sin(1/k))·I·z₁ + (½·sin(1/k))·I·z̄₁`
/// with `U = λI` for the smallest `k` violating the radius inequality
/// at the witness `|z₁| = 0.99·r·sup{|z₁| : z ∈ B_Z}` — demonstrating
/// that at `‖U‖ = λ` no positive radius survives. Returns `k = None`
/// when the ceiling (default 10⁴) is reached without a violation.
pub fn counterexample_scan(
    space: &SpaceDescriptor,
    r: f64,
    p: f64,
    lambda: f64,
    ceiling: Option<u64>,
) -> Result<ScanOutcome> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "r must lie in (0, 1), got {r}"
        )));
    }
    check_p(p)?;
    check_lambda(lambda)?;
    let ceiling = ceiling.unwrap_or(10_000);
    let w = 0.99 * r * space.coordinate_sup(0);
    let mut witness = vec![0.0; space.dim];
    witness[0] = w;
    // The inequality at the witness reads
    // cos(1/k)^p·λ^p + sin(1/k)^p·λ^p·w^p ≤ λ^p; λ^p cancels.
    for k in 1..=ceiling {
        let t = 1.0 / k as f64;
        if t.cos().powf(p) + t.sin().powf(p) * w.powf(p) > 1.0 {
            return Ok(ScanOutcome {
                k: Some(k),
                witness,
                ceiling,
            });
        }
    }
    Ok(ScanOutcome {
        k: None,
        witness,
        ceiling,
    })
}
