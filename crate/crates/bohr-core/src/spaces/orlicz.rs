//! Orlicz functions ψ and the machinery behind Luxemburg norms.
//!
//! A ψ here is a finite positive combination of pure powers,
//! `ψ(x) = Σ c_i x^{k_i}` with `c_i > 0` and `k_i ≥ 1`, entered as a safe
//! expression over sums, products, powers and scalar multiples
//! (`"x^2"`, `"0.5*x^2+x^3"`, `"x^1.5*x"`). This family is convex,
//! strictly increasing, vanishes at 0 and satisfies the Δ₂-condition with
//! `ψ(2a) ≤ 2^{k_max} ψ(a)`, which is everything the norm and bound
//! formulas need.

use crate::error::{Error, Result};

/// A validated Orlicz function together with its Δ₂ constant.
#[derive(Clone, Debug, PartialEq)]
pub struct OrliczFunction {
    /// `(coefficient, power)` pairs, sorted by power, duplicates merged.
    terms: Vec<(f64, f64)>,
    /// Declared constant `C` with `ψ(2a) ≤ C·ψ(a)`; defaults to
    /// `2^{k_max}`, which is exact for positive power combinations.
    delta2_bound: f64,
}

impl OrliczFunction {
    /// Parses an expression like `"x^2"`, `"x"`, `"0.5*x^2+2*x^3"` or
    /// `"x^1.5*x"` (products of factors multiply coefficients and add
    /// powers). Rejects constant terms, nonpositive coefficients and
    /// powers below 1.
    pub fn parse(expr: &str) -> Result<Self> {
        let compact: String = expr.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty psi expression".into()));
        }
        let mut terms: Vec<(f64, f64)> = Vec::new();
        for term in compact.split('+') {
            if term.is_empty() {
                return Err(Error::Parse(format!("empty term in psi expression '{expr}'")));
            }
            let mut coef = 1.0;
            let mut power = 0.0;
            let mut saw_x = false;
            for factor in term.split('*') {
                if factor.is_empty() {
                    return Err(Error::Parse(format!("empty factor in term '{term}'")));
                }
                if let Some(rest) = factor.strip_prefix('x') {
                    saw_x = true;
                    if rest.is_empty() {
                        power += 1.0;
                    } else if let Some(pow_text) = rest.strip_prefix('^') {
                        let p: f64 = pow_text.parse().map_err(|_| {
                            Error::Parse(format!("bad exponent '{pow_text}' in term '{term}'"))
                        })?;
                        power += p;
                    } else {
                        return Err(Error::Parse(format!("bad factor '{factor}' in term '{term}'")));
                    }
                } else {
                    let c: f64 = factor.parse().map_err(|_| {
                        Error::Parse(format!("bad factor '{factor}' in term '{term}'"))
                    })?;
                    coef *= c;
                }
            }
            if !saw_x {
                return Err(Error::Parse(format!(
                    "term '{term}' has no power of x; psi(0) = 0 requires every term to vanish at 0"
                )));
            }
            if !(coef > 0.0) || !coef.is_finite() {
                return Err(Error::Parse(format!(
                    "term '{term}' has nonpositive coefficient {coef}"
                )));
            }
            if !(power >= 1.0) || !power.is_finite() {
                return Err(Error::Parse(format!(
                    "term '{term}' has power {power} < 1; psi must be convex"
                )));
            }
            terms.push((coef, power));
        }
        terms.sort_by(|a, b| a.1.total_cmp(&b.1));
        let mut merged: Vec<(f64, f64)> = Vec::new();
        for (c, k) in terms {
            match merged.last_mut() {
                Some((mc, mk)) if *mk == k => *mc += c,
                _ => merged.push((c, k)),
            }
        }
        let k_max = merged.last().map(|&(_, k)| k).unwrap_or(1.0);
        let f = OrliczFunction {
            terms: merged,
            delta2_bound: 2f64.powf(k_max),
        };
        f.validate()?;
        Ok(f)
    }

    /// Overrides the Δ₂ constant (it is sample-verified by `validate`).
    pub fn with_delta2_bound(mut self, c: f64) -> Result<Self> {
        if !(c > 0.0) || !c.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "delta2_bound must be a positive real, got {c}"
            )));
        }
        self.delta2_bound = c;
        self.validate()?;
        Ok(self)
    }

    /// Sampled sanity checks: ψ(0) = 0, strict monotonicity on a grid, and
    /// the declared Δ₂ bound.
    pub fn validate(&self) -> Result<()> {
        if self.eval(0.0) != 0.0 {
            return Err(Error::InvalidParameter("psi(0) must be 0".into()));
        }
        let mut prev = 0.0;
        for i in 1..=64 {
            let x = i as f64 / 16.0;
            let y = self.eval(x);
            if !(y > prev) {
                return Err(Error::InvalidParameter(format!(
                    "psi is not strictly increasing near x = {x}"
                )));
            }
            if self.eval(2.0 * x) > self.delta2_bound * y * (1.0 + 1e-12) {
                return Err(Error::InvalidParameter(format!(
                    "delta2 check failed at a = {x}: psi(2a) > {} * psi(a)",
                    self.delta2_bound
                )));
            }
            prev = y;
        }
        Ok(())
    }

    /// ψ(x) for `x ≥ 0`.
    pub fn eval(&self, x: f64) -> f64 {
        self.terms.iter().map(|&(c, k)| c * x.powf(k)).sum()
    }

    /// ψ⁻¹(y) by geometric bracket growth plus bisection, accurate to
    /// `|ψ(x) − y| ≤ 1e-12·max(1, y)`.
    pub fn inverse(&self, y: f64) -> Result<f64> {
        if !(y >= 0.0) || !y.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "orlicz_inverse expects finite y >= 0, got {y}"
            )));
        }
        if y == 0.0 {
            return Ok(0.0);
        }
        let tol = 1e-12 * y.max(1.0);
        let mut hi = 1.0;
        let mut grow = 0;
        while self.eval(hi) < y {
            hi *= 2.0;
            grow += 1;
            if grow > 1100 {
                return Err(Error::Bracketing(format!(
                    "psi never reaches {y} within the bracketing budget"
                )));
            }
        }
        let mut lo = 0.0;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            let v = self.eval(mid);
            if (v - y).abs() <= tol {
                return Ok(mid);
            }
            if v < y {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(0.5 * (lo + hi))
    }

    /// Largest power appearing in ψ.
    pub fn max_power(&self) -> f64 {
        self.terms.last().map(|&(_, k)| k).unwrap_or(1.0)
    }

    /// Declared Δ₂ constant.
    pub fn delta2_bound(&self) -> f64 {
        self.delta2_bound
    }

    /// Canonical expression text; parses back to an equal function.
    pub fn expr(&self) -> String {
        let fmt_num = |v: f64| {
            if v == v.trunc() && v.abs() < 1e15 {
                format!("{}", v as i64)
            } else {
                format!("{v}")
            }
        };
        self.terms
            .iter()
            .map(|&(c, k)| {
                let x_part = if k == 1.0 {
                    "x".to_string()
                } else {
                    format!("x^{}", fmt_num(k))
                };
                if c == 1.0 {
                    x_part
                } else {
                    format!("{}*{}", fmt_num(c), x_part)
                }
            })
            .collect::<Vec<_>>()
            .join("+")
    }
}

impl std::fmt::Display for OrliczFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.expr())
    }
}

/// Luxemburg functional `inf{ρ > 0 : Σ ψ(xₖ/ρ) ≤ 1}` for a vector of
/// nonnegative moduli, by monotone bisection. Returns 0 for the zero
/// vector.
pub fn luxemburg(psi: &OrliczFunction, moduli: &[f64]) -> f64 {
    let m = moduli.iter().cloned().fold(0.0, f64::max);
    if m == 0.0 {
        return 0.0;
    }
    let s = |rho: f64| -> f64 { moduli.iter().map(|&x| psi.eval(x / rho)).sum() };
    // S is strictly decreasing in ρ on (0, ∞); bracket S(lo) > 1 ≥ S(hi).
    let mut hi = m;
    let mut guard = 0;
    while s(hi) > 1.0 {
        hi *= 2.0;
        guard += 1;
        if guard > 1100 {
            return f64::INFINITY;
        }
    }
    let mut lo = hi;
    while s(lo) <= 1.0 {
        lo *= 0.5;
        guard += 1;
        if guard > 2200 {
            break;
        }
    }
    for _ in 0..200 {
        if hi - lo <= 1e-14 * hi {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if s(mid) <= 1.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_canonicalizes() {
        let f = OrliczFunction::parse(" x^2 + 0.5*x^3 ").unwrap();
        assert_eq!(f.expr(), "x^2+0.5*x^3");
        let g = OrliczFunction::parse(&f.expr()).unwrap();
        assert_eq!(f, g);
        // products add powers and multiply coefficients
        let h = OrliczFunction::parse("2*x*x^1.5").unwrap();
        assert_eq!(h.expr(), "2*x^2.5");
    }

    #[test]
    fn rejects_bad_expressions() {
        assert!(OrliczFunction::parse("").is_err());
        assert!(OrliczFunction::parse("1+x^2").is_err()); // constant term
        assert!(OrliczFunction::parse("x^0.5").is_err()); // not convex
        assert!(OrliczFunction::parse("-1*x^2").is_err()); // negative coef
        assert!(OrliczFunction::parse("y^2").is_err());
    }

    #[test]
    fn inverse_examples() {
        let sq = OrliczFunction::parse("x^2").unwrap();
        assert!((sq.inverse(0.25).unwrap() - 0.5).abs() < 1e-12);
        let cubic = OrliczFunction::parse("x^2+x^3").unwrap();
        assert!((cubic.inverse(2.0).unwrap() - 1.0).abs() < 1e-12);
        let id = OrliczFunction::parse("x").unwrap();
        assert!((id.inverse(7.0).unwrap() - 7.0).abs() < 1e-11);
    }

    #[test]
    fn luxemburg_matches_l2_for_square_psi() {
        let sq = OrliczFunction::parse("x^2").unwrap();
        let v = luxemburg(&sq, &[3.0, 4.0]);
        assert!((v - 5.0).abs() < 1e-12);
    }

    #[test]
    fn delta2_default_is_verified() {
        let f = OrliczFunction::parse("x^2+x^3").unwrap();
        assert_eq!(f.delta2_bound(), 8.0);
        assert!(f.validate().is_ok());
        // too-small declared bound must fail the sampled check
        assert!(f.with_delta2_bound(1.5).is_err());
    }
}
