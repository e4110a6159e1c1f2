//! Property-based tests for the polynomial layer: evaluation algebra,
//! majorant behavior against the Möbius closed form, operator-norm
//! invariances, and serialization round-trips.

use bohr_core::poly::family::{
    mobius, mobius_lift, mobius_truncation_for, monomial, random_family, RandomFamilySpec,
};
use bohr_core::poly::serial::{parse_polys, write_polys};
use bohr_core::poly::{BoundedOperatorU, CoeffKind, CoeffValue, MultiIndex, PluriharmonicPoly};
use bohr_core::spaces::{NumericBudget, SpaceDescriptor};
use num_complex::Complex64;
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Builds a deterministic scalar polynomial from proptest-drawn data.
fn poly_from_parts(
    dim: usize,
    a_terms: &[(Vec<u32>, f64, f64)],
    b_terms: &[(Vec<u32>, f64, f64)],
) -> PluriharmonicPoly {
    let mut f = PluriharmonicPoly::new(dim, CoeffKind::Scalar).unwrap();
    for (alpha, re, im) in a_terms {
        let idx = MultiIndex::new(alpha.iter().map(|&k| k % 4).collect());
        let cur = match f.coeff_a(&idx) {
            Some(CoeffValue::Scalar(s)) => *s,
            _ => Complex64::ZERO,
        };
        f.set_a(idx, CoeffValue::Scalar(cur + c(*re, *im))).unwrap();
    }
    for (alpha, re, im) in b_terms {
        let mut entries: Vec<u32> = alpha.iter().map(|&k| k % 4).collect();
        if entries.iter().all(|&e| e == 0) {
            entries[0] = 1;
        }
        let idx = MultiIndex::new(entries);
        let cur = match f.coeff_b(&idx) {
            Some(CoeffValue::Scalar(s)) => *s,
            _ => Complex64::ZERO,
        };
        f.set_b(idx, CoeffValue::Scalar(cur + c(*re, *im))).unwrap();
    }
    f
}

proptest! {
    #[test]
    fn evaluation_is_linear_in_the_coefficients(
        a_terms in proptest::collection::vec(
            (proptest::collection::vec(0u32..4, 2), -2.0f64..2.0, -2.0f64..2.0), 1..5),
        b_terms in proptest::collection::vec(
            (proptest::collection::vec(0u32..4, 2), -2.0f64..2.0, -2.0f64..2.0), 0..4),
        zre in proptest::collection::vec(-1.0f64..1.0, 2),
        zim in proptest::collection::vec(-1.0f64..1.0, 2),
        s in -2.0f64..2.0,
    ) {
        let f = poly_from_parts(2, &a_terms, &b_terms);
        let z: Vec<Complex64> = zre.iter().zip(&zim).map(|(&x, &y)| c(x, y)).collect();
        let scaled = f.scale_coeffs(c(s, 0.0));
        let v = f.evaluate(&z).unwrap();
        let vs = scaled.evaluate(&z).unwrap();
        // real scalar multipliers commute with the adjoint in the b-part
        let diff = vs.sub(&v.scale(c(s, 0.0))).unwrap();
        prop_assert!(diff.operator_norm().unwrap() < 1e-12);
    }

    #[test]
    fn homogeneous_parts_partition_the_polynomial(
        a_terms in proptest::collection::vec(
            (proptest::collection::vec(0u32..4, 2), -2.0f64..2.0, -2.0f64..2.0), 1..6),
        b_terms in proptest::collection::vec(
            (proptest::collection::vec(0u32..4, 2), -2.0f64..2.0, -2.0f64..2.0), 0..4),
        zre in proptest::collection::vec(-1.0f64..1.0, 2),
        zim in proptest::collection::vec(-1.0f64..1.0, 2),
    ) {
        let f = poly_from_parts(2, &a_terms, &b_terms);
        let z: Vec<Complex64> = zre.iter().zip(&zim).map(|(&x, &y)| c(x, y)).collect();
        let mut sum = PluriharmonicPoly::new(2, CoeffKind::Scalar).unwrap();
        for m in 0..=f.max_degree() {
            sum = sum.add(&f.homogeneous_part(m)).unwrap();
        }
        let diff = f.evaluate(&z).unwrap().sub(&sum.evaluate(&z).unwrap()).unwrap();
        prop_assert!(diff.operator_norm().unwrap() < 1e-12);
    }

    #[test]
    fn majorant_is_nondecreasing_in_r(
        a_terms in proptest::collection::vec(
            (proptest::collection::vec(0u32..4, 2), -2.0f64..2.0, -2.0f64..2.0), 1..5),
        r1 in 0.0f64..1.0,
        r2 in 0.0f64..1.0,
        p in 1.0f64..3.0,
    ) {
        let f = poly_from_parts(2, &a_terms, &[]);
        let (lo, hi) = if r1 <= r2 { (r1, r2) } else { (r2, r1) };
        let u = BoundedOperatorU::identity();
        let space = SpaceDescriptor::polydisc(2);
        let b = NumericBudget::default();
        let m_lo = f.majorant_sum(&u, &space, lo, p, &b, 5).unwrap();
        let m_hi = f.majorant_sum(&u, &space, hi, p, &b, 5).unwrap();
        prop_assert!(m_lo <= m_hi + 1e-12, "M({lo}) = {m_lo} > M({hi}) = {m_hi}");
    }

    #[test]
    fn sup_norm_never_exceeds_the_coefficient_ceiling(
        a_terms in proptest::collection::vec(
            (proptest::collection::vec(0u32..4, 2), -2.0f64..2.0, -2.0f64..2.0), 1..5),
        b_terms in proptest::collection::vec(
            (proptest::collection::vec(0u32..4, 2), -2.0f64..2.0, -2.0f64..2.0), 0..3),
    ) {
        let f = poly_from_parts(2, &a_terms, &b_terms);
        let space = SpaceDescriptor::polydisc(2);
        let budget = NumericBudget { starts: 6, ..Default::default() };
        let sup = f.sup_norm(&space, &budget, 9).unwrap();
        let ceiling = f.coefficient_ceiling().unwrap();
        prop_assert!(sup.value <= ceiling + 1e-9, "{} vs {ceiling}", sup.value);
    }

    #[test]
    fn operator_norm_is_adjoint_invariant(
        entries in proptest::collection::vec((-2.0f64..2.0, -2.0f64..2.0), 9),
    ) {
        let m = nalgebra::DMatrix::from_fn(3, 3, |i, j| {
            let (re, im) = entries[3 * i + j];
            c(re, im)
        });
        let v = CoeffValue::matrix(m).unwrap();
        let a = v.operator_norm().unwrap();
        let b = v.adjoint().operator_norm().unwrap();
        prop_assert!((a - b).abs() <= 1e-10 * (1.0 + a));
    }
}

#[test]
fn mobius_truncated_majorant_matches_closed_form() {
    let u = BoundedOperatorU::identity_scaled(1.5).unwrap();
    let disc = SpaceDescriptor::polydisc(1);
    let budget = NumericBudget::default();
    for &a in &[0.1, 0.5, 0.9] {
        let f = mobius(a, mobius_truncation_for(a, 1e-12)).unwrap();
        for &r in &[0.1, 0.2, 1.0 / 3.0] {
            let truncated = f.majorant_sum(&u, &disc, r, 1.0, &budget, 0).unwrap();
            let closed = f.closed_form_majorant(&u, &disc, r, 1.0).unwrap();
            // one-sided up to summation roundoff
            assert!(
                truncated <= closed + 1e-12 && closed - truncated < 1e-9,
                "a={a}, r={r}: truncated {truncated} vs closed {closed}"
            );
        }
    }
}

#[test]
fn mobius_closed_majorant_frozen_example() {
    // a = 0.5, r = 1/3, p = 1, U = I: 0.5 + (0.75/3)/(1 - 1/6) = 0.8
    let f = mobius(0.5, 45).unwrap();
    let u = BoundedOperatorU::identity();
    let v = f
        .closed_form_majorant(&u, &SpaceDescriptor::polydisc(1), 1.0 / 3.0, 1.0)
        .unwrap();
    assert!((v - 0.8).abs() < 1e-12);
}

#[test]
fn mobius_lift_inherits_certification_on_width_one_domains() {
    let budget = NumericBudget::default();
    let f = mobius_lift(0.7, 60, 3, 1).unwrap();
    // both the polydisc and the Euclidean ball give coordinate 1 width 1
    for space in [
        SpaceDescriptor::polydisc(3),
        SpaceDescriptor::minkowski(2.0, 3).unwrap(),
    ] {
        let sup = f.sup_norm(&space, &budget, 0).unwrap();
        assert!(sup.certified, "{space}");
        assert!((sup.value - 1.0).abs() < 1e-12);
    }
    // a scaled polydisc gives it width 2: certification must not transfer
    let wide = SpaceDescriptor::polydisc(3).with_scale(2.0).unwrap();
    let sup = f.sup_norm(&wide, &budget, 0).unwrap();
    assert!(!sup.certified);
}

#[test]
fn monomial_sup_certificates() {
    // sup of |z1 z2^2| on the unit sphere of l_3^2... frozen: alpha=(1,2), q=3
    let f = monomial(MultiIndex::new(vec![1, 2]), 3.0).unwrap();
    let ks = f.known_sup().unwrap();
    let expected = (1f64.powf(1.0) * 2f64.powf(2.0) / 3f64.powf(3.0)).powf(1.0 / 3.0);
    assert!((ks.value - expected).abs() < 1e-12);

    // numeric search agrees on the same ball within half a percent
    let space = SpaceDescriptor::minkowski(3.0, 2).unwrap();
    let mut g = PluriharmonicPoly::new(2, CoeffKind::Scalar).unwrap();
    g.set_a(MultiIndex::new(vec![1, 2]), CoeffValue::scalar(1.0, 0.0))
        .unwrap();
    let sup = g.sup_norm(&space, &NumericBudget::default(), 4).unwrap();
    assert!(!sup.certified);
    assert!(
        (sup.value - expected).abs() / expected < 5e-3,
        "numeric {} vs {expected}",
        sup.value
    );
}

#[test]
fn random_families_round_trip_through_serialization() {
    let spec = RandomFamilySpec {
        dim: 2,
        max_degree: 3,
        coeff_kind: CoeffKind::Matrix(2),
        count: 3,
        include_antiholomorphic: true,
        allow_large: false,
    };
    let family = random_family(&spec, 99).unwrap();
    let text = write_polys(&family);
    let parsed = parse_polys(&text).unwrap();
    assert_eq!(parsed.len(), family.len());
    let z = [c(0.4, -0.3), c(-0.2, 0.6)];
    for (f, g) in family.iter().zip(&parsed) {
        assert_eq!(f.label, g.label);
        let d = f.evaluate(&z).unwrap().sub(&g.evaluate(&z).unwrap()).unwrap();
        assert!(d.operator_norm().unwrap() < 1e-12);
    }
    // second serialization is byte-identical
    assert_eq!(write_polys(&parsed), text);
}

#[test]
fn scaled_identity_u_scales_the_majorant() {
    let f = mobius(0.4, 50).unwrap();
    let disc = SpaceDescriptor::polydisc(1);
    let budget = NumericBudget::default();
    for &p in &[1.0, 2.0] {
        let m1 = f
            .majorant_sum(&BoundedOperatorU::identity(), &disc, 0.3, p, &budget, 0)
            .unwrap();
        let m2 = f
            .majorant_sum(
                &BoundedOperatorU::identity_scaled(2.0).unwrap(),
                &disc,
                0.3,
                p,
                &budget,
                0,
            )
            .unwrap();
        assert!(
            (m2 - 2f64.powf(p) * m1).abs() < 1e-12,
            "p={p}: {m2} vs {}",
            2f64.powf(p) * m1
        );
    }
}
