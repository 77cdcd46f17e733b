use num_rational::BigRational;

use super::*;
use crate::ball::{constant, ConstantName};
use crate::exact::{parse_rational, ratio};

fn eq36() -> TermSpec {
    // b_n·n²/((2n−1)²(2n+1))
    let r = RatFn::new(Poly::from_ints(&[0, 0, 1]), &[(2, -1, 2), (2, 1, 1)]);
    TermSpec::single(1, Component::new(SurdQ5::one(), 1).plain(r))
}

fn eq34(sign: bool) -> TermSpec {
    // b_n·n/((2n−1)²(2n+1)(2n+3)), optionally with (−1)^{2n+3}
    let r = RatFn::new(Poly::from_ints(&[0, 1]), &[(2, -1, 2), (2, 1, 1), (2, 3, 1)]);
    let c = Component::new(SurdQ5::one(), 1).plain(r);
    TermSpec::single(1, if sign { c.sign(2, 3) } else { c })
}

fn thm26() -> TermSpec {
    // 1024n/(3(2n−1)²(2n+1)(2n+3)²)·(n+1)/(2(2n+1))
    let r = RatFn::new(Poly::from_ints(&[0, 1024, 1024]), &[(2, -1, 2), (2, 1, 2), (2, 3, 2)]).scale(&ratio(1, 6));
    TermSpec::single(1, Component::new(SurdQ5::one(), 0).plain(r))
}

fn thm26_pseries(p_twice: u32) -> TailStrategy {
    TailStrategy::PSeries {
        constant: ratio(8, 3),
        p_twice,
        log_power: 0,
        from: 1,
        sign: TailSign::Positive,
    }
}

/// Ball of a decimal literal with radius one unit in its last place.
fn decimal(s: &str) -> Ball {
    let (int, frac) = s.split_once('.').unwrap();
    let digits = frac.len() as u32;
    let q = parse_rational(&format!("{int}{frac}/{}", num_bigint::BigInt::from(10).pow(digits))).unwrap();
    Ball::from_rational(&q, 256).add_error(ten_pow_neg(digits).mul_pow2(1))
}

#[test]
fn first_terms_are_exact() {
    let mut s = TermStream::with_exact(&eq36(), 64).unwrap();
    let t = s.next_term().unwrap();
    assert_eq!(t.index, 1);
    assert_eq!(t.exact.unwrap(), SurdQ5::from_rational(ratio(1, 6)));
    assert!(t.value.contains_rational(&ratio(1, 6)));
    // n = 2: (3/8)·4/(9·5)
    assert_eq!(
        s.next_term().unwrap().exact.unwrap(),
        SurdQ5::from_rational(ratio(1, 30))
    );
}

#[test]
fn zeta2_partial_sums() {
    let s3 = partial_sum(&thm26(), 3, 128).unwrap();
    assert!(s3.overlaps(&decimal("1.63055681531872")), "{}", s3.to_decimal());
    let exact = partial_sum_exact(&thm26(), 5).unwrap();
    assert_eq!(exact, SurdQ5::from_rational(ratio(9987533824, 6087156075)));
    assert!(partial_sum(&thm26(), 5, 128)
        .unwrap()
        .contains_rational(&ratio(9987533824, 6087156075)));
}

#[test]
fn zeta2_with_power_law_tail() {
    let out = sum_to_precision(&thm26(), &thm26_pseries(8), 8, DEFAULT_MAX_TERMS, 96).unwrap();
    assert!(out.reached());
    let r = out.result();
    assert!(r.value.overlaps(&constant(ConstantName::Zeta2, 128)));
    assert!(r.value.agreed_digits(&r.value) >= 8);
    assert_eq!(r.strategy, TailKind::PSeries);
}

#[test]
fn telescoped_tails_reach_many_digits() {
    let pi = constant(ConstantName::Pi, 256);
    let out = sum_to_precision(
        &eq36(),
        &TailStrategy::Telescoped { steps: 6 },
        20,
        DEFAULT_MAX_TERMS,
        160,
    )
    .unwrap();
    assert!(out.reached());
    let v = &out.result().value;
    assert!(v.overlaps(&pi.mul_int(3).div_int(32)), "{}", v.to_decimal());
    assert!(out.result().terms_used < 100_000);

    let plus = sum_to_precision(
        &eq34(false),
        &TailStrategy::Telescoped { steps: 6 },
        20,
        DEFAULT_MAX_TERMS,
        160,
    )
    .unwrap();
    let minus = sum_to_precision(
        &eq34(true),
        &TailStrategy::Telescoped { steps: 6 },
        20,
        DEFAULT_MAX_TERMS,
        160,
    )
    .unwrap();
    let target = pi.mul_int(3).div_int(256);
    assert!(plus.result().value.overlaps(&target));
    assert!(minus.result().value.overlaps(&target.neg()));
}

#[test]
fn telescoped_tail_with_harmonic_parts() {
    // Σ b_n·(H_{2n} − H_n)/(2n+1) = π·ln2 − 2G
    let r = RatFn::recip_of(&[(2, 1, 1)]);
    let spec = TermSpec::single(1, Component::new(SurdQ5::one(), 1).h2(r.clone()).h(r.neg()));
    let out = sum_to_precision(
        &spec,
        &TailStrategy::Telescoped { steps: 6 },
        18,
        DEFAULT_MAX_TERMS,
        160,
    )
    .unwrap();
    assert!(out.reached());
    let expected = decimal("0.34565490194916410039");
    assert!(
        out.result().value.overlaps(&expected),
        "{}",
        out.result().value.to_decimal()
    );
}

#[test]
fn geometric_tail() {
    // Σ b_n·2^{−n}·H_n = GF_M(1/8)
    let base = SurdQ5::from_rational(ratio(1, 2));
    let spec = TermSpec::single(1, Component::new(base.clone(), 1).h(RatFn::one()));
    let tail = TailStrategy::geometric_for(&base, 1, 1);
    let out = sum_to_precision(&spec, &tail, 15, DEFAULT_MAX_TERMS, 128).unwrap();
    assert!(out.reached());
    assert!(out.result().value.overlaps(&decimal("0.532384673623828")));
}

#[test]
fn alternating_tail() {
    // Σ (−1)^{n+1}/n² = π²/12
    let spec = TermSpec::single(
        1,
        Component::new(SurdQ5::one(), 0)
            .sign(1, 1)
            .plain(RatFn::recip_of(&[(1, 0, 2)])),
    );
    let out = sum_to_precision(&spec, &TailStrategy::Alternating { from: 1 }, 6, DEFAULT_MAX_TERMS, 96).unwrap();
    assert!(out.reached());
    let pi = constant(ConstantName::Pi, 128);
    assert!(out.result().value.overlaps(&pi.square().div_int(12)));
}

#[test]
fn max_terms_caps_the_work() {
    let out = sum_to_precision(&thm26(), &thm26_pseries(8), 30, 50, 128).unwrap();
    assert!(!out.reached());
    let r = out.result();
    assert_eq!(r.terms_used, 50);
    assert!(r.value.overlaps(&constant(ConstantName::Zeta2, 128)));
}

#[test]
fn wrong_power_law_is_detected() {
    let good = empirical_tail_check(&thm26(), &thm26_pseries(8), &[32, 128, 512], 128).unwrap();
    assert!(good.passed(), "{good:?}");
    let bad = empirical_tail_check(&thm26(), &thm26_pseries(12), &[32, 128, 512], 128).unwrap();
    assert!(!bad.passed());
    let err = sum_to_precision(&thm26(), &thm26_pseries(12), 12, DEFAULT_MAX_TERMS, 128).unwrap_err();
    assert!(matches!(err, Error::TailHypothesisViolation { .. }), "{err}");
}

#[test]
fn wrong_geometric_ratio_is_detected() {
    let base = SurdQ5::from_rational(ratio(1, 2));
    let spec = TermSpec::single(1, Component::new(base, 1).h(RatFn::one()));
    let tail = TailStrategy::GeometricRatio {
        ratio: ratio(1, 4),
        growth: 0,
        from: 1,
    };
    let err = sum_to_precision(&spec, &tail, 15, DEFAULT_MAX_TERMS, 128).unwrap_err();
    assert!(matches!(err, Error::TailHypothesisViolation { .. }), "{err}");
    assert!(!empirical_tail_check(&spec, &tail, &[32], 128).unwrap().passed());
}

#[test]
fn telescoped_tail_passes_the_empirical_check() {
    let report = empirical_tail_check(&eq36(), &TailStrategy::Telescoped { steps: 4 }, &[32, 128, 512], 128).unwrap();
    assert!(report.passed(), "{report:?}");
}

#[test]
fn index_limit_is_a_resource_error() {
    let spec = TermSpec::single(MAX_INDEX + 1, Component::new(SurdQ5::one(), 0).plain(RatFn::one()));
    assert!(matches!(TermStream::new(&spec, 64), Err(Error::Resource(_))));
}

#[test]
fn irrational_bases_and_expression_coefficients() {
    // Σ_{n≥0} (1/α)^n = α²... with coefficient π: π·α/(α−1) = π·α²
    let base = SurdQ5::alpha().inv().unwrap();
    let c = Component::new(base.clone(), 0)
        .plain(RatFn::one())
        .coefficient(Coefficient::Expr(crate::expr::pi()));
    let spec = TermSpec::single(0, c);
    let out = sum_to_precision(
        &spec,
        &TailStrategy::geometric_for(&base, 0, 0),
        25,
        DEFAULT_MAX_TERMS,
        160,
    )
    .unwrap();
    let expected = &constant(ConstantName::Pi, 200) * &Ball::from_surd(&(&SurdQ5::alpha() * &SurdQ5::alpha()), 200);
    assert!(out.result().value.overlaps(&expected));
    assert!(out.reached());
}

#[test]
fn h2n_minus_one_rewrite() {
    // H_{2n−1}·f = H_{2n}·f − f/(2n)
    let f = RatFn::recip_of(&[(2, 1, 1)]);
    let spec = TermSpec::single(1, Component::new(SurdQ5::one(), 0).h2_minus_one(f));
    let mut s = TermStream::with_exact(&spec, 64).unwrap();
    for n in 1..10u64 {
        let t = s.next_term().unwrap().exact.unwrap();
        let h = crate::exact::harmonic(2 * n - 1);
        let expected = h / BigRational::from_integer((2 * n + 1).into());
        assert_eq!(t, SurdQ5::from_rational(expected));
    }
}
