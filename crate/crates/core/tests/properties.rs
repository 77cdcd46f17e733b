use proptest::prelude::*;

use binharm_core::ball::Ball;
use binharm_core::exact::{check_binet_identity, fib, lucas, BigInt, BigRational, BinetIdentity, SurdQ5};
use binharm_core::genfunc::{gf_eval_exact, gf_series_sum, substitution_point, GfName, SubstitutionFamily};
use binharm_core::registry::{instantiate_family, Family};
use binharm_core::series::partial_sum_exact;

fn surd() -> impl Strategy<Value = SurdQ5> {
    (-500i64..500, 1i64..60, -500i64..500, 1i64..60).prop_map(|(p, q, r, s)| SurdQ5::from_ratios(p, q, r, s))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn binet_identities_hold_beyond_the_suite_range(m in -300i64..300, n in -300i64..300) {
        for id in BinetIdentity::ALL {
            prop_assert!(check_binet_identity(id, m, n), "{id} at ({m}, {n})");
        }
    }

    #[test]
    fn fibonacci_and_lucas_are_linked(n in -400i64..400) {
        prop_assert_eq!(lucas(n), fib(n - 1) + fib(n + 1));
        prop_assert_eq!(fib(2 * n), fib(n) * lucas(n));
    }

    #[test]
    fn surd_field_operations_are_enclosed(a in surd(), b in surd()) {
        let prec = 128;
        let (ba, bb) = (Ball::from_surd(&a, prec), Ball::from_surd(&b, prec));
        prop_assert!(Ball::from_surd(&(&a * &b), prec).overlaps(&(&ba * &bb)));
        prop_assert!(Ball::from_surd(&(&a + &b), prec).overlaps(&(&ba + &bb)));
        if !b.is_zero() {
            let q = a.checked_div(&b).unwrap();
            prop_assert!(Ball::from_surd(&q, prec).overlaps(&ba.div(&bb).unwrap()));
            prop_assert_eq!(&q * &b, a);
        }
    }

    #[test]
    fn generating_function_series_meets_closed_form(num in -24i64..=24, den in 100i64..1000, pick in 0usize..6) {
        prop_assume!(num != 0);
        let name = [GfName::M, GfName::Hd, GfName::H2n, GfName::CatHd, GfName::CatH2n, GfName::CatHalf][pick];
        let x = SurdQ5::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)));
        let series = gf_series_sum(name, &x, 25, 1_000_000, 192).unwrap();
        let closed = gf_eval_exact(name, &x, 192).unwrap();
        prop_assert!(series.overlaps(&closed), "{name} at {num}/{den}");
        prop_assert!(series.agreed_digits(&closed) >= 23);
    }

    #[test]
    fn family_points_stay_inside_the_disc(r in 1i64..40, lucas_side in any::<bool>()) {
        let fam = if lucas_side { SubstitutionFamily::Lucas } else { SubstitutionFamily::Fib };
        let x = substitution_point(fam, r).unwrap();
        let quarter = SurdQ5::from_ratios(1, 4, 0, 1);
        prop_assert!(x.signum().is_gt());
        prop_assert!((&quarter - &x).signum().is_gt());
    }

    #[test]
    fn family_partial_sums_increase(r in 1i64..8, which in 0usize..4, n in 2u64..30) {
        let e = instantiate_family(Family::ALL[which], r).unwrap();
        let (a, b) = (partial_sum_exact(&e.lhs, n - 1).unwrap(), partial_sum_exact(&e.lhs, n).unwrap());
        prop_assert!((&b - &a).signum().is_gt());
    }
}
