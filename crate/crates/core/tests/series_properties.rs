//! Algebraic invariants of truncated series on random small rationals.

use proptest::prelude::*;

use stirling_core::rational::{frac, int};
use stirling_core::{Rational, TruncatedSeries};

const ORDER: usize = 6;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=6).prop_map(|(p, q)| frac(p, q))
}

fn series() -> impl Strategy<Value = TruncatedSeries> {
    prop::collection::vec(small_rational(), ORDER + 1)
        .prop_map(|c| TruncatedSeries::from_coeffs(c).unwrap())
}

/// Zero constant term.
fn nilpotent() -> impl Strategy<Value = TruncatedSeries> {
    series().prop_map(|s| {
        let mut c = s.into_coeffs();
        c[0] = int(0);
        TruncatedSeries::from_coeffs(c).unwrap()
    })
}

/// Zero constant term, nonzero linear term.
fn invertible() -> impl Strategy<Value = TruncatedSeries> {
    (
        nilpotent(),
        small_rational().prop_filter("nonzero", |q| *q != int(0)),
    )
        .prop_map(|(s, lead)| {
            let mut c = s.into_coeffs();
            c[1] = lead;
            TruncatedSeries::from_coeffs(c).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_laws(f in series(), g in series(), h in series()) {
        prop_assert_eq!(f.mul(&g).unwrap(), g.mul(&f).unwrap());
        prop_assert_eq!(f.add(&g).unwrap(), g.add(&f).unwrap());
        prop_assert_eq!(
            f.add(&g).unwrap().add(&h).unwrap(),
            f.add(&g.add(&h).unwrap()).unwrap()
        );
        prop_assert_eq!(
            f.mul(&g.add(&h).unwrap()).unwrap(),
            f.mul(&g).unwrap().add(&f.mul(&h).unwrap()).unwrap()
        );
    }

    #[test]
    fn exp_and_log_are_inverse(f in nilpotent()) {
        let one = TruncatedSeries::one(ORDER);
        prop_assert_eq!(f.log1p().unwrap().exp().unwrap(), one.add(&f).unwrap());
        prop_assert_eq!(f.exp().unwrap().sub(&one).unwrap().log1p().unwrap(), f);
    }

    #[test]
    fn rational_powers_add(f in nilpotent(), p in small_rational(), q in small_rational()) {
        let u = TruncatedSeries::one(ORDER).add(&f).unwrap();
        let lhs = u.power_rational(&p).unwrap().mul(&u.power_rational(&q).unwrap()).unwrap();
        prop_assert_eq!(lhs, u.power_rational(&(&p + &q)).unwrap());
        prop_assert_eq!(u.power_rational(&int(3)).unwrap(), u.pow_nat(3));
    }

    #[test]
    fn reciprocal_is_inverse(f in nilpotent(), c in small_rational().prop_filter("nonzero", |q| *q != int(0))) {
        let u = TruncatedSeries::constant(c, ORDER).add(&f).unwrap();
        prop_assert_eq!(u.mul(&u.recip().unwrap()).unwrap(), TruncatedSeries::one(ORDER));
    }

    #[test]
    fn reversion_round_trips(f in invertible()) {
        let s = f.reversion().unwrap();
        let x = TruncatedSeries::x(ORDER);
        prop_assert_eq!(f.compose(&s).unwrap(), x.clone());
        prop_assert_eq!(s.compose(&f).unwrap(), x);
        prop_assert_eq!(s.reversion().unwrap(), f);
    }

    #[test]
    fn egf_round_trips(f in series()) {
        let egf: Vec<Rational> = (0..=ORDER).map(|i| f.egf_coefficient(i).unwrap()).collect();
        prop_assert_eq!(TruncatedSeries::from_egf(&egf).unwrap(), f);
    }

    #[test]
    fn json_round_trips(f in series()) {
        let text = serde_json::to_string(&f).unwrap();
        let back: TruncatedSeries = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn derivative_is_a_derivation(f in series(), g in series()) {
        let d = |s: &TruncatedSeries| s.derivative();
        let lhs = d(&f.mul(&g).unwrap());
        let low = |s: TruncatedSeries| s.truncate(ORDER - 1).unwrap();
        let rhs = d(&f).mul(&low(g.clone())).unwrap().add(&low(f.clone()).mul(&d(&g)).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn mismatched_orders_are_rejected() {
    let a = TruncatedSeries::one(3);
    let b = TruncatedSeries::one(4);
    assert!(a.add(&b).is_err());
    assert!(a.mul(&b).is_err());
    assert!(a.checked_eq(&b).is_err());
}
