//! Property tests for the exact series ring and the certified enclosures.

use mahler_core::numerics::{eval_series_certified, Ball, TailBound};
use mahler_core::qseries::{delta_expansion, e4_expansion, j_expansion, IntSeries};
use proptest::prelude::*;
use rug::{Integer, Rational};

fn small_series() -> impl Strategy<Value = IntSeries> {
    (
        -3i64..4,
        prop::collection::vec(-9i64..10, 1..8),
    )
        .prop_map(|(val, coeffs)| {
            let trunc = val + coeffs.len() as i64;
            IntSeries::new(val, coeffs.into_iter().map(Integer::from).collect(), trunc)
        })
}

proptest! {
    #[test]
    fn distributivity((a, b, c) in (small_series(), small_series(), small_series())) {
        let lhs = a.add(&b).mul(&c);
        let rhs = a.mul(&c).add(&b.mul(&c));
        let trunc = lhs.trunc().min(rhs.trunc());
        let lo = lhs.valuation().min(rhs.valuation()).min(trunc - 1);
        for e in lo..trunc {
            prop_assert_eq!(lhs.coeff(e), rhs.coeff(e), "exponent {}", e);
        }
    }

    #[test]
    fn valuation_of_product_adds((a, b) in (small_series(), small_series())) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        let p = a.mul(&b);
        if !p.is_zero() {
            prop_assert_eq!(p.valuation(), a.valuation() + b.valuation());
        }
    }

    #[test]
    fn containment_under_evaluation(
        coeffs in prop::collection::vec(-9i64..10, 1..7),
        num in -3i64..4,
    ) {
        // evaluate an exact polynomial at an exact rational inside the
        // unit disk: the ball must contain the exact rational value
        let s = IntSeries::new(0, coeffs.iter().map(|&c| Integer::from(c)).collect(), coeffs.len() as i64);
        let x = Rational::from((num, 5));
        let z = Ball::from_rational(&x, 96);
        let v = eval_series_certified(&s, &z, &TailBound::None, 96).unwrap();
        let mut exact = Rational::new();
        for (k, &c) in coeffs.iter().enumerate() {
            exact += Rational::from(c) * Rational::from(x.clone().pow(k as u32));
        }
        prop_assert!(v.value.re().contains_rational(&exact));
        prop_assert!(v.value.im().contains_zero());
    }
}

#[test]
fn integrality_of_generators_at_many_truncations() {
    for k in [2i64, 5, 17, 60] {
        let d = delta_expansion(k).unwrap();
        let e = e4_expansion(k).unwrap();
        let j = j_expansion(k).unwrap();
        assert_eq!(d.valuation(), 1);
        assert_eq!(e.valuation(), 0);
        assert_eq!(j.valuation(), -1);
        // J Delta = E4^3 to the common truncation
        let prod = j.mul(&d);
        let e3 = e.pow(3).truncate(prod.trunc().min(e.trunc()));
        for exp in 0..e3.trunc() {
            assert_eq!(prod.coeff(exp), e3.coeff(exp), "k = {}, exponent {}", k, exp);
        }
    }
}

use rug::ops::Pow;
