//! Property tests for the exact arithmetic layers.

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use cpident::ball::RealBall;
use cpident::compositions::{count_cm, enumerate};
use cpident::cyclotomic::{CycField, CycNum};
use cpident::qseries::QBinomialTable;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// An element built as an integer combination of zeta powers.
fn elem(field: &std::sync::Arc<CycField>, coords: &[i8]) -> CycNum {
    coords
        .iter()
        .enumerate()
        .fold(CycNum::zero(field), |acc, (k, &c)| {
            acc.add(&CycNum::zeta_power(field, k as i64).scale(&rat(c as i64, 1)))
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws(n in 2u32..=6, a in prop::collection::vec(-4i8..=4, 4),
                 b in prop::collection::vec(-4i8..=4, 4),
                 c in prop::collection::vec(-4i8..=4, 4)) {
        let f = CycField::new(n);
        let (x, y, z) = (elem(&f, &a), elem(&f, &b), elem(&f, &c));
        prop_assert_eq!(x.mul(&y), y.mul(&x));
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
        prop_assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
        prop_assert_eq!(x.add(&y).sub(&y), x.clone());
    }

    #[test]
    fn conjugation_is_ring_involution(n in 2u32..=6,
                                      a in prop::collection::vec(-4i8..=4, 4),
                                      b in prop::collection::vec(-4i8..=4, 4)) {
        let f = CycField::new(n);
        let (x, y) = (elem(&f, &a), elem(&f, &b));
        prop_assert_eq!(x.conjugate().conjugate(), x.clone());
        prop_assert_eq!(x.mul(&y).conjugate(), x.conjugate().mul(&y.conjugate()));
        prop_assert_eq!(x.add(&y).conjugate(), x.conjugate().add(&y.conjugate()));
    }

    #[test]
    fn inverse_roundtrip(n in 2u32..=6, a in prop::collection::vec(-4i8..=4, 4)) {
        let f = CycField::new(n);
        let x = elem(&f, &a);
        if !x.is_zero() {
            prop_assert_eq!(x.mul(&x.inverse()), CycNum::one(&f));
        }
    }

    #[test]
    fn embedding_is_multiplicative(n in 2u32..=5,
                                   a in prop::collection::vec(-3i8..=3, 3),
                                   b in prop::collection::vec(-3i8..=3, 3)) {
        let f = CycField::new(n);
        let (x, y) = (elem(&f, &a), elem(&f, &b));
        // the exact product's enclosure and the product of enclosures both
        // contain the true value, so their difference must contain zero
        let lhs = x.mul(&y).complex_embed(96);
        let rhs = x.complex_embed(96).mul(&y.complex_embed(96));
        prop_assert!(lhs.sub(&rhs).contains_zero());
    }

    #[test]
    fn enumeration_matches_counts(l in 1usize..=6, n in 2u32..=4) {
        let counts = count_cm(l, n);
        for (m, expect) in counts.iter().enumerate() {
            let got = enumerate(l, n, m as u32).count();
            prop_assert_eq!(&BigInt::from(got), expect);
        }
        // lexicographic and duplicate-free
        for m in 0..counts.len() as u32 {
            let v: Vec<Vec<u32>> = enumerate(l, n, m).map(|c| c.parts().to_vec()).collect();
            let mut sorted = v.clone();
            sorted.sort();
            sorted.dedup();
            prop_assert_eq!(v, sorted);
        }
    }

    #[test]
    fn pascal_recurrence(n in 2u32..=6) {
        let f = CycField::new(n);
        let t = QBinomialTable::new(&f);
        // [m over r] = [m-1 over r-1] + omega^r [m-1 over r]
        for m in 1..=(2 * n - 2) {
            for r in 1..=(n - 1).min(m) {
                let lhs = t.q_binomial(m, r);
                let rhs = t
                    .q_binomial(m - 1, r - 1)
                    .add(&t.q_binomial(m - 1, r).mul(&CycNum::omega_power(&f, r as i64)));
                prop_assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn ball_product_encloses(an in -50i64..=50, ad in 1i64..=9,
                             bn in -50i64..=50, bd in 1i64..=9,
                             prec in 32u32..=128) {
        let a = rat(an, ad);
        let b = rat(bn, bd);
        let pa = RealBall::exact(a.clone()).compress(prec);
        let pb = RealBall::exact(b.clone()).compress(prec);
        prop_assert!(pa.contains(&a));
        prop_assert!(pa.mul(&pb).contains(&(a * b)));
    }
}
