use expow_core::arith::{pow_i, Rational};
use expow_core::mulind::{mult_independence, relation_product, MulIndependence};
use expow_core::sample::{random_mulind_tuple, rng};
use proptest::prelude::*;

/// Exhaustive search for a nonzero `m̄` with `|m_i| ≤ bound` and
/// `Σ m_i e_i = 0` over the known exponent vectors.
fn brute_force_dependent(exps: &[Vec<i64>], bound: i64) -> bool {
    let n = exps.len();
    let width = (2 * bound + 1) as usize;
    let total = width.pow(n as u32);
    (1..total).any(|mut code| {
        let mut m = vec![0i64; n];
        for x in m.iter_mut() {
            *x = (code % width) as i64 - bound;
            code /= width;
        }
        m.iter().any(|&x| x != 0)
            && (0..exps[0].len()).all(|j| (0..n).map(|i| m[i] * exps[i][j]).sum::<i64>() == 0)
    })
}

fn verdict(ys: &[Rational]) -> MulIndependence {
    mult_independence(ys).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn agrees_with_brute_force(seed in any::<u64>(), n in 1usize..=4) {
        let (ys, exps) = random_mulind_tuple(&mut rng(seed), n);
        let v = verdict(&ys);
        prop_assert_eq!(!v.is_independent(), brute_force_dependent(&exps, 6));
        if let MulIndependence::Relation(m) = &v {
            prop_assert!(relation_product(&ys, m).unwrap() == Rational::from_integer(1.into()));
        }
    }

    #[test]
    fn verdict_is_invariant(seed in any::<u64>(), n in 1usize..=4, k in 1i64..=3, neg in any::<bool>()) {
        let (ys, _) = random_mulind_tuple(&mut rng(seed), n);
        let base = verdict(&ys).is_independent();
        let mut rev = ys.clone();
        rev.reverse();
        prop_assert_eq!(verdict(&rev).is_independent(), base);
        let k = if neg { -k } else { k };
        let mut scaled = ys.clone();
        scaled[0] = pow_i(&scaled[0], k).unwrap();
        prop_assert_eq!(verdict(&scaled).is_independent(), base);
    }
}
