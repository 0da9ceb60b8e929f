use expow_core::arith::{RatFunc, Var};
use expow_core::chain::{chain_descent, power_inequality_check, telescoping_check};
use expow_core::sample::{random_a0, random_tuple_in, rng};
use expow_core::subspace::{ldim, CoeffField};
use proptest::prelude::*;

fn p() -> Var {
    Var::power("p")
}
fn qs() -> [Var; 2] {
    [Var::generic("q"), Var::generic("r")]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn descent_terminates_and_telescopes(seed in any::<u64>()) {
        let a0 = random_a0(&mut rng(seed), &p(), &qs(), 6, 4);
        let c = chain_descent(&a0, &p()).unwrap();
        prop_assert!(c.length() <= c.dims[0]);
        prop_assert_eq!(*c.dims.last().unwrap(), 0);
        for w in c.dims.windows(2) {
            prop_assert!(w[1] < w[0]);
        }
        for (s, sq) in c.step_terms.iter().zip(&c.qp_step_terms) {
            prop_assert!(s >= sq);
        }
        prop_assert_eq!(c.qp_step_terms.iter().sum::<usize>(), c.qp_dim);
        let t = telescoping_check(&c).unwrap();
        prop_assert!(t.holds(), "{:?}", t);
        prop_assert_eq!(c.step_terms.iter().sum::<usize>(), c.telescoping_lhs);
    }

    #[test]
    fn final_inequality_with_kernel(seed in any::<u64>()) {
        let mut r = rng(seed);
        let x = random_a0(&mut r, &p(), &qs(), 4, 3);
        let k = match seed % 3 {
            0 => vec![],
            _ => random_tuple_in(&mut r, &qs(), 2),
        };
        let rep = power_inequality_check(&x, &k, &p()).unwrap();
        let failed: Vec<String> = rep
            .comparisons
            .iter()
            .filter(|c| !c.holds())
            .map(ToString::to_string)
            .collect();
        prop_assert!(rep.holds(), "{:?}", failed);
        // Independent recomputation of the two final sides.
        let px: Vec<RatFunc> = x.iter().map(|e| e.mul(&RatFunc::var(p()))).collect();
        let mut base = x.clone();
        base.extend_from_slice(&k);
        prop_assert_eq!(rep.lhs, ldim(&CoeffField::Rationals, &px, &base).unwrap());
        prop_assert_eq!(rep.rhs, ldim(&CoeffField::of([p()]), &x, &k).unwrap());
    }
}
