use expow_core::arith::{RatFunc, Var};
use expow_core::sample::{random_a0, random_element, random_tuple_in, rng};
use expow_core::subspace::{ldim, CoeffField, SubspaceBasis};
use proptest::prelude::*;

fn p() -> Var {
    Var::power("p")
}
fn q() -> Var {
    Var::generic("q")
}

fn fields() -> [CoeffField; 2] {
    [CoeffField::Rationals, CoeffField::of([p()])]
}

fn cat(a: &[RatFunc], b: &[RatFunc]) -> Vec<RatFunc> {
    let mut v = a.to_vec();
    v.extend_from_slice(b);
    v
}

fn triple(seed: u64) -> (Vec<RatFunc>, Vec<RatFunc>, Vec<RatFunc>) {
    let mut r = rng(seed);
    let x = random_a0(&mut r, &p(), &[q()], 3, 3);
    let y = random_a0(&mut r, &p(), &[q()], 3, 3);
    let a = random_a0(&mut r, &p(), &[q()], 3, 3);
    (x, y, a)
}

/// Finite generating sample of ℚ(q) around `a`: powers of `q` up to the
/// first degree at which both relative dimensions stop changing.
fn stabilized_l_sample(x: &[RatFunc], a: &[RatFunc], k: &CoeffField) -> Vec<RatFunc> {
    let qv = RatFunc::var(q());
    let mut l = a.to_vec();
    l.push(RatFunc::one());
    let mut prev = None;
    let mut d = 0;
    loop {
        let cur = (
            ldim(k, x, &l).unwrap(),
            ldim(&CoeffField::Rationals, x, &l).unwrap(),
        );
        if prev == Some(cur) && d > 2 {
            return l;
        }
        prev = Some(cur);
        d += 1;
        l.push(qv.pow(d).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn addition_formula(seed in any::<u64>()) {
        let (x, y, a) = triple(seed);
        for k in fields() {
            let whole = ldim(&k, &cat(&x, &y), &a).unwrap();
            let split = ldim(&k, &x, &cat(&y, &a)).unwrap() + ldim(&k, &y, &a).unwrap();
            prop_assert_eq!(whole, split);
        }
    }

    #[test]
    fn monotone_in_the_base(seed in any::<u64>()) {
        let (x, y, z) = triple(seed);
        for k in fields() {
            prop_assert!(ldim(&k, &x, &cat(&y, &z)).unwrap() <= ldim(&k, &x, &y).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn dimension_formula(seed in any::<u64>()) {
        let (x, y, _) = triple(seed);
        for k in fields() {
            let a = SubspaceBasis::span(&k, &x).unwrap();
            let b = SubspaceBasis::span(&k, &y).unwrap();
            let s = a.sum(&b).unwrap();
            let i = a.intersect(&b).unwrap();
            prop_assert_eq!(s.dim() + i.dim(), a.dim() + b.dim());
            for e in i.elements() {
                prop_assert!(a.contains(e).unwrap() && b.contains(e).unwrap());
            }
        }
    }

    #[test]
    fn disjoint_fields_preserve_dimension(seed in any::<u64>()) {
        let l = random_tuple_in(&mut rng(seed), &[q()], 5);
        prop_assert_eq!(
            ldim(&CoeffField::of([p()]), &l, &[]).unwrap(),
            ldim(&CoeffField::Rationals, &l, &[]).unwrap()
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn disjoint_base_change_inequality(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = 1 + (seed % 3) as usize;
        let x: Vec<RatFunc> = (0..n).map(|_| random_element(&mut r, &p(), &[q()], 2)).collect();
        let a = random_tuple_in(&mut r, &[q()], 2);
        let k = CoeffField::of([p()]);
        let e = CoeffField::Rationals;
        let l_fin = stabilized_l_sample(&x, &a, &k);
        let left = ldim(&k, &x, &l_fin).unwrap() as i64 - ldim(&e, &x, &l_fin).unwrap() as i64;
        let right = ldim(&k, &x, &a).unwrap() as i64 - ldim(&e, &x, &a).unwrap() as i64;
        prop_assert!(left <= right, "{} > {}", left, right);
    }
}

#[test]
fn scaling_by_p_preserves_dimension() {
    let mut r = rng(5);
    for _ in 0..50 {
        let g = random_a0(&mut r, &p(), &[q()], 5, 3);
        let a = SubspaceBasis::span(&CoeffField::Rationals, &g).unwrap();
        assert_eq!(a.scale(&RatFunc::var(p())).unwrap().dim(), a.dim());
    }
}
