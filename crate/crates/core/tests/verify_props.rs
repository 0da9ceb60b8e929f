use std::collections::BTreeMap;

use expow_core::arith::{Field, MultiPoly, RatFunc, Rational, Var};
use expow_core::exec::Execution;
use expow_core::expseries::TruncatedSeries;
use expow_core::sample::{random_ideal_series, random_poly_tuple, rng};
use expow_core::subspace::{ldim, CoeffField};
use expow_core::verify::{
    ax_check, certified_value, effective_degree, powers_sc_check, relation_search, relation_var,
    td_estimate, Check, Verdict,
};
use proptest::prelude::*;

type S = TruncatedSeries<Rational>;

fn t() -> Var {
    Var::series("t")
}

/// Plugs the generators into a relation with plain series arithmetic.
fn plug(rel: &MultiPoly, gens: &[S]) -> S {
    let index: BTreeMap<Var, usize> = (0..gens.len()).map(|i| (relation_var(i + 1), i)).collect();
    rel.terms()
        .fold(S::zero(gens[0].vars(), gens[0].order()), |acc, (m, c)| {
            let term = m.pairs().iter().fold(
                S::constant(gens[0].vars(), gens[0].order(), c.clone()),
                |t, (v, e)| t.mul(&gens[index[v]].pow(*e)),
            );
            acc.add(&term)
        })
}

fn plug_exact(rel: &MultiPoly, gens: &[S]) -> Vec<Rational> {
    // Evaluate at a handful of rational points instead of expanding.
    let points = [3, 5, 7].map(|n| Rational::new(n.into(), 11.into()));
    points
        .iter()
        .map(|pt| {
            let vals: Vec<Rational> = gens
                .iter()
                .map(|g| g.to_ratfunc().eval(&|_: &Var| Some(pt.clone())).unwrap())
                .collect();
            rel.eval(&|v: &Var| {
                let i: usize = v.name()[1..].parse().ok()?;
                Some(vals[i - 1].clone())
            })
            .unwrap()
        })
        .collect()
}

fn mixed(seed: u64, order: u32) -> Vec<S> {
    let mut r = rng(seed);
    let mut g = random_poly_tuple(&mut r, &[t()], order, 2, 3);
    let e = g[0].exp().unwrap();
    g.push(e);
    g
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn relations_vanish_on_their_generators(seed in any::<u64>()) {
        let gens = mixed(seed, 12);
        let d = effective_degree(&gens, 3).unwrap();
        let cert = relation_search(&gens, d).unwrap();
        for rel in &cert.relations {
            prop_assert!(plug(rel, &gens).is_zero_up_to(cert.truncation));
        }
    }

    #[test]
    fn polynomial_relations_hold_identically(seed in any::<u64>()) {
        let mut r = rng(seed);
        let gens = random_poly_tuple(&mut r, &[t()], 16, 3, 3);
        let d = effective_degree(&gens, 3).unwrap();
        let cert = relation_search(&gens, d).unwrap();
        prop_assert_eq!(cert.check, Check::Symbolic);
        for rel in &cert.relations {
            prop_assert!(plug_exact(rel, &gens).iter().all(Field::eq_zero));
        }
    }

    #[test]
    fn exp_td_is_bounded_by_q_span(seed in any::<u64>(), a in -1i64..=1, b in -1i64..=1) {
        let vars = [Var::series("s"), t()];
        let mut r = rng(seed);
        let b1 = random_ideal_series(&mut r, &vars, 10, 2);
        let b2 = random_ideal_series(&mut r, &vars, 10, 2);
        let z3 = b1
            .scale(&Rational::from_integer(a.into()))
            .add(&b2.scale(&Rational::from_integer(b.into())));
        let z = [b1, b2, z3];
        let values: Vec<RatFunc> = z.iter().map(certified_value).collect();
        let span = ldim(&CoeffField::Rationals, &values, &[]).unwrap();
        prop_assume!(ldim(&CoeffField::Rationals, &values[..2], &[]).unwrap() == 2);
        let exps: Vec<S> = z.iter().map(|x| x.exp().unwrap()).collect();
        // The planted relation y3 · Π_{c<0} y_i = Π_{c>0} y_i has this degree.
        let (pos, neg) = (a.max(0) + b.max(0), (-a).max(0) + (-b).max(0));
        let needed = (1 + neg).max(pos) as u32;
        prop_assume!(effective_degree(&exps, 4).unwrap_or(0) >= needed);
        // Sparse arguments can leave the rows too few to separate the planted
        // relation from truncation artifacts.
        prop_assume!(relation_search(&exps, needed).unwrap().settled);
        let est = td_estimate(&exps, 4, Execution::Sequential).unwrap();
        prop_assert!(est.upper() <= span, "td {} > ldim {}", est.upper(), span);
    }

    #[test]
    fn raising_the_degree_never_raises_the_estimate(seed in any::<u64>()) {
        let gens = mixed(seed, 12);
        let mut last = usize::MAX;
        for d in 1..=4 {
            let v = td_estimate(&gens, d, Execution::Sequential).unwrap().value();
            prop_assert!(v <= last);
            last = v;
        }
    }

    #[test]
    fn raising_the_truncation_never_raises_the_estimate(seed in any::<u64>()) {
        let low = td_estimate(&mixed(seed, 8), 3, Execution::Sequential).unwrap().value();
        let high = td_estimate(&mixed(seed, 16), 3, Execution::Sequential).unwrap().value();
        prop_assert!(high <= low);
    }

    #[test]
    fn ax_never_fails(seed in any::<u64>()) {
        let mut r = rng(seed);
        let z = random_poly_tuple(&mut r, &[t()], 16, 2, 3);
        let rep = ax_check(&z, 4, Execution::Sequential).unwrap();
        prop_assert_ne!(rep.verdict, Verdict::Fail);
        if rep.verdict == Verdict::Pass {
            prop_assert!(rep.slack >= 0);
        }
    }

    #[test]
    fn powers_pass_when_the_estimate_is_stable(seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = RatFunc::var(Var::power("p"));
        let x = random_poly_tuple(&mut r, &[t()], 12, 2, 2);
        let mut z: Vec<TruncatedSeries<RatFunc>> =
            x.iter().map(|s| s.map_field(|c| RatFunc::from_rational(c))).collect();
        let shifted = z[0].scale(&p);
        z.push(shifted);
        let rep = powers_sc_check(&z, &[], 3, Execution::Sequential).unwrap();
        prop_assert_ne!(rep.verdict, Verdict::Fail);
        // For polynomial arguments td(exp z̄) = ldim_ℚ(z̄) (Ax), so a stable
        // estimate equal to that value is exact.
        let values: Vec<RatFunc> = z.iter().map(certified_value).collect();
        let truth = ldim(&CoeffField::Rationals, &values, &[]).unwrap();
        if rep.td_exp.is_stable() && rep.td_exp.upper() == truth {
            prop_assert_eq!(rep.verdict, Verdict::Pass);
        }
    }
}

#[test]
fn parallel_and_sequential_agree() {
    for seed in 0..6 {
        let gens = mixed(seed, 12);
        let a = td_estimate(&gens, 3, Execution::Sequential).unwrap();
        let b = td_estimate(&gens, 3, Execution::Parallel).unwrap();
        assert_eq!(a, b);
    }
}
