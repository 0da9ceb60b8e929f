use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{ldim, CoeffField};
use crate::arith::{RatFunc, Var};

/// Outcome of a linear-disjointness check of `K` and `L` over ℚ.
#[derive(Debug, Clone, PartialEq)]
pub enum Disjointness {
    /// The generators of `K` and `L` involve disjoint sets of formal
    /// variables, hence are algebraically independent.
    DisjointByCriterion,
    /// A ℚ-independent tuple from `L` that becomes `K`-dependent.
    Counterexample {
        tuple: Vec<RatFunc>,
        ldim_k: usize,
        ldim_e: usize,
    },
    Inconclusive {
        samples: usize,
    },
}

fn vars_of(gens: &[RatFunc]) -> BTreeSet<Var> {
    gens.iter().flat_map(|g| g.variables()).collect()
}

fn bare_var(g: &RatFunc) -> Option<Var> {
    let vs = g.variables();
    (vs.len() == 1 && *g == RatFunc::var(vs[0].clone())).then(|| vs[0].clone())
}

fn random_element(rng: &mut ChaCha8Rng, gens: &[RatFunc]) -> RatFunc {
    let mut acc = RatFunc::zero();
    for _ in 0..rng.gen_range(1..=2) {
        let mut t = RatFunc::int(rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 });
        for _ in 0..rng.gen_range(0..=2) {
            t = t.mul(&gens[rng.gen_range(0..gens.len())]);
        }
        acc = acc.add(&t);
    }
    acc
}

/// Checks `K ⊥_ℚ L` for fields presented by generators.
///
/// The sufficient criterion is disjointness of the variables involved.
/// Refutation samples `samples` tuples from `L` (each led by `1` and the
/// generators themselves come first) and compares `ldim_K` with `ldim_ℚ`.
/// Refutation needs `K` presented by bare variables, so that `ldim_K` is
/// an ldim over `ℚ(S)`; any other presentation stays inconclusive.
pub fn disjointness_check(
    k_gens: &[RatFunc],
    l_gens: &[RatFunc],
    samples: usize,
    seed: u64,
) -> Disjointness {
    let kv = vars_of(k_gens);
    let lv = vars_of(l_gens);
    if kv.is_disjoint(&lv) {
        return Disjointness::DisjointByCriterion;
    }
    let Some(k_vars) = k_gens
        .iter()
        .filter(|g| g.as_constant().is_none())
        .map(bare_var)
        .collect::<Option<Vec<Var>>>()
    else {
        return Disjointness::Inconclusive { samples: 0 };
    };
    let k_field = CoeffField::of(k_vars);
    let l_gens: Vec<RatFunc> = l_gens
        .iter()
        .filter(|g| g.as_constant().is_none())
        .cloned()
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tried = 0;
    let mut candidates: Vec<Vec<RatFunc>> = l_gens
        .iter()
        .map(|g| vec![RatFunc::one(), g.clone()])
        .collect();
    while candidates.len() < samples {
        let len = rng.gen_range(1..=3);
        let mut t = vec![RatFunc::one()];
        t.extend((0..len).map(|_| random_element(&mut rng, &l_gens)));
        candidates.push(t);
    }
    for tuple in candidates.into_iter().take(samples.max(l_gens.len())) {
        tried += 1;
        let (Ok(ldim_k), Ok(ldim_e)) = (
            ldim(&k_field, &tuple, &[]),
            ldim(&CoeffField::Rationals, &tuple, &[]),
        ) else {
            continue;
        };
        if ldim_k < ldim_e {
            return Disjointness::Counterexample {
                tuple,
                ldim_k,
                ldim_e,
            };
        }
    }
    Disjointness::Inconclusive { samples: tried }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> RatFunc {
        RatFunc::var(Var::power("p"))
    }
    fn q() -> RatFunc {
        RatFunc::var(Var::generic("q"))
    }

    #[test]
    fn distinct_variables_are_disjoint() {
        assert_eq!(
            disjointness_check(&[p()], &[q()], 10, 0),
            Disjointness::DisjointByCriterion
        );
    }

    #[test]
    fn rationals_are_disjoint_from_anything() {
        assert_eq!(
            disjointness_check(&[], &[p(), q()], 10, 0),
            Disjointness::DisjointByCriterion
        );
    }

    #[test]
    fn self_intersection_is_refuted_by_one_and_p() {
        match disjointness_check(&[p()], &[p()], 10, 0) {
            Disjointness::Counterexample {
                tuple,
                ldim_k,
                ldim_e,
            } => {
                assert_eq!(tuple, vec![RatFunc::one(), p()]);
                assert_eq!((ldim_k, ldim_e), (1, 2));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn non_variable_presentation_is_inconclusive() {
        let p2 = p().mul(&p());
        assert!(matches!(
            disjointness_check(&[p2], &[p()], 10, 0),
            Disjointness::Inconclusive { .. }
        ));
    }
}
