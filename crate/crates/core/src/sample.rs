//! Seeded random instance generators shared by property tests, the
//! acceptance harness and the benches.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{int, pow_i, rat, Monomial, MultiPoly, RatFunc, Rational, Var};
use crate::expseries::TruncatedSeries;

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Primes up to 20, the base of the multiplicative-independence generator.
pub const SMALL_PRIMES: [i64; 8] = [2, 3, 5, 7, 11, 13, 17, 19];

fn nonzero_coeff(rng: &mut SampleRng, bound: i64) -> Rational {
    let c = rng.gen_range(1..=bound);
    int(if rng.gen_bool(0.5) { c } else { -c })
}

/// A polynomial with `1..=max_terms` terms, each exponent of `vars[i]`
/// at most `max_deg[i]`.
pub fn random_poly(
    rng: &mut SampleRng,
    vars: &[Var],
    max_deg: &[u32],
    max_terms: usize,
) -> MultiPoly {
    let n = rng.gen_range(1..=max_terms);
    let mut p = MultiPoly::zero();
    for _ in 0..n {
        let m = Monomial::from_pairs(
            vars.iter()
                .zip(max_deg)
                .map(|(v, &d)| (v.clone(), rng.gen_range(0..=d)))
                .collect(),
        );
        p = &p + &MultiPoly::term(nonzero_coeff(rng, 3), m);
    }
    if p.is_zero() {
        MultiPoly::one()
    } else {
        p
    }
}

/// A nonzero element of ℚ(p, q̄) whose denominator, if any, is `p^k` or
/// `p + c`, so that it flattens over both ℚ and ℚ(p).
pub fn random_element(rng: &mut SampleRng, p: &Var, qs: &[Var], p_deg: u32) -> RatFunc {
    let mut vars = vec![p.clone()];
    vars.extend_from_slice(qs);
    let mut degs = vec![p_deg];
    degs.extend(qs.iter().map(|_| 2));
    let num = random_poly(rng, &vars, &degs, 3);
    let den = if rng.gen_bool(0.25) {
        let k = rng.gen_range(1..=2);
        if rng.gen_bool(0.5) {
            MultiPoly::var(p.clone()).pow(k)
        } else {
            &MultiPoly::var(p.clone()) + &MultiPoly::constant(int(rng.gen_range(1..=3)))
        }
    } else {
        MultiPoly::one()
    };
    RatFunc::new(num, den).expect("nonzero denominator")
}

/// Generators of a random `A_0 ⊆ ℚ(p, q̄)` with at most `max_dim` generators.
/// Some generators are `p`-multiples of earlier ones, which gives long
/// descent chains.
pub fn random_a0(
    rng: &mut SampleRng,
    p: &Var,
    qs: &[Var],
    max_dim: usize,
    p_deg: u32,
) -> Vec<RatFunc> {
    let n = rng.gen_range(0..=max_dim);
    let pv = RatFunc::var(p.clone());
    let mut gens: Vec<RatFunc> = Vec::with_capacity(n);
    for _ in 0..n {
        let g = match gens.choose(rng) {
            Some(prev) if rng.gen_bool(0.35) && prev.num().degree_in(p) < p_deg => prev.mul(&pv),
            _ => random_element(rng, p, qs, p_deg),
        };
        gens.push(g);
    }
    gens
}

/// A random tuple of `1..=max_len` polynomials in `qs` only.
pub fn random_tuple_in(rng: &mut SampleRng, qs: &[Var], max_len: usize) -> Vec<RatFunc> {
    let degs: Vec<u32> = qs.iter().map(|_| 2).collect();
    let n = rng.gen_range(1..=max_len);
    (0..n)
        .map(|_| RatFunc::poly(random_poly(rng, qs, &degs, 3)))
        .collect()
}

/// A random element of the augmentation ideal: up to five terms of total
/// degree `1..=max_deg` with small rational coefficients.
pub fn random_ideal_series(
    rng: &mut SampleRng,
    vars: &[Var],
    order: u32,
    max_deg: u32,
) -> TruncatedSeries<Rational> {
    let n = rng.gen_range(1..=5);
    let terms: Vec<(Monomial, Rational)> = (0..n)
        .map(|_| {
            let deg = rng.gen_range(1..=max_deg);
            let mut pairs = Vec::new();
            for _ in 0..deg {
                pairs.push((vars[rng.gen_range(0..vars.len())].clone(), 1));
            }
            let c = rat(rng.gen_range(-4..=4), rng.gen_range(1..=3));
            (Monomial::from_pairs(pairs), c)
        })
        .collect();
    TruncatedSeries::from_terms(vars, order, terms).expect("declared variables")
}

/// A tuple of `1..=max_len` polynomials in `vars` of total degree at most
/// `max_deg` with zero constant term and integer coefficients in `[-3, 3]`.
pub fn random_poly_tuple(
    rng: &mut SampleRng,
    vars: &[Var],
    order: u32,
    max_len: usize,
    max_deg: u32,
) -> Vec<TruncatedSeries<Rational>> {
    let n = rng.gen_range(1..=max_len);
    (0..n)
        .map(|_| loop {
            let k = rng.gen_range(1..=3);
            let terms: Vec<(Monomial, Rational)> = (0..k)
                .map(|_| {
                    let deg = rng.gen_range(1..=max_deg);
                    let pairs = (0..deg)
                        .map(|_| (vars[rng.gen_range(0..vars.len())].clone(), 1))
                        .collect();
                    (Monomial::from_pairs(pairs), nonzero_coeff(rng, 3))
                })
                .collect();
            let s = TruncatedSeries::from_terms(vars, order, terms).expect("declared variables");
            if !s.is_zero() {
                break s;
            }
        })
        .collect()
}

/// A tuple of positive rationals built from [`SMALL_PRIMES`] together with
/// the exponent vector (over those primes) of each entry.
///
/// Each exponent is nonzero with probability 0.3 and uniform in `[-3, 3]`.
/// With probability 0.4 the last entry is replaced by a product
/// `Π y_i^{c_i}` with `c_i ∈ {-1, 0, 1}` whose exponents stay in `[-3, 3]`,
/// which plants a small relation.
pub fn random_mulind_tuple(rng: &mut SampleRng, n: usize) -> (Vec<Rational>, Vec<Vec<i64>>) {
    let k = SMALL_PRIMES.len();
    let mut exps: Vec<Vec<i64>> = (0..n)
        .map(|_| {
            (0..k)
                .map(|_| {
                    if rng.gen_bool(0.3) {
                        rng.gen_range(-3..=3)
                    } else {
                        0
                    }
                })
                .collect()
        })
        .collect();
    if n >= 2 && rng.gen_bool(0.4) {
        for _ in 0..64 {
            let c: Vec<i64> = (0..n - 1).map(|_| rng.gen_range(-1..=1)).collect();
            let e: Vec<i64> = (0..k)
                .map(|j| (0..n - 1).map(|i| c[i] * exps[i][j]).sum())
                .collect();
            if e.iter().all(|x| x.abs() <= 3) {
                exps[n - 1] = e;
                break;
            }
        }
    }
    let ys = exps
        .iter()
        .map(|e| {
            SMALL_PRIMES.iter().zip(e).fold(int(1), |acc, (&p, &x)| {
                acc * pow_i(&int(p), x).expect("prime base")
            })
        })
        .collect();
    (ys, exps)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_deterministic() {
        let p = Var::power("p");
        let q = [Var::generic("q")];
        let a = random_a0(&mut rng(7), &p, &q, 6, 4);
        let b = random_a0(&mut rng(7), &p, &q, 6, 4);
        assert_eq!(a, b);
        assert_eq!(
            random_mulind_tuple(&mut rng(3), 4),
            random_mulind_tuple(&mut rng(3), 4)
        );
    }

    #[test]
    fn mulind_values_match_exponents() {
        let mut r = rng(11);
        for _ in 0..20 {
            let (ys, exps) = random_mulind_tuple(&mut r, 3);
            for (y, e) in ys.iter().zip(&exps) {
                assert!(*y > int(0));
                assert!(e.iter().all(|x| x.abs() <= 3));
            }
        }
    }
}
