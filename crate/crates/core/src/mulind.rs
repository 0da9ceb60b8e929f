//! Multiplicative independence of positive rationals via prime-exponent
//! lattices.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{int, pow_i, Rational};
use crate::error::{Error, Result};
use crate::linalg::{left_kernel, IntMatrix};

/// Default trial-division bound.
pub const DEFAULT_TRIAL_BOUND: u64 = 1_000_000;

/// Sparse prime → exponent map with no zero exponents.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ExponentVector(BTreeMap<u64, i64>);

impl ExponentVector {
    pub fn get(&self, prime: u64) -> i64 {
        self.0.get(&prime).copied().unwrap_or(0)
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.0.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, i64)> + '_ {
        self.0.iter().map(|(p, e)| (*p, *e))
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn bump(&mut self, prime: u64, by: i64) {
        let e = self.0.entry(prime).or_insert(0);
        *e += by;
        if *e == 0 {
            self.0.remove(&prime);
        }
    }

    /// `Π prime^exponent`.
    pub fn value(&self) -> Rational {
        self.iter().fold(int(1), |acc, (p, e)| {
            acc * pow_i(&Rational::from_integer(p.into()), e).expect("prime base")
        })
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|(p, e)| format!("{p}:{e}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller–Rabin for all `u64`.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &p in &BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Brent's variant of Pollard's rho; `n` odd composite.
fn pollard_rho(n: u64) -> u64 {
    for c in 1u64.. {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = x.abs_diff(y).gcd(&n);
        }
        if d != n {
            return d;
        }
    }
    unreachable!()
}

fn factor_u64(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime_u64(n) {
        out.push(n);
        return;
    }
    let d = pollard_rho(n);
    factor_u64(d, out);
    factor_u64(n / d, out);
}

fn factor_int(n: &BigInt, sign: i64, bound: u64, into: &mut ExponentVector) -> Result<()> {
    let mut n = n.clone();
    let mut d = 2u64;
    while d <= bound && BigInt::from(d) * BigInt::from(d) <= n {
        let bd = BigInt::from(d);
        while (&n % &bd).is_zero() {
            n /= &bd;
            into.bump(d, sign);
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n.is_one() {
        return Ok(());
    }
    match n.to_u64() {
        Some(m) => {
            let mut ps = Vec::new();
            factor_u64(m, &mut ps);
            for p in ps {
                into.bump(p, sign);
            }
            Ok(())
        }
        None => Err(Error::FactorBound(n.to_string())),
    }
}

/// Prime factorization of a positive rational.
pub fn factor_exponents(y: &Rational) -> Result<ExponentVector> {
    factor_exponents_bounded(y, DEFAULT_TRIAL_BOUND)
}

pub fn factor_exponents_bounded(y: &Rational, trial_bound: u64) -> Result<ExponentVector> {
    if !y.is_positive() {
        return Err(Error::NonPositive(crate::arith::format_rational(y)));
    }
    let mut v = ExponentVector::default();
    factor_int(y.numer(), 1, trial_bound, &mut v)?;
    factor_int(y.denom(), -1, trial_bound, &mut v)?;
    Ok(v)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MulIndependence {
    Independent,
    /// Primitive `m̄` with first nonzero entry positive and `Π y_i^{m_i} = 1`.
    Relation(Vec<BigInt>),
}

impl MulIndependence {
    pub fn is_independent(&self) -> bool {
        matches!(self, MulIndependence::Independent)
    }
}

/// `Π y_i^{m_i}` by exact rational exponentiation.
pub fn relation_product(ys: &[Rational], m: &[BigInt]) -> Result<Rational> {
    let mut acc = int(1);
    for (y, e) in ys.iter().zip(m) {
        let e = e
            .to_i64()
            .ok_or_else(|| Error::Domain(format!("exponent {e} out of range")))?;
        acc *= pow_i(y, e)?;
    }
    Ok(acc)
}

fn normalize(v: &[BigInt]) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let sign = match v.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => -BigInt::one(),
        _ => BigInt::one(),
    };
    v.iter().map(|x| x / &g * &sign).collect()
}

/// The exponent matrix, one row per `y_i`, over the union of primes.
pub fn exponent_matrix(vectors: &[ExponentVector]) -> (Vec<u64>, IntMatrix) {
    let primes: Vec<u64> = vectors
        .iter()
        .flat_map(ExponentVector::primes)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let rows = vectors
        .iter()
        .map(|v| primes.iter().map(|&p| BigInt::from(v.get(p))).collect())
        .collect();
    (primes.clone(), IntMatrix::from_big_rows(rows, primes.len()))
}

/// Decides multiplicative independence of positive rationals.
pub fn mult_independence(ys: &[Rational]) -> Result<MulIndependence> {
    let vectors = ys
        .iter()
        .map(factor_exponents)
        .collect::<Result<Vec<_>>>()?;
    let (_, m) = exponent_matrix(&vectors);
    let kernel = left_kernel(&m);
    let Some(best) = kernel.iter().map(|k| normalize(k)).min_by(|a, b| {
        let norm = |v: &Vec<BigInt>| v.iter().map(|x| x.abs()).max().unwrap_or_default();
        norm(a).cmp(&norm(b)).then_with(|| a.cmp(b))
    }) else {
        return Ok(MulIndependence::Independent);
    };
    if !relation_product(ys, &best)?.is_one() {
        return Err(Error::Domain(
            "integer kernel vector failed to verify".into(),
        ));
    }
    Ok(MulIndependence::Relation(best))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn ev(pairs: &[(u64, i64)]) -> ExponentVector {
        let mut v = ExponentVector::default();
        for &(p, e) in pairs {
            v.bump(p, e);
        }
        v
    }

    #[test]
    fn factor_examples() {
        assert_eq!(factor_exponents(&int(12)).unwrap(), ev(&[(2, 2), (3, 1)]));
        assert_eq!(
            factor_exponents(&rat(9, 10)).unwrap(),
            ev(&[(3, 2), (2, -1), (5, -1)])
        );
        assert!(factor_exponents(&int(1)).unwrap().is_empty());
    }

    #[test]
    fn non_positive_is_rejected() {
        assert!(matches!(
            factor_exponents(&int(0)),
            Err(Error::NonPositive(_))
        ));
        assert!(matches!(
            factor_exponents(&int(-2)),
            Err(Error::NonPositive(_))
        ));
    }

    #[test]
    fn large_cofactors_use_rho() {
        // 1000003 and 1000033 are both prime and above the trial bound.
        let n: u64 = 1_000_003 * 1_000_033;
        let v = factor_exponents(&Rational::from_integer(n.into())).unwrap();
        assert_eq!(v, ev(&[(1_000_003, 1), (1_000_033, 1)]));
        assert_eq!(v.value(), Rational::from_integer(n.into()));
    }

    #[test]
    fn bound_exceeded() {
        let big: BigInt = BigInt::from(1_000_003u64).pow(4);
        assert!(matches!(
            factor_exponents(&Rational::from_integer(big)),
            Err(Error::FactorBound(_))
        ));
    }

    #[test]
    fn miller_rabin_agrees_with_trial_division() {
        for n in 0..5000u64 {
            let trial = n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0);
            assert_eq!(is_prime_u64(n), trial, "{n}");
        }
        assert!(is_prime_u64(18_446_744_073_709_551_557));
        assert!(!is_prime_u64(3_215_031_751));
    }

    #[test]
    fn independence_examples() {
        assert!(mult_independence(&[int(2), int(3)])
            .unwrap()
            .is_independent());
        assert_eq!(
            mult_independence(&[int(2), int(4)]).unwrap(),
            MulIndependence::Relation(vec![2.into(), (-1).into()])
        );
        assert!(mult_independence(&[int(6), int(10), int(15)])
            .unwrap()
            .is_independent());
    }

    #[test]
    fn one_is_dependent() {
        assert_eq!(
            mult_independence(&[int(3), int(1)]).unwrap(),
            MulIndependence::Relation(vec![0.into(), 1.into()])
        );
    }
}
