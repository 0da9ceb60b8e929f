//! Multivariate gcd over ℚ by recursive primitive polynomial remainder sequences.

use super::poly::MultiPoly;
use super::var::Var;

/// Greatest common divisor, monic under graded-lex. `gcd(0, 0) = 0`.
pub fn poly_gcd(f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
    gcd_rec(f, g).monic()
}

pub fn poly_lcm(f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
    if f.is_zero() || g.is_zero() {
        return MultiPoly::zero();
    }
    let d = poly_gcd(f, g);
    (f * &g.div_exact(&d).expect("gcd divides")).monic()
}

fn gcd_rec(f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
    if f.is_zero() {
        return g.clone();
    }
    if g.is_zero() {
        return f.clone();
    }
    if f.is_constant() || g.is_constant() {
        return MultiPoly::one();
    }
    // Cheap exits for the common case of one argument dividing the other.
    if f.div_exact(g).is_some() {
        return g.clone();
    }
    if g.div_exact(f).is_some() {
        return f.clone();
    }
    let main = match main_variable(f, g) {
        Some(v) => v,
        None => return MultiPoly::one(),
    };
    let fc = f.coeffs_in(&main);
    let gc = g.coeffs_in(&main);
    let cont_f = content(&fc);
    let cont_g = content(&gc);
    let c = gcd_rec(&cont_f, &cont_g);
    let mut a = divide_all(&fc, &cont_f);
    let mut b = divide_all(&gc, &cont_g);
    if degree(&a) < degree(&b) {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let r = pseudo_rem(&a, &b);
        a = b;
        b = primitive(&r);
    }
    let g_main = MultiPoly::from_coeffs_in(&main, &primitive(&a));
    (&c * &g_main).monic()
}

/// The earliest variable occurring in both arguments, else in either.
fn main_variable(f: &MultiPoly, g: &MultiPoly) -> Option<Var> {
    let fv = f.variables();
    let gv = g.variables();
    fv.iter()
        .find(|v| gv.contains(v))
        .cloned()
        .or_else(|| fv.first().cloned())
        .or_else(|| gv.first().cloned())
}

fn degree(c: &[MultiPoly]) -> usize {
    c.len().saturating_sub(1)
}

fn trim(mut c: Vec<MultiPoly>) -> Vec<MultiPoly> {
    while c.last().map(MultiPoly::is_zero).unwrap_or(false) {
        c.pop();
    }
    c
}

fn content(c: &[MultiPoly]) -> MultiPoly {
    let mut acc = MultiPoly::zero();
    for x in c {
        acc = gcd_rec(&acc, x);
        if acc.is_constant() && !acc.is_zero() {
            return MultiPoly::one();
        }
    }
    acc.monic()
}

fn divide_all(c: &[MultiPoly], d: &MultiPoly) -> Vec<MultiPoly> {
    c.iter()
        .map(|x| x.div_exact(d).expect("content divides every coefficient"))
        .collect()
}

fn primitive(c: &[MultiPoly]) -> Vec<MultiPoly> {
    let c = trim(c.to_vec());
    if c.is_empty() {
        return c;
    }
    let cont = content(&c);
    let mut out = divide_all(&c, &cont);
    // Normalize the rational scale to keep coefficients small.
    let lc = out.last().expect("nonempty").leading_coeff();
    for x in out.iter_mut() {
        *x = x.scale(&lc.recip());
    }
    out
}

/// `lc(b)^(deg a - deg b + 1) * a  mod  b` in the main variable.
fn pseudo_rem(a: &[MultiPoly], b: &[MultiPoly]) -> Vec<MultiPoly> {
    let mut r = trim(a.to_vec());
    let db = degree(b);
    let lb = b.last().expect("nonzero divisor").clone();
    while !r.is_empty() && degree(&r) >= db {
        let dr = degree(&r);
        let lr = r.last().expect("nonempty").clone();
        let shift = dr - db;
        let mut next: Vec<MultiPoly> = r.iter().map(|x| x * &lb).collect();
        for (k, bk) in b.iter().enumerate() {
            next[k + shift] = &next[k + shift] - &(bk * &lr);
        }
        r = trim(next);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::rat;

    fn p() -> MultiPoly {
        MultiPoly::var(Var::power("p"))
    }
    fn q() -> MultiPoly {
        MultiPoly::var(Var::generic("q"))
    }
    fn c(n: i64) -> MultiPoly {
        MultiPoly::constant(rat(n, 1))
    }

    #[test]
    fn difference_of_squares() {
        let f = &p().pow(2) - &q().pow(2);
        assert_eq!(poly_gcd(&f, &(&p() - &q())), &p() - &q());
    }

    #[test]
    fn perfect_square() {
        let f = &(&p().pow(2) + &p().scale(&rat(2, 1))) + &c(1);
        assert_eq!(poly_gcd(&f, &(&p() + &c(1))), &p() + &c(1));
    }

    #[test]
    fn coprime_variables() {
        assert_eq!(poly_gcd(&p(), &q()), MultiPoly::one());
    }

    #[test]
    fn gcd_with_zero_is_normalized() {
        let g = (&p() + &c(1)).scale(&rat(3, 1));
        assert_eq!(poly_gcd(&MultiPoly::zero(), &g), &p() + &c(1));
    }

    #[test]
    fn multivariate_common_factor() {
        let common = &(&p() * &q()) + &c(1);
        let f = &common * &(&p() - &q().pow(2));
        let g = &common * &(&q() + &p().pow(3));
        let d = poly_gcd(&f, &g);
        assert_eq!(d, common.monic());
        assert!(f.div_exact(&d).is_some());
        assert!(g.div_exact(&d).is_some());
    }

    #[test]
    fn content_in_other_variable() {
        // (q + 1) p^2 - (q + 1) and (q + 1)^2 (p - 1): gcd (q + 1)(p - 1)
        let q1 = &q() + &c(1);
        let f = &q1 * &(&p().pow(2) - &c(1));
        let g = &q1.pow(2) * &(&p() - &c(1));
        assert_eq!(poly_gcd(&f, &g), (&q1 * &(&p() - &c(1))).monic());
    }
}
