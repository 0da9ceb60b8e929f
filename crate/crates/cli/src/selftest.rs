//! Built-in golden examples, one check per case.

use std::cmp::Ordering;
use std::time::Instant;

use expow_core::arith::{
    poly_arith, poly_gcd, rat, ratfun_arith, rational_arith, Field, MultiPoly, PolyOp, PolyResult,
    RatFunc, RatFuncOp, RatFuncResult, Rational, RationalOp, RationalResult, Var,
};
use expow_core::chain::{chain_descent, power_inequality_check, telescoping_check};
use expow_core::exec::{self, Execution};
use expow_core::expseries::{
    eval_exp_poly, expalg_witness, parse_series, series_arith, series_exp_log, ExpLog,
    ExpPolynomial, JacobianMode, SeriesContext, SeriesOp, TruncatedSeries,
};
use expow_core::linalg::{rank_kernel, rref, smith_hermite, ExactMatrix, IntMatrix, NormalForm};
use expow_core::mulind::{factor_exponents, mult_independence, relation_product, MulIndependence};
use expow_core::sample::{random_a0, random_element, rng};
use expow_core::subspace::{
    disjointness_check, flatten, ldim, span_ops, CoeffField, Coordinates, Disjointness, SpanOp,
    SpanResult, SubspaceBasis,
};
use expow_core::verify::{
    ax_check, powers_sc_check, relation_search, relation_search_with, relation_var, SearchOutcome,
    Verdict,
};
use num_bigint::BigInt;

use crate::instance::{parse_instance, SectionKind};
use crate::report::{CheckReport, Report};
use crate::run::{run_instance, Command, Overrides};

type Outcome = Result<String, String>;

pub struct Case {
    pub module: &'static str,
    pub name: &'static str,
    run: fn(Execution) -> Outcome,
}

fn check(ok: bool, detail: impl Into<String>) -> Outcome {
    let d = detail.into();
    if ok {
        Ok(d)
    } else {
        Err(d)
    }
}

fn fail<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn q(s: &str) -> Rational {
    f(s).as_constant().expect("constant")
}

fn vars() -> Vec<Var> {
    vec![Var::power("p"), Var::generic("q")]
}

fn f(s: &str) -> RatFunc {
    expow_core::arith::parse_ratfunc(s, &vars()).expect("literal")
}

fn poly(s: &str) -> MultiPoly {
    f(s).num().clone()
}

fn fs(items: &[&str]) -> Vec<RatFunc> {
    items.iter().map(|s| f(s)).collect()
}

fn ctx(order: u32) -> SeriesContext {
    SeriesContext::new(
        vec![Var::series("s"), Var::series("t")],
        vec![Var::power("p")],
        order,
    )
}

fn ser(s: &str, order: u32) -> TruncatedSeries {
    parse_series(s, &ctx(order)).expect("literal")
}

fn pser(s: &str, order: u32) -> TruncatedSeries<RatFunc> {
    parse_series(s, &ctx(order)).expect("literal")
}

fn same(a: &TruncatedSeries, b: &TruncatedSeries) -> bool {
    a.eq_up_to(b, a.certified().min(b.certified()))
}

fn relation(s: &str, k: usize) -> MultiPoly {
    let names: Vec<Var> = (1..=k).map(relation_var).collect();
    expow_core::arith::parse_ratfunc(s, &names)
        .expect("relation literal")
        .num()
        .clone()
}

fn proportional(a: &MultiPoly, b: &MultiPoly) -> bool {
    &a.scale(&b.leading_coeff()) == &b.scale(&a.leading_coeff())
}

fn qm(rows: &[&[i64]]) -> ExactMatrix<Rational> {
    let cols = rows.first().map_or(0, |r| r.len());
    ExactMatrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|x| rat(*x, 1)).collect())
            .collect(),
        cols,
    )
}

fn span(field: &CoeffField, items: &[&str]) -> SubspaceBasis {
    SubspaceBasis::span(field, &fs(items)).expect("span")
}

fn value(r: RationalResult) -> Rational {
    match r {
        RationalResult::Value(v) => v,
        RationalResult::Ordering(_) => unreachable!("value expected"),
    }
}

fn cases() -> Vec<Case> {
    macro_rules! case {
        ($m:literal, $n:literal, $body:expr) => {
            Case {
                module: $m,
                name: $n,
                run: $body,
            }
        };
    }
    vec![
        case!("arith", "rational_add", |_| {
            let r = value(rational_arith(RationalOp::Add, &q("1/2"), &q("1/3")).map_err(fail)?);
            check(r == q("5/6"), format!("1/2 + 1/3 = {r}"))
        }),
        case!("arith", "rational_zero_absorbs", |_| {
            let r = value(rational_arith(RationalOp::Mul, &q("0"), &q("7/3")).map_err(fail)?);
            check(
                r == q("0") && r.denom() == &BigInt::from(1),
                format!("0 * 7/3 = {r}"),
            )
        }),
        case!("arith", "rational_division_by_zero", |_| {
            let r = rational_arith(RationalOp::Div, &q("1/2"), &q("0"));
            check(r.is_err(), format!("{r:?}"))
        }),
        case!("arith", "rational_compare", |_| {
            let r = rational_arith(RationalOp::Cmp, &q("1/3"), &q("1/2")).map_err(fail)?;
            check(
                r == RationalResult::Ordering(Ordering::Less),
                format!("{r:?}"),
            )
        }),
        case!("arith", "poly_difference_of_squares", |_| {
            let r = poly_arith(&poly("p - q"), PolyOp::Mul(&poly("p + q"))).map_err(fail)?;
            check(r == PolyResult::Poly(poly("p^2 - q^2")), format!("{r:?}"))
        }),
        case!("arith", "poly_cancellation", |_| {
            let r = poly_arith(&poly("p^2"), PolyOp::Add(&poly("-p^2"))).map_err(fail)?;
            check(r == PolyResult::Poly(MultiPoly::zero()), format!("{r:?}"))
        }),
        case!("arith", "poly_eval", |_| {
            let point = [(Var::power("p"), q("2")), (Var::generic("q"), q("1/2"))];
            let r = poly_arith(&poly("p^2 + q"), PolyOp::Eval(&point)).map_err(fail)?;
            check(r == PolyResult::Value(q("9/2")), format!("{r:?}"))
        }),
        case!("arith", "gcd_difference_of_squares", |_| {
            let g = poly_gcd(&poly("p^2 - q^2"), &poly("p - q"));
            check(g == poly("p - q"), format!("gcd = {g}"))
        }),
        case!("arith", "gcd_perfect_square", |_| {
            let g = poly_gcd(&poly("p^2 + 2*p + 1"), &poly("p + 1"));
            check(g == poly("p + 1"), format!("gcd = {g}"))
        }),
        case!("arith", "gcd_coprime", |_| {
            let g = poly_gcd(&poly("p"), &poly("q"));
            check(g == MultiPoly::one(), format!("gcd = {g}"))
        }),
        case!("arith", "ratfunc_common_factor", |_| {
            let raw = RatFunc::new(poly("p^2 - 1"), poly("p - 1")).map_err(fail)?;
            let r = ratfun_arith(&raw, RatFuncOp::Normalize).map_err(fail)?;
            check(r == RatFuncResult::Value(f("p + 1")), format!("{r:?}"))
        }),
        case!("arith", "ratfunc_common_denominator", |_| {
            let r = ratfun_arith(&f("1/p"), RatFuncOp::Add(&f("1/q"))).map_err(fail)?;
            let expect = RatFunc::new(poly("p + q"), poly("p*q")).map_err(fail)?;
            check(r == RatFuncResult::Value(expect), format!("{r:?}"))
        }),
        case!("arith", "ratfunc_inverse_of_zero", |_| {
            let r = ratfun_arith(&RatFunc::zero(), RatFuncOp::Inv);
            check(r.is_err(), format!("{r:?}"))
        }),
        case!("linalg", "rank_kernel_proportional_rows", |_| {
            let m = ExactMatrix::from_rows(vec![fs(&["1", "p"]), fs(&["p", "p^2"])], 2);
            let (r, k) = rank_kernel(&m);
            check(
                r == 1 && k == vec![fs(&["-p", "1"])],
                format!("rank {r}, kernel {k:?}"),
            )
        }),
        case!("linalg", "rank_kernel_identity", |_| {
            let (r, k) = rank_kernel(&ExactMatrix::<Rational>::identity(2));
            check(
                r == 2 && k.is_empty(),
                format!("rank {r}, kernel dim {}", k.len()),
            )
        }),
        case!("linalg", "rank_kernel_single_row", |_| {
            let m = qm(&[&[1, 2, 3]]);
            let (r, k) = rank_kernel(&m);
            let ok = k.iter().all(|v| m.mul_vec(v).iter().all(Field::eq_zero));
            check(
                r == 1 && k.len() == 2 && ok,
                format!("rank {r}, kernel dim {}", k.len()),
            )
        }),
        case!("linalg", "rref_proportional_rows", |_| {
            let r = rref(&qm(&[&[2, 4], &[1, 2]]));
            check(r == qm(&[&[1, 2], &[0, 0]]), format!("{r:?}"))
        }),
        case!("linalg", "rref_zero", |_| {
            let r = rref(&qm(&[&[0, 0], &[0, 0]]));
            check(r == qm(&[&[0, 0], &[0, 0]]), format!("{r:?}"))
        }),
        case!("linalg", "rref_permutation", |_| {
            let r = rref(&qm(&[&[0, 1], &[1, 0]]));
            check(r == qm(&[&[1, 0], &[0, 1]]), format!("{r:?}"))
        }),
        case!("linalg", "smith_two_by_two", |_| {
            let m = IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]);
            let r = smith_hermite(&m, NormalForm::Smith);
            let ok = r.form == IntMatrix::from_rows(&[vec![2, 0], vec![0, 4]])
                && r.left.mul(&m).mul(&r.right) == r.form;
            check(ok, format!("{:?}", r.form))
        }),
        case!("linalg", "smith_identity", |_| {
            let r = smith_hermite(&IntMatrix::identity(3), NormalForm::Smith);
            check(r.form == IntMatrix::identity(3), format!("{:?}", r.form))
        }),
        case!("linalg", "hermite_zero", |_| {
            let r = smith_hermite(&IntMatrix::zeros(2, 2), NormalForm::Hermite);
            check(r.form == IntMatrix::zeros(2, 2), format!("{:?}", r.form))
        }),
        case!("subspace", "flatten_monomials", |_| {
            let (c, m) = flatten(&fs(&["1", "p", "p^2"]), &CoeffField::Rationals).map_err(fail)?;
            let ok = matches!(&m, Coordinates::Rational(m) if *m == ExactMatrix::identity(3));
            check(
                ok && c.support.len() == 3,
                format!("support {:?}", c.support),
            )
        }),
        case!("subspace", "flatten_over_powers", |_| {
            let field = CoeffField::of([Var::power("p")]);
            let (c, m) = flatten(&fs(&["q", "p*q"]), &field).map_err(fail)?;
            let ok = matches!(&m, Coordinates::Function(m)
                if *m == ExactMatrix::from_rows(vec![fs(&["1"]), fs(&["p"])], 1));
            check(
                ok && c.support.len() == 1,
                format!("support {:?}", c.support),
            )
        }),
        case!("subspace", "flatten_proportional", |_| {
            let (_, m) =
                flatten(&fs(&["1 + p", "2 + 2*p"]), &CoeffField::Rationals).map_err(fail)?;
            let ok = matches!(&m, Coordinates::Rational(m) if *m == qm(&[&[1, 1], &[2, 2]]));
            check(ok, format!("{m:?}"))
        }),
        case!("subspace", "ldim_distinct_monomials", |_| {
            let d = ldim(&CoeffField::Rationals, &fs(&["1", "p", "p^2"]), &[]).map_err(fail)?;
            check(d == 3, format!("ldim {d}"))
        }),
        case!("subspace", "ldim_scalars_over_powers", |_| {
            let d = ldim(&CoeffField::Powers, &fs(&["1", "p", "p^2"]), &[]).map_err(fail)?;
            check(d == 1, format!("ldim {d}"))
        }),
        case!("subspace", "ldim_relative", |_| {
            let d = ldim(&CoeffField::Rationals, &fs(&["p*q"]), &fs(&["q"])).map_err(fail)?;
            check(d == 1, format!("ldim {d}"))
        }),
        case!("subspace", "ldim_addition_formula", |_| {
            let (p, qv) = (Var::power("p"), Var::generic("q"));
            for seed in 0..20 {
                let mut r = rng(seed);
                let mut draw = |n: usize| -> Vec<RatFunc> {
                    (0..n)
                        .map(|_| random_element(&mut r, &p, &[qv.clone()], 3))
                        .collect()
                };
                let (x, y, a) = (draw(2), draw(2), draw(1));
                for field in [CoeffField::Rationals, CoeffField::Powers] {
                    let xy: Vec<RatFunc> = x.iter().chain(&y).cloned().collect();
                    let ya: Vec<RatFunc> = y.iter().chain(&a).cloned().collect();
                    let lhs = ldim(&field, &xy, &a).map_err(fail)?;
                    let rhs = ldim(&field, &x, &ya).map_err(fail)?
                        + ldim(&field, &y, &a).map_err(fail)?;
                    if lhs != rhs {
                        return Err(format!("seed {seed} over {field}: {lhs} != {rhs}"));
                    }
                }
            }
            Ok("20 seeded instances over Q and Q(p)".into())
        }),
        case!("subspace", "intersect_inverse_powers", |_| {
            let qf = CoeffField::Rationals;
            let i = span(&qf, &["1", "p"])
                .intersect(&span(&qf, &["1", "1/p"]))
                .map_err(fail)?;
            let ok = i.equals(&span(&qf, &["1"])).map_err(fail)?;
            check(ok, format!("dim {}", i.dim()))
        }),
        case!("subspace", "intersect_disjoint_coordinates", |_| {
            let qf = CoeffField::Rationals;
            let i = span(&qf, &["1"])
                .intersect(&span(&qf, &["p"]))
                .map_err(fail)?;
            check(i.is_zero(), format!("dim {}", i.dim()))
        }),
        case!("subspace", "intersect_idempotent", |_| {
            let qf = CoeffField::Rationals;
            let a = span(&qf, &["1 + q", "p*q"]);
            let ok = a.intersect(&a).map_err(fail)?.equals(&a).map_err(fail)?;
            check(ok, format!("dim {}", a.dim()))
        }),
        case!("subspace", "span_sum", |_| {
            let qf = CoeffField::Rationals;
            let r = span_ops(&span(&qf, &["1"]), SpanOp::Sum(&span(&qf, &["p"]))).map_err(fail)?;
            let ok = matches!(&r, SpanResult::Subspace(s) if s.equals(&span(&qf, &["1", "p"])).unwrap_or(false));
            check(ok, format!("{r:?}"))
        }),
        case!("subspace", "span_member", |_| {
            let r = span_ops(
                &span(&CoeffField::Rationals, &["1", "p"]),
                SpanOp::Member(&f("p^2")),
            )
            .map_err(fail)?;
            check(r == SpanResult::Bool(false), format!("{r:?}"))
        }),
        case!("subspace", "span_equal", |_| {
            let qf = CoeffField::Rationals;
            let r = span_ops(
                &span(&qf, &["1 + p", "1 - p"]),
                SpanOp::Equal(&span(&qf, &["1", "p"])),
            )
            .map_err(fail)?;
            check(r == SpanResult::Bool(true), format!("{r:?}"))
        }),
        case!("subspace", "disjoint_distinct_variables", |_| {
            let r = disjointness_check(&fs(&["p"]), &fs(&["q"]), 10, 0);
            check(r == Disjointness::DisjointByCriterion, format!("{r:?}"))
        }),
        case!("subspace", "disjoint_self_counterexample", |_| {
            let r = disjointness_check(&fs(&["p"]), &fs(&["p"]), 10, 0);
            let ok = matches!(&r, Disjointness::Counterexample { tuple, ldim_k: 1, ldim_e: 2 }
                if *tuple == fs(&["1", "p"]));
            check(ok, format!("{r:?}"))
        }),
        case!("subspace", "disjoint_rationals", |_| {
            let r = disjointness_check(&[], &fs(&["q"]), 10, 0);
            check(r == Disjointness::DisjointByCriterion, format!("{r:?}"))
        }),
        case!("chain", "descent_two_dimensions", |_| {
            let c = chain_descent(&fs(&["1", "p"]), &Var::power("p")).map_err(fail)?;
            check(
                c.dims == [2, 1, 0] && c.length() == 2,
                format!("dims {:?}", c.dims),
            )
        }),
        case!("chain", "descent_one_dimension", |_| {
            let c = chain_descent(&fs(&["1"]), &Var::power("p")).map_err(fail)?;
            check(
                c.dims == [1, 0] && c.length() == 1,
                format!("dims {:?}", c.dims),
            )
        }),
        case!("chain", "descent_zero", |_| {
            let c = chain_descent(&[], &Var::power("p")).map_err(fail)?;
            check(
                c.dims == [0] && c.length() == 0,
                format!("dims {:?}", c.dims),
            )
        }),
        case!("chain", "telescoping_two_dimensions", |_| {
            let c = chain_descent(&fs(&["1", "p"]), &Var::power("p")).map_err(fail)?;
            let t = telescoping_check(&c).map_err(fail)?;
            let ok = t.holds() && t.lhs == 1 && c.step_terms == [0, 1] && t.sum == 1;
            check(
                ok,
                format!("lhs {}, steps {:?}, sum {}", t.lhs, c.step_terms, t.sum),
            )
        }),
        case!("chain", "telescoping_zero", |_| {
            let c = chain_descent(&[], &Var::power("p")).map_err(fail)?;
            let t = telescoping_check(&c).map_err(fail)?;
            check(t.holds() && t.lhs == 0 && t.sum == 0, format!("{t:?}"))
        }),
        case!("chain", "telescoping_random", |mode| {
            let (p, qv) = (Var::power("p"), Var::generic("q"));
            let results = exec::map_range(20, mode, |seed| {
                let a0 = random_a0(&mut rng(seed as u64), &p, &[qv.clone()], 6, 4);
                let c = chain_descent(&a0, &p)?;
                Ok::<_, expow_core::Error>((telescoping_check(&c)?.holds(), c.dims))
            });
            for (seed, r) in results.into_iter().enumerate() {
                let (ok, dims) = r.map_err(fail)?;
                if !ok {
                    return Err(format!("seed {seed}: dims {dims:?}"));
                }
            }
            Ok("20 seeded chains".into())
        }),
        case!("chain", "power_inequality_q", |_| {
            let r = power_inequality_check(&fs(&["q"]), &[], &Var::power("p")).map_err(fail)?;
            check(
                r.holds() && (r.lhs, r.rhs) == (1, 1),
                format!("{} >= {}", r.lhs, r.rhs),
            )
        }),
        case!("chain", "power_inequality_q_q2", |_| {
            let r =
                power_inequality_check(&fs(&["q", "q^2"]), &[], &Var::power("p")).map_err(fail)?;
            check(
                r.holds() && (r.lhs, r.rhs) == (2, 2),
                format!("{} >= {}", r.lhs, r.rhs),
            )
        }),
        case!("chain", "power_inequality_q_pq", |_| {
            let r =
                power_inequality_check(&fs(&["q", "p*q"]), &[], &Var::power("p")).map_err(fail)?;
            check(
                r.holds() && (r.lhs, r.rhs) == (1, 1),
                format!("{} >= {}", r.lhs, r.rhs),
            )
        }),
        case!("mulind", "factor_twelve", |_| {
            let v = factor_exponents(&q("12")).map_err(fail)?;
            let pairs: Vec<(u64, i64)> = v.iter().collect();
            check(pairs == [(2, 2), (3, 1)], format!("{v}"))
        }),
        case!("mulind", "factor_fraction", |_| {
            let v = factor_exponents(&q("9/10")).map_err(fail)?;
            let pairs: Vec<(u64, i64)> = v.iter().collect();
            check(pairs == [(2, -1), (3, 2), (5, -1)], format!("{v}"))
        }),
        case!("mulind", "factor_one", |_| {
            let v = factor_exponents(&q("1")).map_err(fail)?;
            check(v.is_empty(), format!("{v}"))
        }),
        case!("mulind", "distinct_primes", |_| {
            let r = mult_independence(&[q("2"), q("3")]).map_err(fail)?;
            check(r == MulIndependence::Independent, format!("{r:?}"))
        }),
        case!("mulind", "power_relation", |_| {
            let ys = [q("2"), q("4")];
            let r = mult_independence(&ys).map_err(fail)?;
            let m = vec![BigInt::from(2), BigInt::from(-1)];
            let ok = r == MulIndependence::Relation(m.clone())
                && relation_product(&ys, &m).map_err(fail)? == q("1");
            check(ok, format!("{r:?}"))
        }),
        case!("mulind", "pairwise_products", |_| {
            let ys = [q("6"), q("10"), q("15")];
            let r = mult_independence(&ys).map_err(fail)?;
            for a in -5i64..=5 {
                for b in -5i64..=5 {
                    for c in -5i64..=5 {
                        let m = [a, b, c].map(BigInt::from);
                        if (a, b, c) != (0, 0, 0)
                            && relation_product(&ys, &m).map_err(fail)? == q("1")
                        {
                            return Err(format!("brute force found {a}, {b}, {c}"));
                        }
                    }
                }
            }
            check(r == MulIndependence::Independent, format!("{r:?}"))
        }),
        case!("expseries", "series_product", |_| {
            let r =
                series_arith(&ser("1 + t", 8), SeriesOp::Mul(&ser("1 - t", 8))).map_err(fail)?;
            check(same(&r, &ser("1 - t^2", 8)), format!("{r:#}"))
        }),
        case!("expseries", "series_truncation", |_| {
            let r = series_arith(&ser("t^5", 8), SeriesOp::Mul(&ser("t^5", 8))).map_err(fail)?;
            check(r.is_zero() && r.certified() == 8, format!("{r:?}"))
        }),
        case!("expseries", "series_geometric", |_| {
            let r = series_arith(&ser("1 - t", 8), SeriesOp::Inv).map_err(fail)?;
            let expect = ser("1 + t + t^2 + t^3 + t^4 + t^5 + t^6 + t^7 + t^8", 8);
            check(same(&r, &expect), format!("{r:#}"))
        }),
        case!("expseries", "exp_series", |_| {
            let r = series_exp_log(ExpLog::Exp, &ser("t", 4)).map_err(fail)?;
            let expect = ser("1 + t + 1/2*t^2 + 1/6*t^3 + 1/24*t^4", 4);
            check(same(&r, &expect) && r.certified() == 4, format!("{r:#}"))
        }),
        case!("expseries", "log_inverts_exp", |_| {
            let e = series_exp_log(ExpLog::Exp, &ser("t", 8)).map_err(fail)?;
            let r = series_exp_log(ExpLog::Log, &e).map_err(fail)?;
            check(same(&r, &ser("t", 8)), format!("{r:#}"))
        }),
        case!("expseries", "exp_domain", |_| {
            let r = series_exp_log(ExpLog::Exp, &ser("1 + t", 8));
            check(r.is_err(), format!("{r:?}"))
        }),
        case!("expseries", "derive_monomial", |_| {
            let r = ser("t^2*s", 8).derive(&Var::series("t")).map_err(fail)?;
            check(same(&r, &ser("2*t*s", 8)), format!("{r:#}"))
        }),
        case!("expseries", "derive_exp", |_| {
            let r = ser("exp(t^2)", 8).derive(&Var::series("t")).map_err(fail)?;
            let expect = ser("2*t*exp(t^2)", 8);
            check(same(&r, &expect) && r.certified() == 7, format!("{r:#}"))
        }),
        case!("expseries", "derive_other_variable", |_| {
            let r = ser("t", 8).derive(&Var::series("s")).map_err(fail)?;
            check(r.is_zero(), format!("{r:#}"))
        }),
        case!("expseries", "eval_exp_minus_linear", |_| {
            let f = ExpPolynomial::parse(1, "y1 - 1 - x1").map_err(fail)?;
            let r = eval_exp_poly(&f, &[ser("t", 4)]).map_err(fail)?;
            let expect = ser("1/2*t^2 + 1/6*t^3 + 1/24*t^4", 4);
            check(same(&r, &expect), format!("{r:#}"))
        }),
        case!("expseries", "eval_exp_at_zero", |_| {
            let f = ExpPolynomial::parse(1, "y1").map_err(fail)?;
            let r = eval_exp_poly(&f, &[ser("0", 4)]).map_err(fail)?;
            check(same(&r, &ser("1", 4)), format!("{r:#}"))
        }),
        case!("expseries", "eval_homomorphism", |_| {
            let f = ExpPolynomial::parse(3, "y1*y2 - y3").map_err(fail)?;
            let xs = [ser("t", 8), ser("s", 8), ser("t + s", 8)];
            let r = eval_exp_poly(&f, &xs).map_err(fail)?;
            check(r.is_zero_up_to(r.certified()), format!("{r:#}"))
        }),
        case!("expseries", "witness_simple_zero", |_| {
            let f = [ExpPolynomial::parse(1, "y1 - 1").map_err(fail)?];
            let w = expalg_witness(&f, &[ser("0", 4)], JacobianMode::Total).map_err(fail)?;
            check(w.holds && w.vanishes, format!("det {:#}", w.jacobian_det))
        }),
        case!("expseries", "witness_double_zero", |_| {
            let f = [ExpPolynomial::parse(1, "y1 - 1 - x1").map_err(fail)?];
            let w = expalg_witness(&f, &[ser("0", 4)], JacobianMode::Total).map_err(fail)?;
            check(!w.holds && w.vanishes, format!("det {:#}", w.jacobian_det))
        }),
        case!("expseries", "witness_triangular", |_| {
            let f = [
                ExpPolynomial::parse(2, "x1").map_err(fail)?,
                ExpPolynomial::parse(2, "x2 - y1 + 1").map_err(fail)?,
            ];
            let w = expalg_witness(&f, &[ser("0", 4), ser("0", 4)], JacobianMode::Total)
                .map_err(fail)?;
            let one = ser("1", 4);
            let j = &w.jacobian;
            let ok = w.holds
                && same(&j[0][0], &one)
                && j[0][1].is_zero()
                && same(&j[1][0], &one.neg())
                && same(&j[1][1], &one)
                && same(&w.jacobian_det, &one);
            check(ok, format!("det {:#}", w.jacobian_det))
        }),
        case!("verify", "relsearch_polynomial", |_| {
            let c = relation_search(&[ser("t", 16), ser("t^2", 16)], 2).map_err(fail)?;
            let ok = c.kernel_dimension == 1
                && matches!(&c.outcome, SearchOutcome::Relation(r) if proportional(r, &relation("x2 - x1^2", 2)));
            check(ok, format!("{}", c.outcome))
        }),
        case!("verify", "relsearch_exponential", |_| {
            let c = relation_search(&[ser("exp(t)", 16), ser("exp(-t)", 16)], 2).map_err(fail)?;
            let ok = matches!(&c.outcome, SearchOutcome::Relation(r) if proportional(r, &relation("x1*x2 - 1", 2)));
            check(ok, format!("{}", c.outcome))
        }),
        case!("verify", "relsearch_none", |mode| {
            let a =
                relation_search_with(&[ser("t", 12), ser("exp(t)", 12)], 3, mode).map_err(fail)?;
            let b =
                relation_search_with(&[ser("t", 16), ser("exp(t)", 16)], 4, mode).map_err(fail)?;
            let ok = a.outcome
                == SearchOutcome::NoneUpTo {
                    degree: 3,
                    truncation: 12,
                }
                && b.outcome
                    == SearchOutcome::NoneUpTo {
                        degree: 4,
                        truncation: 16,
                    };
            check(ok, format!("{}; {}", a.outcome, b.outcome))
        }),
        case!("verify", "ax_single", |mode| {
            let r = ax_check(&[ser("t", 16)], 4, mode).map_err(fail)?;
            let got = (r.td_estimate(), r.ldim, r.rank, r.slack, r.verdict);
            check(got == (2, 1, 1, 0, Verdict::Pass), format!("{got:?}"))
        }),
        case!("verify", "ax_square", |mode| {
            let r = ax_check(&[ser("t", 16), ser("t^2", 16)], 4, mode).map_err(fail)?;
            let got = (r.td_estimate(), r.ldim, r.rank, r.slack, r.verdict);
            let found =
                r.td.at
                    .dependent
                    .iter()
                    .any(|(i, rel)| *i == 1 && proportional(rel, &relation("x2 - x1^2", 2)));
            check(
                found && got == (3, 2, 1, 0, Verdict::Pass),
                format!("{got:?}"),
            )
        }),
        case!("verify", "ax_rational_multiple", |mode| {
            let r = ax_check(&[ser("t", 16), ser("2*t", 16)], 4, mode).map_err(fail)?;
            let got = (r.td_estimate(), r.ldim, r.rank, r.slack, r.verdict);
            check(got == (2, 1, 1, 0, Verdict::Pass), format!("{got:?}"))
        }),
        case!("verify", "powers_t_pt", |mode| {
            let r =
                powers_sc_check(&[pser("t", 16), pser("p*t", 16)], &[], 4, mode).map_err(fail)?;
            let got = (r.td_exp.at.value(), r.ldim_qp, r.ldim_q, r.value, r.verdict);
            check(got == (2, 1, 2, 1, Verdict::Pass), format!("{got:?}"))
        }),
        case!("verify", "powers_single", |mode| {
            let r = powers_sc_check(&[pser("t", 16)], &[], 4, mode).map_err(fail)?;
            let got = (r.td_exp.at.value(), r.ldim_qp, r.ldim_q, r.value, r.verdict);
            check(got == (1, 1, 1, 1, Verdict::Pass), format!("{got:?}"))
        }),
        case!("verify", "powers_rational_multiple", |mode| {
            let r =
                powers_sc_check(&[pser("t", 16), pser("2*t", 16)], &[], 4, mode).map_err(fail)?;
            let got = (r.td_exp.at.value(), r.ldim_qp, r.ldim_q, r.value, r.verdict);
            check(got == (1, 1, 1, 1, Verdict::Pass), format!("{got:?}"))
        }),
        case!("cli", "parse_header_and_list", |_| {
            let f = parse_instance("vars p:power q:generic; mulind: 2, 4").map_err(fail)?;
            let ok = f.header.vars.len() == 2
                && f.sections.len() == 1
                && f.sections[0].kind == SectionKind::Mulind
                && f.sections[0].texts("y") == ["2", "4"];
            check(ok, format!("{} sections", f.sections.len()))
        }),
        case!("cli", "parse_ax_section", |_| {
            let f = parse_instance("vars t:series T=8; ax: z = t, t^2; m = 1").map_err(fail)?;
            let s = &f.sections[0];
            let ok = f.header.truncation == Some(8)
                && s.texts("z") == ["t", "t^2"]
                && s.count("m") == Some(1);
            check(ok, format!("{s:?}"))
        }),
        case!("cli", "parse_rejects_non_positive", |_| {
            let r = parse_instance("mulind: -2, 3");
            check(r.is_err(), format!("{r:?}"))
        }),
        case!("cli", "run_mulind", |_| {
            let f = parse_instance("mulind: 2, 3").map_err(fail)?;
            let r = run_instance(
                &f,
                Command::Mulind,
                &Overrides::default().resolve(&f.header),
            );
            check(
                r.verdict() == Verdict::Pass && r.exit_code() == 0,
                r.verdict().to_string(),
            )
        }),
        case!("cli", "run_chain", |_| {
            let f = parse_instance("vars p:power q:generic\nchain: x = q\nchain: x = q, p*q")
                .map_err(fail)?;
            let r = run_instance(&f, Command::Chain, &Overrides::default().resolve(&f.header));
            let dims: Vec<&str> = r.checks.iter().filter_map(|c| c.get("dims")).collect();
            check(
                r.exit_code() == 0 && dims == ["1, 0", "2, 1, 0"],
                format!("{} with dims {dims:?}", r.verdict()),
            )
        }),
        case!("cli", "run_ax_degree_one", |_| {
            let f = parse_instance("vars t:series; ax: z = t, t^2").map_err(fail)?;
            let o = Overrides {
                degree: Some(1),
                ..Overrides::default()
            };
            let r = run_instance(&f, Command::Ax, &o.resolve(&f.header));
            check(
                r.verdict() == Verdict::Inconclusive && r.exit_code() == 2,
                r.verdict().to_string(),
            )
        }),
    ]
}

pub fn case_names() -> Vec<(&'static str, &'static str)> {
    cases().iter().map(|c| (c.module, c.name)).collect()
}

/// Runs every built-in case; a panic inside a case is reported as ERROR.
pub fn selftest(mode: Execution, timing: bool) -> Report {
    let all = cases();
    let checks = exec::map(&all, mode, |case| {
        let mut c = CheckReport::new("selftest", 0);
        c.field("module", case.module).field("case", case.name);
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(|| (case.run)(mode));
        if timing {
            c.elapsed = Some(start.elapsed());
        }
        match outcome {
            Ok(Ok(detail)) => {
                c.field("detail", detail);
            }
            Ok(Err(detail)) => {
                c.field("detail", detail);
                c.verdict = Verdict::Fail;
            }
            Err(_) => {
                c.field("detail", "panicked");
                c.verdict = Verdict::Error;
            }
        }
        c
    });
    Report {
        command: "selftest".into(),
        checks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_case_passes() {
        let r = selftest(Execution::Sequential, false);
        for c in &r.checks {
            assert_eq!(c.verdict, Verdict::Pass, "{:?}", c.fields);
        }
        assert!(r.checks.len() >= 80);
    }

    #[test]
    fn names_are_unique() {
        let mut names = case_names();
        let n = names.len();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), n);
    }
}
