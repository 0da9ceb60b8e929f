use super::series::TruncatedSeries;
use crate::arith::{parse_expr, Expr, Field, RatFunc, Var};
use crate::error::{Error, ParseError, Result};

/// Declared alphabets for series literals: series variables `t̄`, and
/// coefficient variables that must lie in the coefficient field.
#[derive(Debug, Clone)]
pub struct SeriesContext {
    pub series_vars: Vec<Var>,
    pub coeff_vars: Vec<Var>,
    pub order: u32,
}

impl SeriesContext {
    pub fn new(series_vars: Vec<Var>, coeff_vars: Vec<Var>, order: u32) -> Self {
        SeriesContext {
            series_vars,
            coeff_vars,
            order,
        }
    }

    fn lookup(&self, name: &str) -> Option<&Var> {
        self.series_vars
            .iter()
            .chain(&self.coeff_vars)
            .find(|v| v.name() == name)
    }
}

/// Evaluates a literal such as `exp(t + t^2) - p*log(1 + s)`.
pub fn eval_series<F: Field>(e: &Expr, ctx: &SeriesContext) -> Result<TruncatedSeries<F>> {
    let (vars, order) = (&ctx.series_vars[..], ctx.order);
    Ok(match e {
        Expr::Num(r) => TruncatedSeries::constant(vars, order, F::from_rational(r)),
        Expr::Ident { name, column } => match ctx.lookup(name) {
            Some(v) if ctx.series_vars.contains(v) => TruncatedSeries::var(vars, order, v)?,
            Some(v) => {
                let c = F::from_ratfunc(&RatFunc::var(v.clone())).ok_or_else(|| ParseError {
                    column: *column,
                    message: format!("`{name}` is not in the coefficient field"),
                })?;
                TruncatedSeries::constant(vars, order, c)
            }
            None => {
                return Err(ParseError {
                    column: *column,
                    message: format!("undeclared variable `{name}`"),
                }
                .into())
            }
        },
        Expr::Neg(a) => eval_series::<F>(a, ctx)?.neg(),
        Expr::Add(a, b) => eval_series::<F>(a, ctx)?.add(&eval_series(b, ctx)?),
        Expr::Sub(a, b) => eval_series::<F>(a, ctx)?.sub(&eval_series(b, ctx)?),
        Expr::Mul(a, b) => eval_series::<F>(a, ctx)?.mul(&eval_series(b, ctx)?),
        Expr::Div(a, b) => {
            let d = eval_series::<F>(b, ctx)?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            eval_series::<F>(a, ctx)?.mul(&d.inv()?)
        }
        Expr::Pow(a, k) => {
            let base = eval_series::<F>(a, ctx)?;
            let base = if *k < 0 { base.inv()? } else { base };
            base.pow(k.unsigned_abs() as u32)
        }
        Expr::Call { name, arg, column } => {
            let a = eval_series::<F>(arg, ctx)?;
            match name.as_str() {
                "exp" => a.exp()?,
                "log" => a.log()?,
                _ => {
                    return Err(ParseError {
                        column: *column,
                        message: format!("unknown function `{name}`"),
                    }
                    .into())
                }
            }
        }
    })
}

pub fn parse_series<F: Field>(src: &str, ctx: &SeriesContext) -> Result<TruncatedSeries<F>> {
    eval_series(&parse_expr(src)?, ctx)
}
