use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::arith::{Field, Monomial, MultiPoly, RatFunc, Var};
use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::expseries::TruncatedSeries;
use crate::linalg::{rank_any, rank_kernel, ExactMatrix};

/// The relation variable standing for the `i`-th generator (1-based).
pub fn relation_var(i: usize) -> Var {
    Var::aux(&format!("x{i}"))
}

/// Monomials of total degree `≤ d` in the given variables, ascending.
fn monomials_up_to(vars: &[Var], d: u32) -> Vec<Monomial> {
    fn rec(vars: &[Var], left: u32, acc: &mut Vec<(Var, u32)>, out: &mut Vec<Monomial>) {
        match vars.split_first() {
            None => out.push(Monomial::from_pairs(acc.clone())),
            Some((v, rest)) => {
                for e in 0..=left {
                    acc.push((v.clone(), e));
                    rec(rest, left - e, acc, out);
                    acc.pop();
                }
            }
        }
    }
    let mut out = Vec::new();
    rec(vars, d, &mut Vec::new(), &mut out);
    out.sort();
    out
}

fn binomial(n: u64, k: u64) -> u64 {
    let k = k.min(n - k.min(n));
    (0..k).fold(1u64, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Number of series coefficients of total degree `≤ c` in `m` variables.
pub fn coefficient_rows(m: usize, c: i32) -> usize {
    if c < 0 {
        0
    } else {
        binomial(m as u64 + c as u64, m as u64) as usize
    }
}

/// Number of monomials of total degree `≤ d` in `k` variables.
pub fn monomial_columns(k: usize, d: u32) -> usize {
    binomial(k as u64 + d as u64, k as u64) as usize
}

fn support<F: Field>(g: &TruncatedSeries<F>, c: i32) -> BTreeSet<Monomial> {
    g.terms()
        .map(|(m, _)| m)
        .filter(|m| !m.is_one() && m.degree() as i32 <= c)
        .cloned()
        .collect()
}

/// Monomials of degree `≤ c` in the monoid generated by `gens`, counting
/// stops once `stop` is reached.
fn reachable(gens: &BTreeSet<Monomial>, c: i32, stop: usize) -> usize {
    let mut seen: BTreeSet<Monomial> = BTreeSet::from([Monomial::one()]);
    let mut frontier = vec![Monomial::one()];
    while let Some(m) = frontier.pop() {
        if seen.len() >= stop {
            break;
        }
        for g in gens {
            let n = m.mul(g);
            if n.degree() as i32 <= c && seen.insert(n.clone()) {
                frontier.push(n);
            }
        }
    }
    seen.len()
}

/// Whether the coefficient rows can separate all monomials of degree
/// `≤ degree` in the generators: for every subset of generators, the
/// columns it spans must not outnumber the series coefficients its
/// products can reach, or spurious kernels appear. Returns `(columns,
/// rows, fits)` for the first violating subset, else for the whole set.
pub fn capacity<F: Field>(gens: &[TruncatedSeries<F>], degree: u32) -> (usize, usize, bool) {
    let c = gens.iter().map(|g| g.certified()).min().unwrap_or(0);
    let k = gens.len();
    if c < 0 {
        return (monomial_columns(k, degree), 0, false);
    }
    let supports: Vec<BTreeSet<Monomial>> = gens.iter().map(|g| support(g, c)).collect();
    let subsets: Vec<u64> = if k <= 12 {
        (1..1u64 << k).collect()
    } else {
        (0..k)
            .map(|i| 1u64 << i)
            .chain([u64::MAX >> (64 - k.min(64))])
            .collect()
    };
    for mask in subsets {
        // Constants only add genuine relations `x_i = c`.
        let members = (0..k).filter(|i| mask >> i & 1 == 1 && !supports[*i].is_empty());
        let size = members.clone().count();
        if size == 0 {
            continue;
        }
        let cols = monomial_columns(size, degree);
        let union: BTreeSet<Monomial> = members.flat_map(|i| supports[i].iter().cloned()).collect();
        let rows = reachable(&union, c, cols);
        if rows < cols {
            return (cols, rows, false);
        }
    }
    let all: BTreeSet<Monomial> = supports.into_iter().flatten().collect();
    (
        monomial_columns(k, degree),
        reachable(&all, c, usize::MAX),
        true,
    )
}

/// How a relation was confirmed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Check {
    /// The generators are exact polynomials and the relation vanishes
    /// identically.
    Symbolic,
    /// The relation vanishes up to the certified order of the generators.
    ModTruncation,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SearchOutcome {
    /// A relation in `x1..xk` with coefficients in the coefficient field,
    /// scaled to polynomial form.
    Relation(MultiPoly),
    /// No relation of degree `≤ degree` survives to order `truncation`.
    NoneUpTo { degree: u32, truncation: i32 },
    /// The kernel is nonempty but the rank was still growing with the
    /// last coefficient degree, so the rows cannot tell relations from
    /// truncation artifacts.
    Saturated { degree: u32, truncation: i32 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct RelationCertificate<F: Field> {
    pub generators: Vec<TruncatedSeries<F>>,
    pub degree_bound: u32,
    /// Certified order used for the coefficient rows.
    pub truncation: i32,
    pub columns: usize,
    pub rows: usize,
    pub kernel_dimension: usize,
    /// A basis of the verified relations, lowest leading monomial first.
    pub relations: Vec<MultiPoly>,
    /// Kernel vectors that were not accepted as relations.
    pub rejected: usize,
    /// Whether dropping the top-degree coefficient rows keeps the rank.
    pub settled: bool,
    pub check: Check,
    pub outcome: SearchOutcome,
}

impl<F: Field> RelationCertificate<F> {
    pub fn found(&self) -> bool {
        matches!(self.outcome, SearchOutcome::Relation(_))
    }
}

impl fmt::Display for SearchOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SearchOutcome::Relation(r) => write!(f, "relation {r}"),
            SearchOutcome::NoneUpTo { degree, truncation } => {
                write!(f, "none_up_to({degree}, {truncation})")
            }
            SearchOutcome::Saturated { degree, truncation } => {
                write!(f, "saturated({degree}, {truncation})")
            }
        }
    }
}

/// Polynomial form of a kernel vector: coefficients in `F` turned into
/// rational functions, then cleared of denominators.
fn relation_poly<F: Field>(columns: &[Monomial], v: &[F]) -> MultiPoly {
    let r = columns.iter().zip(v).fold(RatFunc::zero(), |acc, (m, c)| {
        if c.eq_zero() {
            acc
        } else {
            acc.add(&c.to_ratfunc().mul(&RatFunc::poly(MultiPoly::term(
                crate::arith::int(1),
                m.clone(),
            ))))
        }
    });
    r.num().clone()
}

/// Exact value of the relation on exact polynomial generators.
fn vanishes_identically<F: Field>(
    gens: &[TruncatedSeries<F>],
    columns: &[Monomial],
    v: &[F],
) -> bool {
    let values: BTreeMap<Var, RatFunc> = gens
        .iter()
        .enumerate()
        .map(|(i, g)| (relation_var(i + 1), g.to_ratfunc()))
        .collect();
    let total = columns.iter().zip(v).fold(RatFunc::zero(), |acc, (m, c)| {
        if c.eq_zero() {
            return acc;
        }
        let term = m.pairs().iter().fold(c.to_ratfunc(), |t, (x, e)| {
            t.mul(&values[x].pow(*e as i64).expect("nonnegative power"))
        });
        acc.add(&term)
    });
    total.is_zero()
}

/// Searches for polynomial relations of total degree `≤ degree` among the
/// generators, using the coefficients up to their common certified order.
pub fn relation_search<F: Field>(
    gens: &[TruncatedSeries<F>],
    degree: u32,
) -> Result<RelationCertificate<F>> {
    relation_search_with(gens, degree, Execution::Sequential)
}

pub fn relation_search_with<F: Field>(
    gens: &[TruncatedSeries<F>],
    degree: u32,
    mode: Execution,
) -> Result<RelationCertificate<F>> {
    let k = gens.len();
    let xs: Vec<Var> = (1..=k).map(relation_var).collect();
    let columns = monomials_up_to(&xs, degree);
    let series_vars: BTreeSet<Var> = gens.iter().flat_map(|g| g.vars().iter().cloned()).collect();
    let certified = gens.iter().map(|g| g.certified()).min().unwrap_or(0);
    let (need, rows, fits) = capacity(gens, degree);
    if !fits {
        return Err(Error::TruncationTooSmall {
            degree,
            columns: need,
            rows,
        });
    }
    let order = gens.iter().map(|g| g.order()).min().unwrap_or(0);
    let all_vars: Vec<Var> = series_vars.iter().cloned().collect();
    let one = TruncatedSeries::<F>::one(&all_vars, order);
    // Each column is a column of one degree less times a single generator.
    let index: HashMap<&Monomial, usize> =
        columns.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut slots: Vec<Option<TruncatedSeries<F>>> = vec![None; columns.len()];
    for d in 0..=degree {
        let level: Vec<usize> = (0..columns.len())
            .filter(|&i| columns[i].degree() == d)
            .collect();
        let computed = exec::map(&level, mode, |&i| match columns[i].pairs().first() {
            None => one.clone(),
            Some((x, _)) => {
                let g: usize = x.name()[1..].parse().expect("relation variable");
                let lower = columns[i]
                    .div(&Monomial::var(x.clone()))
                    .expect("divisible");
                slots[index[&lower]]
                    .as_ref()
                    .expect("lower degree first")
                    .mul(&gens[g - 1])
            }
        });
        for (i, v) in level.into_iter().zip(computed) {
            slots[i] = Some(v);
        }
    }
    let values: Vec<TruncatedSeries<F>> = slots
        .into_iter()
        .map(|v| v.expect("every column"))
        .collect();
    let c = values
        .iter()
        .map(|v| v.certified())
        .min()
        .unwrap_or(certified);
    let row_keys: Vec<Monomial> = values
        .iter()
        .flat_map(|v| {
            v.terms()
                .filter(|(m, _)| m.degree() as i32 <= c)
                .map(|(m, _)| m.clone())
        })
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let matrix = ExactMatrix::from_rows(
        row_keys
            .iter()
            .map(|r| values.iter().map(|v| v.coeff(r)).collect())
            .collect(),
        columns.len(),
    );
    let (rank, kernel) = rank_kernel(&matrix);
    let exact = gens.iter().all(TruncatedSeries::is_exact);
    let top = row_keys.iter().map(Monomial::degree).max().unwrap_or(0);
    let settled = kernel.is_empty() || {
        let lower: Vec<Vec<F>> = row_keys
            .iter()
            .enumerate()
            .filter(|(_, m)| m.degree() < top)
            .map(|(i, _)| matrix.row(i).to_vec())
            .collect();
        rank_any(&ExactMatrix::from_rows(lower, columns.len())) == rank
    };
    let mut relations = Vec::new();
    let mut rejected = 0;
    for v in &kernel {
        let combo = columns.iter().zip(&values).zip(v).fold(
            one.scale(&F::zero_el()),
            |acc, ((_, col), c)| {
                if c.eq_zero() {
                    acc
                } else {
                    acc.add(&col.scale(c))
                }
            },
        );
        let ok = combo.is_zero_up_to(c)
            && if exact {
                vanishes_identically(gens, &columns, v)
            } else {
                settled
            };
        if ok {
            relations.push(relation_poly(&columns, v));
        } else {
            rejected += 1;
        }
    }
    let outcome = match relations.first() {
        Some(r) => SearchOutcome::Relation(r.clone()),
        None if kernel.is_empty() => SearchOutcome::NoneUpTo {
            degree,
            truncation: c,
        },
        None => SearchOutcome::Saturated {
            degree,
            truncation: c,
        },
    };
    Ok(RelationCertificate {
        generators: gens.to_vec(),
        degree_bound: degree,
        truncation: c,
        columns: columns.len(),
        rows,
        kernel_dimension: kernel.len(),
        relations,
        rejected,
        settled,
        check: if exact {
            Check::Symbolic
        } else {
            Check::ModTruncation
        },
        outcome,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TdKind {
    /// Every relation behind the upper bound holds identically.
    CertifiedUpperBound,
    /// Some relation holds only up to the certified truncation order.
    CertifiedModTruncation,
}

/// Greedy transcendence-degree estimate.
///
/// Generators are scanned in order. A generator joins the independent set
/// when no relation with the current set exists up to the effective degree,
/// and is dependent when a verified relation exists. A saturated search is
/// retried one degree lower; a generator stays unresolved when no degree
/// down to 1 gives a clean answer.
#[derive(Debug, Clone, PartialEq)]
pub struct TdEstimate {
    pub generators: usize,
    pub degree_bound: u32,
    pub independent: Vec<usize>,
    /// Dependent generator index with the relation that shows it.
    pub dependent: Vec<(usize, MultiPoly)>,
    pub unresolved: Vec<usize>,
    /// Effective degree used at each step.
    pub degrees: Vec<u32>,
    pub kind: TdKind,
}

impl TdEstimate {
    /// Size of the independent set: no relation among it up to the bound.
    pub fn lower(&self) -> usize {
        self.independent.len()
    }

    /// Generators minus verified dependencies.
    pub fn upper(&self) -> usize {
        self.generators - self.dependent.len()
    }

    /// The estimate reported as `td_est`.
    pub fn value(&self) -> usize {
        self.upper()
    }

    pub fn is_complete(&self) -> bool {
        self.unresolved.is_empty()
    }
}

/// Largest `d ≤ cap` within [`capacity`], if at least 1.
pub fn effective_degree<F: Field>(gens: &[TruncatedSeries<F>], cap: u32) -> Option<u32> {
    (1..=cap).rev().find(|&d| capacity(gens, d).2)
}

pub fn td_estimate<F: Field>(
    gens: &[TruncatedSeries<F>],
    degree: u32,
    mode: Execution,
) -> Result<TdEstimate> {
    let mut est = TdEstimate {
        generators: gens.len(),
        degree_bound: degree,
        independent: Vec::new(),
        dependent: Vec::new(),
        unresolved: Vec::new(),
        degrees: Vec::new(),
        kind: TdKind::CertifiedUpperBound,
    };
    for i in 0..gens.len() {
        let mut idx = est.independent.clone();
        idx.push(i);
        let sub: Vec<TruncatedSeries<F>> = idx.iter().map(|&j| gens[j].clone()).collect();
        let mut found = None;
        let mut d = effective_degree(&sub, degree).unwrap_or(0);
        while d > 0 {
            let cert = relation_search_with(&sub, d, mode)?;
            if !matches!(cert.outcome, SearchOutcome::Saturated { .. }) {
                found = Some(cert);
                break;
            }
            d -= 1;
        }
        est.degrees.push(d);
        let Some(cert) = found else {
            est.unresolved.push(i);
            continue;
        };
        if let Some(r) = cert.relations.first() {
            if cert.check == Check::ModTruncation {
                est.kind = TdKind::CertifiedModTruncation;
            }
            // Rename x1..x_{|idx|} to the generators' own indices.
            let renamed = r.substitute(&|v: &Var| {
                let pos: usize = v.name()[1..].parse().ok()?;
                Some(MultiPoly::var(relation_var(idx[pos - 1] + 1)))
            });
            est.dependent.push((i, renamed));
        } else {
            est.independent.push(i);
        }
    }
    Ok(est)
}

/// Estimates at `D` and `D + 1`; stable when both are complete and agree.
#[derive(Debug, Clone, PartialEq)]
pub struct TdStability {
    pub at: TdEstimate,
    pub next: TdEstimate,
}

impl TdStability {
    pub fn is_stable(&self) -> bool {
        self.at.is_complete()
            && self.next.is_complete()
            && self.at.lower() == self.next.lower()
            && self.at.upper() == self.next.upper()
    }

    pub fn lower(&self) -> usize {
        self.at.lower().min(self.next.lower())
    }

    pub fn upper(&self) -> usize {
        self.at.upper().min(self.next.upper())
    }
}

pub fn td_stability<F: Field>(
    gens: &[TruncatedSeries<F>],
    degree: u32,
    mode: Execution,
) -> Result<TdStability> {
    Ok(TdStability {
        at: td_estimate(gens, degree, mode)?,
        next: td_estimate(gens, degree + 1, mode)?,
    })
}
