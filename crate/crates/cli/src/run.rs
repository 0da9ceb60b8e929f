//! Command dispatch: one [`CheckReport`] per instance section.

use std::time::Instant;

use expow_core::arith::{parse_ratfunc, Field, RatFunc, Rational, Var, VarKind};
use expow_core::chain::{
    chain_descent, power_inequality_check, telescoping_check, ChainCertificate,
};
use expow_core::exec::{self, Execution};
use expow_core::expseries::{
    expalg_witness, parse_series, ExpPolynomial, JacobianMode, SeriesContext, TruncatedSeries,
};
use expow_core::mulind::{factor_exponents, mult_independence, relation_product, MulIndependence};
use expow_core::subspace::{disjointness_check, ldim, CoeffField, Disjointness};
use expow_core::verify::{
    ax_check, default_truncation, et_power_check, powers_sc_check, relation_search_with,
    SearchOutcome, Step, TdEstimate, TdStability, Verdict, DEFAULT_DEGREE,
};
use expow_core::Error;

use crate::instance::{parse_coeff_field, Header, InstanceFile, Section, SectionKind};
use crate::report::{CheckReport, Report};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Mulind,
    Ldim,
    Chain,
    Ax,
    Expalg,
    Relsearch,
    VerifyPowers,
    /// Every section in the file.
    All,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Mulind => "mulind",
            Command::Ldim => "ldim",
            Command::Chain => "chain",
            Command::Ax => "ax",
            Command::Expalg => "expalg",
            Command::Relsearch => "relsearch",
            Command::VerifyPowers => "verify-powers",
            Command::All => "run",
        }
    }

    pub fn runs(self, kind: SectionKind) -> bool {
        match self {
            Command::Mulind => kind == SectionKind::Mulind,
            Command::Ldim => matches!(kind, SectionKind::Ldim | SectionKind::Disjoint),
            Command::Chain => kind == SectionKind::Chain,
            Command::Ax => kind == SectionKind::Ax,
            Command::Expalg => kind == SectionKind::Expalg,
            Command::Relsearch => kind == SectionKind::Relsearch,
            Command::VerifyPowers => kind == SectionKind::Powers,
            Command::All => true,
        }
    }
}

/// Effective parameters after flags override the file header.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Settings {
    pub degree: u32,
    pub truncation: u32,
    /// Whether `truncation` was given rather than defaulted.
    pub truncation_set: bool,
    pub seed: u64,
    pub jacobian: JacobianMode,
    pub timing: bool,
    pub workers: usize,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            degree: DEFAULT_DEGREE,
            truncation: default_truncation(DEFAULT_DEGREE),
            truncation_set: false,
            seed: 0,
            jacobian: JacobianMode::Total,
            timing: false,
            workers: 1,
        }
    }
}

/// Values given on the command line; `None` defers to the header.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Overrides {
    pub degree: Option<u32>,
    pub truncation: Option<u32>,
    pub seed: Option<u64>,
    pub jacobian: Option<JacobianMode>,
    pub timing: bool,
    pub workers: Option<usize>,
}

impl Overrides {
    /// Flags win over the header; an unset truncation defaults to `4D`.
    pub fn resolve(&self, header: &Header) -> Settings {
        let degree = self.degree.or(header.degree).unwrap_or(DEFAULT_DEGREE);
        let truncation = self.truncation.or(header.truncation);
        Settings {
            degree,
            truncation: truncation.unwrap_or(default_truncation(degree)),
            truncation_set: truncation.is_some(),
            seed: self.seed.or(header.seed).unwrap_or(0),
            jacobian: self.jacobian.unwrap_or_default(),
            timing: self.timing,
            workers: self.workers.unwrap_or(1).max(1),
        }
    }
}

impl Settings {
    fn mode(&self) -> Execution {
        Execution::from_workers(self.workers)
    }

    /// Truncation for checks that compare estimates at `D` and `D + 1`.
    /// Unless set explicitly it is sized for `D + 1`, since an estimate
    /// capped by truncation would repeat the search at `D`.
    pub fn stability_truncation(&self) -> u32 {
        if self.truncation_set {
            self.truncation
        } else {
            default_truncation(self.degree + 1)
        }
    }
}

/// Runs the sections selected by `command` in declaration order.
pub fn run_instance(file: &InstanceFile, command: Command, settings: &Settings) -> Report {
    let sections: Vec<&Section> = file
        .sections
        .iter()
        .filter(|s| command.runs(s.kind))
        .collect();
    let checks = exec::map(&sections, settings.mode(), |s| {
        run_section(s, &file.header, settings)
    });
    Report {
        command: command.name().to_string(),
        checks,
    }
}

pub fn run_section(section: &Section, header: &Header, settings: &Settings) -> CheckReport {
    let mut c = CheckReport::new(section.kind.name(), section.pos.line);
    let start = Instant::now();
    let outcome = match section.kind {
        SectionKind::Mulind => mulind(section, &mut c),
        SectionKind::Ldim => ldim_section(section, header, &mut c),
        SectionKind::Disjoint => disjoint(section, header, settings, &mut c),
        SectionKind::Chain => chain(section, header, &mut c),
        SectionKind::Ax => ax(section, header, settings, &mut c),
        SectionKind::Expalg => expalg(section, header, settings, &mut c),
        SectionKind::Relsearch => relsearch(section, header, settings, &mut c),
        SectionKind::Powers => powers(section, header, settings, &mut c),
    };
    if let Err(e) = outcome {
        c.field("error", e);
        c.verdict = Verdict::Error;
    } else if let Some(expected) = section.get("expect") {
        let want: Vec<&str> = expected.items.iter().map(|i| i.text.as_str()).collect();
        let want = want.join(", ");
        c.field("expect", &want);
        let got = c.get("outcome").unwrap_or_default().to_string();
        c.verdict = if got == want {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
    }
    if settings.timing {
        c.elapsed = Some(start.elapsed());
    }
    c
}

type Res = Result<(), Error>;

fn field_elements(section: &Section, key: &str, header: &Header) -> Result<Vec<RatFunc>, Error> {
    let vars = header.field_vars();
    section
        .texts(key)
        .iter()
        .map(|t| parse_ratfunc(t, &vars))
        .collect()
}

fn power_var(section: &Section, header: &Header) -> Var {
    match section.word("p") {
        Some(name) => Var::power(name),
        None => header.of_kind(VarKind::Power).remove(0),
    }
}

fn exponents(y: &Rational) -> Result<String, Error> {
    let v = factor_exponents(y)?;
    if v.is_empty() {
        return Ok("1".into());
    }
    let parts: Vec<String> = v
        .iter()
        .map(|(p, e)| {
            if e == 1 {
                p.to_string()
            } else {
                format!("{p}^{e}")
            }
        })
        .collect();
    Ok(parts.join("*"))
}

fn mulind(section: &Section, c: &mut CheckReport) -> Res {
    let ys: Vec<Rational> = section
        .texts("y")
        .iter()
        .map(|t| {
            Ok(parse_ratfunc(t, &[])?
                .as_constant()
                .expect("validated constant"))
        })
        .collect::<Result<_, Error>>()?;
    c.list("y", ys.iter().map(expow_core::arith::format_rational));
    c.list(
        "factors",
        ys.iter().map(exponents).collect::<Result<Vec<_>, _>>()?,
    );
    match mult_independence(&ys)? {
        MulIndependence::Independent => {
            c.field("outcome", "independent");
        }
        MulIndependence::Relation(m) => {
            let product = relation_product(&ys, &m)?;
            c.field("outcome", "relation");
            c.list("relation", &m);
            c.field("product", expow_core::arith::format_rational(&product));
            c.verdict = if product == expow_core::arith::int(1) {
                Verdict::Fail
            } else {
                Verdict::Error
            };
        }
    }
    Ok(())
}

fn coeff_field(section: &Section, header: &Header) -> CoeffField {
    match section.word("field") {
        None => CoeffField::Rationals,
        Some(text) if text.replace(' ', "") == "Q(pbar)" => CoeffField::Powers,
        Some(text) => CoeffField::of(parse_coeff_field(text, header).expect("validated field")),
    }
}

fn ldim_section(section: &Section, header: &Header, c: &mut CheckReport) -> Res {
    let field = coeff_field(section, header);
    let x = field_elements(section, "x", header)?;
    let y = field_elements(section, "y", header)?;
    let value = ldim(&field, &x, &y)?;
    c.field("field", &field).list("x", &x).list("y", &y);
    c.field("span_y", ldim(&field, &y, &[])?);
    c.field("outcome", value);
    Ok(())
}

fn disjoint(section: &Section, header: &Header, settings: &Settings, c: &mut CheckReport) -> Res {
    let k = field_elements(section, "k", header)?;
    let l = field_elements(section, "l", header)?;
    let samples = section.count("samples").unwrap_or(20) as usize;
    c.list("k", &k)
        .list("l", &l)
        .field("samples", samples)
        .field("seed", settings.seed);
    match disjointness_check(&k, &l, samples, settings.seed) {
        Disjointness::DisjointByCriterion => {
            c.field("outcome", "disjoint_by_criterion");
        }
        Disjointness::Counterexample {
            tuple,
            ldim_k,
            ldim_e,
        } => {
            c.field("outcome", "counterexample");
            c.list("tuple", &tuple)
                .field("ldim_k", ldim_k)
                .field("ldim_e", ldim_e);
            c.verdict = Verdict::Fail;
        }
        Disjointness::Inconclusive { samples } => {
            c.field("outcome", "inconclusive").field("tried", samples);
            c.verdict = Verdict::Inconclusive;
        }
    }
    Ok(())
}

fn certificate_fields(c: &mut CheckReport, cert: &ChainCertificate) {
    c.field("steps", cert.length());
    c.list("dims", &cert.dims);
    c.list("step_terms", &cert.step_terms);
    c.list("qp_step_terms", &cert.qp_step_terms);
    c.field("telescoping_lhs", cert.telescoping_lhs);
    c.field("qp_dim", cert.qp_dim);
}

fn chain(section: &Section, header: &Header, c: &mut CheckReport) -> Res {
    let p = power_var(section, header);
    c.field("p", &p);
    if section.get("a0").is_some() {
        let a0 = field_elements(section, "a0", header)?;
        c.list("a0", &a0);
        let cert = chain_descent(&a0, &p)?;
        let tele = telescoping_check(&cert)?;
        certificate_fields(c, &cert);
        c.field("telescoping_sum", tele.sum);
        if let Some(i) = tele.failing_step {
            c.field("failing_step", i);
        }
        c.list("outcome", &cert.dims);
        if !tele.holds() {
            c.verdict = Verdict::Fail;
        }
        return Ok(());
    }
    let x = field_elements(section, "x", header)?;
    let kernel = field_elements(section, "kernel", header)?;
    c.list("x", &x).list("kernel", &kernel);
    let r = power_inequality_check(&x, &kernel, &p)?;
    certificate_fields(c, &r.certificate);
    c.field("telescoping_sum", r.telescope.sum);
    for cmp in &r.comparisons {
        c.field(
            &format!("cmp.{}", cmp.label),
            format!("{} {} {}", cmp.lhs, cmp.relation.symbol(), cmp.rhs),
        );
    }
    c.field("lhs", r.lhs).field("rhs", r.rhs);
    c.list("outcome", &r.certificate.dims);
    if !r.holds() {
        c.verdict = Verdict::Fail;
    }
    Ok(())
}

fn series_vars(section: &Section, header: &Header) -> Result<Vec<Var>, Error> {
    let all = header.of_kind(VarKind::Series);
    match section.count("m") {
        None => Ok(all),
        Some(m) if m as usize <= all.len() && m > 0 => Ok(all[..m as usize].to_vec()),
        Some(m) => Err(Error::Domain(format!(
            "m = {m} but {} series variables are declared",
            all.len()
        ))),
    }
}

fn series_list<F: Field>(
    section: &Section,
    key: &str,
    ctx: &SeriesContext,
) -> Result<Vec<TruncatedSeries<F>>, Error> {
    section
        .texts(key)
        .iter()
        .map(|t| parse_series(t, ctx))
        .collect()
}

fn show_series<F: Field>(s: &TruncatedSeries<F>) -> String {
    format!("{s:#}")
}

fn td_fields(c: &mut CheckReport, prefix: &str, est: &TdEstimate) {
    c.field(&format!("{prefix}.degree"), est.degree_bound);
    c.list(
        &format!("{prefix}.independent"),
        est.independent.iter().map(|i| i + 1),
    );
    c.list(
        &format!("{prefix}.dependent"),
        est.dependent.iter().map(|(i, _)| i + 1),
    );
    for (i, rel) in &est.dependent {
        c.field(&format!("{prefix}.relation.{}", i + 1), rel);
    }
    c.list(
        &format!("{prefix}.unresolved"),
        est.unresolved.iter().map(|i| i + 1),
    );
    c.list(&format!("{prefix}.search_degrees"), &est.degrees);
    c.field(&format!("{prefix}.lower"), est.lower());
    c.field(&format!("{prefix}.upper"), est.upper());
    c.field(
        &format!("{prefix}.kind"),
        format!("{:?}", est.kind).to_lowercase(),
    );
}

fn stability_fields(c: &mut CheckReport, prefix: &str, s: &TdStability) {
    td_fields(c, &format!("{prefix}.at"), &s.at);
    td_fields(c, &format!("{prefix}.next"), &s.next);
    c.field(&format!("{prefix}.stable"), s.is_stable());
}

fn steps_fields(c: &mut CheckReport, steps: &[Step]) {
    for s in steps {
        let cmp = &s.comparison;
        c.field(
            &format!("step.{}", cmp.label),
            format!(
                "{} {} {} ({})",
                cmp.lhs,
                cmp.relation.symbol(),
                cmp.rhs,
                if s.exact { "exact" } else { "estimate" }
            ),
        );
    }
}

fn ax(section: &Section, header: &Header, settings: &Settings, c: &mut CheckReport) -> Res {
    let vars = series_vars(section, header)?;
    let t = settings.stability_truncation();
    let ctx = SeriesContext::new(vars.clone(), Vec::new(), t);
    let z: Vec<TruncatedSeries<Rational>> = series_list(section, "z", &ctx)?;
    c.list("z", z.iter().map(show_series));
    c.field("D", settings.degree).field("T", t);
    let r = ax_check(&z, settings.degree, settings.mode())?;
    c.field("n", r.n).field("m", r.m);
    stability_fields(c, "td", &r.td);
    c.field("td_estimate", r.td_estimate());
    c.field("ldim", r.ldim)
        .field("rank", r.rank)
        .field("slack", r.slack);
    c.verdict = r.verdict;
    Ok(())
}

fn expalg(section: &Section, header: &Header, settings: &Settings, c: &mut CheckReport) -> Res {
    let texts = section.texts("f");
    let n = texts.len();
    let fs: Vec<ExpPolynomial> = texts
        .iter()
        .map(|t| ExpPolynomial::parse(n, t))
        .collect::<Result<_, _>>()?;
    let ctx = SeriesContext::new(
        header.of_kind(VarKind::Series),
        Vec::new(),
        settings.truncation,
    );
    let xs: Vec<TruncatedSeries<Rational>> = series_list(section, "x", &ctx)?;
    let mode = match section.word("jacobian") {
        Some("partial") => JacobianMode::FormalPartial,
        Some(_) => JacobianMode::Total,
        None => settings.jacobian,
    };
    let w = expalg_witness(&fs, &xs, mode)?;
    c.list("f", &fs).list("x", xs.iter().map(show_series));
    c.field("T", settings.truncation);
    c.field(
        "jacobian_mode",
        if mode == JacobianMode::Total {
            "total"
        } else {
            "partial"
        },
    );
    c.list("values", w.values.iter().map(show_series));
    c.field("vanishes", w.vanishes);
    for (i, row) in w.jacobian.iter().enumerate() {
        c.list(&format!("jacobian.{}", i + 1), row.iter().map(show_series));
    }
    c.field("jacobian_det", show_series(&w.jacobian_det));
    c.field("outcome", if w.holds { "holds" } else { "fails" });
    if !w.holds {
        c.verdict = Verdict::Fail;
    }
    Ok(())
}

fn search_fields<F: Field>(
    c: &mut CheckReport,
    gens: &[TruncatedSeries<F>],
    degree: u32,
    mode: Execution,
) -> Res {
    c.list("g", gens.iter().map(show_series));
    let cert = relation_search_with(gens, degree, mode)?;
    c.field("D", cert.degree_bound);
    c.field("certified_order", cert.truncation);
    c.field("columns", cert.columns).field("rows", cert.rows);
    c.field("kernel_dimension", cert.kernel_dimension);
    c.field("rejected", cert.rejected)
        .field("settled", cert.settled);
    c.field("check", format!("{:?}", cert.check).to_lowercase());
    c.list("relations", &cert.relations);
    c.field("certificate", &cert.outcome);
    let (outcome, verdict) = match cert.outcome {
        SearchOutcome::Relation(_) => ("relation", Verdict::Pass),
        SearchOutcome::NoneUpTo { .. } => ("none_up_to", Verdict::Pass),
        SearchOutcome::Saturated { .. } => ("saturated", Verdict::Inconclusive),
    };
    c.field("outcome", outcome);
    c.verdict = verdict;
    Ok(())
}

fn relsearch(section: &Section, header: &Header, settings: &Settings, c: &mut CheckReport) -> Res {
    let degree = section.count("d").unwrap_or(settings.degree);
    let powers = header.of_kind(VarKind::Power);
    let ctx = SeriesContext::new(
        header.of_kind(VarKind::Series),
        powers.clone(),
        settings.truncation,
    );
    let uses_powers = section
        .texts("g")
        .iter()
        .any(|t| powers.iter().any(|p| mentions(t, p.name())));
    c.field("T", settings.truncation);
    if uses_powers {
        let gens: Vec<TruncatedSeries<RatFunc>> = series_list(section, "g", &ctx)?;
        search_fields(c, &gens, degree, settings.mode())
    } else {
        let gens: Vec<TruncatedSeries<Rational>> = series_list(section, "g", &ctx)?;
        search_fields(c, &gens, degree, settings.mode())
    }
}

/// Whether identifier `name` occurs in `text` as a whole word.
fn mentions(text: &str, name: &str) -> bool {
    text.split(|c: char| !c.is_ascii_alphanumeric())
        .any(|w| w == name)
}

fn powers(section: &Section, header: &Header, settings: &Settings, c: &mut CheckReport) -> Res {
    let ctx = SeriesContext::new(
        header.of_kind(VarKind::Series),
        header.of_kind(VarKind::Power),
        settings.stability_truncation(),
    );
    let kernel = field_elements(section, "kernel", header)?;
    c.field("D", settings.degree).field("T", ctx.order);
    let report = if section.get("x").is_some() {
        let p = power_var(section, header);
        let x: Vec<TruncatedSeries<RatFunc>> = series_list(section, "x", &ctx)?;
        c.field("mode", "etpower").field("p", &p);
        c.list("x", x.iter().map(show_series))
            .list("kernel", &kernel);
        let r = et_power_check(&x, &p, &kernel, settings.degree, settings.mode())?;
        c.field("n", r.n);
        c.list("chain.dims", &r.chain.certificate.dims);
        c.field("chain.lhs", r.chain.lhs)
            .field("chain.rhs", r.chain.rhs);
        steps_fields(c, &r.steps);
        c.verdict = r.verdict;
        r.powers
    } else {
        let z: Vec<TruncatedSeries<RatFunc>> = series_list(section, "z", &ctx)?;
        c.field("mode", "powers");
        c.list("z", z.iter().map(show_series))
            .list("kernel", &kernel);
        let r = powers_sc_check(&z, &kernel, settings.degree, settings.mode())?;
        c.verdict = r.verdict;
        r
    };
    stability_fields(c, "td_exp", &report.td_exp);
    td_fields(c, "td_args", &report.td_args);
    c.field("ldim_qp", report.ldim_qp)
        .field("ldim_q", report.ldim_q);
    c.field("value", report.value);
    steps_fields(c, &report.steps);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::parse_instance;

    fn run(src: &str, command: Command, o: Overrides) -> Report {
        let f = parse_instance(src).unwrap();
        run_instance(&f, command, &o.resolve(&f.header))
    }

    #[test]
    fn mulind_verdicts() {
        let r = run(
            "mulind: 2, 3\nmulind: 2, 4",
            Command::Mulind,
            Overrides::default(),
        );
        assert_eq!(r.checks[0].verdict, Verdict::Pass);
        assert_eq!(r.checks[1].verdict, Verdict::Fail);
        assert_eq!(r.checks[1].get("relation"), Some("2, -1"));
        assert_eq!(r.exit_code(), 1);
    }

    #[test]
    fn expectations_override() {
        let r = run(
            "mulind: 2, 4; expect = relation",
            Command::All,
            Overrides::default(),
        );
        assert_eq!(r.exit_code(), 0);
        let r = run(
            "vars p:power; ldim: x = 1, p, p^2; field = Q(p); expect = 2",
            Command::Ldim,
            Overrides::default(),
        );
        assert_eq!(r.checks[0].get("outcome"), Some("1"));
        assert_eq!(r.exit_code(), 1);
    }

    #[test]
    fn chain_on_x() {
        let r = run(
            "vars p:power q:generic; chain: x = q",
            Command::Chain,
            Overrides::default(),
        );
        assert_eq!(r.checks[0].verdict, Verdict::Pass);
        assert_eq!(r.checks[0].get("dims"), Some("1, 0"));
        let r = run(
            "vars p:power q:generic; chain: x = q, p*q",
            Command::Chain,
            Overrides::default(),
        );
        assert_eq!(r.checks[0].get("dims"), Some("2, 1, 0"));
    }

    #[test]
    fn small_degree_bound_is_inconclusive() {
        let o = Overrides {
            degree: Some(1),
            ..Overrides::default()
        };
        let r = run("vars t:series; ax: z = t, t^2", Command::Ax, o);
        assert_eq!(r.checks[0].verdict, Verdict::Inconclusive);
        assert_eq!(r.exit_code(), 2);
    }

    #[test]
    fn truncation_too_small_is_an_error() {
        let o = Overrides {
            truncation: Some(2),
            ..Overrides::default()
        };
        let r = run("vars t:series; relsearch: t, exp(t)", Command::Relsearch, o);
        assert_eq!(r.checks[0].verdict, Verdict::Error);
        assert_eq!(r.exit_code(), 3);
    }

    #[test]
    fn command_filters_sections() {
        let src = "vars t:series\nmulind: 2, 3\nax: t";
        assert_eq!(
            run(src, Command::Mulind, Overrides::default()).checks.len(),
            1
        );
        assert_eq!(run(src, Command::All, Overrides::default()).checks.len(), 2);
    }

    #[test]
    fn word_mentions() {
        assert!(mentions("exp(p*t)", "p"));
        assert!(!mentions("exp(p2*t)", "p"));
    }
}
