//! Instance files: a header declaring variables and defaults, followed by
//! named sections of `key = value` entries. See `docs/instance-format.md`.

use std::collections::BTreeSet;
use std::fmt;

use expow_core::arith::{parse_expr, parse_ratfunc, Expr, Var, VarKind};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Position {
    pub line: usize,
    pub column: usize,
}

impl Position {
    fn shift(self, chars: usize) -> Position {
        Position {
            line: self.line,
            column: self.column + chars,
        }
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{pos}: {message}")]
pub struct InstanceError {
    pub pos: Position,
    pub message: String,
}

fn err<T>(pos: Position, message: impl Into<String>) -> Result<T, InstanceError> {
    Err(InstanceError {
        pos,
        message: message.into(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SectionKind {
    Mulind,
    Ldim,
    Disjoint,
    Chain,
    Ax,
    Expalg,
    Relsearch,
    Powers,
}

/// What a value is checked against at parse time.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Shape {
    /// Positive rational constants.
    PositiveRational,
    /// Rational functions in the declared power and generic variables.
    Field,
    /// Series literals with rational coefficients.
    Series,
    /// Series literals whose coefficients may involve power variables.
    PowerSeries,
    /// Exponential polynomials in `x1..xn, y1..yn`.
    ExpPoly,
    /// A declared power variable.
    PowerVar,
    /// `Q`, `Q(pbar)` or `Q(p, …)` over declared power variables.
    CoeffField,
    Count,
    Words(&'static [&'static str]),
    Counts,
}

impl SectionKind {
    pub const ALL: [SectionKind; 8] = [
        SectionKind::Mulind,
        SectionKind::Ldim,
        SectionKind::Disjoint,
        SectionKind::Chain,
        SectionKind::Ax,
        SectionKind::Expalg,
        SectionKind::Relsearch,
        SectionKind::Powers,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SectionKind::Mulind => "mulind",
            SectionKind::Ldim => "ldim",
            SectionKind::Disjoint => "disjoint",
            SectionKind::Chain => "chain",
            SectionKind::Ax => "ax",
            SectionKind::Expalg => "expalg",
            SectionKind::Relsearch => "relsearch",
            SectionKind::Powers => "powers",
        }
    }

    fn from_name(s: &str) -> Option<SectionKind> {
        SectionKind::ALL.into_iter().find(|k| k.name() == s)
    }

    /// Key used when a section body is a bare list.
    fn default_key(self) -> &'static str {
        match self {
            SectionKind::Mulind => "y",
            SectionKind::Ldim | SectionKind::Chain | SectionKind::Expalg => "x",
            SectionKind::Disjoint => "k",
            SectionKind::Ax | SectionKind::Powers => "z",
            SectionKind::Relsearch => "g",
        }
    }

    fn keys(self) -> &'static [(&'static str, Shape)] {
        use Shape::*;
        match self {
            SectionKind::Mulind => &[
                ("y", PositiveRational),
                ("expect", Words(&["independent", "relation"])),
            ],
            SectionKind::Ldim => &[
                ("x", Field),
                ("y", Field),
                ("field", CoeffField),
                ("expect", Count),
            ],
            SectionKind::Disjoint => &[
                ("k", Field),
                ("l", Field),
                ("samples", Count),
                (
                    "expect",
                    Words(&["disjoint_by_criterion", "counterexample", "inconclusive"]),
                ),
            ],
            SectionKind::Chain => &[
                ("x", Field),
                ("a0", Field),
                ("kernel", Field),
                ("p", PowerVar),
                ("expect", Counts),
            ],
            SectionKind::Ax => &[("z", Series), ("m", Count)],
            SectionKind::Expalg => &[
                ("f", ExpPoly),
                ("x", Series),
                ("jacobian", Words(&["total", "partial"])),
                ("expect", Words(&["holds", "fails"])),
            ],
            SectionKind::Relsearch => &[
                ("g", PowerSeries),
                ("d", Count),
                ("expect", Words(&["relation", "none_up_to", "saturated"])),
            ],
            SectionKind::Powers => &[
                ("z", PowerSeries),
                ("x", PowerSeries),
                ("kernel", Field),
                ("p", PowerVar),
            ],
        }
    }

    fn required(self) -> &'static [&'static [&'static str]] {
        match self {
            SectionKind::Mulind => &[&["y"]],
            SectionKind::Ldim => &[&["x"]],
            SectionKind::Disjoint => &[&["k"], &["l"]],
            SectionKind::Chain => &[&["x", "a0"]],
            SectionKind::Ax => &[&["z"]],
            SectionKind::Expalg => &[&["f"], &["x"]],
            SectionKind::Relsearch => &[&["g"]],
            SectionKind::Powers => &[&["z", "x"]],
        }
    }
}

impl fmt::Display for SectionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One comma-separated value with its position in the file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Item {
    pub text: String,
    pub pos: Position,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entry {
    pub key: String,
    pub items: Vec<Item>,
    pub pos: Position,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Section {
    pub kind: SectionKind,
    pub pos: Position,
    pub entries: Vec<Entry>,
}

impl Section {
    pub fn get(&self, key: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.key == key)
    }

    pub fn texts(&self, key: &str) -> Vec<&str> {
        self.get(key)
            .map(|e| e.items.iter().map(|i| i.text.as_str()).collect())
            .unwrap_or_default()
    }

    pub fn word(&self, key: &str) -> Option<&str> {
        self.get(key)
            .and_then(|e| e.items.first())
            .map(|i| i.text.as_str())
    }

    pub fn count(&self, key: &str) -> Option<u32> {
        self.word(key).map(|w| w.parse().expect("validated count"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Header {
    pub version: u32,
    pub vars: Vec<Var>,
    pub truncation: Option<u32>,
    pub degree: Option<u32>,
    pub seed: Option<u64>,
}

impl Header {
    pub fn of_kind(&self, kind: VarKind) -> Vec<Var> {
        self.vars
            .iter()
            .filter(|v| v.kind() == kind)
            .cloned()
            .collect()
    }

    /// Power and generic variables, the alphabet of field elements.
    pub fn field_vars(&self) -> Vec<Var> {
        self.vars
            .iter()
            .filter(|v| v.kind() != VarKind::Series)
            .cloned()
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceFile {
    pub header: Header,
    pub sections: Vec<Section>,
}

/// A clause with the position of its first character.
struct Clause<'a> {
    text: &'a str,
    pos: Position,
}

fn clauses(text: &str) -> Vec<Clause<'_>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = match line.find('#') {
            Some(c) => &line[..c],
            None => line,
        };
        let mut start = 0;
        for piece in line.split(';') {
            let lead = piece.len() - piece.trim_start().len();
            let body = piece.trim();
            if !body.is_empty() {
                out.push(Clause {
                    text: body,
                    pos: Position {
                        line: i + 1,
                        column: line[..start + lead].chars().count() + 1,
                    },
                });
            }
            start += piece.len() + 1;
        }
    }
    out
}

fn is_ident(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_ascii_lowercase())
        && cs.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit())
}

/// Splits `s` at commas outside parentheses, trimming each piece.
fn split_items(s: &str, pos: Position) -> Result<Vec<Item>, InstanceError> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut items = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    let push = |items: &mut Vec<Item>, a: usize, b: usize| -> Result<(), InstanceError> {
        let piece = &s[a..b];
        let lead = piece.len() - piece.trim_start().len();
        let at = pos.shift(s[..a + lead].chars().count());
        if piece.trim().is_empty() {
            return err(at, "empty list item");
        }
        items.push(Item {
            text: piece.trim().to_string(),
            pos: at,
        });
        Ok(())
    };
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                push(&mut items, start, i)?;
                start = i + 1;
            }
            _ => {}
        }
    }
    push(&mut items, start, s.len())?;
    Ok(items)
}

/// `key = value` with the value's offset, when the clause has that shape.
fn split_assignment(s: &str) -> Option<(&str, &str, usize)> {
    let eq = s.find('=')?;
    let key = s[..eq].trim();
    if !is_ident(key) {
        return None;
    }
    let rest = &s[eq + 1..];
    let lead = rest.len() - rest.trim_start().len();
    Some((key, rest.trim(), eq + 1 + lead))
}

const RESERVED: [&str; 3] = ["exp", "log", "pbar"];

fn parse_vars(clause: &Clause<'_>, header: &mut Header) -> Result<(), InstanceError> {
    let mut offset = "vars".len();
    for tok in clause.text["vars".len()..].split_whitespace() {
        let at = clause.text[offset..].find(tok).expect("token") + offset;
        offset = at + tok.len();
        let pos = clause.pos.shift(clause.text[..at].chars().count());
        if let Some((name, value)) = tok.split_once('=') {
            let n: u64 = match value.parse() {
                Ok(n) => n,
                Err(_) => return err(pos, format!("`{value}` is not a non-negative integer")),
            };
            let small = || {
                u32::try_from(n).map_err(|_| InstanceError {
                    pos,
                    message: format!("{name} = {n} is out of range"),
                })
            };
            match name {
                "T" => header.truncation = Some(small()?),
                "D" if n == 0 => return err(pos, "the degree bound must be positive"),
                "D" => header.degree = Some(small()?),
                "seed" => header.seed = Some(n),
                _ => {
                    return err(
                        pos,
                        format!("unknown setting `{name}`; expected T, D or seed"),
                    )
                }
            }
            continue;
        }
        let Some((name, kind)) = tok.split_once(':') else {
            return err(
                pos,
                format!("expected `name:kind` or a setting, found `{tok}`"),
            );
        };
        if !is_ident(name) {
            return err(pos, format!("`{name}` is not a valid variable name"));
        }
        if RESERVED.contains(&name) {
            return err(pos, format!("`{name}` is reserved"));
        }
        let kind = match kind {
            "power" => VarKind::Power,
            "generic" => VarKind::Generic,
            "series" => VarKind::Series,
            _ => {
                return err(
                    pos,
                    format!("unknown alphabet `{kind}`; expected power, generic or series"),
                )
            }
        };
        if let Some(prev) = header.vars.iter().find(|v| v.name() == name) {
            return err(
                pos,
                format!(
                    "alphabet collision: `{name}` is already declared as {}",
                    prev.kind().label()
                ),
            );
        }
        header.vars.push(Var::new(kind, name));
    }
    Ok(())
}

fn check_idents(
    e: &Expr,
    allowed: &dyn Fn(&str) -> bool,
    calls: bool,
    item: &Item,
) -> Result<(), InstanceError> {
    match e {
        Expr::Num(_) => Ok(()),
        Expr::Ident { name, column } => {
            if allowed(name) {
                Ok(())
            } else {
                err(
                    item.pos.shift(column - 1),
                    format!("undeclared variable `{name}`"),
                )
            }
        }
        Expr::Neg(a) | Expr::Pow(a, _) => check_idents(a, allowed, calls, item),
        Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
            check_idents(a, allowed, calls, item)?;
            check_idents(b, allowed, calls, item)
        }
        Expr::Call { name, arg, column } => {
            let at = item.pos.shift(column - 1);
            if !calls {
                return err(
                    at,
                    format!("`{name}(…)` is only allowed in series literals"),
                );
            }
            if name != "exp" && name != "log" {
                return err(
                    at,
                    format!("unknown function `{name}`; expected exp or log"),
                );
            }
            check_idents(arg, allowed, calls, item)
        }
    }
}

fn parse_error_at(item: &Item, e: expow_core::Error) -> InstanceError {
    match e {
        expow_core::Error::Parse(p) => InstanceError {
            pos: item.pos.shift(p.column - 1),
            message: p.message,
        },
        other => InstanceError {
            pos: item.pos,
            message: other.to_string(),
        },
    }
}

fn validate_entry(
    kind: SectionKind,
    entry: &Entry,
    shape: Shape,
    header: &Header,
    arity: usize,
) -> Result<(), InstanceError> {
    let single = matches!(
        shape,
        Shape::PowerVar | Shape::CoeffField | Shape::Count | Shape::Words(_)
    );
    if single && entry.items.len() != 1 {
        return err(
            entry.pos,
            format!("`{}` takes exactly one value", entry.key),
        );
    }
    let declared = |k: &[VarKind]| -> BTreeSet<String> {
        header
            .vars
            .iter()
            .filter(|v| k.contains(&v.kind()))
            .map(|v| v.name().to_string())
            .collect()
    };
    for item in &entry.items {
        let text = item.text.as_str();
        match shape {
            Shape::PositiveRational => {
                let r = parse_ratfunc(text, &[]).map_err(|e| parse_error_at(item, e))?;
                match r.as_constant() {
                    Some(c) if c > num_zero() => {}
                    Some(_) => {
                        return err(item.pos, format!("`{text}` is not a positive rational"))
                    }
                    None => return err(item.pos, format!("`{text}` is not a rational constant")),
                }
            }
            Shape::Field | Shape::Series | Shape::PowerSeries | Shape::ExpPoly => {
                let e = parse_expr(text).map_err(|p| parse_error_at(item, p.into()))?;
                let names: BTreeSet<String> = match shape {
                    Shape::Field => declared(&[VarKind::Power, VarKind::Generic]),
                    Shape::Series => declared(&[VarKind::Series]),
                    Shape::PowerSeries => declared(&[VarKind::Series, VarKind::Power]),
                    _ => (1..=arity)
                        .flat_map(|i| [format!("x{i}"), format!("y{i}")])
                        .collect(),
                };
                let calls = matches!(shape, Shape::Series | Shape::PowerSeries);
                check_idents(&e, &|n| names.contains(n), calls, item)?;
            }
            Shape::PowerVar => {
                if !declared(&[VarKind::Power]).contains(text) {
                    return err(
                        item.pos,
                        format!("`{text}` is not a declared power variable"),
                    );
                }
            }
            Shape::CoeffField => {
                parse_coeff_field(text, header).map_err(|m| InstanceError {
                    pos: item.pos,
                    message: m,
                })?;
            }
            Shape::Count => {
                if text.parse::<u32>().is_err() {
                    return err(item.pos, format!("`{text}` is not a non-negative integer"));
                }
            }
            Shape::Counts => {
                if text.parse::<usize>().is_err() {
                    return err(item.pos, format!("`{text}` is not a non-negative integer"));
                }
            }
            Shape::Words(words) => {
                if !words.contains(&text) {
                    return err(
                        item.pos,
                        format!("`{text}` is not one of {} for `{kind}`", words.join(", ")),
                    );
                }
            }
        }
    }
    Ok(())
}

fn num_zero() -> expow_core::arith::Rational {
    expow_core::arith::int(0)
}

/// A coefficient field: `Q`, `Q(pbar)` for all power variables, or
/// `Q(p, …)` naming declared power variables.
pub fn parse_coeff_field(text: &str, header: &Header) -> Result<Vec<Var>, String> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact == "Q" {
        return Ok(Vec::new());
    }
    let inner = compact
        .strip_prefix("Q(")
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| format!("`{text}` is not a coefficient field; expected Q or Q(p, …)"))?;
    let powers = header.of_kind(VarKind::Power);
    if inner == "pbar" {
        return if powers.is_empty() {
            Err("Q(pbar) needs at least one declared power variable".into())
        } else {
            Ok(powers)
        };
    }
    inner
        .split(',')
        .map(|n| {
            powers
                .iter()
                .find(|v| v.name() == n)
                .cloned()
                .ok_or_else(|| format!("`{n}` is not a declared power variable"))
        })
        .collect()
}

fn validate_section(section: &Section, header: &Header) -> Result<(), InstanceError> {
    let kind = section.kind;
    for group in kind.required() {
        let present: Vec<&str> = group
            .iter()
            .copied()
            .filter(|k| section.get(k).is_some())
            .collect();
        match present.len() {
            1 => {}
            0 if group.len() == 1 => {
                return err(section.pos, format!("`{kind}` needs `{}`", group[0]))
            }
            0 => {
                return err(
                    section.pos,
                    format!("`{kind}` needs one of {}", group.join(", ")),
                )
            }
            _ => {
                return err(
                    section.pos,
                    format!("`{kind}` takes only one of {}", present.join(", ")),
                )
            }
        }
    }
    let arity = section.get("f").map_or(0, |e| e.items.len());
    for entry in &section.entries {
        let shape = kind
            .keys()
            .iter()
            .find(|(k, _)| *k == entry.key)
            .map(|(_, s)| *s)
            .expect("keys checked on insertion");
        validate_entry(kind, entry, shape, header, arity)?;
    }
    if kind == SectionKind::Expalg {
        let n = section.get("x").map_or(0, |e| e.items.len());
        if n != arity {
            return err(
                section.pos,
                format!("expalg has {arity} equations but {n} points"),
            );
        }
    }
    let needs_p = match kind {
        SectionKind::Chain => true,
        SectionKind::Powers => section.get("x").is_some(),
        _ => false,
    };
    if needs_p && section.get("p").is_none() && header.of_kind(VarKind::Power).len() != 1 {
        return err(
            section.pos,
            format!("`{kind}` needs `p = …` unless exactly one power variable is declared"),
        );
    }
    Ok(())
}

/// Parses and validates an instance file.
pub fn parse_instance(text: &str) -> Result<InstanceFile, InstanceError> {
    let mut header = Header {
        version: FORMAT_VERSION,
        vars: Vec::new(),
        truncation: None,
        degree: None,
        seed: None,
    };
    let mut sections: Vec<Section> = Vec::new();
    let mut seen_section = false;
    for clause in clauses(text) {
        let word_end = clause
            .text
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
            .unwrap_or(clause.text.len());
        let word = &clause.text[..word_end];
        if word == "version" {
            let v = clause.text[word_end..].trim();
            match v.parse::<u32>() {
                Ok(FORMAT_VERSION) => header.version = FORMAT_VERSION,
                _ => {
                    return err(
                        clause.pos,
                        format!("unsupported format version `{v}`; expected {FORMAT_VERSION}"),
                    )
                }
            }
            continue;
        }
        if word == "vars" {
            if seen_section {
                return err(
                    clause.pos,
                    "variable declarations must precede all sections",
                );
            }
            parse_vars(&clause, &mut header)?;
            continue;
        }
        let after = clause.text[word_end..].trim_start();
        if let Some(body) = after.strip_prefix(':') {
            let Some(kind) = SectionKind::from_name(word) else {
                let known: Vec<&str> = SectionKind::ALL.iter().map(|k| k.name()).collect();
                return err(
                    clause.pos,
                    format!(
                        "unknown section `{word}`; expected one of {}",
                        known.join(", ")
                    ),
                );
            };
            seen_section = true;
            sections.push(Section {
                kind,
                pos: clause.pos,
                entries: Vec::new(),
            });
            let offset = clause.text.len() - body.len();
            let lead = body.len() - body.trim_start().len();
            let body = body.trim();
            if body.is_empty() {
                continue;
            }
            let pos = clause
                .pos
                .shift(clause.text[..offset + lead].chars().count());
            let section = sections.last_mut().expect("just pushed");
            match split_assignment(body) {
                Some((key, value, at)) => add_entry(
                    section,
                    key,
                    value,
                    pos,
                    pos.shift(body[..at].chars().count()),
                )?,
                None => add_entry(section, kind.default_key(), body, pos, pos)?,
            }
            continue;
        }
        if let Some((key, value, at)) = split_assignment(clause.text) {
            let Some(section) = sections.last_mut() else {
                return err(
                    clause.pos,
                    format!("`{key} = …` appears before any section"),
                );
            };
            let vpos = clause.pos.shift(clause.text[..at].chars().count());
            add_entry(section, key, value, clause.pos, vpos)?;
            continue;
        }
        return err(clause.pos, format!("cannot parse `{}`", clause.text));
    }
    for s in &sections {
        validate_section(s, &header)?;
    }
    Ok(InstanceFile { header, sections })
}

fn add_entry(
    section: &mut Section,
    key: &str,
    value: &str,
    pos: Position,
    value_pos: Position,
) -> Result<(), InstanceError> {
    let kind = section.kind;
    if !kind.keys().iter().any(|(k, _)| *k == key) {
        let known: Vec<&str> = kind.keys().iter().map(|(k, _)| *k).collect();
        return err(
            pos,
            format!(
                "`{kind}` has no key `{key}`; expected one of {}",
                known.join(", ")
            ),
        );
    }
    if section.get(key).is_some() {
        return err(pos, format!("duplicate key `{key}`"));
    }
    section.entries.push(Entry {
        key: key.to_string(),
        items: split_items(value, value_pos)?,
        pos,
    });
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_and_bare_list() {
        let f = parse_instance("vars p:power q:generic; mulind: 2, 4").unwrap();
        assert_eq!(f.header.vars, vec![Var::power("p"), Var::generic("q")]);
        assert_eq!(f.sections.len(), 1);
        assert_eq!(f.sections[0].kind, SectionKind::Mulind);
        assert_eq!(f.sections[0].texts("y"), vec!["2", "4"]);
    }

    #[test]
    fn continuation_entries() {
        let f = parse_instance("vars t:series T=8; ax: z = t, t^2; m = 1").unwrap();
        assert_eq!(f.header.truncation, Some(8));
        let s = &f.sections[0];
        assert_eq!(s.texts("z"), vec!["t", "t^2"]);
        assert_eq!(s.count("m"), Some(1));
    }

    #[test]
    fn commas_inside_parentheses_stay_together() {
        let f = parse_instance("vars t:series\nrelsearch: exp(t + t^2), t").unwrap();
        assert_eq!(f.sections[0].texts("g"), vec!["exp(t + t^2)", "t"]);
    }

    #[test]
    fn non_positive_mulind_input() {
        let e = parse_instance("mulind: -2, 3").unwrap_err();
        assert_eq!(e.pos, Position { line: 1, column: 9 });
        assert!(e.message.contains("positive"));
    }

    #[test]
    fn undeclared_variable_points_at_the_identifier() {
        let e = parse_instance("vars p:power\nldim: x = 1, p*q").unwrap_err();
        assert_eq!(
            e.pos,
            Position {
                line: 2,
                column: 16
            }
        );
        assert!(e.message.contains("`q`"));
    }

    #[test]
    fn alphabet_collision() {
        let e = parse_instance("vars p:power p:series").unwrap_err();
        assert_eq!(e.pos.column, 14);
        assert!(e.message.contains("collision"));
    }

    #[test]
    fn syntax_error_column() {
        let e = parse_instance("vars t:series\n# comment\nax: z = t + * t").unwrap_err();
        assert_eq!(e.pos.line, 3);
        assert_eq!(e.pos.column, 13);
    }

    #[test]
    fn structural_errors() {
        assert!(parse_instance("m = 1").is_err());
        assert!(parse_instance("frob: 1").is_err());
        assert!(parse_instance("mulind: 2; y = 3").is_err());
        assert!(parse_instance("vars t:series; ax: m = 1").is_err());
        assert!(parse_instance("vars p:power; ldim: x = exp(p)").is_err());
        assert!(parse_instance("vars p:power r:power q:generic; chain: x = q").is_err());
        assert!(parse_instance("version 2").is_err());
        assert!(parse_instance("vars t:series; expalg: f = y1 - 1; x = 0, 0").is_err());
    }

    #[test]
    fn coefficient_fields() {
        let f = parse_instance("vars p:power r:power").unwrap();
        assert_eq!(parse_coeff_field("Q", &f.header).unwrap(), vec![]);
        assert_eq!(parse_coeff_field("Q(pbar)", &f.header).unwrap().len(), 2);
        assert_eq!(
            parse_coeff_field("Q(r)", &f.header).unwrap(),
            vec![Var::power("r")]
        );
        assert!(parse_coeff_field("Q(q)", &f.header).is_err());
    }
}
