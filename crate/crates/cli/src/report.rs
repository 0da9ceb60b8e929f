//! Check reports and their two renderings.
//!
//! The machine format is one `key=value` record per line:
//!
//! ```text
//! schema=expow-report/1
//! check.1.kind=ax
//! check.1.verdict=PASS
//! check.1.ldim=1
//! summary.verdict=PASS
//! summary.exit=0
//! ```
//!
//! Values never contain newlines. Lists are joined with `, ` and reparse
//! with the instance grammar. The human format prints the same fields.

use std::fmt::Write as _;
use std::time::Duration;

use expow_core::verify::Verdict;

pub const SCHEMA: &str = "expow-report/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Human,
    Machine,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport {
    pub kind: String,
    /// Source line of the section, or zero for built-in checks.
    pub line: usize,
    pub verdict: Verdict,
    pub fields: Vec<(String, String)>,
    pub elapsed: Option<Duration>,
}

impl CheckReport {
    pub fn new(kind: impl Into<String>, line: usize) -> Self {
        CheckReport {
            kind: kind.into(),
            line,
            verdict: Verdict::Pass,
            fields: Vec::new(),
            elapsed: None,
        }
    }

    pub fn field(&mut self, key: &str, value: impl ToString) -> &mut Self {
        let v = value.to_string().replace('\n', " ");
        self.fields.push((key.to_string(), v));
        self
    }

    pub fn list<T: ToString>(
        &mut self,
        key: &str,
        values: impl IntoIterator<Item = T>,
    ) -> &mut Self {
        let joined: Vec<String> = values.into_iter().map(|v| v.to_string()).collect();
        self.field(key, joined.join(", "))
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.fields
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn degrade(&mut self, v: Verdict) {
        self.verdict = self.verdict.combine(v);
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Report {
    pub command: String,
    pub checks: Vec<CheckReport>,
}

impl Report {
    pub fn verdict(&self) -> Verdict {
        self.checks
            .iter()
            .fold(Verdict::Pass, |acc, c| acc.combine(c.verdict))
    }

    pub fn exit_code(&self) -> i32 {
        self.verdict().exit_code()
    }

    fn count(&self, v: Verdict) -> usize {
        self.checks.iter().filter(|c| c.verdict == v).count()
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Human => self.human(),
            Format::Machine => self.machine(),
        }
    }

    pub fn machine(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "schema={SCHEMA}");
        let _ = writeln!(out, "command={}", self.command);
        for (i, c) in self.checks.iter().enumerate() {
            let n = i + 1;
            let _ = writeln!(out, "check.{n}.kind={}", c.kind);
            if c.line > 0 {
                let _ = writeln!(out, "check.{n}.line={}", c.line);
            }
            let _ = writeln!(out, "check.{n}.verdict={}", c.verdict);
            for (k, v) in &c.fields {
                let _ = writeln!(out, "check.{n}.{k}={v}");
            }
            if let Some(d) = c.elapsed {
                let _ = writeln!(out, "check.{n}.elapsed_us={}", d.as_micros());
            }
        }
        let _ = writeln!(out, "summary.checks={}", self.checks.len());
        for v in VERDICTS {
            let _ = writeln!(
                out,
                "summary.{}={}",
                v.label().to_lowercase(),
                self.count(v)
            );
        }
        let _ = writeln!(out, "summary.verdict={}", self.verdict());
        let _ = writeln!(out, "summary.exit={}", self.exit_code());
        out
    }

    pub fn human(&self) -> String {
        let mut out = String::new();
        for (i, c) in self.checks.iter().enumerate() {
            let at = if c.line > 0 {
                format!(" (line {})", c.line)
            } else {
                String::new()
            };
            let _ = writeln!(out, "[{}] {}{at}: {}", i + 1, c.kind, c.verdict);
            let width = c.fields.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
            for (k, v) in &c.fields {
                let _ = writeln!(out, "    {k:<width$}  {v}");
            }
            if let Some(d) = c.elapsed {
                let _ = writeln!(
                    out,
                    "    {:<width$}  {:.3} ms",
                    "elapsed",
                    d.as_secs_f64() * 1e3
                );
            }
        }
        let counts: Vec<String> = VERDICTS
            .iter()
            .filter(|v| self.count(**v) > 0)
            .map(|v| format!("{} {}", self.count(*v), v))
            .collect();
        let _ = writeln!(
            out,
            "{}: {} checks ({}), verdict {}, exit {}",
            self.command,
            self.checks.len(),
            if counts.is_empty() {
                "none".to_string()
            } else {
                counts.join(", ")
            },
            self.verdict(),
            self.exit_code()
        );
        out
    }
}

const VERDICTS: [Verdict; 4] = [
    Verdict::Pass,
    Verdict::Fail,
    Verdict::Inconclusive,
    Verdict::Error,
];

/// Reads a machine report back into `(key, value)` records.
pub fn parse_machine(text: &str) -> Vec<(String, String)> {
    text.lines()
        .filter_map(|l| l.split_once('='))
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect()
}
