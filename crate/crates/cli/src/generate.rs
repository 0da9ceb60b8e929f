//! Seeded random instance files.
//!
//! Generated instances are emitted as instance-file text and then parsed
//! like any other file, so a reported instance can be saved and rerun.

use std::fmt::Write as _;

use expow_core::arith::{format_rational, RatFunc, Var};
use expow_core::expseries::TruncatedSeries;
use expow_core::sample::{random_a0, random_mulind_tuple, random_poly_tuple, random_tuple_in, rng};
use rand::Rng;

use crate::run::Command;

fn join<T: ToString>(items: &[T]) -> String {
    items
        .iter()
        .map(T::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

fn series(items: &[TruncatedSeries]) -> String {
    items
        .iter()
        .map(|s| format!("{s:#}"))
        .collect::<Vec<_>>()
        .join(", ")
}

/// `count` random instances for `command`, or `None` when the command has
/// no generator.
pub fn random_instances(command: Command, count: usize, seed: u64) -> Option<String> {
    let mut r = rng(seed);
    let (t, s) = (Var::series("t"), Var::series("s"));
    let (p, q) = (Var::power("p"), Var::generic("q"));
    let mut out = format!(
        "# {count} random {} instances, seed {seed}\n",
        command.name()
    );
    match command {
        Command::Mulind => {
            for _ in 0..count {
                let n = r.gen_range(1..=4);
                let (ys, _) = random_mulind_tuple(&mut r, n);
                let ys: Vec<String> = ys.iter().map(format_rational).collect();
                let _ = writeln!(out, "mulind: {}", ys.join(", "));
            }
        }
        Command::Chain => {
            out.push_str("vars p:power q:generic\n");
            for _ in 0..count {
                let mut x = random_a0(&mut r, &p, &[q.clone()], 6, 4);
                if x.is_empty() {
                    x.push(RatFunc::var(q.clone()));
                }
                let _ = write!(out, "chain: x = {}", join(&x));
                if r.gen_bool(0.5) {
                    let k = random_tuple_in(&mut r, &[q.clone()], 2);
                    let _ = write!(out, "; kernel = {}", join(&k));
                }
                out.push('\n');
            }
        }
        Command::Ax => {
            out.push_str("vars t:series s:series\n");
            for _ in 0..count {
                let m = r.gen_range(1..=2);
                let vars = [t.clone(), s.clone()];
                let z = random_poly_tuple(&mut r, &vars[..m], 16, 2, 3);
                let _ = writeln!(out, "ax: z = {}; m = {m}", series(&z));
            }
        }
        Command::VerifyPowers => {
            out.push_str("vars p:power t:series\n");
            for _ in 0..count {
                let x = random_poly_tuple(&mut r, &[t.clone()], 16, 2, 2);
                let _ = writeln!(out, "powers: z = {}, p*({:#})", series(&x), x[0]);
            }
        }
        _ => return None,
    }
    Some(out)
}
