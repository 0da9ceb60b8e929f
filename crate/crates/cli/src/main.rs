use std::io::{self, Read as _, Write as _};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use expow_core::exec::{parallel_available, Execution};
use expow_core::expseries::JacobianMode;

use expow_cli::generate::random_instances;
use expow_cli::instance::parse_instance;
use expow_cli::report::{Format, Report};
use expow_cli::run::{run_instance, Command, Overrides};
use expow_cli::selftest::selftest;

const USAGE_EXIT: u8 = 3;

/// Exact checks of transcendence inequalities for exponentials and powers.
///
/// Exit status: 0 PASS, 1 FAIL, 2 INCONCLUSIVE, 3 ERROR or usage error.
#[derive(Parser)]
#[command(name = "expow", version)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Multiplicative independence of positive rationals.
    Mulind(Common),
    /// Relative linear dimension and linear disjointness.
    Ldim(Common),
    /// Descent chains and the power inequality for x̄ over ℚ(p).
    Chain(Common),
    /// Ax's inequality on truncated power series.
    Ax(Common),
    /// Nonsingular zeros of exponential-polynomial systems.
    Expalg(Common),
    /// Bounded-degree polynomial relation search.
    Relsearch(Common),
    /// The Schanuel-type inequality for raising to a generic power.
    VerifyPowers(Common),
    /// Every section of the file, whatever its kind.
    Run(Common),
    /// The built-in golden examples.
    Selftest(Output),
}

#[derive(Args)]
struct Output {
    /// Report format.
    #[arg(long, value_enum, default_value_t = FormatArg::Human)]
    format: FormatArg,
    /// Worker threads; more than one runs independent checks in parallel.
    #[arg(long, value_name = "N", value_parser = clap::value_parser!(u32).range(1..))]
    parallel: Option<u32>,
    /// Add per-check wall-clock time to the report.
    #[arg(long)]
    timing: bool,
}

#[derive(Args)]
struct Common {
    /// Instance file, or `-` for standard input.
    #[arg(value_name = "FILE", required_unless_present = "random")]
    file: Option<PathBuf>,
    /// Degree bound D for relation searches.
    #[arg(short = 'D', long, value_name = "D", value_parser = clap::value_parser!(u32).range(1..))]
    degree_bound: Option<u32>,
    /// Series truncation order T; defaults to 4D.
    #[arg(short = 'T', long, value_name = "T")]
    truncation: Option<u32>,
    /// Seed for sampled checks and generated instances.
    #[arg(long)]
    seed: Option<u64>,
    /// Jacobian used by `expalg` witnesses.
    #[arg(long, value_enum)]
    jacobian: Option<JacobianArg>,
    /// Generate N random instances instead of reading FILE.
    #[arg(long, value_name = "N", conflicts_with = "file")]
    random: Option<usize>,
    /// With --random, print the generated instance file and exit.
    #[arg(long, requires = "random")]
    emit_instance: bool,
    #[command(flatten)]
    output: Output,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Human,
    Machine,
}

#[derive(Clone, Copy, ValueEnum)]
enum JacobianArg {
    /// ∂f/∂X + ∂f/∂Y · e^x.
    Total,
    /// ∂f/∂X only.
    Partial,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Human => Format::Human,
            FormatArg::Machine => Format::Machine,
        }
    }
}

impl From<JacobianArg> for JacobianMode {
    fn from(j: JacobianArg) -> Self {
        match j {
            JacobianArg::Total => JacobianMode::Total,
            JacobianArg::Partial => JacobianMode::FormalPartial,
        }
    }
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("expow: {msg}");
    ExitCode::from(USAGE_EXIT)
}

fn workers(output: &Output) -> usize {
    let n = output.parallel.unwrap_or(1) as usize;
    if n > 1 && !parallel_available() {
        eprintln!("expow: built without the `parallel` feature; running sequentially");
    }
    n
}

/// Runs `f` on a pool of `n` threads when parallel execution is enabled.
fn with_pool<R: Send>(n: usize, f: impl FnOnce() -> R + Send) -> R {
    #[cfg(feature = "parallel")]
    if n > 1 {
        if let Ok(pool) = rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            return pool.install(f);
        }
    }
    let _ = n;
    f()
}

fn emit(report: &Report, format: Format) -> ExitCode {
    let mut out = io::stdout().lock();
    let _ = out.write_all(report.render(format).as_bytes());
    ExitCode::from(report.exit_code() as u8)
}

fn read_source(file: &PathBuf) -> io::Result<(String, String)> {
    if file.as_os_str() == "-" {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text)?;
        Ok(("<stdin>".into(), text))
    } else {
        Ok((file.display().to_string(), std::fs::read_to_string(file)?))
    }
}

fn run_command(command: Command, args: Common) -> ExitCode {
    let n = workers(&args.output);
    let (name, text) = match (&args.random, &args.file) {
        (Some(count), _) => {
            let seed = args.seed.unwrap_or(0);
            match random_instances(command, *count, seed) {
                Some(t) => ("<random>".to_string(), t),
                None => {
                    return usage(format!(
                        "`{}` has no random instance generator",
                        command.name()
                    ))
                }
            }
        }
        (None, Some(file)) => match read_source(file) {
            Ok(v) => v,
            Err(e) => return usage(format!("{}: {e}", file.display())),
        },
        (None, None) => return usage("no instance file given"),
    };
    if args.emit_instance {
        print!("{text}");
        return ExitCode::SUCCESS;
    }
    let file = match parse_instance(&text) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("{name}:{}:{}: {}", e.pos.line, e.pos.column, e.message);
            return ExitCode::from(USAGE_EXIT);
        }
    };
    if !file.sections.iter().any(|s| command.runs(s.kind)) {
        return usage(format!("{name}: no sections for `{}`", command.name()));
    }
    let overrides = Overrides {
        degree: args.degree_bound,
        truncation: args.truncation,
        seed: args.seed,
        jacobian: args.jacobian.map(Into::into),
        timing: args.output.timing,
        workers: Some(n),
    };
    let settings = overrides.resolve(&file.header);
    let report = with_pool(n, || run_instance(&file, command, &settings));
    emit(&report, args.output.format.into())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(USAGE_EXIT)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let (command, args) = match cli.command {
        Sub::Mulind(a) => (Command::Mulind, a),
        Sub::Ldim(a) => (Command::Ldim, a),
        Sub::Chain(a) => (Command::Chain, a),
        Sub::Ax(a) => (Command::Ax, a),
        Sub::Expalg(a) => (Command::Expalg, a),
        Sub::Relsearch(a) => (Command::Relsearch, a),
        Sub::VerifyPowers(a) => (Command::VerifyPowers, a),
        Sub::Run(a) => (Command::All, a),
        Sub::Selftest(o) => {
            let n = workers(&o);
            let mode = Execution::from_workers(n);
            let report = with_pool(n, || selftest(mode, o.timing));
            return emit(&report, o.format.into());
        }
    };
    run_command(command, args)
}
