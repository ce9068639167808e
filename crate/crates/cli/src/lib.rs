//! `nscode`: generate the recurrence families and run the verification sweeps.
//!
//! Exit status is 0 when every check passes, 1 when a counterexample was
//! found (written to standard output), and 2 for usage or configuration
//! errors.

use std::fs;
use std::io::{self, IsTerminal, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use nscode_core::nscode::verify_shift_laws;
use nscode_core::recurrences::{
    assess, generate, parse_seed_file, verify_condition_stream, verify_doubling, Checkpoint,
    Generator,
};
use nscode_core::wcode::{
    pk_from_families, verify_pk_agreement, verify_pk_dominance, verify_substitution_laws, PK_SEEDS,
};
use nscode_core::{CodePair, Condition, Family, OddPoly, SequenceSpec, VerificationReport, WPoly};
use serde::Serialize;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_COUNTEREXAMPLE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "nscode",
    version,
    about = "Sweeps over the Nicolas-Serre code and its mod-2 recurrences"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Report format on standard output.
    #[arg(long, value_enum, default_value_t = Format::Tsv, global = true)]
    format: Format,

    /// Worker threads for the checking phase (default: all cores).
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    workers: Option<u32>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print (n, A_n) rows with the condition verdict for each.
    Gen {
        #[command(flatten)]
        source: Source,
        /// Condition to classify against (default: the family's own).
        #[arg(long)]
        cond: Option<Condition>,
        #[arg(long, default_value_t = 64, value_parser = positive)]
        n_max: u64,
        #[command(flatten)]
        state: State,
    },
    /// Run one sweep.
    #[command(subcommand)]
    Verify(Verify),
    /// Check the built-in golden values and print the sixteen initial P_k.
    Selftest,
}

#[derive(Subcommand, Debug)]
enum Verify {
    /// t^(2q^2) and t^(4q^2) laws and the S_(i,j) identities on a grid.
    ShiftLaws {
        /// Exclusive bound on a.
        #[arg(long, default_value_t = 256, value_parser = positive)]
        a_max: u64,
        /// Exclusive bound on b.
        #[arg(long, default_value_t = 256, value_parser = positive)]
        b_max: u64,
        /// Comma-separated powers of two.
        #[arg(long, value_delimiter = ',', default_value = "1,2,4,8,16", value_parser = power_of_two)]
        q: Vec<u64>,
    },
    /// A dominance condition on every A_n, odd n <= n-max.
    Condition {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        cond: Option<Condition>,
        #[arg(long, default_value_t = 1 << 14, value_parser = positive)]
        n_max: u64,
        #[command(flatten)]
        state: State,
    },
    /// Whether a (*) sequence for r also satisfies (*) for 2r and 4r.
    Doubling {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 1 << 12, value_parser = positive)]
        n_max: u64,
    },
    /// P_k from the families against P_k from the w-recurrence.
    Pk {
        #[arg(long, default_value_t = 10_000, value_parser = positive)]
        k_max: u64,
    },
    /// Dominance of P_k in the <a,b> code.
    Dominance {
        #[arg(long, default_value_t = 100_000, value_parser = positive)]
        k_max: u64,
    },
    /// phi on the four monomials per n, the s_(i,j) substitutions, and family parity.
    Substitution {
        #[arg(long, default_value_t = 10_000, value_parser = positive)]
        n_max: u64,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct Source {
    /// Built-in family: alpha, beta, gamma, delta or cor42.
    #[arg(long)]
    family: Option<Family>,
    /// Seed file with a user-supplied recursion.
    #[arg(long)]
    seeds: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct State {
    /// Write generator state here (after every block, and at the end).
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    /// Continue from a state file written by --checkpoint.
    #[arg(long)]
    resume: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Tsv,
    Json,
}

fn positive(s: &str) -> Result<u64, String> {
    match s.parse::<u64>() {
        Ok(0) => Err("must be positive".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

fn power_of_two(s: &str) -> Result<u64, String> {
    let v = s.trim().parse::<u64>().map_err(|e| e.to_string())?;
    if v.is_power_of_two() {
        Ok(v)
    } else {
        Err(format!("{v} is not a power of two"))
    }
}

/// Usage and configuration problems; reported on stderr with exit status 2.
#[derive(Debug)]
struct ConfigError(String);

impl<E: std::fmt::Display> From<E> for ConfigError {
    fn from(e: E) -> Self {
        ConfigError(e.to_string())
    }
}

type Outcome = Result<i32, ConfigError>;

/// Parses `argv` (program name first) and runs the command.
pub fn run<I, S>(argv: I, out: &mut (dyn Write + Send), err: &mut (dyn Write + Send)) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_PASS
            };
            let target: &mut (dyn Write + Send) = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let outcome = match cli.workers {
        Some(n) => match rayon::ThreadPoolBuilder::new()
            .num_threads(n as usize)
            .build()
        {
            Ok(pool) => pool.install(|| dispatch(&cli, out, err)),
            Err(e) => Err(ConfigError(e.to_string())),
        },
        None => dispatch(&cli, out, err),
    };
    match outcome {
        Ok(code) => code,
        Err(ConfigError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

fn dispatch(cli: &Cli, out: &mut (dyn Write + Send), err: &mut (dyn Write + Send)) -> Outcome {
    let fmt = cli.format;
    match &cli.command {
        Command::Gen {
            source,
            cond,
            n_max,
            state,
        } => gen(source, *cond, *n_max, state, fmt, out),
        Command::Selftest => selftest(fmt, out),
        Command::Verify(v) => {
            let report = match v {
                Verify::ShiftLaws { a_max, b_max, q } => verify_shift_laws(*a_max, *b_max, q)?,
                Verify::Condition {
                    source,
                    cond,
                    n_max,
                    state,
                } => {
                    let (spec, default_cond) = load(source)?;
                    let cond = cond
                        .or(default_cond)
                        .ok_or_else(|| ConfigError("--cond is required with --seeds".into()))?;
                    let gen = start(&spec, *n_max, state)?;
                    let path = state.checkpoint.as_deref();
                    verify_condition_stream(gen, cond, "condition", |g| save(path, g))?
                }
                Verify::Doubling { source, n_max } => verify_doubling(&load(source)?.0, *n_max)?,
                Verify::Pk { k_max } => verify_pk_agreement(*k_max)?,
                Verify::Dominance { k_max } => verify_pk_dominance(*k_max)?,
                Verify::Substitution { n_max } => verify_substitution_laws(*n_max)?,
            };
            emit_report(&report, fmt, out)?;
            summary(err, &report);
            Ok(if report.passed() {
                EXIT_PASS
            } else {
                EXIT_COUNTEREXAMPLE
            })
        }
    }
}

fn load(source: &Source) -> Result<(SequenceSpec, Option<Condition>), ConfigError> {
    match (&source.family, &source.seeds) {
        (Some(f), _) => Ok((f.spec(), Some(f.condition()))),
        (None, Some(path)) => {
            let text = fs::read_to_string(path)
                .map_err(|e| ConfigError(format!("{}: {e}", path.display())))?;
            Ok((parse_seed_file(&text)?, None))
        }
        (None, None) => Err(ConfigError("one of --family or --seeds is required".into())),
    }
}

fn start(spec: &SequenceSpec, n_max: u64, state: &State) -> Result<Generator, ConfigError> {
    let Some(path) = &state.resume else {
        return Ok(generate(spec, n_max)?);
    };
    let bytes = fs::read(path).map_err(|e| ConfigError(format!("{}: {e}", path.display())))?;
    let cp = Checkpoint::from_bytes(&bytes)?;
    if cp.kind != spec.kind() || cp.r != spec.r() {
        return Err(ConfigError(format!(
            "{} was written for a different recursion",
            path.display()
        )));
    }
    Ok(Generator::resume(cp, n_max)?)
}

fn save(path: Option<&Path>, g: &Generator) -> nscode_core::Result<()> {
    let Some(path) = path else { return Ok(()) };
    // Write then rename, so an interrupted run leaves the previous state intact.
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, g.checkpoint().to_bytes())
        .and_then(|()| fs::rename(&tmp, path))
        .map_err(|e| nscode_core::Error::Checkpoint(format!("{}: {e}", path.display())))
}

fn pair(p: Option<CodePair>) -> String {
    p.map_or_else(|| "-".into(), |p| p.to_string())
}

#[derive(Serialize)]
struct GenRow {
    n: u64,
    status: &'static str,
    dominant_pair: Option<CodePair>,
    expected_pair: Option<CodePair>,
    polynomial: String,
}

fn gen(
    source: &Source,
    cond: Option<Condition>,
    n_max: u64,
    state: &State,
    fmt: Format,
    out: &mut (dyn Write + Send),
) -> Outcome {
    let (spec, default_cond) = load(source)?;
    let cond = cond.or(default_cond);
    let mut g = start(&spec, n_max, state)?;
    let mut any_fail = false;
    let mut rows = Vec::new();
    if fmt == Format::Tsv {
        writeln!(
            out,
            "n\tstatus\tdominant_pair\texpected_pair\tpolynomial_terms"
        )?;
    }
    for (n, p) in g.by_ref() {
        let row = gen_row(n, &p, cond);
        any_fail |= row.status == "fail";
        match fmt {
            Format::Tsv => writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}",
                row.n,
                row.status,
                pair(row.dominant_pair),
                pair(row.expected_pair),
                row.polynomial
            )?,
            Format::Json => rows.push(row),
        }
    }
    if fmt == Format::Json {
        serde_json::to_writer_pretty(&mut *out, &rows)?;
        writeln!(out)?;
    }
    save(state.checkpoint.as_deref(), &g)?;
    Ok(if any_fail {
        EXIT_COUNTEREXAMPLE
    } else {
        EXIT_PASS
    })
}

fn gen_row(n: u64, p: &OddPoly, cond: Option<Condition>) -> GenRow {
    let verdict = cond.map(|c| assess(p, n, c).expect("generator yields odd n"));
    GenRow {
        n,
        status: match verdict {
            None => "-",
            Some(v) if v.ok => "pass",
            Some(_) => "fail",
        },
        dominant_pair: nscode_core::recurrences::dominant_pair(p),
        expected_pair: verdict.and_then(|v| v.rule.bound()),
        polynomial: p.to_string(),
    }
}

#[derive(Serialize)]
struct ReportJson<'a> {
    status: &'static str,
    #[serde(flatten)]
    report: &'a VerificationReport,
}

fn status(report: &VerificationReport) -> &'static str {
    if report.passed() {
        "pass"
    } else {
        "fail"
    }
}

fn emit_report(
    report: &VerificationReport,
    fmt: Format,
    out: &mut (dyn Write + Send),
) -> io::Result<()> {
    match fmt {
        Format::Json => {
            serde_json::to_writer_pretty(
                &mut *out,
                &ReportJson {
                    status: status(report),
                    report,
                },
            )?;
            writeln!(out)
        }
        Format::Tsv => {
            writeln!(out, "check\trange\tchecked\tstatus\tat\tclause\tdominant_pair\texpected_pair\tpolynomial_terms")?;
            let c = report.failure.as_ref();
            writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                report.check,
                report.range,
                report.checked,
                status(report),
                c.map_or("-".into(), |c| c.at.to_string()),
                c.map_or("-", |c| c.clause.as_str()),
                pair(c.and_then(|c| c.dominant_pair)),
                pair(c.and_then(|c| c.expected_pair)),
                c.and_then(|c| c.polynomial.as_deref()).unwrap_or("-"),
            )
        }
    }
}

/// One-line human summary on stderr, coloured only on a terminal without `NO_COLOR`.
fn summary(err: &mut (dyn Write + Send), report: &VerificationReport) {
    let color = std::env::var_os("NO_COLOR").is_none() && io::stderr().is_terminal();
    let line = report.to_string();
    let _ = match (color, report.passed()) {
        (true, true) => writeln!(err, "\x1b[32m{line}\x1b[0m"),
        (true, false) => writeln!(err, "\x1b[31m{line}\x1b[0m"),
        (false, _) => writeln!(err, "{line}"),
    };
}

/// Known values, in the spirit of a smoke test.
type Check = (&'static str, fn() -> bool);

const GOLDEN: &[Check] = &[
    ("alpha_9 = t^3", || family_term(Family::Alpha, 9) == "t^3"),
    ("cor42 A_17 = t^3", || {
        family_term(Family::Cor42, 17) == "t^3"
    }),
    ("beta_7 = t^7+t^3", || {
        family_term(Family::Beta, 7) == "t^7+t^3"
    }),
    ("P_23 = w^21", || pk(23) == "w^21"),
    ("P_63 = w^61+w^29+w^21", || pk(63) == "w^61+w^29+w^21"),
    ("P_81 = w^27", || pk(81) == "w^27"),
    ("[1,1] = t^7", || {
        CodePair::new(1, 1).encode().ok() == Some(7)
    }),
    ("<1,1> = w^21", || {
        nscode_core::wcode::wencode(1, 1).ok() == Some(21)
    }),
];

fn family_term(f: Family, n: u64) -> String {
    generate(&f.spec(), n)
        .ok()
        .and_then(|g| g.last())
        .map_or_else(String::new, |(_, p)| p.to_string())
}

fn pk(k: u64) -> String {
    pk_from_families(k).map_or_else(|e| e.to_string(), |p| p.to_string())
}

fn selftest(fmt: Format, out: &mut (dyn Write + Send)) -> Outcome {
    let mut seeds = Vec::new();
    let mut ok = true;
    for (k, exps) in PK_SEEDS {
        let want = WPoly::from_exponents(exps.iter().copied())?;
        let got = pk_from_families(k)?;
        ok &= got == want;
        seeds.push((k, got.to_string(), got == want));
    }
    let golden: Vec<(&str, bool)> = GOLDEN.iter().map(|(name, f)| (*name, f())).collect();
    ok &= golden.iter().all(|g| g.1);
    match fmt {
        Format::Tsv => {
            writeln!(out, "check\tvalue\tstatus")?;
            for (k, p, pass) in &seeds {
                writeln!(out, "P_{k}\t{p}\t{}", if *pass { "pass" } else { "fail" })?;
            }
            for (name, pass) in &golden {
                writeln!(
                    out,
                    "golden\t{name}\t{}",
                    if *pass { "pass" } else { "fail" }
                )?;
            }
        }
        Format::Json => {
            let seeds: Vec<_> = seeds
                .iter()
                .map(|(k, p, pass)| serde_json::json!({ "k": k, "value": p, "pass": pass }))
                .collect();
            let golden: Vec<_> = golden
                .iter()
                .map(|(name, pass)| serde_json::json!({ "check": name, "pass": pass }))
                .collect();
            let doc = serde_json::json!({ "status": if ok { "pass" } else { "fail" }, "seeds": seeds, "golden": golden });
            serde_json::to_writer_pretty(&mut *out, &doc)?;
            writeln!(out)?;
        }
    }
    Ok(if ok { EXIT_PASS } else { EXIT_COUNTEREXAMPLE })
}
