//! Command-line front end: argument parsing, dispatch and output formatting.
//!
//! [`run`] does all the work and returns the exit code together with the
//! captured stdout and stderr, so tests can drive it without a subprocess.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use qkbonacci::exact::{
    definition_row, series_coefficients, term_definition, term_fast, term_shortcut, theorem3_term,
};
use qkbonacci::lawcheck::{self, DecayCheck, Grid, LawId, LawReport};
use qkbonacci::numerics::{all_roots, binet_reconstruct, dominant_root, ESCALATION_FACTOR};
use qkbonacci::{Error, SequenceParams};

mod table;

pub use table::{render_table, TableFormat, TableRow};

/// Known misprint in the widely reproduced table of first terms.
pub const ERRATUM: ((u32, u32, i64), &str) = ((4, 5, 9), "132565");

#[derive(Debug, Parser)]
#[command(
    name = "qkbonacci",
    version,
    about = "(q,k)-generalized Fibonacci numbers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print one term F(n).
    Term(TermArgs),
    /// Print a grid of terms.
    Table(TableArgs),
    /// Print a certified enclosure of the dominant root.
    Root(RootArgs),
    /// Check identities and bounds over a parameter grid.
    Verify(VerifyArgs),
    /// Print generating-function coefficients c_0..c_{count-1}.
    Series(SeriesArgs),
    /// Time the term strategies against each other.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Def,
    Shortcut,
    Fast,
    Theorem3,
    Binet,
}

#[derive(Debug, Args)]
struct TermArgs {
    #[arg(long)]
    q: u32,
    #[arg(long)]
    k: u32,
    #[arg(long, allow_negative_numbers = true)]
    n: i64,
    #[arg(long, value_enum, default_value_t = Method::Def)]
    method: Method,
    /// Root precision for `--method binet`.
    #[arg(long, default_value_t = 256)]
    bits: u32,
}

#[derive(Debug, Args)]
struct TableArgs {
    /// One value or a comma-separated list.
    #[arg(long, value_delimiter = ',', required = true)]
    q: Vec<u32>,
    #[arg(long)]
    k_min: u32,
    #[arg(long)]
    k_max: u32,
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    n_min: i64,
    #[arg(long, allow_negative_numbers = true)]
    n_max: i64,
    #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
    format: TableFormat,
}

#[derive(Debug, Args)]
struct RootArgs {
    #[arg(long)]
    q: u32,
    #[arg(long)]
    k: u32,
    #[arg(long, default_value_t = 64)]
    bits: u32,
    /// Also list the other roots (approximate).
    #[arg(long)]
    all: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Law {
    Identities,
    Lemma1,
    Lemma2,
    Roots,
    ErrorBound,
    Growth,
    Reconstruction,
    Decay,
    All,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    law: Law,
    #[arg(long, value_delimiter = ',', default_values_t = [3u32, 4, 5])]
    q: Vec<u32>,
    #[arg(long, default_value_t = 2)]
    k_min: u32,
    #[arg(long, default_value_t = 8)]
    k_max: u32,
    #[arg(long, allow_negative_numbers = true)]
    n_min: Option<i64>,
    #[arg(long, default_value_t = 300, allow_negative_numbers = true)]
    n_max: i64,
    #[arg(long, default_value_t = lawcheck::DEFAULT_BITS)]
    bits: u32,
}

#[derive(Debug, Args)]
struct SeriesArgs {
    #[arg(long)]
    q: u32,
    #[arg(long)]
    k: u32,
    #[arg(long)]
    count: usize,
}

#[derive(Debug, Args)]
struct BenchArgs {
    #[arg(long)]
    q: u32,
    #[arg(long)]
    k: u32,
    #[arg(long)]
    n: i64,
    #[arg(long, default_value_t = 3)]
    reps: u32,
}

/// Exit status and captured output of one invocation.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }
}

/// Bad input: parameters, indices or options outside the supported domain.
fn is_usage_error(err: &Error) -> bool {
    matches!(
        err,
        Error::InvalidParams { .. }
            | Error::IndexBelowDomain { .. }
            | Error::Regime { .. }
            | Error::EmptyCount
    )
}

fn failure(err: Error) -> Outcome {
    Outcome {
        code: if is_usage_error(&err) { 2 } else { 1 },
        stdout: String::new(),
        stderr: format!("error: {err}\n"),
    }
}

fn usage(msg: impl std::fmt::Display) -> Outcome {
    Outcome {
        code: 2,
        stdout: String::new(),
        stderr: format!("error: {msg}\n"),
    }
}

/// Parse `args` (including the program name) and run the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: rendered,
                }
            } else {
                Outcome::ok(rendered)
            };
        }
    };
    match cli.command {
        Command::Term(a) => cmd_term(&a),
        Command::Table(a) => cmd_table(&a),
        Command::Root(a) => cmd_root(&a),
        Command::Verify(a) => cmd_verify(&a),
        Command::Series(a) => cmd_series(&a),
        Command::Bench(a) => cmd_bench(&a),
    }
    .unwrap_or_else(failure)
}

type CmdResult = Result<Outcome, Error>;

/// `F(n)` by the chosen exact strategy.
pub fn exact_term(params: &SequenceParams, n: i64, method: Method) -> qkbonacci::Result<BigInt> {
    match method {
        Method::Def | Method::Binet => term_definition(params, n),
        Method::Shortcut => term_shortcut(params, n),
        Method::Fast => term_fast(params, n),
        Method::Theorem3 => theorem3_term(params, n),
    }
}

fn cmd_term(a: &TermArgs) -> CmdResult {
    let params = SequenceParams::new(a.q, a.k)?;
    params.index(a.n)?;
    if a.method != Method::Binet {
        return Ok(Outcome::ok(format!(
            "{}\n",
            exact_term(&params, a.n, a.method)?
        )));
    }
    let cap = a.bits.saturating_mul(ESCALATION_FACTOR);
    let mut bits = a.bits;
    loop {
        match binet_reconstruct(&params, a.n, bits) {
            Ok(r) => {
                return Ok(Outcome::ok(format!(
                    "{}\nresidual {:.3e}, imag {:.3e}, bits {bits}\n",
                    r.value,
                    r.residual.to_f64(),
                    r.imag.to_f64()
                )))
            }
            Err(e) if bits.saturating_mul(2) > cap || is_usage_error(&e) => return Err(e),
            Err(_) => bits *= 2,
        }
    }
}

fn cmd_table(a: &TableArgs) -> CmdResult {
    if a.k_min > a.k_max {
        return Ok(usage(format!(
            "--k-min {} exceeds --k-max {}",
            a.k_min, a.k_max
        )));
    }
    if a.n_min > a.n_max {
        return Ok(usage(format!(
            "--n-min {} exceeds --n-max {}",
            a.n_min, a.n_max
        )));
    }
    let mut qs = a.q.clone();
    qs.sort_unstable();
    qs.dedup();
    let mut rows = Vec::new();
    for &q in &qs {
        for k in a.k_min..=a.k_max {
            let params = SequenceParams::new(q, k)?;
            let start = a.n_min.max(params.min_index());
            if start > a.n_max {
                continue;
            }
            let row = definition_row::<BigInt>(&params, a.n_max)?;
            rows.extend((start..=a.n_max).map(|n| TableRow {
                q,
                k,
                n,
                value: row.get(n).expect("row covers range").clone(),
            }));
        }
    }
    let mut out = Outcome::ok(render_table(&rows, a.format));
    let ((eq, ek, en), published) = ERRATUM;
    if let Some(r) = rows.iter().find(|r| (r.q, r.k, r.n) == (eq, ek, en)) {
        out.stderr = format!(
            "note: F(n={en}) for q={eq}, k={ek} is {}; the published table of first terms prints {published}, which does not satisfy the recurrence\n",
            r.value
        );
    }
    Ok(out)
}

fn decimal_digits(bits: u32) -> usize {
    (f64::from(bits) * std::f64::consts::LOG10_2).ceil() as usize + 1
}

fn cmd_root(a: &RootArgs) -> CmdResult {
    let params = SequenceParams::new(a.q, a.k)?;
    let enclosure = dominant_root(&params, a.bits)?;
    let (lo, hi) = enclosure.interval().to_decimal_pair(decimal_digits(a.bits));
    let mut out = format!("[{lo}, {hi}]\n");
    if a.all {
        let roots = all_roots(&params, a.bits)?;
        for r in roots.secondary() {
            let (re, im) = (r.value.re.to_f64(), r.value.im.to_f64());
            let _ = writeln!(
                out,
                "{re:+.17e} {im:+.17e}i  |z| = {:.17}  radius {:.3e}",
                r.modulus().to_f64(),
                r.inclusion_radius.to_f64()
            );
        }
    }
    Ok(Outcome::ok(out))
}

fn run_law(law: Law, grid: &Grid, bits: u32) -> qkbonacci::Result<Vec<LawReport>> {
    let keep = |reports: Vec<LawReport>, ids: &[LawId]| -> Vec<LawReport> {
        reports
            .into_iter()
            .filter(|r| ids.contains(&r.law_id))
            .collect()
    };
    Ok(match law {
        Law::Identities => lawcheck::check_identities(grid)?,
        Law::Lemma1 => keep(
            lawcheck::check_root_laws(grid, bits)?,
            &[LawId::Lemma1Monotone, LawId::Lemma1Sandwich],
        ),
        Law::Lemma2 => keep(
            lawcheck::check_root_laws(grid, bits)?,
            &[LawId::Lemma2Sandwich],
        ),
        Law::Roots => lawcheck::check_root_laws(grid, bits)?,
        Law::ErrorBound => keep(
            lawcheck::check_term_bounds(grid, bits)?,
            &[LawId::ErrorBound],
        ),
        Law::Growth => keep(
            lawcheck::check_term_bounds(grid, bits)?,
            &[LawId::GrowthBounds],
        ),
        Law::Reconstruction => lawcheck::check_reconstruction(grid, bits)?,
        Law::Decay => vec![lawcheck::check_error_decay(
            grid,
            bits,
            DecayCheck::default(),
        )?],
        Law::All => lawcheck::check_all(grid, bits)?,
    })
}

fn cmd_verify(a: &VerifyArgs) -> CmdResult {
    if a.bits == 0 {
        return Ok(usage("--bits must be positive"));
    }
    let grid = Grid {
        qs: a.q.clone(),
        k_min: a.k_min,
        k_max: a.k_max,
        n_min: a.n_min,
        n_max: a.n_max,
    };
    let reports = run_law(a.law, &grid, a.bits)?;
    let mut stdout = serde_json::to_string_pretty(&reports).expect("reports serialize");
    stdout.push('\n');
    let mut stderr = String::new();
    for r in &reports {
        let _ = writeln!(
            stderr,
            "{}: {} ({} comparisons, {} witnesses)",
            r.law_id,
            serde_json::to_value(r.verdict)
                .expect("verdict serializes")
                .as_str()
                .unwrap_or_default(),
            r.comparisons,
            r.witnesses.len()
        );
    }
    Ok(Outcome {
        code: if reports.iter().all(LawReport::passed) {
            0
        } else {
            1
        },
        stdout,
        stderr,
    })
}

fn cmd_series(a: &SeriesArgs) -> CmdResult {
    let params = SequenceParams::new(a.q, a.k)?;
    let coeffs = series_coefficients::<BigInt>(&params, a.count)?;
    let mut out = String::new();
    for c in coeffs {
        let _ = writeln!(out, "{c}");
    }
    Ok(Outcome::ok(out))
}

fn time<T>(reps: u32, mut f: impl FnMut() -> T) -> (T, Vec<Duration>) {
    let mut times = Vec::with_capacity(reps as usize);
    let mut last = None;
    for _ in 0..reps {
        let start = Instant::now();
        last = Some(f());
        times.push(start.elapsed());
    }
    times.sort();
    (last.expect("reps > 0"), times)
}

fn cmd_bench(a: &BenchArgs) -> CmdResult {
    if a.reps == 0 {
        return Ok(usage("--reps must be positive"));
    }
    let params = SequenceParams::new(a.q, a.k)?;
    if a.n < 1 {
        return Ok(usage(format!("--n must be at least 1, got {}", a.n)));
    }
    let mut out = String::from("method,q,k,n,reps,min_s,median_s\n");
    let mut values = Vec::new();
    for (name, method) in [
        ("def", Method::Def),
        ("shortcut", Method::Shortcut),
        ("fast", Method::Fast),
    ] {
        let (value, times) = time(a.reps, || exact_term(&params, a.n, method));
        values.push(value?);
        let _ = writeln!(
            out,
            "{name},{},{},{},{},{:.6},{:.6}",
            a.q,
            a.k,
            a.n,
            a.reps,
            times[0].as_secs_f64(),
            times[times.len() / 2].as_secs_f64()
        );
    }
    if values.windows(2).any(|w| w[0] != w[1]) {
        return Ok(Outcome {
            code: 1,
            stdout: out,
            stderr: "error: strategies disagree\n".into(),
        });
    }
    Ok(Outcome::ok(out))
}
