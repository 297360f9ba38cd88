//! Command-line front end. [`run`] takes the argument list and output
//! streams so the whole interface can be driven from tests.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::anumber::{report, Method};
use crate::bounds::{lower_bound, lower_bound_single, RamificationData};
use crate::curve::BasicCurve;
use crate::error::{Error, Result};
use crate::experiments::{distribution, min_a_exhaustive, min_a_random, DEFAULT_EXHAUSTIVE_CAP};
use crate::families::{family_polynomial, verify_family};
use crate::fppoly::FpPoly;

#[derive(Parser, Debug)]
#[command(name = "asnum", version, about = "a-numbers of Artin-Schreier covers y^p - y = f of P^1 over F_p")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Lower bound L(D) for ramification invariants D.
    Bound(BoundArgs),
    /// a-number, genus and p-rank of y^p - y = f.
    Anumber(AnumberArgs),
    /// Explicit minimal a-number families for p = 3 and p = 5.
    Family(FamilyArgs),
    /// Distribution of a-numbers over random covers of degree d.
    Experiment(ExperimentArgs),
    /// Smallest a-number found among covers of degree d.
    Search(SearchArgs),
}

#[derive(Args, Debug)]
pub struct BoundArgs {
    #[arg(long)]
    pub p: u32,
    /// Ramification invariant; repeat for several branch points.
    #[arg(long = "d", required = true)]
    pub d: Vec<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Fast,
    Oracle,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Args, Debug)]
pub struct AnumberArgs {
    #[arg(long)]
    pub p: u32,
    /// Polynomial such as "x^11 + 2*x^8".
    #[arg(long, conflicts_with = "coeffs", required_unless_present = "coeffs")]
    pub f: Option<String>,
    /// Comma-separated coefficients, constant term first.
    #[arg(long)]
    pub coeffs: Option<String>,
    #[arg(long, value_enum, default_value_t = MethodArg::Fast)]
    pub method: MethodArg,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct FamilyArgs {
    #[arg(long)]
    pub p: u32,
    #[arg(long, conflicts_with = "dmax", required_unless_present = "dmax")]
    pub d: Option<u64>,
    /// Sweep every admissible d up to this value.
    #[arg(long)]
    pub dmax: Option<u64>,
    /// Compute the a-number and compare it with L({d}).
    #[arg(long)]
    pub verify: bool,
    #[arg(long, env = "ASNUM_THREADS")]
    pub threads: Option<usize>,
}

#[derive(Args, Debug)]
pub struct ExperimentArgs {
    #[arg(long)]
    pub p: u32,
    #[arg(long)]
    pub d: u64,
    #[arg(long, default_value_t = 1000)]
    pub n: u64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write CSV/JSON here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Record elapsed_ms as 0 so reruns produce identical files.
    #[arg(long)]
    pub no_timing: bool,
    #[arg(long, env = "ASNUM_THREADS")]
    pub threads: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SearchMode {
    Exhaustive,
    Random,
}

#[derive(Args, Debug)]
pub struct SearchArgs {
    #[arg(long)]
    pub p: u32,
    #[arg(long)]
    pub d: u64,
    #[arg(long, value_enum, default_value_t = SearchMode::Exhaustive)]
    pub mode: SearchMode,
    #[arg(long, default_value_t = 1000)]
    pub n: u64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Largest search space the exhaustive mode accepts.
    #[arg(long, default_value_t = DEFAULT_EXHAUSTIVE_CAP)]
    pub cap: u128,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long, env = "ASNUM_THREADS")]
    pub threads: Option<usize>,
}

/// Failure of a command: either an error or a check that did not pass.
#[derive(Debug)]
enum Failure {
    Error(Error),
    Io(std::io::Error),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

type CmdResult = std::result::Result<(), Failure>;

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 { write!(out, "{rendered}") } else { write!(err, "{rendered}") };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(()) => 0,
        Err(Failure::Error(e)) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "I/O error: {e}");
            1
        }
        Err(Failure::Check(msg)) => {
            let _ = writeln!(err, "check failed: {msg}");
            3
        }
    }
}

fn with_threads<T: Send>(threads: Option<usize>, job: impl FnOnce() -> T + Send) -> Result<T> {
    match threads {
        None | Some(0) => Ok(job()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::Argument(format!("cannot start {n} threads: {e}")))?;
            Ok(pool.install(job))
        }
    }
}

fn execute(command: Command, out: &mut dyn Write) -> CmdResult {
    match command {
        Command::Bound(a) => cmd_bound(&a, out),
        Command::Anumber(a) => cmd_anumber(&a, out),
        Command::Family(a) => cmd_family(&a, out),
        Command::Experiment(a) => cmd_experiment(&a, out),
        Command::Search(a) => cmd_search(&a, out),
    }
}

fn cmd_bound(args: &BoundArgs, out: &mut dyn Write) -> CmdResult {
    let data = RamificationData::new(args.p, args.d.clone())?;
    let parts: Vec<u64> = args.d.iter().map(|&d| lower_bound_single(args.p, d)).collect::<Result<_>>()?;
    for (d, l) in args.d.iter().zip(&parts) {
        writeln!(out, "L({{{d}}}) = {l}")?;
    }
    let sum: Vec<String> = parts.iter().map(u64::to_string).collect();
    writeln!(out, "L(D) = {} = {}", sum.join(" + "), lower_bound(&data))?;
    Ok(())
}

fn parse_coeffs(p: u32, s: &str) -> Result<FpPoly> {
    let coeffs = s
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| Error::Parse { input: s.to_string(), reason: format!("bad coefficient {t:?}") })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FpPoly::from_coeffs(p, &coeffs))
}

fn cmd_anumber(args: &AnumberArgs, out: &mut dyn Write) -> CmdResult {
    crate::error::check_prime(args.p)?;
    let f = match (&args.f, &args.coeffs) {
        (Some(text), _) => FpPoly::parse(args.p, text)?,
        (None, Some(list)) => parse_coeffs(args.p, list)?,
        (None, None) => unreachable!("clap requires one of --f / --coeffs"),
    };
    let curve = BasicCurve::new(args.p, &f)?;
    let methods: &[Method] = match args.method {
        MethodArg::Fast => &[Method::Fast],
        MethodArg::Oracle => &[Method::Oracle],
        MethodArg::Both => &[Method::Fast, Method::Oracle],
    };
    let reports: Vec<_> = methods.iter().map(|&m| report(&curve, m)).collect();
    match args.format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&reports).expect("plain data"))?,
        Format::Csv => {
            writeln!(out, "p,f,d,method,a,genus,p_rank,lower_bound,dim_v,dim_u")?;
            for r in &reports {
                let method = if r.method == Method::Fast { "fast" } else { "oracle" };
                writeln!(
                    out,
                    "{},{},{},{method},{},{},{},{},{},{}",
                    r.p, r.f, r.d, r.a, r.genus, r.p_rank, r.lower_bound, r.dim_v, r.dim_u
                )?;
            }
        }
        Format::Text => {
            for (k, r) in reports.iter().enumerate() {
                if k > 0 {
                    writeln!(out)?;
                }
                writeln!(out, "{r}")?;
            }
        }
    }
    if let [fast, oracle] = reports.as_slice() {
        if fast.a != oracle.a {
            return Err(Failure::Check(format!("fast a = {} but oracle a = {}", fast.a, oracle.a)));
        }
        writeln!(out, "methods agree: a = {}", fast.a)?;
    }
    Ok(())
}

fn cmd_family(args: &FamilyArgs, out: &mut dyn Write) -> CmdResult {
    if args.p != 3 && args.p != 5 {
        return Err(Error::UnsupportedFamilyPrime(args.p).into());
    }
    if let Some(d) = args.d {
        if !args.verify {
            let (f, strategy) = family_polynomial(args.p, d)?;
            writeln!(out, "p={} d={d} strategy={strategy} f={f}", args.p)?;
            return Ok(());
        }
        let v = verify_family(args.p, d)?;
        for r in &v.rejected {
            writeln!(out, "p={} d={d} strategy={} f={} a={} L={} rejected", args.p, r.strategy, r.f, r.a, v.lower_bound)?;
        }
        writeln!(out, "p={} d={d} strategy={} f={}", args.p, v.strategy, v.f)?;
        writeln!(out, "a={} L={} {}", v.a, v.lower_bound, if v.ok { "ok" } else { "FAIL" })?;
        if !v.ok {
            return Err(Failure::Check(format!("a = {} differs from L = {}", v.a, v.lower_bound)));
        }
        return Ok(());
    }
    let dmax = args.dmax.expect("clap requires --d or --dmax");
    let p = args.p;
    let ds: Vec<u64> = (1..=dmax).filter(|d| d % p as u64 != 0).collect();
    if !args.verify {
        for &d in &ds {
            let (f, strategy) = family_polynomial(p, d)?;
            writeln!(out, "d={d} strategy={strategy} f={f}")?;
        }
        return Ok(());
    }
    let results = with_threads(args.threads, || {
        use rayon::prelude::*;
        ds.par_iter().map(|&d| verify_family(p, d)).collect::<Result<Vec<_>>>()
    })??;
    let mut failures = Vec::new();
    for v in &results {
        let status = if v.ok { "ok" } else { "FAIL" };
        for r in &v.rejected {
            writeln!(out, "d={} strategy={} f={} a={} L={} rejected", v.d, r.strategy, r.f, r.a, v.lower_bound)?;
        }
        writeln!(out, "d={} strategy={} f={} a={} L={} {status}", v.d, v.strategy, v.f, v.a, v.lower_bound)?;
        if !v.ok {
            failures.push(v.d);
        }
    }
    let ok = results.len() - failures.len();
    let pct = if results.is_empty() { 100.0 } else { 100.0 * ok as f64 / results.len() as f64 };
    writeln!(out, "{ok}/{} ok ({pct:.0}% ok)", results.len())?;
    if failures.is_empty() {
        Ok(())
    } else {
        Err(Failure::Check(format!("families miss the bound at d = {failures:?}")))
    }
}

fn cmd_experiment(args: &ExperimentArgs, out: &mut dyn Write) -> CmdResult {
    let mut dist = with_threads(args.threads, || distribution(args.p, args.d, args.n, args.seed))??;
    if args.no_timing {
        dist.elapsed_ms = 0;
    }
    let body = match args.format {
        Format::Csv => Some(dist.to_csv()),
        Format::Json => Some(dist.to_json() + "\n"),
        Format::Text => None,
    };
    match (&body, &args.out) {
        (Some(text), Some(path)) => std::fs::write(path, text)?,
        (Some(text), None) => {
            out.write_all(text.as_bytes())?;
            return Ok(());
        }
        (None, Some(path)) => std::fs::write(path, dist.to_csv())?,
        (None, None) => {}
    }
    writeln!(
        out,
        "p={} d={} samples={} seed={} lower bound={} elapsed={}ms",
        dist.p,
        dist.d,
        dist.n_samples,
        dist.seed,
        dist.lower_bound(),
        dist.elapsed_ms
    )?;
    write!(out, "{}", dist.histogram())?;
    writeln!(out, "fraction at lower bound: {:.4}", dist.at_bound_fraction())?;
    Ok(())
}

fn cmd_search(args: &SearchArgs, out: &mut dyn Write) -> CmdResult {
    let result = with_threads(args.threads, || match args.mode {
        SearchMode::Exhaustive => min_a_exhaustive(args.p, args.d, args.cap),
        SearchMode::Random => min_a_random(args.p, args.d, args.n, args.seed),
    })??;
    match args.format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&result).expect("plain data"))?,
        _ => {
            writeln!(out, "p={} d={}", result.p, result.d)?;
            writeln!(out, "min_a={}", result.min_a)?;
            writeln!(out, "witness={}", result.witness)?;
            writeln!(out, "exhaustive={}", result.exhaustive)?;
            writeln!(out, "candidates={}", result.candidates_tested)?;
            writeln!(out, "lower_bound={}", result.lower_bound)?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let mut full = vec!["asnum"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn bound_command() {
        let (code, out, _) = run_str(&["bound", "--p", "3", "--d", "17"]);
        assert_eq!(code, 0);
        assert!(out.contains("L(D) = 8 = 8"), "{out}");
        let (code, out, _) = run_str(&["bound", "--p", "3", "--d", "17", "--d", "14"]);
        assert_eq!(code, 0);
        assert!(out.contains("L(D) = 8 + 6 = 14"), "{out}");
        let (code, out, _) = run_str(&["bound", "--p", "5", "--d", "1"]);
        assert_eq!(code, 0);
        assert!(out.contains("= 0"));
        let (code, _, err) = run_str(&["bound", "--p", "3", "--d", "9"]);
        assert_eq!(code, 1);
        assert!(err.contains("divisible by p"));
    }

    #[test]
    fn anumber_command() {
        let (code, out, _) = run_str(&["anumber", "--p", "5", "--f", "x^11+x^8"]);
        assert_eq!(code, 0);
        assert!(out.contains("a-number: 10"), "{out}");
        let (code, out, _) = run_str(&["anumber", "--p", "3", "--f", "x^2", "--method", "both"]);
        assert_eq!(code, 0);
        assert_eq!(out.matches("a-number: 1\n").count(), 2, "{out}");
        assert!(out.contains("methods agree"));
        let (code, out, _) = run_str(&["anumber", "--p", "3", "--f", "x^3"]);
        assert_eq!(code, 0);
        assert!(out.contains("y^3 - y = x\n") && out.contains("a-number: 0"), "{out}");
        let (code, out, _) = run_str(&["anumber", "--p", "5", "--coeffs", "0,0,0,0,0,0,0,0,1,0,0,1"]);
        assert_eq!(code, 0);
        assert!(out.contains("a-number: 10"));
    }

    #[test]
    fn anumber_errors_are_distinct() {
        let (c1, _, e1) = run_str(&["anumber", "--p", "3", "--f", "x^^2"]);
        let (c2, _, e2) = run_str(&["anumber", "--p", "3", "--f", "2"]);
        let (c3, _, e3) = run_str(&["anumber", "--p", "4", "--f", "x"]);
        assert_eq!((c1, c2, c3), (1, 1, 1));
        assert!(e1.contains("cannot parse"));
        assert!(e2.contains("split"));
        assert!(e3.contains("not a supported prime"));
        let (code, _, _) = run_str(&["anumber", "--p", "3"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn family_command() {
        let (code, out, _) = run_str(&["family", "--p", "5", "--d", "16", "--verify"]);
        assert_eq!(code, 0);
        assert!(out.contains("f=x^16+x^14+x^9") && out.contains("a=15 L=15 ok"), "{out}");
        let (code, out, _) = run_str(&["family", "--p", "5", "--d", "3"]);
        assert_eq!(code, 0);
        assert!(out.contains("f=x^3+x^2"));
        let (code, out, _) = run_str(&["family", "--p", "3", "--dmax", "30", "--verify"]);
        assert_eq!(code, 0);
        assert!(out.contains("100% ok"), "{out}");
        let (code, _, err) = run_str(&["family", "--p", "7", "--d", "3"]);
        assert_eq!(code, 1);
        assert!(err.contains("not available"));
    }

    #[test]
    fn search_command() {
        let (code, out, _) = run_str(&["search", "--p", "3", "--d", "4", "--mode", "exhaustive"]);
        assert_eq!(code, 0);
        assert!(out.contains("min_a=2") && out.contains("exhaustive=true"), "{out}");
        let (code, out, _) = run_str(&["search", "--p", "3", "--d", "2"]);
        assert_eq!(code, 0);
        assert!(out.contains("min_a=1"));
        let (code, _, err) = run_str(&["search", "--p", "5", "--d", "19", "--cap", "100"]);
        assert_eq!(code, 1);
        assert!(err.contains("random search"), "{err}");
    }
}
