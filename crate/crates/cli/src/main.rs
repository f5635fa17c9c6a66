//! `slocc`: classify states, compare pairs, check orbits, rebuild tables.

mod tables;

use std::fmt::Write as _;
use std::path::Path as FsPath;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use slocc::classify::{
    certify_inequivalence, classify_rows, classify_small, ComparisonMode, Settings, SmallReport, Verdict,
};
use slocc::document::{parse_state, to_document, AnyState};
use slocc::fixtures::{catalog, fixture_state};
use slocc::orbit::{self, VerifyConfig};
use slocc::parallel::Execution;
use slocc::smatrix::RowBits;
use slocc::spectral::Tolerances;
use slocc::state::GroupMode;
use slocc::Exact;

/// Exit statuses.
mod status {
    pub const OK: u8 = 0;
    pub const INEQUIVALENT: u8 = 2;
    pub const ASSERTION: u8 = 3;
    pub const INPUT: u8 = 4;
    pub const AMBIGUOUS: u8 = 5;
}

#[derive(Parser)]
#[command(name = "slocc", version, about = "SLOCC invariants of n-qubit pure states")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// CP group, family and Jordan form of each requested S-matrix.
    Classify {
        /// State document path, or `fixture:NAME[:a=2,b=3]`.
        #[arg(long)]
        state: String,
        /// `all`, or qubit pairs such as `1,2`; repeatable.
        #[arg(long, default_value = "all")]
        rows: Vec<String>,
        /// Also print the two- or three-qubit report.
        #[arg(long)]
        small: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Try to certify that two states are SLOCC inequivalent.
    Compare {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        /// Require equal invariants (special linear operators, k = 1).
        #[arg(long)]
        sl2: bool,
        /// Print every pair, not just the verdict and witness.
        #[arg(long)]
        all_pairs: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Random local operators: check that invariants scale by k = Π det Ai.
    Verify {
        #[arg(long)]
        state: String,
        #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Special linear operators; invariants must then match exactly.
        #[arg(long)]
        sl2: bool,
        /// Print one line per trial.
        #[arg(long)]
        verbose: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Rebuild a classification table and diff it against the expected one.
    Tables {
        #[arg(long, value_parser = ["1", "2", "4"])]
        table: String,
        #[command(flatten)]
        common: Common,
    },
    /// Print a catalog state as a document, or list the catalog.
    Fixture {
        /// Catalog key; omit with --list.
        name: Option<String>,
        /// `name=value` parameters, e.g. `a=2`.
        #[arg(long = "param")]
        params: Vec<String>,
        #[arg(long)]
        list: bool,
    },
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Arith {
    Exact,
    Float,
}

#[derive(Args)]
struct Common {
    /// Exact arithmetic, or floating point with the tolerances below.
    #[arg(long, value_enum, default_value = "exact")]
    mode: Arith,
    #[arg(long, default_value_t = 1e-9)]
    rel_tol: f64,
    #[arg(long, default_value_t = 1e-9)]
    abs_tol: f64,
    /// Run on one thread.
    #[arg(long)]
    sequential: bool,
}

/// A failure carrying its exit status.
struct Failure {
    code: u8,
    message: String,
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure {
        code: status::INPUT,
        message: message.into(),
    }
}

impl From<slocc::Error> for Failure {
    fn from(e: slocc::Error) -> Self {
        input_error(e.to_string())
    }
}

type Outcome = Result<(String, u8), Failure>;

impl Common {
    fn settings(&self) -> Result<Settings, Failure> {
        let ok = |x: f64| x.is_finite() && x > 0.0;
        if !ok(self.rel_tol) || !ok(self.abs_tol) {
            return Err(input_error("tolerances must be positive"));
        }
        Ok(Settings {
            tol: Tolerances::new(self.rel_tol, self.abs_tol),
            exec: if self.sequential {
                Execution::Sequential
            } else {
                Execution::Parallel
            },
        })
    }

    /// Puts a state into the requested field.
    fn coerce(&self, state: AnyState) -> Result<AnyState, Failure> {
        match (self.mode, state) {
            (Arith::Exact, AnyState::Float(_)) => Err(input_error(
                "exact mode needs an exact state document; rerun with --mode float",
            )),
            (Arith::Float, s) => Ok(AnyState::Float(s.to_float())),
            (Arith::Exact, s) => Ok(s),
        }
    }
}

fn parse_params(items: &[String]) -> Result<Vec<(String, Exact)>, Failure> {
    items
        .iter()
        .map(|item| {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| input_error(format!("parameter `{item}` is not name=value")))?;
            Ok((k.trim().to_string(), v.parse::<Exact>()?))
        })
        .collect()
}

fn load_fixture(name: &str, params: &[(String, Exact)]) -> Result<AnyState, Failure> {
    let borrowed: Vec<(&str, Exact)> = params.iter().map(|(k, v)| (k.as_str(), v.clone())).collect();
    Ok(AnyState::Exact(fixture_state(name, &borrowed)?))
}

/// `fixture:NAME[:a=2,b=3]` or a document path.
fn load_state(spec: &str) -> Result<AnyState, Failure> {
    if let Some(rest) = spec.strip_prefix("fixture:") {
        let (name, params) = match rest.split_once(':') {
            Some((n, p)) => (n, p.split(',').map(str::to_string).collect::<Vec<_>>()),
            None => (rest, Vec::new()),
        };
        return load_fixture(name, &parse_params(&params)?);
    }
    let text = std::fs::read_to_string(FsPath::new(spec)).map_err(|e| input_error(format!("{spec}: {e}")))?;
    Ok(parse_state(&text)?)
}

fn parse_rows(items: &[String], n: usize) -> Result<Option<Vec<RowBits>>, Failure> {
    if items.iter().any(|r| r.eq_ignore_ascii_case("all")) {
        return Ok(None);
    }
    let mut rows = Vec::new();
    for item in items {
        let (a, b) = item
            .split_once(',')
            .ok_or_else(|| input_error(format!("row pair `{item}` is not q1,q2")))?;
        let q = |s: &str| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| input_error(format!("bad qubit index `{s}`")))
        };
        rows.push(RowBits::new(q(a)?, q(b)?, n)?);
    }
    Ok(Some(rows))
}

fn header(state: &AnyState) -> String {
    let field = match state {
        AnyState::Exact(_) => "exact",
        AnyState::Float(_) => "float",
    };
    format!("n = {}  field = {field}\n", state.qubits())
}

fn classify(state: &str, rows: &[String], small: bool, common: &Common) -> Outcome {
    let settings = common.settings()?;
    let state = common.coerce(load_state(state)?)?;
    let rows = parse_rows(rows, state.qubits())?;
    let reports = classify_rows(&state, rows.as_deref(), settings)?;
    let mut out = header(&state);
    let mut code = status::OK;
    for r in &reports {
        let _ = writeln!(out, "{r}");
        if let Some(cp) = &r.char_poly {
            let _ = writeln!(out, "    cp {cp}");
        }
        if r.ambiguity.is_some() {
            code = status::AMBIGUOUS;
        }
    }
    if small {
        match &state {
            AnyState::Exact(s) => match classify_small(s)? {
                SmallReport::TwoQubit {
                    lambda_prime,
                    jordan,
                    entangled,
                } => {
                    let class = if entangled { "entangled" } else { "separable" };
                    let _ = writeln!(out, "lambda' = {lambda_prime}  sjnf {jordan}  {class}");
                }
                SmallReport::ThreeQubit {
                    lambda_sq,
                    s12,
                    s13,
                    class,
                } => {
                    let class = class.map_or("unmatched".to_string(), |c| c.to_string());
                    let _ = writeln!(out, "lambda^2 = {lambda_sq}  S12 {s12}  S13 {s13}  class {class}");
                }
            },
            AnyState::Float(_) => return Err(input_error("--small needs exact arithmetic")),
        }
    }
    Ok((out, code))
}

fn compare(a: &str, b: &str, sl2: bool, all_pairs: bool, common: &Common) -> Outcome {
    let settings = common.settings()?;
    let a = common.coerce(load_state(a)?)?;
    let b = common.coerce(load_state(b)?)?;
    let mode = if sl2 {
        ComparisonMode::Exact
    } else {
        ComparisonMode::Proportional
    };
    let cert = certify_inequivalence(&a, &b, mode, settings)?;
    let mut out = cert.to_string();
    if !all_pairs {
        // verdict and witness lines only
        let keep = if cert.witness.is_some() { 3 } else { 1 };
        out = out.lines().take(keep).map(|l| format!("{l}\n")).collect();
    }
    let code = match cert.verdict {
        Verdict::Inequivalent => status::INEQUIVALENT,
        Verdict::NotDistinguished if cert.ambiguous() => status::AMBIGUOUS,
        Verdict::NotDistinguished => status::OK,
    };
    Ok((out, code))
}

fn verify(state: &str, trials: u64, seed: u64, sl2: bool, verbose: bool, common: &Common) -> Outcome {
    let settings = common.settings()?;
    let AnyState::Exact(state) = load_state(state)? else {
        return Err(input_error("verify draws exact operators and needs an exact state"));
    };
    let config = VerifyConfig {
        trials: trials as usize,
        seed,
        group: if sl2 { GroupMode::Special } else { GroupMode::General },
        path: match common.mode {
            Arith::Exact => orbit::Path::Exact,
            Arith::Float => orbit::Path::Float,
        },
        tol: settings.tol,
        exec: settings.exec,
    };
    let report = orbit::verify(&state, config)?;
    let text = report.to_string();
    let out = if verbose {
        text
    } else {
        // failures and the summary
        let lines: Vec<&str> = text.lines().collect();
        let (summary, trials) = lines.split_last().expect("report has a summary");
        let mut out: String = trials
            .iter()
            .filter(|l| !l.ends_with("pass"))
            .map(|l| format!("{l}\n"))
            .collect();
        out.push_str(summary);
        out.push('\n');
        out
    };
    let code = if report.failed() > 0 {
        status::ASSERTION
    } else if report.ambiguous() > 0 {
        status::AMBIGUOUS
    } else {
        status::OK
    };
    Ok((out, code))
}

fn fixture(name: Option<&str>, params: &[String], list: bool) -> Outcome {
    if list {
        let mut out = String::new();
        for f in catalog() {
            let fam = f.family.map_or(String::new(), |id| format!("  family #{id}"));
            let _ = writeln!(
                out,
                "{:<12} n={} params [{}]  {}{fam}",
                f.name,
                f.qubits,
                f.params.join(", "),
                f.condition
            );
        }
        return Ok((out, status::OK));
    }
    let name = name.ok_or_else(|| input_error("fixture name required (or --list)"))?;
    let state = load_fixture(name, &parse_params(params)?)?;
    Ok((to_document(&state) + "\n", status::OK))
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Classify {
            state,
            rows,
            small,
            common,
        } => classify(&state, &rows, small, &common),
        Command::Compare {
            a,
            b,
            sl2,
            all_pairs,
            common,
        } => compare(&a, &b, sl2, all_pairs, &common),
        Command::Verify {
            state,
            trials,
            seed,
            sl2,
            verbose,
            common,
        } => verify(&state, trials, seed, sl2, verbose, &common),
        Command::Tables { table, common } => {
            let settings = common.settings()?;
            let (text, ok) = tables::render(&table, common.mode == Arith::Float, settings)?;
            Ok((text, if ok { status::OK } else { status::ASSERTION }))
        }
        Command::Fixture { name, params, list } => fixture(name.as_deref(), &params, list),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { status::INPUT } else { status::OK });
        }
    };
    match run(cli) {
        Ok((text, code)) => {
            print!("{text}");
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
