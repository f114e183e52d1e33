//! Command-line front end: check semigroups, convolve measure files,
//! compute norms and Lipschitz-dual distances, trace orbits, and run
//! the ambit pipeline end to end.
//!
//! Reports are line oriented (`CHECK <name> PASS|FAIL <detail>`,
//! closing with `RESULT PASS|FAIL`) and byte-identical across runs for
//! identical inputs. Exit codes: 0 all checks pass, 1 some check
//! failed, 2 invalid input or I/O error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use ambit_core::io;
use ambit_core::{
    build_ambit_function, check_associativity, check_separating_translations,
    check_weak_left_cancellation, enumerate_neighborhoods, format_rat, greedy_select, orbit_trace,
    ueb_distance, verify_ambit, Associativity, ClosedFormVerdict, Error, EpsilonRule,
    MolecularMeasure, Pseudometric, Sampler, Semigroup, Window, DEFAULT_SEED,
};

#[derive(Parser)]
#[command(
    name = "ambit",
    about = "Exact convolution algebra on discrete semigroups and ambit witnesses",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a semigroup: associativity plus cancellation evidence.
    CheckSemigroup {
        /// Builtin name (free2, nat-plus, nat-times, left-zero:<n>,
        /// right-zero:<n>) or path to a semigroup file.
        #[arg(long)]
        semigroup: String,
        /// Evidence window size.
        #[arg(long, default_value_t = 12)]
        window: usize,
    },
    /// Convolve two measure files into a canonical measure file.
    Convolve {
        mu: PathBuf,
        nu: PathBuf,
        /// Optional cross-check: both measures must live over this
        /// semigroup.
        #[arg(long)]
        semigroup: Option<String>,
        /// Output path; omitted means stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Total-variation norm of a measure file.
    Norm { measure: PathBuf },
    /// Exact Lipschitz-dual distance between two measure files.
    UebDistance {
        mu: PathBuf,
        nu: PathBuf,
        /// Pseudometric file; omitted means the discrete metric.
        #[arg(long)]
        metric: Option<PathBuf>,
        /// Window: first k enumerated elements. Omitted means the union
        /// of the two supports, which gives the same value.
        #[arg(long)]
        window: Option<usize>,
    },
    /// Trace the right orbit of a window function.
    OrbitTrace {
        #[arg(long)]
        semigroup: String,
        /// Window-function file.
        #[arg(long)]
        function: PathBuf,
        /// Probe window size (coordinates of each trace vector).
        #[arg(long, default_value_t = 3)]
        probe: usize,
        /// Search window size (how many translates to trace).
        #[arg(long, default_value_t = 16)]
        window: usize,
    },
    /// Ambit-witness pipeline.
    Ambit {
        #[command(subcommand)]
        command: AmbitCommand,
    },
    /// Randomized law suites.
    Props {
        #[command(subcommand)]
        command: PropsCommand,
    },
}

#[derive(Subcommand)]
enum AmbitCommand {
    /// Enumerate neighborhoods, greedily select, build the witness
    /// function, verify it, and optionally write the witness file.
    Build(AmbitBuildArgs),
    /// Verify a witness file from scratch.
    Verify {
        #[arg(long)]
        semigroup: String,
        witness: PathBuf,
    },
}

#[derive(Args)]
struct AmbitBuildArgs {
    #[arg(long)]
    semigroup: String,
    /// Number of neighborhoods to enumerate.
    #[arg(long, default_value_t = 100)]
    count: usize,
    /// Largest enumeration-prefix window size.
    #[arg(long, default_value_t = 8)]
    window: usize,
    /// Pattern grid denominator m (values 0, 1/m, ..., 1).
    #[arg(long, default_value_t = 8)]
    grid: u64,
    /// Candidate budget per greedy step.
    #[arg(long, default_value_t = 1_000_000)]
    budget: u64,
    /// Witness output path.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum PropsCommand {
    /// Run the seeded law suites over one carrier.
    Test {
        #[arg(long, default_value = "free2")]
        semigroup: String,
        /// Seed for the sampled cases.
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Cases per suite.
        #[arg(long, default_value_t = 200)]
        count: usize,
        /// Sampling pool: first k enumerated elements.
        #[arg(long, default_value_t = 20)]
        window: usize,
    },
}

/// Line-oriented report: prints CHECK lines as they happen and tracks
/// the overall outcome.
struct Report {
    failed: bool,
}

impl Report {
    fn new() -> Self {
        Self { failed: false }
    }

    fn check(&mut self, name: &str, passed: bool, detail: &str) {
        let status = if passed { "PASS" } else { "FAIL" };
        println!("CHECK {name} {status} {detail}");
        if !passed {
            self.failed = true;
        }
    }

    fn finish(self) -> ExitCode {
        if self.failed {
            println!("RESULT FAIL");
            ExitCode::from(1)
        } else {
            println!("RESULT PASS");
            ExitCode::SUCCESS
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<ExitCode, Error> {
    match command {
        Command::CheckSemigroup { semigroup, window } => check_semigroup(&semigroup, window),
        Command::Convolve { mu, nu, semigroup, out } => convolve(&mu, &nu, semigroup.as_deref(), out.as_deref()),
        Command::Norm { measure } => {
            let mu = load_measure(&measure)?;
            println!("{}", format_rat(&mu.norm()));
            Ok(ExitCode::SUCCESS)
        }
        Command::UebDistance { mu, nu, metric, window } => {
            ueb_distance_command(&mu, &nu, metric.as_deref(), window)
        }
        Command::OrbitTrace { semigroup, function, probe, window } => {
            orbit_trace_command(&semigroup, &function, probe, window)
        }
        Command::Ambit { command } => match command {
            AmbitCommand::Build(args) => ambit_build(args),
            AmbitCommand::Verify { semigroup, witness } => ambit_verify(&semigroup, &witness),
        },
        Command::Props { command } => match command {
            PropsCommand::Test { semigroup, seed, count, window } => {
                props_test(&semigroup, seed, count, window)
            }
        },
    }
}

fn load_semigroup(spec: &str) -> Result<Semigroup, Error> {
    io::semigroup_from_spec(spec, Path::new("."))
}

fn load_measure(path: &Path) -> Result<MolecularMeasure, Error> {
    let mut warnings = Vec::new();
    let mu = io::read_measure(path, &mut warnings)?;
    for w in warnings {
        eprintln!("warning: {}: {w}", path.display());
    }
    Ok(mu)
}

fn capped_window(s: &Semigroup, k: usize) -> Result<Window, Error> {
    let k = match s.carrier_size() {
        Some(n) => k.min(n as usize),
        None => k,
    };
    s.enumerate(k)
}

fn verdict_detail(verdict: &Option<ClosedFormVerdict>) -> String {
    match verdict {
        Some(v) if v.holds() => format!("verdict=holds ({})", v.reason()),
        Some(v) => format!("verdict=fails ({})", v.reason()),
        None => "verdict=none (window evidence only)".to_string(),
    }
}

fn check_semigroup(spec: &str, window: usize) -> Result<ExitCode, Error> {
    let mut report = Report::new();

    // For table files, scan associativity as a check rather than a load
    // error, so the counterexample lands in the report.
    let s = if io::builtin_semigroup(spec).is_none() {
        let value = io::read_value(Path::new(spec))?;
        let obj = value.as_object();
        let is_table = obj
            .and_then(|o| o.get("kind"))
            .and_then(|k| k.as_str())
            .is_some_and(|k| k == "cayley");
        if is_table {
            let table: Vec<Vec<usize>> = obj
                .and_then(|o| o.get("table"))
                .and_then(|t| serde_json::from_value(t.clone()).ok())
                .ok_or_else(|| Error::MalformedTable {
                    reason: "missing or malformed table field".to_string(),
                })?;
            match check_associativity(&table)? {
                Associativity::Holds => {
                    report.check("associativity", true, &format!("order={}", table.len()));
                }
                Associativity::Counterexample { x, y, z } => {
                    report.check(
                        "associativity",
                        false,
                        &format!("counterexample=({x},{y},{z})"),
                    );
                    return Ok(report.finish());
                }
            }
        }
        io::semigroup_from_json(&value)?
    } else {
        let s = load_semigroup(spec)?;
        report.check("associativity", true, "law associative by construction");
        s
    };

    let w = capped_window(&s, window.max(1))?;
    let probe_len = 2.min(w.len());
    let probe = Window::new(&s, w.elements()[..probe_len].to_vec())?;

    let separation = check_separating_translations(&probe, &w)?;
    let separation_failed = match &separation.verdict {
        Some(v) => !v.holds(),
        None => probe.len() >= 2 && separation.qualifying.is_empty(),
    };
    report.check(
        "separating-translations",
        !separation_failed,
        &format!(
            "qualifying={}/{} probe={} {}",
            separation.qualifying.len(),
            separation.searched,
            probe.len(),
            verdict_detail(&separation.verdict)
        ),
    );

    let schedule: Vec<Window> = {
        let mut sizes: Vec<usize> = vec![w.len().div_ceil(3), (2 * w.len()).div_ceil(3), w.len()];
        sizes.retain(|&k| k > 0);
        sizes.dedup();
        sizes
            .into_iter()
            .map(|k| s.enumerate(k))
            .collect::<Result<_, _>>()?
    };
    let x0 = w.elements().first().cloned();
    match x0 {
        Some(x0) => {
            let preimages = check_weak_left_cancellation(&x0, &probe, &schedule)?;
            let preimage_failed = match &preimages.verdict {
                Some(v) => !v.holds(),
                None => preimages.fills_every_window(),
            };
            let sizes: Vec<String> = preimages
                .counts
                .iter()
                .map(|(w, c)| format!("{c}/{w}"))
                .collect();
            report.check(
                "weak-left-cancellation",
                !preimage_failed,
                &format!("sizes={} {}", sizes.join(","), verdict_detail(&preimages.verdict)),
            );
        }
        None => report.check("weak-left-cancellation", true, "empty window, vacuous"),
    }

    Ok(report.finish())
}

fn convolve(
    mu_path: &Path,
    nu_path: &Path,
    semigroup: Option<&str>,
    out: Option<&Path>,
) -> Result<ExitCode, Error> {
    let mu = load_measure(mu_path)?;
    let nu = load_measure(nu_path)?;
    if let Some(spec) = semigroup {
        let s = load_semigroup(spec)?;
        if mu.handle() != &s || nu.handle() != &s {
            return Err(Error::HandleMismatch);
        }
    }
    let result = mu.convolve(&nu)?;
    let doc = io::measure_to_json(&result);
    match out {
        Some(path) => {
            io::write_value(path, &doc)?;
            println!("WROTE {} terms={}", path.display(), result.support_size());
        }
        None => print!("{}", io::to_canonical_string(&doc)),
    }
    Ok(ExitCode::SUCCESS)
}

fn ueb_distance_command(
    mu_path: &Path,
    nu_path: &Path,
    metric: Option<&Path>,
    window: Option<usize>,
) -> Result<ExitCode, Error> {
    let mu = load_measure(mu_path)?;
    let nu = load_measure(nu_path)?;
    if mu.handle() != nu.handle() {
        return Err(Error::HandleMismatch);
    }
    let s = mu.handle().clone();
    let d = match metric {
        Some(path) => io::pseudometric_from_json(&s, &io::read_value(path)?)?,
        None => Pseudometric::Discrete,
    };
    let w = match window {
        Some(k) => s.enumerate(k)?,
        None => {
            let mut union: Vec<_> = mu.support().chain(nu.support()).cloned().collect();
            union.sort();
            union.dedup();
            Window::new(&s, union)?
        }
    };
    println!("{}", format_rat(&ueb_distance(&mu, &nu, &d, &w)?));
    Ok(ExitCode::SUCCESS)
}

fn orbit_trace_command(
    spec: &str,
    function: &Path,
    probe: usize,
    window: usize,
) -> Result<ExitCode, Error> {
    let s = load_semigroup(spec)?;
    let f = io::window_function_from_json(&s, &io::read_value(function)?)?;
    let probe = capped_window(&s, probe.max(1))?;
    let search = capped_window(&s, window.max(1))?;
    let trace = orbit_trace(&f, &probe, &search)?;
    println!("VECTORS {}", trace.vectors.len());
    for vector in &trace.vectors {
        let coords: Vec<String> = vector.iter().map(format_rat).collect();
        println!("TRACE {}", coords.join(","));
    }
    Ok(ExitCode::SUCCESS)
}

fn ambit_build(args: AmbitBuildArgs) -> Result<ExitCode, Error> {
    let s = load_semigroup(&args.semigroup)?;
    let mut report = Report::new();

    let neighborhoods =
        enumerate_neighborhoods(&s, args.count, args.window, args.grid, &EpsilonRule::Halving)?;
    report.check(
        "neighborhoods",
        neighborhoods.len() == args.count,
        &format!("count={} grid={} window<={}", neighborhoods.len(), args.grid, args.window),
    );

    let selections = match greedy_select(&s, &neighborhoods, args.budget) {
        Ok(selections) => selections,
        Err(Error::BudgetExhausted { index, scanned }) => {
            report.check(
                "greedy-selection",
                false,
                &format!("budget-exhausted neighborhood={index} scanned={scanned}"),
            );
            return Ok(report.finish());
        }
        Err(e) => return Err(e),
    };
    report.check(
        "greedy-selection",
        true,
        &format!("selected={}", selections.len()),
    );

    let witness = build_ambit_function(&s, neighborhoods, selections)?;
    for check in verify_ambit(&s, &witness)?.checks {
        report.check(check.name, check.passed, &check.detail);
    }

    if let Some(path) = &args.out {
        io::write_value(path, &io::witness_to_json(&witness))?;
        println!("WROTE {}", path.display());
    }
    Ok(report.finish())
}

fn ambit_verify(spec: &str, witness_path: &Path) -> Result<ExitCode, Error> {
    let s = load_semigroup(spec)?;
    let witness = io::witness_from_json(&s, &io::read_value(witness_path)?)?;
    let mut report = Report::new();
    for check in verify_ambit(&s, &witness)?.checks {
        report.check(check.name, check.passed, &check.detail);
    }
    Ok(report.finish())
}

fn props_test(spec: &str, seed: u64, count: usize, window: usize) -> Result<ExitCode, Error> {
    let s = load_semigroup(spec)?;
    let pool = capped_window(&s, window.max(1))?;
    let mut sampler = Sampler::new(seed);
    let mut report = Report::new();
    println!("SEED {seed}");
    for outcome in ambit_core::properties::standard_suites(&pool, &mut sampler, count)? {
        let detail = match &outcome.first_failure {
            None => format!("cases={}", outcome.cases),
            Some(failure) => format!(
                "cases={} failures={} first: {failure}",
                outcome.cases, outcome.failures
            ),
        };
        report.check(outcome.name, outcome.passed(), &detail);
    }
    Ok(report.finish())
}
