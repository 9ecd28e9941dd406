//! `m3lat`: runs the verification suites and explores finite lattices.
//!
//! Exit status is 0 when every requested check passes, 1 when one fails and
//! 2 on usage or input errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use m3lat::banfn;
use m3lat::finlat::FiniteLattice;
use m3lat::verify::{self, Mode, Outcome, Params, VerificationReport};

#[derive(Parser)]
#[command(name = "m3lat", version, about = "Balanced-triple lattices, Banaschewski functions and their verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one verification suite, or `all` of them.
    Verify {
        /// Lemma id, e.g. `gf-closure`, or `all`.
        lemma: String,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        json_out: Option<PathBuf>,
    },
    /// Banaschewski functions on a lattice read from JSON.
    Banfn {
        lattice: PathBuf,
        #[command(subcommand)]
        action: BanfnAction,
        #[arg(long, global = true)]
        json_out: Option<PathBuf>,
    },
    /// Print `M3[L]` for a lattice read from JSON.
    M3 {
        lattice: PathBuf,
        #[arg(long)]
        json_out: Option<PathBuf>,
    },
    /// Print the Hasse diagram of a lattice in DOT.
    ExportDot {
        lattice: PathBuf,
        /// Export `M3[L]` instead of `L`.
        #[arg(long)]
        m3: bool,
    },
    /// Report the order-theoretic properties of a lattice read from JSON.
    CheckLattice {
        lattice: PathBuf,
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json_out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum BanfnAction {
    /// List every Banaschewski function.
    Enumerate,
    /// Look for a Banaschewski function with exactly the given image.
    RangeSearch {
        #[arg(long, value_delimiter = ',', required = true)]
        mask: Vec<usize>,
    },
}

#[derive(Args)]
struct ParamArgs {
    #[arg(long, default_value_t = Params::default().n)]
    n: usize,
    #[arg(long, default_value_t = Params::default().p)]
    p: u64,
    #[arg(long, default_value_t = Params::default().samples)]
    samples: u64,
    #[arg(long, default_value_t = Params::default().seed)]
    seed: u64,
    #[arg(long, default_value_t = Params::default().bound)]
    bound: u32,
}

impl From<ParamArgs> for Params {
    fn from(a: ParamArgs) -> Self {
        Params {
            n: a.n,
            p: a.p,
            samples: a.samples,
            seed: a.seed,
            bound: a.bound,
        }
    }
}

type CliResult = Result<bool, String>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> CliResult {
    match command {
        Command::Verify { lemma, params, json_out } => cmd_verify(&lemma, &params.into(), json_out.as_deref()),
        Command::Banfn { lattice, action, json_out } => {
            let l = read_lattice(&lattice)?;
            let value = match action {
                BanfnAction::Enumerate => {
                    let e = banfn::enumerate_banaschewski(&l).map_err(|e| e.to_string())?;
                    json!({"count": e.maps.len(), "maps": e.maps, "uncomplemented": e.uncomplemented})
                }
                BanfnAction::RangeSearch { mask } => {
                    let mask = mask.into_iter().collect();
                    let found = banfn::is_range_of_some_banaschewski(&l, &mask).map_err(|e| e.to_string())?;
                    json!({"mask": mask, "found": found})
                }
            };
            emit(&value, json_out.as_deref())?;
            Ok(true)
        }
        Command::M3 { lattice, json_out } => {
            let m3 = read_lattice(&lattice)?.m3_of().map_err(|e| e.to_string())?;
            emit(&serde_json::to_value(&m3).expect("lattice serializes"), json_out.as_deref())?;
            Ok(true)
        }
        Command::ExportDot { lattice, m3 } => {
            let mut l = read_lattice(&lattice)?;
            if m3 {
                l = l.m3_of().map_err(|e| e.to_string())?;
            }
            print!("{}", l.to_dot());
            Ok(true)
        }
        Command::CheckLattice { lattice, samples, seed, json_out } => {
            let l = read_lattice(&lattice)?;
            let value = json!({
                "n": l.n(),
                "distributive": l.is_distributive(),
                "modular": l.is_modular(),
                "complemented": l.is_complemented(),
                "uniquely_complemented": l.is_uniquely_complemented(),
                "boolean": l.is_boolean(),
                "arguesian": l.is_arguesian(samples, seed),
            });
            emit(&value, json_out.as_deref())?;
            Ok(true)
        }
    }
}

fn cmd_verify(lemma: &str, params: &Params, json_out: Option<&Path>) -> CliResult {
    let reports = if lemma == "all" {
        verify::run_all(params)
    } else {
        verify::run(lemma, params).map(|r| vec![r])
    }
    .map_err(|e| e.to_string())?;
    for r in &reports {
        println!("{}", summary(r));
    }
    if let Some(path) = json_out {
        let value = if lemma == "all" {
            serde_json::to_value(&reports)
        } else {
            serde_json::to_value(&reports[0])
        }
        .expect("reports serialize");
        write_json(path, &value)?;
    }
    Ok(reports.iter().all(VerificationReport::passed))
}

fn summary(r: &VerificationReport) -> String {
    let mode = match r.mode {
        Mode::Exhaustive { cases } => format!("exhaustive({cases})"),
        Mode::Sampled { count, seed } => format!("sampled({count}, seed {seed})"),
        Mode::Combined { cases, count, seed } => format!("exhaustive({cases}) + sampled({count}, seed {seed})"),
    };
    match &r.result {
        Outcome::Pass => format!("pass {} {mode} {} ms", r.lemma, r.elapsed_ms),
        Outcome::Fail { counterexample } => {
            format!("FAIL {} {mode} {} ms counterexample: {counterexample}", r.lemma, r.elapsed_ms)
        }
    }
}

fn read_lattice(path: &Path) -> Result<FiniteLattice, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    // Syntax errors carry a line and column; schema errors name the field.
    let value: Value = serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    serde_json::from_value(value).map_err(|e| format!("{}: {e}", path.display()))
}

fn emit(value: &Value, json_out: Option<&Path>) -> Result<(), String> {
    println!("{}", serde_json::to_string_pretty(value).expect("value serializes"));
    if let Some(path) = json_out {
        write_json(path, value)?;
    }
    Ok(())
}

fn write_json(path: &Path, value: &Value) -> Result<(), String> {
    let text = serde_json::to_string_pretty(value).expect("value serializes") + "\n";
    fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))
}
