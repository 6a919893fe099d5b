use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use cyclemod::certificate::Certificate;
use cyclemod::cycles::{all_residues_mod_k, find_k_cycles};
use cyclemod::generate::{generate, GenSpec};
use cyclemod::oracle::{oracle_paths, PathMode};
use cyclemod::paths::{check_hypothesis, find_paths, ExtractionTrace, PathExtraction};
use cyclemod::sweep::{run, Selection, SweepConfig};
use cyclemod::{Error, Graph};

const EXIT_PARSE: u8 = 1;
const EXIT_HYPOTHESIS: u8 = 2;
const EXIT_NONE: u8 = 3;
const EXIT_VERIFY: u8 = 4;
const EXIT_GEN: u8 = 5;
const EXIT_BUDGET: u8 = 6;

#[derive(Parser)]
#[command(name = "cyclemod", version)]
#[command(about = "Path and cycle families with controlled lengths, with checkable certificates")]
struct Cli {
    #[command(subcommand)]
    command: Commands,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    /// Length condition only
    Length,
    /// Length or semi-length condition
    Flex,
}

#[derive(Subcommand)]
enum Commands {
    /// k (x, y)-paths with controlled lengths
    Paths {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        x: usize,
        #[arg(long)]
        y: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value = "length")]
        mode: Mode,
        /// Answer by exhaustive search instead of the constructive extractor
        #[arg(long)]
        oracle: bool,
        /// Write the certificate here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// k cycles with consecutive lengths or the length condition
    Cycles {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        k: usize,
        /// Also certify one cycle per residue mod k (odd k only)
        #[arg(long = "mod")]
        residues: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-check a certificate from scratch
    Verify {
        #[arg(long)]
        cert: PathBuf,
    },
    /// Seeded random graph with a minimum degree and connectivity
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        mindeg: usize,
        /// 2 for exactly 2-connected, 3 for 3-connected
        #[arg(long, default_value_t = 2)]
        conn: usize,
        #[arg(long)]
        bipartite: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run both extractors over many small graphs and tabulate the results
    Sweep {
        #[arg(long, default_value_t = 6)]
        nmax: usize,
        #[arg(long, default_value_t = 3)]
        kmax: usize,
        /// Every graph up to isomorphism (the default)
        #[arg(long, conflicts_with = "samples")]
        exhaustive: bool,
        /// This many random graphs per order instead
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Cycles only
        #[arg(long)]
        no_paths: bool,
        /// Print the report as JSON
        #[arg(long)]
        json: bool,
    },
}

struct Failure {
    code: u8,
    msg: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } | Error::InvalidArgument(_) => EXIT_PARSE,
            Error::HypothesisNotMet(_) | Error::NotRooted2Connected | Error::Disconnected => EXIT_HYPOTHESIS,
            Error::NoFamily | Error::InvalidWitness(_) => EXIT_NONE,
            Error::Infeasible(_) => EXIT_GEN,
            Error::BudgetExceeded(_) => EXIT_BUDGET,
        };
        Failure { code, msg: e.to_string() }
    }
}

fn fail(code: u8, msg: impl Into<String>) -> Failure {
    Failure { code, msg: msg.into() }
}

fn read_graph(path: &Path) -> Result<Graph, Failure> {
    let text = fs::read_to_string(path).map_err(|e| fail(EXIT_PARSE, format!("{}: {e}", path.display())))?;
    Graph::parse(&text).map_err(|e| fail(EXIT_PARSE, format!("{}: {e}", path.display())))
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| fail(EXIT_PARSE, format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_cert(cert: &Certificate, out: Option<&Path>) -> Result<u8, Failure> {
    let mut text = cert.to_json();
    text.push('\n');
    emit(&text, out)?;
    if cert.constructive_gap {
        eprintln!("warning: answer came from the exhaustive fallback");
        return Ok(EXIT_NONE);
    }
    Ok(0)
}

fn paths(
    graph: &Path,
    x: usize,
    y: usize,
    k: usize,
    mode: Mode,
    oracle: bool,
    out: Option<&Path>,
) -> Result<u8, Failure> {
    let g = read_graph(graph)?;
    let mode = match mode {
        Mode::Length => PathMode::Length,
        Mode::Flex => PathMode::LengthOrSemi,
    };
    check_hypothesis(&g, x, y, k, mode)?;
    let ext = if oracle {
        let family = oracle_paths(&g, x, y, k, mode)?.ok_or(Error::NoFamily)?;
        PathExtraction { family, trace: ExtractionTrace::default() }
    } else {
        find_paths(&g, x, y, k, mode)?
    };
    emit_cert(&Certificate::for_paths(&g, x, y, k, mode, &ext), out)
}

fn cycles(graph: &Path, k: usize, residues: bool, out: Option<&Path>) -> Result<u8, Failure> {
    let g = read_graph(graph)?;
    let cert = if residues {
        let (_, ext) = all_residues_mod_k(&g, k)?;
        Certificate::for_cycles(&g, k, &ext, true)
    } else {
        Certificate::for_cycles(&g, k, &find_k_cycles(&g, k)?, false)
    };
    emit_cert(&cert, out)
}

fn verify(path: &Path) -> Result<u8, Failure> {
    let text = fs::read_to_string(path).map_err(|e| fail(EXIT_PARSE, format!("{}: {e}", path.display())))?;
    let cert = Certificate::from_json(&text)?;
    match cert.verify() {
        Ok(()) => {
            println!("OK");
            Ok(0)
        }
        Err(f) => {
            println!("FAIL ({f})");
            Ok(EXIT_VERIFY)
        }
    }
}

fn run_command(cmd: Commands) -> Result<u8, Failure> {
    match cmd {
        Commands::Paths { graph, x, y, k, mode, oracle, out } => {
            paths(&graph, x, y, k, mode, oracle, out.as_deref())
        }
        Commands::Cycles { graph, k, residues, out } => cycles(&graph, k, residues, out.as_deref()),
        Commands::Verify { cert } => verify(&cert),
        Commands::Gen { n, mindeg, conn, bipartite, seed, out } => {
            let g = generate(&GenSpec { n, min_degree: mindeg, conn, bipartite, seed })?;
            emit(&g.to_text(), out.as_deref())?;
            Ok(0)
        }
        Commands::Sweep { nmax, kmax, exhaustive: _, samples, seed, no_paths, json } => {
            if nmax > cyclemod::enumerate::MAX_N && samples.is_none() {
                return Err(fail(
                    EXIT_PARSE,
                    format!("exhaustive sweeps support nmax <= {}", cyclemod::enumerate::MAX_N),
                ));
            }
            let selection = samples.map_or(Selection::Exhaustive, Selection::Samples);
            let mut cfg = SweepConfig::new(nmax, kmax, selection);
            cfg.seed = seed;
            cfg.paths = !no_paths;
            let report = run(&cfg);
            if json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.render());
            }
            Ok(if report.budget_exceeded() {
                EXIT_BUDGET
            } else if report.all_pass() {
                0
            } else {
                EXIT_NONE
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run_command(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
