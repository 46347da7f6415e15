use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use prehilb_core::laws::{find_distributivity_counterexample, nonfibred_witness};
use prehilb_cli::{
    check_entailment, eval_formula, export_report, format_formula, lattice_graph, parse_formula,
    parse_model, run_law_suite, ExportFormat, LawName, Model, Report, SuiteConfig,
};

#[derive(Parser)]
#[command(
    name = "prehilb",
    version,
    about = "Exact subspace-lattice model over the Gaussian rationals: seeded law suites, \
             a regular-logic evaluator, and counterexample witnesses"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run law suites over seeded random instances
    Check {
        /// Comma-separated law names; defaults to every registered suite
        #[arg(long, value_delimiter = ',')]
        laws: Vec<String>,
        /// Largest object dimension sampled
        #[arg(long, default_value_t = 4)]
        dims: usize,
        /// Instances per suite
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Write the machine-readable report to this file
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Evaluate a formula against a model and print the resulting projection
    Eval {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        formula: String,
    },
    /// Decide whether one formula entails another over the same object
    Entails {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
    },
    /// Search for a counterexample to a lattice law
    Search {
        /// Which counterexample to search for (supported: distributivity)
        #[arg(long)]
        counterexample: String,
        #[arg(long, default_value_t = 2)]
        dim: usize,
    },
    /// Reproduce a fixed counterexample witness
    Witness {
        /// The failure of the orthocomplement to transport Cartesian squares
        #[arg(long = "nonfibred-perp", required = true)]
        nonfibred_perp: bool,
    },
    /// Render the sublattice generated by a model's predicates on one object
    Lattice {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        object: String,
        /// Write Graphviz output to this file
        #[arg(long)]
        dot: PathBuf,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn load_model(path: &Path) -> Result<Model, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read `{}`: {e}", path.display()))?;
    parse_model(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Check { laws, dims, samples, seed, json } => {
            let laws: Vec<LawName> = if laws.is_empty() {
                LawName::ALL.to_vec()
            } else {
                laws.iter()
                    .map(|name| name.parse().map_err(|e| format!("{e}")))
                    .collect::<Result<_, String>>()?
            };
            let config = SuiteConfig { laws, dims, samples, seed };
            let report = run_law_suite(&config);
            print_report(&report);
            if let Some(path) = json {
                let text = export_report(&report, ExportFormat::Json).expect("json always exports");
                std::fs::write(&path, text)
                    .map_err(|e| format!("cannot write `{}`: {e}", path.display()))?;
                println!("report written to {}", path.display());
            }
            if report.all_passed() {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(1))
            }
        }
        Command::Eval { model, formula } => {
            let model = load_model(&model)?;
            let typed = parse_formula(&formula, &model).map_err(|e| e.to_string())?;
            let value = eval_formula(&model, &typed.formula);
            println!("formula: {}", format_formula(&typed.formula));
            println!("object: {}", typed.object);
            println!("rank: {} of {}", value.rank(), value.ambient());
            println!("proj: {value}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Entails { model, lhs, rhs } => {
            let model = load_model(&model)?;
            let lhs = parse_formula(&lhs, &model).map_err(|e| format!("lhs: {e}"))?;
            let rhs = parse_formula(&rhs, &model).map_err(|e| format!("rhs: {e}"))?;
            let holds = check_entailment(&model, &lhs.formula, &rhs.formula)
                .map_err(|e| e.to_string())?;
            println!("{holds}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Search { counterexample, dim } => {
            if counterexample != "distributivity" {
                return Err(format!(
                    "unknown counterexample `{counterexample}` (supported: distributivity)"
                ));
            }
            match find_distributivity_counterexample(dim) {
                Some(w) => {
                    println!("distributivity fails in dimension {dim}:");
                    println!("  M = {}", w.first);
                    println!("  N = {}", w.second);
                    println!("  P = {}", w.third);
                    println!("  meet(M, join(N, P)) = {}", w.lhs);
                    println!("  join(meet(M, N), meet(M, P)) = {}", w.rhs);
                }
                None => {
                    println!(
                        "no counterexample: in dimension {dim} the subspace lattice is a chain, hence distributive"
                    );
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Witness { nonfibred_perp: _ } => {
            let w = nonfibred_witness();
            println!("the orthocomplement does not transport Cartesian squares:");
            println!("  f = {}  (m·m† for the left inclusion m : 1 -> 1 (+) 1)", w.morphism);
            println!("  M = {}  (the subobject m represents, in the domain)", w.sub_dom);
            println!("  N = {}  (top, in the codomain)", w.sub_cod);
            println!("  over_cartesian: {}", w.flags.over_cartesian);
            println!("  perp_cartesian: {}", w.flags.perp_cartesian);
            println!("  lhs, the dagger itself          = {}", w.lhs);
            println!("  rhs, its perp-projected version = {}", w.rhs);
            Ok(ExitCode::SUCCESS)
        }
        Command::Lattice { model, object, dot } => {
            let model = load_model(&model)?;
            let graph = lattice_graph(&model, &object).map_err(|e| e.to_string())?;
            let report = Report { suites: Vec::new(), lattice: Some(graph) };
            let text = export_report(&report, ExportFormat::Dot).expect("lattice payload present");
            std::fs::write(&dot, text)
                .map_err(|e| format!("cannot write `{}`: {e}", dot.display()))?;
            let graph = report.lattice.as_ref().unwrap();
            println!(
                "wrote {} nodes and {} edges for `{object}` to {}",
                graph.nodes.len(),
                graph.edges.len(),
                dot.display()
            );
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn print_report(report: &Report) {
    for suite in &report.suites {
        println!(
            "{}: {}/{} passed (seed {}, {} ms)",
            suite.suite, suite.passed, suite.instances, suite.seed, suite.wall_ms
        );
        for witness in &suite.witnesses {
            let prefix = if suite.failed > 0 { "failing witness" } else { "witness" };
            println!("  {prefix}: {witness}");
        }
    }
    let failed: usize = report.suites.iter().map(|s| s.failed).sum();
    if failed == 0 {
        println!("all suites passed");
    } else {
        println!("{failed} instance(s) FAILED");
    }
}
