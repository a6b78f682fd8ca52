//! The `flow` command-line tool.
//!
//! Exit codes are part of the interface: 0 for success (for `contract`,
//! success means the graph contracted), 1 for a clean negative verdict
//! (not contractible, or an oracle disagreement), 2 for file and script
//! errors, 3 for bad invocations.

pub mod export;

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};

use flow_core::{
    build_flow_graph, check_equivalence, desugar, enumerate_scripts, geometry_report,
    initial_state, parse_script, run_to_fixpoint, CoreScript, OrderingPolicy, ScriptBounds,
    StatementId, StepPolicy,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

/// Seed source for `--policy seeded` when no explicit seed is given.
pub const SEED_ENV: &str = "FF_SEED";

#[derive(Parser)]
#[command(
    name = "flow",
    version,
    about = "Flow scripts: parse them, draw them, contract them, check them",
    after_help = "exit codes: 0 success, 1 negative verdict, 2 file/script error, 3 bad invocation"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate a script, echoing its canonical form
    Parse { input: PathBuf },
    /// Build the flow graph and export it as DOT or JSON
    Graph {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = FormatArg::Dot)]
        format: FormatArg,
        #[arg(long, value_enum, default_value_t = OrderingArg::Canonical)]
        ordering: OrderingArg,
    },
    /// Report connectivity, planarity and cycle shape of the graph
    Geometry {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = OrderingArg::Canonical)]
        ordering: OrderingArg,
    },
    /// Contract the flow graph and report the verdict
    Contract {
        input: PathBuf,
        /// Replace the script's axioms (comma-separated statement names)
        #[arg(long)]
        axioms: Option<String>,
        /// Emit one JSON record per contraction step
        #[arg(long)]
        trace: bool,
        #[arg(long, value_enum, default_value_t = OrderingArg::Canonical)]
        ordering: OrderingArg,
        /// det | seeded | seeded:<n>  (bare `seeded` reads FF_SEED, default 0)
        #[arg(long, default_value = "det", value_parser = parse_policy)]
        policy: PolicyArg,
    },
    /// Compare contraction against forward chaining for whole scripts
    Check {
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
    },
    /// Run the comparison over every script within size bounds
    Enumerate {
        #[arg(long, default_value_t = 4)]
        max_statements: usize,
        #[arg(long, default_value_t = 3)]
        max_entailments: usize,
        #[arg(long, default_value_t = 2)]
        max_premises: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Dot,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OrderingArg {
    Canonical,
    Reversed,
}

impl From<OrderingArg> for OrderingPolicy {
    fn from(arg: OrderingArg) -> OrderingPolicy {
        match arg {
            OrderingArg::Canonical => OrderingPolicy::Canonical,
            OrderingArg::Reversed => OrderingPolicy::Reversed,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum PolicyArg {
    Det,
    /// Seed given inline, or deferred to the FF_SEED environment variable.
    Seeded(Option<u64>),
}

fn parse_policy(raw: &str) -> Result<PolicyArg, String> {
    match raw {
        "det" => Ok(PolicyArg::Det),
        "seeded" => Ok(PolicyArg::Seeded(None)),
        _ => match raw.strip_prefix("seeded:") {
            Some(seed) => seed
                .parse::<u64>()
                .map(|n| Ok(PolicyArg::Seeded(Some(n))))
                .unwrap_or_else(|_| Err(format!("bad seed '{seed}'"))),
            None => Err(format!("unknown policy '{raw}', expected det | seeded | seeded:<n>")),
        },
    }
}

pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = err.print();
            return code;
        }
    };
    match cli.command {
        Command::Parse { input } => cmd_parse(&input),
        Command::Graph { input, format, ordering } => cmd_graph(&input, format, ordering),
        Command::Geometry { input, ordering } => cmd_geometry(&input, ordering),
        Command::Contract { input, axioms, trace, ordering, policy } => {
            cmd_contract(&input, axioms.as_deref(), trace, ordering, policy)
        }
        Command::Check { inputs } => cmd_check(&inputs),
        Command::Enumerate { max_statements, max_entailments, max_premises } => {
            cmd_enumerate(ScriptBounds { max_statements, max_entailments, max_premises })
        }
    }
}

/// Read, parse and lower a script; errors come back as ready-to-print
/// diagnostics.
fn load_core(path: &Path) -> Result<CoreScript, String> {
    let display = path.display();
    let source = fs::read_to_string(path).map_err(|e| format!("error: {display}: {e}"))?;
    let script = parse_script(&source).map_err(|e| format!("error: {display}: {e}"))?;
    desugar(&script).map_err(|e| format!("error: {display}: {e}"))
}

fn cmd_parse(input: &Path) -> i32 {
    let display = input.display();
    let source = match fs::read_to_string(input) {
        Ok(source) => source,
        Err(e) => {
            eprintln!("error: {display}: {e}");
            return EXIT_INPUT;
        }
    };
    let script = match parse_script(&source) {
        Ok(script) => script,
        Err(e) => {
            eprintln!("error: {display}: {e}");
            return EXIT_INPUT;
        }
    };
    // lowering can still reject (a biconditional doubling an entailment)
    if let Err(e) = desugar(&script) {
        eprintln!("error: {display}: {e}");
        return EXIT_INPUT;
    }
    print!("{}", script.to_source());
    EXIT_OK
}

fn cmd_graph(input: &Path, format: FormatArg, ordering: OrderingArg) -> i32 {
    let core = match load_core(input) {
        Ok(core) => core,
        Err(diagnostic) => {
            eprintln!("{diagnostic}");
            return EXIT_INPUT;
        }
    };
    let graph = build_flow_graph(&core, ordering.into());
    match format {
        FormatArg::Dot => print!("{}", export::export_dot(&graph)),
        FormatArg::Json => print!("{}", export::export_json(&graph)),
    }
    EXIT_OK
}

fn cmd_geometry(input: &Path, ordering: OrderingArg) -> i32 {
    let core = match load_core(input) {
        Ok(core) => core,
        Err(diagnostic) => {
            eprintln!("{diagnostic}");
            return EXIT_INPUT;
        }
    };
    let report = geometry_report(&build_flow_graph(&core, ordering.into()));
    println!("connected: {}", report.connected);
    println!("planar: {}", report.planar);
    println!("simple_cycle: {}", report.simple_cycle);
    match report.internal_edges {
        Some(count) => println!("internal_edges: {count}"),
        None => println!("internal_edges: none"),
    }
    println!("components: {}", report.components);
    EXIT_OK
}

fn cmd_contract(
    input: &Path,
    axioms: Option<&str>,
    trace: bool,
    ordering: OrderingArg,
    policy: PolicyArg,
) -> i32 {
    let core = match load_core(input) {
        Ok(core) => core,
        Err(diagnostic) => {
            eprintln!("{diagnostic}");
            return EXIT_INPUT;
        }
    };
    let core = match axioms {
        None => core,
        Some(list) => {
            let mut set = BTreeSet::new();
            for name in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                match StatementId::new(name) {
                    Ok(id) => {
                        set.insert(id);
                    }
                    Err(e) => {
                        eprintln!("error: --axioms: {e}");
                        return EXIT_INPUT;
                    }
                }
            }
            match core.with_axioms(set) {
                Ok(core) => core,
                Err(e) => {
                    eprintln!("error: --axioms: {e}");
                    return EXIT_INPUT;
                }
            }
        }
    };
    let step_policy = match policy {
        PolicyArg::Det => StepPolicy::Deterministic,
        PolicyArg::Seeded(Some(seed)) => StepPolicy::Seeded(seed),
        PolicyArg::Seeded(None) => match std::env::var(SEED_ENV) {
            Err(std::env::VarError::NotPresent) => StepPolicy::Seeded(0),
            Ok(raw) => match raw.parse::<u64>() {
                Ok(seed) => StepPolicy::Seeded(seed),
                Err(_) => {
                    eprintln!("error: {SEED_ENV} must be an unsigned integer, got '{raw}'");
                    return EXIT_USAGE;
                }
            },
            Err(e) => {
                eprintln!("error: {SEED_ENV}: {e}");
                return EXIT_USAGE;
            }
        },
    };
    let graph = build_flow_graph(&core, ordering.into());
    let state = match initial_state(&graph) {
        Ok(state) => state,
        Err(e) => {
            eprintln!("error: {}: {e}", input.display());
            return EXIT_INPUT;
        }
    };
    let result = run_to_fixpoint(state, step_policy);
    if let Some(verbatim) = axioms {
        println!("axioms: {verbatim}");
    }
    if trace {
        for (i, step) in result.trace.iter().enumerate() {
            println!("{}", export::trace_line(i + 1, step));
        }
    }
    println!("contracted: {}", result.contracted);
    println!("steps: {}", result.trace.len());
    if result.contracted {
        EXIT_OK
    } else {
        let stuck: Vec<&str> = result
            .stuck_unestablished
            .iter()
            .map(StatementId::as_str)
            .collect();
        println!("stuck: {}", stuck.join(", "));
        EXIT_NEGATIVE
    }
}

fn cmd_check(inputs: &[PathBuf]) -> i32 {
    let mut disagreements = 0usize;
    for input in inputs {
        let core = match load_core(input) {
            Ok(core) => core,
            Err(diagnostic) => {
                eprintln!("{diagnostic}");
                return EXIT_INPUT;
            }
        };
        let report = check_equivalence(&core);
        println!("{}", export::conjecture_line(&report));
        if !report.agree {
            disagreements += 1;
        }
    }
    if disagreements > 0 {
        EXIT_NEGATIVE
    } else {
        EXIT_OK
    }
}

fn cmd_enumerate(bounds: ScriptBounds) -> i32 {
    let mut scripts = 0usize;
    let mut disagreements = 0usize;
    for script in enumerate_scripts(bounds) {
        let report = check_equivalence(&script);
        println!("{}", export::conjecture_line(&report));
        scripts += 1;
        if !report.agree {
            disagreements += 1;
        }
    }
    eprintln!("scripts: {scripts} disagreements: {disagreements}");
    if disagreements > 0 {
        EXIT_NEGATIVE
    } else {
        EXIT_OK
    }
}
