//! Flow scripts are small deductive scripts: named statements, a set of
//! axioms, and entailments from premise lists to conclusions. This crate
//! parses the script language, lowers scripts onto coloured directed graphs,
//! and decides provability two independent ways — by contracting the graph
//! edge by edge, and by forward chaining over the entailments — so the two
//! verdicts can be checked against each other.

pub mod contract;
pub mod graph;
pub mod oracle;
pub mod planar;
pub mod script;

pub use contract::{
    applicable_steps, apply_step, explore_all_orders, initial_state, run_to_fixpoint,
    ConfluenceReport, ContractError, ContractionResult, ContractionState, ContractionStep, Rule,
    StepPolicy,
};
pub use graph::{
    build_flow_graph, geometry_report, is_planar, is_simple_cycle, underlying_undirected,
    EdgeColour, FlowEdge, FlowGraph, GeometryReport, OrderingPolicy, UndirectedView,
};
pub use oracle::{
    check_equivalence, enumerate_scripts, horn_closure, random_script, ClosureResult,
    ConjectureReport, ScriptBounds,
};
pub use script::{
    desugar, parse_script, tokenize, CoreScript, Entailment, ProofScript, ScriptError,
    StatementId, Token, TokenKind,
};
