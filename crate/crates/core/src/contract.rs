//! Edge-by-edge contraction of a flow graph under two rules:
//!
//! * **R-THRU** — a Thru edge whose endpoint clusters are both established
//!   may be contracted.
//! * **R-IMPL** — an Implies edge may be contracted when its source cluster
//!   is established and no live Thru edge of the same entailment remains
//!   (the premise chain must be spent before the conclusion fires).
//!
//! Contracting an edge merges its endpoint clusters; the merged cluster is
//! established, edges inside it disappear as self-loops, and parallel edges
//! collapse. The graph is *contracted* when every original statement sits in
//! an established cluster and no live edge remains. A cluster is named by
//! the least statement it contains, so steps and live edges can be reported
//! in terms of statement names throughout.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::sync::Arc;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{EdgeColour, FlowEdge, FlowGraph, UndirectedView};
use crate::script::StatementId;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ContractError {
    #[error("the graph declares no axioms, so no cluster can be established")]
    NoAxioms,
    #[error("inapplicable step: {} on {src} -> {dst}", rule.label())]
    InapplicableStep {
        rule: Rule,
        src: StatementId,
        dst: StatementId,
    },
    #[error("more than {0} distinct states while exploring step orders")]
    Exhausted(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rule {
    RThru,
    RImpl,
}

impl Rule {
    pub fn label(self) -> &'static str {
        match self {
            Rule::RThru => "R-THRU",
            Rule::RImpl => "R-IMPL",
        }
    }
}

/// One contraction step. The edge's endpoints are cluster names (the least
/// statement of each cluster) at the moment the step applies.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ContractionStep {
    pub rule: Rule,
    pub edge: FlowEdge,
}

/// Internal edge between cluster representatives, in index space. The
/// derived order — tag, colour, then endpoints — is the canonical step
/// order (indices follow name order because the vertex table is sorted).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct Edge {
    tag: usize,
    colour: EdgeColour,
    src: usize,
    dst: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractionState {
    /// Original vertex names, sorted; indices below point into this table.
    names: Arc<Vec<StatementId>>,
    /// Vertex index -> representative (least index) of its cluster.
    rep: Vec<usize>,
    /// Representatives of established clusters.
    established: BTreeSet<usize>,
    live: BTreeSet<Edge>,
    steps: usize,
}

pub fn initial_state(graph: &FlowGraph) -> Result<ContractionState, ContractError> {
    if graph.axioms.is_empty() && !graph.vertices.is_empty() {
        return Err(ContractError::NoAxioms);
    }
    let names: Vec<StatementId> = graph.vertices.iter().cloned().collect();
    let index = |name: &StatementId| names.binary_search(name).expect("endpoint is a vertex");
    let live = graph
        .edges
        .iter()
        .map(|edge| Edge {
            tag: edge.entailment,
            colour: edge.colour,
            src: index(&edge.src),
            dst: index(&edge.dst),
        })
        .collect();
    Ok(ContractionState {
        rep: (0..names.len()).collect(),
        established: graph.axioms.iter().map(index).collect(),
        names: Arc::new(names),
        live,
        steps: 0,
    })
}

impl ContractionState {
    fn name(&self, idx: usize) -> StatementId {
        self.names[idx].clone()
    }

    fn public_edge(&self, edge: Edge) -> FlowEdge {
        FlowEdge {
            entailment: edge.tag,
            colour: edge.colour,
            src: self.name(edge.src),
            dst: self.name(edge.dst),
        }
    }

    fn has_live_thru(&self, tag: usize) -> bool {
        self.live
            .iter()
            .any(|e| e.tag == tag && e.colour == EdgeColour::Thru)
    }

    fn rule_applies(&self, edge: Edge) -> Option<Rule> {
        match edge.colour {
            EdgeColour::Thru => {
                if self.established.contains(&edge.src) && self.established.contains(&edge.dst) {
                    Some(Rule::RThru)
                } else {
                    None
                }
            }
            EdgeColour::Implies => {
                if self.established.contains(&edge.src) && !self.has_live_thru(edge.tag) {
                    Some(Rule::RImpl)
                } else {
                    None
                }
            }
        }
    }

    pub fn cluster_count(&self) -> usize {
        (0..self.rep.len()).filter(|&v| self.rep[v] == v).count()
    }

    pub fn step_count(&self) -> usize {
        self.steps
    }

    pub fn live_edge_count(&self) -> usize {
        self.live.len()
    }

    /// Live edges with cluster-representative names.
    pub fn live_edges(&self) -> Vec<FlowEdge> {
        self.live.iter().map(|&e| self.public_edge(e)).collect()
    }

    pub fn established_statements(&self) -> BTreeSet<StatementId> {
        (0..self.rep.len())
            .filter(|v| self.established.contains(&self.rep[*v]))
            .map(|v| self.name(v))
            .collect()
    }

    pub fn unestablished_statements(&self) -> BTreeSet<StatementId> {
        (0..self.rep.len())
            .filter(|v| !self.established.contains(&self.rep[*v]))
            .map(|v| self.name(v))
            .collect()
    }

    /// All statements established and nothing left to contract.
    pub fn is_contracted(&self) -> bool {
        self.live.is_empty() && (0..self.rep.len()).all(|v| self.established.contains(&self.rep[v]))
    }

    /// The current cluster-level graph, undirected, for geometric checks.
    pub fn live_view(&self) -> UndirectedView {
        let vertices: BTreeSet<StatementId> = (0..self.rep.len())
            .filter(|&v| self.rep[v] == v)
            .map(|v| self.name(v))
            .collect();
        let mut edges = BTreeSet::new();
        for e in &self.live {
            let (a, b) = (self.name(e.src), self.name(e.dst));
            let pair = if a < b { (a, b) } else { (b, a) };
            edges.insert(pair);
        }
        UndirectedView { vertices, edges }
    }

    /// Dedup key for state-space exploration: the partition, who is
    /// established, and what is live. (The step counter is derived — each
    /// step removes exactly one cluster — so it is not part of identity.)
    fn key(&self) -> (Vec<usize>, Vec<usize>, Vec<Edge>) {
        (
            self.rep.clone(),
            self.established.iter().copied().collect(),
            self.live.iter().copied().collect(),
        )
    }
}

/// Steps applicable right now, sorted by (entailment tag, colour, endpoint
/// names) — the first entry is the deterministic choice.
pub fn applicable_steps(state: &ContractionState) -> Vec<ContractionStep> {
    state
        .live
        .iter()
        .filter_map(|&edge| {
            state.rule_applies(edge).map(|rule| ContractionStep {
                rule,
                edge: state.public_edge(edge),
            })
        })
        .collect()
}

/// Contract one edge, returning the successor state. The step must name
/// current cluster representatives and satisfy its rule's side conditions.
pub fn apply_step(
    state: &ContractionState,
    step: &ContractionStep,
) -> Result<ContractionState, ContractError> {
    let inapplicable = || ContractError::InapplicableStep {
        rule: step.rule,
        src: step.edge.src.clone(),
        dst: step.edge.dst.clone(),
    };
    let src = state
        .names
        .binary_search(&step.edge.src)
        .map_err(|_| inapplicable())?;
    let dst = state
        .names
        .binary_search(&step.edge.dst)
        .map_err(|_| inapplicable())?;
    // endpoints must be cluster representatives
    if state.rep[src] != src || state.rep[dst] != dst {
        return Err(inapplicable());
    }
    let edge = Edge {
        tag: step.edge.entailment,
        colour: step.edge.colour,
        src,
        dst,
    };
    if !state.live.contains(&edge) || state.rule_applies(edge) != Some(step.rule) {
        return Err(inapplicable());
    }

    let keep = src.min(dst);
    let drop = src.max(dst);
    let mut next = state.clone();
    for r in next.rep.iter_mut() {
        if *r == drop {
            *r = keep;
        }
    }
    next.established.remove(&drop);
    // a merged cluster is always established: both rules demand an
    // established source, R-THRU an established target as well
    next.established.insert(keep);
    next.live = state
        .live
        .iter()
        .filter_map(|e| {
            let remap = |v: usize| if v == drop { keep } else { v };
            let (s, d) = (remap(e.src), remap(e.dst));
            // edges inside the merged cluster become self-loops and vanish
            (s != d).then_some(Edge {
                tag: e.tag,
                colour: e.colour,
                src: s,
                dst: d,
            })
        })
        .collect();
    next.steps += 1;
    Ok(next)
}

/// How the next step is picked when several are applicable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepPolicy {
    /// Always the least step in canonical order.
    Deterministic,
    /// Uniformly at random from the applicable set, seeded.
    Seeded(u64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractionResult {
    pub contracted: bool,
    pub trace: Vec<ContractionStep>,
    /// Statements left in unestablished clusters at the fixpoint.
    pub stuck_unestablished: BTreeSet<StatementId>,
}

pub fn run_to_fixpoint(state: ContractionState, policy: StepPolicy) -> ContractionResult {
    let mut rng = match policy {
        StepPolicy::Deterministic => None,
        StepPolicy::Seeded(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
    };
    let mut state = state;
    let mut trace = Vec::new();
    loop {
        let steps = applicable_steps(&state);
        if steps.is_empty() {
            break;
        }
        let pick = match rng.as_mut() {
            None => 0,
            Some(rng) => rng.gen_range(0..steps.len()),
        };
        state = apply_step(&state, &steps[pick]).expect("picked from applicable set");
        trace.push(steps.into_iter().nth(pick).unwrap());
    }
    ContractionResult {
        contracted: state.is_contracted(),
        stuck_unestablished: state.unestablished_statements(),
        trace,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfluenceReport {
    /// Distinct states reached, the initial one included.
    pub states_explored: usize,
    /// Distinct states with no applicable step.
    pub terminal_states: usize,
    /// Whether every terminal state agrees on the verdict and on the
    /// unestablished statements.
    pub all_agree: bool,
    pub contracted: bool,
    pub unestablished: BTreeSet<StatementId>,
}

/// Exhaust every order of step application, deduplicating states, and
/// compare the terminal outcomes. Fails with [`ContractError::Exhausted`]
/// once more than `max_states` distinct states appear.
pub fn explore_all_orders(
    graph: &FlowGraph,
    max_states: usize,
) -> Result<ConfluenceReport, ContractError> {
    let initial = initial_state(graph)?;
    let mut seen = HashSet::new();
    seen.insert(initial.key());
    let mut queue = VecDeque::from([initial]);
    let mut states_explored = 0usize;
    let mut terminals: Vec<(bool, BTreeSet<StatementId>)> = Vec::new();
    while let Some(state) = queue.pop_front() {
        states_explored += 1;
        let steps = applicable_steps(&state);
        if steps.is_empty() {
            terminals.push((state.is_contracted(), state.unestablished_statements()));
            continue;
        }
        for step in &steps {
            let next = apply_step(&state, step).expect("picked from applicable set");
            if seen.insert(next.key()) {
                if seen.len() > max_states {
                    return Err(ContractError::Exhausted(max_states));
                }
                queue.push_back(next);
            }
        }
    }
    let (contracted, unestablished) = terminals.first().cloned().expect("a terminal exists");
    let all_agree = terminals
        .iter()
        .all(|(c, u)| *c == contracted && *u == unestablished);
    Ok(ConfluenceReport {
        states_explored,
        terminal_states: terminals.len(),
        all_agree,
        contracted,
        unestablished,
    })
}
