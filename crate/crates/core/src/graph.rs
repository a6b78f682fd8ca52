//! Lowering scripts onto coloured directed graphs, plus the geometric
//! queries (connectivity, planarity, cycle shape) asked of the undirected
//! shadow of such a graph.
//!
//! Each entailment with premises `p1..pn` and conclusion `c` contributes a
//! path of `n-1` Thru edges `p1 -> p2 -> ... -> pn` followed by one Implies
//! edge `pn -> c`. All edges carry the entailment's id, so the edges of one
//! entailment can be recognised after the graph has been reshaped.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::planar;
use crate::script::{CoreScript, StatementId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EdgeColour {
    Thru,
    Implies,
}

impl EdgeColour {
    pub fn label(self) -> &'static str {
        match self {
            EdgeColour::Thru => "thru",
            EdgeColour::Implies => "implies",
        }
    }
}

/// A directed coloured edge. The derived ordering — entailment id, then
/// colour (Thru before Implies), then endpoints — is the canonical edge
/// order used by every export and by the contraction engine.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FlowEdge {
    pub entailment: usize,
    pub colour: EdgeColour,
    pub src: StatementId,
    pub dst: StatementId,
}

/// Direction in which an entailment's premises are threaded into a Thru
/// path. `Reversed` exists to probe that verdicts do not depend on premise
/// order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderingPolicy {
    Canonical,
    Reversed,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowGraph {
    pub vertices: BTreeSet<StatementId>,
    pub edges: BTreeSet<FlowEdge>,
    pub axioms: BTreeSet<StatementId>,
}

pub fn build_flow_graph(script: &CoreScript, ordering: OrderingPolicy) -> FlowGraph {
    let mut edges = BTreeSet::new();
    for entailment in &script.entailments {
        let mut premises: Vec<&StatementId> = entailment.premises.iter().collect();
        if ordering == OrderingPolicy::Reversed {
            premises.reverse();
        }
        for pair in premises.windows(2) {
            edges.insert(FlowEdge {
                entailment: entailment.id,
                colour: EdgeColour::Thru,
                src: pair[0].clone(),
                dst: pair[1].clone(),
            });
        }
        edges.insert(FlowEdge {
            entailment: entailment.id,
            colour: EdgeColour::Implies,
            src: (*premises.last().expect("premises are nonempty")).clone(),
            dst: entailment.conclusion.clone(),
        });
    }
    FlowGraph {
        vertices: script.statements.keys().cloned().collect(),
        edges,
        axioms: script.axioms.clone(),
    }
}

/// The undirected shadow: colours, directions and entailment tags dropped,
/// parallel edges collapsed. Geometry is asked of this view.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UndirectedView {
    pub vertices: BTreeSet<StatementId>,
    pub edges: BTreeSet<(StatementId, StatementId)>,
}

pub fn underlying_undirected(graph: &FlowGraph) -> UndirectedView {
    let mut edges = BTreeSet::new();
    for edge in &graph.edges {
        if edge.src != edge.dst {
            let (a, b) = if edge.src < edge.dst {
                (edge.src.clone(), edge.dst.clone())
            } else {
                (edge.dst.clone(), edge.src.clone())
            };
            edges.insert((a, b));
        }
    }
    UndirectedView {
        vertices: graph.vertices.clone(),
        edges,
    }
}

impl UndirectedView {
    /// Vertices indexed 0..n in name order, with an adjacency list to match.
    fn indexed(&self) -> (Vec<&StatementId>, Vec<Vec<usize>>) {
        let names: Vec<&StatementId> = self.vertices.iter().collect();
        let index: BTreeMap<&StatementId, usize> =
            names.iter().enumerate().map(|(i, n)| (*n, i)).collect();
        let mut adj = vec![Vec::new(); names.len()];
        for (a, b) in &self.edges {
            let (i, j) = (index[a], index[b]);
            adj[i].push(j);
            adj[j].push(i);
        }
        (names, adj)
    }

    pub fn components(&self) -> usize {
        let (names, adj) = self.indexed();
        let mut seen = vec![false; names.len()];
        let mut count = 0;
        for start in 0..names.len() {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut queue = VecDeque::from([start]);
            seen[start] = true;
            while let Some(v) = queue.pop_front() {
                for &w in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
        count
    }

    pub fn is_connected(&self) -> bool {
        self.components() <= 1
    }
}

pub fn is_planar(view: &UndirectedView) -> bool {
    let (names, _) = view.indexed();
    let index: BTreeMap<&StatementId, usize> =
        names.iter().enumerate().map(|(i, n)| (*n, i)).collect();
    let edges: Vec<(usize, usize)> = view
        .edges
        .iter()
        .map(|(a, b)| (index[a], index[b]))
        .collect();
    planar::is_planar_adjacency(names.len(), &edges)
}

/// A single cycle through every vertex: connected, at least three vertices,
/// every degree exactly two.
pub fn is_simple_cycle(view: &UndirectedView) -> bool {
    let (names, adj) = view.indexed();
    names.len() >= 3 && adj.iter().all(|nbrs| nbrs.len() == 2) && view.is_connected()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeometryReport {
    pub connected: bool,
    pub planar: bool,
    pub simple_cycle: bool,
    /// Chord count relative to the unique cycle through all vertices;
    /// absent when no such cycle exists or it is not unique.
    pub internal_edges: Option<usize>,
    pub components: usize,
}

pub fn geometry_report(graph: &FlowGraph) -> GeometryReport {
    let view = underlying_undirected(graph);
    let components = view.components();
    let simple_cycle = is_simple_cycle(&view);
    let internal_edges = if simple_cycle {
        Some(0)
    } else {
        unique_hamiltonian_chords(&view)
    };
    GeometryReport {
        connected: components <= 1,
        planar: is_planar(&view),
        simple_cycle,
        internal_edges,
        components,
    }
}

/// When the view has exactly one cycle through all vertices (up to rotation
/// and reflection), the remaining edges are its chords; report how many.
/// Gives up (`None`) on pathological inputs once the search budget runs out.
fn unique_hamiltonian_chords(view: &UndirectedView) -> Option<usize> {
    let (names, adj) = view.indexed();
    let n = names.len();
    if n < 3 || !view.is_connected() || adj.iter().any(|nbrs| nbrs.len() < 2) {
        return None;
    }
    let mut search = HamiltonianSearch {
        adj: &adj,
        on_path: vec![false; n],
        path: Vec::with_capacity(n),
        cycles: 0,
        budget: 5_000_000,
    };
    search.on_path[0] = true;
    search.path.push(0);
    search.extend();
    if search.budget == 0 || search.cycles != 1 {
        return None;
    }
    Some(view.edges.len() - n)
}

struct HamiltonianSearch<'a> {
    adj: &'a [Vec<usize>],
    on_path: Vec<bool>,
    path: Vec<usize>,
    cycles: usize,
    budget: usize,
}

impl HamiltonianSearch<'_> {
    fn extend(&mut self) {
        if self.budget == 0 || self.cycles >= 2 {
            return;
        }
        self.budget -= 1;
        let last = *self.path.last().unwrap();
        if self.path.len() == self.adj.len() {
            // close the cycle; count each one once by orienting it so the
            // second vertex is smaller than the last
            if self.adj[last].contains(&0) && self.path[1] < last {
                self.cycles += 1;
            }
            return;
        }
        for i in 0..self.adj[last].len() {
            let next = self.adj[last][i];
            if !self.on_path[next] {
                self.on_path[next] = true;
                self.path.push(next);
                self.extend();
                self.path.pop();
                self.on_path[next] = false;
                if self.budget == 0 || self.cycles >= 2 {
                    return;
                }
            }
        }
    }
}
