//! Byte-stable serialisations of flow graphs and reports. Vertices are
//! written in name order and edges in canonical edge order, so equal graphs
//! always serialise to equal bytes.

use flow_core::{
    ConjectureReport, ContractionStep, EdgeColour, FlowEdge, FlowGraph, ScriptError, StatementId,
};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use thiserror::Error;

/// DOT export: axiom vertices double-circled, Thru edges blue and labelled
/// `thru`, Implies edges black and labelled `implies`.
pub fn export_dot(graph: &FlowGraph) -> String {
    let mut out = String::from("digraph flow {\n");
    for vertex in &graph.vertices {
        if graph.axioms.contains(vertex) {
            out.push_str(&format!("  \"{vertex}\" [shape=\"doublecircle\"];\n"));
        } else {
            out.push_str(&format!("  \"{vertex}\";\n"));
        }
    }
    for edge in &graph.edges {
        let colour = match edge.colour {
            EdgeColour::Thru => "blue",
            EdgeColour::Implies => "black",
        };
        out.push_str(&format!(
            "  \"{}\" -> \"{}\" [color=\"{colour}\",label=\"{}\"];\n",
            edge.src,
            edge.dst,
            edge.colour.label()
        ));
    }
    out.push_str("}\n");
    out
}

#[derive(Debug, Serialize, Deserialize)]
struct GraphDoc {
    statements: Vec<String>,
    axioms: Vec<String>,
    edges: Vec<EdgeDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
struct EdgeDoc {
    src: String,
    dst: String,
    colour: String,
    entailment: usize,
}

impl EdgeDoc {
    fn of(edge: &FlowEdge) -> EdgeDoc {
        EdgeDoc {
            src: edge.src.as_str().to_string(),
            dst: edge.dst.as_str().to_string(),
            colour: edge.colour.label().to_string(),
            entailment: edge.entailment,
        }
    }
}

pub fn export_json(graph: &FlowGraph) -> String {
    let doc = GraphDoc {
        statements: graph.vertices.iter().map(|v| v.as_str().to_string()).collect(),
        axioms: graph.axioms.iter().map(|a| a.as_str().to_string()).collect(),
        edges: graph.edges.iter().map(EdgeDoc::of).collect(),
    };
    let mut text = serde_json::to_string_pretty(&doc).expect("plain data serialises");
    text.push('\n');
    text
}

#[derive(Debug, Error)]
pub enum ImportError {
    #[error("malformed graph document: {0}")]
    Malformed(#[from] serde_json::Error),
    #[error("{0}")]
    BadName(#[from] ScriptError),
    #[error("unknown edge colour '{0}'")]
    UnknownColour(String),
    #[error("edge endpoint or axiom '{0}' is not a listed statement")]
    Undeclared(String),
}

/// Inverse of [`export_json`], with structural validation.
pub fn import_json(text: &str) -> Result<FlowGraph, ImportError> {
    let doc: GraphDoc = serde_json::from_str(text)?;
    let mut vertices = BTreeSet::new();
    for name in &doc.statements {
        vertices.insert(StatementId::new(name.clone())?);
    }
    let lookup = |name: &str| -> Result<StatementId, ImportError> {
        let id = StatementId::new(name.to_string())?;
        if !vertices.contains(&id) {
            return Err(ImportError::Undeclared(name.to_string()));
        }
        Ok(id)
    };
    let mut axioms = BTreeSet::new();
    for name in &doc.axioms {
        axioms.insert(lookup(name)?);
    }
    let mut edges = BTreeSet::new();
    for edge in &doc.edges {
        let colour = match edge.colour.as_str() {
            "thru" => EdgeColour::Thru,
            "implies" => EdgeColour::Implies,
            other => return Err(ImportError::UnknownColour(other.to_string())),
        };
        edges.insert(FlowEdge {
            entailment: edge.entailment,
            colour,
            src: lookup(&edge.src)?,
            dst: lookup(&edge.dst)?,
        });
    }
    Ok(FlowGraph {
        vertices,
        edges,
        axioms,
    })
}

#[derive(Serialize)]
struct TraceDoc {
    step: usize,
    rule: &'static str,
    edge: EdgeDoc,
}

/// One trace record as a single JSON line; `step` is 1-based.
pub fn trace_line(step: usize, contraction: &ContractionStep) -> String {
    let doc = TraceDoc {
        step,
        rule: contraction.rule.label(),
        edge: EdgeDoc::of(&contraction.edge),
    };
    serde_json::to_string(&doc).expect("plain data serialises")
}

#[derive(Serialize)]
struct ConjectureDoc<'a> {
    digest: &'a str,
    contraction_verdict: bool,
    closure_all: bool,
    agree: bool,
    stuck_unestablished: Vec<&'a str>,
    underivable: Vec<&'a str>,
    witness_agree: bool,
}

/// One oracle-comparison report as a single JSON line.
pub fn conjecture_line(report: &ConjectureReport) -> String {
    let doc = ConjectureDoc {
        digest: &report.digest,
        contraction_verdict: report.contraction_verdict,
        closure_all: report.closure_all,
        agree: report.agree,
        stuck_unestablished: report
            .stuck_unestablished
            .iter()
            .map(StatementId::as_str)
            .collect(),
        underivable: report.underivable.iter().map(StatementId::as_str).collect(),
        witness_agree: report.witness_agree,
    };
    serde_json::to_string(&doc).expect("plain data serialises")
}

#[cfg(test)]
mod tests {
    use super::*;
    use flow_core::{build_flow_graph, desugar, parse_script, OrderingPolicy};

    fn graph_of(source: &str) -> FlowGraph {
        let core = desugar(&parse_script(source).unwrap()).unwrap();
        build_flow_graph(&core, OrderingPolicy::Canonical)
    }

    #[test]
    fn dot_output_is_sorted_and_styled() {
        let dot = export_dot(&graph_of("axiom B; axiom A; A & B => C;"));
        assert_eq!(
            dot,
            "digraph flow {\n\
             \x20 \"A\" [shape=\"doublecircle\"];\n\
             \x20 \"B\" [shape=\"doublecircle\"];\n\
             \x20 \"C\";\n\
             \x20 \"A\" -> \"B\" [color=\"blue\",label=\"thru\"];\n\
             \x20 \"B\" -> \"C\" [color=\"black\",label=\"implies\"];\n\
             }\n"
        );
    }

    #[test]
    fn empty_graph_exports_header_and_footer_only() {
        assert_eq!(export_dot(&graph_of("")), "digraph flow {\n}\n");
    }

    #[test]
    fn json_round_trips_through_import() {
        let graph = graph_of("axiom A; A & B => C; C <=> D;");
        let text = export_json(&graph);
        let back = import_json(&text).unwrap();
        assert_eq!(graph, back);
        // and the bytes are reproducible
        assert_eq!(text, export_json(&back));
    }

    #[test]
    fn json_shape_is_fixed() {
        let text = export_json(&graph_of("axiom A; A => B;"));
        assert_eq!(
            text,
            "{\n  \"statements\": [\n    \"A\",\n    \"B\"\n  ],\n  \"axioms\": [\n    \"A\"\n  ],\n  \"edges\": [\n    {\n      \"src\": \"A\",\n      \"dst\": \"B\",\n      \"colour\": \"implies\",\n      \"entailment\": 0\n    }\n  ]\n}\n"
        );
    }

    #[test]
    fn import_rejects_bad_documents() {
        assert!(matches!(import_json("not json"), Err(ImportError::Malformed(_))));
        let missing = r#"{"statements":["A"],"axioms":["B"],"edges":[]}"#;
        assert!(matches!(import_json(missing), Err(ImportError::Undeclared(_))));
        let colour = r#"{"statements":["A","B"],"axioms":[],
            "edges":[{"src":"A","dst":"B","colour":"green","entailment":0}]}"#;
        assert!(matches!(import_json(colour), Err(ImportError::UnknownColour(_))));
        let name = r#"{"statements":["9"],"axioms":[],"edges":[]}"#;
        assert!(matches!(import_json(name), Err(ImportError::BadName(_))));
    }
}
