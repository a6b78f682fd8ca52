//! Script builders for the benchmark suite: parameterised inputs with known
//! shapes, so timings track input size rather than generator noise.

use std::fmt::Write;

use flow_core::{desugar, parse_script, CoreScript};

/// `axiom S0; S0 => S1; …; S(n-2) => S(n-1);` — a straight derivation chain.
pub fn chain_source(n: usize) -> String {
    assert!(n >= 1);
    let mut out = String::from("axiom S0;\n");
    for i in 1..n {
        writeln!(out, "S{} => S{};", i - 1, i).unwrap();
    }
    out
}

/// A closed circle of single-premise entailments, like the bundled loop
/// corpus but of arbitrary size.
pub fn loop_source(n: usize) -> String {
    assert!(n >= 2);
    let mut out = String::from("axiom S0;\n");
    for i in 0..n {
        writeln!(out, "S{} => S{};", i, (i + 1) % n).unwrap();
    }
    out
}

/// Axioms feeding layers of three-premise conjunctions: exercises the
/// chaining edges and the R-THRU rule rather than bare implications.
pub fn braid_source(layers: usize) -> String {
    assert!(layers >= 1);
    let mut out = String::new();
    for i in 0..3 {
        writeln!(out, "axiom L0_{i};").unwrap();
    }
    for layer in 1..=layers {
        let prev = layer - 1;
        for i in 0..3 {
            writeln!(
                out,
                "L{prev}_0 & L{prev}_1 & L{prev}_2 => L{layer}_{i};"
            )
            .unwrap();
        }
    }
    out
}

pub fn lower(source: &str) -> CoreScript {
    desugar(&parse_script(source).expect("benchmark source parses")).expect("benchmark source lowers")
}
