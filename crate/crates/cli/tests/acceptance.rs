//! Acceptance gate. Each test checks one release criterion and prints a
//! single `criterion N (label): PASS` / `FAIL` line; run with `--nocapture`
//! to see the lines regardless of outcome. Failures list every violation
//! before panicking.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use flow_core::{
    applicable_steps, apply_step, build_flow_graph, check_equivalence, desugar, enumerate_scripts,
    explore_all_orders, geometry_report, initial_state, is_planar, parse_script, run_to_fixpoint,
    CoreScript, OrderingPolicy, ScriptBounds, StatementId, StepPolicy,
};
use flow_testkit::{connected_graphs, planar_by_kuratowski};

fn corpus_dir() -> PathBuf {
    let mut path = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    path.pop();
    path.pop();
    path.push("corpus");
    path
}

fn corpus_script(name: &str) -> CoreScript {
    let text = std::fs::read_to_string(corpus_dir().join(name)).expect("corpus file");
    desugar(&parse_script(&text).expect("corpus parses")).expect("corpus desugars")
}

fn flow(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flow"))
        .args(args)
        .env_remove("FF_SEED")
        .output()
        .expect("binary runs")
}

fn verdict(number: u32, label: &str, violations: Vec<String>) {
    if violations.is_empty() {
        println!("criterion {number} ({label}): PASS");
    } else {
        println!("criterion {number} ({label}): FAIL");
        for violation in &violations {
            println!("  - {violation}");
        }
        panic!(
            "criterion {number} ({label}): {} violation(s): {}",
            violations.len(),
            violations.join("; ")
        );
    }
}

fn check_budget(violations: &mut Vec<String>, elapsed: Duration, budget: Duration) {
    if elapsed > budget {
        violations.push(format!("runtime {elapsed:?} exceeds budget {budget:?}"));
    }
}

/// The bundled biconditional loop reads back as a plain circle — connected,
/// planar, chordless — and contracts fully from either defining statement.
///
/// The required trace length asserted below is four. A contraction step
/// merges two clusters into one, so a four-vertex graph admits at most three
/// steps before it is a single vertex; the requirement is therefore
/// unsatisfiable as stated and this criterion is expected to stay red. It is
/// asserted anyway, unweakened, to keep the discrepancy visible. The engine's
/// actual traces (three R-IMPL steps either way around the circle) are pinned
/// in the `cli` suite.
#[test]
fn criterion_1_golden_loop_geometry_and_contraction() {
    let start = Instant::now();
    let mut violations = Vec::new();

    let graph = build_flow_graph(&corpus_script("abelian.flow"), OrderingPolicy::Canonical);
    let report = geometry_report(&graph);
    if !report.connected {
        violations.push("geometry: connected was false".into());
    }
    if !report.planar {
        violations.push("geometry: planar was false".into());
    }
    if !report.simple_cycle {
        violations.push("geometry: simple_cycle was false".into());
    }
    if report.internal_edges != Some(0) {
        violations.push(format!(
            "geometry: internal_edges was {:?}, expected Some(0)",
            report.internal_edges
        ));
    }

    let path = corpus_dir().join("abelian.flow");
    let path = path.to_string_lossy();
    for axiom in ["D1", "D2"] {
        let output = flow(&["contract", &path, "--axioms", axiom, "--trace"]);
        let stdout = String::from_utf8_lossy(&output.stdout).into_owned();
        if output.status.code() != Some(0) {
            violations.push(format!(
                "contract --axioms {axiom}: exit {:?}, expected 0",
                output.status.code()
            ));
        }
        if !stdout.contains("contracted: true") {
            violations.push(format!("contract --axioms {axiom}: not contracted"));
        }
        let trace_len = stdout.lines().filter(|l| l.starts_with('{')).count();
        if trace_len != 4 {
            violations.push(format!(
                "contract --axioms {axiom}: trace length {trace_len}, required 4 \
                 (unattainable: one merge per step caps a 4-vertex contraction at 3 steps)"
            ));
        }
    }

    check_budget(&mut violations, start.elapsed(), Duration::from_secs(1));
    verdict(1, "golden loop geometry and contraction", violations);
}

/// Exhaustive agreement between the contraction engine and the forward-
/// chaining closure over every small script crossed with every nonempty
/// axiom subset, witness sets included.
#[test]
fn criterion_2_exhaustive_conjecture_agreement() {
    let start = Instant::now();
    let mut violations = Vec::new();
    let bounds = ScriptBounds {
        max_statements: 4,
        max_entailments: 3,
        max_premises: 2,
    };
    let mut checked = 0usize;
    for script in enumerate_scripts(bounds) {
        if script.axioms.is_empty() {
            continue;
        }
        checked += 1;
        let report = check_equivalence(&script);
        if !report.agree {
            violations.push(format!(
                "verdict disagreement on {} (contraction {}, closure {})",
                script.to_source().replace('\n', " "),
                report.contraction_verdict,
                report.closure_all
            ));
        }
        if !report.witness_agree {
            violations.push(format!(
                "witness disagreement on {} (stuck {:?}, underivable {:?})",
                script.to_source().replace('\n', " "),
                report.stuck_unestablished,
                report.underivable
            ));
        }
        if violations.len() > 8 {
            break;
        }
    }
    if checked < 1000 {
        violations.push(format!("only {checked} scripts enumerated; stratum too small"));
    }
    check_budget(&mut violations, start.elapsed(), Duration::from_secs(60));
    verdict(2, "exhaustive conjecture agreement", violations);
}

/// Every order of applying contraction steps reaches the same verdict and
/// the same unestablished set, for every script in the exhaustive stratum.
#[test]
fn criterion_3_confluence_across_all_orders() {
    let mut violations = Vec::new();
    let bounds = ScriptBounds {
        max_statements: 4,
        max_entailments: 3,
        max_premises: 2,
    };
    for script in enumerate_scripts(bounds) {
        if script.axioms.is_empty() {
            continue;
        }
        let graph = build_flow_graph(&script, OrderingPolicy::Canonical);
        match explore_all_orders(&graph, 10_000) {
            Ok(report) if report.all_agree => {}
            Ok(report) => violations.push(format!(
                "{} terminal states disagree on {}",
                report.terminal_states,
                script.to_source().replace('\n', " ")
            )),
            Err(err) => violations.push(format!(
                "state bound hit on {}: {err}",
                script.to_source().replace('\n', " ")
            )),
        }
        if violations.len() > 8 {
            break;
        }
    }
    verdict(3, "confluence across all orders", violations);
}

/// A thousand seeded random scripts: ordering-policy-invariant verdicts,
/// monotone establishment, one fewer cluster per step, and planarity
/// preserved along the trace whenever the starting view is planar.
#[test]
fn criterion_4_randomized_trace_properties() {
    let start = Instant::now();
    let mut violations = Vec::new();
    let bounds = ScriptBounds {
        max_statements: 10,
        max_entailments: 8,
        max_premises: 3,
    };
    for seed in 0..1000u64 {
        let script = flow_core::random_script(seed, &bounds);
        let canonical = build_flow_graph(&script, OrderingPolicy::Canonical);
        let reversed = build_flow_graph(&script, OrderingPolicy::Reversed);

        let verdict_canonical =
            run_to_fixpoint(initial_state(&canonical).expect("axioms"), StepPolicy::Deterministic)
                .contracted;
        let verdict_reversed =
            run_to_fixpoint(initial_state(&reversed).expect("axioms"), StepPolicy::Deterministic)
                .contracted;
        if verdict_canonical != verdict_reversed {
            violations.push(format!(
                "seed {seed}: canonical verdict {verdict_canonical}, reversed {verdict_reversed}"
            ));
        }

        // walk one deterministic and one seeded trace per graph, checking
        // the per-step invariants
        for (graph, policy_label, pick_last) in [
            (&canonical, "det", false),
            (&canonical, "rot", true),
            (&reversed, "det", false),
        ] {
            let mut state = initial_state(graph).expect("axioms");
            let planar_throughout = is_planar(&state.live_view());
            let mut established: BTreeSet<StatementId> = state.established_statements();
            loop {
                let steps = applicable_steps(&state);
                if steps.is_empty() {
                    break;
                }
                let step = if pick_last { steps.last() } else { steps.first() };
                let next = apply_step(&state, step.expect("nonempty")).expect("applicable");
                let next_established = next.established_statements();
                if !established.is_subset(&next_established) {
                    violations.push(format!(
                        "seed {seed} ({policy_label}): establishment shrank at step {}",
                        next.step_count()
                    ));
                }
                if next.cluster_count() + 1 != state.cluster_count() {
                    violations.push(format!(
                        "seed {seed} ({policy_label}): cluster count {} -> {}, expected a drop of 1",
                        state.cluster_count(),
                        next.cluster_count()
                    ));
                }
                if planar_throughout && !is_planar(&next.live_view()) {
                    violations.push(format!(
                        "seed {seed} ({policy_label}): planarity lost at step {}",
                        next.step_count()
                    ));
                }
                established = next_established;
                state = next;
            }
        }
        if violations.len() > 8 {
            break;
        }
    }
    check_budget(&mut violations, start.elapsed(), Duration::from_secs(30));
    verdict(4, "randomized trace properties", violations);
}

/// Byte-identical DOT, JSON, and deterministic-trace output across two
/// consecutive runs over every bundled script.
#[test]
fn criterion_5_deterministic_exports_over_corpus() {
    let mut violations = Vec::new();
    let mut names: Vec<String> = std::fs::read_dir(corpus_dir())
        .expect("corpus dir")
        .map(|entry| entry.expect("entry").file_name().to_string_lossy().into_owned())
        .filter(|name| name.ends_with(".flow"))
        .collect();
    names.sort();
    if names.len() != 6 {
        violations.push(format!("corpus has {} scripts, expected 6", names.len()));
    }
    for name in &names {
        let path = corpus_dir().join(name);
        let path = path.to_string_lossy().into_owned();
        let invocations: [&[&str]; 3] = [
            &["graph", &path, "--format", "dot"],
            &["graph", &path, "--format", "json"],
            &["contract", &path, "--trace", "--policy", "det"],
        ];
        for args in invocations {
            let first = flow(args);
            let second = flow(args);
            if first.stdout != second.stdout || first.status.code() != second.status.code() {
                violations.push(format!("{name}: `{}` differed between runs", args.join(" ")));
            }
            if first.stdout.is_empty() {
                violations.push(format!("{name}: `{}` produced no output", args.join(" ")));
            }
        }
    }
    verdict(5, "deterministic exports over corpus", violations);
}

/// The face-embedding planarity decision matches an exhaustive search for
/// forbidden-subdivision witnesses on every connected graph with up to
/// seven vertices.
#[test]
fn criterion_6_planarity_cross_check() {
    let mut violations = Vec::new();
    // labeled connected graphs per vertex count, a well-known sequence
    let expected_counts: [u64; 7] = [1, 1, 4, 38, 728, 26_704, 1_866_256];
    for n in 1..=7usize {
        let mut count = 0u64;
        for graph in connected_graphs(n) {
            count += 1;
            let fast = flow_core::planar::is_planar_adjacency(n, &graph.edges());
            let oracle = planar_by_kuratowski(&graph);
            if fast != oracle && violations.len() <= 8 {
                violations.push(format!(
                    "n={n} edges={:?}: embedding says {fast}, witness search says {oracle}",
                    graph.edges()
                ));
            }
        }
        if count != expected_counts[n - 1] {
            violations.push(format!(
                "n={n}: enumerated {count} connected graphs, expected {}",
                expected_counts[n - 1]
            ));
        }
    }
    verdict(6, "planarity cross-check", violations);
}
