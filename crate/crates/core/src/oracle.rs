//! Ground truth and stress supply for the contraction engine.
//!
//! [`horn_closure`] computes derivability directly — forward chaining over
//! the entailments from the axioms, no graphs involved. The conjecture under
//! test everywhere: a script's flow graph contracts exactly when its closure
//! reaches every statement, and the statements left in unestablished
//! clusters are exactly the underivable ones. [`check_equivalence`] runs
//! both sides and compares; [`enumerate_scripts`] and [`random_script`]
//! supply the scripts.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::contract::{initial_state, run_to_fixpoint, ContractError, StepPolicy};
use crate::graph::{build_flow_graph, OrderingPolicy};
use crate::script::{CoreScript, Entailment, StatementId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureResult {
    pub derivable: BTreeSet<StatementId>,
    /// Chaining passes that added at least one statement.
    pub rounds: usize,
}

/// Least fixpoint of the entailments over the axioms.
pub fn horn_closure(script: &CoreScript) -> ClosureResult {
    let mut derivable = script.axioms.clone();
    let mut rounds = 0;
    loop {
        let mut grew = false;
        for entailment in &script.entailments {
            if derivable.contains(&entailment.conclusion) {
                continue;
            }
            if entailment.premises.iter().all(|p| derivable.contains(p)) {
                derivable.insert(entailment.conclusion.clone());
                grew = true;
            }
        }
        if !grew {
            break;
        }
        rounds += 1;
    }
    ClosureResult { derivable, rounds }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjectureReport {
    /// SHA-256 of the script's canonical source.
    pub digest: String,
    pub contraction_verdict: bool,
    pub closure_all: bool,
    /// The two verdicts coincide.
    pub agree: bool,
    /// Statements stuck in unestablished clusters at the fixpoint.
    pub stuck_unestablished: BTreeSet<StatementId>,
    /// Statements the closure cannot reach.
    pub underivable: BTreeSet<StatementId>,
    /// The two witness sets coincide.
    pub witness_agree: bool,
}

/// Decide the script twice — contraction and closure — and compare verdicts
/// and witnesses. A script with statements but no axioms contracts nowhere,
/// so it is judged unprovable with every statement stuck.
pub fn check_equivalence(script: &CoreScript) -> ConjectureReport {
    let statements: BTreeSet<StatementId> = script.statements.keys().cloned().collect();
    let closure = horn_closure(script);
    let underivable: BTreeSet<StatementId> = statements
        .difference(&closure.derivable)
        .cloned()
        .collect();
    let closure_all = underivable.is_empty();

    let graph = build_flow_graph(script, OrderingPolicy::Canonical);
    let (contraction_verdict, stuck_unestablished) = match initial_state(&graph) {
        Ok(state) => {
            let result = run_to_fixpoint(state, StepPolicy::Deterministic);
            (result.contracted, result.stuck_unestablished)
        }
        Err(ContractError::NoAxioms) => (false, statements),
        Err(other) => unreachable!("initial_state only fails on missing axioms: {other}"),
    };

    ConjectureReport {
        digest: script.digest(),
        agree: contraction_verdict == closure_all,
        witness_agree: stuck_unestablished == underivable,
        contraction_verdict,
        closure_all,
        stuck_unestablished,
        underivable,
    }
}

/// Size envelope for script generation. Statement names are `S1..Sn`;
/// `max_statements` must stay below 64 so axiom subsets fit in a machine
/// word.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScriptBounds {
    pub max_statements: usize,
    pub max_entailments: usize,
    pub max_premises: usize,
}

fn canonical_names(n: usize) -> Vec<StatementId> {
    (1..=n)
        .map(|i| StatementId::new(format!("S{i}")).expect("canonical names are valid"))
        .collect()
}

/// Every script within the bounds, exactly once up to renaming of
/// statements, each crossed with every subset of its statements as the
/// axiom set. Scripts stream in a fixed order: by statement count, then by
/// entailment structure, then by axiom subset.
pub fn enumerate_scripts(bounds: ScriptBounds) -> impl Iterator<Item = CoreScript> {
    assert!(bounds.max_statements < 64, "axiom subsets are enumerated as u64 masks");
    let mut scripts = Vec::new();
    for n in 0..=bounds.max_statements {
        let structures = canonical_structures(n, bounds.max_entailments, bounds.max_premises);
        let names = canonical_names(n);
        for structure in structures {
            for axiom_mask in 0..(1u64 << n) {
                let statements: BTreeMap<StatementId, Option<String>> =
                    names.iter().map(|name| (name.clone(), None)).collect();
                let axioms: BTreeSet<StatementId> = (0..n)
                    .filter(|i| axiom_mask & (1 << i) != 0)
                    .map(|i| names[i].clone())
                    .collect();
                let entailments: Vec<Entailment> = structure
                    .iter()
                    .enumerate()
                    .map(|(id, (premises, conclusion))| Entailment {
                        id,
                        premises: premises.iter().map(|&p| names[p].clone()).collect(),
                        conclusion: names[*conclusion].clone(),
                    })
                    .collect();
                scripts.push(CoreScript {
                    statements,
                    axioms,
                    entailments,
                });
            }
        }
    }
    scripts.into_iter()
}

/// An entailment structure in index space: sorted premise list plus
/// conclusion.
type Structure = Vec<(Vec<usize>, usize)>;

/// All entailment sets over `n` statements, up to statement renaming: a set
/// is kept only if it is the lexicographically least among its relabelings.
fn canonical_structures(n: usize, max_entailments: usize, max_premises: usize) -> Vec<Structure> {
    let mut candidates: Vec<(Vec<usize>, usize)> = Vec::new();
    if n >= 2 {
        for conclusion in 0..n {
            let others: Vec<usize> = (0..n).filter(|&v| v != conclusion).collect();
            for size in 1..=max_premises.min(n - 1) {
                for premises in combinations(&others, size) {
                    candidates.push((premises, conclusion));
                }
            }
        }
    }
    candidates.sort();
    let permutations = all_permutations(n);
    let mut structures = Vec::new();
    let indices: Vec<usize> = (0..candidates.len()).collect();
    for count in 0..=max_entailments.min(candidates.len()) {
        for chosen in combinations(&indices, count) {
            let structure: Structure = chosen.iter().map(|&i| candidates[i].clone()).collect();
            if is_canonical(&structure, &permutations) {
                structures.push(structure);
            }
        }
    }
    structures
}

fn is_canonical(structure: &Structure, permutations: &[Vec<usize>]) -> bool {
    permutations.iter().all(|perm| {
        let mut relabeled: Structure = structure
            .iter()
            .map(|(premises, conclusion)| {
                let mut premises: Vec<usize> = premises.iter().map(|&p| perm[p]).collect();
                premises.sort_unstable();
                (premises, perm[*conclusion])
            })
            .collect();
        relabeled.sort();
        relabeled.as_slice() >= structure.as_slice()
    })
}

/// k-subsets of `items`, in lexicographic order of positions.
fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn recurse(
        items: &[usize],
        k: usize,
        start: usize,
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in start..items.len() {
            current.push(items[i]);
            recurse(items, k, i + 1, current, out);
            current.pop();
        }
    }
    recurse(items, k, 0, &mut current, &mut out);
    out
}

fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    fn heap(k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(current.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, current, out);
            if k.is_multiple_of(2) {
                current.swap(i, k - 1);
            } else {
                current.swap(0, k - 1);
            }
        }
    }
    heap(n, &mut current, &mut out);
    out
}

/// One pseudorandom valid script, a pure function of seed and bounds.
/// Premises keep the random order they were drawn in, and the axiom set is
/// always nonempty (when there are statements at all).
pub fn random_script(seed: u64, bounds: &ScriptBounds) -> CoreScript {
    assert!(bounds.max_statements >= 1 && bounds.max_statements < 64);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=bounds.max_statements);
    let names = canonical_names(n);
    let statements: BTreeMap<StatementId, Option<String>> =
        names.iter().map(|name| (name.clone(), None)).collect();

    let mut entailments: Vec<Entailment> = Vec::new();
    let mut keys: BTreeSet<(BTreeSet<usize>, usize)> = BTreeSet::new();
    if n >= 2 {
        let wanted = rng.gen_range(0..=bounds.max_entailments);
        for _ in 0..wanted {
            // a handful of retries to dodge duplicates, then give up
            for _attempt in 0..16 {
                let size = rng.gen_range(1..=bounds.max_premises.min(n - 1));
                let mut pool: Vec<usize> = (0..n).collect();
                pool.shuffle(&mut rng);
                let premises: Vec<usize> = pool[..size].to_vec();
                let conclusion = pool[size..][rng.gen_range(0..n - size)];
                let key = (premises.iter().copied().collect(), conclusion);
                if keys.insert(key) {
                    entailments.push(Entailment {
                        id: entailments.len(),
                        premises: premises.iter().map(|&p| names[p].clone()).collect(),
                        conclusion: names[conclusion].clone(),
                    });
                    break;
                }
            }
        }
    }

    let axiom_mask = rng.gen_range(1..(1u64 << n));
    let axioms: BTreeSet<StatementId> = (0..n)
        .filter(|i| axiom_mask & (1 << i) != 0)
        .map(|i| names[i].clone())
        .collect();

    CoreScript {
        statements,
        axioms,
        entailments,
    }
}
