//! The flow script language and its two levels of representation:
//! [`ProofScript`] is the surface form straight out of the parser, while
//! [`CoreScript`] is the lowered form with biconditionals expanded into
//! their two implication directions.

mod lexer;
mod parser;

pub use lexer::{tokenize, Token, TokenKind};
pub use parser::parse_script;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::fmt::Write as _;

use sha2::{Digest, Sha256};
use thiserror::Error;

/// Words the lexer claims for itself; they can never name a statement.
const RESERVED: [&str; 3] = ["stmt", "axiom", "goal"];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScriptError {
    #[error("illegal character '{ch}' at {line}:{col}")]
    IllegalCharacter { ch: char, line: usize, col: usize },
    #[error("syntax error at {line}:{col}: expected {expected}, found {found}")]
    Syntax {
        line: usize,
        col: usize,
        expected: String,
        found: String,
    },
    #[error("invalid statement name '{name}'")]
    InvalidIdentifier { name: String },
    #[error("premise '{name}' repeated at {line}:{col}")]
    DuplicatePremise { name: StatementId, line: usize, col: usize },
    #[error("conclusion '{name}' at {line}:{col} is also a premise")]
    SelfEntailment { name: StatementId, line: usize, col: usize },
    #[error("duplicate entailment concluding '{conclusion}'")]
    DuplicateEntailment {
        premises: Vec<StatementId>,
        conclusion: StatementId,
    },
    #[error("conflicting declaration of '{name}' at {line}:{col}")]
    ConflictingDeclaration { name: StatementId, line: usize, col: usize },
    #[error("unknown statement '{name}'")]
    UnknownStatement { name: StatementId },
}

impl ScriptError {
    /// Position attached to the error, when it points at a concrete spot in
    /// the source text.
    pub fn position(&self) -> Option<(usize, usize)> {
        match *self {
            ScriptError::IllegalCharacter { line, col, .. }
            | ScriptError::Syntax { line, col, .. }
            | ScriptError::DuplicatePremise { line, col, .. }
            | ScriptError::SelfEntailment { line, col, .. }
            | ScriptError::ConflictingDeclaration { line, col, .. } => Some((line, col)),
            ScriptError::InvalidIdentifier { .. }
            | ScriptError::DuplicateEntailment { .. }
            | ScriptError::UnknownStatement { .. } => None,
        }
    }
}

/// Name of a statement: an ASCII letter followed by letters, digits or
/// underscores. Ordered lexicographically, which fixes every "sorted by
/// name" rule in the crate.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StatementId(String);

impl StatementId {
    pub fn new(name: impl Into<String>) -> Result<Self, ScriptError> {
        let name = name.into();
        if !Self::is_valid(&name) {
            return Err(ScriptError::InvalidIdentifier { name });
        }
        Ok(StatementId(name))
    }

    fn is_valid(name: &str) -> bool {
        let mut chars = name.chars();
        let head = match chars.next() {
            Some(c) => c.is_ascii_alphabetic(),
            None => false,
        };
        head && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
            && !RESERVED.contains(&name)
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for StatementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// One entailment: all premises together yield the conclusion. `id` is the
/// position of the entailment in its script and tags every graph edge built
/// from it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entailment {
    pub id: usize,
    pub premises: Vec<StatementId>,
    pub conclusion: StatementId,
}

impl Entailment {
    pub fn premise_set(&self) -> BTreeSet<StatementId> {
        self.premises.iter().cloned().collect()
    }

    /// Identity of an entailment up to premise order; duplicates are
    /// detected on this key.
    fn key(&self) -> (BTreeSet<StatementId>, StatementId) {
        (self.premise_set(), self.conclusion.clone())
    }
}

/// A parsed script, before biconditionals are expanded. Statements map to
/// their optional display text.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ProofScript {
    pub statements: BTreeMap<StatementId, Option<String>>,
    pub axioms: BTreeSet<StatementId>,
    pub entailments: Vec<Entailment>,
    pub biconditionals: Vec<(StatementId, StatementId)>,
    pub goal: Option<StatementId>,
}

impl ProofScript {
    /// Canonical source form: statements sorted by name, then axioms, then
    /// entailments in declaration order, then biconditionals, then the goal.
    /// Parsing the result reproduces the script exactly.
    pub fn to_source(&self) -> String {
        let mut out = String::new();
        for (id, text) in &self.statements {
            match text {
                Some(t) => writeln!(out, "stmt {id}: \"{}\";", escape_text(t)).unwrap(),
                None => writeln!(out, "stmt {id};").unwrap(),
            }
        }
        for axiom in &self.axioms {
            writeln!(out, "axiom {axiom};").unwrap();
        }
        for entailment in &self.entailments {
            let premises: Vec<&str> =
                entailment.premises.iter().map(StatementId::as_str).collect();
            writeln!(out, "{} => {};", premises.join(" & "), entailment.conclusion).unwrap();
        }
        for (left, right) in &self.biconditionals {
            writeln!(out, "{left} <=> {right};").unwrap();
        }
        if let Some(goal) = &self.goal {
            writeln!(out, "goal {goal};").unwrap();
        }
        out
    }
}

/// A lowered script: biconditionals gone, only entailments remain.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CoreScript {
    pub statements: BTreeMap<StatementId, Option<String>>,
    pub axioms: BTreeSet<StatementId>,
    pub entailments: Vec<Entailment>,
}

impl CoreScript {
    /// Embed back into the surface form (no biconditionals, no goal).
    pub fn to_proof_script(&self) -> ProofScript {
        ProofScript {
            statements: self.statements.clone(),
            axioms: self.axioms.clone(),
            entailments: self.entailments.clone(),
            biconditionals: Vec::new(),
            goal: None,
        }
    }

    pub fn to_source(&self) -> String {
        self.to_proof_script().to_source()
    }

    /// Hex SHA-256 of the canonical source; stable identity for reports.
    pub fn digest(&self) -> String {
        let mut hasher = Sha256::new();
        hasher.update(self.to_source().as_bytes());
        let bytes = hasher.finalize();
        let mut out = String::with_capacity(64);
        for b in bytes {
            write!(out, "{b:02x}").unwrap();
        }
        out
    }

    /// Same script with a replacement axiom set. Every new axiom must name a
    /// declared statement.
    pub fn with_axioms(&self, axioms: BTreeSet<StatementId>) -> Result<CoreScript, ScriptError> {
        for axiom in &axioms {
            if !self.statements.contains_key(axiom) {
                return Err(ScriptError::UnknownStatement {
                    name: axiom.clone(),
                });
            }
        }
        Ok(CoreScript {
            statements: self.statements.clone(),
            axioms,
            entailments: self.entailments.clone(),
        })
    }
}

/// Expand each biconditional `L <=> R` into the pair of entailments
/// `[L] => R` and `[R] => L`, appended after the declared entailments in
/// script order. Expansion that collides with an existing entailment (or
/// with the expansion of an earlier biconditional) is an error.
pub fn desugar(script: &ProofScript) -> Result<CoreScript, ScriptError> {
    let mut seen: BTreeSet<(BTreeSet<StatementId>, StatementId)> =
        script.entailments.iter().map(Entailment::key).collect();
    let mut entailments = script.entailments.clone();
    for (left, right) in &script.biconditionals {
        for (premise, conclusion) in [(left, right), (right, left)] {
            let entailment = Entailment {
                id: entailments.len(),
                premises: vec![premise.clone()],
                conclusion: conclusion.clone(),
            };
            if !seen.insert(entailment.key()) {
                return Err(ScriptError::DuplicateEntailment {
                    premises: entailment.premises,
                    conclusion: entailment.conclusion,
                });
            }
            entailments.push(entailment);
        }
    }
    Ok(CoreScript {
        statements: script.statements.clone(),
        axioms: script.axioms.clone(),
        entailments,
    })
}

fn escape_text(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '\\' => out.push_str("\\\\"),
            '"' => out.push_str("\\\""),
            other => out.push(other),
        }
    }
    out
}
