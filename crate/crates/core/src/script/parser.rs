//! Recursive-descent parser for the script grammar:
//!
//! ```text
//! script := item*
//! item   := ("stmt" IDENT (":" TEXT)? | "axiom" IDENT | "goal" IDENT
//!            | entail | iff) ";"
//! entail := IDENT ("&" IDENT)* "=>" IDENT
//! iff    := IDENT "<=>" IDENT
//! ```
//!
//! Statements are declared implicitly on first use; `stmt` only attaches
//! display text. Duplicate `axiom` lines are idempotent.

use std::collections::BTreeSet;

use super::lexer::{tokenize, Token, TokenKind};
use super::{Entailment, ProofScript, ScriptError, StatementId};

pub fn parse_script(source: &str) -> Result<ProofScript, ScriptError> {
    let tokens = tokenize(source)?;
    let eof = end_position(source);
    let mut parser = Parser {
        tokens,
        pos: 0,
        eof,
        script: ProofScript::default(),
        entailment_keys: BTreeSet::new(),
    };
    parser.script()?;
    Ok(parser.script)
}

/// Where "end of input" sits, so EOF diagnostics still point inside the
/// source text.
fn end_position(source: &str) -> (usize, usize) {
    let mut line = 1;
    let mut col = 1;
    for c in source.chars() {
        if c == '\n' {
            line += 1;
            col = 1;
        } else {
            col += 1;
        }
    }
    (line, col)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    eof: (usize, usize),
    script: ProofScript,
    entailment_keys: BTreeSet<(BTreeSet<StatementId>, StatementId)>,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn bump(&mut self) -> Option<Token> {
        let token = self.tokens.get(self.pos).cloned()?;
        self.pos += 1;
        Some(token)
    }

    fn error_at_current(&self, expected: &str) -> ScriptError {
        match self.peek() {
            Some(token) => ScriptError::Syntax {
                line: token.line,
                col: token.col,
                expected: expected.to_string(),
                found: token.kind.describe(),
            },
            None => ScriptError::Syntax {
                line: self.eof.0,
                col: self.eof.1,
                expected: expected.to_string(),
                found: "end of input".to_string(),
            },
        }
    }

    fn expect_semi(&mut self) -> Result<(), ScriptError> {
        match self.peek() {
            Some(Token { kind: TokenKind::Semi, .. }) => {
                self.bump();
                Ok(())
            }
            _ => Err(self.error_at_current("';'")),
        }
    }

    /// Consume an identifier token and return it with its position.
    fn expect_ident(&mut self) -> Result<(StatementId, usize, usize), ScriptError> {
        match self.peek() {
            Some(Token { kind: TokenKind::Ident(_), .. }) => {
                let token = self.bump().unwrap();
                let (line, col) = (token.line, token.col);
                match token.kind {
                    TokenKind::Ident(name) => Ok((StatementId::new(name)?, line, col)),
                    _ => unreachable!(),
                }
            }
            _ => Err(self.error_at_current("identifier")),
        }
    }

    fn script(&mut self) -> Result<(), ScriptError> {
        while let Some(token) = self.peek() {
            match &token.kind {
                TokenKind::Stmt => self.stmt_item()?,
                TokenKind::Axiom => self.axiom_item()?,
                TokenKind::Goal => self.goal_item()?,
                TokenKind::Ident(_) => self.relation_item()?,
                _ => {
                    return Err(
                        self.error_at_current("'stmt', 'axiom', 'goal', or an identifier")
                    )
                }
            }
        }
        Ok(())
    }

    fn stmt_item(&mut self) -> Result<(), ScriptError> {
        self.bump();
        let (id, line, col) = self.expect_ident()?;
        let text = match self.peek() {
            Some(Token { kind: TokenKind::Colon, .. }) => {
                self.bump();
                match self.peek() {
                    Some(Token { kind: TokenKind::Text(_), .. }) => {
                        match self.bump().unwrap().kind {
                            TokenKind::Text(text) => Some(text),
                            _ => unreachable!(),
                        }
                    }
                    _ => return Err(self.error_at_current("string literal")),
                }
            }
            _ => None,
        };
        self.expect_semi()?;
        self.declare(id, text, line, col)
    }

    fn axiom_item(&mut self) -> Result<(), ScriptError> {
        self.bump();
        let (id, line, col) = self.expect_ident()?;
        self.expect_semi()?;
        self.declare(id.clone(), None, line, col)?;
        // repeat axiom lines are idempotent: `axioms` is a set
        self.script.axioms.insert(id);
        Ok(())
    }

    fn goal_item(&mut self) -> Result<(), ScriptError> {
        self.bump();
        let (id, line, col) = self.expect_ident()?;
        self.expect_semi()?;
        self.declare(id.clone(), None, line, col)?;
        match &self.script.goal {
            Some(existing) if *existing != id => Err(ScriptError::ConflictingDeclaration {
                name: id,
                line,
                col,
            }),
            _ => {
                self.script.goal = Some(id);
                Ok(())
            }
        }
    }

    /// An item that starts with an identifier: either an entailment or a
    /// biconditional.
    fn relation_item(&mut self) -> Result<(), ScriptError> {
        let (first, first_line, first_col) = self.expect_ident()?;
        match self.peek() {
            Some(Token { kind: TokenKind::Iff, .. }) => {
                self.bump();
                let (right, line, col) = self.expect_ident()?;
                self.expect_semi()?;
                if right == first {
                    return Err(ScriptError::SelfEntailment { name: right, line, col });
                }
                self.declare(first.clone(), None, first_line, first_col)?;
                self.declare(right.clone(), None, line, col)?;
                self.script.biconditionals.push((first, right));
                Ok(())
            }
            Some(Token { kind: TokenKind::Amp | TokenKind::Arrow, .. }) => {
                let mut premises = vec![(first, first_line, first_col)];
                while let Some(Token { kind: TokenKind::Amp, .. }) = self.peek() {
                    self.bump();
                    premises.push(self.expect_ident()?);
                }
                match self.peek() {
                    Some(Token { kind: TokenKind::Arrow, .. }) => {
                        self.bump();
                    }
                    _ => return Err(self.error_at_current("'=>' or '&'")),
                }
                let (conclusion, concl_line, concl_col) = self.expect_ident()?;
                self.expect_semi()?;
                for (i, (premise, line, col)) in premises.iter().enumerate() {
                    if premises[..i].iter().any(|(earlier, _, _)| earlier == premise) {
                        return Err(ScriptError::DuplicatePremise {
                            name: premise.clone(),
                            line: *line,
                            col: *col,
                        });
                    }
                }
                if premises.iter().any(|(premise, _, _)| *premise == conclusion) {
                    return Err(ScriptError::SelfEntailment {
                        name: conclusion,
                        line: concl_line,
                        col: concl_col,
                    });
                }
                for (premise, line, col) in &premises {
                    self.declare(premise.clone(), None, *line, *col)?;
                }
                self.declare(conclusion.clone(), None, concl_line, concl_col)?;
                let entailment = Entailment {
                    id: self.script.entailments.len(),
                    premises: premises.into_iter().map(|(p, _, _)| p).collect(),
                    conclusion,
                };
                if !self.entailment_keys.insert(entailment.key()) {
                    return Err(ScriptError::DuplicateEntailment {
                        premises: entailment.premises,
                        conclusion: entailment.conclusion,
                    });
                }
                self.script.entailments.push(entailment);
                Ok(())
            }
            _ => Err(self.error_at_current("'=>', '<=>', or '&'")),
        }
    }

    /// Record a statement, merging with any earlier declaration. Display
    /// text fills in once; a second, different text is a conflict.
    fn declare(
        &mut self,
        id: StatementId,
        text: Option<String>,
        line: usize,
        col: usize,
    ) -> Result<(), ScriptError> {
        match self.script.statements.get_mut(&id) {
            None => {
                self.script.statements.insert(id, text);
                Ok(())
            }
            Some(slot) => match (&slot, text) {
                (_, None) => Ok(()),
                (None, Some(text)) => {
                    *slot = Some(text);
                    Ok(())
                }
                (Some(existing), Some(text)) if **existing == text => Ok(()),
                (Some(_), Some(_)) => {
                    Err(ScriptError::ConflictingDeclaration { name: id, line, col })
                }
            },
        }
    }
}
