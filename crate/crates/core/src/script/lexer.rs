//! Hand-rolled lexer. Positions are 1-based (line, column) counted in
//! characters, so diagnostics stay meaningful on non-ASCII display text.

use super::ScriptError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TokenKind {
    Stmt,
    Axiom,
    Goal,
    Ident(String),
    Text(String),
    Amp,
    Arrow, // =>
    Iff,   // <=>
    Colon,
    Semi,
}

impl TokenKind {
    /// How the token reads in a diagnostic.
    pub fn describe(&self) -> String {
        match self {
            TokenKind::Stmt => "'stmt'".to_string(),
            TokenKind::Axiom => "'axiom'".to_string(),
            TokenKind::Goal => "'goal'".to_string(),
            TokenKind::Ident(name) => format!("identifier '{name}'"),
            TokenKind::Text(_) => "string literal".to_string(),
            TokenKind::Amp => "'&'".to_string(),
            TokenKind::Arrow => "'=>'".to_string(),
            TokenKind::Iff => "'<=>'".to_string(),
            TokenKind::Colon => "':'".to_string(),
            TokenKind::Semi => "';'".to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub line: usize,
    pub col: usize,
}

struct Lexer {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    col: usize,
}

impl Lexer {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }
}

pub fn tokenize(source: &str) -> Result<Vec<Token>, ScriptError> {
    let mut lx = Lexer {
        chars: source.chars().collect(),
        pos: 0,
        line: 1,
        col: 1,
    };
    let mut tokens = Vec::new();
    while let Some(c) = lx.peek() {
        let (line, col) = (lx.line, lx.col);
        match c {
            ' ' | '\t' | '\r' | '\n' => {
                lx.bump();
            }
            '#' => {
                while let Some(c) = lx.peek() {
                    if c == '\n' {
                        break;
                    }
                    lx.bump();
                }
            }
            ';' => {
                lx.bump();
                tokens.push(Token { kind: TokenKind::Semi, line, col });
            }
            ':' => {
                lx.bump();
                tokens.push(Token { kind: TokenKind::Colon, line, col });
            }
            '&' => {
                lx.bump();
                tokens.push(Token { kind: TokenKind::Amp, line, col });
            }
            '=' => {
                lx.bump();
                if lx.peek() == Some('>') {
                    lx.bump();
                    tokens.push(Token { kind: TokenKind::Arrow, line, col });
                } else {
                    return Err(ScriptError::Syntax {
                        line,
                        col,
                        expected: "'=>'".to_string(),
                        found: "'='".to_string(),
                    });
                }
            }
            '<' => {
                lx.bump();
                if lx.peek() == Some('=') {
                    lx.bump();
                    if lx.peek() == Some('>') {
                        lx.bump();
                        tokens.push(Token { kind: TokenKind::Iff, line, col });
                        continue;
                    }
                }
                return Err(ScriptError::Syntax {
                    line,
                    col,
                    expected: "'<=>'".to_string(),
                    found: "'<'".to_string(),
                });
            }
            '"' => {
                lx.bump();
                let mut text = String::new();
                loop {
                    match lx.bump() {
                        Some('"') => break,
                        Some('\\') => match lx.bump() {
                            // Only the delimiter and the backslash need
                            // escaping; anything else stands for itself.
                            Some(escaped) => text.push(escaped),
                            None => {
                                return Err(ScriptError::Syntax {
                                    line: lx.line,
                                    col: lx.col,
                                    expected: "closing '\"'".to_string(),
                                    found: "end of input".to_string(),
                                })
                            }
                        },
                        Some(other) => text.push(other),
                        None => {
                            return Err(ScriptError::Syntax {
                                line: lx.line,
                                col: lx.col,
                                expected: "closing '\"'".to_string(),
                                found: "end of input".to_string(),
                            })
                        }
                    }
                }
                tokens.push(Token { kind: TokenKind::Text(text), line, col });
            }
            c if c.is_ascii_alphabetic() => {
                let mut word = String::new();
                while let Some(c) = lx.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        word.push(c);
                        lx.bump();
                    } else {
                        break;
                    }
                }
                let kind = match word.as_str() {
                    "stmt" => TokenKind::Stmt,
                    "axiom" => TokenKind::Axiom,
                    "goal" => TokenKind::Goal,
                    _ => TokenKind::Ident(word),
                };
                tokens.push(Token { kind, line, col });
            }
            other => {
                return Err(ScriptError::IllegalCharacter {
                    ch: other,
                    line,
                    col,
                })
            }
        }
    }
    Ok(tokens)
}
