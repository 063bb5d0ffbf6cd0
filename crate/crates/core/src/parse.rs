//! Surface syntax for words, terms and identities.
//!
//! ```text
//! identity := term ("==" | "≈") term
//! term     := word ("+" word)*
//! word     := factor ("*" factor)*
//! factor   := variable ("^" positive-int)?
//! variable := [A-Za-z][A-Za-z0-9_]*
//! ```
//!
//! Whitespace (including newlines) is insignificant. Exponents expand to
//! repetition; nothing downstream stores them.

use std::fmt;

use thiserror::Error;

use crate::terms::{Identity, Term, Var, Word};

/// Exponents above this are rejected to keep words a sane size.
pub const MAX_EXPONENT: u64 = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(u64),
    Plus,
    Star,
    Caret,
    Equals,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::Plus => f.write_str("`+`"),
            Tok::Star => f.write_str("`*`"),
            Tok::Caret => f.write_str("`^`"),
            Tok::Equals => f.write_str("`==`"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut column) = (0, 1, 1);
    let err = |line, column, message: String| ParseError { line, column, message };
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, column);
        if c == '\n' {
            i += 1;
            line += 1;
            column = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            column += 1;
            continue;
        }
        let start = i;
        let tok = if c.is_ascii_alphabetic() {
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            Tok::Ident(chars[start..i].iter().collect())
        } else if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            let n = digits
                .parse::<u64>()
                .map_err(|_| err(l0, c0, format!("integer `{digits}` is too large")))?;
            Tok::Int(n)
        } else {
            i += 1;
            match c {
                '+' => Tok::Plus,
                '*' => Tok::Star,
                '^' => Tok::Caret,
                '≈' => Tok::Equals,
                '=' if chars.get(i) == Some(&'=') => {
                    i += 1;
                    Tok::Equals
                }
                _ => return Err(err(l0, c0, format!("unexpected character `{c}`"))),
            }
        };
        column += i - start;
        out.push(Spanned {
            tok,
            line: l0,
            column: c0,
        });
    }
    out.push(Spanned {
        tok: Tok::End,
        line,
        column,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    commutative: bool,
}

impl Parser {
    fn new(text: &str, commutative: bool) -> Result<Self, ParseError> {
        Ok(Parser {
            toks: lex(text)?,
            pos: 0,
            commutative,
        })
    }

    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error_here(&self, message: String) -> ParseError {
        let t = self.peek();
        ParseError {
            line: t.line,
            column: t.column,
            message,
        }
    }

    fn expect_end(&self) -> Result<(), ParseError> {
        match &self.peek().tok {
            Tok::End => Ok(()),
            other => Err(self.error_here(format!("expected end of input, found {other}"))),
        }
    }

    fn factor(&mut self, letters: &mut Vec<Var>) -> Result<(), ParseError> {
        let t = self.bump();
        let name = match t.tok {
            Tok::Ident(name) => name,
            other => {
                return Err(ParseError {
                    line: t.line,
                    column: t.column,
                    message: format!("expected a variable, found {other}"),
                })
            }
        };
        let var = Var::new(name).map_err(|e| ParseError {
            line: t.line,
            column: t.column,
            message: e.to_string(),
        })?;
        let mut power = 1;
        if self.peek().tok == Tok::Caret {
            self.bump();
            let t = self.bump();
            power = match t.tok {
                Tok::Int(0) => {
                    return Err(ParseError {
                        line: t.line,
                        column: t.column,
                        message: "exponents must be positive".into(),
                    })
                }
                Tok::Int(n) if n > MAX_EXPONENT => {
                    return Err(ParseError {
                        line: t.line,
                        column: t.column,
                        message: format!("exponent {n} exceeds {MAX_EXPONENT}"),
                    })
                }
                Tok::Int(n) => n as usize,
                other => {
                    return Err(ParseError {
                        line: t.line,
                        column: t.column,
                        message: format!("expected an exponent, found {other}"),
                    })
                }
            };
        }
        letters.extend(std::iter::repeat_n(var, power));
        Ok(())
    }

    fn word(&mut self) -> Result<Word, ParseError> {
        let mut letters = Vec::new();
        self.factor(&mut letters)?;
        loop {
            match &self.peek().tok {
                Tok::Star => {
                    self.bump();
                    self.factor(&mut letters)?;
                }
                Tok::Ident(name) => {
                    let name = name.clone();
                    return Err(self.error_here(format!("expected `*` before `{name}`")));
                }
                _ => break,
            }
        }
        Ok(Word::new(letters).expect("a factor contributes at least one letter"))
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let mut words = vec![self.word()?];
        while self.peek().tok == Tok::Plus {
            self.bump();
            words.push(self.word()?);
        }
        Ok(Term::new(words, self.commutative).expect("at least one word was parsed"))
    }

    fn identity(&mut self) -> Result<Identity, ParseError> {
        let lhs = self.term()?;
        match &self.peek().tok {
            Tok::Equals => {
                self.bump();
            }
            other => {
                let msg = format!("expected `==` or `≈`, found {other}");
                return Err(self.error_here(msg));
            }
        }
        let rhs = self.term()?;
        Ok(Identity::new(lhs, rhs).expect("both sides share the parser's mode"))
    }
}

pub fn parse_identity(text: &str, commutative: bool) -> Result<Identity, ParseError> {
    let mut p = Parser::new(text, commutative)?;
    let id = p.identity()?;
    p.expect_end()?;
    Ok(id)
}

pub fn parse_term(text: &str, commutative: bool) -> Result<Term, ParseError> {
    let mut p = Parser::new(text, commutative)?;
    let t = p.term()?;
    p.expect_end()?;
    Ok(t)
}

/// A single word, letters kept in the written order.
pub fn parse_word(text: &str) -> Result<Word, ParseError> {
    let mut p = Parser::new(text, false)?;
    let w = p.word()?;
    p.expect_end()?;
    Ok(w)
}
