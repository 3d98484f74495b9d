//! Text syntax for polynomials and Dirichlet polynomials.
//!
//! ```text
//! expr        := term { "+" term }
//! term        := [nat ["*"]] factor | nat
//! poly-factor := "y" ["^" nat]
//! dir-factor  := nat "^" "y"
//! ```
//!
//! Whitespace is ignored. A bare `n` means `n·y^0` or `n·1^y`.

use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::dir::Dir;
use crate::error::{Error, Result};
use crate::finset::Budget;
use crate::poly::{run_lengths, Poly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Poly,
    Dir,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Poly => "poly",
            Kind::Dir => "dir",
        })
    }
}

/// A parsed expression: `(coefficient, exponent or base)` pairs, all
/// coefficients nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expr {
    pub kind: Kind,
    pub terms: Vec<(usize, usize)>,
}

impl Expr {
    fn multiset(&self, budget: Budget) -> Result<Vec<usize>> {
        let total: BigUint = self.terms.iter().map(|&(c, _)| BigUint::from(c)).sum();
        budget.check(&total)?;
        Ok(self
            .terms
            .iter()
            .flat_map(|&(c, k)| std::iter::repeat(k).take(c))
            .collect())
    }

    pub fn to_poly(&self) -> Result<Poly> {
        if self.kind != Kind::Poly {
            return Err(Error::Invalid("expected a polynomial".into()));
        }
        Ok(Poly::new(self.multiset(Budget::default())?))
    }

    pub fn to_dir(&self) -> Result<Dir> {
        if self.kind != Kind::Dir {
            return Err(Error::Invalid("expected a Dirichlet polynomial".into()));
        }
        Ok(Dir::new(self.multiset(Budget::default())?))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Token {
    Nat(usize),
    Y,
    Caret,
    Star,
    Plus,
    End,
}

fn tokenize(text: &str) -> Result<Vec<(Token, usize)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut k = 0;
    while k < bytes.len() {
        let c = bytes[k];
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => k += 1,
            b'0'..=b'9' => {
                let start = k;
                while k < bytes.len() && bytes[k].is_ascii_digit() {
                    k += 1;
                }
                let n = text[start..k].parse().map_err(|_| Error::Syntax {
                    position: start,
                    message: "number too large".into(),
                })?;
                out.push((Token::Nat(n), start));
            }
            b'y' => {
                out.push((Token::Y, k));
                k += 1;
            }
            b'^' => {
                out.push((Token::Caret, k));
                k += 1;
            }
            b'*' => {
                out.push((Token::Star, k));
                k += 1;
            }
            b'+' => {
                out.push((Token::Plus, k));
                k += 1;
            }
            _ => {
                let ch = text[k..].chars().next().unwrap_or('?');
                return Err(Error::Syntax {
                    position: k,
                    message: format!("unexpected character {ch:?}"),
                });
            }
        }
    }
    out.push((Token::End, text.len()));
    Ok(out)
}

struct Parser {
    tokens: Vec<(Token, usize)>,
    at: usize,
    kind: Kind,
}

impl Parser {
    fn peek(&self) -> Token {
        self.tokens[self.at].0
    }

    fn peek2(&self) -> Token {
        self.tokens.get(self.at + 1).map_or(Token::End, |t| t.0)
    }

    fn position(&self) -> usize {
        self.tokens[self.at].1
    }

    fn bump(&mut self) -> Token {
        let t = self.peek();
        self.at += 1;
        t
    }

    fn error<T>(&self, message: &str) -> Result<T> {
        Err(Error::Syntax {
            position: self.position(),
            message: message.into(),
        })
    }

    fn expect(&mut self, want: Token, message: &str) -> Result<()> {
        if self.peek() == want {
            self.at += 1;
            Ok(())
        } else {
            self.error(message)
        }
    }

    fn nat(&mut self, message: &str) -> Result<usize> {
        match self.peek() {
            Token::Nat(n) => {
                self.at += 1;
                Ok(n)
            }
            _ => self.error(message),
        }
    }

    fn require(&self, kind: Kind, position: usize) -> Result<()> {
        if kind == self.kind {
            Ok(())
        } else {
            Err(Error::MixedKind { position })
        }
    }

    /// `y ["^" nat]`.
    fn poly_factor(&mut self) -> Result<usize> {
        self.require(Kind::Poly, self.position())?;
        self.expect(Token::Y, "expected y")?;
        if self.peek() == Token::Caret {
            self.bump();
            self.nat("expected an exponent after ^")
        } else {
            Ok(1)
        }
    }

    /// `nat "^" "y"`.
    fn dir_factor(&mut self) -> Result<usize> {
        let start = self.position();
        self.require(Kind::Dir, start)?;
        let base = self.nat("expected a base")?;
        self.expect(Token::Caret, "expected ^")?;
        self.expect(Token::Y, "expected y after ^")?;
        Ok(base)
    }

    fn constant(&self) -> usize {
        match self.kind {
            Kind::Poly => 0,
            Kind::Dir => 1,
        }
    }

    fn term(&mut self) -> Result<(usize, usize)> {
        match (self.peek(), self.peek2()) {
            (Token::Y, _) => Ok((1, self.poly_factor()?)),
            (Token::Nat(_), Token::Caret) => Ok((1, self.dir_factor()?)),
            (Token::Nat(c), _) => {
                self.bump();
                match self.peek() {
                    Token::Star => {
                        self.bump();
                        Ok((c, self.factor()?))
                    }
                    Token::Y | Token::Nat(_) => Ok((c, self.factor()?)),
                    _ => Ok((c, self.constant())),
                }
            }
            _ => self.error("expected a term"),
        }
    }

    fn factor(&mut self) -> Result<usize> {
        match self.peek() {
            Token::Y => self.poly_factor(),
            Token::Nat(_) => self.dir_factor(),
            _ => self.error("expected y^k or k^y"),
        }
    }

    fn expr(&mut self) -> Result<Vec<(usize, usize)>> {
        let mut terms = vec![self.term()?];
        while self.peek() == Token::Plus {
            self.bump();
            terms.push(self.term()?);
        }
        if self.peek() != Token::End {
            return self.error("expected + or end of input");
        }
        Ok(terms)
    }
}

pub fn parse(kind: Kind, text: &str) -> Result<Expr> {
    let mut parser = Parser {
        tokens: tokenize(text)?,
        at: 0,
        kind,
    };
    let terms = parser.expr()?.into_iter().filter(|&(c, _)| c > 0).collect();
    Ok(Expr { kind, terms })
}

pub fn parse_poly(text: &str) -> Result<Poly> {
    parse(Kind::Poly, text)?.to_poly()
}

pub fn parse_dir(text: &str) -> Result<Dir> {
    parse(Kind::Dir, text)?.to_dir()
}

pub fn print_poly(p: &Poly) -> String {
    let parts: Vec<String> = run_lengths(p.exponents())
        .into_iter()
        .map(|(e, c)| {
            let coefficient = if c == 1 { String::new() } else { c.to_string() };
            match e {
                0 => c.to_string(),
                1 => format!("{coefficient}y"),
                _ => format!("{coefficient}y^{e}"),
            }
        })
        .collect();
    join(parts)
}

pub fn print_dir(d: &Dir) -> String {
    let parts: Vec<String> = run_lengths(d.bases())
        .into_iter()
        .map(|(b, c)| match c {
            1 => format!("{b}^y"),
            _ => format!("{c}*{b}^y"),
        })
        .collect();
    join(parts)
}

fn join(parts: Vec<String>) -> String {
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}
