//! Recursive-descent parser for the polynomial text format.
//!
//! ```text
//! poly     := ['-'] term (('+'|'-') term)*
//! term     := factor ('*' factor)*
//! factor   := base ('^' NAT)?
//! base     := RATIONAL | VAR | '(' poly ')'
//! RATIONAL := INT ('/' POSNAT)?
//! VAR      := 'x' POSNAT
//! ```
//!
//! Whitespace is insignificant. Implicit multiplication is rejected.

use num_bigint::BigInt;
use num_traits::Zero;

use super::poly::Poly;
use super::rational::Rational;
use crate::error::{Error, Result};

pub fn parse(text: &str, dim: usize) -> Result<Poly> {
    let mut parser = Parser {
        tokens: tokenize(text)?,
        pos: 0,
        dim,
        end: text.len(),
    };
    let p = parser.poly()?;
    if let Some(tok) = parser.peek() {
        return Err(Error::Syntax {
            position: tok.position,
            expected: "'+', '-', '*' or end of input".into(),
        });
    }
    Ok(p)
}

#[derive(Debug, Clone, PartialEq)]
enum Kind {
    Number(BigInt),
    Var(BigInt),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

#[derive(Debug, Clone)]
struct Token {
    kind: Kind,
    position: usize,
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    let digits_from = |start: usize| {
        let mut end = start;
        while end < bytes.len() && bytes[end].is_ascii_digit() {
            end += 1;
        }
        end
    };
    while i < bytes.len() {
        let c = bytes[i];
        let position = i;
        let kind = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Kind::Plus,
            b'-' => Kind::Minus,
            b'*' => Kind::Star,
            b'/' => Kind::Slash,
            b'^' => Kind::Caret,
            b'(' => Kind::LParen,
            b')' => Kind::RParen,
            b'0'..=b'9' => {
                let end = digits_from(i);
                let value = text[i..end].parse().expect("ascii digits");
                tokens.push(Token {
                    kind: Kind::Number(value),
                    position,
                });
                i = end;
                continue;
            }
            b'x' => {
                let end = digits_from(i + 1);
                if end == i + 1 {
                    return Err(Error::Syntax {
                        position: i + 1,
                        expected: "variable index after 'x'".into(),
                    });
                }
                let value = text[i + 1..end].parse().expect("ascii digits");
                tokens.push(Token {
                    kind: Kind::Var(value),
                    position,
                });
                i = end;
                continue;
            }
            _ => {
                return Err(Error::Syntax {
                    position,
                    expected: "number, variable, operator or parenthesis".into(),
                })
            }
        };
        tokens.push(Token { kind, position });
        i += 1;
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    dim: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn peek_kind(&self) -> Option<&Kind> {
        self.peek().map(|t| &t.kind)
    }

    fn position(&self) -> usize {
        self.peek().map_or(self.end, |t| t.position)
    }

    fn expected(&self, what: &str) -> Error {
        Error::Syntax {
            position: self.position(),
            expected: what.into(),
        }
    }

    fn poly(&mut self) -> Result<Poly> {
        let negate = if self.peek_kind() == Some(&Kind::Minus) {
            self.pos += 1;
            true
        } else {
            false
        };
        let first = self.term()?;
        let mut acc = if negate { -first } else { first };
        loop {
            match self.peek_kind() {
                Some(Kind::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Kind::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        while self.peek_kind() == Some(&Kind::Star) {
            self.pos += 1;
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly> {
        let base = self.base()?;
        if self.peek_kind() != Some(&Kind::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        match self.peek_kind() {
            Some(Kind::Number(n)) => {
                let exp: u32 = n
                    .try_into()
                    .map_err(|_| self.expected("exponent that fits in 32 bits"))?;
                self.pos += 1;
                Ok(base.pow(exp))
            }
            _ => Err(self.expected("natural exponent after '^'")),
        }
    }

    fn base(&mut self) -> Result<Poly> {
        let Some(tok) = self.peek().cloned() else {
            return Err(self.expected("number, variable or '('"));
        };
        match tok.kind {
            Kind::Number(numer) => {
                self.pos += 1;
                let mut denom = BigInt::from(1);
                if self.peek_kind() == Some(&Kind::Slash) {
                    self.pos += 1;
                    match self.peek().cloned() {
                        Some(Token {
                            kind: Kind::Number(d),
                            position,
                        }) => {
                            if d.is_zero() {
                                return Err(Error::ZeroDenominator { position });
                            }
                            denom = d;
                            self.pos += 1;
                        }
                        _ => return Err(self.expected("positive denominator after '/'")),
                    }
                }
                Ok(Poly::constant(self.dim, Rational::new(numer, denom)))
            }
            Kind::Var(index) => {
                let index: usize = (&index).try_into().unwrap_or(usize::MAX);
                if index == 0 || index > self.dim {
                    return Err(Error::IndexOutOfRange {
                        index,
                        dim: self.dim,
                    });
                }
                self.pos += 1;
                Ok(Poly::var(self.dim, index - 1))
            }
            Kind::LParen => {
                self.pos += 1;
                let inner = self.poly()?;
                if self.peek_kind() != Some(&Kind::RParen) {
                    return Err(self.expected("')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            _ => Err(self.expected("number, variable or '('")),
        }
    }
}
