//! Recursive-descent parser for ring expressions.
//!
//! ```text
//! sum      := product (('+' | '-') product)*
//! product  := unary (('*' | '/' | <juxtaposition>) unary)*
//! unary    := '-' unary | power
//! power    := primary ('^' exponent)*
//! exponent := INT | '(' INT ')'
//! primary  := INT | 'rho' | 'eta' | 'w' '[' ['-'] INT ']' | 'x' '[' ['-'] INT ']'
//!           | '(' sum ')'
//! ```
//!
//! Juxtaposition multiplies when the right operand starts with a generator
//! name or `(`, so `2rho` and `3(1 + eta)` parse.

use std::num::NonZeroU32;

use num_bigint::BigInt;
use thiserror::Error;

use crate::ring::BasisElement;

/// Largest exponent accepted after `^`.
pub const MAX_EXPONENT: u32 = 1 << 16;
/// Largest `|n|` accepted in `w[n]`.
pub const MAX_OMEGA_INDEX: i64 = 1 << 40;
const MAX_DEPTH: usize = 200;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {offset}: expected {}, found {found}", .expected.join(" or "))]
    Syntax {
        offset: usize,
        expected: Vec<&'static str>,
        found: String,
    },
    #[error("invalid index at byte {offset}: {message}")]
    Index { offset: usize, message: String },
    #[error("at byte {offset}: {message}")]
    Limit { offset: usize, message: String },
}

impl ParseError {
    pub fn offset(&self) -> usize {
        match self {
            ParseError::Syntax { offset, .. }
            | ParseError::Index { offset, .. }
            | ParseError::Limit { offset, .. } => *offset,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    Generator(BasisElement),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token<'a> {
    Int(&'a str),
    Ident(&'a str),
    Punct(char),
    End,
}

impl Token<'_> {
    fn describe(&self) -> String {
        match self {
            Token::Int(s) => format!("integer `{s}`"),
            Token::Ident(s) => format!("identifier `{s}`"),
            Token::Punct(c) => format!("`{c}`"),
            Token::End => "end of input".to_owned(),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token<'_>)>, ParseError> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut pos = 0;
    while pos < bytes.len() {
        let c = bytes[pos];
        if c.is_ascii_whitespace() {
            pos += 1;
        } else if c.is_ascii_digit() {
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            tokens.push((start, Token::Int(&text[start..pos])));
        } else if c.is_ascii_alphabetic() || c == b'_' {
            let start = pos;
            while pos < bytes.len() && (bytes[pos].is_ascii_alphanumeric() || bytes[pos] == b'_') {
                pos += 1;
            }
            tokens.push((start, Token::Ident(&text[start..pos])));
        } else if b"+-*/^()[]".contains(&c) {
            tokens.push((pos, Token::Punct(c as char)));
            pos += 1;
        } else {
            let ch = text[pos..].chars().next().expect("in bounds");
            return Err(ParseError::Syntax {
                offset: pos,
                expected: vec!["expression"],
                found: format!("`{ch}`"),
            });
        }
    }
    tokens.push((text.len(), Token::End));
    Ok(tokens)
}

struct Parser<'a> {
    tokens: Vec<(usize, Token<'a>)>,
    pos: usize,
    depth: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Token<'a> {
        &self.tokens[self.pos].1
    }

    fn offset(&self) -> usize {
        self.tokens[self.pos].0
    }

    fn advance(&mut self) -> Token<'a> {
        let t = self.tokens[self.pos].1.clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: Vec<&'static str>) -> ParseError {
        ParseError::Syntax {
            offset: self.offset(),
            expected,
            found: self.peek().describe(),
        }
    }

    fn expect(&mut self, c: char, what: &'static str) -> Result<(), ParseError> {
        if *self.peek() == Token::Punct(c) {
            self.advance();
            Ok(())
        } else {
            Err(self.error(vec![what]))
        }
    }

    fn enter(&mut self) -> Result<(), ParseError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(ParseError::Limit {
                offset: self.offset(),
                message: format!("expression nested deeper than {MAX_DEPTH}"),
            });
        }
        Ok(())
    }

    fn sum(&mut self) -> Result<Expr, ParseError> {
        self.enter()?;
        let mut lhs = self.product()?;
        loop {
            match self.peek() {
                Token::Punct('+') => {
                    self.advance();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.product()?));
                }
                Token::Punct('-') => {
                    self.advance();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.product()?));
                }
                _ => break,
            }
        }
        self.depth -= 1;
        Ok(lhs)
    }

    fn product(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Token::Punct('*') => {
                    self.advance();
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Token::Punct('/') => {
                    self.advance();
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
                }
                Token::Ident(_) | Token::Punct('(') => {
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                _ => break,
            }
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if *self.peek() == Token::Punct('-') {
            self.advance();
            self.enter()?;
            let inner = self.unary()?;
            self.depth -= 1;
            Ok(Expr::Neg(Box::new(inner)))
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let mut base = self.primary()?;
        while *self.peek() == Token::Punct('^') {
            self.advance();
            let e = self.exponent()?;
            base = Expr::Pow(Box::new(base), e);
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<u32, ParseError> {
        let parenthesized = *self.peek() == Token::Punct('(');
        if parenthesized {
            self.advance();
        }
        let offset = self.offset();
        let Token::Int(digits) = self.peek().clone() else {
            return Err(self.error(vec!["nonnegative integer exponent"]));
        };
        self.advance();
        let value = digits
            .parse::<u32>()
            .ok()
            .filter(|e| *e <= MAX_EXPONENT)
            .ok_or_else(|| ParseError::Limit {
                offset,
                message: format!("exponent {digits} exceeds {MAX_EXPONENT}"),
            })?;
        if parenthesized {
            self.expect(')', "`)`")?;
        }
        Ok(value)
    }

    /// `[` ['-'] INT `]`, returning the signed index and its offset.
    fn index(&mut self) -> Result<(i128, usize), ParseError> {
        self.expect('[', "`[`")?;
        let offset = self.offset();
        let negative = *self.peek() == Token::Punct('-');
        if negative {
            self.advance();
        }
        let Token::Int(digits) = self.peek().clone() else {
            return Err(self.error(vec!["integer index"]));
        };
        self.advance();
        let magnitude: i128 = digits.parse().map_err(|_| ParseError::Index {
            offset,
            message: format!("index {digits} is too large"),
        })?;
        self.expect(']', "`]`")?;
        Ok((if negative { -magnitude } else { magnitude }, offset))
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        let offset = self.offset();
        match self.peek().clone() {
            Token::Int(digits) => {
                self.advance();
                Ok(Expr::Int(digits.parse().expect("lexer yields digits")))
            }
            Token::Ident("rho") => {
                self.advance();
                Ok(Expr::Generator(BasisElement::RHO))
            }
            Token::Ident("eta") => {
                self.advance();
                Ok(Expr::Generator(BasisElement::ETA))
            }
            Token::Ident("w") => {
                self.advance();
                let (n, at) = self.index()?;
                if n.abs() > i128::from(MAX_OMEGA_INDEX) {
                    return Err(ParseError::Index {
                        offset: at,
                        message: format!("w index {n} exceeds {MAX_OMEGA_INDEX} in magnitude"),
                    });
                }
                Ok(Expr::Generator(BasisElement::Omega(n as i64)))
            }
            Token::Ident("x") => {
                self.advance();
                let (i, at) = self.index()?;
                let i = u32::try_from(i)
                    .ok()
                    .and_then(NonZeroU32::new)
                    .ok_or_else(|| ParseError::Index {
                        offset: at,
                        message: format!("x index must be a positive 32-bit integer, got {i}"),
                    })?;
                Ok(Expr::Generator(BasisElement::XClass(i)))
            }
            Token::Punct('(') => {
                self.advance();
                let inner = self.sum()?;
                self.expect(')', "`)`")?;
                Ok(inner)
            }
            Token::Ident(_) => Err(ParseError::Syntax {
                offset,
                expected: vec!["generator (rho, eta, w[n], x[i])"],
                found: self.peek().describe(),
            }),
            _ => Err(self.error(vec!["integer", "generator", "`(`"])),
        }
    }
}

pub fn parse(text: &str) -> Result<Expr, ParseError> {
    let mut parser = Parser {
        tokens: tokenize(text)?,
        pos: 0,
        depth: 0,
    };
    let expr = parser.sum()?;
    if *parser.peek() != Token::End {
        return Err(parser.error(vec!["operator", "end of input"]));
    }
    Ok(expr)
}
