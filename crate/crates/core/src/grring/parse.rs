//! Polynomial text parser.
//!
//! Grammar: a signed sum of terms; each term is a product of factors joined
//! by `*`, where a factor is an unsigned integer or a variable name with an
//! optional `^exponent`. Whitespace is insignificant. Errors carry the line
//! and column of the offending character; callers embedding polynomial
//! fields inside larger lines pass the field's starting position.

use super::monomial::{Monomial, MonomialOrder};
use super::poly::Poly;
use crate::error::KernelError;
use crate::scalars::{Field, FieldElement};
use num_bigint::BigInt;

pub struct PolyParser {
    field: Field,
    names: Vec<String>,
    order: MonomialOrder,
}

struct Cursor {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    col: usize,
}

impl Cursor {
    fn new(text: &str, line: usize, col: usize) -> Self {
        Cursor { chars: text.chars().collect(), pos: 0, line, col }
    }

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

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.bump();
        }
    }

    fn error(&self, message: impl Into<String>) -> KernelError {
        KernelError::Parse { line: self.line, column: self.col, message: message.into() }
    }
}

impl PolyParser {
    pub fn new(field: Field, names: Vec<String>, order: MonomialOrder) -> Self {
        PolyParser { field, names, order }
    }

    pub fn for_ring(ring: &super::ring::GradedRing) -> Self {
        PolyParser {
            field: ring.field(),
            names: ring.var_names().to_vec(),
            order: ring.order().clone(),
        }
    }

    /// Parses `text` as a polynomial; `line` and `col` locate its first
    /// character in the enclosing source for error reporting.
    pub fn parse(&self, text: &str, line: usize, col: usize) -> Result<Poly, KernelError> {
        let mut cur = Cursor::new(text, line, col);
        cur.skip_ws();
        if cur.peek().is_none() {
            return Err(cur.error("empty polynomial"));
        }
        let mut terms: Vec<(Monomial, FieldElement)> = Vec::new();
        let mut sign = 1i64;
        // Leading sign is optional; every later term must be preceded by one.
        if let Some(c) = cur.peek() {
            if c == '+' || c == '-' {
                cur.bump();
                if c == '-' {
                    sign = -1;
                }
            }
        }
        loop {
            let (m, c) = self.parse_term(&mut cur)?;
            let c = if sign < 0 { c.neg() } else { c };
            terms.push((m, c));
            cur.skip_ws();
            match cur.peek() {
                None => break,
                Some('+') => {
                    cur.bump();
                    sign = 1;
                }
                Some('-') => {
                    cur.bump();
                    sign = -1;
                }
                Some(c) => {
                    return Err(cur.error(format!("expected '+' or '-', found '{c}'")));
                }
            }
        }
        Ok(Poly::from_terms(&self.order, terms))
    }

    fn parse_term(&self, cur: &mut Cursor) -> Result<(Monomial, FieldElement), KernelError> {
        let mut coeff = self.field.one();
        let mut mono = Monomial::one(self.names.len());
        let mut first = true;
        loop {
            cur.skip_ws();
            let c = match cur.peek() {
                Some(c) => c,
                None if first => return Err(cur.error("expected a term")),
                None => break,
            };
            if c.is_ascii_digit() {
                let n = self.parse_uint(cur)?;
                coeff = coeff.mul(&self.field.element_from_bigint(&n));
            } else if c.is_alphabetic() || c == '_' {
                let start_line = cur.line;
                let start_col = cur.col;
                let name = self.parse_name(cur);
                let v = match self.names.iter().position(|n| *n == name) {
                    Some(v) => v,
                    None => {
                        return Err(KernelError::Parse {
                            line: start_line,
                            column: start_col,
                            message: format!("unknown variable '{name}'"),
                        });
                    }
                };
                cur.skip_ws();
                let mut exp = 1u32;
                if cur.peek() == Some('^') {
                    cur.bump();
                    cur.skip_ws();
                    let e = self.parse_uint(cur)?;
                    exp = u32::try_from(&e)
                        .map_err(|_| cur.error("exponent out of range"))?;
                }
                mono.0[v] += exp;
            } else if first {
                return Err(cur.error(format!("expected a coefficient or variable, found '{c}'")));
            } else {
                break;
            }
            first = false;
            cur.skip_ws();
            if cur.peek() == Some('*') {
                cur.bump();
                // After '*' another factor is mandatory.
                cur.skip_ws();
                if cur.peek().is_none() {
                    return Err(cur.error("expected a factor after '*'"));
                }
                continue;
            }
            break;
        }
        Ok((mono, coeff))
    }

    fn parse_uint(&self, cur: &mut Cursor) -> Result<BigInt, KernelError> {
        let mut digits = String::new();
        while matches!(cur.peek(), Some(c) if c.is_ascii_digit()) {
            digits.push(cur.bump().unwrap());
        }
        if digits.is_empty() {
            return Err(cur.error("expected a number"));
        }
        Ok(digits.parse::<BigInt>().expect("digit string parses"))
    }

    fn parse_name(&self, cur: &mut Cursor) -> String {
        let mut name = String::new();
        while matches!(cur.peek(), Some(c) if c.is_alphanumeric() || c == '_') {
            name.push(cur.bump().unwrap());
        }
        name
    }
}
