//! Text grammar for elements, tensors and cobracket tables.
//!
//! ```text
//! element  := term ('+' term)*        (or the literal 0)
//! term     := rational '*' gen ('(x)' gen)*
//! gen      := 'L[' int ']' | 'W[' int ']' | 'c'
//! rational := int | int '/' posint
//! table    := line*   with   line := gen ':=' tensor2
//! ```
//!
//! Whitespace is insignificant. The parser also accepts `-` between terms and
//! a bare generator with implied coefficient 1; the printer always emits the
//! canonical form, e.g. `4*L[0] + 1/2*c` or `1*L[0](x)L[1] + -1*L[1](x)L[0]`.

use std::fmt;

use num::{BigInt, One, Zero};
use thiserror::Error;

use crate::algebra::{AlgebraElement, BasisSymbol, DegreeWindow};
use crate::bialgebra::CobracketTable;
use crate::combination::Combination;
use crate::rational::Rational;
use crate::tensor::{Tensor2, Tensor3, TensorKey};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SyntaxError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown symbol `{name}` at line {line}, column {column}")]
    UnknownSymbol {
        line: usize,
        column: usize,
        name: String,
    },
    #[error("duplicate table entry for {symbol} at line {line}")]
    DuplicateTableEntry { line: usize, symbol: String },
    #[error("table entry {symbol} at line {line} lies outside window radius {radius}")]
    OutsideWindow {
        line: usize,
        symbol: String,
        radius: i64,
    },
}

impl<K: TensorKey> fmt::Display for Combination<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (key, coeff)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{coeff}*")?;
            for (j, s) in key.factors().iter().enumerate() {
                if j > 0 {
                    write!(f, "(x)")?;
                }
                write!(f, "{s}")?;
            }
        }
        Ok(())
    }
}

struct Cursor<'a> {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    col_offset: usize,
    _src: &'a str,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str, line: usize, col_offset: usize) -> Self {
        Self {
            chars: src.chars().collect(),
            pos: 0,
            line,
            col_offset,
            _src: src,
        }
    }

    fn column(&self) -> usize {
        self.col_offset + self.pos + 1
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn error(&self, message: impl Into<String>) -> SyntaxError {
        SyntaxError::Parse {
            line: self.line,
            column: self.column(),
            message: message.into(),
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), SyntaxError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{c}`")))
        }
    }

    fn eat_str(&mut self, s: &str) -> bool {
        self.skip_ws();
        let want: Vec<char> = s.chars().collect();
        if self.chars[self.pos..].starts_with(&want) {
            self.pos += want.len();
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Result<String, SyntaxError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    fn integer(&mut self) -> Result<BigInt, SyntaxError> {
        let negative = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let col = self.column();
        let digits = self.digits()?;
        let value: BigInt = digits.parse().map_err(|_| SyntaxError::Parse {
            line: self.line,
            column: col,
            message: "invalid integer".into(),
        })?;
        Ok(if negative { -value } else { value })
    }

    fn index(&mut self) -> Result<i64, SyntaxError> {
        let col = self.column();
        let v = self.integer()?;
        i64::try_from(v).map_err(|_| SyntaxError::Parse {
            line: self.line,
            column: col,
            message: "index out of range".into(),
        })
    }

    fn rational(&mut self) -> Result<Rational, SyntaxError> {
        let numer = self.integer()?;
        if self.eat('/') {
            let col = self.column();
            let denom: BigInt = self
                .digits()?
                .parse()
                .map_err(|_| self.error("invalid denominator"))?;
            if denom.is_zero() {
                return Err(SyntaxError::Parse {
                    line: self.line,
                    column: col,
                    message: "zero denominator".into(),
                });
            }
            Ok(Rational::new(numer, denom))
        } else {
            Ok(Rational::from_integer(numer))
        }
    }

    fn generator(&mut self) -> Result<BasisSymbol, SyntaxError> {
        self.skip_ws();
        let col = self.column();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_alphanumeric() {
            self.pos += 1;
        }
        let name: String = self.chars[start..self.pos].iter().collect();
        match name.as_str() {
            "c" => Ok(BasisSymbol::C),
            "L" | "W" => {
                self.expect('[')?;
                let n = self.index()?;
                self.expect(']')?;
                Ok(if name == "L" {
                    BasisSymbol::L(n)
                } else {
                    BasisSymbol::W(n)
                })
            }
            "" => Err(self.error("expected a generator")),
            _ => Err(SyntaxError::UnknownSymbol {
                line: self.line,
                column: col,
                name,
            }),
        }
    }

    fn term<K: TensorKey>(&mut self, sign: bool) -> Result<(K, Rational), SyntaxError> {
        let coeff = match self.peek() {
            Some(c) if c.is_ascii_digit() || c == '-' || c == '+' => {
                let q = self.rational()?;
                self.expect('*')?;
                q
            }
            _ => Rational::one(),
        };
        let col = self.column();
        let mut factors = vec![self.generator()?];
        while self.eat_str("(x)") {
            factors.push(self.generator()?);
        }
        if factors.len() != K::ARITY {
            return Err(SyntaxError::Parse {
                line: self.line,
                column: col,
                message: format!(
                    "expected {} tensor factor(s), found {}",
                    K::ARITY,
                    factors.len()
                ),
            });
        }
        Ok((K::from_factors(&factors), if sign { -coeff } else { coeff }))
    }

    fn combination<K: TensorKey>(&mut self) -> Result<Combination<K>, SyntaxError> {
        if self.at_end() {
            return Err(self.error("empty expression"));
        }
        let save = self.pos;
        if self.eat('0') && self.at_end() {
            return Ok(Combination::zero());
        }
        self.pos = save;
        let mut out = Combination::zero();
        let (k, c) = self.term::<K>(false)?;
        out.add_term(k, c);
        while !self.at_end() {
            let negative = if self.eat('+') {
                false
            } else if self.eat('-') {
                true
            } else {
                return Err(self.error("expected `+` or end of expression"));
            };
            let (k, c) = self.term::<K>(negative)?;
            out.add_term(k, c);
        }
        Ok(out)
    }
}

fn parse_at<K: TensorKey>(
    text: &str,
    line: usize,
    col_offset: usize,
) -> Result<Combination<K>, SyntaxError> {
    Cursor::new(text, line, col_offset).combination()
}

pub fn parse_element(text: &str) -> Result<AlgebraElement, SyntaxError> {
    parse_at(text, 1, 0)
}

pub fn parse_tensor2(text: &str) -> Result<Tensor2, SyntaxError> {
    parse_at(text, 1, 0)
}

pub fn parse_tensor3(text: &str) -> Result<Tensor3, SyntaxError> {
    parse_at(text, 1, 0)
}

pub fn parse_symbol(text: &str) -> Result<BasisSymbol, SyntaxError> {
    let mut cur = Cursor::new(text, 1, 0);
    let s = cur.generator()?;
    if !cur.at_end() {
        return Err(cur.error("trailing input after symbol"));
    }
    Ok(s)
}

/// Parses `SYMBOL := tensor2` lines into a table on `window`. Blank lines and
/// lines starting with `#` are ignored; symbols without a line map to zero.
pub fn parse_table(text: &str, window: DegreeWindow) -> Result<CobracketTable, SyntaxError> {
    let mut table = CobracketTable::zero(window);
    let mut seen = std::collections::BTreeSet::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let Some(split) = raw.find(":=") else {
            return Err(SyntaxError::Parse {
                line,
                column: 1,
                message: "expected `SYMBOL := tensor`".into(),
            });
        };
        let mut lhs = Cursor::new(&raw[..split], line, 0);
        let sym = lhs.generator()?;
        if !lhs.at_end() {
            return Err(lhs.error("expected `:=` after symbol"));
        }
        let rhs_offset = split + 2;
        let rhs: Tensor2 = parse_at(&raw[rhs_offset..], line, rhs_offset)?;
        if !window.contains(sym) {
            return Err(SyntaxError::OutsideWindow {
                line,
                symbol: sym.to_string(),
                radius: window.radius(),
            });
        }
        if !seen.insert(sym) {
            return Err(SyntaxError::DuplicateTableEntry {
                line,
                symbol: sym.to_string(),
            });
        }
        table.set(sym, rhs);
    }
    Ok(table)
}

/// Prints a table in the format read by [`parse_table`], skipping zero rows.
pub fn format_table(table: &CobracketTable) -> String {
    let mut out = String::new();
    for (s, v) in &table.values {
        if !v.is_zero() {
            out.push_str(&format!("{s} := {v}\n"));
        }
    }
    out
}
