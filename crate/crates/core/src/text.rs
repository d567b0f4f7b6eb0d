//! Parser for the element grammar printed by [`FreeAlgebra::display`].
//!
//! ```text
//! element  = [sign] term { sign term } | "0" ;
//! sign     = "+" | "-" ;
//! term     = coeff [ "*" monomial ] | monomial ;
//! coeff    = integer [ "/" integer ] ;
//! monomial = factor { "*" factor } ;
//! factor   = ident [ "^" integer ] ;
//! ident    = letter { letter | digit | "_" } ;
//! ```
//!
//! Whitespace is ignored between tokens. Factors are multiplied in the order
//! written, so `c*b` with odd `b < c` parses as `-b*c`.

use alloc::string::String;
use alloc::vec::Vec;
use core::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::gca::{Element, FreeAlgebra, GenId};
use crate::linalg::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("column {column}: {message}")]
pub struct ParseError {
    /// 1-based character column.
    pub column: usize,
    pub message: String,
}

struct Cursor<'a> {
    chars: Vec<char>,
    pos: usize,
    alg: &'a FreeAlgebra,
}

impl Cursor<'_> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            column: self.pos + 1,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        Ok(BigInt::from_str(&digits).expect("ascii digits"))
    }

    fn ident(&mut self) -> Result<(usize, String), ParseError> {
        self.skip_ws();
        let start = self.pos;
        match self.chars.get(self.pos) {
            Some(c) if c.is_alphabetic() => self.pos += 1,
            _ => return self.err("expected a generator name or coefficient"),
        }
        while self
            .chars
            .get(self.pos)
            .is_some_and(|c| c.is_alphanumeric() || *c == '_')
        {
            self.pos += 1;
        }
        Ok((start, self.chars[start..self.pos].iter().collect()))
    }

    fn factor(&mut self, out: &mut Vec<GenId>) -> Result<(), ParseError> {
        let (start, name) = self.ident()?;
        let Some(g) = self.alg.find(&name) else {
            return Err(ParseError {
                column: start + 1,
                message: alloc::format!("unknown generator `{name}`"),
            });
        };
        let exp = if self.eat('^') {
            let e = self.integer()?;
            match u32::try_from(&e) {
                Ok(e) => e,
                Err(_) => return self.err("exponent out of range"),
            }
        } else {
            1
        };
        out.extend(core::iter::repeat_n(g, exp as usize));
        Ok(())
    }

    fn term(&mut self, sign: Scalar, acc: &mut Element) -> Result<(), ParseError> {
        let mut coeff = sign;
        let mut factors = Vec::new();
        if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            let num = self.integer()?;
            let den = if self.eat('/') {
                self.skip_ws();
                let at = self.pos;
                let den = self.integer()?;
                if den.is_zero() {
                    return Err(ParseError {
                        column: at + 1,
                        message: "zero denominator".into(),
                    });
                }
                den
            } else {
                BigInt::one()
            };
            coeff *= Scalar::new(num, den);
            if !self.eat('*') {
                acc.add_term(crate::gca::Monomial::one(), coeff);
                return Ok(());
            }
        }
        self.factor(&mut factors)?;
        while self.eat('*') {
            self.factor(&mut factors)?;
        }
        if let Some((s, m)) = self.alg.normalize_monomial(&factors) {
            acc.add_term(m, if s < 0 { -coeff } else { coeff });
        }
        Ok(())
    }
}

/// Parses an element over the generators of `alg`.
pub fn parse_element(alg: &FreeAlgebra, input: &str) -> Result<Element, ParseError> {
    let mut cur = Cursor {
        chars: input.chars().collect(),
        pos: 0,
        alg,
    };
    let mut acc = Element::zero();
    if cur.peek().is_none() {
        return cur.err("empty expression");
    }
    let mut first = true;
    loop {
        let sign = if cur.eat('-') {
            -Scalar::one()
        } else if cur.eat('+') || first {
            Scalar::one()
        } else {
            return cur.err("expected `+` or `-`");
        };
        first = false;
        cur.term(sign, &mut acc)?;
        if cur.peek().is_none() {
            break;
        }
    }
    Ok(acc)
}

/// Parses a rational literal `p`, `-p`, or `p/q`.
pub fn parse_scalar(input: &str) -> Result<Scalar, ParseError> {
    let empty = FreeAlgebra::new();
    let x = parse_element(&empty, input)?;
    let result = match x.terms().next() {
        None => Ok(Scalar::zero()),
        Some((m, c)) if m.is_one() => Ok(c.clone()),
        Some(_) => Err(ParseError {
            column: 1,
            message: "expected a rational number".into(),
        }),
    };
    result
}
