//! Recursive-descent parser for polynomial expressions such as
//! `3*x^4 + 1/2*x^2*y1 - (x + y2)^2`.
//!
//! Variables are `x` and `y1..yn`; a bare `y` means `y1` when `n = 1`.
//! Division is only allowed by a nonzero rational constant.

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use super::{Jet, Rational, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("column {column}: {message}")]
pub struct ParseError {
    /// 1-based character column.
    pub column: usize,
    pub message: String,
}

/// Parses `src` into a jet in `num_params` parameters truncated at `order`.
pub fn parse_jet(src: &str, num_params: usize, order: u32) -> Result<Jet, ParseError> {
    let mut parser = Parser {
        chars: src.chars().collect(),
        pos: 0,
        num_params,
        order,
    };
    let jet = parser.expr()?;
    parser.skip_ws();
    if parser.pos < parser.chars.len() {
        return Err(parser.error(format!("unexpected '{}'", parser.chars[parser.pos])));
    }
    Ok(jet)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    num_params: usize,
    order: u32,
}

impl Parser {
    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            column: self.pos + 1,
            message: message.into(),
        }
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

    fn expr(&mut self) -> Result<Jet, ParseError> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                '+' => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                '-' => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Jet, ParseError> {
        let mut acc = self.unary()?;
        while let Some(c) = self.peek() {
            match c {
                '*' => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                '/' => {
                    self.pos += 1;
                    let start = self.pos;
                    let divisor = self.unary()?;
                    let constant = divisor.value_at_origin();
                    if divisor.num_terms() > 1 || (!divisor.is_zero() && constant.is_zero()) {
                        return Err(ParseError {
                            column: start + 1,
                            message: "division is only allowed by a rational constant".into(),
                        });
                    }
                    if constant.is_zero() {
                        return Err(ParseError {
                            column: start + 1,
                            message: "division by zero".into(),
                        });
                    }
                    acc = acc.scale(&(Rational::from_integer(1.into()) / constant));
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Jet, ParseError> {
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Jet, ParseError> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            let digits = self.digits();
            if digits.is_empty() {
                return Err(self.error("expected a non-negative integer exponent"));
            }
            let e: u32 = digits.parse().map_err(|_| ParseError {
                column: start + 1,
                message: "exponent too large".into(),
            })?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn atom(&mut self) -> Result<Jet, ParseError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let digits = self.digits();
                let value: BigInt = digits.parse().expect("digit string");
                Ok(Jet::constant(
                    self.num_params,
                    self.order,
                    Rational::from_integer(value),
                ))
            }
            Some('x') => {
                self.pos += 1;
                Ok(Jet::var(self.num_params, self.order, Var::X))
            }
            Some('y') => {
                let start = self.pos;
                self.pos += 1;
                let digits = self.digits();
                let index = if digits.is_empty() {
                    if self.num_params != 1 {
                        return Err(ParseError {
                            column: start + 1,
                            message: "bare 'y' is only allowed with one parameter".into(),
                        });
                    }
                    1
                } else {
                    digits.parse::<usize>().unwrap_or(usize::MAX)
                };
                if index == 0 || index > self.num_params {
                    return Err(ParseError {
                        column: start + 1,
                        message: format!(
                            "unknown variable y{digits} (parameters are y1..y{})",
                            self.num_params
                        ),
                    });
                }
                Ok(Jet::var(self.num_params, self.order, Var::y(index)))
            }
            Some(c) => Err(self.error(format!("unexpected '{c}'"))),
            None => Err(self.error("unexpected end of expression")),
        }
    }
}
