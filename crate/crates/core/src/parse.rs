//! Text grammar for phases: a signed sum of monomials `c x1^a x2^b`, with
//! implicit multiplication by whitespace or `*`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::poly::LatticePoint;
use crate::rational::Rational;
use crate::Polynomial;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("negative exponent at byte {position}")]
    NegativeExponent { position: usize },
}

impl ParseError {
    pub fn position(&self) -> usize {
        match self {
            ParseError::Syntax { position, .. } | ParseError::NegativeExponent { position } => {
                *position
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Number(BigInt),
    Var(u8),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
}

fn syntax(position: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        position,
        message: message.into(),
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'+' | b'-' | b'*' | b'/' | b'^' => {
                let tok = match c {
                    b'+' => Token::Plus,
                    b'-' => Token::Minus,
                    b'*' => Token::Star,
                    b'/' => Token::Slash,
                    _ => Token::Caret,
                };
                out.push((i, tok));
                i += 1;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = text[start..i].parse().expect("digits");
                out.push((start, Token::Number(n)));
            }
            b'x' => {
                match bytes.get(i + 1) {
                    Some(b'1') => out.push((i, Token::Var(1))),
                    Some(b'2') => out.push((i, Token::Var(2))),
                    _ => return Err(syntax(i, "expected variable x1 or x2")),
                }
                i += 2;
                if bytes.get(i).is_some_and(|b| b.is_ascii_digit()) {
                    return Err(syntax(i, "unknown variable"));
                }
            }
            _ => {
                let ch = text[i..].chars().next().unwrap();
                return Err(syntax(i, format!("unexpected character {ch:?}")));
            }
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn exponent(&mut self) -> Result<u32, ParseError> {
        let at = self.offset();
        match self.next() {
            Some(Token::Number(n)) => {
                u32::try_from(n).map_err(|_| syntax(at, "exponent too large"))
            }
            Some(Token::Minus) => Err(ParseError::NegativeExponent { position: at }),
            _ => Err(syntax(at, "expected a non-negative integer exponent")),
        }
    }

    /// One monomial; returns its coefficient and exponent.
    fn monomial(&mut self) -> Result<(Rational, LatticePoint), ParseError> {
        let mut coeff = Rational::one();
        let mut pt = LatticePoint::new(0, 0);
        let mut factors = 0;
        loop {
            let at = self.offset();
            match self.peek() {
                Some(Token::Number(_)) => {
                    let Some(Token::Number(n)) = self.next() else {
                        unreachable!()
                    };
                    let mut value = Rational::from_integer(n);
                    if self.peek() == Some(&Token::Slash) {
                        self.next();
                        let dat = self.offset();
                        match self.next() {
                            Some(Token::Number(d)) if !d.is_zero() => {
                                value /= Rational::from_integer(d);
                            }
                            Some(Token::Number(_)) => return Err(syntax(dat, "zero denominator")),
                            _ => return Err(syntax(dat, "expected a denominator")),
                        }
                    }
                    if self.peek() == Some(&Token::Caret) {
                        return Err(syntax(
                            self.offset(),
                            "powers of constants are not supported",
                        ));
                    }
                    coeff *= value;
                }
                Some(Token::Var(_)) => {
                    let Some(Token::Var(v)) = self.next() else {
                        unreachable!()
                    };
                    let e = if self.peek() == Some(&Token::Caret) {
                        self.next();
                        self.exponent()?
                    } else {
                        1
                    };
                    let slot = if v == 1 { &mut pt.t1 } else { &mut pt.t2 };
                    *slot = slot
                        .checked_add(e)
                        .ok_or_else(|| syntax(at, "exponent too large"))?;
                }
                _ if factors == 0 => return Err(syntax(at, "expected a monomial")),
                _ => return Err(syntax(at, "expected a factor after '*'")),
            }
            factors += 1;
            match self.peek() {
                Some(Token::Star) => {
                    self.next();
                }
                Some(Token::Number(_)) | Some(Token::Var(_)) => {}
                _ => return Ok((coeff, pt)),
            }
        }
    }

    fn polynomial(&mut self) -> Result<Polynomial, ParseError> {
        let mut p = Polynomial::zero();
        let mut first = true;
        loop {
            let mut negative = false;
            match self.peek() {
                Some(Token::Plus) => {
                    self.next();
                }
                Some(Token::Minus) => {
                    self.next();
                    negative = true;
                }
                None if first => return Err(syntax(self.end, "empty expression")),
                _ if first => {}
                None => return Ok(p),
                Some(_) => return Err(syntax(self.offset(), "expected '+' or '-'")),
            }
            let (c, pt) = self.monomial()?;
            p.add_term(pt, if negative { -c } else { c });
            first = false;
            if self.peek().is_none() {
                return Ok(p);
            }
        }
    }
}

pub fn parse_polynomial(text: &str) -> Result<Polynomial, ParseError> {
    let tokens = tokenize(text)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        end: text.len(),
    };
    parser.polynomial()
}

impl std::str::FromStr for Polynomial {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_polynomial(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qi};

    fn support(s: &str) -> Vec<(u32, u32)> {
        parse_polynomial(s)
            .unwrap()
            .support()
            .iter()
            .map(|p| (p.t1, p.t2))
            .collect()
    }

    #[test]
    fn corpus_supports() {
        assert_eq!(
            support("x2^2 - 2 x1^2 x2 + x1^4 + x1^5"),
            vec![(0, 2), (2, 1), (4, 0), (5, 0)]
        );
        assert_eq!(
            support("x1 x2^2 - 2 x1^3 x2 + x1^5 + x1^6"),
            vec![(1, 2), (3, 1), (5, 0), (6, 0)]
        );
        assert!(parse_polynomial("0").unwrap().is_zero());
    }

    #[test]
    fn coefficients_and_products() {
        let p = parse_polynomial("-3/4*x1*x2 + 2 x1 x1 - x2^0").unwrap();
        assert_eq!(p.coeff(1, 1), q(-3, 4));
        assert_eq!(p.coeff(2, 0), qi(2));
        assert_eq!(p.coeff(0, 0), qi(-1));
        assert!(parse_polynomial("x1 - x1").unwrap().is_zero());
        assert_eq!(parse_polynomial("2 3 x1").unwrap().coeff(1, 0), qi(6));
    }

    #[test]
    fn errors_report_positions() {
        assert_eq!(
            parse_polynomial("x1^-2"),
            Err(ParseError::NegativeExponent { position: 3 })
        );
        assert_eq!(parse_polynomial("x1 + y").unwrap_err().position(), 5);
        assert_eq!(parse_polynomial("x1 +").unwrap_err().position(), 4);
        assert_eq!(parse_polynomial("x3").unwrap_err().position(), 0);
        assert!(parse_polynomial("").is_err());
        assert!(parse_polynomial("1/0 x1").is_err());
        assert!(parse_polynomial("x1 * + x2").is_err());
        assert!(parse_polynomial("2^3").is_err());
    }
}
