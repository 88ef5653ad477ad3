//! Recursive-descent parser for scalar literals.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' ['-' | '+'] integer)?
//! atom   := integer | 'i' | 's' | '(' expr ')'
//! ```
//!
//! Whitespace is insignificant. Rationals are written as integer quotients.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{GaussRat, Scalar, ScalarError};

pub fn parse_scalar(text: &str) -> Result<Scalar, ScalarError> {
    let tokens = lex(text)?;
    let mut p = Parser { tokens, pos: 0, end: text.len() };
    let v = p.expr()?;
    if let Some((pos, tok)) = p.tokens.get(p.pos) {
        return Err(syntax(*pos, format!("unexpected {tok:?}")));
    }
    Ok(v)
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    I,
    S,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn syntax(pos: usize, msg: impl Into<String>) -> ScalarError {
    ScalarError::Syntax { pos, msg: msg.into() }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ScalarError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = text[start..i].parse().expect("digits");
                out.push((start, Tok::Int(n)));
                continue;
            }
            b'i' => Tok::I,
            b's' => Tok::S,
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            _ => {
                let ch = text[i..].chars().next().unwrap();
                return Err(syntax(i, format!("unexpected character {ch:?}")));
            }
        };
        out.push((i, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.tokens.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Scalar, ScalarError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Scalar, ScalarError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    acc = &acc * &self.unary()?;
                }
                Some(Tok::Slash) => {
                    self.bump();
                    let d = self.unary()?;
                    acc = &acc * &d.inv()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Scalar, ScalarError> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                Ok(-self.unary()?)
            }
            Some(Tok::Plus) => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Scalar, ScalarError> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.bump();
        let negative = match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                true
            }
            Some(Tok::Plus) => {
                self.bump();
                false
            }
            _ => false,
        };
        let pos = self.here();
        let e = match self.bump() {
            Some(Tok::Int(n)) => i64::try_from(n).map_err(|_| syntax(pos, "exponent too large"))?,
            _ => return Err(syntax(pos, "expected integer exponent")),
        };
        base.pow(if negative { -e } else { e })
    }

    fn atom(&mut self) -> Result<Scalar, ScalarError> {
        let pos = self.here();
        match self.bump() {
            Some(Tok::Int(n)) => Ok(Scalar::constant(GaussRat::real(BigRational::from_integer(n)))),
            Some(Tok::I) => Ok(Scalar::i()),
            Some(Tok::S) => Ok(Scalar::s()),
            Some(Tok::LParen) => {
                let v = self.expr()?;
                let close = self.here();
                match self.bump() {
                    Some(Tok::RParen) => Ok(v),
                    _ => Err(syntax(close, "expected ')'")),
                }
            }
            Some(t) => Err(syntax(pos, format!("unexpected {t:?}"))),
            None => Err(syntax(pos, "unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_literal() {
        let x = parse_scalar("1/2 + 3*i").unwrap();
        let expected = GaussRat::new(BigRational::new(1.into(), 2.into()), BigRational::from_integer(3.into()));
        assert_eq!(x.as_constant(), Some(expected));
        assert!(x.denom().is_one());
    }

    #[test]
    fn q_is_s_squared() {
        assert_eq!(parse_scalar("s^2").unwrap(), Scalar::q());
        assert_eq!(parse_scalar(" s ^ -2 ").unwrap(), Scalar::q_pow(-1));
    }

    #[test]
    fn errors_carry_position() {
        assert_eq!(parse_scalar("1 + * 2"), Err(ScalarError::Syntax { pos: 4, msg: "unexpected Star".into() }));
        assert!(matches!(parse_scalar("(1 + s"), Err(ScalarError::Syntax { pos: 6, .. })));
        assert!(matches!(parse_scalar("2 x"), Err(ScalarError::Syntax { pos: 2, .. })));
        assert!(matches!(parse_scalar(""), Err(ScalarError::Syntax { pos: 0, .. })));
        assert_eq!(parse_scalar("1/(s - s)"), Err(ScalarError::DivisionByZero));
        assert_eq!(parse_scalar("0^-1"), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn unary_binds_looser_than_power() {
        assert_eq!(parse_scalar("-s^2").unwrap(), -Scalar::q());
        assert_eq!(parse_scalar("2*i/3*s").unwrap().to_string(), "2*i/3*s");
    }
}
