//! Recursive-descent parser for polynomial expressions.
//!
//! Grammar (ASCII only, whitespace ignored):
//!
//! ```text
//! expr    := ['+'|'-'] product (('+'|'-') product)*
//! product := power (('*' | '/' | <implicit>) power)*
//! power   := atom ['^' integer]
//! atom    := integer | identifier | '(' expr ')' | '-' atom
//! ```
//!
//! Division is only allowed by a nonzero constant, so `2/9 y^3` and `y^2/2`
//! parse as expected. An identifier that is not a declared variable is split
//! into declared variable names when possible, so `yz` reads as `y*z`.

use num_bigint::BigInt;

use super::multipoly::{MultiPoly, Vars};
use super::Rational;
use crate::{Error, Result};

pub fn parse_poly(text: &str, vars: &Vars) -> Result<MultiPoly> {
    let tokens = tokenize(text)?;
    let mut p = Parser { tokens, pos: 0, vars, len: text.len() };
    let out = p.expr()?;
    if let Some(t) = p.peek() {
        return Err(Error::Syntax { offset: t.offset, message: format!("unexpected {:?}", t.kind) });
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
enum Kind {
    Int(BigInt),
    Ident(String),
    Op(char),
}

#[derive(Debug, Clone)]
struct Token {
    kind: Kind,
    offset: usize,
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        if !b.is_ascii() {
            return Err(Error::Syntax { offset: i, message: "non-ASCII character".into() });
        }
        match b {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = text[start..i].parse().expect("digits");
                out.push(Token { kind: Kind::Int(n), offset: start });
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push(Token { kind: Kind::Ident(text[start..i].to_string()), offset: start });
            }
            b'+' | b'-' | b'*' | b'/' | b'^' | b'(' | b')' => {
                out.push(Token { kind: Kind::Op(b as char), offset: i });
                i += 1;
            }
            _ => {
                return Err(Error::Syntax {
                    offset: i,
                    message: format!("unexpected character '{}'", b as char),
                })
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    vars: &'a Vars,
    len: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn offset(&self) -> usize {
        self.peek().map_or(self.len, |t| t.offset)
    }

    fn eat_op(&mut self, c: char) -> bool {
        if matches!(self.peek(), Some(Token { kind: Kind::Op(o), .. }) if *o == c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        let negate = if self.eat_op('-') {
            true
        } else {
            self.eat_op('+');
            false
        };
        let mut acc = self.product()?;
        if negate {
            acc = -acc;
        }
        loop {
            if self.eat_op('+') {
                acc += &self.product()?;
            } else if self.eat_op('-') {
                acc -= &self.product()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn starts_implicit_factor(&self) -> bool {
        matches!(
            self.peek(),
            Some(Token { kind: Kind::Ident(_), .. }) | Some(Token { kind: Kind::Op('('), .. })
        )
    }

    fn product(&mut self) -> Result<MultiPoly> {
        let mut acc = self.power()?;
        loop {
            if self.eat_op('*') {
                acc = &acc * &self.power()?;
            } else if self.peek().map_or(false, |t| t.kind == Kind::Op('/')) {
                let at = self.offset();
                self.pos += 1;
                let d = self.power()?;
                if !d.is_constant() || d.is_zero() {
                    return Err(Error::Syntax {
                        offset: at,
                        message: "division is only allowed by a nonzero constant".into(),
                    });
                }
                acc = acc.scale(&(Rational::from_integer(1.into()) / d.constant_term()));
            } else if self.starts_implicit_factor() {
                acc = &acc * &self.power()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<MultiPoly> {
        let base = self.atom()?;
        if self.eat_op('^') {
            let at = self.offset();
            match self.peek().cloned() {
                Some(Token { kind: Kind::Int(n), .. }) => {
                    self.pos += 1;
                    let k: u32 = n.try_into().map_err(|_| Error::Syntax {
                        offset: at,
                        message: "exponent too large".into(),
                    })?;
                    Ok(base.pow(k))
                }
                _ => Err(Error::Syntax {
                    offset: at,
                    message: "expected a non-negative integer exponent".into(),
                }),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<MultiPoly> {
        let at = self.offset();
        let tok = match self.peek().cloned() {
            Some(t) => t,
            None => return Err(Error::Syntax { offset: at, message: "unexpected end of input".into() }),
        };
        self.pos += 1;
        match tok.kind {
            Kind::Int(n) => Ok(MultiPoly::constant(self.vars, Rational::from_integer(n))),
            Kind::Ident(name) => self.identifier(&name, tok.offset),
            Kind::Op('(') => {
                let inner = self.expr()?;
                if !self.eat_op(')') {
                    return Err(Error::Syntax { offset: self.offset(), message: "expected ')'".into() });
                }
                Ok(inner)
            }
            Kind::Op('-') => Ok(-self.atom()?),
            Kind::Op(c) => Err(Error::Syntax { offset: tok.offset, message: format!("unexpected '{c}'") }),
        }
    }

    fn identifier(&self, name: &str, offset: usize) -> Result<MultiPoly> {
        let parts = split_identifier(name, self.vars).ok_or_else(|| Error::UnknownVariable {
            name: name.to_string(),
            offset,
        })?;
        let mut acc = MultiPoly::one(self.vars);
        for i in parts {
            acc = &acc * &MultiPoly::var(self.vars, i);
        }
        Ok(acc)
    }
}

/// Segments `name` into declared variables, preferring longer names first.
fn split_identifier(name: &str, vars: &Vars) -> Option<Vec<usize>> {
    if let Some(i) = vars.iter().position(|v| v == name) {
        return Some(vec![i]);
    }
    let mut order: Vec<usize> = (0..vars.len()).filter(|&i| !vars[i].is_empty()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(vars[i].len()));
    fn go(rest: &str, vars: &Vars, order: &[usize], acc: &mut Vec<usize>) -> bool {
        if rest.is_empty() {
            return true;
        }
        for &i in order {
            if let Some(tail) = rest.strip_prefix(vars[i].as_str()) {
                acc.push(i);
                if go(tail, vars, order, acc) {
                    return true;
                }
                acc.pop();
            }
        }
        false
    }
    let mut acc = Vec::new();
    if go(name, vars, &order, &mut acc) && !acc.is_empty() {
        Some(acc)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, vars};

    #[test]
    fn reads_single_monomial() {
        let v = vars(&["x", "y", "z"]);
        let p = parse_poly("y*z", &v).unwrap();
        assert_eq!(p, MultiPoly::monomial(&v, vec![0, 1, 1], rat(1, 1)));
    }

    #[test]
    fn implicit_multiplication_and_rational_literals() {
        let v = vars(&["x", "z"]);
        let p = parse_poly("2x^2 - x - z", &v).unwrap();
        let expected = MultiPoly::from_terms(
            &v,
            [(vec![2, 0], rat(2, 1)), (vec![1, 0], rat(-1, 1)), (vec![0, 1], rat(-1, 1))],
        );
        assert_eq!(p, expected);
        let y = vars(&["y"]);
        assert_eq!(
            parse_poly("2/9 y^3", &y).unwrap(),
            MultiPoly::monomial(&y, vec![3], rat(2, 9))
        );
        assert_eq!(parse_poly("y^2/2", &y).unwrap(), MultiPoly::monomial(&y, vec![2], rat(1, 2)));
        assert_eq!(parse_poly("-(y - 1)^2", &y).unwrap(), parse_poly("-y^2 + 2y - 1", &y).unwrap());
    }

    #[test]
    fn splits_juxtaposed_variables() {
        let v = vars(&["X", "Y", "Z", "T"]);
        let p = parse_poly("YZT - 3XYZ", &v).unwrap();
        assert_eq!(p, parse_poly("Y*Z*T - 3*X*Y*Z", &v).unwrap());
        let s = vars(&["s1", "s2", "s3"]);
        assert_eq!(parse_poly("s1s2", &s).unwrap(), parse_poly("s1*s2", &s).unwrap());
    }

    #[test]
    fn unknown_variable_is_reported() {
        let v = vars(&["x", "y"]);
        match parse_poly("x + w", &v) {
            Err(Error::UnknownVariable { name, offset }) => {
                assert_eq!(name, "w");
                assert_eq!(offset, 4);
            }
            other => panic!("expected unknown variable, got {other:?}"),
        }
    }

    #[test]
    fn syntax_errors_carry_offsets() {
        let v = vars(&["x"]);
        assert!(matches!(parse_poly("x +", &v), Err(Error::Syntax { offset: 3, .. })));
        assert!(matches!(parse_poly("x^-1", &v), Err(Error::Syntax { offset: 2, .. })));
        assert!(matches!(parse_poly("x / x", &v), Err(Error::Syntax { offset: 2, .. })));
        assert!(matches!(parse_poly("(x", &v), Err(Error::Syntax { offset: 2, .. })));
        assert!(matches!(parse_poly("x²", &v), Err(Error::Syntax { offset: 1, .. })));
    }
}
