//! Reader for the text form of polynomials and rational functions.
//!
//! Grammar (whitespace ignored):
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := atom ['^' ['-'] int]
//! atom   := int | 't_' label | 't' | 's' | '(' expr ')'
//! ```
//! A leading `-` inside a factor position (e.g. `2*-t_1`) is also accepted.

use num_bigint::BigInt;

use super::{Label, LaurentPoly, PolyError, RationalFn};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, PolyError> {
        Err(PolyError::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<RationalFn, PolyError> {
        let mut acc = if self.eat(b'-') {
            self.term()?.neg()
        } else {
            self.term()?
        };
        loop {
            if self.eat(b'+') {
                acc = acc.add(&self.term()?);
            } else if self.eat(b'-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RationalFn, PolyError> {
        let mut acc = self.factor()?;
        loop {
            if self.eat(b'*') {
                acc = acc.mul(&self.factor()?);
            } else if self.eat(b'/') {
                let at = self.pos;
                let d = self.factor()?;
                acc = acc.div(&d).map_err(|_| PolyError::Parse {
                    pos: at,
                    msg: "division by zero".into(),
                })?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<RationalFn, PolyError> {
        if self.eat(b'-') {
            return Ok(self.factor()?.neg());
        }
        let base = self.atom()?;
        if self.eat(b'^') {
            let paren = self.eat(b'(');
            let neg = self.eat(b'-');
            let at = self.pos;
            let n = self.int()?;
            if paren && !self.eat(b')') {
                return self.err("expected ')'");
            }
            let k: i64 = n.try_into().map_err(|_| PolyError::Parse {
                pos: at,
                msg: "exponent too large".into(),
            })?;
            let k = if neg { -k } else { k };
            return base.pow(k).map_err(|_| PolyError::Parse {
                pos: at,
                msg: "zero raised to a negative power".into(),
            });
        }
        Ok(base)
    }

    fn int(&mut self) -> Result<BigInt, PolyError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected integer");
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digits parse"))
    }

    fn atom(&mut self) -> Result<RationalFn, PolyError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return self.err("expected ')'");
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.int()?;
                Ok(RationalFn::from_poly(LaurentPoly::constant(n.into())))
            }
            Some(b't') | Some(b's') => {
                let start = self.pos;
                self.pos += 1;
                let name = if self.src[start] == b't' && self.src.get(self.pos) == Some(&b'_') {
                    self.pos += 1;
                    let ls = self.pos;
                    while self.pos < self.src.len()
                        && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                    {
                        self.pos += 1;
                    }
                    std::str::from_utf8(&self.src[ls..self.pos]).expect("ascii")
                } else {
                    std::str::from_utf8(&self.src[start..start + 1]).expect("ascii")
                };
                if self
                    .src
                    .get(self.pos)
                    .map(|c| c.is_ascii_alphanumeric())
                    .unwrap_or(false)
                {
                    return self.err("unknown identifier");
                }
                match Label::new(name) {
                    Ok(l) => Ok(RationalFn::var(l)),
                    Err(_) => {
                        self.pos = start;
                        self.err("bad variable name")
                    }
                }
            }
            Some(_) => self.err("unexpected character"),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parse a rational function, e.g. `"(1 - t_1)/(t_2)"`.
pub fn parse_rational(s: &str) -> Result<RationalFn, PolyError> {
    let mut p = Parser {
        src: s.as_bytes(),
        pos: 0,
    };
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(e)
}

/// Parse an expression that must evaluate to a Laurent polynomial.
pub fn parse_poly(s: &str) -> Result<LaurentPoly, PolyError> {
    let f = parse_rational(s)?;
    match f.as_laurent() {
        Some(p) => Ok(p.clone()),
        None => Err(PolyError::Parse {
            pos: 0,
            msg: "not a Laurent polynomial".into(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_rendering() {
        for s in [
            "1 - t_1 + t_1^2",
            "(1 - t_1)/(t_2)",
            "-1/2*t_1^-1*t_2 + 3",
            "t^-2 - 5*t^-1 + 9 - 5*t + t^2",
            "0",
        ] {
            let f = parse_rational(s).unwrap();
            assert_eq!(parse_rational(&f.to_string()).unwrap(), f, "{s}");
        }
        assert_eq!(
            parse_rational("(1 - t_1)/(t_2)").unwrap().to_string(),
            "t_2^-1 - t_1*t_2^-1"
        );
        assert_eq!(parse_rational("(1 - t_1)/(1 + t_2)").unwrap().to_string(), "(1 - t_1)/(1 + t_2)");
    }

    #[test]
    fn errors_carry_position() {
        match parse_rational("1 + * t_1") {
            Err(PolyError::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        assert!(parse_rational("1/(t_1 - t_1)").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_poly("1/(1 - t)").is_err());
    }

    #[test]
    fn exponent_forms() {
        assert_eq!(
            parse_rational("t_a^(-2)").unwrap(),
            parse_rational("1/(t_a*t_a)").unwrap()
        );
    }
}
