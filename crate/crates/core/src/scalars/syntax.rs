//! Text syntax for scalars: `p/q` rationals, `z{n}^{k}` roots of unity,
//! combined with `+`, `-`, `*` and parentheses.

use num_bigint::BigInt;

use super::{CycScalar, Rational, ScalarError};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, message: impl Into<String>) -> ScalarError {
        ScalarError::Parse { position: self.pos, message: message.into() }
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

    fn digits(&mut self) -> Result<BigInt, ScalarError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(text.parse().expect("digit run parses"))
    }

    fn small(&mut self) -> Result<i64, ScalarError> {
        let at = self.pos;
        let v = self.digits()?;
        i64::try_from(v).map_err(|_| ScalarError::Parse { position: at, message: "integer too large".into() })
    }

    fn expr(&mut self) -> Result<CycScalar, ScalarError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<CycScalar, ScalarError> {
        let mut acc = self.unary()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<CycScalar, ScalarError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<CycScalar, ScalarError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(b'z') => {
                self.pos += 1;
                let n = self.small()?;
                if n < 1 || n > u32::MAX as i64 {
                    return Err(self.err("root of unity order must be positive"));
                }
                if self.peek() != Some(b'^') {
                    return Err(self.err("expected '^'"));
                }
                self.pos += 1;
                let neg = if self.peek() == Some(b'-') {
                    self.pos += 1;
                    true
                } else {
                    false
                };
                let k = self.small()?;
                Ok(CycScalar::root_of_unity(n as u32, if neg { -k } else { k }))
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.digits()?;
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let at = self.pos;
                    let den = self.digits()?;
                    if den == BigInt::from(0) {
                        return Err(ScalarError::Parse { position: at, message: "zero denominator".into() });
                    }
                    Ok(CycScalar::from_rational(Rational::new(num, den)))
                } else {
                    Ok(CycScalar::from_rational(Rational::from_integer(num)))
                }
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

/// Parses the scalar text syntax, e.g. `1/2 + 1/2*z3^1`.
pub fn parse_scalar(text: &str) -> Result<CycScalar, ScalarError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let v = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(v)
}

impl std::str::FromStr for CycScalar {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_scalar(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_mixed_expression() {
        let v = parse_scalar("1/2 + 1/2*z3^1").unwrap();
        let expected = &CycScalar::ratio(1, 2) + &(&CycScalar::ratio(1, 2) * &CycScalar::root_of_unity(3, 1));
        assert_eq!(v, expected);
    }

    #[test]
    fn parentheses_and_negation() {
        let v = parse_scalar("-(z4^1 - 1) * (z4^1 + 1)").unwrap();
        // -(i-1)(i+1) = -(i^2 - 1) = 2
        assert_eq!(v, CycScalar::from_int(2));
        assert_eq!(parse_scalar("z3^-1").unwrap(), CycScalar::root_of_unity(3, 2));
    }

    #[test]
    fn missing_exponent_reports_position() {
        match parse_scalar("z3^") {
            Err(ScalarError::Parse { position, .. }) => assert_eq!(position, 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_scalar("1/0"), Err(ScalarError::Parse { .. })));
        assert!(matches!(parse_scalar("1 2"), Err(ScalarError::Parse { .. })));
    }
}
