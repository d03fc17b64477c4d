//! Surface syntax for polynomials.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' integer)?
//! atom   := integer ('/' integer)? | identifier | '(' expr ')'
//! ```
//!
//! Whitespace is insignificant. Identifiers must be one of the chart's
//! variable names.

use num_bigint::BigInt;
use num_traits::Zero;

use super::{Polynomial, Rational};
use crate::error::{Error, Result};

/// Parses `text` as a polynomial in the variables `names`.
pub fn parse_polynomial<S: AsRef<str>>(text: &str, names: &[S]) -> Result<Polynomial> {
    let mut parser = Parser {
        src: text.as_bytes(),
        pos: 0,
        names,
    };
    let p = parser.expr()?;
    parser.skip_ws();
    if parser.pos < parser.src.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(p)
}

struct Parser<'a, S> {
    src: &'a [u8],
    pos: usize,
    names: &'a [S],
}

impl<S: AsRef<str>> Parser<'_, S> {
    fn nvars(&self) -> usize {
        self.names.len()
    }

    fn error(&self, message: &str) -> Error {
        Error::Parse {
            offset: self.pos,
            message: message.to_string(),
        }
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

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == b'+' { acc + rhs } else { acc - rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.unary()?;
        while let Some(b'*') = self.peek() {
            self.pos += 1;
            let rhs = self.unary()?;
            acc = acc.try_mul(&rhs)?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if let Some(b'^') = self.peek() {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            let exp = self.integer()?;
            let exp: u32 = exp.try_into().map_err(|_| Error::Parse {
                offset: start,
                message: "exponent out of range".into(),
            })?;
            let degree = base.degree().saturating_mul(exp);
            let cap = super::degree_cap();
            if degree > cap {
                return Err(Error::DegreeCap { degree, cap });
            }
            return Ok(base.pow(exp));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("digit string"))
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                let mut value = Rational::from_integer(num);
                if let Some(b'/') = self.peek() {
                    self.pos += 1;
                    let den_at = self.pos;
                    let den = self.integer()?;
                    if den.is_zero() {
                        return Err(Error::Parse {
                            offset: den_at,
                            message: "zero denominator".into(),
                        });
                    }
                    value /= Rational::from_integer(den);
                }
                Ok(Polynomial::constant(self.nvars(), value))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let ident = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                match self.names.iter().position(|n| n.as_ref() == ident) {
                    Some(i) => Ok(Polynomial::var(self.nvars(), i)),
                    None => Err(Error::Parse {
                        offset: start,
                        message: format!("unknown variable '{ident}'"),
                    }),
                }
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::rational;

    const XY: [&str; 2] = ["x", "y"];

    #[test]
    fn grammar() {
        let p = parse_polynomial("x^2-1/3*y", &XY).unwrap();
        assert_eq!(p.display_with(&XY).to_string(), "x^2 - 1/3*y");
        let q = parse_polynomial(" ( x + y ) ^ 2 ", &XY).unwrap();
        assert_eq!(q.display_with(&XY).to_string(), "x^2 + 2*x*y + y^2");
        let r = parse_polynomial("-(-x)*-2", &XY).unwrap();
        assert_eq!(r.display_with(&XY).to_string(), "-2*x");
        assert_eq!(
            parse_polynomial("3/6", &XY).unwrap(),
            Polynomial::constant(2, rational(1, 2))
        );
        assert!(parse_polynomial("0", &XY).unwrap().is_zero());
    }

    #[test]
    fn errors_carry_offsets() {
        assert!(matches!(
            parse_polynomial("x + z", &XY),
            Err(Error::Parse { offset: 4, .. })
        ));
        assert!(matches!(
            parse_polynomial("x +", &XY),
            Err(Error::Parse { offset: 3, .. })
        ));
        assert!(matches!(
            parse_polynomial("1/0", &XY),
            Err(Error::Parse { offset: 2, .. })
        ));
        assert!(parse_polynomial("(x", &XY).is_err());
        assert!(parse_polynomial("x y", &XY).is_err());
        assert!(parse_polynomial("x/2", &XY).is_err());
        assert!(parse_polynomial("x^-1", &XY).is_err());
    }

    #[test]
    fn degree_cap_applies_to_powers() {
        assert!(matches!(
            parse_polynomial("x^100", &XY),
            Err(Error::DegreeCap { degree: 100, .. })
        ));
    }
}
