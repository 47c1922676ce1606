//! Text form of polynomials.
//!
//! Terms are written `coeff*w^a*x^b*y^c` in descending monomial order and
//! joined by ` + `. A coefficient with both a rational and a `r2` part is
//! parenthesized, e.g. `(1+3*r2)*x^2*y`. The parser accepts this output and
//! more generally any sum of products of integers, `r2` (or `√2`),
//! variables, powers and parenthesized subexpressions; juxtaposition means
//! multiplication, so `4√2z^3` parses.

use std::fmt;

use super::field::{Field, Gf25};
use super::poly::{Mono, Poly, VAR_NAMES};
use super::GfError;

pub(crate) fn write_poly<F: Field + fmt::Display>(f: &mut fmt::Formatter<'_>, p: &Poly<F>) -> fmt::Result {
    if p.is_zero() {
        return write!(f, "0");
    }
    for (i, (m, c)) in p.terms().iter().enumerate() {
        if i > 0 {
            write!(f, " + ")?;
        }
        let cs = c.to_string();
        let cs = if cs.contains('+') || cs.contains('/') { format!("({cs})") } else { cs };
        if *m == Mono::ONE {
            write!(f, "{cs}")?;
        } else if c.is_one() {
            write!(f, "{m}")?;
        } else {
            write!(f, "{cs}*{m}")?;
        }
    }
    Ok(())
}

/// Parses a polynomial over `GF(25)`.
pub fn parse_poly(s: &str) -> Result<Poly<Gf25>, GfError> {
    let mut p = Parser { chars: s.chars().filter(|c| !c.is_whitespace()).collect(), pos: 0, src: s };
    let out = p.expr()?;
    if p.pos != p.chars.len() {
        return Err(p.err("trailing input"));
    }
    Ok(out)
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    src: &'a str,
}

impl Parser<'_> {
    fn err(&self, what: &str) -> GfError {
        GfError::Parse(format!("{what} at offset {} in {:?}", self.pos, self.src))
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Poly<Gf25>, GfError> {
        let mut acc = Poly::zero();
        let mut sign = Gf25::ONE;
        if self.peek() == Some('-') {
            self.pos += 1;
            sign = -Gf25::ONE;
        } else if self.peek() == Some('+') {
            self.pos += 1;
        }
        loop {
            let t = self.term()?;
            acc = acc.add(&t.scale(&sign));
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    sign = Gf25::ONE;
                }
                Some('-') => {
                    self.pos += 1;
                    sign = -Gf25::ONE;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn starts_atom(c: char) -> bool {
        c.is_ascii_digit() || c == '(' || c == '√' || c.is_ascii_alphabetic()
    }

    fn term(&mut self) -> Result<Poly<Gf25>, GfError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = acc.mul(&f);
                }
                Some(c) if Self::starts_atom(c) => {
                    let f = self.factor()?;
                    acc = acc.mul(&f);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Poly<Gf25>, GfError> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let e = self.uint()?;
            let e = u32::try_from(e).map_err(|_| self.err("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn uint(&mut self) -> Result<u64, GfError> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| self.err("bad integer"))
    }

    fn atom(&mut self) -> Result<Poly<Gf25>, GfError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let n = self.uint()?;
                Ok(Poly::constant(Gf25::new((n % 5) as i64, 0)))
            }
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some('√') => {
                self.pos += 1;
                if self.peek() != Some('2') {
                    return Err(self.err("expected 2 after √"));
                }
                self.pos += 1;
                Ok(Poly::constant(Gf25::SQRT2))
            }
            Some('r') if self.chars.get(self.pos + 1) == Some(&'2') => {
                self.pos += 2;
                Ok(Poly::constant(Gf25::SQRT2))
            }
            Some(c) => {
                if let Some(v) = VAR_NAMES.iter().position(|n| n.starts_with(c)) {
                    self.pos += 1;
                    Ok(Poly::var(v))
                } else {
                    Err(self.err("unexpected character"))
                }
            }
            None => Err(self.err("unexpected end")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::poly::{W, X, Y, Z};

    #[test]
    fn roundtrip() {
        let p = parse_poly("(1+3*r2)*x^2*y + 4*w + 2 + r2*z").unwrap();
        let s = p.to_string();
        assert_eq!(parse_poly(&s).unwrap(), p);
        assert_eq!(s, "(1+3*r2)*x^2*y + 4*w + r2*z + 2");
    }

    #[test]
    fn implicit_products_and_radicals() {
        let p = parse_poly("y+4√2z+z").unwrap();
        let expect = Poly::var(Y).add(&Poly::var(Z).scale(&Gf25::new(1, 4)));
        assert_eq!(p, expect);
        let q = parse_poly("3√2z^3+2z^2y").unwrap();
        assert_eq!(q.coeff(Mono::wxyz(0, 0, 0, 3)), Gf25::new(0, 3));
        assert_eq!(q.coeff(Mono::wxyz(0, 0, 1, 2)), Gf25::new(2, 0));
    }

    #[test]
    fn signs_and_powers() {
        let p = parse_poly("w^2 - x^6 - y^6 - 1").unwrap();
        assert_eq!(p.coeff(Mono::wxyz(2, 0, 0, 0)), Gf25::ONE);
        assert_eq!(p.coeff(Mono::wxyz(0, 6, 0, 0)), Gf25::new(4, 0));
        assert_eq!(parse_poly("(x+y)^5").unwrap(), Poly::var(X).pow(5).add(&Poly::var(Y).pow(5)));
        assert_eq!(parse_poly("w").unwrap(), Poly::var(W));
        assert!(parse_poly("x+").is_err());
        assert!(parse_poly("q").is_err());
    }

    #[test]
    fn zero_prints_as_zero() {
        assert_eq!(Poly::<Gf25>::zero().to_string(), "0");
        assert!(parse_poly("0").unwrap().is_zero());
    }
}
