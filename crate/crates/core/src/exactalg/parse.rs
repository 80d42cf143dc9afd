//! ASCII polynomial grammar.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (['*'] factor)*
//! factor := atom ['^' integer]
//! atom   := integer ['/' integer] | identifier | '(' expr ')'
//! ```
//!
//! Identifiers may contain letters, digits, `_` and a trailing `'`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::field::Field;
use super::monomial::Monomial;
use super::poly::Poly;
use crate::error::{AlgError, Result};

/// A polynomial with rational coefficients, independent of any field.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RawPoly {
    pub terms: BTreeMap<Vec<u32>, BigRational>,
}

impl RawPoly {
    fn constant(nvars: usize, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![0; nvars], c);
        }
        RawPoly { terms }
    }

    fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(e, BigRational::one());
        RawPoly { terms }
    }

    fn add(&self, other: &RawPoly) -> RawPoly {
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            let v = terms.entry(e.clone()).or_insert_with(BigRational::zero);
            *v += c;
            if v.is_zero() {
                terms.remove(e);
            }
        }
        RawPoly { terms }
    }

    fn neg(&self) -> RawPoly {
        RawPoly {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    fn mul(&self, other: &RawPoly) -> RawPoly {
        let mut out = RawPoly::default();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                let v = out.terms.entry(e.clone()).or_insert_with(BigRational::zero);
                *v += c1 * c2;
                if v.is_zero() {
                    out.terms.remove(&e);
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.denom().is_one())
    }

    pub fn to_poly<F: Field>(&self, field: &F, weights: &[i32]) -> Result<Poly<F>> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (e, c) in &self.terms {
            terms.push((Monomial::new(e, weights), field.from_rational(c)?));
        }
        Ok(Poly::from_terms(field, terms))
    }

    /// Checks homogeneity and reports the first offending term.
    pub fn check_homogeneous(&self, weights: &[i32], names: &[String]) -> Result<Option<i32>> {
        let mut expected = None;
        for e in self.terms.keys().rev() {
            let d: i32 = e.iter().zip(weights).map(|(&a, &w)| a as i32 * w).sum();
            match expected {
                None => expected = Some(d),
                Some(x) if x != d => {
                    let term = Monomial::new(e, weights).fmt_with(names);
                    return Err(AlgError::Inhomogeneous {
                        term,
                        found: d,
                        expected: x,
                    });
                }
                _ => {}
            }
        }
        Ok(expected)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    names: &'a [String],
}

impl<'a> Parser<'a> {
    fn err(&self, msg: impl Into<String>) -> AlgError {
        AlgError::Parse {
            line: 1,
            col: self.pos + 1,
            msg: msg.into(),
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

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }

    fn expr(&mut self) -> Result<RawPoly> {
        let n = self.names.len();
        let mut acc = RawPoly::default();
        let mut sign = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -1
            }
            Some(b'+') => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        loop {
            let t = self.term()?;
            acc = if sign < 0 {
                acc.add(&t.neg())
            } else {
                acc.add(&t)
            };
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    sign = 1;
                }
                Some(b'-') => {
                    self.pos += 1;
                    sign = -1;
                }
                _ => break,
            }
        }
        let _ = n;
        Ok(acc)
    }

    fn term(&mut self) -> Result<RawPoly> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = acc.mul(&f);
                }
                Some(c) if c.is_ascii_alphanumeric() || c == b'(' || c == b'_' => {
                    let f = self.factor()?;
                    acc = acc.mul(&f);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<RawPoly> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.integer()?;
            let e: u32 = e.try_into().map_err(|_| self.err("exponent too large"))?;
            let mut r = RawPoly::constant(self.names.len(), BigRational::one());
            for _ in 0..e {
                r = r.mul(&base);
            }
            return Ok(r);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RawPoly> {
        let n = self.names.len();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                let mut val = BigRational::from_integer(num);
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let den = self.integer()?;
                    if den.is_zero() {
                        return Err(self.err("zero denominator"));
                    }
                    val /= BigRational::from_integer(den);
                }
                Ok(RawPoly::constant(n, val))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                while self.pos < self.src.len() && self.src[self.pos] == b'\'' {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                match self.names.iter().position(|v| v == name) {
                    Some(i) => Ok(RawPoly::var(n, i)),
                    None => {
                        self.pos = start;
                        Err(self.err(format!("unknown variable '{name}'")))
                    }
                }
            }
            Some(c) => Err(self.err(format!("unexpected character '{}'", c as char))),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

/// Parses a polynomial in the given variables.
pub fn parse_poly(src: &str, names: &[String]) -> Result<RawPoly> {
    let mut p = Parser {
        src: src.as_bytes(),
        pos: 0,
        names,
    };
    let r = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::Rationals;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn parses_examples() {
        let n = names(&["x", "y", "z"]);
        let p = parse_poly("x^3 + y^3 + z^3", &n).unwrap();
        assert_eq!(p.terms.len(), 3);
        let n2 = names(&["a", "b", "c"]);
        let q = parse_poly("b^2 - a*c", &n2).unwrap();
        let poly = q.to_poly(&Rationals, &[1, 1, 1]).unwrap();
        assert_eq!(poly.fmt_with(&n2), "b^2 - a*c");
    }

    #[test]
    fn implicit_products_and_rationals() {
        let n = names(&["x", "y"]);
        let a = parse_poly("1/2 x y - 3(x - y)^2", &n).unwrap();
        let b = parse_poly("1/2*x*y - 3*x^2 + 6*x*y - 3*y^2", &n).unwrap();
        assert_eq!(a, b);
        assert!(!a.is_integral());
    }

    #[test]
    fn errors_carry_column() {
        let n = names(&["x"]);
        match parse_poly("x + w", &n) {
            Err(AlgError::Parse { col, .. }) => assert_eq!(col, 5),
            other => panic!("{other:?}"),
        }
        assert!(parse_poly("x +", &n).is_err());
        assert!(parse_poly("1/0", &n).is_err());
    }

    #[test]
    fn homogeneity_check_names_the_term() {
        let n = names(&["x", "y"]);
        let p = parse_poly("x^2 + y", &n).unwrap();
        match p.check_homogeneous(&[1, 1], &n) {
            Err(AlgError::Inhomogeneous { term, .. }) => assert_eq!(term, "y"),
            other => panic!("{other:?}"),
        }
        let w = parse_poly("x^2 + y", &n).unwrap();
        assert_eq!(w.check_homogeneous(&[1, 2], &n).unwrap(), Some(2));
    }
}
