use std::fmt;

use rustc_hash::FxHashMap;

use super::field::Field;
use super::monomial::Monomial;
use crate::error::{AlgError, Result};

/// Sparse polynomial with terms sorted in decreasing degrevlex order and no
/// zero coefficients.
pub struct Poly<F: Field> {
    terms: Vec<(Monomial, F::Elem)>,
}

impl<F: Field> Clone for Poly<F> {
    fn clone(&self) -> Self {
        Poly {
            terms: self.terms.clone(),
        }
    }
}

impl<F: Field> PartialEq for Poly<F> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl<F: Field> Eq for Poly<F> {}

impl<F: Field> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_with(&[]))
    }
}

impl<F: Field> Default for Poly<F> {
    fn default() -> Self {
        Poly::zero()
    }
}

impl<F: Field> Poly<F> {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn constant(field: &F, c: F::Elem) -> Self {
        if field.is_zero(&c) {
            Poly::zero()
        } else {
            Poly {
                terms: vec![(Monomial::ONE, c)],
            }
        }
    }

    pub fn one(field: &F) -> Self {
        Poly::constant(field, field.one())
    }

    pub fn term(field: &F, m: Monomial, c: F::Elem) -> Self {
        if field.is_zero(&c) {
            Poly::zero()
        } else {
            Poly {
                terms: vec![(m, c)],
            }
        }
    }

    /// Collects arbitrary terms, combining duplicates and dropping zeros.
    pub fn from_terms(field: &F, terms: impl IntoIterator<Item = (Monomial, F::Elem)>) -> Self {
        let mut acc: FxHashMap<Monomial, F::Elem> = FxHashMap::default();
        for (m, c) in terms {
            match acc.get_mut(&m) {
                Some(v) => *v = field.add(v, &c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !field.is_zero(c)).collect();
        terms.sort_by_key(|t| std::cmp::Reverse(t.0));
        Poly { terms }
    }

    pub fn terms(&self) -> &[(Monomial, F::Elem)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, F::Elem)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&(Monomial, F::Elem)> {
        self.terms.first()
    }

    /// Common weighted degree of all terms, if there is one.
    pub fn homogeneous_degree(&self) -> Option<i32> {
        let d = self.terms.first()?.0.weight();
        self.terms.iter().all(|(m, _)| m.weight() == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&F::Elem> {
        self.terms.iter().find(|(t, _)| t == m).map(|(_, c)| c)
    }

    /// Constant term (coefficient of 1).
    pub fn constant_term(&self, field: &F) -> F::Elem {
        self.coefficient(&Monomial::ONE)
            .cloned()
            .unwrap_or_else(|| field.zero())
    }

    pub fn add(&self, other: &Self, field: &F) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push(b[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = field.add(&a[i].1, &b[j].1);
                    if !field.is_zero(&c) {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Poly { terms: out }
    }

    pub fn neg(&self, field: &F) -> Self {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, field.neg(c))).collect(),
        }
    }

    pub fn sub(&self, other: &Self, field: &F) -> Self {
        self.add(&other.neg(field), field)
    }

    pub fn scale(&self, c: &F::Elem, field: &F) -> Self {
        if field.is_zero(c) {
            return Poly::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (*m, field.mul(a, c)))
                .collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &F::Elem, field: &F) -> Self {
        if field.is_zero(c) {
            return Poly::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(t, a)| (t.mul(m), field.mul(a, c)))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self, field: &F) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut acc: FxHashMap<Monomial, F::Elem> = FxHashMap::default();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let m = m1.mul(m2);
                let c = field.mul(c1, c2);
                match acc.get_mut(&m) {
                    Some(v) => *v = field.add(v, &c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !field.is_zero(c)).collect();
        terms.sort_by_key(|t| std::cmp::Reverse(t.0));
        Poly { terms }
    }

    pub fn pow(&self, e: u32, field: &F) -> Self {
        let mut r = Poly::one(field);
        for _ in 0..e {
            r = r.mul(self, field);
        }
        r
    }

    /// Checked arithmetic entry point used where operands come from
    /// different rings.
    pub fn checked_add(&self, other: &Self, field: &F, nvars: (usize, usize)) -> Result<Self> {
        if nvars.0 != nvars.1 {
            return Err(AlgError::VariableCountMismatch {
                left: nvars.0,
                right: nvars.1,
            });
        }
        Ok(self.add(other, field))
    }

    pub fn checked_mul(&self, other: &Self, field: &F, nvars: (usize, usize)) -> Result<Self> {
        if nvars.0 != nvars.1 {
            return Err(AlgError::VariableCountMismatch {
                left: nvars.0,
                right: nvars.1,
            });
        }
        Ok(self.mul(other, field))
    }

    /// Substitutes `images[i]` for variable `i` (ring homomorphism).
    pub fn substitute(&self, images: &[Poly<F>], field: &F) -> Self {
        let mut result = Poly::zero();
        let mut powers: Vec<Vec<Poly<F>>> = images
            .iter()
            .map(|p| vec![Poly::one(field), p.clone()])
            .collect();
        for (m, c) in &self.terms {
            let mut t = Poly::constant(field, c.clone());
            for (i, pw) in powers.iter_mut().enumerate() {
                let e = m.exp(i) as usize;
                if e == 0 {
                    continue;
                }
                while pw.len() <= e {
                    let next = pw.last().unwrap().mul(&images[i], field);
                    pw.push(next);
                }
                t = t.mul(&pw[e], field);
            }
            result = result.add(&t, field);
        }
        result
    }

    /// Keeps the terms accepted by `keep`.
    pub fn filter_terms(&self, mut keep: impl FnMut(&Monomial) -> bool) -> Self {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .cloned()
                .collect(),
        }
    }

    pub fn map_field<G: Field>(&self, target: &G, f: impl Fn(&F::Elem) -> G::Elem) -> Poly<G> {
        Poly::from_terms(target, self.terms.iter().map(|(m, c)| (*m, f(c))))
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let cs = c.to_string();
            let (neg, mag) = match cs.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, cs),
            };
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if m.is_one() {
                s.push_str(&mag);
            } else {
                if mag != "1" {
                    s.push_str(&mag);
                    s.push('*');
                }
                s.push_str(&m.fmt_with(names));
            }
        }
        s
    }
}
