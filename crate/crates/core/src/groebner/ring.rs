use std::sync::{Arc, RwLock};

use rustc_hash::FxHashMap;

use crate::error::{AlgError, Result};
use crate::exactalg::{monomials_of_degree, parse_poly, Field, Monomial, Poly, MAX_VARS};

use super::buchberger::{buchberger, GroebnerBasis};
use super::order::{from_terms, to_terms, ModMon, MonomialOrder};

/// Default largest degree any Gröbner computation may reach.
pub const DEFAULT_DEGREE_CAP: i32 = 200;

/// Standard monomials of one graded piece, with their positions.
#[derive(Debug)]
pub struct Piece {
    pub monos: Vec<Monomial>,
    pub index: FxHashMap<Monomial, usize>,
}

impl Piece {
    fn new(monos: Vec<Monomial>) -> Self {
        let index = monos.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        Piece { monos, index }
    }

    pub fn len(&self) -> usize {
        self.monos.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monos.is_empty()
    }
}

/// `S/I` for a weighted polynomial ring `S` and a homogeneous ideal `I`,
/// with a complete Gröbner basis of `I` and cached graded pieces.
pub struct GradedRing<F: Field> {
    field: F,
    names: Vec<String>,
    weights: Vec<i32>,
    relations: Vec<Poly<F>>,
    gb: GroebnerBasis<F>,
    cap: i32,
    pieces: RwLock<FxHashMap<i32, Arc<Piece>>>,
}

impl<F: Field> std::fmt::Debug for GradedRing<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let rels: Vec<String> = self
            .relations
            .iter()
            .map(|r| r.fmt_with(&self.names))
            .collect();
        write!(
            f,
            "{}[{}]/({})",
            self.field.descriptor(),
            self.names.join(","),
            rels.join(", ")
        )
    }
}

impl<F: Field> GradedRing<F> {
    pub fn new(
        field: F,
        names: Vec<String>,
        weights: Vec<i32>,
        relations: Vec<Poly<F>>,
        cap: i32,
    ) -> Result<Self> {
        if names.len() > MAX_VARS {
            return Err(AlgError::TooManyVariables(names.len()));
        }
        if names.len() != weights.len() {
            return Err(AlgError::InvalidRing(
                "one weight per variable is required".into(),
            ));
        }
        if let Some(w) = weights.iter().find(|&&w| w <= 0) {
            return Err(AlgError::InvalidRing(format!("nonpositive weight {w}")));
        }
        let relations: Vec<Poly<F>> = relations.into_iter().filter(|p| !p.is_zero()).collect();
        for r in &relations {
            if r.homogeneous_degree().is_none() {
                let d = r.lead().unwrap().0.weight();
                let bad = r.terms().iter().find(|(m, _)| m.weight() != d).unwrap();
                return Err(AlgError::Inhomogeneous {
                    term: bad.0.fmt_with(&names),
                    found: bad.0.weight(),
                    expected: d,
                });
            }
            if r.homogeneous_degree() == Some(0) {
                return Err(AlgError::InvalidRing(
                    "a nonzero constant relation makes the ring zero".into(),
                ));
            }
        }
        let ord = MonomialOrder::ideal();
        let gens: Vec<_> = relations
            .iter()
            .map(|p| to_terms(std::slice::from_ref(p), &ord))
            .collect();
        let gb = buchberger(&field, &weights, &gens, ord, cap)?;
        if !gb.is_complete() {
            return Err(AlgError::bound(cap, cap + 1));
        }
        Ok(GradedRing {
            field,
            names,
            weights,
            relations,
            gb,
            cap,
            pieces: RwLock::default(),
        })
    }

    /// The polynomial ring itself.
    pub fn polynomial(field: F, names: Vec<String>, weights: Vec<i32>) -> Result<Self> {
        GradedRing::new(field, names, weights, Vec::new(), DEFAULT_DEGREE_CAP)
    }

    /// Parses relations in the ring's variables.
    pub fn parse(field: F, names: &[&str], weights: &[i32], relations: &[&str]) -> Result<Self> {
        let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        let mut rels = Vec::new();
        for r in relations {
            let raw = parse_poly(r, &names)?;
            raw.check_homogeneous(weights, &names)?;
            rels.push(raw.to_poly(&field, weights)?);
        }
        GradedRing::new(field, names, weights.to_vec(), rels, DEFAULT_DEGREE_CAP)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weights(&self) -> &[i32] {
        &self.weights
    }

    pub fn nvars(&self) -> usize {
        self.weights.len()
    }

    pub fn relations(&self) -> &[Poly<F>] {
        &self.relations
    }

    pub fn ideal_gb(&self) -> &GroebnerBasis<F> {
        &self.gb
    }

    pub fn degree_cap(&self) -> i32 {
        self.cap
    }

    /// Gröbner basis elements of the defining ideal as polynomials.
    pub fn gb_polys(&self) -> Vec<Poly<F>> {
        self.gb
            .elements()
            .iter()
            .map(|e| from_terms(&self.field, e, 1).remove(0))
            .collect()
    }

    pub fn is_polynomial_ring(&self) -> bool {
        self.gb.elements().is_empty()
    }

    pub fn var(&self, i: usize) -> Poly<F> {
        Poly::term(
            &self.field,
            Monomial::var(i, self.weights[i]),
            self.field.one(),
        )
    }

    pub fn parse_element(&self, s: &str) -> Result<Poly<F>> {
        let p = parse_poly(s, &self.names)?.to_poly(&self.field, &self.weights)?;
        Ok(self.reduce(&p))
    }

    pub fn is_standard(&self, m: &Monomial) -> bool {
        !self.gb.is_reducible(&ModMon { comp: 0, mon: *m })
    }

    /// Normal form modulo the defining ideal.
    pub fn reduce(&self, p: &Poly<F>) -> Poly<F> {
        if self.gb.elements().is_empty() || p.is_zero() {
            return p.clone();
        }
        let ord = self.gb.order();
        let t = self.gb.reduce(to_terms(std::slice::from_ref(p), ord));
        from_terms(&self.field, &t, 1).remove(0)
    }

    pub fn mul(&self, a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
        self.reduce(&a.mul(b, &self.field))
    }

    /// Standard monomials of degree `d`, sorted decreasingly.
    pub fn piece(&self, d: i32) -> Arc<Piece> {
        if let Some(p) = self.pieces.read().unwrap().get(&d) {
            return p.clone();
        }
        let monos: Vec<Monomial> = monomials_of_degree(&self.weights, d)
            .into_iter()
            .filter(|m| self.is_standard(m))
            .collect();
        let p = Arc::new(Piece::new(monos));
        self.pieces.write().unwrap().entry(d).or_insert(p).clone()
    }

    pub fn dim(&self, d: i32) -> usize {
        self.piece(d).len()
    }

    pub fn hilbert_window(&self, lo: i32, hi: i32) -> Vec<(i32, usize)> {
        (lo..=hi).map(|d| (d, self.dim(d))).collect()
    }

    /// Coordinates of a homogeneous element of degree `d` in `piece(d)`.
    pub fn coords(&self, p: &Poly<F>) -> Vec<(usize, F::Elem)> {
        let p = self.reduce(p);
        let Some(d) = p.homogeneous_degree() else {
            return Vec::new();
        };
        let piece = self.piece(d);
        let mut v: Vec<(usize, F::Elem)> = p
            .terms()
            .iter()
            .map(|(m, c)| (piece.index[m], c.clone()))
            .collect();
        v.sort_by_key(|x| x.0);
        v
    }

    pub fn from_coords(&self, d: i32, v: &[(usize, F::Elem)]) -> Poly<F> {
        let piece = self.piece(d);
        Poly::from_terms(
            &self.field,
            v.iter().map(|(i, c)| (piece.monos[*i], c.clone())),
        )
    }
}
