use std::sync::{Arc, OnceLock};

use crate::error::Result;
use crate::exactalg::{Field, Monomial, Poly};
use crate::groebner::{GradedRing, Presentation};

use super::canonical::{canonical_module, CanonicalModule};

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum Gorenstein {
    Yes,
    No,
    Unknown,
}

/// A positively graded algebra `S/I` with its Krull dimension.
pub struct PresentedAlgebra<F: Field> {
    ring: Arc<GradedRing<F>>,
    dimension: usize,
    canonical: OnceLock<Result<Arc<CanonicalModule<F>>>>,
}

impl<F: Field> std::fmt::Debug for PresentedAlgebra<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?} (dim {})", self.ring, self.dimension)
    }
}

/// Krull dimension of `S/I` read off the lead-term ideal: the largest set
/// of variables containing the support of no lead monomial.
pub fn krull_dimension<F: Field>(ring: &GradedRing<F>) -> usize {
    let n = ring.nvars();
    let supports: Vec<u32> = ring
        .ideal_gb()
        .lead_monomials()
        .map(|mm| {
            (0..n)
                .filter(|&i| mm.mon.exp(i) > 0)
                .fold(0u32, |s, i| s | 1 << i)
        })
        .collect();
    let mut best = 0;
    for set in 0u32..(1 << n) {
        let size = set.count_ones() as usize;
        if size > best && supports.iter().all(|&s| s & !set != 0) {
            best = size;
        }
    }
    best
}

impl<F: Field> PresentedAlgebra<F> {
    pub fn new(ring: GradedRing<F>) -> Self {
        PresentedAlgebra::from_arc(Arc::new(ring))
    }

    pub fn from_arc(ring: Arc<GradedRing<F>>) -> Self {
        let dimension = krull_dimension(&ring);
        PresentedAlgebra {
            ring,
            dimension,
            canonical: OnceLock::new(),
        }
    }

    pub fn parse(field: F, names: &[&str], weights: &[i32], relations: &[&str]) -> Result<Self> {
        Ok(PresentedAlgebra::new(GradedRing::parse(
            field, names, weights, relations,
        )?))
    }

    pub fn ring(&self) -> &Arc<GradedRing<F>> {
        &self.ring
    }

    pub fn field(&self) -> &F {
        self.ring.field()
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    pub fn weights(&self) -> &[i32] {
        self.ring.weights()
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn codimension(&self) -> usize {
        self.nvars() - self.dimension
    }

    pub fn is_artinian(&self) -> bool {
        self.dimension == 0
    }

    /// Sum of the variable weights.
    pub fn weight_sum(&self) -> i32 {
        self.weights().iter().sum()
    }

    /// Largest nonzero degree when `R` is artinian.
    pub fn top_degree(&self) -> Option<i32> {
        if !self.is_artinian() {
            return None;
        }
        let mut d = 0;
        let mut top = 0;
        let mut empty_run = 0;
        let maxw = *self.weights().iter().max().unwrap_or(&1);
        while empty_run < maxw {
            if self.ring.dim(d) > 0 {
                top = d;
                empty_run = 0;
            } else {
                empty_run += 1;
            }
            d += 1;
        }
        Some(top)
    }

    /// The ring as a module over itself, `R(shift)`.
    pub fn free_module(&self, shift: i32) -> Presentation<F> {
        Presentation::ring_module(self.ring.clone(), shift)
    }

    /// `K = R/R_+`.
    pub fn residue_field(&self) -> Presentation<F> {
        let vars: Vec<Poly<F>> = (0..self.nvars()).map(|i| self.ring.var(i)).collect();
        Presentation::cyclic(self.ring.clone(), &vars).expect("homogeneous")
    }

    pub fn canonical(&self) -> Result<Arc<CanonicalModule<F>>> {
        self.canonical
            .get_or_init(|| canonical_module(self).map(Arc::new))
            .clone()
    }

    /// Gorenstein evidence: `ω ≅ R(a)`.
    pub fn gorenstein(&self) -> Gorenstein {
        match self.canonical() {
            Ok(w) => match w.a_invariant {
                Some(_) => Gorenstein::Yes,
                None => Gorenstein::No,
            },
            Err(_) => Gorenstein::Unknown,
        }
    }

    pub fn monomial(&self, exps: &[u32]) -> Monomial {
        Monomial::new(exps, self.weights())
    }
}
