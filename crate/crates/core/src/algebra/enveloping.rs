use std::sync::Arc;

use crate::error::{AlgError, Result};
use crate::exactalg::{Field, Monomial, Poly, MAX_VARS};
use crate::groebner::{select_minimal, GradedRing, Presentation};

use super::presented::PresentedAlgebra;

/// `P = R ⊗_K R` with the diagonal ideal.
///
/// `ring` uses the variables `x_i, x_i'`. The isomorphic presentation
/// `ring_xu` uses `x_i, u_i` with `x_i' = x_i + u_i`, in which the diagonal is
/// the monomial ideal `(u_1, ..., u_v)`.
pub struct EnvelopingAlgebra<F: Field> {
    nvars: usize,
    pub ring: Arc<GradedRing<F>>,
    pub ring_xu: Arc<GradedRing<F>>,
    pub diagonal: Vec<Poly<F>>,
}

fn var<F: Field>(f: &F, i: usize, w: i32) -> Poly<F> {
    Poly::term(f, Monomial::var(i, w), f.one())
}

pub fn enveloping<F: Field>(r: &PresentedAlgebra<F>) -> Result<EnvelopingAlgebra<F>> {
    let base = r.ring();
    let v = base.nvars();
    if 2 * v > MAX_VARS {
        return Err(AlgError::TooManyVariables(2 * v));
    }
    let f = base.field();
    let mut weights = base.weights().to_vec();
    weights.extend_from_slice(base.weights());
    let x: Vec<Poly<F>> = (0..v).map(|i| var(f, i, weights[i])).collect();
    let second: Vec<Poly<F>> = (0..v).map(|i| var(f, v + i, weights[i])).collect();
    let to_second: Vec<Poly<F>> = second.clone();
    let shifted: Vec<Poly<F>> = (0..v).map(|i| x[i].add(&second[i], f)).collect();

    let mut names = base.names().to_vec();
    names.extend(base.names().iter().map(|n| format!("{n}'")));
    let mut rels = base.relations().to_vec();
    rels.extend(base.relations().iter().map(|g| g.substitute(&to_second, f)));
    let ring = Arc::new(GradedRing::new(
        f.clone(),
        names,
        weights.clone(),
        rels,
        base.degree_cap(),
    )?);

    let mut names_xu = base.names().to_vec();
    names_xu.extend(base.names().iter().map(|n| format!("u_{n}")));
    let mut rels = base.relations().to_vec();
    rels.extend(base.relations().iter().map(|g| g.substitute(&shifted, f)));
    let ring_xu = Arc::new(GradedRing::new(
        f.clone(),
        names_xu,
        weights,
        rels,
        base.degree_cap(),
    )?);

    let diagonal = (0..v).map(|i| x[i].sub(&second[i], f)).collect();
    Ok(EnvelopingAlgebra {
        nvars: v,
        ring,
        ring_xu,
        diagonal,
    })
}

impl<F: Field> EnvelopingAlgebra<F> {
    pub fn base_nvars(&self) -> usize {
        self.nvars
    }

    fn images(&self, g: impl Fn(usize) -> Poly<F>) -> Vec<Poly<F>> {
        (0..2 * self.nvars).map(g).collect()
    }

    fn v(&self, i: usize) -> Poly<F> {
        let w = self.ring.weights()[i];
        var(self.ring.field(), i, w)
    }

    /// The multiplication map `P -> R`, `x_i, x_i' ↦ x_i`.
    pub fn multiplication(&self, base: &GradedRing<F>, p: &Poly<F>) -> Poly<F> {
        let n = self.nvars;
        let img = self.images(|i| self.v(i % n));
        base.reduce(&p.substitute(&img, self.ring.field()))
    }

    /// The swap `x_i ↔ x_i'`.
    pub fn swap(&self, p: &Poly<F>) -> Poly<F> {
        let n = self.nvars;
        let img = self.images(|i| self.v((i + n) % (2 * n)));
        self.ring.reduce(&p.substitute(&img, self.ring.field()))
    }

    /// `x_i' ↦ x_i + u_i`.
    pub fn to_xu(&self, p: &Poly<F>) -> Poly<F> {
        let n = self.nvars;
        let f = self.ring.field();
        let img = self.images(|i| {
            if i < n {
                self.v(i)
            } else {
                self.v(i - n).add(&self.v(i), f)
            }
        });
        self.ring_xu.reduce(&p.substitute(&img, f))
    }

    /// `u_i ↦ x_i' - x_i`.
    pub fn from_xu(&self, p: &Poly<F>) -> Poly<F> {
        let n = self.nvars;
        let f = self.ring.field();
        let img = self.images(|i| {
            if i < n {
                self.v(i)
            } else {
                self.v(i).sub(&self.v(i - n), f)
            }
        });
        self.ring.reduce(&p.substitute(&img, f))
    }

    /// `(left degree, right degree)` of a monomial of `ring`.
    pub fn bidegree(&self, m: &Monomial) -> (i32, i32) {
        let w = self.ring.weights();
        let n = self.nvars;
        let left = (0..n).map(|i| m.exp(i) as i32 * w[i]).sum();
        let right = (n..2 * n).map(|i| m.exp(i) as i32 * w[i]).sum();
        (left, right)
    }

    /// Generators `u_i` of the diagonal in the `(x, u)` presentation.
    pub fn diagonal_xu(&self) -> Vec<Poly<F>> {
        (self.nvars..2 * self.nvars).map(|i| self.v(i)).collect()
    }

    pub fn algebra_xu(&self) -> PresentedAlgebra<F> {
        PresentedAlgebra::from_arc(self.ring_xu.clone())
    }
}

/// Minimal generators of `J^t` for a homogeneous ideal `J` of `ring`.
pub fn ideal_power<F: Field>(
    ring: &Arc<GradedRing<F>>,
    gens: &[Poly<F>],
    t: usize,
) -> Result<Vec<Poly<F>>> {
    let f = ring.field();
    let gens: Vec<Poly<F>> = gens
        .iter()
        .map(|g| ring.reduce(g))
        .filter(|g| !g.is_zero())
        .collect();
    let mut products = Vec::new();
    let mut idx = vec![0usize; t];
    if t == 0 {
        return Ok(vec![Poly::one(f)]);
    }
    if gens.is_empty() {
        return Ok(Vec::new());
    }
    loop {
        let mut p = Poly::one(f);
        for &i in &idx {
            p = ring.mul(&p, &gens[i]);
        }
        if !p.is_zero() {
            products.push(vec![p]);
        }
        // next nondecreasing index sequence
        let mut k = t;
        while k > 0 && idx[k - 1] == gens.len() - 1 {
            k -= 1;
        }
        if k == 0 {
            break;
        }
        idx[k - 1] += 1;
        let v = idx[k - 1];
        for x in idx.iter_mut().skip(k) {
            *x = v;
        }
    }
    let free = Presentation::free(ring.clone(), vec![0]);
    let chosen = select_minimal(&free, &products)?;
    Ok(chosen.into_iter().map(|i| products[i][0].clone()).collect())
}
