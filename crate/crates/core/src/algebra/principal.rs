//! Modules of principal parts `P^n(M) = (P/Δ^{n+1}) ⊗_R M` as left modules.
//!
//! In the coordinates `u = x' - x` the quotient `P/Δ^{n+1}` is
//! `R[u]/(u)^{n+1}` modulo `I(x+u)`, so it is presented over `R` by the
//! generators `u^α e_j` (`|α| <= n`) and the relations `u^γ q` where `q` runs
//! over `g(x+u) e_j` for `g ∈ I` and over the relations of `M` with `x`
//! replaced by `x + u`, truncated above `u`-degree `n`.

use std::sync::Arc;

use rustc_hash::FxHashMap;

use crate::error::Result;
use crate::exactalg::{Field, Monomial, Poly};
use crate::groebner::{zero_vector, GradedRing, Presentation, Vector};

use super::presented::PresentedAlgebra;

fn binomial(n: u32, k: u32) -> i64 {
    let mut r: i64 = 1;
    for i in 0..k as i64 {
        r = r * (n as i64 - i) / (i + 1);
    }
    r
}

/// All exponent vectors in `v` variables with total exponent at most `n`,
/// ordered by total exponent and then decreasingly.
pub fn multi_indices(v: usize, n: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for total in 0..=n {
        let ones = vec![1; v];
        let mut layer: Vec<Monomial> = crate::exactalg::monomials_of_degree(&ones, total as i32);
        layer.sort_by(|a, b| b.cmp_lex(a));
        out.extend(layer.iter().map(|m| (0..v).map(|i| m.exp(i)).collect()));
    }
    out
}

/// Taylor coefficients of `f(x + u)`: pairs `(α, c_α(x))` with
/// `f(x+u) = Σ c_α(x) u^α`, truncated to `|α| <= n`.
pub fn taylor<F: Field>(ring: &GradedRing<F>, f: &Poly<F>, n: usize) -> Vec<(Vec<u32>, Poly<F>)> {
    let field = ring.field();
    let v = ring.nvars();
    let w = ring.weights();
    let mut acc: FxHashMap<Vec<u32>, Vec<(Monomial, F::Elem)>> = FxHashMap::default();
    for (m, c) in f.terms() {
        let beta: Vec<u32> = (0..v).map(|i| m.exp(i)).collect();
        // all α <= β with |α| <= n
        let mut alpha = vec![0u32; v];
        loop {
            let total: u32 = alpha.iter().sum();
            if total as usize <= n {
                let coef: i64 = (0..v).map(|i| binomial(beta[i], alpha[i])).product();
                let e = field.mul(c, &field.from_int(coef));
                if !field.is_zero(&e) {
                    let rest: Vec<u32> = (0..v).map(|i| beta[i] - alpha[i]).collect();
                    acc.entry(alpha.clone())
                        .or_default()
                        .push((Monomial::new(&rest, w), e));
                }
            }
            let mut i = 0;
            while i < v && alpha[i] == beta[i] {
                alpha[i] = 0;
                i += 1;
            }
            if i == v {
                break;
            }
            alpha[i] += 1;
        }
    }
    let mut out: Vec<(Vec<u32>, Poly<F>)> = acc
        .into_iter()
        .map(|(a, t)| (a, ring.reduce(&Poly::from_terms(field, t))))
        .filter(|(_, p)| !p.is_zero())
        .collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

type Entry<F> = (Vec<u32>, usize, Poly<F>);

/// `P^n(M)` with its generators `u^α e_j`.
pub struct PrincipalParts<F: Field> {
    pub order: usize,
    ring: Arc<GradedRing<F>>,
    pub alphas: Vec<Vec<u32>>,
    alpha_index: FxHashMap<Vec<u32>, usize>,
    /// Generator degrees of `M`.
    pub module_degrees: Vec<i32>,
    pub presentation: Presentation<F>,
}

pub fn principal_parts<F: Field>(r: &PresentedAlgebra<F>, n: usize) -> Result<PrincipalParts<F>> {
    principal_parts_of(&r.free_module(0), n)
}

pub fn principal_parts_of<F: Field>(m: &Presentation<F>, n: usize) -> Result<PrincipalParts<F>> {
    let ring = m.ring().clone();
    let v = ring.nvars();
    let alphas = multi_indices(v, n);
    let alpha_index: FxHashMap<Vec<u32>, usize> = alphas
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, a)| (a, i))
        .collect();
    let na = alphas.len();
    let rank = m.rank();
    let w = ring.weights();
    let mut degrees = Vec::with_capacity(na * rank);
    for a in m.degrees() {
        for al in &alphas {
            degrees.push(a + al.iter().zip(w).map(|(&e, &wi)| e as i32 * wi).sum::<i32>());
        }
    }
    let mut pp = PrincipalParts {
        order: n,
        ring: ring.clone(),
        alphas,
        alpha_index,
        module_degrees: m.degrees().to_vec(),
        presentation: Presentation::free(ring.clone(), degrees.clone()),
    };
    // q's written over the generators as (α, j, coefficient), then
    // multiplied by all u^γ
    let mut qs: Vec<Vec<Entry<F>>> = Vec::new();
    for g in ring.relations() {
        let t = taylor(&ring, g, n);
        for j in 0..rank {
            qs.push(t.iter().map(|(a, c)| (a.clone(), j, c.clone())).collect());
        }
    }
    for rel in m.relations() {
        let mut q = Vec::new();
        for (j, p) in rel.iter().enumerate() {
            for (a, c) in taylor(&ring, p, n) {
                q.push((a, j, c));
            }
        }
        qs.push(q);
    }
    let mut relations = Vec::new();
    for q in &qs {
        for gamma in &pp.alphas {
            let mut vec = zero_vector(na * rank);
            let mut nonzero = false;
            for (a, j, c) in q {
                let sum: Vec<u32> = a.iter().zip(gamma).map(|(x, y)| x + y).collect();
                if let Some(&k) = pp.alpha_index.get(&sum) {
                    vec[j * na + k] = c.clone();
                    nonzero = true;
                }
            }
            if nonzero {
                relations.push(vec);
            }
        }
    }
    pp.presentation = Presentation::new(ring, degrees, relations)?;
    Ok(pp)
}

impl<F: Field> PrincipalParts<F> {
    pub fn ring(&self) -> &Arc<GradedRing<F>> {
        &self.ring
    }

    pub fn index(&self, alpha: usize, j: usize) -> usize {
        j * self.alphas.len() + alpha
    }

    pub fn alpha_index(&self, alpha: &[u32]) -> Option<usize> {
        self.alpha_index.get(alpha).copied()
    }

    /// The universal operator `d : M -> P^n(M)`, `m ↦ 1 ⊗ m`, on an element
    /// given over the generators of `M`.
    pub fn universal(&self, m: &[Poly<F>]) -> Vector<F> {
        let na = self.alphas.len();
        let mut out = zero_vector(na * self.module_degrees.len());
        for (j, p) in m.iter().enumerate() {
            for (a, c) in taylor(&self.ring, p, self.order) {
                let k = self.index(self.alpha_index[&a], j);
                out[k] = out[k].add(&c, self.ring.field());
            }
        }
        out
    }

    /// Images of the generators under `P^n(M) -> P^lower(M)`.
    pub fn projection_to(&self, lower: &PrincipalParts<F>) -> Vec<Vector<F>> {
        let f = self.ring.field();
        let rank = self.module_degrees.len();
        let mut out = Vec::with_capacity(self.alphas.len() * rank);
        for j in 0..rank {
            for a in &self.alphas {
                let mut v = zero_vector(lower.alphas.len() * rank);
                if let Some(k) = lower.alpha_index(a) {
                    v[lower.index(k, j)] = Poly::one(f);
                }
                out.push(v);
            }
        }
        out
    }

    /// Images of the generators under multiplication by `x_i' = x_i + u_i`
    /// (the right structure).
    pub fn right_multiplication(&self, i: usize) -> Vec<Vector<F>> {
        let f = self.ring.field();
        let rank = self.module_degrees.len();
        let na = self.alphas.len();
        let xi = self.ring.var(i);
        let mut out = Vec::with_capacity(na * rank);
        for j in 0..rank {
            for (k, a) in self.alphas.iter().enumerate() {
                let mut v = zero_vector(na * rank);
                v[self.index(k, j)] = xi.clone();
                let mut b = a.clone();
                b[i] += 1;
                if let Some(kb) = self.alpha_index(&b) {
                    v[self.index(kb, j)] = Poly::one(f);
                }
                out.push(v);
            }
        }
        out
    }
}
