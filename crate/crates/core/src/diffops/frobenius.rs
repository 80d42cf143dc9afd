//! `End_{R^q}(R)` for `q = p^e`, with `R` presented over `A = K[x_1^q, ..]`.
//!
//! `S = K[x]` is free over `A` on the monomials `x^α` with `α_i < q`, so `R`
//! is generated over `A` by their images, with relations `g x^β` for the
//! relations `g` of `R` and all such `β`.

use std::collections::BTreeMap;
use std::sync::Arc;

use rustc_hash::FxHashMap;

use crate::algebra::PresentedAlgebra;
use crate::error::{AlgError, Result};
use crate::exactalg::{Field, Monomial, Poly};
use crate::groebner::{
    ext_cell, free_resolution, zero_vector, GradedRing, Presentation, Resolution, Vector,
};
use crate::linalg::rank;

use super::operator::hom_values;
use super::order::{bracket_order_check, LinearAction};

/// `R` as a module over its subring of `q`-th powers.
pub struct FrobeniusContext<F: Field> {
    pub q: u32,
    base: Arc<GradedRing<F>>,
    pub module: Arc<Presentation<F>>,
    resolution: Resolution<F>,
    exponents: Vec<Vec<u32>>,
    index: FxHashMap<Vec<u32>, usize>,
}

impl<F: Field> FrobeniusContext<F> {
    pub fn new(r: &PresentedAlgebra<F>, e: u32) -> Result<Self> {
        let base = r.ring().clone();
        let f = base.field().clone();
        let p = f.characteristic();
        if p == 0 {
            return Err(AlgError::InvalidRing(
                "Frobenius operators need a prime field".into(),
            ));
        }
        let q64 = p
            .checked_pow(e)
            .filter(|&q| q <= u16::MAX as u64 / 2)
            .ok_or(AlgError::InfeasibleBound(format!(
                "{p}^{e} is too large for exponent storage"
            )))?;
        let q = q64 as u32;
        let v = base.nvars();
        let weights: Vec<i32> = base.weights().iter().map(|w| w * q as i32).collect();
        let names = base.names().iter().map(|n| format!("{n}^{q}")).collect();
        let sub = Arc::new(GradedRing::new(
            f.clone(),
            names,
            weights,
            Vec::new(),
            base.degree_cap(),
        )?);
        let exponents: Vec<Vec<u32>> = boxes(v, q);
        let index: FxHashMap<Vec<u32>, usize> = exponents
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, a)| (a, i))
            .collect();
        let degrees: Vec<i32> = exponents
            .iter()
            .map(|a| {
                a.iter()
                    .zip(base.weights())
                    .map(|(&x, &w)| x as i32 * w)
                    .sum()
            })
            .collect();
        let mut ctx = FrobeniusContext {
            q,
            base: base.clone(),
            module: Arc::new(Presentation::free(sub.clone(), degrees.clone())),
            resolution: free_resolution(&Presentation::free(sub.clone(), degrees.clone()), 1)?,
            exponents,
            index,
        };
        let mut relations = Vec::new();
        for g in base.relations() {
            for beta in &ctx.exponents {
                let shifted: Vec<(Monomial, F::Elem)> = g
                    .terms()
                    .iter()
                    .map(|(m, c)| {
                        let exps: Vec<u32> = (0..v).map(|i| m.exp(i) + beta[i]).collect();
                        (Monomial::new(&exps, base.weights()), c.clone())
                    })
                    .collect();
                relations.push(ctx.split(&Poly::from_terms(&f, shifted)));
            }
        }
        let module = Presentation::new(sub, degrees, relations)?;
        ctx.resolution = free_resolution(&module, 1)?;
        ctx.module = Arc::new(module);
        Ok(ctx)
    }

    pub fn subring(&self) -> &Arc<GradedRing<F>> {
        self.module.ring()
    }

    /// A polynomial in `x` written over the generators `x^α`.
    pub fn split(&self, p: &Poly<F>) -> Vector<F> {
        let f = self.base.field();
        let v = self.base.nvars();
        let sw = self.subring().weights();
        let mut parts: Vec<Vec<(Monomial, F::Elem)>> = vec![Vec::new(); self.exponents.len()];
        for (m, c) in p.terms() {
            let rem: Vec<u32> = (0..v).map(|i| m.exp(i) % self.q).collect();
            let quo: Vec<u32> = (0..v).map(|i| m.exp(i) / self.q).collect();
            parts[self.index[&rem]].push((Monomial::new(&quo, sw), c.clone()));
        }
        parts.into_iter().map(|t| Poly::from_terms(f, t)).collect()
    }

    /// `Σ a_α(x^q) x^α`, reduced in `R`.
    pub fn join(&self, vec: &[Poly<F>]) -> Poly<F> {
        let f = self.base.field();
        let v = self.base.nvars();
        let mut terms = Vec::new();
        for (a, alpha) in vec.iter().zip(&self.exponents) {
            for (m, c) in a.terms() {
                let exps: Vec<u32> = (0..v).map(|i| m.exp(i) * self.q + alpha[i]).collect();
                terms.push((Monomial::new(&exps, self.base.weights()), c.clone()));
            }
        }
        self.base.reduce(&Poly::from_terms(f, terms))
    }

    pub fn dim(&self, k: i32) -> Result<usize> {
        Ok(ext_cell(&self.resolution, &self.module, 0, k)?.dim)
    }

    pub fn basis(self: &Arc<Self>, k: i32) -> Result<Vec<FrobeniusOperator<F>>> {
        let cell = ext_cell(&self.resolution, &self.module, 0, k)?;
        cell.reps
            .iter()
            .map(|z| {
                Ok(FrobeniusOperator {
                    context: self.clone(),
                    degree: k,
                    values: hom_values(&self.resolution, &self.module, k, z)?,
                    verified_order: None,
                })
            })
            .collect()
    }
}

/// Exponent vectors in `[0, q)^v`.
fn boxes(v: usize, q: u32) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..v {
        out = out
            .into_iter()
            .flat_map(|a| (0..q).map(move |x| [a.clone(), vec![x]].concat()))
            .collect();
    }
    out
}

/// A homogeneous `R^q`-linear endomorphism of `R`.
#[derive(Clone)]
pub struct FrobeniusOperator<F: Field> {
    pub context: Arc<FrobeniusContext<F>>,
    pub degree: i32,
    /// Images of the generators `x^α`, over the generators.
    pub values: Vec<Vector<F>>,
    /// Smallest order at which the bracket check passed.
    pub verified_order: Option<usize>,
}

impl<F: Field> FrobeniusOperator<F> {
    pub fn apply(&self, p: &Poly<F>) -> Result<Poly<F>> {
        let ctx = &self.context;
        let sub = ctx.subring();
        let f = sub.field();
        let coeffs = ctx.split(&ctx.base.reduce(p));
        let mut acc = zero_vector(ctx.exponents.len());
        for (c, val) in coeffs.iter().zip(&self.values) {
            if c.is_zero() {
                continue;
            }
            for (o, x) in acc.iter_mut().zip(val) {
                *o = o.add(&c.mul(x, f), f);
            }
        }
        Ok(ctx.join(&ctx.module.normal_form(&acc)?))
    }

    /// `(d, rank of the operator on R_d, dim R_d)` for a degree-0 operator.
    pub fn image_ranks(&self, lo: i32, hi: i32) -> Result<Vec<(i32, usize, usize)>> {
        let base = &self.context.base;
        let f = base.field();
        let mut out = Vec::new();
        for d in lo..=hi {
            let piece = base.piece(d);
            let mut images = Vec::with_capacity(piece.len());
            for m in piece.monos.iter() {
                let img = self.apply(&Poly::term(f, *m, f.one()))?;
                images.push(base.coords(&img));
            }
            out.push((d, rank(f, &images), piece.len()));
        }
        Ok(out)
    }

    /// Whether the image is a sum of graded pieces of `R` on the window.
    pub fn image_is_graded_sum(&self, lo: i32, hi: i32) -> Result<bool> {
        Ok(self
            .image_ranks(lo, hi)?
            .iter()
            .all(|&(_, r, d)| r == 0 || r == d))
    }
}

impl<F: Field> LinearAction<F> for FrobeniusOperator<F> {
    fn act(&self, m: &[Poly<F>]) -> Result<Vector<F>> {
        Ok(vec![self.apply(&m[0])?])
    }
}

pub struct FrobeniusOps<F: Field> {
    pub context: Arc<FrobeniusContext<F>>,
    /// `dim [End_{R^q}(R)]_k` on the window.
    pub table: BTreeMap<i32, usize>,
    /// Basis in degree 0 with verified orders.
    pub operators: Vec<FrobeniusOperator<F>>,
}

/// `End_{R^{p^e}}(R)` on the window. Each degree-0 basis element is checked
/// to be a differential operator of order at most `v (p^e - 1)` by nested
/// brackets on the nonnegative part of the window.
pub fn frobenius_operators<F: Field>(
    r: &PresentedAlgebra<F>,
    e: u32,
    window: (i32, i32),
) -> Result<FrobeniusOps<F>> {
    let (lo, hi) = window;
    let context = Arc::new(FrobeniusContext::new(r, e)?);
    let q = context.q as i32;
    if hi - lo + 1 < q {
        return Err(AlgError::InfeasibleBound(format!(
            "window {lo}:{hi} is narrower than p^e = {q}"
        )));
    }
    let table = (lo..=hi)
        .map(|k| Ok((k, context.dim(k)?)))
        .collect::<Result<BTreeMap<_, _>>>()?;
    let mut operators = context.basis(0)?;
    let ring = r.ring();
    let gens: Vec<Poly<F>> = (0..r.nvars()).map(|i| ring.var(i)).collect();
    let rr = r.free_module(0);
    let max_order = r.nvars() * (context.q as usize - 1);
    let check_window = (lo.max(0), hi.max(0));
    for op in operators.iter_mut() {
        for n in 0..=max_order {
            if bracket_order_check(&*op, &rr, &rr, n, &gens, check_window)?.is_verified() {
                op.verified_order = Some(n);
                break;
            }
        }
    }
    Ok(FrobeniusOps {
        context,
        table,
        operators,
    })
}
