//! Order verification by nested brackets, and operators from linear actions.

use std::sync::Arc;

use rustc_hash::FxHashMap;

use crate::error::{AlgError, Result};
use crate::exactalg::{Field, Poly};
use crate::groebner::{add_vectors, scale_vector, zero_vector, ModMon, Presentation, Vector};

use super::operator::{DiffOperator, OperatorSpace};

/// A homogeneous `K`-linear map between presented modules, evaluated on
/// elements written over the generators.
pub trait LinearAction<F: Field>: Sync {
    fn act(&self, m: &[Poly<F>]) -> Result<Vector<F>>;
}

impl<F: Field> LinearAction<F> for DiffOperator<F> {
    fn act(&self, m: &[Poly<F>]) -> Result<Vector<F>> {
        self.apply(m)
    }
}

impl<F: Field, T: Fn(&[Poly<F>]) -> Result<Vector<F>> + Sync> LinearAction<F> for T {
    fn act(&self, m: &[Poly<F>]) -> Result<Vector<F>> {
        self(m)
    }
}

#[derive(Clone, Debug)]
pub enum OrderCheck<F: Field> {
    Verified,
    /// `[..[δ, f_0], .., f_n](element) = value ≠ 0`.
    Refuted {
        multipliers: Vec<Poly<F>>,
        element: Vector<F>,
        value: Vector<F>,
    },
}

impl<F: Field> OrderCheck<F> {
    pub fn is_verified(&self) -> bool {
        matches!(self, OrderCheck::Verified)
    }
}

/// The standard monomials of `M` in the degrees `lo..=hi`, as elements.
pub fn spanning_set<F: Field>(m: &Presentation<F>, lo: i32, hi: i32) -> Result<Vec<Vector<F>>> {
    let f = m.field();
    let mut out = Vec::new();
    for d in lo..=hi {
        for ModMon { comp, mon } in m.piece(d)?.monos.iter() {
            let mut v = zero_vector(m.rank());
            v[*comp as usize] = Poly::term(f, *mon, f.one());
            out.push(v);
        }
    }
    Ok(out)
}

/// Checks that `δ` has order at most `n` on the degrees `lo..=hi` of the
/// source: all `(n+1)`-fold brackets with the given ring elements vanish
/// there. Brackets with ring elements commute, so multisets suffice.
pub fn bracket_order_check<F: Field>(
    action: &dyn LinearAction<F>,
    source: &Presentation<F>,
    target: &Presentation<F>,
    n: usize,
    generators: &[Poly<F>],
    window: (i32, i32),
) -> Result<OrderCheck<F>> {
    let (lo, hi) = window;
    let elements = if lo <= hi {
        spanning_set(source, lo, hi)?
    } else {
        Vec::new()
    };
    if elements.is_empty() {
        return Err(AlgError::WindowTooNarrow(format!(
            "no elements of the source in degrees {lo}..={hi}"
        )));
    }
    let f = source.field().clone();
    let ring = source.ring().clone();
    let gens: Vec<Poly<F>> = generators
        .iter()
        .map(|g| ring.reduce(g))
        .filter(|g| !g.is_zero())
        .collect();
    if gens.is_empty() {
        return Ok(OrderCheck::Verified);
    }
    let k = n + 1;
    let mut choice = vec![0usize; k];
    loop {
        let fs: Vec<&Poly<F>> = choice.iter().map(|&i| &gens[i]).collect();
        for m in &elements {
            let value = nested_bracket(action, target, &f, &ring, &fs, m)?;
            if !target.is_zero_element(&value)? {
                return Ok(OrderCheck::Refuted {
                    multipliers: fs.into_iter().cloned().collect(),
                    element: m.clone(),
                    value,
                });
            }
        }
        let mut i = k;
        while i > 0 && choice[i - 1] == gens.len() - 1 {
            i -= 1;
        }
        if i == 0 {
            return Ok(OrderCheck::Verified);
        }
        choice[i - 1] += 1;
        let v = choice[i - 1];
        for c in choice.iter_mut().skip(i) {
            *c = v;
        }
    }
}

/// `Σ_{S} (-1)^{|S^c|} f_{S^c} δ(f_S m)` over subsets `S` of the positions.
fn nested_bracket<F: Field>(
    action: &dyn LinearAction<F>,
    target: &Presentation<F>,
    f: &F,
    ring: &crate::groebner::GradedRing<F>,
    fs: &[&Poly<F>],
    m: &[Poly<F>],
) -> Result<Vector<F>> {
    let k = fs.len();
    let mut cache: FxHashMap<u32, Vector<F>> = FxHashMap::default();
    let mut acc = zero_vector(target.rank());
    for set in 0u32..(1 << k) {
        let inside = |i: usize| set & (1 << i) != 0;
        let mut pre = Poly::one(f);
        let mut post = Poly::one(f);
        for (i, g) in fs.iter().enumerate() {
            if inside(i) {
                pre = ring.mul(&pre, g);
            } else {
                post = ring.mul(&post, g);
            }
        }
        // equal multisets give equal inner values; key on the canonical
        // subset that picks the first occurrences
        let key = canonical_subset(fs, set);
        let inner = match cache.get(&key) {
            Some(v) => v.clone(),
            None => {
                let arg: Vector<F> = m.iter().map(|p| ring.mul(p, &pre)).collect();
                let v = action.act(&arg)?;
                cache.insert(key, v.clone());
                v
            }
        };
        let sign = if (k - set.count_ones() as usize).is_multiple_of(2) {
            f.one()
        } else {
            f.neg(&f.one())
        };
        let term = scale_vector(f, &post.scale(&sign, f), &inner);
        acc = add_vectors(f, &acc, &term);
    }
    target.normal_form(&acc)
}

fn canonical_subset<F: Field>(fs: &[&Poly<F>], set: u32) -> u32 {
    let mut out = 0u32;
    for (i, g) in fs.iter().enumerate() {
        if set & (1 << i) == 0 {
            continue;
        }
        let mut j = 0;
        while fs[j] != *g || out & (1 << j) != 0 {
            j += 1;
        }
        out |= 1 << j;
    }
    out
}

/// Binomial coefficients computed over the integers before mapping into the
/// field, so that they are correct in positive characteristic.
fn binomial_int(n: u32, k: u32) -> i64 {
    let mut r: i64 = 1;
    for i in 0..k as i64 {
        r = r * (n as i64 - i) / (i + 1);
    }
    r
}

/// The homomorphism `φ ∈ Hom(P^n(M), N)_k` with `φ ∘ d = δ`, provided `δ`
/// has order at most `n`: `φ(u^α e_j) = Σ_{β<=α} C(α,β) (-x)^{α-β} δ(x^β e_j)`.
/// Fails with `NotWellDefined` when these values violate a relation of
/// `P^n(M)`, which refutes the order bound.
pub fn from_linear_action<F: Field>(
    space: &Arc<OperatorSpace<F>>,
    action: &dyn LinearAction<F>,
    k: i32,
) -> Result<DiffOperator<F>> {
    let ring = space.ring().clone();
    let f = ring.field().clone();
    let parts = &space.parts;
    let source = space.source();
    let target = space.target();
    let monomial = |beta: &[u32]| -> Poly<F> {
        let mut p = Poly::one(&f);
        for (i, &e) in beta.iter().enumerate() {
            p = ring.mul(&p, &ring.var(i).pow(e, &f));
        }
        p
    };
    let mut values = Vec::with_capacity(parts.presentation.rank());
    for j in 0..source.rank() {
        let mut images: FxHashMap<Vec<u32>, Vector<F>> = FxHashMap::default();
        for alpha in &parts.alphas {
            let mut x = zero_vector(source.rank());
            x[j] = monomial(alpha);
            images.insert(alpha.clone(), action.act(&x)?);
        }
        for alpha in &parts.alphas {
            let mut acc = zero_vector(target.rank());
            for beta in parts
                .alphas
                .iter()
                .filter(|b| b.iter().zip(alpha).all(|(x, y)| x <= y))
            {
                let gamma: Vec<u32> = alpha.iter().zip(beta).map(|(a, b)| a - b).collect();
                let total: u32 = gamma.iter().sum();
                let coef: i64 = alpha
                    .iter()
                    .zip(beta)
                    .map(|(&a, &b)| binomial_int(a, b))
                    .product();
                let mut c = f.from_int(coef);
                if total % 2 == 1 {
                    c = f.neg(&c);
                }
                if f.is_zero(&c) {
                    continue;
                }
                let mult = monomial(&gamma).scale(&c, &f);
                acc = add_vectors(&f, &acc, &scale_vector(&f, &mult, &images[beta]));
            }
            values.push(acc);
        }
    }
    space.operator_from_values(k, values)
}

/// Same module up to the identity of generators and relations.
fn same_module<F: Field>(a: &Presentation<F>, b: &Presentation<F>) -> bool {
    std::ptr::eq(a, b) || (a.degrees() == b.degrees() && a.relations() == b.relations())
}

/// `δ_2 ∘ δ_1` as an operator of order `i + j`.
pub fn compose<F: Field>(d1: &DiffOperator<F>, d2: &DiffOperator<F>) -> Result<DiffOperator<F>> {
    if !same_module(d1.space.target(), d2.space.source()) {
        return Err(AlgError::ModuleMismatch(
            "target of the first operator is not the source of the second".into(),
        ));
    }
    let space = Arc::new(OperatorSpace::new(
        d1.space.source().clone(),
        d2.space.target().clone(),
        d1.order() + d2.order(),
    )?);
    let action = |m: &[Poly<F>]| d2.apply(&d1.apply(m)?);
    from_linear_action(&space, &action, d1.degree + d2.degree)
}
