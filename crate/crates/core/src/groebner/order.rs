use std::cmp::Ordering;

use crate::exactalg::{Field, Monomial, Poly};

/// A monomial `mon * e_comp` of a free module.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct ModMon {
    pub comp: u32,
    pub mon: Monomial,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModuleRule {
    PositionOverTerm,
    TermOverPosition,
}

/// Degrevlex extended to free modules.
///
/// Components may be grouped into blocks; a higher block always dominates,
/// which makes the order an elimination order for the lower blocks. Inside a
/// block the rule decides between comparing the (shifted) degree and
/// monomial first, or the position first. Lower component indices are larger.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialOrder {
    pub rule: ModuleRule,
    pub position_degrees: Vec<i32>,
    pub blocks: Vec<u32>,
}

impl MonomialOrder {
    pub fn top(position_degrees: Vec<i32>) -> Self {
        let n = position_degrees.len();
        MonomialOrder {
            rule: ModuleRule::TermOverPosition,
            position_degrees,
            blocks: vec![0; n],
        }
    }

    pub fn pot(position_degrees: Vec<i32>) -> Self {
        let n = position_degrees.len();
        MonomialOrder {
            rule: ModuleRule::PositionOverTerm,
            position_degrees,
            blocks: vec![0; n],
        }
    }

    /// The order used for ideals: plain degrevlex on rank one.
    pub fn ideal() -> Self {
        MonomialOrder::top(vec![0])
    }

    pub fn rank(&self) -> usize {
        self.position_degrees.len()
    }

    #[inline]
    pub fn degree(&self, m: &ModMon) -> i32 {
        m.mon.weight() + self.position_degrees[m.comp as usize]
    }

    #[inline]
    pub fn cmp(&self, a: &ModMon, b: &ModMon) -> Ordering {
        let (ca, cb) = (a.comp as usize, b.comp as usize);
        match self.blocks[ca].cmp(&self.blocks[cb]) {
            Ordering::Equal => {}
            o => return o,
        }
        match self.rule {
            ModuleRule::TermOverPosition => {
                let da = a.mon.weight() + self.position_degrees[ca];
                let db = b.mon.weight() + self.position_degrees[cb];
                da.cmp(&db)
                    .then_with(|| a.mon.cmp_degrevlex(&b.mon))
                    .then_with(|| cb.cmp(&ca))
            }
            ModuleRule::PositionOverTerm => cb.cmp(&ca).then_with(|| a.mon.cmp_degrevlex(&b.mon)),
        }
    }
}

/// Module element as a sorted term list (decreasing in some order).
pub type Terms<F> = Vec<(ModMon, <F as Field>::Elem)>;

/// Converts per-component polynomials to a sorted term list.
pub fn to_terms<F: Field>(v: &[Poly<F>], order: &MonomialOrder) -> Terms<F> {
    let mut t: Terms<F> = Vec::new();
    for (k, p) in v.iter().enumerate() {
        for (m, c) in p.terms() {
            t.push((
                ModMon {
                    comp: k as u32,
                    mon: *m,
                },
                c.clone(),
            ));
        }
    }
    t.sort_by(|a, b| order.cmp(&b.0, &a.0));
    t
}

/// Splits a term list back into `rank` polynomials.
pub fn from_terms<F: Field>(field: &F, t: &[(ModMon, F::Elem)], rank: usize) -> Vec<Poly<F>> {
    let mut parts: Vec<Vec<(Monomial, F::Elem)>> = vec![Vec::new(); rank];
    for (mm, c) in t {
        parts[mm.comp as usize].push((mm.mon, c.clone()));
    }
    parts
        .into_iter()
        .map(|p| Poly::from_terms(field, p))
        .collect()
}

/// `a - c * m * b` where all lists are sorted by `order`.
pub fn sub_scaled_shifted<F: Field>(
    field: &F,
    order: &MonomialOrder,
    a: &[(ModMon, F::Elem)],
    c: &F::Elem,
    m: &Monomial,
    b: &[(ModMon, F::Elem)],
) -> Terms<F> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let shifted = |k: usize| -> (ModMon, F::Elem) {
        let (mm, x) = &b[k];
        (
            ModMon {
                comp: mm.comp,
                mon: mm.mon.mul(m),
            },
            field.neg(&field.mul(c, x)),
        )
    };
    let mut pending: Option<(ModMon, F::Elem)> = if b.is_empty() { None } else { Some(shifted(0)) };
    while i < a.len() {
        let Some(bj) = pending.as_ref() else { break };
        match order.cmp(&a[i].0, &bj.0) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push(pending.take().unwrap());
                j += 1;
                pending = if j < b.len() { Some(shifted(j)) } else { None };
            }
            Ordering::Equal => {
                let s = field.add(&a[i].1, &bj.1);
                if !field.is_zero(&s) {
                    out.push((a[i].0, s));
                }
                i += 1;
                j += 1;
                pending = if j < b.len() { Some(shifted(j)) } else { None };
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    if let Some(p) = pending {
        out.push(p);
        for k in j + 1..b.len() {
            out.push(shifted(k));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn block_order_eliminates() {
        let w = [1, 1];
        let x = Monomial::new(&[1, 0], &w);
        let one = Monomial::ONE;
        let mut ord = MonomialOrder::top(vec![0, 5]);
        ord.blocks = vec![1, 0];
        // anything in block 1 beats block 0 regardless of degree
        assert_eq!(
            ord.cmp(&ModMon { comp: 0, mon: one }, &ModMon { comp: 1, mon: x }),
            Ordering::Greater
        );
        let top = MonomialOrder::top(vec![0, 5]);
        assert_eq!(
            top.cmp(&ModMon { comp: 0, mon: one }, &ModMon { comp: 1, mon: x }),
            Ordering::Less
        );
        let pot = MonomialOrder::pot(vec![0, 5]);
        assert_eq!(
            pot.cmp(&ModMon { comp: 0, mon: one }, &ModMon { comp: 1, mon: x }),
            Ordering::Greater
        );
    }
}
