//! Degree-truncated Buchberger algorithm for homogeneous submodules of free
//! modules, with the Gebauer–Möller pair criteria.

use std::collections::BTreeSet;

use crate::error::{AlgError, Result};
use crate::exactalg::{Field, Monomial, MAX_VARS};

use super::order::{sub_scaled_shifted, ModMon, MonomialOrder, Terms};

/// Short exponent vector: bit `5i+t` is set when exponent `i` reaches the
/// `t`-th threshold. Divisibility of monomials implies containment of bits.
fn sev(m: &Monomial) -> u64 {
    const T: [u16; 5] = [1, 2, 3, 4, 6];
    let mut s = 0u64;
    for (i, &e) in m.exps().iter().enumerate() {
        for (t, &th) in T.iter().enumerate() {
            if e >= th {
                s |= 1 << (5 * i + t);
            }
        }
    }
    s
}

#[derive(Clone)]
struct Lead {
    mm: ModMon,
    sev: u64,
}

#[derive(Clone)]
pub struct GroebnerBasis<F: Field> {
    field: F,
    weights: Vec<i32>,
    order: MonomialOrder,
    elems: Vec<Terms<F>>,
    leads: Vec<Lead>,
    by_comp: Vec<Vec<usize>>,
    bound: i32,
    complete: bool,
}

// Pair queue key: (degree, kind, lcm exponents, component, i, j). Kind 0 marks
// an input generator, 1 an S-pair. Lowest degree first, then lexicographic on
// the lcm.
type PairKey = (i32, u8, [u16; MAX_VARS], u32, usize, usize);

fn term_degree<F: Field>(order: &MonomialOrder, t: &Terms<F>) -> Option<i32> {
    t.first().map(|(m, _)| order.degree(m))
}

fn check_homogeneous<F: Field>(order: &MonomialOrder, t: &Terms<F>) -> Result<()> {
    if let Some(d) = term_degree::<F>(order, t) {
        for (m, _) in t {
            let e = order.degree(m);
            if e != d {
                return Err(AlgError::Inhomogeneous {
                    term: format!("{:?}*e{}", m.mon, m.comp),
                    found: e,
                    expected: d,
                });
            }
        }
    }
    Ok(())
}

impl<F: Field> GroebnerBasis<F> {
    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn weights(&self) -> &[i32] {
        &self.weights
    }

    pub fn elements(&self) -> &[Terms<F>] {
        &self.elems
    }

    pub fn rank(&self) -> usize {
        self.order.rank()
    }

    /// Largest degree up to which the basis is certified.
    pub fn bound(&self) -> i32 {
        self.bound
    }

    /// True when every S-pair was processed, so the basis is a Gröbner basis
    /// in all degrees.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Fails unless the basis is certified in degree `d`.
    pub fn certify(&self, d: i32) -> Result<()> {
        if self.complete || d <= self.bound {
            Ok(())
        } else {
            Err(AlgError::bound(self.bound, d))
        }
    }

    pub fn lead_monomials(&self) -> impl Iterator<Item = &ModMon> {
        self.leads.iter().map(|l| &l.mm)
    }

    /// Index of the first basis element whose lead divides `mm`, with the
    /// cofactor.
    #[inline]
    pub fn find_reducer(&self, mm: &ModMon) -> Option<(usize, Monomial)> {
        let list = self.by_comp.get(mm.comp as usize)?;
        let s = sev(&mm.mon);
        for &k in list {
            let l = &self.leads[k];
            if l.sev & !s == 0 {
                if let Some(q) = l.mm.mon.quotient_of(&mm.mon) {
                    return Some((k, q));
                }
            }
        }
        None
    }

    /// True when some lead term divides `mm`.
    pub fn is_reducible(&self, mm: &ModMon) -> bool {
        self.find_reducer(mm).is_some()
    }

    /// Full reduction of a sorted term list.
    pub fn reduce(&self, p: Terms<F>) -> Terms<F> {
        let f = &self.field;
        let mut done: Terms<F> = Vec::new();
        let mut rest = p;
        let mut start = 0;
        while start < rest.len() {
            let (mm, c) = &rest[start];
            match self.find_reducer(mm) {
                Some((k, q)) => {
                    let c = c.clone();
                    rest = sub_scaled_shifted(
                        f,
                        &self.order,
                        &rest[start + 1..],
                        &c,
                        &q,
                        &self.elems[k][1..],
                    );
                    start = 0;
                }
                None => {
                    done.push(rest[start].clone());
                    start += 1;
                }
            }
        }
        done
    }

    /// Normal form with certification of the input degree.
    pub fn normal_form(&self, p: Terms<F>) -> Result<Terms<F>> {
        if let Some(d) = term_degree::<F>(&self.order, &p) {
            self.certify(d)?;
        }
        Ok(self.reduce(p))
    }

    fn make_monic(&self, mut p: Terms<F>) -> Terms<F> {
        let f = &self.field;
        let inv = f.inv(&p[0].1).expect("nonzero lead");
        if !f.is_one(&inv) {
            for t in p.iter_mut() {
                t.1 = f.mul(&t.1, &inv);
            }
        }
        p
    }

    fn spoly(&self, i: usize, j: usize) -> Terms<F> {
        let (a, b) = (&self.elems[i], &self.elems[j]);
        let l = a[0].0.mon.lcm(&b[0].0.mon, &self.weights);
        let qa = a[0].0.mon.quotient_of(&l).unwrap();
        let qb = b[0].0.mon.quotient_of(&l).unwrap();
        let f = &self.field;
        let sa: Terms<F> = a[1..]
            .iter()
            .map(|(m, c)| {
                (
                    ModMon {
                        comp: m.comp,
                        mon: m.mon.mul(&qa),
                    },
                    c.clone(),
                )
            })
            .collect();
        sub_scaled_shifted(f, &self.order, &sa, &f.one(), &qb, &b[1..])
    }
}

/// Computes a Gröbner basis of the submodule generated by `gens`, processing
/// pairs of degree at most `bound`. The result is auto-reduced.
pub fn buchberger<F: Field>(
    field: &F,
    weights: &[i32],
    gens: &[Terms<F>],
    order: MonomialOrder,
    bound: i32,
) -> Result<GroebnerBasis<F>> {
    let rank = order.rank();
    let ideal_case = rank == 1;
    let mut gb = GroebnerBasis {
        field: field.clone(),
        weights: weights.to_vec(),
        order,
        elems: Vec::new(),
        leads: Vec::new(),
        by_comp: vec![Vec::new(); rank],
        bound,
        complete: false,
    };
    let mut active: Vec<bool> = Vec::new();
    let mut queue: BTreeSet<PairKey> = BTreeSet::new();
    let mut inputs: Vec<Terms<F>> = Vec::new();
    for g in gens {
        if g.is_empty() {
            continue;
        }
        check_homogeneous::<F>(&gb.order, g)?;
        let d = gb.order.degree(&g[0].0);
        if d > bound {
            return Err(AlgError::bound(bound, d));
        }
        let k = inputs.len();
        queue.insert((d, 0, *g[0].0.mon.exps(), g[0].0.comp, k, 0));
        inputs.push(g.clone());
    }

    while let Some(key) = queue.pop_first() {
        let (d, kind, _, _, i, j) = key;
        if d > bound {
            queue.insert(key);
            break;
        }
        let p = if kind == 0 {
            std::mem::take(&mut inputs[i])
        } else {
            gb.spoly(i, j)
        };
        let h = gb.reduce(p);
        if h.is_empty() {
            continue;
        }
        let h = gb.make_monic(h);
        let t = gb.elems.len();
        let lh = h[0].0;
        let weights = &gb.weights;

        // new pairs (g, h), filtered by the chain criterion
        let cands: Vec<(usize, Monomial)> = gb.by_comp[lh.comp as usize]
            .iter()
            .filter(|&&g| active[g])
            .map(|&g| (g, gb.leads[g].mm.mon.lcm(&lh.mon, weights)))
            .collect();
        let mut kept: Vec<(usize, Monomial, bool)> = Vec::new();
        for (a, (g, l)) in cands.iter().enumerate() {
            let coprime = ideal_case && gb.leads[*g].mm.mon.is_coprime(&lh.mon);
            let dominated = cands[a + 1..].iter().any(|(_, l2)| l2.divides(l))
                || kept.iter().any(|(_, l2, _)| l2.divides(l));
            if coprime || !dominated {
                kept.push((*g, *l, coprime));
            }
        }

        // drop old pairs whose lcm is divisible by lm(h) in a redundant way
        let old: Vec<PairKey> = queue
            .iter()
            .filter(|k| k.1 == 1 && k.3 == lh.comp)
            .cloned()
            .collect();
        for k in old {
            let (_, _, _, _, a, b) = k;
            let lab = gb.leads[a].mm.mon.lcm(&gb.leads[b].mm.mon, weights);
            if !lh.mon.divides(&lab) {
                continue;
            }
            let lah = gb.leads[a].mm.mon.lcm(&lh.mon, weights);
            let lbh = gb.leads[b].mm.mon.lcm(&lh.mon, weights);
            if lah != lab && lbh != lab {
                queue.remove(&k);
            }
        }
        for (g, l, coprime) in kept {
            if coprime {
                continue;
            }
            let deg = l.weight() + gb.order.position_degrees[lh.comp as usize];
            queue.insert((deg, 1, *l.exps(), lh.comp, g, t));
        }
        for &g in &gb.by_comp[lh.comp as usize] {
            if active[g] && lh.mon.divides(&gb.leads[g].mm.mon) {
                active[g] = false;
            }
        }
        gb.leads.push(Lead {
            mm: lh,
            sev: sev(&lh.mon),
        });
        gb.by_comp[lh.comp as usize].push(t);
        gb.elems.push(h);
        active.push(true);
    }
    gb.complete = queue.is_empty();
    interreduce(&mut gb, &active);
    Ok(gb)
}

/// Drops redundant elements, reduces tails, and sorts by lead (ascending).
fn interreduce<F: Field>(gb: &mut GroebnerBasis<F>, active: &[bool]) {
    let order = gb.order.clone();
    let mut elems: Vec<Terms<F>> = std::mem::take(&mut gb.elems)
        .into_iter()
        .zip(active)
        .filter(|(_, &a)| a)
        .map(|(e, _)| e)
        .collect();
    elems.sort_by(|a, b| order.cmp(&a[0].0, &b[0].0));
    gb.leads = elems
        .iter()
        .map(|e| Lead {
            mm: e[0].0,
            sev: sev(&e[0].0.mon),
        })
        .collect();
    gb.by_comp = vec![Vec::new(); order.rank()];
    for (k, e) in elems.iter().enumerate() {
        gb.by_comp[e[0].0.comp as usize].push(k);
    }
    gb.elems = elems;
    for k in 0..gb.elems.len() {
        let tail: Terms<F> = gb.elems[k][1..].to_vec();
        if tail.is_empty() {
            continue;
        }
        let red = gb.reduce(tail);
        let lead = gb.elems[k][0].clone();
        let mut e = Vec::with_capacity(red.len() + 1);
        e.push(lead);
        e.extend(red);
        gb.elems[k] = e;
    }
}
