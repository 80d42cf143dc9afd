//! Sparse exact linear algebra over a [`Field`].
//!
//! Vectors are lists of `(index, coefficient)` pairs sorted by index with no
//! zero entries. [`Echelon`] maintains a semi-echelon basis (distinct leading
//! indices, leading coefficient one) that can be extended incrementally and
//! optionally remembers how each row was combined from the inserted vectors.

use std::collections::BTreeMap;

use rustc_hash::FxHashMap;

use crate::exactalg::Field;

pub type SparseVec<E> = Vec<(usize, E)>;

fn axpy_into<F: Field>(
    field: &F,
    acc: &mut BTreeMap<usize, F::Elem>,
    c: &F::Elem,
    v: &[(usize, F::Elem)],
) {
    // acc -= c * v
    for (i, x) in v {
        let t = field.mul(c, x);
        match acc.get_mut(i) {
            Some(a) => {
                let s = field.sub(a, &t);
                if field.is_zero(&s) {
                    acc.remove(i);
                } else {
                    *a = s;
                }
            }
            None => {
                acc.insert(*i, field.neg(&t));
            }
        }
    }
}

/// Adds `c * v` into `acc`.
pub fn add_scaled<F: Field>(
    field: &F,
    acc: &mut BTreeMap<usize, F::Elem>,
    c: &F::Elem,
    v: &[(usize, F::Elem)],
) {
    let nc = field.neg(c);
    axpy_into(field, acc, &nc, v);
}

pub fn to_sparse<E>(m: BTreeMap<usize, E>) -> SparseVec<E> {
    m.into_iter().collect()
}

struct Row<E> {
    v: SparseVec<E>,
    combo: SparseVec<E>,
}

pub struct Echelon<F: Field> {
    field: F,
    rows: Vec<Row<F::Elem>>,
    pivot_of: FxHashMap<usize, usize>,
    tracking: bool,
    inserted: usize,
}

impl<F: Field> Echelon<F> {
    pub fn new(field: F) -> Self {
        Echelon {
            field,
            rows: Vec::new(),
            pivot_of: FxHashMap::default(),
            tracking: false,
            inserted: 0,
        }
    }

    /// Remembers, for every row, the combination of inserted vectors
    /// (numbered in insertion order) it came from.
    pub fn with_tracking(field: F) -> Self {
        Echelon {
            tracking: true,
            ..Echelon::new(field)
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    /// Top-reduces `v`; returns the residual and (if tracking) the combination
    /// of inserted vectors that was subtracted.
    fn top_reduce(
        &self,
        v: &[(usize, F::Elem)],
    ) -> (BTreeMap<usize, F::Elem>, BTreeMap<usize, F::Elem>) {
        let f = &self.field;
        let mut acc: BTreeMap<usize, F::Elem> = v.iter().cloned().collect();
        let mut combo = BTreeMap::new();
        while let Some((col, c)) = acc.iter().next().map(|(i, c)| (*i, c.clone())) {
            let Some(&r) = self.pivot_of.get(&col) else {
                break;
            };
            let row = &self.rows[r];
            axpy_into(f, &mut acc, &c, &row.v);
            if self.tracking {
                add_scaled(f, &mut combo, &c, &row.combo);
            }
        }
        (acc, combo)
    }

    /// Reduces every entry of `v` that sits on a pivot column, giving a
    /// canonical representative of `v` modulo the span.
    pub fn reduce_full(&self, v: &[(usize, F::Elem)]) -> SparseVec<F::Elem> {
        let f = &self.field;
        let mut acc: BTreeMap<usize, F::Elem> = v.iter().cloned().collect();
        let mut out = BTreeMap::new();
        while let Some((&col, _)) = acc.iter().next() {
            let c = acc.remove(&col).unwrap();
            match self.pivot_of.get(&col) {
                Some(&r) => {
                    let row = &self.rows[r];
                    acc.insert(col, c.clone());
                    axpy_into(f, &mut acc, &c, &row.v);
                }
                None => {
                    out.insert(col, c);
                }
            }
        }
        to_sparse(out)
    }

    pub fn contains(&self, v: &[(usize, F::Elem)]) -> bool {
        self.top_reduce(v).0.is_empty()
    }

    /// Inserts `v`. Returns `None` when `v` was independent; otherwise returns
    /// the linear dependency: a combination of inserted vectors (including
    /// this one, with coefficient one) that vanishes. Without tracking the
    /// dependency is empty.
    pub fn insert(&mut self, v: &[(usize, F::Elem)]) -> Option<SparseVec<F::Elem>> {
        let f = self.field.clone();
        let id = self.inserted;
        self.inserted += 1;
        let (res, mut combo) = self.top_reduce(v);
        if res.is_empty() {
            if !self.tracking {
                return Some(Vec::new());
            }
            // v - combo = 0
            let mut dep = BTreeMap::new();
            dep.insert(id, f.one());
            for (i, c) in combo {
                dep.insert(i, f.neg(&c));
            }
            return Some(to_sparse(dep));
        }
        let (&lead, lc) = res.iter().next().unwrap();
        let inv = f.inv(lc).expect("nonzero leading coefficient");
        let v: SparseVec<F::Elem> = res.into_iter().map(|(i, c)| (i, f.mul(&c, &inv))).collect();
        let combo = if self.tracking {
            // row = (v_in - combo) * inv
            let mut full = BTreeMap::new();
            full.insert(id, f.one());
            for (i, c) in std::mem::take(&mut combo) {
                full.insert(i, f.neg(&c));
            }
            full.into_iter()
                .map(|(i, c)| (i, f.mul(&c, &inv)))
                .collect()
        } else {
            Vec::new()
        };
        self.pivot_of.insert(lead, self.rows.len());
        self.rows.push(Row { v, combo });
        None
    }

    /// Writes `y` as a combination of inserted vectors, if possible.
    /// Requires tracking.
    pub fn solve(&self, y: &[(usize, F::Elem)]) -> Option<SparseVec<F::Elem>> {
        assert!(self.tracking, "solve requires a tracking echelon");
        let (res, combo) = self.top_reduce(y);
        if !res.is_empty() {
            return None;
        }
        Some(to_sparse(combo))
    }
}

/// Rank of a list of vectors.
pub fn rank<F: Field>(field: &F, vectors: &[SparseVec<F::Elem>]) -> usize {
    let mut e = Echelon::new(field.clone());
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}

/// Kernel of the linear map sending basis vector `j` of the domain to
/// `images[j]`. Returned vectors are expressed in domain coordinates.
pub fn kernel<F: Field>(field: &F, images: &[SparseVec<F::Elem>]) -> Vec<SparseVec<F::Elem>> {
    let mut e = Echelon::with_tracking(field.clone());
    let mut out = Vec::new();
    for v in images {
        if let Some(dep) = e.insert(v) {
            out.push(dep);
        }
    }
    out
}

/// Applies a map given by column images to a domain vector.
pub fn apply<F: Field>(
    field: &F,
    images: &[SparseVec<F::Elem>],
    x: &[(usize, F::Elem)],
) -> SparseVec<F::Elem> {
    let mut acc = BTreeMap::new();
    for (j, c) in x {
        add_scaled(field, &mut acc, c, &images[*j]);
    }
    to_sparse(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{PrimeField, Rationals};

    fn q(n: i64) -> crate::exactalg::Rat {
        crate::exactalg::Rat::from_int(n)
    }

    #[test]
    fn rank_and_kernel() {
        let f = Rationals;
        // columns: e0 -> (1,2), e1 -> (2,4), e2 -> (0,1)
        let imgs = vec![
            vec![(0, q(1)), (1, q(2))],
            vec![(0, q(2)), (1, q(4))],
            vec![(1, q(1))],
        ];
        assert_eq!(rank(&f, &imgs), 2);
        let k = kernel(&f, &imgs);
        assert_eq!(k.len(), 1);
        assert!(apply(&f, &imgs, &k[0]).is_empty());
    }

    #[test]
    fn solve_and_reduce() {
        let f = PrimeField::new(5).unwrap();
        let mut e = Echelon::with_tracking(f);
        e.insert(&[(0, 1), (2, 3)]);
        e.insert(&[(1, 2), (2, 1)]);
        let y = vec![(0, 2), (1, 4), (2, 3)];
        let sol = e.solve(&y).unwrap();
        let imgs = vec![vec![(0, 1), (2, 3)], vec![(1, 2), (2, 1)]];
        assert_eq!(apply(&f, &imgs, &sol), y);
        assert!(e.solve(&[(2, 1)]).is_none());
        assert_eq!(e.reduce_full(&[(0, 1)]), vec![(2, 2)]);
    }
}
