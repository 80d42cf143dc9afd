//! Operators `M -> N` of order `n` as homomorphisms `P^n(M) -> N`.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::{principal_parts_of, PrincipalParts};
use crate::error::{AlgError, Result};
use crate::exactalg::{Field, Poly};
use crate::groebner::{
    add_vectors, ext_cell, free_resolution, hom_space, scale_vector, zero_vector, ExtCell,
    GradedRing, Presentation, Resolution, Vector,
};
use crate::linalg::SparseVec;

/// `Hom_R(P^n(M), N)` for fixed `M`, `N` and `n`.
pub struct OperatorSpace<F: Field> {
    pub parts: PrincipalParts<F>,
    resolution: Resolution<F>,
    source: Arc<Presentation<F>>,
    target: Arc<Presentation<F>>,
}

impl<F: Field> OperatorSpace<F> {
    pub fn new(
        source: Arc<Presentation<F>>,
        target: Arc<Presentation<F>>,
        n: usize,
    ) -> Result<Self> {
        if !Arc::ptr_eq(source.ring(), target.ring())
            && source.ring().relations() != target.ring().relations()
        {
            return Err(AlgError::ModuleMismatch(
                "source and target live over different rings".into(),
            ));
        }
        let parts = principal_parts_of(&source, n)?;
        let resolution = free_resolution(&parts.presentation, 1)?;
        Ok(OperatorSpace {
            parts,
            resolution,
            source,
            target,
        })
    }

    pub fn order(&self) -> usize {
        self.parts.order
    }

    pub fn ring(&self) -> &Arc<GradedRing<F>> {
        self.source.ring()
    }

    pub fn source(&self) -> &Arc<Presentation<F>> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Presentation<F>> {
        &self.target
    }

    pub fn cell(&self, k: i32) -> Result<ExtCell<F>> {
        ext_cell(&self.resolution, &self.target, 0, k)
    }

    /// `dim_K [D^n(M, N)]_k`.
    pub fn dim(&self, k: i32) -> Result<usize> {
        Ok(self.cell(k)?.dim)
    }

    /// Minimal generator degrees of `P^n(M)`.
    pub fn generator_degrees(&self) -> Vec<i32> {
        self.resolution.degrees(0)
    }

    /// The operator whose homomorphism has coordinates `z` in
    /// `Hom(F_0, N)_k`, `F_0` the minimal cover of `P^n(M)`.
    pub fn operator(self: &Arc<Self>, k: i32, z: &[(usize, F::Elem)]) -> Result<DiffOperator<F>> {
        let values = hom_values(&self.resolution, &self.target, k, z)?;
        Ok(DiffOperator {
            space: self.clone(),
            degree: k,
            values,
        })
    }

    /// A basis of `[D^n(M, N)]_k`.
    pub fn basis(self: &Arc<Self>, k: i32) -> Result<Vec<DiffOperator<F>>> {
        self.cell(k)?
            .reps
            .iter()
            .map(|z| self.operator(k, z))
            .collect()
    }

    /// The operator with prescribed values on the generators `u^α e_j` of
    /// `P^n(M)`. Fails with `NotWellDefined` unless the values satisfy the
    /// relations of `P^n(M)`.
    pub fn operator_from_values(
        self: &Arc<Self>,
        k: i32,
        values: Vec<Vector<F>>,
    ) -> Result<DiffOperator<F>> {
        let pres = &self.parts.presentation;
        if values.len() != pres.rank() {
            return Err(AlgError::ModuleMismatch(format!(
                "{} values for {} generators",
                values.len(),
                pres.rank()
            )));
        }
        let f = self.ring().field();
        let s = self.target.rank();
        let values: Vec<Vector<F>> = values
            .iter()
            .map(|v| self.target.normal_form(v))
            .collect::<Result<_>>()?;
        for (l, rel) in pres.relations().iter().enumerate() {
            let mut acc = zero_vector(s);
            for (c, v) in rel.iter().zip(&values) {
                if !c.is_zero() {
                    acc = add_vectors(f, &acc, &scale_vector(f, c, v));
                }
            }
            if !self.target.is_zero_element(&acc)? {
                return Err(AlgError::NotWellDefined(format!(
                    "values violate relation {l} of the principal parts of order {}",
                    self.order()
                )));
            }
        }
        Ok(DiffOperator {
            space: self.clone(),
            degree: k,
            values,
        })
    }
}

/// A homogeneous differential operator `δ = φ ∘ d` with
/// `φ ∈ Hom_R(P^n(M), N)_k`.
#[derive(Clone)]
pub struct DiffOperator<F: Field> {
    pub space: Arc<OperatorSpace<F>>,
    pub degree: i32,
    /// `φ(u^α e_j)` in normal form, indexed like the generators of `P^n(M)`.
    pub values: Vec<Vector<F>>,
}

impl<F: Field> std::fmt::Debug for DiffOperator<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "DiffOperator(order {}, degree {})",
            self.order(),
            self.degree
        )
    }
}

impl<F: Field> DiffOperator<F> {
    pub fn order(&self) -> usize {
        self.space.order()
    }

    /// `δ(m)` for `m` over the generators of the source, in normal form.
    pub fn apply(&self, m: &[Poly<F>]) -> Result<Vector<F>> {
        let source = self.space.source();
        if m.len() != source.rank() {
            return Err(AlgError::ModuleMismatch(format!(
                "element of length {} for rank {}",
                m.len(),
                source.rank()
            )));
        }
        let f = self.space.ring().field();
        let target = self.space.target();
        let dm = self.space.parts.universal(m);
        let mut acc = zero_vector(target.rank());
        for (c, v) in dm.iter().zip(&self.values) {
            if !c.is_zero() && !v.iter().all(|p| p.is_zero()) {
                acc = add_vectors(f, &acc, &scale_vector(f, c, v));
            }
        }
        target.normal_form(&acc)
    }

    /// `δ(f)` for `M = N = R`.
    pub fn apply_scalar(&self, p: &Poly<F>) -> Result<Poly<F>> {
        Ok(self.apply(std::slice::from_ref(p))?.swap_remove(0))
    }

    /// Coordinates in the cell of `Hom(F_0, N)_k`.
    pub fn coordinates(&self) -> Result<SparseVec<F::Elem>> {
        hom_coordinates(
            &self.space.resolution,
            self.space.target(),
            self.degree,
            &self.values,
        )
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.iter().all(|p| p.is_zero()))
    }
}

/// Exact graded dimensions of `D^n(M, N)`, keyed by `(order, degree)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, serde::Serialize)]
pub struct OperatorTable {
    pub cells: BTreeMap<(usize, i32), usize>,
}

impl OperatorTable {
    pub fn get(&self, n: usize, k: i32) -> Option<usize> {
        self.cells.get(&(n, k)).copied()
    }

    /// Sum over the degrees of the window at order `n`.
    pub fn total(&self, n: usize) -> usize {
        self.cells
            .iter()
            .filter(|((m, _), _)| *m == n)
            .map(|(_, d)| d)
            .sum()
    }

    /// `dim [D^n]_k <= dim [D^{n+1}]_k` wherever both cells are present.
    pub fn is_monotone(&self) -> bool {
        self.cells
            .iter()
            .all(|(&(n, k), &d)| self.get(n + 1, k).is_none_or(|e| d <= e))
    }
}

/// Operators of every order up to `n` in the degrees `lo..=hi`, with the
/// basis at order `n`.
pub struct DiffOps<F: Field> {
    pub table: OperatorTable,
    pub spaces: Vec<Arc<OperatorSpace<F>>>,
}

impl<F: Field> DiffOps<F> {
    pub fn top(&self) -> &Arc<OperatorSpace<F>> {
        self.spaces.last().expect("order 0 is always present")
    }

    pub fn basis(&self, k: i32) -> Result<Vec<DiffOperator<F>>> {
        self.top().basis(k)
    }
}

pub fn diff_ops<F: Field>(
    m: &Arc<Presentation<F>>,
    n_target: &Arc<Presentation<F>>,
    n: usize,
    window: (i32, i32),
) -> Result<DiffOps<F>> {
    use rayon::prelude::*;
    let spaces: Vec<Arc<OperatorSpace<F>>> = (0..=n)
        .into_par_iter()
        .map(|i| OperatorSpace::new(m.clone(), n_target.clone(), i).map(Arc::new))
        .collect::<Result<_>>()?;
    let cells: Vec<((usize, i32), usize)> = spaces
        .par_iter()
        .flat_map_iter(|s| (window.0..=window.1).map(move |k| (s.clone(), k)))
        .map(|(s, k)| Ok(((s.order(), k), s.dim(k)?)))
        .collect::<Result<_>>()?;
    Ok(DiffOps {
        table: OperatorTable {
            cells: cells.into_iter().collect(),
        },
        spaces,
    })
}

/// Values on the original generators of the homomorphism with coordinates
/// `z` in `Hom(F_0, N)_k`, where `res` resolves the source.
pub fn hom_values<F: Field>(
    res: &Resolution<F>,
    target: &Presentation<F>,
    k: i32,
    z: &[(usize, F::Elem)],
) -> Result<Vec<Vector<F>>> {
    let degrees = res.degrees(0);
    let space = hom_space(&degrees, target, k)?;
    let mut on_min = Vec::with_capacity(degrees.len());
    for (g, a) in degrees.iter().enumerate() {
        let lo = space.offsets[g];
        let hi = lo + target.dim(a + k)?;
        on_min.push(target.from_coords(a + k, &slot(z, lo, hi))?);
    }
    let f = target.field();
    let mut values = Vec::with_capacity(res.pruned.old_to_new.len());
    for img in &res.pruned.old_to_new {
        let mut acc = zero_vector(target.rank());
        for (c, v) in img.iter().zip(&on_min) {
            if !c.is_zero() {
                acc = add_vectors(f, &acc, &scale_vector(f, c, v));
            }
        }
        values.push(target.normal_form(&acc)?);
    }
    Ok(values)
}

/// Inverse of [`hom_values`]: coordinates in `Hom(F_0, N)_k` of a
/// homomorphism given on the original generators.
pub fn hom_coordinates<F: Field>(
    res: &Resolution<F>,
    target: &Presentation<F>,
    k: i32,
    values: &[Vector<F>],
) -> Result<SparseVec<F::Elem>> {
    let degrees = res.degrees(0);
    let space = hom_space(&degrees, target, k)?;
    let mut out = Vec::new();
    for (g, &old) in res.pruned.kept.iter().enumerate() {
        for (i, c) in target.coords(&values[old])? {
            out.push((i + space.offsets[g], c));
        }
    }
    Ok(out)
}

/// Coordinates of `Hom(F_0, N)_k` restricted to one generator slot.
pub(crate) fn slot<E: Clone>(z: &[(usize, E)], lo: usize, hi: usize) -> SparseVec<E> {
    z.iter()
        .filter(|(i, _)| *i >= lo && *i < hi)
        .map(|(i, c)| (i - lo, c.clone()))
        .collect()
}
