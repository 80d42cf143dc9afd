//! Cell-by-cell comparisons of two direct limits.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::{enveloping, principal_parts, CanonicalModule, PresentedAlgebra};
use crate::error::Result;
use crate::exactalg::{Field, Poly};
use crate::groebner::{
    ext_cell, free_resolution, hom_presentation, zero_vector, GradedRing, Presentation,
};

use super::colimit::{
    local_cohomology, principal_system, svdb, ColimitCell, ColimitTable, Direction,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Match,
    Mismatch,
    /// Some side has not stabilized at the given bounds.
    Inconclusive,
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct CellComparison {
    pub index: usize,
    pub degree: i32,
    pub lhs: ColimitCell,
    pub rhs: ColimitCell,
    /// Agreement of the dimensions at each pair of aligned stages.
    pub stagewise: Vec<bool>,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct ComparisonReport {
    pub lhs_stages: Vec<usize>,
    pub rhs_stages: Vec<usize>,
    /// Internal degree minus reported degree on both sides.
    pub degree_shift: i32,
    pub cells: Vec<CellComparison>,
}

impl ComparisonReport {
    pub fn cell(&self, i: usize, k: i32) -> Option<&CellComparison> {
        self.cells.iter().find(|c| c.index == i && c.degree == k)
    }

    /// No mismatches, and every stable cell pair agrees.
    pub fn consistent(&self) -> bool {
        self.cells.iter().all(|c| c.verdict != Verdict::Mismatch)
    }

    /// Every aligned stage agrees in every cell.
    pub fn stagewise_agree(&self) -> bool {
        self.cells.iter().all(|c| c.stagewise.iter().all(|&b| b))
    }
}

pub fn verdict(lhs: &ColimitCell, rhs: &ColimitCell) -> Verdict {
    if !lhs.is_stable() || !rhs.is_stable() {
        Verdict::Inconclusive
    } else if lhs.dim == rhs.dim {
        Verdict::Match
    } else {
        Verdict::Mismatch
    }
}

/// Pairs the cells of two tables with equal keys; stage `s` of one side is
/// aligned with stage `s` of the other.
pub fn compare_tables(
    lhs: &ColimitTable,
    rhs: &ColimitTable,
    degree_shift: i32,
) -> ComparisonReport {
    let cells = lhs
        .cells
        .iter()
        .filter_map(|(key, l)| {
            let r = rhs.cells.get(key)?;
            let stagewise = l.dims.iter().zip(&r.dims).map(|(a, b)| a == b).collect();
            Some(CellComparison {
                index: key.0,
                degree: key.1,
                lhs: l.clone(),
                rhs: r.clone(),
                stagewise,
                verdict: verdict(l, r),
            })
        })
        .collect();
    ComparisonReport {
        lhs_stages: lhs.stages.clone(),
        rhs_stages: rhs.stages.clone(),
        degree_shift,
        cells,
    }
}

/// `ω_R ⊠ ω_R` over `P` in the `(x, u)` coordinates.
pub fn exterior_square<F: Field>(
    omega: &Presentation<F>,
    p: &Arc<GradedRing<F>>,
) -> Result<Presentation<F>> {
    let f = p.field();
    let v = omega.ring().nvars();
    let shifted: Vec<Poly<F>> = (0..v).map(|i| p.var(i).add(&p.var(v + i), f)).collect();
    let r = omega.rank();
    let degrees: Vec<i32> = omega
        .degrees()
        .iter()
        .flat_map(|a| omega.degrees().iter().map(move |b| a + b))
        .collect();
    let mut relations = Vec::new();
    for rho in omega.relations() {
        for h in 0..r {
            let mut vec = zero_vector(r * r);
            for (g, e) in rho.iter().enumerate() {
                vec[g * r + h] = e.clone();
            }
            relations.push(vec);
        }
        for g in 0..r {
            let mut vec = zero_vector(r * r);
            for (h, e) in rho.iter().enumerate() {
                vec[g * r + h] = e.substitute(&shifted, f);
            }
            relations.push(vec);
        }
    }
    Presentation::new(p.clone(), degrees, relations)
}

/// Reported degree `k` is internal degree `k + shift`, with `shift` the
/// smallest generator degree of `ω_R`; for `ω_R ≅ R(a)` this identifies
/// `Ext^i(P^n, ω_R)` with `Ext^i(P^n, R)` in operator degree.
pub fn omega_shift<F: Field>(omega: &CanonicalModule<F>) -> i32 {
    omega
        .presentation
        .degrees()
        .iter()
        .copied()
        .min()
        .unwrap_or(0)
}

/// `R^i D(ω_R)` against `H^{d+i}_Δ(ω_P)` with stage `n` aligned to
/// `t = n + 1`, for each `i` in `indices`.
pub fn theorem_a_compare<F: Field>(
    r: &PresentedAlgebra<F>,
    indices: &[usize],
    window: (i32, i32),
    n_max: usize,
) -> Result<ComparisonReport> {
    let omega = r.canonical()?;
    let shift = omega_shift(&omega);
    let internal = (window.0 + shift, window.1 + shift);
    let d = r.dimension();
    let lhs = svdb(r, &omega.presentation, indices, internal, n_max)?;
    let env = enveloping(r)?;
    let omega_p = exterior_square(&omega.presentation, &env.ring_xu)?;
    let rhs_indices: Vec<usize> = indices.iter().map(|i| d + i).collect();
    let rhs = local_cohomology(
        &env.ring_xu,
        &env.diagonal_xu(),
        &omega_p,
        &rhs_indices,
        internal,
        n_max + 1,
    )?;
    let lhs = lhs.rekey(|i, k| (i, k - shift));
    let rhs = rhs.rekey(|i, k| (i - d, k - shift));
    Ok(compare_tables(&lhs, &rhs, shift))
}

/// At fixed order `n`: `Ext^i_R(P^n, ω)` against
/// `H^{i+1}_{R_+}(Hom_R(P^n, ω))`, `t <= t_max`.
pub fn horrocks_check<F: Field>(
    r: &PresentedAlgebra<F>,
    n: usize,
    indices: &[usize],
    window: (i32, i32),
    t_max: usize,
) -> Result<ComparisonReport> {
    let omega = r.canonical()?;
    let parts = principal_parts(r, n)?;
    let max = indices.iter().copied().max().unwrap_or(0);
    let res = free_resolution(&parts.presentation, max + 1)?;
    let mut cells = BTreeMap::new();
    for &i in indices {
        for k in window.0..=window.1 {
            cells.insert(
                (i, k),
                ColimitCell::exact(ext_cell(&res, &omega.presentation, i, k)?.dim),
            );
        }
    }
    let lhs = ColimitTable {
        direction: Direction::Order,
        stages: vec![n],
        cells,
    };
    let hom_module = hom_presentation(&parts.presentation, &omega.presentation)?;
    let hom = hom_module.presentation();
    let vars: Vec<Poly<F>> = (0..r.nvars()).map(|i| r.ring().var(i)).collect();
    let rhs_indices: Vec<usize> = indices.iter().map(|i| i + 1).collect();
    let rhs = local_cohomology(r.ring(), &vars, hom, &rhs_indices, window, t_max)?
        .rekey(|i, k| (i - 1, k));
    Ok(compare_tables(&lhs, &rhs, 0))
}

/// First syzygy module of `m`.
pub fn syzygy_module<F: Field>(m: &Presentation<F>) -> Result<Presentation<F>> {
    let res = free_resolution(m, 2)?;
    let degrees = res.degrees(1);
    let relations = if res.len() >= 2 {
        res.maps[1].cols.clone()
    } else {
        Vec::new()
    };
    Presentation::new(m.ring().clone(), degrees, relations)
}

/// `R^i D(M)` against `R^{i+1} D(syz M)` for `i` in `s+1..=s+2`.
pub fn vanishing_propagation_check<F: Field>(
    r: &PresentedAlgebra<F>,
    m: &Presentation<F>,
    s: usize,
    window: (i32, i32),
    n_max: usize,
) -> Result<ComparisonReport> {
    let syz = syzygy_module(m)?;
    let indices = [s + 1, s + 2];
    let shifted = [s + 2, s + 3];
    let system = principal_system(r, n_max)?.resolve(s + 3)?;
    let lhs = system.table(m, &indices, window)?;
    let rhs = system
        .table(&syz, &shifted, window)?
        .rekey(|i, k| (i - 1, k));
    Ok(compare_tables(&lhs, &rhs, 0))
}
