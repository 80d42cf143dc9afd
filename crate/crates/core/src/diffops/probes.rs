//! Operators into the residue field and the D-simplicity probe.

use std::sync::Arc;

use crate::algebra::PresentedAlgebra;
use crate::error::Result;
use crate::exactalg::{Field, Poly};
use crate::groebner::Presentation;
use crate::linalg::rank;

use super::operator::{diff_ops, DiffOps, OperatorSpace};

/// `D^n(M, K)` for the residue field `K = R/R_+`, orders `0..=n`.
pub fn residue_operators<F: Field>(
    r: &PresentedAlgebra<F>,
    m: &Arc<Presentation<F>>,
    n: usize,
    window: (i32, i32),
) -> Result<DiffOps<F>> {
    diff_ops(m, &Arc::new(r.residue_field()), n, window)
}

/// Surjectivity of `[D^n(R,R)]_k -> [D^n(R,K)]_k` in one degree.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct SimplicityCell {
    pub degree: i32,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub enum DSimplicity {
    SimpleUpToBound,
    /// The first degree (from 0 downwards) where the map is not onto.
    Obstruction {
        degree: i32,
        cokernel: usize,
    },
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct DSimplicityReport {
    pub order: usize,
    pub depth: i32,
    pub cells: Vec<SimplicityCell>,
    pub verdict: DSimplicity,
}

/// Composes every operator `R -> R` of order `n` and degree `-depth..=0`
/// with `π : R -> K` and compares with `D^n(R, K)`.
pub fn d_simplicity_probe<F: Field>(
    r: &PresentedAlgebra<F>,
    n: usize,
    depth: i32,
) -> Result<DSimplicityReport> {
    let rr = Arc::new(r.free_module(0));
    let k_mod = Arc::new(r.residue_field());
    let to_r = Arc::new(OperatorSpace::new(rr.clone(), rr, n)?);
    let to_k = Arc::new(OperatorSpace::new(Arc::new(r.free_module(0)), k_mod, n)?);
    let f = r.field().clone();
    let mut cells = Vec::new();
    for k in (-depth..=0).rev() {
        let target_dim = to_k.dim(k)?;
        let basis = to_r.basis(k)?;
        let mut images = Vec::with_capacity(basis.len());
        for op in &basis {
            let values = op
                .values
                .iter()
                .map(|v| vec![Poly::constant(&f, v[0].constant_term(&f))])
                .collect::<Vec<_>>();
            images.push(to_k.operator_from_values(k, values)?.coordinates()?);
        }
        cells.push(SimplicityCell {
            degree: k,
            source_dim: basis.len(),
            target_dim,
            rank: rank(&f, &images),
        });
    }
    let verdict = cells
        .iter()
        .find(|c| c.rank < c.target_dim)
        .map(|c| DSimplicity::Obstruction {
            degree: c.degree,
            cokernel: c.target_dim - c.rank,
        })
        .unwrap_or(DSimplicity::SimpleUpToBound);
    Ok(DSimplicityReport {
        order: n,
        depth,
        cells,
        verdict,
    })
}
