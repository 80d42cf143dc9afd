//! Left and right module structures on operators, and the depth probe.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::PresentedAlgebra;
use crate::diffops::{DiffOperator, OperatorSpace};
use crate::error::Result;
use crate::exactalg::Field;
use crate::groebner::{add_vectors, scale_vector, zero_vector, Vector};
use crate::linalg::{rank, SparseVec};

use super::colimit::{svdb, Stability};

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct LeftRightReport {
    pub order: usize,
    /// `dim [D^n(R,R)]_k` on the window.
    pub hilbert: Vec<(i32, usize)>,
    /// Number of minimal generators in each degree of the window.
    pub left: Vec<(i32, usize)>,
    pub right: Vec<(i32, usize)>,
}

impl LeftRightReport {
    pub fn left_count(&self) -> usize {
        self.left.iter().map(|x| x.1).sum()
    }

    pub fn right_count(&self) -> usize {
        self.right.iter().map(|x| x.1).sum()
    }

    pub fn identical(&self) -> bool {
        self.left == self.right
    }
}

/// `φ ↦ x_i φ` (left) or `φ ↦ φ(x_i' ·)` (right), on values.
fn act<F: Field>(op: &DiffOperator<F>, i: usize, right: bool) -> Result<Vec<Vector<F>>> {
    let space = &op.space;
    let ring = space.ring();
    let f = ring.field();
    let target = space.target();
    if !right {
        let x = ring.var(i);
        return op
            .values
            .iter()
            .map(|v| target.normal_form(&scale_vector(f, &x, v)))
            .collect();
    }
    space
        .parts
        .right_multiplication(i)
        .iter()
        .map(|img| {
            let mut acc = zero_vector(target.rank());
            for (c, v) in img.iter().zip(&op.values) {
                if !c.is_zero() {
                    acc = add_vectors(f, &acc, &scale_vector(f, c, v));
                }
            }
            target.normal_form(&acc)
        })
        .collect()
}

/// Minimal generator counts of `D^n(R, R)` under the left and the right
/// structure: `dim X_k - dim (X R_+)_k` in every degree of the window.
pub fn left_right_compare<F: Field>(
    r: &PresentedAlgebra<F>,
    n: usize,
    window: (i32, i32),
) -> Result<LeftRightReport> {
    let m = Arc::new(r.free_module(0));
    let space = Arc::new(OperatorSpace::new(m.clone(), m, n)?);
    let f = r.field().clone();
    let weights = r.weights().to_vec();
    let (lo, hi) = window;
    let mut bases: BTreeMap<i32, Vec<DiffOperator<F>>> = BTreeMap::new();
    for k in lo..=hi {
        bases.insert(k, space.basis(k)?);
    }
    let mut hilbert = Vec::new();
    let mut left = Vec::new();
    let mut right = Vec::new();
    for k in lo..=hi {
        let dim = bases[&k].len();
        hilbert.push((k, dim));
        for (out, is_right) in [(&mut left, false), (&mut right, true)] {
            let mut images: Vec<SparseVec<F::Elem>> = Vec::new();
            for (i, w) in weights.iter().enumerate() {
                let Some(lower) = bases.get(&(k - w)) else {
                    continue;
                };
                for op in lower {
                    let values = act(op, i, is_right)?;
                    images.push(space.operator_from_values(k, values)?.coordinates()?);
                }
            }
            out.push((k, dim - rank(&f, &images)));
        }
    }
    Ok(LeftRightReport {
        order: n,
        hilbert,
        left,
        right,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DepthReport {
    /// `R^i D(R)` has a nonzero stable cell at `index`; the implied depth.
    Implied { index: usize, depth: usize },
    /// All cells vanish stably for `0 < i <= i_max`.
    NoObstruction { i_max: usize, depth_at_least: usize },
    /// Some cell at `index` did not stabilize and no earlier index decided.
    Inconclusive { index: usize },
}

/// Scans `R^i D(R)` for `0 < i <= i_max` on the window.
pub fn depth_probe<F: Field>(
    r: &PresentedAlgebra<F>,
    window: (i32, i32),
    i_max: usize,
    n_max: usize,
) -> Result<DepthReport> {
    let d = r.dimension();
    let m = r.free_module(0);
    let indices: Vec<usize> = (1..=i_max).collect();
    let table = svdb(r, &m, &indices, window, n_max)?;
    for &i in &indices {
        let cells: Vec<_> = table
            .cells
            .range((i, window.0)..=(i, window.1))
            .map(|(_, c)| c)
            .collect();
        if cells.iter().any(|c| c.is_stable() && c.dim > 0) {
            return Ok(DepthReport::Implied {
                index: i,
                depth: (i + 1).min(d),
            });
        }
        if cells.iter().any(|c| c.stability == Stability::Unstable) {
            return Ok(DepthReport::Inconclusive { index: i });
        }
    }
    Ok(DepthReport::NoObstruction {
        i_max,
        depth_at_least: (i_max + 1).min(d),
    })
}
