//! Direct limits `colim_s Ext^i(Q_s, M)` along surjections `Q_{s+1} -> Q_s`.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;

use crate::algebra::{ideal_power, principal_parts, PresentedAlgebra};
use crate::error::{AlgError, Result};
use crate::exactalg::{Field, Poly};
use crate::groebner::{
    ext_cell, free_resolution, induced_rank, lift_chain_map, map_on_generators, unit_vector,
    ExtCell, FreeMap, GradedRing, Presentation, Resolution, Vector,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// Over the powers `J^t` of an ideal.
    DeltaPowers,
    /// Over the principal parts `P^n`.
    Order,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Stability {
    /// Equal dimensions from stage `s` (by label) through the last computed
    /// stage, at least three stages, with isomorphic transitions.
    Stable(usize),
    Unstable,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct ColimitCell {
    /// Dimension at each stage.
    pub dims: Vec<usize>,
    /// Rank of the transition from each stage to the next.
    pub ranks: Vec<usize>,
    pub stability: Stability,
    /// The stable dimension, or the last computed one.
    pub dim: usize,
}

impl ColimitCell {
    /// A cell of a constant system.
    pub fn exact(dim: usize) -> Self {
        ColimitCell {
            dims: vec![dim],
            ranks: Vec::new(),
            stability: Stability::Stable(0),
            dim,
        }
    }

    /// Stable from the first stage after which the dimension stays constant
    /// with isomorphic transitions through the last computed stage, provided
    /// that run covers at least three stages.
    fn from_stages(labels: &[usize], dims: Vec<usize>, ranks: Vec<usize>) -> Self {
        let last = dims.len() - 1;
        let mut start = last;
        while start > 0 && dims[start - 1] == dims[last] && ranks[start - 1] == dims[last] {
            start -= 1;
        }
        let stable = (last >= start + 2).then_some(start);
        let stability = stable.map_or(Stability::Unstable, |s| Stability::Stable(labels[s]));
        let dim = dims[last];
        ColimitCell {
            dims,
            ranks,
            stability,
            dim,
        }
    }

    pub fn is_stable(&self) -> bool {
        matches!(self.stability, Stability::Stable(_))
    }
}

/// Cells keyed by `(cohomological index, degree)`.
#[derive(Clone, Debug)]
pub struct ColimitTable {
    pub direction: Direction,
    /// Stage labels (`t` or `n`).
    pub stages: Vec<usize>,
    pub cells: BTreeMap<(usize, i32), ColimitCell>,
}

impl ColimitTable {
    pub fn cell(&self, i: usize, k: i32) -> Option<&ColimitCell> {
        self.cells.get(&(i, k))
    }

    /// Relabels the cells through `f`.
    pub fn rekey(self, f: impl Fn(usize, i32) -> (usize, i32)) -> Self {
        let cells = self
            .cells
            .into_iter()
            .map(|((i, k), c)| (f(i, k), c))
            .collect();
        ColimitTable { cells, ..self }
    }
}

/// `Q_{s_0} <- Q_{s_0+1} <- ...` with the images of the generators of each
/// stage in the previous one.
pub struct DirectSystem<F: Field> {
    pub direction: Direction,
    pub labels: Vec<usize>,
    pub stages: Vec<Presentation<F>>,
    pub transitions: Vec<Vec<Vector<F>>>,
}

/// Resolutions of all stages with lifted transitions, reusable for several
/// targets.
pub struct ResolvedSystem<F: Field> {
    pub direction: Direction,
    pub labels: Vec<usize>,
    pub resolutions: Vec<Resolution<F>>,
    /// `chains[s][i] : F^{(s+1)}_i -> F^{(s)}_i`.
    pub chains: Vec<Vec<FreeMap<F>>>,
    pub max_index: usize,
}

impl<F: Field> DirectSystem<F> {
    pub fn resolve(self, max_index: usize) -> Result<ResolvedSystem<F>> {
        let resolutions: Vec<Resolution<F>> = self
            .stages
            .par_iter()
            .map(|q| free_resolution(q, max_index + 1))
            .collect::<Result<_>>()?;
        let chains = (0..resolutions.len().saturating_sub(1))
            .into_par_iter()
            .map(|s| {
                let (lower, upper) = (&resolutions[s], &resolutions[s + 1]);
                let phi0 = map_on_generators(upper, lower, &self.transitions[s]);
                lift_chain_map(upper, lower, phi0, max_index)
            })
            .collect::<Result<_>>()?;
        Ok(ResolvedSystem {
            direction: self.direction,
            labels: self.labels,
            resolutions,
            chains,
            max_index,
        })
    }
}

impl<F: Field> ResolvedSystem<F> {
    /// `colim Ext^i(Q_s, m)_k` for the given indices and degrees `lo..=hi`.
    pub fn table(
        &self,
        m: &Presentation<F>,
        indices: &[usize],
        window: (i32, i32),
    ) -> Result<ColimitTable> {
        if let Some(&i) = indices.iter().find(|&&i| i > self.max_index) {
            return Err(AlgError::InfeasibleBound(format!(
                "index {i} exceeds the resolved length {}",
                self.max_index
            )));
        }
        let keys: Vec<(usize, i32)> = indices
            .iter()
            .flat_map(|&i| (window.0..=window.1).map(move |k| (i, k)))
            .collect();
        let cells = keys
            .par_iter()
            .map(|&(i, k)| Ok(((i, k), self.cell(m, i, k)?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        Ok(ColimitTable {
            direction: self.direction,
            stages: self.labels.clone(),
            cells,
        })
    }

    fn cell(&self, m: &Presentation<F>, i: usize, k: i32) -> Result<ColimitCell> {
        let cells: Vec<ExtCell<F>> = self
            .resolutions
            .iter()
            .map(|r| ext_cell(r, m, i, k))
            .collect::<Result<_>>()?;
        let ranks = (0..cells.len().saturating_sub(1))
            .map(|s| induced_rank(&self.chains[s][i], &cells[s], &cells[s + 1], m))
            .collect::<Result<Vec<_>>>()?;
        Ok(ColimitCell::from_stages(
            &self.labels,
            cells.iter().map(|c| c.dim).collect(),
            ranks,
        ))
    }
}

/// `T/J^t` for `t = 1..=t_max` with the canonical surjections.
pub fn power_system<F: Field>(
    ring: &Arc<GradedRing<F>>,
    ideal: &[Poly<F>],
    t_max: usize,
) -> Result<DirectSystem<F>> {
    if let Some(g) = ideal
        .iter()
        .find(|g| g.homogeneous_degree().is_none_or(|d| d <= 0))
    {
        return Err(AlgError::InvalidRing(format!(
            "ideal generator {} is not homogeneous of positive degree",
            g.fmt_with(ring.names())
        )));
    }
    let f = ring.field();
    let stages = (1..=t_max)
        .into_par_iter()
        .map(|t| Presentation::cyclic(ring.clone(), &ideal_power(ring, ideal, t)?))
        .collect::<Result<Vec<_>>>()?;
    let transitions = (1..t_max).map(|_| vec![unit_vector(f, 1, 0)]).collect();
    Ok(DirectSystem {
        direction: Direction::DeltaPowers,
        labels: (1..=t_max).collect(),
        stages,
        transitions,
    })
}

/// `P^n` for `n = 0..=n_max` with the projections.
pub fn principal_system<F: Field>(
    r: &PresentedAlgebra<F>,
    n_max: usize,
) -> Result<DirectSystem<F>> {
    let parts = (0..=n_max)
        .into_par_iter()
        .map(|n| principal_parts(r, n))
        .collect::<Result<Vec<_>>>()?;
    let transitions = (0..n_max)
        .map(|n| parts[n + 1].projection_to(&parts[n]))
        .collect();
    let stages = parts.into_iter().map(|p| p.presentation).collect();
    Ok(DirectSystem {
        direction: Direction::Order,
        labels: (0..=n_max).collect(),
        stages,
        transitions,
    })
}

/// `H^i_J(M)` as `colim_t Ext^i_T(T/J^t, M)`, `t <= t_max`.
pub fn local_cohomology<F: Field>(
    ring: &Arc<GradedRing<F>>,
    ideal: &[Poly<F>],
    m: &Presentation<F>,
    indices: &[usize],
    window: (i32, i32),
    t_max: usize,
) -> Result<ColimitTable> {
    if !Arc::ptr_eq(m.ring(), ring) {
        return Err(AlgError::ModuleMismatch(
            "module and ideal live over different rings".into(),
        ));
    }
    let max = indices.iter().copied().max().unwrap_or(0);
    power_system(ring, ideal, t_max)?
        .resolve(max)?
        .table(m, indices, window)
}

/// `R^i D(M) = colim_n Ext^i_R(P^n, M)`, `n <= n_max`.
pub fn svdb<F: Field>(
    r: &PresentedAlgebra<F>,
    m: &Presentation<F>,
    indices: &[usize],
    window: (i32, i32),
    n_max: usize,
) -> Result<ColimitTable> {
    let max = indices.iter().copied().max().unwrap_or(0);
    principal_system(r, n_max)?
        .resolve(max)?
        .table(m, indices, window)
}
