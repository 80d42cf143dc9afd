//! Hom and Ext into a presented module, degree by degree and as modules.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::Result;
use crate::exactalg::{Field, Poly};
use crate::linalg::{add_scaled, apply, kernel, to_sparse, Echelon, SparseVec};

use super::module::{
    kernel_over_ring, unit_vector, vector_degree, zero_vector, Presentation, Vector,
};
use super::order::ModMon;
use super::resolution::{free_resolution, FreeMap, Resolution};

/// Coordinates of `Hom(F, N)_k = ⊕_g N_{a_g + k}`.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub offsets: Vec<usize>,
    pub total: usize,
}

pub fn hom_space<F: Field>(degrees: &[i32], n: &Presentation<F>, k: i32) -> Result<HomSpace> {
    let mut offsets = Vec::with_capacity(degrees.len());
    let mut total = 0;
    for a in degrees {
        offsets.push(total);
        total += n.dim(a + k)?;
    }
    Ok(HomSpace { offsets, total })
}

/// Matrix of `ψ ↦ ψ ∘ φ` from `Hom(target(φ), N)_k` to `Hom(source(φ), N)_k`,
/// as the images of the standard basis.
pub fn dual_map<F: Field>(
    phi: &FreeMap<F>,
    n: &Presentation<F>,
    k: i32,
) -> Result<Vec<SparseVec<F::Elem>>> {
    let f = n.field();
    let src = hom_space(&phi.source, n, k)?;
    let mut rows: Vec<Vec<(usize, &Poly<F>)>> = vec![Vec::new(); phi.target.len()];
    for (s, col) in phi.cols.iter().enumerate() {
        for (t, e) in col.iter().enumerate() {
            if !e.is_zero() {
                rows[t].push((s, e));
            }
        }
    }
    let mut out = Vec::new();
    for (t, a) in phi.target.iter().enumerate() {
        let piece = n.piece(a + k)?;
        for mm in piece.monos.iter() {
            let mut acc = BTreeMap::new();
            for (s, r) in &rows[t] {
                for (delta, c) in r.terms() {
                    let nf = n.mono_coords(&ModMon {
                        comp: mm.comp,
                        mon: mm.mon.mul(delta),
                    })?;
                    let shifted: SparseVec<F::Elem> = nf
                        .iter()
                        .map(|(i, x)| (i + src.offsets[*s], x.clone()))
                        .collect();
                    add_scaled(f, &mut acc, c, &shifted);
                }
            }
            out.push(to_sparse(acc));
        }
    }
    Ok(out)
}

/// One graded piece of `Ext^i(M, N)` with the data needed for induced maps.
#[derive(Clone, Debug)]
pub struct ExtCell<F: Field> {
    pub index: usize,
    pub degree: i32,
    pub dim: usize,
    pub hom_dim: usize,
    /// Cocycles in `Hom(F_i, N)_k` whose classes form a basis.
    pub reps: Vec<SparseVec<F::Elem>>,
    /// Spanning set of the coboundaries.
    pub boundaries: Vec<SparseVec<F::Elem>>,
}

/// `Ext^i(M, N)_k` where `res` resolves `M`; the resolution must already
/// reach `d_{i+1}` (see [`Resolution::extend`]).
pub fn ext_cell<F: Field>(
    res: &Resolution<F>,
    n: &Presentation<F>,
    i: usize,
    k: i32,
) -> Result<ExtCell<F>> {
    let f = n.field().clone();
    let fi = res.degrees(i);
    let space = hom_space(&fi, n, k)?;
    let cocycles = if space.total == 0 {
        Vec::new()
    } else {
        let next = res.map(i + 1)?;
        if next.source.is_empty() {
            (0..space.total).map(|j| vec![(j, f.one())]).collect()
        } else {
            kernel(&f, &dual_map(&next, n, k)?)
        }
    };
    let boundaries = if i == 0 || space.total == 0 {
        Vec::new()
    } else {
        dual_map(&res.map(i)?, n, k)?
    };
    let mut ech = Echelon::new(f.clone());
    for b in &boundaries {
        ech.insert(b);
    }
    let reps: Vec<_> = cocycles
        .into_iter()
        .filter(|z| ech.insert(z).is_none())
        .collect();
    Ok(ExtCell {
        index: i,
        degree: k,
        dim: reps.len(),
        hom_dim: space.total,
        reps,
        boundaries,
    })
}

/// Rank of the map `Ext^i(M, N)_k -> Ext^i(M', N)_k` induced by a chain map
/// component `phi_i : F'_i -> F_i`.
pub fn induced_rank<F: Field>(
    phi_i: &FreeMap<F>,
    target_cell: &ExtCell<F>,
    source_cell: &ExtCell<F>,
    n: &Presentation<F>,
) -> Result<usize> {
    if target_cell.dim == 0 || source_cell.dim == 0 {
        return Ok(0);
    }
    let f = n.field().clone();
    let images = dual_map(phi_i, n, target_cell.degree)?;
    let mut ech = Echelon::new(f.clone());
    for b in &source_cell.boundaries {
        ech.insert(b);
    }
    let base = ech.rank();
    for z in &target_cell.reps {
        ech.insert(&apply(&f, &images, z));
    }
    Ok(ech.rank() - base)
}

/// Generator degrees of the cover of `Hom(F, N)`: slot `(g, l)` has degree
/// `c_l - a_g` and index `g * s + l`.
fn cover_degrees<F: Field>(degrees: &[i32], n: &Presentation<F>) -> Vec<i32> {
    degrees
        .iter()
        .flat_map(|a| n.degrees().iter().map(move |c| c - a))
        .collect()
}

/// Relations of `N` placed in every slot of the cover.
fn relation_slots<F: Field>(rank: usize, n: &Presentation<F>) -> Vec<Vector<F>> {
    let s = n.rank();
    let mut out = Vec::new();
    for g in 0..rank {
        for rel in n.relations() {
            let mut v = zero_vector(rank * s);
            for (l, p) in rel.iter().enumerate() {
                v[g * s + l] = p.clone();
            }
            out.push(v);
        }
    }
    out
}

/// Columns of the dual of `phi` on the covers: slot `(t, l)` maps to
/// `Σ_s phi_{ts} (s, l)`.
fn dual_columns<F: Field>(phi: &FreeMap<F>, n: &Presentation<F>) -> Vec<Vector<F>> {
    let s = n.rank();
    let mut out = Vec::new();
    for t in 0..phi.target.len() {
        for l in 0..s {
            let mut v = zero_vector(phi.source.len() * s);
            for (src, col) in phi.cols.iter().enumerate() {
                v[src * s + l] = col[t].clone();
            }
            out.push(v);
        }
    }
    out
}

/// `Ext^i(M, N)` presented as a module, together with the cocycles (in the
/// cover of `Hom(F_i, N)`) representing its generators.
pub struct ExtModule<F: Field> {
    pub pres: Presentation<F>,
    pub cocycles: Vec<Vector<F>>,
    /// Generator degrees of `F_i`, and the rank of `N`.
    pub free_degrees: Vec<i32>,
    pub target_rank: usize,
}

impl<F: Field> ExtModule<F> {
    /// For `i = 0`: the homomorphism given by a vector over the generators
    /// of `pres`, as the images of the generators of `F_0` in `N`.
    pub fn homomorphism(&self, x: &[Poly<F>]) -> Vec<Vector<F>> {
        let ring = self.pres.ring();
        let f = ring.field();
        let s = self.target_rank;
        let mut cover = zero_vector::<F>(self.free_degrees.len() * s);
        for (c, z) in x.iter().zip(&self.cocycles) {
            for (o, e) in cover.iter_mut().zip(z) {
                *o = o.add(&c.mul(e, f), f);
            }
        }
        cover
            .chunks(s)
            .map(|ch| ch.iter().map(|p| ring.reduce(p)).collect())
            .collect()
    }
}

pub fn ext_presentation<F: Field>(
    res: &mut Resolution<F>,
    n: &Presentation<F>,
    i: usize,
) -> Result<ExtModule<F>> {
    let ring = n.ring().clone();
    let f = ring.field();
    res.extend(i + 1)?;
    let fi = res.degrees(i);
    let gi = cover_degrees(&fi, n);
    let next = res.map(i + 1)?;
    let cocycles = if next.source.is_empty() {
        (0..gi.len()).map(|j| unit_vector(f, gi.len(), j)).collect()
    } else {
        let gnext = cover_degrees(&next.source, n);
        kernel_over_ring(
            &ring,
            &gnext,
            &dual_columns(&next, n),
            &gi,
            &relation_slots(next.source.len(), n),
        )?
    };
    let kdeg: Vec<i32> = cocycles
        .iter()
        .map(|z| vector_degree(z, &gi).unwrap())
        .collect();
    let mut extra = relation_slots(fi.len(), n);
    if i > 0 {
        extra.extend(dual_columns(&res.map(i)?, n));
    }
    let rels = kernel_over_ring(&ring, &gi, &cocycles, &kdeg, &extra)?;
    let pres = Presentation::new(ring.clone(), kdeg, rels)?;
    Ok(ExtModule {
        pres,
        cocycles,
        free_degrees: fi,
        target_rank: n.rank(),
    })
}

/// `Hom(M, N)` as a presented module; see [`ExtModule::homomorphism`] for the
/// evaluator data. Generators of `F_0` are the pruned generators of `M`.
pub struct HomModule<F: Field> {
    pub ext: ExtModule<F>,
    pub resolution: Resolution<F>,
}

impl<F: Field> HomModule<F> {
    pub fn presentation(&self) -> &Presentation<F> {
        &self.ext.pres
    }

    /// Evaluates the homomorphism `x` on an element of `M` given over the
    /// original generators of `M`. The result is a vector over the
    /// generators of `N` (not reduced modulo the relations of `N`).
    pub fn evaluate(&self, x: &[Poly<F>], m: &[Poly<F>]) -> Vector<F> {
        let ring = self.ext.pres.ring();
        let f = ring.field();
        let images = self.ext.homomorphism(x);
        let mut out = zero_vector::<F>(self.ext.target_rank);
        for (c, old) in m.iter().zip(&self.resolution.pruned.old_to_new) {
            for (b, img) in old.iter().zip(&images) {
                let coef = c.mul(b, f);
                if coef.is_zero() {
                    continue;
                }
                for (o, e) in out.iter_mut().zip(img) {
                    *o = o.add(&coef.mul(e, f), f);
                }
            }
        }
        out.iter().map(|p| ring.reduce(p)).collect()
    }
}

pub fn hom_presentation<F: Field>(
    m: &Presentation<F>,
    n: &Presentation<F>,
) -> Result<HomModule<F>> {
    let mut resolution = free_resolution(m, 1)?;
    let ext = ext_presentation(&mut resolution, n, 0)?;
    Ok(HomModule { ext, resolution })
}

/// Dimensions of `Ext^i(M, N)_k` for `k` in `lo..=hi`.
pub fn ext_dims<F: Field>(
    res: &mut Resolution<F>,
    n: &Presentation<F>,
    i: usize,
    lo: i32,
    hi: i32,
) -> Result<Vec<(i32, usize)>> {
    res.extend(i + 1)?;
    (lo..=hi)
        .map(|k| Ok((k, ext_cell(res, n, i, k)?.dim)))
        .collect()
}

/// Convenience: the shared ring of two presentations.
pub fn same_ring<F: Field>(a: &Presentation<F>, b: &Presentation<F>) -> bool {
    Arc::ptr_eq(a.ring(), b.ring())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::Rationals;
    use crate::groebner::GradedRing;

    fn ring(vars: &[&str], rels: &[&str]) -> Arc<GradedRing<Rationals>> {
        let w = vec![1; vars.len()];
        Arc::new(GradedRing::parse(Rationals, vars, &w, rels).unwrap())
    }

    fn residue_field(r: &Arc<GradedRing<Rationals>>) -> Presentation<Rationals> {
        let vars: Vec<_> = (0..r.nvars()).map(|i| r.var(i)).collect();
        Presentation::cyclic(r.clone(), &vars).unwrap()
    }

    #[test]
    fn ext1_of_residue_field_over_line() {
        // 0 <- K <- R <-x- R(-1): Hom(R(-1), R) = R(1) is generated in
        // degree -1, and Ext^1 = R(1)/x = K(1), the single degree -1.
        let r = ring(&["x"], &[]);
        let rr = Presentation::free(r.clone(), vec![0]);
        let mut res = free_resolution(&residue_field(&r), 2).unwrap();
        let dims = ext_dims(&mut res, &rr, 1, -3, 3).unwrap();
        let nonzero: Vec<_> = dims.into_iter().filter(|x| x.1 > 0).collect();
        assert_eq!(nonzero, vec![(-1, 1)]);
        let e = ext_presentation(&mut res, &rr, 1).unwrap();
        assert_eq!(
            e.pres
                .hilbert_window(-3, 3)
                .unwrap()
                .iter()
                .map(|x| x.1)
                .sum::<usize>(),
            1
        );
    }

    #[test]
    fn ext2_koszul_self_duality() {
        let r = ring(&["x", "y"], &[]);
        let rr = Presentation::free(r.clone(), vec![0]);
        let mut res = free_resolution(&residue_field(&r), 3).unwrap();
        let dims = ext_dims(&mut res, &rr, 2, -4, 4).unwrap();
        let nonzero: Vec<_> = dims.into_iter().filter(|x| x.1 > 0).collect();
        assert_eq!(nonzero, vec![(-2, 1)]);
        for i in [0, 1] {
            assert!(ext_dims(&mut res, &rr, i, -4, 4)
                .unwrap()
                .iter()
                .all(|x| x.1 == 0));
        }
    }

    #[test]
    fn hom_examples() {
        let r = ring(&["x"], &[]);
        let rr = Presentation::free(r.clone(), vec![0]);
        let shifted = Presentation::free(r.clone(), vec![1]);
        let h = hom_presentation(&shifted, &rr).unwrap();
        assert_eq!(h.presentation().minimal_generators().unwrap(), vec![-1]);
        assert!(h.presentation().relations().is_empty());
        let h = hom_presentation(&residue_field(&r), &rr).unwrap();
        assert!(h
            .presentation()
            .hilbert_window(-3, 3)
            .unwrap()
            .iter()
            .all(|x| x.1 == 0));

        let r = ring(&["x", "y"], &[]);
        let rr = Presentation::free(r.clone(), vec![0]);
        let m = Presentation::new(
            r.clone(),
            vec![1, 1],
            vec![vec![r.var(1), r.var(0).neg(r.field())]],
        )
        .unwrap();
        let h = hom_presentation(&m, &rr).unwrap();
        let hw = h.presentation().hilbert_window(-1, 2).unwrap();
        assert_eq!(hw, rr.hilbert_window(-1, 2).unwrap());
        // the generator is the inclusion m -> R: evaluate on x
        let gen = vec![Poly::one(r.field())];
        let x_in_m = m.generator(0);
        let val = h.evaluate(&gen, &x_in_m);
        let c = *r.field();
        assert!(val[0] == r.var(0) || val[0] == r.var(0).neg(&c));
    }

    #[test]
    fn ext0_matches_hom() {
        let r = ring(&["a", "b", "c"], &["b^2 - a*c"]);
        let rr = Presentation::free(r.clone(), vec![0]);
        let m = Presentation::cyclic(r.clone(), &[r.var(0), r.var(1)]).unwrap();
        let res = free_resolution(&m, 2).unwrap();
        let h = hom_presentation(&m, &rr).unwrap();
        for k in -2..=3 {
            assert_eq!(
                ext_cell(&res, &rr, 0, k).unwrap().dim,
                h.presentation().dim(k).unwrap()
            );
        }
    }
}
