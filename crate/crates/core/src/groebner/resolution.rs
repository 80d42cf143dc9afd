//! Minimal graded free resolutions and comparison maps between them.

use std::collections::BTreeMap;
use std::sync::Arc;

use rustc_hash::FxHashMap;

use crate::error::{AlgError, Result};
use crate::exactalg::{Field, Poly};
use crate::linalg::Echelon;

use super::module::{
    is_zero_vector, kernel_over_ring, vector_degree, zero_vector, Presentation, Pruned, Vector,
};
use super::ring::GradedRing;

/// A graded map of free modules, given by the images of the source
/// generators.
#[derive(Clone, Debug)]
pub struct FreeMap<F: Field> {
    pub source: Vec<i32>,
    pub target: Vec<i32>,
    pub cols: Vec<Vector<F>>,
}

impl<F: Field> FreeMap<F> {
    pub fn zero(source: Vec<i32>, target: Vec<i32>) -> Self {
        let cols = vec![zero_vector(target.len()); source.len()];
        FreeMap {
            source,
            target,
            cols,
        }
    }

    /// Image of an arbitrary element of the source.
    pub fn apply(&self, ring: &GradedRing<F>, x: &[Poly<F>]) -> Vector<F> {
        let f = ring.field();
        let mut out = zero_vector(self.target.len());
        for (c, col) in x.iter().zip(&self.cols) {
            if c.is_zero() {
                continue;
            }
            for (o, e) in out.iter_mut().zip(col) {
                if !e.is_zero() {
                    *o = o.add(&c.mul(e, f), f);
                }
            }
        }
        out.iter().map(|p| ring.reduce(p)).collect()
    }

    /// `self ∘ other`.
    pub fn compose(&self, ring: &GradedRing<F>, other: &FreeMap<F>) -> FreeMap<F> {
        FreeMap {
            source: other.source.clone(),
            target: self.target.clone(),
            cols: other.cols.iter().map(|c| self.apply(ring, c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| is_zero_vector(c))
    }

    /// True when every entry lies in the irrelevant ideal.
    pub fn is_minimal(&self) -> bool {
        self.cols
            .iter()
            .all(|c| c.iter().all(|p| p.terms().iter().all(|(m, _)| !m.is_one())))
    }
}

/// `F_0 <- F_1 <- ... <- F_L`, minimal, resolving a module.
pub struct Resolution<F: Field> {
    ring: Arc<GradedRing<F>>,
    /// Minimal presentation of the resolved module, with the maps back to
    /// the original generators.
    pub pruned: Pruned<F>,
    /// `maps[i] = d_{i+1} : F_{i+1} -> F_i`.
    pub maps: Vec<FreeMap<F>>,
    /// True when the last free module is zero, so the resolution is finite.
    pub finite: bool,
}

impl<F: Field> Resolution<F> {
    pub fn ring(&self) -> &Arc<GradedRing<F>> {
        &self.ring
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    /// Generator degrees of `F_i` (empty past the end of a finite
    /// resolution).
    pub fn degrees(&self, i: usize) -> Vec<i32> {
        if i == 0 {
            return self.pruned.pres.degrees().to_vec();
        }
        match self.maps.get(i - 1) {
            Some(m) => m.source.clone(),
            None => Vec::new(),
        }
    }

    /// Graded Betti numbers of stage `i` as sorted degrees.
    pub fn betti(&self, i: usize) -> Vec<i32> {
        let mut d = self.degrees(i);
        d.sort();
        d
    }

    /// `d_i : F_i -> F_{i-1}` for `i >= 1`; the zero map past the computed
    /// range of a finite resolution.
    pub fn map(&self, i: usize) -> Result<FreeMap<F>> {
        assert!(i >= 1);
        if let Some(m) = self.maps.get(i - 1) {
            return Ok(m.clone());
        }
        if self.finite {
            return Ok(FreeMap::zero(self.degrees(i), self.degrees(i - 1)));
        }
        Err(AlgError::InfeasibleBound(format!(
            "resolution computed to length {} but stage {i} is needed",
            self.len()
        )))
    }

    /// Free module `F_i` as a presentation (for coordinates).
    pub fn free(&self, i: usize) -> Presentation<F> {
        Presentation::free(self.ring.clone(), self.degrees(i))
    }

    /// Extends the resolution so that `d_length` exists.
    pub fn extend(&mut self, length: usize) -> Result<()> {
        while self.maps.len() < length && !self.finite {
            let last = self.maps.last().unwrap();
            let syz = kernel_over_ring(&self.ring, &last.target, &last.cols, &last.source, &[])?;
            if syz.is_empty() {
                self.finite = true;
                break;
            }
            let degs = syz
                .iter()
                .map(|s| vector_degree(s, &last.source).unwrap())
                .collect();
            let src = last.source.clone();
            self.maps.push(FreeMap {
                source: degs,
                target: src,
                cols: syz,
            });
        }
        Ok(())
    }

    /// Checks `d_i ∘ d_{i+1} = 0` for every computed pair.
    pub fn check_complex(&self) -> bool {
        self.maps
            .windows(2)
            .all(|w| w[0].compose(&self.ring, &w[1]).is_zero())
    }
}

/// Minimal free resolution of `m` through `d_length`.
pub fn free_resolution<F: Field>(m: &Presentation<F>, length: usize) -> Result<Resolution<F>> {
    let pruned = m.prune()?;
    let ring = m.ring().clone();
    let p = &pruned.pres;
    let mut maps = Vec::new();
    let mut finite = false;
    if p.relations().is_empty() {
        finite = true;
    } else if length >= 1 {
        maps.push(FreeMap {
            source: p.relation_degrees().to_vec(),
            target: p.degrees().to_vec(),
            cols: p.relations().to_vec(),
        });
    }
    let mut res = Resolution {
        ring,
        pruned,
        maps,
        finite,
    };
    res.extend(length)?;
    Ok(res)
}

/// Writes a map of modules, given on the original generators of the source
/// as elements over the original generators of the target, as a map of the
/// minimal free modules `F'_0 -> F_0`.
pub fn map_on_generators<F: Field>(
    src: &Resolution<F>,
    tgt: &Resolution<F>,
    images: &[Vector<F>],
) -> FreeMap<F> {
    let ring = tgt.ring();
    let f = ring.field();
    let cols = src
        .pruned
        .kept
        .iter()
        .map(|&old| {
            let v = &images[old];
            let mut out = zero_vector(tgt.pruned.kept.len());
            for (c, img) in v.iter().zip(&tgt.pruned.old_to_new) {
                if c.is_zero() {
                    continue;
                }
                for (o, e) in out.iter_mut().zip(img) {
                    *o = o.add(&c.mul(e, f), f);
                }
            }
            out.iter().map(|p| ring.reduce(p)).collect()
        })
        .collect();
    FreeMap {
        source: src.degrees(0),
        target: tgt.degrees(0),
        cols,
    }
}

/// Lifts `phi0 : F'_0 -> F_0` to a chain map `phi_j : F'_j -> F_j` for
/// `j <= upto`. Lifts are found degree by degree from exact linear systems.
/// Both resolutions must already reach stage `upto`.
pub fn lift_chain_map<F: Field>(
    src: &Resolution<F>,
    tgt: &Resolution<F>,
    phi0: FreeMap<F>,
    upto: usize,
) -> Result<Vec<FreeMap<F>>> {
    let ring = tgt.ring().clone();
    let f = ring.field().clone();
    let mut out = vec![phi0];
    for j in 1..=upto {
        let dsrc = src.map(j)?;
        let dtgt = tgt.map(j)?;
        let prev = out.last().unwrap().clone();
        let fj = tgt.free(j);
        let fj1 = tgt.free(j - 1);
        let mut systems: FxHashMap<i32, Echelon<F>> = FxHashMap::default();
        let mut cols = Vec::with_capacity(dsrc.source.len());
        for (g, col) in dsrc.cols.iter().enumerate() {
            let y = prev.apply(&ring, col);
            let d = dsrc.source[g];
            if is_zero_vector(&y) {
                cols.push(zero_vector(dtgt.source.len()));
                continue;
            }
            let ech = match systems.get(&d) {
                Some(e) => e,
                None => {
                    let mut e = Echelon::with_tracking(f.clone());
                    for mm in fj.piece(d)?.monos.iter() {
                        let v = fj1.coords_scaled(&dtgt.cols[mm.comp as usize], &mm.mon)?;
                        e.insert(&v);
                    }
                    systems.entry(d).or_insert(e)
                }
            };
            let yc = fj1.coords(&y)?;
            let sol = ech.solve(&yc).ok_or_else(|| {
                AlgError::NotWellDefined(format!("no lift at homological stage {j}, degree {d}"))
            })?;
            let mut acc: BTreeMap<usize, F::Elem> = BTreeMap::new();
            for (i, c) in sol {
                acc.insert(i, c);
            }
            let x: Vec<_> = acc.into_iter().collect();
            cols.push(fj.from_coords(d, &x)?);
        }
        out.push(FreeMap {
            source: dsrc.source.clone(),
            target: dtgt.source.clone(),
            cols,
        });
    }
    Ok(out)
}
