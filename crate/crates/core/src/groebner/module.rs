//! Finitely presented graded modules over a [`GradedRing`].

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock, RwLock};

use rustc_hash::FxHashMap;

use crate::error::{AlgError, Result};
use crate::exactalg::{monomials_of_degree, Field, Monomial, Poly};
use crate::linalg::{add_scaled, to_sparse, Echelon, SparseVec};

use super::buchberger::{buchberger, GroebnerBasis};
use super::order::{from_terms, to_terms, ModMon, MonomialOrder, Terms};
use super::ring::GradedRing;

/// Element of a free module: one polynomial per generator.
pub type Vector<F> = Vec<Poly<F>>;

pub fn zero_vector<F: Field>(rank: usize) -> Vector<F> {
    vec![Poly::zero(); rank]
}

pub fn unit_vector<F: Field>(field: &F, rank: usize, k: usize) -> Vector<F> {
    let mut v = zero_vector(rank);
    v[k] = Poly::one(field);
    v
}

pub fn is_zero_vector<F: Field>(v: &[Poly<F>]) -> bool {
    v.iter().all(|p| p.is_zero())
}

/// Degree of a nonzero homogeneous vector with respect to generator degrees.
pub fn vector_degree<F: Field>(v: &[Poly<F>], degrees: &[i32]) -> Option<i32> {
    v.iter()
        .zip(degrees)
        .find(|(p, _)| !p.is_zero())
        .map(|(p, a)| p.lead().unwrap().0.weight() + a)
}

pub fn add_vectors<F: Field>(field: &F, a: &[Poly<F>], b: &[Poly<F>]) -> Vector<F> {
    a.iter().zip(b).map(|(x, y)| x.add(y, field)).collect()
}

pub fn scale_vector<F: Field>(field: &F, r: &Poly<F>, v: &[Poly<F>]) -> Vector<F> {
    v.iter().map(|p| p.mul(r, field)).collect()
}

/// Standard module monomials of one degree.
#[derive(Debug)]
pub struct ModPiece {
    pub monos: Vec<ModMon>,
    pub index: FxHashMap<ModMon, usize>,
}

impl ModPiece {
    pub fn len(&self) -> usize {
        self.monos.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monos.is_empty()
    }
}

/// `coker(R^relations -> ⊕ R(-degrees))`.
pub struct Presentation<F: Field> {
    ring: Arc<GradedRing<F>>,
    degrees: Vec<i32>,
    relations: Vec<Vector<F>>,
    relation_degrees: Vec<i32>,
    gb: OnceLock<Result<Arc<GroebnerBasis<F>>>>,
    pieces: RwLock<FxHashMap<i32, Arc<ModPiece>>>,
    nf: RwLock<FxHashMap<ModMon, Arc<SparseVec<F::Elem>>>>,
}

impl<F: Field> Clone for Presentation<F> {
    fn clone(&self) -> Self {
        Presentation {
            ring: self.ring.clone(),
            degrees: self.degrees.clone(),
            relations: self.relations.clone(),
            relation_degrees: self.relation_degrees.clone(),
            gb: self.gb.clone(),
            pieces: RwLock::new(self.pieces.read().unwrap().clone()),
            nf: RwLock::new(self.nf.read().unwrap().clone()),
        }
    }
}

impl<F: Field> std::fmt::Debug for Presentation<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Presentation(gens {:?}, {} relations)",
            self.degrees,
            self.relations.len()
        )
    }
}

/// Result of removing superfluous generators.
pub struct Pruned<F: Field> {
    pub pres: Presentation<F>,
    /// Old index of each surviving generator.
    pub kept: Vec<usize>,
    /// Each old generator written in the surviving generators.
    pub old_to_new: Vec<Vector<F>>,
}

impl<F: Field> Presentation<F> {
    pub fn new(
        ring: Arc<GradedRing<F>>,
        degrees: Vec<i32>,
        relations: Vec<Vector<F>>,
    ) -> Result<Self> {
        let m = degrees.len();
        let mut rels = Vec::new();
        let mut rdeg = Vec::new();
        for r in relations {
            if r.len() != m {
                return Err(AlgError::ModuleMismatch(format!(
                    "relation of length {} for rank {m}",
                    r.len()
                )));
            }
            let r: Vector<F> = r.iter().map(|p| ring.reduce(p)).collect();
            let Some(d) = vector_degree(&r, &degrees) else {
                continue;
            };
            for (p, a) in r.iter().zip(&degrees) {
                if let Some((t, _)) = p.terms().iter().find(|(t, _)| t.weight() + a != d) {
                    return Err(AlgError::Inhomogeneous {
                        term: t.fmt_with(ring.names()),
                        found: t.weight() + a,
                        expected: d,
                    });
                }
            }
            rels.push(r);
            rdeg.push(d);
        }
        Ok(Presentation {
            ring,
            degrees,
            relations: rels,
            relation_degrees: rdeg,
            gb: OnceLock::new(),
            pieces: RwLock::default(),
            nf: RwLock::default(),
        })
    }

    pub fn free(ring: Arc<GradedRing<F>>, degrees: Vec<i32>) -> Self {
        Presentation::new(ring, degrees, Vec::new()).expect("free module")
    }

    /// The ring itself as a module, shifted: `R(s)` has its generator in
    /// degree `-s`.
    pub fn ring_module(ring: Arc<GradedRing<F>>, shift: i32) -> Self {
        Presentation::free(ring, vec![-shift])
    }

    /// `R/J` for homogeneous `J`.
    pub fn cyclic(ring: Arc<GradedRing<F>>, ideal: &[Poly<F>]) -> Result<Self> {
        Presentation::new(
            ring,
            vec![0],
            ideal.iter().map(|p| vec![p.clone()]).collect(),
        )
    }

    pub fn ring(&self) -> &Arc<GradedRing<F>> {
        &self.ring
    }

    pub fn field(&self) -> &F {
        self.ring.field()
    }

    pub fn degrees(&self) -> &[i32] {
        &self.degrees
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    pub fn relations(&self) -> &[Vector<F>] {
        &self.relations
    }

    pub fn relation_degrees(&self) -> &[i32] {
        &self.relation_degrees
    }

    pub fn order(&self) -> MonomialOrder {
        MonomialOrder::top(self.degrees.clone())
    }

    /// Gröbner basis of the relation module plus `I` times the free module.
    pub fn gb(&self) -> Result<Arc<GroebnerBasis<F>>> {
        self.gb
            .get_or_init(|| {
                let ord = self.order();
                let mut gens: Vec<Terms<F>> =
                    self.relations.iter().map(|r| to_terms(r, &ord)).collect();
                for g in self.ring.ideal_gb().elements() {
                    for k in 0..self.rank() {
                        gens.push(
                            g.iter()
                                .map(|(m, c)| {
                                    (
                                        ModMon {
                                            comp: k as u32,
                                            mon: m.mon,
                                        },
                                        c.clone(),
                                    )
                                })
                                .collect(),
                        );
                    }
                }
                let cap = self.ring.degree_cap();
                let gb = buchberger(self.field(), self.ring.weights(), &gens, ord, cap)?;
                if !gb.is_complete() {
                    return Err(AlgError::bound(cap, cap + 1));
                }
                Ok(Arc::new(gb))
            })
            .clone()
    }

    /// Standard monomials of degree `d`.
    pub fn piece(&self, d: i32) -> Result<Arc<ModPiece>> {
        if let Some(p) = self.pieces.read().unwrap().get(&d) {
            return Ok(p.clone());
        }
        let gb = self.gb()?;
        let mut monos = Vec::new();
        for (k, a) in self.degrees.iter().enumerate() {
            for m in monomials_of_degree(self.ring.weights(), d - a) {
                let mm = ModMon {
                    comp: k as u32,
                    mon: m,
                };
                if !gb.is_reducible(&mm) {
                    monos.push(mm);
                }
            }
        }
        let index = monos.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        let p = Arc::new(ModPiece { monos, index });
        Ok(self.pieces.write().unwrap().entry(d).or_insert(p).clone())
    }

    pub fn dim(&self, d: i32) -> Result<usize> {
        Ok(self.piece(d)?.len())
    }

    pub fn hilbert_window(&self, lo: i32, hi: i32) -> Result<Vec<(i32, usize)>> {
        (lo..=hi).map(|d| Ok((d, self.dim(d)?))).collect()
    }

    /// Coordinates of a module monomial in the standard basis of its degree.
    pub fn mono_coords(&self, mm: &ModMon) -> Result<Arc<SparseVec<F::Elem>>> {
        if let Some(v) = self.nf.read().unwrap().get(mm) {
            return Ok(v.clone());
        }
        let gb = self.gb()?;
        let d = mm.mon.weight() + self.degrees[mm.comp as usize];
        let piece = self.piece(d)?;
        let f = self.field();
        let v = match piece.index.get(mm) {
            Some(&i) => vec![(i, f.one())],
            None => {
                let red = gb.reduce(vec![(*mm, f.one())]);
                let mut v: SparseVec<F::Elem> =
                    red.into_iter().map(|(m, c)| (piece.index[&m], c)).collect();
                v.sort_by_key(|x| x.0);
                v
            }
        };
        let v = Arc::new(v);
        self.nf.write().unwrap().insert(*mm, v.clone());
        Ok(v)
    }

    /// Coordinates of `r * x^shift * e_comp`-style sums: a homogeneous vector
    /// of degree `d`, multiplied by the monomial `mult`.
    pub fn coords_scaled(&self, v: &[Poly<F>], mult: &Monomial) -> Result<SparseVec<F::Elem>> {
        let f = self.field();
        let mut acc = BTreeMap::new();
        for (k, p) in v.iter().enumerate() {
            for (m, c) in p.terms() {
                let mm = ModMon {
                    comp: k as u32,
                    mon: m.mul(mult),
                };
                let nf = self.mono_coords(&mm)?;
                add_scaled(f, &mut acc, c, &nf);
            }
        }
        Ok(to_sparse(acc))
    }

    /// Coordinates of a homogeneous vector.
    pub fn coords(&self, v: &[Poly<F>]) -> Result<SparseVec<F::Elem>> {
        self.coords_scaled(v, &Monomial::ONE)
    }

    pub fn from_coords(&self, d: i32, x: &[(usize, F::Elem)]) -> Result<Vector<F>> {
        let piece = self.piece(d)?;
        let f = self.field();
        let mut parts: Vec<Vec<(Monomial, F::Elem)>> = vec![Vec::new(); self.rank()];
        for (i, c) in x {
            let mm = piece.monos[*i];
            parts[mm.comp as usize].push((mm.mon, c.clone()));
        }
        Ok(parts.into_iter().map(|t| Poly::from_terms(f, t)).collect())
    }

    /// Canonical representative of a homogeneous vector.
    pub fn normal_form(&self, v: &[Poly<F>]) -> Result<Vector<F>> {
        let Some(d) = vector_degree(v, &self.degrees) else {
            return Ok(zero_vector(self.rank()));
        };
        let x = self.coords(v)?;
        self.from_coords(d, &x)
    }

    pub fn is_zero_element(&self, v: &[Poly<F>]) -> Result<bool> {
        Ok(self.coords(v)?.is_empty())
    }

    /// Generator `k` as a vector.
    pub fn generator(&self, k: usize) -> Vector<F> {
        unit_vector(self.field(), self.rank(), k)
    }

    /// Removes generators that occur with a unit coefficient in some
    /// relation, then discards redundant relations. The result is a minimal
    /// presentation.
    pub fn prune(&self) -> Result<Pruned<F>> {
        let f = self.field().clone();
        let ring = self.ring.clone();
        let m = self.rank();
        let mut rels: Vec<Option<Vector<F>>> = self.relations.iter().cloned().map(Some).collect();
        let mut images: Vec<Vector<F>> = (0..m).map(|k| self.generator(k)).collect();
        let mut alive = vec![true; m];
        loop {
            let mut pivot = None;
            'search: for (l, r) in rels.iter().enumerate() {
                let Some(r) = r else { continue };
                for j in 0..m {
                    let c = r[j].constant_term(&f);
                    if alive[j] && !f.is_zero(&c) {
                        pivot = Some((l, j, c));
                        break 'search;
                    }
                }
            }
            let Some((l, j, c)) = pivot else { break };
            let rho = rels[l].take().unwrap();
            let cinv = f.inv(&c)?;
            let eliminate = |v: &mut Vector<F>| {
                if v[j].is_zero() {
                    return;
                }
                let factor = v[j].scale(&cinv, &f);
                for k in 0..m {
                    if !rho[k].is_zero() {
                        v[k] = ring.reduce(&v[k].sub(&rho[k].mul(&factor, &f), &f));
                    }
                }
                debug_assert!(v[j].is_zero());
            };
            for r in rels.iter_mut().flatten() {
                eliminate(r);
            }
            for v in images.iter_mut() {
                eliminate(v);
            }
            alive[j] = false;
        }
        let kept: Vec<usize> = (0..m).filter(|&k| alive[k]).collect();
        let project = |v: &Vector<F>| -> Vector<F> { kept.iter().map(|&k| v[k].clone()).collect() };
        let degrees: Vec<i32> = kept.iter().map(|&k| self.degrees[k]).collect();
        let cands: Vec<Vector<F>> = rels
            .into_iter()
            .flatten()
            .map(|r| project(&r))
            .filter(|r| !is_zero_vector(r))
            .collect();
        let free = Presentation::free(ring.clone(), degrees.clone());
        let chosen = select_minimal(&free, &cands)?;
        let relations: Vec<Vector<F>> = chosen.into_iter().map(|i| cands[i].clone()).collect();
        let pres = Presentation::new(ring, degrees, relations)?;
        let old_to_new = images.iter().map(project).collect();
        Ok(Pruned {
            pres,
            kept,
            old_to_new,
        })
    }

    /// Degrees of a minimal homogeneous generating set.
    pub fn minimal_generators(&self) -> Result<Vec<i32>> {
        let mut d = self.prune()?.pres.degrees;
        d.sort();
        Ok(d)
    }
}

/// Chooses a minimal generating subset of the submodule of the free module
/// `free` spanned by `cands` (homogeneous, nonzero). Returns indices in
/// increasing degree order.
pub fn select_minimal<F: Field>(free: &Presentation<F>, cands: &[Vector<F>]) -> Result<Vec<usize>> {
    let ring = free.ring().clone();
    let degs: Vec<i32> = cands
        .iter()
        .map(|c| vector_degree(c, free.degrees()).expect("nonzero candidate"))
        .collect();
    let mut idx: Vec<usize> = (0..cands.len()).collect();
    idx.sort_by_key(|&i| (degs[i], i));
    let mut chosen: Vec<usize> = Vec::new();
    let mut pos = 0;
    while pos < idx.len() {
        let d = degs[idx[pos]];
        let mut ech = Echelon::new(free.field().clone());
        for &g in &chosen {
            for mu in ring.piece(d - degs[g]).monos.iter() {
                ech.insert(&free.coords_scaled(&cands[g], mu)?);
            }
        }
        while pos < idx.len() && degs[idx[pos]] == d {
            let i = idx[pos];
            if ech.insert(&free.coords(&cands[i])?).is_none() {
                chosen.push(i);
            }
            pos += 1;
        }
    }
    Ok(chosen)
}

/// Generators of `{ x ∈ ⊕ R(-col_degrees) : Σ x_j cols_j ∈ span(extra) }`
/// where `cols` and `extra` live in the free module with generator degrees
/// `target`. The answer is minimal and reduced modulo the ring's ideal.
pub fn kernel_over_ring<F: Field>(
    ring: &Arc<GradedRing<F>>,
    target: &[i32],
    cols: &[Vector<F>],
    col_degrees: &[i32],
    extra: &[Vector<F>],
) -> Result<Vec<Vector<F>>> {
    let f = ring.field();
    let m = target.len();
    let r = cols.len();
    if r == 0 {
        return Ok(Vec::new());
    }
    let mut pos = target.to_vec();
    pos.extend_from_slice(col_degrees);
    let mut ord = MonomialOrder::top(pos);
    for b in ord.blocks.iter_mut().take(m) {
        *b = 1;
    }
    let mut gens: Vec<Terms<F>> = Vec::new();
    for (j, c) in cols.iter().enumerate() {
        let mut v: Vector<F> = c.clone();
        v.extend(zero_vector(r));
        v[m + j] = Poly::one(f);
        gens.push(to_terms(&v, &ord));
    }
    for e in extra {
        let mut v: Vector<F> = e.clone();
        v.extend(zero_vector(r));
        gens.push(to_terms(&v, &ord));
    }
    for g in ring.ideal_gb().elements() {
        for k in 0..m {
            gens.push(
                g.iter()
                    .map(|(mm, c)| {
                        (
                            ModMon {
                                comp: k as u32,
                                mon: mm.mon,
                            },
                            c.clone(),
                        )
                    })
                    .collect(),
            );
        }
    }
    let cap = ring.degree_cap();
    let gb = buchberger(f, ring.weights(), &gens, ord, cap)?;
    if !gb.is_complete() {
        return Err(AlgError::bound(cap, cap + 1));
    }
    let mut cands = Vec::new();
    for e in gb.elements() {
        if (e[0].0.comp as usize) < m {
            continue;
        }
        let shifted: Terms<F> = e
            .iter()
            .map(|(mm, c)| {
                (
                    ModMon {
                        comp: mm.comp - m as u32,
                        mon: mm.mon,
                    },
                    c.clone(),
                )
            })
            .collect();
        let v: Vector<F> = from_terms(f, &shifted, r)
            .iter()
            .map(|p| ring.reduce(p))
            .collect();
        if !is_zero_vector(&v) {
            cands.push(v);
        }
    }
    let free = Presentation::free(ring.clone(), col_degrees.to_vec());
    let chosen = select_minimal(&free, &cands)?;
    Ok(chosen.into_iter().map(|i| cands[i].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::Rationals;

    fn ring(vars: &[&str], rels: &[&str]) -> Arc<GradedRing<Rationals>> {
        let w = vec![1; vars.len()];
        Arc::new(GradedRing::parse(Rationals, vars, &w, rels).unwrap())
    }

    fn el(r: &GradedRing<Rationals>, v: &[&str]) -> Vector<Rationals> {
        v.iter().map(|s| r.parse_element(s).unwrap()).collect()
    }

    #[test]
    fn koszul_syzygy() {
        let r = ring(&["x", "y"], &[]);
        let cols = vec![el(&r, &["x"]), el(&r, &["y"])];
        let syz = kernel_over_ring(&r, &[0], &cols, &[1, 1], &[]).unwrap();
        assert_eq!(syz.len(), 1);
        let s = &syz[0];
        // proportional to (y, -x)
        assert_eq!(s[0].terms()[0].0, Monomial::var(1, 1));
        assert_eq!(s[1].terms()[0].0, Monomial::var(0, 1));
        assert_eq!(s[0].terms()[0].1, r.field().neg(&s[1].terms()[0].1));
    }

    #[test]
    fn principal_has_no_syzygies() {
        let r = ring(&["a", "b", "c"], &["b^2 - a*c"]);
        let cols = vec![el(&r, &["a+b"])];
        assert!(kernel_over_ring(&r, &[0], &cols, &[1], &[])
            .unwrap()
            .is_empty());
    }

    #[test]
    fn syzygies_of_xy_example_counted_by_hilbert_series() {
        // f1 = x^2-y^2 and f2 = xy form a regular sequence and f3 = y^3 =
        // x*f2 - y*f1. Minimal syzygies of (f1,f2,f3): (y,-x,1) in degree 3
        // and the Koszul pair (f2,-f1,0) in degree 4. Cross-check: S/(f1,f2)
        // has Hilbert series (1+t)^2.
        let r = ring(&["x", "y"], &[]);
        let cols = vec![el(&r, &["x^2-y^2"]), el(&r, &["x*y"]), el(&r, &["y^3"])];
        let syz = kernel_over_ring(&r, &[0], &cols, &[2, 2, 3], &[]).unwrap();
        let q = Presentation::cyclic(r.clone(), &[cols[0][0].clone(), cols[1][0].clone()]).unwrap();
        assert_eq!(
            q.hilbert_window(0, 4).unwrap(),
            vec![(0, 1), (1, 2), (2, 1), (3, 0), (4, 0)]
        );
        assert_eq!(syz.len(), 2);
        for s in &syz {
            let mut acc = Poly::zero();
            for (a, c) in s.iter().zip(&cols) {
                acc = acc.add(&a.mul(&c[0], r.field()), r.field());
            }
            assert!(acc.is_zero());
        }
    }

    #[test]
    fn pruning_and_minimal_generators() {
        let r = ring(&["x", "y"], &[]);
        let f = Presentation::free(r.clone(), vec![1, 3]);
        assert_eq!(f.minimal_generators().unwrap(), vec![1, 3]);
        // m = (x,y): generators x,y with the Koszul relation
        let m = Presentation::new(r.clone(), vec![1, 1], vec![el(&r, &["y", "-x"])]).unwrap();
        assert_eq!(m.minimal_generators().unwrap(), vec![1, 1]);
        // graded dual of K[x,y]/(x,y)^2: basis 1*, x*, y* in degrees 0,-1,-1
        // with x.x* = 1*, y.y* = 1*, x.y* = y.x* = 0, x.1* = y.1* = 0.
        let a = ring(&["x", "y"], &["x^2", "x*y", "y^2"]);
        let rels = vec![
            el(&a, &["-1", "x", "0"]),
            el(&a, &["-1", "0", "y"]),
            el(&a, &["0", "y", "0"]),
            el(&a, &["0", "0", "x"]),
            el(&a, &["x", "0", "0"]),
            el(&a, &["y", "0", "0"]),
        ];
        let dual = Presentation::new(a.clone(), vec![0, -1, -1], rels).unwrap();
        assert_eq!(
            dual.hilbert_window(-1, 1).unwrap(),
            vec![(-1, 2), (0, 1), (1, 0)]
        );
        assert_eq!(dual.minimal_generators().unwrap(), vec![-1, -1]);
    }
}
