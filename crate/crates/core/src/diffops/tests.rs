use std::sync::Arc;

use super::*;
use crate::algebra::PresentedAlgebra;
use crate::error::{AlgError, Result};
use crate::exactalg::{Field, Poly, PrimeField, Rationals};
use crate::groebner::Vector;
use crate::linalg::kernel;

fn alg<F: Field>(f: F, v: &[&str], rels: &[&str]) -> PresentedAlgebra<F> {
    let w = vec![1; v.len()];
    PresentedAlgebra::parse(f, v, &w, rels).unwrap()
}

fn self_ops<F: Field>(r: &PresentedAlgebra<F>, n: usize, window: (i32, i32)) -> DiffOps<F> {
    let m = Arc::new(r.free_module(0));
    diff_ops(&m, &m, n, window).unwrap()
}

/// Degree-`k` maps `x^j ↦ c_j x^{j+k}` on `K[x]` for `j <= w` whose
/// `(n+1)`-st differences vanish, counted by plain linear algebra.
fn brute_force_line(n: usize, k: i32, w: usize) -> usize {
    let f = Rationals;
    // unknowns c_0..c_w; constraints as columns of the transposed system
    let mut rows: Vec<Vec<i64>> = Vec::new();
    for j in 0..=w {
        if j as i32 + k < 0 {
            let mut r = vec![0; w + 1];
            r[j] = 1;
            rows.push(r);
        }
    }
    for start in 0..=w.saturating_sub(n + 1) {
        if start + n + 1 > w {
            break;
        }
        let mut r = vec![0i64; w + 1];
        let mut binom = 1i64;
        for i in 0..=n + 1 {
            let sign = if (n + 1 - i).is_multiple_of(2) { 1 } else { -1 };
            r[start + i] = sign * binom;
            binom = binom * (n + 1 - i) as i64 / (i + 1) as i64;
        }
        rows.push(r);
    }
    // kernel of the constraint matrix: images of the unit vectors c_j
    let images: Vec<Vec<(usize, crate::exactalg::Rat)>> = (0..=w)
        .map(|j| {
            rows.iter()
                .enumerate()
                .filter(|(_, r)| r[j] != 0)
                .map(|(i, r)| (i, f.from_int(r[j])))
                .collect()
        })
        .collect();
    kernel(&f, &images).len()
}

#[test]
fn weyl_algebra_dimensions() {
    let r = alg(Rationals, &["x"], &[]);
    let ops = self_ops(&r, 3, (-4, 4));
    for n in 0..=3usize {
        for k in -4..=4 {
            let closed = if k >= 0 {
                n + 1
            } else {
                (n as i32 + 1 + k).max(0) as usize
            };
            assert_eq!(ops.table.get(n, k), Some(closed), "n={n} k={k}");
            assert_eq!(brute_force_line(n, k, 12), closed, "oracle n={n} k={k}");
        }
    }
    assert!(ops.table.is_monotone());
}

#[test]
fn artinian_operators_are_all_linear_maps() {
    let r = alg(Rationals, &["x", "y"], &["x^2", "x*y", "y^2"]);
    let ops = self_ops(&r, 3, (-2, 2));
    // Hom_K(R, R) with R = K ⊕ K^2 has dimension 9
    assert_eq!(ops.table.total(2), 9);
    assert_eq!(ops.table.total(3), 9);
    assert_eq!(ops.table.get(2, -1), Some(2));
    assert_eq!(ops.table.get(2, 1), Some(2));
    assert_eq!(ops.table.get(2, 0), Some(5));
}

#[test]
fn divided_powers_in_characteristic_two() {
    let f2 = PrimeField::new(2).unwrap();
    let r = alg(f2, &["x"], &[]);
    let ops = self_ops(&r, 2, (-2, 0));
    assert_eq!(ops.table.get(2, 0), Some(3));
    let basis = ops.basis(-2).unwrap();
    assert_eq!(basis.len(), 1);
    let ring = r.ring();
    let d2 = &basis[0];
    assert_eq!(
        d2.apply_scalar(&ring.parse_element("x^2").unwrap())
            .unwrap(),
        Poly::one(&f2)
    );
    assert_eq!(
        d2.apply_scalar(&ring.parse_element("x^3").unwrap())
            .unwrap(),
        ring.var(0)
    );
    // no order-1 operator restricts to it: the divided power is new at order 2
    let m = Arc::new(r.free_module(0));
    let gens = [ring.var(0)];
    assert!(!bracket_order_check(d2, &m, &m, 1, &gens, (0, 4))
        .unwrap()
        .is_verified());
    assert!(bracket_order_check(d2, &m, &m, 2, &gens, (0, 4))
        .unwrap()
        .is_verified());
}

fn euler(
    r: &PresentedAlgebra<Rationals>,
) -> impl Fn(&[Poly<Rationals>]) -> Result<Vector<Rationals>> + '_ {
    move |m: &[Poly<Rationals>]| {
        let f = r.field();
        let t = m[0]
            .terms()
            .iter()
            .map(|(mm, c)| (*mm, f.mul(c, &f.from_int(mm.weight() as i64))));
        Ok(vec![Poly::from_terms(f, t)])
    }
}

#[test]
fn euler_and_partial_derivative() {
    let r = alg(Rationals, &["x", "y"], &[]);
    let m = Arc::new(r.free_module(0));
    let space = Arc::new(OperatorSpace::new(m.clone(), m.clone(), 1).unwrap());
    let e = from_linear_action(&space, &euler(&r), 0).unwrap();
    let x2y = r.ring().parse_element("x^2*y").unwrap();
    assert_eq!(
        e.apply_scalar(&x2y).unwrap(),
        x2y.scale(&Rationals.from_int(3), &Rationals)
    );
    // E E has order 2 and multiplies by the square of the degree
    let ee = compose(&e, &e).unwrap();
    assert_eq!(ee.order(), 2);
    assert_eq!(
        ee.apply_scalar(&x2y).unwrap(),
        x2y.scale(&Rationals.from_int(9), &Rationals)
    );

    let line = alg(Rationals, &["x"], &[]);
    let ops = self_ops(&line, 1, (-1, -1));
    let d = ops.basis(-1).unwrap().remove(0);
    let x = line.ring().var(0);
    let c = d.apply_scalar(&x).unwrap().constant_term(&Rationals);
    let x3 = line.ring().parse_element("x^3").unwrap();
    let dx3 = d.apply_scalar(&x3).unwrap();
    let expected = line
        .ring()
        .parse_element("3*x^2")
        .unwrap()
        .scale(&c, &Rationals);
    assert_eq!(dx3, expected);
}

#[test]
fn bracket_checks() {
    let r = alg(Rationals, &["x"], &[]);
    let ring = r.ring().clone();
    let m = Arc::new(r.free_module(0));
    let gens = [ring.var(0)];
    let times_x = |p: &[Poly<Rationals>]| Ok(vec![ring.mul(&p[0], &ring.var(0))]);
    assert!(bracket_order_check(&times_x, &m, &m, 0, &gens, (0, 3))
        .unwrap()
        .is_verified());
    let d = self_ops(&r, 1, (-1, -1)).basis(-1).unwrap().remove(0);
    assert!(bracket_order_check(&d, &m, &m, 1, &gens, (0, 3))
        .unwrap()
        .is_verified());
    match bracket_order_check(&d, &m, &m, 0, &gens, (0, 3)).unwrap() {
        OrderCheck::Refuted { element, value, .. } => {
            // [∂, x] is a nonzero multiple of the identity
            assert!(element[0].is_one_like());
            assert_eq!(value[0].homogeneous_degree(), Some(0));
        }
        OrderCheck::Verified => panic!("∂ is not linear"),
    }
    assert!(matches!(
        bracket_order_check(&d, &m, &m, 1, &gens, (3, 2)),
        Err(AlgError::WindowTooNarrow(_))
    ));
}

trait OneLike {
    fn is_one_like(&self) -> bool;
}

impl OneLike for Poly<Rationals> {
    fn is_one_like(&self) -> bool {
        self.homogeneous_degree() == Some(0) && !self.is_zero()
    }
}

#[test]
fn composition_of_derivatives() {
    let r = alg(Rationals, &["x"], &[]);
    let d = self_ops(&r, 1, (-1, -1)).basis(-1).unwrap().remove(0);
    let dd = compose(&d, &d).unwrap();
    assert_eq!((dd.order(), dd.degree), (2, -2));
    let x3 = r.ring().parse_element("x^3").unwrap();
    let once = d.apply_scalar(&x3).unwrap();
    assert_eq!(
        dd.apply_scalar(&x3).unwrap(),
        d.apply_scalar(&once).unwrap()
    );
    assert!(!dd.is_zero());
}

#[test]
fn basis_operators_pass_their_order() {
    let fixtures: Vec<PresentedAlgebra<Rationals>> = vec![
        alg(Rationals, &["x"], &[]),
        alg(Rationals, &["x", "y"], &["x^2", "x*y", "y^2"]),
        alg(Rationals, &["a", "b", "c"], &["b^2 - a*c"]),
    ];
    for r in &fixtures {
        let ops = self_ops(r, 2, (-2, 1));
        let m = Arc::new(r.free_module(0));
        let gens: Vec<Poly<Rationals>> = (0..r.nvars()).map(|i| r.ring().var(i)).collect();
        for k in -2..=1 {
            for op in ops.basis(k).unwrap() {
                let check = bracket_order_check(&op, &m, &m, 2, &gens, (0, 3)).unwrap();
                assert!(check.is_verified(), "{r:?} degree {k}");
            }
        }
    }
}

#[test]
fn residue_field_operators_dualize_the_hilbert_function() {
    let r = alg(Rationals, &["x"], &[]);
    let m = Arc::new(r.free_module(0));
    let ops = residue_operators(&r, &m, 4, (-5, 1)).unwrap();
    for n in 0..=4usize {
        for j in 0..=5i32 {
            let expected = usize::from(j as usize <= n);
            assert_eq!(ops.table.get(n, -j), Some(expected), "n={n} j={j}");
        }
        assert_eq!(ops.table.get(n, 1), Some(0));
    }
    let r = alg(Rationals, &["x", "y"], &["x^2", "x*y", "y^2"]);
    let m = Arc::new(r.free_module(0));
    let ops = residue_operators(&r, &m, 3, (-2, 1)).unwrap();
    assert_eq!(
        [
            ops.table.get(3, 0),
            ops.table.get(3, -1),
            ops.table.get(3, -2)
        ],
        [Some(1), Some(2), Some(0)]
    );
    // D(K, K) = K
    let k = Arc::new(r.residue_field());
    let kk = diff_ops(&k, &k, 2, (-2, 2)).unwrap();
    assert_eq!(kk.table.total(2), 1);
    assert_eq!(kk.table.get(2, 0), Some(1));
}

#[test]
fn d_simplicity() {
    let r = alg(Rationals, &["x", "y"], &[]);
    let rep = d_simplicity_probe(&r, 2, 2).unwrap();
    assert_eq!(rep.verdict, DSimplicity::SimpleUpToBound);
    assert_eq!(
        rep.cells.iter().map(|c| c.target_dim).collect::<Vec<_>>(),
        vec![1, 2, 3]
    );
    let r = alg(Rationals, &["x", "y", "z"], &["x^3+y^3+z^3"]);
    let rep = d_simplicity_probe(&r, 3, 1).unwrap();
    assert_eq!(
        rep.verdict,
        DSimplicity::Obstruction {
            degree: -1,
            cokernel: 3
        }
    );
    assert_eq!(rep.cells[1].source_dim, 0);
}

#[test]
fn frobenius_on_the_line() {
    let f2 = PrimeField::new(2).unwrap();
    let r = alg(f2, &["x"], &[]);
    let ops = frobenius_operators(&r, 1, (-2, 2)).unwrap();
    assert_eq!(ops.table[&0], 2);
    assert_eq!(ops.table[&-1], 1);
    for op in &ops.operators {
        assert!(op.verified_order.is_some_and(|n| n <= 1));
    }
    // e = 0: End_R(R) = R
    let f3 = PrimeField::new(3).unwrap();
    let r = alg(f3, &["x", "y"], &["x*y"]);
    let ops = frobenius_operators(&r, 0, (-1, 3)).unwrap();
    for k in -1..=3 {
        assert_eq!(ops.table[&k], r.ring().dim(k));
    }
    assert!(matches!(
        frobenius_operators(&alg(f2, &["x"], &[]), 3, (0, 2)),
        Err(AlgError::InfeasibleBound(_))
    ));
}

#[test]
fn frobenius_on_the_elliptic_cone() {
    let f2 = PrimeField::new(2).unwrap();
    let r = alg(f2, &["x", "y", "z"], &["x^3+y^3+z^3"]);
    let ops = frobenius_operators(&r, 1, (0, 3)).unwrap();
    assert_eq!(ops.table[&0], 3);
    let mut found = false;
    for op in &ops.operators {
        assert!(op.verified_order.is_some_and(|n| n <= 6));
        found |= !op.image_is_graded_sum(0, 4).unwrap();
    }
    assert!(found);
}
