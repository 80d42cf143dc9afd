//! Algebraic invariants checked on random inputs and on a set of fixtures.

use std::sync::Arc;

use dopcalc::algebra::PresentedAlgebra;
use dopcalc::diffops::{bracket_order_check, compose, diff_ops, spanning_set, DiffOperator};
use dopcalc::exactalg::{Field, Monomial, Poly, PrimeField, Rationals};
use dopcalc::groebner::{ext_cell, free_resolution, hom_presentation, GradedRing, Presentation};
use dopcalc::linalg::rank;
use proptest::prelude::*;

fn alg<F: Field>(f: F, v: &[&str], rels: &[&str]) -> PresentedAlgebra<F> {
    PresentedAlgebra::parse(f, v, &vec![1; v.len()], rels).unwrap()
}

fn poly<F: Field>(f: &F, terms: &[([u32; 3], i64)]) -> Poly<F> {
    Poly::from_terms(
        f,
        terms
            .iter()
            .map(|(e, c)| (Monomial::new(e, &[1, 1, 1]), f.from_int(*c))),
    )
}

/// A homogeneous form of degree `d` in three variables.
fn form<F: Field>(f: &F, d: u32, coeffs: &[i64]) -> Poly<F> {
    let mut terms = Vec::new();
    let mut c = coeffs.iter().cycle();
    for a in 0..=d {
        for b in 0..=d - a {
            terms.push(([a, b, d - a - b], *c.next().unwrap()));
        }
    }
    poly(f, &terms)
}

fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || n < k {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn terms_strategy() -> impl Strategy<Value = Vec<([u32; 3], i64)>> {
    proptest::collection::vec(([0u32..3, 0u32..3, 0u32..3], -4i64..5), 0..6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn prime_field_axioms(a in 0i64..1000, b in 0i64..1000, c in 0i64..1000, p in prop::sample::select(vec![2u64, 3, 7, 101, 2147483647])) {
        let f = PrimeField::new(p).unwrap();
        let (a, b, c) = (f.from_int(a), f.from_int(b), f.from_int(c));
        prop_assert_eq!(f.mul(&f.add(&a, &b), &c), f.add(&f.mul(&a, &c), &f.mul(&b, &c)));
        prop_assert_eq!(f.add(&f.sub(&a, &b), &b), a);
        if !f.is_zero(&a) {
            prop_assert!(f.is_one(&f.mul(&a, &f.inv(&a).unwrap())));
        } else {
            prop_assert!(f.inv(&a).is_err());
        }
    }

    #[test]
    fn rational_field_axioms(a in -50i64..50, b in -50i64..50, c in 1i64..50) {
        let f = Rationals;
        let q = f.div(&f.from_int(a), &f.from_int(c)).unwrap();
        let r = f.from_int(b);
        prop_assert_eq!(f.mul(&f.add(&q, &r), &f.from_int(c)), f.add(&f.from_int(a), &f.from_int(b * c)));
        prop_assert_eq!(f.add(&q, &f.neg(&q)), f.zero());
    }

    #[test]
    fn polynomial_ring_laws(a in terms_strategy(), b in terms_strategy(), c in terms_strategy()) {
        let f = Rationals;
        let (a, b, c) = (poly(&f, &a), poly(&f, &b), poly(&f, &c));
        prop_assert_eq!(a.mul(&b, &f), b.mul(&a, &f));
        prop_assert_eq!(a.mul(&b.add(&c, &f), &f), a.mul(&b, &f).add(&a.mul(&c, &f), &f));
        prop_assert_eq!(a.mul(&b, &f).mul(&c, &f), a.mul(&b.mul(&c, &f), &f));
        prop_assert!(a.sub(&a, &f).is_zero());
    }

    #[test]
    fn normal_form_is_additive_and_multiplicative(a in terms_strategy(), b in terms_strategy()) {
        let r = GradedRing::parse(Rationals, &["x", "y", "z"], &[1, 1, 1], &["x^3+y^3+z^3", "x*y*z - y^3"]).unwrap();
        let f = Rationals;
        let (a, b) = (poly(&f, &a), poly(&f, &b));
        prop_assert_eq!(r.reduce(&a.add(&b, &f)), r.reduce(&a).add(&r.reduce(&b), &f));
        prop_assert_eq!(r.reduce(&a.mul(&b, &f)), r.reduce(&r.reduce(&a).mul(&b, &f)));
        prop_assert_eq!(r.reduce(&r.reduce(&a)), r.reduce(&a));
    }

    #[test]
    fn resolutions_are_complexes_with_the_right_euler_characteristic(
        gens in proptest::collection::vec(proptest::collection::vec(0i64..7, 6), 1..4),
    ) {
        let f = PrimeField::new(7).unwrap();
        let s = Arc::new(GradedRing::polynomial(f, vec!["x".into(), "y".into(), "z".into()], vec![1, 1, 1]).unwrap());
        let ideal: Vec<Poly<PrimeField>> = gens.iter().map(|c| form(&f, 2, c)).collect();
        let m = Presentation::cyclic(s.clone(), &ideal).unwrap();
        let res = free_resolution(&m, 4).unwrap();
        prop_assert!(res.check_complex());
        // Hilbert's syzygy theorem: nothing beyond F_3
        prop_assert!(res.degrees(4).is_empty());
        for d in 0..8 {
            let mut chi = 0i64;
            for i in 0..=3 {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                chi += sign * res.degrees(i).iter().map(|&g| binomial((d - g) as i64 + 2, 2)).sum::<i64>();
            }
            prop_assert_eq!(chi, m.dim(d).unwrap() as i64, "degree {}", d);
        }
    }

    #[test]
    fn resolutions_over_quotient_rings_are_complexes(c in proptest::collection::vec(0i64..7, 3)) {
        let f = PrimeField::new(7).unwrap();
        let r = Arc::new(GradedRing::parse(f, &["x", "y", "z"], &[1, 1, 1], &["x^2 + y*z"]).unwrap());
        let linear = poly(&f, &[([1, 0, 0], c[0]), ([0, 1, 0], c[1]), ([0, 0, 1], c[2])]);
        let m = Presentation::cyclic(r, &[linear]).unwrap();
        let res = free_resolution(&m, 4).unwrap();
        prop_assert!(res.check_complex());
    }

    /// `Ext^0(S/I, S/J)_k` against `{r ∈ (S/J)_k : I r ⊆ J}`.
    #[test]
    fn ext_zero_is_hom(
        i_gens in proptest::collection::vec(proptest::collection::vec(0i64..5, 6), 1..3),
        j_gens in proptest::collection::vec(proptest::collection::vec(0i64..5, 10), 1..3),
    ) {
        let f = PrimeField::new(5).unwrap();
        let names: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
        let s = Arc::new(GradedRing::polynomial(f, names.clone(), vec![1, 1, 1]).unwrap());
        let ideal_i: Vec<Poly<PrimeField>> = i_gens.iter().map(|c| form(&f, 2, c)).collect();
        let ideal_j: Vec<Poly<PrimeField>> = j_gens.iter().map(|c| form(&f, 3, c)).collect();
        let m = Presentation::cyclic(s.clone(), &ideal_i).unwrap();
        let n = Presentation::cyclic(s.clone(), &ideal_j).unwrap();
        let quotient = GradedRing::new(f, names, vec![1, 1, 1], ideal_j.clone(), 50).unwrap();
        let res = free_resolution(&m, 1).unwrap();
        let hom = hom_presentation(&m, &n).unwrap();
        for k in 0..5 {
            let piece = quotient.piece(k);
            let images: Vec<Vec<(usize, u32)>> = piece
                .monos
                .iter()
                .map(|mono| {
                    let r = Poly::term(&f, *mono, f.one());
                    let mut v = Vec::new();
                    let mut offset = 0;
                    for g in &ideal_i {
                        v.extend(quotient.coords(&g.mul(&r, &f)).into_iter().map(|(i, c)| (i + offset, c)));
                        offset += quotient.dim(k + 2);
                    }
                    v
                })
                .collect();
            let oracle = piece.len() - rank(&f, &images);
            prop_assert_eq!(ext_cell(&res, &n, 0, k).unwrap().dim, oracle, "degree {}", k);
            prop_assert_eq!(hom.presentation().dim(k).unwrap(), oracle);
        }
    }
}

/// `(name, algebra, order, window)`.
type Fixture = (&'static str, PresentedAlgebra<Rationals>, usize, (i32, i32));

/// Fixtures shared by the operator properties.
fn fixtures() -> Vec<Fixture> {
    vec![
        ("line", alg(Rationals, &["x"], &[]), 3, (-3, 2)),
        ("plane", alg(Rationals, &["x", "y"], &[]), 2, (-2, 1)),
        (
            "quadric cone",
            alg(Rationals, &["a", "b", "c"], &["b^2 - a*c"]),
            2,
            (-2, 1),
        ),
        (
            "artinian",
            alg(Rationals, &["x", "y"], &["x^2", "x*y", "y^2"]),
            2,
            (-2, 2),
        ),
        (
            "elliptic cone",
            alg(Rationals, &["x", "y", "z"], &["x^3+y^3+z^3"]),
            1,
            (-1, 1),
        ),
    ]
}

fn gens<F: Field>(r: &PresentedAlgebra<F>) -> Vec<Poly<F>> {
    (0..r.nvars()).map(|i| r.ring().var(i)).collect()
}

/// A combination of the basis of `D^n_k` with small integer coefficients,
/// built on the cocycle representatives of the cell.
fn combination(ops: &[DiffOperator<Rationals>], coeffs: &[i64]) -> Option<DiffOperator<Rationals>> {
    let f = Rationals;
    let first = ops.first()?;
    let reps = first.space.cell(first.degree).unwrap().reps;
    let mut z = std::collections::BTreeMap::new();
    for (rep, &c) in reps.iter().zip(coeffs) {
        for (i, x) in rep {
            let e = z.entry(*i).or_insert_with(|| f.zero());
            *e = f.add(e, &f.mul(x, &f.from_int(c)));
        }
    }
    let z: Vec<_> = z.into_iter().filter(|(_, c)| !f.is_zero(c)).collect();
    Some(first.space.operator(first.degree, &z).unwrap())
}

#[test]
fn order_filtration_is_monotone() {
    for (name, r, n, window) in fixtures() {
        let m = Arc::new(r.free_module(0));
        let ops = diff_ops(&m, &m, n, window).unwrap();
        assert!(ops.table.is_monotone(), "{name}");
        // order 0 operators are multiplications by ring elements
        for k in window.0..=window.1 {
            assert_eq!(
                ops.table.get(0, k),
                Some(r.ring().dim(k)),
                "{name} degree {k}"
            );
        }
    }
}

#[test]
fn every_basis_operator_passes_its_bracket_check() {
    for (name, r, n, window) in fixtures() {
        let m = Arc::new(r.free_module(0));
        let ops = diff_ops(&m, &m, n, window).unwrap();
        let g = gens(&r);
        for k in window.0..=window.1 {
            for op in ops.basis(k).unwrap() {
                let check = bracket_order_check(&op, &m, &m, n, &g, (0, 3)).unwrap();
                assert!(check.is_verified(), "{name} degree {k}");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn composition_adds_orders_and_is_composition(
        fixture in 0usize..3,
        k1 in -1i32..1,
        k2 in -1i32..1,
        c1 in proptest::collection::vec(-3i64..4, 8),
        c2 in proptest::collection::vec(-3i64..4, 8),
    ) {
        let (_, r, _, _) = fixtures().swap_remove(fixture);
        let m = Arc::new(r.free_module(0));
        let ops = diff_ops(&m, &m, 1, (-1, 0)).unwrap();
        let (Some(d1), Some(d2)) = (combination(&ops.basis(k1).unwrap(), &c1), combination(&ops.basis(k2).unwrap(), &c2)) else {
            return Ok(());
        };
        let c = compose(&d1, &d2).unwrap();
        prop_assert_eq!(c.order(), 2);
        prop_assert_eq!(c.degree, k1 + k2);
        for v in spanning_set(&m, 0, 3).unwrap() {
            prop_assert_eq!(c.apply(&v).unwrap(), d2.apply(&d1.apply(&v).unwrap()).unwrap());
        }
        prop_assert!(bracket_order_check(&c, &m, &m, 2, &gens(&r), (0, 3)).unwrap().is_verified());
    }
}

#[test]
fn composition_is_associative_on_basis_triples() {
    for (name, r) in [
        ("plane", alg(Rationals, &["x", "y"], &[])),
        (
            "quadric cone",
            alg(Rationals, &["a", "b", "c"], &["b^2 - a*c"]),
        ),
    ] {
        let m = Arc::new(r.free_module(0));
        let ops = diff_ops(&m, &m, 1, (-1, -1)).unwrap();
        let basis = ops.basis(-1).unwrap();
        let span = spanning_set(&m, 0, 3).unwrap();
        for a in &basis {
            for b in &basis {
                for c in basis.iter().take(2) {
                    let left = compose(&compose(a, b).unwrap(), c).unwrap();
                    let right = compose(a, &compose(b, c).unwrap()).unwrap();
                    assert_eq!(
                        left.coordinates().unwrap(),
                        right.coordinates().unwrap(),
                        "{name}"
                    );
                    for v in &span {
                        assert_eq!(left.apply(v).unwrap(), right.apply(v).unwrap(), "{name}");
                    }
                }
            }
        }
    }
}
