//! Comparison of operator dimensions between the rational fiber and the
//! fibers modulo primes of an algebra defined over the integers.
//!
//! A strictly positive excess `dim_{F_p} - dim_Q` at a good prime certifies
//! that operators do not commute with base change there, which under the
//! stated flatness hypotheses means `p`-torsion in `R^1 D`.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_traits::One;
use rayon::prelude::*;

use crate::algebra::{principal_parts, PresentedAlgebra};
use crate::diffops::{diff_ops, OperatorTable};
use crate::error::{AlgError, Result};
use crate::exactalg::{Field, Monomial, Poly, PrimeField, Rationals};
use crate::groebner::{GradedRing, DEFAULT_DEGREE_CAP};

/// The hypotheses under which an excess is a torsion witness.
pub const HYPOTHESES: [&str; 2] = [
    "R is flat over Z localized at p",
    "every P^n is a projective module over Z localized at p",
];

/// Generators, weights and relations with integer coefficients.
#[derive(Clone, Debug)]
pub struct IntegralPresentation {
    pub names: Vec<String>,
    pub weights: Vec<i32>,
    pub relations: Vec<Poly<Rationals>>,
    pub degree_cap: i32,
}

impl IntegralPresentation {
    pub fn new(
        names: Vec<String>,
        weights: Vec<i32>,
        relations: Vec<Poly<Rationals>>,
    ) -> Result<Self> {
        for g in &relations {
            if let Some((m, c)) = g.terms().iter().find(|(_, c)| !c.denom().is_one()) {
                return Err(AlgError::InvalidRing(format!(
                    "coefficient {c} of {} is not an integer",
                    m.fmt_with(&names)
                )));
            }
        }
        // validates homogeneity and weights once, over Q
        GradedRing::new(
            Rationals,
            names.clone(),
            weights.clone(),
            relations.clone(),
            DEFAULT_DEGREE_CAP,
        )?;
        Ok(IntegralPresentation {
            names,
            weights,
            relations,
            degree_cap: DEFAULT_DEGREE_CAP,
        })
    }

    pub fn parse(names: &[&str], weights: &[i32], relations: &[&str]) -> Result<Self> {
        let ring = GradedRing::parse(Rationals, names, weights, relations)?;
        IntegralPresentation::new(
            ring.names().to_vec(),
            weights.to_vec(),
            ring.relations().to_vec(),
        )
    }

    pub fn with_degree_cap(mut self, cap: i32) -> Self {
        self.degree_cap = cap;
        self
    }

    pub fn rational_fiber(&self) -> Result<PresentedAlgebra<Rationals>> {
        let ring = GradedRing::new(
            Rationals,
            self.names.clone(),
            self.weights.clone(),
            self.relations.clone(),
            self.degree_cap,
        )?;
        Ok(PresentedAlgebra::new(ring))
    }

    /// `R/pR`. Fails with `BadReduction` when a relation vanishes mod `p`.
    pub fn fiber(&self, p: u64) -> Result<PresentedAlgebra<PrimeField>> {
        let f = PrimeField::new(p)?;
        let mut rels = Vec::with_capacity(self.relations.len());
        for g in &self.relations {
            let terms: Vec<(Monomial, u32)> = g
                .terms()
                .iter()
                .map(|(m, c)| Ok((*m, f.from_rational(&c.to_big())?)))
                .collect::<Result<_>>()?;
            let h = Poly::from_terms(&f, terms);
            if h.is_zero() {
                return Err(AlgError::BadReduction { p });
            }
            rels.push(h);
        }
        let ring = GradedRing::new(
            f,
            self.names.clone(),
            self.weights.clone(),
            rels,
            self.degree_cap,
        )?;
        Ok(PresentedAlgebra::new(ring))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TorsionVerdict {
    NoWitness,
    /// Positive excess at a good prime, modulo [`HYPOTHESES`].
    TorsionWitness,
    BadPrime,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct TorsionRow {
    pub prime: u64,
    pub order: usize,
    pub degree: i32,
    pub dim_q: usize,
    pub dim_fp: usize,
    pub excess: i64,
    pub verdict: TorsionVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct PrimeSummary {
    pub prime: u64,
    pub good: bool,
    /// Why the prime is bad, or the error that stopped its computation.
    pub note: Option<String>,
    pub witness: bool,
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct TorsionReport {
    pub hypotheses: Vec<String>,
    pub rows: Vec<TorsionRow>,
    pub primes: Vec<PrimeSummary>,
}

impl TorsionReport {
    pub fn summary(&self, p: u64) -> Option<&PrimeSummary> {
        self.primes.iter().find(|s| s.prime == p)
    }

    pub fn witnesses(&self) -> Vec<u64> {
        self.primes
            .iter()
            .filter(|s| s.witness)
            .map(|s| s.prime)
            .collect()
    }
}

fn lead_ideal<F: Field>(r: &PresentedAlgebra<F>) -> BTreeSet<Vec<u32>> {
    let n = r.nvars();
    r.ring()
        .ideal_gb()
        .lead_monomials()
        .map(|mm| (0..n).map(|i| mm.mon.exp(i)).collect())
        .collect()
}

/// Degrees in which the Hilbert functions of `P^m` are compared.
fn hilbert_range(r: &IntegralPresentation, n: usize, window: (i32, i32)) -> (i32, i32) {
    let rel = r
        .relations
        .iter()
        .filter_map(|g| g.homogeneous_degree())
        .max()
        .unwrap_or(0);
    let w = r.weights.iter().copied().max().unwrap_or(1);
    (0, w * n as i32 + rel + window.1.max(0) + 1)
}

/// `None` if `p` is good, else the reason. Compares the lead-term ideals of
/// the defining ideal and the Hilbert functions of `P^m` for `m <= n`.
pub fn bad_prime_reason(
    rz: &IntegralPresentation,
    q: &PresentedAlgebra<Rationals>,
    fp: &PresentedAlgebra<PrimeField>,
    n: usize,
    window: (i32, i32),
) -> Result<Option<String>> {
    if lead_ideal(q) != lead_ideal(fp) {
        return Ok(Some(
            "lead-term ideal differs from the rational fiber".into(),
        ));
    }
    let (lo, hi) = hilbert_range(rz, n, window);
    for m in 0..=n {
        let hq = principal_parts(q, m)?.presentation.hilbert_window(lo, hi)?;
        let hp = principal_parts(fp, m)?
            .presentation
            .hilbert_window(lo, hi)?;
        if hq != hp {
            return Ok(Some(format!(
                "principal parts of order {m} change their Hilbert function"
            )));
        }
    }
    Ok(None)
}

/// Operator dimensions of orders `0..=n` of the rational fiber.
pub fn rational_table(
    rz: &IntegralPresentation,
    n: usize,
    window: (i32, i32),
) -> Result<OperatorTable> {
    let q = rz.rational_fiber()?;
    let m = Arc::new(q.free_module(0));
    Ok(diff_ops(&m, &m, n, window)?.table)
}

/// Rows for one prime against a precomputed rational table.
pub fn base_change_compare(
    rz: &IntegralPresentation,
    q_table: &OperatorTable,
    p: u64,
    n: usize,
    window: (i32, i32),
) -> Result<(Vec<TorsionRow>, PrimeSummary)> {
    let q = rz.rational_fiber()?;
    let fp = rz.fiber(p)?;
    let reason = bad_prime_reason(rz, &q, &fp, n, window)?;
    let m = Arc::new(fp.free_module(0));
    let table = diff_ops(&m, &m, n, window)?.table;
    let mut rows = Vec::new();
    let mut good = reason.is_none();
    let mut note = reason;
    for (&(order, degree), &dim_fp) in &table.cells {
        let dim_q = q_table.get(order, degree).ok_or_else(|| {
            AlgError::InfeasibleBound(format!("rational table lacks the cell ({order}, {degree})"))
        })?;
        let excess = dim_fp as i64 - dim_q as i64;
        if excess < 0 && good {
            good = false;
            note = Some(format!(
                "dimension drops in cell ({order}, {degree}), violating semicontinuity"
            ));
        }
        rows.push(TorsionRow {
            prime: p,
            order,
            degree,
            dim_q,
            dim_fp,
            excess,
            verdict: TorsionVerdict::NoWitness,
        });
    }
    for row in rows.iter_mut() {
        row.verdict = if !good {
            TorsionVerdict::BadPrime
        } else if row.excess > 0 {
            TorsionVerdict::TorsionWitness
        } else {
            TorsionVerdict::NoWitness
        };
    }
    let witness = rows
        .iter()
        .any(|r| r.verdict == TorsionVerdict::TorsionWitness);
    Ok((
        rows,
        PrimeSummary {
            prime: p,
            good,
            note,
            witness,
        },
    ))
}

/// [`base_change_compare`] over a list of primes; per-prime failures are
/// recorded in the summaries.
pub fn torsion_scan(
    rz: &IntegralPresentation,
    primes: &[u64],
    n: usize,
    window: (i32, i32),
) -> Result<TorsionReport> {
    let q_table = rational_table(rz, n, window)?;
    let outcomes: Vec<(Vec<TorsionRow>, PrimeSummary)> = primes
        .par_iter()
        .map(|&p| {
            base_change_compare(rz, &q_table, p, n, window).unwrap_or_else(|e| {
                (
                    Vec::new(),
                    PrimeSummary {
                        prime: p,
                        good: false,
                        note: Some(e.to_string()),
                        witness: false,
                    },
                )
            })
        })
        .collect();
    let mut rows = Vec::new();
    let mut summaries = Vec::new();
    for (r, s) in outcomes {
        rows.extend(r);
        summaries.push(s);
    }
    Ok(TorsionReport {
        hypotheses: HYPOTHESES.iter().map(|s| s.to_string()).collect(),
        rows,
        primes: summaries,
    })
}
