//! One function per command. Each returns its tables, notes and status.

use std::sync::Arc;

use anyhow::{bail, Context};
use dopcalc::algebra::PresentedAlgebra;
use dopcalc::cohomology::{
    depth_probe, horrocks_check, left_right_compare, local_cohomology, svdb, theorem_a_compare,
    ColimitCell, ColimitTable, ComparisonReport, DepthReport, Stability, Verdict,
};
use dopcalc::diffops::{d_simplicity_probe, diff_ops, frobenius_operators, DSimplicity};
use dopcalc::exactalg::{Field, Poly, PrimeField, Rationals};
use dopcalc::groebner::GradedRing;
use dopcalc::reduction::{torsion_scan, IntegralPresentation, TorsionVerdict};
use serde_json::{json, Value};

use crate::config::{ModuleChoice, RunConfig};
use crate::report::{Status, Table};
use crate::ring::{FieldSpec, RingDescription};
use crate::Command;

pub struct Outcome {
    pub status: Status,
    pub tables: Vec<Table>,
    pub notes: Vec<String>,
}

impl Outcome {
    fn ok(tables: Vec<Table>) -> Self {
        Outcome {
            status: Status::Ok,
            tables,
            notes: Vec::new(),
        }
    }
}

pub fn dispatch(
    command: Command,
    ring: &RingDescription,
    cfg: &RunConfig,
) -> anyhow::Result<Outcome> {
    match (ring.field, command) {
        (FieldSpec::Integers, Command::TorsionScan) => torsion(ring, cfg),
        (FieldSpec::Integers, c) => bail!(
            "{} needs a field; ZZ rings are only for torsion-scan",
            c.name()
        ),
        (_, Command::TorsionScan) => bail!("torsion-scan needs a ring over ZZ (field ZZ;)"),
        (FieldSpec::Rationals, c) => run_over(Rationals, ring, cfg, c),
        (FieldSpec::Prime(p), c) => run_over(PrimeField::new(p)?, ring, cfg, c),
    }
}

fn algebra<F: Field>(
    field: F,
    ring: &RingDescription,
    cfg: &RunConfig,
) -> anyhow::Result<PresentedAlgebra<F>> {
    let rels = ring
        .relations
        .iter()
        .map(|g| {
            let terms = g
                .terms()
                .iter()
                .map(|(m, c)| Ok((*m, field.from_rational(&c.to_big())?)));
            Ok(Poly::from_terms(
                &field,
                terms.collect::<dopcalc::Result<Vec<_>>>()?,
            ))
        })
        .collect::<dopcalc::Result<Vec<_>>>()
        .context("reducing the relations into the coefficient field")?;
    let ring = GradedRing::new(
        field,
        ring.names.clone(),
        ring.weights.clone(),
        rels,
        cfg.degree_cap,
    )?;
    Ok(PresentedAlgebra::new(ring))
}

fn run_over<F: Field>(
    field: F,
    ring: &RingDescription,
    cfg: &RunConfig,
    c: Command,
) -> anyhow::Result<Outcome> {
    let r = algebra(field, ring, cfg)?;
    let window = cfg.window.pair();
    match c {
        Command::Dops => {
            let m = Arc::new(r.free_module(0));
            let ops = diff_ops(&m, &m, cfg.order, window)?;
            let mut t = Table::new("operators", &["order", "degree", "dim"]);
            for (&(n, k), &d) in &ops.table.cells {
                t.push(vec![json!(n), json!(k), json!(d)]);
            }
            Ok(Outcome::ok(vec![t]))
        }
        Command::Svdb => {
            let m = match cfg.module {
                ModuleChoice::Ring => r.free_module(0),
                ModuleChoice::Omega => r.canonical()?.presentation.clone(),
            };
            Ok(colimit_outcome(
                "svdb",
                &svdb(&r, &m, &cfg.indices, window, cfg.n_max)?,
            ))
        }
        Command::Lc => {
            let vars: Vec<_> = (0..r.nvars()).map(|i| r.ring().var(i)).collect();
            let m = r.free_module(0);
            Ok(colimit_outcome(
                "local_cohomology",
                &local_cohomology(r.ring(), &vars, &m, &cfg.indices, window, cfg.t_max)?,
            ))
        }
        Command::TheoremA => Ok(comparison_outcome(&theorem_a_compare(
            &r,
            &cfg.indices,
            window,
            cfg.n_max,
        )?)),
        Command::Horrocks => Ok(comparison_outcome(&horrocks_check(
            &r,
            cfg.order,
            &cfg.indices,
            window,
            cfg.t_max,
        )?)),
        Command::Dsimple => {
            let rep = d_simplicity_probe(&r, cfg.order, cfg.depth)?;
            let mut t = Table::new("cells", &["degree", "source_dim", "target_dim", "rank"]);
            for c in &rep.cells {
                t.push(vec![
                    json!(c.degree),
                    json!(c.source_dim),
                    json!(c.target_dim),
                    json!(c.rank),
                ]);
            }
            let mut v = Table::new("verdict", &["verdict", "degree", "cokernel"]);
            v.push(match rep.verdict {
                DSimplicity::SimpleUpToBound => {
                    vec![json!("simple_up_to_bound"), Value::Null, Value::Null]
                }
                DSimplicity::Obstruction { degree, cokernel } => {
                    vec![json!("obstruction"), json!(degree), json!(cokernel)]
                }
            });
            Ok(Outcome::ok(vec![t, v]))
        }
        Command::Frobenius => frobenius(&r, cfg),
        Command::Depth => {
            let rep = depth_probe(&r, window, cfg.i_max, cfg.n_max)?;
            let mut t = Table::new("depth", &["verdict", "index", "depth"]);
            let status = match rep {
                DepthReport::Implied { index, depth } => {
                    t.push(vec![json!("implied"), json!(index), json!(depth)]);
                    Status::Ok
                }
                DepthReport::NoObstruction {
                    i_max,
                    depth_at_least,
                } => {
                    t.push(vec![
                        json!("no_obstruction"),
                        json!(i_max),
                        json!(depth_at_least),
                    ]);
                    Status::Ok
                }
                DepthReport::Inconclusive { index } => {
                    t.push(vec![json!("inconclusive"), json!(index), Value::Null]);
                    Status::Inconclusive
                }
            };
            Ok(Outcome {
                status,
                tables: vec![t],
                notes: Vec::new(),
            })
        }
        Command::Leftright => {
            let rep = left_right_compare(&r, cfg.order, window)?;
            let mut t = Table::new(
                "degrees",
                &["degree", "dim", "left_generators", "right_generators"],
            );
            for ((h, l), rt) in rep.hilbert.iter().zip(&rep.left).zip(&rep.right) {
                t.push(vec![json!(h.0), json!(h.1), json!(l.1), json!(rt.1)]);
            }
            let mut s = Table::new(
                "summary",
                &["order", "left_count", "right_count", "identical"],
            );
            s.push(vec![
                json!(rep.order),
                json!(rep.left_count()),
                json!(rep.right_count()),
                json!(rep.identical()),
            ]);
            Ok(Outcome::ok(vec![t, s]))
        }
        Command::TorsionScan => unreachable!("dispatched before choosing a field"),
    }
}

fn stability(c: &ColimitCell) -> Value {
    match c.stability {
        Stability::Stable(s) => json!(format!("stable({s})")),
        Stability::Unstable => json!("unstable"),
    }
}

fn colimit_outcome(name: &str, table: &ColimitTable) -> Outcome {
    let mut t = Table::new(
        name,
        &["index", "degree", "dims", "ranks", "stability", "dim"],
    );
    for (&(i, k), c) in &table.cells {
        t.push(vec![
            json!(i),
            json!(k),
            json!(c.dims),
            json!(c.ranks),
            stability(c),
            json!(c.dim),
        ]);
    }
    let unstable = table.cells.values().filter(|c| !c.is_stable()).count();
    let mut notes = vec![format!("stages {:?}", table.stages)];
    let status = if unstable > 0 {
        notes.push(format!(
            "{unstable} cells did not stabilize; raise the stage bound"
        ));
        Status::Inconclusive
    } else {
        Status::Ok
    };
    Outcome {
        status,
        tables: vec![t],
        notes,
    }
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Match => "match",
        Verdict::Mismatch => "mismatch",
        Verdict::Inconclusive => "inconclusive",
    }
}

fn comparison_outcome(rep: &ComparisonReport) -> Outcome {
    let cols = [
        "index",
        "degree",
        "lhs_dims",
        "rhs_dims",
        "lhs_stability",
        "rhs_stability",
        "lhs_dim",
        "rhs_dim",
        "stagewise",
        "verdict",
    ];
    let mut t = Table::new("cells", &cols);
    let mut status = Status::Ok;
    for c in &rep.cells {
        let stagewise = c
            .stagewise
            .iter()
            .map(|&b| if b { "=" } else { "!" })
            .collect::<String>();
        t.push(vec![
            json!(c.index),
            json!(c.degree),
            json!(c.lhs.dims),
            json!(c.rhs.dims),
            stability(&c.lhs),
            stability(&c.rhs),
            json!(c.lhs.dim),
            json!(c.rhs.dim),
            json!(stagewise),
            json!(verdict_name(c.verdict)),
        ]);
        status = status.and(match c.verdict {
            Verdict::Match => Status::Ok,
            Verdict::Inconclusive => Status::Inconclusive,
            Verdict::Mismatch => Status::Failed,
        });
    }
    let mut notes = vec![
        format!(
            "lhs stages {:?}, rhs stages {:?}",
            rep.lhs_stages, rep.rhs_stages
        ),
        format!("reported degree = internal degree - {}", rep.degree_shift),
    ];
    notes.push(if rep.stagewise_agree() {
        "every aligned stage agrees in every cell".into()
    } else {
        "some aligned stages disagree".into()
    });
    Outcome {
        status,
        tables: vec![t],
        notes,
    }
}

fn frobenius<F: Field>(r: &PresentedAlgebra<F>, cfg: &RunConfig) -> anyhow::Result<Outcome> {
    if r.field().characteristic() == 0 {
        bail!("frobenius needs a field of positive characteristic (field Fp p;)");
    }
    let window = cfg.window.pair();
    let ops = frobenius_operators(r, cfg.exponent, window)?;
    let mut t = Table::new("endomorphisms", &["degree", "dim"]);
    for (&k, &d) in &ops.table {
        t.push(vec![json!(k), json!(d)]);
    }
    let (lo, hi) = (0, window.1.max(0));
    let mut o = Table::new(
        "degree_zero_basis",
        &["index", "verified_order", "graded_sum_image", "image_ranks"],
    );
    let mut status = Status::Ok;
    for (j, op) in ops.operators.iter().enumerate() {
        let ranks = op.image_ranks(lo, hi)?;
        let graded = ranks.iter().all(|&(_, rk, d)| rk == 0 || rk == d);
        let ranks: Vec<String> = ranks
            .iter()
            .map(|(d, rk, n)| format!("{d}:{rk}/{n}"))
            .collect();
        if op.verified_order.is_none() {
            status = Status::Inconclusive;
        }
        o.push(vec![
            json!(j),
            json!(op.verified_order),
            json!(graded),
            json!(ranks),
        ]);
    }
    let notes = vec![format!(
        "q = {}; images checked in degrees {lo}..={hi}",
        ops.context.q
    )];
    Ok(Outcome {
        status,
        tables: vec![t, o],
        notes,
    })
}

fn torsion(ring: &RingDescription, cfg: &RunConfig) -> anyhow::Result<Outcome> {
    let rz = IntegralPresentation::new(
        ring.names.clone(),
        ring.weights.clone(),
        ring.relations.clone(),
    )?
    .with_degree_cap(cfg.degree_cap);
    let rep = torsion_scan(&rz, &cfg.primes, cfg.order, cfg.window.pair())?;
    let mut rows = Table::new(
        "comparison",
        &[
            "prime", "order", "degree", "dimQ", "dimFp", "excess", "verdict",
        ],
    );
    for r in &rep.rows {
        let v = match r.verdict {
            TorsionVerdict::NoWitness => "no_witness",
            TorsionVerdict::TorsionWitness => "torsion_witness",
            TorsionVerdict::BadPrime => "bad_prime",
        };
        rows.push(vec![
            json!(r.prime),
            json!(r.order),
            json!(r.degree),
            json!(r.dim_q),
            json!(r.dim_fp),
            json!(r.excess),
            json!(v),
        ]);
    }
    let mut primes = Table::new("primes", &["prime", "good", "witness", "note"]);
    for s in &rep.primes {
        primes.push(vec![
            json!(s.prime),
            json!(s.good),
            json!(s.witness),
            json!(s.note),
        ]);
    }
    let notes = vec![format!(
        "torsion witnesses hold modulo flatness hypotheses: {}",
        rep.hypotheses.join("; ")
    )];
    Ok(Outcome {
        status: Status::Ok,
        tables: vec![rows, primes],
        notes,
    })
}
