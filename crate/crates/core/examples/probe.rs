use dopcalc::algebra::PresentedAlgebra;
use dopcalc::cohomology::*;
use dopcalc::exactalg::Rationals;
use std::time::Instant;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let which = args[1].as_str();
    let n: usize = args[2].parse().unwrap();
    let t0 = Instant::now();
    match which {
        "cone" => {
            let r =
                PresentedAlgebra::parse(Rationals, &["a", "b", "c"], &[1, 1, 1], &["b^2 - a*c"])
                    .unwrap();
            let rep = theorem_a_compare(&r, &[0, 1], (-2, 2), n).unwrap();
            for c in &rep.cells {
                println!(
                    "i={} k={} lhs={:?} {:?} rhs={:?} {:?} {:?}",
                    c.index,
                    c.degree,
                    c.lhs.dims,
                    c.lhs.stability,
                    c.rhs.dims,
                    c.rhs.stability,
                    c.verdict
                );
            }
        }
        "cone_lhs" => {
            let r =
                PresentedAlgebra::parse(Rationals, &["a", "b", "c"], &[1, 1, 1], &["b^2 - a*c"])
                    .unwrap();
            let om = r.canonical().unwrap();
            let t = svdb(&r, &om.presentation, &[0, 1], (-1, 3), n).unwrap();
            for (k, c) in &t.cells {
                println!("{k:?} {:?} {:?} {:?}", c.dims, c.ranks, c.stability);
            }
        }
        "horrocks" => {
            let r = PresentedAlgebra::parse(
                Rationals,
                &["x", "y", "z", "w"],
                &[1, 1, 1, 1],
                &["x^2+y^2+z^2+w^2"],
            )
            .unwrap();
            let rep = horrocks_check(&r, 1, &[1], (-1, 1), n).unwrap();
            for c in &rep.cells {
                println!(
                    "i={} k={} lhs={:?} rhs={:?} {:?} {:?}",
                    c.index, c.degree, c.lhs.dims, c.rhs.dims, c.rhs.stability, c.verdict
                );
            }
        }
        _ => {}
    }
    eprintln!("{:?}", t0.elapsed());
}
