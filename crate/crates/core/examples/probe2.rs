use dopcalc::algebra::PresentedAlgebra;
use dopcalc::diffops::diff_ops;
use dopcalc::exactalg::{Field, PrimeField, Rationals};
use std::sync::Arc;

fn run<F: Field>(f: F, n: usize) {
    let r =
        PresentedAlgebra::parse(f.clone(), &["x", "y", "z"], &[1, 1, 1], &["x^3+y^3+z^3"]).unwrap();
    let m = Arc::new(r.free_module(0));
    let t = std::time::Instant::now();
    let ops = diff_ops(&m, &m, n, (-2, 2)).unwrap();
    println!(
        "{:?} {:?} {:?}",
        f.descriptor(),
        ops.table.cells,
        t.elapsed()
    );
}

fn main() {
    let n: usize = std::env::args().nth(1).unwrap().parse().unwrap();
    run(Rationals, n);
    for p in [2, 3, 5, 7] {
        run(PrimeField::new(p).unwrap(), n);
    }
}
