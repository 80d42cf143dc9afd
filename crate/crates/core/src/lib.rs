//! Exact computation of rings of differential operators, modules of principal
//! parts, Ext and local cohomology of finitely presented graded algebras,
//! together with the derived functors of differential operators and their
//! behavior under reduction modulo primes.

pub mod algebra;
pub mod cohomology;
pub mod diffops;
pub mod error;
pub mod exactalg;
pub mod groebner;
pub mod linalg;
pub mod reduction;

pub use error::{AlgError, Result};
