//! Exact coefficient arithmetic and sparse multivariate polynomials.

mod field;
mod monomial;
mod parse;
mod poly;
mod rational;

pub use field::{is_prime, CoefficientField, Field, PrimeField, Rationals};
pub use monomial::{monomials_of_degree, Monomial, MAX_VARS};
pub use parse::{parse_poly, RawPoly};
pub use poly::Poly;
pub use rational::Rat;
