//! Differential operators `D^n(M, N) ≅ Hom_R(P^n(M), N)`.

mod frobenius;
mod operator;
mod order;
mod probes;

pub use frobenius::{frobenius_operators, FrobeniusContext, FrobeniusOperator, FrobeniusOps};
pub use operator::{
    diff_ops, hom_coordinates, hom_values, DiffOperator, DiffOps, OperatorSpace, OperatorTable,
};
pub use order::{
    bracket_order_check, compose, from_linear_action, spanning_set, LinearAction, OrderCheck,
};
pub use probes::{
    d_simplicity_probe, residue_operators, DSimplicity, DSimplicityReport, SimplicityCell,
};

#[cfg(test)]
mod tests;
