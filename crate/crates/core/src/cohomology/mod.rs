//! Local cohomology and the derived functors of differential operators as
//! direct limits of Ext, with the comparisons between them.

mod colimit;
mod compare;
mod structures;

pub use colimit::{
    local_cohomology, power_system, principal_system, svdb, ColimitCell, ColimitTable,
    DirectSystem, Direction, ResolvedSystem, Stability,
};
pub use compare::{
    compare_tables, exterior_square, horrocks_check, omega_shift, syzygy_module, theorem_a_compare,
    vanishing_propagation_check, verdict, CellComparison, ComparisonReport, Verdict,
};
pub use structures::{depth_probe, left_right_compare, DepthReport, LeftRightReport};
