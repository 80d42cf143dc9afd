//! Gröbner bases of graded submodules, syzygies, resolutions, Hom and Ext.

mod buchberger;
mod homext;
mod module;
mod order;
mod resolution;
mod ring;

pub use buchberger::{buchberger, GroebnerBasis};
pub use homext::{
    dual_map, ext_cell, ext_dims, ext_presentation, hom_presentation, hom_space, induced_rank,
    same_ring, ExtCell, ExtModule, HomModule, HomSpace,
};
pub use module::{
    add_vectors, is_zero_vector, kernel_over_ring, scale_vector, select_minimal, unit_vector,
    vector_degree, zero_vector, ModPiece, Presentation, Pruned, Vector,
};
pub use order::{
    from_terms, sub_scaled_shifted, to_terms, ModMon, ModuleRule, MonomialOrder, Terms,
};
pub use resolution::{free_resolution, lift_chain_map, map_on_generators, FreeMap, Resolution};
pub use ring::{GradedRing, Piece, DEFAULT_DEGREE_CAP};
