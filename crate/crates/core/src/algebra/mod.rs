//! Presented graded algebras, enveloping algebras, principal parts and
//! canonical modules.

mod canonical;
mod enveloping;
mod presented;
mod principal;

pub use canonical::{canonical_module, CanonicalModule};
pub use enveloping::{enveloping, ideal_power, EnvelopingAlgebra};
pub use presented::{krull_dimension, Gorenstein, PresentedAlgebra};
pub use principal::{multi_indices, principal_parts, principal_parts_of, taylor, PrincipalParts};
