use std::sync::Arc;

use crate::error::{AlgError, Result};
use crate::exactalg::Field;
use crate::groebner::{ext_presentation, free_resolution, GradedRing, Presentation};

use super::presented::PresentedAlgebra;

/// `ω_R = Ext^c_S(R, S)(-Σ weights)` as a graded `R`-module.
pub struct CanonicalModule<F: Field> {
    /// Minimal presentation over `R`.
    pub presentation: Presentation<F>,
    /// The normalizing shift `Σ weights`.
    pub shift: i32,
    pub codim: usize,
    /// `Some(a)` when `ω ≅ R(a)`.
    pub a_invariant: Option<i32>,
}

pub fn canonical_module<F: Field>(r: &PresentedAlgebra<F>) -> Result<CanonicalModule<F>> {
    let ring = r.ring();
    let s = Arc::new(GradedRing::new(
        ring.field().clone(),
        ring.names().to_vec(),
        ring.weights().to_vec(),
        Vec::new(),
        ring.degree_cap(),
    )?);
    let c = r.codimension();
    let quotient = Presentation::cyclic(s.clone(), ring.relations())?;
    let mut res = free_resolution(&quotient, r.nvars() + 1)?;
    let pd = res.len();
    if pd != c {
        return Err(AlgError::NotCohenMacaulay {
            codim: c,
            index: pd,
        });
    }
    let ext = ext_presentation(&mut res, &Presentation::free(s, vec![0]), c)?;
    let shift = r.weight_sum();
    let degrees: Vec<i32> = ext.pres.degrees().iter().map(|d| d + shift).collect();
    let omega = Presentation::new(ring.clone(), degrees, ext.pres.relations().to_vec())?;
    let presentation = omega.prune()?.pres;
    let a_invariant = (presentation.rank() == 1 && presentation.relations().is_empty())
        .then(|| -presentation.degrees()[0]);
    Ok(CanonicalModule {
        presentation,
        shift,
        codim: c,
        a_invariant,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::Rationals;

    fn a_inv(v: &[&str], rels: &[&str]) -> Option<i32> {
        let w = vec![1; v.len()];
        let r = PresentedAlgebra::parse(Rationals, v, &w, rels).unwrap();
        r.canonical().unwrap().a_invariant
    }

    #[test]
    fn gorenstein_fixtures() {
        assert_eq!(a_inv(&["x", "y"], &[]), Some(-2));
        assert_eq!(a_inv(&["a", "b", "c"], &["b^2 - a*c"]), Some(-1));
        assert_eq!(a_inv(&["x", "y", "z"], &["x^3+y^3+z^3"]), Some(0));
        assert_eq!(a_inv(&["x"], &["x^2"]), Some(1));
    }

    #[test]
    fn non_gorenstein_and_non_cm() {
        // (x,y)^2 in two variables: artinian, socle of dimension 2
        let w = [1, 1];
        let r =
            PresentedAlgebra::parse(Rationals, &["x", "y"], &w, &["x^2", "x*y", "y^2"]).unwrap();
        let om = r.canonical().unwrap();
        assert_eq!(om.a_invariant, None);
        assert_eq!(om.presentation.minimal_generators().unwrap(), vec![-1, -1]);
        // two skew lines in P^3 are not arithmetically Cohen-Macaulay
        let r = PresentedAlgebra::parse(
            Rationals,
            &["a", "b", "c", "d"],
            &[1, 1, 1, 1],
            &["a*c", "a*d", "b*c", "b*d"],
        )
        .unwrap();
        assert!(matches!(
            r.canonical().map(|_| ()),
            Err(AlgError::NotCohenMacaulay { .. })
        ));
    }
}
