//! Hopf superalgebra structure on the extended algebra `{L, G, F, T, K, R}`:
//! coproduct, counit, antipode, axiom checks, homomorphism checks and a
//! solver for exchange exponents.
//!
//! Conventions the relations leave open:
//! - `(x⊗y)(u⊗v) = (-1)^(deg y deg u) xu ⊗ yv`
//! - `S(xy) = (-1)^(deg x deg y) S(y) S(x)`
//! - `K_k R_l` is kept as a commuting pair, never merged into one letter.

pub mod reduce;
pub mod solver;
pub mod table;
pub mod tensor;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coeff::LaurentPoly;
use crate::extended::{ExtElement, ExtLetter, ExtWord, Family};
use crate::linear::Ring;
use crate::oscillator::DeformationMode;
use crate::relations::{relation_instance, FamilyId, IndexRange, RelationFamily};

pub use reduce::{canonical_grouplikes, ext_reduce, ext_reduce_with, order_pair, Exchange};
pub use table::{Bilinear, ExponentTable, PairExponent, PaperRow};
pub use tensor::{antipode, coproduct, counit, Tensor, TensorDisplay};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HopfError {
    #[error("word `{0}` has more than two deformed letters")]
    NotQuadratic(String),
    #[error("relation coefficient `{0}` is not an invertible monomial")]
    NonInvertible(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomResult {
    pub letter: String,
    pub coassoc: bool,
    pub counit: bool,
    pub antipode: bool,
}

impl AxiomResult {
    pub fn holds(&self) -> bool {
        self.coassoc && self.counit && self.antipode
    }
}

/// `m(S⊗id)Δ(x)` and `m(id⊗S)Δ(x)`, reduced.
pub fn antipode_sides(
    x: &ExtElement,
    table: &ExponentTable,
    mode: DeformationMode,
) -> Result<(ExtElement, ExtElement), HopfError> {
    let d = coproduct(x);
    let s_left = tensor::expand_leg(&d, 0, |w| Ok(tensor::from_element(&antipode(&ExtElement::basis(w.clone())))))?;
    let s_right = tensor::expand_leg(&d, 1, |w| Ok(tensor::from_element(&antipode(&ExtElement::basis(w.clone())))))?;
    let flatten = |t: &Tensor| -> Result<ExtElement, HopfError> {
        let m = tensor::contract(t, 0);
        let e: ExtElement = m.iter().map(|(legs, c)| (legs[0].clone(), c.clone())).collect();
        ext_reduce(&e, table, mode)
    };
    Ok((flatten(&s_left)?, flatten(&s_right)?))
}

pub fn check_axioms(l: ExtLetter, table: &ExponentTable, mode: DeformationMode) -> Result<AxiomResult, HopfError> {
    let x: ExtElement = ExtElement::basis(ExtWord::letter(l));
    let d = coproduct(&x);
    let delta_leg = |w: &ExtWord| Ok(coproduct(&ExtElement::basis(w.clone())));
    let left = tensor::reduce_tensor(&tensor::expand_leg(&d, 0, delta_leg)?, table, mode)?;
    let right = tensor::reduce_tensor(&tensor::expand_leg(&d, 1, delta_leg)?, table, mode)?;
    let coassoc = left == right;

    let eps_leg = |w: &ExtWord| Ok(Tensor::term(Vec::new(), tensor::counit_word::<LaurentPoly>(w)));
    let as_tensor = tensor::reduce_tensor(&tensor::from_element(&x), table, mode)?;
    let eps_left = tensor::reduce_tensor(&tensor::expand_leg(&d, 0, eps_leg)?, table, mode)?;
    let eps_right = tensor::reduce_tensor(&tensor::expand_leg(&d, 1, eps_leg)?, table, mode)?;
    let counit_ok = eps_left == as_tensor && eps_right == as_tensor;

    let target = ExtElement::term(ExtWord::unit(), counit(&x));
    let (sl, sr) = antipode_sides(&x, table, mode)?;
    let antipode_ok = sl == target && sr == target;
    Ok(AxiomResult {
        letter: l.to_string(),
        coassoc,
        counit: counit_ok,
        antipode: antipode_ok,
    })
}

pub const AXIOM_FAMILIES: [Family; 9] = [
    Family::L,
    Family::G,
    Family::F,
    Family::T,
    Family::K,
    Family::R,
    Family::TInv,
    Family::KInv,
    Family::RInv,
];

/// Axioms for every family at every index in `indices`, in family-major order.
pub fn axiom_suite(
    indices: IndexRange,
    table: &ExponentTable,
    mode: DeformationMode,
) -> Result<Vec<AxiomResult>, HopfError> {
    let letters: Vec<ExtLetter> = AXIOM_FAMILIES
        .iter()
        .flat_map(|&f| indices.iter().map(move |i| ExtLetter::new(f, i)))
        .collect();
    letters.par_iter().map(|&l| check_axioms(l, table, mode)).collect()
}

/// `Δ(LHS - RHS)`, reduced leg by leg, for any coefficient ring.
pub fn homomorphism_residual<C: Ring, E: Exchange<C> + ?Sized>(
    id: FamilyId,
    mode: DeformationMode,
    i1: i64,
    i2: i64,
    ex: &E,
) -> Result<Tensor<C>, HopfError> {
    let inst = relation_instance(id, mode, i1, i2);
    let diff: ExtElement<C> = inst.difference().map_coeffs(C::from_poly);
    tensor::reduce_tensor(&coproduct(&diff), ex, mode)
}

#[derive(Debug, Clone, PartialEq)]
pub struct HomResidual {
    pub value: Tensor,
    pub holds: bool,
}

pub fn check_homomorphism(
    family: RelationFamily,
    l: i64,
    k: i64,
    table: &ExponentTable,
) -> Result<HomResidual, HopfError> {
    let value = homomorphism_residual(family.id, family.mode, l, k, table)?;
    let holds = value.is_zero();
    Ok(HomResidual { value, holds })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HomRecord {
    pub family: String,
    pub l: i64,
    pub k: i64,
    pub holds: bool,
    pub residual_text: String,
}

pub fn homomorphism_sweep(
    families: &[FamilyId],
    mode: DeformationMode,
    l_range: IndexRange,
    k_range: IndexRange,
    table: &ExponentTable,
) -> Result<Vec<HomRecord>, HopfError> {
    let tasks: Vec<(FamilyId, i64, i64)> = families
        .iter()
        .flat_map(|&f| l_range.iter().flat_map(move |l| k_range.iter().map(move |k| (f, l, k))))
        .collect();
    tasks
        .par_iter()
        .map(|&(f, l, k)| {
            let r = check_homomorphism(RelationFamily::new(f, mode), l, k, table)?;
            Ok(HomRecord {
                family: f.as_str().to_string(),
                l,
                k,
                holds: r.holds,
                residual_text: TensorDisplay(&r.value).to_string(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extended::letter;

    fn paper() -> ExponentTable {
        ExponentTable::paper(DeformationMode::Q).0
    }

    #[test]
    fn axioms_on_examples() {
        let t = paper();
        for f in AXIOM_FAMILIES {
            for i in -2..=2 {
                let r = check_axioms(ExtLetter::new(f, i), &t, DeformationMode::Q).unwrap();
                assert!(r.holds(), "{r:?}");
            }
        }
        let (sl, sr) = antipode_sides(&letter(Family::L, 2), &t, DeformationMode::Q).unwrap();
        assert!(sl.is_zero() && sr.is_zero());
    }

    #[test]
    fn homomorphism_examples() {
        let t = paper();
        for (id, l, k) in [(FamilyId::LL, 2, 0), (FamilyId::GG, 2, 3), (FamilyId::FF, 1, 1), (FamilyId::LL, -1, 4)] {
            let r = check_homomorphism(RelationFamily::new(id, DeformationMode::Q), l, k, &t).unwrap();
            assert!(r.holds, "{id} {l} {k}: {}", TensorDisplay(&r.value));
        }
        let fg = check_homomorphism(RelationFamily::new(FamilyId::FG, DeformationMode::Q), 1, 0, &t).unwrap();
        assert!(!fg.holds);
    }
}
