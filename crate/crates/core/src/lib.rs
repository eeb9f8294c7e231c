//! Exact computer algebra for the classical, q-deformed and (p,q)-deformed
//! super Virasoro algebras: oscillator realizations, normal ordering,
//! relation checking, a Fock-space oracle and Hopf superalgebra checks.

pub mod algdef;
pub mod coeff;
pub mod extended;
pub mod fock;
pub mod hopf;
pub mod intpoly;
pub mod linear;
pub mod oscillator;
pub mod relations;
pub mod words;

pub use algdef::{parse_algebra_def, AlgError, AlgErrorKind, AlgebraDef, FileEngine};
pub use coeff::{lambda, lp_eval, lp_mul, q_box, q_bracket, rat, LaurentPoly, Rational};
pub use extended::{ExtElement, ExtLetter, ExtWord, Family};
pub use linear::{LinComb, Ring};
pub use oscillator::{normal_order, realize, DeformationMode, GenKind, NormalWord, RewriteSystem, Strategy};
pub use relations::{check_relation, sweep, FamilyId, IndexRange, RelationFamily, Report, Residual};
pub use words::{graded_bracket, multiply, Element, GenSym, Parity, Word};
