//! Finite linear combinations over an ordered basis with coefficients in a
//! commutative ring. Every algebra element in this crate (oscillator words,
//! extended-algebra words, tensors) is one of these.

use std::collections::btree_map::{self, BTreeMap};
use std::fmt::Debug;

use crate::coeff::LaurentPoly;

/// The coefficient operations the algebra code needs.
pub trait Ring: Clone + PartialEq + Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add_assign(&mut self, other: &Self);
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Embed a concrete Laurent polynomial.
    fn from_poly(p: &LaurentPoly) -> Self;
}

/// Sparse map from basis elements to nonzero coefficients.
#[derive(Clone, PartialEq, Debug)]
pub struct LinComb<B: Ord, C> {
    terms: BTreeMap<B, C>,
}

impl<B: Ord, C> Default for LinComb<B, C> {
    fn default() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }
}

impl<B: Ord + Clone, C: Ring> LinComb<B, C> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(b: B) -> Self {
        Self::term(b, C::one())
    }

    pub fn term(b: B, c: C) -> Self {
        let mut out = Self::zero();
        out.add_term(b, c);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> btree_map::Iter<'_, B, C> {
        self.terms.iter()
    }

    pub fn get(&self, b: &B) -> Option<&C> {
        self.terms.get(b)
    }

    pub fn add_term(&mut self, b: B, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(b) {
            btree_map::Entry::Occupied(mut e) => {
                e.get_mut().add_assign(&c);
                if e.get().is_zero() {
                    e.remove();
                }
            }
            btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (b, c) in &other.terms {
            self.add_term(b.clone(), c.clone());
        }
    }

    /// `self += factor * other`
    pub fn add_scaled(&mut self, other: &Self, factor: &C) {
        for (b, c) in &other.terms {
            self.add_term(b.clone(), c.mul(factor));
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &C::one().neg());
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(b, c)| (b.clone(), c.neg())).collect(),
        }
    }

    pub fn scale(&self, factor: &C) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, factor);
        out
    }

    /// Apply a linear map given on basis elements.
    pub fn flat_map<B2: Ord + Clone, F>(&self, mut f: F) -> LinComb<B2, C>
    where
        F: FnMut(&B) -> LinComb<B2, C>,
    {
        let mut out = LinComb::zero();
        for (b, c) in &self.terms {
            out.add_scaled(&f(b), c);
        }
        out
    }

    /// Fallible version of [`LinComb::flat_map`].
    pub fn try_flat_map<B2: Ord + Clone, E, F>(&self, mut f: F) -> Result<LinComb<B2, C>, E>
    where
        F: FnMut(&B) -> Result<LinComb<B2, C>, E>,
    {
        let mut out = LinComb::zero();
        for (b, c) in &self.terms {
            out.add_scaled(&f(b)?, c);
        }
        Ok(out)
    }

    /// Change the coefficient ring term by term.
    pub fn map_coeffs<C2: Ring, F>(&self, mut f: F) -> LinComb<B, C2>
    where
        F: FnMut(&C) -> C2,
    {
        let mut out = LinComb::zero();
        for (b, c) in &self.terms {
            out.add_term(b.clone(), f(c));
        }
        out
    }

    pub fn into_terms(self) -> BTreeMap<B, C> {
        self.terms
    }
}

impl<B: Ord + Clone, C: Ring> FromIterator<(B, C)> for LinComb<B, C> {
    fn from_iter<I: IntoIterator<Item = (B, C)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (b, c) in iter {
            out.add_term(b, c);
        }
        out
    }
}

impl<'a, B: Ord, C> IntoIterator for &'a LinComb<B, C> {
    type Item = (&'a B, &'a C);
    type IntoIter = btree_map::Iter<'a, B, C>;

    fn into_iter(self) -> Self::IntoIter {
        self.terms.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancellation_removes_terms() {
        let mut x: LinComb<u8, LaurentPoly> = LinComb::basis(1);
        x.add_term(2, LaurentPoly::q_pow(1));
        x.add_term(1, LaurentPoly::from_int(-1));
        assert_eq!(x.len(), 1);
        assert!(x.sub(&x).is_zero());
        x.add_term(3, LaurentPoly::zero());
        assert_eq!(x.len(), 1);
    }
}
