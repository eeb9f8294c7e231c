//! Exact coefficient ring: Laurent polynomials in `q` and `p` with rational
//! coefficients, plus the q-number constructions `[x]`, `[[x]]` and `lambda`.
//!
//! Terms are stored in a `BTreeMap` keyed by `(e_q, e_p)`, so iteration order
//! is lexicographic on the exponent pair and rendering is deterministic.
//! Zero coefficients are never stored.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::linear::Ring;

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

/// Convenience constructor for small rationals.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("cannot substitute {var} = 0: {var} appears with negative exponent {exponent}")]
    Pole { var: char, exponent: i64 },
}

/// Exact two-variable Laurent polynomial over the rationals.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<(i64, i64), Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(Rational::from_integer(c.into()))
    }

    /// `c * q^e_q * p^e_p`
    pub fn monomial(c: Rational, e_q: i64, e_p: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((e_q, e_p), c);
        }
        Self { terms }
    }

    /// `q^e`
    pub fn q_pow(e: i64) -> Self {
        Self::monomial(Rational::one(), e, 0)
    }

    /// `p^e`
    pub fn p_pow(e: i64) -> Self {
        Self::monomial(Rational::one(), 0, e)
    }

    /// `q^e_q * p^e_p`
    pub fn qp_pow(e_q: i64, e_p: i64) -> Self {
        Self::monomial(Rational::one(), e_q, e_p)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&(0, 0))
                .map(|c| c.is_one())
                .unwrap_or(false)
    }

    /// Number of stored (nonzero) terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Iterate `((e_q, e_p), coefficient)` in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&(i64, i64), &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e_q: i64, e_p: i64) -> Rational {
        self.terms
            .get(&(e_q, e_p))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// The single term if this is a monomial.
    pub fn as_monomial(&self) -> Option<(Rational, i64, i64)> {
        if self.terms.len() == 1 {
            let (&(eq, ep), c) = self.terms.iter().next().unwrap();
            Some((c.clone(), eq, ep))
        } else {
            None
        }
    }

    /// Constant value if the polynomial has no `q`/`p` dependence.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    /// Smallest exponent pair (lexicographic), if nonzero.
    pub fn min_exponent(&self) -> Option<(i64, i64)> {
        self.terms.keys().next().copied()
    }

    fn add_term(&mut self, key: (i64, i64), c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (&k, c) in &other.terms {
            self.add_term(k, c.clone());
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(&k, c)| (k, -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(&k, v)| (k, v * c)).collect(),
        }
    }

    /// Multiply by `q^s * p^t`.
    pub fn shift(&self, s: i64, t: i64) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&(eq, ep), c)| ((eq + s, ep + t), c.clone()))
                .collect(),
        }
    }

    /// Nonnegative integer power.
    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..n {
            out = lp_mul(&out, self);
        }
        out
    }

    /// Substitute `p = 1`, leaving a polynomial in `q` only.
    pub fn at_p_one(&self) -> Self {
        let mut out = Self::zero();
        for (&(eq, _), c) in &self.terms {
            out.add_term((eq, 0), c.clone());
        }
        out
    }
}

/// Exact product in canonical form.
pub fn lp_mul(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    let mut out = LaurentPoly::zero();
    for (&(aq, ap), ac) in &a.terms {
        for (&(bq, bp), bc) in &b.terms {
            out.add_term((aq + bq, ap + bp), ac * bc);
        }
    }
    out
}

fn rat_pow(base: &Rational, e: i64) -> Rational {
    let mut out = Rational::one();
    let b = if e < 0 { base.recip() } else { base.clone() };
    for _ in 0..e.unsigned_abs() {
        out *= &b;
    }
    out
}

/// Exact value of `a` at `(q_val, p_val)`.
///
/// A zero substitution is only an error when that variable actually occurs
/// with a negative exponent.
pub fn lp_eval(a: &LaurentPoly, q_val: &Rational, p_val: &Rational) -> Result<Rational, EvalError> {
    let mut total = Rational::zero();
    for (&(eq, ep), c) in &a.terms {
        if q_val.is_zero() && eq < 0 {
            return Err(EvalError::Pole { var: 'q', exponent: eq });
        }
        if p_val.is_zero() && ep < 0 {
            return Err(EvalError::Pole { var: 'p', exponent: ep });
        }
        total += c * rat_pow(q_val, eq) * rat_pow(p_val, ep);
    }
    Ok(total)
}

/// Symmetric q-integer `[x] = (q^x - q^-x) / (q - q^-1)`, in divided form.
pub fn q_bracket(x: i64) -> LaurentPoly {
    if x < 0 {
        return q_bracket(-x).neg();
    }
    let mut out = LaurentPoly::zero();
    for j in 0..x {
        out.add_term((x - 1 - 2 * j, 0), Rational::one());
    }
    out
}

/// Box q-integer `[[x]] = (1 - q^(2x)) / (1 - q^2)`, in divided form.
///
/// For `x > 0` this is `1 + q^2 + ... + q^(2x-2)`; for `x < 0` it is
/// `-(q^-2 + q^-4 + ... + q^(2x))`.
pub fn q_box(x: i64) -> LaurentPoly {
    let mut out = LaurentPoly::zero();
    if x > 0 {
        for j in 0..x {
            out.add_term((2 * j, 0), Rational::one());
        }
    } else {
        for j in x..0 {
            out.add_term((2 * j, 0), -Rational::one());
        }
    }
    out
}

/// `lambda = q - q^-1`
pub fn lambda() -> LaurentPoly {
    LaurentPoly::q_pow(1).sub(&LaurentPoly::q_pow(-1))
}

fn fmt_var(f: &mut fmt::Formatter<'_>, var: char, e: i64, first: &mut bool) -> fmt::Result {
    if e == 0 {
        return Ok(());
    }
    if !*first {
        write!(f, "*")?;
    }
    *first = false;
    if e == 1 {
        write!(f, "{var}")
    } else {
        write!(f, "{var}^{e}")
    }
}

impl fmt::Display for LaurentPoly {
    /// Terms sorted by `(e_q, e_p)` as `c*q^i*p^j`, joined by ` + `, with unit
    /// factors omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (&(eq, ep), c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            let mut first = true;
            if eq == 0 && ep == 0 {
                write!(f, "{c}")?;
                continue;
            }
            if c.is_one() {
            } else if (-c).is_one() {
                write!(f, "-")?;
            } else {
                write!(f, "{c}")?;
                first = false;
            }
            fmt_var(f, 'q', eq, &mut first)?;
            fmt_var(f, 'p', ep, &mut first)?;
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl Ring for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn one() -> Self {
        LaurentPoly::one()
    }
    fn is_zero(&self) -> bool {
        LaurentPoly::is_zero(self)
    }
    fn add_assign(&mut self, other: &Self) {
        LaurentPoly::add_assign(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        lp_mul(self, other)
    }
    fn neg(&self) -> Self {
        LaurentPoly::neg(self)
    }
    fn from_poly(p: &LaurentPoly) -> Self {
        p.clone()
    }
}

/// True when a rational is a nonzero integer power-free sample (`|x| != 1`, `x != 0`).
pub fn is_generic_sample(x: &Rational) -> bool {
    !x.is_zero() && !x.abs().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> LaurentPoly {
        LaurentPoly::q_pow(1)
    }

    #[test]
    fn mul_examples() {
        assert_eq!(lp_mul(&q(), &LaurentPoly::q_pow(-1)), LaurentPoly::one());
        // (q - q^-1)(q + q^-1) = q^2 - q^-2, expanded by hand
        let plus = q().add(&LaurentPoly::q_pow(-1));
        let expected = LaurentPoly::q_pow(2).sub(&LaurentPoly::q_pow(-2));
        assert_eq!(lp_mul(&lambda(), &plus), expected);
        let m = LaurentPoly::qp_pow(-2, 3);
        assert!(lp_mul(&LaurentPoly::zero(), &m).is_zero());
    }

    #[test]
    fn eval_examples() {
        let a = q().add(&LaurentPoly::q_pow(-1));
        assert_eq!(lp_eval(&a, &rat(2, 1), &rat(1, 1)).unwrap(), rat(5, 2));
        assert_eq!(
            lp_eval(&LaurentPoly::one(), &rat(3, 2), &rat(5, 7)).unwrap(),
            rat(1, 1)
        );
        assert_eq!(
            lp_eval(&LaurentPoly::q_pow(-1), &rat(0, 1), &rat(1, 1)),
            Err(EvalError::Pole { var: 'q', exponent: -1 })
        );
        // zero is fine for nonnegative exponents
        assert_eq!(lp_eval(&q(), &rat(0, 1), &rat(1, 1)).unwrap(), rat(0, 1));
    }

    #[test]
    fn q_number_examples() {
        assert!(q_bracket(0).is_zero());
        assert!(q_bracket(1).is_one());
        assert_eq!(q_bracket(2), q().add(&LaurentPoly::q_pow(-1)));
        assert!(q_box(0).is_zero());
        assert!(q_box(1).is_one());
        assert_eq!(q_box(2), LaurentPoly::one().add(&LaurentPoly::q_pow(2)));
    }

    /// Cross-multiplication oracle: `[x] (q - q^-1) = q^x - q^-x` and
    /// `[[x]] (1 - q^2) = 1 - q^(2x)`, for negative arguments too.
    #[test]
    fn divided_forms_match_fractions() {
        for x in -12..=12 {
            let num = LaurentPoly::q_pow(x).sub(&LaurentPoly::q_pow(-x));
            assert_eq!(lp_mul(&q_bracket(x), &lambda()), num, "[{x}]");
            let num = LaurentPoly::one().sub(&LaurentPoly::q_pow(2 * x));
            let den = LaurentPoly::one().sub(&LaurentPoly::q_pow(2));
            assert_eq!(lp_mul(&q_box(x), &den), num, "[[{x}]]");
        }
    }

    #[test]
    fn q_number_identities() {
        for x in -20..=20 {
            assert_eq!(q_bracket(x), q_bracket(-x).neg());
            let ladder = q_box(x).sub(&lp_mul(&LaurentPoly::q_pow(2), &q_box(x - 1)));
            assert!(ladder.is_one(), "ladder at {x}");
            let one = rat(1, 1);
            let xr = rat(x, 1);
            assert_eq!(lp_eval(&q_bracket(x), &one, &one).unwrap(), xr);
            assert_eq!(lp_eval(&q_box(x), &one, &one).unwrap(), xr);
        }
    }

    #[test]
    fn rendering() {
        assert_eq!(q_box(2).to_string(), "1 + q^2");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!(lambda().to_string(), "-q^-1 + q");
        let m = LaurentPoly::monomial(rat(3, 2), 1, -2);
        assert_eq!(m.to_string(), "3/2*q*p^-2");
        assert_eq!(LaurentPoly::p_pow(2).neg().to_string(), "-p^2");
        assert_eq!(LaurentPoly::from_int(-3).to_string(), "-3");
    }
}
