//! The free Z2-graded associative algebra on the oscillator letters
//! `a+`, `a-` (even) and `f+`, `f-` (odd). No rewriting happens here: a
//! product is plain concatenation. The unit is the empty word.

use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coeff::{LaurentPoly, Rational};
use crate::linear::{LinComb, Ring};

/// Z2 degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_bit(bit: u8) -> Self {
        if bit.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn bit(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    /// `(-1)^(self * other)` as `+1` / `-1`.
    pub fn koszul_sign(self, other: Parity) -> i64 {
        if self.is_odd() && other.is_odd() {
            -1
        } else {
            1
        }
    }
}

impl Add for Parity {
    type Output = Parity;

    fn add(self, rhs: Parity) -> Parity {
        Parity::from_bit(self.bit() + rhs.bit())
    }
}

/// Oscillator letter. The declaration order is the canonical normal order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GenSym {
    /// `a+`
    BosonRaise,
    /// `a-`
    BosonLower,
    /// `f+`
    FermiRaise,
    /// `f-`
    FermiLower,
}

impl GenSym {
    pub const ALL: [GenSym; 4] = [
        GenSym::BosonRaise,
        GenSym::BosonLower,
        GenSym::FermiRaise,
        GenSym::FermiLower,
    ];

    pub fn degree(self) -> Parity {
        match self {
            GenSym::BosonRaise | GenSym::BosonLower => Parity::Even,
            GenSym::FermiRaise | GenSym::FermiLower => Parity::Odd,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GenSym::BosonRaise => "a+",
            GenSym::BosonLower => "a-",
            GenSym::FermiRaise => "f+",
            GenSym::FermiLower => "f-",
        }
    }

    pub fn from_name(name: &str) -> Option<GenSym> {
        GenSym::ALL.into_iter().find(|g| g.name() == name)
    }
}

impl fmt::Display for GenSym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A monomial in the free algebra. The empty word is the unit.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(pub Vec<GenSym>);

impl Word {
    pub fn unit() -> Self {
        Word(Vec::new())
    }

    pub fn letter(g: GenSym) -> Self {
        Word(vec![g])
    }

    pub fn letters(&self) -> &[GenSym] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// `g^n`
    pub fn power(g: GenSym, n: usize) -> Word {
        Word(vec![g; n])
    }
}

impl From<Vec<GenSym>> for Word {
    fn from(v: Vec<GenSym>) -> Self {
        Word(v)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, g) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(g.name())?;
        }
        Ok(())
    }
}

/// Parity of the number of fermionic letters.
pub fn grade(w: &Word) -> Parity {
    w.0.iter().fold(Parity::Even, |acc, g| acc + g.degree())
}

/// Linear combination of words with Laurent polynomial coefficients.
pub type Element = LinComb<Word, LaurentPoly>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordsError {
    #[error("graded bracket needs homogeneous arguments; `{0}` mixes degrees")]
    Inhomogeneous(String),
}

impl LinComb<Word, LaurentPoly> {
    pub fn unit() -> Self {
        Self::basis(Word::unit())
    }

    pub fn gen(g: GenSym) -> Self {
        Self::basis(Word::letter(g))
    }

    pub fn scalar(c: LaurentPoly) -> Self {
        Self::term(Word::unit(), c)
    }

    /// Common degree of all words, `None` for zero or mixed elements.
    pub fn degree(&self) -> Option<Parity> {
        let mut it = self.iter().map(|(w, _)| grade(w));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.degree().is_some()
    }

    /// Evaluate every coefficient at `(q, p)`, keeping the words.
    pub fn specialize(&self, q: &Rational, p: &Rational) -> Result<Self, crate::coeff::EvalError> {
        let mut out = Self::zero();
        for (w, c) in self.iter() {
            out.add_term(w.clone(), LaurentPoly::constant(crate::coeff::lp_eval(c, q, p)?));
        }
        Ok(out)
    }

    /// Longest word length (0 for the zero element).
    pub fn max_word_len(&self) -> usize {
        self.iter().map(|(w, _)| w.len()).max().unwrap_or(0)
    }
}

/// Bilinear extension of concatenation.
pub fn multiply(x: &Element, y: &Element) -> Element {
    let mut out = Element::zero();
    for (wx, cx) in x {
        for (wy, cy) in y {
            out.add_term(wx.concat(wy), cx.mul(cy));
        }
    }
    out
}

/// Product of several elements, left to right.
pub fn product<'a, I: IntoIterator<Item = &'a Element>>(factors: I) -> Element {
    factors
        .into_iter()
        .fold(Element::unit(), |acc, x| multiply(&acc, x))
}

/// `xy - (-1)^(deg x * deg y) yx` in the free algebra.
pub fn graded_bracket(x: &Element, y: &Element) -> Result<Element, WordsError> {
    if x.is_zero() || y.is_zero() {
        return Ok(Element::zero());
    }
    let dx = x.degree().ok_or_else(|| WordsError::Inhomogeneous(x.to_string()))?;
    let dy = y.degree().ok_or_else(|| WordsError::Inhomogeneous(y.to_string()))?;
    let sign = LaurentPoly::from_int(dx.koszul_sign(dy));
    let mut out = multiply(x, y);
    out.add_scaled(&multiply(y, x), &sign.neg());
    Ok(out)
}

/// Render one coefficient/basis pair the way element texts show it.
pub(crate) fn fmt_term(c: &LaurentPoly, basis: &str, is_unit: bool) -> String {
    if is_unit {
        return if c.len() > 1 {
            format!("({c})")
        } else {
            c.to_string()
        };
    }
    if c.is_one() {
        basis.to_string()
    } else if c.neg().is_one() {
        format!("-{basis}")
    } else if c.len() > 1 {
        format!("({c}) {basis}")
    } else {
        format!("{c} {basis}")
    }
}

impl fmt::Display for LinComb<Word, LaurentPoly> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .iter()
            .map(|(w, c)| fmt_term(c, &w.to_string(), w.is_empty()))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}
