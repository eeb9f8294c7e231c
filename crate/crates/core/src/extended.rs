//! Words over the abstract extended alphabet `{L_i, G_i, F_i, T_i, K_i, R_i}`
//! and the inverses of the group-like letters. These carry relation
//! templates (before realization) and the Hopf structure.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::coeff::LaurentPoly;
use crate::linear::{LinComb, Ring};
use crate::oscillator::GenKind;
use crate::words::{fmt_term, Parity};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    L,
    F,
    G,
    T,
    K,
    R,
    TInv,
    KInv,
    RInv,
}

impl Family {
    pub const DEFORMED: [Family; 3] = [Family::L, Family::G, Family::F];
    pub const GROUPLIKE: [Family; 3] = [Family::T, Family::K, Family::R];

    pub fn is_deformed(self) -> bool {
        matches!(self, Family::L | Family::G | Family::F)
    }

    pub fn is_grouplike(self) -> bool {
        !self.is_deformed()
    }

    pub fn is_inverse(self) -> bool {
        matches!(self, Family::TInv | Family::KInv | Family::RInv)
    }

    /// `T` for `Tinv` and so on; identity otherwise.
    pub fn base(self) -> Family {
        match self {
            Family::TInv => Family::T,
            Family::KInv => Family::K,
            Family::RInv => Family::R,
            f => f,
        }
    }

    /// Family of the inverse letter. Only meaningful for group-like families.
    pub fn inverse(self) -> Family {
        match self {
            Family::T => Family::TInv,
            Family::K => Family::KInv,
            Family::R => Family::RInv,
            Family::TInv => Family::T,
            Family::KInv => Family::K,
            Family::RInv => Family::R,
            f => f,
        }
    }

    pub fn degree(self) -> Parity {
        if self == Family::G {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::L => "L",
            Family::G => "G",
            Family::F => "F",
            Family::T => "T",
            Family::K => "K",
            Family::R => "R",
            Family::TInv => "Tinv",
            Family::KInv => "Kinv",
            Family::RInv => "Rinv",
        }
    }

    pub fn from_name(s: &str) -> Option<Family> {
        [
            Family::L,
            Family::G,
            Family::F,
            Family::T,
            Family::K,
            Family::R,
            Family::TInv,
            Family::KInv,
            Family::RInv,
        ]
        .into_iter()
        .find(|f| f.name() == s)
    }

    pub fn gen_kind(self) -> Option<GenKind> {
        match self {
            Family::L => Some(GenKind::L),
            Family::G => Some(GenKind::G),
            Family::F => Some(GenKind::F),
            _ => None,
        }
    }
}

impl From<GenKind> for Family {
    fn from(k: GenKind) -> Self {
        match k {
            GenKind::L => Family::L,
            GenKind::G => Family::G,
            GenKind::F => Family::F,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ExtLetter {
    pub family: Family,
    pub index: i64,
}

impl ExtLetter {
    pub fn new(family: Family, index: i64) -> Self {
        Self { family, index }
    }

    pub fn degree(self) -> Parity {
        self.family.degree()
    }

    pub fn inverse(self) -> Self {
        Self::new(self.family.inverse(), self.index)
    }
}

impl fmt::Display for ExtLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.family.name(), self.index)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ExtWord(pub Vec<ExtLetter>);

impl ExtWord {
    pub fn unit() -> Self {
        ExtWord(Vec::new())
    }

    pub fn letter(l: ExtLetter) -> Self {
        ExtWord(vec![l])
    }

    pub fn letters(&self) -> &[ExtLetter] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn concat(&self, other: &ExtWord) -> ExtWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        ExtWord(v)
    }

    pub fn degree(&self) -> Parity {
        self.0.iter().fold(Parity::Even, |acc, l| acc + l.degree())
    }

    pub fn deformed_count(&self) -> usize {
        self.0.iter().filter(|l| l.family.is_deformed()).count()
    }
}

impl fmt::Display for ExtWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self.0.iter().map(|l| l.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

/// Element of the extended algebra (free product; reduction lives in `hopf`).
pub type ExtElement<C = LaurentPoly> = LinComb<ExtWord, C>;

pub fn letter<C: Ring>(family: Family, index: i64) -> ExtElement<C> {
    ExtElement::basis(ExtWord::letter(ExtLetter::new(family, index)))
}

/// Concatenation product.
pub fn ext_multiply<C: Ring>(x: &ExtElement<C>, y: &ExtElement<C>) -> ExtElement<C> {
    let mut out = ExtElement::zero();
    for (wx, cx) in x {
        for (wy, cy) in y {
            out.add_term(wx.concat(wy), cx.mul(cy));
        }
    }
    out
}

impl fmt::Display for LinComb<ExtWord, LaurentPoly> {
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

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degrees_and_inverses() {
        assert_eq!(ExtLetter::new(Family::G, 3).degree(), Parity::Odd);
        for f in [Family::L, Family::F, Family::T, Family::KInv] {
            assert_eq!(f.degree(), Parity::Even);
        }
        assert_eq!(ExtLetter::new(Family::T, 2).inverse(), ExtLetter::new(Family::TInv, 2));
        assert_eq!(Family::RInv.base(), Family::R);
    }

    #[test]
    fn rendering() {
        let x: ExtElement = ext_multiply(&letter(Family::T, 3), &letter(Family::L, 2))
            .scale(&LaurentPoly::q_pow(18));
        assert_eq!(x.to_string(), "q^18 T_3 L_2");
    }
}
