//! Normal ordering for the classical, q-deformed and (p,q)-deformed
//! boson/fermion oscillator algebras, and the oscillator realization of the
//! super Virasoro generators.
//!
//! Two independent routes produce normal forms:
//!
//! * [`normal_order`] builds the result letter by letter from the right,
//!   using the closed form of [`boson_pull`] so pulling `a-` through `a+^k`
//!   costs one step instead of `k`.
//! * [`RewriteSystem`] applies the oriented rewrite rules one redex at a time
//!   under a configurable [`Strategy`]. It also runs rule sets loaded from
//!   algebra definition files.
//!
//! Canonical letter order is `a+ < a- < f+ < f-`.

use std::fmt;
use std::str::FromStr;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coeff::{q_box, LaurentPoly};
use crate::linear::LinComb;
use crate::words::{multiply, Element, GenSym, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DeformationMode {
    Classical,
    Q,
    #[serde(rename = "pq")]
    PQ,
}

impl DeformationMode {
    pub const ALL: [DeformationMode; 3] =
        [DeformationMode::Classical, DeformationMode::Q, DeformationMode::PQ];

    pub fn as_str(self) -> &'static str {
        match self {
            DeformationMode::Classical => "classical",
            DeformationMode::Q => "q",
            DeformationMode::PQ => "pq",
        }
    }
}

impl fmt::Display for DeformationMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for DeformationMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "classical" => Ok(DeformationMode::Classical),
            "q" => Ok(DeformationMode::Q),
            "pq" | "p,q" => Ok(DeformationMode::PQ),
            other => Err(format!("unknown mode `{other}` (expected classical, q or pq)")),
        }
    }
}

/// `a+^i a-^j f+^eps_plus f-^eps_minus`
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct NormalWord {
    pub i: u32,
    pub j: u32,
    pub eps_plus: bool,
    pub eps_minus: bool,
}

impl NormalWord {
    pub fn to_word(self) -> Word {
        let mut v = Vec::with_capacity((self.i + self.j + 2) as usize);
        v.extend(std::iter::repeat_n(GenSym::BosonRaise, self.i as usize));
        v.extend(std::iter::repeat_n(GenSym::BosonLower, self.j as usize));
        if self.eps_plus {
            v.push(GenSym::FermiRaise);
        }
        if self.eps_minus {
            v.push(GenSym::FermiLower);
        }
        Word(v)
    }

    /// Inverse of [`NormalWord::to_word`]; `None` if the word is not canonical.
    pub fn from_word(w: &Word) -> Option<NormalWord> {
        let mut nw = NormalWord::default();
        let mut stage = 0u8;
        for &g in w.letters() {
            let rank = match g {
                GenSym::BosonRaise => 0,
                GenSym::BosonLower => 1,
                GenSym::FermiRaise => 2,
                GenSym::FermiLower => 3,
            };
            if rank < stage {
                return None;
            }
            stage = rank;
            match g {
                GenSym::BosonRaise => nw.i += 1,
                GenSym::BosonLower => nw.j += 1,
                GenSym::FermiRaise if !nw.eps_plus => nw.eps_plus = true,
                GenSym::FermiLower if !nw.eps_minus => nw.eps_minus = true,
                _ => return None,
            }
        }
        Some(nw)
    }
}

pub fn is_normal_word(w: &Word) -> bool {
    NormalWord::from_word(w).is_some()
}

type NormalElement = LinComb<NormalWord, LaurentPoly>;

fn lower_ladder(k: u32, mode: DeformationMode) -> LaurentPoly {
    match mode {
        DeformationMode::Classical => LaurentPoly::from_int(k as i64),
        _ => q_box(k as i64),
    }
}

fn boson_swap(k: u32, mode: DeformationMode) -> LaurentPoly {
    match mode {
        DeformationMode::Classical => LaurentPoly::one(),
        _ => LaurentPoly::q_pow(2 * k as i64),
    }
}

/// Scalar picked up by a fermion letter passing `a+^i a-^j` to its right.
fn fermion_pass(g: GenSym, i: u32, j: u32, mode: DeformationMode) -> LaurentPoly {
    if mode != DeformationMode::PQ {
        return LaurentPoly::one();
    }
    let (i, j) = (i as i64, j as i64);
    match g {
        // f+ a+ = p^-2 a+ f+,  f+ a- = p^2 a- f+
        GenSym::FermiRaise => LaurentPoly::p_pow(-2 * i + 2 * j),
        // f- a+ = p^2 a+ f-,  f- a- = p^-2 a- f-
        GenSym::FermiLower => LaurentPoly::p_pow(2 * i - 2 * j),
        _ => LaurentPoly::one(),
    }
}

/// Normal form of `a- a+^k`:  `[[k]] a+^(k-1) + q^(2k) a+^k a-`
/// (`k a+^(k-1) + a+^k a-` classically).
pub fn boson_pull(k: u32, mode: DeformationMode) -> Element {
    let mut out = Element::zero();
    if k > 0 {
        out.add_term(Word::power(GenSym::BosonRaise, k as usize - 1), lower_ladder(k, mode));
    }
    let mut w = Word::power(GenSym::BosonRaise, k as usize);
    w.0.push(GenSym::BosonLower);
    out.add_term(w, boson_swap(k, mode));
    out
}

/// `g * nw` in normal form.
fn left_multiply(g: GenSym, nw: &NormalWord, mode: DeformationMode) -> NormalElement {
    let mut out = NormalElement::zero();
    match g {
        GenSym::BosonRaise => out.add_term(NormalWord { i: nw.i + 1, ..*nw }, LaurentPoly::one()),
        GenSym::BosonLower => {
            if nw.i > 0 {
                out.add_term(NormalWord { i: nw.i - 1, ..*nw }, lower_ladder(nw.i, mode));
            }
            out.add_term(NormalWord { j: nw.j + 1, ..*nw }, boson_swap(nw.i, mode));
        }
        GenSym::FermiRaise => {
            let c = fermion_pass(g, nw.i, nw.j, mode);
            if !nw.eps_plus {
                out.add_term(NormalWord { eps_plus: true, ..*nw }, c);
            }
        }
        GenSym::FermiLower => {
            let c = fermion_pass(g, nw.i, nw.j, mode);
            match (nw.eps_plus, nw.eps_minus) {
                // f- f+ = 1 - f+ f-
                (true, false) => {
                    out.add_term(NormalWord { eps_plus: false, ..*nw }, c.clone());
                    out.add_term(NormalWord { eps_minus: true, ..*nw }, c.neg());
                }
                // f- f+ f- = f- - f+ f- f- = f-
                (true, true) => out.add_term(NormalWord { eps_plus: false, ..*nw }, c),
                (false, false) => out.add_term(NormalWord { eps_minus: true, ..*nw }, c),
                (false, true) => {}
            }
        }
    }
    out
}

fn normal_order_word(w: &Word, mode: DeformationMode) -> Element {
    let mut acc = NormalElement::basis(NormalWord::default());
    for &g in w.letters().iter().rev() {
        acc = acc.flat_map(|nw| left_multiply(g, nw, mode));
    }
    acc.iter().map(|(nw, c)| (nw.to_word(), c.clone())).collect()
}

/// Canonical representative of `x` in the oscillator algebra of `mode`.
pub fn normal_order(x: &Element, mode: DeformationMode) -> Element {
    x.flat_map(|w| normal_order_word(w, mode))
}

/// One oriented rewrite rule `lhs -> rhs`.
#[derive(Debug, Clone, PartialEq)]
pub struct RewriteRule {
    pub lhs: Word,
    pub rhs: Element,
}

impl fmt::Display for RewriteRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.lhs, self.rhs)
    }
}

/// Redex selection order for [`RewriteSystem::reduce`].
#[derive(Debug)]
pub enum Strategy {
    /// Always rewrite the leftmost redex of the smallest pending word.
    Leftmost,
    /// Pick pending words and redexes uniformly at random.
    Random(StdRng),
}

impl Strategy {
    pub fn random(seed: u64) -> Self {
        Strategy::Random(StdRng::seed_from_u64(seed))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("rewriting did not terminate within {0} steps")]
    BudgetExceeded(usize),
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct RewriteSystem {
    pub rules: Vec<RewriteRule>,
}

impl RewriteSystem {
    pub const DEFAULT_BUDGET: usize = 1_000_000;

    pub fn new(rules: Vec<RewriteRule>) -> Self {
        Self { rules }
    }

    /// The oriented rules for one of the three oscillator algebras.
    pub fn for_mode(mode: DeformationMode) -> Self {
        use GenSym::*;
        let pair = |a, b| Word(vec![a, b]);
        let scaled = |c: LaurentPoly, a, b| Element::term(pair(a, b), c);
        let boson_rhs = {
            let c = match mode {
                DeformationMode::Classical => LaurentPoly::one(),
                _ => LaurentPoly::q_pow(2),
            };
            Element::unit().add(&scaled(c, BosonRaise, BosonLower))
        };
        let (pp, pm) = match mode {
            DeformationMode::PQ => (LaurentPoly::p_pow(2), LaurentPoly::p_pow(-2)),
            _ => (LaurentPoly::one(), LaurentPoly::one()),
        };
        let rule = |lhs: Word, rhs: Element| RewriteRule { lhs, rhs };
        Self::new(vec![
            rule(pair(BosonLower, BosonRaise), boson_rhs),
            rule(
                pair(FermiLower, FermiRaise),
                Element::unit().sub(&Element::basis(pair(FermiRaise, FermiLower))),
            ),
            rule(pair(FermiRaise, FermiRaise), Element::zero()),
            rule(pair(FermiLower, FermiLower), Element::zero()),
            rule(pair(FermiRaise, BosonRaise), scaled(pm.clone(), BosonRaise, FermiRaise)),
            rule(pair(FermiRaise, BosonLower), scaled(pp.clone(), BosonLower, FermiRaise)),
            rule(pair(FermiLower, BosonRaise), scaled(pp, BosonRaise, FermiLower)),
            rule(pair(FermiLower, BosonLower), scaled(pm, BosonLower, FermiLower)),
        ])
    }

    /// All `(position, rule index)` redexes in `w`.
    fn redexes(&self, w: &Word) -> Vec<(usize, usize)> {
        let letters = w.letters();
        let mut out = Vec::new();
        for pos in 0..letters.len() {
            for (r, rule) in self.rules.iter().enumerate() {
                let lhs = rule.lhs.letters();
                if !lhs.is_empty() && letters[pos..].starts_with(lhs) {
                    out.push((pos, r));
                }
            }
        }
        out
    }

    fn apply(&self, w: &Word, pos: usize, r: usize) -> Element {
        let rule = &self.rules[r];
        let prefix = Element::basis(Word(w.letters()[..pos].to_vec()));
        let suffix = Element::basis(Word(w.letters()[pos + rule.lhs.len()..].to_vec()));
        multiply(&multiply(&prefix, &rule.rhs), &suffix)
    }

    /// Exhaustive rewriting of `x` under `strategy`.
    pub fn reduce(&self, x: &Element, strategy: &mut Strategy) -> Result<Element, RewriteError> {
        self.reduce_with_budget(x, strategy, Self::DEFAULT_BUDGET)
    }

    pub fn reduce_with_budget(
        &self,
        x: &Element,
        strategy: &mut Strategy,
        budget: usize,
    ) -> Result<Element, RewriteError> {
        let mut pending = x.clone();
        let mut done = Element::zero();
        let mut steps = 0usize;
        while !pending.is_empty() {
            let idx = match strategy {
                Strategy::Leftmost => 0,
                Strategy::Random(rng) => rng.gen_range(0..pending.len()),
            };
            let (w, c) = pending
                .iter()
                .nth(idx)
                .map(|(w, c)| (w.clone(), c.clone()))
                .expect("index within pending");
            pending.add_term(w.clone(), c.neg());
            let redexes = self.redexes(&w);
            if redexes.is_empty() {
                done.add_term(w, c);
                continue;
            }
            steps += 1;
            if steps > budget {
                return Err(RewriteError::BudgetExceeded(budget));
            }
            let (pos, r) = match strategy {
                Strategy::Leftmost => redexes[0],
                Strategy::Random(rng) => redexes[rng.gen_range(0..redexes.len())],
            };
            pending.add_scaled(&self.apply(&w, pos, r), &c);
        }
        Ok(done)
    }
}

/// The three super Virasoro generator families realized by oscillators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GenKind {
    L,
    G,
    F,
}

impl GenKind {
    pub const ALL: [GenKind; 3] = [GenKind::L, GenKind::G, GenKind::F];

    /// Smallest index the oscillator realization supports (`a+` is not invertible).
    pub fn min_index(self) -> i64 {
        match self {
            GenKind::L | GenKind::G => -1,
            GenKind::F => 0,
        }
    }

    pub fn admits(self, n: i64) -> bool {
        n >= self.min_index()
    }

    pub fn name(self) -> &'static str {
        match self {
            GenKind::L => "L",
            GenKind::G => "G",
            GenKind::F => "F",
        }
    }

    pub fn from_name(s: &str) -> Option<GenKind> {
        GenKind::ALL.into_iter().find(|k| k.name() == s)
    }
}

impl fmt::Display for GenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OscillatorError {
    #[error("{kind}_{index} is outside the realization (index must be >= {min})")]
    UnsupportedIndex { kind: GenKind, index: i64, min: i64 },
}

/// Oscillator realization of `kind_n`:
///
/// | mode      | `L_n`               | `G_n`                     | `F_n`          |
/// |-----------|---------------------|---------------------------|----------------|
/// | classical | `-a+^(n+1) a-`      | `a+^(n+1) f+ a-`          | `a+^n f+ f-`   |
/// | q         | `-q a+^(n+1) a-`    | `a+^(n+1) f+ a-`          | `a+^n f+ f-`   |
/// | pq        | `-q a+^(n+1) a-`    | `p^-2 a+^(n+1) f+ a-`     | `a+^n f+ f-`   |
pub fn realize(kind: GenKind, n: i64, mode: DeformationMode) -> Result<Element, OscillatorError> {
    if !kind.admits(n) {
        return Err(OscillatorError::UnsupportedIndex {
            kind,
            index: n,
            min: kind.min_index(),
        });
    }
    use GenSym::*;
    let raises = |k: i64| Word::power(BosonRaise, k as usize);
    let (word, coeff) = match kind {
        GenKind::L => {
            let mut w = raises(n + 1);
            w.0.push(BosonLower);
            let c = match mode {
                DeformationMode::Classical => LaurentPoly::from_int(-1),
                _ => LaurentPoly::q_pow(1).neg(),
            };
            (w, c)
        }
        GenKind::G => {
            let mut w = raises(n + 1);
            w.0.extend([FermiRaise, BosonLower]);
            let c = match mode {
                DeformationMode::PQ => LaurentPoly::p_pow(-2),
                _ => LaurentPoly::one(),
            };
            (w, c)
        }
        GenKind::F => {
            let mut w = raises(n);
            w.0.extend([FermiRaise, FermiLower]);
            (w, LaurentPoly::one())
        }
    };
    Ok(Element::term(word, coeff))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{grade, Parity};
    use GenSym::*;

    fn w(v: &[GenSym]) -> Word {
        Word(v.to_vec())
    }

    fn q(e: i64) -> LaurentPoly {
        LaurentPoly::q_pow(e)
    }

    #[test]
    fn boson_rule_in_q_mode() {
        let x = Element::basis(w(&[BosonLower, BosonRaise]));
        let expected = Element::unit().add(&Element::term(w(&[BosonRaise, BosonLower]), q(2)));
        assert_eq!(normal_order(&x, DeformationMode::Q), expected);
    }

    #[test]
    fn fermion_rule_in_every_mode() {
        let x = Element::basis(w(&[FermiLower, FermiRaise]));
        let expected = Element::unit().sub(&Element::basis(w(&[FermiRaise, FermiLower])));
        for mode in DeformationMode::ALL {
            assert_eq!(normal_order(&x, mode), expected, "{mode}");
        }
    }

    #[test]
    fn double_boson_pull_by_hand() {
        // a- a+ a+ = [[2]] a+ + q^4 a+ a+ a-
        let x = Element::basis(w(&[BosonLower, BosonRaise, BosonRaise]));
        let mut expected = Element::term(w(&[BosonRaise]), q_box(2));
        expected.add_term(w(&[BosonRaise, BosonRaise, BosonLower]), q(4));
        assert_eq!(normal_order(&x, DeformationMode::Q), expected);
    }

    #[test]
    fn canonical_pq_word_is_unchanged() {
        let x = Element::basis(w(&[BosonRaise, FermiRaise]));
        assert_eq!(normal_order(&x, DeformationMode::PQ), x);
    }

    #[test]
    fn boson_pull_examples() {
        assert_eq!(boson_pull(0, DeformationMode::Q), Element::gen(BosonLower));
        let k1 = Element::unit().add(&Element::term(w(&[BosonRaise, BosonLower]), q(2)));
        assert_eq!(boson_pull(1, DeformationMode::Q), k1);
        let mut k3 = Element::term(w(&[BosonRaise, BosonRaise]), q_box(3));
        k3.add_term(w(&[BosonRaise, BosonRaise, BosonRaise, BosonLower]), q(6));
        assert_eq!(boson_pull(3, DeformationMode::Q), k3);
    }

    #[test]
    fn boson_pull_matches_naive_rewriting() {
        let rules = RewriteSystem::for_mode(DeformationMode::Q);
        for k in 0..=12 {
            let mut word = vec![BosonLower];
            word.extend(std::iter::repeat_n(BosonRaise, k));
            let naive = rules
                .reduce(&Element::basis(Word(word)), &mut Strategy::Leftmost)
                .unwrap();
            assert_eq!(boson_pull(k as u32, DeformationMode::Q), naive, "k = {k}");
        }
    }

    #[test]
    fn realize_examples() {
        let l0 = realize(GenKind::L, 0, DeformationMode::Q).unwrap();
        assert_eq!(l0, Element::term(w(&[BosonRaise, BosonLower]), q(1).neg()));
        let gm1 = realize(GenKind::G, -1, DeformationMode::Q).unwrap();
        assert_eq!(gm1, Element::basis(w(&[FermiRaise, BosonLower])));
        let f0 = realize(GenKind::F, 0, DeformationMode::PQ).unwrap();
        assert_eq!(f0, Element::basis(w(&[FermiRaise, FermiLower])));
        assert_eq!(
            realize(GenKind::L, -2, DeformationMode::Q),
            Err(OscillatorError::UnsupportedIndex { kind: GenKind::L, index: -2, min: -1 })
        );
        assert!(realize(GenKind::F, -1, DeformationMode::Q).is_err());
    }

    #[test]
    fn realized_generators_carry_their_grading() {
        for mode in DeformationMode::ALL {
            for kind in GenKind::ALL {
                for n in kind.min_index()..=6 {
                    let x = realize(kind, n, mode).unwrap();
                    let expected = if kind == GenKind::G { Parity::Odd } else { Parity::Even };
                    assert_eq!(x.degree(), Some(expected));
                    for (word, _) in &x {
                        assert_eq!(grade(word), expected);
                    }
                }
            }
        }
    }

    #[test]
    fn normal_word_round_trip() {
        let nw = NormalWord { i: 2, j: 1, eps_plus: true, eps_minus: false };
        assert_eq!(NormalWord::from_word(&nw.to_word()), Some(nw));
        assert_eq!(NormalWord::from_word(&w(&[BosonLower, BosonRaise])), None);
        assert_eq!(NormalWord::from_word(&w(&[FermiRaise, FermiRaise])), None);
    }

    #[test]
    fn budget_is_enforced() {
        // a+ -> a+ a+ never terminates
        let sys = RewriteSystem::new(vec![RewriteRule {
            lhs: w(&[BosonRaise]),
            rhs: Element::basis(w(&[BosonRaise, BosonRaise])),
        }]);
        let r = sys.reduce_with_budget(&Element::gen(BosonRaise), &mut Strategy::Leftmost, 50);
        assert_eq!(r, Err(RewriteError::BudgetExceeded(50)));
    }
}
