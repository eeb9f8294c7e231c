//! Truncated Fock representation used as an independent numeric oracle.
//!
//! Kets `|n, eps>` with `0 <= n <= N`. The ladder convention is
//! non-normalized so everything stays rational:
//!
//! ```text
//! a+|n,e> = |n+1,e>          a-|n,e> = [[n]] |n-1,e>
//! f+|n,0> = p^(-2n) |n,1>    f-|n,1> = p^(2n) |n,0>
//! ```
//!
//! With `a±` acting p-free, `f+ a+ = p^-2 a+ f+` forces the phase of `f+`
//! to drop by `p^-2` per boson, which fixes `p^(-2n)`; `f- f+ + f+ f- = 1`
//! then forces `p^(2n)` on `f-`.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coeff::{lp_eval, EvalError, Rational};
use crate::oscillator::{DeformationMode, RewriteSystem};
use crate::words::{Element, GenSym, Word};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FockError {
    #[error("invalid sample parameters: {0}")]
    BadParams(String),
    #[error("margin {margin} is smaller than the largest raise excursion {needed}")]
    MarginTooSmall { needed: u32, margin: u32 },
    #[error(transparent)]
    Eval(#[from] EvalError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SampleParams {
    pub q_val: Rational,
    pub p_val: Rational,
    pub truncation: u32,
    pub margin: u32,
}

impl SampleParams {
    pub fn new(q_val: Rational, p_val: Rational, truncation: u32, margin: u32) -> Result<Self, FockError> {
        let params = Self {
            q_val,
            p_val,
            truncation,
            margin,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<(), FockError> {
        if self.q_val.is_zero() || self.q_val.abs().is_one() {
            return Err(FockError::BadParams(format!(
                "q must satisfy q != 0 and |q| != 1, got {}",
                self.q_val
            )));
        }
        if self.p_val.is_zero() {
            return Err(FockError::BadParams("p must be nonzero".into()));
        }
        if self.truncation == 0 || self.margin == 0 {
            return Err(FockError::BadParams("truncation and margin must be positive".into()));
        }
        if self.margin > self.truncation {
            return Err(FockError::BadParams(format!(
                "margin {} exceeds truncation {}",
                self.margin, self.truncation
            )));
        }
        Ok(())
    }

    /// Same kets checked, room for a larger excursion: `N - d` is preserved.
    pub fn widened(&self, margin: u32) -> Self {
        let extra = margin.saturating_sub(self.margin);
        Self {
            truncation: self.truncation + extra,
            margin: self.margin + extra,
            ..self.clone()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Ket {
    pub n: u32,
    pub eps: u8,
}

impl Ket {
    pub fn new(n: u32, eps: u8) -> Self {
        Self { n, eps }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FockVector {
    comps: BTreeMap<Ket, Rational>,
    pub truncation: u32,
    /// Set once some `a+` pushed a component past `N`.
    pub overflow: bool,
}

impl FockVector {
    pub fn zero(truncation: u32) -> Self {
        Self {
            comps: BTreeMap::new(),
            truncation,
            overflow: false,
        }
    }

    pub fn ket(n: u32, eps: u8, truncation: u32) -> Self {
        assert!(n <= truncation && eps <= 1, "ket |{n},{eps}> outside the truncated space");
        let mut v = Self::zero(truncation);
        v.comps.insert(Ket::new(n, eps), Rational::one());
        v
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn get(&self, k: Ket) -> Rational {
        self.comps.get(&k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Ket, &Rational)> {
        self.comps.iter()
    }

    pub fn add_term(&mut self, k: Ket, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.comps.entry(k).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.comps.remove(&k);
        }
    }

    pub fn add_scaled(&mut self, other: &FockVector, c: &Rational) {
        for (k, v) in &other.comps {
            self.add_term(*k, v * c);
        }
        self.overflow |= other.overflow;
    }
}

fn pow(x: &Rational, e: i64) -> Rational {
    let base = if e < 0 { x.recip() } else { x.clone() };
    num_traits::pow(base, e.unsigned_abs() as usize)
}

/// `[[n]]` (or `n` classically) at the sample point.
fn ladder(n: u32, params: &SampleParams, mode: DeformationMode) -> Rational {
    match mode {
        DeformationMode::Classical => Rational::from_integer(n.into()),
        _ => (0..n as i64).map(|j| pow(&params.q_val, 2 * j)).sum(),
    }
}

fn p_phase(exp: i64, params: &SampleParams, mode: DeformationMode) -> Rational {
    match mode {
        DeformationMode::PQ => pow(&params.p_val, exp),
        _ => Rational::one(),
    }
}

pub fn apply_generator(g: GenSym, v: &FockVector, params: &SampleParams, mode: DeformationMode) -> FockVector {
    let mut out = FockVector::zero(v.truncation);
    out.overflow = v.overflow;
    for (&Ket { n, eps }, c) in v.iter() {
        match g {
            GenSym::BosonRaise => {
                if n >= v.truncation {
                    out.overflow = true;
                } else {
                    out.add_term(Ket::new(n + 1, eps), c.clone());
                }
            }
            GenSym::BosonLower => {
                if n > 0 {
                    out.add_term(Ket::new(n - 1, eps), c * ladder(n, params, mode));
                }
            }
            GenSym::FermiRaise => {
                if eps == 0 {
                    out.add_term(Ket::new(n, 1), c * p_phase(-2 * n as i64, params, mode));
                }
            }
            GenSym::FermiLower => {
                if eps == 1 {
                    out.add_term(Ket::new(n, 0), c * p_phase(2 * n as i64, params, mode));
                }
            }
        }
    }
    out
}

pub fn apply_word(w: &Word, v: &FockVector, params: &SampleParams, mode: DeformationMode) -> FockVector {
    w.letters()
        .iter()
        .rev()
        .fold(v.clone(), |acc, &g| apply_generator(g, &acc, params, mode))
}

pub fn apply_element(
    x: &Element,
    v: &FockVector,
    params: &SampleParams,
    mode: DeformationMode,
) -> Result<FockVector, FockError> {
    let mut out = FockVector::zero(v.truncation);
    out.overflow = v.overflow;
    for (w, c) in x {
        let c = lp_eval(c, &params.q_val, &params.p_val)?;
        out.add_scaled(&apply_word(w, v, params, mode), &c);
    }
    Ok(out)
}

/// Highest boson level reached above the starting ket while a word acts
/// right to left (net raises at the worst intermediate point).
pub fn word_excursion(w: &Word) -> u32 {
    let mut level: i64 = 0;
    let mut peak: i64 = 0;
    for g in w.letters().iter().rev() {
        match g {
            GenSym::BosonRaise => level += 1,
            GenSym::BosonLower => level -= 1,
            _ => {}
        }
        peak = peak.max(level);
    }
    peak as u32
}

pub fn excursion(x: &Element) -> u32 {
    x.iter().map(|(w, _)| word_excursion(w)).max().unwrap_or(0)
}

/// First basis ket on which `x` and `y` act differently, among the kets
/// `|n, eps>` with `n <= N - d`.
pub fn find_disagreement(
    x: &Element,
    y: &Element,
    params: &SampleParams,
    mode: DeformationMode,
) -> Result<Option<Ket>, FockError> {
    params.validate()?;
    let needed = excursion(x).max(excursion(y));
    if needed > params.margin {
        return Err(FockError::MarginTooSmall {
            needed,
            margin: params.margin,
        });
    }
    let top = params.truncation - params.margin;
    let kets: Vec<Ket> = (0..=top).flat_map(|n| [Ket::new(n, 0), Ket::new(n, 1)]).collect();
    let results: Vec<Result<Option<Ket>, FockError>> = kets
        .par_iter()
        .map(|&k| {
            let v = FockVector::ket(k.n, k.eps, params.truncation);
            let ax = apply_element(x, &v, params, mode)?;
            let ay = apply_element(y, &v, params, mode)?;
            debug_assert!(!ax.overflow && !ay.overflow, "margin guarantees no truncation");
            Ok((ax.comps != ay.comps).then_some(k))
        })
        .collect();
    for r in results {
        if let Some(k) = r? {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

/// `true` iff `x` and `y` agree on every ket with `n <= N - d`.
pub fn crosscheck(x: &Element, y: &Element, params: &SampleParams, mode: DeformationMode) -> Result<bool, FockError> {
    Ok(find_disagreement(x, y, params, mode)?.is_none())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FidelityRow {
    pub rule: String,
    pub kets_checked: usize,
    pub holds: bool,
}

/// Every rewrite rule of `mode` holds exactly on all kets with `n <= N - 1`.
pub fn representation_fidelity(params: &SampleParams, mode: DeformationMode) -> Result<Vec<FidelityRow>, FockError> {
    let sys = RewriteSystem::for_mode(mode);
    let mut rows = Vec::new();
    for rule in &sys.rules {
        let lhs = Element::basis(rule.lhs.clone());
        let mut holds = true;
        let mut count = 0;
        for n in 0..params.truncation {
            for eps in 0..=1u8 {
                let v = FockVector::ket(n, eps, params.truncation);
                let a = apply_element(&lhs, &v, params, mode)?;
                let b = apply_element(&rule.rhs, &v, params, mode)?;
                holds &= a.comps == b.comps && !a.overflow && !b.overflow;
                count += 1;
            }
        }
        rows.push(FidelityRow {
            rule: rule.to_string(),
            kets_checked: count,
            holds,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{lp_eval, q_box, rat, LaurentPoly};
    use crate::oscillator::{realize, GenKind};
    use GenSym::*;

    fn params() -> SampleParams {
        SampleParams::new(rat(3, 2), rat(5, 7), 12, 8).unwrap()
    }

    fn w(v: &[GenSym]) -> Element {
        Element::basis(Word(v.to_vec()))
    }

    #[test]
    fn vacuum_annihilation() {
        let v = FockVector::ket(0, 0, 12);
        assert!(apply_generator(BosonLower, &v, &params(), DeformationMode::Q).is_zero());
    }

    #[test]
    fn boson_and_fermion_relations_on_kets() {
        let p = params();
        let mut lhs = w(&[BosonLower, BosonRaise]);
        lhs.add_term(Word(vec![BosonRaise, BosonLower]), LaurentPoly::q_pow(2).neg());
        let mut anti = w(&[FermiLower, FermiRaise]);
        anti.add_term(Word(vec![FermiRaise, FermiLower]), LaurentPoly::one());
        let mut twisted = w(&[BosonRaise, FermiRaise]);
        twisted.add_term(Word(vec![FermiRaise, BosonRaise]), LaurentPoly::p_pow(2).neg());
        for n in 0..12 {
            for eps in 0..=1 {
                let v = FockVector::ket(n, eps, 12);
                assert_eq!(apply_element(&lhs, &v, &p, DeformationMode::PQ).unwrap().comps, v.comps);
                assert_eq!(apply_element(&anti, &v, &p, DeformationMode::PQ).unwrap().comps, v.comps);
            }
            let v = FockVector::ket(n, 0, 12);
            assert!(apply_element(&twisted, &v, &p, DeformationMode::PQ).unwrap().is_zero());
        }
    }

    #[test]
    fn realized_generators_on_kets() {
        let p = params();
        let l0 = realize(GenKind::L, 0, DeformationMode::Q).unwrap();
        for n in 0..5 {
            let v = FockVector::ket(n, 0, 12);
            let got = apply_element(&l0, &v, &p, DeformationMode::Q).unwrap();
            let expected = -rat(3, 2) * lp_eval(&q_box(n as i64), &rat(3, 2), &rat(1, 1)).unwrap();
            assert_eq!(got.get(Ket::new(n, 0)), expected);
        }
        let gm1 = realize(GenKind::G, -1, DeformationMode::Q).unwrap();
        let got = apply_element(&gm1, &FockVector::ket(1, 0, 12), &p, DeformationMode::Q).unwrap();
        assert_eq!(got.get(Ket::new(0, 1)), rat(1, 1));
        let unit = apply_element(&Element::unit(), &FockVector::ket(3, 1, 12), &p, DeformationMode::Q).unwrap();
        assert_eq!(unit, FockVector::ket(3, 1, 12));
    }

    #[test]
    fn crosscheck_examples() {
        let p = params();
        let x = w(&[BosonLower, BosonRaise]);
        let mut y = Element::unit();
        y.add_term(Word(vec![BosonRaise, BosonLower]), LaurentPoly::q_pow(2));
        assert!(crosscheck(&x, &y, &p, DeformationMode::Q).unwrap());
        assert!(!crosscheck(&x, &y, &p, DeformationMode::Classical).unwrap());
        assert!(crosscheck(&x, &x, &p, DeformationMode::PQ).unwrap());
        let long = w(&[BosonRaise; 9]);
        assert!(matches!(
            crosscheck(&long, &long, &p, DeformationMode::Q),
            Err(FockError::MarginTooSmall { needed: 9, margin: 8 })
        ));
    }

    #[test]
    fn excursion_tracks_peak_not_length() {
        assert_eq!(word_excursion(&Word(vec![BosonRaise, BosonRaise, BosonLower])), 1);
        assert_eq!(word_excursion(&Word(vec![BosonLower, BosonRaise, BosonRaise])), 2);
        assert_eq!(word_excursion(&Word(vec![BosonLower; 4])), 0);
    }

    #[test]
    fn fidelity_all_modes() {
        for mode in DeformationMode::ALL {
            for row in representation_fidelity(&params(), mode).unwrap() {
                assert!(row.holds, "{mode}: {}", row.rule);
            }
        }
    }

    #[test]
    fn rejects_bad_params() {
        assert!(SampleParams::new(rat(1, 1), rat(1, 1), 12, 8).is_err());
        assert!(SampleParams::new(rat(-1, 1), rat(1, 1), 12, 8).is_err());
        assert!(SampleParams::new(rat(3, 2), rat(0, 1), 12, 8).is_err());
        assert!(SampleParams::new(rat(3, 2), rat(1, 1), 4, 8).is_err());
    }
}
