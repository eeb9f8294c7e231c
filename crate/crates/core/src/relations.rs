//! The six super Virasoro relation families in their classical, q-deformed
//! and (p,q)-deformed forms, checked exactly by realizing both sides with
//! oscillators and normal-ordering the difference.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coeff::{lambda, lp_eval, q_box, q_bracket, rat, EvalError, LaurentPoly};
use crate::extended::{ext_multiply, letter, ExtElement, ExtLetter, Family};
use crate::linear::Ring;
use crate::oscillator::{normal_order, realize, DeformationMode, OscillatorError};
use crate::words::{multiply, Element};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FamilyId {
    LL,
    FG,
    LF,
    FF,
    LG,
    GG,
}

impl FamilyId {
    pub const ALL: [FamilyId; 6] = [
        FamilyId::LL,
        FamilyId::FG,
        FamilyId::LF,
        FamilyId::FF,
        FamilyId::LG,
        FamilyId::GG,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FamilyId::LL => "LL",
            FamilyId::FG => "FG",
            FamilyId::LF => "LF",
            FamilyId::FF => "FF",
            FamilyId::LG => "LG",
            FamilyId::GG => "GG",
        }
    }

    /// Names of the two indices, in `(i1, i2)` order.
    pub fn index_names(self) -> (char, char) {
        match self {
            FamilyId::LL | FamilyId::LF | FamilyId::LG => ('l', 'k'),
            FamilyId::FG | FamilyId::FF | FamilyId::GG => ('m', 'n'),
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FamilyId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FamilyId::ALL
            .into_iter()
            .find(|f| f.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown relation family `{s}`"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RelationFamily {
    pub id: FamilyId,
    pub mode: DeformationMode,
}

impl RelationFamily {
    pub fn new(id: FamilyId, mode: DeformationMode) -> Self {
        Self { id, mode }
    }
}

/// One relation family instantiated at concrete indices, before realization.
#[derive(Debug, Clone, PartialEq)]
pub struct RelationInstance {
    pub family: String,
    pub i1: i64,
    pub i2: i64,
    pub lhs: ExtElement,
    pub rhs: ExtElement,
    /// Every generator written in the relation, including terms whose
    /// coefficient happens to vanish at these indices.
    pub generators: Vec<ExtLetter>,
}

impl RelationInstance {
    pub fn difference(&self) -> ExtElement {
        self.lhs.sub(&self.rhs)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RelationError {
    #[error(transparent)]
    Unsupported(#[from] OscillatorError),
    #[error("relation `{family}` at ({i1}, {i2}) uses {letter}, which has no realization")]
    Inadmissible {
        family: String,
        i1: i64,
        i2: i64,
        letter: ExtLetter,
    },
    #[error("unknown relation family `{0}`")]
    UnknownFamily(String),
    #[error("{0}")]
    Engine(String),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

impl RelationError {
    pub fn is_inadmissible(&self) -> bool {
        matches!(self, RelationError::Inadmissible { .. } | RelationError::Unsupported(_))
    }
}

fn g(f: Family, i: i64) -> ExtElement {
    letter(f, i)
}

fn gg(f1: Family, i1: i64, f2: Family, i2: i64) -> ExtElement {
    ext_multiply(&g(f1, i1), &g(f2, i2))
}

fn q(e: i64) -> LaurentPoly {
    LaurentPoly::q_pow(e)
}

fn int(c: i64) -> LaurentPoly {
    LaurentPoly::from_int(c)
}

/// `xy - (-1)^(deg x deg y) yx` for single letters.
fn bracket(f1: Family, i1: i64, f2: Family, i2: i64) -> ExtElement {
    let sign = f1.degree().koszul_sign(f2.degree());
    gg(f1, i1, f2, i2).sub(&gg(f2, i2, f1, i1).scale(&int(sign)))
}

/// Abstract relation `id` of `mode` at `(i1, i2)`.
pub fn relation_instance(id: FamilyId, mode: DeformationMode, i1: i64, i2: i64) -> RelationInstance {
    use Family::{F as Ff, G as Gf, L as Lf};
    let deformed = mode != DeformationMode::Classical;
    let (lhs, rhs, generators) = match id {
        FamilyId::LL => {
            let (l, k) = (i1, i2);
            let gens = vec![ExtLetter::new(Lf, l), ExtLetter::new(Lf, k), ExtLetter::new(Lf, k + l)];
            if deformed {
                let lhs = gg(Lf, l, Lf, k)
                    .scale(&q(l - k))
                    .sub(&gg(Lf, k, Lf, l).scale(&q(k - l)));
                (lhs, g(Lf, k + l).scale(&q_bracket(l - k)), gens)
            } else {
                (bracket(Lf, l, Lf, k), g(Lf, l + k).scale(&int(l - k)), gens)
            }
        }
        FamilyId::FG => {
            let (m, n) = (i1, i2);
            let gens = vec![ExtLetter::new(Ff, m), ExtLetter::new(Gf, n), ExtLetter::new(Gf, n + m)];
            let lhs = if deformed {
                gg(Ff, m, Gf, n).sub(&gg(Gf, n, Ff, m))
            } else {
                bracket(Ff, m, Gf, n)
            };
            (lhs, g(Gf, n + m), gens)
        }
        FamilyId::LF => {
            let (l, k) = (i1, i2);
            let gens = vec![ExtLetter::new(Lf, l), ExtLetter::new(Ff, k), ExtLetter::new(Ff, k + l)];
            if deformed {
                let lhs = gg(Lf, l, Ff, k).sub(&gg(Ff, k, Lf, l).scale(&q(2 * k)));
                let coeff = q(1).mul(&q_box(k)).neg();
                (lhs, g(Ff, k + l).scale(&coeff), gens)
            } else {
                (bracket(Lf, l, Ff, k), g(Ff, l + k).scale(&int(-k)), gens)
            }
        }
        FamilyId::FF => {
            let (m, n) = (i1, i2);
            if deformed {
                let gens = vec![ExtLetter::new(Ff, m), ExtLetter::new(Ff, n), ExtLetter::new(Ff, n + m)];
                let lhs = gg(Ff, m, Ff, n)
                    .scale(&q(n - m))
                    .sub(&gg(Ff, n, Ff, m).scale(&q(m - n)));
                let coeff = lambda().mul(&q_bracket(n - m));
                (lhs, g(Ff, n + m).scale(&coeff), gens)
            } else {
                let gens = vec![ExtLetter::new(Ff, m), ExtLetter::new(Ff, n)];
                (bracket(Ff, m, Ff, n), ExtElement::zero(), gens)
            }
        }
        FamilyId::LG => {
            let (l, k) = (i1, i2);
            let gens = vec![ExtLetter::new(Lf, l), ExtLetter::new(Gf, k), ExtLetter::new(Gf, k + l)];
            match mode {
                DeformationMode::Classical => {
                    (bracket(Lf, l, Gf, k), g(Gf, l + k).scale(&int(l - k)), gens)
                }
                DeformationMode::Q | DeformationMode::PQ => {
                    let twist = if mode == DeformationMode::PQ {
                        LaurentPoly::qp_pow(k - l, 2 * l)
                    } else {
                        q(k - l)
                    };
                    let lhs = gg(Lf, l, Gf, k).scale(&q(l - k)).sub(&gg(Gf, k, Lf, l).scale(&twist));
                    (lhs, g(Gf, k + l).scale(&q_bracket(l - k)), gens)
                }
            }
        }
        FamilyId::GG => {
            let (m, n) = (i1, i2);
            let gens = vec![ExtLetter::new(Gf, m), ExtLetter::new(Gf, n)];
            let lhs = if deformed {
                gg(Gf, m, Gf, n).add(&gg(Gf, n, Gf, m))
            } else {
                bracket(Gf, m, Gf, n)
            };
            (lhs, ExtElement::zero(), gens)
        }
    };
    RelationInstance {
        family: id.as_str().to_string(),
        i1,
        i2,
        lhs,
        rhs,
        generators,
    }
}

/// Something that can instantiate relations, realize letters and normal-order.
pub trait RelationSource: Sync {
    fn label(&self) -> String;
    fn family_ids(&self) -> Vec<String>;
    fn instance(&self, family: &str, i1: i64, i2: i64) -> Result<RelationInstance, RelationError>;
    fn realize_letter(&self, l: ExtLetter) -> Result<Element, RelationError>;
    fn normalize(&self, x: &Element) -> Result<Element, RelationError>;

    /// Substitute realizations into an abstract element.
    fn realize_element(&self, x: &ExtElement) -> Result<Element, RelationError> {
        let mut out = Element::zero();
        for (word, c) in x {
            let mut acc = Element::unit();
            for &l in word.letters() {
                acc = multiply(&acc, &self.realize_letter(l)?);
            }
            out.add_scaled(&acc, c);
        }
        Ok(out)
    }
}

/// Relations and realization built into the crate for one deformation mode.
#[derive(Debug, Clone, Copy)]
pub struct BuiltinRelations {
    pub mode: DeformationMode,
}

impl BuiltinRelations {
    pub fn new(mode: DeformationMode) -> Self {
        Self { mode }
    }
}

impl RelationSource for BuiltinRelations {
    fn label(&self) -> String {
        self.mode.as_str().to_string()
    }

    fn family_ids(&self) -> Vec<String> {
        FamilyId::ALL.iter().map(|f| f.as_str().to_string()).collect()
    }

    fn instance(&self, family: &str, i1: i64, i2: i64) -> Result<RelationInstance, RelationError> {
        let id = FamilyId::from_str(family).map_err(|_| RelationError::UnknownFamily(family.into()))?;
        let inst = relation_instance(id, self.mode, i1, i2);
        for &l in &inst.generators {
            let kind = l.family.gen_kind().expect("relations use L, G, F only");
            if !kind.admits(l.index) {
                return Err(RelationError::Inadmissible {
                    family: family.to_string(),
                    i1,
                    i2,
                    letter: l,
                });
            }
        }
        Ok(inst)
    }

    fn realize_letter(&self, l: ExtLetter) -> Result<Element, RelationError> {
        let kind = l
            .family
            .gen_kind()
            .ok_or_else(|| RelationError::Engine(format!("{l} has no oscillator realization")))?;
        Ok(realize(kind, l.index, self.mode)?)
    }

    fn normalize(&self, x: &Element) -> Result<Element, RelationError> {
        Ok(normal_order(x, self.mode))
    }
}

/// Exact leftover of `LHS - RHS` after normal ordering.
#[derive(Debug, Clone, PartialEq)]
pub struct Residual {
    pub value: Element,
    pub holds: bool,
}

impl Residual {
    pub fn new(value: Element) -> Self {
        let holds = value.is_zero();
        Self { value, holds }
    }
}

/// Residual plus the sizes of both normal-ordered sides.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckedInstance {
    pub residual: Residual,
    pub lhs_normal: Element,
    pub rhs_normal: Element,
}

pub fn check_instance<S: RelationSource + ?Sized>(
    src: &S,
    inst: &RelationInstance,
) -> Result<CheckedInstance, RelationError> {
    let lhs_normal = src.normalize(&src.realize_element(&inst.lhs)?)?;
    let rhs_normal = src.normalize(&src.realize_element(&inst.rhs)?)?;
    let residual = Residual::new(lhs_normal.sub(&rhs_normal));
    Ok(CheckedInstance {
        residual,
        lhs_normal,
        rhs_normal,
    })
}

/// Realize, normal-order and compare one built-in relation instance.
pub fn check_relation(family: RelationFamily, i1: i64, i2: i64) -> Result<Residual, RelationError> {
    let src = BuiltinRelations::new(family.mode);
    let inst = src.instance(family.id.as_str(), i1, i2)?;
    Ok(check_instance(&src, &inst)?.residual)
}

/// Closed integer interval `lo..=hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexRange {
    pub lo: i64,
    pub hi: i64,
}

impl IndexRange {
    pub fn new(lo: i64, hi: i64) -> Self {
        Self { lo, hi }
    }

    pub fn iter(self) -> impl Iterator<Item = i64> + Clone {
        self.lo..=self.hi
    }

    pub fn is_empty(self) -> bool {
        self.lo > self.hi
    }
}

impl fmt::Display for IndexRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}

impl FromStr for IndexRange {
    type Err = String;

    /// `lo..hi` (inclusive) or a single integer.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse = |t: &str| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| format!("bad range bound `{t}` in `{s}`"))
        };
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (parse(a)?, parse(b.trim_start_matches('='))?),
            None => {
                let v = parse(s)?;
                (v, v)
            }
        };
        if lo > hi {
            return Err(format!("empty range `{s}`: {lo} > {hi}"));
        }
        Ok(IndexRange::new(lo, hi))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceRecord {
    pub l: i64,
    pub k: i64,
    pub status: Status,
    pub residual_text: String,
    pub terms: usize,
    pub micros: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilyRecord {
    pub id: String,
    pub instances: Vec<InstanceRecord>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

impl Summary {
    pub fn record(&mut self, status: Status) {
        match status {
            Status::Pass => self.pass += 1,
            Status::Fail => self.fail += 1,
            Status::Skipped => self.skipped += 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub mode: String,
    pub families: Vec<FamilyRecord>,
    pub summary: Summary,
}

impl Report {
    pub fn instances(&self) -> impl Iterator<Item = (&str, &InstanceRecord)> {
        self.families
            .iter()
            .flat_map(|f| f.instances.iter().map(move |i| (f.id.as_str(), i)))
    }
}

fn run_instance<S: RelationSource + ?Sized>(src: &S, family: &str, l: i64, k: i64) -> InstanceRecord {
    let start = Instant::now();
    let outcome = src
        .instance(family, l, k)
        .and_then(|inst| check_instance(src, &inst));
    let micros = start.elapsed().as_micros() as u64;
    match outcome {
        Ok(checked) => {
            let status = if checked.residual.holds { Status::Pass } else { Status::Fail };
            InstanceRecord {
                l,
                k,
                status,
                residual_text: checked.residual.value.to_string(),
                terms: checked.lhs_normal.len() + checked.rhs_normal.len(),
                micros,
            }
        }
        Err(e) if e.is_inadmissible() => InstanceRecord {
            l,
            k,
            status: Status::Skipped,
            residual_text: e.to_string(),
            terms: 0,
            micros,
        },
        Err(e) => InstanceRecord {
            l,
            k,
            status: Status::Fail,
            residual_text: format!("error: {e}"),
            terms: 0,
            micros,
        },
    }
}

/// Check every `(family, l, k)` on the grid. Inadmissible points are
/// SKIPPED, never PASS; instances are evaluated in parallel and reported in
/// `(family, l, k)` order.
pub fn sweep<S: RelationSource + ?Sized>(
    src: &S,
    families: &[String],
    l_range: IndexRange,
    k_range: IndexRange,
) -> Report {
    let tasks: Vec<(usize, i64, i64)> = families
        .iter()
        .enumerate()
        .flat_map(|(f, _)| l_range.iter().flat_map(move |l| k_range.iter().map(move |k| (f, l, k))))
        .collect();
    let records: Vec<InstanceRecord> = tasks
        .par_iter()
        .map(|&(f, l, k)| run_instance(src, &families[f], l, k))
        .collect();
    let mut summary = Summary::default();
    let mut out: Vec<FamilyRecord> = families
        .iter()
        .map(|id| FamilyRecord {
            id: id.clone(),
            instances: Vec::new(),
        })
        .collect();
    for (&(f, _, _), rec) in tasks.iter().zip(records) {
        summary.record(rec.status);
        out[f].instances.push(rec);
    }
    Report {
        mode: src.label(),
        families: out,
        summary,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LimitRecord {
    pub l: i64,
    pub k: i64,
    /// Deformed mode being specialized (`q` or `pq`).
    pub from: DeformationMode,
    pub status: Status,
    pub detail: String,
    pub micros: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LimitFamilyRecord {
    pub id: String,
    pub instances: Vec<LimitRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LimitReport {
    pub mode: String,
    pub families: Vec<LimitFamilyRecord>,
    pub summary: Summary,
}

/// Evaluate every coefficient of an abstract element at `q = p = 1`.
pub fn at_classical_point(x: &ExtElement) -> Result<ExtElement, EvalError> {
    let one = rat(1, 1);
    let mut out = ExtElement::zero();
    for (w, c) in x {
        out.add_term(w.clone(), LaurentPoly::constant(lp_eval(c, &one, &one)?));
    }
    Ok(out)
}

fn limit_instance(id: FamilyId, from: DeformationMode, l: i64, k: i64) -> Result<String, String> {
    let deformed = relation_instance(id, from, l, k);
    let classical = relation_instance(id, DeformationMode::Classical, l, k);
    let specialized = at_classical_point(&deformed.difference()).map_err(|e| e.to_string())?;
    let target = classical.difference();
    if specialized != target {
        return Err(format!(
            "specialized relation `{specialized} = 0` differs from classical `{target} = 0`"
        ));
    }
    let one = rat(1, 1);
    for &letter in &deformed.generators {
        let kind = letter.family.gen_kind().expect("deformed letter");
        let from_deformed = realize(kind, letter.index, from)
            .map_err(|e| e.to_string())?
            .specialize(&one, &one)
            .map_err(|e| e.to_string())?;
        let direct = realize(kind, letter.index, DeformationMode::Classical).map_err(|e| e.to_string())?;
        if from_deformed != direct {
            return Err(format!("realization of {letter} does not reduce to the classical one"));
        }
    }
    let residual = check_relation(RelationFamily::new(id, DeformationMode::Classical), l, k)
        .map_err(|e| e.to_string())?;
    if !residual.holds {
        return Err(format!("classical residual {}", residual.value));
    }
    Ok(format!("{specialized} = 0"))
}

/// Specialize each q- and (p,q)-relation instance at `q = p = 1` and confirm it
/// is the classical relation, realized and verified with the classical oscillators.
pub fn classical_limit_check(
    families: &[FamilyId],
    l_range: IndexRange,
    k_range: IndexRange,
) -> LimitReport {
    let tasks: Vec<(usize, DeformationMode, i64, i64)> = families
        .iter()
        .enumerate()
        .flat_map(|(f, _)| {
            [DeformationMode::Q, DeformationMode::PQ].into_iter().flat_map(move |m| {
                l_range.iter().flat_map(move |l| k_range.iter().map(move |k| (f, m, l, k)))
            })
        })
        .collect();
    let records: Vec<LimitRecord> = tasks
        .par_iter()
        .map(|&(f, from, l, k)| {
            let start = Instant::now();
            let id = families[f];
            let admissible = BuiltinRelations::new(from).instance(id.as_str(), l, k);
            let (status, detail) = match admissible {
                Err(e) => (Status::Skipped, e.to_string()),
                Ok(_) => match limit_instance(id, from, l, k) {
                    Ok(d) => (Status::Pass, d),
                    Err(d) => (Status::Fail, d),
                },
            };
            LimitRecord {
                l,
                k,
                from,
                status,
                detail,
                micros: start.elapsed().as_micros() as u64,
            }
        })
        .collect();
    let mut summary = Summary::default();
    let mut out: Vec<LimitFamilyRecord> = families
        .iter()
        .map(|id| LimitFamilyRecord {
            id: id.as_str().to_string(),
            instances: Vec::new(),
        })
        .collect();
    for (&(f, _, _, _), rec) in tasks.iter().zip(records) {
        summary.record(rec.status);
        out[f].instances.push(rec);
    }
    LimitReport {
        mode: "classical-limit".to_string(),
        families: out,
        summary,
    }
}

pub fn all_family_names() -> Vec<String> {
    FamilyId::ALL.iter().map(|f| f.as_str().to_string()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{GenSym, Word};

    fn check(id: FamilyId, mode: DeformationMode, a: i64, b: i64) -> Residual {
        check_relation(RelationFamily::new(id, mode), a, b).unwrap()
    }

    /// `L_1 L_0 = q^2 a+^2 a- + q^4 a+^3 a-^2`, `L_0 L_1 = (q^2+q^4) a+^2 a- + q^6 a+^3 a-^2`,
    /// worked by hand; their weighted difference is `-q a+^2 a- = L_1`.
    #[test]
    fn ll_hand_computation() {
        use GenSym::*;
        let src = BuiltinRelations::new(DeformationMode::Q);
        let l1l0 = src
            .normalize(&src.realize_element(&gg(Family::L, 1, Family::L, 0)).unwrap())
            .unwrap();
        let mut expected = Element::term(Word(vec![BosonRaise, BosonRaise, BosonLower]), q(2));
        expected.add_term(
            Word(vec![BosonRaise, BosonRaise, BosonRaise, BosonLower, BosonLower]),
            q(4),
        );
        assert_eq!(l1l0, expected);
        assert!(check(FamilyId::LL, DeformationMode::Q, 1, 0).holds);
    }

    #[test]
    fn spot_instances_hold() {
        for m in 0..4 {
            assert!(check(FamilyId::FF, DeformationMode::Q, m, m).holds);
            assert!(check(FamilyId::FF, DeformationMode::PQ, m, m).holds);
        }
        assert!(check(FamilyId::GG, DeformationMode::Q, 2, 3).holds);
        assert!(check(FamilyId::FG, DeformationMode::PQ, 1, 0).holds);
    }

    #[test]
    fn inadmissible_indices_are_reported() {
        let e = check_relation(RelationFamily::new(FamilyId::LL, DeformationMode::Q), -1, -1).unwrap_err();
        assert!(e.is_inadmissible());
        let e = check_relation(RelationFamily::new(FamilyId::LF, DeformationMode::Q), 2, -1).unwrap_err();
        assert!(e.is_inadmissible());
    }

    #[test]
    fn sweep_examples() {
        let src = BuiltinRelations::new(DeformationMode::Q);
        let r = sweep(&src, &all_family_names(), IndexRange::new(-1, 4), IndexRange::new(-1, 4));
        assert!(r.summary.pass > 0);
        assert_eq!(r.summary.fail, 0);
        let diag = sweep(&src, &["LL".to_string()], IndexRange::new(2, 2), IndexRange::new(2, 2));
        assert_eq!(diag.summary.pass, 1);
        let empty = sweep(&src, &[], IndexRange::new(0, 3), IndexRange::new(0, 3));
        assert!(empty.families.is_empty());
        assert_eq!(empty.summary, Summary::default());
    }

    #[test]
    fn classical_limit_examples() {
        let r = classical_limit_check(
            &[FamilyId::LL, FamilyId::FF, FamilyId::LF],
            IndexRange::new(0, 2),
            IndexRange::new(0, 2),
        );
        assert_eq!(r.summary.fail, 0);
        assert!(r.summary.pass > 0);
    }

    #[test]
    fn range_parsing() {
        assert_eq!("-1..4".parse::<IndexRange>().unwrap(), IndexRange::new(-1, 4));
        assert_eq!("3".parse::<IndexRange>().unwrap(), IndexRange::new(3, 3));
        assert_eq!("0..=2".parse::<IndexRange>().unwrap(), IndexRange::new(0, 2));
        assert!("4..1".parse::<IndexRange>().is_err());
        assert!("a..b".parse::<IndexRange>().is_err());
    }
}
