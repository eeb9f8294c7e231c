//! Derive the exchange exponents a homomorphic coproduct needs.
//!
//! Every exponent is the bilinear ansatz `a*k*l + b*k + c*l + d`, for both
//! the q- and the p-part of all nine pairs: 72 integer unknowns laid out as
//! in [`ExponentTable::to_vector`]. The homomorphism residual is expanded
//! with symbolic exponents; terms on the same tensor basis must cancel in
//! pairs, which is linear in the unknowns.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coeff::{lp_mul, LaurentPoly, Rational};
use crate::extended::{ExtLetter, ExtWord};
use crate::hopf::reduce::Exchange;
use crate::hopf::table::{pair_index, pair_name, ExponentTable, PaperRow, PAIRS};
use crate::hopf::tensor::Tensor;
use crate::hopf::{homomorphism_residual, HopfError};
use crate::linear::Ring;
use crate::oscillator::DeformationMode;
use crate::relations::{FamilyId, IndexRange};

pub const UNKNOWNS: usize = 72;

/// `sum_j P_j(q, p) * q^(u_j . x) p^(v_j . x)`, keyed by the exponent vector.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SymCoeff {
    terms: BTreeMap<Vec<i64>, LaurentPoly>,
}

impl SymCoeff {
    pub fn classes(&self) -> impl Iterator<Item = (&Vec<i64>, &LaurentPoly)> {
        self.terms.iter()
    }

    fn single(v: Vec<i64>, c: LaurentPoly) -> Self {
        let mut out = Self::default();
        if !c.is_zero() {
            out.terms.insert(v, c);
        }
        out
    }
}

impl Ring for SymCoeff {
    fn zero() -> Self {
        Self::default()
    }

    fn one() -> Self {
        Self::single(vec![0; UNKNOWNS], LaurentPoly::one())
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_assign(&mut self, other: &Self) {
        for (v, c) in &other.terms {
            let slot = self.terms.entry(v.clone()).or_insert_with(LaurentPoly::zero);
            slot.add_assign(c);
            if slot.is_zero() {
                self.terms.remove(v);
            }
        }
    }

    fn mul(&self, other: &Self) -> Self {
        let mut out = Self::default();
        for (va, ca) in &self.terms {
            for (vb, cb) in &other.terms {
                let v: Vec<i64> = va.iter().zip(vb).map(|(a, b)| a + b).collect();
                out.add_assign(&Self::single(v, lp_mul(ca, cb)));
            }
        }
        out
    }

    fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(v, c)| (v.clone(), c.neg())).collect(),
        }
    }

    fn from_poly(p: &LaurentPoly) -> Self {
        Self::single(vec![0; UNKNOWNS], p.clone())
    }
}

/// Exchange factors with unknown exponents.
#[derive(Debug, Clone, Copy)]
pub struct SymbolicExchange {
    pub with_p: bool,
}

impl Exchange<SymCoeff> for SymbolicExchange {
    fn factor(&self, x: ExtLetter, y: ExtLetter) -> SymCoeff {
        let i = pair_index(x.family, y.family);
        let (k, l) = (x.index, y.index);
        let sign = if y.family.is_inverse() { -1 } else { 1 };
        let form = [k * l, k, l, 1].map(|t| sign * t);
        let mut v = vec![0; UNKNOWNS];
        v[8 * i..8 * i + 4].copy_from_slice(&form);
        if self.with_p {
            v[8 * i + 4..8 * i + 8].copy_from_slice(&form);
        }
        SymCoeff::single(v, LaurentPoly::one())
    }
}

pub fn unknown_name(col: usize) -> String {
    let (x, y) = PAIRS[col / 8];
    let part = if col % 8 < 4 { "q" } else { "p" };
    let coeff = ["a", "b", "c", "d"][col % 4];
    format!("{}.{part}.{coeff}", pair_name(x, y))
}

/// `coeffs . x = rhs`, together with where it came from.
#[derive(Debug, Clone, PartialEq)]
pub struct Equation {
    pub coeffs: Vec<Rational>,
    pub rhs: Rational,
    pub origin: String,
}

impl Equation {
    fn is_trivial(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn is_contradiction(&self) -> bool {
        self.is_trivial() && !self.rhs.is_zero()
    }

    pub fn satisfied_by(&self, x: &[i64]) -> bool {
        let lhs: Rational = self
            .coeffs
            .iter()
            .zip(x)
            .map(|(a, &v)| a * Rational::from_integer(v.into()))
            .sum();
        lhs == self.rhs
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (col, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let mag = a.abs();
            let sign = if a.is_negative() { "-" } else { "+" };
            match (first, a.is_negative()) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, _) => write!(f, " {sign} ")?,
            }
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            f.write_str(&unknown_name(col))?;
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " = {}", self.rhs)
    }
}

/// Leading `(e_q, e_p)` and coefficient, for the proportionality test.
fn lead(p: &LaurentPoly) -> ((i64, i64), Rational) {
    let (e, c) = p.terms().next().expect("nonzero class");
    (*e, c.clone())
}

/// Turn one residual into linear equations (or contradictions).
pub fn residual_equations(residual: &Tensor<SymCoeff>, with_p: bool, origin: &str) -> Vec<Equation> {
    let zero_row = || vec![Rational::zero(); UNKNOWNS];
    let contradiction = |what: String| Equation {
        coeffs: zero_row(),
        rhs: Rational::one(),
        origin: what,
    };
    let mut out = Vec::new();
    for (legs, coeff) in residual {
        let basis: Vec<String> = legs.iter().map(ExtWord::to_string).collect();
        let basis = basis.join(" ⊗ ");
        let classes: Vec<_> = coeff.classes().collect();
        match classes.as_slice() {
            [(_, c)] => out.push(contradiction(format!(
                "{origin}: term ({c}) {basis} has no partner to cancel against"
            ))),
            [(v1, c1), (v2, c2)] => {
                let ((e1, a1), (e2, a2)) = (lead(c1), lead(c2));
                let (s, t) = (e1.0 - e2.0, e1.1 - e2.1);
                let ratio = &a1 / &a2;
                if ratio != -Rational::one() || c2.shift(s, t).scale(&ratio) != **c1 {
                    out.push(contradiction(format!(
                        "{origin}: ({c1}) and ({c2}) on {basis} are not opposite up to a monomial"
                    )));
                    continue;
                }
                let diff: Vec<i64> = v1.iter().zip(v2.iter()).map(|(a, b)| a - b).collect();
                let row = |range: std::ops::Range<usize>, rhs: i64| {
                    let mut coeffs = zero_row();
                    for i in 0..PAIRS.len() {
                        for j in range.clone() {
                            coeffs[8 * i + j] = Rational::from_integer(diff[8 * i + j].into());
                        }
                    }
                    Equation {
                        coeffs,
                        rhs: Rational::from_integer((-rhs).into()),
                        origin: format!("{origin}: cancel on {basis}"),
                    }
                };
                let mut rows = vec![row(0..4, s)];
                if with_p {
                    rows.push(row(4..8, t));
                } else if t != 0 {
                    rows.push(contradiction(format!("{origin}: p-exponent mismatch on {basis}")));
                }
                out.extend(rows.into_iter().filter(|r| !r.is_trivial() || r.is_contradiction()));
            }
            _ => out.push(contradiction(format!(
                "{origin}: {} exponent classes on {basis} cannot be paired",
                classes.len()
            ))),
        }
    }
    out
}

pub fn family_equations(
    id: FamilyId,
    mode: DeformationMode,
    grid: IndexRange,
) -> Result<Vec<Equation>, HopfError> {
    let with_p = mode == DeformationMode::PQ;
    let ex = SymbolicExchange { with_p };
    let tasks: Vec<(i64, i64)> = grid.iter().flat_map(|l| grid.iter().map(move |k| (l, k))).collect();
    let per: Vec<Vec<Equation>> = tasks
        .par_iter()
        .map(|&(l, k)| {
            let r = homomorphism_residual::<SymCoeff, _>(id, mode, l, k, &ex)?;
            Ok(residual_equations(&r, with_p, &format!("{id}({l},{k})")))
        })
        .collect::<Result<_, HopfError>>()?;
    Ok(per.into_iter().flatten().collect())
}

/// Column order for elimination: the pairs whose printed rows look
/// malformed come first so they end up as pivots (solved for).
pub fn column_order() -> Vec<usize> {
    use crate::extended::Family::*;
    let suspect = [pair_index(L, K), pair_index(F, T), pair_index(L, R)];
    let mut cols: Vec<usize> = suspect.iter().flat_map(|&i| 8 * i..8 * i + 8).collect();
    cols.extend((0..UNKNOWNS).filter(|c| !suspect.contains(&(c / 8))));
    cols
}

/// Reduced row echelon form of a consistent system.
#[derive(Debug, Clone, PartialEq)]
pub struct Rref {
    pub rows: Vec<Equation>,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn is_free(&self, col: usize) -> bool {
        !self.pivots.contains(&col)
    }

    /// Complete `free` values (indexed by column) to a full solution.
    pub fn complete(&self, free: &[i64]) -> Vec<Rational> {
        let mut x: Vec<Rational> = free.iter().map(|&v| Rational::from_integer(v.into())).collect();
        for &p in &self.pivots {
            x[p] = Rational::zero();
        }
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let mut val = row.rhs.clone();
            for (c, a) in row.coeffs.iter().enumerate() {
                if c != p && !a.is_zero() {
                    val -= a * &x[c];
                }
            }
            x[p] = val;
        }
        x
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Solved {
    Consistent(Rref),
    /// Two equations (or one impossible one) that cannot hold together.
    Inconsistent(Vec<Equation>),
}

fn eliminate(eqs: &[Equation]) -> Result<Rref, ()> {
    let mut rows: Vec<Equation> = eqs.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in column_order() {
        let Some(found) = (r..rows.len()).find(|&i| !rows[i].coeffs[col].is_zero()) else {
            continue;
        };
        rows.swap(r, found);
        let inv = rows[r].coeffs[col].recip();
        for a in rows[r].coeffs.iter_mut() {
            *a *= &inv;
        }
        rows[r].rhs *= &inv;
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row.coeffs[col].is_zero() {
                continue;
            }
            let f = row.coeffs[col].clone();
            for (a, b) in row.coeffs.iter_mut().zip(&pivot_row.coeffs) {
                *a -= &f * b;
            }
            row.rhs -= &f * &pivot_row.rhs;
        }
        pivots.push(col);
        r += 1;
    }
    if rows[r..].iter().any(Equation::is_contradiction) {
        return Err(());
    }
    rows.truncate(r);
    for row in rows.iter_mut() {
        row.origin = "reduced".to_string();
    }
    Ok(Rref { rows, pivots })
}

pub fn solve(eqs: &[Equation]) -> Solved {
    if let Some(bad) = eqs.iter().find(|e| e.is_contradiction()) {
        return Solved::Inconsistent(vec![bad.clone()]);
    }
    match eliminate(eqs) {
        Ok(rref) => Solved::Consistent(rref),
        Err(()) => {
            for i in 0..eqs.len() {
                for j in i + 1..eqs.len() {
                    if eliminate(&[eqs[i].clone(), eqs[j].clone()]).is_err() {
                        return Solved::Inconsistent(vec![eqs[i].clone(), eqs[j].clone()]);
                    }
                }
            }
            Solved::Inconsistent(eqs.to_vec())
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverReport {
    pub family: String,
    pub mode: DeformationMode,
    pub consistent: bool,
    pub constraint_rows: Vec<String>,
    pub conflict: Vec<String>,
    pub paper_member: bool,
    /// Printed rows of the pairs this family constrains, with their reading.
    pub paper_rows: Vec<PaperRowReport>,
    pub equations: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PaperRowReport {
    pub text: String,
    pub reading: String,
    pub parseable: bool,
}

impl From<&PaperRow> for PaperRowReport {
    fn from(r: &PaperRow) -> Self {
        match &r.parsed {
            Ok(e) => Self {
                text: r.text.clone(),
                reading: format!(
                    "{}_k {}_l = q^({}) p^({}) {}_l {}_k",
                    r.x.name(),
                    r.y.name(),
                    e.q,
                    e.p,
                    r.y.name(),
                    r.x.name()
                ),
                parseable: true,
            },
            Err(msg) => Self {
                text: r.text.clone(),
                reading: msg.clone(),
                parseable: false,
            },
        }
    }
}

/// Family result: the system, its solution and the printed table's verdict.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilySolution {
    pub family: FamilyId,
    pub mode: DeformationMode,
    pub equations: Vec<Equation>,
    pub solved: Solved,
}

impl FamilySolution {
    /// Columns this family's equations involve.
    pub fn touched_pairs(&self) -> Vec<usize> {
        let mut pairs: Vec<usize> = self
            .equations
            .iter()
            .flat_map(|e| e.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()).map(|(c, _)| c / 8))
            .collect();
        pairs.sort_unstable();
        pairs.dedup();
        pairs
    }

    pub fn admits(&self, x: &[i64]) -> bool {
        match &self.solved {
            Solved::Consistent(_) => self.equations.iter().all(|e| e.satisfied_by(x)),
            Solved::Inconsistent(_) => false,
        }
    }

    pub fn report(&self, paper: &(ExponentTable, Vec<PaperRow>)) -> SolverReport {
        let (table, rows) = paper;
        let touched = self.touched_pairs();
        let relevant: Vec<&PaperRow> = rows
            .iter()
            .filter(|r| touched.contains(&pair_index(r.x, r.y)))
            .collect();
        let parseable = relevant.iter().all(|r| r.parsed.is_ok());
        let (consistent, constraint_rows, conflict) = match &self.solved {
            Solved::Consistent(rref) => (true, rref.rows.iter().map(|r| r.to_string()).collect(), Vec::new()),
            Solved::Inconsistent(eqs) => (
                false,
                Vec::new(),
                std::iter::once("no bilinear solution".to_string())
                    .chain(eqs.iter().map(|e| format!("{e}   [{}]", e.origin)))
                    .collect(),
            ),
        };
        SolverReport {
            family: self.family.as_str().to_string(),
            mode: self.mode,
            consistent,
            constraint_rows,
            conflict,
            paper_member: parseable && self.admits(&table.to_vector()),
            paper_rows: relevant.into_iter().map(PaperRowReport::from).collect(),
            equations: self.equations.len(),
        }
    }
}

pub const SOLVER_GRID: IndexRange = IndexRange { lo: -1, hi: 4 };

pub fn solve_exponents(id: FamilyId, mode: DeformationMode, grid: IndexRange) -> Result<FamilySolution, HopfError> {
    let equations = family_equations(id, mode, grid)?;
    let solved = solve(&equations);
    Ok(FamilySolution {
        family: id,
        mode,
        equations,
        solved,
    })
}

fn to_integers(x: &[Rational]) -> Option<Vec<i64>> {
    x.iter()
        .map(|v| if v.is_integer() { v.to_integer().to_i64() } else { None })
        .collect()
}

/// Random integral member of a consistent solution set. Free unknowns are
/// drawn from `-3..=3`; unknowns the p-free modes never see stay zero.
pub fn sample_table<R: Rng>(rref: &Rref, mode: DeformationMode, rng: &mut R) -> Option<ExponentTable> {
    for _ in 0..200 {
        let free: Vec<i64> = (0..UNKNOWNS)
            .map(|c| {
                let p_part = c % 8 >= 4;
                if rref.is_free(c) && (mode == DeformationMode::PQ || !p_part) {
                    rng.gen_range(-3..=3)
                } else {
                    0
                }
            })
            .collect();
        if let Some(x) = to_integers(&rref.complete(&free)) {
            return Some(ExponentTable::from_vector("sampled", &x));
        }
    }
    None
}

/// Families whose joint system decides the `solved` table.
pub fn solvable_families(mode: DeformationMode) -> Result<Vec<FamilySolution>, HopfError> {
    FamilyId::ALL
        .iter()
        .map(|&f| solve_exponents(f, mode, SOLVER_GRID))
        .filter(|r| !matches!(r, Ok(FamilySolution { solved: Solved::Inconsistent(_), .. })))
        .collect()
}

/// Joint solution of all consistent families, free unknowns at the
/// printed table's values.
pub fn solved_table(mode: DeformationMode) -> Result<Option<ExponentTable>, HopfError> {
    let eqs: Vec<Equation> = solvable_families(mode)?.into_iter().flat_map(|s| s.equations).collect();
    let Solved::Consistent(rref) = solve(&eqs) else {
        return Ok(None);
    };
    let mut paper = ExponentTable::paper(mode).0.to_vector();
    if mode != DeformationMode::PQ {
        for (c, v) in paper.iter_mut().enumerate() {
            if c % 8 >= 4 {
                *v = 0;
            }
        }
    }
    Ok(to_integers(&rref.complete(&paper)).map(|x| ExponentTable::from_vector("solved", &x)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symcoeff_ring_basics() {
        let one = SymCoeff::one();
        let q = SymCoeff::from_poly(&LaurentPoly::q_pow(1));
        assert_eq!(one.mul(&q), q);
        let mut z = q.clone();
        z.add_assign(&q.neg());
        assert!(z.is_zero());
    }

    #[test]
    fn ll_constraint_matches_hand_derivation() {
        let s = solve_exponents(FamilyId::LL, DeformationMode::Q, IndexRange::new(-1, 3)).unwrap();
        let Solved::Consistent(rref) = &s.solved else { panic!("LL must be solvable") };
        let lt = 8 * pair_index(crate::extended::Family::L, crate::extended::Family::T);
        // c - b = 2 on the L-T q-part is the only constraint
        assert_eq!(rref.rows.len(), 1);
        let row = &rref.rows[0];
        assert_eq!(row.coeffs[lt + 1], Rational::one());
        assert_eq!(row.coeffs[lt + 2], -Rational::one());
        assert_eq!(row.rhs, Rational::from_integer((-2).into()));
        assert!(s.admits(&ExponentTable::paper(DeformationMode::Q).0.to_vector()));
    }

    #[test]
    fn fg_has_no_bilinear_solution() {
        let s = solve_exponents(FamilyId::FG, DeformationMode::Q, IndexRange::new(0, 1)).unwrap();
        assert!(matches!(s.solved, Solved::Inconsistent(_)));
    }
}
