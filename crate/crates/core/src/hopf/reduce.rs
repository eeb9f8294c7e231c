//! Canonical form for quadratic words of the extended algebra: group-like
//! letters on the left (merged and cancelled), then at most two deformed
//! letters in the order `L < F < G`, by index.

use crate::coeff::LaurentPoly;
use crate::extended::{ExtElement, ExtLetter, ExtWord, Family};
use crate::hopf::table::ExponentTable;
use crate::hopf::HopfError;
use crate::linear::Ring;
use crate::oscillator::DeformationMode;
use crate::relations::{relation_instance, FamilyId};

/// Scalar for moving a group-like letter left past a deformed one:
/// `x y = factor(x, y) y x`.
pub trait Exchange<C> {
    fn factor(&self, x: ExtLetter, y: ExtLetter) -> C;
}

impl Exchange<LaurentPoly> for ExponentTable {
    fn factor(&self, x: ExtLetter, y: ExtLetter) -> LaurentPoly {
        ExponentTable::factor(self, x.family, x.index, y.family, y.index)
    }
}

fn cancel_inverses(pos: &mut Vec<ExtLetter>, inv: &mut Vec<ExtLetter>) {
    inv.retain(|y| match pos.iter().position(|x| *x == y.inverse()) {
        Some(i) => {
            pos.remove(i);
            false
        }
        None => true,
    });
}

/// `T_k T_l = T_(k+l)`, `T_k K_l = K_(k+l)`, `T_l R_k = R_(k+l)`,
/// `K K -> K`, `R R -> R`; a `K`/`R` pair stays as two letters.
fn merge(letters: &[ExtLetter], inverse: bool) -> Vec<ExtLetter> {
    let mut sums: [Option<i64>; 3] = [None; 3];
    for l in letters {
        let slot = match l.family.base() {
            Family::T => 0,
            Family::K => 1,
            Family::R => 2,
            f => unreachable!("{f:?} is not group-like"),
        };
        *sums[slot].get_or_insert(0) += l.index;
    }
    if let Some(t) = sums[0] {
        if let Some(k) = sums[1].as_mut() {
            *k += t;
            sums[0] = None;
        } else if let Some(r) = sums[2].as_mut() {
            *r += t;
            sums[0] = None;
        }
    }
    [Family::T, Family::K, Family::R]
        .into_iter()
        .zip(sums)
        .filter_map(|(f, s)| {
            let f = if inverse { f.inverse() } else { f };
            s.map(|i| ExtLetter::new(f, i))
        })
        .collect()
}

pub fn canonical_grouplikes(letters: &[ExtLetter]) -> Vec<ExtLetter> {
    let (mut pos, mut inv): (Vec<_>, Vec<_>) = letters.iter().partition(|l| !l.family.is_inverse());
    cancel_inverses(&mut pos, &mut inv);
    let mut pos = merge(&pos, false);
    let mut inv = merge(&inv, true);
    cancel_inverses(&mut pos, &mut inv);
    pos.extend(inv);
    pos
}

fn invert_monomial(c: &LaurentPoly) -> Result<LaurentPoly, HopfError> {
    let (coef, eq, ep) = c
        .as_monomial()
        .ok_or_else(|| HopfError::NonInvertible(c.to_string()))?;
    Ok(LaurentPoly::monomial(num_traits::Inv::inv(coef), -eq, -ep))
}

/// Rewrite an out-of-order deformed pair `x y` with the defining relation
/// that contains it; `None` if the pair is already ordered.
pub fn order_pair(x: ExtLetter, y: ExtLetter, mode: DeformationMode) -> Result<Option<ExtElement>, HopfError> {
    use Family::{F, G, L};
    let (a, b) = (x.index, y.index);
    let inst = match (x.family, y.family) {
        (L, L) if a > b => relation_instance(FamilyId::LL, mode, a, b),
        (F, L) => relation_instance(FamilyId::LF, mode, b, a),
        (G, L) => relation_instance(FamilyId::LG, mode, b, a),
        (G, F) => relation_instance(FamilyId::FG, mode, b, a),
        (F, F) if a > b => relation_instance(FamilyId::FF, mode, a, b),
        (G, G) if a >= b => relation_instance(FamilyId::GG, mode, a, b),
        _ => return Ok(None),
    };
    let target = ExtWord(vec![x, y]);
    let diff = inst.difference();
    let c0 = diff
        .get(&target)
        .cloned()
        .ok_or_else(|| HopfError::NonInvertible(format!("{target} missing from its relation")))?;
    let rest = diff.sub(&ExtElement::term(target, c0.clone()));
    Ok(Some(rest.scale(&invert_monomial(&c0)?.neg())))
}

pub fn reduce_word<C: Ring, E: Exchange<C> + ?Sized>(
    w: &ExtWord,
    ex: &E,
    mode: DeformationMode,
) -> Result<ExtElement<C>, HopfError> {
    if w.deformed_count() > 2 {
        return Err(HopfError::NotQuadratic(w.to_string()));
    }
    let mut factor = C::one();
    let mut group = Vec::new();
    let mut deformed: Vec<ExtLetter> = Vec::new();
    for &l in w.letters() {
        if l.family.is_grouplike() {
            for &d in &deformed {
                factor = factor.mul(&ex.factor(d, l));
            }
            group.push(l);
        } else {
            deformed.push(l);
        }
    }
    let group = canonical_grouplikes(&group);
    let with_group = |tail: &[ExtLetter]| {
        let mut v = group.clone();
        v.extend_from_slice(tail);
        ExtWord(v)
    };
    if let [x, y] = deformed[..] {
        if let Some(rewritten) = order_pair(x, y, mode)? {
            let mut out = ExtElement::zero();
            for (tail, c) in &rewritten {
                out.add_term(with_group(tail.letters()), factor.mul(&C::from_poly(c)));
            }
            return Ok(out);
        }
    }
    Ok(ExtElement::term(with_group(&deformed), factor))
}

/// Canonical form of `x` under exchange factors `ex` and the relations of `mode`.
pub fn ext_reduce_with<C: Ring, E: Exchange<C> + ?Sized>(
    x: &ExtElement<C>,
    ex: &E,
    mode: DeformationMode,
) -> Result<ExtElement<C>, HopfError> {
    x.try_flat_map(|w| reduce_word(w, ex, mode))
}

pub fn ext_reduce(x: &ExtElement, table: &ExponentTable, mode: DeformationMode) -> Result<ExtElement, HopfError> {
    ext_reduce_with(x, table, mode)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extended::{ext_multiply, letter};

    fn lw(parts: &[(Family, i64)]) -> ExtElement {
        parts
            .iter()
            .fold(ExtElement::basis(ExtWord::unit()), |acc, &(f, i)| ext_multiply(&acc, &letter(f, i)))
    }

    fn reduce(x: &ExtElement) -> ExtElement {
        let (t, _) = ExponentTable::paper(DeformationMode::Q);
        ext_reduce(x, &t, DeformationMode::Q).unwrap()
    }

    #[test]
    fn grouplike_merges() {
        use Family::*;
        assert_eq!(reduce(&lw(&[(T, 1), (T, 2)])), lw(&[(T, 3)]));
        for k in -5..=5 {
            for l in -5..=5 {
                for (a, b, merged) in [(T, T, T), (K, K, K), (R, R, R), (T, K, K), (K, T, K), (T, R, R), (R, T, R)] {
                    assert_eq!(reduce(&lw(&[(a, k), (b, l)])), lw(&[(merged, k + l)]));
                }
                assert_eq!(reduce(&lw(&[(R, k), (K, l)])), reduce(&lw(&[(K, l), (R, k)])));
            }
        }
        assert_eq!(reduce(&lw(&[(T, 2), (TInv, 2)])), lw(&[]));
        assert_eq!(reduce(&lw(&[(TInv, 1), (T, 3), (TInv, 2)])), lw(&[]));
    }

    #[test]
    fn exchange_examples() {
        use Family::*;
        assert_eq!(
            reduce(&lw(&[(L, 2), (T, 3)])),
            lw(&[(T, 3), (L, 2)]).scale(&LaurentPoly::q_pow(18))
        );
        assert_eq!(reduce(&lw(&[(T, 0), (L, 5)])), lw(&[(T, 0), (L, 5)]));
    }

    #[test]
    fn ordering_uses_relations() {
        use Family::*;
        assert!(reduce(&lw(&[(G, 2), (G, 2)])).is_zero());
        assert_eq!(reduce(&lw(&[(G, 3), (G, 1)])), lw(&[(G, 1), (G, 3)]).neg());
        // G_1 F_0 = F_0 G_1 - G_1
        assert_eq!(reduce(&lw(&[(G, 1), (F, 0)])), lw(&[(F, 0), (G, 1)]).sub(&lw(&[(G, 1)])));
    }

    #[test]
    fn rejects_cubic_words() {
        use Family::*;
        let (t, _) = ExponentTable::paper(DeformationMode::Q);
        let e = ext_reduce(&lw(&[(L, 1), (L, 2), (F, 0)]), &t, DeformationMode::Q).unwrap_err();
        assert!(matches!(e, HopfError::NotQuadratic(_)));
    }
}
