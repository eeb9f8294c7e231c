//! Graded tensor powers of the extended algebra and the costructure maps.

use std::fmt;

use crate::coeff::LaurentPoly;
use crate::extended::{ExtElement, ExtLetter, ExtWord, Family};
use crate::hopf::reduce::{reduce_word, Exchange};
use crate::hopf::HopfError;
use crate::linear::{LinComb, Ring};
use crate::oscillator::DeformationMode;
use crate::words::fmt_term;

/// Element of an n-fold tensor power; every basis key has the same length.
pub type Tensor<C = LaurentPoly> = LinComb<Vec<ExtWord>, C>;

pub fn tensor_unit<C: Ring>(legs: usize) -> Tensor<C> {
    Tensor::basis(vec![ExtWord::unit(); legs])
}

pub fn from_element<C: Ring>(x: &ExtElement<C>) -> Tensor<C> {
    x.iter().map(|(w, c)| (vec![w.clone()], c.clone())).collect()
}

/// `(x1 ⊗ .. ⊗ xn)(y1 ⊗ .. ⊗ yn) = sign * x1y1 ⊗ .. ⊗ xnyn`, where every
/// `y_i` passing `x_j` (`j > i`) contributes `(-1)^(deg y_i deg x_j)`.
pub fn tensor_multiply<C: Ring>(x: &Tensor<C>, y: &Tensor<C>) -> Tensor<C> {
    let mut out = Tensor::zero();
    for (xs, cx) in x {
        for (ys, cy) in y {
            let mut odd = false;
            for (i, yi) in ys.iter().enumerate() {
                if yi.degree().is_odd() {
                    odd ^= xs[i + 1..].iter().filter(|xj| xj.degree().is_odd()).count() % 2 == 1;
                }
            }
            let legs: Vec<ExtWord> = xs.iter().zip(ys).map(|(a, b)| a.concat(b)).collect();
            let c = cx.mul(cy);
            out.add_term(legs, if odd { c.neg() } else { c });
        }
    }
    out
}

/// Group-like partner of a deformed family: `L -> T`, `G -> R`, `F -> K`.
pub fn partner(f: Family) -> Family {
    match f {
        Family::L => Family::T,
        Family::G => Family::R,
        Family::F => Family::K,
        other => other,
    }
}

pub fn coproduct_letter<C: Ring>(l: ExtLetter) -> Tensor<C> {
    let w = ExtWord::letter(l);
    if l.family.is_grouplike() {
        return Tensor::basis(vec![w.clone(), w]);
    }
    let y = ExtWord::letter(ExtLetter::new(partner(l.family), l.index));
    let mut out = Tensor::basis(vec![w.clone(), y.clone()]);
    out.add_term(vec![y, w], C::one());
    out
}

/// Multiplicative extension of the letter coproduct.
pub fn coproduct<C: Ring>(x: &ExtElement<C>) -> Tensor<C> {
    x.flat_map(|w| {
        w.letters()
            .iter()
            .fold(tensor_unit(2), |acc, &l| tensor_multiply(&acc, &coproduct_letter(l)))
    })
}

pub fn counit_word<C: Ring>(w: &ExtWord) -> C {
    if w.letters().iter().all(|l| l.family.is_grouplike()) {
        C::one()
    } else {
        C::zero()
    }
}

pub fn counit<C: Ring>(x: &ExtElement<C>) -> C {
    let mut out = C::zero();
    for (w, c) in x {
        out.add_assign(&counit_word::<C>(w).mul(c));
    }
    out
}

pub fn antipode_letter<C: Ring>(l: ExtLetter) -> ExtElement<C> {
    if l.family.is_grouplike() {
        return ExtElement::basis(ExtWord::letter(l.inverse()));
    }
    let yinv = ExtLetter::new(partner(l.family).inverse(), l.index);
    ExtElement::term(ExtWord(vec![yinv, l, yinv]), C::one().neg())
}

/// Graded anti-homomorphism: `S(xy) = (-1)^(deg x deg y) S(y) S(x)`.
pub fn antipode<C: Ring>(x: &ExtElement<C>) -> ExtElement<C> {
    x.flat_map(|w| {
        let odd = w.letters().iter().filter(|l| l.degree().is_odd()).count();
        let sign = if (odd * odd.saturating_sub(1) / 2) % 2 == 1 { C::one().neg() } else { C::one() };
        w.letters()
            .iter()
            .rev()
            .fold(ExtElement::term(ExtWord::unit(), sign), |acc, &l| {
                crate::extended::ext_multiply(&acc, &antipode_letter(l))
            })
    })
}

/// Replace leg `leg` of every basis tensor by the tensor `f` returns for it.
pub fn expand_leg<C: Ring, F>(t: &Tensor<C>, leg: usize, mut f: F) -> Result<Tensor<C>, HopfError>
where
    F: FnMut(&ExtWord) -> Result<Tensor<C>, HopfError>,
{
    let mut out = Tensor::zero();
    for (legs, c) in t {
        for (inner, ci) in &f(&legs[leg])? {
            let mut v = legs[..leg].to_vec();
            v.extend(inner.iter().cloned());
            v.extend(legs[leg + 1..].iter().cloned());
            out.add_term(v, c.mul(ci));
        }
    }
    Ok(out)
}

/// Multiply legs `leg` and `leg + 1` together.
pub fn contract<C: Ring>(t: &Tensor<C>, leg: usize) -> Tensor<C> {
    t.flat_map(|legs| {
        let mut v = legs[..leg].to_vec();
        v.push(legs[leg].concat(&legs[leg + 1]));
        v.extend(legs[leg + 2..].iter().cloned());
        Tensor::basis(v)
    })
}

/// Reduce every leg independently.
pub fn reduce_tensor<C: Ring, E: Exchange<C> + ?Sized>(
    t: &Tensor<C>,
    ex: &E,
    mode: DeformationMode,
) -> Result<Tensor<C>, HopfError> {
    let legs = t.iter().next().map_or(0, |(k, _)| k.len());
    (0..legs).try_fold(t.clone(), |acc, leg| {
        expand_leg(&acc, leg, |w| Ok(from_element(&reduce_word(w, ex, mode)?)))
    })
}

/// Wrapper giving tensors a readable rendering.
pub struct TensorDisplay<'a>(pub &'a Tensor);

impl fmt::Display for TensorDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(legs, c)| {
                let basis: Vec<String> = legs.iter().map(|w| w.to_string()).collect();
                fmt_term(c, &basis.join(" ⊗ "), false)
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extended::{ext_multiply, letter};

    fn w(parts: &[(Family, i64)]) -> ExtWord {
        ExtWord(parts.iter().map(|&(f, i)| ExtLetter::new(f, i)).collect())
    }

    #[test]
    fn coproduct_examples() {
        let t3: Tensor = coproduct_letter(ExtLetter::new(Family::T, 3));
        assert_eq!(t3, Tensor::basis(vec![w(&[(Family::T, 3)]), w(&[(Family::T, 3)])]));
        let l0: Tensor = coproduct(&letter(Family::L, 0));
        assert_eq!(l0.len(), 2);
        assert_eq!(
            TensorDisplay(&l0).to_string(),
            "L_0 ⊗ T_0 + T_0 ⊗ L_0"
        );
    }

    #[test]
    fn koszul_sign_on_g_product() {
        use Family::*;
        let gg: ExtElement = ext_multiply(&letter(G, 1), &letter(G, 2));
        let d: Tensor = coproduct(&gg);
        assert_eq!(d.len(), 4);
        // (R_1 ⊗ G_1)(G_2 ⊗ R_2): G_2 passes G_1
        assert_eq!(
            d.get(&vec![w(&[(R, 1), (G, 2)]), w(&[(G, 1), (R, 2)])]),
            Some(&LaurentPoly::from_int(-1))
        );
        assert_eq!(
            d.get(&vec![w(&[(G, 1), (R, 2)]), w(&[(R, 1), (G, 2)])]),
            Some(&LaurentPoly::one())
        );
    }

    #[test]
    fn counit_examples() {
        use Family::*;
        let x: ExtElement = ext_multiply(&letter(T, 2), &letter(K, 5));
        assert!(counit(&x).is_one());
        assert!(counit::<LaurentPoly>(&letter(L, 1)).is_zero());
        let y: ExtElement = ext_multiply(&ext_multiply(&letter(T, 1), &letter(F, 2)), &letter(K, 3));
        assert!(counit(&y).is_zero());
    }

    #[test]
    fn antipode_examples() {
        use Family::*;
        assert_eq!(antipode::<LaurentPoly>(&letter(T, 4)), letter(TInv, 4));
        assert_eq!(
            antipode::<LaurentPoly>(&letter(L, 2)),
            ExtElement::term(w(&[(TInv, 2), (L, 2), (TInv, 2)]), LaurentPoly::from_int(-1))
        );
        let gg: ExtElement = ext_multiply(&letter(G, 1), &letter(G, 2));
        let expected = ext_multiply(&antipode(&letter(G, 2)), &antipode(&letter(G, 1))).neg();
        assert_eq!(antipode(&gg), expected);
    }
}
