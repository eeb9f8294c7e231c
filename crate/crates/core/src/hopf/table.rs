//! Exchange exponents between the deformed letters `L, G, F` and the
//! group-like letters `T, K, R`:  `X_k Y_l = q^a(k,l) p^b(k,l) Y_l X_k`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::coeff::LaurentPoly;
use crate::extended::Family;
use crate::intpoly::IntPoly;
use crate::oscillator::DeformationMode;

/// `a*k*l + b*k + c*l + d`, with `k` the deformed index and `l` the group-like one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Bilinear {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl Bilinear {
    pub const ZERO: Bilinear = Bilinear { a: 0, b: 0, c: 0, d: 0 };

    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        Self { a, b, c, d }
    }

    pub fn from_array([a, b, c, d]: [i64; 4]) -> Self {
        Self { a, b, c, d }
    }

    pub fn to_array(self) -> [i64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn eval(self, k: i64, l: i64) -> i64 {
        self.a * k * l + self.b * k + self.c * l + self.d
    }

    pub fn neg(self) -> Self {
        Self::new(-self.a, -self.b, -self.c, -self.d)
    }

    pub fn to_intpoly(self) -> IntPoly {
        let k = IntPoly::var('k');
        let l = IntPoly::var('l');
        k.mul(&l)
            .mul(&IntPoly::constant(self.a))
            .add(&k.mul(&IntPoly::constant(self.b)))
            .add(&l.mul(&IntPoly::constant(self.c)))
            .add(&IntPoly::constant(self.d))
    }
}

impl fmt::Display for Bilinear {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_intpoly())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct PairExponent {
    pub q: Bilinear,
    pub p: Bilinear,
}

impl PairExponent {
    pub fn q_only(q: Bilinear) -> Self {
        Self { q, p: Bilinear::ZERO }
    }
}

/// The nine `(X, Y)` pairs in a fixed order.
pub const PAIRS: [(Family, Family); 9] = [
    (Family::L, Family::T),
    (Family::L, Family::K),
    (Family::L, Family::R),
    (Family::F, Family::T),
    (Family::F, Family::K),
    (Family::F, Family::R),
    (Family::G, Family::T),
    (Family::G, Family::K),
    (Family::G, Family::R),
];

pub fn pair_index(x: Family, y: Family) -> usize {
    PAIRS
        .iter()
        .position(|&(a, b)| a == x && b == y.base())
        .unwrap_or_else(|| panic!("no exchange pair ({x:?}, {y:?})"))
}

pub fn pair_name(x: Family, y: Family) -> String {
    format!("{}{}", x.name(), y.name())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExponentTable {
    pub source: String,
    pub entries: BTreeMap<String, PairExponent>,
}

impl ExponentTable {
    pub fn zero(source: &str) -> Self {
        Self {
            source: source.to_string(),
            entries: PAIRS
                .iter()
                .map(|&(x, y)| (pair_name(x, y), PairExponent::default()))
                .collect(),
        }
    }

    pub fn get(&self, x: Family, y: Family) -> PairExponent {
        self.entries.get(&pair_name(x, y.base())).copied().unwrap_or_default()
    }

    pub fn set(&mut self, x: Family, y: Family, e: PairExponent) {
        self.entries.insert(pair_name(x, y.base()), e);
    }

    /// `X_k Y_l = factor * Y_l X_k`; `Y` may be an inverse letter.
    pub fn factor(&self, x: Family, k: i64, y: Family, l: i64) -> LaurentPoly {
        let e = self.get(x, y);
        let (eq, ep) = (e.q.eval(k, l), e.p.eval(k, l));
        if y.is_inverse() {
            LaurentPoly::qp_pow(-eq, -ep)
        } else {
            LaurentPoly::qp_pow(eq, ep)
        }
    }

    /// Unknown-vector layout shared with the solver: for pair `i`, q-part
    /// at `8i..8i+4`, p-part at `8i+4..8i+8`, each in `[a, b, c, d]` order.
    pub fn to_vector(&self) -> Vec<i64> {
        let mut v = Vec::with_capacity(72);
        for &(x, y) in &PAIRS {
            let e = self.get(x, y);
            v.extend_from_slice(&e.q.to_array());
            v.extend_from_slice(&e.p.to_array());
        }
        v
    }

    pub fn from_vector(source: &str, v: &[i64]) -> Self {
        let mut t = Self::zero(source);
        for (i, &(x, y)) in PAIRS.iter().enumerate() {
            let q = Bilinear::from_array(v[8 * i..8 * i + 4].try_into().expect("4 entries"));
            let p = Bilinear::from_array(v[8 * i + 4..8 * i + 8].try_into().expect("4 entries"));
            t.set(x, y, PairExponent { q, p });
        }
        t
    }

    /// Exponent tables printed with the relations, read literally.
    pub fn paper(mode: DeformationMode) -> (Self, Vec<PaperRow>) {
        let rows: Vec<PaperRow> = paper_rows(mode).iter().map(RowSpec::parse).collect();
        let mut table = Self::zero("paper");
        for row in &rows {
            if let Ok(e) = row.parsed {
                table.set(row.x, row.y, e);
            }
        }
        (table, rows)
    }
}

/// One printed row and its reading in `X_k Y_l` form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PaperRow {
    pub text: String,
    pub x: Family,
    pub y: Family,
    pub parsed: Result<PairExponent, String>,
}

struct RowSpec {
    text: &'static str,
    x: Family,
    y: Family,
    /// Index variable of the deformed letter and of the group-like letter.
    x_var: char,
    y_var: char,
    /// Row printed as `Y X = ... X Y`; its exponents are negated.
    y_first: bool,
    q_expr: &'static str,
    p_expr: Option<&'static str>,
}

impl RowSpec {
    fn parse(&self) -> PaperRow {
        let read = |src: &str| -> Result<Bilinear, String> {
            let poly = IntPoly::parse(src).map_err(|e| format!("`{src}`: {e}"))?;
            let renamed = poly.rename(&[(self.x_var, '\u{1}'), (self.y_var, '\u{2}')]);
            let coeffs = renamed
                .bilinear('\u{1}', '\u{2}')
                .ok_or_else(|| format!("`{src}` is not bilinear in the two indices"))?;
            let b = Bilinear::from_array(coeffs);
            Ok(if self.y_first { b.neg() } else { b })
        };
        let parsed = read(self.q_expr).and_then(|q| {
            let p = self.p_expr.map(read).transpose()?.unwrap_or(Bilinear::ZERO);
            Ok(PairExponent { q, p })
        });
        PaperRow {
            text: self.text.to_string(),
            x: self.x,
            y: self.y,
            parsed,
        }
    }
}

fn paper_rows(mode: DeformationMode) -> Vec<RowSpec> {
    use Family::*;
    let row = |text, x, y, x_var, y_var, y_first, q_expr, p_expr| RowSpec {
        text,
        x,
        y,
        x_var,
        y_var,
        y_first,
        q_expr,
        p_expr,
    };
    let shared = [
        row("L_{k} T_{l} = q^{2(k+1)l}T_{l} L_{k}", L, T, 'k', 'l', false, "2(k+1)l", None),
        row("G_{k} K_{l} = K_{l} G_{k}", G, K, 'k', 'l', false, "0", None),
        row("F_{k} R_{l} = R_{l} F_{k}", F, R, 'k', 'l', false, "0", None),
        row("F_{k} K_{l} = q^{-2(k+1)l} K_{l} F_{k}", F, K, 'k', 'l', false, "-2(k+1)l", None),
        row("G_{k} R_{l} = R_{l} G_{k}", G, R, 'k', 'l', false, "0", None),
    ];
    let specific = match mode {
        DeformationMode::PQ => vec![
            row("L_{l} K_{k} = q^{(1+l)k} K_{k} L_{l}", L, K, 'l', 'k', false, "(1+l)k", None),
            row("F_{k} T_{l} = q^{(k-1)l}T_{l} F_{k}", F, T, 'k', 'l', false, "(k-1)l", None),
            row(
                "T_{l} G_{k} = q^{-2(1+k)l} p^{(k+2)l}  G_{k} T_{l}",
                G,
                T,
                'k',
                'l',
                true,
                "-2(1+k)l",
                Some("(k+2)l"),
            ),
            row(
                "L_{l} R_{k} = q^{2(l+l)k} p^{-kl}R_{k} L_{l}",
                L,
                R,
                'l',
                'k',
                false,
                "2(l+l)k",
                Some("-kl"),
            ),
        ],
        _ => vec![
            row("L_{l} K_{k} = q^{-1k} K_{k} L_{l}", L, K, 'l', 'k', false, "-1k", None),
            row("T_{l} F_{k} = q^{(2+1)k} F_{k}T_{l}", F, T, 'k', 'l', true, "(2+1)k", None),
            row("G_{k} T_{l} = q^{2(1+k)l} T_{l} G_{k}", G, T, 'k', 'l', false, "2(1+k)l", None),
            row("L_{l} R_{k} = q^{2(l+l)k} R_{k} L_{l}", L, R, 'l', 'k', false, "2(l+l)k", None),
        ],
    };
    shared.into_iter().chain(specific).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn paper_rows_in_normal_form() {
        let (t, rows) = ExponentTable::paper(DeformationMode::Q);
        assert!(rows.iter().all(|r| r.parsed.is_ok()));
        assert_eq!(t.get(Family::L, Family::T).q, Bilinear::new(2, 0, 2, 0));
        assert_eq!(t.get(Family::L, Family::K).q, Bilinear::new(0, 0, -1, 0));
        assert_eq!(t.get(Family::F, Family::T).q, Bilinear::new(0, -3, 0, 0));
        assert_eq!(t.get(Family::L, Family::R).q, Bilinear::new(4, 0, 0, 0));
        let (t, _) = ExponentTable::paper(DeformationMode::PQ);
        assert_eq!(t.get(Family::L, Family::K).q, Bilinear::new(1, 0, 1, 0));
        assert_eq!(t.get(Family::F, Family::T).q, Bilinear::new(1, 0, -1, 0));
        let gt = t.get(Family::G, Family::T);
        assert_eq!(gt.q, Bilinear::new(2, 0, 2, 0));
        assert_eq!(gt.p, Bilinear::new(-1, 0, -2, 0));
        assert_eq!(t.get(Family::L, Family::R).p, Bilinear::new(-1, 0, 0, 0));
    }

    #[test]
    fn l2_t3_factor() {
        let (t, _) = ExponentTable::paper(DeformationMode::Q);
        assert_eq!(t.factor(Family::L, 2, Family::T, 3), LaurentPoly::q_pow(18));
        assert_eq!(t.factor(Family::L, 5, Family::T, 0), LaurentPoly::one());
    }

    #[test]
    fn double_exchange_is_identity() {
        use crate::linear::Ring;
        for mode in [DeformationMode::Q, DeformationMode::PQ] {
            let (t, _) = ExponentTable::paper(mode);
            for &(x, y) in &PAIRS {
                for k in -3..=3 {
                    for l in -3..=3 {
                        let there = t.factor(x, k, y, l);
                        let back = t.factor(x, k, y.inverse(), l);
                        assert!(there.mul(&back).is_one());
                    }
                }
            }
        }
    }

    #[test]
    fn vector_round_trip() {
        let (t, _) = ExponentTable::paper(DeformationMode::PQ);
        assert_eq!(ExponentTable::from_vector("paper", &t.to_vector()), t);
    }

    #[test]
    fn unparseable_row_is_flagged() {
        let spec = RowSpec {
            text: "L_{k} T_{l} = q^{2(k+} T_{l} L_{k}",
            x: Family::L,
            y: Family::T,
            x_var: 'k',
            y_var: 'l',
            y_first: false,
            q_expr: "2(k+",
            p_expr: None,
        };
        assert!(spec.parse().parsed.is_err());
    }
}
