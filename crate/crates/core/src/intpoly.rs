//! Integer polynomials in single-letter index variables, e.g. `2(k+1)l` or
//! `l-k`. Used for index expressions and exponent rows.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IntPolyError {
    #[error("column {col}: {msg}")]
    Syntax { col: usize, msg: String },
    #[error("unbound index variable `{0}`")]
    Unbound(char),
    #[error("integer overflow while evaluating")]
    Overflow,
}

/// Monomial: sorted variables with positive powers.
type Mono = Vec<(char, u32)>;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IntPoly {
    terms: BTreeMap<Mono, i64>,
}

fn mono_mul(a: &Mono, b: &Mono) -> Mono {
    let mut m: BTreeMap<char, u32> = a.iter().copied().collect();
    for &(v, e) in b {
        *m.entry(v).or_default() += e;
    }
    m.into_iter().collect()
}

impl IntPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(Vec::new(), c);
        p
    }

    pub fn var(v: char) -> Self {
        let mut p = Self::zero();
        p.add_term(vec![(v, 1)], 1);
        p
    }

    fn add_term(&mut self, m: Mono, c: i64) {
        if c == 0 {
            return;
        }
        let e = self.terms.entry(m.clone()).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), *c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                out.add_term(mono_mul(ma, mb), ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::constant(1), |acc, _| acc.mul(self))
    }

    pub fn vars(&self) -> Vec<char> {
        let mut v: Vec<char> = self.terms.keys().flatten().map(|&(c, _)| c).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn as_constant(&self) -> Option<i64> {
        match self.terms.len() {
            0 => Some(0),
            1 => self.terms.get(&Vec::new()).copied(),
            _ => None,
        }
    }

    pub fn eval(&self, env: &HashMap<char, i64>) -> Result<i64, IntPolyError> {
        let mut total: i64 = 0;
        for (m, c) in &self.terms {
            let mut t = *c;
            for &(v, e) in m {
                let x = *env.get(&v).ok_or(IntPolyError::Unbound(v))?;
                let xe = x.checked_pow(e).ok_or(IntPolyError::Overflow)?;
                t = t.checked_mul(xe).ok_or(IntPolyError::Overflow)?;
            }
            total = total.checked_add(t).ok_or(IntPolyError::Overflow)?;
        }
        Ok(total)
    }

    /// Rename variables (unmapped ones are kept).
    pub fn rename(&self, map: &[(char, char)]) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let renamed: Mono = m
                .iter()
                .map(|&(v, e)| (map.iter().find(|(a, _)| *a == v).map_or(v, |&(_, b)| b), e))
                .collect();
            let mut norm: BTreeMap<char, u32> = BTreeMap::new();
            for (v, e) in renamed {
                *norm.entry(v).or_default() += e;
            }
            out.add_term(norm.into_iter().collect(), *c);
        }
        out
    }

    /// Coefficients `[a, b, c, d]` of `a*x*y + b*x + c*y + d`, or `None` when
    /// the polynomial is not of that shape.
    pub fn bilinear(&self, x: char, y: char) -> Option<[i64; 4]> {
        let mut out = [0i64; 4];
        for (m, c) in &self.terms {
            let slot = match m.as_slice() {
                [] => 3,
                [(v, 1)] if *v == x => 1,
                [(v, 1)] if *v == y => 2,
                [(v1, 1), (v2, 1)] if (*v1 == x && *v2 == y) || (*v1 == y && *v2 == x) => 0,
                _ => return None,
            };
            out[slot] = *c;
        }
        Some(out)
    }

    pub fn parse(src: &str) -> Result<Self, IntPolyError> {
        let mut p = Parser {
            chars: src.char_indices().collect(),
            pos: 0,
        };
        let out = p.expr()?;
        p.skip_ws();
        if p.pos < p.chars.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(out)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        // Highest degree first reads naturally: `2kl + 2l`.
        let mut terms: Vec<(&Mono, &i64)> = self.terms.iter().collect();
        terms.sort_by_key(|(m, _)| std::cmp::Reverse(m.iter().map(|(_, e)| *e).sum::<u32>()));
        for (i, (m, c)) in terms.into_iter().enumerate() {
            let mag = c.unsigned_abs();
            if i == 0 {
                if *c < 0 {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if *c < 0 { " - " } else { " + " })?;
            }
            if mag != 1 || m.is_empty() {
                write!(f, "{mag}")?;
            }
            for &(v, e) in m.iter() {
                if e == 1 {
                    write!(f, "{v}")?;
                } else {
                    write!(f, "{v}^{e}")?;
                }
            }
        }
        Ok(())
    }
}

struct Parser {
    chars: Vec<(usize, char)>,
    pos: usize,
}

impl Parser {
    fn col(&self) -> usize {
        self.chars.get(self.pos).map_or_else(
            || self.chars.last().map_or(1, |&(i, c)| i + c.len_utf8() + 1),
            |&(i, _)| i + 1,
        )
    }

    fn error(&self, msg: &str) -> IntPolyError {
        IntPolyError::Syntax {
            col: self.col(),
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|(_, c)| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn expr(&mut self) -> Result<IntPoly, IntPolyError> {
        let mut acc = self.term()?;
        while let Some(c @ ('+' | '-')) = self.peek() {
            self.pos += 1;
            let t = self.term()?;
            acc = if c == '+' { acc.add(&t) } else { acc.sub(&t) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<IntPoly, IntPolyError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.factor()?);
                }
                Some(c) if c.is_ascii_alphanumeric() || c == '(' => acc = acc.mul(&self.factor()?),
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<IntPoly, IntPolyError> {
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                Ok(self.factor()?.neg())
            }
            Some('+') => {
                self.pos += 1;
                self.factor()
            }
            _ => {
                let base = self.atom()?;
                if self.peek() == Some('^') {
                    self.pos += 1;
                    self.skip_ws();
                    let n = self.number()?;
                    let n = u32::try_from(n).map_err(|_| self.error("exponent too large"))?;
                    Ok(base.pow(n))
                } else {
                    Ok(base)
                }
            }
        }
    }

    fn number(&mut self) -> Result<i64, IntPolyError> {
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|(_, c)| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        let s: String = self.chars[start..self.pos].iter().map(|&(_, c)| c).collect();
        s.parse().map_err(|_| {
            self.pos = start;
            self.error("number out of range")
        })
    }

    fn atom(&mut self) -> Result<IntPoly, IntPolyError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => Ok(IntPoly::constant(self.number()?)),
            Some(c) if c.is_ascii_alphabetic() => {
                // Single letters only, so `kl` is `k*l`.
                self.pos += 1;
                Ok(IntPoly::var(c))
            }
            Some(_) => Err(self.error("expected a number, variable or `(`")),
            None => Err(self.error("unexpected end of expression")),
        }
    }
}
