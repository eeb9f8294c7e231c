//! Line-oriented algebra definition files (`.alg`).
//!
//! ```text
//! # comment
//! mode q
//! generator a+ degree 0
//! rule: a- a+ -> 1 + q^2 a+ a-
//! realize L[n >= -1] = -q a+^(n+1) a-
//! relation LL(l,k): q^(l-k) L[l] L[k] - q^(k-l) L[k] L[l] = [l-k] L[l+k]
//! ```
//!
//! Scalars: integers, `q`, `p`, `q^e`, `p^e` (`e` an integer, a letter or a
//! parenthesized index expression), `lambda`, `[e]` (q-integer), `[[e]]`
//! (box q-integer) and index variables such as `(l-k)`. Juxtaposition
//! multiplies; `^` on a generator or group is a non-negative power.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use crate::coeff::{lambda, q_box, q_bracket, LaurentPoly};
use crate::extended::{ExtElement, ExtLetter, ExtWord, Family};
use crate::intpoly::{IntPoly, IntPolyError};
use crate::linear::{LinComb, Ring};
use crate::oscillator::{GenKind, RewriteRule, RewriteSystem, Strategy};
use crate::relations::{RelationError, RelationInstance, RelationSource};
use crate::words::{Element, GenSym, Parity, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgErrorKind {
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("malformed exponent: {0}")]
    MalformedExponent(String),
    #[error("duplicate declaration of {0}")]
    Duplicate(String),
    #[error("empty right-hand side")]
    EmptyRhs,
    #[error("{0}")]
    Syntax(String),
    #[error("{0}")]
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {col}: {kind}")]
pub struct AlgError {
    pub line: usize,
    pub col: usize,
    pub kind: AlgErrorKind,
}

/// One factor of a product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Factor {
    Num(i64),
    QPow(IntPoly),
    PPow(IntPoly),
    Lambda,
    Bracket(IntPoly),
    BoxBracket(IntPoly),
    Var(char),
    Gen(GenSym, Option<IntPoly>),
    Abstract(GenKind, IntPoly),
    Group(Box<Expr>, Option<IntPoly>),
}

/// Signed sum of products.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expr {
    pub terms: Vec<(bool, Vec<Factor>)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Stmt {
    Mode(String),
    Generator { sym: GenSym, degree: Parity },
    Rule { lhs: Vec<GenSym>, rhs: Expr },
    Realize { kind: GenKind, var: char, min: i64, body: Expr },
    Relation { id: String, vars: Vec<char>, lhs: Expr, rhs: Expr },
}

#[derive(Debug, Clone, Eq)]
pub struct Statement {
    pub line: usize,
    pub body: Stmt,
}

impl PartialEq for Statement {
    fn eq(&self, other: &Self) -> bool {
        self.body == other.body
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AlgebraDef {
    pub statements: Vec<Statement>,
}

impl AlgebraDef {
    pub fn mode(&self) -> Option<&str> {
        self.statements.iter().find_map(|s| match &s.body {
            Stmt::Mode(m) => Some(m.as_str()),
            _ => None,
        })
    }

    pub fn relation_ids(&self) -> Vec<String> {
        self.statements
            .iter()
            .filter_map(|s| match &s.body {
                Stmt::Relation { id, .. } => Some(id.clone()),
                _ => None,
            })
            .collect()
    }

    pub fn rule_count(&self) -> usize {
        self.statements.iter().filter(|s| matches!(s.body, Stmt::Rule { .. })).count()
    }

    /// Canonical text; parsing it gives back an equal definition.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for s in &self.statements {
            out.push_str(&s.body.to_string());
            out.push('\n');
        }
        out
    }
}

const RESERVED: [char; 4] = ['q', 'p', 'a', 'f'];

fn int_err(e: IntPolyError, base_col: usize) -> AlgErrorKind {
    let _ = base_col;
    AlgErrorKind::MalformedExponent(e.to_string())
}

/// Parser over one line.
struct Line<'a> {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    declared: &'a BTreeSet<GenSym>,
    /// `Some` when index variables are restricted to this set.
    scope: Option<Vec<char>>,
    /// Variables seen, in order of first appearance.
    seen: Vec<char>,
}

impl<'a> Line<'a> {
    fn new(text: &str, line: usize, declared: &'a BTreeSet<GenSym>) -> Self {
        Self {
            chars: text.chars().collect(),
            pos: 0,
            line,
            declared,
            scope: None,
            seen: Vec::new(),
        }
    }

    fn err_at(&self, pos: usize, kind: AlgErrorKind) -> AlgError {
        AlgError {
            line: self.line,
            col: pos + 1,
            kind,
        }
    }

    fn err(&self, kind: AlgErrorKind) -> AlgError {
        self.err_at(self.pos, kind)
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn peek2(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos + 1).copied()
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn eat(&mut self, s: &str) -> bool {
        self.skip_ws();
        let n = s.chars().count();
        if self.chars.len() >= self.pos + n && self.chars[self.pos..self.pos + n].iter().copied().eq(s.chars()) {
            self.pos += n;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<(), AlgError> {
        if self.eat(s) {
            Ok(())
        } else {
            let found = self.peek().map_or("end of line".to_string(), |c| format!("`{c}`"));
            Err(self.err(AlgErrorKind::Syntax(format!("expected `{s}`, found {found}"))))
        }
    }

    fn ident(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_') {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn integer(&mut self) -> Result<i64, AlgError> {
        self.skip_ws();
        let start = self.pos;
        if self.chars.get(self.pos) == Some(&'-') {
            self.pos += 1;
        }
        while self.chars.get(self.pos).is_some_and(char::is_ascii_digit) {
            self.pos += 1;
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse()
            .map_err(|_| self.err_at(start, AlgErrorKind::Syntax(format!("expected an integer, found `{s}`"))))
    }

    /// Records the variables of `p` in the order they occur in `text`.
    fn note_vars(&mut self, p: &IntPoly, text: &str, at: usize) -> Result<(), AlgError> {
        let vars = p.vars();
        for (i, c) in text.chars().enumerate() {
            if vars.contains(&c) {
                self.note_var(c, at + i)?;
            }
        }
        Ok(())
    }

    fn note_var(&mut self, v: char, at: usize) -> Result<(), AlgError> {
        let ok = match &self.scope {
            Some(s) => s.contains(&v),
            None => !RESERVED.contains(&v),
        };
        if !ok {
            return Err(self.err_at(at, AlgErrorKind::UnknownSymbol(v.to_string())));
        }
        if !self.seen.contains(&v) {
            self.seen.push(v);
        }
        Ok(())
    }

    /// Index expression up to the matching closer, handed to [`IntPoly`].
    fn delimited(&mut self, open: char, close: char) -> Result<IntPoly, AlgError> {
        let start = self.pos;
        let mut depth = 1usize;
        let mut end = self.pos;
        while end < self.chars.len() {
            let c = self.chars[end];
            if c == open {
                depth += 1;
            } else if c == close {
                depth -= 1;
                if depth == 0 {
                    break;
                }
            }
            end += 1;
        }
        if end >= self.chars.len() {
            return Err(self.err_at(start, AlgErrorKind::MalformedExponent(format!("missing `{close}`"))));
        }
        let text: String = self.chars[start..end].iter().collect();
        let p = IntPoly::parse(&text).map_err(|e| {
            let col = match &e {
                IntPolyError::Syntax { col, .. } => start + col - 1,
                _ => start,
            };
            self.err_at(col, int_err(e, start))
        })?;
        self.note_vars(&p, &text, start)?;
        self.pos = end + 1;
        Ok(p)
    }

    /// After `^`: an integer, `-integer`, a letter, or `( ... )`.
    fn exponent(&mut self) -> Result<IntPoly, AlgError> {
        let start = self.pos;
        match self.chars.get(self.pos).copied() {
            Some('(') => {
                self.pos += 1;
                self.delimited('(', ')')
            }
            Some(c) if c == '-' || c.is_ascii_digit() => {
                let n = self
                    .integer()
                    .map_err(|_| self.err_at(start, AlgErrorKind::MalformedExponent("expected an integer".into())))?;
                Ok(IntPoly::constant(n))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                self.pos += 1;
                self.note_var(c, start)?;
                Ok(IntPoly::var(c))
            }
            _ => Err(self.err_at(
                start,
                AlgErrorKind::MalformedExponent("expected an integer, a variable or `(`".into()),
            )),
        }
    }

    fn opt_power(&mut self) -> Result<Option<IntPoly>, AlgError> {
        if self.chars.get(self.pos) == Some(&'^') {
            self.pos += 1;
            Ok(Some(self.exponent()?))
        } else {
            Ok(None)
        }
    }

    /// A generator name at the cursor (`a+`, `f-`, ...), declared or not.
    fn gen_name(&mut self) -> Option<(GenSym, usize)> {
        self.skip_ws();
        let s: String = self.chars.iter().skip(self.pos).take(2).collect();
        GenSym::from_name(&s).map(|g| (g, self.pos))
    }

    fn factor(&mut self) -> Result<Factor, AlgError> {
        self.skip_ws();
        let start = self.pos;
        let Some(c) = self.peek() else {
            return Err(self.err(AlgErrorKind::Syntax("expected a factor".into())));
        };
        if let Some((g, at)) = self.gen_name() {
            if !self.declared.contains(&g) {
                return Err(self.err_at(at, AlgErrorKind::UnknownSymbol(format!("{} (not declared)", g.name()))));
            }
            self.pos += 2;
            return Ok(Factor::Gen(g, self.opt_power()?));
        }
        match c {
            '(' => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(")")?;
                Ok(Factor::Group(Box::new(inner), self.opt_power()?))
            }
            '[' => {
                if self.peek2() == Some('[') {
                    self.pos += 2;
                    let p = self.delimited('[', ']')?;
                    if self.chars.get(self.pos) != Some(&']') {
                        return Err(self.err(AlgErrorKind::Syntax("expected `]]`".into())));
                    }
                    self.pos += 1;
                    Ok(Factor::BoxBracket(p))
                } else {
                    self.pos += 1;
                    Ok(Factor::Bracket(self.delimited('[', ']')?))
                }
            }
            c if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(Factor::Num(n))
            }
            c if c.is_ascii_alphabetic() => {
                let id = self.ident();
                match id.as_str() {
                    "lambda" => Ok(Factor::Lambda),
                    "q" => Ok(Factor::QPow(self.opt_power()?.unwrap_or_else(|| IntPoly::constant(1)))),
                    "p" => Ok(Factor::PPow(self.opt_power()?.unwrap_or_else(|| IntPoly::constant(1)))),
                    "L" | "G" | "F" if self.chars.get(self.pos) == Some(&'[') => {
                        self.pos += 1;
                        let kind = GenKind::from_name(&id).expect("L, G or F");
                        Ok(Factor::Abstract(kind, self.delimited('[', ']')?))
                    }
                    _ if id.len() == 1 => {
                        let v = id.chars().next().expect("one char");
                        self.note_var(v, start)?;
                        Ok(Factor::Var(v))
                    }
                    _ => Err(self.err_at(start, AlgErrorKind::UnknownSymbol(id))),
                }
            }
            other => Err(self.err(AlgErrorKind::Syntax(format!("unexpected `{other}`")))),
        }
    }

    fn ends_term(&mut self) -> bool {
        match self.peek() {
            None | Some('+' | ')' | '=') => true,
            Some('-') => self.gen_name().is_none(),
            _ => false,
        }
    }

    fn product(&mut self) -> Result<Vec<Factor>, AlgError> {
        let mut factors = vec![self.factor()?];
        while !self.ends_term() {
            factors.push(self.factor()?);
        }
        Ok(factors)
    }

    fn expr(&mut self) -> Result<Expr, AlgError> {
        let mut terms = Vec::new();
        let mut neg = false;
        if self.peek() == Some('-') && self.gen_name().is_none() {
            self.pos += 1;
            neg = true;
        } else if self.peek() == Some('+') {
            self.pos += 1;
        }
        terms.push((neg, self.product()?));
        loop {
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    terms.push((false, self.product()?));
                }
                Some('-') if self.gen_name().is_none() && !self.eat_arrow_ahead() => {
                    self.pos += 1;
                    terms.push((true, self.product()?));
                }
                _ => return Ok(Expr { terms }),
            }
        }
    }

    fn eat_arrow_ahead(&mut self) -> bool {
        self.skip_ws();
        self.chars.get(self.pos + 1) == Some(&'>')
    }

    fn full_expr(&mut self) -> Result<Expr, AlgError> {
        if self.at_end() {
            return Err(self.err(AlgErrorKind::EmptyRhs));
        }
        self.expr()
    }

    fn finish(&mut self) -> Result<(), AlgError> {
        if self.at_end() {
            Ok(())
        } else {
            let c = self.peek().expect("not at end");
            Err(self.err(AlgErrorKind::Syntax(format!("unexpected `{c}`"))))
        }
    }
}

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("")
}

pub fn parse_algebra_def(text: &str) -> Result<AlgebraDef, AlgError> {
    let mut declared: BTreeSet<GenSym> = BTreeSet::new();
    let mut def = AlgebraDef::default();
    let mut rules_seen: BTreeSet<Vec<GenSym>> = BTreeSet::new();
    let mut realize_seen: BTreeSet<GenKind> = BTreeSet::new();
    let mut relation_seen: BTreeSet<String> = BTreeSet::new();
    let mut mode_seen = false;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let content = strip_comment(raw);
        if content.trim().is_empty() {
            continue;
        }
        let decl_snapshot = declared.clone();
        let mut p = Line::new(content, line_no, &decl_snapshot);
        let kw_pos = {
            p.skip_ws();
            p.pos
        };
        let kw = p.ident();
        let body = match kw.as_str() {
            "mode" => {
                let m = p.ident();
                if !["classical", "q", "pq"].contains(&m.as_str()) {
                    return Err(p.err_at(kw_pos, AlgErrorKind::Invalid(format!("unknown mode `{m}`"))));
                }
                if mode_seen {
                    return Err(p.err_at(kw_pos, AlgErrorKind::Duplicate("mode".into())));
                }
                mode_seen = true;
                p.finish()?;
                Stmt::Mode(m)
            }
            "generator" => {
                p.skip_ws();
                let name_pos = p.pos;
                let Some((sym, _)) = p.gen_name() else {
                    let name: String = p.chars[p.pos..].iter().take_while(|c| !c.is_whitespace()).collect();
                    return Err(p.err_at(name_pos, AlgErrorKind::UnknownSymbol(name)));
                };
                p.pos += 2;
                if !p.eat("degree") {
                    return Err(p.err(AlgErrorKind::Syntax("expected `degree`".into())));
                }
                let deg_pos = p.pos;
                let degree = match p.integer()? {
                    0 => Parity::Even,
                    1 => Parity::Odd,
                    other => {
                        return Err(p.err_at(deg_pos, AlgErrorKind::Invalid(format!("degree must be 0 or 1, got {other}"))))
                    }
                };
                if degree != sym.degree() {
                    return Err(p.err_at(
                        deg_pos,
                        AlgErrorKind::Invalid(format!("{} has degree {}", sym.name(), sym.degree().bit())),
                    ));
                }
                p.finish()?;
                if !declared.insert(sym) {
                    return Err(p.err_at(name_pos, AlgErrorKind::Duplicate(format!("generator {}", sym.name()))));
                }
                Stmt::Generator { sym, degree }
            }
            "rule" => {
                p.expect(":")?;
                let lhs_pos = p.pos;
                let mut lhs = Vec::new();
                while !p.eat("->") {
                    match p.gen_name() {
                        Some((g, at)) if p.declared.contains(&g) => {
                            lhs.push(g);
                            p.pos = at + 2;
                        }
                        Some((g, at)) => {
                            return Err(p.err_at(at, AlgErrorKind::UnknownSymbol(format!("{} (not declared)", g.name()))))
                        }
                        None if p.at_end() => return Err(p.err(AlgErrorKind::Syntax("expected `->`".into()))),
                        None => {
                            let at = p.pos;
                            let bad: String = p.chars[at..].iter().take_while(|c| !c.is_whitespace()).collect();
                            return Err(p.err_at(at, AlgErrorKind::UnknownSymbol(bad)));
                        }
                    }
                }
                if lhs.is_empty() {
                    return Err(p.err_at(lhs_pos, AlgErrorKind::Syntax("empty left-hand side".into())));
                }
                p.scope = Some(Vec::new());
                let rhs = p.full_expr()?;
                p.finish()?;
                if !rules_seen.insert(lhs.clone()) {
                    return Err(p.err_at(lhs_pos, AlgErrorKind::Duplicate(format!("rule for {}", Word(lhs)))));
                }
                Stmt::Rule { lhs, rhs }
            }
            "realize" => {
                let kind_pos = p.pos;
                let name = p.ident();
                let kind = GenKind::from_name(&name)
                    .ok_or_else(|| p.err_at(kind_pos, AlgErrorKind::UnknownSymbol(name.clone())))?;
                p.expect("[")?;
                let var_pos = p.pos;
                let var = p.ident();
                let var = match var.chars().collect::<Vec<_>>()[..] {
                    [v] if !RESERVED.contains(&v) => v,
                    _ => return Err(p.err_at(var_pos, AlgErrorKind::Syntax("expected one index letter".into()))),
                };
                p.expect(">=")?;
                let min = p.integer()?;
                p.expect("]")?;
                p.expect("=")?;
                p.scope = Some(vec![var]);
                let body = p.full_expr()?;
                p.finish()?;
                if !realize_seen.insert(kind) {
                    return Err(p.err_at(kind_pos, AlgErrorKind::Duplicate(format!("realization of {name}"))));
                }
                Stmt::Realize { kind, var, min, body }
            }
            "relation" => {
                let id_pos = p.pos;
                let id = p.ident();
                if id.is_empty() {
                    return Err(p.err(AlgErrorKind::Syntax("expected a relation name".into())));
                }
                let mut vars = Vec::new();
                let explicit_vars = p.eat("(");
                if explicit_vars {
                    loop {
                        let at = p.pos;
                        let v = p.ident();
                        match v.chars().collect::<Vec<_>>()[..] {
                            [c] if !RESERVED.contains(&c) && !vars.contains(&c) => vars.push(c),
                            _ => return Err(p.err_at(at, AlgErrorKind::Syntax(format!("bad index variable `{v}`")))),
                        }
                        if p.eat(")") {
                            break;
                        }
                        p.expect(",")?;
                    }
                    p.scope = Some(vars.clone());
                }
                p.expect(":")?;
                let lhs = p.full_expr()?;
                p.expect("=")?;
                let rhs = p.full_expr()?;
                p.finish()?;
                if !explicit_vars {
                    vars = p.seen.clone();
                }
                if vars.len() != 2 {
                    return Err(p.err_at(
                        id_pos,
                        AlgErrorKind::Invalid(format!("relation {id} needs exactly two index variables, found {}", vars.len())),
                    ));
                }
                if !relation_seen.insert(id.clone()) {
                    return Err(p.err_at(id_pos, AlgErrorKind::Duplicate(format!("relation {id}"))));
                }
                Stmt::Relation { id, vars, lhs, rhs }
            }
            "" => return Err(p.err_at(kw_pos, AlgErrorKind::Syntax("expected a statement keyword".into()))),
            other => return Err(p.err_at(kw_pos, AlgErrorKind::UnknownSymbol(other.to_string()))),
        };
        def.statements.push(Statement { line: line_no, body });
    }
    Ok(def)
}

fn render_exp(e: &IntPoly) -> String {
    match e.as_constant() {
        Some(c) if c >= 0 => c.to_string(),
        _ => format!("({e})"),
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let power = |f: &mut fmt::Formatter<'_>, p: &Option<IntPoly>| match p {
            Some(e) => write!(f, "^{}", render_exp(e)),
            None => Ok(()),
        };
        match self {
            Factor::Num(n) => write!(f, "{n}"),
            Factor::QPow(e) if e.as_constant() == Some(1) => f.write_str("q"),
            Factor::PPow(e) if e.as_constant() == Some(1) => f.write_str("p"),
            Factor::QPow(e) => write!(f, "q^{}", render_exp(e)),
            Factor::PPow(e) => write!(f, "p^{}", render_exp(e)),
            Factor::Lambda => f.write_str("lambda"),
            Factor::Bracket(e) => write!(f, "[{e}]"),
            Factor::BoxBracket(e) => write!(f, "[[{e}]]"),
            Factor::Var(v) => write!(f, "{v}"),
            Factor::Gen(g, p) => {
                f.write_str(g.name())?;
                power(f, p)
            }
            Factor::Abstract(k, e) => write!(f, "{}[{e}]", k.name()),
            Factor::Group(inner, p) => {
                write!(f, "({inner})")?;
                power(f, p)
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (neg, factors)) in self.terms.iter().enumerate() {
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let parts: Vec<String> = factors.iter().map(|x| x.to_string()).collect();
            f.write_str(&parts.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Display for Stmt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stmt::Mode(m) => write!(f, "mode {m}"),
            Stmt::Generator { sym, degree } => write!(f, "generator {} degree {}", sym.name(), degree.bit()),
            Stmt::Rule { lhs, rhs } => write!(f, "rule: {} -> {rhs}", Word(lhs.clone())),
            Stmt::Realize { kind, var, min, body } => write!(f, "realize {}[{var} >= {min}] = {body}", kind.name()),
            Stmt::Relation { id, vars, lhs, rhs } => {
                let v: Vec<String> = vars.iter().map(char::to_string).collect();
                write!(f, "relation {id}({}): {lhs} = {rhs}", v.join(","))
            }
        }
    }
}

/// Letter of an evaluated expression.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Atom {
    Osc(GenSym),
    Abs(GenKind, i64),
}

type Value = LinComb<Vec<Atom>, LaurentPoly>;

fn value_mul(x: &Value, y: &Value) -> Value {
    let mut out = Value::zero();
    for (a, ca) in x {
        for (b, cb) in y {
            let mut w = a.clone();
            w.extend_from_slice(b);
            out.add_term(w, ca.mul(cb));
        }
    }
    out
}

fn scalar(c: LaurentPoly) -> Value {
    Value::term(Vec::new(), c)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalDefError {
    #[error(transparent)]
    Index(#[from] IntPolyError),
    #[error("negative power {0}")]
    NegativePower(i64),
    #[error("{0} cannot appear here")]
    Misplaced(String),
}

struct Evaluator<'a> {
    env: &'a HashMap<char, i64>,
    occurrences: Vec<ExtLetter>,
}

impl Evaluator<'_> {
    fn idx(&self, e: &IntPoly) -> Result<i64, EvalDefError> {
        Ok(e.eval(self.env)?)
    }

    fn power(&self, base: Value, p: &Option<IntPoly>) -> Result<Value, EvalDefError> {
        let Some(p) = p else { return Ok(base) };
        let n = self.idx(p)?;
        if n < 0 {
            return Err(EvalDefError::NegativePower(n));
        }
        Ok((0..n).fold(scalar(LaurentPoly::one()), |acc, _| value_mul(&acc, &base)))
    }

    fn factor(&mut self, f: &Factor) -> Result<Value, EvalDefError> {
        Ok(match f {
            Factor::Num(n) => scalar(LaurentPoly::from_int(*n)),
            Factor::QPow(e) => scalar(LaurentPoly::q_pow(self.idx(e)?)),
            Factor::PPow(e) => scalar(LaurentPoly::p_pow(self.idx(e)?)),
            Factor::Lambda => scalar(lambda()),
            Factor::Bracket(e) => scalar(q_bracket(self.idx(e)?)),
            Factor::BoxBracket(e) => scalar(q_box(self.idx(e)?)),
            Factor::Var(v) => scalar(LaurentPoly::from_int(self.idx(&IntPoly::var(*v))?)),
            Factor::Gen(g, p) => self.power(Value::basis(vec![Atom::Osc(*g)]), p)?,
            Factor::Abstract(k, e) => {
                let i = self.idx(e)?;
                self.occurrences.push(ExtLetter::new(Family::from(*k), i));
                Value::basis(vec![Atom::Abs(*k, i)])
            }
            Factor::Group(inner, p) => {
                let v = self.expr(inner)?;
                self.power(v, p)?
            }
        })
    }

    fn expr(&mut self, e: &Expr) -> Result<Value, EvalDefError> {
        let mut out = Value::zero();
        for (neg, factors) in &e.terms {
            let mut t = scalar(LaurentPoly::one());
            for f in factors {
                t = value_mul(&t, &self.factor(f)?);
            }
            if *neg {
                t = t.neg();
            }
            out.add_assign(&t);
        }
        Ok(out)
    }
}

fn to_element(v: &Value) -> Result<Element, EvalDefError> {
    let mut out = Element::zero();
    for (w, c) in v {
        let word = w
            .iter()
            .map(|a| match a {
                Atom::Osc(g) => Ok(*g),
                Atom::Abs(k, i) => Err(EvalDefError::Misplaced(format!("{}[{i}]", k.name()))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        out.add_term(Word(word), c.clone());
    }
    Ok(out)
}

fn to_ext(v: &Value) -> Result<ExtElement, EvalDefError> {
    let mut out = ExtElement::zero();
    for (w, c) in v {
        let word = w
            .iter()
            .map(|a| match a {
                Atom::Abs(k, i) => Ok(ExtLetter::new(Family::from(*k), *i)),
                Atom::Osc(g) => Err(EvalDefError::Misplaced(g.name().to_string())),
            })
            .collect::<Result<Vec<_>, _>>()?;
        out.add_term(ExtWord(word), c.clone());
    }
    Ok(out)
}

#[derive(Debug, Clone)]
struct Realization {
    var: char,
    min: i64,
    body: Expr,
}

#[derive(Debug, Clone)]
struct RelationDef {
    vars: Vec<char>,
    lhs: Expr,
    rhs: Expr,
}

/// Relation source driven entirely by a definition file: realizations,
/// relations and the rewrite rules used for normal ordering.
#[derive(Debug, Clone)]
pub struct FileEngine {
    pub name: String,
    rules: RewriteSystem,
    realizations: BTreeMap<GenKind, Realization>,
    relations: Vec<(String, RelationDef)>,
}

impl FileEngine {
    pub fn new(name: &str, def: &AlgebraDef) -> Result<Self, AlgError> {
        let mut rules = Vec::new();
        let mut realizations = BTreeMap::new();
        let mut relations = Vec::new();
        let empty = HashMap::new();
        for s in &def.statements {
            let fail = |e: EvalDefError| AlgError {
                line: s.line,
                col: 1,
                kind: AlgErrorKind::Invalid(e.to_string()),
            };
            match &s.body {
                Stmt::Rule { lhs, rhs } => {
                    let mut ev = Evaluator {
                        env: &empty,
                        occurrences: Vec::new(),
                    };
                    let rhs = to_element(&ev.expr(rhs).map_err(fail)?).map_err(fail)?;
                    rules.push(RewriteRule {
                        lhs: Word(lhs.clone()),
                        rhs,
                    });
                }
                Stmt::Realize { kind, var, min, body } => {
                    realizations.insert(
                        *kind,
                        Realization {
                            var: *var,
                            min: *min,
                            body: body.clone(),
                        },
                    );
                }
                Stmt::Relation { id, vars, lhs, rhs, .. } => relations.push((
                    id.clone(),
                    RelationDef {
                        vars: vars.clone(),
                        lhs: lhs.clone(),
                        rhs: rhs.clone(),
                    },
                )),
                Stmt::Mode(_) | Stmt::Generator { .. } => {}
            }
        }
        Ok(Self {
            name: def.mode().map_or_else(|| name.to_string(), str::to_string),
            rules: RewriteSystem::new(rules),
            realizations,
            relations,
        })
    }

    pub fn rewrite_system(&self) -> &RewriteSystem {
        &self.rules
    }
}

impl RelationSource for FileEngine {
    fn label(&self) -> String {
        self.name.clone()
    }

    fn family_ids(&self) -> Vec<String> {
        self.relations.iter().map(|(id, _)| id.clone()).collect()
    }

    fn instance(&self, family: &str, i1: i64, i2: i64) -> Result<RelationInstance, RelationError> {
        let (_, rel) = self
            .relations
            .iter()
            .find(|(id, _)| id == family)
            .ok_or_else(|| RelationError::UnknownFamily(family.to_string()))?;
        let env: HashMap<char, i64> = [(rel.vars[0], i1), (rel.vars[1], i2)].into_iter().collect();
        let mut ev = Evaluator {
            env: &env,
            occurrences: Vec::new(),
        };
        let engine_err = |e: EvalDefError| RelationError::Engine(format!("{family}({i1},{i2}): {e}"));
        let lhs = to_ext(&ev.expr(&rel.lhs).map_err(engine_err)?).map_err(engine_err)?;
        let rhs = to_ext(&ev.expr(&rel.rhs).map_err(engine_err)?).map_err(engine_err)?;
        for &l in &ev.occurrences {
            let kind = l.family.gen_kind().expect("abstract letters are L, G, F");
            let r = self
                .realizations
                .get(&kind)
                .ok_or_else(|| RelationError::Engine(format!("no realization for {}", kind.name())))?;
            if l.index < r.min {
                return Err(RelationError::Inadmissible {
                    family: family.to_string(),
                    i1,
                    i2,
                    letter: l,
                });
            }
        }
        Ok(RelationInstance {
            family: family.to_string(),
            i1,
            i2,
            lhs,
            rhs,
            generators: ev.occurrences,
        })
    }

    fn realize_letter(&self, l: ExtLetter) -> Result<Element, RelationError> {
        let kind = l
            .family
            .gen_kind()
            .ok_or_else(|| RelationError::Engine(format!("{l} has no oscillator realization")))?;
        let r = self
            .realizations
            .get(&kind)
            .ok_or_else(|| RelationError::Engine(format!("no realization for {}", kind.name())))?;
        let env: HashMap<char, i64> = [(r.var, l.index)].into_iter().collect();
        let mut ev = Evaluator {
            env: &env,
            occurrences: Vec::new(),
        };
        let engine_err = |e: EvalDefError| RelationError::Engine(format!("realizing {l}: {e}"));
        to_element(&ev.expr(&r.body).map_err(engine_err)?).map_err(engine_err)
    }

    fn normalize(&self, x: &Element) -> Result<Element, RelationError> {
        self.rules
            .reduce(x, &mut Strategy::Leftmost)
            .map_err(|e| RelationError::Engine(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const HEADER: &str = "generator a+ degree 0\ngenerator a- degree 0\ngenerator f+ degree 1\ngenerator f- degree 1\n";

    fn parse(body: &str) -> Result<AlgebraDef, AlgError> {
        parse_algebra_def(&format!("{HEADER}{body}"))
    }

    #[test]
    fn parses_rule() {
        let d = parse("rule: a- a+ -> 1 + q^2 a+ a-").unwrap();
        assert_eq!(d.rule_count(), 1);
    }

    #[test]
    fn parses_relation_without_index_list() {
        let d = parse("relation LL: q^(l-k) L[l] L[k] - q^(k-l) L[k] L[l] = [l-k] L[l+k]").unwrap();
        match &d.statements.last().unwrap().body {
            Stmt::Relation { id, vars, .. } => {
                assert_eq!(id, "LL");
                assert_eq!(vars, &vec!['l', 'k']);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn empty_rhs_is_an_error() {
        let e = parse("rule: a- a+ ->").unwrap_err();
        assert_eq!(e.kind, AlgErrorKind::EmptyRhs);
        assert_eq!(e.line, 5);
        assert_eq!(e.col, 15);
    }

    #[test]
    fn diagnostics_carry_positions() {
        let e = parse("rule: a- a+ -> 1 + z a+ a-").unwrap_err();
        assert_eq!((e.line, e.col), (5, 20));
        assert!(matches!(e.kind, AlgErrorKind::UnknownSymbol(_)));
        let e = parse("rule: a- a+ -> 1 + q^(2+) a+ a-").unwrap_err();
        assert!(matches!(e.kind, AlgErrorKind::MalformedExponent(_)));
        let e = parse("generator a+ degree 0").unwrap_err();
        assert!(matches!(e.kind, AlgErrorKind::Duplicate(_)));
        let e = parse_algebra_def("rule: a- a+ -> 1").unwrap_err();
        assert!(matches!(e.kind, AlgErrorKind::UnknownSymbol(_)));
    }

    #[test]
    fn render_round_trip() {
        let d = parse(
            "mode q\nrule: a- a+ -> 1 + q^2 a+ a-\nrealize L[n >= -1] = -q a+^(n+1) a-\n\
             relation LF(l,k): L[l] F[k] - q^(2k) F[k] L[l] = -q [[k]] F[k+l]\n\
             relation FF: q^(n-m) F[m] F[n] - q^(m-n) F[n] F[m] = lambda [n-m] F[n+m]",
        )
        .unwrap();
        let again = parse_algebra_def(&d.render()).unwrap();
        assert_eq!(again, d);
        assert_eq!(again.render(), d.render());
    }

    #[test]
    fn evaluates_realization() {
        let d = parse("realize L[n >= -1] = -q a+^(n+1) a-\nrelation LL(l,k): L[l] L[k] = 0").unwrap();
        let eng = FileEngine::new("t", &d).unwrap();
        let l1 = eng.realize_letter(ExtLetter::new(Family::L, 1)).unwrap();
        assert_eq!(l1, crate::oscillator::realize(GenKind::L, 1, crate::oscillator::DeformationMode::Q).unwrap());
        assert!(eng.instance("LL", -2, 0).unwrap_err().is_inadmissible());
    }
}
