//! Sparse multivariate polynomials over `Q(sqrt(d))`.
//!
//! Variables are identified by index; names live in a [`VarSet`] and are only
//! needed for display and parsing. Smaller indices rank higher in every
//! monomial order.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::AlgebraError;
use crate::ring::Ring;
use crate::scalar::FieldScalar;

/// Exponent vector with trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Monomial(Vec<u16>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(i: usize) -> Self {
        let mut e = vec![0; i + 1];
        e[i] = 1;
        Monomial(e)
    }

    pub fn from_exponents(mut e: Vec<u16>) -> Self {
        while e.last() == Some(&0) {
            e.pop();
        }
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn exp(&self, i: usize) -> u16 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        Monomial((0..n).map(|i| self.exp(i) + o.exp(i)).collect())
    }

    pub fn divides(&self, o: &Self) -> bool {
        self.0.len() <= o.0.len() && self.0.iter().zip(&o.0).all(|(a, b)| a <= b)
    }

    /// `o / self`, assuming `self` divides `o`.
    pub fn quotient_of(&self, o: &Self) -> Self {
        Self::from_exponents((0..o.0.len()).map(|i| o.exp(i) - self.exp(i)).collect())
    }

    pub fn lcm(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        Monomial((0..n).map(|i| self.exp(i).max(o.exp(i))).collect())
    }

    pub fn coprime(&self, o: &Self) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Variables with nonzero exponent.
    pub fn support(&self) -> impl Iterator<Item = (usize, u16)> + '_ {
        self.0.iter().enumerate().filter(|(_, e)| **e > 0).map(|(i, e)| (i, *e))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum MonomialOrder {
    Lex,
    GrLex,
    #[default]
    GrevLex,
}

impl MonomialOrder {
    pub fn cmp(self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::GrLex => a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)),
            MonomialOrder::GrevLex => a.degree().cmp(&b.degree()).then_with(|| {
                let n = a.0.len().max(b.0.len());
                for i in (0..n).rev() {
                    match a.exp(i).cmp(&b.exp(i)) {
                        Ordering::Equal => continue,
                        other => return other.reverse(),
                    }
                }
                Ordering::Equal
            }),
        }
    }
}

/// Polynomial in canonical form: no zero coefficients are stored.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, FieldScalar>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: FieldScalar) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn var(i: usize) -> Self {
        Self::term(Monomial::var(i), FieldScalar::one())
    }

    pub fn term(m: Monomial, c: FieldScalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { terms }
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Monomial, FieldScalar)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in it {
            p.add_term(m, &c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &FieldScalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> FieldScalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// The constant value, if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<FieldScalar> {
        match self.terms.len() {
            0 => Some(FieldScalar::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Total degree in the given variables.
    pub fn degree_in(&self, vars: &[usize]) -> u32 {
        self.terms.keys().map(|m| vars.iter().map(|&v| m.exp(v) as u32).sum()).max().unwrap_or(0)
    }

    pub fn variables(&self) -> Vec<usize> {
        let mut vs: Vec<usize> = self.terms.keys().flat_map(|m| m.support().map(|(i, _)| i)).collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    pub fn add_term(&mut self, m: Monomial, c: &FieldScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let (big, small) = if self.len() >= o.len() { (self, o) } else { (o, self) };
        let mut r = big.clone();
        for (m, c) in &small.terms {
            r.add_term(m.clone(), c);
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), &-c);
        }
        r
    }

    pub fn neg(&self) -> Self {
        MultiPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = Self::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                r.add_term(m1.mul(m2), &(c1 * c2));
            }
        }
        r
    }

    pub fn scale(&self, k: &FieldScalar) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        MultiPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial, k: &FieldScalar) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        MultiPoly { terms: self.terms.iter().map(|(t, c)| (t.mul(m), c * k)).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::constant(FieldScalar::one()), |acc, _| acc.mul(self))
    }

    /// Leading term under `order`.
    pub fn leading(&self, order: MonomialOrder) -> Option<(&Monomial, &FieldScalar)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    /// Scales so the leading coefficient is 1.
    pub fn monic(&self, order: MonomialOrder) -> Self {
        match self.leading(order) {
            Some((_, c)) => self.scale(&c.inv().expect("nonzero coefficient")),
            None => Self::zero(),
        }
    }

    /// Evaluates at a full assignment; missing variables count as 0.
    pub fn eval(&self, point: &[FieldScalar]) -> FieldScalar {
        let mut acc = FieldScalar::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, e) in m.support() {
                let x = point.get(i).cloned().unwrap_or_default();
                t = &t * &x.pow(e as u32);
            }
            acc += &t;
        }
        acc
    }

    /// Replaces variables by polynomials; unmapped variables stay.
    pub fn substitute(&self, map: &BTreeMap<usize, MultiPoly>) -> Self {
        let mut r = Self::zero();
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(c.clone());
            let mut rest = Vec::new();
            for (i, e) in m.support() {
                match map.get(&i) {
                    Some(p) => t = t.mul(&p.pow(e as u32)),
                    None => {
                        if rest.len() <= i {
                            rest.resize(i + 1, 0);
                        }
                        rest[i] = e;
                    }
                }
            }
            let t = t.mul_monomial(&Monomial::from_exponents(rest), &FieldScalar::one());
            r = r.add(&t);
        }
        r
    }

    /// Substitutes scalar values for some variables.
    pub fn substitute_values(&self, values: &BTreeMap<usize, FieldScalar>) -> Self {
        let map = values.iter().map(|(&k, v)| (k, MultiPoly::constant(v.clone()))).collect();
        self.substitute(&map)
    }

    /// Splits the polynomial by its dependence on `var`: coefficient of
    /// `var^1` and the `var`-free part. Returns `None` if `var` occurs with
    /// exponent above 1.
    pub fn split_linear(&self, var: usize) -> Option<(MultiPoly, MultiPoly)> {
        let mut lin = MultiPoly::zero();
        let mut rest = MultiPoly::zero();
        for (m, c) in &self.terms {
            match m.exp(var) {
                0 => rest.add_term(m.clone(), c),
                1 => {
                    let mut e = m.0.clone();
                    e[var] = 0;
                    lin.add_term(Monomial::from_exponents(e), c);
                }
                _ => return None,
            }
        }
        Some((lin, rest))
    }

    /// Exact division; `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        let order = MonomialOrder::Lex;
        let (lm, lc) = divisor.leading(order).map(|(m, c)| (m.clone(), c.clone()))?;
        let lc_inv = lc.inv().ok()?;
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero();
        while let Some((m, c)) = rem.leading(order).map(|(m, c)| (m.clone(), c.clone())) {
            if !lm.divides(&m) {
                return None;
            }
            let qm = lm.quotient_of(&m);
            let qc = &c * &lc_inv;
            rem = rem.sub(&divisor.mul_monomial(&qm, &qc));
            quot.add_term(qm, &qc);
        }
        Some(quot)
    }

    /// Terms sorted in decreasing order.
    pub fn sorted_terms(&self, order: MonomialOrder) -> Vec<(Monomial, FieldScalar)> {
        let mut v: Vec<(Monomial, FieldScalar)> = self.terms.iter().map(|(m, c)| (m.clone(), c.clone())).collect();
        v.sort_by(|a, b| order.cmp(&b.0, &a.0));
        v
    }
}

impl Ring for MultiPoly {
    fn zero() -> Self {
        MultiPoly::zero()
    }
    fn one() -> Self {
        MultiPoly::constant(FieldScalar::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn plus(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn minus(&self, other: &Self) -> Self {
        self.sub(other)
    }
    fn times(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn negated(&self) -> Self {
        self.neg()
    }
    fn from_scalar(c: &FieldScalar) -> Self {
        MultiPoly::constant(c.clone())
    }
    fn scaled(&self, c: &FieldScalar) -> Self {
        self.scale(c)
    }
    fn add_assign_ref(&mut self, other: &Self) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c);
        }
    }
}

/// Ordered variable names.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct VarSet {
    names: Vec<String>,
}

impl VarSet {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Self {
        VarSet { names: names.into_iter().map(Into::into).collect() }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Appends a variable (or returns the existing index).
    pub fn push(&mut self, name: &str) -> usize {
        if let Some(i) = self.index(name) {
            return i;
        }
        self.names.push(name.to_string());
        self.names.len() - 1
    }

    pub fn var(&self, name: &str) -> Option<MultiPoly> {
        self.index(name).map(MultiPoly::var)
    }

    fn monomial_string(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (i, e) in m.support() {
            let name = self.names.get(i).cloned().unwrap_or_else(|| alloc::format!("x{i}"));
            if e == 1 {
                parts.push(name);
            } else {
                parts.push(alloc::format!("{name}**{e}"));
            }
        }
        parts.join("*")
    }

    /// Renders terms in decreasing `order`, e.g. `2*x**2*y - sqrt(3)*z + 1`.
    pub fn render(&self, p: &MultiPoly, order: MonomialOrder) -> String {
        if p.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (m, c)) in p.sorted_terms(order).into_iter().enumerate() {
            // compound p+q*sqrt(d) coefficients are parenthesized, never negated
            let compound = !c.is_rational() && !num_traits::Zero::is_zero(c.rational_part());
            let neg = !compound && c.signum() < 0;
            let mag = if neg { -c.clone() } else { c.clone() };
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let cs = if compound { alloc::format!("({mag})") } else { alloc::format!("{mag}") };
            if m.is_one() {
                out.push_str(&cs);
            } else if mag.is_one() {
                out.push_str(&self.monomial_string(&m));
            } else {
                out.push_str(&cs);
                out.push('*');
                out.push_str(&self.monomial_string(&m));
            }
        }
        out
    }

    /// Parses `+ - * ^ **`, parentheses, rationals, decimals, `sqrt(n)` and
    /// variable names. Unknown names are appended to the set. A name with an
    /// underscore may carry a `^n` suffix (`C_1_2^3`); raise such a name to
    /// a power with `**`.
    pub fn parse(&mut self, text: &str) -> Result<MultiPoly, AlgebraError> {
        let tokens = tokenize(text)?;
        let mut parser = Parser { tokens, pos: 0, vars: self };
        let p = parser.expr()?;
        if parser.pos != parser.tokens.len() {
            return Err(AlgebraError::ParsePoly(alloc::format!("trailing input in `{text}`")));
        }
        Ok(p)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Sqrt(u64),
    Op(char),
    Pow,
}

fn tokenize(text: &str) -> Result<Vec<Tok>, AlgebraError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            out.push(Tok::Num(chars[start..i].iter().collect()));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            // indexed names such as C_1_2^3 keep their upper index
            if chars[start..i].contains(&'_')
                && chars.get(i) == Some(&'^')
                && chars.get(i + 1).is_some_and(char::is_ascii_digit)
            {
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
            }
            let word: String = chars[start..i].iter().collect();
            if word == "sqrt" && chars.get(i) == Some(&'(') {
                let close = chars[i..]
                    .iter()
                    .position(|&c| c == ')')
                    .ok_or_else(|| AlgebraError::ParsePoly("unclosed sqrt(".into()))?;
                let inner: String = chars[i + 1..i + close].iter().collect();
                let d: u64 = inner.trim().parse().map_err(|_| AlgebraError::ParsePoly(alloc::format!("sqrt({inner})")))?;
                out.push(Tok::Sqrt(d));
                i += close + 1;
            } else {
                out.push(Tok::Ident(word));
            }
        } else if c == '*' && chars.get(i + 1) == Some(&'*') {
            out.push(Tok::Pow);
            i += 2;
        } else if c == '^' {
            out.push(Tok::Pow);
            i += 1;
        } else if "+-*/()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(AlgebraError::ParsePoly(alloc::format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Tok>,
    pos: usize,
    vars: &'a mut VarSet,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos)
    }

    fn expr(&mut self) -> Result<MultiPoly, AlgebraError> {
        let mut acc = self.term()?;
        while let Some(Tok::Op(c @ ('+' | '-'))) = self.peek().cloned() {
            self.pos += 1;
            let t = self.term()?;
            acc = if c == '+' { acc.add(&t) } else { acc.sub(&t) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<MultiPoly, AlgebraError> {
        let mut acc = self.unary()?;
        while let Some(Tok::Op(c @ ('*' | '/'))) = self.peek().cloned() {
            self.pos += 1;
            let f = self.unary()?;
            if c == '*' {
                acc = acc.mul(&f);
            } else {
                let k = f
                    .as_constant()
                    .ok_or_else(|| AlgebraError::ParsePoly("division by a non-constant".into()))?;
                acc = acc.scale(&k.inv()?);
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<MultiPoly, AlgebraError> {
        match self.peek() {
            Some(Tok::Op('-')) => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some(Tok::Op('+')) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<MultiPoly, AlgebraError> {
        let base = self.atom()?;
        if let Some(Tok::Pow) = self.peek() {
            self.pos += 1;
            let Some(Tok::Num(n)) = self.peek().cloned() else {
                return Err(AlgebraError::ParsePoly("exponent must be an integer".into()));
            };
            self.pos += 1;
            let e: u32 = n.parse().map_err(|_| AlgebraError::ParsePoly(alloc::format!("bad exponent {n}")))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MultiPoly, AlgebraError> {
        let tok = self.peek().cloned().ok_or_else(|| AlgebraError::ParsePoly("unexpected end of input".into()))?;
        self.pos += 1;
        match tok {
            Tok::Num(n) => Ok(MultiPoly::constant(n.parse()?)),
            Tok::Sqrt(d) => Ok(MultiPoly::constant(alloc::format!("sqrt({d})").parse()?)),
            Tok::Ident(name) => Ok(MultiPoly::var(self.vars.push(&name))),
            Tok::Op('(') => {
                let e = self.expr()?;
                if self.peek() != Some(&Tok::Op(')')) {
                    return Err(AlgebraError::ParsePoly("expected `)`".into()));
                }
                self.pos += 1;
                Ok(e)
            }
            other => Err(AlgebraError::ParsePoly(alloc::format!("unexpected token {other:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_on_textbook_monomials() {
        // x > y > z; compare x*y^2 vs y^3*z ... (Cox-Little-O'Shea style)
        let a = Monomial::from_exponents(vec![1, 2, 0]);
        let b = Monomial::from_exponents(vec![0, 3, 1]);
        assert_eq!(MonomialOrder::Lex.cmp(&a, &b), Ordering::Greater);
        assert_eq!(MonomialOrder::GrLex.cmp(&a, &b), Ordering::Less);
        // x^4 y^7 z vs x^4 y^2 z^3 (both degree 12 / 9) -> graded
        let c = Monomial::from_exponents(vec![4, 7, 1]);
        let d = Monomial::from_exponents(vec![4, 2, 3]);
        assert_eq!(MonomialOrder::GrevLex.cmp(&c, &d), Ordering::Greater);
        // same degree: x y^5 z^2 vs x^4 y z^3 -> grevlex: smaller z wins
        let e = Monomial::from_exponents(vec![1, 5, 2]);
        let f = Monomial::from_exponents(vec![4, 1, 3]);
        assert_eq!(MonomialOrder::GrevLex.cmp(&e, &f), Ordering::Greater);
        assert_eq!(MonomialOrder::GrLex.cmp(&e, &f), Ordering::Less);
    }

    #[test]
    fn parse_render_eval() {
        let mut vs = VarSet::new(["x", "y"]);
        let p = vs.parse("x^2 + 2*x*y - 1/3 + sqrt(3)*y").unwrap();
        assert_eq!(vs.render(&p, MonomialOrder::GrevLex), "x**2 + 2*x*y + sqrt(3)*y - 1/3");
        let v = p.eval(&[FieldScalar::from_int(1), FieldScalar::from_int(2)]);
        assert_eq!(v, "14/3+2*sqrt(3)".parse().unwrap());
        assert!(vs.parse("x +").is_err());
        let q = vs.parse("z*x").unwrap();
        assert_eq!(vs.len(), 3);
        assert_eq!(q, MultiPoly::var(0).mul(&MultiPoly::var(2)));
    }

    #[test]
    fn indexed_names_keep_their_suffix() {
        let mut vs = VarSet::new(["C_1_2^3"]);
        let p = vs.parse("C_1_2^3**2 - C_1_3^4").unwrap();
        assert_eq!(vs.len(), 2);
        assert_eq!(vs.render(&p, MonomialOrder::GrevLex), "C_1_2^3**2 - C_1_3^4");
        assert_eq!(vs.parse("x_1^2").unwrap(), MultiPoly::var(2));
    }

    #[test]
    fn exact_division() {
        let mut vs = VarSet::new(["x", "y"]);
        let a = vs.parse("(x - y)*(x + 2*y + 1)").unwrap();
        let b = vs.parse("x - y").unwrap();
        assert_eq!(a.div_exact(&b), Some(vs.parse("x + 2*y + 1").unwrap()));
        assert_eq!(vs.parse("x + 1").unwrap().div_exact(&b), None);
    }

    #[test]
    fn substitution() {
        let mut vs = VarSet::new(["x", "y", "z"]);
        let p = vs.parse("x*y + z").unwrap();
        let mut map = BTreeMap::new();
        map.insert(0, vs.parse("y + 1").unwrap());
        assert_eq!(p.substitute(&map), vs.parse("y^2 + y + z").unwrap());
    }
}
