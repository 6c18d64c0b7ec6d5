//! Sparse weighted-homogeneous polynomials in four variables over the rationals.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::PolyError;

/// Number of variables of the ambient weighted projective space P(w1, w2, w3, w4).
pub const NVARS: usize = 4;

pub type Rational = BigRational;

pub(crate) fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Weights of P(w1..w4) together with the degree of the hypersurface under study.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WeightSystem {
    weights: [u32; NVARS],
    degree: u32,
    sigma: u32,
}

impl WeightSystem {
    /// Rejects zero weights, a zero degree and non-reduced weights (gcd > 1).
    pub fn new(weights: [u32; NVARS], degree: u32) -> Result<Self, PolyError> {
        if weights.contains(&0) {
            return Err(PolyError::InvalidWeights {
                weights,
                reason: "weights must be positive".into(),
            });
        }
        let g = weights.iter().fold(0u32, |acc, &w| acc.gcd(&w));
        if g != 1 {
            return Err(PolyError::InvalidWeights {
                weights,
                reason: format!("weights are not reduced (gcd {g})"),
            });
        }
        if degree == 0 {
            return Err(PolyError::InvalidDegree);
        }
        Ok(WeightSystem {
            weights,
            degree,
            sigma: weights.iter().sum(),
        })
    }

    pub fn weights(&self) -> [u32; NVARS] {
        self.weights
    }

    pub fn weight(&self, i: usize) -> u32 {
        self.weights[i]
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Sum of the weights.
    pub fn sigma(&self) -> u32 {
        self.sigma
    }

    /// Same weights, different hypersurface degree.
    pub fn with_degree(&self, degree: u32) -> Result<Self, PolyError> {
        WeightSystem::new(self.weights, degree)
    }
}

impl fmt::Display for WeightSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.weights;
        write!(f, "({a},{b},{c},{d};{})", self.degree)
    }
}

/// Exponent vector x1^k1 x2^k2 x3^k3 x4^k4.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
pub struct Monomial(pub [u32; NVARS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; NVARS]);

    pub fn var(i: usize) -> Self {
        let mut e = [0; NVARS];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> [u32; NVARS] {
        self.0
    }

    pub fn is_one(&self) -> bool {
        self.0 == [0; NVARS]
    }

    pub fn weighted_degree(&self, ws: &WeightSystem) -> u32 {
        weighted_degree(self, ws)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0) {
            *a += b;
        }
        Monomial(e)
    }

    /// True when `self` divides `other`.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0).all(|(&a, b)| a <= b)
    }

    /// `other / self`, if exact.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let mut e = other.0;
        for (a, b) in e.iter_mut().zip(self.0) {
            *a -= b;
        }
        Some(Monomial(e))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0) {
            *a = (*a).max(b);
        }
        Monomial(e)
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0).all(|(&a, b)| a == 0 || b == 0)
    }

    /// If this is a pure power x_i^k with k >= 1, returns (i, k).
    pub fn pure_power(&self) -> Option<(usize, u32)> {
        let mut found = None;
        for (i, &k) in self.0.iter().enumerate() {
            if k > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some((i, k));
            }
        }
        found
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &k) in self.0.iter().enumerate() {
            if k == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if k == 1 {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "x{}^{}", i + 1, k)?;
            }
        }
        Ok(())
    }
}

/// Sum of k_i * w_i.
pub fn weighted_degree(m: &Monomial, ws: &WeightSystem) -> u32 {
    m.0.iter().zip(ws.weights).map(|(&k, w)| k * w).sum()
}

/// Canonical listing order: weighted degree descending, then exponent tuples
/// lexicographically descending.
pub fn canonical_cmp(a: &Monomial, b: &Monomial, ws: &WeightSystem) -> Ordering {
    weighted_degree(b, ws)
        .cmp(&weighted_degree(a, ws))
        .then_with(|| b.0.cmp(&a.0))
}

/// All monomials of weighted degree exactly `k`, in canonical order.
pub fn monomials_of_degree(ws: &WeightSystem, k: u32) -> Vec<Monomial> {
    monomials_in_box(ws, k, [u32::MAX; NVARS])
}

/// Monomials of weighted degree `k` with every exponent `k_i < caps[i]`, in canonical order.
pub(crate) fn monomials_in_box(ws: &WeightSystem, k: u32, caps: [u32; NVARS]) -> Vec<Monomial> {
    let w = ws.weights;
    let mut out = Vec::new();
    let mut e = [0u32; NVARS];
    fn rec(
        i: usize,
        rest: u32,
        w: &[u32; NVARS],
        caps: &[u32; NVARS],
        e: &mut [u32; NVARS],
        out: &mut Vec<Monomial>,
    ) {
        if i == NVARS - 1 {
            if rest % w[i] == 0 && rest / w[i] < caps[i] {
                e[i] = rest / w[i];
                out.push(Monomial(*e));
            }
            return;
        }
        let hi = (rest / w[i]).min(caps[i].saturating_sub(1));
        if caps[i] == 0 {
            return;
        }
        for ki in (0..=hi).rev() {
            e[i] = ki;
            rec(i + 1, rest - ki * w[i], w, caps, e, out);
        }
        e[i] = 0;
    }
    rec(0, k, &w, &caps, &mut e, &mut out);
    out
}

/// Finite sum of rational multiples of monomials, tagged with its weight system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedPolynomial {
    ws: WeightSystem,
    terms: BTreeMap<Monomial, Rational>,
}

impl WeightedPolynomial {
    pub fn zero(ws: WeightSystem) -> Self {
        WeightedPolynomial {
            ws,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ws: WeightSystem, c: Rational) -> Self {
        Self::term(ws, Monomial::ONE, c)
    }

    pub fn term(ws: WeightSystem, m: Monomial, c: Rational) -> Self {
        let mut p = Self::zero(ws);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn monomial(ws: WeightSystem, m: Monomial) -> Self {
        Self::term(ws, m, Rational::one())
    }

    pub fn var(ws: WeightSystem, i: usize) -> Self {
        Self::monomial(ws, Monomial::var(i))
    }

    /// Builds a polynomial from (monomial, coefficient) pairs, combining like terms.
    pub fn from_terms<I>(ws: WeightSystem, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Self::zero(ws);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn weight_system(&self) -> &WeightSystem {
        &self.ws
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Number of terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// The common weighted degree of all terms; `None` for zero or inhomogeneous polynomials.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|m| weighted_degree(m, &self.ws));
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    /// Zero counts as homogeneous.
    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.ws);
        }
        WeightedPolynomial {
            ws: self.ws,
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        WeightedPolynomial {
            ws: self.ws,
            terms: self
                .terms
                .iter()
                .map(|(t, a)| (t.mul(m), a.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut p = Self::zero(self.ws);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                p.add_term(m1.mul(m2), c1 * c2);
            }
        }
        p
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::constant(self.ws, Rational::one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Formal derivative with respect to x_{i+1}.
    pub fn partial_derivative(&self, i: usize) -> Self {
        let mut p = Self::zero(self.ws);
        for (m, c) in &self.terms {
            let k = m.0[i];
            if k == 0 {
                continue;
            }
            let mut e = m.0;
            e[i] -= 1;
            p.add_term(Monomial(e), c * rat(i64::from(k)));
        }
        p
    }

    /// Terms sorted in canonical order.
    pub fn canonical_terms(&self) -> Vec<(Monomial, Rational)> {
        let mut v: Vec<_> = self.terms.iter().map(|(m, c)| (*m, c.clone())).collect();
        v.sort_by(|a, b| canonical_cmp(&a.0, &b.0, &self.ws));
        v
    }

    /// Canonical text rendering, parseable by [`parse_polynomial`].
    pub fn render(&self) -> String {
        self.to_string()
    }
}

impl std::ops::Add for &WeightedPolynomial {
    type Output = WeightedPolynomial;
    fn add(self, rhs: &WeightedPolynomial) -> WeightedPolynomial {
        let mut p = self.clone();
        for (m, c) in &rhs.terms {
            p.add_term(*m, c.clone());
        }
        p
    }
}

impl std::ops::Sub for &WeightedPolynomial {
    type Output = WeightedPolynomial;
    fn sub(self, rhs: &WeightedPolynomial) -> WeightedPolynomial {
        let mut p = self.clone();
        for (m, c) in &rhs.terms {
            p.add_term(*m, -c.clone());
        }
        p
    }
}

impl std::ops::Neg for &WeightedPolynomial {
    type Output = WeightedPolynomial;
    fn neg(self) -> WeightedPolynomial {
        self.scale(&-Rational::one())
    }
}

impl std::ops::Mul for &WeightedPolynomial {
    type Output = WeightedPolynomial;
    fn mul(self, rhs: &WeightedPolynomial) -> WeightedPolynomial {
        WeightedPolynomial::mul(self, rhs)
    }
}

/// Renders a rational as `p` or `p/q`.
pub fn format_rational(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for WeightedPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.canonical_terms().iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (idx, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{}", format_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", format_rational(&abs))?;
            }
        }
        Ok(())
    }
}

/// Sum of pure powers x_i^(d / w_i).
pub fn fermat_polynomial(ws: &WeightSystem) -> Result<WeightedPolynomial, PolyError> {
    let d = ws.degree();
    let mut p = WeightedPolynomial::zero(*ws);
    for i in 0..NVARS {
        let w = ws.weight(i);
        if d % w != 0 {
            return Err(PolyError::NoFermatMember {
                ws: *ws,
                variable: i + 1,
            });
        }
        let mut e = [0; NVARS];
        e[i] = d / w;
        p.add_term(Monomial(e), Rational::one());
    }
    Ok(p)
}

// ---------------------------------------------------------------------------
// Parser

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Rational),
    Var(usize),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, PolyError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => out.push((start, Tok::Plus)),
            b'-' => out.push((start, Tok::Minus)),
            b'*' => out.push((start, Tok::Star)),
            b'^' => out.push((start, Tok::Caret)),
            b'(' => out.push((start, Tok::LParen)),
            b')' => out.push((start, Tok::RParen)),
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let numer: BigInt = text[start..i].parse().expect("digits");
                let mut value = Rational::from_integer(numer);
                if i < bytes.len() && bytes[i] == b'/' {
                    let slash = i;
                    i += 1;
                    let ds = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    if ds == i {
                        return Err(PolyError::Syntax {
                            pos: slash,
                            message: "expected denominator after '/'".into(),
                        });
                    }
                    let denom: BigInt = text[ds..i].parse().expect("digits");
                    if denom.is_zero() {
                        return Err(PolyError::Syntax {
                            pos: ds,
                            message: "zero denominator".into(),
                        });
                    }
                    value /= Rational::from_integer(denom);
                }
                out.push((start, Tok::Num(value)));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                let name = &text[start..i];
                let idx = match name {
                    "x1" => 0,
                    "x2" => 1,
                    "x3" => 2,
                    "x4" => 3,
                    _ => {
                        return Err(PolyError::UnknownVariable {
                            pos: start,
                            name: name.to_string(),
                        })
                    }
                };
                out.push((start, Tok::Var(idx)));
                continue;
            }
            _ => {
                return Err(PolyError::Syntax {
                    pos: start,
                    message: format!(
                        "unexpected character {:?}",
                        text[start..].chars().next().unwrap()
                    ),
                })
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    ws: WeightSystem,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, PolyError> {
        Err(PolyError::Syntax {
            pos: self.here(),
            message: message.into(),
        })
    }

    fn expr(&mut self) -> Result<WeightedPolynomial, PolyError> {
        let mut acc = WeightedPolynomial::zero(self.ws);
        let mut sign = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                -1
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        loop {
            let t = self.term()?;
            acc = if sign < 0 { &acc - &t } else { &acc + &t };
            match self.peek() {
                Some(Tok::Plus) => sign = 1,
                Some(Tok::Minus) => sign = -1,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<WeightedPolynomial, PolyError> {
        let mut acc = self.factor()?;
        while let Some(Tok::Star) = self.peek() {
            self.pos += 1;
            let f = self.factor()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<WeightedPolynomial, PolyError> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            let at = self.here();
            match self.peek().cloned() {
                Some(Tok::Minus) => return Err(PolyError::NegativeExponent { pos: at }),
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    if !n.is_integer() {
                        return Err(PolyError::Syntax {
                            pos: at,
                            message: "exponent must be a non-negative integer".into(),
                        });
                    }
                    let k: u32 = n.numer().try_into().map_err(|_| PolyError::Syntax {
                        pos: at,
                        message: "exponent too large".into(),
                    })?;
                    return Ok(base.pow(k));
                }
                _ => return self.err("expected exponent after '^'"),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<WeightedPolynomial, PolyError> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(WeightedPolynomial::constant(self.ws, n))
            }
            Some(Tok::Var(i)) => {
                self.pos += 1;
                Ok(WeightedPolynomial::var(self.ws, i))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.expr()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.pos += 1;
                        Ok(e)
                    }
                    _ => self.err("expected ')'"),
                }
            }
            Some(_) => self.err("expected a number, variable or '('"),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses a polynomial in `x1..x4` with integer or `p/q` coefficients and `+ - * ^`.
pub fn parse_polynomial(text: &str, ws: &WeightSystem) -> Result<WeightedPolynomial, PolyError> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
        ws: *ws,
    };
    if p.peek().is_none() {
        return p.err("empty polynomial");
    }
    let poly = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("unexpected token");
    }
    Ok(poly)
}
