//! Univariate polynomials over the rationals, used for pencils A*t + B and
//! for arithmetic in Q[t]/(g).

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::BareissRing;
use crate::polyalg::{format_rational, Rational};

/// Coefficients stored low degree first, with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The polynomial `t`.
    pub fn t() -> Self {
        Self::from_coeffs(vec![Rational::zero(), Rational::one()])
    }

    /// `a*t + b`.
    pub fn linear(a: Rational, b: Rational) -> Self {
        Self::from_coeffs(vec![b, a])
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(
            coeffs
                .iter()
                .map(|&c| Rational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn lead(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::from_coeffs(
            (0..n)
                .map(|i| {
                    let a = self.coeffs.get(i);
                    let b = other.coeffs.get(i);
                    match (a, b) {
                        (Some(a), Some(b)) => a + b,
                        (Some(a), None) => a.clone(),
                        (None, Some(b)) => b.clone(),
                        (None, None) => unreachable!(),
                    }
                })
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        UniPoly {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Self::from_coeffs(out)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let inv = d.lead().unwrap().recip();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![Rational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                if !dc.is_zero() {
                    r[k + j] -= &c * dc;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Self::from_coeffs(q), Self::from_coeffs(r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            Some(l) => self.scale(&l.recip()),
            None => Self::zero(),
        }
    }

    /// Monic greatest common divisor; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Inverse modulo `g`, if `self` and `g` are coprime.
    pub fn inverse_mod(&self, g: &Self) -> Option<Self> {
        // Extended Euclid tracking only the coefficient of self.
        let (mut r0, mut r1) = (g.clone(), self.rem(g));
        let (mut s0, mut s1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.sub(&q.mul(&s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        if r0.degree() != Some(0) {
            return None;
        }
        let c = r0.coeffs[0].recip();
        Some(s0.scale(&c).rem(g))
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    /// Product of the distinct monic irreducible factors.
    pub fn squarefree_part(&self) -> Self {
        if self.is_constant() {
            return Self::one();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// Integer coefficients, content removed, positive leading coefficient.
    pub fn primitive_integer_coeffs(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let l = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&l / c.denom()))
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let sign = if ints.last().unwrap().is_negative() {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        for c in &mut ints {
            *c = &*c / &g * &sign;
        }
        ints
    }
}

impl BareissRing for UniPoly {
    fn zero_elem() -> Self {
        UniPoly::zero()
    }
    fn one_elem() -> Self {
        UniPoly::one()
    }
    fn is_zero_elem(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn mul(&self, other: &Self) -> Self {
        UniPoly::mul(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        UniPoly::sub(self, other)
    }
    fn div_exact(&self, other: &Self) -> Self {
        let (q, r) = self.div_rem(other);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let s = if first {
                format_rational(c)
            } else if c.is_negative() {
                format!(" - {}", format_rational(&-c))
            } else {
                format!(" + {}", format_rational(c))
            };
            first = false;
            match i {
                0 => write!(f, "{s}")?,
                1 => write!(f, "{s}*t")?,
                _ => write!(f, "{s}*t^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::rat;

    #[test]
    fn division_and_gcd() {
        let a = UniPoly::from_i64(&[-1, 0, 1]); // t^2 - 1
        let b = UniPoly::from_i64(&[1, 1]); // t + 1
        let (q, r) = a.div_rem(&b);
        assert_eq!(q, UniPoly::from_i64(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(a.gcd(&UniPoly::from_i64(&[1, 2, 1])), b);
        assert_eq!(a.gcd(&UniPoly::from_i64(&[2, 1])), UniPoly::one());
    }

    #[test]
    fn squarefree() {
        // (t+1)^3 * t
        let p = UniPoly::from_i64(&[1, 1])
            .mul(&UniPoly::from_i64(&[1, 1]))
            .mul(&UniPoly::from_i64(&[1, 1]))
            .mul(&UniPoly::t());
        assert_eq!(p.squarefree_part(), UniPoly::from_i64(&[0, 1, 1]));
        assert_eq!(UniPoly::from_i64(&[5]).squarefree_part(), UniPoly::one());
    }

    #[test]
    fn inverse_modulo() {
        let g = UniPoly::from_i64(&[1, 0, 1]); // t^2 + 1
        let x = UniPoly::from_i64(&[1, 1]);
        let inv = x.inverse_mod(&g).unwrap();
        assert_eq!(x.mul(&inv).rem(&g), UniPoly::one());
        let g2 = UniPoly::from_i64(&[-1, 0, 1]);
        assert!(x.inverse_mod(&g2).is_none());
    }

    #[test]
    fn evaluation_and_content() {
        let p = UniPoly::from_coeffs(vec![Rational::new(1.into(), 2.into()), rat(-3)]);
        assert_eq!(p.eval(&rat(2)), Rational::new((-11).into(), 2.into()));
        assert_eq!(
            p.primitive_integer_coeffs(),
            vec![BigInt::from(-1), BigInt::from(6)]
        );
        assert_eq!(p.to_string(), "-3*t + 1/2");
    }
}
