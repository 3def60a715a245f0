//! Dense univariate polynomials over a generic exact field.
//!
//! Used for minimal polynomials, algebraic-number representatives,
//! eliminants and the univariate legs of factorization. The zero
//! polynomial is the empty coefficient vector.

use std::fmt;

use crate::field::Field;
use crate::rational::Rational;

#[derive(Clone, PartialEq)]
pub struct UniPoly<K: Field> {
    /// Coefficients, low degree first, no trailing zeros.
    coeffs: Vec<K>,
}

impl<K: Field> UniPoly<K> {
    pub fn new(mut coeffs: Vec<K>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: K) -> Self {
        UniPoly::new(vec![c])
    }

    /// `c * x^n`.
    pub fn monomial(c: K, n: usize) -> Self {
        if c.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![c.zero_like(); n + 1];
        coeffs[n] = c;
        UniPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    /// Degree of a nonzero polynomial; panics on zero.
    pub fn deg(&self) -> usize {
        self.degree().expect("degree of zero polynomial")
    }

    pub fn coeffs(&self) -> &[K] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Option<&K> {
        self.coeffs.get(i)
    }

    pub fn lc(&self) -> &K {
        self.coeffs.last().expect("leading coefficient of zero")
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let c = match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => a.add(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            };
            out.push(c);
        }
        UniPoly::new(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn scale(&self, k: &K) -> Self {
        if k.is_zero() {
            return UniPoly::zero();
        }
        UniPoly::new(self.coeffs.iter().map(|c| c.mul(k)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let zero = self.coeffs[0].zero_like();
        let mut out = vec![zero; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        UniPoly::new(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        if e == 0 {
            let one = self
                .coeffs
                .first()
                .map(|c| c.one_like())
                .expect("pow of zero polynomial requires context");
            return UniPoly::constant(one);
        }
        let mut acc = self.clone();
        for _ in 1..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Division with remainder by a nonzero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let dlc_inv = divisor.lc().inv().expect("nonzero lc");
        let d = divisor.deg();
        let mut rem = self.clone();
        let mut quo_coeffs: Vec<K> = Vec::new();
        while let Some(rd) = rem.degree() {
            if rd < d {
                break;
            }
            let factor = rem.lc().mul(&dlc_inv);
            let shift = rd - d;
            if quo_coeffs.len() < shift + 1 {
                quo_coeffs.resize(shift + 1, factor.zero_like());
            }
            quo_coeffs[shift] = quo_coeffs[shift].add(&factor);
            let sub = divisor.scale(&factor).shift(shift);
            rem = rem.sub(&sub);
        }
        (UniPoly::new(quo_coeffs), rem)
    }

    /// Multiply by `x^n`.
    pub fn shift(&self, n: usize) -> Self {
        if self.is_zero() || n == 0 {
            return self.clone();
        }
        let zero = self.coeffs[0].zero_like();
        let mut coeffs = vec![zero; n];
        coeffs.extend(self.coeffs.iter().cloned());
        UniPoly { coeffs }
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.lc().inv().expect("nonzero lc");
        self.scale(&inv)
    }

    /// Monic gcd by the Euclidean algorithm; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended Euclid: returns `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn extended_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let mut r0 = self.clone();
        let mut r1 = other.clone();
        let ctx = self
            .coeffs
            .first()
            .or_else(|| other.coeffs.first())
            .expect("extended_gcd of two zero polynomials")
            .clone();
        let one = UniPoly::constant(ctx.one_like());
        let zero = UniPoly::zero();
        let (mut s0, mut s1) = (one.clone(), zero.clone());
        let (mut t0, mut t1) = (zero, one);
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let lcinv = r0.lc().inv().expect("nonzero");
        (
            r0.scale(&lcinv),
            s0.scale(&lcinv),
            t0.scale(&lcinv),
        )
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero();
        }
        let out = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.mul(&c.embed_rational(&Rational::from_int(i as i64))))
            .collect();
        UniPoly::new(out)
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &K) -> K {
        let mut acc = x.zero_like();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// Composition `self(g)`.
    pub fn compose(&self, g: &Self) -> Self {
        let mut acc = UniPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(g).add(&UniPoly::constant(c.clone()));
        }
        acc
    }

    /// `self / gcd(self, self')`: the product of the distinct irreducible
    /// factors, monic. Characteristic zero only.
    pub fn squarefree_part(&self) -> Self {
        assert!(!self.is_zero(), "squarefree part of zero");
        if self.deg() == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        if g.is_constant() {
            return self.monic();
        }
        let (q, r) = self.div_rem(&g);
        debug_assert!(r.is_zero());
        q.monic()
    }

    pub fn is_squarefree(&self) -> bool {
        assert!(!self.is_zero());
        self.deg() == 0 || self.gcd(&self.derivative()).is_constant()
    }

    /// Map coefficients into another field.
    pub fn map<L: Field>(&self, f: impl Fn(&K) -> L) -> UniPoly<L> {
        UniPoly::new(self.coeffs.iter().map(f).collect())
    }
}

impl UniPoly<Rational> {
    /// The variable `x` over the rationals.
    pub fn var_q() -> Self {
        UniPoly::new(vec![Rational::zero(), Rational::one()])
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        UniPoly::new(coeffs.iter().map(|&c| Rational::from_int(c)).collect())
    }
}

impl<K: Field> fmt::Display for UniPoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if i == 0 {
                write!(f, "{c}")?;
            } else if i == 1 {
                write!(f, "({c})*T")?;
            } else {
                write!(f, "({c})*T^{i}")?;
            }
        }
        Ok(())
    }
}

impl<K: Field> fmt::Debug for UniPoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(coeffs: &[i64]) -> UniPoly<Rational> {
        UniPoly::from_ints(coeffs)
    }

    #[test]
    fn div_rem_exact() {
        // (x^2 - 1) = (x - 1)(x + 1)
        let f = p(&[-1, 0, 1]);
        let d = p(&[-1, 1]);
        let (q, r) = f.div_rem(&d);
        assert!(r.is_zero());
        assert_eq!(q, p(&[1, 1]));
    }

    #[test]
    fn gcd_monic() {
        let f = p(&[-1, 0, 1]); // x^2-1
        let g = p(&[1, 1]); // x+1
        assert_eq!(f.gcd(&g), p(&[1, 1]));
        let h = p(&[2, 2]); // 2x+2
        assert_eq!(f.gcd(&h), p(&[1, 1]));
    }

    #[test]
    fn extended_gcd_identity() {
        let f = p(&[-2, 0, 1]); // x^2-2
        let g = p(&[0, 1]); // x
        let (d, s, t) = f.extended_gcd(&g);
        assert_eq!(s.mul(&f).add(&t.mul(&g)), d);
        assert_eq!(d, p(&[1]));
    }

    #[test]
    fn squarefree_part_strips_powers() {
        // (x-1)^2 (x+2)
        let f = p(&[-1, 1]).mul(&p(&[-1, 1])).mul(&p(&[2, 1]));
        assert_eq!(f.squarefree_part(), p(&[-1, 1]).mul(&p(&[2, 1])));
    }

    #[test]
    fn compose_shift() {
        // f(x) = x^2, g = x+3, f(g) = x^2+6x+9
        let f = p(&[0, 0, 1]);
        let g = p(&[3, 1]);
        assert_eq!(f.compose(&g), p(&[9, 6, 1]));
    }
}
