//! Coefficient field abstraction.
//!
//! The engines are generic over an exact field: the rationals or a simple
//! algebraic extension of them. Because an extension element only makes
//! sense relative to its field, the trait hands out zero/one/embeddings
//! contextually (`zero_like` etc.) instead of as nullary constructors.

use std::cmp::Ordering;
use std::fmt::{Debug, Display};

use crate::rational::Rational;

pub trait Field: Clone + PartialEq + Debug + Display + Send + Sync + 'static {
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self) -> Option<Self>;
    /// Zero of the same field as `self`.
    fn zero_like(&self) -> Self;
    /// One of the same field as `self`.
    fn one_like(&self) -> Self;
    /// The rational `r` embedded into the field of `self`.
    fn embed_rational(&self, r: &Rational) -> Self;
    /// True when the two elements live in the same field and may be combined.
    fn same_field(&self, other: &Self) -> bool;
    /// A total order used only for canonical sorting of output, not algebra.
    fn canonical_cmp(&self, other: &Self) -> Ordering;

    /// `Some(-self)` when the element prints with a leading minus sign;
    /// lets polynomial rendering emit `a - b` instead of `a + (-1)*b`.
    fn display_negated(&self) -> Option<Self> {
        None
    }

    fn is_one(&self) -> bool {
        !self.is_zero() && self.sub(&self.one_like()).is_zero()
    }

    fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv().expect("division by zero field element"))
    }

    fn pow(&self, e: u32) -> Self {
        let mut acc = self.one_like();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

impl Field for Rational {
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }

    fn add(&self, other: &Self) -> Self {
        self + other
    }

    fn sub(&self, other: &Self) -> Self {
        self - other
    }

    fn mul(&self, other: &Self) -> Self {
        self * other
    }

    fn neg(&self) -> Self {
        -self
    }

    fn inv(&self) -> Option<Self> {
        self.inverse()
    }

    fn zero_like(&self) -> Self {
        Rational::zero()
    }

    fn one_like(&self) -> Self {
        Rational::one()
    }

    fn embed_rational(&self, r: &Rational) -> Self {
        r.clone()
    }

    fn same_field(&self, _other: &Self) -> bool {
        true
    }

    fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.cmp(other)
    }

    fn display_negated(&self) -> Option<Self> {
        if self.is_negative() {
            Some(-self)
        } else {
            None
        }
    }
}
