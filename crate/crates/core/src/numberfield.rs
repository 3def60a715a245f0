//! Simple algebraic extensions of the rationals.
//!
//! A [`NumberField`] is Q[z]/(m) for a monic irreducible m; an
//! [`AlgebraicNumber`] is a residue class represented by a rational
//! polynomial of degree below that of m. The rationals themselves are the
//! degree-one field with minimal polynomial z, so every engine can run over
//! a single concrete scalar type. Towers are always collapsed to a simple
//! extension (see `trager::extend_by_irreducible`), so a field is never
//! nested.

use std::cmp::Ordering;
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::rational::Rational;
use crate::unipoly::UniPoly;

/// Q[z]/(minimal_poly), with the minimal polynomial monic and irreducible
/// over the rationals.
#[derive(Debug)]
pub struct NumberField {
    min_poly: UniPoly<Rational>,
    degree: usize,
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        self.min_poly == other.min_poly
    }
}

impl Eq for NumberField {}

impl NumberField {
    /// The rationals as the trivial extension Q[z]/(z).
    pub fn rationals() -> Arc<NumberField> {
        static Q: OnceLock<Arc<NumberField>> = OnceLock::new();
        Q.get_or_init(|| {
            Arc::new(NumberField {
                min_poly: UniPoly::var_q(),
                degree: 1,
            })
        })
        .clone()
    }

    /// Builds the field without checking irreducibility. Callers must hold a
    /// proof (e.g. the polynomial came out of a factorization).
    pub fn new_unchecked(min_poly: UniPoly<Rational>) -> Result<Arc<NumberField>> {
        if min_poly.is_zero() || min_poly.deg() == 0 {
            return Err(Error::Domain(
                "minimal polynomial must have positive degree".into(),
            ));
        }
        if !min_poly.lc().is_one() {
            return Err(Error::Domain("minimal polynomial must be monic".into()));
        }
        let degree = min_poly.deg();
        Ok(Arc::new(NumberField { min_poly, degree }))
    }

    /// Builds the field, verifying irreducibility by factoring.
    pub fn new_verified(min_poly: UniPoly<Rational>) -> Result<Arc<NumberField>> {
        let monic = if min_poly.is_zero() {
            return Err(Error::Domain("zero minimal polynomial".into()));
        } else {
            min_poly.monic()
        };
        if !crate::factor::is_irreducible_q(&monic) {
            return Err(Error::Domain(format!(
                "polynomial {monic} is reducible over the rationals"
            )));
        }
        NumberField::new_unchecked(monic)
    }

    pub fn min_poly(&self) -> &UniPoly<Rational> {
        &self.min_poly
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_rationals(&self) -> bool {
        self.degree == 1 && self.min_poly == UniPoly::var_q()
    }
}

/// An element of a [`NumberField`]: a rational polynomial in the generator,
/// reduced modulo the minimal polynomial.
#[derive(Clone)]
pub struct AlgebraicNumber {
    field: Arc<NumberField>,
    rep: UniPoly<Rational>,
}

impl AlgebraicNumber {
    pub fn new(field: Arc<NumberField>, rep: UniPoly<Rational>) -> Self {
        let rep = reduce_mod(rep, field.min_poly());
        AlgebraicNumber { field, rep }
    }

    pub fn from_rational(field: &Arc<NumberField>, r: Rational) -> Self {
        AlgebraicNumber {
            field: field.clone(),
            rep: if r.is_zero() {
                UniPoly::zero()
            } else {
                UniPoly::constant(r)
            },
        }
    }

    pub fn rational(r: Rational) -> Self {
        AlgebraicNumber::from_rational(&NumberField::rationals(), r)
    }

    pub fn rational_i64(n: i64) -> Self {
        AlgebraicNumber::rational(Rational::from_int(n))
    }

    /// The class of z, the field generator. Over the trivial field this is 0.
    pub fn generator(field: &Arc<NumberField>) -> Self {
        AlgebraicNumber::new(field.clone(), UniPoly::var_q())
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn rep(&self) -> &UniPoly<Rational> {
        &self.rep
    }

    /// The element as a rational if its representative is constant.
    pub fn to_rational(&self) -> Option<Rational> {
        if self.rep.is_zero() {
            Some(Rational::zero())
        } else if self.rep.is_constant() {
            Some(self.rep.coeffs()[0].clone())
        } else {
            None
        }
    }

    fn assert_same_field(&self, other: &Self) {
        assert!(
            self.field == other.field || Arc::ptr_eq(&self.field, &other.field),
            "algebraic numbers from different fields: {} vs {}",
            self.field.min_poly(),
            other.field.min_poly()
        );
    }
}

fn reduce_mod(rep: UniPoly<Rational>, min_poly: &UniPoly<Rational>) -> UniPoly<Rational> {
    if rep.degree().map_or(true, |d| d < min_poly.deg()) {
        rep
    } else {
        rep.div_rem(min_poly).1
    }
}

impl PartialEq for AlgebraicNumber {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.rep == other.rep
    }
}

impl Eq for AlgebraicNumber {}

impl Field for AlgebraicNumber {
    fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    fn add(&self, other: &Self) -> Self {
        self.assert_same_field(other);
        AlgebraicNumber {
            field: self.field.clone(),
            rep: self.rep.add(&other.rep),
        }
    }

    fn sub(&self, other: &Self) -> Self {
        self.assert_same_field(other);
        AlgebraicNumber {
            field: self.field.clone(),
            rep: self.rep.sub(&other.rep),
        }
    }

    fn mul(&self, other: &Self) -> Self {
        self.assert_same_field(other);
        AlgebraicNumber {
            field: self.field.clone(),
            rep: reduce_mod(self.rep.mul(&other.rep), self.field.min_poly()),
        }
    }

    fn neg(&self) -> Self {
        AlgebraicNumber {
            field: self.field.clone(),
            rep: self.rep.neg(),
        }
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        // rep is invertible mod the irreducible minimal polynomial:
        // s*rep + t*min = 1.
        let (g, s, _t) = self.rep.extended_gcd(self.field.min_poly());
        assert!(
            g.is_constant() && g.coeffs()[0].is_one(),
            "minimal polynomial not irreducible: gcd {g}"
        );
        Some(AlgebraicNumber {
            field: self.field.clone(),
            rep: reduce_mod(s, self.field.min_poly()),
        })
    }

    fn zero_like(&self) -> Self {
        AlgebraicNumber {
            field: self.field.clone(),
            rep: UniPoly::zero(),
        }
    }

    fn one_like(&self) -> Self {
        AlgebraicNumber::from_rational(&self.field, Rational::one())
    }

    fn embed_rational(&self, r: &Rational) -> Self {
        AlgebraicNumber::from_rational(&self.field, r.clone())
    }

    fn same_field(&self, other: &Self) -> bool {
        self.field == other.field
    }

    fn canonical_cmp(&self, other: &Self) -> Ordering {
        cmp_unipoly(self.field.min_poly(), other.field.min_poly())
            .then_with(|| cmp_unipoly(&self.rep, &other.rep))
    }

    fn display_negated(&self) -> Option<Self> {
        if self.rep.coeffs().last().map_or(false, |c| c.is_negative()) {
            Some(self.neg())
        } else {
            None
        }
    }
}

pub(crate) fn cmp_unipoly(a: &UniPoly<Rational>, b: &UniPoly<Rational>) -> Ordering {
    a.coeffs()
        .len()
        .cmp(&b.coeffs().len())
        .then_with(|| a.coeffs().cmp(b.coeffs()))
}

fn fmt_algebraic(a: &AlgebraicNumber, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if let Some(r) = a.to_rational() {
        return write!(f, "{r}");
    }
    let mut first = true;
    for (i, c) in a.rep.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        if !first {
            write!(f, " + ")?;
        }
        first = false;
        match i {
            0 => write!(f, "{c}")?,
            1 => {
                if c.is_one() {
                    write!(f, "a")?
                } else {
                    write!(f, "{c}*a")?
                }
            }
            _ => {
                if c.is_one() {
                    write!(f, "a^{i}")?
                } else {
                    write!(f, "{c}*a^{i}")?
                }
            }
        }
    }
    Ok(())
}

impl fmt::Display for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_algebraic(self, f)
    }
}

impl fmt::Debug for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_algebraic(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gaussian() -> Arc<NumberField> {
        // z^2 + 1
        NumberField::new_unchecked(UniPoly::from_ints(&[1, 0, 1])).unwrap()
    }

    #[test]
    fn generator_satisfies_min_poly() {
        let f = gaussian();
        let i = AlgebraicNumber::generator(&f);
        let val = f
            .min_poly()
            .map(|c| AlgebraicNumber::from_rational(&f, c.clone()))
            .eval(&i);
        assert!(val.is_zero());
    }

    #[test]
    fn gaussian_arithmetic() {
        let f = gaussian();
        let i = AlgebraicNumber::generator(&f);
        let minus_one = AlgebraicNumber::from_rational(&f, Rational::from_int(-1));
        assert_eq!(i.mul(&i), minus_one);
        // (1+i)(1-i) = 2
        let one = i.one_like();
        let a = one.add(&i);
        let b = one.sub(&i);
        assert_eq!(a.mul(&b), AlgebraicNumber::from_rational(&f, Rational::from_int(2)));
    }

    #[test]
    fn inverse_of_generator() {
        let f = gaussian();
        let i = AlgebraicNumber::generator(&f);
        let inv = i.inv().unwrap();
        assert!(i.mul(&inv).is_one());
        // 1/i = -i
        assert_eq!(inv, i.neg());
    }

    #[test]
    fn trivial_field_is_rationals() {
        let q = NumberField::rationals();
        assert!(q.is_rationals());
        let two = AlgebraicNumber::rational_i64(2);
        assert_eq!(two.to_rational(), Some(Rational::from_int(2)));
        assert!(two.inv().unwrap().mul(&two).is_one());
    }
}
