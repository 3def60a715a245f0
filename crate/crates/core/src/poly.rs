//! Sparse multivariate polynomials over an exact field.
//!
//! A polynomial carries its variable set (an ordered name list shared via
//! `Arc`); operations on mismatched variable sets are structural errors.
//! Terms are kept in a `BTreeMap` keyed by exponent vector, so iteration
//! order is canonical independently of how a polynomial was built.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::numberfield::AlgebraicNumber;
use crate::rational::Rational;

/// An ordered list of variable names, shared by the polynomials of a ring.
#[derive(Debug, PartialEq, Eq)]
pub struct VarSet {
    names: Vec<String>,
}

impl VarSet {
    pub fn new<S: Into<String>>(names: Vec<S>) -> Arc<VarSet> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        assert!(!names.is_empty(), "empty variable set");
        for (i, n) in names.iter().enumerate() {
            assert!(
                !names[..i].contains(n),
                "duplicate variable name {n}"
            );
        }
        Arc::new(VarSet { names })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// An exponent vector. Its `Ord` is plain lexicographic on the vector and is
/// used only for canonical storage; semantic comparisons go through
/// [`MonomialOrder`].
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, idx: usize) -> Self {
        let mut e = vec![0; nvars];
        e[idx] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Self) -> Self {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, if divisible.
    pub fn div_into(&self, other: &Self) -> Option<Self> {
        if self.divides(other) {
            Some(Monomial(
                other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect(),
            ))
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &Self) -> Self {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn is_coprime_with(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }
}

/// A global monomial order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum MonomialOrder {
    /// Pure lexicographic, earlier ring variables dominate.
    Lex,
    /// Graded reverse lexicographic.
    GrevLex,
    /// Block order: `first` on the leading `split` variables, ties broken by
    /// `second` on the rest. The first block is an elimination block.
    Block {
        first: Box<MonomialOrder>,
        second: Box<MonomialOrder>,
        split: usize,
    },
}

impl MonomialOrder {
    pub fn elimination(split: usize) -> Self {
        MonomialOrder::Block {
            first: Box::new(MonomialOrder::Lex),
            second: Box::new(MonomialOrder::GrevLex),
            split,
        }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.cmp_slices(&a.0, &b.0)
    }

    fn cmp_slices(&self, a: &[u32], b: &[u32]) -> Ordering {
        match self {
            MonomialOrder::Lex => {
                for (x, y) in a.iter().zip(b) {
                    match x.cmp(y) {
                        Ordering::Equal => continue,
                        ord => return ord,
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::GrevLex => {
                let da: u32 = a.iter().sum();
                let db: u32 = b.iter().sum();
                match da.cmp(&db) {
                    Ordering::Equal => {}
                    ord => return ord,
                }
                // Ties: the monomial whose last differing exponent is
                // smaller is the larger one.
                for (x, y) in a.iter().zip(b).rev() {
                    match x.cmp(y) {
                        Ordering::Equal => continue,
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::Block {
                first,
                second,
                split,
            } => {
                let k = (*split).min(a.len());
                first
                    .cmp_slices(&a[..k], &b[..k])
                    .then_with(|| second.cmp_slices(&a[k..], &b[k..]))
            }
        }
    }
}

/// A sparse multivariate polynomial.
#[derive(Clone, PartialEq)]
pub struct Poly<K: Field> {
    vars: Arc<VarSet>,
    terms: BTreeMap<Monomial, K>,
}

pub type QPoly = Poly<Rational>;
pub type APoly = Poly<AlgebraicNumber>;

impl<K: Field> Poly<K> {
    pub fn zero(vars: &Arc<VarSet>) -> Self {
        Poly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &Arc<VarSet>, c: K) -> Self {
        let mut p = Poly::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(vars.len()), c);
        }
        p
    }

    /// `c * (monomial)`.
    pub fn term(vars: &Arc<VarSet>, m: Monomial, c: K) -> Self {
        assert_eq!(m.0.len(), vars.len(), "exponent arity mismatch");
        let mut p = Poly::zero(vars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// The variable `vars[idx]` with coefficient `one`.
    pub fn var(vars: &Arc<VarSet>, idx: usize, one: K) -> Self {
        assert!(one.is_one(), "coefficient context must be one");
        Poly::term(vars, Monomial::var(vars.len(), idx), one)
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &K)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() == 0
            || (self.terms.len() == 1 && self.terms.keys().next().unwrap().degree() == 0)
    }

    pub fn constant_value(&self) -> Option<&K> {
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            if m.degree() == 0 {
                return Some(c);
            }
        }
        None
    }

    /// Any coefficient, used as a field context.
    pub fn sample_coeff(&self) -> Option<&K> {
        self.terms.values().next()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// Minimal total degree of a term: the multiplicity of the germ at the
    /// origin. `None` for the zero polynomial.
    pub fn order_at_origin(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).min()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    fn assert_same_ring(&self, other: &Self) {
        assert!(
            Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars,
            "polynomials from different rings: {:?} vs {:?}",
            self.vars.names(),
            other.vars.names()
        );
    }

    /// Same-ring check as a recoverable error, for public entry points.
    pub fn check_same_ring(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars {
            Ok(())
        } else {
            Err(Error::Structural(format!(
                "mismatched variable sets {:?} vs {:?}",
                self.vars.names(),
                other.vars.names()
            )))
        }
    }

    fn insert_term(&mut self, m: Monomial, c: K) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_same_ring(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.assert_same_ring(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_term(m.clone(), c.neg());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Poly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.assert_same_ring(other);
        let mut out = Poly::zero(&self.vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.insert_term(ma.mul(mb), ca.mul(cb));
            }
        }
        out
    }

    pub fn scale(&self, k: &K) -> Self {
        if k.is_zero() {
            return Poly::zero(&self.vars);
        }
        Poly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.mul(k)))
                .collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, k: &K) -> Self {
        if k.is_zero() {
            return Poly::zero(&self.vars);
        }
        Poly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(mm, c)| (mm.mul(m), c.mul(k)))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        if e == 0 {
            let one = self
                .sample_coeff()
                .map(|c| c.one_like())
                .expect("pow(0) of zero polynomial needs context");
            return Poly::constant(&self.vars, one);
        }
        let mut acc = self.clone();
        for _ in 1..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Leading term under `ord`.
    pub fn leading(&self, ord: &MonomialOrder) -> Option<(&Monomial, &K)> {
        self.terms
            .iter()
            .max_by(|(a, _), (b, _)| ord.cmp(a, b))
    }

    /// Divide by the leading coefficient under `ord`.
    pub fn make_monic(&self, ord: &MonomialOrder) -> Self {
        match self.leading(ord) {
            None => self.clone(),
            Some((_, lc)) => {
                if lc.is_one() {
                    self.clone()
                } else {
                    self.scale(&lc.inv().expect("nonzero leading coefficient"))
                }
            }
        }
    }

    /// Canonical scalar normalization used by gcd and friends: leading
    /// coefficient 1 under the lexicographic order.
    pub fn lex_monic(&self) -> Self {
        self.make_monic(&MonomialOrder::Lex)
    }

    pub fn derivative(&self, var: usize) -> Self {
        let mut out = Poly::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[var] = e - 1;
            out.insert_term(m2, c.mul(&c.embed_rational(&Rational::from_int(e as i64))));
        }
        out
    }

    /// Full evaluation at a point, one value per variable.
    pub fn eval(&self, point: &[K]) -> K {
        assert_eq!(point.len(), self.vars.len());
        let zero = point[0].zero_like();
        let mut acc = zero;
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = t.mul(&point[i].pow(e));
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Substitute each variable by a polynomial (all images in one common
    /// target ring).
    pub fn substitute(&self, images: &[Poly<K>]) -> Poly<K> {
        assert_eq!(images.len(), self.vars.len());
        let target = images
            .first()
            .map(|p| p.vars.clone())
            .expect("substitution needs at least one image");
        for img in images {
            assert!(img.vars == target, "images in different rings");
        }
        let mut acc = Poly::zero(&target);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(&target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = t.mul(&images[i].pow(e));
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Exact division by `x_var^e`.
    pub fn div_var_power(&self, var: usize, e: u32) -> Option<Self> {
        if e == 0 {
            return Some(self.clone());
        }
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            if m.0[var] < e {
                return None;
            }
            let mut m2 = m.clone();
            m2.0[var] -= e;
            terms.insert(m2, c.clone());
        }
        Some(Poly {
            vars: self.vars.clone(),
            terms,
        })
    }

    /// Exact division by an arbitrary nonzero polynomial; `None` when the
    /// division leaves a remainder.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        self.assert_same_ring(divisor);
        assert!(!divisor.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(self.clone());
        }
        let ord = MonomialOrder::GrevLex;
        let (dm, dc) = divisor.leading(&ord).unwrap();
        let dm = dm.clone();
        let dc_inv = dc.inv().expect("nonzero lc");
        let mut rem = self.clone();
        let mut quo = Poly::zero(&self.vars);
        while let Some((lm, lc)) = rem.leading(&ord) {
            let q = dm.div_into(lm)?;
            let qc = lc.mul(&dc_inv);
            let qterm = Poly::term(&self.vars, q, qc);
            rem = rem.sub(&qterm.mul(divisor));
            quo = quo.add(&qterm);
        }
        Some(quo)
    }

    /// Map coefficients into another field.
    pub fn map_coeffs<L: Field>(&self, f: impl Fn(&K) -> L) -> Poly<L> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let c2 = f(c);
            if !c2.is_zero() {
                terms.insert(m.clone(), c2);
            }
        }
        Poly {
            vars: self.vars.clone(),
            terms,
        }
    }

    /// Re-express this polynomial in a ring with a superset of its
    /// variables, matching by name.
    pub fn embed_into(&self, target: &Arc<VarSet>) -> Result<Poly<K>> {
        let mapping: Vec<usize> = self
            .vars
            .names()
            .iter()
            .map(|n| {
                target
                    .index_of(n)
                    .ok_or_else(|| Error::Structural(format!("variable {n} missing in target ring")))
            })
            .collect::<Result<_>>()?;
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut e = vec![0u32; target.len()];
            for (i, &exp) in m.0.iter().enumerate() {
                e[mapping[i]] = exp;
            }
            terms.insert(Monomial(e), c.clone());
        }
        Ok(Poly {
            vars: target.clone(),
            terms,
        })
    }

    /// Project into a smaller ring; fails if the polynomial involves a
    /// dropped variable.
    pub fn project_into(&self, target: &Arc<VarSet>) -> Result<Poly<K>> {
        let mapping: Vec<Option<usize>> = self
            .vars
            .names()
            .iter()
            .map(|n| target.index_of(n))
            .collect();
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut e = vec![0u32; target.len()];
            for (i, &exp) in m.0.iter().enumerate() {
                match (mapping[i], exp) {
                    (_, 0) => {}
                    (Some(j), exp) => e[j] = exp,
                    (None, _) => {
                        return Err(Error::Structural(format!(
                            "polynomial involves dropped variable {}",
                            self.vars.names()[i]
                        )))
                    }
                }
            }
            terms.insert(Monomial(e), c.clone());
        }
        Ok(Poly {
            vars: target.clone(),
            terms,
        })
    }

    /// Canonical ordering for deterministic output lists.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        let mut it_a = self.terms.iter();
        let mut it_b = other.terms.iter();
        loop {
            match (it_a.next(), it_b.next()) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some((ma, ca)), Some((mb, cb))) => {
                    let ord = ma.cmp(mb).then_with(|| ca.canonical_cmp(cb));
                    if ord != Ordering::Equal {
                        return ord;
                    }
                }
            }
        }
    }
}

impl Poly<Rational> {
    /// Lift a rational polynomial into an extension, the field given by a
    /// sample element.
    pub fn lift_to<K: Field>(&self, context: &K) -> Poly<K> {
        self.map_coeffs(|c| context.embed_rational(c))
    }
}

impl<K: Field> fmt::Display for Poly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // Canonical rendering: grevlex-descending terms, explicit minus
        // signs for display-negative coefficients.
        let ord = MonomialOrder::GrevLex;
        let mut terms: Vec<(&Monomial, &K)> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| ord.cmp(b, a));
        let mut first = true;
        for (m, c) in terms {
            let (c_shown, negative) = match c.display_negated() {
                Some(pos) => (pos, true),
                None => (c.clone(), false),
            };
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let mut piece = String::new();
            if m.degree() == 0 {
                piece.push_str(&format!("{c_shown}"));
            } else {
                if !c_shown.is_one() {
                    let cs = format!("{c_shown}");
                    if cs.contains(' ') || cs.contains('+') || cs.contains('-') {
                        piece.push_str(&format!("({cs})*"));
                    } else {
                        piece.push_str(&format!("{cs}*"));
                    }
                }
                let mut firstv = true;
                for (i, &e) in m.0.iter().enumerate() {
                    if e == 0 {
                        continue;
                    }
                    if !firstv {
                        piece.push('*');
                    }
                    firstv = false;
                    if e == 1 {
                        piece.push_str(&self.vars.names()[i]);
                    } else {
                        piece.push_str(&format!("{}^{}", self.vars.names()[i], e));
                    }
                }
            }
            write!(f, "{piece}")?;
        }
        Ok(())
    }
}

impl<K: Field> fmt::Debug for Poly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parsepoly::parse_qpoly;

    fn xy() -> Arc<VarSet> {
        VarSet::new(vec!["x", "y"])
    }

    #[test]
    fn add_cancellation() {
        let vars = xy();
        let a = parse_qpoly("x+y", &vars).unwrap();
        let b = parse_qpoly("x-y", &vars).unwrap();
        assert_eq!(a.add(&b), parse_qpoly("2*x", &vars).unwrap());
    }

    #[test]
    fn mul_distributes() {
        let vars = xy();
        let a = parse_qpoly("x^2-y^3", &vars).unwrap();
        let b = parse_qpoly("y", &vars).unwrap();
        assert_eq!(a.mul(&b), parse_qpoly("x^2*y - y^4", &vars).unwrap());
    }

    #[test]
    fn mul_by_zero_absorbs() {
        let vars = xy();
        let a = parse_qpoly("x+y", &vars).unwrap();
        let z = Poly::zero(&vars);
        assert!(a.mul(&z).is_zero());
    }

    #[test]
    fn grevlex_order_on_plane() {
        let ord = MonomialOrder::GrevLex;
        // x^2 > xy > y^2 > x > y > 1 with x before y
        let m = |a: u32, b: u32| Monomial(vec![a, b]);
        assert_eq!(ord.cmp(&m(2, 0), &m(1, 1)), Ordering::Greater);
        assert_eq!(ord.cmp(&m(1, 1), &m(0, 2)), Ordering::Greater);
        assert_eq!(ord.cmp(&m(1, 0), &m(0, 1)), Ordering::Greater);
        assert_eq!(ord.cmp(&m(0, 3), &m(2, 0)), Ordering::Greater);
    }

    #[test]
    fn lex_order_dominates_first_variable() {
        let ord = MonomialOrder::Lex;
        let m = |a: u32, b: u32| Monomial(vec![a, b]);
        assert_eq!(ord.cmp(&m(1, 0), &m(0, 5)), Ordering::Greater);
    }

    #[test]
    fn exact_division() {
        let vars = xy();
        let g = parse_qpoly("(x^2-y^3)*y", &vars).unwrap();
        let d = parse_qpoly("x^2-y^3", &vars).unwrap();
        assert_eq!(g.exact_div(&d).unwrap(), parse_qpoly("y", &vars).unwrap());
        assert!(parse_qpoly("x^2", &vars).unwrap().exact_div(&d).is_none());
    }

    #[test]
    fn substitution_composes() {
        let vars = xy();
        let f = parse_qpoly("x^2 - y^3", &vars).unwrap();
        // x -> x, y -> x*(1+y): the cusp strict transform before clearing
        let img = vec![
            parse_qpoly("x", &vars).unwrap(),
            parse_qpoly("x*(1+y)", &vars).unwrap(),
        ];
        let sub = f.substitute(&img);
        let expect = parse_qpoly("x^2 - x^3*(1+y)^3", &vars).unwrap();
        assert_eq!(sub, expect);
    }
}
