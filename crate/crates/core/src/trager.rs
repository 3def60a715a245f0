//! Factorization over number fields and primitive-element extensions.
//!
//! Both go through the norm: for squarefree f over K = Q(alpha) pick a
//! shift s so that N(z) = Res_y(m(y), fhat(z - s*y, y)) is squarefree; the
//! rational factors of the norm cut out the factors of f by gcds over K
//! (Trager's method). Extending K by an irreducible g reuses the same norm:
//! it is the minimal polynomial of the primitive element beta + s*alpha.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::factor;
use crate::field::Field;
use crate::gcd::resultant_in_var;
use crate::numberfield::{AlgebraicNumber, NumberField};
use crate::poly::{Monomial, Poly, QPoly, VarSet};
use crate::rational::Rational;
use crate::unipoly::UniPoly;
use crate::Limits;

/// A factorization over a number field:
/// `unit * prod factors[i].0 ^ factors[i].1` with monic irreducible factors.
#[derive(Debug, Clone)]
pub struct KFactorization {
    pub unit: AlgebraicNumber,
    pub factors: Vec<(UniPoly<AlgebraicNumber>, u32)>,
}

impl KFactorization {
    pub fn expand(&self) -> UniPoly<AlgebraicNumber> {
        let mut acc = UniPoly::constant(self.unit.clone());
        for (f, e) in &self.factors {
            for _ in 0..*e {
                acc = acc.mul(f);
            }
        }
        acc
    }
}

/// Replace the generator by a fresh variable `y`: the representative of each
/// coefficient of `f` becomes the `y`-part of the coefficient of `x^i`.
fn to_bivariate(f: &UniPoly<AlgebraicNumber>, vars: &Arc<VarSet>) -> QPoly {
    let mut out = QPoly::zero(vars);
    for (i, c) in f.coeffs().iter().enumerate() {
        for (j, r) in c.rep().coeffs().iter().enumerate() {
            if r.is_zero() {
                continue;
            }
            out = out.add(&QPoly::term(
                vars,
                Monomial(vec![i as u32, j as u32]),
                r.clone(),
            ));
        }
    }
    out
}

fn min_poly_bivariate(field: &NumberField, vars: &Arc<VarSet>) -> QPoly {
    let mut out = QPoly::zero(vars);
    for (j, r) in field.min_poly().coeffs().iter().enumerate() {
        if r.is_zero() {
            continue;
        }
        out = out.add(&QPoly::term(vars, Monomial(vec![0, j as u32]), r.clone()));
    }
    out
}

/// `Res_y(m(y), fhat(x, y))` as a univariate rational polynomial in x.
fn norm_univariate(f: &UniPoly<AlgebraicNumber>, field: &NumberField) -> Result<UniPoly<Rational>> {
    let vars = VarSet::new(vec!["x", "y"]);
    let fhat = to_bivariate(f, &vars);
    let m = min_poly_bivariate(field, &vars);
    let res = resultant_in_var(&m, &fhat, 1)?;
    let mut coeffs = vec![Rational::zero(); res.degree_in(0) as usize + 1];
    for (mono, c) in res.terms() {
        assert_eq!(mono.0[1], 0, "resultant still involves the generator");
        coeffs[mono.0[0] as usize] = c.clone();
    }
    Ok(UniPoly::new(coeffs))
}

/// Successive shift candidates 0, 1, -1, 2, -2, ...
fn shifts() -> impl Iterator<Item = i64> {
    (0i64..).map(|k| {
        if k == 0 {
            0
        } else if k % 2 == 1 {
            (k + 1) / 2
        } else {
            -(k / 2)
        }
    })
}

/// `f(x + s*alpha)` for the field generator alpha.
fn shift_by_generator(
    f: &UniPoly<AlgebraicNumber>,
    field: &Arc<NumberField>,
    s: i64,
) -> UniPoly<AlgebraicNumber> {
    if s == 0 {
        return f.clone();
    }
    let alpha = AlgebraicNumber::generator(field);
    let shift = alpha.mul(&AlgebraicNumber::from_rational(field, Rational::from_int(s)));
    let lin = UniPoly::new(vec![
        shift,
        AlgebraicNumber::from_rational(field, Rational::one()),
    ]);
    f.compose(&lin)
}

/// Find a shift making the norm squarefree; returns
/// `(s, Norm(f(x - s*alpha)))`.
fn squarefree_norm(
    f: &UniPoly<AlgebraicNumber>,
    field: &Arc<NumberField>,
    limits: &Limits,
) -> Result<(i64, UniPoly<Rational>)> {
    let budget = field.degree() as u32 * f.deg() as u32;
    if budget > limits.max_extension_work {
        return Err(Error::Resource(format!(
            "norm computation of size {budget} exceeds the extension-work bound {}",
            limits.max_extension_work
        )));
    }
    for s in shifts().take(4 * (budget as usize + 2)) {
        let shifted = shift_by_generator(f, field, -s);
        let norm = norm_univariate(&shifted, field)?;
        if norm.is_zero() {
            continue;
        }
        if norm.is_squarefree() {
            return Ok((s, norm));
        }
    }
    Err(Error::Resource(
        "no squarefree norm found within the shift budget".into(),
    ))
}

/// Factor a nonzero univariate polynomial over a number field into monic
/// irreducibles (Trager's method via the squarefree norm).
pub fn factor_over_number_field(
    f: &UniPoly<AlgebraicNumber>,
    field: &Arc<NumberField>,
    limits: &Limits,
) -> Result<KFactorization> {
    if f.is_zero() {
        return Err(Error::Domain("factorization of zero".into()));
    }
    if field.degree() as u32 * f.deg() as u32 > limits.max_extension_work {
        return Err(Error::Resource(format!(
            "field degree {} x polynomial degree {} exceeds the configured bound",
            field.degree(),
            f.deg()
        )));
    }
    let unit = f.lc().clone();
    let monic = f.monic();
    if monic.deg() == 0 {
        return Ok(KFactorization {
            unit,
            factors: Vec::new(),
        });
    }
    if field.is_rationals() {
        let rat = monic.map(|c| c.to_rational().expect("trivial field"));
        let fac = factor::factor_q(&rat)?;
        let factors = fac
            .factors
            .into_iter()
            .map(|(p, e)| (p.map(|c| AlgebraicNumber::rational(c.clone())), e))
            .collect();
        return Ok(KFactorization { unit, factors });
    }

    let mut factors: Vec<(UniPoly<AlgebraicNumber>, u32)> = Vec::new();
    for (part, mult) in yun_squarefree_k(&monic) {
        if part.deg() == 0 {
            continue;
        }
        for irr in factor_squarefree_k(&part, field, limits)? {
            factors.push((irr, mult));
        }
    }
    factors.sort_by(|(a, _), (b, _)| cmp_k_unipoly(a, b));
    let out = KFactorization { unit, factors };
    debug_assert_eq!(out.expand(), *f);
    Ok(out)
}

fn cmp_k_unipoly(
    a: &UniPoly<AlgebraicNumber>,
    b: &UniPoly<AlgebraicNumber>,
) -> std::cmp::Ordering {
    a.coeffs().len().cmp(&b.coeffs().len()).then_with(|| {
        for (x, y) in a.coeffs().iter().zip(b.coeffs()) {
            let ord = x.canonical_cmp(y);
            if ord != std::cmp::Ordering::Equal {
                return ord;
            }
        }
        std::cmp::Ordering::Equal
    })
}

/// Yun's squarefree decomposition over a characteristic-zero field.
fn yun_squarefree_k(f: &UniPoly<AlgebraicNumber>) -> Vec<(UniPoly<AlgebraicNumber>, u32)> {
    let df = f.derivative();
    let a = f.gcd(&df);
    if a.is_constant() {
        return vec![(f.clone(), 1)];
    }
    let mut out = Vec::new();
    let mut b = f.div_rem(&a).0;
    let mut c = df.div_rem(&a).0;
    let mut d = c.sub(&b.derivative());
    let mut i = 1u32;
    loop {
        let a_i = b.gcd(&d);
        if a_i.degree().map_or(false, |deg| deg > 0) {
            out.push((a_i.monic(), i));
        }
        b = b.div_rem(&a_i).0;
        c = d.div_rem(&a_i).0;
        d = c.sub(&b.derivative());
        i += 1;
        if b.is_constant() {
            break;
        }
    }
    out
}

/// Trager on a squarefree monic polynomial over a proper extension.
fn factor_squarefree_k(
    f: &UniPoly<AlgebraicNumber>,
    field: &Arc<NumberField>,
    limits: &Limits,
) -> Result<Vec<UniPoly<AlgebraicNumber>>> {
    if f.deg() == 1 {
        return Ok(vec![f.clone()]);
    }
    let (s, norm) = squarefree_norm(f, field, limits)?;
    let norm_factors = factor::factor_q(&norm)?;
    if norm_factors.factors.len() == 1 {
        return Ok(vec![f.monic()]);
    }
    let alpha = AlgebraicNumber::generator(field);
    let s_alpha = alpha.mul(&AlgebraicNumber::from_rational(field, Rational::from_int(s)));
    let one = AlgebraicNumber::from_rational(field, Rational::one());
    let mut out = Vec::new();
    let mut rest = f.monic();
    for (h, _e) in &norm_factors.factors {
        if rest.is_constant() {
            break;
        }
        // h(x + s*alpha) over K, then gcd with what is left of f.
        let h_k = h.map(|c| AlgebraicNumber::from_rational(field, c.clone()));
        let lin = UniPoly::new(vec![s_alpha.clone(), one.clone()]);
        let shifted = h_k.compose(&lin);
        let g = rest.gcd(&shifted);
        if g.degree().map_or(false, |d| d > 0) {
            rest = rest.div_rem(&g).0.monic();
            out.push(g.monic());
        }
    }
    if rest.degree().map_or(false, |d| d > 0) {
        out.push(rest);
    }
    out.sort_by(cmp_k_unipoly);
    Ok(out)
}

/// The result of extending a field by an irreducible polynomial: the new
/// field (simple over Q), the image of the old generator, and a root of the
/// polynomial.
#[derive(Debug, Clone)]
pub struct Extension {
    pub field: Arc<NumberField>,
    old_gen: AlgebraicNumber,
    pub root: AlgebraicNumber,
}

impl Extension {
    /// Map an element of the old field into the new one.
    pub fn embed(&self, a: &AlgebraicNumber) -> AlgebraicNumber {
        a.rep()
            .map(|c| AlgebraicNumber::from_rational(&self.field, c.clone()))
            .eval(&self.old_gen)
    }

    /// Lift a whole polynomial along the embedding.
    pub fn embed_poly(&self, p: &Poly<AlgebraicNumber>) -> Poly<AlgebraicNumber> {
        p.map_coeffs(|c| self.embed(c))
    }
}

/// Extend `field` by a monic irreducible `g`, collapsing the tower into a
/// simple extension of the rationals via a primitive element.
pub fn extend_by_irreducible(
    field: &Arc<NumberField>,
    g: &UniPoly<AlgebraicNumber>,
    limits: &Limits,
) -> Result<Extension> {
    assert!(!g.is_zero() && g.lc().is_one(), "g must be monic");
    let d = g.deg();
    assert!(d >= 1);
    let new_degree = field.degree() * d;
    if new_degree as u32 > limits.max_extension_degree {
        return Err(Error::Resource(format!(
            "extension degree {new_degree} exceeds the bound {}",
            limits.max_extension_degree
        )));
    }
    if d == 1 {
        // Root already in the field.
        let root = g.coeff(0).unwrap().neg();
        return Ok(Extension {
            field: field.clone(),
            old_gen: AlgebraicNumber::generator(field),
            root,
        });
    }
    if field.is_rationals() {
        let min_poly = g.map(|c| c.to_rational().expect("trivial field"));
        let new_field = NumberField::new_unchecked(min_poly)?;
        let root = AlgebraicNumber::generator(&new_field);
        let old_gen = AlgebraicNumber::from_rational(&new_field, Rational::zero());
        return Ok(Extension {
            field: new_field,
            old_gen,
            root,
        });
    }

    // Primitive element gamma = beta + s*alpha whose minimal polynomial is
    // the squarefree (hence irreducible) norm.
    let (s, norm) = squarefree_norm(g, field, limits)?;
    let new_field = NumberField::new_unchecked(norm.monic())?;
    let gamma = AlgebraicNumber::generator(&new_field);

    // alpha inside the new field: the shared root of m(y) and
    // ghat(gamma - s*y, y).
    let vars = VarSet::new(vec!["x", "y"]);
    let ghat = to_bivariate(g, &vars);
    let ghat_l = ghat.lift_to(&gamma);
    let y_l = Poly::var(&vars, 1, gamma.one_like());
    let gamma_c = Poly::constant(&vars, gamma.clone());
    let minus_s = Poly::constant(
        &vars,
        AlgebraicNumber::from_rational(&new_field, Rational::from_int(-s)),
    );
    let x_image = gamma_c.add(&minus_s.mul(&y_l));
    let h_poly = ghat_l.substitute(&[x_image, y_l]);
    let h_uni = poly_to_unipoly_in(&h_poly, 1);
    let m_l = field
        .min_poly()
        .map(|c| AlgebraicNumber::from_rational(&new_field, c.clone()));
    let dgcd = m_l.gcd(&h_uni);
    if dgcd.degree() != Some(1) {
        return Err(Error::Domain(format!(
            "primitive element construction failed: gcd degree {:?}",
            dgcd.degree()
        )));
    }
    let alpha_new = dgcd.coeff(0).unwrap().neg();
    let s_alpha = alpha_new.mul(&alpha_new.embed_rational(&Rational::from_int(s)));
    let beta = gamma.sub(&s_alpha);
    let ext = Extension {
        field: new_field,
        old_gen: alpha_new,
        root: beta,
    };
    debug_assert!(g.map(|c| ext.embed(c)).eval(&ext.root).is_zero());
    debug_assert!(field
        .min_poly()
        .map(|c| AlgebraicNumber::from_rational(&ext.field, c.clone()))
        .eval(&ext.old_gen)
        .is_zero());
    Ok(ext)
}

/// View a multivariate polynomial that only involves variable `var` as
/// univariate.
pub(crate) fn poly_to_unipoly_in<K: Field>(p: &Poly<K>, var: usize) -> UniPoly<K> {
    if p.is_zero() {
        return UniPoly::zero();
    }
    let zero = p.sample_coeff().unwrap().zero_like();
    let mut coeffs: Vec<K> = vec![zero; p.degree_in(var) as usize + 1];
    for (m, c) in p.terms() {
        for (i, &e) in m.0.iter().enumerate() {
            assert!(i == var || e == 0, "polynomial involves another variable");
        }
        coeffs[m.0[var] as usize] = c.clone();
    }
    UniPoly::new(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q_i() -> Arc<NumberField> {
        NumberField::new_unchecked(UniPoly::from_ints(&[1, 0, 1])).unwrap()
    }

    fn k(field: &Arc<NumberField>, n: i64) -> AlgebraicNumber {
        AlgebraicNumber::from_rational(field, Rational::from_int(n))
    }

    #[test]
    fn x2_plus_1_splits_over_q_i() {
        let field = q_i();
        let limits = Limits::default();
        let f = UniPoly::new(vec![k(&field, 1), k(&field, 0), k(&field, 1)]);
        let fac = factor_over_number_field(&f, &field, &limits).unwrap();
        assert_eq!(fac.factors.len(), 2);
        assert!(fac.factors.iter().all(|(g, e)| g.deg() == 1 && *e == 1));
        assert_eq!(fac.expand(), f);
        let i = AlgebraicNumber::generator(&field);
        let roots: Vec<AlgebraicNumber> = fac
            .factors
            .iter()
            .map(|(g, _)| g.coeff(0).unwrap().neg())
            .collect();
        assert!(roots.contains(&i) && roots.contains(&i.neg()));
    }

    #[test]
    fn linear_is_returned_as_is() {
        let field = q_i();
        let limits = Limits::default();
        let i = AlgebraicNumber::generator(&field);
        let f = UniPoly::new(vec![i.clone(), k(&field, 1)]); // x + i
        let fac = factor_over_number_field(&f, &field, &limits).unwrap();
        assert_eq!(fac.factors.len(), 1);
        assert_eq!(fac.factors[0].0, f);
    }

    #[test]
    fn x2_minus_2_over_sqrt2() {
        let field = NumberField::new_unchecked(UniPoly::from_ints(&[-2, 0, 1])).unwrap();
        let limits = Limits::default();
        let f = UniPoly::new(vec![k(&field, -2), k(&field, 0), k(&field, 1)]);
        let fac = factor_over_number_field(&f, &field, &limits).unwrap();
        assert_eq!(fac.factors.len(), 2);
        let sqrt2 = AlgebraicNumber::generator(&field);
        let roots: Vec<AlgebraicNumber> = fac
            .factors
            .iter()
            .map(|(g, _)| g.coeff(0).unwrap().neg())
            .collect();
        assert!(roots.contains(&sqrt2) && roots.contains(&sqrt2.neg()));
        assert_eq!(fac.expand(), f);
    }

    #[test]
    fn irreducible_stays_irreducible() {
        // x^2 - 3 over Q(sqrt2) is irreducible.
        let field = NumberField::new_unchecked(UniPoly::from_ints(&[-2, 0, 1])).unwrap();
        let limits = Limits::default();
        let f = UniPoly::new(vec![k(&field, -3), k(&field, 0), k(&field, 1)]);
        let fac = factor_over_number_field(&f, &field, &limits).unwrap();
        assert_eq!(fac.factors.len(), 1);
        assert_eq!(fac.factors[0].0.deg(), 2);
    }

    #[test]
    fn repeated_factors_over_extension() {
        // (x - i)^2 (x + i) over Q(i)
        let field = q_i();
        let limits = Limits::default();
        let i = AlgebraicNumber::generator(&field);
        let xi = UniPoly::new(vec![i.neg(), k(&field, 1)]);
        let xmi = UniPoly::new(vec![i.clone(), k(&field, 1)]);
        let f = xi.mul(&xi).mul(&xmi);
        let fac = factor_over_number_field(&f, &field, &limits).unwrap();
        assert_eq!(fac.expand(), f);
        let mut mults: Vec<u32> = fac.factors.iter().map(|(_, e)| *e).collect();
        mults.sort();
        assert_eq!(mults, vec![1, 2]);
    }

    #[test]
    fn tower_collapses_to_primitive_element() {
        // Q(sqrt2), then adjoin a root of x^2 - 3: degree 4 over Q.
        let field = NumberField::new_unchecked(UniPoly::from_ints(&[-2, 0, 1])).unwrap();
        let limits = Limits::default();
        let g = UniPoly::new(vec![k(&field, -3), k(&field, 0), k(&field, 1)]);
        let ext = extend_by_irreducible(&field, &g, &limits).unwrap();
        assert_eq!(ext.field.degree(), 4);
        let sqrt2 = AlgebraicNumber::generator(&field);
        let emb = ext.embed(&sqrt2);
        assert_eq!(emb.mul(&emb), k(&ext.field, 2));
        assert_eq!(ext.root.mul(&ext.root), k(&ext.field, 3));
    }

    #[test]
    fn extension_of_rationals_is_direct() {
        let q = NumberField::rationals();
        let limits = Limits::default();
        let g = UniPoly::from_ints(&[1, 0, 1]).map(|c| AlgebraicNumber::rational(c.clone()));
        let ext = extend_by_irreducible(&q, &g, &limits).unwrap();
        assert_eq!(ext.field.degree(), 2);
        assert!(ext.root.mul(&ext.root).add(&k(&ext.field, 1)).is_zero());
    }
}
