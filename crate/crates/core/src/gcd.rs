//! Multivariate gcd, squarefree parts and resultants.
//!
//! The gcd is computed by the classical content/primitive-part recursion
//! with a subresultant polynomial remainder sequence in the main variable;
//! the resultant uses the same PRS with the sign bookkeeping of the
//! Sylvester-determinant convention. Everything is exact.
//!
//! Normalization convention, fixed once: results of [`gcd`],
//! [`squarefree_part`] and friends are scaled so the leading coefficient
//! under the lexicographic order is 1 ("lex-monic").

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::Poly;

/// Degree of `p` in variable `var`.
fn deg_in<K: Field>(p: &Poly<K>, var: usize) -> Option<u32> {
    if p.is_zero() {
        None
    } else {
        Some(p.degree_in(var))
    }
}

/// Coefficient of `var^k` in `p` (a polynomial not involving `var`).
fn coeff_of<K: Field>(p: &Poly<K>, var: usize, k: u32) -> Poly<K> {
    let mut out = Poly::zero(p.vars());
    for (m, c) in p.terms() {
        if m.0[var] == k {
            let mut m2 = m.clone();
            m2.0[var] = 0;
            out = out.add(&Poly::term(p.vars(), m2, c.clone()));
        }
    }
    out
}

/// Leading coefficient of `p` viewed as univariate in `var`.
fn lead_coeff_in<K: Field>(p: &Poly<K>, var: usize) -> Poly<K> {
    coeff_of(p, var, p.degree_in(var))
}

/// Multiply `p` by `q * var^k` where `q` does not involve `var`.
fn mul_shifted<K: Field>(p: &Poly<K>, q: &Poly<K>, var: usize, k: u32) -> Poly<K> {
    let mut shift = Poly::zero(p.vars());
    for (m, c) in q.terms() {
        let mut m2 = m.clone();
        m2.0[var] += k;
        shift = shift.add(&Poly::term(p.vars(), m2, c.clone()));
    }
    p.mul(&shift)
}

/// Pseudo-remainder: `lc(B)^(deg A - deg B + 1) * A = Q*B + R` with
/// `deg_var R < deg_var B`.
fn pseudo_rem<K: Field>(a: &Poly<K>, b: &Poly<K>, var: usize) -> Poly<K> {
    let db = b.degree_in(var);
    let da = a.degree_in(var);
    assert!(da >= db);
    let lcb = lead_coeff_in(b, var);
    let mut r = a.clone();
    let mut e = da - db + 1;
    while let Some(dr) = deg_in(&r, var) {
        if dr < db {
            break;
        }
        let lcr = lead_coeff_in(&r, var);
        r = r.mul(&lcb).sub(&mul_shifted(b, &lcr, var, dr - db));
        e -= 1;
    }
    // Normalize so exactly lc(B)^(da-db+1) was applied.
    let mut out = r;
    for _ in 0..e {
        out = out.mul(&lcb);
    }
    out
}

fn exact_div_checked<K: Field>(num: &Poly<K>, den: &Poly<K>) -> Poly<K> {
    num.exact_div(den)
        .expect("inexact division inside a subresultant sequence (internal bug)")
}

/// Content of `p` with respect to `var`: gcd of its coefficients.
fn content_in<K: Field>(p: &Poly<K>, var: usize) -> Result<Poly<K>> {
    let d = p.degree_in(var);
    let mut cont = Poly::zero(p.vars());
    for k in 0..=d {
        let c = coeff_of(p, var, k);
        if c.is_zero() {
            continue;
        }
        cont = if cont.is_zero() { c } else { gcd(&cont, &c)? };
        if cont.is_constant() {
            break;
        }
    }
    Ok(cont.lex_monic())
}

/// Greatest common divisor, lex-monic.
///
/// Undefined (an error) for two zero inputs; `gcd(f, 0)` is the lex-monic
/// associate of `f`.
pub fn gcd<K: Field>(a: &Poly<K>, b: &Poly<K>) -> Result<Poly<K>> {
    a.check_same_ring(b)?;
    if a.is_zero() && b.is_zero() {
        return Err(Error::UndefinedGcd);
    }
    if a.is_zero() {
        return Ok(b.lex_monic());
    }
    if b.is_zero() {
        return Ok(a.lex_monic());
    }
    if a.is_constant() || b.is_constant() {
        let one = a.sample_coeff().unwrap().one_like();
        return Ok(Poly::constant(a.vars(), one));
    }
    // Highest-index variable occurring in either operand.
    let nvars = a.vars().len();
    let var = (0..nvars)
        .rev()
        .find(|&v| a.degree_in(v) > 0 || b.degree_in(v) > 0)
        .expect("nonconstant polynomials involve a variable");

    let cont_a = content_in(a, var)?;
    let cont_b = content_in(b, var)?;
    let cont = gcd(&cont_a, &cont_b)?;
    let pa = exact_div_checked(a, &cont_a);
    let pb = exact_div_checked(b, &cont_b);

    let pp = primitive_prs_gcd(&pa, &pb, var)?;
    Ok(cont.mul(&pp).lex_monic())
}

/// gcd of primitive (w.r.t. `var`) polynomials via the subresultant PRS.
fn primitive_prs_gcd<K: Field>(pa: &Poly<K>, pb: &Poly<K>, var: usize) -> Result<Poly<K>> {
    let (mut a, mut b) = if pa.degree_in(var) >= pb.degree_in(var) {
        (pa.clone(), pb.clone())
    } else {
        (pb.clone(), pa.clone())
    };
    if b.is_zero() {
        return Ok(a);
    }
    let one = Poly::constant(a.vars(), a.sample_coeff().unwrap().one_like());
    let mut g = one.clone();
    let mut h = one;
    loop {
        let da = a.degree_in(var);
        let db = b.degree_in(var);
        if db == 0 {
            // A nonzero constant remainder (in var): the primitive parts are
            // coprime.
            return Ok(Poly::constant(
                a.vars(),
                a.sample_coeff().unwrap().one_like(),
            ));
        }
        let delta = da - db;
        let r = pseudo_rem(&a, &b, var);
        if r.is_zero() {
            // b divides a (up to content): b's primitive part is the gcd.
            let cont_b = content_in(&b, var)?;
            return Ok(exact_div_checked(&b, &cont_b));
        }
        a = b;
        let mut divisor = g.clone();
        for _ in 0..delta {
            divisor = divisor.mul(&h);
        }
        b = exact_div_checked(&r, &divisor);
        g = lead_coeff_in(&a, var);
        h = if delta == 0 {
            h
        } else {
            // h <- g^delta / h^(delta-1)
            let mut num = g.clone();
            for _ in 1..delta {
                num = num.mul(&g);
            }
            let mut den = Poly::constant(a.vars(), a.sample_coeff().unwrap().one_like());
            for _ in 1..delta {
                den = den.mul(&h);
            }
            exact_div_checked(&num, &den)
        };
    }
}

/// gcd of a nonempty list, lex-monic.
pub fn gcd_many<K: Field>(polys: &[Poly<K>]) -> Result<Poly<K>> {
    let mut nonzero = polys.iter().filter(|p| !p.is_zero());
    let first = nonzero
        .next()
        .ok_or(Error::UndefinedGcd)?;
    let mut acc = first.lex_monic();
    for p in nonzero {
        if acc.is_constant() {
            break;
        }
        acc = gcd(&acc, p)?;
    }
    Ok(acc)
}

/// Product of the distinct irreducible factors of `f`, lex-monic.
pub fn squarefree_part<K: Field>(f: &Poly<K>) -> Result<Poly<K>> {
    if f.is_zero() {
        return Err(Error::Domain("squarefree part of zero".into()));
    }
    if f.is_constant() {
        let one = f.sample_coeff().unwrap().one_like();
        return Ok(Poly::constant(f.vars(), one));
    }
    let mut g = f.clone();
    for v in 0..f.vars().len() {
        let d = f.derivative(v);
        if d.is_zero() {
            continue;
        }
        g = gcd(&g, &d)?;
        if g.is_constant() {
            break;
        }
    }
    if g.is_constant() {
        return Ok(f.lex_monic());
    }
    Ok(exact_div_checked(f, &g).lex_monic())
}

/// True iff `f` has no repeated nonconstant factor.
pub fn is_squarefree<K: Field>(f: &Poly<K>) -> Result<bool> {
    if f.is_zero() {
        return Err(Error::Domain("squarefree test of zero".into()));
    }
    if f.is_constant() {
        return Ok(true);
    }
    let mut g = f.clone();
    for v in 0..f.vars().len() {
        let d = f.derivative(v);
        if d.is_zero() {
            continue;
        }
        g = gcd(&g, &d)?;
        if g.is_constant() {
            return Ok(true);
        }
    }
    Ok(g.is_constant())
}

/// Resultant of `f` and `g` with respect to `var`, with the sign of the
/// Sylvester matrix determinant. Computed by a subresultant PRS.
///
/// Requires at least one operand of positive degree in `var`; a degree-zero
/// operand `c` yields `c^(deg other)`.
pub fn resultant_in_var<K: Field>(f: &Poly<K>, g: &Poly<K>, var: usize) -> Result<Poly<K>> {
    f.check_same_ring(g)?;
    if f.is_zero() || g.is_zero() {
        return Err(Error::Domain("resultant of a zero polynomial".into()));
    }
    if var >= f.vars().len() {
        return Err(Error::Domain(format!("no variable with index {var}")));
    }
    let df = f.degree_in(var);
    let dg = g.degree_in(var);
    if df == 0 && dg == 0 {
        return Err(Error::Domain(
            "resultant requires positive degree in the chosen variable".into(),
        ));
    }
    let one_k = f.sample_coeff().unwrap().one_like();
    let one = Poly::constant(f.vars(), one_k);

    let (mut a, mut b, mut sign_neg) = if df >= dg {
        (f.clone(), g.clone(), false)
    } else {
        (g.clone(), f.clone(), (df % 2 == 1) && (dg % 2 == 1))
    };

    if b.degree_in(var) == 0 {
        // Res(A, c) = c^(deg A)
        let mut acc = one;
        for _ in 0..a.degree_in(var) {
            acc = acc.mul(&b);
        }
        return Ok(if sign_neg { acc.neg() } else { acc });
    }

    let mut g_prev = one.clone();
    let mut h = one.clone();
    loop {
        let da = a.degree_in(var);
        let db = b.degree_in(var);
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            sign_neg = !sign_neg;
        }
        let r = pseudo_rem(&a, &b, var);
        a = b;
        let mut divisor = g_prev.clone();
        for _ in 0..delta {
            divisor = divisor.mul(&h);
        }
        if r.is_zero() {
            // Nontrivial common factor: the resultant vanishes.
            return Ok(Poly::zero(f.vars()));
        }
        b = exact_div_checked(&r, &divisor);
        g_prev = lead_coeff_in(&a, var);
        h = if delta == 0 {
            h
        } else {
            let mut num = g_prev.clone();
            for _ in 1..delta {
                num = num.mul(&g_prev);
            }
            let mut den = one.clone();
            for _ in 1..delta {
                den = den.mul(&h);
            }
            exact_div_checked(&num, &den)
        };
        if b.degree_in(var) == 0 {
            break;
        }
    }
    // Final adjustment: res = sign * lc(B)^(deg A) / h^(deg A - 1).
    let da = a.degree_in(var);
    debug_assert!(da >= 1);
    let lcb = coeff_of(&b, var, 0);
    let mut num = one.clone();
    for _ in 0..da {
        num = num.mul(&lcb);
    }
    let mut den = one;
    for _ in 1..da {
        den = den.mul(&h);
    }
    let res = exact_div_checked(&num, &den);
    Ok(if sign_neg { res.neg() } else { res })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parsepoly::parse_qpoly;
    use crate::poly::{QPoly, VarSet};
    use crate::rational::Rational;
    use std::sync::Arc;

    fn xy() -> Arc<VarSet> {
        VarSet::new(vec!["x", "y"])
    }

    fn p(src: &str, vars: &Arc<VarSet>) -> QPoly {
        parse_qpoly(src, vars).unwrap()
    }

    #[test]
    fn gcd_idempotent_and_coprime() {
        let vars = xy();
        let f = p("(x^2-y^3)*y", &vars);
        let g = gcd(&f, &f).unwrap();
        assert_eq!(g, f.lex_monic());
        let one = gcd(&p("x", &vars), &p("y", &vars)).unwrap();
        assert!(one.is_constant());
    }

    #[test]
    fn gcd_divides_both_and_cofactors_coprime() {
        let vars = xy();
        let a = p("(x^2-y^3)*y*(x+y)", &vars);
        let b = p("(x^2-y^3)*y*(x-y)", &vars);
        let g = gcd(&a, &b).unwrap();
        let qa = a.exact_div(&g).unwrap();
        let qb = b.exact_div(&g).unwrap();
        assert!(gcd(&qa, &qb).unwrap().is_constant());
        assert_eq!(g, p("(x^2-y^3)*y", &vars).lex_monic());
    }

    #[test]
    fn gcd_both_zero_is_error() {
        let vars = xy();
        let z = QPoly::zero(&vars);
        assert!(matches!(gcd(&z, &z), Err(Error::UndefinedGcd)));
    }

    #[test]
    fn squarefree_part_examples() {
        let vars = xy();
        // Monomial case.
        assert_eq!(squarefree_part(&p("x^2*y^3", &vars)).unwrap(), p("x*y", &vars));
        // Already squarefree: gcd with the partials is constant.
        let f = p("(x^2-y^3)*y", &vars);
        assert_eq!(squarefree_part(&f).unwrap(), f.lex_monic());
        // Perfect square.
        let g = p("(y-x^2)^2", &vars);
        assert_eq!(squarefree_part(&g).unwrap(), p("y-x^2", &vars).lex_monic());
    }

    #[test]
    fn resultant_sylvester_signs() {
        let vars = xy();
        // Res_x(x - y, x - 2y) = -y
        let r = resultant_in_var(&p("x-y", &vars), &p("x-2*y", &vars), 0).unwrap();
        assert_eq!(r, p("y", &vars).neg());
        // Res_x(x^2 - y^3, x) = -y^3
        let r = resultant_in_var(&p("x^2-y^3", &vars), &p("x", &vars), 0).unwrap();
        assert_eq!(r, p("y^3", &vars).neg());
        // Res_x(f, 1) = 1
        let r = resultant_in_var(&p("x^2-y^3", &vars), &p("1", &vars), 0).unwrap();
        assert_eq!(r, p("1", &vars));
        // Both constant in the variable: domain error.
        assert!(resultant_in_var(&p("y", &vars), &p("y+1", &vars), 0).is_err());
    }

    /// Sylvester-determinant oracle via cofactor expansion, test-only.
    fn sylvester_resultant(f: &QPoly, g: &QPoly, var: usize) -> QPoly {
        let df = f.degree_in(var) as usize;
        let dg = g.degree_in(var) as usize;
        let n = df + dg;
        let vars = f.vars().clone();
        let coeff = |p: &QPoly, k: usize| -> QPoly {
            let mut out = QPoly::zero(&vars);
            for (m, c) in p.terms() {
                if m.0[var] as usize == k {
                    let mut m2 = m.clone();
                    m2.0[var] = 0;
                    out = out.add(&QPoly::term(&vars, m2, c.clone()));
                }
            }
            out
        };
        // Rows: dg rows of f coefficients (descending), then df rows of g.
        let mut mat: Vec<Vec<QPoly>> = Vec::new();
        for i in 0..dg {
            let mut row = vec![QPoly::zero(&vars); n];
            for k in 0..=df {
                row[i + k] = coeff(f, df - k);
            }
            mat.push(row);
        }
        for i in 0..df {
            let mut row = vec![QPoly::zero(&vars); n];
            for k in 0..=dg {
                row[i + k] = coeff(g, dg - k);
            }
            mat.push(row);
        }
        det(&mat, &vars)
    }

    fn det(mat: &[Vec<QPoly>], vars: &Arc<VarSet>) -> QPoly {
        let n = mat.len();
        if n == 0 {
            return QPoly::constant(vars, Rational::one());
        }
        if n == 1 {
            return mat[0][0].clone();
        }
        let mut acc = QPoly::zero(vars);
        for j in 0..n {
            if mat[0][j].is_zero() {
                continue;
            }
            let minor: Vec<Vec<QPoly>> = mat[1..]
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|(k, _)| *k != j)
                        .map(|(_, v)| v.clone())
                        .collect()
                })
                .collect();
            let term = mat[0][j].mul(&det(&minor, vars));
            acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
        }
        acc
    }

    #[test]
    fn resultant_matches_sylvester_oracle() {
        let vars = xy();
        let cases = [
            ("x^2-y^3", "x-y"),
            ("x^3+2*x*y+1", "x^2-y"),
            ("x^2+y^2", "x^2-y^2"),
            ("x^4 - y", "x^2 + x + y^2"),
            ("2*x^2+3*y", "5*x^3 - y^2 + x"),
        ];
        for (a, b) in cases {
            let f = p(a, &vars);
            let g = p(b, &vars);
            let prs = resultant_in_var(&f, &g, 0).unwrap();
            let syl = sylvester_resultant(&f, &g, 0);
            assert_eq!(prs, syl, "resultant mismatch for {a}, {b}");
            let prs_swapped = resultant_in_var(&g, &f, 0).unwrap();
            let syl_swapped = sylvester_resultant(&g, &f, 0);
            assert_eq!(prs_swapped, syl_swapped, "swapped mismatch for {a}, {b}");
        }
    }
}
