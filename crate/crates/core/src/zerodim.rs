//! Triangular solving of zero-dimensional plane ideals into point classes.
//!
//! A point class is a Galois orbit of geometric points, represented once
//! over a number field with a degree weight: eliminate x, factor the
//! y-eliminant into irreducibles, and for each y-class factor the gcd of
//! the substituted generators over the extension. Conjugate points are
//! never split numerically.

use std::cmp::Ordering;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::{eliminate, global_colength, Colength, Ideal};
use crate::local::PlanePoint;
use crate::numberfield::{cmp_unipoly, AlgebraicNumber, NumberField};
use crate::poly::MonomialOrder;
use crate::rational::Rational;
use crate::trager::{extend_by_irreducible, factor_over_number_field, poly_to_unipoly_in};
use crate::unipoly::UniPoly;
use crate::Limits;

/// A conjugacy class of points: both coordinates in one field, weighted by
/// the degree of the residue extension over the rationals.
#[derive(Debug, Clone)]
pub struct PointClass {
    pub field: Arc<NumberField>,
    pub x: AlgebraicNumber,
    pub y: AlgebraicNumber,
    pub degree: u32,
}

impl PointClass {
    pub fn point(&self) -> PlanePoint {
        (self.x.clone(), self.y.clone())
    }

    pub fn is_rational(&self) -> bool {
        self.x.to_rational().is_some() && self.y.to_rational().is_some()
    }

    /// Canonical key: degree, then the field's minimal polynomial, then the
    /// coordinate representatives.
    pub fn canonical_cmp(&self, other: &PointClass) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| cmp_unipoly(self.field.min_poly(), other.field.min_poly()))
            .then_with(|| self.y.canonical_cmp(&other.y))
            .then_with(|| self.x.canonical_cmp(&other.x))
    }

    /// Structural identity of classes produced by this deterministic
    /// pipeline: same presentation means the same orbit.
    pub fn same_class(&self, other: &PointClass) -> bool {
        self.field.min_poly() == other.field.min_poly()
            && self.x == other.x
            && self.y == other.y
    }
}

/// Solve a zero-dimensional ideal in two variables into point classes,
/// sorted canonically. The unit ideal yields the empty list.
pub fn solve_zero_dim(ideal: &Ideal<Rational>, limits: &Limits) -> Result<Vec<PointClass>> {
    if ideal.vars().len() != 2 {
        return Err(Error::Structural(
            "point solving expects exactly two plane variables".into(),
        ));
    }
    if ideal.is_unit_ideal(limits)? {
        return Ok(Vec::new());
    }
    match global_colength(ideal, limits)? {
        Colength::Infinite => {
            return Err(Error::Domain(
                "point solving expects a zero-dimensional ideal".into(),
            ))
        }
        Colength::Finite(_) => {}
    }
    let names = ideal.vars().names();
    let xname = names[0].clone();

    // Eliminate x: the ideal in k[y] is principal with the eliminant as its
    // reduced basis.
    let elim = eliminate(ideal, &[xname.as_str()], limits)?;
    let elim_basis = elim.basis(&MonomialOrder::Lex, limits)?;
    let eliminant = elim_basis
        .first()
        .ok_or_else(|| Error::Domain("zero-dimensional ideal without y-eliminant".into()))?;
    let elim_uni: UniPoly<Rational> =
        poly_to_unipoly_in(eliminant, 0).map(|c| c.clone());
    let elim_sf = elim_uni.squarefree_part();

    let q_field = NumberField::rationals();
    let elim_k = elim_sf.map(|c| AlgebraicNumber::from_rational(&q_field, c.clone()));
    let y_factors = factor_over_number_field(&elim_k, &q_field, limits)?;

    let mut classes = Vec::new();
    for (qy, _) in &y_factors.factors {
        // The field of the y-coordinate.
        let ext_y = extend_by_irreducible(&q_field, qy, limits)?;
        let y_root = ext_y.root.clone();
        let field_y = ext_y.field.clone();
        let deg_y = qy.deg() as u32;

        // Substitute y and take the gcd of the generators as univariate
        // polynomials in x over the extension.
        let mut h: Option<UniPoly<AlgebraicNumber>> = None;
        for g in ideal.gens() {
            let lifted = g.lift_to(&y_root.zero_like());
            // x stays a variable, y becomes the root.
            let vars = g.vars();
            let x_img = crate::poly::Poly::var(vars, 0, y_root.one_like());
            let y_img = crate::poly::Poly::constant(vars, y_root.clone());
            let substituted = lifted.substitute(&[x_img, y_img]);
            let uni = poly_to_unipoly_in(&substituted, 0);
            if uni.is_zero() {
                continue;
            }
            h = Some(match h {
                None => uni,
                Some(prev) => prev.gcd(&uni),
            });
            if h.as_ref().map_or(false, |p| p.is_constant()) {
                break;
            }
        }
        let h = h.ok_or_else(|| {
            Error::Domain("all generators vanished after substitution: not zero-dimensional".into())
        })?;
        if h.is_constant() {
            // No point over this y-class; cannot happen for a true
            // eliminant factor of a zero-dimensional ideal.
            return Err(Error::Domain(format!(
                "spurious eliminant factor {qy}: no x-coordinate above it"
            )));
        }
        let h_sf = h.squarefree_part();
        let x_factors = factor_over_number_field(&h_sf, &field_y, limits)?;
        for (rx, _) in &x_factors.factors {
            let ext_x = extend_by_irreducible(&field_y, rx, limits)?;
            let x_root = ext_x.root.clone();
            let y_in = ext_x.embed(&y_root);
            classes.push(PointClass {
                field: ext_x.field.clone(),
                x: x_root,
                y: y_in,
                degree: deg_y * rx.deg() as u32,
            });
        }
    }
    classes.sort_by(|a, b| a.canonical_cmp(b));
    Ok(classes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parsepoly::parse_qpoly;
    use crate::poly::{QPoly, VarSet};

    fn xy() -> Arc<VarSet> {
        VarSet::new(vec!["x", "y"])
    }

    fn ideal(srcs: &[&str]) -> Ideal<Rational> {
        let vars = xy();
        Ideal::new(
            &vars,
            srcs.iter()
                .map(|s| parse_qpoly(s, &vars).unwrap())
                .collect(),
        )
    }

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn rational_points() {
        let classes = solve_zero_dim(&ideal(&["x^2-1", "y"]), &Limits::default()).unwrap();
        assert_eq!(classes.len(), 2);
        assert!(classes.iter().all(|c| c.degree == 1 && c.is_rational()));
        let xs: Vec<Rational> = classes.iter().map(|c| c.x.to_rational().unwrap()).collect();
        assert!(xs.contains(&q(1)) && xs.contains(&q(-1)));
    }

    #[test]
    fn conjugate_pair_is_one_class() {
        // x^2 + 1 = 0, y = 0: one class of degree 2.
        let classes = solve_zero_dim(&ideal(&["x^2+1", "y"]), &Limits::default()).unwrap();
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].degree, 2);
        assert_eq!(classes[0].field.degree(), 2);
        // x satisfies x^2 = -1.
        let x = &classes[0].x;
        assert!(x.mul(x).add(&x.one_like()).is_zero());
    }

    #[test]
    fn mixed_loci() {
        // (y)(y-1) = 0; on y=0: x = 0; on y=1: x^2 = 2. Three geometric
        // points in two classes.
        let i = ideal(&["y^2 - y", "x*(1-y)", "(x^2-2)*y"]);
        let classes = solve_zero_dim(&i, &Limits::default()).unwrap();
        assert_eq!(classes.len(), 2);
        let total: u32 = classes.iter().map(|c| c.degree).sum();
        assert_eq!(total, 3);
        // Classes are sorted by degree first.
        assert_eq!(classes[0].degree, 1);
        assert_eq!(classes[1].degree, 2);
    }

    #[test]
    fn degrees_sum_to_radical_colength() {
        // <x^2, y^3>: one fat point at the origin; its radical has colength 1.
        let classes = solve_zero_dim(&ideal(&["x^2", "y^3"]), &Limits::default()).unwrap();
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].degree, 1);
        assert!(classes[0].x.is_zero() && classes[0].y.is_zero());
    }

    #[test]
    fn unit_ideal_has_no_points() {
        let classes = solve_zero_dim(&ideal(&["1"]), &Limits::default()).unwrap();
        assert!(classes.is_empty());
    }

    #[test]
    fn positive_dimension_is_an_error() {
        assert!(solve_zero_dim(&ideal(&["x^2-y^3"]), &Limits::default()).is_err());
    }

    #[test]
    fn example_fiber_points() {
        // Singular locus data of Example-3-type fiber at (u,v) = (1,1):
        // the curve (x^2-y^3+y^2)(y-1) has singular points (0,0) and (0,1).
        let vars = xy();
        let g: QPoly = parse_qpoly("(x^2-y^3+y^2)*(y-1)", &vars).unwrap();
        let gx = g.derivative(0);
        let gy = g.derivative(1);
        let i = Ideal::new(&vars, vec![g, gx, gy]);
        let classes = solve_zero_dim(&i, &Limits::default()).unwrap();
        assert_eq!(classes.len(), 2);
        assert!(classes.iter().all(|c| c.degree == 1));
        let pts: Vec<(Rational, Rational)> = classes
            .iter()
            .map(|c| (c.x.to_rational().unwrap(), c.y.to_rational().unwrap()))
            .collect();
        assert!(pts.contains(&(q(0), q(0))));
        assert!(pts.contains(&(q(0), q(1))));
    }
}
