//! Local (germ-at-a-point) colengths via truncation.
//!
//! dim_k (A + m^N)/(B + m^N) is computed by exact Gaussian elimination on
//! the monomial coordinates of degree < N after translating the point to
//! the origin, with N stepping up until the value certifies itself:
//! equal at N and N+1 and N at least the value. Components of A/B away from
//! the point become units modulo m^N and are neutralized automatically.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::Ideal;
use crate::numberfield::{AlgebraicNumber, NumberField};
use crate::poly::{Monomial, Poly, QPoly};
use crate::rational::Rational;
use crate::Limits;

/// A plane point with coordinates in a common field.
pub type PlanePoint = (AlgebraicNumber, AlgebraicNumber);

/// A rational plane point as a [`PlanePoint`] over the trivial field.
pub fn rational_point(x: Rational, y: Rational) -> PlanePoint {
    let q = NumberField::rationals();
    (
        AlgebraicNumber::from_rational(&q, x),
        AlgebraicNumber::from_rational(&q, y),
    )
}

pub fn origin() -> PlanePoint {
    rational_point(Rational::zero(), Rational::zero())
}

/// An ideal in two plane variables together with the point at which germ
/// quantities are taken.
#[derive(Debug, Clone)]
pub struct GermIdeal {
    pub ideal: Ideal<Rational>,
    pub point: PlanePoint,
}

impl GermIdeal {
    pub fn new(ideal: Ideal<Rational>, point: PlanePoint) -> Result<Self> {
        if ideal.vars().len() != 2 {
            return Err(Error::Structural(
                "germ ideals live in exactly two plane variables".into(),
            ));
        }
        if !point.0.same_field(&point.1) {
            return Err(Error::Structural(
                "point coordinates from different fields".into(),
            ));
        }
        Ok(GermIdeal { ideal, point })
    }
}

/// A stabilized local dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TruncationResult {
    pub dimension: u64,
    /// The truncation order at which the value stabilized.
    pub stabilization_order: u32,
}

/// Exactly the order-N truncated dimension, exposed for stabilization
/// soundness checks.
pub fn truncated_dim_at<K: Field>(
    a_gens: &[Poly<K>],
    b_gens: &[Poly<K>],
    point: &(K, K),
    n: u32,
) -> u64 {
    let ra = truncated_rank(a_gens, point, n);
    let rb = truncated_rank(b_gens, point, n);
    assert!(ra >= rb, "B-rows outside the A-span: precondition violated");
    ra - rb
}

/// The local colength engine over a generic field. Preconditions (B inside
/// A, a common field) are the caller's responsibility; the public wrappers
/// check them.
pub fn local_colength_engine<K: Field>(
    a_gens: &[Poly<K>],
    b_gens: &[Poly<K>],
    point: &(K, K),
    limits: &Limits,
) -> Result<TruncationResult> {
    let mut n = limits.truncation_start;
    loop {
        if n + 1 > limits.truncation_ceiling {
            return Err(Error::NotFinite(format!(
                "local colength did not stabilize below truncation order {}",
                limits.truncation_ceiling
            )));
        }
        let d_n = truncated_dim_at(a_gens, b_gens, point, n);
        let d_n1 = truncated_dim_at(a_gens, b_gens, point, n + 1);
        if d_n == d_n1 && u64::from(n) >= d_n {
            return Ok(TruncationResult {
                dimension: d_n,
                stabilization_order: n,
            });
        }
        n += limits.truncation_step;
    }
}

/// Rank of the span of `{g * monomial}` inside k[x,y]/m^N at the translated
/// point.
fn truncated_rank<K: Field>(gens: &[Poly<K>], point: &(K, K), n: u32) -> u64 {
    if gens.is_empty() {
        return 0;
    }
    let vars = gens[0].vars().clone();
    assert_eq!(vars.len(), 2);
    let one = point.0.one_like();
    // x -> x + px, y -> y + py.
    let x_img = Poly::var(&vars, 0, one.clone()).add(&Poly::constant(&vars, point.0.clone()));
    let y_img = Poly::var(&vars, 1, one).add(&Poly::constant(&vars, point.1.clone()));
    let images = [x_img, y_img];

    // Monomial index for degree < n.
    let mut index = std::collections::BTreeMap::new();
    let mut count = 0usize;
    for d in 0..n {
        for i in 0..=d {
            index.insert(Monomial(vec![d - i, i]), count);
            count += 1;
        }
    }

    let mut elim: Echelon<K> = Echelon::new(count);
    for g in gens {
        if g.is_zero() {
            continue;
        }
        let t = g.substitute(&images);
        let Some(ord) = t.order_at_origin() else {
            continue;
        };
        if ord >= n {
            continue;
        }
        // Rows: t * x^i y^j for all monomials with ord + deg < n.
        for d in 0..(n - ord) {
            for i in 0..=d {
                let m = Monomial(vec![d - i, i]);
                let prod = t.mul_term(&m, &t.sample_coeff().unwrap().one_like());
                let mut row = vec![None; count];
                for (mono, c) in prod.terms() {
                    if mono.degree() < n {
                        row[index[mono]] = Some(c.clone());
                    }
                }
                elim.insert(row);
            }
        }
    }
    elim.rank() as u64
}

/// Incremental row echelon form over an exact field, rows stored sparsely as
/// Option<K> vectors.
struct Echelon<K: Field> {
    cols: usize,
    /// (pivot column, normalized row)
    pivots: Vec<(usize, Vec<Option<K>>)>,
}

impl<K: Field> Echelon<K> {
    fn new(cols: usize) -> Self {
        Echelon {
            cols,
            pivots: Vec::new(),
        }
    }

    fn rank(&self) -> usize {
        self.pivots.len()
    }

    fn insert(&mut self, mut row: Vec<Option<K>>) {
        debug_assert_eq!(row.len(), self.cols);
        loop {
            let Some(lead) = row.iter().position(|c| c.as_ref().map_or(false, |v| !v.is_zero()))
            else {
                return;
            };
            match self.pivots.binary_search_by(|(pc, _)| pc.cmp(&lead)) {
                Ok(idx) => {
                    // Eliminate against the existing pivot.
                    let factor = row[lead].clone().unwrap();
                    let pivot_row = self.pivots[idx].1.clone();
                    for (c, pv) in row.iter_mut().zip(pivot_row.iter()) {
                        if let Some(pvv) = pv {
                            let sub = factor.mul(pvv);
                            *c = Some(match c.take() {
                                Some(v) => v.sub(&sub),
                                None => sub.neg(),
                            });
                        }
                    }
                }
                Err(idx) => {
                    // Normalize and install.
                    let inv = row[lead].clone().unwrap().inv().expect("nonzero pivot");
                    for c in row.iter_mut() {
                        if let Some(v) = c.take() {
                            if !v.is_zero() {
                                *c = Some(v.mul(&inv));
                            }
                        }
                    }
                    self.pivots.insert(idx, (lead, row));
                    return;
                }
            }
        }
    }
}

/// Lift the generators of a rational ideal to the field of the point.
pub fn lift_gens(ideal: &Ideal<Rational>, context: &AlgebraicNumber) -> Vec<Poly<AlgebraicNumber>> {
    ideal.gens().iter().map(|g| g.lift_to(context)).collect()
}

/// dim of (A + m^N)/(B + m^N) at the common point, stabilized.
///
/// Checks the preconditions: same point, B contained in A (on generators,
/// by Groebner membership over the rationals).
pub fn local_colength(a: &GermIdeal, b: &GermIdeal, limits: &Limits) -> Result<TruncationResult> {
    if a.point != b.point {
        return Err(Error::Structural(
            "local colength of germs at different points".into(),
        ));
    }
    for g in b.ideal.gens() {
        if !a.ideal.contains(g, limits)? {
            return Err(Error::Domain(
                "B is not contained in A: a generator fails membership".into(),
            ));
        }
    }
    let ctx = a.point.0.zero_like();
    let a_gens = lift_gens(&a.ideal, &ctx);
    let b_gens = lift_gens(&b.ideal, &ctx);
    local_colength_engine(&a_gens, &b_gens, &a.point, limits)
}

/// dim k[x,y]_p / J_p: the germ colength against the unit ideal.
pub fn local_colength_of(j: &Ideal<Rational>, point: &PlanePoint, limits: &Limits) -> Result<u64> {
    let one = Poly::constant(j.vars(), Rational::one());
    let unit = Ideal::new(j.vars(), vec![one]);
    let a = GermIdeal::new(unit, point.clone())?;
    let b = GermIdeal::new(j.clone(), point.clone())?;
    Ok(local_colength(&a, &b, limits)?.dimension)
}

/// Intersection multiplicity of two curves at a point: dim O/(f, g).
///
/// Errors when f and g share a component through the point.
pub fn intersection_multiplicity(
    f: &QPoly,
    g: &QPoly,
    point: &PlanePoint,
    limits: &Limits,
) -> Result<u64> {
    f.check_same_ring(g)?;
    if f.is_zero() || g.is_zero() {
        return Err(Error::Domain(
            "intersection multiplicity with a zero curve".into(),
        ));
    }
    let d = crate::gcd::gcd(f, g)?;
    if !d.is_constant() {
        let ctx = point.0.zero_like();
        if d.lift_to(&ctx).eval(&[point.0.clone(), point.1.clone()]).is_zero() {
            return Err(Error::Domain(
                "curves share a component through the point: infinite multiplicity".into(),
            ));
        }
    }
    let ctx = point.0.zero_like();
    let one = Poly::constant(f.vars(), ctx.one_like());
    let a = vec![one];
    let b = vec![f.lift_to(&ctx), g.lift_to(&ctx)];
    Ok(local_colength_engine(&a, &b, point, limits)?.dimension)
}

/// Milnor number: colength of the Jacobian ideal at the point.
pub fn milnor_number(f: &QPoly, point: &PlanePoint, limits: &Limits) -> Result<u64> {
    if f.is_zero() {
        return Err(Error::Domain("Milnor number of the zero polynomial".into()));
    }
    if !crate::gcd::is_squarefree(f)? {
        return Err(Error::Domain(
            "Milnor number requested for a non-squarefree germ".into(),
        ));
    }
    let ctx = point.0.zero_like();
    let lifted = f.lift_to(&ctx);
    if !lifted.eval(&[point.0.clone(), point.1.clone()]).is_zero() {
        return Err(Error::Domain("the germ does not pass through the point".into()));
    }
    let fx = lifted.derivative(0);
    let fy = lifted.derivative(1);
    let one = Poly::constant(f.vars(), ctx.one_like());
    local_colength_engine(&[one], &[fx, fy], point, limits).map(|r| r.dimension)
}
