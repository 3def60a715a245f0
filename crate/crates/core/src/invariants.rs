//! Delta and epsilon invariants of a generically reduced plane ideal.
//!
//! The ideal is split into its hypersurface part g (the gcd of the
//! generators) and its fat-point part J (the quotient I : g); the
//! Hilbert-Burch identity <g>*J = I is verified rather than assumed. The
//! singular locus is the union of the singular points of g and the support
//! of J; at each point class the invariants are
//!
//!   epsilon = dim rad(I)/I           (points on the curve)
//!   epsilon = dim O/J               (isolated points: the whole local ring
//!                                     is supported there)
//!   delta   = delta_red - epsilon
//!
//! so the defining relation delta = delta_red - epsilon holds at every
//! reported point, and at isolated points delta = -dim O/J.

use std::cmp::Ordering;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::gcd;
use crate::groebner::{self, Ideal, QIdeal};
use crate::local::{local_colength_engine, lift_gens, local_colength_of, milnor_number};
use crate::poly::{MonomialOrder, Poly, QPoly, VarSet};
use crate::rational::Rational;
use crate::resolution::{resolve_germ_q, EsTree};
use crate::zerodim::{solve_zero_dim, PointClass};
use crate::Limits;

/// How a singular-locus point class sits in the curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum LocusKind {
    CurveSingular,
    EmbeddedOnCurve,
    IsolatedPoint,
}

impl LocusKind {
    pub fn as_str(self) -> &'static str {
        match self {
            LocusKind::CurveSingular => "curve-singular",
            LocusKind::EmbeddedOnCurve => "embedded-on-curve",
            LocusKind::IsolatedPoint => "isolated-point",
        }
    }
}

/// The Hilbert-Burch splitting of a plane ideal.
#[derive(Debug, Clone)]
pub struct HbSplit {
    /// The hypersurface factor, lex-monic. Constant 1 when the ideal has no
    /// curve part.
    pub g: QPoly,
    /// The fat-point factor `I : <g>`.
    pub j: QIdeal,
    /// Two-way membership verification of `<g> * J = I`.
    pub verified: bool,
}

/// Per-point invariants.
#[derive(Debug, Clone)]
pub struct PointReport {
    pub class: PointClass,
    pub kind: LocusKind,
    pub delta_red: u64,
    pub epsilon: u64,
    pub delta: i64,
    pub mu: u64,
    pub branches: u64,
    pub tree: Option<EsTree>,
}

/// The full invariant report of one plane ideal.
#[derive(Debug, Clone)]
pub struct InvariantReport {
    pub per_point: Vec<PointReport>,
    pub total_delta: i64,
    /// Rational linear coordinate change applied when the locus was not
    /// triangular in the given coordinates (row major 2x2), with points
    /// mapped back to the original coordinates.
    pub coordinate_change: Option<[Rational; 4]>,
    pub split: HbSplit,
}

/// Split `I = <g> * J` with `g` the gcd of the generators and `J = I : g`,
/// verifying the product identity by two-way membership.
pub fn hb_split(ideal: &QIdeal, limits: &Limits) -> Result<HbSplit> {
    if ideal.is_zero_ideal() {
        return Err(Error::Domain("cannot split the zero ideal".into()));
    }
    let g = groebner::gens_gcd(ideal)?;
    if !gcd::is_squarefree(&g)? {
        return Err(Error::NotGenericallyReduced(format!(
            "gcd of the generators is not squarefree: {g}"
        )));
    }
    let j = groebner::quotient(ideal, &g, limits)?;
    let product = Ideal::principal(g.clone()).product(&j);
    let verified = product.equals(ideal, limits)?;
    if !verified {
        return Err(Error::NotHilbertBurch(
            "the product <g> * (I : g) does not reproduce I".into(),
        ));
    }
    Ok(HbSplit { g, j, verified })
}

/// The radical of `I = <g> * J`: `<g> /\ rad(J)`.
fn radical_of_split(split: &HbSplit, limits: &Limits) -> Result<QIdeal> {
    let g_part = if split.g.is_constant() {
        None
    } else {
        Some(Ideal::principal(split.g.clone()))
    };
    let j_part = if split.j.is_unit_ideal(limits)? {
        None
    } else {
        Some(groebner::zero_dim_radical(&split.j, limits)?)
    };
    match (g_part, j_part) {
        (Some(g), Some(j)) => groebner::intersect(&g, &j, limits),
        (Some(g), None) => Ok(g),
        (None, Some(j)) => Ok(j),
        (None, None) => Err(Error::Domain("unit ideal has no singular locus".into())),
    }
}

/// The singular locus of a generically reduced plane ideal: classes of
/// curve-singular points and of the support of the fat-point part, with
/// kinds. Returns the coordinate change used, if any.
pub fn singular_locus(
    ideal: &QIdeal,
    limits: &Limits,
) -> Result<(Vec<(PointClass, LocusKind)>, Option<[Rational; 4]>)> {
    let split = hb_split(ideal, limits)?;
    match singular_locus_of_split(ideal, &split, limits) {
        Ok(classes) => Ok((classes, None)),
        Err(first_err) => {
            // Retry under seeded rational linear coordinate changes; map the
            // classes back through the inverse change.
            let mut rng = ChaCha8Rng::seed_from_u64(limits.rng_seed);
            for _attempt in 0..5 {
                let m = random_unimodular(&mut rng);
                let changed = apply_linear_change_ideal(ideal, &m)?;
                let changed_split = match hb_split(&changed, limits) {
                    Ok(s) => s,
                    Err(_) => continue,
                };
                if let Ok(classes) = singular_locus_of_split(&changed, &changed_split, limits) {
                    let back = classes
                        .into_iter()
                        .map(|(c, k)| (map_class_through(&m, c), k))
                        .collect();
                    return Ok((back, Some(m)));
                }
            }
            Err(first_err)
        }
    }
}

fn singular_locus_of_split(
    ideal: &QIdeal,
    split: &HbSplit,
    limits: &Limits,
) -> Result<Vec<(PointClass, LocusKind)>> {
    let vars = ideal.vars();
    let mut out: Vec<(PointClass, LocusKind)> = Vec::new();

    // (a) Singular points of the curve part.
    if !split.g.is_constant() {
        let gx = split.g.derivative(0);
        let gy = split.g.derivative(1);
        let sing = Ideal::new(vars, vec![split.g.clone(), gx, gy]);
        if !sing.is_unit_ideal(limits)? {
            for class in solve_zero_dim(&sing, limits)? {
                out.push((class, LocusKind::CurveSingular));
            }
        }
    }

    // (b) Support of the fat-point part, classified by whether the curve
    // passes through.
    if !split.j.is_unit_ideal(limits)? {
        for class in solve_zero_dim(&split.j, limits)? {
            let kind = if split.g.is_constant() {
                LocusKind::IsolatedPoint
            } else {
                let ctx = class.x.zero_like();
                let val = split
                    .g
                    .lift_to(&ctx)
                    .eval(&[class.x.clone(), class.y.clone()]);
                if val.is_zero() {
                    LocusKind::EmbeddedOnCurve
                } else {
                    LocusKind::IsolatedPoint
                }
            };
            // Merge with an existing curve-singular class at the same point.
            if let Some(existing) = out.iter_mut().find(|(c, _)| c.same_class(&class)) {
                existing.1 = kind;
            } else {
                out.push((class, kind));
            }
        }
    }
    out.sort_by(|(a, _), (b, _)| a.canonical_cmp(b));
    Ok(out)
}

fn random_unimodular(rng: &mut ChaCha8Rng) -> [Rational; 4] {
    loop {
        let pick = |rng: &mut ChaCha8Rng| Rational::from_int(rng.gen_range(-3i64..=3));
        let m = [pick(rng), pick(rng), pick(rng), pick(rng)];
        let det = &(&m[0] * &m[3]) - &(&m[1] * &m[2]);
        if !det.is_zero() {
            return m;
        }
    }
}

/// Substitute `x -> m00 x + m01 y`, `y -> m10 x + m11 y` in every generator.
fn apply_linear_change_ideal(ideal: &QIdeal, m: &[Rational; 4]) -> Result<QIdeal> {
    let vars = ideal.vars();
    let x = Poly::var(vars, 0, Rational::one());
    let y = Poly::var(vars, 1, Rational::one());
    let x_img = x.scale(&m[0]).add(&y.scale(&m[1]));
    let y_img = x.scale(&m[2]).add(&y.scale(&m[3]));
    let gens = ideal
        .gens()
        .iter()
        .map(|g| g.substitute(&[x_img.clone(), y_img.clone()]))
        .collect();
    Ok(Ideal::new(vars, gens))
}

/// A point of the changed coordinates corresponds to `m * p` in the
/// original ones.
fn map_class_through(m: &[Rational; 4], class: PointClass) -> PointClass {
    let e = |r: &Rational| class.x.embed_rational(r);
    let x_new = e(&m[0]).mul(&class.x).add(&e(&m[1]).mul(&class.y));
    let y_new = e(&m[2]).mul(&class.x).add(&e(&m[3]).mul(&class.y));
    PointClass {
        field: class.field.clone(),
        x: x_new,
        y: y_new,
        degree: class.degree,
    }
}

/// The epsilon invariant at a point class.
pub fn epsilon_at(ideal: &QIdeal, class: &PointClass, limits: &Limits) -> Result<u64> {
    let split = hb_split(ideal, limits)?;
    let kind = classify(&split, class)?;
    epsilon_of_split(ideal, &split, class, kind, limits)
}

fn classify(split: &HbSplit, class: &PointClass) -> Result<LocusKind> {
    let ctx = class.x.zero_like();
    let on_curve = !split.g.is_constant()
        && split
            .g
            .lift_to(&ctx)
            .eval(&[class.x.clone(), class.y.clone()])
            .is_zero();
    if on_curve {
        // Embedded or plain curve point; the distinction needs J.
        Ok(LocusKind::EmbeddedOnCurve)
    } else {
        Ok(LocusKind::IsolatedPoint)
    }
}

fn epsilon_of_split(
    ideal: &QIdeal,
    split: &HbSplit,
    class: &PointClass,
    kind: LocusKind,
    limits: &Limits,
) -> Result<u64> {
    let point = class.point();
    match kind {
        LocusKind::IsolatedPoint => {
            // The whole local ring is supported at the point.
            local_colength_of(&split.j, &point, limits)
        }
        _ => {
            let rad = radical_of_split(split, limits)?;
            let ctx = point.0.zero_like();
            let a = lift_gens(&rad, &ctx);
            let b = lift_gens(ideal, &ctx);
            Ok(local_colength_engine(&a, &b, &point, limits)?.dimension)
        }
    }
}

/// The delta invariant at a point class: `-dim O/J` at isolated points,
/// `delta_red - epsilon` on the curve.
pub fn delta_at(ideal: &QIdeal, class: &PointClass, limits: &Limits) -> Result<i64> {
    let split = hb_split(ideal, limits)?;
    let kind = classify(&split, class)?;
    Ok(point_report(ideal, &split, class, kind, limits)?.delta)
}

fn point_report(
    ideal: &QIdeal,
    split: &HbSplit,
    class: &PointClass,
    kind: LocusKind,
    limits: &Limits,
) -> Result<PointReport> {
    let point = class.point();
    let epsilon = epsilon_of_split(ideal, split, class, kind, limits)?;
    let (delta_red, mu, branches, tree) = if kind != LocusKind::IsolatedPoint {
        let (tree, summary) = resolve_germ_q(&split.g, &point, limits)?;
        let mu = milnor_number(&split.g, &point, limits)?;
        (summary.delta_red, mu, summary.branch_count, Some(tree))
    } else {
        (0, 0, 0, None)
    };
    let delta = delta_red as i64 - epsilon as i64;
    if kind == LocusKind::IsolatedPoint {
        // Paper formula: delta = -dim O/J there; equal by construction.
        debug_assert_eq!(delta, -(epsilon as i64));
    }
    Ok(PointReport {
        class: class.clone(),
        kind,
        delta_red,
        epsilon,
        delta,
        mu,
        branches,
        tree,
    })
}

/// The full invariant report: per-point rows over the singular locus and
/// the degree-weighted total delta.
pub fn delta_total(ideal: &QIdeal, limits: &Limits) -> Result<InvariantReport> {
    if ideal.vars().len() != 2 {
        return Err(Error::Structural(
            "invariants expect an ideal in exactly two plane variables".into(),
        ));
    }
    let split = hb_split(ideal, limits)?;
    let (locus, change) = singular_locus(ideal, limits)?;
    let mut per_point = Vec::new();
    let mut total = 0i64;
    for (class, kind) in &locus {
        let row = point_report(ideal, &split, class, *kind, limits)?;
        total += class.degree as i64 * row.delta;
        per_point.push(row);
    }
    Ok(InvariantReport {
        per_point,
        total_delta: total,
        coordinate_change: change,
        split,
    })
}

/// Invariants computed at one explicitly given rational point, whether or
/// not it lies in the singular locus.
pub fn invariants_at_rational_point(
    ideal: &QIdeal,
    point: (Rational, Rational),
    limits: &Limits,
) -> Result<PointReport> {
    let split = hb_split(ideal, limits)?;
    let p = crate::local::rational_point(point.0, point.1);
    let class = PointClass {
        field: crate::numberfield::NumberField::rationals(),
        x: p.0.clone(),
        y: p.1.clone(),
        degree: 1,
    };
    let ctx = p.0.zero_like();
    let on_curve = !split.g.is_constant()
        && split.g.lift_to(&ctx).eval(&[p.0.clone(), p.1.clone()]).is_zero();
    let kind = if on_curve {
        LocusKind::EmbeddedOnCurve
    } else {
        LocusKind::IsolatedPoint
    };
    point_report(ideal, &split, &class, kind, limits)
}

/// Canonical sort key used by reports.
pub fn cmp_reports(a: &PointReport, b: &PointReport) -> Ordering {
    a.class.canonical_cmp(&b.class)
}

/// Helper for tests and the CLI: parse-and-intersect a list of ideals given
/// as generator lists.
pub fn intersect_generator_lists(
    vars: &std::sync::Arc<VarSet>,
    lists: &[Vec<QPoly>],
    limits: &Limits,
) -> Result<QIdeal> {
    let ideals: Vec<QIdeal> = lists
        .iter()
        .map(|gens| Ideal::new(vars, gens.clone()))
        .collect();
    groebner::intersect_many(&ideals, limits)
}

/// True iff the monomial order used for reports sees the same staircase
/// under lex and grevlex (a determinism guard used by tests).
pub fn colength_order_agrees(ideal: &QIdeal, limits: &Limits) -> Result<bool> {
    let a = groebner::global_colength(ideal, limits)?;
    // Recount through a fresh un-cached handle to defeat accidental reuse.
    let fresh = Ideal::new(ideal.vars(), ideal.gens().to_vec());
    let _ = fresh.basis(&MonomialOrder::Lex, limits)?;
    let b = groebner::global_colength(&fresh, limits)?;
    Ok(a == b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::intersect_many;
    use crate::parsepoly::parse_qpoly;
    use std::sync::Arc;

    fn xy() -> Arc<VarSet> {
        VarSet::new(vec!["x", "y"])
    }

    fn p(src: &str, vars: &Arc<VarSet>) -> QPoly {
        parse_qpoly(src, vars).unwrap()
    }

    fn ideal(srcs: &[&str], vars: &Arc<VarSet>) -> QIdeal {
        Ideal::new(vars, srcs.iter().map(|s| p(s, vars)).collect())
    }

    fn example1_ideal(vars: &Arc<VarSet>, limits: &Limits) -> QIdeal {
        intersect_many(
            &[
                ideal(&["x^2-y^3"], vars),
                ideal(&["y"], vars),
                ideal(&["x", "y^5"], vars),
            ],
            limits,
        )
        .unwrap()
    }

    #[test]
    fn example1_full_invariants() {
        let vars = xy();
        let limits = Limits::default();
        let i0 = example1_ideal(&vars, &limits);
        let report = delta_total(&i0, &limits).unwrap();
        assert_eq!(report.per_point.len(), 1);
        let row = &report.per_point[0];
        assert_eq!(row.kind, LocusKind::EmbeddedOnCurve);
        assert!(row.class.x.is_zero() && row.class.y.is_zero());
        assert_eq!(row.delta_red, 3);
        assert_eq!(row.epsilon, 1);
        assert_eq!(row.delta, 2);
        assert_eq!(report.total_delta, 2);
        // The fat-point factor of the splitting has colength 1.
        assert_eq!(
            groebner::global_colength(&report.split.j, &limits).unwrap(),
            groebner::Colength::Finite(1)
        );
    }

    #[test]
    fn reduced_curve_has_zero_epsilon() {
        let vars = xy();
        let limits = Limits::default();
        let i = ideal(&["(x^2-y^3)*y"], &vars);
        let report = delta_total(&i, &limits).unwrap();
        assert_eq!(report.per_point.len(), 1);
        assert_eq!(report.per_point[0].epsilon, 0);
        assert_eq!(report.per_point[0].delta, 3);
        assert_eq!(report.per_point[0].kind, LocusKind::CurveSingular);
    }

    #[test]
    fn pure_fat_point_is_isolated() {
        let vars = xy();
        let limits = Limits::default();
        let i = ideal(&["x", "y^5"], &vars);
        let report = delta_total(&i, &limits).unwrap();
        assert_eq!(report.per_point.len(), 1);
        let row = &report.per_point[0];
        assert_eq!(row.kind, LocusKind::IsolatedPoint);
        // The whole local ring: epsilon = dim O/J = 5, delta = -5, and the
        // defining relation delta = delta_red - epsilon holds.
        assert_eq!(row.epsilon, 5);
        assert_eq!(row.delta, -5);
        assert_eq!(row.delta_red, 0);
        assert_eq!(report.total_delta, -5);
    }

    #[test]
    fn reduced_isolated_point_contributes_minus_one() {
        // A line and a reduced point off the line.
        let vars = xy();
        let limits = Limits::default();
        let i = intersect_many(
            &[ideal(&["y"], &vars), ideal(&["x-1", "y-1"], &vars)],
            &limits,
        )
        .unwrap();
        let report = delta_total(&i, &limits).unwrap();
        assert_eq!(report.per_point.len(), 1);
        let row = &report.per_point[0];
        assert_eq!(row.kind, LocusKind::IsolatedPoint);
        assert_eq!(row.delta, -1);
        assert_eq!(report.total_delta, -1);
    }

    #[test]
    fn smooth_curve_empty_locus() {
        let vars = xy();
        let limits = Limits::default();
        let i = ideal(&["y-x^2"], &vars);
        let report = delta_total(&i, &limits).unwrap();
        assert!(report.per_point.is_empty());
        assert_eq!(report.total_delta, 0);
    }

    #[test]
    fn non_squarefree_curve_is_rejected() {
        let vars = xy();
        let limits = Limits::default();
        let i = ideal(&["y^2"], &vars);
        assert!(matches!(
            delta_total(&i, &limits),
            Err(Error::NotGenericallyReduced(_))
        ));
    }

    #[test]
    fn example3_fiber_1_1() {
        // Fiber at (u,v) = (1,1): curve (x^2-y^3+y^2)(y-1) with the reduced
        // point (1,0); totalDelta = 1 + 2 - 1 = 2.
        let vars = xy();
        let limits = Limits::default();
        let i = intersect_many(
            &[
                ideal(&["x^2-y^3+y^2"], &vars),
                ideal(&["y-1"], &vars),
                ideal(&["x-1", "y"], &vars),
            ],
            &limits,
        )
        .unwrap();
        let report = delta_total(&i, &limits).unwrap();
        assert_eq!(report.total_delta, 2);
        assert_eq!(report.per_point.len(), 3);
        let mut by_kind: Vec<(LocusKind, i64)> = report
            .per_point
            .iter()
            .map(|r| (r.kind, r.delta))
            .collect();
        by_kind.sort();
        assert_eq!(
            by_kind,
            vec![
                (LocusKind::CurveSingular, 1),
                (LocusKind::CurveSingular, 2),
                (LocusKind::IsolatedPoint, -1)
            ]
        );
    }

    #[test]
    fn example3_fiber_0_1() {
        // Fiber at (u,v) = (0,1): cusp-plus-line with an embedded point
        // moved to (1, 0) on the line; totalDelta = 3 - 1 = 2. The fiber is
        // the product <g> * <x-1, y> (specializing the expanded family
        // ideal, which keeps the nilpotents; intersecting the specialized
        // factors would lose the embedded point since (1,0) lies on y = 0).
        let vars = xy();
        let limits = Limits::default();
        let g = p("(x^2-y^3)*y", &vars);
        let i = Ideal::new(
            &vars,
            vec![g.mul(&p("x-1", &vars)), g.mul(&p("y", &vars))],
        );
        let report = delta_total(&i, &limits).unwrap();
        assert_eq!(report.total_delta, 2);
        // (0,0) is curve-singular with delta 3; (1,0) is embedded on the
        // smooth line with delta -1.
        let deltas: Vec<i64> = report.per_point.iter().map(|r| r.delta).collect();
        assert!(deltas.contains(&3) && deltas.contains(&-1));
        let kinds: Vec<LocusKind> = report.per_point.iter().map(|r| r.kind).collect();
        assert!(kinds.contains(&LocusKind::EmbeddedOnCurve));
    }

    #[test]
    fn total_delta_is_coordinate_free() {
        let vars = xy();
        let limits = Limits::default();
        let i0 = example1_ideal(&vars, &limits);
        let base = delta_total(&i0, &limits).unwrap().total_delta;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..3 {
            let m = random_unimodular(&mut rng);
            let changed = apply_linear_change_ideal(&i0, &m).unwrap();
            let t = delta_total(&changed, &limits).unwrap().total_delta;
            assert_eq!(t, base, "change {m:?}");
        }
    }

    #[test]
    fn epsilon_zero_for_radical_inputs() {
        let vars = xy();
        let limits = Limits::default();
        for gens in [vec!["(x^2-y^3)*y"], vec!["x^2-y^2"], vec!["(y-x^2)*(y+x^2)"]] {
            let i = ideal(&gens, &vars);
            let report = delta_total(&i, &limits).unwrap();
            assert!(report.per_point.iter().all(|r| r.epsilon == 0));
        }
    }

    #[test]
    fn invariants_at_given_point() {
        let vars = xy();
        let limits = Limits::default();
        let i = ideal(&["(x^2-y^3)*y"], &vars);
        let row = invariants_at_rational_point(
            &i,
            (Rational::zero(), Rational::zero()),
            &limits,
        )
        .unwrap();
        assert_eq!(row.delta_red, 3);
        assert_eq!(row.epsilon, 0);
        // A smooth point of the curve.
        let row2 = invariants_at_rational_point(
            &i,
            (Rational::from_int(2), Rational::zero()),
            &limits,
        )
        .unwrap();
        assert_eq!(row2.delta_red, 0);
        assert_eq!(row2.delta, 0);
    }
}
