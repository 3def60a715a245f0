//! k-parametric families of plane curve singularities.
//!
//! A family is an ideal in the two plane variables plus k >= 1 parameters.
//! The family splits as <G> * J with G the gcd of the generators over the
//! parameter ring (verified two-way); fibers specialize the parameters to
//! rationals and feed the invariants module. The delta-constancy scan drives
//! the equinormalizability verdict: the verdict is exactly the sampled
//! delta-criterion and is labeled as such in reports, because constancy for
//! all nearby parameter values cannot be certified from finitely many
//! samples.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::gcd;
use crate::groebner::{self, Ideal, QIdeal};
use crate::invariants::{delta_total, InvariantReport};
use crate::local::{local_colength_of, origin};
use crate::poly::{Monomial, Poly, QPoly, VarSet};
use crate::rational::Rational;
use crate::resolution::{resolve_germ_q, EsTree};
use crate::zerodim::solve_zero_dim;
use crate::Limits;

/// An ideal over plane variables and parameters, representing a
/// k-parametric family (k >= 1).
#[derive(Debug, Clone)]
pub struct FamilyIdeal {
    plane_vars: [String; 2],
    param_vars: Vec<String>,
    ideal: QIdeal,
}

impl FamilyIdeal {
    /// Ring layout: the two plane variables first, then the parameters.
    pub fn new(
        plane_vars: [String; 2],
        param_vars: Vec<String>,
        ideal: QIdeal,
    ) -> Result<FamilyIdeal> {
        if param_vars.is_empty() {
            return Err(Error::Structural(
                "a family needs at least one parameter; use the static invariants otherwise"
                    .into(),
            ));
        }
        let mut expect = vec![plane_vars[0].clone(), plane_vars[1].clone()];
        expect.extend(param_vars.iter().cloned());
        if ideal.vars().names() != expect.as_slice() {
            return Err(Error::Structural(format!(
                "family ring mismatch: expected {:?}, found {:?}",
                expect,
                ideal.vars().names()
            )));
        }
        Ok(FamilyIdeal {
            plane_vars,
            param_vars,
            ideal,
        })
    }

    pub fn ideal(&self) -> &QIdeal {
        &self.ideal
    }

    pub fn k(&self) -> usize {
        self.param_vars.len()
    }

    pub fn plane_vars(&self) -> &[String; 2] {
        &self.plane_vars
    }

    pub fn param_vars(&self) -> &[String] {
        &self.param_vars
    }

    pub fn plane_ring(&self) -> Arc<VarSet> {
        VarSet::new(vec![self.plane_vars[0].clone(), self.plane_vars[1].clone()])
    }
}

/// The family-level Hilbert-Burch splitting.
#[derive(Debug, Clone)]
pub struct SplitResult {
    /// Hypersurface factor over the parameter ring, primitive with respect
    /// to the plane variables and lex-monic.
    pub g: QPoly,
    /// Fat-point family factor `I : <G>`.
    pub j: QIdeal,
    pub verified: bool,
}

/// Content of `p` with respect to the plane variables: the gcd of its
/// coefficients in the parameter ring.
fn plane_content(p: &QPoly) -> Result<QPoly> {
    let vars = p.vars();
    let mut buckets: std::collections::BTreeMap<(u32, u32), QPoly> = Default::default();
    for (m, c) in p.terms() {
        let key = (m.0[0], m.0[1]);
        let mut e = m.0.clone();
        e[0] = 0;
        e[1] = 0;
        let piece = Poly::term(vars, Monomial(e), c.clone());
        buckets
            .entry(key)
            .and_modify(|acc| *acc = acc.add(&piece))
            .or_insert(piece);
    }
    let coeffs: Vec<QPoly> = buckets.into_values().collect();
    gcd::gcd_many(&coeffs)
}

/// Lemma-4.1-style splitting of the family ideal: G = gcd of the generators
/// with parameter-ring content removed, J = I : G, verified two-way.
pub fn family_split(family: &FamilyIdeal, limits: &Limits) -> Result<SplitResult> {
    // The special fiber must be generically reduced.
    let special = specialize_fiber(family, &vec![Rational::zero(); family.k()], limits)?;
    let special_g = groebner::gens_gcd(&special)?;
    if !gcd::is_squarefree(&special_g)? {
        return Err(Error::NotGenericallyReduced(
            "the special fiber's curve part is not squarefree".into(),
        ));
    }

    let mut g = groebner::gens_gcd(&family.ideal)?;
    let content = plane_content(&g)?;
    if !content.is_constant() {
        g = g
            .exact_div(&content)
            .expect("content divides")
            .lex_monic();
    }
    let j = groebner::quotient(&family.ideal, &g, limits)?;
    let product = Ideal::principal(g.clone()).product(&j);
    let verified = product.equals(&family.ideal, limits)?;
    if !verified {
        return Err(Error::NotHilbertBurch(
            "the product <G> * (I : G) does not reproduce the family ideal".into(),
        ));
    }
    Ok(SplitResult { g, j, verified })
}

/// Substitute a rational parameter point, returning the plane ideal of the
/// fiber. Degenerate (zero or unit) fibers are errors.
pub fn specialize_fiber(
    family: &FamilyIdeal,
    t: &[Rational],
    limits: &Limits,
) -> Result<QIdeal> {
    if t.len() != family.k() {
        return Err(Error::Structural(format!(
            "expected {} parameter values, got {}",
            family.k(),
            t.len()
        )));
    }
    let plane = family.plane_ring();
    let gens: Vec<QPoly> = family
        .ideal
        .gens()
        .iter()
        .map(|g| specialize_poly(g, &plane, t))
        .collect();
    let fiber = Ideal::new(&plane, gens);
    if fiber.is_zero_ideal() {
        return Err(Error::DegenerateFiber(format!(
            "all generators vanish at parameter point {t:?}"
        )));
    }
    if fiber.is_unit_ideal(limits)? {
        return Err(Error::DegenerateFiber(format!(
            "fiber is the unit ideal at parameter point {t:?}"
        )));
    }
    Ok(fiber)
}

/// Substitute the parameters of a family polynomial, projecting into the
/// plane ring.
pub fn specialize_poly(g: &QPoly, plane: &Arc<VarSet>, t: &[Rational]) -> QPoly {
    let vars = g.vars();
    let x = Poly::var(vars, 0, Rational::one());
    let y = Poly::var(vars, 1, Rational::one());
    let mut images = vec![x, y];
    for val in t {
        images.push(Poly::constant(vars, val.clone()));
    }
    let in_big = g.substitute(&images);
    in_big
        .project_into(plane)
        .expect("specialized polynomial still involves parameters")
}

/// A finite sampling grid for the parameters: one value list per parameter,
/// cartesian product, origin always included first.
#[derive(Debug, Clone)]
pub struct GridSpec {
    pub per_param: Vec<Vec<Rational>>,
}

impl GridSpec {
    /// The library default: coordinates in {0, 1, -1, 1/2, -1/2} per
    /// parameter.
    pub fn default_for(k: usize) -> GridSpec {
        let axis = vec![
            Rational::zero(),
            Rational::from_int(1),
            Rational::from_int(-1),
            Rational::new(1, 2),
            Rational::new(-1, 2),
        ];
        GridSpec {
            per_param: vec![axis; k],
        }
    }

    /// Row-major cartesian product with the origin moved to the front.
    pub fn points(&self) -> Vec<Vec<Rational>> {
        let k = self.per_param.len();
        let origin = vec![Rational::zero(); k];
        let mut out = vec![origin.clone()];
        let mut idx = vec![0usize; k];
        loop {
            let point: Vec<Rational> = idx
                .iter()
                .enumerate()
                .map(|(i, &j)| self.per_param[i][j].clone())
                .collect();
            if point != origin {
                out.push(point);
            }
            // Increment odometer, last parameter fastest.
            let mut carry = k;
            while carry > 0 {
                idx[carry - 1] += 1;
                if idx[carry - 1] < self.per_param[carry - 1].len() {
                    break;
                }
                idx[carry - 1] = 0;
                carry -= 1;
            }
            if carry == 0 {
                break;
            }
        }
        out
    }
}

/// One analyzed fiber.
#[derive(Debug, Clone)]
pub struct FiberSample {
    pub point: Vec<Rational>,
    pub outcome: std::result::Result<FiberData, String>,
    /// Machine-readable code of the error, when the outcome is an error.
    pub error_code: Option<&'static str>,
}

#[derive(Debug, Clone)]
pub struct FiberData {
    pub invariants: InvariantReport,
    pub fiber_squarefree_ok: bool,
    /// The tree of the fiber germ at the plane origin: unmixed tree plus
    /// the colength of the fiber's fat-point part at the origin.
    pub origin_tree: EsTree,
}

/// Equinormalizability verdict for the unmixed family, per the sampled
/// delta criterion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    YesByDeltaCriterion,
    No,
    Undetermined,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::YesByDeltaCriterion => "yes-by-delta-criterion",
            Verdict::No => "no",
            Verdict::Undetermined => "undetermined",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Violation {
    pub point: Vec<Rational>,
    pub total_delta: i64,
    pub special_delta: i64,
}

#[derive(Debug, Clone)]
pub struct FamilyReport {
    pub samples: Vec<FiberSample>,
    pub delta_constant: bool,
    pub verdict: Verdict,
    pub semicontinuity_violations: Vec<Violation>,
    pub tree_equisingular_at_origin: bool,
}

fn analyze_fiber(
    family: &FamilyIdeal,
    point: &[Rational],
    limits: &Limits,
) -> Result<FiberData> {
    let fiber = specialize_fiber(family, point, limits)?;
    let g = groebner::gens_gcd(&fiber)?;
    let fiber_squarefree_ok = gcd::is_squarefree(&g)?;
    if !fiber_squarefree_ok {
        return Err(Error::NotGenericallyReduced(format!(
            "fiber curve part not squarefree at {point:?}"
        )));
    }
    let invariants = delta_total(&fiber, limits)?;
    // Origin-germ tree of the unmixed fiber, with the embedded colength of
    // the fiber's own fat-point part at the origin as root label.
    let embedded = if invariants.split.j.is_unit_ideal(limits)? {
        0
    } else {
        local_colength_of(&invariants.split.j, &origin(), limits)?
    };
    let g_at_origin_zero = {
        let val = invariants.split.g.eval(&[Rational::zero(), Rational::zero()]);
        val.is_zero() && !invariants.split.g.is_constant()
    };
    let origin_tree = if g_at_origin_zero {
        let (mut tree, _) = resolve_germ_q(&invariants.split.g, &origin(), limits)?;
        tree.embedded_colength = embedded;
        tree
    } else {
        EsTree {
            root: None,
            embedded_colength: embedded,
        }
    };
    Ok(FiberData {
        invariants,
        fiber_squarefree_ok,
        origin_tree,
    })
}

/// Scan the family over the grid: per-fiber invariants, delta-constancy,
/// the sampled equinormalizability verdict, semicontinuity violations and
/// origin-tree comparisons. Per-sample errors are recorded, not fatal.
/// Deterministic for a fixed grid; `threads` only changes the schedule.
pub fn delta_constancy_scan(
    family: &FamilyIdeal,
    grid: &GridSpec,
    limits: &Limits,
    threads: usize,
) -> Result<FamilyReport> {
    if grid.per_param.len() != family.k() {
        return Err(Error::Structural(format!(
            "grid has {} parameter axes, family has {}",
            grid.per_param.len(),
            family.k()
        )));
    }
    let points = grid.points();
    let outcomes: Vec<std::result::Result<FiberData, Error>> = if threads <= 1 {
        points
            .iter()
            .map(|p| analyze_fiber(family, p, limits))
            .collect()
    } else {
        let chunk = points.len().div_ceil(threads);
        let mut slots: Vec<Option<std::result::Result<FiberData, Error>>> =
            (0..points.len()).map(|_| None).collect();
        std::thread::scope(|scope| {
            for (slot_chunk, point_chunk) in
                slots.chunks_mut(chunk).zip(points.chunks(chunk))
            {
                scope.spawn(move || {
                    for (slot, p) in slot_chunk.iter_mut().zip(point_chunk) {
                        *slot = Some(analyze_fiber(family, p, limits));
                    }
                });
            }
        });
        slots.into_iter().map(|s| s.expect("filled")).collect()
    };

    let samples: Vec<FiberSample> = points
        .iter()
        .zip(outcomes)
        .map(|(p, o)| match o {
            Ok(data) => FiberSample {
                point: p.clone(),
                outcome: Ok(data),
                error_code: None,
            },
            Err(e) => FiberSample {
                point: p.clone(),
                outcome: Err(e.to_string()),
                error_code: Some(e.code()),
            },
        })
        .collect();

    let special = samples
        .first()
        .and_then(|s| s.outcome.as_ref().ok().map(|d| d.invariants.total_delta));
    let any_error = samples.iter().any(|s| s.outcome.is_err());
    let mut delta_constant = true;
    let mut violations = Vec::new();
    if let Some(special_delta) = special {
        for s in &samples {
            if let Ok(d) = &s.outcome {
                if d.invariants.total_delta != special_delta {
                    delta_constant = false;
                }
                if d.invariants.total_delta > special_delta {
                    violations.push(Violation {
                        point: s.point.clone(),
                        total_delta: d.invariants.total_delta,
                        special_delta,
                    });
                }
            }
        }
    } else {
        delta_constant = false;
    }
    let verdict = if special.is_none() || any_error {
        Verdict::Undetermined
    } else if delta_constant {
        Verdict::YesByDeltaCriterion
    } else {
        Verdict::No
    };

    let special_tree = samples
        .first()
        .and_then(|s| s.outcome.as_ref().ok().map(|d| d.origin_tree.clone()));
    let tree_equisingular_at_origin = match &special_tree {
        None => false,
        Some(t0) => samples.iter().all(|s| match &s.outcome {
            Ok(d) => crate::estree::isomorphic(&d.origin_tree, t0),
            Err(_) => false,
        }),
    };

    Ok(FamilyReport {
        samples,
        delta_constant,
        verdict,
        semicontinuity_violations: violations,
        tree_equisingular_at_origin,
    })
}

/// Just the semicontinuity violations of a scan.
pub fn semicontinuity_check(
    family: &FamilyIdeal,
    grid: &GridSpec,
    limits: &Limits,
) -> Result<Vec<Violation>> {
    Ok(delta_constancy_scan(family, grid, limits, 1)?.semicontinuity_violations)
}

/// Per-fiber conservation of the embedded colength (the fiber sum of local
/// fat-point colengths against the special fiber's).
#[derive(Debug, Clone)]
pub struct ColengthSample {
    pub point: Vec<Rational>,
    pub total: Option<u64>,
    pub error: Option<String>,
}

#[derive(Debug, Clone)]
pub struct ColengthReport {
    pub special_value: u64,
    pub samples: Vec<ColengthSample>,
    pub mismatches: Vec<Vec<Rational>>,
}

/// For each sample: sum over the fat-point classes of the specialized
/// family factor J of degree times local colength; all sums must equal the
/// special fiber's value.
pub fn embedded_colength_conservation(
    family: &FamilyIdeal,
    grid: &GridSpec,
    limits: &Limits,
) -> Result<ColengthReport> {
    let split = family_split(family, limits)?;
    let plane = family.plane_ring();
    let points = grid.points();
    let fat_total = |t: &[Rational]| -> Result<u64> {
        let gens: Vec<QPoly> = split
            .j
            .gens()
            .iter()
            .map(|g| specialize_poly(g, &plane, t))
            .collect();
        let j_s = Ideal::new(&plane, gens);
        if j_s.is_unit_ideal(limits)? {
            return Ok(0);
        }
        let mut total = 0u64;
        for class in solve_zero_dim(&j_s, limits)? {
            let local = {
                let ctx = class.x.zero_like();
                let a = vec![Poly::constant(&plane, Rational::one()).lift_to(&ctx)];
                let b: Vec<_> = j_s.gens().iter().map(|g| g.lift_to(&ctx)).collect();
                crate::local::local_colength_engine(&a, &b, &class.point(), limits)?.dimension
            };
            total += class.degree as u64 * local;
        }
        // Cross-check against the global count.
        if let Some(global) = groebner::global_colength(&j_s, limits)?.finite() {
            debug_assert_eq!(global, total, "local sums disagree with the staircase");
        }
        Ok(total)
    };
    let special_value = fat_total(&vec![Rational::zero(); family.k()])?;
    let mut samples = Vec::new();
    let mut mismatches = Vec::new();
    for p in &points {
        match fat_total(p) {
            Ok(total) => {
                if total != special_value {
                    mismatches.push(p.clone());
                }
                samples.push(ColengthSample {
                    point: p.clone(),
                    total: Some(total),
                    error: None,
                });
            }
            Err(e) => samples.push(ColengthSample {
                point: p.clone(),
                total: None,
                error: Some(e.to_string()),
            }),
        }
    }
    Ok(ColengthReport {
        special_value,
        samples,
        mismatches,
    })
}

/// True iff every generator of the (expanded) ideal vanishes identically
/// under the substitution map, one component per ambient variable.
pub fn check_parametrization(ideal: &QIdeal, map: &[QPoly]) -> Result<bool> {
    if map.len() != ideal.vars().len() {
        return Err(Error::Structural(format!(
            "parametrization has {} components, the ambient space has {} variables",
            map.len(),
            ideal.vars().len()
        )));
    }
    if let Some(first) = map.first() {
        for m in map {
            first.check_same_ring(m)?;
        }
    }
    for g in ideal.gens() {
        if !g.substitute(map).is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::intersect_many;
    use crate::parsepoly::parse_qpoly;

    fn family_ring() -> Arc<VarSet> {
        VarSet::new(vec!["x", "y", "u", "v"])
    }

    fn p(src: &str, vars: &Arc<VarSet>) -> QPoly {
        parse_qpoly(src, vars).unwrap()
    }

    /// The two-parameter family I = <x^2-y^3+u*y^2> /\ <y-u> /\ <x-v, y>.
    fn example2(limits: &Limits) -> FamilyIdeal {
        let vars = family_ring();
        let i = intersect_many(
            &[
                Ideal::new(&vars, vec![p("x^2-y^3+u*y^2", &vars)]),
                Ideal::new(&vars, vec![p("y-u", &vars)]),
                Ideal::new(&vars, vec![p("x-v", &vars), p("y", &vars)]),
            ],
            limits,
        )
        .unwrap();
        FamilyIdeal::new(
            ["x".into(), "y".into()],
            vec!["u".into(), "v".into()],
            i,
        )
        .unwrap()
    }

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn example2_split() {
        let limits = Limits::default();
        let fam = example2(&limits);
        let split = family_split(&fam, &limits).unwrap();
        assert!(split.verified);
        let vars = family_ring();
        let expected_g = p("(x^2-y^3+u*y^2)*(y-u)", &vars).lex_monic();
        assert_eq!(split.g, expected_g);
        // J cuts out the section (x, y) = (v, 0).
        let j_expect = Ideal::new(&vars, vec![p("x-v", &vars), p("y", &vars)]);
        assert!(split.j.equals(&j_expect, &limits).unwrap());
        // G specializes at the parameter origin to (x^2-y^3)*y up to the
        // lex-monic unit normalization.
        let plane = fam.plane_ring();
        let g0 = specialize_poly(&split.g, &plane, &[q(0), q(0)]);
        let expect0 = parse_qpoly("(x^2-y^3)*y", &plane).unwrap().lex_monic();
        assert_eq!(g0.lex_monic(), expect0);
    }

    #[test]
    fn principal_family_splits_trivially() {
        let vars = VarSet::new(vec!["x", "y", "u"]);
        let limits = Limits::default();
        let fam = FamilyIdeal::new(
            ["x".into(), "y".into()],
            vec!["u".into()],
            Ideal::new(&vars, vec![p("x^2-y^3+u*y^2", &vars)]),
        )
        .unwrap();
        let split = family_split(&fam, &limits).unwrap();
        assert!(split.j.is_unit_ideal(&limits).unwrap());
        assert_eq!(split.g, p("x^2-y^3+u*y^2", &vars).lex_monic());
    }

    #[test]
    fn zero_parameters_rejected() {
        let vars = VarSet::new(vec!["x", "y"]);
        let i = Ideal::new(&vars, vec![p("x", &vars)]);
        assert!(FamilyIdeal::new(["x".into(), "y".into()], vec![], i).is_err());
    }

    #[test]
    fn specialize_at_origin_is_example1() {
        let limits = Limits::default();
        let fam = example2(&limits);
        let fiber = specialize_fiber(&fam, &[q(0), q(0)], &limits).unwrap();
        let plane = fam.plane_ring();
        let i0 = intersect_many(
            &[
                Ideal::new(&plane, vec![parse_qpoly("x^2-y^3", &plane).unwrap()]),
                Ideal::new(&plane, vec![parse_qpoly("y", &plane).unwrap()]),
                Ideal::new(
                    &plane,
                    vec![
                        parse_qpoly("x", &plane).unwrap(),
                        parse_qpoly("y^5", &plane).unwrap(),
                    ],
                ),
            ],
            &limits,
        )
        .unwrap();
        assert!(fiber.equals(&i0, &limits).unwrap());
    }

    #[test]
    fn example2_fiber_deltas() {
        let limits = Limits::default();
        let fam = example2(&limits);
        for t in [
            vec![q(0), q(0)],
            vec![q(1), q(1)],
            vec![q(1), q(0)],
            vec![q(0), q(1)],
            vec![Rational::from_int(-1), Rational::new(1, 2)],
        ] {
            let fiber = specialize_fiber(&fam, &t, &limits).unwrap();
            let report = delta_total(&fiber, &limits).unwrap();
            assert_eq!(report.total_delta, 2, "fiber at {t:?}");
        }
    }

    #[test]
    fn example2_scan_is_delta_constant() {
        let limits = Limits::default();
        let fam = example2(&limits);
        let report =
            delta_constancy_scan(&fam, &GridSpec::default_for(2), &limits, 1).unwrap();
        assert!(report.delta_constant);
        assert_eq!(report.verdict, Verdict::YesByDeltaCriterion);
        assert!(report.semicontinuity_violations.is_empty());
        assert!(report.samples.iter().all(|s| s.outcome.is_ok()));
    }

    #[test]
    fn constant_family_is_delta_constant() {
        let vars = VarSet::new(vec!["x", "y", "u"]);
        let limits = Limits::default();
        let fam = FamilyIdeal::new(
            ["x".into(), "y".into()],
            vec!["u".into()],
            Ideal::new(&vars, vec![p("x^2-y^3", &vars)]),
        )
        .unwrap();
        let report =
            delta_constancy_scan(&fam, &GridSpec::default_for(1), &limits, 1).unwrap();
        assert!(report.delta_constant);
        assert!(report.tree_equisingular_at_origin);
        for s in &report.samples {
            assert_eq!(s.outcome.as_ref().unwrap().invariants.total_delta, 1);
        }
    }

    #[test]
    fn delta_constant_but_trees_differ() {
        // x^2 - y^3 + u*y^2: delta stays 1 but the origin germ changes from
        // cusp to node.
        let vars = VarSet::new(vec!["x", "y", "u"]);
        let limits = Limits::default();
        let fam = FamilyIdeal::new(
            ["x".into(), "y".into()],
            vec!["u".into()],
            Ideal::new(&vars, vec![p("x^2-y^3+u*y^2", &vars)]),
        )
        .unwrap();
        let grid = GridSpec {
            per_param: vec![vec![q(0), q(1)]],
        };
        let report = delta_constancy_scan(&fam, &grid, &limits, 1).unwrap();
        assert!(report.delta_constant);
        assert_eq!(report.verdict, Verdict::YesByDeltaCriterion);
        assert!(!report.tree_equisingular_at_origin);
    }

    #[test]
    fn smooth_fiber_delta_drop_is_allowed() {
        // x^2 - y^3 - u: the fiber at u = 1 is smooth, delta drops 1 -> 0.
        let vars = VarSet::new(vec!["x", "y", "u"]);
        let limits = Limits::default();
        let fam = FamilyIdeal::new(
            ["x".into(), "y".into()],
            vec!["u".into()],
            Ideal::new(&vars, vec![p("x^2-y^3-u", &vars)]),
        )
        .unwrap();
        let grid = GridSpec {
            per_param: vec![vec![q(0), q(1)]],
        };
        let report = delta_constancy_scan(&fam, &grid, &limits, 1).unwrap();
        assert!(!report.delta_constant);
        assert_eq!(report.verdict, Verdict::No);
        assert!(report.semicontinuity_violations.is_empty());
    }

    #[test]
    fn embedded_colength_is_conserved_on_example2() {
        let limits = Limits::default();
        let fam = example2(&limits);
        let report =
            embedded_colength_conservation(&fam, &GridSpec::default_for(2), &limits).unwrap();
        assert_eq!(report.special_value, 1);
        assert!(report.mismatches.is_empty());
        assert!(report
            .samples
            .iter()
            .all(|s| s.total == Some(1)));
    }

    #[test]
    fn parametrization_checks() {
        let limits = Limits::default();
        let fam = example2(&limits);
        let tvars = VarSet::new(vec!["T1", "T2", "T3"]);
        let nu1: Vec<QPoly> = ["T3^3+T1*T3", "T3^2+T1", "T1", "T2"]
            .iter()
            .map(|s| parse_qpoly(s, &tvars).unwrap())
            .collect();
        assert!(check_parametrization(fam.ideal(), &nu1).unwrap());
        let nu2: Vec<QPoly> = ["T1", "T2", "T2", "T3"]
            .iter()
            .map(|s| parse_qpoly(s, &tvars).unwrap())
            .collect();
        assert!(check_parametrization(fam.ideal(), &nu2).unwrap());
        let nu3: Vec<QPoly> = ["T2", "0", "T1", "T2"]
            .iter()
            .map(|s| parse_qpoly(s, &tvars).unwrap())
            .collect();
        assert!(check_parametrization(fam.ideal(), &nu3).unwrap());
        // A single mutated exponent breaks membership.
        let bad: Vec<QPoly> = ["T3^2+T1*T3", "T3^2+T1", "T1", "T2"]
            .iter()
            .map(|s| parse_qpoly(s, &tvars).unwrap())
            .collect();
        assert!(!check_parametrization(fam.ideal(), &bad).unwrap());
        // Arity mismatch is structural.
        let short: Vec<QPoly> = ["T1", "T2"]
            .iter()
            .map(|s| parse_qpoly(s, &tvars).unwrap())
            .collect();
        assert!(check_parametrization(fam.ideal(), &short).is_err());
        // A non-parametrization over the plane.
        let plane = VarSet::new(vec!["x", "y"]);
        let tv = VarSet::new(vec!["T"]);
        let curve = Ideal::new(&plane, vec![parse_qpoly("y-x^2", &plane).unwrap()]);
        let not_param: Vec<QPoly> = ["T", "T"]
            .iter()
            .map(|s| parse_qpoly(s, &tv).unwrap())
            .collect();
        assert!(!check_parametrization(&curve, &not_param).unwrap());
    }

    #[test]
    fn scan_parallel_schedule_matches_sequential() {
        let limits = Limits::default();
        let fam = example2(&limits);
        let grid = GridSpec {
            per_param: vec![vec![q(0), q(1)], vec![q(0), q(1)]],
        };
        let seq = delta_constancy_scan(&fam, &grid, &limits, 1).unwrap();
        let par = delta_constancy_scan(&fam, &grid, &limits, 4).unwrap();
        assert_eq!(seq.samples.len(), par.samples.len());
        for (a, b) in seq.samples.iter().zip(&par.samples) {
            assert_eq!(a.point, b.point);
            match (&a.outcome, &b.outcome) {
                (Ok(x), Ok(y)) => {
                    assert_eq!(x.invariants.total_delta, y.invariants.total_delta);
                    assert!(crate::estree::isomorphic(&x.origin_tree, &y.origin_tree));
                }
                (Err(x), Err(y)) => assert_eq!(x, y),
                _ => panic!("schedules disagree"),
            }
        }
    }
}
