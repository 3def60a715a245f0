//! Blow-up resolution of reduced plane curve germs.
//!
//! The tree of infinitely near points is built by recursive blow-up: at
//! each point the tangent cone is factored over the current field into
//! conjugacy classes, each class is followed into its chart once (weighted
//! by its degree), and the recursion stops when the strict transform is
//! smooth, carries one branch and meets every exceptional component through
//! the point transversally. Local coordinates are always chosen so that the
//! exceptional components through a point are coordinate axes, which makes
//! the free/satellite classification and the proximity bookkeeping a pair
//! of axis flags.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::gcd;
use crate::local::{milnor_number, PlanePoint};
use crate::numberfield::{AlgebraicNumber, NumberField};
use crate::poly::{APoly, Poly, QPoly};
use crate::trager::{extend_by_irreducible, factor_over_number_field};
use crate::unipoly::UniPoly;
use crate::Limits;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum NodeKind {
    Free,
    Satellite,
}

/// A class of infinitely near points: multiplicity of the strict transform,
/// degree of the point class over the base field, free/satellite flag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InfinitelyNearPoint {
    pub multiplicity: u32,
    pub conjugacy_degree: u32,
    pub kind: NodeKind,
    pub children: Vec<InfinitelyNearPoint>,
}

/// The equisingularity datum: the infinitely-near-point tree of the unmixed
/// part plus the colength of the embedded part at the germ point as a root
/// label. `root` is `None` when no curve passes through the point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EsTree {
    pub root: Option<InfinitelyNearPoint>,
    pub embedded_colength: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolutionSummary {
    pub delta_red: u64,
    pub branch_count: u64,
    /// One multiplicity sequence per geometric branch (conjugate branches
    /// repeat their class sequence), sorted canonically.
    pub multiplicity_sequences: Vec<Vec<u32>>,
}

struct Node {
    multiplicity: u32,
    degree: u32,
    kind: NodeKind,
    parent: Option<usize>,
    /// Birth nodes of the exceptional components through this point; the
    /// point is proximate to exactly these.
    prox: Vec<usize>,
    children: Vec<usize>,
}

struct Resolver<'a> {
    limits: &'a Limits,
    arena: Vec<Node>,
}

struct Frame {
    f: APoly,
    field: Arc<NumberField>,
    abs_degree: u32,
    /// Birth node of the exceptional component {x = 0}, if present.
    exc_x: Option<usize>,
    /// Birth node of the exceptional component {y = 0}, if present.
    exc_y: Option<usize>,
    parent: Option<usize>,
    depth: u32,
}

/// The tangent cone T(1, w) of the order-m part as a univariate polynomial:
/// coefficient of w^j is the coefficient of x^(m-j) y^j.
fn tangent_cone_dehom(f: &APoly, m: u32) -> UniPoly<AlgebraicNumber> {
    let zero = f.sample_coeff().unwrap().zero_like();
    let mut coeffs = vec![zero; m as usize + 1];
    for (mono, c) in f.terms() {
        if mono.degree() == m {
            coeffs[mono.0[1] as usize] = c.clone();
        }
    }
    UniPoly::new(coeffs)
}

/// Intersection multiplicity of the germ with the axis {x = 0}: the order
/// of f(0, y).
fn contact_with_x_axis(f: &APoly) -> Option<u32> {
    f.terms()
        .filter(|(m, _)| m.0[0] == 0)
        .map(|(m, _)| m.0[1])
        .min()
}

fn contact_with_y_axis(f: &APoly) -> Option<u32> {
    f.terms()
        .filter(|(m, _)| m.0[1] == 0)
        .map(|(m, _)| m.0[0])
        .min()
}

impl<'a> Resolver<'a> {
    fn blow_up(&mut self, frame: Frame) -> Result<usize> {
        if frame.depth > self.limits.max_blowup_depth {
            return Err(Error::Resource(format!(
                "blow-up depth exceeded {}",
                self.limits.max_blowup_depth
            )));
        }
        if frame.f.num_terms() > self.limits.max_terms
            || frame.f.total_degree().unwrap_or(0) > self.limits.max_total_degree
        {
            return Err(Error::Resource(
                "strict transform exceeded the polynomial size bounds".into(),
            ));
        }
        let m = frame
            .f
            .order_at_origin()
            .ok_or_else(|| Error::Domain("strict transform vanished identically".into()))?;
        assert!(m >= 1, "strict transform does not pass through the point");

        let kind = if frame.exc_x.is_some() && frame.exc_y.is_some() {
            NodeKind::Satellite
        } else {
            NodeKind::Free
        };
        let mut prox = Vec::new();
        if let Some(i) = frame.exc_x {
            prox.push(i);
        }
        if let Some(i) = frame.exc_y {
            prox.push(i);
        }
        let id = self.arena.len();
        self.arena.push(Node {
            multiplicity: m,
            degree: frame.abs_degree,
            kind,
            parent: frame.parent,
            prox,
            children: Vec::new(),
        });

        // Leaf test: smooth, single branch, transverse to every exceptional
        // component through the point.
        if m == 1 {
            let x_ok = match frame.exc_x {
                None => true,
                Some(_) => contact_with_x_axis(&frame.f)
                    .expect("strict transform divisible by an exceptional coordinate")
                    == 1,
            };
            let y_ok = match frame.exc_y {
                None => true,
                Some(_) => contact_with_y_axis(&frame.f)
                    .expect("strict transform divisible by an exceptional coordinate")
                    == 1,
            };
            if x_ok && y_ok {
                return Ok(id);
            }
        }

        let vars = frame.f.vars().clone();
        let one = frame.f.sample_coeff().unwrap().one_like();
        let phi = tangent_cone_dehom(&frame.f, m);

        // Finite tangent directions: conjugacy classes of roots of phi.
        if !phi.is_zero() && phi.deg() >= 1 {
            let fac = factor_over_number_field(&phi, &frame.field, self.limits)?;
            for (h, _mult) in &fac.factors {
                let ext = extend_by_irreducible(&frame.field, h, self.limits)?;
                let t = ext.root.clone();
                let f_ext = if Arc::ptr_eq(&ext.field, &frame.field) {
                    frame.f.clone()
                } else {
                    ext.embed_poly(&frame.f)
                };
                let one_l = t.one_like();
                let x_img = Poly::var(&vars, 0, one_l.clone());
                // y -> x * (t + y)
                let y_img = x_img.mul(&Poly::var(&vars, 1, one_l).add(&Poly::constant(&vars, t.clone())));
                let substituted = f_ext.substitute(&[x_img, y_img]);
                let strict = substituted
                    .div_var_power(0, m)
                    .expect("total transform not divisible by the exceptional power");
                let child = Frame {
                    f: strict,
                    abs_degree: frame.abs_degree * h.deg() as u32,
                    field: ext.field.clone(),
                    exc_x: Some(id),
                    exc_y: if t.is_zero() { frame.exc_y } else { None },
                    parent: Some(id),
                    depth: frame.depth + 1,
                };
                let cid = self.blow_up(child)?;
                self.arena[id].children.push(cid);
            }
        }

        // Vertical direction: present iff x divides the tangent cone.
        let phi_deg = phi.degree().map_or(0, |d| d as u32);
        if phi_deg < m {
            let x_img = Poly::var(&vars, 0, one.clone()).mul(&Poly::var(&vars, 1, one.clone()));
            let y_img = Poly::var(&vars, 1, one);
            let substituted = frame.f.substitute(&[x_img, y_img]);
            let strict = substituted
                .div_var_power(1, m)
                .expect("total transform not divisible by the exceptional power");
            let child = Frame {
                f: strict,
                abs_degree: frame.abs_degree,
                field: frame.field.clone(),
                exc_x: frame.exc_x,
                exc_y: Some(id),
                parent: Some(id),
                depth: frame.depth + 1,
            };
            let cid = self.blow_up(child)?;
            self.arena[id].children.push(cid);
        }
        Ok(id)
    }

    fn to_tree(&self, id: usize) -> InfinitelyNearPoint {
        let n = &self.arena[id];
        let mut children: Vec<InfinitelyNearPoint> =
            n.children.iter().map(|&c| self.to_tree(c)).collect();
        children.sort_by(crate::estree::cmp_nodes);
        InfinitelyNearPoint {
            multiplicity: n.multiplicity,
            conjugacy_degree: n.degree,
            kind: n.kind,
            children,
        }
    }

    /// Multiplicity sequence of the branch class ending at `leaf`, via the
    /// proximity equalities: the branch multiplicity at a point is the sum
    /// of its multiplicities at the following points proximate to it.
    fn branch_sequence(&self, leaf: usize) -> Vec<u32> {
        let mut path = vec![leaf];
        let mut cur = leaf;
        while let Some(p) = self.arena[cur].parent {
            path.push(p);
            cur = p;
        }
        path.reverse();
        let k = path.len();
        let mut mults = vec![1u32; k];
        for i in (0..k.saturating_sub(1)).rev() {
            let mut sum = 0u32;
            for j in (i + 1)..k {
                if self.arena[path[j]].prox.contains(&path[i]) {
                    sum += mults[j];
                }
            }
            mults[i] = sum.max(1);
        }
        mults
    }
}

/// Resolve a squarefree germ over its field at the origin-translated point.
///
/// Conjugacy degrees in the tree are relative to `field`.
pub fn resolve_germ(
    f: &APoly,
    field: &Arc<NumberField>,
    point: &PlanePoint,
    limits: &Limits,
) -> Result<(EsTree, ResolutionSummary)> {
    if f.is_zero() {
        return Err(Error::Domain("resolution of the zero curve".into()));
    }
    if !gcd::is_squarefree(f)? {
        return Err(Error::Domain(
            "resolution requires a squarefree equation".into(),
        ));
    }
    if !f
        .eval(&[point.0.clone(), point.1.clone()])
        .is_zero()
    {
        return Err(Error::Domain("the germ does not pass through the point".into()));
    }
    // Translate the point to the origin.
    let vars = f.vars().clone();
    let one = point.0.one_like();
    let x_img = Poly::var(&vars, 0, one.clone()).add(&Poly::constant(&vars, point.0.clone()));
    let y_img = Poly::var(&vars, 1, one).add(&Poly::constant(&vars, point.1.clone()));
    let translated = f.substitute(&[x_img, y_img]);

    let mut resolver = Resolver {
        limits,
        arena: Vec::new(),
    };
    let root_id = resolver.blow_up(Frame {
        f: translated,
        field: field.clone(),
        abs_degree: 1,
        exc_x: None,
        exc_y: None,
        parent: None,
        depth: 0,
    })?;
    debug_assert_eq!(root_id, 0);

    let mut delta_red = 0u64;
    for n in &resolver.arena {
        let m = n.multiplicity as u64;
        delta_red += n.degree as u64 * m * (m - 1) / 2;
    }
    let mut branch_count = 0u64;
    let mut sequences = Vec::new();
    for (id, n) in resolver.arena.iter().enumerate() {
        if n.children.is_empty() {
            branch_count += n.degree as u64;
            let seq = resolver.branch_sequence(id);
            for _ in 0..n.degree {
                sequences.push(seq.clone());
            }
        }
    }
    sequences.sort();
    sequences.reverse();

    let tree = EsTree {
        root: Some(resolver.to_tree(root_id)),
        embedded_colength: 0,
    };
    Ok((
        tree,
        ResolutionSummary {
            delta_red,
            branch_count,
            multiplicity_sequences: sequences,
        },
    ))
}

/// Resolve a rational germ at a (possibly algebraic) point.
pub fn resolve_germ_q(
    f: &QPoly,
    point: &PlanePoint,
    limits: &Limits,
) -> Result<(EsTree, ResolutionSummary)> {
    let field = point.0.field().clone();
    let lifted = f.lift_to(&point.0.zero_like());
    resolve_germ(&lifted, &field, point, limits)
}

/// The delta invariant of the reduced germ at the point, by the blow-up
/// formula: sum over the tree of degree * m(m-1)/2.
pub fn delta_red_at_point(f: &QPoly, point: &PlanePoint, limits: &Limits) -> Result<u64> {
    Ok(resolve_germ_q(f, point, limits)?.1.delta_red)
}

/// Dual-oracle self test: the classical relation mu = 2*delta - r + 1 for
/// reduced plane germs, with mu from the local-colength engine and
/// (delta, r) from the blow-up engine.
pub fn cross_check_milnor(f: &QPoly, point: &PlanePoint, limits: &Limits) -> Result<bool> {
    let mu = milnor_number(f, point, limits)?;
    let (_, summary) = resolve_germ_q(f, point, limits)?;
    let rhs = 2 * summary.delta_red as i64 - summary.branch_count as i64 + 1;
    Ok(mu as i64 == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::local::origin;
    use crate::parsepoly::parse_qpoly;
    use crate::poly::VarSet;
    use crate::rational::Rational;

    fn xy() -> Arc<VarSet> {
        VarSet::new(vec!["x", "y"])
    }

    fn p(src: &str) -> QPoly {
        parse_qpoly(src, &xy()).unwrap()
    }

    fn resolve(src: &str) -> (EsTree, ResolutionSummary) {
        resolve_germ_q(&p(src), &origin(), &Limits::default()).unwrap()
    }

    fn root(tree: &EsTree) -> &InfinitelyNearPoint {
        tree.root.as_ref().unwrap()
    }

    #[test]
    fn smooth_germ() {
        let (tree, s) = resolve("y-x^2");
        assert_eq!(s.delta_red, 0);
        assert_eq!(s.branch_count, 1);
        let r = root(&tree);
        assert_eq!(r.multiplicity, 1);
        assert!(r.children.is_empty());
        assert_eq!(s.multiplicity_sequences, vec![vec![1]]);
    }

    #[test]
    fn cusp_chain() {
        let (tree, s) = resolve("x^2-y^3");
        assert_eq!(s.delta_red, 1);
        assert_eq!(s.branch_count, 1);
        let r = root(&tree);
        assert_eq!(r.multiplicity, 2);
        // Chain: m=1 tangential, then m=1 satellite.
        assert_eq!(r.children.len(), 1);
        let c1 = &r.children[0];
        assert_eq!(c1.multiplicity, 1);
        assert_eq!(c1.kind, NodeKind::Free);
        assert_eq!(c1.children.len(), 1);
        let c2 = &c1.children[0];
        assert_eq!(c2.multiplicity, 1);
        assert_eq!(c2.kind, NodeKind::Satellite);
        assert!(c2.children.is_empty());
        assert_eq!(s.multiplicity_sequences, vec![vec![2, 1, 1]]);
    }

    #[test]
    fn node_splits_rationally() {
        let (tree, s) = resolve("x^2-y^2");
        assert_eq!(s.delta_red, 1);
        assert_eq!(s.branch_count, 2);
        let r = root(&tree);
        assert_eq!(r.multiplicity, 2);
        assert_eq!(r.children.len(), 2);
        assert!(r.children.iter().all(|c| c.multiplicity == 1
            && c.conjugacy_degree == 1
            && c.children.is_empty()));
    }

    #[test]
    fn conjugate_node_keeps_classes_together() {
        let (tree, s) = resolve("x^2+y^2");
        assert_eq!(s.delta_red, 1);
        assert_eq!(s.branch_count, 2);
        let r = root(&tree);
        assert_eq!(r.children.len(), 1);
        assert_eq!(r.children[0].conjugacy_degree, 2);
        assert_eq!(r.children[0].multiplicity, 1);
    }

    #[test]
    fn tacnode_two_blowups() {
        let (_, s) = resolve("x^2-y^4");
        assert_eq!(s.delta_red, 2);
        assert_eq!(s.branch_count, 2);
    }

    #[test]
    fn e6_singularity() {
        let (_, s) = resolve("x^3+y^4");
        assert_eq!(s.delta_red, 3);
        assert_eq!(s.branch_count, 1);
        assert_eq!(s.multiplicity_sequences, vec![vec![3, 1, 1, 1]]);
    }

    #[test]
    fn ordinary_triple_point() {
        let (tree, s) = resolve("x^3-y^3");
        assert_eq!(s.delta_red, 3);
        assert_eq!(s.branch_count, 3);
        let r = root(&tree);
        // One rational direction and one conjugate pair.
        let degs: Vec<u32> = r.children.iter().map(|c| c.conjugacy_degree).collect();
        assert_eq!(degs.iter().sum::<u32>(), 3);
        assert!(degs.contains(&1) && degs.contains(&2));
    }

    #[test]
    fn paper_germ_cusp_plus_line() {
        // (x^2 - y^3) * y: delta 3 = 1 + 0 + 2.
        let (tree, s) = resolve("(x^2-y^3)*y");
        assert_eq!(s.delta_red, 3);
        assert_eq!(s.branch_count, 2);
        assert_eq!(root(&tree).multiplicity, 3);
        let mut seqs = s.multiplicity_sequences.clone();
        seqs.sort();
        assert_eq!(seqs, vec![vec![1, 1], vec![2, 1, 1]]);
    }

    #[test]
    fn delta_additivity_on_products() {
        // delta(f*h) = delta(f) + delta(h) + i(f, h).
        let limits = Limits::default();
        let cases = [
            ("x^2-y^3", "y"),
            ("x^2-y^2", "x+y-y^2"),
            ("x^2-y^3", "x-y"),
        ];
        for (a, b) in cases {
            let fa = p(a);
            let fb = p(b);
            let d_prod = delta_red_at_point(&fa.mul(&fb), &origin(), &limits).unwrap();
            let da = delta_red_at_point(&fa, &origin(), &limits).unwrap();
            let db = delta_red_at_point(&fb, &origin(), &limits).unwrap();
            let i = crate::local::intersection_multiplicity(&fa, &fb, &origin(), &limits).unwrap();
            assert_eq!(d_prod, da + db + i, "additivity failed for {a}, {b}");
        }
    }

    #[test]
    fn milnor_cross_check_corpus() {
        let limits = Limits::default();
        for f in [
            "y-x^2",
            "x^2-y^2",
            "x^2-y^3",
            "x^2-y^4",
            "x^3+y^4",
            "x^3-y^3",
            "x^2+y^2",
            "(x^2-y^3)*y",
        ] {
            assert!(
                cross_check_milnor(&p(f), &origin(), &limits).unwrap(),
                "mu = 2 delta - r + 1 failed for {f}"
            );
        }
    }

    #[test]
    fn non_squarefree_is_rejected() {
        assert!(resolve_germ_q(&p("y^2"), &origin(), &Limits::default()).is_err());
    }

    #[test]
    fn germ_at_shifted_point() {
        // Node moved to (1, 2).
        let f = p("(x-1)^2 - (y-2)^2");
        let pt = crate::local::rational_point(Rational::from_int(1), Rational::from_int(2));
        let (_, s) = resolve_germ_q(&f, &pt, &Limits::default()).unwrap();
        assert_eq!(s.delta_red, 1);
        assert_eq!(s.branch_count, 2);
    }

    #[test]
    fn satellite_nodes_have_close_ancestors() {
        // Structural sanity: every satellite node is proximate to two
        // distinct earlier points, one its parent.
        fn walk(n: &InfinitelyNearPoint, parent_mult: Option<u32>) {
            if n.kind == NodeKind::Satellite {
                assert!(parent_mult.is_some(), "satellite at the root");
            }
            for c in &n.children {
                walk(c, Some(n.multiplicity));
            }
        }
        for f in ["x^2-y^3", "x^3+y^4", "(x^2-y^3)*y", "x^2-y^4"] {
            let (tree, _) = resolve(f);
            walk(root(&tree), None);
        }
    }
}
