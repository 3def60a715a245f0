//! Buchberger-based ideal arithmetic.
//!
//! Reduced Groebner bases (normal selection strategy, product and chain
//! criteria), normal forms, intersection via the auxiliary-variable
//! construction, ideal quotients, elimination through block orders,
//! colengths of zero-dimensional ideals and their radicals (Seidenberg).
//!
//! Reduced bases are cached per (ideal, order); an ideal is an immutable
//! handle that can be shared freely between threads, and concurrent readers
//! trigger at most one basis computation per order.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::gcd;
use crate::poly::{Monomial, MonomialOrder, Poly, VarSet};
use crate::rational::Rational;
use crate::trager::poly_to_unipoly_in;
use crate::unipoly::UniPoly;
use crate::Limits;

struct IdealInner<K: Field> {
    vars: Arc<VarSet>,
    gens: Vec<Poly<K>>,
    cache: Mutex<HashMap<MonomialOrder, Arc<Vec<Poly<K>>>>>,
}

/// An ideal given by generators, with cached reduced Groebner bases.
#[derive(Clone)]
pub struct Ideal<K: Field> {
    inner: Arc<IdealInner<K>>,
}

pub type QIdeal = Ideal<Rational>;

impl<K: Field> Ideal<K> {
    /// Builds an ideal; zero generators are dropped. An empty list (or all
    /// zero generators) is the zero ideal.
    pub fn new(vars: &Arc<VarSet>, gens: Vec<Poly<K>>) -> Self {
        let gens: Vec<Poly<K>> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        for g in &gens {
            assert!(
                g.vars() == vars,
                "generator from a different ring: {:?}",
                g.vars().names()
            );
        }
        Ideal {
            inner: Arc::new(IdealInner {
                vars: vars.clone(),
                gens,
                cache: Mutex::new(HashMap::new()),
            }),
        }
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.inner.vars
    }

    pub fn gens(&self) -> &[Poly<K>] {
        &self.inner.gens
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.inner.gens.is_empty()
    }

    /// The reduced Groebner basis under `ord`, cached.
    pub fn basis(&self, ord: &MonomialOrder, limits: &Limits) -> Result<Arc<Vec<Poly<K>>>> {
        let mut cache = self.inner.cache.lock().expect("basis cache poisoned");
        if let Some(b) = cache.get(ord) {
            return Ok(b.clone());
        }
        let b = Arc::new(buchberger(&self.inner.gens, ord, limits)?);
        cache.insert(ord.clone(), b.clone());
        Ok(b)
    }

    /// Remainder of `f` modulo the reduced basis; zero iff `f` is a member.
    pub fn normal_form(&self, f: &Poly<K>, ord: &MonomialOrder, limits: &Limits) -> Result<Poly<K>> {
        let basis = self.basis(ord, limits)?;
        Ok(reduce_full(f, &basis, ord))
    }

    pub fn contains(&self, f: &Poly<K>, limits: &Limits) -> Result<bool> {
        Ok(self
            .normal_form(f, &MonomialOrder::GrevLex, limits)?
            .is_zero())
    }

    /// Every generator of `other` is a member of `self`.
    pub fn contains_ideal(&self, other: &Ideal<K>, limits: &Limits) -> Result<bool> {
        for g in other.gens() {
            if !self.contains(g, limits)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn equals(&self, other: &Ideal<K>, limits: &Limits) -> Result<bool> {
        Ok(self.contains_ideal(other, limits)? && other.contains_ideal(self, limits)?)
    }

    pub fn is_unit_ideal(&self, limits: &Limits) -> Result<bool> {
        let b = self.basis(&MonomialOrder::GrevLex, limits)?;
        Ok(b.len() == 1 && b[0].is_constant() && !b[0].is_zero())
    }

    /// Product ideal: pairwise products of generators.
    pub fn product(&self, other: &Ideal<K>) -> Ideal<K> {
        let mut gens = Vec::new();
        for a in self.gens() {
            for b in other.gens() {
                gens.push(a.mul(b));
            }
        }
        Ideal::new(self.vars(), gens)
    }

    /// Principal ideal.
    pub fn principal(f: Poly<K>) -> Ideal<K> {
        let vars = f.vars().clone();
        Ideal::new(&vars, vec![f])
    }
}

impl<K: Field> std::fmt::Debug for Ideal<K> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Ideal<")?;
        for (i, g) in self.gens().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ">")
    }
}

/// Fully reduce `f` modulo `basis` (leading terms and tails).
fn reduce_full<K: Field>(f: &Poly<K>, basis: &[Poly<K>], ord: &MonomialOrder) -> Poly<K> {
    let mut rem = Poly::zero(f.vars());
    let mut cur = f.clone();
    'outer: while let Some((lm, lc)) = cur.leading(ord) {
        let lm = lm.clone();
        let lc = lc.clone();
        for g in basis {
            let (gm, gc) = g.leading(ord).expect("nonzero basis element");
            if let Some(q) = gm.div_into(&lm) {
                let factor = lc.div(gc);
                cur = cur.sub(&g.mul_term(&q, &factor));
                continue 'outer;
            }
        }
        // Leading term irreducible: move it to the remainder.
        let t = Poly::term(f.vars(), lm.clone(), lc);
        rem = rem.add(&t);
        cur = cur.sub(&t);
    }
    rem
}

/// Buchberger's algorithm with the normal selection strategy and the
/// product/chain criteria, followed by reduction to the unique reduced
/// basis (monic, tail-reduced, sorted by leading monomial).
pub fn buchberger<K: Field>(
    gens: &[Poly<K>],
    ord: &MonomialOrder,
    limits: &Limits,
) -> Result<Vec<Poly<K>>> {
    let mut basis: Vec<Poly<K>> = Vec::new();
    for g in gens {
        if !g.is_zero() {
            basis.push(g.clone());
        }
    }
    if basis.is_empty() {
        return Ok(Vec::new());
    }
    let vars = basis[0].vars().clone();

    let lm = |p: &Poly<K>| p.leading(ord).map(|(m, _)| m.clone()).expect("nonzero");

    // Pending S-pairs, keyed for the normal strategy: smallest lcm first,
    // ties by input order.
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for i in 0..basis.len() {
        for j in 0..i {
            pairs.push((j, i));
        }
    }

    while !pairs.is_empty() {
        // Normal strategy: pick the pair with the smallest lcm under ord.
        let mut best = 0;
        let mut best_lcm = lm(&basis[pairs[0].0]).lcm(&lm(&basis[pairs[0].1]));
        for (idx, &(i, j)) in pairs.iter().enumerate().skip(1) {
            let l = lm(&basis[i]).lcm(&lm(&basis[j]));
            if ord.cmp(&l, &best_lcm) == std::cmp::Ordering::Less {
                best = idx;
                best_lcm = l;
            }
        }
        let (i, j) = pairs.remove(best);
        let lmi = lm(&basis[i]);
        let lmj = lm(&basis[j]);
        let l = lmi.lcm(&lmj);

        // Product criterion.
        if lmi.is_coprime_with(&lmj) {
            continue;
        }
        // Chain criterion: some k with lm(k) | lcm and both other pairs
        // already treated.
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && lm(&basis[k]).divides(&l)
                && !pairs.contains(&(i.min(k), i.max(k)))
                && !pairs.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }

        // S-polynomial.
        let (mi, ci) = basis[i].leading(ord).unwrap();
        let (mj, cj) = basis[j].leading(ord).unwrap();
        let qi = mi.div_into(&l).unwrap();
        let qj = mj.div_into(&l).unwrap();
        let ci_inv = ci.inv().unwrap();
        let cj_inv = cj.inv().unwrap();
        let s = basis[i]
            .mul_term(&qi, &ci_inv)
            .sub(&basis[j].mul_term(&qj, &cj_inv));
        let r = reduce_full(&s, &basis, ord);
        if r.is_zero() {
            continue;
        }
        if basis.len() + 1 > limits.max_basis_size {
            return Err(Error::Resource(format!(
                "Groebner basis exceeded {} elements",
                limits.max_basis_size
            )));
        }
        if r.total_degree().unwrap_or(0) > limits.max_total_degree {
            return Err(Error::Resource(format!(
                "intermediate polynomial degree exceeded {}",
                limits.max_total_degree
            )));
        }
        if r.num_terms() > limits.max_terms {
            return Err(Error::Resource(format!(
                "intermediate polynomial exceeded {} terms",
                limits.max_terms
            )));
        }
        let new_idx = basis.len();
        basis.push(r);
        for k in 0..new_idx {
            pairs.push((k, new_idx));
        }
    }

    // Minimalize: drop elements whose leading monomial is divisible by
    // another's.
    let lms: Vec<Monomial> = basis.iter().map(|g| lm(g)).collect();
    let mut keep = vec![true; basis.len()];
    for i in 0..basis.len() {
        for j in 0..basis.len() {
            if i != j
                && keep[j]
                && lms[j].divides(&lms[i])
                && (lms[i] != lms[j] || j < i)
            {
                keep[i] = false;
                break;
            }
        }
    }
    let minimal: Vec<Poly<K>> = basis
        .into_iter()
        .zip(keep)
        .filter_map(|(g, k)| if k { Some(g) } else { None })
        .collect();

    // Interreduce tails and normalize monic.
    let mut reduced = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Poly<K>> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, g)| g.clone())
            .collect();
        let r = reduce_full(&minimal[i], &others, ord);
        assert!(!r.is_zero(), "minimal basis element reduced to zero");
        reduced.push(r.make_monic(ord));
    }
    reduced.sort_by(|a, b| {
        let (ma, _) = a.leading(ord).unwrap();
        let (mb, _) = b.leading(ord).unwrap();
        ord.cmp(ma, mb)
    });
    let _ = vars;
    Ok(reduced)
}

/// Intersection `I /\ J` via `t*I + (1-t)*J` and elimination of `t`.
pub fn intersect<K: Field>(a: &Ideal<K>, b: &Ideal<K>, limits: &Limits) -> Result<Ideal<K>> {
    if a.vars() != b.vars() {
        return Err(Error::Structural(
            "ideal intersection across different rings".into(),
        ));
    }
    if a.is_zero_ideal() || b.is_zero_ideal() {
        return Ok(Ideal::new(a.vars(), Vec::new()));
    }
    let vars = a.vars();
    // Fresh auxiliary variable name.
    let mut aux = String::from("t#");
    while vars.index_of(&aux).is_some() {
        aux.push('#');
    }
    let mut ext_names: Vec<String> = vec![aux.clone()];
    ext_names.extend(vars.names().iter().cloned());
    let ext = VarSet::new(ext_names);

    let one = a.gens()[0].sample_coeff().unwrap().one_like();
    let t = Poly::var(&ext, 0, one.clone());
    let one_p = Poly::constant(&ext, one);
    let mut gens = Vec::new();
    for g in a.gens() {
        gens.push(t.mul(&g.embed_into(&ext)?));
    }
    for g in b.gens() {
        gens.push(one_p.sub(&t).mul(&g.embed_into(&ext)?));
    }
    let extended = Ideal::new(&ext, gens);
    let basis = extended.basis(&MonomialOrder::elimination(1), limits)?;
    let mut out = Vec::new();
    for g in basis.iter() {
        if g.degree_in(0) == 0 {
            out.push(g.project_into(vars)?.lex_monic());
        }
    }
    Ok(Ideal::new(vars, out))
}

/// Left-to-right fold of pairwise intersections.
pub fn intersect_many<K: Field>(ideals: &[Ideal<K>], limits: &Limits) -> Result<Ideal<K>> {
    let mut iter = ideals.iter();
    let first = iter
        .next()
        .ok_or_else(|| Error::Domain("intersection of an empty list".into()))?;
    let mut acc = first.clone();
    for next in iter {
        acc = intersect(&acc, next, limits)?;
    }
    Ok(acc)
}

/// Ideal quotient `I : <f>`, computed as `(I /\ <f>)` divided exactly by `f`.
pub fn quotient<K: Field>(i: &Ideal<K>, f: &Poly<K>, limits: &Limits) -> Result<Ideal<K>> {
    if f.is_zero() {
        return Err(Error::Domain("quotient by the zero polynomial".into()));
    }
    let inter = intersect(i, &Ideal::principal(f.clone()), limits)?;
    let mut gens = Vec::new();
    for g in inter.gens() {
        let q = g
            .exact_div(f)
            .expect("quotient: intersection member not divisible");
        gens.push(q.lex_monic());
    }
    Ok(Ideal::new(i.vars(), gens))
}

/// Eliminate the named variables: `I /\ k[remaining]`, returned over the
/// smaller ring (ring order preserved).
pub fn eliminate<K: Field>(i: &Ideal<K>, drop: &[&str], limits: &Limits) -> Result<Ideal<K>> {
    let vars = i.vars();
    for d in drop {
        if vars.index_of(d).is_none() {
            return Err(Error::Structural(format!("unknown variable {d}")));
        }
    }
    let dropped: Vec<String> = vars
        .names()
        .iter()
        .filter(|n| drop.contains(&n.as_str()))
        .cloned()
        .collect();
    let kept: Vec<String> = vars
        .names()
        .iter()
        .filter(|n| !drop.contains(&n.as_str()))
        .cloned()
        .collect();
    if kept.is_empty() {
        return Err(Error::Domain("cannot eliminate every variable".into()));
    }
    let target = VarSet::new(kept.clone());
    if i.is_zero_ideal() {
        return Ok(Ideal::new(&target, Vec::new()));
    }
    let mut perm_names = dropped.clone();
    perm_names.extend(kept);
    let perm = VarSet::new(perm_names);
    let moved: Vec<Poly<K>> = i
        .gens()
        .iter()
        .map(|g| g.embed_into(&perm))
        .collect::<Result<_>>()?;
    let moved_ideal = Ideal::new(&perm, moved);
    let basis = moved_ideal.basis(&MonomialOrder::elimination(dropped.len()), limits)?;
    let mut out = Vec::new();
    for g in basis.iter() {
        if (0..dropped.len()).all(|v| g.degree_in(v) == 0) {
            out.push(g.project_into(&target)?.lex_monic());
        }
    }
    Ok(Ideal::new(&target, out))
}

/// Colength of an ideal: the number of standard monomials.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Colength {
    Finite(u64),
    Infinite,
}

impl Colength {
    pub fn finite(self) -> Option<u64> {
        match self {
            Colength::Finite(n) => Some(n),
            Colength::Infinite => None,
        }
    }
}

/// `dim_k k[x]/I` as a count of monomials outside the leading-term ideal.
pub fn global_colength<K: Field>(i: &Ideal<K>, limits: &Limits) -> Result<Colength> {
    if i.is_zero_ideal() {
        return Ok(Colength::Infinite);
    }
    let ord = MonomialOrder::GrevLex;
    let basis = i.basis(&ord, limits)?;
    if basis.len() == 1 && basis[0].is_constant() {
        return Ok(Colength::Finite(0));
    }
    let n = i.vars().len();
    let lms: Vec<Monomial> = basis
        .iter()
        .map(|g| g.leading(&ord).unwrap().0.clone())
        .collect();
    // Finite iff every variable has a pure power among the leading terms.
    let mut bound = vec![0u32; n];
    for v in 0..n {
        let mut best: Option<u32> = None;
        for m in &lms {
            if m.0.iter().enumerate().all(|(i2, &e)| i2 == v || e == 0) {
                let e = m.0[v];
                best = Some(best.map_or(e, |b| b.min(e)));
            }
        }
        match best {
            Some(e) => bound[v] = e,
            None => return Ok(Colength::Infinite),
        }
    }
    // Count standard monomials below the staircase.
    let mut count = 0u64;
    let mut stack = vec![vec![0u32; 0]];
    while let Some(prefix) = stack.pop() {
        if prefix.len() == n {
            let mono = Monomial(prefix);
            if !lms.iter().any(|m| m.divides(&mono)) {
                count += 1;
            }
            continue;
        }
        let v = prefix.len();
        for e in 0..bound[v] {
            let mut next = prefix.clone();
            next.push(e);
            stack.push(next);
        }
    }
    Ok(Colength::Finite(count))
}

/// Radical of a zero-dimensional ideal (Seidenberg): adjoin the squarefree
/// parts of the univariate eliminants in each variable.
pub fn zero_dim_radical<K: Field>(j: &Ideal<K>, limits: &Limits) -> Result<Ideal<K>> {
    match global_colength(j, limits)? {
        Colength::Infinite => Err(Error::Domain(
            "radical requested for a non-zero-dimensional ideal".into(),
        )),
        Colength::Finite(0) => Ok(j.clone()),
        Colength::Finite(_) => {
            let vars = j.vars();
            let names = vars.names();
            let mut gens = j.gens().to_vec();
            for v in 0..names.len() {
                let drop: Vec<&str> = names
                    .iter()
                    .enumerate()
                    .filter(|(i2, _)| *i2 != v)
                    .map(|(_, n)| n.as_str())
                    .collect();
                let eli = if drop.is_empty() {
                    j.clone()
                } else {
                    eliminate(j, &drop, limits)?
                };
                let gen = eli
                    .basis(&MonomialOrder::Lex, limits)?
                    .first()
                    .cloned()
                    .ok_or_else(|| {
                        Error::Domain("missing eliminant for a zero-dimensional ideal".into())
                    })?;
                let uni: UniPoly<K> = poly_to_unipoly_in(&gen, 0);
                let sf = uni.squarefree_part();
                // Back into the full ring.
                let mut p = Poly::zero(vars);
                for (d, c) in sf.coeffs().iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let mut e = vec![0u32; names.len()];
                    e[v] = d as u32;
                    p = p.add(&Poly::term(vars, Monomial(e), c.clone()));
                }
                gens.push(p);
            }
            Ok(Ideal::new(vars, gens))
        }
    }
}

/// gcd of all generators, lex-monic. Errors on the zero ideal.
pub fn gens_gcd<K: Field>(i: &Ideal<K>) -> Result<Poly<K>> {
    gcd::gcd_many(i.gens())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parsepoly::parse_qpoly;
    use crate::poly::QPoly;

    fn xy() -> Arc<VarSet> {
        VarSet::new(vec!["x", "y"])
    }

    fn p(src: &str, vars: &Arc<VarSet>) -> QPoly {
        parse_qpoly(src, vars).unwrap()
    }

    fn ideal(srcs: &[&str], vars: &Arc<VarSet>) -> QIdeal {
        Ideal::new(vars, srcs.iter().map(|s| p(s, vars)).collect())
    }

    #[test]
    fn already_reduced_basis() {
        let vars = xy();
        let i = ideal(&["x", "y"], &vars);
        let b = i.basis(&MonomialOrder::GrevLex, &Limits::default()).unwrap();
        assert_eq!(b.len(), 2);
        assert_eq!(b[0], p("y", &vars));
        assert_eq!(b[1], p("x", &vars));
    }

    #[test]
    fn lex_basis_contains_eliminant() {
        let vars = xy();
        // <y - x^2, x*y> under lex(x > y) has the eliminant y^2.
        let i = ideal(&["y-x^2", "x*y"], &vars);
        let b = i.basis(&MonomialOrder::Lex, &Limits::default()).unwrap();
        assert!(b.contains(&p("y^2", &vars)), "basis: {b:?}");
        // Membership round-trip.
        let limits = Limits::default();
        assert!(i.contains(&p("y^2", &vars), &limits).unwrap());
        assert!(i.contains(&p("(y-x^2)*(x+y)+x*y*y", &vars), &limits).unwrap());
        assert!(!i.contains(&p("x", &vars), &limits).unwrap());
    }

    #[test]
    fn unit_ideal_basis() {
        let vars = xy();
        let i = ideal(&["1"], &vars);
        let b = i.basis(&MonomialOrder::GrevLex, &Limits::default()).unwrap();
        assert_eq!(b.len(), 1);
        assert!(b[0].is_constant());
    }

    #[test]
    fn normal_form_membership() {
        let vars = xy();
        let limits = Limits::default();
        let i = ideal(&["x"], &vars);
        assert!(i.normal_form(&p("x^2", &vars), &MonomialOrder::GrevLex, &limits).unwrap().is_zero());
        assert_eq!(
            i.normal_form(&p("y", &vars), &MonomialOrder::GrevLex, &limits).unwrap(),
            p("y", &vars)
        );
    }

    #[test]
    fn intersect_examples() {
        let vars = xy();
        let limits = Limits::default();
        // <x^2, y> /\ <x> = <x^2, x*y>
        let a = ideal(&["x^2", "y"], &vars);
        let b = ideal(&["x"], &vars);
        let i = intersect(&a, &b, &limits).unwrap();
        let expect = ideal(&["x^2", "x*y"], &vars);
        assert!(i.equals(&expect, &limits).unwrap());
        // I /\ <1> = I
        let one = ideal(&["1"], &vars);
        let j = ideal(&["x^2-y^3", "x*y"], &vars);
        assert!(intersect(&j, &one, &limits).unwrap().equals(&j, &limits).unwrap());
        // I /\ I = I
        assert!(intersect(&j, &j, &limits).unwrap().equals(&j, &limits).unwrap());
    }

    #[test]
    fn quotient_examples() {
        let vars = xy();
        let limits = Limits::default();
        // <x^2, x*y> : x = <x, y>
        let i = ideal(&["x^2", "x*y"], &vars);
        let q = quotient(&i, &p("x", &vars), &limits).unwrap();
        assert!(q.equals(&ideal(&["x", "y"], &vars), &limits).unwrap());
        // I : 1 = I
        let q1 = quotient(&i, &p("1", &vars), &limits).unwrap();
        assert!(q1.equals(&i, &limits).unwrap());
        // <(x^2-y^3)*y> : (x^2-y^3) = <y>
        let pr = ideal(&["(x^2-y^3)*y"], &vars);
        let q2 = quotient(&pr, &p("x^2-y^3", &vars), &limits).unwrap();
        assert!(q2.equals(&ideal(&["y"], &vars), &limits).unwrap());
    }

    #[test]
    fn eliminate_examples() {
        let vars = xy();
        let limits = Limits::default();
        // Parametrized curve has no eliminant.
        let i = ideal(&["x-y^2"], &vars);
        let e = eliminate(&i, &["x"], &limits).unwrap();
        assert!(e.is_zero_ideal());
        // Point projection.
        let j = ideal(&["x-1", "y-2"], &vars);
        let e2 = eliminate(&j, &["x"], &limits).unwrap();
        assert_eq!(e2.gens().len(), 1);
        let yvar = VarSet::new(vec!["y"]);
        assert_eq!(e2.gens()[0], parse_qpoly("y-2", &yvar).unwrap());
        // Singular locus of (x^2-y^3)*y eliminates to powers of y.
        let g = "(x^2-y^3)*y";
        let sing = ideal(
            &[g, "2*x*y", "x^2-4*y^3"],
            &vars,
        );
        let e3 = eliminate(&sing, &["x"], &limits).unwrap();
        assert_eq!(e3.gens().len(), 1);
        let gen = &e3.gens()[0];
        // Radical of the eliminant is y: a pure power of y.
        let uni = poly_to_unipoly_in(gen, 0);
        assert!(uni.coeffs().iter().take(uni.deg()).all(|c| c.is_zero()));
    }

    #[test]
    fn colength_examples() {
        let vars = xy();
        let limits = Limits::default();
        assert_eq!(
            global_colength(&ideal(&["x", "y"], &vars), &limits).unwrap(),
            Colength::Finite(1)
        );
        assert_eq!(
            global_colength(&ideal(&["x", "y^5"], &vars), &limits).unwrap(),
            Colength::Finite(5)
        );
        assert_eq!(
            global_colength(&ideal(&["x^2-y^3"], &vars), &limits).unwrap(),
            Colength::Infinite
        );
    }

    #[test]
    fn colength_is_order_independent() {
        let vars = xy();
        let limits = Limits::default();
        for gens in [
            vec!["x^2", "y^3"],
            vec!["x^2-y", "y^2"],
            vec!["x^3 - y", "x*y - x", "y^4"],
        ] {
            let i = ideal(&gens, &vars);
            let grev = global_colength(&i, &limits).unwrap();
            // Force a lex basis and recount through a fresh ideal built from it.
            let lex_basis = i.basis(&MonomialOrder::Lex, &limits).unwrap();
            let i2 = Ideal::new(&vars, lex_basis.to_vec());
            // Count standard monomials under lex.
            let ord = MonomialOrder::Lex;
            let b = i2.basis(&ord, &limits).unwrap();
            let lms: Vec<Monomial> = b.iter().map(|g| g.leading(&ord).unwrap().0.clone()).collect();
            let mut bound = vec![0u32; 2];
            let mut finite = true;
            for v in 0..2 {
                let mut best: Option<u32> = None;
                for m in &lms {
                    if m.0.iter().enumerate().all(|(i3, &e)| i3 == v || e == 0) {
                        best = Some(best.map_or(m.0[v], |x: u32| x.min(m.0[v])));
                    }
                }
                match best {
                    Some(e) => bound[v] = e,
                    None => finite = false,
                }
            }
            assert!(finite);
            let mut count = 0u64;
            for a in 0..bound[0] {
                for bexp in 0..bound[1] {
                    let mono = Monomial(vec![a, bexp]);
                    if !lms.iter().any(|m| m.divides(&mono)) {
                        count += 1;
                    }
                }
            }
            assert_eq!(Colength::Finite(count), grev);
        }
    }

    #[test]
    fn radical_examples() {
        let vars = xy();
        let limits = Limits::default();
        let r = zero_dim_radical(&ideal(&["x", "y^5"], &vars), &limits).unwrap();
        assert!(r.equals(&ideal(&["x", "y"], &vars), &limits).unwrap());
        let r2 = zero_dim_radical(&ideal(&["x", "y"], &vars), &limits).unwrap();
        assert!(r2.equals(&ideal(&["x", "y"], &vars), &limits).unwrap());
        let r3 = zero_dim_radical(&ideal(&["x^2", "y^2"], &vars), &limits).unwrap();
        assert!(r3.equals(&ideal(&["x", "y"], &vars), &limits).unwrap());
        // Idempotence.
        let r4 = zero_dim_radical(&r3, &limits).unwrap();
        assert!(r4.equals(&r3, &limits).unwrap());
        // Error on positive-dimensional input.
        assert!(zero_dim_radical(&ideal(&["x^2-y^3"], &vars), &limits).is_err());
    }

    #[test]
    fn reduced_basis_is_deterministic() {
        let vars = xy();
        let limits = Limits::default();
        let i1 = ideal(&["y-x^2", "x*y"], &vars);
        let i2 = ideal(&["x*y", "y-x^2"], &vars); // different generator order
        let b1 = i1.basis(&MonomialOrder::GrevLex, &limits).unwrap();
        let b2 = i2.basis(&MonomialOrder::GrevLex, &limits).unwrap();
        assert_eq!(*b1, *b2);
    }

    #[test]
    fn paper_intersection_expands_to_product_with_fat_point() {
        // I0 = <x^2-y^3> /\ <y> /\ <x, y^5> expands to g*<x, y> with
        // g = (x^2-y^3)*y.
        let vars = xy();
        let limits = Limits::default();
        let i0 = intersect_many(
            &[
                ideal(&["x^2-y^3"], &vars),
                ideal(&["y"], &vars),
                ideal(&["x", "y^5"], &vars),
            ],
            &limits,
        )
        .unwrap();
        let g = p("(x^2-y^3)*y", &vars);
        let expect = Ideal::new(&vars, vec![g.mul(&p("x", &vars)), g.mul(&p("y", &vars))]);
        assert!(i0.equals(&expect, &limits).unwrap());
        // The gcd of the expanded generators is g.
        let got = gens_gcd(&i0).unwrap();
        assert_eq!(got, g.lex_monic());
    }
}
