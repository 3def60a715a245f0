//! Univariate factorization over the rationals.
//!
//! Pipeline: Yun squarefree decomposition, reduction to a primitive integer
//! polynomial, factorization modulo a good small prime (Berlekamp), Hensel
//! lifting past the Landau-Mignotte bound, and Zassenhaus subset
//! recombination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::unipoly::UniPoly;

/// A complete factorization `unit * prod factors[i].0 ^ factors[i].1` with
/// monic irreducible factors, sorted canonically.
#[derive(Debug, Clone)]
pub struct Factorization {
    pub unit: Rational,
    pub factors: Vec<(UniPoly<Rational>, u32)>,
}

impl Factorization {
    pub fn expand(&self) -> UniPoly<Rational> {
        let mut acc = UniPoly::constant(self.unit.clone());
        for (f, e) in &self.factors {
            for _ in 0..*e {
                acc = acc.mul(f);
            }
        }
        acc
    }
}

/// Factor a nonzero rational polynomial into monic irreducibles.
pub fn factor_q(f: &UniPoly<Rational>) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::Domain("factorization of zero".into()));
    }
    let unit = f.lc().clone();
    let monic = f.monic();
    if monic.deg() == 0 {
        return Ok(Factorization {
            unit,
            factors: Vec::new(),
        });
    }
    let mut factors: Vec<(UniPoly<Rational>, u32)> = Vec::new();
    for (part, mult) in yun_squarefree(&monic) {
        if part.deg() == 0 {
            continue;
        }
        for irr in factor_squarefree(&part)? {
            factors.push((irr, mult));
        }
    }
    factors.sort_by(|(a, _), (b, _)| crate::numberfield::cmp_unipoly(a, b));
    let result = Factorization { unit, factors };
    debug_assert_eq!(result.expand(), *f);
    Ok(result)
}

/// True iff the (nonconstant) polynomial is irreducible over the rationals.
pub fn is_irreducible_q(f: &UniPoly<Rational>) -> bool {
    if f.is_zero() || f.deg() == 0 {
        return false;
    }
    match factor_q(f) {
        Ok(fac) => fac.factors.len() == 1 && fac.factors[0].1 == 1,
        Err(_) => false,
    }
}

/// Yun's algorithm: `f = prod out[i].0 ^ out[i].1` with the parts pairwise
/// coprime and squarefree. `f` monic, characteristic zero.
fn yun_squarefree(f: &UniPoly<Rational>) -> Vec<(UniPoly<Rational>, u32)> {
    let mut out = Vec::new();
    let df = f.derivative();
    let a = f.gcd(&df);
    if a.is_constant() {
        return vec![(f.clone(), 1)];
    }
    let mut b = f.div_rem(&a).0;
    let mut c = df.div_rem(&a).0;
    let mut d = c.sub(&b.derivative());
    let mut i = 1u32;
    loop {
        let a_i = b.gcd(&d);
        if a_i.degree().map_or(false, |d| d > 0) {
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

/// Integer polynomial as dense BigInt coefficients, low degree first.
#[derive(Clone, Debug, PartialEq)]
struct ZPoly(Vec<BigInt>);

impl ZPoly {
    fn normalize(mut v: Vec<BigInt>) -> Self {
        while v.last().map_or(false, |c| c.is_zero()) {
            v.pop();
        }
        ZPoly(v)
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn deg(&self) -> usize {
        assert!(!self.is_zero());
        self.0.len() - 1
    }

    fn lc(&self) -> &BigInt {
        self.0.last().unwrap()
    }

    fn mul(&self, other: &ZPoly) -> ZPoly {
        if self.is_zero() || other.is_zero() {
            return ZPoly(Vec::new());
        }
        let mut out = vec![BigInt::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ZPoly::normalize(out)
    }

    fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.0 {
            g = g.gcd(c);
        }
        g
    }

    fn primitive(&self) -> ZPoly {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        ZPoly(self.0.iter().map(|x| x / &c).collect())
    }

    /// Exact division test over Z; returns the quotient when it divides.
    fn try_exact_div(&self, divisor: &ZPoly) -> Option<ZPoly> {
        if self.is_zero() {
            return Some(ZPoly(Vec::new()));
        }
        if divisor.is_zero() || self.deg() < divisor.deg() {
            return None;
        }
        let mut rem = self.0.clone();
        let dd = divisor.deg();
        let dlc = divisor.lc();
        let mut quo = vec![BigInt::zero(); self.deg() - dd + 1];
        for k in (0..quo.len()).rev() {
            let top = rem[k + dd].clone();
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(dlc);
            if !r.is_zero() {
                return None;
            }
            quo[k] = q.clone();
            for (i, dc) in divisor.0.iter().enumerate() {
                rem[k + i] -= &q * dc;
            }
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(ZPoly::normalize(quo))
    }

    fn to_q(&self) -> UniPoly<Rational> {
        UniPoly::new(self.0.iter().map(|c| Rational::from_bigint(c.clone())).collect())
    }
}

/// Clear denominators of a monic rational polynomial into a primitive
/// integer polynomial (the same polynomial up to a positive rational unit).
fn to_primitive_z(f: &UniPoly<Rational>) -> ZPoly {
    let mut denom_lcm = BigInt::one();
    for c in f.coeffs() {
        denom_lcm = denom_lcm.lcm(c.denom());
    }
    let ints: Vec<BigInt> = f
        .coeffs()
        .iter()
        .map(|c| c.numer() * (&denom_lcm / c.denom()))
        .collect();
    let z = ZPoly::normalize(ints);
    let mut p = z.primitive();
    if p.lc().is_negative() {
        p = ZPoly(p.0.iter().map(|c| -c).collect());
    }
    p
}

// ---------------------------------------------------------------------------
// Arithmetic mod a small prime.
// ---------------------------------------------------------------------------

fn addm(a: u64, b: u64, p: u64) -> u64 {
    (a + b) % p
}

fn subm(a: u64, b: u64, p: u64) -> u64 {
    (a + p - b) % p
}

fn mulm(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powm(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulm(acc, a, p);
        }
        a = mulm(a, a, p);
        e >>= 1;
    }
    acc
}

fn invm(a: u64, p: u64) -> u64 {
    powm(a, p - 2, p)
}

/// Dense polynomial over F_p, low degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq)]
struct FpPoly {
    p: u64,
    c: Vec<u64>,
}

impl FpPoly {
    fn new(p: u64, mut c: Vec<u64>) -> Self {
        for x in &mut c {
            *x %= p;
        }
        while c.last() == Some(&0) {
            c.pop();
        }
        FpPoly { p, c }
    }

    fn zero(p: u64) -> Self {
        FpPoly { p, c: Vec::new() }
    }

    fn one(p: u64) -> Self {
        FpPoly { p, c: vec![1] }
    }

    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    fn deg(&self) -> usize {
        assert!(!self.is_zero());
        self.c.len() - 1
    }

    fn lc(&self) -> u64 {
        *self.c.last().unwrap()
    }

    fn monic(&self) -> FpPoly {
        if self.is_zero() || self.lc() == 1 {
            return self.clone();
        }
        let inv = invm(self.lc(), self.p);
        FpPoly::new(self.p, self.c.iter().map(|&x| mulm(x, inv, self.p)).collect())
    }

    fn sub(&self, other: &FpPoly) -> FpPoly {
        let n = self.c.len().max(other.c.len());
        let mut out = vec![0u64; n];
        for i in 0..n {
            let a = self.c.get(i).copied().unwrap_or(0);
            let b = other.c.get(i).copied().unwrap_or(0);
            out[i] = subm(a, b, self.p);
        }
        FpPoly::new(self.p, out)
    }

    fn mul(&self, other: &FpPoly) -> FpPoly {
        if self.is_zero() || other.is_zero() {
            return FpPoly::zero(self.p);
        }
        let mut out = vec![0u64; self.c.len() + other.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.c.iter().enumerate() {
                out[i + j] = addm(out[i + j], mulm(a, b, self.p), self.p);
            }
        }
        FpPoly::new(self.p, out)
    }

    fn div_rem(&self, divisor: &FpPoly) -> (FpPoly, FpPoly) {
        assert!(!divisor.is_zero());
        let p = self.p;
        let dlc_inv = invm(divisor.lc(), p);
        let dd = divisor.deg();
        let mut rem = self.c.clone();
        if rem.len() < divisor.c.len() {
            return (FpPoly::zero(p), self.clone());
        }
        let mut quo = vec![0u64; rem.len() - dd];
        for k in (0..quo.len()).rev() {
            let top = rem[k + dd];
            if top == 0 {
                continue;
            }
            let q = mulm(top, dlc_inv, p);
            quo[k] = q;
            for (i, &dc) in divisor.c.iter().enumerate() {
                rem[k + i] = subm(rem[k + i], mulm(q, dc, p), p);
            }
        }
        (FpPoly::new(p, quo), FpPoly::new(p, rem))
    }

    fn rem(&self, divisor: &FpPoly) -> FpPoly {
        self.div_rem(divisor).1
    }

    fn gcd(&self, other: &FpPoly) -> FpPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    fn derivative(&self) -> FpPoly {
        if self.c.len() <= 1 {
            return FpPoly::zero(self.p);
        }
        let out = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mulm(c, (i as u64) % self.p, self.p))
            .collect();
        FpPoly::new(self.p, out)
    }

    /// x^e mod self (self nonconstant).
    fn x_pow_mod(&self, e: u64) -> FpPoly {
        let p = self.p;
        let x = FpPoly::new(p, vec![0, 1]);
        let mut acc = FpPoly::one(p);
        let mut base = x.rem(self);
        let mut ee = e;
        while ee > 0 {
            if ee & 1 == 1 {
                acc = acc.mul(&base).rem(self);
            }
            base = base.mul(&base).rem(self);
            ee >>= 1;
        }
        acc
    }
}

/// Berlekamp factorization of a squarefree monic polynomial over F_p.
/// Deterministic: small p, exhaustive splitting constants.
fn berlekamp(f: &FpPoly) -> Vec<FpPoly> {
    let p = f.p;
    let n = f.deg();
    if n == 1 {
        return vec![f.clone()];
    }
    // Frobenius matrix: rows are x^(i*p) mod f on the monomial basis.
    let mut rows: Vec<Vec<u64>> = Vec::with_capacity(n);
    let xp = f.x_pow_mod(p);
    let mut cur = FpPoly::one(p);
    for _ in 0..n {
        let mut row = vec![0u64; n];
        for (j, &c) in cur.c.iter().enumerate() {
            row[j] = c;
        }
        rows.push(row);
        cur = cur.mul(&xp).rem(f);
    }
    // Q - I, transposed so nullspace vectors are Berlekamp subalgebra elts.
    let mut mat = vec![vec![0u64; n]; n];
    for i in 0..n {
        for j in 0..n {
            mat[j][i] = rows[i][j];
        }
    }
    for i in 0..n {
        mat[i][i] = subm(mat[i][i], 1, p);
    }
    let null = nullspace(&mat, p);
    let r = null.len();
    if r == 1 {
        return vec![f.clone()];
    }
    let mut factors = vec![f.monic()];
    'vectors: for v in &null {
        let vp = FpPoly::new(p, v.clone());
        if vp.is_zero() || vp.deg() == 0 {
            continue;
        }
        let mut i = 0;
        while i < factors.len() {
            if factors.len() == r {
                break 'vectors;
            }
            if factors[i].deg() <= 1 {
                i += 1;
                continue;
            }
            let mut remaining = factors[i].clone();
            let mut pieces = Vec::new();
            for cval in 0..p {
                if remaining.deg() == 0 {
                    break;
                }
                let shifted = vp.sub(&FpPoly::new(p, vec![cval]));
                let g = remaining.gcd(&shifted);
                if !g.is_zero() && g.deg() > 0 && g.deg() < remaining.deg() {
                    remaining = remaining.div_rem(&g).0.monic();
                    pieces.push(g);
                }
            }
            if remaining.deg() > 0 {
                pieces.push(remaining);
            }
            if pieces.len() > 1 {
                factors.splice(i..i + 1, pieces);
                // Re-examine the new pieces with later vectors only; this
                // vector cannot split them further.
                i += 1;
            } else {
                i += 1;
            }
        }
    }
    debug_assert_eq!(factors.len(), r, "Berlekamp split incomplete");
    factors.sort_by(|a, b| (a.c.len(), &a.c).cmp(&(b.c.len(), &b.c)));
    factors
}

/// Nullspace basis of a square matrix over F_p.
fn nullspace(mat: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let n = mat.len();
    let mut m: Vec<Vec<u64>> = mat.to_vec();
    let mut pivot_col_of_row = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let mut pivot = None;
        for r in row..n {
            if m[r][col] != 0 {
                pivot = Some(r);
                break;
            }
        }
        let Some(pr) = pivot else { continue };
        m.swap(row, pr);
        let inv = invm(m[row][col], p);
        for x in &mut m[row] {
            *x = mulm(*x, inv, p);
        }
        for r in 0..n {
            if r != row && m[r][col] != 0 {
                let factor = m[r][col];
                for c2 in 0..n {
                    let sub = mulm(factor, m[row][c2], p);
                    m[r][c2] = subm(m[r][c2], sub, p);
                }
            }
        }
        pivot_col_of_row.push(col);
        row += 1;
        if row == n {
            break;
        }
    }
    let pivot_cols: Vec<usize> = pivot_col_of_row;
    let mut basis = Vec::new();
    for free in 0..n {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![0u64; n];
        v[free] = 1;
        for (r, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = subm(0, m[r][free], p);
        }
        basis.push(v);
    }
    basis
}

// ---------------------------------------------------------------------------
// Hensel lifting.
// ---------------------------------------------------------------------------

fn mod_sym(a: &BigInt, m: &BigInt) -> BigInt {
    let mut r = a.mod_floor(m);
    if &r * 2 > *m {
        r -= m;
    }
    r
}

fn zpoly_mod(f: &ZPoly, m: &BigInt) -> ZPoly {
    ZPoly::normalize(f.0.iter().map(|c| c.mod_floor(m)).collect())
}

fn zpoly_mod_sym(f: &ZPoly, m: &BigInt) -> ZPoly {
    ZPoly::normalize(f.0.iter().map(|c| mod_sym(c, m)).collect())
}

fn zpoly_add(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let n = a.0.len().max(b.0.len());
    let mut out = vec![BigInt::zero(); n];
    for (i, slot) in out.iter_mut().enumerate() {
        let x = a.0.get(i).cloned().unwrap_or_default();
        let y = b.0.get(i).cloned().unwrap_or_default();
        *slot = x + y;
    }
    ZPoly::normalize(out)
}

fn zpoly_sub(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let n = a.0.len().max(b.0.len());
    let mut out = vec![BigInt::zero(); n];
    for (i, slot) in out.iter_mut().enumerate() {
        let x = a.0.get(i).cloned().unwrap_or_default();
        let y = b.0.get(i).cloned().unwrap_or_default();
        *slot = x - y;
    }
    ZPoly::normalize(out)
}

/// Division with remainder mod m by a divisor whose lc is invertible mod m.
fn zpoly_div_rem_mod(a: &ZPoly, b: &ZPoly, m: &BigInt) -> (ZPoly, ZPoly) {
    let b = zpoly_mod(b, m);
    assert!(!b.is_zero());
    let lc_inv = mod_inverse(b.lc(), m).expect("lc invertible mod m");
    let dd = b.deg();
    let mut rem: Vec<BigInt> = a.0.iter().map(|c| c.mod_floor(m)).collect();
    while rem.last().map_or(false, |c| c.is_zero()) {
        rem.pop();
    }
    if rem.len() <= dd {
        return (ZPoly(Vec::new()), ZPoly::normalize(rem));
    }
    let mut quo = vec![BigInt::zero(); rem.len() - dd];
    for k in (0..quo.len()).rev() {
        let top = rem[k + dd].mod_floor(m);
        if top.is_zero() {
            continue;
        }
        let q = (&top * &lc_inv).mod_floor(m);
        quo[k] = q.clone();
        for (i, dc) in b.0.iter().enumerate() {
            rem[k + i] = (&rem[k + i] - &q * dc).mod_floor(m);
        }
    }
    while rem.last().map_or(false, |c| c.is_zero()) {
        rem.pop();
    }
    (
        ZPoly::normalize(quo.into_iter().map(|c| c.mod_floor(m)).collect()),
        ZPoly::normalize(rem),
    )
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

/// One quadratic Hensel step (von zur Gathen & Gerhard 15.10): from
/// `f = g*h (mod m)` and `s*g + t*h = 1 (mod m)` with `h` monic to the same
/// identities mod m^2, `h` staying monic.
fn hensel_step(
    f: &ZPoly,
    g: &ZPoly,
    h: &ZPoly,
    s: &ZPoly,
    t: &ZPoly,
    m: &BigInt,
) -> (ZPoly, ZPoly, ZPoly, ZPoly) {
    let m2 = m * m;
    let e = zpoly_mod(&zpoly_sub(f, &g.mul(h)), &m2);
    let (q, r) = zpoly_div_rem_mod(&s.mul(&e), h, &m2);
    let g2 = zpoly_mod(&zpoly_add(&zpoly_add(g, &t.mul(&e)), &q.mul(g)), &m2);
    let h2 = zpoly_mod(&zpoly_add(h, &r), &m2);
    let one = ZPoly(vec![BigInt::one()]);
    let b = zpoly_mod(
        &zpoly_sub(&zpoly_add(&s.mul(&g2), &t.mul(&h2)), &one),
        &m2,
    );
    let (c, d) = zpoly_div_rem_mod(&s.mul(&b), &h2, &m2);
    let s2 = zpoly_mod(&zpoly_sub(s, &d), &m2);
    let t2 = zpoly_mod(&zpoly_sub(&zpoly_sub(t, &t.mul(&b)), &c.mul(&g2)), &m2);
    (g2, h2, s2, t2)
}

/// Lift a two-factor decomposition `f = g*h (mod p)`, everything monic, to
/// modulus `p^(2^k) > bound`.
fn hensel_lift_pair(
    f: &ZPoly,
    g0: &FpPoly,
    h0: &FpPoly,
    p: u64,
    bound: &BigInt,
) -> (ZPoly, ZPoly) {
    let to_z = |fp: &FpPoly| ZPoly::normalize(fp.c.iter().map(|&c| BigInt::from(c)).collect());
    let mut g = to_z(g0);
    let mut h = to_z(h0);
    // Bezout pair mod p, scaled so s*g + t*h = 1.
    let (d, s0, t0) = fp_extended_gcd(g0, h0);
    assert!(d.deg() == 0, "factors not coprime mod p");
    let dinv = invm(d.c[0], p);
    let scale =
        |fp: &FpPoly| FpPoly::new(p, fp.c.iter().map(|&c| mulm(c, dinv, p)).collect());
    let mut s = to_z(&scale(&s0));
    let mut t = to_z(&scale(&t0));
    let mut m = BigInt::from(p);
    while &m <= bound {
        let (g2, h2, s2, t2) = hensel_step(f, &g, &h, &s, &t, &m);
        g = g2;
        h = h2;
        s = s2;
        t = t2;
        m = &m * &m;
    }
    (g, h)
}

fn fp_extended_gcd(a: &FpPoly, b: &FpPoly) -> (FpPoly, FpPoly, FpPoly) {
    let p = a.p;
    let mut r0 = a.clone();
    let mut r1 = b.clone();
    let (mut s0, mut s1) = (FpPoly::one(p), FpPoly::zero(p));
    let (mut t0, mut t1) = (FpPoly::zero(p), FpPoly::one(p));
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1);
        let s = s0.sub(&q.mul(&s1));
        let t = t0.sub(&q.mul(&t1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
        t0 = t1;
        t1 = t;
    }
    (r0, s0, t0)
}

/// Lift all (monic, coprime) modular factors of a monic `f` to modulus
/// `p^(2^k) > bound` by recursive bisection.
fn hensel_lift_tree(f: &ZPoly, factors: &[FpPoly], p: u64, bound: &BigInt) -> Vec<ZPoly> {
    if factors.len() == 1 {
        return vec![f.clone()];
    }
    let mid = factors.len() / 2;
    let (left, right) = factors.split_at(mid);
    let mut gl = FpPoly::one(p);
    for fac in left {
        gl = gl.mul(fac);
    }
    let mut gr = FpPoly::one(p);
    for fac in right {
        gr = gr.mul(fac);
    }
    let (g_lift, h_lift) = hensel_lift_pair(f, &gl, &gr, p, bound);
    let mut out = hensel_lift_tree(&g_lift, left, p, bound);
    out.extend(hensel_lift_tree(&h_lift, right, p, bound));
    out
}

// ---------------------------------------------------------------------------
// The squarefree driver.
// ---------------------------------------------------------------------------

const FACTOR_PRIMES: [u64; 12] = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

/// Factor a squarefree monic rational polynomial into monic irreducibles.
fn factor_squarefree(f: &UniPoly<Rational>) -> Result<Vec<UniPoly<Rational>>> {
    let n = f.deg();
    if n == 1 {
        return Ok(vec![f.monic()]);
    }
    let fz = to_primitive_z(f);
    // Choose a prime keeping the degree and squarefreeness.
    let mut chosen = None;
    for &p in &FACTOR_PRIMES {
        if (fz.lc() % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = FpPoly::new(
            p,
            fz.0.iter()
                .map(|c| {
                    u64::try_from(c.mod_floor(&BigInt::from(p))).expect("residue fits in u64")
                })
                .collect(),
        );
        if fp.is_zero() || fp.deg() != n {
            continue;
        }
        if fp.gcd(&fp.derivative()).deg() == 0 {
            chosen = Some((p, fp.monic()));
            break;
        }
    }
    let (p, fp) = chosen.ok_or_else(|| {
        Error::Resource("no good small prime for modular factorization".into())
    })?;

    let modular = berlekamp(&fp);
    if modular.len() == 1 {
        return Ok(vec![f.monic()]);
    }

    // Landau-Mignotte style bound on the coefficients of lc(f)*g for any
    // rational-factor g: 2^n * (sum |c_i|) * |lc|, then lift past 2*bound.
    let height: BigInt = fz.0.iter().map(|c| c.abs()).sum();
    let bound: BigInt = (BigInt::one() << n) * height * fz.lc().abs() * 2;
    let mut modulus = BigInt::from(p);
    while modulus <= bound {
        modulus = &modulus * &modulus;
    }

    // Lift the monic normalization of f; the leading coefficient is
    // reattached during recombination.
    let lc_inv = mod_inverse(&fz.lc().mod_floor(&modulus), &modulus).expect("p does not divide lc");
    let f_monic = ZPoly::normalize(
        fz.0
            .iter()
            .map(|c| (c * &lc_inv).mod_floor(&modulus))
            .collect(),
    );
    let lifted = hensel_lift_tree(&f_monic, &modular, p, &bound);

    // Zassenhaus recombination over subsets of the lifted factors.
    let mut remaining: Vec<ZPoly> = lifted;
    let mut target = fz.clone();
    let mut out: Vec<UniPoly<Rational>> = Vec::new();
    let mut subset_size = 1usize;
    while 2 * subset_size <= remaining.len() {
        let mut found_any = true;
        while found_any && 2 * subset_size <= remaining.len() {
            found_any = false;
            for combo in combinations(remaining.len(), subset_size) {
                let mut prod = ZPoly(vec![target.lc().clone()]);
                for &i in &combo {
                    prod = prod.mul(&remaining[i]);
                }
                let cand = zpoly_mod_sym(&prod, &modulus).primitive();
                if let Some(quot) = target.try_exact_div(&cand) {
                    out.push(cand.to_q().monic());
                    target = quot.primitive();
                    let mut keep = Vec::new();
                    for (i, fac) in remaining.into_iter().enumerate() {
                        if !combo.contains(&i) {
                            keep.push(fac);
                        }
                    }
                    remaining = keep;
                    found_any = true;
                    break;
                }
            }
        }
        subset_size += 1;
    }
    if !target.is_zero() && target.deg() > 0 {
        out.push(target.to_q().monic());
    }
    out.sort_by(crate::numberfield::cmp_unipoly);
    debug_assert_eq!(
        out.iter()
            .fold(UniPoly::constant(Rational::one()), |acc, g| acc.mul(g)),
        f.monic()
    );
    Ok(out)
}

/// All size-k index subsets of 0..n in lexicographic order.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}
