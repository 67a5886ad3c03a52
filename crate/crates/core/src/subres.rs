//! Signed subresultant sequences with cofactors.
//!
//! The recurrence is the classical signed subresultant algorithm over an
//! integral domain, with the Bezout cofactors carried through the same
//! exact divisions. Gaps in the sequence (degree drops by more than one)
//! follow the structure theorem: the entries strictly inside a gap vanish,
//! and the bottom of the gap is a scalar multiple of the defective remainder.
//!
//! Sign convention: `Sres_p = P`, `Sres_{p-1} = Q`, and for `j < p - 1` the
//! entries are the signed subresultants, so for `Q = P'` the constant entry
//! is `lcf(P) * disc(P)`. The principal coefficient of index `p` is `lcf(P)`.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{Rational, Sign};
use crate::bipoly::BiPoly;
use crate::error::{Error, Result};
use crate::upoly::{IntPoly, RatPoly};

/// Coefficient domain for the subresultant recurrence.
pub trait ChainRing: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Exact quotient; the recurrence only divides where divisibility holds.
    fn div_exact(&self, other: &Self) -> Self;
}

impl ChainRing for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, other: &Self) -> Self {
        debug_assert!(Zero::is_zero(&(self % other)), "inexact division");
        self / other
    }
}

impl ChainRing for IntPoly {
    fn zero() -> Self {
        IntPoly::zero()
    }
    fn one() -> Self {
        IntPoly::one()
    }
    fn is_zero(&self) -> bool {
        IntPoly::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, other: &Self) -> Self {
        if other.deg() == 0 {
            return self
                .div_scalar_exact(&other.coeff(0))
                .expect("inexact scalar division in subresultant recurrence");
        }
        IntPoly::div_exact(self, other).expect("inexact division in subresultant recurrence")
    }
}

fn trim<R: ChainRing>(p: &mut Vec<R>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn deg<R: ChainRing>(p: &[R]) -> Option<usize> {
    p.len().checked_sub(1)
}

fn poly_scale<R: ChainRing>(p: &[R], c: &R) -> Vec<R> {
    let mut out: Vec<R> = p.iter().map(|a| a.mul(c)).collect();
    trim(&mut out);
    out
}

fn poly_div_scalar<R: ChainRing>(p: &[R], c: &R) -> Vec<R> {
    p.iter().map(|a| a.div_exact(c)).collect()
}

fn poly_sub<R: ChainRing>(a: &[R], b: &[R]) -> Vec<R> {
    let n = a.len().max(b.len());
    let mut out: Vec<R> = (0..n)
        .map(|i| match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => x.sub(y),
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.neg(),
            (None, None) => R::zero(),
        })
        .collect();
    trim(&mut out);
    out
}

pub(crate) fn poly_mul<R: ChainRing>(a: &[R], b: &[R]) -> Vec<R> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![R::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    trim(&mut out);
    out
}

fn ring_pow<R: ChainRing>(base: &R, exp: usize) -> R {
    let mut acc = R::one();
    for _ in 0..exp {
        acc = acc.mul(base);
    }
    acc
}

/// `(-1)^(m(m-1)/2)`.
fn eps_sign(m: usize) -> bool {
    // true means negative
    matches!(m % 4, 2 | 3)
}

/// Pseudo-division: `lcf(b)^(deg a - deg b + 1) * a = q * b + r`.
fn pseudo_div<R: ChainRing>(a: &[R], b: &[R]) -> (Vec<R>, Vec<R>) {
    let m = deg(a).expect("pseudo-division of zero");
    let n = deg(b).expect("pseudo-division by zero");
    assert!(m >= n);
    let lb = &b[n];
    let mut u: Vec<R> = a.to_vec();
    let mut q = vec![R::zero(); m - n + 1];
    for k in (0..=m - n).rev() {
        q[k] = u[n + k].mul(&ring_pow(lb, k));
        let top = u[n + k].clone();
        for j in (0..n + k).rev() {
            let bj = if j >= k { b[j - k].clone() } else { R::zero() };
            u[j] = lb.mul(&u[j]).sub(&top.mul(&bj));
        }
    }
    u.truncate(n);
    trim(&mut u);
    trim(&mut q);
    (q, u)
}

/// Raw output of the recurrence, indexed `0..=p`.
#[derive(Debug, Clone)]
pub(crate) struct RawChain<R> {
    pub polys: Vec<Vec<R>>,
    pub u: Vec<Vec<R>>,
    pub v: Vec<Vec<R>>,
    pub principal: Vec<R>,
    /// Index of the last nonzero entry; that entry is a gcd of `P` and `Q`.
    pub last_nonzero: usize,
}

/// Signed subresultant sequence of `P`, `Q` with `deg P > deg Q`.
pub(crate) fn signed_subresultants<R: ChainRing>(
    p: &[R],
    q: &[R],
    with_cofactors: bool,
) -> RawChain<R> {
    let dp = deg(p).expect("first argument must be nonzero");
    assert!(dp >= 1, "first argument must have positive degree");
    assert!(q.len() <= dp, "deg Q must be below deg P");

    let mut polys: Vec<Vec<R>> = vec![Vec::new(); dp + 1];
    let mut us: Vec<Vec<R>> = vec![Vec::new(); dp + 1];
    let mut vs: Vec<Vec<R>> = vec![Vec::new(); dp + 1];
    let mut s: Vec<R> = vec![R::zero(); dp + 1];
    let mut t: Vec<R> = vec![R::zero(); dp + 1];

    polys[dp] = p.to_vec();
    polys[dp - 1] = q.to_vec();
    trim(&mut polys[dp - 1]);
    if with_cofactors {
        us[dp] = vec![R::one()];
        vs[dp - 1] = vec![R::one()];
    }
    if let Some(d) = deg(&polys[dp - 1]) {
        t[dp - 1] = polys[dp - 1][d].clone();
    }
    // The recurrence treats s_p and t_p as 1.
    let s_at = |s: &Vec<R>, idx: usize| if idx == dp { R::one() } else { s[idx].clone() };
    let t_at = |t: &Vec<R>, idx: usize| if idx == dp { R::one() } else { t[idx].clone() };

    let mut i = dp + 1;
    let mut j = dp;
    let last_nonzero;
    loop {
        if polys[j - 1].is_empty() {
            last_nonzero = j;
            break;
        }
        let k = deg(&polys[j - 1]).unwrap();
        let tj1 = t[j - 1].clone();
        let sj = s_at(&s, j);
        let gap = j - k;
        if k == j - 1 {
            s[j - 1] = tj1.clone();
        } else {
            s[j - 1] = R::zero();
            // s_k = eps_{j-k} t_{j-1}^{j-k} / s_j^{j-k-1}
            let den = ring_pow(&sj, gap - 1);
            let mut sk = ring_pow(&tj1, gap).div_exact(&den);
            let mut factor = ring_pow(&tj1, gap - 1);
            if eps_sign(gap) {
                sk = sk.neg();
                factor = factor.neg();
            }
            s[k] = sk.clone();
            t[k] = sk;
            // Sres_k = s_k * Sres_{j-1} / t_{j-1}
            polys[k] = poly_div_scalar(&poly_scale(&polys[j - 1], &factor), &den);
            if with_cofactors {
                us[k] = poly_div_scalar(&poly_scale(&us[j - 1], &factor), &den);
                vs[k] = poly_div_scalar(&poly_scale(&vs[j - 1], &factor), &den);
            }
        }
        if k == 0 {
            last_nonzero = 0;
            break;
        }
        let (quo, rem) = pseudo_div(&polys[i - 1], &polys[j - 1]);
        let mut den = ring_pow(&sj, gap).mul(&t_at(&t, i - 1));
        if !eps_sign(gap) {
            // Sres_{k-1} = -eps * prem / den
            den = den.neg();
        }
        polys[k - 1] = poly_div_scalar(&rem, &den);
        if with_cofactors {
            let lift = ring_pow(&tj1, deg(&polys[i - 1]).unwrap() - k + 1);
            let nu = poly_sub(&poly_scale(&us[i - 1], &lift), &poly_mul(&quo, &us[j - 1]));
            let nv = poly_sub(&poly_scale(&vs[i - 1], &lift), &poly_mul(&quo, &vs[j - 1]));
            us[k - 1] = poly_div_scalar(&nu, &den);
            vs[k - 1] = poly_div_scalar(&nv, &den);
            trim(&mut us[k - 1]);
            trim(&mut vs[k - 1]);
        }
        if let Some(d) = deg(&polys[k - 1]) {
            t[k - 1] = polys[k - 1][d].clone();
        }
        i = j;
        j = k;
    }

    s[dp] = p[dp].clone();
    RawChain {
        polys,
        u: us,
        v: vs,
        principal: s,
        last_nonzero,
    }
}

/// Generalized permanences minus variations of a sign sequence given as
/// `signs[j]` for `j = 0..=p`, read from index `p` down to 0.
pub fn permanences_minus_variations(signs: &[Sign]) -> i64 {
    let Some(p) = signs.len().checked_sub(1) else {
        return 0;
    };
    assert!(signs[p] != Sign::Zero, "leading entry must be nonzero");
    let mut total = 0i64;
    let mut cur = p;
    while let Some(next) = (0..cur).rev().find(|&q| signs[q] != Sign::Zero) {
        let diff = cur - next;
        if diff % 2 == 1 {
            let prod = signs[cur].to_i8() * signs[next].to_i8();
            let eps: i64 = if eps_sign(diff) { -1 } else { 1 };
            total += eps * prod as i64;
        }
        cur = next;
    }
    total
}

/// Number of distinct real roots of `g`, from the signs of the principal
/// signed subresultant coefficients of `(g, g')`.
pub fn sturm_habicht_count(g: &IntPoly) -> Result<usize> {
    match g.degree() {
        None => Err(Error::pre("root count of the zero polynomial")),
        Some(0) => Err(Error::pre("root count of a constant polynomial")),
        Some(_) => {
            let chain = signed_subresultants(g.coeffs(), g.derivative().coeffs(), false);
            let signs: Vec<Sign> = chain.principal.iter().map(Sign::of).collect();
            let c = permanences_minus_variations(&signs);
            debug_assert!(c >= 0);
            Ok(c as usize)
        }
    }
}

/// Univariate subresultant sequence over the integers.
#[derive(Debug, Clone)]
pub struct UnivSubres {
    pub polys: Vec<IntPoly>,
    pub cofactor_u: Vec<IntPoly>,
    pub cofactor_v: Vec<IntPoly>,
    pub principal: Vec<BigInt>,
}

/// Signed subresultant sequence of `(g, h)` over the integers, `deg g > deg h`.
pub fn univariate_chain(g: &IntPoly, h: &IntPoly) -> Result<UnivSubres> {
    let dg = g
        .degree()
        .ok_or_else(|| Error::pre("first argument is zero"))?;
    if dg == 0 || h.degree().is_some_and(|d| d >= dg) {
        return Err(Error::pre("need deg g > deg h and deg g >= 1"));
    }
    let raw = signed_subresultants(g.coeffs(), h.coeffs(), true);
    Ok(UnivSubres {
        polys: raw.polys.into_iter().map(IntPoly::new).collect(),
        cofactor_u: raw.u.into_iter().map(IntPoly::new).collect(),
        cofactor_v: raw.v.into_iter().map(IntPoly::new).collect(),
        principal: raw.principal,
    })
}

/// Subresultant sequence of `(f, f_y)` in `y` over `Z[x]`, with cofactors.
#[derive(Debug, Clone)]
pub struct SubresChain {
    f: BiPoly,
    fy: BiPoly,
    sres: Vec<BiPoly>,
    u: Vec<BiPoly>,
    v: Vec<BiPoly>,
    principal: Vec<IntPoly>,
}

pub fn subresultant_chain(f: &BiPoly, fy: &BiPoly) -> Result<SubresChain> {
    let n = f.degree_y().unwrap_or(0);
    if n < 1 {
        return Err(Error::pre("deg_y(f) must be at least 1"));
    }
    if fy.degree_y().is_some_and(|d| d >= n) {
        return Err(Error::pre("second argument must have lower y-degree"));
    }
    let raw = signed_subresultants(f.y_coeffs(), fy.y_coeffs(), true);
    Ok(SubresChain {
        f: f.clone(),
        fy: fy.clone(),
        sres: raw.polys.into_iter().map(BiPoly::from_y_coeffs).collect(),
        u: raw.u.into_iter().map(BiPoly::from_y_coeffs).collect(),
        v: raw.v.into_iter().map(BiPoly::from_y_coeffs).collect(),
        principal: raw.principal,
    })
}

impl SubresChain {
    /// `n = deg_y f`.
    pub fn degree(&self) -> usize {
        self.sres.len() - 1
    }

    pub fn f(&self) -> &BiPoly {
        &self.f
    }

    pub fn fy(&self) -> &BiPoly {
        &self.fy
    }

    pub fn sres(&self, i: usize) -> &BiPoly {
        &self.sres[i]
    }

    pub fn cofactor_u(&self, i: usize) -> &BiPoly {
        &self.u[i]
    }

    pub fn cofactor_v(&self, i: usize) -> &BiPoly {
        &self.v[i]
    }

    /// `sres_i`, the coefficient of `y^i` in `Sres_i`.
    pub fn principal(&self, i: usize) -> &IntPoly {
        &self.principal[i]
    }

    /// `Sres_{i,j}`, the coefficient of `y^j` in `Sres_i`.
    pub fn coeff(&self, i: usize, j: usize) -> IntPoly {
        self.sres[i].y_coeff(j)
    }

    /// `R = Sres_0`.
    pub fn resultant(&self) -> IntPoly {
        self.sres[0].y_coeff(0)
    }

    /// `Sres_i - u_i f - v_i f_y`; zero for a correct chain.
    pub fn bezout_defect(&self, i: usize) -> BiPoly {
        let combo = &(&self.u[i] * &self.f) + &(&self.v[i] * &self.fy);
        &self.sres[i] - &combo
    }

    /// Principal signs at a rational `x`, from index `n` down to 0.
    pub fn principal_signs_at(&self, q: &Rational) -> Vec<Sign> {
        self.principal.iter().map(|p| p.sign_at(q)).collect()
    }
}

/// A subresultant chain specialized at a rational `x = q`.
#[derive(Debug, Clone)]
pub struct UnivChain {
    /// Exact values `Sres_i(q, y)`.
    pub exact: Vec<RatPoly>,
    /// `d^{e_i} * Sres_i(q, y)` with `d = denom(q)` and `e_i = deg_x Sres_i`.
    pub cleared: Vec<IntPoly>,
    /// `sres_i(q)`.
    pub principal: Vec<Rational>,
}

pub fn specialize_chain(chain: &SubresChain, q: &Rational) -> UnivChain {
    let exact = chain.sres.iter().map(|p| p.specialize_x_exact(q)).collect();
    let cleared = chain.sres.iter().map(|p| p.specialize_x(q)).collect();
    let principal = chain.principal.iter().map(|p| p.eval_rational(q)).collect();
    UnivChain {
        exact,
        cleared,
        principal,
    }
}
