//! Real algebraic numbers as a defining polynomial plus an isolating interval.

use std::fmt;

use num_traits::Signed;

use crate::arith::{horner, rational_to_f64, Interval, Rational, Sign};
use crate::error::{Error, Result};
use crate::isolate::{isolate_real_roots, refine_interval, IsolatingInterval};
use crate::upoly::IntPoly;

#[derive(Debug, Clone)]
pub struct AlgebraicNumber {
    defining: IntPoly,
    interval: IsolatingInterval,
    squarefree: IntPoly,
}

impl AlgebraicNumber {
    /// Checks that `interval` isolates a root of `defining`: a point interval
    /// must be a root, an open one must show a sign change of the
    /// square-free part.
    pub fn new(defining: IntPoly, interval: IsolatingInterval) -> Result<Self> {
        if defining.degree().is_none_or(|d| d == 0) {
            return Err(Error::pre("defining polynomial must have positive degree"));
        }
        let squarefree = defining.squarefree_part()?;
        Self::with_squarefree(defining, squarefree, interval)
    }

    /// Like [`AlgebraicNumber::new`] with a precomputed square-free part.
    pub fn with_squarefree(defining: IntPoly, squarefree: IntPoly, interval: IsolatingInterval) -> Result<Self> {
        if interval.is_point() {
            if squarefree.sign_at(&interval.lo) != Sign::Zero {
                return Err(Error::pre(format!("{} is not a root", interval.lo)));
            }
        } else {
            let a = squarefree.sign_at(&interval.lo);
            let b = squarefree.sign_at(&interval.hi);
            if a == Sign::Zero || b == Sign::Zero || a == b {
                return Err(Error::pre(format!(
                    "[{}, {}] does not isolate a root by sign change",
                    interval.lo, interval.hi
                )));
            }
        }
        Ok(AlgebraicNumber {
            defining,
            interval,
            squarefree,
        })
    }

    pub fn from_rational(q: &Rational) -> Self {
        let defining = IntPoly::new(vec![-q.numer().clone(), q.denom().clone()]);
        AlgebraicNumber {
            squarefree: defining.clone(),
            defining,
            interval: IsolatingInterval::point(q.clone()),
        }
    }

    /// All real roots of `g`, in increasing order.
    pub fn roots_of(g: &IntPoly) -> Result<Vec<AlgebraicNumber>> {
        let sq = g.squarefree_part()?;
        isolate_real_roots(g)?
            .into_iter()
            .map(|iv| Self::with_squarefree(g.clone(), sq.clone(), iv))
            .collect()
    }

    pub fn defining(&self) -> &IntPoly {
        &self.defining
    }

    pub fn squarefree_defining(&self) -> &IntPoly {
        &self.squarefree
    }

    pub fn interval(&self) -> &IsolatingInterval {
        &self.interval
    }

    pub fn enclosure(&self) -> Interval {
        self.interval.as_interval()
    }

    pub fn is_rational(&self) -> bool {
        self.interval.is_point()
    }

    /// Midpoint of the current interval as a float.
    pub fn to_f64(&self) -> f64 {
        rational_to_f64(&self.interval.midpoint())
    }

    /// Shrinks the isolating interval to width at most `eps`.
    pub fn refine(&mut self, eps: &Rational) -> Result<()> {
        if self.interval.width() > *eps {
            self.interval = refine_interval(&self.squarefree, &self.interval, eps)?;
        }
        Ok(())
    }

    /// Copy refined to width at most `eps`.
    pub fn refined(&self, eps: &Rational) -> Result<AlgebraicNumber> {
        let mut a = self.clone();
        a.refine(eps)?;
        Ok(a)
    }
}

impl fmt::Display for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.interval.is_point() {
            write!(f, "{}", self.interval.lo)
        } else {
            write!(
                f,
                "root of {} in [{}, {}]",
                self.defining, self.interval.lo, self.interval.hi
            )
        }
    }
}

fn half() -> Rational {
    Rational::new(1.into(), 2.into())
}

/// `r` with `|r - h(alpha)| < delta`.
pub fn approx_eval(h: &IntPoly, a: &mut AlgebraicNumber, delta: &Rational) -> Result<Rational> {
    Ok(approx_eval_many(std::slice::from_ref(h), a, delta)?.remove(0))
}

/// `approx_eval` for several polynomials sharing one refinement of `alpha`.
pub fn approx_eval_many(hs: &[IntPoly], a: &mut AlgebraicNumber, delta: &Rational) -> Result<Vec<Rational>> {
    Ok(enclose_many(hs, a, delta)?
        .iter()
        .map(Interval::midpoint)
        .collect())
}

/// Horner enclosures of each `h(alpha)`, all of width below `delta`.
pub fn enclose_many(hs: &[IntPoly], a: &mut AlgebraicNumber, delta: &Rational) -> Result<Vec<Interval>> {
    if !delta.is_positive() {
        return Err(Error::pre("evaluation tolerance must be positive"));
    }
    let mut eps = half();
    loop {
        let iv = a.enclosure();
        let js: Vec<Interval> = hs.iter().map(|h| horner(h, &iv)).collect();
        if js.iter().all(|j| j.width() < *delta) {
            return Ok(js);
        }
        a.refine(&eps)?;
        eps = &eps * &eps;
    }
}

/// Exact sign of `g(alpha)`.
pub fn sign_at(g: &IntPoly, a: &mut AlgebraicNumber) -> Result<Sign> {
    if g.is_zero() {
        return Ok(Sign::Zero);
    }
    let w = a.squarefree.gcd(g)?;
    sign_at_with_gcd(g, &w, a)
}

/// Whether the square-free factor `w` of the defining polynomial vanishes at `alpha`.
pub fn factor_vanishes(w: &IntPoly, a: &AlgebraicNumber) -> bool {
    if w.degree().is_none_or(|d| d == 0) {
        return w.is_zero();
    }
    let iv = &a.interval;
    if iv.is_point() {
        return w.sign_at(&iv.lo) == Sign::Zero;
    }
    // The interval holds one root of the square-free defining polynomial and
    // w divides it, so w has at most that root inside and none at the ends.
    w.sign_at(&iv.lo) != w.sign_at(&iv.hi)
}

/// Sign of `g(alpha)` given `w = gcd(squarefree_defining, g)`, which lets
/// callers share the gcd across conjugate numbers.
pub fn sign_at_with_gcd(g: &IntPoly, w: &IntPoly, a: &mut AlgebraicNumber) -> Result<Sign> {
    if g.is_zero() || factor_vanishes(w, a) {
        return Ok(Sign::Zero);
    }
    if a.is_rational() {
        return Ok(g.sign_at(&a.interval.lo));
    }
    let mut eps = half();
    loop {
        if let Some(s) = horner(g, &a.enclosure()).sign() {
            debug_assert!(s != Sign::Zero);
            return Ok(s);
        }
        a.refine(&eps)?;
        eps = &eps * &eps;
        if a.is_rational() {
            return Ok(g.sign_at(&a.interval.lo));
        }
    }
}
