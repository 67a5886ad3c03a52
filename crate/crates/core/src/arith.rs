//! Exact rationals and closed intervals with rational endpoints.
//!
//! Interval endpoints are never rounded. Every operation returns the
//! smallest interval containing the image of the operands, computed from
//! the endpoint combinations.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::upoly::IntPoly;

pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `2^exp` for a possibly negative exponent.
pub fn pow2(exp: i64) -> Rational {
    let p = BigInt::one() << exp.unsigned_abs();
    if exp >= 0 {
        Rational::from_integer(p)
    } else {
        Rational::new(BigInt::one(), p)
    }
}

/// Serializes as `"num/den"`, always with an explicit denominator.
pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn rational_to_f64(q: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    match (q.numer().to_f64(), q.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // Shift both parts down so they fit in f64 range.
            let nb = q.numer().bits() as i64;
            let db = q.denom().bits() as i64;
            let shift = (nb.max(db) - 900).max(0) as u64;
            let n = (q.numer() >> shift).to_f64().unwrap_or(0.0);
            let d = (q.denom() >> shift).to_f64().unwrap_or(f64::INFINITY);
            if d == 0.0 {
                if n >= 0.0 {
                    f64::INFINITY
                } else {
                    f64::NEG_INFINITY
                }
            } else {
                n / d
            }
        }
    }
}

/// Smallest power of two that is `>= q`, for `q > 0`.
pub fn pow2_at_least(q: &Rational) -> Rational {
    debug_assert!(q.is_positive());
    let mut exp = q.numer().bits() as i64 - q.denom().bits() as i64 - 1;
    while pow2(exp) < *q {
        exp += 1;
    }
    while exp > i64::MIN + 1 && pow2(exp - 1) >= *q {
        exp -= 1;
    }
    pow2(exp)
}

/// Dyadic rational of least denominator (and then least magnitude) in the
/// range between `lo` and `hi`. Each end is open or closed as requested.
pub fn simplest_dyadic_between(lo: &Rational, hi: &Rational, lo_open: bool, hi_open: bool) -> Rational {
    assert!(lo < hi || (lo == hi && !lo_open && !hi_open), "empty range");
    let mut k: u64 = 0;
    loop {
        let scale = BigInt::one() << k;
        let s = Rational::from_integer(scale.clone());
        let a = lo * &s;
        let b = hi * &s;
        let mut first = a.ceil().to_integer();
        if lo_open && Rational::from_integer(first.clone()) == a {
            first += 1;
        }
        let mut last = b.floor().to_integer();
        if hi_open && Rational::from_integer(last.clone()) == b {
            last -= 1;
        }
        if first <= last {
            let pick = if first.is_positive() {
                first
            } else if last.is_negative() {
                last
            } else {
                BigInt::zero()
            };
            return Rational::new(pick, scale);
        }
        k += 1;
    }
}

/// Exact sign of a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of<T: Signed>(x: &T) -> Sign {
        if x.is_positive() {
            Sign::Positive
        } else if x.is_negative() {
            Sign::Negative
        } else {
            Sign::Zero
        }
    }

    pub fn to_i8(self) -> i8 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }
}

/// Closed interval `[lo, hi]` with exact rational endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: Rational,
    hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo > hi {
            return Err(Error::pre(format!(
                "interval endpoints out of order: [{}, {}]",
                lo, hi
            )));
        }
        Ok(Interval { lo, hi })
    }

    pub fn point(x: Rational) -> Self {
        Interval {
            lo: x.clone(),
            hi: x,
        }
    }

    /// `[c - r, c + r]` for `r >= 0`.
    pub fn ball(center: &Rational, radius: &Rational) -> Self {
        debug_assert!(!radius.is_negative());
        Interval {
            lo: center - radius,
            hi: center + radius,
        }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / int(2)
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn overlaps(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = (&self.lo).max(&other.lo).clone();
        let hi = (&self.hi).min(&other.hi).clone();
        (lo <= hi).then_some(Interval { lo, hi })
    }

    /// Sign shared by every point of the interval, if there is one.
    pub fn sign(&self) -> Option<Sign> {
        if self.lo.is_positive() {
            Some(Sign::Positive)
        } else if self.hi.is_negative() {
            Some(Sign::Negative)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(Sign::Zero)
        } else {
            None
        }
    }

    /// `max(|lo|, |hi|)`.
    pub fn magnitude(&self) -> Rational {
        let a = self.lo.abs();
        let b = self.hi.abs();
        if a > b {
            a
        } else {
            b
        }
    }

    /// Smallest absolute value attained on the interval.
    pub fn mignitude(&self) -> Rational {
        if self.contains_zero() {
            Rational::zero()
        } else {
            let a = self.lo.abs();
            let b = self.hi.abs();
            if a < b {
                a
            } else {
                b
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Interval {
        let a = &self.lo * c;
        let b = &self.hi * c;
        if a <= b {
            Interval { lo: a, hi: b }
        } else {
            Interval { lo: b, hi: a }
        }
    }

    pub fn shift(&self, c: &Rational) -> Interval {
        Interval {
            lo: &self.lo + c,
            hi: &self.hi + c,
        }
    }

    pub fn recip(&self) -> Result<Interval> {
        if self.contains_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Interval {
            lo: self.hi.recip(),
            hi: self.lo.recip(),
        })
    }

    pub fn div(&self, other: &Interval) -> Result<Interval> {
        Ok(self * &other.recip()?)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl Add for &Interval {
    type Output = Interval;
    fn add(self, rhs: &Interval) -> Interval {
        Interval {
            lo: &self.lo + &rhs.lo,
            hi: &self.hi + &rhs.hi,
        }
    }
}

impl Sub for &Interval {
    type Output = Interval;
    fn sub(self, rhs: &Interval) -> Interval {
        Interval {
            lo: &self.lo - &rhs.hi,
            hi: &self.hi - &rhs.lo,
        }
    }
}

impl Mul for &Interval {
    type Output = Interval;
    fn mul(self, rhs: &Interval) -> Interval {
        let products = [
            &self.lo * &rhs.lo,
            &self.lo * &rhs.hi,
            &self.hi * &rhs.lo,
            &self.hi * &rhs.hi,
        ];
        let lo = products.iter().min().unwrap().clone();
        let hi = products.iter().max().unwrap().clone();
        Interval { lo, hi }
    }
}

impl Neg for &Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval {
            lo: -&self.hi,
            hi: -&self.lo,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntervalOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn interval_arith(op: IntervalOp, a: &Interval, b: &Interval) -> Result<Interval> {
    Ok(match op {
        IntervalOp::Add => a + b,
        IntervalOp::Sub => a - b,
        IntervalOp::Mul => a * b,
        IntervalOp::Div => a.div(b)?,
    })
}

/// Horner evaluation `a_0 + I*(a_1 + I*(...))` in interval arithmetic.
pub fn horner(h: &IntPoly, x: &Interval) -> Interval {
    let coeffs = h.coeffs();
    if coeffs.is_empty() {
        return Interval::point(Rational::zero());
    }
    if x.is_point() {
        return Interval::point(h.eval_rational(x.lo()));
    }
    let mut acc = Interval::point(Rational::from_integer(coeffs[coeffs.len() - 1].clone()));
    for c in coeffs.iter().rev().skip(1) {
        acc = (&acc * x).shift(&Rational::from_integer(c.clone()));
    }
    acc
}

/// Horner evaluation of a polynomial with interval coefficients at an exact point.
pub fn horner_interval_coeffs(coeffs: &[Interval], x: &Rational) -> Interval {
    let mut acc = Interval::point(Rational::zero());
    for c in coeffs.iter().rev() {
        acc = &acc.scale(x) + c;
    }
    acc
}

/// Upper bound `2^d * eps * 2^lambda * max(1, |alpha|)^(d-1)` on the distance
/// between any point of the Horner enclosure over an interval of width `eps`
/// and the true value at a point `alpha` of that interval. Constants are
/// evaluated exactly, so degree 0 yields 0.
pub fn horner_error_bound(
    degree: usize,
    bitsize: u64,
    eps: &Rational,
    alpha_abs: &Rational,
) -> Result<Rational> {
    if !eps.is_positive() || *eps >= int(2) {
        return Err(Error::pre(format!("interval width {} outside (0, 2)", eps)));
    }
    if degree == 0 {
        return Ok(Rational::zero());
    }
    let base = if alpha_abs > &Rational::one() {
        alpha_abs.clone()
    } else {
        Rational::one()
    };
    let mut power = Rational::one();
    for _ in 0..degree - 1 {
        power *= &base;
    }
    Ok(pow2(degree as i64) * eps * pow2(bitsize as i64) * power)
}

/// `ceil(sqrt(n))` for a nonnegative integer.
pub fn ceil_sqrt(n: &BigInt) -> BigInt {
    let r = n.sqrt();
    if &(&r * &r) == n {
        r
    } else {
        r + 1
    }
}

/// Floor of `log2 |q|` for nonzero `q`.
pub fn floor_log2(q: &Rational) -> i64 {
    let q = q.abs();
    let mut e = q.numer().bits() as i64 - q.denom().bits() as i64;
    while pow2(e) > q {
        e -= 1;
    }
    while pow2(e + 1) <= q {
        e += 1;
    }
    e
}
