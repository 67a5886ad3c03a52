//! Dense univariate polynomials with arbitrary-precision integer coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{ceil_sqrt, Rational, Sign};
use crate::error::{Error, Result};
use crate::subres::signed_subresultants;

/// Integer polynomial, coefficient `i` belongs to `x^i`. The coefficient
/// vector never carries trailing zeros, so the zero polynomial is empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `c * x^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Bitsize `lambda`: every coefficient is bounded by `2^lambda` in magnitude.
    pub fn bitsize(&self) -> u64 {
        self.coeffs.iter().map(|c| c.bits()).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// `den^deg * g(num/den)`, an integer with the sign of `g(num/den)`.
    fn eval_homogeneous(&self, q: &Rational) -> BigInt {
        let (n, d) = (q.numer(), q.denom());
        let mut acc = BigInt::zero();
        let mut dpow = BigInt::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * n + c * &dpow;
            dpow *= d;
        }
        acc
    }

    pub fn eval_rational(&self, q: &Rational) -> Rational {
        if self.is_zero() {
            return Rational::zero();
        }
        if q.denom().is_one() {
            return Rational::from_integer(self.eval_int(q.numer()));
        }
        let num = self.eval_homogeneous(q);
        Rational::new(num, q.denom().pow(self.deg() as u32))
    }

    pub fn sign_at(&self, q: &Rational) -> Sign {
        Sign::of(&self.eval_homogeneous(q))
    }

    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive_part(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut c = self.content();
        if self.leading_coeff().unwrap().is_negative() {
            c = -c;
        }
        IntPoly::new(self.coeffs.iter().map(|a| a / &c).collect())
    }

    /// Exact quotient over the integers, or `None` when the division leaves
    /// a remainder or a fractional coefficient.
    pub fn div_exact(&self, d: &IntPoly) -> Option<IntPoly> {
        let dd = d.degree()?;
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        let n = self.deg();
        if n < dd {
            return None;
        }
        let lc = d.leading_coeff().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); n - dd + 1];
        for k in (0..=n - dd).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lc);
            if !r.is_zero() {
                return None;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[k + j] -= &q * dc;
            }
            quot[k] = q;
        }
        rem.iter().all(|c| c.is_zero()).then(|| IntPoly::new(quot))
    }

    /// Exact division by an integer scalar.
    pub fn div_scalar_exact(&self, c: &BigInt) -> Option<IntPoly> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            let (q, r) = a.div_rem(c);
            if !r.is_zero() {
                return None;
            }
            out.push(q);
        }
        Some(IntPoly::new(out))
    }

    /// Primitive gcd over the rationals, with positive leading coefficient.
    pub fn gcd(&self, other: &IntPoly) -> Result<IntPoly> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::pre("gcd of two zero polynomials"));
        }
        if self.is_zero() {
            return Ok(other.primitive_part());
        }
        if other.is_zero() {
            return Ok(self.primitive_part());
        }
        let (mut a, mut b) = (self.primitive_part(), other.primitive_part());
        if a.deg() < b.deg() {
            std::mem::swap(&mut a, &mut b);
        }
        if b.deg() == 0 {
            return Ok(IntPoly::one());
        }
        if a.deg() == b.deg() {
            let reduced = &b.scale(a.leading_coeff().unwrap()) - &a.scale(b.leading_coeff().unwrap());
            if reduced.is_zero() {
                return Ok(a);
            }
            if reduced.deg() == 0 {
                return Ok(IntPoly::one());
            }
            b = reduced.primitive_part();
        }
        let chain = signed_subresultants(a.coeffs(), b.coeffs(), false);
        Ok(IntPoly::new(chain.polys[chain.last_nonzero].clone()).primitive_part())
    }

    /// `g / gcd(g, g')`, primitive with positive leading coefficient.
    pub fn squarefree_part(&self) -> Result<IntPoly> {
        if self.is_zero() {
            return Err(Error::pre("square-free part of the zero polynomial"));
        }
        let g = self.primitive_part();
        if g.deg() == 0 {
            return Ok(IntPoly::one());
        }
        let w = g.gcd(&g.derivative())?;
        Ok(g.div_exact(&w)
            .expect("gcd divides its argument")
            .primitive_part())
    }

    /// Factors `(g_k, k)` with `g = c * prod g_k^k`, each `g_k` square-free,
    /// primitive and pairwise coprime. Factors equal to 1 are omitted.
    pub fn squarefree_decomposition(&self) -> Result<Vec<(IntPoly, u32)>> {
        if self.is_zero() {
            return Err(Error::pre("square-free decomposition of the zero polynomial"));
        }
        // P_k = gcd(P_{k-1}, P_{k-1}'), Q_k = P_{k-1} / P_k collects roots of
        // multiplicity >= k; the exact-multiplicity factor is Q_k / Q_{k+1}.
        let mut chain = vec![self.primitive_part()];
        while chain.last().unwrap().deg() > 0 {
            let p = chain.last().unwrap();
            let next = p.gcd(&p.derivative())?;
            chain.push(next);
        }
        let qs: Vec<IntPoly> = chain
            .windows(2)
            .map(|w| w[0].div_exact(&w[1]).expect("gcd divides").primitive_part())
            .collect();
        let mut out = Vec::new();
        for (k, q) in qs.iter().enumerate() {
            let factor = match qs.get(k + 1) {
                Some(next) => q.div_exact(next).expect("nested square-free parts"),
                None => q.clone(),
            };
            if factor.deg() > 0 {
                out.push((factor.primitive_part(), k as u32 + 1));
            }
        }
        Ok(out)
    }

    /// Cauchy bound `1 + max_{i<d} |g_i| / |lcf(g)|` on the moduli of all complex roots.
    pub fn cauchy_root_bound(&self) -> Result<Rational> {
        match self.degree() {
            None | Some(0) => Err(Error::pre("root bound of a constant polynomial")),
            Some(d) => {
                let lc = self.coeffs[d].abs();
                let m = self.coeffs[..d].iter().map(|c| c.abs()).max().unwrap();
                Ok(Rational::one() + Rational::new(m, lc))
            }
        }
    }

    /// Integer upper bound on the coefficient 2-norm, hence on the Mahler measure.
    pub fn two_norm_bound(&self) -> Rational {
        let sum: BigInt = self.coeffs.iter().map(|c| c * c).sum();
        Rational::from_integer(ceil_sqrt(&sum))
    }

    /// `g(x + c)`.
    pub fn taylor_shift(&self, c: &BigInt) -> IntPoly {
        let mut a = self.coeffs.clone();
        let n = a.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let t = &a[j + 1] * c;
                a[j] += t;
            }
        }
        IntPoly::new(a)
    }

    pub fn fmt_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{}^{}", var, i),
            };
            if mono.is_empty() {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{}*{}", mag, mono));
            }
        }
        out
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_var("x"))
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new(
            (0..n)
                .map(|i| {
                    let a = self.coeffs.get(i);
                    let b = rhs.coeffs.get(i);
                    match (a, b) {
                        (Some(a), Some(b)) => a + b,
                        (Some(a), None) => a.clone(),
                        (None, Some(b)) => b.clone(),
                        (None, None) => BigInt::zero(),
                    }
                })
                .collect(),
        )
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        self + &(-rhs)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for IntPoly {
            type Output = IntPoly;
            fn $m(self, rhs: IntPoly) -> IntPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Polynomial with rational coefficients, used for exact specializations
/// before denominators are cleared.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RatPoly {
    coeffs: Vec<Rational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn scale(&self, c: &Rational) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiplies by the lcm of the denominators; returns the integer
    /// polynomial and the (positive) multiplier.
    pub fn clear_denominators(&self) -> (IntPoly, BigInt) {
        let l = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(l.clone())).to_integer())
            .collect();
        (IntPoly::new(ints), l)
    }
}

impl From<&IntPoly> for RatPoly {
    fn from(p: &IntPoly) -> Self {
        RatPoly::new(
            p.coeffs()
                .iter()
                .map(|c| Rational::from_integer(c.clone()))
                .collect(),
        )
    }
}
