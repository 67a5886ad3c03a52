//! Bivariate integer polynomials stored as polynomials in `y` whose
//! coefficients are integer polynomials in `x`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::Rational;
use crate::upoly::{IntPoly, RatPoly};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct BiPoly {
    /// `ycoeffs[j]` is the coefficient of `y^j`; no trailing zero entries.
    ycoeffs: Vec<IntPoly>,
}

impl BiPoly {
    pub fn from_y_coeffs(mut ycoeffs: Vec<IntPoly>) -> Self {
        while ycoeffs.last().is_some_and(|c| c.is_zero()) {
            ycoeffs.pop();
        }
        BiPoly { ycoeffs }
    }

    pub fn zero() -> Self {
        BiPoly::default()
    }

    /// Builds from `(coefficient, x-exponent, y-exponent)` triples; repeated
    /// monomials are summed.
    pub fn from_terms(terms: &[(i64, usize, usize)]) -> Self {
        let mut acc = BiPoly::zero();
        for &(c, i, j) in terms {
            acc = &acc + &BiPoly::monomial(BigInt::from(c), i, j);
        }
        acc
    }

    /// From a dense matrix where `c[i][j]` multiplies `x^i y^j`.
    pub fn from_matrix(c: &[Vec<BigInt>]) -> Self {
        let ydeg = c.iter().map(|row| row.len()).max().unwrap_or(0);
        let ycoeffs = (0..ydeg)
            .map(|j| {
                IntPoly::new(
                    c.iter()
                        .map(|row| row.get(j).cloned().unwrap_or_default())
                        .collect(),
                )
            })
            .collect();
        BiPoly::from_y_coeffs(ycoeffs)
    }

    pub fn monomial(c: BigInt, i: usize, j: usize) -> Self {
        let mut ycoeffs = vec![IntPoly::zero(); j + 1];
        ycoeffs[j] = IntPoly::monomial(c, i);
        BiPoly::from_y_coeffs(ycoeffs)
    }

    /// Embeds a polynomial in `x`.
    pub fn from_x_poly(p: IntPoly) -> Self {
        BiPoly::from_y_coeffs(vec![p])
    }

    /// Embeds an integer polynomial as a polynomial in `y`.
    pub fn from_y_poly(p: &IntPoly) -> Self {
        BiPoly::from_y_coeffs(p.coeffs().iter().map(|c| IntPoly::constant(c.clone())).collect())
    }

    pub fn y_coeffs(&self) -> &[IntPoly] {
        &self.ycoeffs
    }

    pub fn y_coeff(&self, j: usize) -> IntPoly {
        self.ycoeffs.get(j).cloned().unwrap_or_default()
    }

    pub fn coeff(&self, i: usize, j: usize) -> BigInt {
        self.ycoeffs.get(j).map(|p| p.coeff(i)).unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.ycoeffs.is_empty()
    }

    pub fn degree_y(&self) -> Option<usize> {
        self.ycoeffs.len().checked_sub(1)
    }

    pub fn degree_x(&self) -> usize {
        self.ycoeffs.iter().map(|p| p.deg()).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> Option<usize> {
        self.terms().map(|(i, j, _)| i + j).max()
    }

    /// `tau`: maximal coefficient bitsize.
    pub fn bitsize(&self) -> u64 {
        self.ycoeffs.iter().map(|p| p.bitsize()).max().unwrap_or(0)
    }

    pub fn leading_y_coeff(&self) -> Option<&IntPoly> {
        self.ycoeffs.last()
    }

    /// Nonzero terms as `(x-exponent, y-exponent, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> {
        self.ycoeffs.iter().enumerate().flat_map(|(j, p)| {
            p.coeffs()
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(move |(i, c)| (i, j, c))
        })
    }

    /// `f(x, y) = F(x + s*y, y)`.
    pub fn shear(&self, s: i64) -> BiPoly {
        if s == 0 {
            return self.clone();
        }
        let s = BigInt::from(s);
        let ny = self.total_degree().unwrap_or(0) + 1;
        let nx = self.degree_x() + 1;
        let mut m = vec![vec![BigInt::zero(); ny]; nx];
        for (i, j, c) in self.terms() {
            // (x + s y)^i = sum_k C(i,k) s^k x^(i-k) y^k
            let mut binom = BigInt::one();
            let mut spow = BigInt::one();
            for k in 0..=i {
                m[i - k][j + k] += c * &binom * &spow;
                binom = binom * BigInt::from(i - k) / BigInt::from(k + 1);
                spow *= &s;
            }
        }
        BiPoly::from_matrix(&m)
    }

    pub fn partial_y(&self) -> BiPoly {
        BiPoly::from_y_coeffs(
            self.ycoeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(j, p)| p.scale(&BigInt::from(j)))
                .collect(),
        )
    }

    pub fn partial_x(&self) -> BiPoly {
        BiPoly::from_y_coeffs(self.ycoeffs.iter().map(|p| p.derivative()).collect())
    }

    /// Exact fiber polynomial `f(q, y)` with rational coefficients.
    pub fn specialize_x_exact(&self, q: &Rational) -> RatPoly {
        RatPoly::new(self.ycoeffs.iter().map(|p| p.eval_rational(q)).collect())
    }

    /// `d^n * f(q, y)` where `d` is the denominator of `q` and `n = deg_x f`.
    /// The multiplier is positive, so root sets and signs are preserved.
    pub fn specialize_x(&self, q: &Rational) -> IntPoly {
        let n = self.degree_x();
        let (num, den) = (q.numer(), q.denom());
        IntPoly::new(
            self.ycoeffs
                .iter()
                .map(|p| {
                    let mut acc = BigInt::zero();
                    let mut dpow = BigInt::one();
                    let coeffs = p.coeffs();
                    // homogenized to degree n: sum c_i num^i den^(n-i)
                    for i in (0..=n).rev() {
                        let c = coeffs.get(i).cloned().unwrap_or_default();
                        acc = acc * num + c * &dpow;
                        dpow *= den;
                    }
                    acc
                })
                .collect(),
        )
    }

    /// `f(x, b)` as a polynomial in `x`.
    pub fn specialize_y_int(&self, b: &BigInt) -> IntPoly {
        let mut acc = IntPoly::zero();
        for p in self.ycoeffs.iter().rev() {
            acc = &acc.scale(b) + p;
        }
        acc
    }

    pub fn eval(&self, a: &Rational, b: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for p in self.ycoeffs.iter().rev() {
            acc = acc * b + p.eval_rational(a);
        }
        acc
    }

    pub fn eval_f64(&self, a: f64, b: f64) -> f64 {
        use num_traits::ToPrimitive;
        let mut acc = 0.0;
        for p in self.ycoeffs.iter().rev() {
            let mut px = 0.0;
            for c in p.coeffs().iter().rev() {
                px = px * a + c.to_f64().unwrap_or(f64::NAN);
            }
            acc = acc * b + px;
        }
        acc
    }

    pub fn scale(&self, c: &BigInt) -> BiPoly {
        BiPoly::from_y_coeffs(self.ycoeffs.iter().map(|p| p.scale(c)).collect())
    }

    /// Multiplies by a polynomial in `x`.
    pub fn mul_x_poly(&self, p: &IntPoly) -> BiPoly {
        BiPoly::from_y_coeffs(self.ycoeffs.iter().map(|q| q * p).collect())
    }
}

fn write_monomial(out: &mut String, i: usize, j: usize) -> bool {
    let mut parts = Vec::new();
    match i {
        0 => {}
        1 => parts.push("x".to_string()),
        _ => parts.push(format!("x^{}", i)),
    }
    match j {
        0 => {}
        1 => parts.push("y".to_string()),
        _ => parts.push(format!("y^{}", j)),
    }
    out.push_str(&parts.join("*"));
    !parts.is_empty()
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<(usize, usize, &BigInt)> = self.terms().collect();
        if terms.is_empty() {
            return f.write_str("0");
        }
        terms.sort_by_key(|t| std::cmp::Reverse((t.0 + t.1, t.0)));
        let mut out = String::new();
        for (idx, (i, j, c)) in terms.into_iter().enumerate() {
            let mag = c.abs();
            if idx == 0 {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            if i == 0 && j == 0 {
                out.push_str(&mag.to_string());
            } else {
                if !mag.is_one() {
                    out.push_str(&format!("{}*", mag));
                }
                write_monomial(&mut out, i, j);
            }
        }
        f.write_str(&out)
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let n = self.ycoeffs.len().max(rhs.ycoeffs.len());
        BiPoly::from_y_coeffs((0..n).map(|j| &self.y_coeff(j) + &rhs.y_coeff(j)).collect())
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let n = self.ycoeffs.len().max(rhs.ycoeffs.len());
        BiPoly::from_y_coeffs((0..n).map(|j| &self.y_coeff(j) - &rhs.y_coeff(j)).collect())
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly::from_y_coeffs(self.ycoeffs.iter().map(|p| -p).collect())
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        if self.is_zero() || rhs.is_zero() {
            return BiPoly::zero();
        }
        let mut out = vec![IntPoly::zero(); self.ycoeffs.len() + rhs.ycoeffs.len() - 1];
        for (i, a) in self.ycoeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.ycoeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        BiPoly::from_y_coeffs(out)
    }
}
