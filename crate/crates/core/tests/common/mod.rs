//! Generators and independent oracles shared by the integration tests.
//!
//! Nothing here calls into the algorithms under test: determinants are
//! computed by fraction-free elimination, curve topology by exact sign
//! evaluation on a grid, roots by plain bisection on rational values.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use curvetop::{BiPoly, IntPoly};

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Uniform integer in `[-(2^tau - 1), 2^tau - 1]`.
pub fn rand_coeff<R: Rng>(rng: &mut R, tau: u32) -> BigInt {
    let bound: i128 = (1i128 << tau) - 1;
    BigInt::from(rng.gen_range(-bound..=bound))
}

fn nonzero_coeff<R: Rng>(rng: &mut R, tau: u32) -> BigInt {
    loop {
        let c = rand_coeff(rng, tau);
        if !c.is_zero() {
            return c;
        }
    }
}

/// Random polynomial of exact degree `deg`.
pub fn rand_poly<R: Rng>(rng: &mut R, deg: usize, tau: u32) -> IntPoly {
    let mut c: Vec<BigInt> = (0..deg).map(|_| rand_coeff(rng, tau)).collect();
    c.push(nonzero_coeff(rng, tau));
    IntPoly::new(c)
}

/// Random polynomial with a repeated factor: `a * b^2` with small pieces.
pub fn rand_non_squarefree<R: Rng>(rng: &mut R, max_deg: usize, tau: u32) -> IntPoly {
    let db = rng.gen_range(1..=(max_deg / 2).max(1));
    let da = rng.gen_range(0..=max_deg - 2 * db);
    let a = rand_poly(rng, da, tau.min(4));
    let b = rand_poly(rng, db, tau.min(3));
    &a * &(&b * &b)
}

/// Random curve of total degree `n` whose `y^n` coefficient is a nonzero
/// constant, so the leading-coefficient condition holds without shearing.
pub fn rand_curve<R: Rng>(rng: &mut R, n: usize, tau: u32, density: f64) -> BiPoly {
    let mut m = vec![vec![BigInt::zero(); n + 1]; n + 1];
    for (i, row) in m.iter_mut().enumerate() {
        for c in row.iter_mut().take(n + 1 - i) {
            if rng.gen_bool(density) {
                *c = rand_coeff(rng, tau);
            }
        }
    }
    m[0][n] = nonzero_coeff(rng, tau);
    BiPoly::from_matrix(&m)
}

/// Determinant by Bareiss fraction-free elimination.
pub fn det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Coefficients (lowest first) of the `j`-th signed subresultant of `p`, `q`
/// with `deg p > deg q`, from its determinant definition: rows
/// `x^(q-j-1) p, ..., p, q, ..., x^(p-j-1) q`, leading columns for the
/// monomials `x^(p+q-j-1) .. x^(j+1)` and a last column for `x^l`.
pub fn subresultant_by_det(p: &[BigInt], qq: &[BigInt], j: usize) -> Vec<BigInt> {
    let dp = p.len() - 1;
    let dq = qq.len() - 1;
    assert!(j <= dq);
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    // Each row: coefficient of x^e for e from p+q-j-1 down to 0.
    let top = dp + dq - j - 1;
    let row_of = |poly: &[BigInt], shift: usize| -> Vec<BigInt> {
        (0..=top)
            .map(|k| {
                let e = top - k;
                if e >= shift && e - shift < poly.len() {
                    poly[e - shift].clone()
                } else {
                    BigInt::zero()
                }
            })
            .collect()
    };
    for s in (0..dq - j).rev() {
        rows.push(row_of(p, s));
    }
    for s in 0..dp - j {
        rows.push(row_of(qq, s));
    }
    let size = rows.len();
    debug_assert_eq!(size, dp + dq - 2 * j);
    (0..=j)
        .map(|l| {
            let m: Vec<Vec<BigInt>> = rows
                .iter()
                .map(|r| {
                    let mut row: Vec<BigInt> = r[..size - 1].to_vec();
                    row.push(r[top - l].clone());
                    row
                })
                .collect();
            det(m)
        })
        .collect()
}

/// Exact value of an integer polynomial at a rational.
pub fn eval_q(g: &IntPoly, x: &Q) -> Q {
    let mut acc = Q::zero();
    for c in g.coeffs().iter().rev() {
        acc = acc * x + Q::from_integer(c.clone());
    }
    acc
}

/// Shrinks `[lo, hi]` around the root of `g` by bisection until its width is
/// at most `2^-bits`. Requires `g(lo) * g(hi) < 0`.
pub fn bisect_root(g: &IntPoly, lo: &Q, hi: &Q, bits: u32) -> (Q, Q) {
    let (mut lo, mut hi) = (lo.clone(), hi.clone());
    let slo = eval_q(g, &lo).signum();
    assert!(&slo * eval_q(g, &hi).signum() < Q::zero(), "no sign change");
    let target = Q::new(BigInt::one(), BigInt::one() << bits);
    while &hi - &lo > target {
        let mid = (&lo + &hi) / Q::from_integer(2.into());
        let s = eval_q(g, &mid).signum();
        if s.is_zero() {
            return (mid.clone(), mid);
        }
        if s == slo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo, hi)
}

fn trim(v: &mut Vec<Q>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn rem(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let c = r.last().unwrap() / b.last().unwrap();
        let shift = r.len() - 1 - db;
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] -= &c * bc;
        }
        r.pop();
        trim(&mut r);
    }
    trim(&mut r);
    r
}

fn quo(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let mut out = vec![Q::zero(); a.len() - db];
    while r.len() > db {
        let c = r.last().unwrap() / b.last().unwrap();
        let shift = r.len() - 1 - db;
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] -= &c * bc;
        }
        out[shift] = c;
        r.pop();
    }
    out
}

fn deriv(a: &[Q]) -> Vec<Q> {
    a.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * Q::from_integer(i.into()))
        .collect()
}

fn variations(signs: impl Iterator<Item = i32>) -> usize {
    let nz: Vec<i32> = signs.filter(|&s| s != 0).collect();
    nz.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Positive multiple of `a` with coprime integer coefficients.
fn primitive(a: Vec<Q>) -> Vec<BigInt> {
    use num_integer::Integer;
    let l = a.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let ints: Vec<BigInt> = a.iter().map(|c| (c * Q::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    ints.into_iter().map(|c| c / &g).collect()
}

/// Sign of `a(x)`, evaluated as the homogenized integer sum
/// `sum a_i num^i den^(d-i)` with `den > 0`.
fn sign_int(a: &[BigInt], x: &Q) -> i32 {
    let (num, den) = (x.numer(), x.denom());
    let mut coeffs = a.iter().rev();
    let mut acc = coeffs.next().cloned().unwrap_or_default();
    let mut dpow = BigInt::one();
    for c in coeffs {
        dpow *= den;
        acc = acc * num + c * &dpow;
    }
    match acc.sign() {
        num_bigint::Sign::Minus => -1,
        num_bigint::Sign::NoSign => 0,
        num_bigint::Sign::Plus => 1,
    }
}

/// Classical Sturm sequence of the square-free part, computed by Euclid over
/// the rationals and stored as primitive integer polynomials.
pub struct Sturm {
    seq: Vec<Vec<BigInt>>,
}

impl Sturm {
    pub fn new(g: &IntPoly) -> Sturm {
        let mut p: Vec<Q> = g.coeffs().iter().map(|c| Q::from_integer(c.clone())).collect();
        trim(&mut p);
        assert!(p.len() >= 2, "need a nonconstant polynomial");
        let dp = deriv(&p);
        let (mut a, mut b) = (p.clone(), dp);
        while !b.is_empty() {
            let r = rem(&a, &b);
            a = b;
            b = r;
        }
        let sq = quo(&p, &a);
        let mut seq = vec![sq.clone(), deriv(&sq)];
        if seq[1].is_empty() {
            seq.pop();
        }
        while seq.len() >= 2 {
            let r = rem(&seq[seq.len() - 2], &seq[seq.len() - 1]);
            if r.is_empty() {
                break;
            }
            seq.push(r.into_iter().map(|c| -c).collect());
        }
        Sturm {
            seq: seq.into_iter().map(primitive).collect(),
        }
    }

    pub fn squarefree(&self) -> &[BigInt] {
        &self.seq[0]
    }

    fn var_at(&self, x: &Q) -> usize {
        variations(self.seq.iter().map(|v| sign_int(v, x)))
    }

    fn var_inf(&self, neg: bool) -> usize {
        variations(self.seq.iter().map(|v| {
            let s = if v.last().unwrap().is_positive() { 1 } else { -1 };
            if neg && (v.len() - 1) % 2 == 1 {
                -s
            } else {
                s
            }
        }))
    }

    /// Distinct real roots.
    pub fn count(&self) -> usize {
        self.var_inf(true) - self.var_inf(false)
    }

    /// Distinct roots in `(a, b]`; `a` must not be a root.
    pub fn count_in(&self, a: &Q, b: &Q) -> usize {
        self.var_at(a) - self.var_at(b)
    }

    /// All distinct real roots, ascending, each enclosed in `[lo, hi]` of
    /// width at most `2^-bits` (or a point).
    pub fn roots(&self, bits: u32) -> Vec<(Q, Q)> {
        let p = &self.seq[0];
        let lc = Q::from_integer(p.last().unwrap().abs());
        let bound = p
            .iter()
            .map(|c| Q::from_integer(c.abs()) / &lc)
            .fold(Q::one(), |a, b| if b > a { b } else { a })
            + Q::one();
        let bound = Q::from_integer(bound.ceil().to_integer());
        let two = Q::from_integer(2.into());
        let coarse = Q::new(BigInt::one(), BigInt::one() << 8);
        // isolation by Sturm counts; every endpoint is a non-root
        let mut isolated = Vec::new();
        let mut todo = vec![(-bound.clone(), bound)];
        while let Some((lo, hi)) = todo.pop() {
            let c = self.count_in(&lo, &hi);
            if c == 0 {
                continue;
            }
            if c == 1 && &hi - &lo <= coarse {
                isolated.push((lo, hi));
                continue;
            }
            let mid = (&lo + &hi) / &two;
            if sign_int(p, &mid) == 0 {
                let mut eps = (&hi - &lo) / Q::from_integer(4.into());
                loop {
                    let (l, r) = (&mid - &eps, &mid + &eps);
                    if sign_int(p, &l) != 0 && sign_int(p, &r) != 0 && self.count_in(&l, &r) == 1 {
                        isolated.push((mid.clone(), mid.clone()));
                        todo.push((lo, l));
                        todo.push((r, hi));
                        break;
                    }
                    eps /= &two;
                }
                continue;
            }
            todo.push((lo, mid.clone()));
            todo.push((mid, hi));
        }
        // sign bisection on the square-free part
        let target = Q::new(BigInt::one(), BigInt::one() << bits);
        let mut out: Vec<(Q, Q)> = isolated
            .into_iter()
            .map(|(mut lo, mut hi)| {
                if lo == hi {
                    return (lo, hi);
                }
                let slo = sign_int(p, &lo);
                while &hi - &lo > target {
                    let mid = (&lo + &hi) / &two;
                    let s = sign_int(p, &mid);
                    if s == 0 {
                        return (mid.clone(), mid);
                    }
                    if s == slo {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                (lo, hi)
            })
            .collect();
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }
}

/// Distinct real roots of `g`, by the classical Sturm sequence.
pub fn sturm_count(g: &IntPoly) -> usize {
    if g.degree().is_none_or(|d| d == 0) {
        return 0;
    }
    Sturm::new(g).count()
}

/// Topology of `f = 0` inside `[-half, half]^2` from exact signs of `f` at
/// the grid points `(i/res, j/res)`. A cell belongs to the curve when its
/// corners carry both signs or a zero. Returns `(components, bounded faces)`;
/// for a curve whose graph lies in the box the face count is the cycle rank.
pub fn grid_topology(f: &BiPoly, half: i64, res: i64) -> (usize, usize) {
    let n = (2 * half * res + 1) as usize;
    let d = f.total_degree().unwrap_or(0);
    let terms: Vec<(usize, usize, i128)> = f
        .terms()
        .map(|(i, j, c)| (i, j, i128::try_from(c).expect("small coefficients")))
        .collect();
    let resp: Vec<i128> = (0..=d).map(|k| (res as i128).pow(k as u32)).collect();
    let mut sign = vec![0i8; n * n];
    for jy in 0..n {
        let y = jy as i128 - (half * res) as i128;
        // coefficients in x of res^d * f(x/res, y/res)
        let mut cx = vec![0i128; d + 1];
        for &(i, j, c) in &terms {
            cx[i] += c * y.pow(j as u32) * resp[d - i - j];
        }
        for ix in 0..n {
            let x = ix as i128 - (half * res) as i128;
            let mut v = 0i128;
            for c in cx.iter().rev() {
                v = v * x + c;
            }
            sign[jy * n + ix] = v.signum() as i8;
        }
    }
    let m = n - 1;
    // 0 = free cell, 1 = curve cell, 2 = visited
    let mut cell = vec![0u8; m * m];
    for jy in 0..m {
        for ix in 0..m {
            let c = [
                sign[jy * n + ix],
                sign[jy * n + ix + 1],
                sign[(jy + 1) * n + ix],
                sign[(jy + 1) * n + ix + 1],
            ];
            let curve = c.contains(&0) || (c.contains(&1) && c.contains(&-1));
            cell[jy * m + ix] = u8::from(curve);
        }
    }
    drop(sign);
    let mut stack = Vec::new();
    let mut components = 0;
    for start in 0..m * m {
        if cell[start] != 1 {
            continue;
        }
        components += 1;
        cell[start] = 2;
        stack.push(start);
        while let Some(k) = stack.pop() {
            let (y, x) = ((k / m) as i64, (k % m) as i64);
            for dy in -1..=1 {
                for dx in -1..=1 {
                    let (ny, nx) = (y + dy, x + dx);
                    if ny < 0 || nx < 0 || ny >= m as i64 || nx >= m as i64 {
                        continue;
                    }
                    let nk = ny as usize * m + nx as usize;
                    if cell[nk] == 1 {
                        cell[nk] = 2;
                        stack.push(nk);
                    }
                }
            }
        }
    }
    // Faces: 4-connected free regions; bounded ones avoid the border.
    let mut faces = 0;
    for start in 0..m * m {
        if cell[start] != 0 {
            continue;
        }
        let mut touches = false;
        cell[start] = 3;
        stack.push(start);
        while let Some(k) = stack.pop() {
            let (y, x) = (k / m, k % m);
            if y == 0 || x == 0 || y == m - 1 || x == m - 1 {
                touches = true;
            }
            let mut visit = |nk: usize| {
                if cell[nk] == 0 {
                    cell[nk] = 3;
                    stack.push(nk);
                }
            };
            if y > 0 {
                visit(k - m);
            }
            if y + 1 < m {
                visit(k + m);
            }
            if x > 0 {
                visit(k - 1);
            }
            if x + 1 < m {
                visit(k + 1);
            }
        }
        if !touches {
            faces += 1;
        }
    }
    (components, faces)
}
