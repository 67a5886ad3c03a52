//! Real root isolation by Descartes' rule of signs and bisection.
//!
//! Two variants share the same shape. The exact one works on integer
//! polynomials and keeps every node polynomial integral. The bitstream one
//! only sees interval approximations of the coefficients; it tracks each
//! coefficient as a center with an error radius and doubles the precision
//! whenever a sign test cannot be decided.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{horner_interval_coeffs, int, pow2, pow2_at_least, simplest_dyadic_between, Interval, Rational, Sign};
use crate::error::{Error, Result};
use crate::upoly::IntPoly;

/// First precision tried by the bitstream isolator.
pub const START_PRECISION: u32 = 53;
/// Precision beyond which the bitstream isolator gives up.
pub const MAX_PRECISION: u32 = 1 << 20;

/// `[lo, hi]` holding exactly one distinct real root. `lo == hi` marks an
/// exact rational root; otherwise the root lies strictly inside.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsolatingInterval {
    pub lo: Rational,
    pub hi: Rational,
    pub multiplicity: Option<u32>,
}

impl IsolatingInterval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi, "isolating interval endpoints out of order");
        IsolatingInterval {
            lo,
            hi,
            multiplicity: None,
        }
    }

    pub fn point(x: Rational) -> Self {
        IsolatingInterval::new(x.clone(), x)
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

    pub fn as_interval(&self) -> Interval {
        Interval::new(self.lo.clone(), self.hi.clone()).expect("ordered endpoints")
    }

    pub fn overlaps(&self, other: &Interval) -> bool {
        self.lo <= *other.hi() && *other.lo() <= self.hi
    }
}

fn sign_variations<I: IntoIterator<Item = Sign>>(signs: I) -> usize {
    let mut last = Sign::Zero;
    let mut count = 0;
    for s in signs {
        if s == Sign::Zero {
            continue;
        }
        if last != Sign::Zero && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

fn int_taylor_shift_one(a: &mut [BigInt]) {
    let n = a.len();
    for i in 0..n {
        for j in (i..n.saturating_sub(1)).rev() {
            let t = a[j + 1].clone();
            a[j] += t;
        }
    }
}

fn remove_content(a: &mut [BigInt]) {
    let g = a.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if !g.is_zero() && !g.is_one() {
        for c in a.iter_mut() {
            *c /= &g;
        }
    }
}

/// Upper bound on sign variations of `(1+t)^d Q(1/(1+t))`, which counts the
/// roots of `Q` in `(0, 1)` up to an even excess.
fn descartes_exact(q: &[BigInt]) -> usize {
    let mut t: Vec<BigInt> = q.iter().rev().cloned().collect();
    int_taylor_shift_one(&mut t);
    sign_variations(t.iter().map(Sign::of))
}

/// Isolating intervals of a square-free integer polynomial. Open intervals
/// have endpoints where the polynomial does not vanish.
fn isolate_squarefree(g: &IntPoly) -> Result<Vec<IsolatingInterval>> {
    let d = g.deg();
    if d == 0 {
        return Ok(Vec::new());
    }
    let bound = pow2_at_least(&g.cauchy_root_bound()?);
    let b = bound.to_integer();

    // Q(z) = g(-B + 2B z) on z in [0, 1].
    let mut q: Vec<BigInt> = g.coeffs().to_vec();
    let mut pw = BigInt::one();
    for c in q.iter_mut() {
        *c *= &pw;
        pw *= &b;
    }
    // x -> x - 1
    let shifted = IntPoly::new(q).taylor_shift(&BigInt::from(-1));
    let mut q: Vec<BigInt> = shifted.coeffs().to_vec();
    q.resize(d + 1, BigInt::zero());
    let mut pw = BigInt::one();
    for c in q.iter_mut() {
        *c *= &pw;
        pw <<= 1;
    }
    remove_content(&mut q);

    let origin = -bound.clone();
    let span = &bound * int(2);
    let mut roots = Vec::new();
    // (polynomial on [0,1], numerator c, depth k) for [c/2^k, (c+1)/2^k]
    let mut stack = vec![(q, BigInt::zero(), 0u32)];
    while let Some((q, c, k)) = stack.pop() {
        let v = descartes_exact(&q);
        if v == 0 {
            continue;
        }
        let node_lo = || &origin + &span * Rational::new(c.clone(), BigInt::one() << k);
        let node_hi = || &origin + &span * Rational::new(&c + 1, BigInt::one() << k);
        let endpoint_root = q[0].is_zero() || q.iter().sum::<BigInt>().is_zero();
        if v == 1 && !endpoint_root {
            roots.push(IsolatingInterval::new(node_lo(), node_hi()));
            continue;
        }
        // Children: Q_L(z) = 2^d Q(z/2), Q_R(z) = Q_L(z + 1).
        let mut left: Vec<BigInt> = q
            .iter()
            .enumerate()
            .map(|(i, a)| a << (d - i))
            .collect();
        let mut right = left.clone();
        int_taylor_shift_one(&mut right);
        if right[0].is_zero() {
            let mid = &origin + &span * Rational::new(2 * &c + 1, BigInt::one() << (k + 1));
            roots.push(IsolatingInterval::point(mid));
        }
        remove_content(&mut left);
        remove_content(&mut right);
        stack.push((left, 2 * &c, k + 1));
        stack.push((right, 2 * &c + 1, k + 1));
    }
    roots.sort_by(|a, b| a.lo.cmp(&b.lo));
    separate(g, &mut roots);
    Ok(roots)
}

/// Shrinks neighbours that share an endpoint until they are strictly apart.
fn separate(sqfree: &IntPoly, roots: &mut [IsolatingInterval]) {
    for i in 1..roots.len() {
        while roots[i - 1].hi >= roots[i].lo {
            let (a, b) = roots.split_at_mut(i);
            bisect_once(sqfree, &mut a[i - 1]);
            bisect_once(sqfree, &mut b[0]);
        }
    }
}

/// One sign-bisection step; the interval keeps its root.
fn bisect_once(sqfree: &IntPoly, iv: &mut IsolatingInterval) {
    if iv.is_point() {
        return;
    }
    let mid = iv.midpoint();
    let sm = sqfree.sign_at(&mid);
    if sm == Sign::Zero {
        iv.lo = mid.clone();
        iv.hi = mid;
        return;
    }
    let sl = sqfree.sign_at(&iv.lo);
    if sl == sm {
        iv.lo = mid;
    } else {
        iv.hi = mid;
    }
}

/// Refines one isolating interval of the square-free `sqfree` to width at most `eps`.
pub(crate) fn refine_interval(sqfree: &IntPoly, iv: &IsolatingInterval, eps: &Rational) -> Result<IsolatingInterval> {
    let mut out = iv.clone();
    if out.is_point() || out.width() <= *eps {
        return Ok(out);
    }
    let sl = sqfree.sign_at(&out.lo);
    let sh = sqfree.sign_at(&out.hi);
    if sl == Sign::Zero || sh == Sign::Zero || sl == sh {
        return Err(Error::pre(format!(
            "interval [{}, {}] shows no sign change",
            out.lo, out.hi
        )));
    }
    while out.width() > *eps {
        let mid = out.midpoint();
        let sm = sqfree.sign_at(&mid);
        if sm == Sign::Zero {
            out.lo = mid.clone();
            out.hi = mid;
            break;
        }
        if sm == sl {
            out.lo = mid;
        } else {
            out.hi = mid;
        }
    }
    Ok(out)
}

fn attach_multiplicities(g: &IntPoly, roots: &mut [IsolatingInterval]) -> Result<()> {
    let factors = g.squarefree_decomposition()?;
    if factors.len() == 1 && factors[0].1 == 1 {
        roots.iter_mut().for_each(|r| r.multiplicity = Some(1));
        return Ok(());
    }
    for r in roots.iter_mut() {
        r.multiplicity = factors.iter().find_map(|(h, k)| {
            let hit = if r.is_point() {
                h.sign_at(&r.lo) == Sign::Zero
            } else {
                let a = h.sign_at(&r.lo);
                let b = h.sign_at(&r.hi);
                a != Sign::Zero && b != Sign::Zero && a != b
            };
            hit.then_some(*k)
        });
    }
    Ok(())
}

/// Isolating intervals for the distinct real roots of `g`, sorted and
/// pairwise disjoint. Multiplicities are attached.
pub fn isolate_real_roots(g: &IntPoly) -> Result<Vec<IsolatingInterval>> {
    match g.degree() {
        None => return Err(Error::pre("cannot isolate the roots of the zero polynomial")),
        Some(0) => return Ok(Vec::new()),
        Some(_) => {}
    }
    let sq = g.squarefree_part()?;
    let mut roots = isolate_squarefree(&sq)?;
    attach_multiplicities(g, &mut roots)?;
    Ok(roots)
}

/// Shrinks every interval to width at most `eps`, keeping the roots apart.
pub fn refine_to_width(g: &IntPoly, intervals: &[IsolatingInterval], eps: &Rational) -> Result<Vec<IsolatingInterval>> {
    if !eps.is_positive() {
        return Err(Error::pre("refinement width must be positive"));
    }
    if intervals.iter().all(|iv| iv.width() <= *eps) {
        return Ok(intervals.to_vec());
    }
    let sq = g.squarefree_part()?;
    intervals
        .iter()
        .map(|iv| refine_interval(&sq, iv, eps))
        .collect()
}

/// Rationals `q_0 < z_1 < q_1 < ... < z_m < q_m` separating the isolated
/// roots, where `g` does not vanish. With no roots the single point 0.
pub fn intermediate_points(g: &IntPoly, intervals: &[IsolatingInterval]) -> Result<Vec<Rational>> {
    if intervals.is_empty() {
        return Ok(vec![Rational::zero()]);
    }
    let bound = g.cauchy_root_bound()?.ceil() + int(1);
    let mut out = Vec::with_capacity(intervals.len() + 1);
    let first = &intervals[0];
    out.push(if -bound.clone() < first.lo { -bound.clone() } else { first.lo.floor() - int(1) });
    for w in intervals.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        if a.hi >= b.lo {
            return Err(Error::pre("isolating intervals overlap"));
        }
        out.push(simplest_dyadic_between(&a.hi, &b.lo, a.is_point(), b.is_point()));
    }
    let last = intervals.last().unwrap();
    out.push(if bound > last.hi { bound } else { last.hi.ceil() + int(1) });
    Ok(out)
}

/// Interval approximations of the real coefficients of a polynomial.
pub trait CoeffOracle {
    fn degree(&self) -> usize;
    /// One interval of width at most `2^-precision` per coefficient, lowest
    /// degree first, each containing the true coefficient.
    fn query(&mut self, precision: u32) -> Result<Vec<Interval>>;
}

/// Oracle serving the exact coefficients of an integer polynomial.
#[derive(Debug, Clone)]
pub struct ExactOracle(pub IntPoly);

impl CoeffOracle for ExactOracle {
    fn degree(&self) -> usize {
        self.0.deg()
    }

    fn query(&mut self, _precision: u32) -> Result<Vec<Interval>> {
        Ok(self
            .0
            .coeffs()
            .iter()
            .map(|c| Interval::point(Rational::from_integer(c.clone())))
            .collect())
    }
}

/// Polynomial with coefficient `center[i] +- radius[i]`.
#[derive(Debug, Clone)]
struct BallPoly {
    center: Vec<Rational>,
    radius: Vec<Rational>,
}

impl BallPoly {
    fn from_intervals(coeffs: &[Interval], precision: u32) -> BallPoly {
        // Round centers to a dyadic grid finer than the requested width so
        // that node polynomials do not accumulate huge denominators.
        let grid = pow2(precision as i64 + 2);
        let slack = pow2(-(precision as i64) - 2);
        let mut center = Vec::with_capacity(coeffs.len());
        let mut radius = Vec::with_capacity(coeffs.len());
        for c in coeffs {
            if c.is_point() {
                center.push(c.lo().clone());
                radius.push(Rational::zero());
                continue;
            }
            let m = c.midpoint();
            let r = (&m * &grid).round() / &grid;
            radius.push(c.width() / int(2) + slack.clone());
            center.push(r);
        }
        BallPoly { center, radius }
    }

    fn degree(&self) -> usize {
        self.center.len() - 1
    }

    fn coeff_sign(&self, i: usize) -> Option<Sign> {
        let c = &self.center[i];
        let r = &self.radius[i];
        if r.is_zero() || c.abs() > *r {
            Some(Sign::of(c))
        } else {
            None
        }
    }

    /// `P(x + c)` with radii propagated through `|c|`.
    fn taylor_shift(&self, c: &Rational) -> BallPoly {
        let mut a = self.center.clone();
        let mut r = self.radius.clone();
        let ac = c.abs();
        let n = a.len();
        let exact = r.iter().all(|x| x.is_zero());
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let t = &a[j + 1] * c;
                a[j] += t;
                if !exact {
                    let t = &r[j + 1] * &ac;
                    r[j] += t;
                }
            }
        }
        BallPoly { center: a, radius: r }
    }

    /// `P(w x)` for `w > 0`.
    fn scale(&self, w: &Rational) -> BallPoly {
        let mut pw = Rational::one();
        let mut center = Vec::with_capacity(self.center.len());
        let mut radius = Vec::with_capacity(self.center.len());
        for (c, r) in self.center.iter().zip(&self.radius) {
            center.push(c * &pw);
            radius.push(r * &pw);
            pw *= w;
        }
        BallPoly { center, radius }
    }

    fn reversed(&self) -> BallPoly {
        BallPoly {
            center: self.center.iter().rev().cloned().collect(),
            radius: self.radius.iter().rev().cloned().collect(),
        }
    }

    /// Sign of the true polynomial at `x`, if the enclosure decides it.
    fn sign_at(&self, x: &Rational) -> Option<Sign> {
        let mut c = Rational::zero();
        let mut r = Rational::zero();
        let ax = x.abs();
        for i in (0..self.center.len()).rev() {
            c = c * x + &self.center[i];
            r = r * &ax + &self.radius[i];
        }
        if r.is_zero() || c.abs() > r {
            Some(Sign::of(&c))
        } else {
            None
        }
    }

    /// Bounds `(vmin, vmax)` on the sign variations of any polynomial in the ball.
    fn variation_bounds(&self) -> (usize, usize) {
        let signs: Vec<Option<Sign>> = (0..=self.degree()).map(|i| self.coeff_sign(i)).collect();
        let vmin = sign_variations(signs.iter().map(|s| s.unwrap_or(Sign::Zero)));
        // Dynamic program over the last nonzero sign: [none, +, -].
        let mut best: [Option<usize>; 3] = [Some(0), None, None];
        for s in &signs {
            let mut next = best;
            let options: &[Sign] = match s {
                Some(Sign::Zero) => &[],
                Some(Sign::Positive) => &[Sign::Positive],
                Some(Sign::Negative) => &[Sign::Negative],
                None => &[Sign::Positive, Sign::Negative],
            };
            if s.is_some() && *s != Some(Sign::Zero) {
                next = [None, None, None];
            }
            for &opt in options {
                let slot = if opt == Sign::Positive { 1 } else { 2 };
                for (state, val) in best.iter().enumerate() {
                    let Some(v) = val else { continue };
                    let add = usize::from(state != 0 && state != slot);
                    let cand = v + add;
                    if next[slot].is_none_or(|x| x < cand) {
                        next[slot] = Some(cand);
                    }
                }
            }
            best = next;
        }
        let vmax = best.iter().flatten().copied().max().unwrap_or(0);
        (vmin, vmax)
    }
}

/// Roots found by the bitstream isolator, with the state needed to refine them.
#[derive(Debug, Clone)]
pub struct OracleIsolation {
    pub intervals: Vec<IsolatingInterval>,
    /// Precision of the coefficient approximations that certified the result.
    pub precision: u32,
    lo_signs: Vec<Sign>,
    ball: BallPoly,
}

impl OracleIsolation {
    pub fn count(&self) -> usize {
        self.intervals.len()
    }
}

fn overflow(precision: u32, detail: &str) -> Error {
    Error::PrecisionOverflow {
        precision,
        detail: detail.to_string(),
    }
}

fn query_ball(oracle: &mut dyn CoeffOracle, precision: u32) -> Result<BallPoly> {
    let coeffs = oracle.query(precision)?;
    if coeffs.len() != oracle.degree() + 1 {
        return Err(Error::pre(format!(
            "oracle returned {} coefficients for degree {}",
            coeffs.len(),
            oracle.degree()
        )));
    }
    Ok(BallPoly::from_intervals(&coeffs, precision))
}

/// Candidate split points inside `(lo, hi)`, all dyadic when the ends are.
fn split_candidates(lo: &Rational, hi: &Rational) -> [Rational; 3] {
    let w = hi - lo;
    [
        lo + &w / int(2),
        lo + &w * Rational::new(3.into(), 8.into()),
        lo + &w * Rational::new(5.into(), 8.into()),
    ]
}

fn first_conclusive(ball: &BallPoly, lo: &Rational, hi: &Rational) -> Option<(Rational, Sign)> {
    split_candidates(lo, hi)
        .into_iter()
        .find_map(|m| match ball.sign_at(&m) {
            Some(s) if s != Sign::Zero => Some((m, s)),
            _ => None,
        })
}

/// One isolation attempt at fixed precision; `None` means inconclusive.
fn attempt(ball: &BallPoly, precision: u32) -> Option<(Vec<IsolatingInterval>, Vec<Sign>)> {
    let d = ball.degree();
    let lc = ball.coeff_sign(d)?;
    if lc == Sign::Zero {
        return None;
    }
    if d == 0 {
        return Some((Vec::new(), Vec::new()));
    }
    let lc_min = ball.center[d].abs() - &ball.radius[d];
    let top = (0..d)
        .map(|i| ball.center[i].abs() + &ball.radius[i])
        .max()
        .unwrap_or_else(Rational::zero);
    let bound = pow2_at_least(&(int(1) + top / lc_min));
    let floor = pow2(-((precision / 2) as i64));

    let lo0 = -bound.clone();
    let s0 = ball.sign_at(&lo0)?;
    if s0 == Sign::Zero {
        return None;
    }
    let mut found = Vec::new();
    let mut stack = vec![(lo0, bound, s0)];
    while let Some((lo, hi, slo)) = stack.pop() {
        let w = &hi - &lo;
        let local = ball.taylor_shift(&lo).scale(&w);
        let (vmin, vmax) = local.reversed().taylor_shift(&Rational::one()).variation_bounds();
        if vmax == 0 {
            continue;
        }
        if vmin == 1 && vmax == 1 {
            found.push((IsolatingInterval::new(lo, hi), slo));
            continue;
        }
        if w < floor {
            return None;
        }
        let (m, sm) = first_conclusive(ball, &lo, &hi)?;
        stack.push((lo, m.clone(), slo));
        stack.push((m, hi, sm));
    }
    found.sort_by(|a, b| a.0.lo.cmp(&b.0.lo));
    let (ivs, signs) = found.into_iter().unzip();
    Some((ivs, signs))
}

/// Isolates the real roots of a polynomial known only through `oracle`.
/// The true polynomial must be square-free with nonzero leading coefficient.
pub fn isolate_oracle_poly(oracle: &mut dyn CoeffOracle) -> Result<OracleIsolation> {
    let mut precision = START_PRECISION;
    loop {
        let ball = query_ball(oracle, precision)?;
        if let Some((intervals, lo_signs)) = attempt(&ball, precision) {
            return Ok(OracleIsolation {
                intervals,
                precision,
                lo_signs,
                ball,
            });
        }
        precision = precision
            .checked_mul(2)
            .filter(|&p| p <= MAX_PRECISION)
            .ok_or_else(|| overflow(precision, "isolation stayed inconclusive"))?;
    }
}

/// Refines oracle-isolated roots to width at most `eps`, raising the
/// coefficient precision when a split point cannot be signed.
pub fn refine_oracle_roots(oracle: &mut dyn CoeffOracle, iso: &mut OracleIsolation, eps: &Rational) -> Result<()> {
    if !eps.is_positive() {
        return Err(Error::pre("refinement width must be positive"));
    }
    for idx in 0..iso.intervals.len() {
        while iso.intervals[idx].width() > *eps {
            let (lo, hi) = (iso.intervals[idx].lo.clone(), iso.intervals[idx].hi.clone());
            match first_conclusive(&iso.ball, &lo, &hi) {
                Some((m, sm)) => {
                    let iv = &mut iso.intervals[idx];
                    if sm == iso.lo_signs[idx] {
                        iv.lo = m;
                    } else {
                        iv.hi = m;
                    }
                }
                None => {
                    let p = iso
                        .precision
                        .checked_mul(2)
                        .filter(|&p| p <= MAX_PRECISION)
                        .ok_or_else(|| overflow(iso.precision, "refinement stayed inconclusive"))?;
                    iso.ball = query_ball(oracle, p)?;
                    iso.precision = p;
                }
            }
        }
    }
    Ok(())
}

/// Enclosure of the true polynomial at `x` from the current approximation.
pub fn oracle_value_at(iso: &OracleIsolation, x: &Rational) -> Interval {
    let coeffs: Vec<Interval> = iso
        .ball
        .center
        .iter()
        .zip(&iso.ball.radius)
        .map(|(c, r)| Interval::ball(c, r))
        .collect();
    horner_interval_coeffs(&coeffs, x)
}
