//! Topology of a real plane algebraic curve as a straight-line graph.
//!
//! After a shear puts the curve in generic position, every critical fiber
//! holds exactly one multiple root. The pipeline isolates the critical
//! x-values, lifts each critical fiber through the subresultant cofactor
//! that gives its square-free part, locates the multiple root from the
//! first two coefficients of the relevant subresultant, counts arcs over
//! rational sample points in between, and connects everything rank-wise.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::algnum::{enclose_many, factor_vanishes, AlgebraicNumber};
use crate::arith::{int, pow2, Interval, Rational, Sign};
use crate::bipoly::BiPoly;
use crate::error::{Error, Result};
use crate::isolate::{
    intermediate_points, isolate_oracle_poly, isolate_real_roots, refine_oracle_roots, refine_to_width,
    CoeffOracle, IsolatingInterval, OracleIsolation, MAX_PRECISION,
};
use crate::subres::{sturm_habicht_count, subresultant_chain, univariate_chain, SubresChain};
use crate::upoly::IntPoly;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GenericityReason {
    /// `deg(f) != deg_y(f)`: the leading y-coefficient depends on x.
    DegreeDrop,
    /// `res_y(f, f_y)` vanishes identically.
    ResultantZero,
    /// The discriminant of the square-free part of the resultant vanishes.
    DiscriminantZero,
    /// A fiber failed an exact consistency check during the analysis.
    RuntimeInconsistency(String),
}

impl fmt::Display for GenericityReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenericityReason::DegreeDrop => write!(f, "leading y-coefficient is not constant"),
            GenericityReason::ResultantZero => write!(f, "resultant vanishes identically"),
            GenericityReason::DiscriminantZero => write!(f, "discriminant of the resultant vanishes"),
            GenericityReason::RuntimeInconsistency(s) => write!(f, "{}", s),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenericityReport {
    pub is_generic: bool,
    pub reasons: Vec<GenericityReason>,
    /// Discriminant of the square-free part of the resultant, when defined.
    pub discriminant: Option<BigInt>,
}

impl GenericityReport {
    fn runtime(detail: String) -> Self {
        GenericityReport {
            is_generic: false,
            reasons: vec![GenericityReason::RuntimeInconsistency(detail)],
            discriminant: None,
        }
    }
}

impl fmt::Display for GenericityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_generic {
            return write!(f, "generic");
        }
        let parts: Vec<String> = self.reasons.iter().map(|r| r.to_string()).collect();
        write!(f, "{}", parts.join("; "))
    }
}

/// Discriminant of a univariate polynomial as `res(g, g') / lcf(g)`, up to sign.
fn discriminant(g: &IntPoly) -> BigInt {
    match g.degree() {
        None | Some(0) => BigInt::one(),
        Some(_) => {
            let chain = univariate_chain(g, &g.derivative()).expect("degree checked");
            &chain.principal[0] / g.leading_coeff().unwrap()
        }
    }
}

/// Checks the leading-coefficient condition, the resultant and its discriminant.
pub fn check_generic(f: &BiPoly) -> GenericityReport {
    let mut reasons = Vec::new();
    let n = f.degree_y().unwrap_or(0);
    if n == 0 || f.total_degree() != Some(n) {
        reasons.push(GenericityReason::DegreeDrop);
    }
    let mut discriminant_value = None;
    if n >= 1 {
        let chain = subresultant_chain(f, &f.partial_y()).expect("positive y-degree");
        let r = chain.resultant();
        if r.is_zero() {
            reasons.push(GenericityReason::ResultantZero);
        } else {
            let sq = r.squarefree_part().expect("nonzero");
            let d = discriminant(&sq);
            if d.is_zero() {
                reasons.push(GenericityReason::DiscriminantZero);
            }
            discriminant_value = Some(d);
        }
    }
    GenericityReport {
        is_generic: reasons.is_empty(),
        reasons,
        discriminant: discriminant_value,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShearMode {
    Deterministic,
    Random,
    /// Use the input as given; fail if it is not in generic position.
    None,
}

/// Upper bound on the number of bad shear factors for total degree `n`.
fn bad_factor_bound(n: usize) -> i64 {
    let n = n as i64;
    n.saturating_pow(4).saturating_add(n)
}

/// Candidate shear factors in the order they are tried.
pub fn shear_candidates(n: usize, mode: ShearMode, seed: u64) -> Vec<i64> {
    let bound = bad_factor_bound(n);
    let budget = (2 * bound + 1).min(1 << 16) as usize;
    match mode {
        ShearMode::None => vec![0],
        ShearMode::Deterministic => (0..budget)
            .map(|i| {
                let h = (i as i64 + 1) / 2;
                if i % 2 == 1 { h } else { -h }
            })
            .collect(),
        ShearMode::Random => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..budget).map(|_| rng.gen_range(1..=2 * bound.max(1))).collect()
        }
    }
}

/// First shear factor whose sheared curve passes [`check_generic`].
pub fn find_shear(f: &BiPoly, mode: ShearMode, seed: u64) -> Result<(i64, BiPoly)> {
    let n = f.total_degree().ok_or_else(|| Error::pre("zero polynomial"))?;
    if n == 0 {
        return Err(Error::pre("constant polynomial"));
    }
    let candidates = shear_candidates(n, mode, seed);
    let tried = candidates.len();
    for s in candidates {
        let g = f.shear(s);
        let report = check_generic(&g);
        if report.is_generic {
            return Ok((s, g));
        }
        if mode == ShearMode::None {
            return Err(Error::NotGeneric(report));
        }
    }
    Err(Error::ShearExhausted(tried))
}

/// Real roots of the resultant, in increasing order.
pub fn critical_values(chain: &SubresChain) -> Result<Vec<AlgebraicNumber>> {
    let r = chain.resultant();
    if r.is_zero() {
        return Err(Error::NotSquareFree);
    }
    if r.deg() == 0 {
        return Ok(Vec::new());
    }
    AlgebraicNumber::roots_of(&r)
}

/// Per-curve data shared by all fiber computations.
struct FiberContext<'a> {
    chain: &'a SubresChain,
    /// `gcd(R*, sres_k)` for every `k`, with `R*` the square-free resultant.
    principal_gcds: Vec<IntPoly>,
}

impl<'a> FiberContext<'a> {
    fn new(chain: &'a SubresChain) -> Result<Self> {
        let sq = chain.resultant().squarefree_part()?;
        let principal_gcds = (0..=chain.degree())
            .map(|k| sq.gcd(chain.principal(k)))
            .collect::<Result<Vec<_>>>()?;
        Ok(FiberContext {
            chain,
            principal_gcds,
        })
    }

    fn k_of(&self, alpha: &AlgebraicNumber) -> Result<usize> {
        (0..=self.chain.degree())
            .find(|&k| {
                let p = self.chain.principal(k);
                !p.is_zero() && !factor_vanishes(&self.principal_gcds[k], alpha)
            })
            .ok_or_else(|| Error::DegenerateFiber(format!("all principal coefficients vanish at {}", alpha)))
    }
}

/// `k_alpha`: least `k` with `sres_k(alpha) != 0`.
pub fn gcd_degree_at(alpha: &AlgebraicNumber, chain: &SubresChain) -> Result<usize> {
    FiberContext::new(chain)?.k_of(alpha)
}

fn binomial(n: usize, k: usize) -> BigInt {
    let mut b = BigInt::one();
    for i in 0..k {
        b = b * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    b
}

/// Polynomials in `x` that all vanish at `alpha` exactly when
/// `Sres_k(alpha, y)` is a constant times `(y - beta)^k`, that is, when
/// the fiber has a single multiple root.
pub fn single_root_certificate(chain: &SubresChain, k: usize) -> Vec<IntPoly> {
    let skk = chain.coeff(k, k);
    let sk1 = chain.coeff(k, k - 1);
    (0..k.saturating_sub(1))
        .map(|j| {
            let e = k - j;
            let mut lhs = chain.coeff(k, j).scale(&BigInt::from(k).pow(e as u32));
            for _ in 0..e - 1 {
                lhs = &lhs * &skk;
            }
            let mut rhs = IntPoly::constant(binomial(k, j));
            for _ in 0..e {
                rhs = &rhs * &sk1;
            }
            &lhs - &rhs
        })
        .collect()
}

/// Serves interval approximations of the y-coefficients of a bivariate
/// polynomial evaluated at an algebraic x.
struct FiberOracle {
    alpha: AlgebraicNumber,
    coeffs: Vec<IntPoly>,
    previous: Option<Vec<Interval>>,
}

impl CoeffOracle for FiberOracle {
    fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    fn query(&mut self, precision: u32) -> Result<Vec<Interval>> {
        let delta = pow2(-(precision as i64) - 1);
        let mut fresh = enclose_many(&self.coeffs, &mut self.alpha, &delta)?;
        if let Some(prev) = &self.previous {
            for (f, p) in fresh.iter_mut().zip(prev) {
                *f = f.intersect(p).expect("enclosures of the same value intersect");
            }
        }
        self.previous = Some(fresh.clone());
        Ok(fresh)
    }
}

fn fiber_oracle(alpha: &AlgebraicNumber, k: usize, chain: &SubresChain) -> Result<FiberOracle> {
    let n = chain.degree();
    let v = chain.cofactor_v(k - 1);
    let coeffs: Vec<IntPoly> = (0..=n - k).map(|j| v.y_coeff(j)).collect();
    let mut a = alpha.clone();
    if crate::algnum::sign_at(&coeffs[n - k], &mut a)? == Sign::Zero {
        return Err(Error::DegenerateFiber(format!(
            "square-free fiber part drops degree at {}",
            alpha
        )));
    }
    Ok(FiberOracle {
        alpha: a,
        coeffs,
        previous: None,
    })
}

fn lift_with_oracle(oracle: &mut FiberOracle, n: usize, k: usize) -> Result<OracleIsolation> {
    let iso = isolate_oracle_poly(oracle).map_err(|e| match e {
        Error::PrecisionOverflow { precision, detail } => Error::DegenerateFiber(format!(
            "fiber isolation inconclusive at {} bits: {}",
            precision, detail
        )),
        other => other,
    })?;
    if iso.count() > n - k {
        return Err(Error::DegenerateFiber(format!(
            "{} real roots exceed the bound {}",
            iso.count(),
            n - k
        )));
    }
    Ok(iso)
}

/// Distinct real roots of `f(alpha, y)` for a critical `alpha` with gcd degree `k`.
pub fn lift_critical_fiber(alpha: &AlgebraicNumber, k: usize, chain: &SubresChain) -> Result<Vec<IsolatingInterval>> {
    if k == 0 || k >= chain.degree() {
        return Err(Error::pre(format!("gcd degree {} out of range", k)));
    }
    let mut oracle = fiber_oracle(alpha, k, chain)?;
    Ok(lift_with_oracle(&mut oracle, chain.degree(), k)?.intervals)
}

/// Enclosure of `beta(alpha) = -Sres_{k,k-1}(alpha) / (k * Sres_{k,k}(alpha))` of width at most `eps`.
fn beta_enclosure(alpha: &mut AlgebraicNumber, k: usize, chain: &SubresChain, eps: &Rational) -> Result<Interval> {
    let polys = [chain.coeff(k, k - 1), chain.coeff(k, k).scale(&BigInt::from(k))];
    let mut delta = eps.clone();
    loop {
        let e = enclose_many(&polys, alpha, &delta)?;
        if !e[1].contains_zero() {
            let j = -&e[0].div(&e[1])?;
            if j.width() <= *eps {
                return Ok(j);
            }
        }
        delta = &delta * &delta;
    }
}

/// 1-based rank of the root interval holding the multiple root.
fn locate_multiple_root(
    alpha: &mut AlgebraicNumber,
    k: usize,
    chain: &SubresChain,
    oracle: &mut dyn CoeffOracle,
    iso: &mut OracleIsolation,
) -> Result<usize> {
    match iso.count() {
        0 => return Err(Error::DegenerateFiber(format!("critical fiber at {} has no real root", alpha))),
        1 => return Ok(1),
        _ => {}
    }
    let mut eps = Rational::new(1.into(), 2.into());
    let mut bits: u64 = 1;
    loop {
        let j = beta_enclosure(alpha, k, chain, &eps)?;
        refine_oracle_roots(oracle, iso, &eps)?;
        let hits: Vec<usize> = iso
            .intervals
            .iter()
            .enumerate()
            .filter(|(_, iv)| iv.overlaps(&j))
            .map(|(i, _)| i)
            .collect();
        if hits.len() == 1 {
            return Ok(hits[0] + 1);
        }
        eps = &eps * &eps;
        bits *= 2;
        if bits > MAX_PRECISION as u64 {
            return Err(Error::DegenerateFiber(format!(
                "multiple root not located at {}",
                alpha
            )));
        }
    }
}

/// 1-based rank (bottom-up) of the multiple root of `f(alpha, y)` among `roots`.
pub fn multiple_root_index(
    alpha: &AlgebraicNumber,
    k: usize,
    chain: &SubresChain,
    roots: &[IsolatingInterval],
) -> Result<usize> {
    let mut oracle = fiber_oracle(alpha, k, chain)?;
    let mut iso = lift_with_oracle(&mut oracle, chain.degree(), k)?;
    if iso.count() != roots.len() {
        return Err(Error::pre("root list does not match the fiber"));
    }
    let mut a = alpha.clone();
    let idx = locate_multiple_root(&mut a, k, chain, &mut oracle, &mut iso)?;
    let found = &iso.intervals[idx - 1];
    roots
        .iter()
        .position(|r| r.overlaps(&found.as_interval()))
        .map(|i| i + 1)
        .ok_or_else(|| Error::pre("root list does not match the fiber"))
}

/// Number of distinct real roots of `f(q, y)` at each sample `q`.
pub fn arc_counts(f: &BiPoly, qs: &[Rational]) -> Result<Vec<usize>> {
    qs.iter()
        .map(|q| {
            let g = f.specialize_x(q);
            if g.degree().is_none_or(|d| d == 0) {
                return if g.is_zero() {
                    Err(Error::pre(format!("curve contains the vertical line x = {}", q)))
                } else {
                    Ok(0)
                };
            }
            let gy = g.derivative();
            if g.gcd(&gy)?.deg() > 0 {
                return Err(Error::pre(format!("x = {} is a critical value", q)));
            }
            sturm_habicht_count(&g)
        })
        .collect()
}

/// One analysed critical fiber.
#[derive(Debug, Clone)]
pub struct CriticalFiber {
    pub alpha: AlgebraicNumber,
    pub k: usize,
    pub roots: Vec<IsolatingInterval>,
    /// 1-based rank of the multiple root.
    pub critical_index: usize,
    /// Coefficient precision that certified the lifting.
    pub precision: u32,
    /// Midpoints of the root intervals after refinement for display.
    pub samples: Vec<Rational>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColumnKind {
    Intermediate,
    Critical,
}

#[derive(Debug, Clone)]
pub struct Column {
    pub kind: ColumnKind,
    /// Sample x for intermediate columns, midpoint of the isolating interval for critical ones.
    pub x: Rational,
    pub x_interval: Option<(Rational, Rational)>,
    pub points: usize,
    /// 1-based rank of the critical point in a critical column.
    pub critical_index: Option<usize>,
    /// Gcd degree of a critical fiber.
    pub k: Option<usize>,
    /// y-coordinates used for drawing, one per vertex when available.
    pub samples: Vec<Rational>,
}

pub type Vertex = (usize, usize);

#[derive(Debug, Clone)]
pub struct TopologyGraph {
    pub columns: Vec<Column>,
    pub edges: Vec<(Vertex, Vertex)>,
    /// `deg_y` of the analysed (sheared) curve.
    pub degree_y: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Invariants {
    pub components: usize,
    pub cycle_rank: usize,
}

impl TopologyGraph {
    pub fn vertex_count(&self) -> usize {
        self.columns.iter().map(|c| c.points).sum()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    fn offsets(&self) -> Vec<usize> {
        let mut acc = 0;
        self.columns
            .iter()
            .map(|c| {
                let o = acc;
                acc += c.points;
                o
            })
            .collect()
    }

    /// Degree of every vertex, column by column.
    pub fn degrees(&self) -> Vec<Vec<usize>> {
        let mut deg: Vec<Vec<usize>> = self.columns.iter().map(|c| vec![0; c.points]).collect();
        for &((c1, r1), (c2, r2)) in &self.edges {
            deg[c1][r1] += 1;
            deg[c2][r2] += 1;
        }
        deg
    }

    pub fn components(&self) -> usize {
        let offsets = self.offsets();
        let mut parent: Vec<usize> = (0..self.vertex_count()).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut count = parent.len();
        for &((c1, r1), (c2, r2)) in &self.edges {
            let a = find(&mut parent, offsets[c1] + r1);
            let b = find(&mut parent, offsets[c2] + r2);
            if a != b {
                parent[a] = b;
                count -= 1;
            }
        }
        count
    }

    pub fn invariants(&self) -> Invariants {
        let c = self.components();
        Invariants {
            components: c,
            cycle_rank: self.edge_count() + c - self.vertex_count(),
        }
    }

    /// Sorted vertex degrees other than 2; these survive a change of
    /// projection direction, unlike the full degree multiset.
    pub fn singular_degrees(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self.degrees().into_iter().flatten().filter(|&d| d != 2).collect();
        out.sort_unstable();
        out
    }
}

/// Connects columns `q_0, alpha_1, q_1, ..., alpha_m, q_m` by the rank rule.
pub fn build_graph(fibers: &[CriticalFiber], counts: &[usize], qs: &[Rational]) -> Result<TopologyGraph> {
    let m = fibers.len();
    if counts.len() != m + 1 || qs.len() != m + 1 {
        return Err(Error::pre("need one arc count and sample per gap"));
    }
    let mut columns = Vec::with_capacity(2 * m + 1);
    let mut edges = Vec::new();
    if m == 0 {
        for x in [-1, 1] {
            columns.push(Column {
                kind: ColumnKind::Intermediate,
                x: int(x),
                x_interval: None,
                points: counts[0],
                critical_index: None,
                k: None,
                samples: Vec::new(),
            });
        }
        edges.extend((0..counts[0]).map(|r| ((0, r), (1, r))));
        return Ok(TopologyGraph {
            columns,
            edges,
            degree_y: 0,
        });
    }
    for i in 0..=m {
        columns.push(Column {
            kind: ColumnKind::Intermediate,
            x: qs[i].clone(),
            x_interval: None,
            points: counts[i],
            critical_index: None,
            k: None,
            samples: Vec::new(),
        });
        if i == m {
            break;
        }
        let fib = &fibers[i];
        let iv = fib.alpha.interval();
        columns.push(Column {
            kind: ColumnKind::Critical,
            x: iv.midpoint(),
            x_interval: Some((iv.lo.clone(), iv.hi.clone())),
            points: fib.roots.len(),
            critical_index: Some(fib.critical_index),
            k: Some(fib.k),
            samples: fib.samples.clone(),
        });
    }
    for i in 0..m {
        let cc = 2 * i + 1;
        let pts = columns[cc].points;
        let c = columns[cc].critical_index.unwrap();
        for ic in [cc - 1, cc + 1] {
            let a = columns[ic].points;
            if a + 1 < pts {
                return Err(Error::Delineability {
                    column: ic,
                    arcs: a,
                    points: pts,
                });
            }
            let top = pts - c;
            let mut pair = |r_int: usize, r_crit: usize| {
                let e = if ic < cc {
                    ((ic, r_int), (cc, r_crit))
                } else {
                    ((cc, r_crit), (ic, r_int))
                };
                edges.push(e);
            };
            for r in 0..c - 1 {
                pair(r, r);
            }
            for r in c - 1..a - top {
                pair(r, c - 1);
            }
            for t in 0..top {
                pair(a - top + t, c + t);
            }
        }
    }
    edges.sort();
    Ok(TopologyGraph {
        columns,
        edges,
        degree_y: 0,
    })
}

/// Structural violations of a topology graph; empty when it is consistent.
pub fn verify_graph(g: &TopologyGraph) -> Vec<String> {
    let mut bad = Vec::new();
    let last = g.columns.len().saturating_sub(1);
    for &((c1, r1), (c2, r2)) in &g.edges {
        if c2 != c1 + 1 {
            bad.push(format!("edge ({c1},{r1})-({c2},{r2}) skips a column"));
        }
        if c2 >= g.columns.len() || r1 >= g.columns[c1].points || r2 >= g.columns[c2].points {
            bad.push(format!("edge ({c1},{r1})-({c2},{r2}) names a missing vertex"));
            return bad;
        }
    }
    for c in 0..last {
        let mut pairs: Vec<(usize, usize)> = g
            .edges
            .iter()
            .filter(|e| e.0 .0 == c)
            .map(|e| (e.0 .1, e.1 .1))
            .collect();
        pairs.sort();
        for w in pairs.windows(2) {
            if w[1].1 < w[0].1 {
                bad.push(format!("edges cross between columns {} and {}", c, c + 1));
            }
        }
    }
    let deg = g.degrees();
    for (ci, col) in g.columns.iter().enumerate() {
        match col.kind {
            ColumnKind::Intermediate => {
                let boundary = ci == 0 || ci == last;
                for (r, &d) in deg[ci].iter().enumerate() {
                    if (boundary && d > 1) || (!boundary && d != 2) {
                        bad.push(format!("vertex ({ci},{r}) has degree {d}"));
                    }
                }
            }
            ColumnKind::Critical => {
                let m = col.points;
                let Some(c) = col.critical_index.filter(|&c| c >= 1 && c <= m) else {
                    bad.push(format!("column {ci} has an invalid critical index"));
                    continue;
                };
                let (l, r) = (g.columns[ci - 1].points, g.columns[ci + 1].points);
                if l + 1 < m || r + 1 < m {
                    bad.push(format!("column {ci} violates delineability"));
                    continue;
                }
                for (rank, &d) in deg[ci].iter().enumerate() {
                    let want = if rank + 1 == c { (l + 1 - m) + (r + 1 - m) } else { 2 };
                    if d != want {
                        bad.push(format!("vertex ({ci},{rank}) has degree {d}, expected {want}"));
                    }
                }
                if let Some(k) = col.k {
                    if g.degree_y > 0 && m + k > g.degree_y {
                        bad.push(format!("column {ci} has {m} points but gcd degree {k}"));
                    }
                }
            }
        }
    }
    bad
}

#[derive(Debug, Clone)]
pub struct TopologyOptions {
    pub shear: ShearMode,
    pub seed: u64,
    /// Analyse critical fibers on the rayon pool. Output is identical either way.
    pub parallel: bool,
    /// Compute y-coordinates of vertices for drawing.
    pub samples: bool,
}

impl Default for TopologyOptions {
    fn default() -> Self {
        TopologyOptions {
            shear: ShearMode::Deterministic,
            seed: 0,
            parallel: true,
            samples: true,
        }
    }
}

#[derive(Debug, Clone)]
pub struct ShearAttempt {
    pub shear: i64,
    pub outcome: String,
}

#[derive(Debug, Clone)]
pub struct FiberTrace {
    pub interval: (Rational, Rational),
    pub k: usize,
    pub roots: usize,
    pub critical_index: usize,
    pub precision: u32,
}

#[derive(Debug, Clone, Default)]
pub struct AnalysisTrace {
    pub shear: i64,
    pub attempts: Vec<ShearAttempt>,
    pub resultant: IntPoly,
    pub fibers: Vec<FiberTrace>,
    pub samples: Vec<(Rational, usize)>,
}

impl fmt::Display for AnalysisTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for a in &self.attempts {
            writeln!(f, "shear {}: {}", a.shear, a.outcome)?;
        }
        writeln!(f, "shear = {}", self.shear)?;
        writeln!(f, "R = {}", self.resultant)?;
        for (i, fb) in self.fibers.iter().enumerate() {
            writeln!(
                f,
                "fiber {}: x in [{}, {}], k = {}, roots = {}, critical index = {}, precision = {}",
                i + 1,
                fb.interval.0,
                fb.interval.1,
                fb.k,
                fb.roots,
                fb.critical_index,
                fb.precision
            )?;
        }
        for (q, c) in &self.samples {
            writeln!(f, "arcs over x = {}: {}", q, c)?;
        }
        Ok(())
    }
}

/// Refines isolating intervals until each is at most a quarter wide and at
/// most half the smallest gap between neighbours; returns the midpoints.
fn display_points<F>(mut intervals: Vec<IsolatingInterval>, mut refine: F) -> Result<Vec<Rational>>
where
    F: FnMut(&mut Vec<IsolatingInterval>, &Rational) -> Result<()>,
{
    let quarter = Rational::new(1.into(), 4.into());
    loop {
        let gap = intervals
            .windows(2)
            .map(|w| &w[1].lo - &w[0].hi)
            .min();
        let target = match gap {
            // neighbours from bitstream isolation may share an endpoint
            Some(g) if g.is_zero() => {
                intervals.iter().map(IsolatingInterval::width).max().unwrap_or_default() / int(2)
            }
            Some(g) if g < quarter.clone() * int(2) => g / int(2),
            _ => quarter.clone(),
        };
        if intervals.iter().all(|iv| iv.width() <= target) {
            return Ok(intervals.iter().map(IsolatingInterval::midpoint).collect());
        }
        refine(&mut intervals, &target)?;
    }
}

fn analyse_fiber(
    mut alpha: AlgebraicNumber,
    k: usize,
    chain: &SubresChain,
    certificate: &[IntPoly],
    want_samples: bool,
) -> Result<CriticalFiber> {
    for w in certificate {
        if !factor_vanishes(w, &alpha) {
            return Err(Error::NotGeneric(GenericityReport::runtime(format!(
                "fiber at {} has more than one multiple root",
                alpha
            ))));
        }
    }
    let n = chain.degree();
    let mut oracle = fiber_oracle(&alpha, k, chain)?;
    let mut iso = lift_with_oracle(&mut oracle, n, k)?;
    let precision = iso.precision;
    let roots = iso.intervals.clone();
    let critical_index = locate_multiple_root(&mut alpha, k, chain, &mut oracle, &mut iso)?;
    let samples = if want_samples {
        display_points(iso.intervals.clone(), |ivs, eps| {
            refine_oracle_roots(&mut oracle, &mut iso, eps)?;
            *ivs = iso.intervals.clone();
            Ok(())
        })?
    } else {
        Vec::new()
    };
    Ok(CriticalFiber {
        alpha,
        k,
        roots,
        critical_index,
        precision,
        samples,
    })
}

fn intermediate_samples(f: &BiPoly, q: &Rational) -> Result<Vec<Rational>> {
    let g = f.specialize_x(q);
    if g.degree().is_none_or(|d| d == 0) {
        return Ok(Vec::new());
    }
    let roots = isolate_real_roots(&g)?;
    display_points(roots, |ivs, eps| {
        *ivs = refine_to_width(&g, ivs, eps)?;
        Ok(())
    })
}

/// Runs the pipeline for an already sheared curve in generic position.
fn analyse_sheared(f: &BiPoly, opts: &TopologyOptions, trace: &mut AnalysisTrace) -> Result<TopologyGraph> {
    let fy = f.partial_y();
    let chain = subresultant_chain(f, &fy)?;
    trace.resultant = chain.resultant();
    let alphas = critical_values(&chain)?;
    let r = chain.resultant();
    let isolating: Vec<IsolatingInterval> = alphas.iter().map(|a| a.interval().clone()).collect();
    let qs = if alphas.is_empty() {
        vec![Rational::zero()]
    } else {
        intermediate_points(&r, &isolating)?
    };

    let ctx = FiberContext::new(&chain)?;
    let ks = alphas.iter().map(|a| ctx.k_of(a)).collect::<Result<Vec<_>>>()?;
    let mut distinct: Vec<usize> = ks.clone();
    distinct.sort_unstable();
    distinct.dedup();
    let sq = r.squarefree_part()?;
    let mut certificates: Vec<Vec<IntPoly>> = vec![Vec::new(); chain.degree() + 1];
    for &k in &distinct {
        if k == 0 || k >= chain.degree() {
            return Err(Error::DegenerateFiber(format!("gcd degree {} at a root of the resultant", k)));
        }
        certificates[k] = single_root_certificate(&chain, k)
            .iter()
            .map(|c| sq.gcd(c))
            .collect::<Result<Vec<_>>>()?;
    }

    let work = |(a, &k): (&AlgebraicNumber, &usize)| analyse_fiber(a.clone(), k, &chain, &certificates[k], opts.samples);
    let fibers: Vec<CriticalFiber> = if opts.parallel {
        alphas.par_iter().zip(ks.par_iter()).map(work).collect::<Result<Vec<_>>>()?
    } else {
        alphas.iter().zip(ks.iter()).map(work).collect::<Result<Vec<_>>>()?
    };

    let counts = arc_counts(f, &qs)?;
    let mut graph = build_graph(&fibers, &counts, &qs)?;
    graph.degree_y = chain.degree();

    trace.fibers = fibers
        .iter()
        .map(|fb| FiberTrace {
            interval: (fb.alpha.interval().lo.clone(), fb.alpha.interval().hi.clone()),
            k: fb.k,
            roots: fb.roots.len(),
            critical_index: fb.critical_index,
            precision: fb.precision,
        })
        .collect();
    trace.samples = qs.iter().cloned().zip(counts.iter().copied()).collect();

    if opts.samples {
        let sample_cols: Vec<usize> = graph
            .columns
            .iter()
            .enumerate()
            .filter(|(_, c)| c.kind == ColumnKind::Intermediate)
            .map(|(i, _)| i)
            .collect();
        for ci in sample_cols {
            let x = graph.columns[ci].x.clone();
            let ys = intermediate_samples(f, &x)?;
            if ys.len() != graph.columns[ci].points {
                return Err(Error::pre(format!(
                    "isolation and sign counting disagree over x = {}",
                    x
                )));
            }
            graph.columns[ci].samples = ys;
        }
    }
    let violations = verify_graph(&graph);
    if !violations.is_empty() {
        return Err(Error::NotGeneric(GenericityReport::runtime(violations.join("; "))));
    }
    Ok(graph)
}

/// Full analysis of the curve `F = 0`: shear search, critical fibers, arcs and graph.
pub fn compute_topology(f: &BiPoly, opts: &TopologyOptions) -> Result<(TopologyGraph, AnalysisTrace)> {
    let n = f.total_degree().ok_or_else(|| Error::pre("zero polynomial"))?;
    if n == 0 {
        return Err(Error::pre("constant polynomial has no curve"));
    }
    let candidates = shear_candidates(n, opts.shear, opts.seed);
    let tried = candidates.len();
    let mut trace = AnalysisTrace::default();
    for s in candidates {
        let g = f.shear(s);
        let report = check_generic(&g);
        if !report.is_generic {
            if report.reasons == [GenericityReason::ResultantZero] {
                // With a constant leading coefficient this means a repeated factor.
                return Err(Error::NotSquareFree);
            }
            if opts.shear == ShearMode::None {
                return Err(Error::NotGeneric(report));
            }
            trace.attempts.push(ShearAttempt {
                shear: s,
                outcome: report.to_string(),
            });
            continue;
        }
        match analyse_sheared(&g, opts, &mut trace) {
            Ok(graph) => {
                trace.shear = s;
                return Ok((graph, trace));
            }
            Err(e) if e.is_degeneracy() && opts.shear != ShearMode::None => {
                trace.attempts.push(ShearAttempt {
                    shear: s,
                    outcome: e.to_string(),
                });
            }
            Err(e) => return Err(e),
        }
    }
    Err(Error::ShearExhausted(tried))
}
