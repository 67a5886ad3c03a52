//! Numeric checks of root separation inequalities.
//!
//! Roots here come from floating-point Aberth iteration. That is fine for a
//! test oracle and nowhere else: nothing in the exact pipeline reads them.

use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use crate::arith::rational_to_f64;
use crate::error::{Error, Result};
use crate::subres::univariate_chain;
use crate::upoly::IntPoly;

/// Slack allowed when comparing the two sides of the inequality.
pub const DM_TOLERANCE: f64 = 1e-9;

fn to_f64(c: &num_bigint::BigInt) -> f64 {
    c.to_f64().unwrap_or(f64::NAN)
}

fn eval_c(coeffs: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::zero();
    let mut dp = Complex64::zero();
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// All complex roots of a square-free polynomial by Aberth iteration.
pub fn complex_roots(g: &IntPoly) -> Vec<Complex64> {
    let d = match g.degree() {
        None | Some(0) => return Vec::new(),
        Some(d) => d,
    };
    let coeffs: Vec<f64> = g.coeffs().iter().map(to_f64).collect();
    let bound = g.cauchy_root_bound().map(|b| rational_to_f64(&b)).unwrap_or(2.0);
    // Start off the real axis and off any symmetry line.
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| {
            let t = 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / d as f64 + 0.4;
            Complex64::from_polar(0.5 * bound, t)
        })
        .collect();
    for _ in 0..2000 {
        let mut moved = 0.0f64;
        for i in 0..d {
            let (p, dp) = eval_c(&coeffs, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..d)
                .filter(|&j| j != i)
                .map(|j| Complex64::new(1.0, 0.0) / (z[i] - z[j]))
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if step.is_finite() {
                z[i] -= step;
                moved = moved.max(step.norm() / z[i].norm().max(1.0));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    // Newton polish.
    for r in z.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = eval_c(&coeffs, *r);
            let step = p / dp;
            if step.is_finite() {
                *r -= step;
            }
        }
    }
    z
}

/// Distinct roots with multiplicities, from the square-free decomposition.
pub fn roots_with_multiplicity(g: &IntPoly) -> Result<Vec<(Complex64, u32)>> {
    let mut out = Vec::new();
    for (h, k) in g.squarefree_decomposition()? {
        out.extend(complex_roots(&h).into_iter().map(|z| (z, k)));
    }
    Ok(out)
}

/// `log Mea(g) = log |lcf(g)| + sum log max(1, |z|)` over roots with multiplicity.
pub fn log_mahler_measure(g: &IntPoly) -> Result<f64> {
    let lc = g.leading_coeff().ok_or_else(|| Error::pre("Mahler measure of zero"))?;
    let roots = roots_with_multiplicity(g)?;
    Ok(to_f64(lc).abs().ln()
        + roots
            .iter()
            .map(|(z, k)| *k as f64 * z.norm().max(1.0).ln())
            .sum::<f64>())
}

/// Directed graph on the distinct roots of a polynomial.
#[derive(Debug, Clone)]
pub struct RootGraph {
    pub roots: Vec<Complex64>,
    pub edges: Vec<(usize, usize)>,
}

impl RootGraph {
    /// Sort roots by modulus and point each one from its nearest predecessor.
    /// Every root gets in-degree at most 1 and edges only go forward, so the
    /// graph is acyclic with `|tail| <= |head|`.
    pub fn nearest_predecessor(roots: Vec<Complex64>) -> RootGraph {
        let mut order: Vec<usize> = (0..roots.len()).collect();
        order.sort_by(|&a, &b| roots[a].norm().total_cmp(&roots[b].norm()).then(a.cmp(&b)));
        let mut edges = Vec::new();
        for p in 1..order.len() {
            let j = order[p];
            let i = order[..p]
                .iter()
                .copied()
                .min_by(|&a, &b| (roots[a] - roots[j]).norm().total_cmp(&(roots[b] - roots[j]).norm()))
                .unwrap();
            edges.push((i, j));
        }
        RootGraph { roots, edges }
    }

    pub fn without_edges(roots: Vec<Complex64>) -> RootGraph {
        RootGraph {
            roots,
            edges: Vec::new(),
        }
    }

    /// Checks acyclicity, modulus order along edges and in-degree at most 1.
    pub fn is_valid(&self) -> bool {
        let n = self.roots.len();
        let mut indeg = vec![0usize; n];
        for &(i, j) in &self.edges {
            if i >= n || j >= n || i == j {
                return false;
            }
            if self.roots[i].norm() > self.roots[j].norm() * (1.0 + 1e-12) {
                return false;
            }
            indeg[j] += 1;
        }
        if indeg.iter().any(|&d| d > 1) {
            return false;
        }
        // With in-degree at most 1, a cycle shows up as a walk of length n.
        (0..n).all(|start| {
            let mut cur = start;
            for _ in 0..=n {
                match self.edges.iter().find(|e| e.1 == cur) {
                    Some(&(i, _)) => cur = i,
                    None => return true,
                }
            }
            false
        })
    }

    /// `log prod |tail - head|`.
    pub fn log_edge_product(&self) -> f64 {
        self.edges
            .iter()
            .map(|&(i, j)| (self.roots[i] - self.roots[j]).norm().ln())
            .sum()
    }
}

/// Logarithm of the right-hand side of the generalized Davenport-Mahler bound.
pub fn davenport_mahler_log_rhs(g: &IntPoly, graph: &RootGraph) -> Result<f64> {
    let n = g.degree().ok_or_else(|| Error::pre("zero polynomial"))?;
    let r = graph.roots.len();
    if n < 2 || r < 2 {
        return Err(Error::pre("need degree at least 2 and two distinct roots"));
    }
    if !graph.is_valid() {
        return Err(Error::pre("root graph violates the edge conditions"));
    }
    let chain = univariate_chain(g, &g.derivative())?;
    let sres = &chain.principal[n - r];
    if sres.is_zero() {
        return Err(Error::pre("principal subresultant vanishes"));
    }
    let (rf, nf) = (r as f64, n as f64);
    let lc = to_f64(g.leading_coeff().unwrap()).abs();
    let log_sres = big_log_abs(sres);
    let mea = log_mahler_measure(g)?;
    Ok(0.5 * log_sres - 0.5 * lc.ln() - (rf - 1.0) * mea
        + graph.edges.len() as f64 * (3f64.sqrt() / rf).ln()
        - 0.5 * rf * rf.ln()
        - nf.min(2.0 * nf - 2.0 * rf) / 3.0 * 3f64.sqrt().ln())
}

/// Right-hand side of the generalized Davenport-Mahler bound.
pub fn davenport_mahler_rhs(g: &IntPoly, graph: &RootGraph) -> Result<f64> {
    davenport_mahler_log_rhs(g, graph).map(f64::exp)
}

fn big_log_abs(x: &num_bigint::BigInt) -> f64 {
    let bits = x.bits();
    if bits < 1000 {
        return to_f64(x).abs().ln();
    }
    let shift = bits - 60;
    to_f64(&(x >> shift)).abs().ln() + shift as f64 * std::f64::consts::LN_2
}

/// Checks the bound on the nearest-predecessor graph of `g`'s roots.
/// Polynomials with fewer than two distinct roots pass vacuously.
pub fn check_dm_inequality(g: &IntPoly) -> bool {
    let Ok(roots) = roots_with_multiplicity(g) else {
        return false;
    };
    if g.deg() < 2 || roots.len() < 2 {
        return true;
    }
    let graph = RootGraph::nearest_predecessor(roots.into_iter().map(|(z, _)| z).collect());
    match davenport_mahler_log_rhs(g, &graph) {
        Ok(rhs) => {
            let lhs = graph.log_edge_product();
            lhs >= rhs || lhs.exp() >= rhs.exp() - DM_TOLERANCE
        }
        Err(_) => false,
    }
}
