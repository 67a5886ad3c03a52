//! Acceptance suite, run without the libtest harness so its lines are never
//! captured. Each criterion prints `PASS criterion N: ...` or
//! `FAIL criterion N: ...`; the process fails if any criterion fails.
//!
//! 1. golden topologies against an exact grid tracer
//! 2. specialization of the subresultant chain
//! 3. Bezout identity for the cofactors
//! 4. isolation counts against Sturm counting
//! 5. interval Horner containment and its width bound
//! 6. algebraic evaluation against a 512-bit bisection oracle
//! 7. Davenport-Mahler inequality
//! 8. shear invariance of the graph invariants
//! 9. structural invariants on every pipeline output
//! 10. byte-identical JSON across repeated runs

mod common;

use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use common::*;
use curvetop::algnum::approx_eval;
use curvetop::arith::{horner, horner_error_bound, pow2};
use curvetop::bounds::{check_dm_inequality, DM_TOLERANCE};
use curvetop::isolate::isolate_real_roots;
use curvetop::subres::{specialize_chain, sturm_habicht_count, univariate_chain};
use curvetop::topology::verify_graph;
use curvetop::{
    compute_topology, parse_poly, subresultant_chain, AlgebraicNumber, BiPoly, IntPoly, Interval, TopologyGraph,
    TopologyOptions,
};

const GOLDEN_TIME_LIMIT: Duration = Duration::from_secs(10);
const ISOLATION_TIME_LIMIT: Duration = Duration::from_secs(60);
const ORACLE_BITS: u32 = 512;

fn report(n: u32, what: &str, failures: &[String]) {
    if failures.is_empty() {
        println!("PASS criterion {n}: {what}");
    } else {
        println!("FAIL criterion {n}: {what} ({} failures)", failures.len());
        for f in failures.iter().take(10) {
            println!("    {f}");
        }
        panic!("criterion {n} failed");
    }
}

struct Golden {
    name: &'static str,
    expr: &'static str,
    components: usize,
    cycle_rank: usize,
}

const GOLDEN: &[Golden] = &[
    Golden { name: "circle", expr: "x^2 + y^2 - 1", components: 1, cycle_rank: 1 },
    Golden { name: "nodal cubic", expr: "y^2 - x^3 - x^2", components: 1, cycle_rank: 1 },
    Golden { name: "cusp", expr: "y^2 - x^3", components: 1, cycle_rank: 0 },
    Golden { name: "isolated point", expr: "x^2 + y^2", components: 1, cycle_rank: 0 },
    Golden { name: "lemniscate", expr: "(x^2 + y^2)^2 - (x^2 - y^2)", components: 1, cycle_rank: 2 },
    Golden { name: "empty", expr: "y^2 + 1", components: 0, cycle_rank: 0 },
    Golden {
        name: "stacked circles",
        expr: "(x^2 + (y + 2)^2 - 1) * (x^2 + (y - 2)^2 - 1)",
        components: 2,
        cycle_rank: 2,
    },
];

fn analyse(f: &BiPoly) -> curvetop::Result<TopologyGraph> {
    compute_topology(f, &TopologyOptions::default()).map(|(g, _)| g)
}

fn criterion_01_golden_topologies() {
    let results: Vec<Vec<String>> = GOLDEN
        .par_iter()
        .map(|g| {
            let mut bad = Vec::new();
            let f = parse_poly(g.expr).unwrap();
            let (oc, of) = grid_topology(&f, 4, 1000);
            if (oc, of) != (g.components, g.cycle_rank) {
                bad.push(format!("{}: grid oracle gives ({oc}, {of})", g.name));
            }
            let t = Instant::now();
            let graph = match analyse(&f) {
                Ok(graph) => graph,
                Err(e) => {
                    bad.push(format!("{}: {e}", g.name));
                    return bad;
                }
            };
            let took = t.elapsed();
            if took >= GOLDEN_TIME_LIMIT {
                bad.push(format!("{}: took {took:?}", g.name));
            }
            let inv = graph.invariants();
            if (inv.components, inv.cycle_rank) != (oc, of) {
                bad.push(format!(
                    "{}: graph ({}, {}) vs oracle ({oc}, {of})",
                    g.name, inv.components, inv.cycle_rank
                ));
            }
            if g.name == "isolated point" && (graph.vertex_count(), graph.edge_count()) != (1, 0) {
                bad.push(format!("isolated point: {} vertices, {} edges", graph.vertex_count(), graph.edge_count()));
            }
            if g.name == "empty" && graph.vertex_count() != 0 {
                bad.push(format!("empty curve: {} vertices", graph.vertex_count()));
            }
            bad
        })
        .collect();
    let failures: Vec<String> = results.into_iter().flatten().collect();
    report(1, "golden topologies match the grid oracle, each run < 10 s", &failures);
}

/// 100 random curves with `n <= 8`, `tau <= 10`.
fn random_suite() -> Vec<BiPoly> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5e5);
    (0..100)
        .map(|_| {
            let n = rng.gen_range(2..=8);
            let tau = rng.gen_range(1..=10);
            rand_curve(&mut rng, n, tau, 0.5)
        })
        .collect()
}

fn rand_rational<R: Rng>(rng: &mut R) -> Q {
    let num = rng.gen_range(-1024i64..=1024);
    let den = rng.gen_range(1i64..=64);
    q(num, den)
}

fn criterion_02_specialization() {
    let curves = random_suite();
    let failures: Vec<String> = curves
        .par_iter()
        .enumerate()
        .flat_map_iter(|(ci, f)| {
            let mut bad = Vec::new();
            let mut rng = ChaCha8Rng::seed_from_u64(ci as u64);
            let chain = subresultant_chain(f, &f.partial_y()).unwrap();
            let n = chain.degree();
            for _ in 0..20 {
                let x = rand_rational(&mut rng);
                let spec = specialize_chain(&chain, &x);
                let g = f.specialize_x(&x);
                let direct = univariate_chain(&g, &g.derivative()).unwrap();
                // g = c * f(x, y) with c = den^deg_x f
                let c = Q::from_integer(x.denom().pow(f.degree_x() as u32));
                for i in 0..=n {
                    let e = if i == n { 1 } else { 2 * n - 1 - 2 * i };
                    let scale = num_traits::pow(c.clone(), e);
                    let lhs: Vec<Q> = direct.polys[i].coeffs().iter().map(|a| Q::from_integer(a.clone())).collect();
                    let rhs: Vec<Q> = spec.exact[i].coeffs().iter().map(|a| a * &scale).collect();
                    if lhs != rhs {
                        bad.push(format!("curve {ci} ({f}) at x = {x}: index {i} differs"));
                    }
                    let lp = Q::from_integer(direct.principal[i].clone());
                    if lp != &spec.principal[i] * &scale {
                        bad.push(format!("curve {ci} at x = {x}: principal {i} differs"));
                    }
                }
            }
            bad
        })
        .collect();
    report(2, "specialized chains equal direct chains up to den^e scaling (100 curves x 20 points)", &failures);
}

fn criterion_03_bezout() {
    let curves = random_suite();
    let failures: Vec<String> = curves
        .par_iter()
        .enumerate()
        .flat_map_iter(|(ci, f)| {
            let fy = f.partial_y();
            let chain = subresultant_chain(f, &fy).unwrap();
            (0..=chain.degree())
                .filter_map(|i| {
                    let combo = &(chain.cofactor_u(i) * f) + &(chain.cofactor_v(i) * &fy);
                    (!(chain.sres(i) - &combo).is_zero()).then(|| format!("curve {ci} ({f}): index {i}"))
                })
                .collect::<Vec<_>>()
        })
        .collect();
    report(3, "Sres_i = u_i f + v_i f_y exactly on the random suite", &failures);
}

fn criterion_04_isolation_counts() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let polys: Vec<IntPoly> = (0..1000)
        .map(|i| {
            let tau = rng.gen_range(1..=12);
            if i % 4 == 0 {
                rand_non_squarefree(&mut rng, 10, tau)
            } else {
                let d = rng.gen_range(1..=10);
                rand_poly(&mut rng, d, tau)
            }
        })
        .collect();
    let t = Instant::now();
    let mut failures = Vec::new();
    for g in &polys {
        if g.degree().is_none_or(|d| d == 0) {
            continue;
        }
        let iso = match isolate_real_roots(g) {
            Ok(iso) => iso,
            Err(e) => {
                failures.push(format!("{g}: {e}"));
                continue;
            }
        };
        let sh = sturm_habicht_count(g).unwrap();
        let classic = sturm_count(g);
        if iso.len() != sh || sh != classic {
            failures.push(format!("{g}: isolation {} / Sturm-Habicht {sh} / Sturm {classic}", iso.len()));
        }
    }
    let took = t.elapsed();
    if took >= ISOLATION_TIME_LIMIT {
        failures.push(format!("total runtime {took:?}"));
    }
    report(4, "isolation counts agree with Sturm-Habicht on 1000 polynomials in < 60 s", &failures);
}

fn criterion_05_horner() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut failures = Vec::new();
    let scale = 1i64 << 10;
    for t in 0..1000 {
        let d = rng.gen_range(0..=12);
        let h = rand_poly(&mut rng, d, 10);
        let lo = q(rng.gen_range(-4 * scale..=4 * scale), scale);
        let width = q(rng.gen_range(1..2 * scale), scale);
        let hi = &lo + &width;
        let iv = Interval::new(lo.clone(), hi.clone()).unwrap();
        let j = horner(&h, &iv);
        let inner = &lo + &width * q(rng.gen_range(0..=1000), 1000);
        for x in [&lo, &hi, &inner] {
            if !j.contains(&eval_q(&h, x)) {
                failures.push(format!("triple {t}: h = {h}, I = {iv}, x = {x}"));
            }
        }
        let abs = [lo.abs(), hi.abs(), Q::one()].into_iter().max().unwrap();
        let bound = horner_error_bound(h.deg(), h.bitsize(), &width, &abs).unwrap();
        if j.width() > &bound * Q::from_integer(2.into()) {
            failures.push(format!("triple {t}: width {} exceeds twice {}", j.width(), bound));
        }
    }
    report(5, "Horner enclosures contain h(x) on 1000 triples; width within 2x the error bound", &failures);
}

/// `sum i |a_i| m^(i-1)`, a Lipschitz constant of `h` on `[-m, m]`.
fn lipschitz(h: &IntPoly, m: &Q) -> Q {
    let mut acc = Q::zero();
    let mut pw = Q::one();
    for (i, c) in h.coeffs().iter().enumerate().skip(1) {
        acc += Q::from_integer(c.abs() * BigInt::from(i)) * &pw;
        pw *= m;
    }
    acc
}

fn criterion_06_algebraic_evaluation() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut instances = Vec::new();
    while instances.len() < 200 {
        let d = rng.gen_range(1..=6);
        let g = rand_poly(&mut rng, d, 8);
        let count = sturm_count(&g);
        if count == 0 {
            continue;
        }
        let idx = rng.gen_range(0..count);
        let hd = rng.gen_range(0..=8);
        let h = rand_poly(&mut rng, hd, 10);
        let delta = if rng.gen_bool(0.2) { q(1, rng.gen_range(2..=1000)) } else { pow2(-rng.gen_range(1..=60)) };
        instances.push((g, idx, h, delta));
    }
    let failures: Vec<String> = instances
        .par_iter()
        .enumerate()
        .filter_map(|(t, (g, idx, h, delta))| {
            let oracle = Sturm::new(g).roots(ORACLE_BITS);
            let (lo, hi) = &oracle[*idx];
            let mut a = AlgebraicNumber::roots_of(g).unwrap().swap_remove(*idx);
            if !a.enclosure().overlaps(&Interval::new(lo.clone(), hi.clone()).unwrap()) {
                return Some(format!("instance {t}: root {idx} of {g} mislocated"));
            }
            let r = approx_eval(h, &mut a, delta).unwrap();
            let m = [lo.abs(), hi.abs(), Q::one()].into_iter().max().unwrap();
            let slack = lipschitz(h, &m) * (hi - lo);
            let err = (&r - eval_q(h, lo)).abs() + slack;
            (err >= *delta).then(|| format!("instance {t}: h = {h} at root {idx} of {g}: error {err} vs {delta}"))
        })
        .collect();
    report(6, "approx_eval within delta of the 512-bit oracle on 200 instances", &failures);
}

fn criterion_07_davenport_mahler() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let failures: Vec<String> = (0..500)
        .map(|i| {
            let tau = rng.gen_range(1..=10);
            if i % 5 == 0 {
                rand_non_squarefree(&mut rng, 8, tau)
            } else {
                let d = rng.gen_range(1..=8);
                rand_poly(&mut rng, d, tau)
            }
        })
        .collect::<Vec<_>>()
        .par_iter()
        .filter(|g| !check_dm_inequality(g))
        .map(|g| g.to_string())
        .collect();
    report(
        7,
        &format!("Davenport-Mahler holds on 500 polynomials (tolerance {DM_TOLERANCE:e})"),
        &failures,
    );
}

/// Random curves for the shear test, small enough to analyse quickly.
fn shear_suite() -> Vec<BiPoly> {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    (0..20)
        .map(|_| {
            let n = rng.gen_range(2..=6);
            let tau = rng.gen_range(1..=4);
            rand_curve(&mut rng, n, tau, 0.5)
        })
        .collect()
}

fn criterion_08_shear_invariance() {
    let curves = shear_suite();
    let failures: Vec<String> = curves
        .par_iter()
        .enumerate()
        .filter_map(|(ci, f)| {
            let (g1, t1) = compute_topology(f, &TopologyOptions::default()).ok()?;
            // pre-shear by t, so the effective shear is t + s2
            let t = if t1.shear == 1 { 2 } else { 1 };
            let f2 = f.shear(t);
            let (g2, t2) = match compute_topology(&f2, &TopologyOptions::default()) {
                Ok(r) => r,
                Err(e) => return Some(format!("curve {ci}: second shear failed: {e}")),
            };
            if t + t2.shear == t1.shear {
                return Some(format!("curve {ci}: shears coincide"));
            }
            let (i1, i2) = (g1.invariants(), g2.invariants());
            let (mut d1, mut d2) = (g1.singular_degrees(), g2.singular_degrees());
            d1.sort_unstable();
            d2.sort_unstable();
            (i1 != i2 || d1 != d2).then(|| {
                format!(
                    "curve {ci} ({f}): shear {} gives {:?} {:?}, shear {} gives {:?} {:?}",
                    t1.shear,
                    i1,
                    d1,
                    t + t2.shear,
                    i2,
                    d2
                )
            })
        })
        .collect();
    let analysed = curves.iter().filter(|f| analyse(f).is_ok()).count();
    let mut failures = failures;
    if analysed != curves.len() {
        failures.push(format!("only {analysed} of {} curves analysed", curves.len()));
    }
    report(8, "components, cycle rank and singular degrees agree under two shears (20 curves)", &failures);
}

fn curvetop_bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_curvetop"))
}

fn criterion_09_structural_invariants() {
    let mut inputs: Vec<(String, BiPoly)> = GOLDEN.iter().map(|g| (g.name.to_string(), parse_poly(g.expr).unwrap())).collect();
    inputs.extend(shear_suite().into_iter().enumerate().map(|(i, f)| (format!("shear suite {i}"), f)));
    inputs.extend(random_suite().into_iter().take(10).filter(|f| f.total_degree() <= Some(5)).enumerate().map(|(i, f)| (format!("random suite {i}"), f)));
    let mut failures: Vec<String> = inputs
        .par_iter()
        .flat_map_iter(|(name, f)| match analyse(f) {
            Ok(g) => verify_graph(&g).into_iter().map(|v| format!("{name}: {v}")).collect::<Vec<_>>(),
            Err(e) => vec![format!("{name}: {e}")],
        })
        .collect();
    for g in GOLDEN {
        let out = curvetop_bin().args(["analyze", "--verify", "--expr", g.expr]).output().unwrap();
        if !out.status.success() {
            failures.push(format!("{}: --verify exited with {:?}", g.name, out.status.code()));
        }
    }
    report(9, &format!("verify_graph reports no violations on {} outputs; --verify succeeds", inputs.len()), &failures);
}

fn criterion_10_determinism() {
    let mut failures = Vec::new();
    for g in GOLDEN {
        for mode in ["deterministic", "random"] {
            let runs: Vec<Vec<u8>> = (0..3)
                .map(|_| {
                    curvetop_bin()
                        .args(["analyze", "--shear", mode, "--seed", "42", "--format", "json", "--expr", g.expr])
                        .output()
                        .unwrap()
                        .stdout
                })
                .collect();
            if runs[0].is_empty() || runs.iter().any(|r| r != &runs[0]) {
                failures.push(format!("{} ({mode}): outputs differ or are empty", g.name));
            }
        }
    }
    report(10, "JSON output is byte-identical across 3 runs per golden curve (seed 42)", &failures);
}

fn main() {
    let criteria: [fn(); 10] = [
        criterion_01_golden_topologies,
        criterion_02_specialization,
        criterion_03_bezout,
        criterion_04_isolation_counts,
        criterion_05_horner,
        criterion_06_algebraic_evaluation,
        criterion_07_davenport_mahler,
        criterion_08_shear_invariance,
        criterion_09_structural_invariants,
        criterion_10_determinism,
    ];
    let failed = criteria
        .iter()
        .enumerate()
        .filter(|(i, c)| {
            let ok = std::panic::catch_unwind(**c).is_ok();
            if !ok {
                println!("FAIL criterion {}: aborted", i + 1);
            }
            !ok
        })
        .count();
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
    println!("all {} criteria passed", criteria.len());
}
