//! JSON, DOT and SVG renderings of a topology graph.

use std::fmt::Write;

use serde::Serialize;

use crate::arith::{format_rational, rational_to_f64};
use crate::topology::{AnalysisTrace, ColumnKind, TopologyGraph};

#[derive(Serialize)]
struct JsonCritical {
    interval: [String; 2],
}

#[derive(Serialize)]
struct JsonColumn {
    x: String,
    kind: &'static str,
    points: usize,
    critical_index: Option<usize>,
}

#[derive(Serialize)]
struct JsonInvariants {
    components: usize,
    cycle_rank: usize,
}

#[derive(Serialize)]
struct JsonGraph<'a> {
    input: &'a str,
    shear: i64,
    critical_values: Vec<JsonCritical>,
    columns: Vec<JsonColumn>,
    edges: Vec<[[usize; 2]; 2]>,
    invariants: JsonInvariants,
}

pub fn to_json(graph: &TopologyGraph, trace: &AnalysisTrace, input: &str) -> String {
    let inv = graph.invariants();
    let doc = JsonGraph {
        input,
        shear: trace.shear,
        critical_values: graph
            .columns
            .iter()
            .filter_map(|c| c.x_interval.as_ref())
            .map(|(lo, hi)| JsonCritical {
                interval: [format_rational(lo), format_rational(hi)],
            })
            .collect(),
        columns: graph
            .columns
            .iter()
            .map(|c| JsonColumn {
                x: format_rational(&c.x),
                kind: match c.kind {
                    ColumnKind::Intermediate => "intermediate",
                    ColumnKind::Critical => "critical",
                },
                points: c.points,
                critical_index: c.critical_index,
            })
            .collect(),
        edges: graph
            .edges
            .iter()
            .map(|&((c1, r1), (c2, r2))| [[c1, r1], [c2, r2]])
            .collect(),
        invariants: JsonInvariants {
            components: inv.components,
            cycle_rank: inv.cycle_rank,
        },
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("plain data serializes");
    s.push('\n');
    s
}

pub fn to_dot(graph: &TopologyGraph) -> String {
    let mut out = String::from("graph curve {\n");
    for (ci, col) in graph.columns.iter().enumerate() {
        for r in 0..col.points {
            let _ = writeln!(out, "  c{}_r{};", ci, r);
        }
    }
    for &((c1, r1), (c2, r2)) in &graph.edges {
        let _ = writeln!(out, "  c{}_r{} -- c{}_r{};", c1, r1, c2, r2);
    }
    out.push_str("}\n");
    out
}

/// Straight-line drawing: columns at their x-values, vertices at the
/// midpoints of their refined root intervals.
pub fn to_svg(graph: &TopologyGraph) -> String {
    const W: f64 = 800.0;
    const H: f64 = 600.0;
    const PAD: f64 = 40.0;

    let pos: Vec<Vec<(f64, f64)>> = graph
        .columns
        .iter()
        .map(|c| {
            let x = rational_to_f64(&c.x);
            (0..c.points)
                .map(|r| {
                    let y = c.samples.get(r).map(rational_to_f64).unwrap_or(r as f64);
                    (x, y)
                })
                .collect()
        })
        .collect();
    let all: Vec<(f64, f64)> = pos.iter().flatten().copied().collect();
    let xs = graph.columns.iter().map(|c| rational_to_f64(&c.x));
    let (x0, x1) = xs.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), x| (a.min(x), b.max(x)));
    let (y0, y1) = all
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), p| (a.min(p.1), b.max(p.1)));
    let span = |lo: f64, hi: f64| if hi > lo { hi - lo } else { 1.0 };
    let (x0, y0) = (if x0.is_finite() { x0 } else { 0.0 }, if y0.is_finite() { y0 } else { 0.0 });
    let (sx, sy) = (span(x0, x1), span(y0, y1));
    let map = |(x, y): (f64, f64)| {
        (
            PAD + (x - x0) / sx * (W - 2.0 * PAD),
            H - PAD - (y - y0) / sy * (H - 2.0 * PAD),
        )
    };

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#
    );
    let _ = writeln!(out, r#"  <rect width="100%" height="100%" fill="white"/>"#);
    for &((c1, r1), (c2, r2)) in &graph.edges {
        let (ax, ay) = map(pos[c1][r1]);
        let (bx, by) = map(pos[c2][r2]);
        let _ = writeln!(
            out,
            r#"  <line x1="{ax:.2}" y1="{ay:.2}" x2="{bx:.2}" y2="{by:.2}" stroke="black" stroke-width="1.5"/>"#
        );
    }
    for (ci, col) in graph.columns.iter().enumerate() {
        for (r, &p) in pos[ci].iter().enumerate() {
            let (cx, cy) = map(p);
            let critical = col.kind == ColumnKind::Critical && col.critical_index == Some(r + 1);
            let fill = if critical { "red" } else { "black" };
            let _ = writeln!(out, r#"  <circle cx="{cx:.2}" cy="{cy:.2}" r="3" fill="{fill}"/>"#);
        }
    }
    out.push_str("</svg>\n");
    out
}
