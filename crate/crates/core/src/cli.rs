//! Run configuration and the analysis entry point behind the binary.

use std::path::PathBuf;

use crate::emit::{to_dot, to_json, to_svg};
use crate::error::Error;
use crate::parse::parse_poly;
use crate::topology::{compute_topology, verify_graph, ShearMode, TopologyOptions};

pub const EXIT_PARSE: i32 = 2;
pub const EXIT_INVALID_INPUT: i32 = 3;
pub const EXIT_VERIFY: i32 = 4;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InputSource {
    File(PathBuf),
    Expr(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Dot,
    Svg,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub input: InputSource,
    pub shear: ShearMode,
    pub seed: Option<u64>,
    pub format: OutputFormat,
    pub verify: bool,
    pub trace: bool,
}

#[derive(Debug, Clone)]
pub struct RunOutput {
    pub stdout: String,
    /// Diagnostics for stderr, present when tracing.
    pub trace: Option<String>,
}

#[derive(Debug, Clone)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

fn fail(code: i32, message: impl Into<String>) -> CliError {
    CliError {
        code,
        message: message.into(),
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NotSquareFree | Error::ShearExhausted(_) | Error::NotGeneric(_) | Error::Precondition(_) => {
            EXIT_INVALID_INPUT
        }
        _ => EXIT_VERIFY,
    }
}

pub fn run(cfg: &RunConfig) -> Result<RunOutput, CliError> {
    let text = match &cfg.input {
        InputSource::Expr(s) => s.clone(),
        InputSource::File(p) => std::fs::read_to_string(p)
            .map_err(|e| fail(EXIT_PARSE, format!("cannot read {}: {}", p.display(), e)))?,
    };
    let text = text.trim();
    let f = parse_poly(text).map_err(|e| fail(EXIT_PARSE, e.to_string()))?;
    if f.total_degree().is_none_or(|d| d == 0) {
        return Err(fail(EXIT_INVALID_INPUT, "input must have positive degree"));
    }
    let opts = TopologyOptions {
        shear: cfg.shear,
        seed: cfg.seed.unwrap_or(0),
        ..TopologyOptions::default()
    };
    let (graph, trace) = compute_topology(&f, &opts).map_err(|e| fail(exit_code(&e), e.to_string()))?;
    if cfg.verify {
        let bad = verify_graph(&graph);
        if !bad.is_empty() {
            return Err(fail(EXIT_VERIFY, format!("invariant violations: {}", bad.join("; "))));
        }
    }
    let stdout = match cfg.format {
        OutputFormat::Json => to_json(&graph, &trace, text),
        OutputFormat::Dot => to_dot(&graph),
        OutputFormat::Svg => to_svg(&graph),
    };
    Ok(RunOutput {
        stdout,
        trace: cfg.trace.then(|| trace.to_string()),
    })
}
