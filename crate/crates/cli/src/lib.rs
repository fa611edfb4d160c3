//! Library side of the `schinzel` command: argument handling, JSON report
//! envelopes and their verification.

pub mod args;
mod commands;
mod envelope;
pub mod swan;
mod verify;

use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::Parser;

pub use args::Cli;
pub use envelope::{Check, ReportEnvelope, Verification};
pub use swan::{swan_scan, SwanReport};
pub use verify::check_envelope;

use schinzel_core::{Ring, VarSet};

/// Exit status contract.
pub mod exit {
    pub const FOUND: i32 = 0;
    pub const USAGE: i32 = 1;
    pub const EXHAUSTIVELY_NONE: i32 = 2;
    pub const BUDGET_EXHAUSTED: i32 = 3;
    pub const VERIFY_FAILED: i32 = 4;
}

/// Result of one invocation.
#[derive(Debug)]
pub struct Run {
    pub envelope: ReportEnvelope,
    pub summary: String,
    pub code: i32,
}

impl Run {
    pub fn json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.envelope).expect("serializable");
        s.push('\n');
        s
    }
}

/// Runs a parsed command line.
pub fn execute(cli: &Cli) -> Result<Run> {
    let start = Instant::now();
    let mut run = commands::dispatch(cli)?;
    if cli.global.timing {
        run.envelope.timing_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    Ok(run)
}

/// Parses `argv` (including the program name) and runs it.
pub fn run_args<I, S>(argv: I) -> Result<Run>
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv)?;
    execute(&cli)
}

pub(crate) fn resolve_ring(spec: Option<&str>) -> Result<Ring> {
    let s = spec.unwrap_or("Z");
    Ring::parse(s).with_context(|| format!("bad ring `{s}`"))
}

fn natural_key(s: &str) -> (String, u64, String) {
    let stem: String = s.trim_end_matches(|c: char| c.is_ascii_digit()).into();
    let digits = &s[stem.len()..];
    (stem, digits.parse().unwrap_or(0), s.into())
}

/// Identifiers appearing in `text`, first occurrence order.
pub(crate) fn identifiers(text: &str) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let id: String = chars[start..i].iter().collect();
            if !out.contains(&id) {
                out.push(id);
            }
        } else {
            i += 1;
        }
    }
    out
}

fn ring_symbol(ring: &Ring, id: &str) -> bool {
    (id == "u" && ring.poly_base().is_some()) || (id == "t" && ring.t().is_some())
}

/// `--vars` value: a count `n` (giving `x1..xn`, or `x` for one) or
/// comma-separated names.
pub(crate) fn vars_from_flag(s: &str) -> Result<VarSet> {
    let s = s.trim();
    if let Ok(n) = s.parse::<usize>() {
        if n == 0 {
            bail!("--vars must be positive");
        }
        return Ok(VarSet::x(n));
    }
    Ok(VarSet::new(s.split(',').map(|v| v.trim().to_string()))?)
}

/// Variables of `texts` in natural order, unless given explicitly.
pub(crate) fn infer_vars(texts: &[&str], ring: &Ring, given: Option<&str>) -> Result<VarSet> {
    if let Some(g) = given {
        return vars_from_flag(g);
    }
    let mut ids: Vec<String> = texts
        .iter()
        .flat_map(|t| identifiers(t))
        .filter(|id| !ring_symbol(ring, id))
        .collect();
    ids.sort_by_key(|s| natural_key(s));
    ids.dedup();
    if ids.is_empty() {
        return Ok(VarSet::x(1));
    }
    Ok(VarSet::new(ids)?)
}

/// The `y` variables of `texts`: every identifier that is neither in
/// `xvars` nor a ring symbol.
pub(crate) fn infer_yvars(texts: &[String], ring: &Ring, xvars: &VarSet) -> Result<VarSet> {
    let mut ids: Vec<String> = texts
        .iter()
        .flat_map(|t| identifiers(t))
        .filter(|id| !ring_symbol(ring, id) && xvars.index_of(id).is_none())
        .collect();
    ids.sort_by_key(|s| natural_key(s));
    ids.dedup();
    if ids.is_empty() {
        bail!("the polynomials do not involve any variable besides {xvars}");
    }
    Ok(VarSet::new(ids)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn variable_inference() {
        let z = Ring::integers();
        let v = infer_vars(&["x10 + x2*x1 + y"], &z, None).unwrap();
        assert_eq!(v.names(), ["x1", "x2", "x10", "y"]);
        let f4 = Ring::parse("GF(4)").unwrap();
        assert_eq!(infer_vars(&["t*x + 1"], &f4, None).unwrap().names(), ["x"]);
        assert_eq!(vars_from_flag("2").unwrap().names(), ["x1", "x2"]);
        let y = infer_yvars(&["y2 + y1*x".into()], &z, &VarSet::x(1)).unwrap();
        assert_eq!(y.names(), ["y1", "y2"]);
    }
}
