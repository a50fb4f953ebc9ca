//! Suite reports and their JSON/text encodings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Serialize, Serializer};

use crate::scalar::{fmt_q, Q};

/// Serializes a rational as the string `p/q`.
pub fn ser_q<S: Serializer>(x: &Q, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_q(x))
}

/// One checked identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub lhs: String,
    pub rhs: String,
    pub state: String,
    pub pass: bool,
    /// `lhs - rhs` (a state or a scalar) when the check fails.
    pub residual: Option<String>,
}

impl Check {
    pub fn new(lhs: impl Into<String>, rhs: impl Into<String>, state: impl Into<String>, residual: Option<String>) -> Self {
        Self { lhs: lhs.into(), rhs: rhs.into(), state: state.into(), pass: residual.is_none(), residual }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub suite: String,
    pub params: BTreeMap<String, String>,
    pub checks: Vec<Check>,
    pub passed: usize,
    pub failed: usize,
}

impl CheckReport {
    pub fn new(suite: &str, params: BTreeMap<String, String>, checks: Vec<Check>) -> Self {
        let failed = checks.iter().filter(|c| !c.pass).count();
        Self { suite: suite.into(), params, passed: checks.len() - failed, failed, checks }
    }

    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Format {
    Text,
    Json,
}

/// Reports with at most this many checks list every row in text form.
const TEXT_FULL_LIMIT: usize = 500;

pub fn emit_report(rep: &CheckReport, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string(rep).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Text => emit_text(rep),
    }
}

fn emit_text(rep: &CheckReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "suite: {}", rep.suite);
    for (k, v) in &rep.params {
        let _ = writeln!(out, "  {k} = {v}");
    }
    let full = rep.checks.len() <= TEXT_FULL_LIMIT;
    let rows: Vec<&Check> = rep.checks.iter().filter(|c| full || !c.pass).collect();
    if !rows.is_empty() {
        let w_lhs = rows.iter().map(|c| c.lhs.len()).max().unwrap_or(0).max(3);
        let w_rhs = rows.iter().map(|c| c.rhs.len()).max().unwrap_or(0).max(3);
        let w_st = rows.iter().map(|c| c.state.len()).max().unwrap_or(0).max(5);
        let _ = writeln!(out, "{:<4}  {:<w_lhs$}  {:<w_rhs$}  {:<w_st$}  residual", "ok", "lhs", "rhs", "state");
        for c in rows {
            let _ = writeln!(
                out,
                "{:<4}  {:<w_lhs$}  {:<w_rhs$}  {:<w_st$}  {}",
                if c.pass { "pass" } else { "FAIL" },
                c.lhs,
                c.rhs,
                c.state,
                c.residual.as_deref().unwrap_or("")
            );
        }
    }
    if !full {
        let _ = writeln!(out, "({} passing rows omitted)", rep.passed);
    }
    let _ = writeln!(out, "passed: {}  failed: {}", rep.passed, rep.failed);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_report_json() {
        let rep = CheckReport::new("x", BTreeMap::new(), vec![]);
        assert_eq!(
            emit_report(&rep, Format::Json),
            "{\"suite\":\"x\",\"params\":{},\"checks\":[],\"passed\":0,\"failed\":0}\n"
        );
    }

    #[test]
    fn failing_check_has_residual() {
        let rep = CheckReport::new("x", BTreeMap::new(), vec![Check::new("a", "b", "vacuum", Some("-1/2".into()))]);
        let js = emit_report(&rep, Format::Json);
        assert!(js.contains("\"checks\":[{\"lhs\":\"a\",\"rhs\":\"b\",\"state\":\"vacuum\",\"pass\":false,\"residual\":\"-1/2\"}]"));
        assert!(js.ends_with("\"passed\":0,\"failed\":1}\n"));
        assert!(emit_report(&rep, Format::Text).contains("FAIL"));
    }
}
