//! The JSON run report: input summary, result, per-stage timings in
//! nanoseconds, the optional recursion trace, and the optional verification
//! verdict.

use std::collections::BTreeMap;

use serde::Serialize;

use ordinary_core::plane::{Color, Point2};
use ordinary_core::pseudolines::TriangleState;
use ordinary_core::scalar::format_scalar;
use ordinary_core::PointD;

#[derive(Debug, Serialize)]
pub struct InputSummary {
    pub kind: &'static str,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
}

#[derive(Debug, Default, Serialize)]
pub struct ResultBlock {
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub point: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witnesses: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub provenance: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub color: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct TraceStep {
    pub step: usize,
    pub apex: [String; 2],
    pub left: [String; 2],
    pub right: [String; 2],
    pub probe: [String; 2],
    pub base: usize,
    pub left_side: usize,
    pub right_side: usize,
    pub probe_line: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub divider: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected_color: Option<String>,
    pub used_dividers: Vec<usize>,
}

#[derive(Debug, Serialize)]
pub struct Verification {
    pub verdict: &'static str,
    pub incident: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub input: InputSummary,
    pub result: ResultBlock,
    pub timings_ns: BTreeMap<&'static str, u128>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<TraceStep>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verification: Option<Verification>,
}

pub fn point2_strings(p: &Point2) -> Vec<String> {
    vec![format_scalar(&p.x), format_scalar(&p.y)]
}

pub fn pointd_strings(p: &PointD) -> Vec<String> {
    p.coords.iter().map(format_scalar).collect()
}

fn pair(p: &Point2) -> [String; 2] {
    [format_scalar(&p.x), format_scalar(&p.y)]
}

pub fn trace_steps(trace: &[TriangleState]) -> Vec<TraceStep> {
    trace
        .iter()
        .map(|s| TraceStep {
            step: s.step,
            apex: pair(&s.apex),
            left: pair(&s.left_pt),
            right: pair(&s.right_pt),
            probe: pair(&s.probe),
            base: s.base,
            left_side: s.left_side,
            right_side: s.right_side,
            probe_line: s.probe_line,
            divider: s.divider,
            expected_color: s.expected_color.map(|c: Color| c.to_string()),
            used_dividers: s.used_dividers.clone(),
        })
        .collect()
}
