//! Report documents, printable as text or JSON.

use std::fmt::Write as _;

use serde::Serialize;

pub trait Report: Serialize {
    fn text(&self) -> String;
}

#[derive(Debug, Serialize)]
pub struct IntervalEntry {
    pub interval: String,
    pub vertices: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shape: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct IntervalsReport {
    pub count: usize,
    pub intervals: Vec<IntervalEntry>,
}

impl Report for IntervalsReport {
    fn text(&self) -> String {
        let mut out = String::new();
        for e in &self.intervals {
            match &e.shape {
                Some(s) => writeln!(out, "{}\t{s}", e.interval).unwrap(),
                None => writeln!(out, "{}", e.interval).unwrap(),
            }
        }
        out
    }
}

#[derive(Debug, Serialize)]
pub struct Multiplicity {
    pub interval: String,
    pub multiplicity: usize,
}

#[derive(Debug, Serialize)]
pub struct BettiEntry {
    pub degree: usize,
    pub interval: String,
    pub multiplicity: usize,
}

#[derive(Debug, Serialize)]
pub struct BettiQuery {
    pub interval: String,
    pub betti: Vec<usize>,
}

#[derive(Debug, Serialize)]
pub struct BettiReport {
    pub route: String,
    pub entries: Vec<BettiEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub query: Option<BettiQuery>,
}

impl Report for BettiReport {
    fn text(&self) -> String {
        let mut out = format!("route: {}\n", self.route);
        if let Some(q) = &self.query {
            let row: Vec<String> = q.betti.iter().map(usize::to_string).collect();
            writeln!(out, "β at {}: ({})", q.interval, row.join(", ")).unwrap();
        }
        writeln!(out, "degree\tinterval\tmultiplicity").unwrap();
        for e in &self.entries {
            writeln!(out, "{}\t{}\t{}", e.degree, e.interval, e.multiplicity).unwrap();
        }
        out
    }
}

#[derive(Debug, Serialize)]
pub struct KoszulComplexSummary {
    pub dims: Vec<usize>,
    pub homology: Vec<usize>,
}

#[derive(Debug, Serialize)]
pub struct KoszulReport {
    pub interval: String,
    pub degrees: Vec<Vec<Multiplicity>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub complex: Option<KoszulComplexSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub check: Option<bool>,
}

fn list(ms: &[Multiplicity]) -> String {
    let parts: Vec<String> = ms
        .iter()
        .map(|m| if m.multiplicity == 1 { m.interval.clone() } else { format!("{}^{}", m.interval, m.multiplicity) })
        .collect();
    format!("[{}]", parts.join(", "))
}

impl Report for KoszulReport {
    fn text(&self) -> String {
        let mut out = format!("Koszul coresolution of {}\n", self.interval);
        for (d, ms) in self.degrees.iter().enumerate() {
            writeln!(out, "X^{d}: {}", list(ms)).unwrap();
        }
        if let Some(c) = &self.complex {
            writeln!(out, "complex dims: {:?}", c.dims).unwrap();
            writeln!(out, "homology: {:?}", c.homology).unwrap();
        }
        if let Some(ok) = self.check {
            writeln!(out, "check: {}", if ok { "pass" } else { "fail" }).unwrap();
        }
        out
    }
}

#[derive(Debug, Serialize)]
pub struct DecompositionReport {
    pub decomposable: bool,
    pub summands: Vec<Multiplicity>,
}

impl Report for DecompositionReport {
    fn text(&self) -> String {
        if self.decomposable {
            format!("interval-decomposable: {}\n", list(&self.summands))
        } else {
            "not interval-decomposable\n".into()
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ReplacementEntry {
    pub interval: String,
    pub delta: i64,
    pub compressed: i64,
}

#[derive(Debug, Serialize)]
pub struct ReplacementReport {
    pub nonzero: Vec<ReplacementEntry>,
    pub all: Vec<ReplacementEntry>,
}

impl Report for ReplacementReport {
    fn text(&self) -> String {
        let mut out = String::from("nonzero δ:\n");
        for e in &self.nonzero {
            writeln!(out, "  {}\t{}", e.interval, e.delta).unwrap();
        }
        writeln!(out, "interval\tδ\tc").unwrap();
        for e in &self.all {
            writeln!(out, "{}\t{}\t{}", e.interval, e.delta, e.compressed).unwrap();
        }
        out
    }
}

#[derive(Debug, Serialize)]
pub struct NormalizedReport {
    pub module: String,
}

impl Report for NormalizedReport {
    fn text(&self) -> String {
        self.module.clone()
    }
}
