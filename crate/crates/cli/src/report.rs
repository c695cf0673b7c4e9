//! Structured text reports: a command echo, input digests, per-check
//! records, and an overall status. Rendering is deterministic, so a report
//! for fixed inputs and seed is byte-identical across runs.

use std::fmt;

/// Outcome of a single check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Pass => write!(f, "PASS"),
            Verdict::Fail => write!(f, "FAIL"),
        }
    }
}

/// One check: a name, a stable anchor slug, a verdict, and one line of
/// supporting data.
#[derive(Clone, Debug)]
pub struct Record {
    pub name: String,
    pub anchor: String,
    pub verdict: Verdict,
    pub data: String,
}

/// A full report for one command invocation.
#[derive(Clone, Debug)]
pub struct Report {
    command: String,
    inputs: Vec<(String, String)>,
    seed: Option<u64>,
    records: Vec<Record>,
}

impl Report {
    /// Starts a report echoing the invocation.
    pub fn new(command: String) -> Report {
        Report {
            command,
            inputs: Vec::new(),
            seed: None,
            records: Vec::new(),
        }
    }

    /// Registers an input file and its content digest.
    pub fn input(&mut self, path: &str, sha256_hex: &str) {
        self.inputs.push((path.to_string(), sha256_hex.to_string()));
    }

    /// Registers the seed a randomized command ran under.
    pub fn seed(&mut self, seed: u64) {
        self.seed = Some(seed);
    }

    /// Appends a record; data is flattened to a single line.
    pub fn push(&mut self, name: &str, anchor: &str, pass: bool, data: String) {
        self.records.push(Record {
            name: name.to_string(),
            anchor: anchor.to_string(),
            verdict: if pass { Verdict::Pass } else { Verdict::Fail },
            data: data.replace('\n', "; "),
        });
    }

    /// The records so far.
    pub fn records(&self) -> &[Record] {
        &self.records
    }

    /// True when every record passed.
    pub fn all_pass(&self) -> bool {
        self.records.iter().all(|r| r.verdict == Verdict::Pass)
    }

    /// The report as text, ending in a newline.
    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("command: {}\n", self.command));
        for (path, digest) in &self.inputs {
            out.push_str(&format!("input {path}: sha256 {digest}\n"));
        }
        if let Some(seed) = self.seed {
            out.push_str(&format!("seed: {seed}\n"));
        }
        for r in &self.records {
            out.push_str(&format!("record: {}\n", r.name));
            out.push_str(&format!("  anchor: {}\n", r.anchor));
            out.push_str(&format!("  verdict: {}\n", r.verdict));
            out.push_str(&format!("  data: {}\n", r.data));
        }
        let status = if self.all_pass() { "PASS" } else { "FAIL" };
        out.push_str(&format!("status: {status}\n"));
        out
    }
}
