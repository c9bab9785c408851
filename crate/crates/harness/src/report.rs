use crate::config::{ConfigEcho, Suite};
use serde::Serialize;
use std::fmt::Write;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FixtureRecord {
    pub name: String,
    pub kind: String,
    pub components: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "status")]
pub enum Status {
    ExactZero,
    /// A nonzero residual; `witness` is its first nonzero component.
    Nonzero {
        check: String,
        component: String,
        witness: String,
        #[serde(skip_serializing_if = "Option::is_none")]
        lhs: Option<String>,
        #[serde(skip_serializing_if = "Option::is_none")]
        rhs: Option<String>,
    },
    /// An inequality or nontriviality guard failed.
    Violated { check: String, witness: String },
    /// The engine refused, e.g. a trace condition under a mutation.
    Error { message: String },
    /// Floating-point cross-check; never counted as a failure.
    Advisory { check: String, agree: bool, detail: String },
    Skipped,
}

impl Status {
    pub fn is_failure(&self) -> bool {
        matches!(self, Status::Nonzero { .. } | Status::Violated { .. } | Status::Error { .. })
    }

    fn label(&self) -> &'static str {
        match self {
            Status::ExactZero => "exact-zero",
            Status::Nonzero { .. } => "nonzero",
            Status::Violated { .. } => "violated",
            Status::Error { .. } => "error",
            Status::Advisory { agree: true, .. } => "advisory-agree",
            Status::Advisory { agree: false, .. } => "advisory-disagree",
            Status::Skipped => "skipped",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseRecord {
    pub case: u64,
    pub fixtures: Vec<FixtureRecord>,
    #[serde(flatten)]
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Record {
    pub id: String,
    pub reference: String,
    pub suite: Suite,
    pub cases: Vec<CaseRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<f64>,
}

impl Record {
    pub fn failures(&self) -> usize {
        self.cases.iter().filter(|c| c.status.is_failure()).count()
    }

    pub fn passed(&self) -> bool {
        self.failures() == 0 && self.cases.iter().any(|c| !matches!(c.status, Status::Skipped))
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Summary {
    pub identities: usize,
    pub cases: usize,
    pub exact_zero: usize,
    pub nonzero: usize,
    pub violated: usize,
    pub errors: usize,
    pub advisory: usize,
    pub skipped: usize,
}

#[derive(Serialize)]
pub struct Report {
    pub config: ConfigEcho,
    pub records: Vec<Record>,
    pub summary: Summary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<f64>,
}

impl Report {
    pub fn new(config: ConfigEcho, records: Vec<Record>, wall_ms: Option<f64>) -> Report {
        let mut s = Summary { identities: records.len(), ..Summary::default() };
        for c in records.iter().flat_map(|r| &r.cases) {
            s.cases += 1;
            match c.status {
                Status::ExactZero => s.exact_zero += 1,
                Status::Nonzero { .. } => s.nonzero += 1,
                Status::Violated { .. } => s.violated += 1,
                Status::Error { .. } => s.errors += 1,
                Status::Advisory { .. } => s.advisory += 1,
                Status::Skipped => s.skipped += 1,
            }
        }
        Report { config, records, summary: s, wall_ms }
    }

    pub fn all_exact(&self) -> bool {
        self.summary.nonzero + self.summary.violated + self.summary.errors == 0
    }

    pub fn record(&self, id: &str) -> Option<&Record> {
        self.records.iter().find(|r| r.id == id)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        let c = &self.config;
        let _ = writeln!(out, "# Verification report\n");
        let _ = writeln!(out, "seed {} | degree {} | cutoff {} | cases {} | numeric {}", c.seed, c.degree, c.cutoff, c.cases, c.numeric);
        if let Some(m) = &c.mutation {
            let _ = writeln!(out, "\nmutation: `{m}`");
        }
        let s = &self.summary;
        let _ = writeln!(
            out,
            "\n{} identities, {} cases: {} exact-zero, {} nonzero, {} violated, {} errors, {} advisory, {} skipped\n",
            s.identities, s.cases, s.exact_zero, s.nonzero, s.violated, s.errors, s.advisory, s.skipped
        );
        let _ = writeln!(out, "| identity | suite | reference | result |");
        let _ = writeln!(out, "|---|---|---|---|");
        for r in &self.records {
            let result = if r.failures() > 0 { format!("FAIL ({}/{})", r.failures(), r.cases.len()) } else { format!("ok ({})", r.cases.len()) };
            let _ = writeln!(out, "| `{}` | {} | {} | {} |", r.id, r.suite, r.reference, result);
        }
        for r in self.records.iter().filter(|r| r.failures() > 0 || r.cases.iter().any(|c| matches!(c.status, Status::Advisory { .. }))) {
            let _ = writeln!(out, "\n## {}\n", r.id);
            for case in &r.cases {
                let _ = write!(out, "- case {}: {}", case.case, case.status.label());
                match &case.status {
                    Status::Nonzero { check, component, witness, lhs, rhs } => {
                        let _ = write!(out, " in `{check}` at {component}: `{witness}`");
                        if let (Some(l), Some(r)) = (lhs, rhs) {
                            let _ = write!(out, "\n  - lhs `{l}`\n  - rhs `{r}`");
                        }
                    }
                    Status::Violated { check, witness } => {
                        let _ = write!(out, " in `{check}`: `{witness}`");
                    }
                    Status::Error { message } => {
                        let _ = write!(out, ": {message}");
                    }
                    Status::Advisory { check, detail, .. } => {
                        let _ = write!(out, " in `{check}`: {detail}");
                    }
                    _ => {}
                }
                out.push('\n');
            }
        }
        out
    }
}
