//! One emitted report and its renderings.

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Status {
    Pass,
    /// A mathematical check failed; the string is the witness.
    Fail(String),
    /// Precision or iteration budget exhausted.
    Exhausted(String),
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub json: Value,
    pub table: String,
    pub csv: Vec<Vec<String>>,
    pub status: Status,
    pub elapsed_ms: u128,
}

impl Outcome {
    pub fn new(kind: &str, body: &impl Serialize) -> Self {
        let mut json = serde_json::to_value(body).expect("reports serialize");
        if let Value::Object(map) = &mut json {
            map.insert("kind".into(), Value::String(kind.into()));
        }
        Outcome {
            json,
            table: String::new(),
            csv: Vec::new(),
            status: Status::Pass,
            elapsed_ms: 0,
        }
    }

    pub fn table(mut self, t: String) -> Self {
        self.table = t;
        self
    }

    pub fn csv_row(mut self, row: Vec<String>) -> Self {
        self.csv.push(row);
        self
    }

    pub fn status(mut self, s: Status) -> Self {
        self.status = s;
        self
    }
}

/// Fixed CSV columns used by the grid commands.
pub const GRID_COLUMNS: [&str; 10] = [
    "variant",
    "k",
    "n",
    "ell",
    "verdict",
    "origin_multiplicity",
    "circle_count",
    "h_at_1",
    "schinzel_min",
    "elapsed_ms",
];

#[derive(Debug, Default)]
pub struct GridRow {
    pub variant: &'static str,
    pub k: u32,
    pub n: Option<u64>,
    pub ell: Option<u32>,
    pub verdict: String,
    pub origin_multiplicity: Option<usize>,
    pub circle_count: Option<usize>,
    pub h_at_1: Option<String>,
    pub schinzel_min: Option<String>,
}

impl GridRow {
    pub fn into_record(self) -> Vec<String> {
        let opt = |o: Option<String>| o.unwrap_or_default();
        vec![
            self.variant.to_string(),
            self.k.to_string(),
            opt(self.n.map(|v| v.to_string())),
            opt(self.ell.map(|v| v.to_string())),
            self.verdict,
            opt(self.origin_multiplicity.map(|v| v.to_string())),
            opt(self.circle_count.map(|v| v.to_string())),
            opt(self.h_at_1),
            opt(self.schinzel_min),
            String::new(),
        ]
    }
}
