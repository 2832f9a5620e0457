//! Scripted experiments and their reports.
//!
//! Each run returns an [`ExperimentReport`]: a table of rows plus the
//! spec that produced it, the predicted asymptote where one exists, and
//! boolean flags that can be re-derived from the rows. Reports contain no
//! timestamps unless requested, so equal specs give byte-equal output.

mod render;
mod runs;

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::graphons::StepDocument;
use crate::{Error, Result};

pub use render::{render, render_csv, render_json, render_svg};
pub use runs::{
    parse_subject, run, run_ball_count, run_convergence, run_entropy_rate, run_growth, run_regularity,
    standard_corpus,
};

pub const REPORT_SCHEMA_VERSION: u32 = 1;

/// Inputs of one experiment. Graphons are stored as documents so a spec
/// can be replayed exactly.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ExperimentSpec {
    Growth {
        class: String,
        n_max: usize,
    },
    Convergence {
        class: String,
        maximizer: StepDocument,
        ns: Vec<usize>,
        samples: usize,
        seed: u64,
    },
    EntropyRate {
        graphon: StepDocument,
        n_max: usize,
    },
    BallCount {
        graphon: StepDocument,
        n: usize,
        deltas: Vec<f64>,
    },
    Regularity {
        subjects: Vec<String>,
        ks: Vec<usize>,
        seed: u64,
    },
}

/// Which series to draw and against which column.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Plot {
    pub x: String,
    pub y: Vec<String>,
    pub y_label: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub schema_version: u32,
    pub version: String,
    pub spec: ExperimentSpec,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
    pub plot: Plot,
    pub asymptote: Option<f64>,
    pub summary: BTreeMap<String, Value>,
    pub flags: BTreeMap<String, bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_clock_ms: Option<u64>,
}

impl ExperimentReport {
    pub(crate) fn new(spec: ExperimentSpec, columns: &[&str], plot: Plot) -> Self {
        ExperimentReport {
            schema_version: REPORT_SCHEMA_VERSION,
            version: crate::VERSION.to_string(),
            spec,
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            plot,
            asymptote: None,
            summary: BTreeMap::new(),
            flags: BTreeMap::new(),
            wall_clock_ms: None,
        }
    }

    /// Values of one column, `None` where a row holds a non-number.
    pub fn column(&self, name: &str) -> Option<Vec<Option<f64>>> {
        let idx = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[idx].as_f64()).collect())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let report: ExperimentReport = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        if report.schema_version != REPORT_SCHEMA_VERSION {
            return Err(Error::Format(format!(
                "unsupported report schema_version {}",
                report.schema_version
            )));
        }
        Ok(report)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Svg,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "svg" => Ok(Format::Svg),
            _ => Err(Error::domain(format!("unknown format `{s}` (expected json, csv or svg)"))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Svg => "svg",
        })
    }
}

/// Writes the report to `path` in the given format.
pub fn emit(report: &ExperimentReport, format: Format, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, render(report, format)).map_err(|e| Error::io(path, e))
}
