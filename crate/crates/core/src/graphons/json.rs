use serde::{Deserialize, Serialize};

use super::{parse_mass, StepFunction, StepGraphon};
use crate::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

/// On-disk form of a step function. Masses are exact `p/q` strings and
/// values are shortest round-trip decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StepDocument {
    pub schema_version: u32,
    pub measures: Vec<String>,
    pub values: Vec<Vec<String>>,
}

impl StepDocument {
    pub fn from_step_function(f: &StepFunction) -> Self {
        StepDocument {
            schema_version: SCHEMA_VERSION,
            measures: f.masses().iter().map(|m| m.to_string()).collect(),
            values: f
                .rows()
                .into_iter()
                .map(|r| r.into_iter().map(|v| v.to_string()).collect())
                .collect(),
        }
    }

    pub fn to_step_function(&self, range: (f64, f64)) -> Result<StepFunction> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::Format(format!(
                "unsupported schema_version {} (expected {SCHEMA_VERSION})",
                self.schema_version
            )));
        }
        let masses = self
            .measures
            .iter()
            .map(|m| parse_mass(m))
            .collect::<Result<Vec<_>>>()?;
        let values = self
            .values
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| {
                        v.trim()
                            .parse::<f64>()
                            .ok()
                            .filter(|x| x.is_finite())
                            .ok_or_else(|| Error::Format(format!("`{v}` is not a finite number")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        StepFunction::new(masses, values, range)
    }
}

pub fn to_json(w: &StepGraphon) -> String {
    serde_json::to_string_pretty(&StepDocument::from_step_function(w.as_step_function()))
        .expect("document serializes")
}

pub fn from_json(text: &str) -> Result<StepGraphon> {
    let doc: StepDocument = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    doc.to_step_function((0.0, 1.0)).map(StepGraphon::from_step_function)
}
