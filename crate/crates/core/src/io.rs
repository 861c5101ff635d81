//! Presentation files and the versioned JSON envelope.
//!
//! A presentation file is a JSON object
//!
//! ```text
//! {
//!   "ring": {"r": 2, "d": 2, "names": ["t1", "t2"]},
//!   "generators": [0],
//!   "relation_generators": [2, 2],
//!   "matrix": [["t1", "t2"]]
//! }
//! ```
//!
//! with one matrix row per generator and one column per relation. `names`
//! may be omitted.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::modfree::ModulePresentation;
use crate::ring::RingSpec;

/// Schema version stamped on every JSON document we emit.
pub const FORMAT: u32 = 1;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RingJson {
    r: usize,
    d: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    names: Option<Vec<String>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PresentationJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    format: Option<u32>,
    ring: RingJson,
    generators: Vec<i64>,
    #[serde(default)]
    relation_generators: Vec<i64>,
    #[serde(default)]
    matrix: Vec<Vec<String>>,
}

fn json_error(text: &str, e: &serde_json::Error) -> Error {
    let offset = text
        .split_inclusive('\n')
        .take(e.line().saturating_sub(1))
        .map(str::len)
        .sum::<usize>()
        + e.column().saturating_sub(1);
    Error::Parse { offset, message: e.to_string() }
}

pub fn parse_ring(r: usize, d: u32, names: Option<Vec<String>>) -> Result<RingSpec> {
    match names {
        Some(n) => RingSpec::with_names(r, d, n),
        None => RingSpec::new(r, d),
    }
}

pub fn read_presentation(text: &str) -> Result<ModulePresentation> {
    let p: PresentationJson = serde_json::from_str(text).map_err(|e| json_error(text, &e))?;
    if let Some(f) = p.format {
        if f != FORMAT {
            return Err(Error::Format(format!("unsupported format version {f}")));
        }
    }
    let ring = parse_ring(p.ring.r, p.ring.d, p.ring.names)?;
    let ncols = p.relation_generators.len();
    let mut matrix = p.matrix;
    if matrix.is_empty() && ncols == 0 {
        matrix = vec![Vec::new(); p.generators.len()];
    }
    if matrix.len() != p.generators.len() {
        return Err(Error::Format(format!(
            "matrix has {} rows but there are {} generators",
            matrix.len(),
            p.generators.len()
        )));
    }
    let mut rows = Vec::with_capacity(matrix.len());
    for (i, row) in matrix.iter().enumerate() {
        if row.len() != ncols {
            return Err(Error::Format(format!("matrix row {i} has {} entries, expected {ncols}", row.len())));
        }
        let parsed = row
            .iter()
            .enumerate()
            .map(|(j, s)| {
                ring.parse(s).map_err(|e| Error::Format(format!("matrix[{i}][{j}]: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(parsed);
    }
    ModulePresentation::from_parts(ring, p.generators, p.relation_generators, rows)
}

pub fn write_presentation(m: &ModulePresentation) -> String {
    let ring = m.ring();
    let rel = m.relations();
    let matrix = rel
        .entries()
        .iter()
        .map(|row| row.iter().map(|p| p.display(ring).to_string()).collect())
        .collect();
    let doc = PresentationJson {
        format: Some(FORMAT),
        ring: RingJson { r: ring.r(), d: ring.d(), names: Some(ring.names().to_vec()) },
        generators: m.generators().degrees().to_vec(),
        relation_generators: m.relation_generators().degrees().to_vec(),
        matrix,
    };
    serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
}

/// `{"format": 1, "command": ..., "result": ...}`.
pub fn envelope(command: &str, result: Value) -> Value {
    json!({ "format": FORMAT, "command": command, "result": result })
}
