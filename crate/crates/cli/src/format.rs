//! JSON instance files.
//!
//! ```json
//! {
//!   "nodes": 3,
//!   "unary": [[10, 0], [10, 0], [0, 0.5]],
//!   "hyperedges": [{ "members": [0, 1, 2], "g": { "kind": "table", "values": [0, 1] } }]
//! }
//! ```
//!
//! `unary[v]` is `[cost of label 0, cost of label 1]`. Floats are written in
//! shortest round-trip form, so a written file reads back value-exact.

use labelcut::{Hyperedge, Instance};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gspec::FunctionSpecRecord;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub nodes: usize,
    pub unary: Vec<[f64; 2]>,
    #[serde(default)]
    pub hyperedges: Vec<HyperedgeRecord>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HyperedgeRecord {
    pub members: Vec<usize>,
    pub g: FunctionSpecRecord,
}

#[derive(Debug, Error, PartialEq)]
pub enum FormatError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("semantic error in {location}: {message}")]
    Semantic { location: String, message: String },
}

fn semantic(location: impl Into<String>, message: impl Into<String>) -> FormatError {
    FormatError::Semantic { location: location.into(), message: message.into() }
}

impl InstanceFile {
    pub fn to_instance(&self) -> Result<Instance, FormatError> {
        if self.nodes == 0 {
            return Err(semantic("nodes", "must be at least 1"));
        }
        if self.unary.len() != self.nodes {
            return Err(semantic(
                "unary",
                format!("has {} entries, expected {}", self.unary.len(), self.nodes),
            ));
        }
        let mut edges = Vec::with_capacity(self.hyperedges.len());
        for (i, h) in self.hyperedges.iter().enumerate() {
            let at = |field: &str| format!("hyperedges[{i}].{field}");
            if h.members.len() < 2 {
                return Err(semantic(at("members"), "needs at least 2 members"));
            }
            if let Some(m) = h.members.iter().find(|&&m| m >= self.nodes) {
                return Err(semantic(
                    at("members"),
                    format!("id {m} out of range for {} nodes", self.nodes),
                ));
            }
            for (j, m) in h.members.iter().enumerate() {
                if h.members[..j].contains(m) {
                    return Err(semantic(at("members"), format!("duplicate member {m}")));
                }
            }
            let spec = h.g.to_spec(h.members.len()).map_err(|e| semantic(at("g"), e.to_string()))?;
            edges.push(Hyperedge::new(h.members.clone(), spec));
        }
        Instance::new(self.unary.clone(), edges).map_err(|e| semantic("instance", e.to_string()))
    }

    pub fn from_instance(inst: &Instance) -> Self {
        InstanceFile {
            nodes: inst.num_nodes(),
            unary: inst.unary().to_vec(),
            hyperedges: inst
                .hyperedges()
                .iter()
                .map(|h| HyperedgeRecord {
                    members: h.members.clone(),
                    g: FunctionSpecRecord::from_spec(&h.spec),
                })
                .collect(),
        }
    }
}

pub fn parse_instance(text: &str) -> Result<Instance, FormatError> {
    let file: InstanceFile = serde_json::from_str(text).map_err(|e| FormatError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    file.to_instance()
}

pub fn serialize_instance(inst: &Instance) -> String {
    serde_json::to_string_pretty(&InstanceFile::from_instance(inst)).expect("finite floats")
}
