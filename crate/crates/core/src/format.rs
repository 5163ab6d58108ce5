//! JSON interchange records.
//!
//! A shadow file looks like
//!
//! ```json
//! {"version":1,
//!  "arcs":[{"id":0,"polygon":0}, ...],
//!  "vertices":[{"id":0,"rotation":[[0,"head"],[1,"tail"],[1,"head"],[0,"tail"]],
//!               "transitions":[[0,1],[1,0]],"sign":1}],
//!  "polygons":[{"id":0,"sides":[0],"corners":[{"vertex":0,"neighbor":1,"nested":false}]}],
//!  "traversal":[0,1],
//!  "outer":{"arc":0,"side":"right"},
//!  "embedding":{"domain_side":{"0":"left"}}}
//! ```
//!
//! `rotation` lists the four arc ends counterclockwise. `corners[i]` is the
//! double point where `sides[i]` ends and `sides[(i+1) % k]` begins. `sign`,
//! `nested` and `embedding` are optional; when present they are checked
//! against the values derived from the rotation system.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Result, ShadowError};
use crate::model::{End, Side};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShadowFile {
    pub version: u32,
    pub arcs: Vec<ArcRecord>,
    pub vertices: Vec<VertexRecord>,
    pub polygons: Vec<PolygonRecord>,
    pub traversal: Vec<u32>,
    pub outer: OuterRecord,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub embedding: Option<EmbeddingRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArcRecord {
    pub id: u32,
    pub polygon: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexRecord {
    pub id: u32,
    pub rotation: Vec<(u32, End)>,
    pub transitions: Vec<(u32, u32)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sign: Option<i8>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolygonRecord {
    pub id: u32,
    pub sides: Vec<u32>,
    pub corners: Vec<CornerRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CornerRecord {
    pub vertex: u32,
    pub neighbor: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nested: Option<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OuterRecord {
    pub arc: u32,
    pub side: Side,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EmbeddingRecord {
    pub domain_side: BTreeMap<u32, Side>,
}

impl ShadowFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| ShadowError::Schema(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("shadow records always serialize")
    }

    /// Drops every derived field (signs, nesting bits, domain sides).
    pub fn strip_derived(&mut self) {
        self.embedding = None;
        for v in &mut self.vertices {
            v.sign = None;
        }
        for p in &mut self.polygons {
            for c in &mut p.corners {
                c.nested = None;
            }
        }
    }
}

/// Certificate: one bit per arc plus a budget.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateFile {
    pub coorientation: BTreeMap<u32, CoBit>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<i64>,
}

/// Textual bit used in certificate files.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CoBit {
    Out,
    In,
}

impl CertificateFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| ShadowError::Schema(e.to_string()))
    }
}
