//! The rearrangement plan and its canonical JSON form.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::Result;
use crate::matching::DepthAlignment;
use crate::types::{PixelPoint, PromptManifest, RigidTransform};

use super::config::Mode;

pub const PLAN_VERSION: u32 = 1;
pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Significant digits kept for every float in emitted JSON.
pub const SIGNIFICANT_DIGITS: usize = 9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridPoint {
    pub row: f64,
    pub col: f64,
}

impl From<PixelPoint> for GridPoint {
    fn from(p: PixelPoint) -> Self {
        Self {
            row: p.row,
            col: p.col,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlanMatch {
    pub goal_instance: usize,
    pub real_instance: usize,
    /// Moves the real instance onto the goal instance.
    pub transform: RigidTransform,
    pub residual: f64,
    pub rotation_observable: bool,
    /// Rounded centroid of the real instance.
    pub grasp_point: GridPoint,
    /// Where the grasp point lands in the goal image.
    pub place_point: GridPoint,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlanObject {
    pub word: String,
    pub matches: Vec<PlanMatch>,
    pub unmatched_goal: Vec<usize>,
    pub unmatched_real: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub goal_manifest: PromptManifest,
    pub real_manifest: PromptManifest,
    pub config_hash: String,
    pub engine_version: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub depth_alignment: Option<DepthAlignment>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Plan {
    pub version: u32,
    pub mode: Mode,
    pub objects: Vec<PlanObject>,
    pub provenance: Provenance,
}

impl Plan {
    pub fn object(&self, word: &str) -> Option<&PlanObject> {
        self.objects.iter().find(|o| o.word == word)
    }

    pub fn matches(&self) -> impl Iterator<Item = (&str, &PlanMatch)> {
        self.objects
            .iter()
            .flat_map(|o| o.matches.iter().map(move |m| (o.word.as_str(), m)))
    }

    /// Sorted keys, 9 significant digits, no negative zero.
    pub fn to_canonical_json(&self) -> Result<String> {
        to_canonical_json(self)
    }
}

/// Rounds `x` to `digits` significant digits.
pub fn round_significant(x: f64, digits: usize) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { 0.0 } else { x };
    }
    let r: f64 = format!("{:.*e}", digits - 1, x).parse().unwrap();
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

fn canonicalize(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = round_significant(n.as_f64().unwrap(), SIGNIFICANT_DIGITS);
            serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
        }
        Value::Array(a) => Value::Array(a.into_iter().map(canonicalize).collect()),
        Value::Object(m) => Value::Object(m.into_iter().map(|(k, v)| (k, canonicalize(v))).collect()),
        other => other,
    }
}

/// Pretty JSON with sorted object keys and floats at 9 significant digits.
pub fn to_canonical_json<T: Serialize>(value: &T) -> Result<String> {
    let v = canonicalize(serde_json::to_value(value)?);
    let mut s = serde_json::to_string_pretty(&v)?;
    s.push('\n');
    Ok(s)
}
