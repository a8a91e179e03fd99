//! Matching accuracy over a labeled dataset: the `eval` command.
//!
//! `<dataset_dir>/dataset.json`:
//!
//! ```json
//! {"pairs": [{"scene": "dining", "goal": "p0/goal.paca", "real": "p0/real.paca",
//!             "ground_truth": [{"word": "mug", "goal_instance": 0, "real_instance": 1}]}]}
//! ```
//!
//! Paths are relative to the dataset directory. Depth paths (`goal_depth`,
//! `real_depth`) are optional and only read in 6dof mode.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matching::{matching_accuracy, PairCount};

use super::config::RunConfig;
use super::dump::read_dump;
use super::io::{read_depth_png, write_text};
use super::plan::{to_canonical_json, Plan};
use super::scene::{match_stacks, DepthInputs};

pub const DATASET_FILE: &str = "dataset.json";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroundTruth {
    pub word: String,
    pub goal_instance: usize,
    pub real_instance: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatasetPair {
    pub scene: String,
    pub goal: PathBuf,
    pub real: PathBuf,
    #[serde(default)]
    pub goal_depth: Option<PathBuf>,
    #[serde(default)]
    pub real_depth: Option<PathBuf>,
    pub ground_truth: Vec<GroundTruth>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Dataset {
    pub pairs: Vec<DatasetPair>,
}

impl Dataset {
    pub fn load(dir: &Path) -> Result<Self> {
        let path = dir.join(DATASET_FILE);
        let text = fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
        let ds: Dataset = serde_json::from_str(&text)
            .map_err(|e| Error::DatasetFormat(format!("{}: {e}", path.display())))?;
        ds.validate()?;
        Ok(ds)
    }

    pub fn validate(&self) -> Result<()> {
        if self.pairs.is_empty() {
            return Err(Error::DatasetFormat("dataset lists no pairs".into()));
        }
        for (i, p) in self.pairs.iter().enumerate() {
            if p.ground_truth.is_empty() {
                return Err(Error::DatasetFormat(format!("pair {i} has no ground truth")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairReport {
    pub scene: String,
    pub goal: PathBuf,
    pub real: PathBuf,
    pub n_total: usize,
    pub n_acc: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvalReport {
    pub overall: f64,
    pub scenes: BTreeMap<String, f64>,
    pub pairs: Vec<PairReport>,
}

/// Counts ground-truth correspondences reproduced by the plan.
pub fn score_plan(plan: &Plan, truth: &[GroundTruth]) -> PairCount {
    let n_acc = truth
        .iter()
        .filter(|g| {
            plan.matches().any(|(w, m)| {
                w == g.word && m.goal_instance == g.goal_instance && m.real_instance == g.real_instance
            })
        })
        .count();
    PairCount {
        n_total: truth.len(),
        n_acc,
    }
}

/// Per-scene and overall accuracy from scored pairs.
pub fn summarize(pairs: Vec<PairReport>) -> Result<EvalReport> {
    let counts = |it: &mut dyn Iterator<Item = &PairReport>| -> Vec<PairCount> {
        it.map(|p| PairCount {
            n_total: p.n_total,
            n_acc: p.n_acc,
        })
        .collect()
    };
    let overall = matching_accuracy(&counts(&mut pairs.iter()))?;
    let mut scenes = BTreeMap::new();
    for p in &pairs {
        if !scenes.contains_key(&p.scene) {
            let acc = matching_accuracy(&counts(&mut pairs.iter().filter(|q| q.scene == p.scene)))?;
            scenes.insert(p.scene.clone(), acc);
        }
    }
    Ok(EvalReport {
        overall,
        scenes,
        pairs,
    })
}

/// Runs `match` on every pair of the dataset and writes the accuracy report to `out`.
pub fn cmd_eval(dataset_dir: &Path, config: &RunConfig, out: &Path) -> Result<EvalReport> {
    let ds = Dataset::load(dataset_dir)?;
    let mut reports = Vec::with_capacity(ds.pairs.len());
    for pair in &ds.pairs {
        let goal = read_dump(&dataset_dir.join(&pair.goal))?;
        let real = read_dump(&dataset_dir.join(&pair.real))?;
        let depth = match (&pair.goal_depth, &pair.real_depth) {
            (Some(g), Some(r)) => Some(DepthInputs {
                goal_estimate: read_depth_png(&dataset_dir.join(g))?,
                real: read_depth_png(&dataset_dir.join(r))?,
            }),
            _ => None,
        };
        let plan = match_stacks(&goal, &real, config, depth.as_ref())?.plan;
        let count = score_plan(&plan, &pair.ground_truth);
        log::info!(
            "{} {}: {}/{} correct",
            pair.scene,
            pair.goal.display(),
            count.n_acc,
            count.n_total
        );
        reports.push(PairReport {
            scene: pair.scene.clone(),
            goal: pair.goal.clone(),
            real: pair.real.clone(),
            n_total: count.n_total,
            n_acc: count.n_acc,
        });
    }
    let report = summarize(reports)?;
    write_text(out, &to_canonical_json(&report)?)?;
    Ok(report)
}
