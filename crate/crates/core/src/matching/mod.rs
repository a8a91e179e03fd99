//! Object matching between goal and real representations.
//!
//! Per word, every goal instance is registered against every real instance
//! with ICP, then a minimum-total-residual one-to-one assignment picks the
//! pairing. Transforms map the real instance onto the goal instance.

mod assignment;
mod depth;
mod icp;
mod metric;
mod nearest;

pub use assignment::{assignment_cost, min_cost_assignment};
pub use depth::{alignment_loss, depth_align, lift_to_6dof, DepthAlignment, Intrinsics};
pub use icp::{
    fit_rigid, icp_align, icp_best_of, initial_guesses, principal_pose, register, IcpOptions,
    IcpOutcome, PointSet,
};
pub use metric::{matching_accuracy, PairCount};
pub use nearest::KdTree;

use serde::{Deserialize, Serialize};

use crate::attention::Representation;
use crate::error::{Error, Result};
use crate::types::{PixelPoint, RigidTransform};

/// Region pixels (value >= 1).
pub const LEVEL_REGION: u8 = 1;
/// Feature-rich pixels (value 2).
pub const LEVEL_FEATURE: u8 = 2;

/// Pixels at or above `level`, in row-major order.
pub fn to_point_set(rep: &Representation, level: u8) -> Result<PointSet> {
    let points: Vec<PixelPoint> = rep
        .pixels_at_least(level)
        .map(|(r, c)| PixelPoint::new(r as f64, c as f64))
        .collect();
    if points.is_empty() {
        return Err(Error::EmptyRepresentation);
    }
    Ok(PointSet::new(points))
}

/// Centroid and principal-axis orientation of the region support.
pub fn initial_pose(rep: &Representation) -> Result<RigidTransform> {
    let set = to_point_set(rep, LEVEL_REGION)?;
    principal_pose(&set.points).ok_or(Error::EmptyRepresentation)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatchResult {
    pub word: String,
    pub goal_instance: usize,
    pub real_instance: usize,
    /// Maps the real instance onto the goal instance.
    pub transform: RigidTransform,
    pub residual: f64,
    pub rotation_observable: bool,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Assignment {
    pub matches: Vec<MatchResult>,
    pub unmatched_goal: Vec<usize>,
    pub unmatched_real: Vec<usize>,
}

impl Assignment {
    pub fn total_residual(&self) -> f64 {
        self.matches.iter().map(|m| m.residual).sum()
    }
}

/// Registers one real instance onto one goal instance.
///
/// ICP runs on pixels at `point_level`, falling back to the region when
/// either side has no pixels at that level. Initial guesses come from the
/// region centroids and principal axes.
pub fn register_instances(
    goal: &Representation,
    real: &Representation,
    point_level: u8,
    opts: &IcpOptions,
) -> Result<IcpOutcome> {
    let goal_pose = initial_pose(goal)?;
    let real_pose = initial_pose(real)?;
    let (src, dst) = match (to_point_set(real, point_level), to_point_set(goal, point_level)) {
        (Ok(s), Ok(d)) => (s, d),
        _ => (to_point_set(real, LEVEL_REGION)?, to_point_set(goal, LEVEL_REGION)?),
    };
    icp_best_of(&src, &dst, &initial_guesses(&real_pose, &goal_pose), opts)
}

/// One-to-one pairing of goal and real instances of the same word.
pub fn assign_instances(
    goal: &[Representation],
    real: &[Representation],
    point_level: u8,
    opts: &IcpOptions,
) -> Result<Assignment> {
    if goal.is_empty() || real.is_empty() {
        return Ok(Assignment {
            matches: Vec::new(),
            unmatched_goal: (0..goal.len()).collect(),
            unmatched_real: (0..real.len()).collect(),
        });
    }
    let mut outcomes = Vec::with_capacity(goal.len());
    for g in goal {
        let row = real
            .iter()
            .map(|r| register_instances(g, r, point_level, opts))
            .collect::<Result<Vec<_>>>()?;
        outcomes.push(row);
    }
    let cost: Vec<Vec<f64>> = outcomes
        .iter()
        .map(|row| row.iter().map(|o| o.residual).collect())
        .collect();
    let pairs = min_cost_assignment(&cost);

    let matches = pairs
        .iter()
        .map(|&(gi, ri)| {
            let o = &outcomes[gi][ri];
            MatchResult {
                word: goal[gi].word.clone(),
                goal_instance: gi,
                real_instance: ri,
                transform: o.transform,
                residual: o.residual,
                rotation_observable: o.rotation_observable,
            }
        })
        .collect();
    Ok(Assignment {
        matches,
        unmatched_goal: (0..goal.len()).filter(|g| !pairs.iter().any(|p| p.0 == *g)).collect(),
        unmatched_real: (0..real.len()).filter(|r| !pairs.iter().any(|p| p.1 == *r)).collect(),
    })
}
