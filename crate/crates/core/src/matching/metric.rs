use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Correct and total object correspondences for one goal/real pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairCount {
    pub n_total: usize,
    pub n_acc: usize,
}

/// Mean over pairs of `n_acc / n_total`.
pub fn matching_accuracy(pairs: &[PairCount]) -> Result<f64> {
    if pairs.is_empty() {
        return Err(Error::MetricInput("no pairs to score".into()));
    }
    let mut sum = 0.0;
    for (i, p) in pairs.iter().enumerate() {
        if p.n_total == 0 {
            return Err(Error::MetricInput(format!("pair {i} has no objects")));
        }
        if p.n_acc > p.n_total {
            return Err(Error::MetricInput(format!(
                "pair {i} has {} correct of {}",
                p.n_acc, p.n_total
            )));
        }
        sum += p.n_acc as f64 / p.n_total as f64;
    }
    Ok(sum / pairs.len() as f64)
}
