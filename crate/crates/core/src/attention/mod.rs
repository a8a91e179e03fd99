//! Cross-attention maps and the per-word object representation built from
//! them.

mod representation;
mod stack;

pub use representation::{
    build_representation, grasp_point, split_instances, Representation, DEFAULT_TAU_FINAL,
    DEFAULT_TAU_MID,
};
pub use stack::{select_final_timestep, select_mid_timestep, AttentionStack};

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::raster::{bilinear_resize, minmax_normalize, validate_raster, Raster2D};

/// Projected queries, keys and values for one attention layer.
///
/// `q` is `N_pix x d`, `k` is `N_tok x d`, `v` is `N_tok x d_v`.
#[derive(Debug, Clone)]
pub struct AttentionInputs {
    pub q: DMatrix<f64>,
    pub k: DMatrix<f64>,
    pub v: DMatrix<f64>,
}

/// Row-wise softmax of `Q K^T / sqrt(d)`; one probability row per pixel.
pub fn cross_attention_map(inp: &AttentionInputs) -> Result<DMatrix<f64>> {
    let d = inp.q.ncols();
    if d == 0 {
        return Err(Error::Dimension("key dimension must be at least 1".into()));
    }
    if inp.k.ncols() != d {
        return Err(Error::Dimension(format!(
            "queries have dimension {d}, keys have {}",
            inp.k.ncols()
        )));
    }
    let mut logits = &inp.q * inp.k.transpose() / (d as f64).sqrt();
    for mut row in logits.row_iter_mut() {
        let max = row.max();
        row.apply(|x| *x = (*x - max).exp());
        let sum = row.sum();
        row /= sum;
    }
    Ok(logits)
}

/// `M V`.
pub fn apply_attention(m: &DMatrix<f64>, v: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    if m.ncols() != v.nrows() {
        return Err(Error::Dimension(format!(
            "attention has {} token columns, values have {} rows",
            m.ncols(),
            v.nrows()
        )));
    }
    Ok(m * v)
}

/// Mean of the selected token columns, reshaped row-major to `shape`.
pub fn token_map(m: &DMatrix<f64>, token_indices: &[usize], shape: (usize, usize)) -> Result<Raster2D> {
    if token_indices.is_empty() {
        return Err(Error::EmptyInput("no token indices"));
    }
    if let Some(&index) = token_indices.iter().find(|&&i| i >= m.ncols()) {
        return Err(Error::Index {
            index,
            len: m.ncols(),
        });
    }
    if shape.0 * shape.1 != m.nrows() {
        return Err(Error::Shape(format!(
            "{} pixel rows cannot form a {}x{} raster",
            m.nrows(),
            shape.0,
            shape.1
        )));
    }
    let n = token_indices.len() as f64;
    let values = (0..m.nrows())
        .map(|p| token_indices.iter().map(|&t| m[(p, t)]).sum::<f64>() / n)
        .collect();
    Raster2D::new(shape.0, shape.1, values)
}

/// Resizes each layer map to `target`, averages them, then min-max normalizes.
pub fn aggregate_layers(per_layer_maps: &[Raster2D], target: (usize, usize)) -> Result<Raster2D> {
    if per_layer_maps.is_empty() {
        return Err(Error::EmptyInput("no layer maps to aggregate"));
    }
    let mut acc = vec![0.0; target.0 * target.1];
    for map in per_layer_maps {
        let resized = bilinear_resize(map, target.0, target.1)?;
        for (a, v) in acc.iter_mut().zip(resized.values()) {
            *a += v;
        }
    }
    let n = per_layer_maps.len() as f64;
    acc.iter_mut().for_each(|a| *a /= n);
    Ok(minmax_normalize(&Raster2D::new(target.0, target.1, acc)?))
}

/// Heaviside threshold: 1 where the value is at least `tau`, else 0.
pub fn step_threshold(r: &Raster2D, tau: f64) -> Result<Raster2D> {
    let r = validate_raster(r.clone(), 0.0, 1.0)?;
    Ok(r.map(|v| if v >= tau { 1.0 } else { 0.0 }))
}
