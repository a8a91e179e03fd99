//! From queries and keys to a per-word {0, 1, 2} representation and grasp points.
//!
//! cargo run --example attention_representation

use nalgebra::DMatrix;
use paca::attention::{
    aggregate_layers, build_representation, cross_attention_map, grasp_point, split_instances, token_map,
    AttentionInputs, DEFAULT_TAU_FINAL, DEFAULT_TAU_MID,
};

const SIDE: usize = 32;

// Two blobs attend to token 1 ("apple"); the background attends to token 0.
fn queries(sharp: f64) -> DMatrix<f64> {
    DMatrix::from_fn(SIDE * SIDE, 2, |i, j| {
        let (r, c) = ((i / SIDE) as f64, (i % SIDE) as f64);
        let near = |cr: f64, cc: f64, s: f64| (-((r - cr).powi(2) + (c - cc).powi(2)) / (2.0 * s * s)).exp();
        let object = near(9.0, 10.0, 3.0 * sharp).max(near(22.0, 23.0, 2.5 * sharp));
        if j == 0 { 4.0 * object } else { 4.0 * (1.0 - object) }
    })
}

fn main() -> paca::Result<()> {
    let keys = DMatrix::from_row_slice(2, 2, &[0.0, 2.0, 2.0, 0.0]);
    let mut maps = Vec::new();
    for sharp in [1.6, 1.0] {
        let inp = AttentionInputs {
            q: queries(sharp),
            k: keys.clone(),
            v: DMatrix::identity(2, 2),
        };
        let m = cross_attention_map(&inp)?;
        maps.push(aggregate_layers(&[token_map(&m, &[1], (SIDE, SIDE))?], (64, 64))?);
    }

    let rep = build_representation("apple", &maps[0], &maps[1], DEFAULT_TAU_MID, DEFAULT_TAU_FINAL)?;
    println!(
        "region {} px, feature-rich {} px",
        rep.count_at_least(1),
        rep.count_at_least(2)
    );
    for (i, inst) in split_instances(&rep, 25).iter().enumerate() {
        let g = grasp_point(inst)?;
        println!("instance {i}: {} px, grasp at ({}, {})", inst.count_at_least(1), g.row, g.col);
    }
    Ok(())
}
