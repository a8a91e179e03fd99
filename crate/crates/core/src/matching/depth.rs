//! Scale-and-shift alignment of estimated depth to measured depth, and the
//! lift of planar transforms to metric ones.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::raster::Raster2D;
use crate::types::{Frame, PixelPoint, RigidTransform};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DepthAlignment {
    pub scale: f64,
    pub shift: f64,
    /// Mean squared error over the masked pixels at the fitted parameters.
    pub residual: f64,
}

impl DepthAlignment {
    pub fn apply(&self, d: f64) -> f64 {
        self.scale * d + self.shift
    }
}

/// Pinhole camera intrinsics in pixels.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Intrinsics {
    pub fx: f64,
    pub fy: f64,
    pub cx: f64,
    pub cy: f64,
}

fn masked_pairs<'a>(
    d_est: &'a Raster2D,
    d_real: &'a Raster2D,
    mask: &'a Raster2D,
) -> Result<impl Iterator<Item = (f64, f64)> + 'a> {
    if d_est.shape() != d_real.shape() || d_est.shape() != mask.shape() {
        return Err(Error::Shape(format!(
            "estimated {:?}, measured {:?} and mask {:?} depth rasters differ",
            d_est.shape(),
            d_real.shape(),
            mask.shape()
        )));
    }
    Ok(d_est
        .values()
        .iter()
        .zip(d_real.values())
        .zip(mask.values())
        .filter(|(_, &m)| m != 0.0)
        .map(|((&e, &r), _)| (e, r)))
}

/// Sum over the mask of `(scale * d_est + shift - d_real)^2`.
pub fn alignment_loss(
    d_est: &Raster2D,
    d_real: &Raster2D,
    mask: &Raster2D,
    scale: f64,
    shift: f64,
) -> Result<f64> {
    Ok(masked_pairs(d_est, d_real, mask)?
        .map(|(e, r)| (scale * e + shift - r).powi(2))
        .sum())
}

/// Closed-form least squares for `(scale, shift)` over nonzero mask pixels.
pub fn depth_align(d_est: &Raster2D, d_real: &Raster2D, mask: &Raster2D) -> Result<DepthAlignment> {
    let pairs: Vec<(f64, f64)> = masked_pairs(d_est, d_real, mask)?.collect();
    if pairs.len() < 2 {
        return Err(Error::DegenerateDepth);
    }
    let n = pairs.len() as f64;
    let me = pairs.iter().map(|p| p.0).sum::<f64>() / n;
    let mr = pairs.iter().map(|p| p.1).sum::<f64>() / n;
    let (mut see, mut ser) = (0.0, 0.0);
    for &(e, r) in &pairs {
        see += (e - me) * (e - me);
        ser += (e - me) * (r - mr);
    }
    if see == 0.0 {
        return Err(Error::DegenerateDepth);
    }
    let scale = ser / see;
    let shift = mr - scale * me;
    let residual = pairs
        .iter()
        .map(|&(e, r)| (scale * e + shift - r).powi(2))
        .sum::<f64>()
        / n;
    Ok(DepthAlignment {
        scale,
        shift,
        residual,
    })
}

fn check_depth(name: &str, d: f64) -> Result<()> {
    if !d.is_finite() || d <= 0.0 {
        return Err(Error::InvalidDepth(format!("{name} depth {d} is not a valid reading")));
    }
    Ok(())
}

/// Converts a pixel-frame planar transform into a metric one with height change.
///
/// `source` is where the object sits in the real image. Its pixel is
/// back-projected at `real_depth_at_source`; the transformed pixel is
/// back-projected at the aligned goal depth. `dz` is the aligned goal depth
/// minus the measured depth, and `theta` carries over unchanged.
pub fn lift_to_6dof(
    t2d: &RigidTransform,
    source: &PixelPoint,
    goal_depth_at_target: f64,
    real_depth_at_source: f64,
    align: &DepthAlignment,
    intrinsics: &Intrinsics,
) -> Result<RigidTransform> {
    check_depth("goal", goal_depth_at_target)?;
    check_depth("real", real_depth_at_source)?;
    let z_goal = align.apply(goal_depth_at_target);
    check_depth("aligned goal", z_goal)?;
    let z_real = real_depth_at_source;

    let (u0, v0) = (source.col, source.row);
    let (u1, v1) = t2d.apply(u0, v0);
    let back = |u: f64, v: f64, z: f64| ((u - intrinsics.cx) * z / intrinsics.fx, (v - intrinsics.cy) * z / intrinsics.fy);
    let (x0, y0) = back(u0, v0, z_real);
    let (x1, y1) = back(u1, v1, z_goal);

    Ok(RigidTransform {
        dx: x1 - x0,
        dy: y1 - y0,
        dz: z_goal - z_real,
        theta: t2d.theta,
        frame: Frame::Metric,
    })
}
