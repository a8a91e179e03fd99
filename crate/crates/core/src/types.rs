//! Domain types shared across the engine.

use std::f64::consts::PI;

use image::RgbImage;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::raster::Raster2D;

/// A pixel location with a non-negative weight. Coordinates are pixel centers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PixelPoint {
    pub row: f64,
    pub col: f64,
    pub weight: f64,
}

impl PixelPoint {
    pub fn new(row: f64, col: f64) -> Self {
        Self {
            row,
            col,
            weight: 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Frame {
    Pixel,
    Metric,
}

/// Planar rigid motion plus a height change.
///
/// `dx` runs along columns and `dy` along rows. A point `(x, y)` maps to
/// `R(theta) * (x, y) + (dx, dy)`; with rows pointing down, positive `theta`
/// turns clockwise on screen.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RigidTransform {
    pub dx: f64,
    pub dy: f64,
    pub dz: f64,
    pub theta: f64,
    pub frame: Frame,
}

impl RigidTransform {
    pub fn identity() -> Self {
        Self::planar(0.0, 0.0, 0.0)
    }

    /// Pixel-frame transform with `dz = 0`. `theta` is wrapped into `(-pi, pi]`.
    pub fn planar(dx: f64, dy: f64, theta: f64) -> Self {
        Self {
            dx,
            dy,
            dz: 0.0,
            theta: wrap_angle(theta),
            frame: Frame::Pixel,
        }
    }

    /// Maps `(x, y)` = `(col, row)`.
    pub fn apply(&self, x: f64, y: f64) -> (f64, f64) {
        let (s, c) = self.theta.sin_cos();
        (c * x - s * y + self.dx, s * x + c * y + self.dy)
    }

    pub fn apply_point(&self, p: &PixelPoint) -> PixelPoint {
        let (x, y) = self.apply(p.col, p.row);
        PixelPoint {
            row: y,
            col: x,
            weight: p.weight,
        }
    }

    /// `self` after `first`.
    pub fn compose(&self, first: &RigidTransform) -> RigidTransform {
        let (x, y) = self.apply(first.dx, first.dy);
        RigidTransform {
            dx: x,
            dy: y,
            dz: self.dz + first.dz,
            theta: wrap_angle(self.theta + first.theta),
            frame: self.frame,
        }
    }

    pub fn inverse(&self) -> RigidTransform {
        let (s, c) = self.theta.sin_cos();
        RigidTransform {
            dx: -(c * self.dx + s * self.dy),
            dy: -(-s * self.dx + c * self.dy),
            dz: -self.dz,
            theta: wrap_angle(-self.theta),
            frame: self.frame,
        }
    }
}

/// Wraps an angle into `(-pi, pi]`.
pub fn wrap_angle(theta: f64) -> f64 {
    let mut t = theta % (2.0 * PI);
    if t <= -PI {
        t += 2.0 * PI;
    } else if t > PI {
        t -= 2.0 * PI;
    }
    t
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SceneMode {
    Goal,
    Real,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObjectWord {
    pub word: String,
    pub token_indices: Vec<usize>,
}

/// What was run to produce an attention dump.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PromptManifest {
    pub prompt_text: String,
    pub seed: i64,
    pub cfg_scale: f64,
    pub total_steps: usize,
    pub object_words: Vec<ObjectWord>,
    pub recorded_timesteps: Vec<usize>,
    pub mode: SceneMode,
}

impl PromptManifest {
    /// Checks the manifest against itself and against a token table of `n_tokens`.
    pub fn validate(&self, n_tokens: usize) -> Result<()> {
        if self.total_steps == 0 {
            return Err(Error::ManifestMismatch("total_steps must be at least 1".into()));
        }
        if self.recorded_timesteps.is_empty() {
            return Err(Error::ManifestMismatch("no recorded timesteps".into()));
        }
        if self.recorded_timesteps.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::ManifestMismatch(
                "recorded_timesteps must be strictly decreasing".into(),
            ));
        }
        if let Some(t) = self
            .recorded_timesteps
            .iter()
            .find(|&&t| t < 1 || t > self.total_steps)
        {
            return Err(Error::ManifestMismatch(format!(
                "recorded timestep {t} outside [1, {}]",
                self.total_steps
            )));
        }
        for w in &self.object_words {
            if w.token_indices.is_empty() {
                return Err(Error::ManifestMismatch(format!(
                    "word {:?} has no token indices",
                    w.word
                )));
            }
            if let Some(i) = w.token_indices.iter().find(|&&i| i >= n_tokens) {
                return Err(Error::ManifestMismatch(format!(
                    "word {:?} references token {i} but the dump has {n_tokens} tokens",
                    w.word
                )));
            }
        }
        Ok(())
    }
}

/// Color plus metric depth for one captured scene.
#[derive(Debug, Clone)]
pub struct RgbdFrame {
    color: RgbImage,
    depth: Raster2D,
    valid_mask: Raster2D,
}

impl RgbdFrame {
    pub fn new(color: RgbImage, depth: Raster2D, valid_mask: Raster2D) -> Result<Self> {
        let shape = (color.height() as usize, color.width() as usize);
        if depth.shape() != shape || valid_mask.shape() != shape {
            return Err(Error::Shape(format!(
                "color {:?}, depth {:?} and mask {:?} must agree",
                shape,
                depth.shape(),
                valid_mask.shape()
            )));
        }
        for (i, (&d, &m)) in depth.values().iter().zip(valid_mask.values()).enumerate() {
            if m != 0.0 && m != 1.0 {
                return Err(Error::RasterRange { index: i, value: m });
            }
            if m == 1.0 && d < 0.0 {
                return Err(Error::RasterRange { index: i, value: d });
            }
        }
        Ok(Self {
            color,
            depth,
            valid_mask,
        })
    }

    /// Builds the frame from a depth raster where 0 marks a missing reading.
    pub fn from_depth(color: RgbImage, depth: Raster2D) -> Result<Self> {
        let mask = depth.map(|d| if d > 0.0 { 1.0 } else { 0.0 });
        Self::new(color, depth, mask)
    }

    pub fn color(&self) -> &RgbImage {
        &self.color
    }

    pub fn depth(&self) -> &Raster2D {
        &self.depth
    }

    pub fn valid_mask(&self) -> &Raster2D {
        &self.valid_mask
    }
}
