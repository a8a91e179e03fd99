//! Row-major real-valued rasters and the handful of whole-raster operations
//! every other module leans on.
//!
//! Coordinates are `(row, col)` with the origin at the top-left pixel center.

use crate::error::{Error, Result};

/// Side length of the canonical engine raster.
pub const CANONICAL_SIZE: usize = 512;

#[derive(Debug, Clone, PartialEq)]
pub struct Raster2D {
    height: usize,
    width: usize,
    values: Vec<f64>,
}

impl Raster2D {
    /// Builds a raster, rejecting length mismatches and non-finite values.
    pub fn new(height: usize, width: usize, values: Vec<f64>) -> Result<Self> {
        let expected = height * width;
        if values.len() != expected {
            return Err(Error::RasterShape {
                height,
                width,
                expected,
                got: values.len(),
            });
        }
        if let Some((index, &value)) = values.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(Error::RasterRange { index, value });
        }
        Ok(Self {
            height,
            width,
            values,
        })
    }

    pub fn filled(height: usize, width: usize, value: f64) -> Self {
        assert!(value.is_finite());
        Self {
            height,
            width,
            values: vec![value; height * width],
        }
    }

    pub fn zeros(height: usize, width: usize) -> Self {
        Self::filled(height, width, 0.0)
    }

    /// Builds a raster by evaluating `f(row, col)` at every pixel.
    pub fn from_fn(height: usize, width: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut values = Vec::with_capacity(height * width);
        for r in 0..height {
            for c in 0..width {
                let v = f(r, c);
                assert!(v.is_finite(), "non-finite raster value at ({r}, {c})");
                values.push(v);
            }
        }
        Self {
            height,
            width,
            values,
        }
    }

    #[inline]
    pub fn height(&self) -> usize {
        self.height
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn shape(&self) -> (usize, usize) {
        (self.height, self.width)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.values.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    #[inline]
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.values[row * self.width + col]
    }

    /// Applies `f` to every value. Panics if `f` produces a non-finite value.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        let values: Vec<f64> = self.values.iter().map(|&v| f(v)).collect();
        assert!(values.iter().all(|v| v.is_finite()));
        Self {
            height: self.height,
            width: self.width,
            values,
        }
    }

    pub fn min_max(&self) -> Option<(f64, f64)> {
        self.values.iter().fold(None, |acc, &v| match acc {
            None => Some((v, v)),
            Some((lo, hi)) => Some((lo.min(v), hi.max(v))),
        })
    }
}

/// Returns `r` unchanged when every value lies in `[lo, hi]`.
pub fn validate_raster(r: Raster2D, lo: f64, hi: f64) -> Result<Raster2D> {
    if r.values.len() != r.height * r.width {
        return Err(Error::RasterShape {
            height: r.height,
            width: r.width,
            expected: r.height * r.width,
            got: r.values.len(),
        });
    }
    match r
        .values
        .iter()
        .enumerate()
        .find(|(_, &v)| !v.is_finite() || v < lo || v > hi)
    {
        Some((index, &value)) => Err(Error::RasterRange { index, value }),
        None => Ok(r),
    }
}

/// Resamples to `height x width` with pixel-center alignment and edge clamping.
pub fn bilinear_resize(r: &Raster2D, height: usize, width: usize) -> Result<Raster2D> {
    if height == 0 || width == 0 {
        return Err(Error::Shape(format!(
            "resize target must be at least 1x1, got {height}x{width}"
        )));
    }
    if r.is_empty() {
        return Err(Error::EmptyInput("cannot resize an empty raster"));
    }
    if r.shape() == (height, width) {
        return Ok(r.clone());
    }

    let rows: Vec<(usize, usize, f64)> = (0..height)
        .map(|i| sample_axis(i, height, r.height))
        .collect();
    let cols: Vec<(usize, usize, f64)> = (0..width)
        .map(|j| sample_axis(j, width, r.width))
        .collect();

    let mut values = Vec::with_capacity(height * width);
    for &(r0, r1, fy) in &rows {
        for &(c0, c1, fx) in &cols {
            // a + (b - a) * t keeps constant regions bit-exact.
            let (a, b) = (r.get(r0, c0), r.get(r0, c1));
            let top = a + (b - a) * fx;
            let (a, b) = (r.get(r1, c0), r.get(r1, c1));
            let bottom = a + (b - a) * fx;
            values.push(top + (bottom - top) * fy);
        }
    }
    Raster2D::new(height, width, values)
}

// Source neighbours and interpolation weight for output index `i`.
fn sample_axis(i: usize, out_len: usize, in_len: usize) -> (usize, usize, f64) {
    let pos = (i as f64 + 0.5) * in_len as f64 / out_len as f64 - 0.5;
    let pos = pos.clamp(0.0, (in_len - 1) as f64);
    let lo = pos.floor() as usize;
    let hi = (lo + 1).min(in_len - 1);
    (lo, hi, pos - lo as f64)
}

/// Affine rescale to `[0, 1]`. A constant raster maps to all zeros.
pub fn minmax_normalize(r: &Raster2D) -> Raster2D {
    let Some((lo, hi)) = r.min_max() else {
        return r.clone();
    };
    if hi == lo {
        return Raster2D::zeros(r.height, r.width);
    }
    let span = hi - lo;
    r.map(|v| ((v - lo) / span).clamp(0.0, 1.0))
}
