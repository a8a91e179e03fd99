//! Dominant scene lines and the line raster used as generation conditioning.

mod edges;
mod hough;

pub use edges::{edge_map, grayscale, sobel};
pub use hough::{accumulate, hough_lines, peaks, Accumulator, HoughLine, HoughParams};

use image::{GrayImage, Luma, RgbImage};

use crate::raster::Raster2D;

/// Default stroke width of control lines, in pixels.
pub const DEFAULT_STROKE: f64 = 2.0;

/// Edge map of a color image using the Canny thresholds in `params`.
pub fn edges_for(color: &RgbImage, params: &HoughParams) -> Raster2D {
    edge_map(color, params.canny_low, params.canny_high)
}

/// Draws each line across the whole raster, white (1) on black (0).
///
/// A pixel is set when its center lies within `width / 2` of the line.
pub fn rasterize_control(lines: &[HoughLine], size: (usize, usize), width: f64) -> Raster2D {
    let half = width / 2.0;
    let trig: Vec<(f64, f64, f64)> = lines
        .iter()
        .map(|l| {
            let (s, c) = l.theta.sin_cos();
            (c, s, l.rho)
        })
        .collect();
    Raster2D::from_fn(size.0, size.1, |r, col| {
        let (x, y) = (col as f64, r as f64);
        let hit = trig
            .iter()
            .any(|&(c, s, rho)| (x * c + y * s - rho).abs() <= half + 1e-9);
        if hit {
            1.0
        } else {
            0.0
        }
    })
}

/// 8-bit single-channel image of a binary raster (nonzero becomes 255).
pub fn control_image(control: &Raster2D) -> GrayImage {
    GrayImage::from_fn(control.width() as u32, control.height() as u32, |x, y| {
        Luma([if control.get(y as usize, x as usize) != 0.0 { 255 } else { 0 }])
    })
}
