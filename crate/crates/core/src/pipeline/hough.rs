use std::path::Path;

use image::RgbImage;
use serde::Serialize;

use crate::error::Result;
use crate::perspective::{
    control_image, edges_for, hough_lines, rasterize_control, HoughLine, HoughParams, DEFAULT_STROKE,
};
use crate::raster::Raster2D;

use super::io::{read_rgb, write_gray, write_text};
use super::plan::to_canonical_json;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HoughReport {
    pub height: usize,
    pub width: usize,
    pub lines: Vec<HoughLine>,
}

/// Detected lines and the control raster for one image.
pub fn perspective_control(color: &RgbImage, params: &HoughParams) -> Result<(Vec<HoughLine>, Raster2D)> {
    params.validate()?;
    let edges = edges_for(color, params);
    let lines = hough_lines(&edges, params);
    let control = rasterize_control(&lines, edges.shape(), DEFAULT_STROKE);
    Ok((lines, control))
}

/// `<out>.png` gets the control raster, `<out>.json` the line list.
pub fn cmd_hough(image_path: &Path, params: &HoughParams, out: &Path) -> Result<HoughReport> {
    let color = read_rgb(image_path)?;
    let (lines, control) = perspective_control(&color, params)?;
    log::info!("{}: {} lines", image_path.display(), lines.len());
    let report = HoughReport {
        height: control.height(),
        width: control.width(),
        lines,
    };
    write_gray(&out.with_extension("png"), &control_image(&control))?;
    write_text(&out.with_extension("json"), &to_canonical_json(&report)?)?;
    Ok(report)
}
