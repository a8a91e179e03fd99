//! Image and depth files.

use std::fs;
use std::path::Path;

use image::{GrayImage, ImageBuffer, Luma, RgbImage};

use crate::error::{Error, Result};
use crate::raster::Raster2D;

pub fn read_rgb(path: &Path) -> Result<RgbImage> {
    Ok(image::open(path).map_err(|e| Error::image(path, e))?.to_rgb8())
}

pub fn write_rgb(path: &Path, img: &RgbImage) -> Result<()> {
    img.save_with_format(path, image::ImageFormat::Png)
        .map_err(|e| Error::image(path, e))
}

pub fn write_gray(path: &Path, img: &GrayImage) -> Result<()> {
    img.save_with_format(path, image::ImageFormat::Png)
        .map_err(|e| Error::image(path, e))
}

/// Reads a 16-bit single-channel millimeter PNG as meters; 0 stays 0 (invalid).
pub fn read_depth_png(path: &Path) -> Result<Raster2D> {
    let img = image::open(path).map_err(|e| Error::image(path, e))?;
    let img = match img {
        image::DynamicImage::ImageLuma16(b) => b,
        other => {
            return Err(Error::Format {
                offset: 0,
                reason: format!(
                    "{}: depth must be 16-bit single channel, got {:?}",
                    path.display(),
                    other.color()
                ),
            })
        }
    };
    let (w, h) = img.dimensions();
    Raster2D::new(
        h as usize,
        w as usize,
        img.pixels().map(|p| p.0[0] as f64 / 1000.0).collect(),
    )
}

/// Writes meters as 16-bit millimeters, rounding and saturating.
pub fn write_depth_png(path: &Path, depth: &Raster2D) -> Result<()> {
    let img: ImageBuffer<Luma<u16>, Vec<u16>> =
        ImageBuffer::from_fn(depth.width() as u32, depth.height() as u32, |x, y| {
            let mm = (depth.get(y as usize, x as usize) * 1000.0).round();
            Luma([mm.clamp(0.0, u16::MAX as f64) as u16])
        });
    img.save_with_format(path, image::ImageFormat::Png)
        .map_err(|e| Error::image(path, e))
}

/// 1 where a depth reading exists, else 0.
pub fn valid_mask(depth: &Raster2D) -> Raster2D {
    depth.map(|d| if d > 0.0 { 1.0 } else { 0.0 })
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::io(path, e))
}
