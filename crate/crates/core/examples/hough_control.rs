//! Canny edges, Hough lines and the control raster for a synthetic table photo.
//!
//! cargo run --example hough_control -- [out_dir]

use std::path::PathBuf;

use image::{Rgb, RgbImage};
use paca::perspective::{control_image, HoughParams};
use paca::pipeline::perspective_control;

fn main() -> paca::Result<()> {
    let out = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| std::env::temp_dir().display().to_string()));

    // A tabletop seen in perspective: its far edge and two receding sides.
    let img = RgbImage::from_fn(256, 256, |x, y| {
        let (x, y) = (x as f64, y as f64);
        let inside = y > 80.0 && x > 100.0 - 0.6 * (y - 80.0) && x < 156.0 + 0.6 * (y - 80.0);
        if inside { Rgb([180, 140, 90]) } else { Rgb([40, 40, 50]) }
    });
    let params = HoughParams {
        vote_threshold: 40,
        max_lines: 12,
        ..Default::default()
    };
    let (lines, control) = perspective_control(&img, &params)?;
    for l in &lines {
        println!("rho {:7.1}  theta {:6.1} deg  votes {}", l.rho, l.theta.to_degrees(), l.votes);
    }
    let path = out.join("control.png");
    control_image(&control).save(&path).expect("write control png");
    println!("control raster written to {}", path.display());
    Ok(())
}
