//! Canny-style edge detection without pre-blur: luma, 3x3 Sobel, directional
//! non-maximum suppression, then double-threshold hysteresis.

use image::RgbImage;

use crate::raster::Raster2D;

/// Rec. 601 luma in `[0, 255]`.
pub fn grayscale(color: &RgbImage) -> Raster2D {
    let (w, h) = color.dimensions();
    Raster2D::from_fn(h as usize, w as usize, |r, c| {
        let p = color.get_pixel(c as u32, r as u32).0;
        0.299 * p[0] as f64 + 0.587 * p[1] as f64 + 0.114 * p[2] as f64
    })
}

/// Sobel responses with replicated borders, as `(gx, gy)`.
pub fn sobel(gray: &Raster2D) -> (Raster2D, Raster2D) {
    let (h, w) = gray.shape();
    let at = |r: isize, c: isize| {
        let r = r.clamp(0, h as isize - 1) as usize;
        let c = c.clamp(0, w as isize - 1) as usize;
        gray.get(r, c)
    };
    let gx = Raster2D::from_fn(h, w, |r, c| {
        let (r, c) = (r as isize, c as isize);
        (at(r - 1, c + 1) + 2.0 * at(r, c + 1) + at(r + 1, c + 1))
            - (at(r - 1, c - 1) + 2.0 * at(r, c - 1) + at(r + 1, c - 1))
    });
    let gy = Raster2D::from_fn(h, w, |r, c| {
        let (r, c) = (r as isize, c as isize);
        (at(r + 1, c - 1) + 2.0 * at(r + 1, c) + at(r + 1, c + 1))
            - (at(r - 1, c - 1) + 2.0 * at(r - 1, c) + at(r - 1, c + 1))
    });
    (gx, gy)
}

/// Binary edge raster (1 = edge). Thresholds compare against the raw Sobel
/// gradient magnitude.
pub fn edge_map(color: &RgbImage, low: f64, high: f64) -> Raster2D {
    let gray = grayscale(color);
    let (h, w) = gray.shape();
    let (gx, gy) = sobel(&gray);
    let mag: Vec<f64> = gx
        .values()
        .iter()
        .zip(gy.values())
        .map(|(x, y)| x.hypot(*y))
        .collect();
    let m = |r: isize, c: isize| -> f64 {
        if r < 0 || c < 0 || r as usize >= h || c as usize >= w {
            0.0
        } else {
            mag[r as usize * w + c as usize]
        }
    };

    // Non-maximum suppression along the quantized gradient direction. A pixel
    // survives if it is >= its predecessor and > its successor, so a plateau of
    // two equal responses keeps exactly one pixel.
    let mut thin = vec![0.0; h * w];
    for r in 0..h {
        for c in 0..w {
            let v = mag[r * w + c];
            if v <= 0.0 {
                continue;
            }
            let angle = gy.get(r, c).atan2(gx.get(r, c)).to_degrees().rem_euclid(180.0);
            let (dr, dc): (isize, isize) = if !(22.5..157.5).contains(&angle) {
                (0, 1)
            } else if angle < 67.5 {
                (1, 1)
            } else if angle < 112.5 {
                (1, 0)
            } else {
                (1, -1)
            };
            let (ri, ci) = (r as isize, c as isize);
            let before = m(ri - dr, ci - dc);
            let after = m(ri + dr, ci + dc);
            if v >= before && v > after {
                thin[r * w + c] = v;
            }
        }
    }

    // Hysteresis: flood from strong pixels through weak ones (8-connected).
    let mut out = vec![0.0; h * w];
    let mut stack: Vec<usize> = (0..h * w).filter(|&i| thin[i] >= high).collect();
    for &i in &stack {
        out[i] = 1.0;
    }
    while let Some(i) = stack.pop() {
        let (r, c) = ((i / w) as isize, (i % w) as isize);
        for dr in -1..=1 {
            for dc in -1..=1 {
                let (nr, nc) = (r + dr, c + dc);
                if nr < 0 || nc < 0 || nr as usize >= h || nc as usize >= w {
                    continue;
                }
                let j = nr as usize * w + nc as usize;
                if out[j] == 0.0 && thin[j] >= low {
                    out[j] = 1.0;
                    stack.push(j);
                }
            }
        }
    }
    Raster2D::new(h, w, out).expect("edge raster shape")
}
