//! Match visualisation over the real frame.

use image::{Rgb, RgbImage};

use crate::error::{Error, Result};

use super::plan::{GridPoint, Plan};
use super::scene::WordInstances;

/// Word colors, assigned by the word's position in the plan.
pub const PALETTE: [[u8; 3]; 8] = [
    [230, 25, 75],
    [60, 180, 75],
    [0, 130, 200],
    [245, 130, 48],
    [145, 30, 180],
    [70, 240, 240],
    [240, 50, 230],
    [210, 245, 60],
];

const GRASP_COLOR: Rgb<u8> = Rgb([0, 0, 0]);
const ARROW_COLOR: Rgb<u8> = Rgb([255, 255, 255]);
const CROSS_ARM: i64 = 2;
const HEAD_LEN: f64 = 6.0;

fn put(img: &mut RgbImage, x: i64, y: i64, c: Rgb<u8>) {
    if x >= 0 && y >= 0 && (x as u32) < img.width() && (y as u32) < img.height() {
        img.put_pixel(x as u32, y as u32, c);
    }
}

/// Bresenham segment, clipped to the image.
pub fn draw_line(img: &mut RgbImage, (x0, y0): (i64, i64), (x1, y1): (i64, i64), c: Rgb<u8>) {
    let (dx, dy) = ((x1 - x0).abs(), -(y1 - y0).abs());
    let (sx, sy) = (if x0 < x1 { 1 } else { -1 }, if y0 < y1 { 1 } else { -1 });
    let (mut x, mut y, mut err) = (x0, y0, dx + dy);
    loop {
        put(img, x, y, c);
        if x == x1 && y == y1 {
            break;
        }
        let e2 = 2 * err;
        if e2 >= dy {
            err += dy;
            x += sx;
        }
        if e2 <= dx {
            err += dx;
            y += sy;
        }
    }
}

fn xy(p: GridPoint) -> (i64, i64) {
    (p.col.round() as i64, p.row.round() as i64)
}

fn draw_arrow(img: &mut RgbImage, from: GridPoint, to: GridPoint) {
    let (a, b) = (xy(from), xy(to));
    draw_line(img, a, b, ARROW_COLOR);
    let (vx, vy) = ((b.0 - a.0) as f64, (b.1 - a.1) as f64);
    let len = vx.hypot(vy);
    if len < 1.0 {
        return;
    }
    let (ux, uy) = (vx / len, vy / len);
    for side in [-1.0, 1.0] {
        // Barbs at 30 degrees either side of the reversed direction.
        let (s, c) = (side * std::f64::consts::FRAC_PI_6).sin_cos();
        let (hx, hy) = (-(ux * c - uy * s), -(ux * s + uy * c));
        let tip = (
            b.0 + (hx * HEAD_LEN).round() as i64,
            b.1 + (hy * HEAD_LEN).round() as i64,
        );
        draw_line(img, b, tip, ARROW_COLOR);
    }
}

fn blend(p: Rgb<u8>, c: [u8; 3]) -> Rgb<u8> {
    Rgb(std::array::from_fn(|i| ((p.0[i] as u16 + c[i] as u16) / 2) as u8))
}

/// Tints each plan word's real instances on `frame` and draws its matches.
///
/// Region pixels are blended half-way toward the word color and feature pixels
/// take the color outright. Each match gets a grasp cross and an arrow to
/// where the grasp point must go.
pub fn render_overlay(frame: &RgbImage, instances: &[WordInstances], plan: &Plan) -> Result<RgbImage> {
    let mut img = frame.clone();
    let (w, h) = frame.dimensions();
    for (k, obj) in plan.objects.iter().enumerate() {
        let color = PALETTE[k % PALETTE.len()];
        let Some(inst) = instances.iter().find(|i| i.word == obj.word) else {
            continue;
        };
        for rep in &inst.real {
            if rep.shape() != (h as usize, w as usize) {
                return Err(Error::Shape(format!(
                    "frame is {h}x{w} but representations are {:?}",
                    rep.shape()
                )));
            }
            for (r, c) in rep.pixels_at_least(1) {
                let p = img.get_pixel(c as u32, r as u32);
                let v = if rep.get(r, c) >= 2 { Rgb(color) } else { blend(*p, color) };
                img.put_pixel(c as u32, r as u32, v);
            }
        }
    }
    for (_, m) in plan.matches() {
        draw_arrow(&mut img, m.grasp_point, m.place_point);
        let (x, y) = xy(m.grasp_point);
        draw_line(&mut img, (x - CROSS_ARM, y), (x + CROSS_ARM, y), GRASP_COLOR);
        draw_line(&mut img, (x, y - CROSS_ARM), (x, y + CROSS_ARM), GRASP_COLOR);
    }
    Ok(img)
}
