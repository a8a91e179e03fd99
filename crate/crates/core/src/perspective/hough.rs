use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::raster::Raster2D;

/// A line `rho = x cos(theta) + y sin(theta)` with `x` = column, `y` = row.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HoughLine {
    pub rho: f64,
    pub theta: f64,
    pub votes: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct HoughParams {
    pub rho_resolution: f64,
    pub theta_resolution: f64,
    pub vote_threshold: u32,
    pub max_lines: usize,
    pub canny_low: f64,
    pub canny_high: f64,
}

impl Default for HoughParams {
    fn default() -> Self {
        Self {
            rho_resolution: 1.0,
            theta_resolution: PI / 180.0,
            vote_threshold: 120,
            max_lines: 10,
            canny_low: 50.0,
            canny_high: 150.0,
        }
    }
}

impl HoughParams {
    pub fn validate(&self) -> Result<()> {
        if [self.rho_resolution, self.theta_resolution].iter().any(|r| r.is_nan() || *r <= 0.0) {
            return Err(Error::Config("Hough resolutions must be positive".into()));
        }
        if !(0.0..=255.0).contains(&self.canny_low) || !(0.0..=255.0).contains(&self.canny_high) {
            return Err(Error::Config("Canny thresholds must lie in [0, 255]".into()));
        }
        if self.canny_low >= self.canny_high {
            return Err(Error::Config("canny_low must be below canny_high".into()));
        }
        Ok(())
    }
}

/// Vote accumulator over `(theta bin, rho bin)`.
#[derive(Debug, Clone)]
pub struct Accumulator {
    pub n_theta: usize,
    pub n_rho: usize,
    /// Bin index of `rho = 0`.
    pub rho_offset: usize,
    pub rho_resolution: f64,
    pub theta_resolution: f64,
    votes: Vec<u32>,
}

impl Accumulator {
    pub fn votes(&self, theta_bin: usize, rho_bin: usize) -> u32 {
        self.votes[theta_bin * self.n_rho + rho_bin]
    }

    pub fn theta(&self, theta_bin: usize) -> f64 {
        theta_bin as f64 * self.theta_resolution
    }

    pub fn rho(&self, rho_bin: usize) -> f64 {
        (rho_bin as f64 - self.rho_offset as f64) * self.rho_resolution
    }

    /// Rho bin a pixel center falls in at `theta_bin`.
    pub fn rho_bin_of(&self, theta_bin: usize, x: f64, y: f64) -> usize {
        let (s, c) = self.theta(theta_bin).sin_cos();
        (((x * c + y * s) / self.rho_resolution).round() as isize + self.rho_offset as isize) as usize
    }
}

/// Standard Hough voting over all nonzero pixels of `edges`.
pub fn accumulate(edges: &Raster2D, params: &HoughParams) -> Accumulator {
    let (h, w) = edges.shape();
    let n_theta = ((PI / params.theta_resolution).round() as usize).max(1);
    let diag = ((h * h + w * w) as f64).sqrt();
    let rho_offset = (diag / params.rho_resolution).ceil() as usize + 1;
    let n_rho = 2 * rho_offset + 1;
    let trig: Vec<(f64, f64)> = (0..n_theta)
        .map(|k| (k as f64 * params.theta_resolution).sin_cos())
        .collect();

    let mut votes = vec![0u32; n_theta * n_rho];
    for r in 0..h {
        for c in 0..w {
            if edges.get(r, c) == 0.0 {
                continue;
            }
            let (x, y) = (c as f64, r as f64);
            for (k, &(s, co)) in trig.iter().enumerate() {
                let bin = ((x * co + y * s) / params.rho_resolution).round() as isize
                    + rho_offset as isize;
                votes[k * n_rho + bin as usize] += 1;
            }
        }
    }
    Accumulator {
        n_theta,
        n_rho,
        rho_offset,
        rho_resolution: params.rho_resolution,
        theta_resolution: params.theta_resolution,
        votes,
    }
}

/// Up to `max_lines` accumulator peaks with at least `vote_threshold` votes,
/// strongest first. A peak must dominate its 3x3 neighbourhood; on a plateau
/// the first cell in scan order wins.
pub fn hough_lines(edges: &Raster2D, params: &HoughParams) -> Vec<HoughLine> {
    let acc = accumulate(edges, params);
    peaks(&acc, params)
}

pub fn peaks(acc: &Accumulator, params: &HoughParams) -> Vec<HoughLine> {
    let mut found: Vec<(u32, usize, usize)> = Vec::new();
    for t in 0..acc.n_theta {
        for p in 0..acc.n_rho {
            let v = acc.votes(t, p);
            if v == 0 || v < params.vote_threshold {
                continue;
            }
            let mut is_peak = true;
            'nbhd: for dt in -1isize..=1 {
                for dp in -1isize..=1 {
                    if dt == 0 && dp == 0 {
                        continue;
                    }
                    let (nt, np) = (t as isize + dt, p as isize + dp);
                    if nt < 0 || np < 0 || nt as usize >= acc.n_theta || np as usize >= acc.n_rho {
                        continue;
                    }
                    let nv = acc.votes(nt as usize, np as usize);
                    let earlier = (dt, dp) < (0, 0);
                    if nv > v || (earlier && nv == v) {
                        is_peak = false;
                        break 'nbhd;
                    }
                }
            }
            if is_peak {
                found.push((v, t, p));
            }
        }
    }
    found.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
    found
        .into_iter()
        .take(params.max_lines)
        .map(|(votes, t, p)| HoughLine {
            rho: acc.rho(p),
            theta: acc.theta(t),
            votes,
        })
        .collect()
}
