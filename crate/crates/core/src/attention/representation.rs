use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::raster::Raster2D;
use crate::types::PixelPoint;

use super::step_threshold;

/// Threshold applied to the mid-denoising map.
pub const DEFAULT_TAU_MID: f64 = 0.3;
/// Threshold applied to the final-step map.
pub const DEFAULT_TAU_FINAL: f64 = 0.9;

/// Per-word object representation with values in `{0, 1, 2}`.
///
/// 1 marks the object's region, 2 marks pixels that are also feature-rich.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    pub word: String,
    height: usize,
    width: usize,
    values: Vec<u8>,
}

impl Representation {
    pub fn new(word: impl Into<String>, height: usize, width: usize, values: Vec<u8>) -> Result<Self> {
        if values.len() != height * width {
            return Err(Error::RasterShape {
                height,
                width,
                expected: height * width,
                got: values.len(),
            });
        }
        if let Some((index, &v)) = values.iter().enumerate().find(|(_, &v)| v > 2) {
            return Err(Error::RasterRange {
                index,
                value: v as f64,
            });
        }
        Ok(Self {
            word: word.into(),
            height,
            width,
            values,
        })
    }

    pub fn empty(word: impl Into<String>, height: usize, width: usize) -> Self {
        Self {
            word: word.into(),
            height,
            width,
            values: vec![0; height * width],
        }
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.height, self.width)
    }

    pub fn values(&self) -> &[u8] {
        &self.values
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> u8 {
        self.values[row * self.width + col]
    }

    /// Number of pixels with value at least `level`.
    pub fn count_at_least(&self, level: u8) -> usize {
        self.values.iter().filter(|&&v| v >= level).count()
    }

    /// `(row, col)` of every pixel with value at least `level`, row-major.
    pub fn pixels_at_least(&self, level: u8) -> impl Iterator<Item = (usize, usize)> + '_ {
        let w = self.width;
        self.values
            .iter()
            .enumerate()
            .filter(move |(_, &v)| v >= level)
            .map(move |(i, _)| (i / w, i % w))
    }

    /// Shifts the whole representation by whole pixels, dropping what falls off.
    pub fn translated(&self, drow: isize, dcol: isize) -> Self {
        let mut out = Self::empty(self.word.clone(), self.height, self.width);
        for (r, c) in self.pixels_at_least(1) {
            let (nr, nc) = (r as isize + drow, c as isize + dcol);
            if nr >= 0 && nc >= 0 && (nr as usize) < self.height && (nc as usize) < self.width {
                out.values[nr as usize * self.width + nc as usize] = self.get(r, c);
            }
        }
        out
    }
}

/// Sum of the thresholded mid-denoising and final-step maps.
pub fn build_representation(
    word: &str,
    m_mid: &Raster2D,
    m_final: &Raster2D,
    tau_mid: f64,
    tau_final: f64,
) -> Result<Representation> {
    if m_mid.shape() != m_final.shape() {
        return Err(Error::Shape(format!(
            "mid map is {:?} but final map is {:?}",
            m_mid.shape(),
            m_final.shape()
        )));
    }
    let region = step_threshold(m_mid, tau_mid)?;
    let detail = step_threshold(m_final, tau_final)?;
    let values = region
        .values()
        .iter()
        .zip(detail.values())
        .map(|(a, b)| (a + b) as u8)
        .collect();
    Representation::new(word, m_mid.height(), m_mid.width(), values)
}

const NEIGHBOURS: [(isize, isize); 8] = [
    (-1, -1),
    (-1, 0),
    (-1, 1),
    (0, -1),
    (0, 1),
    (1, -1),
    (1, 0),
    (1, 1),
];

/// Splits the nonzero support into 8-connected instances.
///
/// Components smaller than `min_area` are dropped. Output is ordered by
/// descending area; equal areas keep the order in which their first pixel is
/// met in a row-major scan.
pub fn split_instances(rep: &Representation, min_area: usize) -> Vec<Representation> {
    let (h, w) = rep.shape();
    let mut label = vec![usize::MAX; h * w];
    let mut components: Vec<Vec<usize>> = Vec::new();
    let mut queue = VecDeque::new();

    for start in 0..h * w {
        if rep.values[start] == 0 || label[start] != usize::MAX {
            continue;
        }
        let id = components.len();
        let mut members = Vec::new();
        label[start] = id;
        queue.push_back(start);
        while let Some(i) = queue.pop_front() {
            members.push(i);
            let (r, c) = ((i / w) as isize, (i % w) as isize);
            for (dr, dc) in NEIGHBOURS {
                let (nr, nc) = (r + dr, c + dc);
                if nr < 0 || nc < 0 || nr as usize >= h || nc as usize >= w {
                    continue;
                }
                let j = nr as usize * w + nc as usize;
                if rep.values[j] != 0 && label[j] == usize::MAX {
                    label[j] = id;
                    queue.push_back(j);
                }
            }
        }
        components.push(members);
    }

    let mut kept: Vec<Vec<usize>> = components
        .into_iter()
        .filter(|m| m.len() >= min_area)
        .collect();
    // Stable sort keeps scan order among equal areas.
    kept.sort_by_key(|m| std::cmp::Reverse(m.len()));
    kept.into_iter()
        .map(|members| {
            let mut values = vec![0u8; h * w];
            for i in members {
                values[i] = rep.values[i];
            }
            Representation {
                word: rep.word.clone(),
                height: h,
                width: w,
                values,
            }
        })
        .collect()
}

/// Centroid of the nonzero support, rounded half away from zero per axis.
pub fn grasp_point(rep: &Representation) -> Result<PixelPoint> {
    let (mut n, mut sr, mut sc) = (0usize, 0.0, 0.0);
    for (r, c) in rep.pixels_at_least(1) {
        n += 1;
        sr += r as f64;
        sc += c as f64;
    }
    if n == 0 {
        return Err(Error::EmptyRepresentation);
    }
    Ok(PixelPoint::new(
        (sr / n as f64).round(),
        (sc / n as f64).round(),
    ))
}
