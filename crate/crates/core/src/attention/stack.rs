use crate::error::{Error, Result};
use crate::raster::{bilinear_resize, minmax_normalize, Raster2D, CANONICAL_SIZE};
use crate::types::PromptManifest;

use super::representation::{build_representation, Representation};

/// Every recorded per-token attention map for one image.
///
/// Maps are kept at dump resolution exactly as stored; [`AttentionStack::map`]
/// hands out the canonical-resolution, min-max normalized view on demand.
#[derive(Debug, Clone, PartialEq)]
pub struct AttentionStack {
    manifest: PromptManifest,
    height: usize,
    width: usize,
    tokens: Vec<String>,
    // [timestep][token][row][col]
    maps: Vec<f32>,
    canonical: (usize, usize),
}

impl AttentionStack {
    /// `maps` is timestep-major then token-major, each map `height x width`
    /// row-major, with timesteps in `manifest.recorded_timesteps` order.
    pub fn new(
        manifest: PromptManifest,
        height: usize,
        width: usize,
        tokens: Vec<String>,
        maps: Vec<f32>,
    ) -> Result<Self> {
        manifest.validate(tokens.len())?;
        if height == 0 || width == 0 {
            return Err(Error::Shape(format!("map size {height}x{width} is empty")));
        }
        let expected = manifest.recorded_timesteps.len() * tokens.len() * height * width;
        if maps.len() != expected {
            return Err(Error::Shape(format!(
                "expected {expected} map values, got {}",
                maps.len()
            )));
        }
        if let Some((index, &v)) = maps
            .iter()
            .enumerate()
            .find(|(_, v)| !v.is_finite() || **v < 0.0 || **v > 1.0)
        {
            return Err(Error::RasterRange {
                index,
                value: v as f64,
            });
        }
        Ok(Self {
            manifest,
            height,
            width,
            tokens,
            maps,
            canonical: (CANONICAL_SIZE, CANONICAL_SIZE),
        })
    }

    /// Overrides the resolution maps are resampled to (512x512 by default).
    pub fn with_canonical_shape(mut self, height: usize, width: usize) -> Self {
        assert!(height > 0 && width > 0);
        self.canonical = (height, width);
        self
    }

    pub fn manifest(&self) -> &PromptManifest {
        &self.manifest
    }

    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }

    pub fn timesteps(&self) -> &[usize] {
        &self.manifest.recorded_timesteps
    }

    /// Dump resolution.
    pub fn dump_shape(&self) -> (usize, usize) {
        (self.height, self.width)
    }

    pub fn canonical_shape(&self) -> (usize, usize) {
        self.canonical
    }

    pub fn raw_values(&self) -> &[f32] {
        &self.maps
    }

    fn offset(&self, timestep: usize, token: usize) -> Result<usize> {
        let ti = self
            .timesteps()
            .iter()
            .position(|&t| t == timestep)
            .ok_or(Error::Timestep {
                t: timestep,
                min: *self.timesteps().last().unwrap(),
                max: self.timesteps()[0],
            })?;
        if token >= self.tokens.len() {
            return Err(Error::Index {
                index: token,
                len: self.tokens.len(),
            });
        }
        let n = self.height * self.width;
        Ok((ti * self.tokens.len() + token) * n)
    }

    /// The stored map at dump resolution.
    pub fn raw_map(&self, timestep: usize, token: usize) -> Result<&[f32]> {
        let start = self.offset(timestep, token)?;
        Ok(&self.maps[start..start + self.height * self.width])
    }

    /// Map at canonical resolution, normalized to `[0, 1]`.
    pub fn map(&self, timestep: usize, token: usize) -> Result<Raster2D> {
        let raw = self.raw_map(timestep, token)?;
        let r = Raster2D::new(
            self.height,
            self.width,
            raw.iter().map(|&v| v as f64).collect(),
        )?;
        Ok(minmax_normalize(&bilinear_resize(&r, self.canonical.0, self.canonical.1)?))
    }

    /// Mean over a word's sub-token maps, renormalized.
    pub fn word_map(&self, timestep: usize, word: &str) -> Result<Raster2D> {
        let entry = self
            .manifest
            .object_words
            .iter()
            .find(|w| w.word == word)
            .ok_or_else(|| Error::ManifestMismatch(format!("unknown object word {word:?}")))?;
        let (h, w) = self.canonical;
        let mut acc = vec![0.0; h * w];
        for &token in &entry.token_indices {
            let m = self.map(timestep, token)?;
            for (a, v) in acc.iter_mut().zip(m.values()) {
                *a += v;
            }
        }
        let n = entry.token_indices.len() as f64;
        acc.iter_mut().for_each(|a| *a /= n);
        Ok(minmax_normalize(&Raster2D::new(h, w, acc)?))
    }

    /// Joint representation of `word` from the mid-denoising and final maps.
    pub fn representation(&self, word: &str, tau_mid: f64, tau_final: f64) -> Result<Representation> {
        let mid = select_mid_timestep(self.timesteps(), self.manifest.total_steps)
            .ok_or(Error::EmptyInput("no recorded timesteps"))?;
        let fin = select_final_timestep(self.timesteps())
            .ok_or(Error::EmptyInput("no recorded timesteps"))?;
        build_representation(
            word,
            &self.word_map(mid, word)?,
            &self.word_map(fin, word)?,
            tau_mid,
            tau_final,
        )
    }
}

/// Recorded timestep closest to `total_steps / 2`; ties go to the larger one.
pub fn select_mid_timestep(recorded: &[usize], total_steps: usize) -> Option<usize> {
    let target = total_steps as f64 / 2.0;
    recorded.iter().copied().min_by(|&a, &b| {
        let (da, db) = ((a as f64 - target).abs(), (b as f64 - target).abs());
        da.total_cmp(&db).then(b.cmp(&a))
    })
}

/// Recorded timestep closest to 1.
pub fn select_final_timestep(recorded: &[usize]) -> Option<usize> {
    recorded.iter().copied().min()
}
