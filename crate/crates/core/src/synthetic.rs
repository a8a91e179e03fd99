//! Synthetic attention stacks built from Gaussian blobs.
//!
//! Handy for demos and fixtures where no diffusion model is at hand. Each
//! object word gets one token whose map is the max over its blobs; blobs
//! widen at earlier (noisier) timesteps, as real attention does.

use crate::attention::AttentionStack;
use crate::error::Result;
use crate::types::{ObjectWord, PromptManifest, SceneMode};

/// An oriented elliptical Gaussian in dump-resolution pixel coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Blob {
    pub row: f64,
    pub col: f64,
    pub sigma_major: f64,
    pub sigma_minor: f64,
    /// Major-axis angle from the column axis toward the row axis.
    pub angle: f64,
}

impl Blob {
    pub fn round(row: f64, col: f64, sigma: f64) -> Self {
        Self {
            row,
            col,
            sigma_major: sigma,
            sigma_minor: sigma,
            angle: 0.0,
        }
    }

    pub fn elongated(row: f64, col: f64, sigma_major: f64, sigma_minor: f64, angle: f64) -> Self {
        Self {
            row,
            col,
            sigma_major,
            sigma_minor,
            angle,
        }
    }

    /// Unnormalized density at `(row, col)` with both sigmas scaled by `spread`.
    pub fn value(&self, row: f64, col: f64, spread: f64) -> f64 {
        let (dy, dx) = (row - self.row, col - self.col);
        let (s, c) = self.angle.sin_cos();
        let u = dx * c + dy * s;
        let v = -dx * s + dy * c;
        let (a, b) = (self.sigma_major * spread, self.sigma_minor * spread);
        (-0.5 * ((u / a).powi(2) + (v / b).powi(2))).exp()
    }

    pub fn translated(&self, drow: f64, dcol: f64) -> Self {
        Self {
            row: self.row + drow,
            col: self.col + dcol,
            ..*self
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticScene {
    pub height: usize,
    pub width: usize,
    pub total_steps: usize,
    pub recorded_timesteps: Vec<usize>,
    pub objects: Vec<(String, Vec<Blob>)>,
    pub mode: SceneMode,
    pub seed: i64,
}

impl SyntheticScene {
    /// Empty scene recording timesteps 40, 25, 10 and 1 of 50.
    pub fn new(height: usize, width: usize) -> Self {
        Self {
            height,
            width,
            total_steps: 50,
            recorded_timesteps: vec![40, 25, 10, 1],
            objects: Vec::new(),
            mode: SceneMode::Goal,
            seed: 0,
        }
    }

    pub fn object(mut self, word: &str, blobs: Vec<Blob>) -> Self {
        self.objects.push((word.to_owned(), blobs));
        self
    }

    pub fn mode(mut self, mode: SceneMode) -> Self {
        self.mode = mode;
        self
    }

    /// Every blob moved by `(drow, dcol)` dump pixels.
    pub fn translated(&self, drow: f64, dcol: f64) -> Self {
        let mut out = self.clone();
        for (_, blobs) in &mut out.objects {
            for b in blobs.iter_mut() {
                *b = b.translated(drow, dcol);
            }
        }
        out
    }

    pub fn tokens(&self) -> Vec<String> {
        let mut t = vec!["<start>".to_owned()];
        t.extend(self.objects.iter().map(|(w, _)| w.clone()));
        t.push("<end>".to_owned());
        t
    }

    pub fn manifest(&self) -> PromptManifest {
        let words: Vec<&str> = self.objects.iter().map(|(w, _)| w.as_str()).collect();
        PromptManifest {
            prompt_text: format!("a table with {}", words.join(" and ")),
            seed: self.seed,
            cfg_scale: if self.mode == SceneMode::Goal { 7.5 } else { 0.0 },
            total_steps: self.total_steps,
            object_words: words
                .iter()
                .enumerate()
                .map(|(i, w)| ObjectWord {
                    word: (*w).to_owned(),
                    token_indices: vec![i + 1],
                })
                .collect(),
            recorded_timesteps: self.recorded_timesteps.clone(),
            mode: self.mode,
        }
    }

    fn word_map(&self, blobs: &[Blob], spread: f64) -> impl Iterator<Item = f32> + '_ {
        let blobs = blobs.to_vec();
        (0..self.height * self.width).map(move |i| {
            let (r, c) = ((i / self.width) as f64, (i % self.width) as f64);
            blobs
                .iter()
                .map(|b| b.value(r, c, spread))
                .fold(0.0, f64::max) as f32
        })
    }

    /// The stack, timestep-major then token-major.
    pub fn stack(&self) -> Result<AttentionStack> {
        let n = self.height * self.width;
        let mut maps = Vec::with_capacity(self.recorded_timesteps.len() * (self.objects.len() + 2) * n);
        for &t in &self.recorded_timesteps {
            let spread = 1.0 + t as f64 / self.total_steps as f64;
            maps.extend(std::iter::repeat_n(0.5f32, n));
            for (_, blobs) in &self.objects {
                maps.extend(self.word_map(blobs, spread));
            }
            maps.extend((0..n).map(|i| 0.1 + 0.05 * ((i % 7) as f32 / 6.0)));
        }
        AttentionStack::new(self.manifest(), self.height, self.width, self.tokens(), maps)
    }
}
