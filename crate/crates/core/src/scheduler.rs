//! Deterministic DDIM stepping in both directions over a pluggable noise
//! predictor.
//!
//! Timesteps are 1-based: `alpha_bar(0)` is 1 and `alpha_bar(t)` for
//! `t in 1..=T` is the running product of `1 - beta`. The predictor is only
//! ever asked for the noise estimate; prompt conditioning and guidance live
//! inside concrete predictors.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct NoiseSchedule {
    betas: Vec<f64>,
    alphas: Vec<f64>,
    alpha_bars: Vec<f64>,
}

impl NoiseSchedule {
    /// Number of steps `T`.
    pub fn len(&self) -> usize {
        self.betas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.betas.is_empty()
    }

    pub fn betas(&self) -> &[f64] {
        &self.betas
    }

    pub fn alphas(&self) -> &[f64] {
        &self.alphas
    }

    /// Cumulative products for `t = 1..=T`.
    pub fn alpha_bars(&self) -> &[f64] {
        &self.alpha_bars
    }

    /// Cumulative product at `t`, with `alpha_bar(0) == 1`.
    pub fn alpha_bar(&self, t: usize) -> Result<f64> {
        match t {
            0 => Ok(1.0),
            t if t <= self.len() => Ok(self.alpha_bars[t - 1]),
            t => Err(Error::Timestep {
                t,
                min: 0,
                max: self.len(),
            }),
        }
    }

    /// Linear-in-sqrt betas as used by latent diffusion models.
    pub fn scaled_linear(beta_start: f64, beta_end: f64, steps: usize) -> Result<Self> {
        let betas = if steps == 1 {
            vec![beta_start]
        } else {
            let (a, b) = (beta_start.sqrt(), beta_end.sqrt());
            (0..steps)
                .map(|i| {
                    let s = a + (b - a) * i as f64 / (steps - 1) as f64;
                    s * s
                })
                .collect()
        };
        make_schedule(&betas)
    }

    /// Coarser schedule over `steps` evenly spaced timesteps of `self`.
    ///
    /// The cumulative products at the kept timesteps are preserved, so the
    /// coarse schedule spans the same noise range as the fine one.
    pub fn subsample(&self, steps: usize) -> Result<Self> {
        let total = self.len();
        if steps == 0 || steps > total {
            return Err(Error::Timestep {
                t: steps,
                min: 1,
                max: total,
            });
        }
        let kept: Vec<usize> = (1..=steps)
            .map(|i| ((i * total) as f64 / steps as f64).round() as usize)
            .collect();
        let mut prev = 1.0;
        let mut betas = Vec::with_capacity(steps);
        for t in kept {
            let ab = self.alpha_bars[t - 1];
            betas.push(1.0 - ab / prev);
            prev = ab;
        }
        make_schedule(&betas)
    }
}

/// Builds a schedule from per-step betas, each in `[0, 1)`.
pub fn make_schedule(betas: &[f64]) -> Result<NoiseSchedule> {
    if let Some((index, &value)) = betas
        .iter()
        .enumerate()
        .find(|(_, &b)| !(0.0..1.0).contains(&b))
    {
        return Err(Error::ScheduleRange { index, value });
    }
    let alphas: Vec<f64> = betas.iter().map(|b| 1.0 - b).collect();
    let alpha_bars = alphas
        .iter()
        .scan(1.0, |acc, &a| {
            *acc *= a;
            Some(*acc)
        })
        .collect();
    Ok(NoiseSchedule {
        betas: betas.to_vec(),
        alphas,
        alpha_bars,
    })
}

/// A latent vector tagged with the timestep it lives at.
#[derive(Debug, Clone, PartialEq)]
pub struct Latent {
    pub values: Vec<f64>,
    pub timestep: usize,
}

impl Latent {
    pub fn new(values: Vec<f64>, timestep: usize) -> Self {
        Self { values, timestep }
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn max_abs_diff(&self, other: &Latent) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// The noise-prediction network contract. Must be deterministic.
pub trait NoisePredictor {
    fn predict(&self, z: &Latent, t: usize) -> Vec<f64>;
}

/// Predicts the same value in every coordinate.
#[derive(Debug, Clone, Copy)]
pub struct ConstantPredictor(pub f64);

impl NoisePredictor for ConstantPredictor {
    fn predict(&self, z: &Latent, _t: usize) -> Vec<f64> {
        vec![self.0; z.dim()]
    }
}

/// Predicts `k * z`.
#[derive(Debug, Clone, Copy)]
pub struct ScaledLatentPredictor(pub f64);

impl NoisePredictor for ScaledLatentPredictor {
    fn predict(&self, z: &Latent, _t: usize) -> Vec<f64> {
        z.values.iter().map(|v| self.0 * v).collect()
    }
}

impl<F> NoisePredictor for F
where
    F: Fn(&Latent, usize) -> Vec<f64>,
{
    fn predict(&self, z: &Latent, t: usize) -> Vec<f64> {
        self(z, t)
    }
}

fn check_step(t: usize, sched: &NoiseSchedule) -> Result<()> {
    if t < 1 || t > sched.len() {
        return Err(Error::Timestep {
            t,
            min: 1,
            max: sched.len(),
        });
    }
    Ok(())
}

fn check_dim(z: &Latent, eps: &[f64]) -> Result<()> {
    if z.dim() != eps.len() {
        return Err(Error::Dimension(format!(
            "latent has {} values, noise has {}",
            z.dim(),
            eps.len()
        )));
    }
    Ok(())
}

/// Clean-latent estimate `(z_t - sqrt(1 - ab_t) * eps) / sqrt(ab_t)`.
pub fn estimate_clean(z: &Latent, t: usize, eps: &[f64], sched: &NoiseSchedule) -> Result<Latent> {
    check_step(t, sched)?;
    check_dim(z, eps)?;
    let ab = sched.alpha_bar(t)?;
    let (sa, sn) = (ab.sqrt(), (1.0 - ab).sqrt());
    let values = z
        .values
        .iter()
        .zip(eps)
        .map(|(z, e)| (z - sn * e) / sa)
        .collect();
    Ok(Latent::new(values, 0))
}

/// One deterministic denoising step from `z.timestep` to `z.timestep - 1`.
pub fn ddim_denoise_step(z: &Latent, eps: &[f64], sched: &NoiseSchedule) -> Result<Latent> {
    let t = z.timestep;
    let clean = estimate_clean(z, t, eps, sched)?;
    let ab_prev = sched.alpha_bar(t - 1)?;
    let (sa, sn) = (ab_prev.sqrt(), (1.0 - ab_prev).sqrt());
    let values = clean
        .values
        .iter()
        .zip(eps)
        .map(|(x0, e)| sa * x0 + sn * e)
        .collect();
    Ok(Latent::new(values, t - 1))
}

/// One inversion step taking a latent at `t - 1` to `t`.
pub fn ddim_invert_step(z: &Latent, t: usize, eps: &[f64], sched: &NoiseSchedule) -> Result<Latent> {
    check_step(t, sched)?;
    check_dim(z, eps)?;
    if z.timestep != t - 1 {
        return Err(Error::Timestep {
            t: z.timestep,
            min: t - 1,
            max: t - 1,
        });
    }
    let ab = sched.alpha_bar(t)?;
    let ab_prev = sched.alpha_bar(t - 1)?;
    let (sa, sn) = (ab.sqrt(), (1.0 - ab).sqrt());
    let (sa_prev, sn_prev) = (ab_prev.sqrt(), (1.0 - ab_prev).sqrt());
    let values = z
        .values
        .iter()
        .zip(eps)
        .map(|(z, e)| sa * (z - sn_prev * e) / sa_prev + sn * e)
        .collect();
    Ok(Latent::new(values, t))
}

/// Inverts a clean latent through `t = 1..=T`, returning `z_1..z_T`.
///
/// The noise at step `t` is predicted from the current latent `z_{t-1}` at
/// the target timestep `t`.
pub fn invert_trajectory(
    z0: &Latent,
    pred: &impl NoisePredictor,
    sched: &NoiseSchedule,
) -> Result<Vec<Latent>> {
    if z0.timestep != 0 {
        return Err(Error::Timestep {
            t: z0.timestep,
            min: 0,
            max: 0,
        });
    }
    let mut out: Vec<Latent> = Vec::with_capacity(sched.len());
    for t in 1..=sched.len() {
        let current = out.last().unwrap_or(z0);
        let eps = pred.predict(current, t);
        let next = ddim_invert_step(current, t, &eps, sched)?;
        out.push(next);
    }
    Ok(out)
}

/// Observer called once per denoising step with `(t, z_t, eps)`.
pub type StepTap<'a> = &'a mut dyn FnMut(usize, &Latent, &[f64]);

/// Denoises `zT` back to timestep 0.
///
/// `tap`, when given, sees `(t, z_t, eps)` once per step before the update;
/// this is where attention capture hooks in.
pub fn reconstruct_trajectory(
    z_t: &Latent,
    pred: &impl NoisePredictor,
    sched: &NoiseSchedule,
    mut tap: Option<StepTap<'_>>,
) -> Result<Latent> {
    if z_t.timestep > sched.len() {
        return Err(Error::Timestep {
            t: z_t.timestep,
            min: 0,
            max: sched.len(),
        });
    }
    let mut z = z_t.clone();
    while z.timestep > 0 {
        let eps = pred.predict(&z, z.timestep);
        if let Some(tap) = tap.as_deref_mut() {
            tap(z.timestep, &z, &eps);
        }
        z = ddim_denoise_step(&z, &eps, sched)?;
    }
    Ok(z)
}
