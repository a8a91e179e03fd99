//! DDIM inversion followed by reconstruction, with a capture tap.
//!
//! cargo run --example scheduler_round_trip

use paca::scheduler::{
    estimate_clean, invert_trajectory, reconstruct_trajectory, Latent, NoiseSchedule,
    ScaledLatentPredictor,
};

fn main() -> paca::Result<()> {
    let sched = NoiseSchedule::scaled_linear(0.00085, 0.012, 1000)?.subsample(50)?;
    let z0 = Latent::new((0..16).map(|i| (i as f64 * 0.7).sin()).collect(), 0);
    let pred = ScaledLatentPredictor(0.1);

    let traj = invert_trajectory(&z0, &pred, &sched)?;
    let z_t = traj.last().unwrap();
    println!("inverted to t = {} (alpha_bar {:.4})", z_t.timestep, sched.alpha_bar(z_t.timestep)?);

    let mut captured = Vec::new();
    let mut tap = |t: usize, z: &Latent, eps: &[f64]| {
        if t == 25 || t == 1 {
            let clean = estimate_clean(z, t, eps, &sched).unwrap();
            captured.push((t, clean.max_abs_diff(&z0)));
        }
    };
    let back = reconstruct_trajectory(z_t, &pred, &sched, Some(&mut tap))?;
    for (t, err) in captured {
        println!("clean estimate at t = {t:2}: max error {err:.3e}");
    }
    println!("round trip max error {:.3e}", back.max_abs_diff(&z0));

    // Exact when the predictor ignores the latent.
    let constant = |z: &Latent, _t: usize| vec![0.2; z.dim()];
    let traj = invert_trajectory(&z0, &constant, &sched)?;
    let back = reconstruct_trajectory(traj.last().unwrap(), &constant, &sched, None)?;
    println!("constant predictor round trip {:.3e}", back.max_abs_diff(&z0));
    Ok(())
}
