//! Registering and pairing object instances with ICP and the Hungarian method.
//!
//! cargo run --example icp_matching

use paca::matching::{min_cost_assignment, register, IcpOptions, PointSet};
use paca::RigidTransform;

fn outline(w: f64, h: f64) -> Vec<(f64, f64)> {
    let mut pts = Vec::new();
    for i in 0..=20 {
        let t = i as f64 / 20.0;
        pts.extend([(t * w, 0.0), (t * w, h), (0.0, t * h), (w, t * h)]);
    }
    pts
}

fn main() -> paca::Result<()> {
    let opts = IcpOptions::default();
    let goal = [outline(40.0, 10.0), outline(24.0, 12.0)];

    // The real scene holds the same two objects, moved and listed in swapped order.
    let moves = [RigidTransform::planar(30.0, -12.0, 0.5), RigidTransform::planar(-8.0, 20.0, -0.3)];
    let real: Vec<Vec<(f64, f64)>> = [&goal[1], &goal[0]]
        .iter()
        .zip(&moves)
        .map(|(pts, m)| pts.iter().map(|&(x, y)| m.apply(x, y)).collect())
        .collect();

    let mut cost = vec![vec![0.0; real.len()]; goal.len()];
    let mut fits = Vec::new();
    for (g, gp) in goal.iter().enumerate() {
        for (r, rp) in real.iter().enumerate() {
            let out = register(&PointSet::from_xy(rp), &PointSet::from_xy(gp), &opts)?;
            cost[g][r] = out.residual;
            fits.push(((g, r), out));
        }
    }
    for (g, r) in min_cost_assignment(&cost) {
        let out = &fits.iter().find(|f| f.0 == (g, r)).unwrap().1;
        let t = out.transform;
        println!(
            "goal {g} <- real {r}: dx {:7.3} dy {:7.3} theta {:6.3} residual {:.2e} after {} iterations",
            t.dx, t.dy, t.theta, out.residual, out.iterations
        );
    }
    Ok(())
}
