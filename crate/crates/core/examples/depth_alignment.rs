//! Fitting monocular depth to a sensor and lifting a planar move to metric space.
//!
//! cargo run --example depth_alignment

use paca::matching::{depth_align, lift_to_6dof, Intrinsics};
use paca::{PixelPoint, Raster2D, RigidTransform};

fn main() -> paca::Result<()> {
    // Sensor depth of a tilted table, with a dropout stripe.
    let real = Raster2D::from_fn(120, 160, |r, c| if c < 6 { 0.0 } else { 0.9 + 0.002 * r as f64 });
    // The estimator only knows depth up to scale and shift.
    let estimate = Raster2D::from_fn(120, 160, |r, _| (0.9 + 0.002 * r as f64 - 0.3) / 1.7);
    let mask = real.map(|d| if d > 0.0 { 1.0 } else { 0.0 });

    let align = depth_align(&estimate, &real, &mask)?;
    println!("scale {:.6} shift {:.6} residual {:.2e}", align.scale, align.shift, align.residual);

    let k = Intrinsics { fx: 525.0, fy: 525.0, cx: 80.0, cy: 60.0 };
    let grasp = PixelPoint::new(40.0, 70.0);
    let planar = RigidTransform::planar(-25.0, 30.0, 0.4);
    let target = planar.apply_point(&grasp);
    let goal_depth = estimate.get(target.row as usize, target.col as usize);
    let lifted = lift_to_6dof(&planar, &grasp, goal_depth, real.get(40, 70), &align, &k)?;
    println!(
        "metric move: dx {:.4} m, dy {:.4} m, dz {:.4} m, theta {:.3} rad",
        lifted.dx, lifted.dy, lifted.dz, lifted.theta
    );
    Ok(())
}
