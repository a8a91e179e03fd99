//! Point-to-point ICP in the image plane.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::types::{wrap_angle, PixelPoint, RigidTransform};

use super::nearest::KdTree;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct IcpOptions {
    pub max_iterations: usize,
    /// Stop once the residual changes by less than this between iterations.
    pub convergence_eps: f64,
}

impl Default for IcpOptions {
    fn default() -> Self {
        Self {
            max_iterations: 100,
            convergence_eps: 1e-6,
        }
    }
}

impl IcpOptions {
    pub fn validate(&self) -> Result<()> {
        if self.max_iterations == 0 {
            return Err(Error::Config("ICP needs at least one iteration".into()));
        }
        if self.convergence_eps.is_nan() || self.convergence_eps <= 0.0 {
            return Err(Error::Config("ICP convergence epsilon must be positive".into()));
        }
        Ok(())
    }
}

/// Points to register, with optional per-point depth in meters.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    pub points: Vec<PixelPoint>,
    pub depths: Option<Vec<f64>>,
}

impl PointSet {
    pub fn new(points: Vec<PixelPoint>) -> Self {
        Self {
            points,
            depths: None,
        }
    }

    pub fn from_xy(xy: &[(f64, f64)]) -> Self {
        Self::new(xy.iter().map(|&(x, y)| PixelPoint::new(y, x)).collect())
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Weighted centroid as `(x, y)` = `(col, row)`.
    pub fn centroid(&self) -> (f64, f64) {
        let w: f64 = self.points.iter().map(|p| p.weight).sum();
        let (sx, sy) = self
            .points
            .iter()
            .fold((0.0, 0.0), |(sx, sy), p| (sx + p.weight * p.col, sy + p.weight * p.row));
        (sx / w, sy / w)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IcpOutcome {
    /// Maps source points into the destination frame.
    pub transform: RigidTransform,
    /// Weighted mean squared nearest-neighbour distance at `transform`.
    pub residual: f64,
    pub iterations: usize,
    /// Residual after each correspondence step; nonincreasing.
    pub history: Vec<f64>,
    /// False when either set has a single point and only translation was fit.
    pub rotation_observable: bool,
}

/// Weighted least-squares rigid motion taking `src[i]` onto `dst[i]`.
pub fn fit_rigid(src: &[(f64, f64)], dst: &[(f64, f64)], weights: &[f64]) -> RigidTransform {
    let w: f64 = weights.iter().sum();
    let mean = |pts: &[(f64, f64)]| {
        let (sx, sy) = pts
            .iter()
            .zip(weights)
            .fold((0.0, 0.0), |(sx, sy), (p, w)| (sx + w * p.0, sy + w * p.1));
        (sx / w, sy / w)
    };
    let (sx, sy) = mean(src);
    let (dx, dy) = mean(dst);
    let (mut a, mut b) = (0.0, 0.0);
    for ((p, q), w) in src.iter().zip(dst).zip(weights) {
        let (px, py) = (p.0 - sx, p.1 - sy);
        let (qx, qy) = (q.0 - dx, q.1 - dy);
        a += w * (px * qx + py * qy);
        b += w * (px * qy - py * qx);
    }
    let theta = b.atan2(a);
    let (s, c) = theta.sin_cos();
    RigidTransform::planar(dx - (c * sx - s * sy), dy - (s * sx + c * sy), theta)
}

struct Correspondence {
    targets: Vec<(f64, f64)>,
    residual: f64,
}

fn correspond(src: &[(f64, f64)], weights: &[f64], total: f64, tree: &KdTree, t: &RigidTransform) -> Correspondence {
    let mut targets = Vec::with_capacity(src.len());
    let mut sum = 0.0;
    for (&(x, y), w) in src.iter().zip(weights) {
        let (tx, ty) = t.apply(x, y);
        let (j, d2) = tree.nearest([tx, ty]);
        let q = tree.point(j);
        targets.push((q[0], q[1]));
        sum += w * d2;
    }
    Correspondence {
        targets,
        residual: sum / total,
    }
}

/// Aligns `src` onto `dst` starting from `init`.
///
/// Alternates nearest-neighbour correspondence with a closed-form rigid fit
/// until the residual changes by less than `convergence_eps` or the iteration
/// budget runs out. When either set holds a single point the rotation is
/// unobservable and a translation-only result is returned instead.
pub fn icp_align(
    src: &PointSet,
    dst: &PointSet,
    init: &RigidTransform,
    opts: &IcpOptions,
) -> Result<IcpOutcome> {
    if src.is_empty() || dst.is_empty() {
        return Err(Error::EmptyInput("ICP needs nonempty point sets"));
    }
    opts.validate()?;

    let src_xy: Vec<(f64, f64)> = src.points.iter().map(|p| (p.col, p.row)).collect();
    let weights: Vec<f64> = src.points.iter().map(|p| p.weight).collect();
    let total: f64 = weights.iter().sum();
    if total.is_nan() || total <= 0.0 {
        return Err(Error::EmptyInput("ICP source weights sum to zero"));
    }
    let tree = KdTree::new(dst.points.iter().map(|p| [p.col, p.row]).collect());

    if src.len() == 1 || dst.len() == 1 {
        let (sx, sy) = src.centroid();
        let (dx, dy) = dst.centroid();
        let transform = RigidTransform::planar(dx - sx, dy - sy, 0.0);
        let residual = correspond(&src_xy, &weights, total, &tree, &transform).residual;
        return Ok(IcpOutcome {
            transform,
            residual,
            iterations: 0,
            history: vec![residual],
            rotation_observable: false,
        });
    }

    let mut transform = RigidTransform::planar(init.dx, init.dy, init.theta);
    let mut history = Vec::new();
    let mut iterations = 0;
    let mut corr = correspond(&src_xy, &weights, total, &tree, &transform);
    history.push(corr.residual);

    while iterations < opts.max_iterations && corr.residual > 0.0 {
        let candidate = fit_rigid(&src_xy, &corr.targets, &weights);
        let next = correspond(&src_xy, &weights, total, &tree, &candidate);
        iterations += 1;
        // The fit can only lower the residual for fixed pairs; guard against
        // round-off pushing it up by a hair.
        if next.residual > corr.residual {
            break;
        }
        let change = corr.residual - next.residual;
        transform = candidate;
        corr = next;
        history.push(corr.residual);
        if change < opts.convergence_eps {
            break;
        }
    }

    Ok(IcpOutcome {
        transform,
        residual: corr.residual,
        iterations,
        history,
        rotation_observable: true,
    })
}

/// Centroid and principal-axis angle of a point set.
///
/// The angle is `0.5 * atan2(2 mu11, mu20 - mu02)` over normalized central
/// moments, and exactly 0 when the moments are isotropic within 1e-9.
pub fn principal_pose(points: &[PixelPoint]) -> Option<RigidTransform> {
    if points.is_empty() {
        return None;
    }
    let n = points.len() as f64;
    let cx = points.iter().map(|p| p.col).sum::<f64>() / n;
    let cy = points.iter().map(|p| p.row).sum::<f64>() / n;
    let (mut m20, mut m02, mut m11) = (0.0, 0.0, 0.0);
    for p in points {
        let (x, y) = (p.col - cx, p.row - cy);
        m20 += x * x;
        m02 += y * y;
        m11 += x * y;
    }
    let (m20, m02, m11) = (m20 / n, m02 / n, m11 / n);
    let theta = if (m20 - m02).abs() < 1e-9 && m11.abs() < 1e-9 {
        0.0
    } else {
        0.5 * (2.0 * m11).atan2(m20 - m02)
    };
    Some(RigidTransform::planar(cx, cy, theta))
}

/// Initial guesses mapping `src` onto `dst`: centroid alignment alone, then
/// with the principal-axis rotation and its half-turn flip.
pub fn initial_guesses(src_pose: &RigidTransform, dst_pose: &RigidTransform) -> Vec<RigidTransform> {
    let delta = wrap_angle(dst_pose.theta - src_pose.theta);
    let mut out = Vec::with_capacity(3);
    for theta in [0.0, delta, wrap_angle(delta + std::f64::consts::PI)] {
        if out
            .iter()
            .any(|t: &RigidTransform| (wrap_angle(t.theta - theta)).abs() < 1e-12)
        {
            continue;
        }
        let (s, c) = theta.sin_cos();
        let (sx, sy) = (src_pose.dx, src_pose.dy);
        out.push(RigidTransform::planar(
            dst_pose.dx - (c * sx - s * sy),
            dst_pose.dy - (s * sx + c * sy),
            theta,
        ));
    }
    out
}

/// ICP from every guess in `inits`, keeping the lowest residual (earliest on ties).
pub fn icp_best_of(
    src: &PointSet,
    dst: &PointSet,
    inits: &[RigidTransform],
    opts: &IcpOptions,
) -> Result<IcpOutcome> {
    let mut best: Option<IcpOutcome> = None;
    for init in inits {
        let out = icp_align(src, dst, init, opts)?;
        if best.as_ref().is_none_or(|b| out.residual < b.residual) {
            best = Some(out);
        }
        if !best.as_ref().unwrap().rotation_observable {
            break;
        }
    }
    best.ok_or(Error::EmptyInput("no initial guesses"))
}

/// ICP seeded from the point sets' own centroids and principal axes.
pub fn register(src: &PointSet, dst: &PointSet, opts: &IcpOptions) -> Result<IcpOutcome> {
    let sp = principal_pose(&src.points).ok_or(Error::EmptyInput("empty source set"))?;
    let dp = principal_pose(&dst.points).ok_or(Error::EmptyInput("empty destination set"))?;
    icp_best_of(src, dst, &initial_guesses(&sp, &dp), opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn moved(xy: &[(f64, f64)], t: &RigidTransform) -> Vec<(f64, f64)> {
        xy.iter().map(|&(x, y)| t.apply(x, y)).collect()
    }

    #[test]
    fn identity_on_equal_sets() {
        let xy = [(0.0, 0.0), (3.0, 1.0), (1.0, 4.0), (5.0, 5.0)];
        let s = PointSet::from_xy(&xy);
        let out = icp_align(&s, &s, &RigidTransform::identity(), &IcpOptions::default()).unwrap();
        assert_eq!(out.residual, 0.0);
        assert!(out.transform.dx.abs() < 1e-12 && out.transform.dy.abs() < 1e-12);
        assert!(out.transform.theta.abs() < 1e-12);
    }

    #[test]
    fn square_translation() {
        let sq = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)];
        let truth = RigidTransform::planar(3.0, -2.0, 0.0);
        let src = PointSet::from_xy(&sq);
        let dst = PointSet::from_xy(&moved(&sq, &truth));
        let out = register(&src, &dst, &IcpOptions::default()).unwrap();
        assert!((out.transform.dx - 3.0).abs() < 1e-9);
        assert!((out.transform.dy + 2.0).abs() < 1e-9);
        // A square is symmetric under quarter turns; every recovered angle must
        // still land the corners exactly.
        assert!(out.residual < 1e-18);
    }

    #[test]
    fn l_shape_rotation_about_centroid() {
        let l = [(0.0, 0.0), (1.0, 0.0), (2.0, 0.0), (3.0, 0.0), (0.0, 1.0), (0.0, 2.0)];
        let n = l.len() as f64;
        let (cx, cy) = (l.iter().map(|p| p.0).sum::<f64>() / n, l.iter().map(|p| p.1).sum::<f64>() / n);
        let th = 30f64.to_radians();
        let (s, c) = th.sin_cos();
        let truth = RigidTransform::planar(cx - (c * cx - s * cy), cy - (s * cx + c * cy), th);
        let src = PointSet::from_xy(&l);
        let dst = PointSet::from_xy(&moved(&l, &truth));
        let out = register(&src, &dst, &IcpOptions::default()).unwrap();
        assert!((out.transform.theta - th).abs() < 0.5f64.to_radians());
        assert!((out.transform.dx - truth.dx).abs() < 1e-6);
        assert!((out.transform.dy - truth.dy).abs() < 1e-6);
    }

    #[test]
    fn single_destination_point_is_translation_only() {
        let src = PointSet::from_xy(&[(0.0, 0.0), (2.0, 0.0)]);
        let dst = PointSet::from_xy(&[(10.0, 10.0)]);
        let out = icp_align(&src, &dst, &RigidTransform::planar(0.0, 0.0, 1.0), &IcpOptions::default()).unwrap();
        assert!(!out.rotation_observable);
        assert_eq!(out.transform.theta, 0.0);
        assert_eq!((out.transform.dx, out.transform.dy), (9.0, 10.0));
        assert_eq!(out.residual, 1.0);
    }

    #[test]
    fn empty_sets_are_rejected() {
        let s = PointSet::from_xy(&[(0.0, 0.0)]);
        let e = PointSet::new(vec![]);
        assert!(icp_align(&s, &e, &RigidTransform::identity(), &IcpOptions::default()).is_err());
    }

    #[test]
    fn history_is_nonincreasing() {
        let pts: Vec<(f64, f64)> = (0..40)
            .map(|i| {
                let t = i as f64 * 0.37;
                (20.0 * t.cos() + 3.0 * (i % 5) as f64, 9.0 * (1.7 * t).sin() + i as f64 * 0.2)
            })
            .collect();
        let truth = RigidTransform::planar(6.0, -4.0, 0.4);
        let src = PointSet::from_xy(&pts);
        let dst = PointSet::from_xy(&moved(&pts, &truth));
        let out = icp_align(&src, &dst, &RigidTransform::identity(), &IcpOptions::default()).unwrap();
        assert!(out.history.windows(2).all(|w| w[1] <= w[0]));
    }

    #[test]
    fn principal_pose_examples() {
        let disk: Vec<PixelPoint> = (-5i32..=5)
            .flat_map(|r| (-5i32..=5).map(move |c| (r, c)))
            .filter(|&(r, c)| r * r + c * c <= 25)
            .map(|(r, c)| PixelPoint::new(r as f64 + 20.0, c as f64 + 30.0))
            .collect();
        let p = principal_pose(&disk).unwrap();
        assert_eq!(p.theta, 0.0);
        assert!((p.dx - 30.0).abs() < 1e-12 && (p.dy - 20.0).abs() < 1e-12);

        let bar: Vec<PixelPoint> = (0..11).map(|c| PixelPoint::new(4.0, c as f64)).collect();
        assert!(principal_pose(&bar).unwrap().theta.abs() < 1e-9);

        let column: Vec<PixelPoint> = (0..11).map(|r| PixelPoint::new(r as f64, 4.0)).collect();
        assert!((principal_pose(&column).unwrap().theta - PI / 2.0).abs() < 1e-9);

        let single = principal_pose(&[PixelPoint::new(7.0, 9.0)]).unwrap();
        assert_eq!((single.dx, single.dy, single.theta), (9.0, 7.0, 0.0));
    }
}
