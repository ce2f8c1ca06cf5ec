//! Constraint catalog and the weighting function of every constraint.
//!
//! Every function returns a finite, non-negative weight. Soft constraints use
//! Gaussian or exponential kernels so their weights lie in `(0, 1]`; the
//! collision-free constraints return the unbounded clearance score.

use crate::geometry::{Pose2, Rect};
use crate::particles::{Config, Trajectory, Value};
use crate::samplers::kinematics::{forward_kinematics, ArmModel};
use crate::scene::{ObjectModel, Scene};
use crate::schema::ParamKind;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConstraintKind {
    Motion,
    Kin,
    CFree,
    CFreeH,
    GraspH,
    Grasp,
    Stable,
    InBasin,
    InSaucepan,
}

use ParamKind::{Config as C, Grasp as G, Pose as P, Trajectory as T};

impl ConstraintKind {
    pub const ALL: [ConstraintKind; 9] = [
        ConstraintKind::Motion,
        ConstraintKind::Kin,
        ConstraintKind::CFree,
        ConstraintKind::CFreeH,
        ConstraintKind::GraspH,
        ConstraintKind::Grasp,
        ConstraintKind::Stable,
        ConstraintKind::InBasin,
        ConstraintKind::InSaucepan,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ConstraintKind::Motion => "Motion",
            ConstraintKind::Kin => "Kin",
            ConstraintKind::CFree => "CFree",
            ConstraintKind::CFreeH => "CFreeH",
            ConstraintKind::GraspH => "GraspH",
            ConstraintKind::Grasp => "Grasp",
            ConstraintKind::Stable => "Stable",
            ConstraintKind::InBasin => "InBasin",
            ConstraintKind::InSaucepan => "InSaucepan",
        }
    }

    /// Case-insensitive catalog lookup.
    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
    }

    /// Accepted argument kind lists.
    pub fn signatures(self) -> &'static [&'static [ParamKind]] {
        match self {
            ConstraintKind::Motion => &[&[C, C, T]],
            ConstraintKind::Kin => &[&[C, P, G]],
            ConstraintKind::CFree => &[&[T], &[T, P, G]],
            ConstraintKind::CFreeH => &[&[T, G], &[T, P, G]],
            ConstraintKind::GraspH => &[&[G]],
            ConstraintKind::Grasp => &[&[C, P, G, C, P]],
            ConstraintKind::Stable | ConstraintKind::InBasin | ConstraintKind::InSaucepan => {
                &[&[P]]
            }
        }
    }
}

impl fmt::Display for ConstraintKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Constants of the collision-free score.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstraintParams {
    pub c1: f64,
    pub c2: f64,
    /// Lower bound on the goal distance in the `C2 / eps2` term (m).
    pub eps_floor: f64,
    /// Per-waypoint clearance cap (m).
    pub d_cap: f64,
}

impl Default for ConstraintParams {
    fn default() -> Self {
        Self {
            c1: 1.0,
            c2: 1.0,
            eps_floor: 0.01,
            d_cap: 1.0,
        }
    }
}

/// Kinematic kernel scales: 2 cm position, 0.1 rad heading.
pub const KIN_POS_SCALE: f64 = 0.02;
pub const KIN_ANGLE_SCALE: f64 = 0.1;
/// Decay length of the motion length penalty (rad).
pub const MOTION_LAMBDA: f64 = 1.0;
pub const MOTION_ENDPOINT_SCALE: f64 = 0.05;
/// Exponential decay length for footprint overhang (m).
pub const STABLE_SCALE: f64 = 0.01;
pub const GRASP_OFFSET_SCALE: f64 = 0.005;
pub const GRASP_ALIGN_SCALE: f64 = 0.1;

fn cfree_core(
    tau: &Trajectory,
    grasp_target: Option<&Pose2>,
    arm: &ArmModel,
    p: &ConstraintParams,
    clearance: impl Fn(&Config) -> f64,
    scene: &Scene,
) -> f64 {
    let mut eps1 = 0.0;
    for w in tau.waypoints() {
        if !scene.in_bounds(w) {
            return 0.0;
        }
        eps1 += clearance(w).clamp(0.0, p.d_cap);
    }
    let mut score = p.c1 * eps1;
    if let Some(target) = grasp_target {
        let end = forward_kinematics(tau.last(), arm);
        let eps2 = end.position().dist(target.position()).max(p.eps_floor);
        score += p.c2 / eps2;
    }
    score
}

/// Collision-free score: `C1 * eps1 + C2 / max(eps2, floor)`, where `eps1` sums capped
/// waypoint clearances and `eps2` is the distance from the final end-effector position to the
/// world-frame grasp target. Without a target only the clearance term remains.
pub fn sigma_cfree(
    tau: &Trajectory,
    grasp_target: Option<&Pose2>,
    scene: &Scene,
    arm: &ArmModel,
    p: &ConstraintParams,
) -> f64 {
    cfree_core(
        tau,
        grasp_target,
        arm,
        p,
        |c| scene.clearance(c, arm),
        scene,
    )
}

/// As [`sigma_cfree`], with the held object swept along at grasp `g`.
pub fn sigma_cfree_h(
    tau: &Trajectory,
    grasp_target: Option<&Pose2>,
    g: &Pose2,
    object: &ObjectModel,
    scene: &Scene,
    arm: &ArmModel,
    p: &ConstraintParams,
) -> f64 {
    cfree_core(
        tau,
        grasp_target,
        arm,
        p,
        |c| scene.clearance_holding(c, arm, g, object.radius),
        scene,
    )
}

/// Kinematic feasibility of reaching object pose `p` with grasp `g` at configuration `phi`.
pub fn sigma_kin(phi: &Config, p: &Pose2, g: &Pose2, arm: &ArmModel) -> f64 {
    if !arm.within_limits(phi) {
        return 0.0;
    }
    let (d, a) = forward_kinematics(phi, arm).diff(&p.compose(g));
    let e = (d.norm() / KIN_POS_SCALE).powi(2) + (a / KIN_ANGLE_SCALE).powi(2);
    (-0.5 * e).exp()
}

/// Shortness of `tau` relative to the straight configuration-space distance, times a kernel
/// on how well its endpoints match `a` and `b`.
pub fn sigma_motion(a: &Config, b: &Config, tau: &Trajectory) -> f64 {
    let excess = (tau.length() - a.distance(b)).max(0.0);
    let ga = tau.first().distance(a);
    let gb = tau.last().distance(b);
    let s2 = 2.0 * MOTION_ENDPOINT_SCALE * MOTION_ENDPOINT_SCALE;
    (-excess / MOTION_LAMBDA).exp() * (-(ga * ga + gb * gb) / s2).exp()
}

/// Support of a disc footprint by `region`: one when fully inside, decaying with overhang.
/// Zero when the pose leaves the world.
pub fn sigma_stable(p: &Pose2, object: &ObjectModel, region: &Rect, scene: &Scene) -> f64 {
    if !p.x.is_finite() || !p.y.is_finite() || !scene.bounds.contains(p.position()) {
        return 0.0;
    }
    let overhang = region.disc_overhang(p.position(), object.radius);
    (-overhang / STABLE_SCALE).exp()
}

/// Grasp quality on a disc: offset at the rim and approach along the inward normal.
pub fn sigma_grasp_h(g: &Pose2, object: &ObjectModel) -> f64 {
    let off = g.position();
    let radial = off.norm() - object.radius;
    let inward = (crate::geometry::Vec2::ZERO - off).angle();
    let align = crate::geometry::wrap_angle(g.theta - inward);
    let k1 = (-0.5 * (radial / GRASP_OFFSET_SCALE).powi(2)).exp();
    let k2 = (-0.5 * (align / GRASP_ALIGN_SCALE).powi(2)).exp();
    k1 * k2
}

/// Joint feasibility of one grasp at pick time and at place time.
pub fn sigma_grasp(
    phi0: &Config,
    p0: &Pose2,
    g0: &Pose2,
    phi1: &Config,
    p1: &Pose2,
    arm: &ArmModel,
) -> f64 {
    sigma_kin(phi0, p0, g0, arm) * sigma_kin(phi1, p1, g0, arm)
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EvalError {
    #[error("expected {expected} arguments, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("argument {0} has the wrong kind")]
    Kind(usize),
    #[error("constraint needs {0}")]
    Missing(&'static str),
}

/// A factor's weighting function over its scope, in scope order.
pub trait Potential: Send + Sync + fmt::Debug {
    fn evaluate(&self, args: &[&Value]) -> Result<f64, EvalError>;
}

/// Geometry and models a kitchen constraint needs.
#[derive(Debug, Clone)]
pub struct KitchenFactor {
    pub kind: ConstraintKind,
    pub scene: Arc<Scene>,
    pub arm: ArmModel,
    pub object: Option<ObjectModel>,
    /// Support region for Stable/InBasin/InSaucepan.
    pub region: Option<Rect>,
    pub params: ConstraintParams,
}

fn cfg(a: &[&Value], i: usize) -> Result<Config, EvalError> {
    a[i].as_config().copied().ok_or(EvalError::Kind(i))
}
fn pose(a: &[&Value], i: usize) -> Result<Pose2, EvalError> {
    a[i].as_pose().copied().ok_or(EvalError::Kind(i))
}
fn grasp(a: &[&Value], i: usize) -> Result<Pose2, EvalError> {
    a[i].as_grasp().copied().ok_or(EvalError::Kind(i))
}
fn traj<'a>(a: &[&'a Value], i: usize) -> Result<&'a Trajectory, EvalError> {
    a[i].as_trajectory().ok_or(EvalError::Kind(i))
}

impl Potential for KitchenFactor {
    fn evaluate(&self, a: &[&Value]) -> Result<f64, EvalError> {
        self.scene.meter.add(1);
        let arity = |n: usize| {
            if a.len() == n {
                Ok(())
            } else {
                Err(EvalError::Arity {
                    expected: n,
                    got: a.len(),
                })
            }
        };
        let object = || self.object.ok_or(EvalError::Missing("an object model"));
        match self.kind {
            ConstraintKind::Motion => {
                arity(3)?;
                Ok(sigma_motion(&cfg(a, 0)?, &cfg(a, 1)?, traj(a, 2)?))
            }
            ConstraintKind::Kin => {
                arity(3)?;
                Ok(sigma_kin(
                    &cfg(a, 0)?,
                    &pose(a, 1)?,
                    &grasp(a, 2)?,
                    &self.arm,
                ))
            }
            ConstraintKind::CFree => {
                let target = match a.len() {
                    1 => None,
                    3 => Some(pose(a, 1)?.compose(&grasp(a, 2)?)),
                    n => {
                        return Err(EvalError::Arity {
                            expected: 3,
                            got: n,
                        })
                    }
                };
                Ok(sigma_cfree(
                    traj(a, 0)?,
                    target.as_ref(),
                    &self.scene,
                    &self.arm,
                    &self.params,
                ))
            }
            ConstraintKind::CFreeH => {
                let (target, g) = match a.len() {
                    2 => (None, grasp(a, 1)?),
                    3 => {
                        let g = grasp(a, 2)?;
                        (Some(pose(a, 1)?.compose(&g)), g)
                    }
                    n => {
                        return Err(EvalError::Arity {
                            expected: 3,
                            got: n,
                        })
                    }
                };
                Ok(sigma_cfree_h(
                    traj(a, 0)?,
                    target.as_ref(),
                    &g,
                    &object()?,
                    &self.scene,
                    &self.arm,
                    &self.params,
                ))
            }
            ConstraintKind::GraspH => {
                arity(1)?;
                Ok(sigma_grasp_h(&grasp(a, 0)?, &object()?))
            }
            ConstraintKind::Grasp => {
                arity(5)?;
                Ok(sigma_grasp(
                    &cfg(a, 0)?,
                    &pose(a, 1)?,
                    &grasp(a, 2)?,
                    &cfg(a, 3)?,
                    &pose(a, 4)?,
                    &self.arm,
                ))
            }
            ConstraintKind::Stable | ConstraintKind::InBasin | ConstraintKind::InSaucepan => {
                arity(1)?;
                let region = self.region.ok_or(EvalError::Missing("a support region"))?;
                Ok(sigma_stable(&pose(a, 0)?, &object()?, &region, &self.scene))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Vec2;
    use crate::samplers::kinematics::inverse_kinematics;

    fn arm() -> ArmModel {
        ArmModel::default()
    }

    fn world() -> Scene {
        Scene::empty(Rect::new(Vec2::new(-5.0, -5.0), Vec2::new(5.0, 5.0)))
    }

    fn straight(a: Config, b: Config, n: usize) -> Trajectory {
        Trajectory::new(
            (0..n)
                .map(|i| a.lerp(&b, i as f64 / (n - 1) as f64))
                .collect(),
        )
    }

    #[test]
    fn catalog_lookup() {
        assert_eq!(
            ConstraintKind::from_name("inBasin"),
            Some(ConstraintKind::InBasin)
        );
        assert_eq!(
            ConstraintKind::from_name("grasp"),
            Some(ConstraintKind::Grasp)
        );
        assert_eq!(ConstraintKind::from_name("Fly"), None);
    }

    #[test]
    fn kin_exact_is_one_and_two_cm_is_e_half() {
        let p = Pose2::new(0.6, 0.3, 0.0);
        let g = Pose2::new(-0.04, 0.0, 0.0);
        let q = inverse_kinematics(&p.compose(&g), Vec2::ZERO, &arm())[0];
        let phi = Config::new(Vec2::ZERO, q);
        assert!((sigma_kin(&phi, &p, &g, &arm()) - 1.0).abs() < 1e-12);
        let shifted = Pose2::new(0.62, 0.3, 0.0);
        assert!((sigma_kin(&phi, &shifted, &g, &arm()) - (-0.5f64).exp()).abs() < 1e-9);
        let bad = Config::new(Vec2::ZERO, [3.5, 0.0, 0.0]);
        assert_eq!(sigma_kin(&bad, &p, &g, &arm()), 0.0);
    }

    #[test]
    fn motion_kernel() {
        let a = Config::new(Vec2::ZERO, [0.0, 0.5, 0.0]);
        let zero = Trajectory::new(vec![a; 20]);
        assert!((sigma_motion(&a, &a, &zero) - 1.0).abs() < 1e-12);

        // endpoints exact, path detours by lambda in total length
        let b = Config::new(Vec2::ZERO, [1.0, 0.5, 0.0]);
        let mid = Config::new(Vec2::ZERO, [0.5, 0.5 + (0.75f64).sqrt(), 0.0]);
        let mut pts = vec![a, mid, b];
        pts.extend(std::iter::repeat_n(b, 17));
        let t = Trajectory::new(pts);
        assert!((t.length() - 2.0).abs() < 1e-12);
        assert!((sigma_motion(&a, &b, &t) - (-1.0f64).exp()).abs() < 1e-9);

        let far = Config::new(Vec2::ZERO, [2.5, -1.0, 0.0]);
        let swapped = straight(far, a, 20);
        assert!(sigma_motion(&a, &far, &swapped) < 1e-6);
    }

    #[test]
    fn stable_kernel() {
        let s = world();
        let region = Rect::centered(Vec2::new(1.0, 1.0), 0.3, 0.3);
        let obj = ObjectModel { radius: 0.04 };
        assert_eq!(
            sigma_stable(&Pose2::new(1.0, 1.0, 0.0), &obj, &region, &s),
            1.0
        );
        // disc pokes 1 cm past the right edge
        let p = Pose2::new(1.15 - 0.04 + 0.01, 1.0, 0.0);
        assert!((sigma_stable(&p, &obj, &region, &s) - (-1.0f64).exp()).abs() < 1e-9);
        assert_eq!(
            sigma_stable(&Pose2::new(9.0, 0.0, 0.0), &obj, &region, &s),
            0.0
        );
    }

    #[test]
    fn grasp_h_kernel() {
        let obj = ObjectModel { radius: 0.04 };
        let g = Pose2::new(-0.04, 0.0, 0.0);
        assert!((sigma_grasp_h(&g, &obj) - 1.0).abs() < 1e-12);
        let g = Pose2::new(-0.045, 0.0, 0.0);
        assert!((sigma_grasp_h(&g, &obj) - (-0.5f64).exp()).abs() < 1e-9);
        let g = Pose2::new(-0.04, 0.0, std::f64::consts::FRAC_PI_2);
        assert!(sigma_grasp_h(&g, &obj) < 1e-3);
    }

    #[test]
    fn grasp_is_product_of_kin() {
        let p0 = Pose2::new(0.5, 0.5, 0.0);
        let p1 = Pose2::new(-0.5, 0.5, 0.0);
        let g = Pose2::new(0.0, -0.04, std::f64::consts::FRAC_PI_2);
        let q0 = inverse_kinematics(&p0.compose(&g), Vec2::ZERO, &arm())[0];
        let q1 = inverse_kinematics(&p1.compose(&g), Vec2::ZERO, &arm())[0];
        let phi0 = Config::new(Vec2::ZERO, q0);
        let phi1 = Config::new(Vec2::ZERO, q1);
        assert!((sigma_grasp(&phi0, &p0, &g, &phi1, &p1, &arm()) - 1.0).abs() < 1e-12);
        let off0 = p0.translated(Vec2::new(0.02, 0.0));
        let off1 = p1.translated(Vec2::new(0.0, 0.02));
        let v = sigma_grasp(&phi0, &off0, &g, &phi1, &off1, &arm());
        assert!((v - (-1.0f64).exp()).abs() < 1e-9);
        let bad = Config::new(Vec2::ZERO, [0.0, 4.0, 0.0]);
        assert_eq!(sigma_grasp(&phi0, &p0, &g, &bad, &p1, &arm()), 0.0);
    }

    #[test]
    fn cfree_exact_reach_in_empty_world() {
        let s = world();
        let a = Config::new(Vec2::ZERO, [0.0, 0.0, 0.0]);
        let b = Config::new(Vec2::ZERO, [0.5, 0.0, 0.0]);
        let t = straight(a, b, 20);
        let target = forward_kinematics(&b, &arm());
        let p = ConstraintParams::default();
        let w = sigma_cfree(&t, Some(&target), &s, &arm(), &p);
        assert!((w - (20.0 + 1.0 / p.eps_floor)).abs() < 1e-6);
    }

    #[test]
    fn cfree_h_matches_cfree_without_attachment_or_obstacles() {
        let mut s = world();
        let a = Config::new(Vec2::ZERO, [0.0, 0.3, 0.0]);
        let b = Config::new(Vec2::ZERO, [1.0, 0.3, 0.0]);
        let t = straight(a, b, 20);
        let g = Pose2::new(-0.04, 0.0, 0.0);
        let p = ConstraintParams::default();
        let zero = ObjectModel { radius: 0.0 };
        let disc = ObjectModel { radius: 0.04 };
        let base = sigma_cfree(&t, None, &s, &arm(), &p);
        assert_eq!(sigma_cfree_h(&t, None, &g, &disc, &s, &arm(), &p), base);
        s.obstacles
            .push(Rect::centered(Vec2::new(0.2, 1.0), 0.2, 0.2));
        let base = sigma_cfree(&t, None, &s, &arm(), &p);
        assert_eq!(sigma_cfree_h(&t, None, &g, &zero, &s, &arm(), &p), base);
    }
}
