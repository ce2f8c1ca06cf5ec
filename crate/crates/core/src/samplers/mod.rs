//! Generators for the continuous parameters of a plan skeleton.
//!
//! Every generator returns exactly `m` particles. Poses are weighted by the belief density;
//! the others are uniform.

pub mod kinematics;
pub mod rrt;

use crate::geometry::{wrap_angle, Pose2, Vec2};
use crate::par::{map_range, ExecMode};
use crate::particles::{Config, ParticleSet, Trajectory, Value};
use crate::scene::{ObjectModel, Scene};
use kinematics::{inverse_kinematics, ArmModel};
use rand::distr::weighted::WeightedIndex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use rrt::{Held, MotionPlanner, RrtParams};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use thiserror::Error;

/// Noise levels: `pose` scales the object observation std, `config` the per-joint actuation
/// and proprioception std.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct NoiseModel {
    pub pose: f64,
    pub config: f64,
}

/// Metres of observation std per unit of pose noise level.
pub const POSE_STD_PER_LEVEL: f64 = 0.2;
/// Radians of joint std per unit of configuration noise level.
pub const JOINT_STD_PER_LEVEL: f64 = 0.02;

impl NoiseModel {
    pub fn new(pose: f64, config: f64) -> Self {
        assert!(pose >= 0.0 && config >= 0.0, "noise must be non-negative");
        Self { pose, config }
    }

    pub fn pose_std(&self) -> f64 {
        self.pose * POSE_STD_PER_LEVEL
    }

    pub fn joint_std(&self) -> f64 {
        self.config * JOINT_STD_PER_LEVEL
    }
}

/// Container mixture over Gaussian position estimates of one object.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PoseBelief {
    /// `(container, mass, mean)`; masses sum to one.
    pub modes: Vec<(String, f64, Pose2)>,
    pub std: f64,
}

impl PoseBelief {
    pub fn point(container: &str, mean: Pose2, std: f64) -> Self {
        Self {
            modes: vec![(container.to_string(), 1.0, mean)],
            std,
        }
    }

    /// Highest-mass mode; first one on ties.
    pub fn most_likely(&self) -> &(String, f64, Pose2) {
        let mut best = &self.modes[0];
        for m in &self.modes {
            if m.1 > best.1 {
                best = m;
            }
        }
        best
    }

    pub fn mass(&self, container: &str) -> f64 {
        self.modes
            .iter()
            .filter(|m| m.0 == container)
            .map(|m| m.1)
            .sum()
    }

    /// Drops a container and renormalizes the others. Leaves the belief unchanged when that
    /// would remove all mass.
    pub fn exclude(&mut self, container: &str) {
        let rest: f64 = self
            .modes
            .iter()
            .filter(|m| m.0 != container)
            .map(|m| m.1)
            .sum();
        if rest <= 0.0 {
            return;
        }
        self.modes.retain(|m| m.0 != container);
        for m in &mut self.modes {
            m.1 /= rest;
        }
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum SamplerError {
    #[error("no reachable configuration for any grasp target")]
    Unreachable,
    #[error("motion planning failed for every configuration pair")]
    NoTrajectory,
    #[error("empty input particle set")]
    Empty,
}

fn normal(std: f64) -> Option<Normal<f64>> {
    (std > 0.0).then(|| Normal::new(0.0, std).expect("finite std"))
}

/// Draws `m` poses from the belief mixture, each weighted by the mixture density at the sample.
pub fn pose_sampler<R: Rng + ?Sized>(belief: &PoseBelief, m: usize, rng: &mut R) -> ParticleSet {
    let masses: Vec<f64> = belief.modes.iter().map(|x| x.1).collect();
    let pick = WeightedIndex::new(&masses).ok();
    let n = normal(belief.std);
    let values: Vec<Value> = (0..m)
        .map(|_| {
            let k = pick.as_ref().map(|d| d.sample(rng)).unwrap_or(0);
            let mean = belief.modes[k].2;
            let (dx, dy) = match &n {
                Some(n) => (n.sample(rng), n.sample(rng)),
                None => (0.0, 0.0),
            };
            Value::Pose(Pose2::new(mean.x + dx, mean.y + dy, mean.theta))
        })
        .collect();
    if belief.std <= 0.0 {
        return ParticleSet::uniform(values);
    }
    let var = belief.std * belief.std;
    let w = values
        .iter()
        .map(|v| {
            let p = v.as_pose().expect("pose").position();
            belief
                .modes
                .iter()
                .map(|(_, mass, mu)| mass * (-p.dist(mu.position()).powi(2) / (2.0 * var)).exp())
                .sum()
        })
        .collect();
    ParticleSet::weighted(values, w)
}

/// Length of the approach ray that must stay clear of obstacles (m).
pub const APPROACH_CLEARANCE: f64 = 0.15;

/// Rim grasp of a disc from world approach direction `alpha` (direction from the object
/// center toward the gripper), expressed in the object frame.
pub fn rim_grasp(object_pose: &Pose2, radius: f64, alpha: f64) -> Pose2 {
    let local = wrap_angle(alpha - object_pose.theta);
    let off = Vec2::from_angle(local) * radius;
    Pose2::new(off.x, off.y, wrap_angle(local + PI))
}

/// Whether the approach ray from the rim of the object in direction `alpha` hits an obstacle.
pub fn approach_blocked(scene: &Scene, object_pose: &Pose2, radius: f64, alpha: f64) -> bool {
    let c = object_pose.position();
    let d = Vec2::from_angle(alpha);
    let a = c + d * radius;
    let b = c + d * (radius + APPROACH_CLEARANCE);
    scene.obstacles.iter().any(|o| o.intersects_segment(a, b))
}

/// One grasp per pose particle (round-robin), with approach direction drawn uniformly among
/// unblocked directions.
pub fn grasp_sampler<R: Rng + ?Sized>(
    poses: &ParticleSet,
    object: &ObjectModel,
    scene: &Scene,
    m: usize,
    rng: &mut R,
) -> Result<ParticleSet, SamplerError> {
    if poses.is_empty() {
        return Err(SamplerError::Empty);
    }
    let mut values = Vec::with_capacity(m);
    for i in 0..m {
        let p = poses.values[i % poses.len()]
            .as_pose()
            .copied()
            .ok_or(SamplerError::Empty)?;
        let mut alpha = rng.random_range(-PI..PI);
        for _ in 0..64 {
            if !approach_blocked(scene, &p, object.radius, alpha) {
                break;
            }
            alpha = rng.random_range(-PI..PI);
        }
        values.push(Value::Grasp(rim_grasp(&p, object.radius, alpha)));
    }
    Ok(ParticleSet::uniform(values))
}

/// IK solutions for `pose ∘ grasp` from `base`, alternating elbow branches across particles.
/// Targets out of reach are replaced by other (pose, grasp) pairs.
pub fn ik_sampler<R: Rng + ?Sized>(
    poses: &ParticleSet,
    grasps: &ParticleSet,
    base: Vec2,
    arm: &ArmModel,
    m: usize,
    rng: &mut R,
) -> Result<ParticleSet, SamplerError> {
    if poses.is_empty() || grasps.is_empty() {
        return Err(SamplerError::Empty);
    }
    let solve = |pi: usize, gi: usize, branch: usize| -> Option<Config> {
        let p = poses.values[pi].as_pose()?;
        let g = grasps.values[gi].as_grasp()?;
        let sols = inverse_kinematics(&p.compose(g), base, arm);
        (!sols.is_empty()).then(|| Config::new(base, sols[branch % sols.len()]))
    };
    let mut values = Vec::with_capacity(m);
    for i in 0..m {
        let mut c = solve(i % poses.len(), i % grasps.len(), i);
        let mut tries = 0;
        while c.is_none() && tries < 20 * m.max(1) {
            c = solve(
                rng.random_range(0..poses.len()),
                rng.random_range(0..grasps.len()),
                i,
            );
            tries += 1;
        }
        values.push(Value::Config(c.ok_or(SamplerError::Unreachable)?));
    }
    Ok(ParticleSet::uniform(values))
}

/// Number of Gaussian sub-samples per configuration particle.
pub const SUBSAMPLES: usize = 10;

/// `j` joint-space offsets drawn from `N(0, std² I)`, each with its density value.
/// A zero std yields a single zero offset of weight one.
pub fn config_offsets<R: Rng + ?Sized>(j: usize, std: f64, rng: &mut R) -> Vec<([f64; 3], f64)> {
    let Some(n) = normal(std) else {
        return vec![([0.0; 3], 1.0)];
    };
    let norm = (2.0 * PI * std * std).powf(-1.5);
    (0..j)
        .map(|_| {
            let e = [n.sample(rng), n.sample(rng), n.sample(rng)];
            let q = e.iter().map(|x| x * x).sum::<f64>() / (std * std);
            (e, norm * (-0.5 * q).exp())
        })
        .collect()
}

pub fn offset_config(c: &Config, e: &[f64; 3]) -> Config {
    Config::new(
        c.base,
        [c.joints[0] + e[0], c.joints[1] + e[1], c.joints[2] + e[2]],
    )
}

/// Motion-planning context for one trajectory variable.
#[derive(Debug, Clone, Copy)]
pub struct TrajectoryRequest<'a> {
    pub scene: &'a Scene,
    pub arm: &'a ArmModel,
    pub held: Option<Held>,
    pub tuck: [f64; 3],
    pub params: RrtParams,
    pub mode: ExecMode,
}

/// Connects (start, goal) configuration pairs taken round-robin; a failed pair is retried with
/// random pairs a few times, and slots that still fail reuse successful trajectories.
/// Every slot draws from its own seeded stream, so the result does not depend on `req.mode`.
pub fn trajectory_sampler<R: Rng + ?Sized>(
    starts: &ParticleSet,
    goals: &ParticleSet,
    req: &TrajectoryRequest<'_>,
    m: usize,
    rng: &mut R,
) -> Result<ParticleSet, SamplerError> {
    if starts.is_empty() || goals.is_empty() {
        return Err(SamplerError::Empty);
    }
    let mut mp = MotionPlanner::new(req.scene, req.arm).holding(req.held);
    mp.params = req.params;
    let cfg = |s: &ParticleSet, i: usize| s.values[i].as_config().copied();
    let seeds: Vec<u64> = (0..m).map(|_| rng.random()).collect();
    let slots: Vec<Option<Trajectory>> = map_range(m, req.mode, |i| {
        let mut r = ChaCha8Rng::seed_from_u64(seeds[i]);
        let (mut a, mut b) = (i % starts.len(), i % goals.len());
        for _ in 0..RETRIES {
            if let (Some(x), Some(y)) = (cfg(starts, a), cfg(goals, b)) {
                if let Some(t) = mp.plan(&x, &y, req.tuck, &mut r) {
                    return Some(t);
                }
            }
            a = r.random_range(0..starts.len());
            b = r.random_range(0..goals.len());
        }
        None
    });
    let ok: Vec<&Trajectory> = slots.iter().flatten().collect();
    if ok.is_empty() {
        return Err(SamplerError::NoTrajectory);
    }
    let values = slots
        .iter()
        .enumerate()
        .map(|(i, t)| Value::Trajectory(t.as_ref().unwrap_or(ok[i % ok.len()]).clone()))
        .collect();
    Ok(ParticleSet::uniform(values))
}

const RETRIES: usize = 3;

/// Constant trajectory at `c`.
pub fn stationary(c: &Config, waypoints: usize) -> Trajectory {
    Trajectory::new(vec![*c; waypoints])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Rect;
    use crate::samplers::kinematics::forward_kinematics;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rng() -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(7)
    }

    fn std_of(xs: &[f64]) -> f64 {
        let n = xs.len() as f64;
        let mean = xs.iter().sum::<f64>() / n;
        (xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
    }

    #[test]
    fn zero_noise_poses_equal_mean() {
        let b = PoseBelief::point("d1", Pose2::new(0.4, 0.3, 0.0), 0.0);
        let s = pose_sampler(&b, 50, &mut rng());
        assert_eq!(s.len(), 50);
        assert!(s
            .values
            .iter()
            .all(|v| v == &Value::Pose(Pose2::new(0.4, 0.3, 0.0))));
    }

    #[test]
    fn pose_spread_matches_std() {
        let b = PoseBelief::point("d1", Pose2::new(0.4, 0.3, 0.0), 0.10);
        let s = pose_sampler(&b, 100, &mut rng());
        let xs: Vec<f64> = s.values.iter().map(|v| v.as_pose().unwrap().x).collect();
        let sd = std_of(&xs);
        assert!((sd - 0.10).abs() < 0.02, "{sd}");
    }

    #[test]
    fn mixture_counts_are_plausible() {
        let third = 1.0 / 3.0;
        let b = PoseBelief {
            modes: vec![
                ("d1".into(), third, Pose2::new(0.0, 0.0, 0.0)),
                ("d2".into(), third, Pose2::new(10.0, 0.0, 0.0)),
                ("d3".into(), third, Pose2::new(20.0, 0.0, 0.0)),
            ],
            std: 0.01,
        };
        let m = 300;
        let s = pose_sampler(&b, m, &mut rng());
        // binomial 95% half-width for p = 1/3
        let half = 1.96 * (m as f64 * third * (1.0 - third)).sqrt();
        for k in 0..3 {
            let c = s
                .values
                .iter()
                .filter(|v| ((v.as_pose().unwrap().x / 10.0).round() as usize) == k)
                .count() as f64;
            assert!((c - m as f64 * third).abs() <= half, "mode {k}: {c}");
        }
    }

    #[test]
    fn exclude_renormalizes() {
        let third = 1.0 / 3.0;
        let mut b = PoseBelief {
            modes: vec![
                ("d1".into(), third, Pose2::default()),
                ("d2".into(), third, Pose2::default()),
                ("d3".into(), third, Pose2::default()),
            ],
            std: 0.1,
        };
        b.exclude("d1");
        assert!((b.mass("d2") - 0.5).abs() < 1e-12 && b.mass("d1") == 0.0);
        b.exclude("d2");
        assert!((b.mass("d3") - 1.0).abs() < 1e-12);
        b.exclude("d3");
        assert!((b.mass("d3") - 1.0).abs() < 1e-12);
    }

    #[test]
    fn disc_grasps_sit_on_rim() {
        let poses = ParticleSet::uniform(
            (0..100)
                .map(|i| Value::Pose(Pose2::new(i as f64 * 0.01, 0.0, 0.3)))
                .collect(),
        );
        let scene = Scene::empty(Rect::new(Vec2::new(-5.0, -5.0), Vec2::new(5.0, 5.0)));
        let obj = ObjectModel { radius: 0.04 };
        let g = grasp_sampler(&poses, &obj, &scene, 100, &mut rng()).unwrap();
        assert_eq!(g.len(), 100);
        for v in &g.values {
            let g = v.as_grasp().unwrap();
            assert!((g.position().norm() - 0.04).abs() < 1e-9);
            assert!(crate::library::sigma_grasp_h(g, &obj) > 1.0 - 1e-9);
        }
    }

    #[test]
    fn blocked_side_is_avoided() {
        let mut scene = Scene::empty(Rect::new(Vec2::new(-5.0, -5.0), Vec2::new(5.0, 5.0)));
        // wall immediately right of the object
        scene
            .obstacles
            .push(Rect::new(Vec2::new(0.06, -1.0), Vec2::new(0.1, 1.0)));
        let p = Pose2::new(0.0, 0.0, 0.0);
        let poses = ParticleSet::uniform(vec![Value::Pose(p)]);
        let obj = ObjectModel { radius: 0.04 };
        let g = grasp_sampler(&poses, &obj, &scene, 200, &mut rng()).unwrap();
        for v in &g.values {
            let g = v.as_grasp().unwrap();
            let world = p.compose(g);
            let alpha = (world.position() - p.position()).angle();
            // oracle: walk the approach ray in 1 mm steps
            let dir = Vec2::from_angle(alpha);
            let hit = (0..=150).any(|k| {
                let q = p.position() + dir * (0.04 + k as f64 * 0.001);
                scene.obstacles.iter().any(|o| o.contains(q))
            });
            assert!(!hit, "approach {alpha} is blocked");
        }
    }

    #[test]
    fn ik_configs_reach_targets() {
        let poses = ParticleSet::uniform(vec![Value::Pose(Pose2::new(0.6, 0.2, 0.0))]);
        let grasps = ParticleSet::uniform(vec![
            Value::Grasp(Pose2::new(-0.04, 0.0, 0.0)),
            Value::Grasp(Pose2::new(0.0, 0.04, -PI / 2.0)),
        ]);
        let arm = ArmModel::default();
        let s = ik_sampler(&poses, &grasps, Vec2::ZERO, &arm, 10, &mut rng()).unwrap();
        assert_eq!(s.len(), 10);
        for (i, v) in s.values.iter().enumerate() {
            let c = v.as_config().unwrap();
            let t = Pose2::new(0.6, 0.2, 0.0).compose(grasps.values[i % 2].as_grasp().unwrap());
            let (d, a) = forward_kinematics(c, &arm).diff(&t);
            assert!(d.norm() < 1e-9 && a.abs() < 1e-9);
        }
        let far = ParticleSet::uniform(vec![Value::Pose(Pose2::new(3.0, 0.0, 0.0))]);
        assert_eq!(
            ik_sampler(&far, &grasps, Vec2::ZERO, &arm, 4, &mut rng()),
            Err(SamplerError::Unreachable)
        );
    }

    #[test]
    fn subsample_spread_matches_config_noise() {
        let mut r = rng();
        let mut xs = Vec::new();
        for _ in 0..100 {
            for (e, p) in config_offsets(SUBSAMPLES, 0.25, &mut r) {
                assert!(p > 0.0);
                xs.extend_from_slice(&e);
            }
        }
        let sd = std_of(&xs);
        assert!((sd - 0.25).abs() < 0.05, "{sd}");
        assert_eq!(
            config_offsets(SUBSAMPLES, 0.0, &mut r),
            vec![([0.0; 3], 1.0)]
        );
    }

    #[test]
    fn trajectories_connect_their_endpoints() {
        let scene = Scene::empty(Rect::new(Vec2::new(-5.0, -5.0), Vec2::new(5.0, 5.0)));
        let arm = ArmModel::default();
        let starts = ParticleSet::uniform(vec![Value::Config(Config::new(
            Vec2::ZERO,
            [0.0, 1.0, 0.0],
        ))]);
        let goals = ParticleSet::uniform(vec![Value::Config(Config::new(
            Vec2::new(1.0, 0.5),
            [0.5, -1.0, 0.0],
        ))]);
        let req = TrajectoryRequest {
            scene: &scene,
            arm: &arm,
            held: None,
            tuck: [PI / 2.0, -2.9, 0.0],
            params: RrtParams::default(),
            mode: ExecMode::Sequential,
        };
        let t = trajectory_sampler(&starts, &goals, &req, 5, &mut rng()).unwrap();
        assert_eq!(t.len(), 5);
        for v in &t.values {
            let t = v.as_trajectory().unwrap();
            assert_eq!(t.waypoints().len(), 20);
            assert_eq!(t.first(), starts.values[0].as_config().unwrap());
            assert_eq!(t.last(), goals.values[0].as_config().unwrap());
        }
    }

    #[test]
    fn pose_weights_follow_density() {
        let b = PoseBelief::point("r", Pose2::new(1.0, 1.0, 0.0), 0.05);
        let s = pose_sampler(&b, 200, &mut rng());
        assert!(s.is_normalized());
        // oracle: nearer samples weigh more
        let d = |i: usize| {
            s.values[i]
                .as_pose()
                .unwrap()
                .position()
                .dist(Vec2::new(1.0, 1.0))
        };
        let near = (0..200).min_by(|&i, &j| d(i).total_cmp(&d(j))).unwrap();
        assert_eq!(s.argmax(), near);
    }
}
