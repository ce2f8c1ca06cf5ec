//! Sample values and weighted particle sets.

use crate::geometry::{wrap_angle, Pose2, Vec2};
use rand::Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};
use std::sync::Arc;

/// Robot configuration: holonomic base position plus shoulder, elbow and wrist angles.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Config {
    pub base: Vec2,
    pub joints: [f64; 3],
}

impl Config {
    pub fn new(base: Vec2, joints: [f64; 3]) -> Self {
        Self { base, joints }
    }

    /// Euclidean distance over base coordinates and joint angles.
    pub fn distance(&self, o: &Config) -> f64 {
        let db = self.base - o.base;
        let mut s = db.dot(db);
        for k in 0..3 {
            let d = self.joints[k] - o.joints[k];
            s += d * d;
        }
        s.sqrt()
    }

    /// Largest single-coordinate difference.
    pub fn max_displacement(&self, o: &Config) -> f64 {
        let mut m = (self.base.x - o.base.x)
            .abs()
            .max((self.base.y - o.base.y).abs());
        for k in 0..3 {
            m = m.max((self.joints[k] - o.joints[k]).abs());
        }
        m
    }

    pub fn lerp(&self, o: &Config, t: f64) -> Config {
        let mut j = [0.0; 3];
        for (k, v) in j.iter_mut().enumerate() {
            *v = self.joints[k] + (o.joints[k] - self.joints[k]) * t;
        }
        Config::new(self.base + (o.base - self.base) * t, j)
    }
}

/// Fixed-length waypoint list in configuration space.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory(pub Arc<[Config]>);

impl Trajectory {
    pub fn new(points: Vec<Config>) -> Self {
        Self(points.into())
    }

    pub fn waypoints(&self) -> &[Config] {
        &self.0
    }

    pub fn first(&self) -> &Config {
        &self.0[0]
    }

    pub fn last(&self) -> &Config {
        &self.0[self.0.len() - 1]
    }

    pub fn length(&self) -> f64 {
        self.0.windows(2).map(|w| w[0].distance(&w[1])).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum VarKind {
    Config,
    Pose,
    Grasp,
    Trajectory,
    Discrete,
}

impl VarKind {
    pub fn label(self) -> &'static str {
        match self {
            VarKind::Config => "config",
            VarKind::Pose => "pose",
            VarKind::Grasp => "grasp",
            VarKind::Trajectory => "trajectory",
            VarKind::Discrete => "discrete",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Config(Config),
    Pose(Pose2),
    /// End-effector pose relative to the object frame.
    Grasp(Pose2),
    Trajectory(Trajectory),
    Discrete(u32),
}

impl Value {
    pub fn kind(&self) -> VarKind {
        match self {
            Value::Config(_) => VarKind::Config,
            Value::Pose(_) => VarKind::Pose,
            Value::Grasp(_) => VarKind::Grasp,
            Value::Trajectory(_) => VarKind::Trajectory,
            Value::Discrete(_) => VarKind::Discrete,
        }
    }

    pub fn as_config(&self) -> Option<&Config> {
        match self {
            Value::Config(c) => Some(c),
            _ => None,
        }
    }

    pub fn as_pose(&self) -> Option<&Pose2> {
        match self {
            Value::Pose(p) => Some(p),
            _ => None,
        }
    }

    pub fn as_grasp(&self) -> Option<&Pose2> {
        match self {
            Value::Grasp(g) => Some(g),
            _ => None,
        }
    }

    pub fn as_trajectory(&self) -> Option<&Trajectory> {
        match self {
            Value::Trajectory(t) => Some(t),
            _ => None,
        }
    }

    pub fn as_discrete(&self) -> Option<u32> {
        match self {
            Value::Discrete(d) => Some(*d),
            _ => None,
        }
    }
}

/// Convergence thresholds on the displacement of a variable's best sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub pose: f64,
    pub config: f64,
    pub grasp_position: f64,
    pub grasp_angle: f64,
    pub trajectory: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            pose: 0.01,
            config: 0.01,
            grasp_position: 0.01,
            grasp_angle: 0.05,
            trajectory: 0.01,
        }
    }
}

impl Tolerances {
    /// Whether `a` and `b` are within the kind-specific tolerance of each other.
    pub fn close(&self, a: &Value, b: &Value) -> bool {
        match (a, b) {
            (Value::Pose(a), Value::Pose(b)) => a.position().dist(b.position()) < self.pose,
            (Value::Config(a), Value::Config(b)) => a.max_displacement(b) < self.config,
            (Value::Grasp(a), Value::Grasp(b)) => {
                let (d, th) = a.diff(b);
                d.norm() < self.grasp_position && th.abs() < self.grasp_angle
            }
            (Value::Trajectory(a), Value::Trajectory(b)) => {
                a.0.len() == b.0.len()
                    && a.0
                        .iter()
                        .zip(b.0.iter())
                        .all(|(x, y)| x.max_displacement(y) < self.trajectory)
            }
            (Value::Discrete(a), Value::Discrete(b)) => a == b,
            _ => false,
        }
    }
}

/// Sum-to-one tolerance for every emitted particle set.
pub const WEIGHT_TOL: f64 = 1e-9;

/// M weighted samples of one variable.
#[derive(Debug, Clone, PartialEq)]
pub struct ParticleSet {
    pub values: Vec<Value>,
    pub weights: Vec<f64>,
}

impl ParticleSet {
    pub fn uniform(values: Vec<Value>) -> Self {
        let n = values.len();
        Self {
            weights: vec![1.0 / n as f64; n],
            values,
        }
    }

    /// Normalizes raw weights. Non-finite or negative weights count as zero; an all-zero
    /// vector falls back to uniform.
    pub fn weighted(values: Vec<Value>, mut raw: Vec<f64>) -> Self {
        debug_assert_eq!(values.len(), raw.len());
        for w in raw.iter_mut() {
            if !w.is_finite() || *w < 0.0 {
                *w = 0.0;
            }
        }
        normalize(&mut raw);
        Self {
            values,
            weights: raw,
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Index of the highest weight, lowest index on ties.
    pub fn argmax(&self) -> usize {
        let mut best = 0;
        for (i, w) in self.weights.iter().enumerate() {
            if *w > self.weights[best] {
                best = i;
            }
        }
        best
    }

    pub fn best(&self) -> &Value {
        &self.values[self.argmax()]
    }

    pub fn weight_sum(&self) -> f64 {
        self.weights.iter().sum()
    }

    pub fn is_normalized(&self) -> bool {
        (self.weight_sum() - 1.0).abs() <= WEIGHT_TOL
    }
}

/// Scales weights to sum to one; zero total mass becomes uniform.
pub fn normalize(w: &mut [f64]) {
    let s: f64 = w.iter().sum();
    if s > 0.0 && s.is_finite() {
        for x in w.iter_mut() {
            *x /= s;
        }
    } else {
        let u = 1.0 / w.len().max(1) as f64;
        w.iter_mut().for_each(|x| *x = u);
    }
}

/// Low-variance resampling: `m` indices drawn proportionally to normalized `weights`.
pub fn systematic_indices<R: Rng + ?Sized>(weights: &[f64], m: usize, rng: &mut R) -> Vec<usize> {
    let mut out = Vec::with_capacity(m);
    if weights.is_empty() || m == 0 {
        return out;
    }
    let step = 1.0 / m as f64;
    let u0: f64 = rng.random::<f64>() * step;
    let mut cum = weights[0];
    let mut i = 0;
    for k in 0..m {
        let u = u0 + k as f64 * step;
        while u > cum && i + 1 < weights.len() {
            i += 1;
            cum += weights[i];
        }
        out.push(i);
    }
    out
}

/// Pools particle sets, renormalizes, and resamples `m` particles. Each copy keeps the pooled
/// weight of its source, so the result still ranks samples.
pub fn union_resample<R: Rng + ?Sized>(
    sets: &[&ParticleSet],
    m: usize,
    rng: &mut R,
) -> ParticleSet {
    let mut values = Vec::new();
    let mut weights = Vec::new();
    for s in sets {
        values.extend(s.values.iter().cloned());
        weights.extend(s.weights.iter().copied());
    }
    normalize(&mut weights);
    let idx = systematic_indices(&weights, m, rng);
    let vals: Vec<Value> = idx.iter().map(|&i| values[i].clone()).collect();
    let w: Vec<f64> = idx.iter().map(|&i| weights[i]).collect();
    ParticleSet::weighted(vals, w)
}

impl ParticleSet {
    /// Perturbs every repeated copy of a sample (not the first occurrence) with Gaussian noise
    /// of `bandwidth` per coordinate. Trajectories and discrete values are left untouched.
    pub fn jitter_duplicates<R: Rng + ?Sized>(&mut self, bw: &JitterBandwidth, rng: &mut R) {
        let n = self.values.len();
        if matches!(
            self.values.first().map(Value::kind),
            None | Some(VarKind::Trajectory) | Some(VarKind::Discrete)
        ) {
            return;
        }
        for i in 1..n {
            let dup = (0..i).any(|j| self.values[j] == self.values[i]);
            if dup {
                self.values[i] = jitter(&self.values[i], bw, rng);
            }
        }
    }
}

/// Jitter standard deviations per kind.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JitterBandwidth {
    pub pose: f64,
    pub config: f64,
    pub grasp_position: f64,
    pub grasp_angle: f64,
}

impl JitterBandwidth {
    /// `factor` times the convergence tolerance of each kind.
    pub fn from_tolerances(t: &Tolerances, factor: f64) -> Self {
        Self {
            pose: t.pose * factor,
            config: t.config * factor,
            grasp_position: t.grasp_position * factor,
            grasp_angle: t.grasp_angle * factor,
        }
    }
}

fn gauss<R: Rng + ?Sized>(std: f64, rng: &mut R) -> f64 {
    if std <= 0.0 {
        return 0.0;
    }
    Normal::new(0.0, std).map(|n| n.sample(rng)).unwrap_or(0.0)
}

pub fn jitter<R: Rng + ?Sized>(v: &Value, bw: &JitterBandwidth, rng: &mut R) -> Value {
    match v {
        Value::Pose(p) => Value::Pose(Pose2::new(
            p.x + gauss(bw.pose, rng),
            p.y + gauss(bw.pose, rng),
            p.theta,
        )),
        Value::Config(c) => {
            let mut j = c.joints;
            for x in j.iter_mut() {
                *x += gauss(bw.config, rng);
            }
            Value::Config(Config::new(c.base, j))
        }
        Value::Grasp(g) => Value::Grasp(Pose2::new(
            g.x + gauss(bw.grasp_position, rng),
            g.y + gauss(bw.grasp_position, rng),
            wrap_angle(g.theta + gauss(bw.grasp_angle, rng)),
        )),
        Value::Trajectory(_) | Value::Discrete(_) => v.clone(),
    }
}
