//! Planar arm on a holonomic base: two links plus a zero-length wrist.

use crate::geometry::{wrap_angle, Pose2, Vec2};
use crate::particles::Config;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ArmModel {
    pub link_lengths: [f64; 2],
    /// Inclusive `(lo, hi)` per joint.
    pub joint_limits: [(f64, f64); 3],
    /// Footprint radius of the mobile base.
    pub base_radius: f64,
    pub mobile_base: bool,
}

impl Default for ArmModel {
    fn default() -> Self {
        Self {
            link_lengths: [0.5, 0.5],
            joint_limits: [(-PI, PI); 3],
            base_radius: 0.25,
            mobile_base: true,
        }
    }
}

impl ArmModel {
    pub fn reach(&self) -> f64 {
        self.link_lengths[0] + self.link_lengths[1]
    }

    pub fn within_limits(&self, c: &Config) -> bool {
        c.joints
            .iter()
            .zip(self.joint_limits.iter())
            .all(|(q, (lo, hi))| q.is_finite() && *q >= *lo && *q <= *hi)
    }

    /// Base, elbow and wrist positions.
    pub fn link_points(&self, c: &Config) -> [Vec2; 3] {
        let [l1, l2] = self.link_lengths;
        let elbow = c.base + Vec2::from_angle(c.joints[0]) * l1;
        let wrist = elbow + Vec2::from_angle(c.joints[0] + c.joints[1]) * l2;
        [c.base, elbow, wrist]
    }
}

/// End-effector pose in the world frame.
pub fn forward_kinematics(c: &Config, arm: &ArmModel) -> Pose2 {
    let [_, _, w] = arm.link_points(c);
    Pose2::new(
        w.x,
        w.y,
        wrap_angle(c.joints[0] + c.joints[1] + c.joints[2]),
    )
}

/// Analytic inverse kinematics for a fixed base. Returns up to two joint solutions
/// (elbow-down first) that respect the joint limits; empty when out of reach.
pub fn inverse_kinematics(target: &Pose2, base: Vec2, arm: &ArmModel) -> Vec<[f64; 3]> {
    let [l1, l2] = arm.link_lengths;
    let d = target.position() - base;
    let r2 = d.dot(d);
    let r = r2.sqrt();
    let tol = 1e-12;
    if r > l1 + l2 + tol || r < (l1 - l2).abs() - tol {
        return Vec::new();
    }
    let c2 = ((r2 - l1 * l1 - l2 * l2) / (2.0 * l1 * l2)).clamp(-1.0, 1.0);
    let a = c2.acos();
    let elbows: Vec<f64> = if a.abs() < 1e-12 || (PI - a).abs() < 1e-12 {
        vec![a]
    } else {
        vec![a, -a]
    };
    let mut out = Vec::new();
    for q2 in elbows {
        let q1 = wrap_angle(d.y.atan2(d.x) - (l2 * q2.sin()).atan2(l1 + l2 * q2.cos()));
        let q3 = wrap_angle(target.theta - q1 - q2);
        let q = [q1, q2, q3];
        if arm.within_limits(&Config::new(base, q)) {
            out.push(q);
        }
    }
    out
}
