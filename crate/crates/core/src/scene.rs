//! Static world geometry used by collision checks and constraint functions.

use crate::geometry::{Pose2, Rect, Vec2};
use crate::particles::Config;
use crate::samplers::kinematics::{forward_kinematics, ArmModel};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

/// Disc-shaped object model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ObjectModel {
    pub radius: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Region {
    pub rect: Rect,
    /// Named base station from which the region is manipulated.
    pub station: String,
    #[serde(default)]
    pub container: bool,
}

/// Shared count of geometric and constraint evaluations. Clones share the count; all meters
/// compare equal.
#[derive(Debug, Clone, Default)]
pub struct WorkMeter(Arc<AtomicU64>);

impl WorkMeter {
    pub fn add(&self, n: u64) {
        self.0.fetch_add(n, Ordering::Relaxed);
    }

    pub fn get(&self) -> u64 {
        self.0.load(Ordering::Relaxed)
    }
}

impl PartialEq for WorkMeter {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scene {
    pub bounds: Rect,
    pub obstacles: Vec<Rect>,
    pub regions: BTreeMap<String, Region>,
    pub stations: BTreeMap<String, Vec2>,
    /// Counts clearance queries.
    #[serde(skip)]
    pub meter: WorkMeter,
}

impl Scene {
    pub fn empty(bounds: Rect) -> Self {
        Self {
            bounds,
            obstacles: Vec::new(),
            regions: BTreeMap::new(),
            stations: BTreeMap::new(),
            meter: WorkMeter::default(),
        }
    }

    pub fn region(&self, name: &str) -> Option<&Region> {
        self.regions.get(name)
    }

    /// Base inside the world bounds.
    pub fn in_bounds(&self, c: &Config) -> bool {
        self.bounds.contains(c.base)
    }

    /// Smallest distance between the robot (base disc and arm links) and any obstacle.
    /// Infinite when there are no obstacles; zero or negative when in contact.
    pub fn clearance(&self, c: &Config, arm: &ArmModel) -> f64 {
        self.meter.add(1);
        let [b, e, w] = arm.link_points(c);
        let mut d = f64::INFINITY;
        for o in &self.obstacles {
            d = d
                .min(o.distance_to_point(b) - arm.base_radius)
                .min(o.distance_to_segment(b, e))
                .min(o.distance_to_segment(e, w));
        }
        d
    }

    /// Clearance of a disc; infinite with no obstacles.
    pub fn disc_clearance(&self, center: Vec2, radius: f64) -> f64 {
        self.obstacles
            .iter()
            .map(|o| o.distance_to_point(center) - radius)
            .fold(f64::INFINITY, f64::min)
    }

    /// Clearance with an object of `radius` held at grasp `g` (end effector relative to object).
    pub fn clearance_holding(&self, c: &Config, arm: &ArmModel, g: &Pose2, radius: f64) -> f64 {
        let arm_d = self.clearance(c, arm);
        if radius <= 0.0 {
            return arm_d;
        }
        let obj = forward_kinematics(c, arm).compose(&g.inverse());
        arm_d.min(self.disc_clearance(obj.position(), radius))
    }

    pub fn translated(&self, d: Vec2) -> Scene {
        Scene {
            bounds: self.bounds.translated(d),
            obstacles: self.obstacles.iter().map(|o| o.translated(d)).collect(),
            regions: self
                .regions
                .iter()
                .map(|(k, r)| {
                    (
                        k.clone(),
                        Region {
                            rect: r.rect.translated(d),
                            ..r.clone()
                        },
                    )
                })
                .collect(),
            stations: self
                .stations
                .iter()
                .map(|(k, v)| (k.clone(), *v + d))
                .collect(),
            meter: self.meter.clone(),
        }
    }
}
