//! RRT-Connect in configuration space with shortcut smoothing and fixed-length
//! re-parameterization.

use crate::geometry::Pose2;
use crate::particles::{Config, Trajectory};
use crate::samplers::kinematics::ArmModel;
use crate::scene::Scene;
use rand::Rng;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RrtParams {
    /// Extension step in configuration units (rad for joints, m for the base).
    pub step: f64,
    pub max_iters: usize,
    pub shortcut_attempts: usize,
    /// Required clearance at every checked configuration (m).
    pub margin: f64,
    /// Largest workspace displacement between two checked configurations on an edge (m).
    pub resolution: f64,
    pub waypoints: usize,
}

impl Default for RrtParams {
    fn default() -> Self {
        Self {
            step: 0.1,
            max_iters: 2000,
            shortcut_attempts: 50,
            margin: 0.005,
            resolution: 0.001,
            waypoints: 20,
        }
    }
}

/// Object carried by the gripper during a motion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Held {
    pub grasp: Pose2,
    pub radius: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Space {
    Arm,
    Base,
}

pub struct MotionPlanner<'a> {
    pub scene: &'a Scene,
    pub arm: &'a ArmModel,
    pub held: Option<Held>,
    pub params: RrtParams,
}

impl<'a> MotionPlanner<'a> {
    pub fn new(scene: &'a Scene, arm: &'a ArmModel) -> Self {
        Self {
            scene,
            arm,
            held: None,
            params: RrtParams::default(),
        }
    }

    pub fn holding(mut self, held: Option<Held>) -> Self {
        self.held = held;
        self
    }

    pub fn clearance(&self, c: &Config) -> f64 {
        match self.held {
            Some(h) => self
                .scene
                .clearance_holding(c, self.arm, &h.grasp, h.radius),
            None => self.scene.clearance(c, self.arm),
        }
    }

    pub fn valid(&self, c: &Config) -> bool {
        self.arm.within_limits(c)
            && self.scene.in_bounds(c)
            && self.clearance(c) >= self.params.margin
    }

    /// Upper bound on how far any robot or held-object point moves between `a` and `b`.
    pub fn sweep_bound(&self, a: &Config, b: &Config) -> f64 {
        let [l1, l2] = self.arm.link_lengths;
        let extra = self
            .held
            .map(|h| h.grasp.position().norm() + h.radius)
            .unwrap_or(0.0);
        let d = |k: usize| (a.joints[k] - b.joints[k]).abs();
        a.base.dist(b.base) + d(0) * (l1 + l2 + extra) + d(1) * (l2 + extra) + d(2) * extra
    }

    /// Straight-line edge check by conservative advancement: from a configuration with
    /// clearance `d`, no point can touch an obstacle before moving `d - margin`, so the next
    /// check is that far along (at least `resolution`). Bounds and joint limits are convex, so
    /// the endpoints cover them.
    pub fn edge_valid(&self, a: &Config, b: &Config) -> bool {
        if !self.valid(a) || !self.valid(b) {
            return false;
        }
        let sweep = self.sweep_bound(a, b);
        if sweep <= 0.0 {
            return true;
        }
        let mut t = 0.0;
        loop {
            let d = self.clearance(&a.lerp(b, t));
            if d < self.params.margin {
                return false;
            }
            t += (d - self.params.margin).max(self.params.resolution) / sweep;
            if t >= 1.0 {
                return true;
            }
        }
    }

    fn sample<R: Rng + ?Sized>(&self, space: Space, fixed: &Config, rng: &mut R) -> Config {
        match space {
            Space::Arm => {
                let mut j = [0.0; 3];
                for (k, q) in j.iter_mut().enumerate() {
                    let (lo, hi) = self.arm.joint_limits[k];
                    *q = rng.random_range(lo..=hi);
                }
                Config::new(fixed.base, j)
            }
            Space::Base => {
                let b = &self.scene.bounds;
                let p = crate::geometry::Vec2::new(
                    rng.random_range(b.min.x..=b.max.x),
                    rng.random_range(b.min.y..=b.max.y),
                );
                Config::new(p, fixed.joints)
            }
        }
    }

    fn steer(&self, from: &Config, to: &Config) -> Config {
        let d = from.distance(to);
        if d <= self.params.step {
            *to
        } else {
            from.lerp(to, self.params.step / d)
        }
    }

    /// RRT-Connect between two valid configurations in one subspace. Returns the vertex path.
    fn connect<R: Rng + ?Sized>(
        &self,
        space: Space,
        a: &Config,
        b: &Config,
        rng: &mut R,
    ) -> Option<Vec<Config>> {
        if !self.valid(a) || !self.valid(b) {
            return None;
        }
        if self.edge_valid(a, b) {
            return Some(vec![*a, *b]);
        }
        let mut trees = [Tree::new(*a), Tree::new(*b)];
        for it in 0..self.params.max_iters {
            let (grow, other) = if it % 2 == 0 { (0, 1) } else { (1, 0) };
            let target = self.sample(space, a, rng);
            let Some(new) = self.extend(&mut trees[grow], &target) else {
                continue;
            };
            let q = trees[grow].nodes[new];
            // greedily connect the other tree toward the new node
            while let Some(k) = self.extend(&mut trees[other], &q) {
                if trees[other].nodes[k].distance(&q) < 1e-12 {
                    let mut p0 = trees[grow].path_to(new);
                    let mut p1 = trees[other].path_to(k);
                    p1.pop();
                    p1.reverse();
                    p0.extend(p1);
                    if grow == 1 {
                        p0.reverse();
                    }
                    return Some(p0);
                }
            }
        }
        None
    }

    fn extend(&self, tree: &mut Tree, target: &Config) -> Option<usize> {
        let near = tree.nearest(target);
        let from = tree.nodes[near];
        let new = self.steer(&from, target);
        if new.distance(&from) < 1e-12 || !self.edge_valid(&from, &new) {
            return None;
        }
        tree.nodes.push(new);
        tree.parent.push(near);
        Some(tree.nodes.len() - 1)
    }

    pub fn shortcut<R: Rng + ?Sized>(&self, path: &mut Vec<Config>, rng: &mut R) {
        for _ in 0..self.params.shortcut_attempts {
            if path.len() < 3 {
                return;
            }
            let i = rng.random_range(0..path.len() - 2);
            let j = rng.random_range(i + 2..path.len());
            if self.edge_valid(&path[i], &path[j]) {
                path.drain(i + 1..j);
            }
        }
    }

    /// Plans between two configurations. Equal bases plan for the arm alone; different bases
    /// tuck the arm, move the base with the arm tucked, then reach for the goal.
    pub fn plan<R: Rng + ?Sized>(
        &self,
        a: &Config,
        b: &Config,
        tuck: [f64; 3],
        rng: &mut R,
    ) -> Option<Trajectory> {
        let mut parts = if a.base.dist(b.base) < 1e-9 {
            vec![self.connect(Space::Arm, a, b, rng)?]
        } else {
            let ta = Config::new(a.base, tuck);
            let tb = Config::new(b.base, tuck);
            vec![
                self.connect(Space::Arm, a, &ta, rng)?,
                self.connect(Space::Base, &ta, &tb, rng)?,
                self.connect(Space::Arm, &tb, b, rng)?,
            ]
        };
        // segments are smoothed separately so the base only moves with the arm tucked; extra
        // rounds run until the vertices fit the waypoint budget
        let joined = |parts: &[Vec<Config>]| {
            let mut p = parts[0].clone();
            for q in &parts[1..] {
                p.extend(q.iter().skip(1));
            }
            dedup(&mut p);
            p
        };
        for round in 0..=EXTRA_SHORTCUT_ROUNDS {
            if round > 0 && joined(&parts).len() <= self.params.waypoints {
                break;
            }
            for p in parts.iter_mut() {
                self.shortcut(p, rng);
            }
        }
        let mut path = joined(&parts);
        if path.is_empty() {
            path.push(*a);
        }
        reparameterize(&path, self.params.waypoints).map(Trajectory::new)
    }
}

const EXTRA_SHORTCUT_ROUNDS: usize = 10;

fn dedup(p: &mut Vec<Config>) {
    p.dedup_by(|x, y| x.distance(y) < 1e-12);
}

/// Spreads `n` waypoints along a polyline, keeping every vertex and placing the rest by
/// arc length. Fails when the polyline has more than `n` vertices.
pub fn reparameterize(path: &[Config], n: usize) -> Option<Vec<Config>> {
    let mut verts = path.to_vec();
    dedup(&mut verts);
    if verts.len() > n || verts.is_empty() {
        return None;
    }
    if verts.len() == 1 {
        return Some(vec![verts[0]; n]);
    }
    let lens: Vec<f64> = verts.windows(2).map(|w| w[0].distance(&w[1])).collect();
    let total: f64 = lens.iter().sum();
    let spare = n - verts.len();
    // largest-remainder allocation of spare points to segments
    let quotas: Vec<f64> = lens.iter().map(|l| l / total * spare as f64).collect();
    let mut alloc: Vec<usize> = quotas.iter().map(|q| q.floor() as usize).collect();
    let mut left = spare - alloc.iter().sum::<usize>();
    let mut order: Vec<usize> = (0..lens.len()).collect();
    order.sort_by(|&i, &j| {
        let ri = quotas[i] - quotas[i].floor();
        let rj = quotas[j] - quotas[j].floor();
        rj.total_cmp(&ri).then(i.cmp(&j))
    });
    for &i in &order {
        if left == 0 {
            break;
        }
        alloc[i] += 1;
        left -= 1;
    }
    let mut out = Vec::with_capacity(n);
    for (s, w) in verts.windows(2).enumerate() {
        out.push(w[0]);
        let k = alloc[s];
        for i in 1..=k {
            out.push(w[0].lerp(&w[1], i as f64 / (k + 1) as f64));
        }
    }
    out.push(*verts.last().unwrap());
    Some(out)
}

struct Tree {
    nodes: Vec<Config>,
    parent: Vec<usize>,
}

impl Tree {
    fn new(root: Config) -> Self {
        Self {
            nodes: vec![root],
            parent: vec![usize::MAX],
        }
    }

    fn nearest(&self, q: &Config) -> usize {
        let mut best = 0;
        let mut bd = f64::INFINITY;
        for (i, n) in self.nodes.iter().enumerate() {
            let d = n.distance(q);
            if d < bd {
                bd = d;
                best = i;
            }
        }
        best
    }

    /// Root-to-node path.
    fn path_to(&self, mut i: usize) -> Vec<Config> {
        let mut p = Vec::new();
        while i != usize::MAX {
            p.push(self.nodes[i]);
            i = self.parent[i];
        }
        p.reverse();
        p
    }
}
