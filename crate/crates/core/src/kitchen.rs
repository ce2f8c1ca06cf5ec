//! Planar kitchen: world file, ground truth, noisy observation, execution and belief upkeep.

use crate::geometry::{Pose2, Rect, Vec2};
use crate::particles::{Config, Value};
use crate::samplers::kinematics::{forward_kinematics, ArmModel};
use crate::samplers::{NoiseModel, PoseBelief};
use crate::scene::{ObjectModel, Region, Scene};
use crate::schema::{GroundAction, GroundLiteral, SymbolicState};
use rand::Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;
use thiserror::Error;

pub const WORLD_VERSION: u32 = 1;

/// Bundled default world.
pub const DEFAULT_WORLD: &str = include_str!("../data/kitchen_world.json");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ObjectSpec {
    pub radius: f64,
    /// Region holding the object at start; `None` hides it in a seed-chosen drawer.
    #[serde(default)]
    pub region: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WorldFile {
    pub version: u32,
    pub bounds: Rect,
    pub obstacles: Vec<Rect>,
    pub stations: BTreeMap<String, Vec2>,
    pub regions: BTreeMap<String, Region>,
    pub objects: BTreeMap<String, ObjectSpec>,
    /// Closable compartments, in search order.
    pub drawers: Vec<String>,
    /// Switchable devices and the station they are operated from.
    pub devices: BTreeMap<String, String>,
    pub home: String,
    /// Arm joints used while the base moves.
    pub tuck: [f64; 3],
}

#[derive(Debug, Error)]
pub enum WorldError {
    #[error("world file: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("unsupported world version {0}")]
    Version(u32),
    #[error("world file references unknown {what} `{name}`")]
    Unknown { what: &'static str, name: String },
}

/// Static description shared by planning and simulation.
#[derive(Debug, Clone)]
pub struct KitchenModel {
    pub scene: Arc<Scene>,
    pub arm: ArmModel,
    pub objects: BTreeMap<String, ObjectModel>,
    pub initial_regions: BTreeMap<String, Option<String>>,
    pub drawers: Vec<String>,
    pub devices: BTreeMap<String, String>,
    pub home: String,
    pub tuck: [f64; 3],
}

impl KitchenModel {
    pub fn from_json(text: &str) -> Result<Self, WorldError> {
        let w: WorldFile = serde_json::from_str(text)?;
        if w.version != WORLD_VERSION {
            return Err(WorldError::Version(w.version));
        }
        let unknown = |what, name: &str| WorldError::Unknown {
            what,
            name: name.to_string(),
        };
        for r in w.regions.values() {
            if !w.stations.contains_key(&r.station) {
                return Err(unknown("station", &r.station));
            }
        }
        for d in &w.drawers {
            if !w.regions.contains_key(d) {
                return Err(unknown("region", d));
            }
        }
        for s in w.devices.values().chain(std::iter::once(&w.home)) {
            if !w.stations.contains_key(s) {
                return Err(unknown("station", s));
            }
        }
        for o in w.objects.values() {
            if let Some(r) = &o.region {
                if !w.regions.contains_key(r) {
                    return Err(unknown("region", r));
                }
            }
        }
        let scene = Scene {
            bounds: w.bounds,
            obstacles: w.obstacles,
            regions: w.regions,
            stations: w.stations,
            meter: Default::default(),
        };
        Ok(Self {
            scene: Arc::new(scene),
            arm: ArmModel::default(),
            objects: w
                .objects
                .iter()
                .map(|(k, o)| (k.clone(), ObjectModel { radius: o.radius }))
                .collect(),
            initial_regions: w.objects.into_iter().map(|(k, o)| (k, o.region)).collect(),
            drawers: w.drawers,
            devices: w.devices,
            home: w.home,
            tuck: w.tuck,
        })
    }

    pub fn default_world() -> Self {
        Self::from_json(DEFAULT_WORLD).expect("bundled world file is valid")
    }

    pub fn station(&self, name: &str) -> Option<Vec2> {
        self.scene.stations.get(name).copied()
    }

    pub fn region(&self, name: &str) -> Option<&Region> {
        self.scene.regions.get(name)
    }

    /// Copy whose scene counts work on its own meter.
    pub fn with_fresh_meter(&self) -> Self {
        let mut scene = (*self.scene).clone();
        scene.meter = Default::default();
        Self {
            scene: Arc::new(scene),
            ..self.clone()
        }
    }

    pub fn tucked_at(&self, station: &str) -> Option<Config> {
        self.station(station).map(|b| Config::new(b, self.tuck))
    }
}

/// The robot's belief over object poses, its own configuration and symbolic facts.
#[derive(Debug, Clone, PartialEq)]
pub struct Belief {
    pub objects: BTreeMap<String, PoseBelief>,
    pub config: Config,
    /// Per-joint std of the configuration estimate.
    pub config_std: f64,
    /// Held object and its grasp, as last commanded.
    pub held: Option<(String, Pose2)>,
    pub state: SymbolicState,
    /// Objects seen at least once.
    pub observed: BTreeSet<String>,
}

/// Predicates describing where objects are. They come from geometry in the world and from the
/// pose beliefs on the robot side, never from stored flags.
pub const LOCATION_PREDICATES: [&str; 5] = ["in", "maybe-in", "located", "holding", "handempty"];

/// Location predicates that only exist in the robot's belief.
const BELIEF_ONLY: [&str; 2] = ["maybe-in", "located"];

pub fn is_location(l: &GroundLiteral) -> bool {
    LOCATION_PREDICATES.contains(&l.predicate.as_str())
}

/// Largest commanded-versus-executed grasp offset for a successful pick (m, rad).
pub const PICK_POSITION_TOL: f64 = 0.02;
pub const PICK_ANGLE_TOL: f64 = 0.35;
/// A released object may stick out of its region by this much (m).
pub const PLACE_OVERHANG_TOL: f64 = 0.01;

#[derive(Debug, Clone, PartialEq)]
pub struct ObjectState {
    pub pose: Pose2,
    /// Supporting region; `None` while held.
    pub region: Option<String>,
}

/// Ground truth of the simulated kitchen.
#[derive(Debug, Clone, PartialEq)]
pub struct WorldState {
    pub objects: BTreeMap<String, ObjectState>,
    /// Held object and the true end-effector pose in its frame.
    pub held: Option<(String, Pose2)>,
    pub config: Config,
    /// Facts other than object locations.
    pub flags: SymbolicState,
}

impl WorldState {
    pub fn is_closed(&self, region: &str) -> bool {
        self.flags.holds(&GroundLiteral::new("closed", &[region]))
    }

    /// Flags plus the locations implied by the geometry.
    pub fn facts(&self) -> SymbolicState {
        let mut s = self.flags.clone();
        for (name, o) in &self.objects {
            if let Some(r) = &o.region {
                s.insert(GroundLiteral::new("in", &[name, r]));
            }
        }
        match &self.held {
            Some((h, _)) => s.insert(GroundLiteral::new("holding", &[h])),
            None => s.insert(GroundLiteral::new("handempty", &[])),
        }
        s
    }

    pub fn visible(&self, object: &str) -> bool {
        match self.objects.get(object).and_then(|o| o.region.as_deref()) {
            Some(r) => !self.is_closed(r),
            None => false,
        }
    }
}

/// What one look around returns.
#[derive(Debug, Clone, PartialEq)]
pub struct Observation {
    pub config: Config,
    /// Visible objects with their supporting region and noisy pose.
    pub objects: BTreeMap<String, (String, Pose2)>,
    /// Drawers whose contents can be seen.
    pub open: Vec<String>,
}

/// Result of executing one action.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub world: WorldState,
    /// Set when the action failed; the world is then unchanged.
    pub error: Option<String>,
}

fn gaussian<R: Rng + ?Sized>(std: f64, rng: &mut R) -> f64 {
    if std > 0.0 {
        Normal::new(0.0, std).expect("finite std").sample(rng)
    } else {
        0.0
    }
}

fn uniform_in<R: Rng + ?Sized>(r: &Rect, rng: &mut R) -> Vec2 {
    let x = if r.width() > 0.0 {
        rng.random_range(r.min.x..=r.max.x)
    } else {
        r.min.x
    };
    let y = if r.height() > 0.0 {
        rng.random_range(r.min.y..=r.max.y)
    } else {
        r.min.y
    };
    Vec2::new(x, y)
}

/// Ground truth for one trial: hidden objects go to a seed-chosen drawer, every object sits
/// uniformly inside its region, and the robot starts tucked at home.
pub fn make_world(model: &KitchenModel, init: &SymbolicState, seed: u64) -> WorldState {
    let mut rng = crate::network::stream_rng(seed, WORLD_STREAM, 0);
    let mut objects = BTreeMap::new();
    for (name, region) in &model.initial_regions {
        let region = match region {
            Some(r) => r.clone(),
            None => model.drawers[rng.random_range(0..model.drawers.len())].clone(),
        };
        let rect = model.region(&region).expect("validated region").rect;
        let p = uniform_in(&rect.inset(model.objects[name].radius), &mut rng);
        objects.insert(
            name.clone(),
            ObjectState {
                pose: Pose2::new(p.x, p.y, 0.0),
                region: Some(region),
            },
        );
    }
    WorldState {
        objects,
        held: None,
        config: model.tucked_at(&model.home).expect("validated home"),
        flags: init.iter().filter(|l| !is_location(l)).cloned().collect(),
    }
}

const WORLD_STREAM: u64 = 0x57;

/// Noisy look at the world.
pub fn observe<R: Rng + ?Sized>(
    world: &WorldState,
    model: &KitchenModel,
    noise: &NoiseModel,
    rng: &mut R,
) -> Observation {
    let (ps, js) = (noise.pose_std(), noise.joint_std());
    let mut config = world.config;
    for q in config.joints.iter_mut() {
        *q += gaussian(js, rng);
    }
    let mut objects = BTreeMap::new();
    for (name, o) in &world.objects {
        if !world.visible(name) {
            continue;
        }
        let p = Pose2::new(
            o.pose.x + gaussian(ps, rng),
            o.pose.y + gaussian(ps, rng),
            o.pose.theta,
        );
        objects.insert(
            name.clone(),
            (o.region.clone().expect("visible implies placed"), p),
        );
    }
    Observation {
        config,
        objects,
        open: model
            .drawers
            .iter()
            .filter(|d| !world.is_closed(d))
            .cloned()
            .collect(),
    }
}

fn fail(world: &WorldState, msg: impl Into<String>) -> Outcome {
    Outcome {
        world: world.clone(),
        error: Some(msg.into()),
    }
}

fn commanded_config(a: &GroundAction) -> Option<Config> {
    a.value("phi").and_then(Value::as_config).copied()
}

/// Executes `a` on a copy of `world`. Symbolic preconditions are checked against the truth;
/// picks and places also check the geometry after joint noise. Failures leave the world as it was.
pub fn execute<R: Rng + ?Sized>(
    world: &WorldState,
    model: &KitchenModel,
    a: &GroundAction,
    noise: &NoiseModel,
    rng: &mut R,
) -> Outcome {
    let facts = world.facts();
    for l in &a.schema.preconditions {
        if BELIEF_ONLY.contains(&l.predicate.as_str()) {
            continue;
        }
        if let Some(g) = a.ground_literal(l) {
            if facts.holds(&g) == l.negated {
                return fail(
                    world,
                    format!(
                        "{a}: precondition {}{g} does not hold",
                        if l.negated { "not " } else { "" }
                    ),
                );
            }
        }
    }
    let mut next = world.clone();
    let actuate = |c: Config, rng: &mut R| {
        let mut c = c;
        for q in c.joints.iter_mut() {
            *q += gaussian(noise.joint_std(), rng);
        }
        c
    };
    let effects = a.holding_effects();
    let acquires = effects.iter().find(|e| e.1).map(|e| e.0.clone());
    let releases = effects.iter().find(|e| !e.1).map(|e| e.0.clone());
    if let Some(obj) = acquires {
        let (Some(phi), Some(g)) = (
            commanded_config(a),
            a.value("g").and_then(Value::as_grasp).copied(),
        ) else {
            return fail(world, format!("{a}: unresolved parameters"));
        };
        let real = actuate(phi, rng);
        let p_true = world.objects[&obj].pose;
        let g_exec = p_true
            .inverse()
            .compose(&forward_kinematics(&real, &model.arm));
        let (d, dth) = g_exec.diff(&g);
        if d.norm() > PICK_POSITION_TOL || dth.abs() > PICK_ANGLE_TOL {
            return fail(world, format!("{a}: grasp missed by {:.3} m", d.norm()));
        }
        next.config = real;
        next.held = Some((obj.clone(), g_exec));
        next.objects.get_mut(&obj).expect("known object").region = None;
    } else if let Some(obj) = releases {
        let Some(phi) = commanded_config(a) else {
            return fail(world, format!("{a}: unresolved parameters"));
        };
        let Some((_, g_true)) = world.held.clone() else {
            return fail(world, format!("{a}: nothing held"));
        };
        let region = a.objects()[1].to_string();
        let real = actuate(phi, rng);
        let drop = forward_kinematics(&real, &model.arm).compose(&g_true.inverse());
        let rect = match model.region(&region) {
            Some(r) => r.rect,
            None => return fail(world, format!("{a}: unknown region `{region}`")),
        };
        if rect.disc_overhang(drop.position(), model.objects[&obj].radius) > PLACE_OVERHANG_TOL {
            return fail(world, format!("{a}: release pose outside `{region}`"));
        }
        next.config = real;
        next.held = None;
        let o = next.objects.get_mut(&obj).expect("known object");
        o.pose = drop;
        o.region = Some(region);
    } else if let Some(phi) = commanded_config(a) {
        next.config = actuate(phi, rng);
    }
    next.flags = a
        .apply(&next.flags)
        .iter()
        .filter(|l| !is_location(l))
        .cloned()
        .collect();
    Outcome {
        world: next,
        error: None,
    }
}

impl Belief {
    /// Belief before any observation: objects with a known region sit at its center, hidden
    /// objects are spread evenly over the drawers.
    pub fn prior(model: &KitchenModel, init: &SymbolicState, noise: &NoiseModel) -> Self {
        let std = noise.pose_std();
        let center = |r: &str| {
            let c = model.region(r).expect("validated region").rect.center();
            Pose2::new(c.x, c.y, 0.0)
        };
        let objects = model
            .initial_regions
            .iter()
            .map(|(o, r)| {
                let b = match r {
                    Some(r) => PoseBelief::point(r, center(r), std),
                    None => {
                        let n = model.drawers.len() as f64;
                        PoseBelief {
                            modes: model
                                .drawers
                                .iter()
                                .map(|d| (d.clone(), 1.0 / n, center(d)))
                                .collect(),
                            std,
                        }
                    }
                };
                (o.clone(), b)
            })
            .collect();
        Belief {
            objects,
            config: model.tucked_at(&model.home).expect("validated home"),
            config_std: noise.joint_std(),
            held: None,
            state: init.iter().filter(|l| !is_location(l)).cloned().collect(),
            observed: BTreeSet::new(),
        }
    }

    /// Replaces estimates with what was seen; objects missing from an open drawer lose that
    /// drawer. Returns objects seen for the first time.
    pub fn update(&mut self, obs: &Observation, noise: &NoiseModel) -> Vec<String> {
        self.config = obs.config;
        self.config_std = noise.joint_std();
        let mut revealed = Vec::new();
        for (name, (region, pose)) in &obs.objects {
            self.objects.insert(
                name.clone(),
                PoseBelief::point(region, *pose, noise.pose_std()),
            );
            if self.observed.insert(name.clone()) {
                revealed.push(name.clone());
            }
        }
        let held = self.held.as_ref().map(|h| h.0.clone());
        for (name, b) in self.objects.iter_mut() {
            if obs.objects.contains_key(name) || held.as_ref() == Some(name) {
                continue;
            }
            for d in &obs.open {
                b.exclude(d);
            }
        }
        revealed
    }

    /// Symbolic state for planning: the stored flags plus locations read off the pose beliefs.
    pub fn symbolic(&self, model: &KitchenModel) -> SymbolicState {
        let mut s = self.state.clone();
        match &self.held {
            Some((h, _)) => s.insert(GroundLiteral::new("holding", &[h])),
            None => s.insert(GroundLiteral::new("handempty", &[])),
        }
        let threshold = 1.0 / model.drawers.len().max(1) as f64 - 1e-9;
        for (name, b) in &self.objects {
            if self.held.as_ref().is_some_and(|h| &h.0 == name) {
                continue;
            }
            if self.observed.contains(name) && b.modes.len() == 1 {
                s.insert(GroundLiteral::new("in", &[name, &b.modes[0].0]));
                s.insert(GroundLiteral::new("located", &[name]));
                continue;
            }
            let top = b.most_likely().0.clone();
            for (region, mass, _) in &b.modes {
                if *mass >= threshold || *region == top {
                    s.insert(GroundLiteral::new("maybe-in", &[name, region]));
                }
            }
        }
        s
    }

    /// Records a successful action: flags follow its effects, and grasps are tracked.
    pub fn record_success(&mut self, a: &GroundAction) {
        self.state = a
            .apply(&self.state)
            .iter()
            .filter(|l| !is_location(l))
            .cloned()
            .collect();
        for (obj, adds) in a.holding_effects() {
            if adds {
                let g = a
                    .value("g")
                    .and_then(Value::as_grasp)
                    .copied()
                    .unwrap_or_default();
                self.held = Some((obj, g));
            } else {
                self.held = None;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samplers::kinematics::inverse_kinematics;
    use crate::samplers::rim_grasp;
    use crate::schema::{ground_positional, parse_domain, parse_problem, ActionSchema};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn setup() -> (KitchenModel, Vec<Arc<ActionSchema>>, SymbolicState) {
        let d = parse_domain(include_str!("../data/kitchen.domain")).unwrap();
        let p = parse_problem(include_str!("../data/retrieve.problem")).unwrap();
        (
            KitchenModel::default_world(),
            d.into_iter().map(Arc::new).collect(),
            p.init,
        )
    }

    fn act(d: &[Arc<ActionSchema>], name: &str, objs: &[&str]) -> GroundAction {
        ground_positional(d.iter().find(|s| s.name == name).unwrap(), objs).unwrap()
    }

    fn with_phi(mut a: GroundAction, c: Config) -> GroundAction {
        a.resolve("phi", Value::Config(c));
        a
    }

    fn run(w: &WorldState, m: &KitchenModel, a: &GroundAction) -> WorldState {
        let out = execute(
            w,
            m,
            a,
            &NoiseModel::default(),
            &mut ChaCha8Rng::seed_from_u64(0),
        );
        assert_eq!(out.error, None, "{a}");
        out.world
    }

    #[test]
    fn hidden_object_lands_in_a_drawer() {
        let (m, _, init) = setup();
        let mut seen = BTreeSet::new();
        for seed in 0..30 {
            let w = make_world(&m, &init, seed);
            let pear = &w.objects["pear"];
            let r = pear.region.clone().unwrap();
            assert!(m.drawers.contains(&r));
            assert_eq!(
                m.region(&r)
                    .unwrap()
                    .rect
                    .disc_overhang(pear.pose.position(), 0.04),
                0.0
            );
            assert_eq!(w, make_world(&m, &init, seed));
            seen.insert(r);
        }
        assert_eq!(seen.len(), 3);
    }

    #[test]
    fn closed_drawers_hide_their_contents() {
        let (m, d, init) = setup();
        let w = make_world(&m, &init, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let noise = NoiseModel::new(0.1, 0.25);
        let obs = observe(&w, &m, &noise, &mut rng);
        assert!(obs.objects.contains_key("cup") && !obs.objects.contains_key("pear"));
        assert!(obs.open.is_empty());
        let drawer = w.objects["pear"].region.clone().unwrap();
        let w = run(
            &w,
            &m,
            &with_phi(
                act(&d, "move", &["home", "cabinet"]),
                m.tucked_at("cabinet").unwrap(),
            ),
        );
        let w = run(&w, &m, &act(&d, "open", &[&drawer, "cabinet"]));
        let obs = observe(&w, &m, &noise, &mut rng);
        assert_eq!(obs.objects["pear"].0, drawer);
        assert_eq!(obs.open, vec![drawer]);
    }

    #[test]
    fn failed_precondition_leaves_world_unchanged() {
        let (m, d, init) = setup();
        let w = make_world(&m, &init, 2);
        let out = execute(
            &w,
            &m,
            &act(&d, "open", &["drawer1", "cabinet"]),
            &NoiseModel::default(),
            &mut ChaCha8Rng::seed_from_u64(0),
        );
        assert!(out.error.is_some());
        assert_eq!(out.world, w);
    }

    /// Drives the robot to an exact IK solution for a rim grasp of the true pose.
    fn pick_action(
        m: &KitchenModel,
        d: &[Arc<ActionSchema>],
        w: &WorldState,
        offset: Vec2,
    ) -> GroundAction {
        let pear = &w.objects["pear"];
        let drawer = pear.region.clone().unwrap();
        let target = pear.pose.translated(offset);
        let g = rim_grasp(&target, 0.04, std::f64::consts::FRAC_PI_2);
        let base = m.station("cabinet").unwrap();
        let j = inverse_kinematics(&target.compose(&g), base, &m.arm)[0];
        let mut a = act(d, "pick", &["pear", &drawer, "cabinet"]);
        a.resolve("phi", Value::Config(Config::new(base, j)));
        a.resolve("g", Value::Grasp(g));
        a
    }

    fn at_open_drawer(m: &KitchenModel, d: &[Arc<ActionSchema>], seed: u64) -> WorldState {
        let (_, _, init) = setup();
        let w = make_world(m, &init, seed);
        let drawer = w.objects["pear"].region.clone().unwrap();
        let w = run(
            &w,
            m,
            &with_phi(
                act(d, "move", &["home", "cabinet"]),
                m.tucked_at("cabinet").unwrap(),
            ),
        );
        run(&w, m, &act(d, "open", &[&drawer, "cabinet"]))
    }

    #[test]
    fn pick_succeeds_within_tolerance_only() {
        let (m, d, _) = setup();
        let w = at_open_drawer(&m, &d, 3);
        let near = run(&w, &m, &pick_action(&m, &d, &w, Vec2::new(0.015, 0.0)));
        assert_eq!(near.held.as_ref().unwrap().0, "pear");
        assert_eq!(near.objects["pear"].region, None);
        assert!(near
            .facts()
            .holds(&GroundLiteral::new("holding", &["pear"])));
        let far = execute(
            &w,
            &m,
            &pick_action(&m, &d, &w, Vec2::new(0.025, 0.0)),
            &NoiseModel::default(),
            &mut ChaCha8Rng::seed_from_u64(0),
        );
        assert!(far.error.is_some());
        assert_eq!(far.world, w);
    }

    #[test]
    fn place_puts_the_object_where_the_gripper_releases_it() {
        let (m, d, _) = setup();
        let w = at_open_drawer(&m, &d, 4);
        let w = run(&w, &m, &pick_action(&m, &d, &w, Vec2::ZERO));
        let g = w.held.clone().unwrap().1;
        let spot = m.region("cupspot").unwrap().rect.center();
        let base = m.station("sink").unwrap();
        let target = Pose2::new(spot.x, spot.y, 0.0).compose(&g);
        let j = inverse_kinematics(&target, base, &m.arm)[0];
        let mut w = w;
        w.objects.get_mut("cup").unwrap().region = Some("basin".into());
        w.flags.insert(GroundLiteral::new("robot-at", &["sink"]));
        w.flags
            .remove(&GroundLiteral::new("robot-at", &["cabinet"]));
        let mut a = act(&d, "place", &["pear", "cupspot", "sink"]);
        a.resolve("phi", Value::Config(Config::new(base, j)));
        let w = run(&w, &m, &a);
        let pear = &w.objects["pear"];
        assert_eq!(pear.region.as_deref(), Some("cupspot"));
        assert!(pear.pose.position().dist(spot) < 1e-9);
        assert!(w.held.is_none());
    }

    #[test]
    fn belief_compiles_locations() {
        let (m, _, init) = setup();
        let noise = NoiseModel::new(0.1, 0.25);
        let mut b = Belief::prior(&m, &init, &noise);
        let s = b.symbolic(&m);
        for dr in ["drawer1", "drawer2", "drawer3"] {
            assert!(s.holds(&GroundLiteral::new("maybe-in", &["pear", dr])));
        }
        assert!(s.holds(&GroundLiteral::new("handempty", &[])));
        let obs = Observation {
            config: b.config,
            objects: [(
                "cup".to_string(),
                ("cupspot".to_string(), Pose2::new(2.4, 0.4, 0.0)),
            )]
            .into(),
            open: vec!["drawer1".into()],
        };
        assert_eq!(b.update(&obs, &noise), vec!["cup".to_string()]);
        assert!(b.update(&obs, &noise).is_empty());
        let s = b.symbolic(&m);
        assert!(s.holds(&GroundLiteral::new("in", &["cup", "cupspot"])));
        assert!(s.holds(&GroundLiteral::new("located", &["cup"])));
        assert!(!s.holds(&GroundLiteral::new("maybe-in", &["pear", "drawer1"])));
        assert!((b.objects["pear"].mass("drawer2") - 0.5).abs() < 1e-12);
    }
}
