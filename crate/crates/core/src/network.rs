//! Bipartite constraint network over action parameters, and its construction from a plan
//! skeleton.

use crate::geometry::{Pose2, Vec2};
use crate::kitchen::{Belief, KitchenModel};
use crate::library::{ConstraintKind, ConstraintParams, KitchenFactor, Potential};
use crate::par::ExecMode;
use crate::particles::{Config, ParticleSet, Value, VarKind};
use crate::samplers::rrt::{Held, RrtParams};
use crate::samplers::{
    grasp_sampler, ik_sampler, pose_sampler, stationary, trajectory_sampler, PoseBelief,
    SamplerError, TrajectoryRequest,
};
use crate::scene::ObjectModel;
use crate::schema::{GroundAction, GroundLiteral, ParamKind, SymbolicState};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::sync::Arc;
use thiserror::Error;

pub type VarId = usize;
pub type FactorId = usize;

#[derive(Debug, Clone)]
pub struct VariableNode {
    pub id: VarId,
    pub label: String,
    pub kind: VarKind,
    pub belief: ParticleSet,
    /// Factors with this variable in scope.
    pub neighbors: Vec<FactorId>,
    /// Evidence node: particle values never change.
    pub anchored: bool,
}

#[derive(Debug, Clone)]
pub struct FactorNode {
    pub id: FactorId,
    pub label: String,
    pub scope: Vec<VarId>,
    pub potential: Arc<dyn Potential>,
}

#[derive(Debug, Clone, Default)]
pub struct ConstraintNetwork {
    pub variables: Vec<VariableNode>,
    pub factors: Vec<FactorNode>,
    /// `(step, parameter)` to variable; step 0 holds the initial-state anchors.
    pub aliases: BTreeMap<(usize, String), VarId>,
    /// Factor-to-variable messages of the last inference iteration, one per `(factor, scope
    /// position)` in factor order; empty before inference.
    pub messages: Vec<ParticleSet>,
}

impl ConstraintNetwork {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_variable(&mut self, label: &str, kind: VarKind, anchored: bool) -> VarId {
        let id = self.variables.len();
        self.variables.push(VariableNode {
            id,
            label: label.to_string(),
            kind,
            belief: ParticleSet {
                values: Vec::new(),
                weights: Vec::new(),
            },
            neighbors: Vec::new(),
            anchored,
        });
        id
    }

    pub fn add_factor(
        &mut self,
        label: &str,
        scope: Vec<VarId>,
        potential: Arc<dyn Potential>,
    ) -> FactorId {
        assert!(!scope.is_empty(), "factor `{label}` has an empty scope");
        let id = self.factors.len();
        for &v in &scope {
            self.variables[v].neighbors.push(id);
        }
        self.factors.push(FactorNode {
            id,
            label: label.to_string(),
            scope,
            potential,
        });
        id
    }

    pub fn variable(&self, label: &str) -> Option<&VariableNode> {
        self.variables.iter().find(|v| v.label == label)
    }

    pub fn edge_count(&self) -> usize {
        self.factors.iter().map(|f| f.scope.len()).sum()
    }

    /// `x ∈ scope(f)` exactly when `f ∈ neighbors(x)`.
    pub fn is_symmetric(&self) -> bool {
        let from_factors: BTreeSet<(VarId, FactorId)> = self
            .factors
            .iter()
            .flat_map(|f| f.scope.iter().map(move |&v| (v, f.id)))
            .collect();
        let from_vars: BTreeSet<(VarId, FactorId)> = self
            .variables
            .iter()
            .flat_map(|v| v.neighbors.iter().map(move |&f| (v.id, f)))
            .collect();
        from_factors == from_vars
            && self.variables.iter().all(|v| {
                let mut n = v.neighbors.clone();
                n.dedup();
                n.len() == v.neighbors.len()
            })
    }

    /// One line per node and per edge.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for v in &self.variables {
            let tag = if v.anchored { " anchored" } else { "" };
            writeln!(s, "var {} {}{}", v.label, v.kind.label(), tag).unwrap();
        }
        for f in &self.factors {
            writeln!(s, "factor f{} {}", f.id, f.label).unwrap();
        }
        for f in &self.factors {
            for &v in &f.scope {
                writeln!(s, "edge f{} {}", f.id, self.variables[v].label).unwrap();
            }
        }
        s
    }
}

#[derive(Debug, Error)]
pub enum BuildError {
    #[error("empty plan skeleton")]
    EmptySkeleton,
    #[error("unknown {what} `{name}`")]
    Unknown { what: &'static str, name: String },
    #[error("action `{action}`: {msg}")]
    Action { action: String, msg: String },
    #[error("no belief for object `{0}`")]
    NoBelief(String),
    #[error("sampling `{var}`: {source}")]
    Sampler {
        var: String,
        #[source]
        source: SamplerError,
    },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BuildOptions {
    pub particles: usize,
    pub seed: u64,
    pub rrt: RrtParams,
    pub constraint: ConstraintParams,
    /// Placement samples keep this much extra room from a region's edge (m).
    pub placement_margin: f64,
    pub mode: ExecMode,
}

impl Default for BuildOptions {
    fn default() -> Self {
        Self {
            particles: 100,
            seed: 0,
            rrt: RrtParams::default(),
            constraint: ConstraintParams::default(),
            placement_margin: 0.02,
            mode: ExecMode::Parallel,
        }
    }
}

/// How a variable's initial particles are produced.
#[derive(Debug, Clone)]
enum Generator {
    InitialConfig,
    InitialPose {
        object: String,
    },
    HeldGrasp,
    Placement {
        object: String,
        region: String,
    },
    Grasp {
        object: String,
        pose: VarId,
    },
    Ik {
        station: String,
        pose: VarId,
        grasp: VarId,
    },
    Station {
        station: String,
    },
    Motion {
        from: VarId,
        to: VarId,
        held: Option<(String, VarId)>,
    },
}

struct Builder<'a> {
    model: &'a KitchenModel,
    belief: &'a Belief,
    opts: &'a BuildOptions,
    net: ConstraintNetwork,
    generators: Vec<Generator>,
    multi_object: bool,
    config: Option<(usize, VarId)>,
    poses: BTreeMap<String, VarId>,
    grasps: BTreeMap<String, VarId>,
    /// Pick-time `(config, pose)` of each object whose grasp was created in the skeleton.
    picks: BTreeMap<String, (VarId, VarId)>,
}

fn action_err(a: &GroundAction, msg: impl Into<String>) -> BuildError {
    BuildError::Action {
        action: a.to_string(),
        msg: msg.into(),
    }
}

impl<'a> Builder<'a> {
    fn var(&mut self, label: String, kind: VarKind, anchored: bool, generator: Generator) -> VarId {
        self.generators.push(generator);
        self.net.add_variable(&label, kind, anchored)
    }

    fn pose_label(&self, step: usize, object: &str) -> String {
        if self.multi_object {
            format!("o{step}:{object}")
        } else {
            format!("o{step}")
        }
    }

    fn current_config(&mut self) -> (usize, VarId) {
        if let Some(c) = self.config {
            return c;
        }
        let id = self.var(
            "phi0".into(),
            VarKind::Config,
            true,
            Generator::InitialConfig,
        );
        self.net.aliases.insert((0, "phi".into()), id);
        self.config = Some((0, id));
        (0, id)
    }

    fn current_pose(&mut self, object: &str) -> Result<VarId, BuildError> {
        if let Some(&v) = self.poses.get(object) {
            return Ok(v);
        }
        if !self.belief.objects.contains_key(object) {
            return Err(BuildError::NoBelief(object.to_string()));
        }
        let label = self.pose_label(0, object);
        let id = self.var(
            label,
            VarKind::Pose,
            true,
            Generator::InitialPose {
                object: object.to_string(),
            },
        );
        self.net.aliases.insert((0, format!("o:{object}")), id);
        self.poses.insert(object.to_string(), id);
        Ok(id)
    }

    fn object_model(&self, object: &str) -> Result<ObjectModel, BuildError> {
        self.model
            .objects
            .get(object)
            .copied()
            .ok_or_else(|| BuildError::Unknown {
                what: "object",
                name: object.to_string(),
            })
    }

    /// Station the action is performed from: the last bound symbol naming a station.
    fn station_of(&self, a: &GroundAction) -> Option<String> {
        a.objects()
            .into_iter()
            .rev()
            .find(|o| self.model.scene.stations.contains_key(*o))
            .map(str::to_string)
    }

    fn region_for(
        &self,
        a: &GroundAction,
        kind: ConstraintKind,
        bindings: &[String],
        object: &str,
        state: &SymbolicState,
    ) -> Result<String, BuildError> {
        if let Some(b) = bindings.get(1) {
            return a
                .object(b)
                .map(str::to_string)
                .ok_or_else(|| action_err(a, format!("unbound `{b}`")));
        }
        match kind {
            ConstraintKind::InBasin => return Ok("basin".into()),
            ConstraintKind::InSaucepan => return Ok("saucepan".into()),
            _ => {}
        }
        state
            .iter()
            .find(|l| {
                l.predicate == "in"
                    && l.args.len() == 2
                    && l.args[0] == object
                    && self.model.scene.regions.contains_key(&l.args[1])
            })
            .map(|l| l.args[1].clone())
            .ok_or_else(|| action_err(a, format!("cannot tell which region supports `{object}`")))
    }

    fn add_action(
        &mut self,
        step: usize,
        a: &GroundAction,
        state: &SymbolicState,
    ) -> Result<(), BuildError> {
        let schema = Arc::clone(&a.schema);
        let object = a.objects().first().map(|s| s.to_string());
        let holding = state
            .iter()
            .find(|l| l.predicate == "holding" && l.args.len() == 1)
            .map(|l| l.args[0].clone());
        let effects = a.holding_effects();
        let releases: Option<String> = effects.iter().find(|e| !e.1).map(|e| e.0.clone());
        let acquires: Option<String> = effects.iter().find(|e| e.1).map(|e| e.0.clone());
        let mut local: BTreeMap<String, VarId> = BTreeMap::new();
        let obj_or_err = || {
            object
                .clone()
                .ok_or_else(|| action_err(a, "needs an object argument"))
        };

        // poses and grasps first; configurations depend on them
        for p in schema.continuous() {
            let id = match p.kind {
                ParamKind::Pose => {
                    let obj = obj_or_err()?;
                    if releases.as_deref() == Some(obj.as_str()) {
                        let region = self.placement_region(a, &obj)?;
                        let label = self.pose_label(step, &obj);
                        let id = self.var(
                            label,
                            VarKind::Pose,
                            false,
                            Generator::Placement {
                                object: obj.clone(),
                                region,
                            },
                        );
                        self.poses.insert(obj.clone(), id);
                        id
                    } else {
                        self.current_pose(&obj)?
                    }
                }
                ParamKind::Grasp => {
                    let obj = obj_or_err()?;
                    if acquires.as_deref() == Some(obj.as_str()) {
                        let pose = match schema.continuous().find(|q| q.kind == ParamKind::Pose) {
                            Some(_) => self.current_pose(&obj)?,
                            None => return Err(action_err(a, "grasp without a pose parameter")),
                        };
                        let id = self.var(
                            format!("g{step}"),
                            VarKind::Grasp,
                            false,
                            Generator::Grasp {
                                object: obj.clone(),
                                pose,
                            },
                        );
                        self.grasps.insert(obj.clone(), id);
                        id
                    } else if let Some(&g) = self.grasps.get(&obj) {
                        g
                    } else {
                        match &self.belief.held {
                            Some((h, _)) if *h == obj => {
                                let id = self.var(
                                    "g0".into(),
                                    VarKind::Grasp,
                                    true,
                                    Generator::HeldGrasp,
                                );
                                self.net.aliases.insert((0, "g".into()), id);
                                self.grasps.insert(obj.clone(), id);
                                id
                            }
                            _ => return Err(action_err(a, format!("no grasp known for `{obj}`"))),
                        }
                    }
                }
                _ => continue,
            };
            local.insert(p.name.clone(), id);
        }

        let (prev_step, prev_config) = if schema
            .continuous()
            .any(|p| p.kind != ParamKind::Pose && p.kind != ParamKind::Grasp)
        {
            self.current_config()
        } else {
            (0, usize::MAX)
        };
        let mut this_config = None;
        for p in schema.continuous().filter(|p| p.kind == ParamKind::Config) {
            let station = self
                .station_of(a)
                .ok_or_else(|| action_err(a, "no station among the action's arguments"))?;
            let kin = schema
                .constraints
                .iter()
                .find(|c| c.kind == ConstraintKind::Kin && c.args.first() == Some(&p.name));
            let generator = match kin {
                Some(c) => Generator::Ik {
                    station,
                    pose: local[&c.args[1]],
                    grasp: local[&c.args[2]],
                },
                None => Generator::Station { station },
            };
            let id = self.var(format!("phi{step}"), VarKind::Config, false, generator);
            local.insert(p.name.clone(), id);
            this_config = Some(id);
        }
        for p in schema
            .continuous()
            .filter(|p| p.kind == ParamKind::Trajectory)
        {
            let to = this_config
                .ok_or_else(|| action_err(a, "trajectory without a target configuration"))?;
            let held = match &holding {
                Some(h) => Some((
                    h.clone(),
                    *self
                        .grasps
                        .get(h)
                        .ok_or_else(|| action_err(a, format!("no grasp known for held `{h}`")))?,
                )),
                None => None,
            };
            let id = self.var(
                format!("tau({prev_step},{step})"),
                VarKind::Trajectory,
                false,
                Generator::Motion {
                    from: prev_config,
                    to,
                    held,
                },
            );
            local.insert(p.name.clone(), id);
            let label = format!(
                "Motion({}, {}, {})",
                self.net.variables[prev_config].label,
                self.net.variables[to].label,
                self.net.variables[id].label
            );
            let f = self.factor(ConstraintKind::Motion, None, None);
            self.net.add_factor(&label, vec![prev_config, to, id], f);
        }
        if let Some(c) = this_config {
            self.config = Some((step, c));
        }
        for (name, &id) in &local {
            self.net.aliases.insert((step, name.clone()), id);
        }

        for c in &schema.constraints {
            let scope: Vec<VarId> = c.args.iter().map(|n| local[n]).collect();
            let bound_obj = c
                .bindings
                .first()
                .and_then(|b| a.object(b))
                .map(str::to_string)
                .or_else(|| object.clone());
            let model = match &bound_obj {
                Some(o) if self.model.objects.contains_key(o) => Some(self.object_model(o)?),
                _ => None,
            };
            let region = match c.kind {
                ConstraintKind::Stable | ConstraintKind::InBasin | ConstraintKind::InSaucepan => {
                    let obj = bound_obj
                        .clone()
                        .ok_or_else(|| action_err(a, "support constraint without object"))?;
                    let name = self.region_for(a, c.kind, &c.bindings, &obj, state)?;
                    let r = self
                        .model
                        .region(&name)
                        .ok_or_else(|| BuildError::Unknown {
                            what: "region",
                            name: name.clone(),
                        })?;
                    Some(r.rect)
                }
                _ => None,
            };
            let model = match (c.kind, model, &holding) {
                (ConstraintKind::CFreeH, None, Some(h)) => Some(self.object_model(h)?),
                (_, m, _) => m,
            };
            let args: Vec<&str> = scope
                .iter()
                .map(|&v| self.net.variables[v].label.as_str())
                .collect();
            let label = match &bound_obj {
                Some(o) if !c.bindings.is_empty() => {
                    format!("{}[{o}]({})", c.kind, args.join(", "))
                }
                _ => format!("{}({})", c.kind, args.join(", ")),
            };
            let f = self.factor(c.kind, model, region);
            self.net.add_factor(&label, scope, f);
        }

        // pick/place pairing
        if let Some(obj) = &acquires {
            if let (Some(&phi), Some(pose)) = (local.get("phi"), self.poses.get(obj)) {
                self.picks.insert(obj.clone(), (phi, *pose));
            }
        }
        if let Some(obj) = &releases {
            if let (Some(&(phi0, p0)), Some(&phi1), Some(&p1), Some(&g)) = (
                self.picks.get(obj),
                this_config.as_ref(),
                self.poses.get(obj),
                self.grasps.get(obj),
            ) {
                let labels: Vec<&str> = [phi0, p0, g, phi1, p1]
                    .iter()
                    .map(|&v| self.net.variables[v].label.as_str())
                    .collect();
                let label = format!("Grasp[{obj}]({})", labels.join(", "));
                let model = self.object_model(obj)?;
                let f = self.factor(ConstraintKind::Grasp, Some(model), None);
                self.net.add_factor(&label, vec![phi0, p0, g, phi1, p1], f);
            }
            self.picks.remove(obj);
            self.grasps.remove(obj);
        }
        Ok(())
    }

    fn placement_region(&self, a: &GroundAction, obj: &str) -> Result<String, BuildError> {
        let c = a
            .schema
            .constraints
            .iter()
            .find(|c| c.kind == ConstraintKind::Stable && c.bindings.len() >= 2)
            .ok_or_else(|| action_err(a, format!("placing `{obj}` needs Stable[obj, region]")))?;
        a.object(&c.bindings[1])
            .map(str::to_string)
            .ok_or_else(|| action_err(a, "unbound placement region"))
    }

    fn factor(
        &self,
        kind: ConstraintKind,
        object: Option<ObjectModel>,
        region: Option<crate::geometry::Rect>,
    ) -> Arc<dyn Potential> {
        Arc::new(KitchenFactor {
            kind,
            scene: Arc::clone(&self.model.scene),
            arm: self.model.arm,
            object,
            region,
            params: self.opts.constraint,
        })
    }
}

/// Independent RNG stream for `(seed, stream, index)`.
pub fn stream_rng(seed: u64, stream: u64, index: u64) -> ChaCha8Rng {
    let mut z = seed
        ^ stream.wrapping_mul(0x9E37_79B9_7F4A_7C15)
        ^ index.wrapping_mul(0xC2B2_AE3D_27D4_EB4F);
    // splitmix64 finalizer
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^= z >> 31;
    ChaCha8Rng::seed_from_u64(z)
}

const BUILD_STREAM: u64 = 0xB0;

/// Builds the network for `skeleton` and initializes every belief from the generators.
pub fn build_network(
    skeleton: &[GroundAction],
    belief: &Belief,
    model: &KitchenModel,
    opts: &BuildOptions,
) -> Result<ConstraintNetwork, BuildError> {
    let (net, generators) = build_structure(skeleton, belief, model, opts)?;
    initialize(net, &generators, belief, model, opts)
}

/// Builds nodes and factors without sampling; beliefs are left empty.
pub fn build_structure_only(
    skeleton: &[GroundAction],
    belief: &Belief,
    model: &KitchenModel,
    opts: &BuildOptions,
) -> Result<ConstraintNetwork, BuildError> {
    build_structure(skeleton, belief, model, opts).map(|(n, _)| n)
}

fn build_structure(
    skeleton: &[GroundAction],
    belief: &Belief,
    model: &KitchenModel,
    opts: &BuildOptions,
) -> Result<(ConstraintNetwork, Vec<Generator>), BuildError> {
    if skeleton.is_empty() {
        return Err(BuildError::EmptySkeleton);
    }
    let manipulated: BTreeSet<&str> = skeleton
        .iter()
        .filter(|a| a.schema.continuous().any(|p| p.kind == ParamKind::Pose))
        .filter_map(|a| a.objects().first().copied())
        .collect();
    let mut b = Builder {
        model,
        belief,
        opts,
        net: ConstraintNetwork::new(),
        generators: Vec::new(),
        multi_object: manipulated.len() > 1,
        config: None,
        poses: BTreeMap::new(),
        grasps: BTreeMap::new(),
        picks: BTreeMap::new(),
    };
    let mut state = belief.symbolic(model);
    for (k, a) in skeleton.iter().enumerate() {
        b.add_action(k + 1, a, &state)?;
        state = a.apply(&state);
    }
    Ok((b.net, b.generators))
}

fn values_of(net: &ConstraintNetwork, v: VarId) -> &ParticleSet {
    &net.variables[v].belief
}

fn initialize(
    mut net: ConstraintNetwork,
    generators: &[Generator],
    belief: &Belief,
    model: &KitchenModel,
    opts: &BuildOptions,
) -> Result<ConstraintNetwork, BuildError> {
    let m = opts.particles;
    // generators only reference earlier variables, so creation order is a valid schedule
    for (id, g) in generators.iter().enumerate() {
        let mut rng = stream_rng(opts.seed, BUILD_STREAM, id as u64);
        let label = net.variables[id].label.clone();
        let wrap = |e: SamplerError| BuildError::Sampler {
            var: label.clone(),
            source: e,
        };
        let set = match g {
            Generator::InitialConfig => initial_configs(belief, m, &mut rng),
            Generator::InitialPose { object } => {
                let b = belief
                    .objects
                    .get(object)
                    .ok_or_else(|| BuildError::NoBelief(object.clone()))?;
                pose_sampler(b, m, &mut rng)
            }
            Generator::HeldGrasp => {
                let g = belief.held.as_ref().map(|h| h.1).unwrap_or_default();
                ParticleSet::uniform(vec![Value::Grasp(g); m])
            }
            Generator::Placement { object, region } => {
                let r = model.region(region).ok_or_else(|| BuildError::Unknown {
                    what: "region",
                    name: region.clone(),
                })?;
                let radius = model.objects[object].radius;
                placement_sampler(&r.rect, radius + opts.placement_margin, m, &mut rng)
            }
            Generator::Grasp { object, pose } => {
                let obj = model.objects[object];
                grasp_sampler(values_of(&net, *pose), &obj, &model.scene, m, &mut rng)
                    .map_err(wrap)?
            }
            Generator::Ik {
                station,
                pose,
                grasp,
            } => {
                let base = model.station(station).ok_or_else(|| BuildError::Unknown {
                    what: "station",
                    name: station.clone(),
                })?;
                ik_sampler(
                    values_of(&net, *pose),
                    values_of(&net, *grasp),
                    base,
                    &model.arm,
                    m,
                    &mut rng,
                )
                .map_err(wrap)?
            }
            Generator::Station { station } => {
                let c = model
                    .tucked_at(station)
                    .ok_or_else(|| BuildError::Unknown {
                        what: "station",
                        name: station.clone(),
                    })?;
                ParticleSet::uniform(vec![Value::Config(c); m])
            }
            Generator::Motion { from, to, held } => {
                let held = held.as_ref().map(|(obj, g)| Held {
                        grasp: *values_of(&net, *g).values[0]
                            .as_grasp()
                            .expect("grasp particle"),
                        radius: model.objects[obj].radius,
                    });
                let req = TrajectoryRequest {
                    scene: &model.scene,
                    arm: &model.arm,
                    held,
                    tuck: model.tuck,
                    params: opts.rrt,
                    mode: opts.mode,
                };
                match trajectory_sampler(
                    values_of(&net, *from),
                    values_of(&net, *to),
                    &req,
                    m,
                    &mut rng,
                ) {
                    Ok(s) => s,
                    // no collision-free pair: fall back to constant trajectories at the start
                    // so the network stays well-formed; CFree weights them low
                    Err(SamplerError::NoTrajectory) => {
                        let starts = values_of(&net, *from);
                        ParticleSet::uniform(
                            (0..m)
                                .map(|i| {
                                    let c = starts.values[i % starts.len()]
                                        .as_config()
                                        .copied()
                                        .unwrap_or_default();
                                    Value::Trajectory(stationary(&c, opts.rrt.waypoints))
                                })
                                .collect(),
                        )
                    }
                    Err(e) => return Err(wrap(e)),
                }
            }
        };
        net.variables[id].belief = set;
    }
    Ok(net)
}

fn initial_configs<R: Rng + ?Sized>(belief: &Belief, m: usize, rng: &mut R) -> ParticleSet {
    let n =
        (belief.config_std > 0.0).then(|| Normal::new(0.0, belief.config_std).expect("finite std"));
    let values = (0..m)
        .map(|_| {
            let mut j = belief.config.joints;
            if let Some(n) = &n {
                for q in j.iter_mut() {
                    *q += n.sample(rng);
                }
            }
            Value::Config(Config::new(belief.config.base, j))
        })
        .collect();
    ParticleSet::uniform(values)
}

/// Uniform object positions inside `rect` shrunk by `inset`; heading zero.
pub fn placement_sampler<R: Rng + ?Sized>(
    rect: &crate::geometry::Rect,
    inset: f64,
    m: usize,
    rng: &mut R,
) -> ParticleSet {
    let r = rect.inset(inset);
    let values = (0..m)
        .map(|_| {
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
            Value::Pose(Pose2::new(x, y, 0.0))
        })
        .collect();
    ParticleSet::uniform(values)
}

/// Initial belief about the robot and objects with the given symbolic facts.
pub fn point_belief(
    config: Config,
    objects: &[(&str, &str, Vec2)],
    pose_std: f64,
    config_std: f64,
    facts: &[GroundLiteral],
) -> Belief {
    Belief {
        objects: objects
            .iter()
            .map(|(o, r, p)| {
                (
                    o.to_string(),
                    PoseBelief::point(r, Pose2::new(p.x, p.y, 0.0), pose_std),
                )
            })
            .collect(),
        config,
        config_std,
        held: None,
        state: facts.iter().cloned().collect(),
        observed: objects.iter().map(|o| o.0.to_string()).collect(),
    }
}
