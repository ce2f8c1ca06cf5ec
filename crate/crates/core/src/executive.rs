//! Plan, ground, act, observe, replan. Runs either the particle-based grounding or the
//! most-likely-observation baseline, and batches trials into benchmark rows.

use crate::kitchen::{execute, make_world, observe, Belief, KitchenModel, WorldState};
use crate::library::{ConstraintKind, KitchenFactor, Potential};
use crate::network::{build_network, placement_sampler, stream_rng, BuildError, BuildOptions};
use crate::par::{map_range, ExecMode};
use crate::particles::{ParticleSet, Value};
use crate::planner::{plan_counted, DEFAULT_DEPTH};
use crate::pmpnbp::{decode_assignment, run_inference, InferenceOptions, TraceRecord};
use crate::samplers::kinematics::inverse_kinematics;
use crate::samplers::rrt::{Held, MotionPlanner};
use crate::samplers::{grasp_sampler, NoiseModel};
use crate::schema::{
    parse_domain, parse_problem, ActionSchema, GroundAction, GroundLiteral, ParamKind, Problem,
    SymbolicState,
};
use rand::Rng;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;
use thiserror::Error;

pub const DOMAIN: &str = include_str!("../data/kitchen.domain");

/// Replans allowed per trial before it is declared failed.
pub const MAX_REPLANS: usize = 10;

/// Seconds charged per unit of counted work (clearance query, constraint evaluation or
/// search state) under [`Clock::Work`].
pub const SECONDS_PER_WORK_UNIT: f64 = 1.5e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    ShyCobra,
    Mlo,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::ShyCobra => "shycobra",
            Algorithm::Mlo => "mlo",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Task {
    Retrieve,
    Wash,
    Cook,
    ServeMeal,
}

impl Task {
    pub const ALL: [Task; 4] = [Task::Retrieve, Task::Wash, Task::Cook, Task::ServeMeal];

    pub fn name(self) -> &'static str {
        match self {
            Task::Retrieve => "retrieve",
            Task::Wash => "wash",
            Task::Cook => "cook",
            Task::ServeMeal => "serve-meal",
        }
    }

    pub fn problem_text(self) -> &'static str {
        match self {
            Task::Retrieve => include_str!("../data/retrieve.problem"),
            Task::Wash => include_str!("../data/wash.problem"),
            Task::Cook => include_str!("../data/cook.problem"),
            Task::ServeMeal => include_str!("../data/serve-meal.problem"),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("unknown {what} `{name}`")]
pub struct ParseNameError {
    what: &'static str,
    name: String,
}

impl FromStr for Algorithm {
    type Err = ParseNameError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "shycobra" | "shy" => Ok(Algorithm::ShyCobra),
            "mlo" => Ok(Algorithm::Mlo),
            _ => Err(ParseNameError {
                what: "algorithm",
                name: s.to_string(),
            }),
        }
    }
}

impl FromStr for Task {
    type Err = ParseNameError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Task::ALL
            .into_iter()
            .find(|t| {
                t.name().eq_ignore_ascii_case(s)
                    || (s.eq_ignore_ascii_case("serve") && *t == Task::ServeMeal)
            })
            .ok_or_else(|| ParseNameError {
                what: "task",
                name: s.to_string(),
            })
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl fmt::Display for Task {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// How planning time is measured.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Clock {
    /// Counted work scaled by [`SECONDS_PER_WORK_UNIT`]; reproducible.
    #[default]
    Work,
    /// Elapsed wall time.
    Wall,
}

/// Parsed domain and task problem.
#[derive(Debug, Clone)]
pub struct TaskSpec {
    pub task: Task,
    pub schemas: Vec<Arc<ActionSchema>>,
    pub problem: Problem,
}

impl TaskSpec {
    pub fn load(task: Task) -> Self {
        let schemas = parse_domain(DOMAIN)
            .expect("bundled domain parses")
            .into_iter()
            .map(Arc::new)
            .collect();
        let problem = parse_problem(task.problem_text()).expect("bundled problem parses");
        Self {
            task,
            schemas,
            problem,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialConfig {
    pub algorithm: Algorithm,
    pub particles: usize,
    pub iterations: usize,
    pub noise: NoiseModel,
    pub seed: u64,
    pub clock: Clock,
    pub mode: ExecMode,
    pub trace: bool,
}

impl Default for TrialConfig {
    fn default() -> Self {
        Self {
            algorithm: Algorithm::ShyCobra,
            particles: 100,
            iterations: 10,
            noise: NoiseModel::new(0.10, 0.25),
            seed: 0,
            clock: Clock::Work,
            mode: ExecMode::Parallel,
            trace: false,
        }
    }
}

/// Why a trial went back to the symbolic planner.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ReplanCauses {
    /// An action reported failure.
    pub error: usize,
    /// A declared effect was not observed.
    pub absence: usize,
    /// An object was seen for the first time.
    pub revealed: usize,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct RunMetrics {
    pub planning_time_s: f64,
    pub num_errors: usize,
    pub replans: usize,
    pub success: bool,
    pub causes: ReplanCauses,
    /// Inference iterations per planning cycle (particle grounding only).
    pub inference_iterations: Vec<usize>,
    /// Executed actions, in order, with failures marked.
    pub log: Vec<String>,
    pub trace: Vec<TraceRecord>,
}

enum Cycle {
    Done,
    Replan(Cause),
}

enum Cause {
    Error,
    Absence,
    Revealed,
}

#[derive(Debug, Error)]
enum GroundError {
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error("no feasible values for `{0}`")]
    Infeasible(String),
}

const EXEC_STREAM: u64 = 0xE0;
const GROUND_STREAM: u64 = 0x6D;

/// Runs one trial of `spec` in a fresh world drawn from `cfg.seed`.
pub fn run_trial(spec: &TaskSpec, model: &KitchenModel, cfg: &TrialConfig) -> RunMetrics {
    let model = model.with_fresh_meter();
    let init = &spec.problem.init;
    let goal = &spec.problem.goal;
    let noise = cfg.noise;
    let mut world = make_world(&model, init, cfg.seed);
    let mut belief = Belief::prior(&model, init, &noise);
    let mut rng = stream_rng(cfg.seed, EXEC_STREAM, 0);
    let obs = observe(&world, &model, &noise, &mut rng);
    belief.update(&obs, &noise);

    let mut m = RunMetrics::default();
    let mut work = 0u64;
    let mut wall = 0.0;
    for cycle in 0.. {
        let state = belief.symbolic(&model);
        if state.satisfies(goal) {
            break;
        }
        if cycle > MAX_REPLANS {
            break;
        }
        let started = Instant::now();
        let metered = model.scene.meter.get();
        let (skeleton, nodes) = plan_counted(
            &spec.schemas,
            &spec.problem.objects,
            &state,
            goal,
            DEFAULT_DEPTH,
        );
        work += nodes as u64;
        let grounded = skeleton.map_err(|e| e.to_string()).and_then(|s| {
            ground(&s, &belief, &model, cfg, cycle as u64, &mut m).map_err(|e| e.to_string())
        });
        work += model.scene.meter.get() - metered;
        wall += started.elapsed().as_secs_f64();
        let actions = match grounded {
            Ok(a) => a,
            Err(e) => {
                m.log.push(format!("planning failed: {e}"));
                break;
            }
        };
        match act(
            &actions,
            &mut world,
            &mut belief,
            &model,
            &noise,
            &mut rng,
            &mut m,
        ) {
            Cycle::Done => {}
            Cycle::Replan(cause) => {
                m.replans += 1;
                match cause {
                    Cause::Error => m.causes.error += 1,
                    Cause::Absence => m.causes.absence += 1,
                    Cause::Revealed => m.causes.revealed += 1,
                }
            }
        }
    }
    m.success = world.facts().satisfies(goal);
    m.planning_time_s = match cfg.clock {
        Clock::Work => work as f64 * SECONDS_PER_WORK_UNIT,
        Clock::Wall => wall,
    };
    m
}

/// Executes `actions` until one fails, a declared effect goes unobserved, or something new
/// comes into view.
fn act<R: Rng + ?Sized>(
    actions: &[GroundAction],
    world: &mut WorldState,
    belief: &mut Belief,
    model: &KitchenModel,
    noise: &NoiseModel,
    rng: &mut R,
    m: &mut RunMetrics,
) -> Cycle {
    for a in actions {
        let out = execute(world, model, a, noise, rng);
        *world = out.world;
        if out.error.is_none() {
            belief.record_success(a);
        }
        let obs = observe(world, model, noise, rng);
        let revealed = belief.update(&obs, noise);
        if let Some(e) = out.error {
            m.num_errors += 1;
            m.log.push(format!("{a} FAILED: {e}"));
            return Cycle::Replan(Cause::Error);
        }
        m.log.push(a.to_string());
        let state = belief.symbolic(model);
        let missing = a
            .schema
            .effects
            .iter()
            .filter_map(|l| a.ground_literal(l).map(|g| (g, l.negated)))
            .any(|(g, neg)| state.holds(&g) == neg);
        if missing {
            return Cycle::Replan(Cause::Absence);
        }
        if !revealed.is_empty() {
            return Cycle::Replan(Cause::Revealed);
        }
    }
    Cycle::Done
}

fn ground(
    skeleton: &[GroundAction],
    belief: &Belief,
    model: &KitchenModel,
    cfg: &TrialConfig,
    cycle: u64,
    m: &mut RunMetrics,
) -> Result<Vec<GroundAction>, GroundError> {
    if skeleton.iter().all(|a| a.params.is_empty()) {
        return Ok(skeleton.to_vec());
    }
    match cfg.algorithm {
        Algorithm::ShyCobra => ground_particles(skeleton, belief, model, cfg, cycle, m),
        Algorithm::Mlo => ground_most_likely(skeleton, belief, model, cfg, cycle),
    }
}

fn cycle_seed(seed: u64, cycle: u64) -> u64 {
    stream_rng(seed, GROUND_STREAM, cycle).random()
}

/// Builds the constraint network, runs max-product inference and reads off the best value of
/// every parameter.
fn ground_particles(
    skeleton: &[GroundAction],
    belief: &Belief,
    model: &KitchenModel,
    cfg: &TrialConfig,
    cycle: u64,
    m: &mut RunMetrics,
) -> Result<Vec<GroundAction>, GroundError> {
    let seed = cycle_seed(cfg.seed, cycle);
    let opts = BuildOptions {
        particles: cfg.particles,
        seed,
        mode: cfg.mode,
        ..Default::default()
    };
    let mut net = build_network(skeleton, belief, model, &opts)?;
    let report = run_inference(
        &mut net,
        &InferenceOptions {
            iterations: cfg.iterations,
            seed,
            subsample_std: cfg.noise.joint_std(),
            mode: cfg.mode,
            trace: cfg.trace,
            ..Default::default()
        },
    );
    m.inference_iterations.push(report.iterations);
    m.trace.extend(report.trace);
    let best = decode_assignment(&net);
    let mut out = skeleton.to_vec();
    for (k, a) in out.iter_mut().enumerate() {
        let names: Vec<String> = a.params.keys().cloned().collect();
        for name in names {
            let v = net
                .aliases
                .get(&(k + 1, name.clone()))
                .ok_or_else(|| GroundError::Infeasible(format!("{a}.{name}")))?;
            a.resolve(&name, best.get(*v).clone());
        }
        refine_kin(a, model);
    }
    Ok(out)
}

/// Re-solves every Kin-constrained configuration exactly for the chosen pose and grasp, keeping
/// the base and taking the IK branch nearest the chosen joints.
fn refine_kin(a: &mut GroundAction, model: &KitchenModel) {
    let schema = Arc::clone(&a.schema);
    for c in schema
        .constraints
        .iter()
        .filter(|c| c.kind == ConstraintKind::Kin)
    {
        let get = |n: &str| a.value(n).cloned();
        let (Some(Value::Config(phi)), Some(Value::Pose(p)), Some(Value::Grasp(g))) =
            (get(&c.args[0]), get(&c.args[1]), get(&c.args[2]))
        else {
            continue;
        };
        let near = inverse_kinematics(&p.compose(&g), phi.base, &model.arm)
            .into_iter()
            .map(|j| crate::particles::Config::new(phi.base, j))
            .min_by(|x, y| x.distance(&phi).total_cmp(&y.distance(&phi)));
        if let Some(q) = near {
            a.resolve(&c.args[0], Value::Config(q));
        }
    }
}

/// Smallest support weight a baseline placement must reach.
const MLO_STABLE_MIN: f64 = 0.5;

/// Determinized grounding: every object sits at the mean of its most likely mode, and each
/// action takes the first candidate (in sampling order) that admits IK and a collision-free
/// motion from the previous configuration.
fn ground_most_likely(
    skeleton: &[GroundAction],
    belief: &Belief,
    model: &KitchenModel,
    cfg: &TrialConfig,
    cycle: u64,
) -> Result<Vec<GroundAction>, GroundError> {
    let mut rng = stream_rng(cycle_seed(cfg.seed, cycle), GROUND_STREAM, 1);
    let mut poses: std::collections::BTreeMap<String, crate::geometry::Pose2> = belief
        .objects
        .iter()
        .map(|(o, b)| (o.clone(), b.most_likely().2))
        .collect();
    let mut held = belief.held.clone();
    let mut config = belief.config;
    let mut out = Vec::with_capacity(skeleton.len());
    for a in skeleton {
        let mut a = a.clone();
        let cont: Vec<(String, ParamKind)> = a
            .schema
            .continuous()
            .map(|p| (p.name.clone(), p.kind))
            .collect();
        if cont.is_empty() {
            out.push(a);
            continue;
        }
        let obj = a.objects().first().map(|s| s.to_string());
        let effects = a.holding_effects();
        let acquires = effects.iter().any(|e| e.1);
        let releases = effects.iter().any(|e| !e.1);
        let station = a
            .objects()
            .into_iter()
            .rev()
            .find(|o| model.scene.stations.contains_key(*o))
            .map(str::to_string);
        let has = |k: ParamKind| cont.iter().any(|(_, kind)| *kind == k);

        // candidate object poses
        let pose_candidates: Vec<crate::geometry::Pose2> = match (&obj, has(ParamKind::Pose)) {
            (Some(o), true) if releases => {
                let region = a.objects()[1].to_string();
                let rect = model
                    .region(&region)
                    .ok_or_else(|| GroundError::Infeasible(format!("{a}: region")))?
                    .rect;
                let r = model.objects[o].radius;
                placement_sampler(&rect, r + 0.02, cfg.particles, &mut rng)
                    .values
                    .iter()
                    .filter_map(|v| v.as_pose().copied())
                    .filter(|p| {
                        let f = KitchenFactor {
                            kind: ConstraintKind::Stable,
                            scene: Arc::clone(&model.scene),
                            arm: model.arm,
                            object: Some(model.objects[o]),
                            region: Some(rect),
                            params: Default::default(),
                        };
                        f.evaluate(&[&Value::Pose(*p)]).unwrap_or(0.0) >= MLO_STABLE_MIN
                    })
                    .collect()
            }
            (Some(o), true) => vec![*poses
                .get(o)
                .ok_or_else(|| GroundError::Infeasible(format!("{a}: no pose for {o}")))?],
            _ => vec![],
        };
        let needs_config = has(ParamKind::Config);
        let mut chosen = None;
        'search: for (i, p) in pose_candidates
            .iter()
            .map(Some)
            .chain(std::iter::once(None))
            .enumerate()
        {
            if p.is_none() && (i > 0 || has(ParamKind::Pose)) {
                break;
            }
            let grasps: Vec<crate::geometry::Pose2> = match (&obj, p) {
                (Some(o), Some(p)) if acquires => {
                    let ps = ParticleSet::uniform(vec![Value::Pose(*p)]);
                    grasp_sampler(
                        &ps,
                        &model.objects[o],
                        &model.scene,
                        cfg.particles,
                        &mut rng,
                    )
                    .map(|s| {
                        s.values
                            .iter()
                            .filter_map(|v| v.as_grasp().copied())
                            .collect()
                    })
                    .unwrap_or_default()
                }
                _ => held.iter().map(|h| h.1).collect(),
            };
            let grasp_list: Vec<Option<crate::geometry::Pose2>> = if grasps.is_empty() {
                vec![None]
            } else {
                grasps.into_iter().map(Some).collect()
            };
            for g in grasp_list {
                let target = if !needs_config {
                    None
                } else {
                    let st = station
                        .as_ref()
                        .ok_or_else(|| GroundError::Infeasible(format!("{a}: station")))?;
                    let kin = a
                        .schema
                        .constraints
                        .iter()
                        .any(|c| c.kind == ConstraintKind::Kin);
                    if kin {
                        let (Some(p), Some(g)) = (p, g) else { continue };
                        let base = model.station(st).expect("station");
                        let sols = inverse_kinematics(&p.compose(&g), base, &model.arm);
                        match sols.first() {
                            Some(j) => Some(crate::particles::Config::new(base, *j)),
                            None => continue,
                        }
                    } else {
                        model.tucked_at(st)
                    }
                };
                let traj = match (target, has(ParamKind::Trajectory)) {
                    (Some(t), true) => {
                        let hold = held.as_ref().map(|(h, hg)| Held {
                                grasp: *hg,
                                radius: model.objects[h].radius,
                            });
                        let mp = MotionPlanner::new(&model.scene, &model.arm).holding(hold);
                        match mp.plan(&config, &t, model.tuck, &mut rng) {
                            Some(tr) => Some(tr),
                            None => continue,
                        }
                    }
                    _ => None,
                };
                chosen = Some((p.copied(), g, target, traj));
                break 'search;
            }
        }
        let (p, g, target, traj) = chosen.ok_or_else(|| GroundError::Infeasible(a.to_string()))?;
        for (name, kind) in &cont {
            let v = match kind {
                ParamKind::Pose => p.map(Value::Pose),
                ParamKind::Grasp => g.map(Value::Grasp),
                ParamKind::Config => target.map(Value::Config),
                ParamKind::Trajectory => traj.clone().map(Value::Trajectory),
                _ => None,
            };
            match v {
                Some(v) => a.resolve(name, v),
                None => return Err(GroundError::Infeasible(format!("{a}.{name}"))),
            }
        }
        if let Some(t) = target {
            config = t;
        }
        if let (Some(o), Some(p)) = (&obj, p) {
            if acquires {
                held = g.map(|g| (o.clone(), g));
            }
            if releases {
                held = None;
            }
            poses.insert(o.clone(), p);
        }
        out.push(a);
    }
    Ok(out)
}

/// One benchmark row.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialRow {
    pub algorithm: Algorithm,
    pub task: Task,
    pub trial: usize,
    pub seed: u64,
    pub metrics: RunMetrics,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkConfig {
    pub algorithm: Algorithm,
    pub task: Task,
    pub trials: usize,
    pub trial: TrialConfig,
}

/// Seed of trial `i` in a benchmark started from `seed`.
pub fn trial_seed(seed: u64, i: usize) -> u64 {
    seed.wrapping_add(i as u64)
}

/// Runs the trials (in parallel when `trial.mode` allows) and returns rows in trial order.
pub fn run_benchmark(cfg: &BenchmarkConfig, model: &KitchenModel) -> Vec<TrialRow> {
    let spec = TaskSpec::load(cfg.task);
    map_range(cfg.trials, cfg.trial.mode, |i| {
        let seed = trial_seed(cfg.trial.seed, i);
        let tc = TrialConfig {
            algorithm: cfg.algorithm,
            seed,
            ..cfg.trial
        };
        TrialRow {
            algorithm: cfg.algorithm,
            task: cfg.task,
            trial: i,
            seed,
            metrics: run_trial(&spec, model, &tc),
        }
    })
}

pub const CSV_HEADER: [&str; 8] = [
    "alg",
    "task",
    "trial",
    "seed",
    "planning_time_s",
    "num_errors",
    "replans",
    "success",
];

/// Writes rows as CSV with fixed float formatting.
pub fn write_csv<W: std::io::Write>(rows: &[TrialRow], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in rows {
        w.write_record([
            r.algorithm.name().to_string(),
            r.task.name().to_string(),
            r.trial.to_string(),
            r.seed.to_string(),
            format!("{:.6}", r.metrics.planning_time_s),
            r.metrics.num_errors.to_string(),
            r.metrics.replans.to_string(),
            r.metrics.success.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Mean and sample standard deviation of time and error count over one (alg, task) group.
#[derive(Debug, Clone, PartialEq)]
pub struct Aggregate {
    pub algorithm: Algorithm,
    pub task: Task,
    pub trials: usize,
    pub mean_time: f64,
    pub std_time: f64,
    pub mean_errors: f64,
    pub std_errors: f64,
    pub success_rate: f64,
}

fn mean_std(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    if xs.is_empty() {
        return (0.0, 0.0);
    }
    let mean = xs.iter().sum::<f64>() / n;
    let var = if xs.len() > 1 {
        xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0)
    } else {
        0.0
    };
    (mean, var.sqrt())
}

pub fn aggregate(rows: &[TrialRow]) -> Vec<Aggregate> {
    let mut keys: Vec<(Algorithm, Task)> = rows.iter().map(|r| (r.algorithm, r.task)).collect();
    keys.sort();
    keys.dedup();
    keys.into_iter()
        .map(|(alg, task)| {
            let g: Vec<&TrialRow> = rows
                .iter()
                .filter(|r| r.algorithm == alg && r.task == task)
                .collect();
            let times: Vec<f64> = g.iter().map(|r| r.metrics.planning_time_s).collect();
            let errs: Vec<f64> = g.iter().map(|r| r.metrics.num_errors as f64).collect();
            let (mean_time, std_time) = mean_std(&times);
            let (mean_errors, std_errors) = mean_std(&errs);
            Aggregate {
                algorithm: alg,
                task,
                trials: g.len(),
                mean_time,
                std_time,
                mean_errors,
                std_errors,
                success_rate: g.iter().filter(|r| r.metrics.success).count() as f64
                    / g.len().max(1) as f64,
            }
        })
        .collect()
}

/// Fixed-width summary table.
pub fn format_aggregate(a: &[Aggregate]) -> String {
    let mut s = format!(
        "{:<9} {:<11} {:>12} {:>10} {:>8} {:>8} {:>8}\n",
        "alg", "task", "mean time", "std", "mean NE", "std", "success"
    );
    for r in a {
        s.push_str(&format!(
            "{:<9} {:<11} {:>12.4} {:>10.4} {:>8.3} {:>8.3} {:>8.2}\n",
            r.algorithm.name(),
            r.task.name(),
            r.mean_time,
            r.std_time,
            r.mean_errors,
            r.std_errors,
            r.success_rate
        ));
    }
    s
}

/// Goal literals of a task, for callers that only need the target.
pub fn goal_of(task: Task) -> Vec<(GroundLiteral, bool)> {
    TaskSpec::load(task).problem.goal
}

/// Symbolic state a fresh trial plans from.
pub fn initial_state(task: Task, model: &KitchenModel, noise: &NoiseModel) -> SymbolicState {
    let spec = TaskSpec::load(task);
    Belief::prior(model, &spec.problem.init, noise).symbolic(model)
}
