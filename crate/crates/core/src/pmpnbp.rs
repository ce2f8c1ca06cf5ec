//! Max-product pull message passing over particle sets.
//!
//! One iteration runs three barrier-separated phases: every variable sends to each of its
//! factors, every factor sends to each variable in its scope, then every variable updates its
//! belief. Each phase reads only the previous phase's output, so the per-edge and per-node work
//! is independent and runs through [`map_range`]. Random streams are keyed by
//! `(seed, phase, iteration, edge or node)`, which keeps results identical across modes.

use crate::network::{stream_rng, ConstraintNetwork, FactorId, VarId, VariableNode};
use crate::par::{map_range, ExecMode};
use crate::particles::{
    normalize, union_resample, JitterBandwidth, ParticleSet, Tolerances, Value, VarKind,
};
use crate::samplers::{config_offsets, offset_config, SUBSAMPLES};
use rand::Rng;
use std::fmt::Write as _;

/// How a factor-to-variable message scores a pulled sample against the other neighbors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MaxRule {
    /// Evaluate at the highest-weight sample of every other neighbor's message.
    #[default]
    BestNeighbor,
    /// For two-variable factors, maximize `w_j / max(w) * sigma(x_i, y_j)` over all samples `j`
    /// of the other message. Other arities use `BestNeighbor`.
    Pairwise,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InferenceOptions {
    pub iterations: usize,
    pub seed: u64,
    pub max_rule: MaxRule,
    pub tolerances: Tolerances,
    /// Jitter bandwidth as a fraction of the convergence tolerances.
    pub jitter: f64,
    /// Per-joint std of the Gaussian sub-samples used when weighting configurations; zero
    /// evaluates each configuration as is.
    pub subsample_std: f64,
    pub subsamples: usize,
    pub mode: ExecMode,
    pub trace: bool,
}

impl Default for InferenceOptions {
    fn default() -> Self {
        Self {
            iterations: 10,
            seed: 0,
            max_rule: MaxRule::BestNeighbor,
            tolerances: Tolerances::default(),
            jitter: 0.2,
            subsample_std: 0.0,
            subsamples: SUBSAMPLES,
            mode: ExecMode::Parallel,
            trace: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MessageKind {
    VarToFactor,
    FactorToVar,
    Belief,
}

impl MessageKind {
    fn tag(self) -> &'static str {
        match self {
            MessageKind::VarToFactor => "v2f",
            MessageKind::FactorToVar => "f2v",
            MessageKind::Belief => "belief",
        }
    }
}

/// One emitted particle set.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceRecord {
    pub iteration: usize,
    pub kind: MessageKind,
    pub source: String,
    pub target: String,
    pub particles: usize,
    pub weight_sum: f64,
    /// Largest three weights, descending; missing entries are zero.
    pub top: [f64; 3],
}

impl TraceRecord {
    fn new(
        iteration: usize,
        kind: MessageKind,
        source: &str,
        target: &str,
        s: &ParticleSet,
    ) -> Self {
        let mut w = s.weights.clone();
        w.sort_by(|a, b| b.total_cmp(a));
        let mut top = [0.0; 3];
        for (t, v) in top.iter_mut().zip(&w) {
            *t = *v;
        }
        Self {
            iteration,
            kind,
            source: source.to_string(),
            target: target.to_string(),
            particles: s.len(),
            weight_sum: s.weight_sum(),
            top,
        }
    }
}

/// CSV rendering of trace records.
pub fn trace_csv(records: &[TraceRecord]) -> String {
    let mut s = String::from("iteration,kind,source,target,particles,weight_sum,w1,w2,w3\n");
    for r in records {
        let q = |x: &str| format!("\"{}\"", x.replace('"', "\"\""));
        writeln!(
            s,
            "{},{},{},{},{},{:.12},{:.6e},{:.6e},{:.6e}",
            r.iteration,
            r.kind.tag(),
            q(&r.source),
            q(&r.target),
            r.particles,
            r.weight_sum,
            r.top[0],
            r.top[1],
            r.top[2]
        )
        .unwrap();
    }
    s
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct InferenceReport {
    pub iterations: usize,
    pub converged: bool,
    pub trace: Vec<TraceRecord>,
}

/// Edge `(factor, position in scope)` addressing.
struct Edges {
    list: Vec<(FactorId, usize)>,
    offset: Vec<usize>,
}

impl Edges {
    fn new(net: &ConstraintNetwork) -> Self {
        let mut list = Vec::new();
        let mut offset = Vec::with_capacity(net.factors.len());
        for f in &net.factors {
            offset.push(list.len());
            for k in 0..f.scope.len() {
                list.push((f.id, k));
            }
        }
        Self { list, offset }
    }

    fn id(&self, f: FactorId, k: usize) -> usize {
        self.offset[f] + k
    }

    /// Edge joining `x` to factor `f`.
    fn of(&self, net: &ConstraintNetwork, x: VarId, f: FactorId) -> usize {
        let k = net.factors[f]
            .scope
            .iter()
            .position(|&v| v == x)
            .expect("variable in factor scope");
        self.id(f, k)
    }
}

const PHASE_V2F: u64 = 1;
const PHASE_F2V: u64 = 2;
const PHASE_BELIEF: u64 = 3;

fn phase_stream(phase: u64, iteration: usize) -> u64 {
    (phase << 40) | iteration as u64
}

/// Pointwise product of `base`'s weights and messages that share its particle values.
fn aligned_product(base: &ParticleSet, msgs: &[&ParticleSet]) -> ParticleSet {
    let mut w = base.weights.clone();
    for m in msgs {
        debug_assert_eq!(m.len(), base.len());
        for (a, b) in w.iter_mut().zip(&m.weights) {
            *a *= b;
        }
    }
    // rescale to avoid underflow before normalizing
    let max = w.iter().cloned().fold(0.0, f64::max);
    if max > 0.0 {
        w.iter_mut().for_each(|x| *x /= max);
    }
    ParticleSet::weighted(base.values.clone(), w)
}

/// Message from variable `x` to factor `f`: the union of `x`'s other incoming messages,
/// resampled to the belief size. Leaves (no other messages) send their belief.
/// Anchored variables keep their particle values and send the product of the other messages.
pub fn variable_to_constraint<R: Rng + ?Sized>(
    net: &ConstraintNetwork,
    x: VarId,
    f: FactorId,
    incoming: &[Option<ParticleSet>],
    rng: &mut R,
) -> ParticleSet {
    let edges = Edges::new(net);
    let var = &net.variables[x];
    let others: Vec<&ParticleSet> = var
        .neighbors
        .iter()
        .filter(|&&g| g != f)
        .filter_map(|&g| incoming[edges.of(net, x, g)].as_ref())
        .collect();
    v2f_from(var.anchored, &var.belief, &others, rng)
}

fn v2f_from<R: Rng + ?Sized>(
    anchored: bool,
    belief: &ParticleSet,
    others: &[&ParticleSet],
    rng: &mut R,
) -> ParticleSet {
    if others.is_empty() {
        belief.clone()
    } else if anchored {
        aligned_product(belief, others)
    } else {
        union_resample(others, belief.len(), rng)
    }
}

fn evaluate(net: &ConstraintNetwork, f: FactorId, args: &[&Value]) -> f64 {
    match net.factors[f].potential.evaluate(args) {
        Ok(w) if w.is_finite() && w >= 0.0 => w,
        _ => 0.0,
    }
}

/// Message from factor `f` to the variable at scope position `k`, pulling the samples of that
/// variable's current belief. `v2f` holds the latest variable-to-factor messages per edge.
pub fn constraint_to_variable<R: Rng + ?Sized>(
    net: &ConstraintNetwork,
    f: FactorId,
    k: usize,
    v2f: &[ParticleSet],
    opts: &InferenceOptions,
    rng: &mut R,
) -> ParticleSet {
    let edges = Edges::new(net);
    f2v_inner(net, &edges, f, k, v2f, opts, rng)
}

fn f2v_inner<R: Rng + ?Sized>(
    net: &ConstraintNetwork,
    edges: &Edges,
    f: FactorId,
    k: usize,
    v2f: &[ParticleSet],
    opts: &InferenceOptions,
    rng: &mut R,
) -> ParticleSet {
    let factor = &net.factors[f];
    let x = &net.variables[factor.scope[k]];
    let samples = &x.belief.values;
    let offsets = if x.kind == VarKind::Config && opts.subsample_std > 0.0 {
        config_offsets(opts.subsamples, opts.subsample_std, rng)
    } else {
        vec![([0.0; 3], 1.0)]
    };
    // sub-sample sum for one candidate value of x, the rest of the scope fixed
    let plain = offsets.len() == 1 && offsets[0].0 == [0.0; 3];
    let score = |template: &[&Value], v: &Value| -> f64 {
        let mut args: Vec<&Value> = template.to_vec();
        if plain {
            args[k] = v;
            return evaluate(net, f, &args);
        }
        let c = v.as_config().expect("config sample");
        let mut total = 0.0;
        for (e, p) in &offsets {
            let moved = Value::Config(offset_config(c, e));
            let mut a = args.clone();
            a[k] = &moved;
            total += p * evaluate(net, f, &a);
        }
        total
    };
    let arity = factor.scope.len();
    let mut w = Vec::with_capacity(samples.len());
    if opts.max_rule == MaxRule::Pairwise && arity == 2 {
        let o = 1 - k;
        let msg = &v2f[edges.id(f, o)];
        let top = msg.weights.iter().cloned().fold(0.0, f64::max);
        for v in samples {
            let mut best: f64 = 0.0;
            for (y, wy) in msg.values.iter().zip(&msg.weights) {
                if top <= 0.0 || *wy <= 0.0 {
                    continue;
                }
                let args: [&Value; 2] = if k == 0 { [v, y] } else { [y, v] };
                best = best.max(wy / top * score(&args, v));
            }
            w.push(best);
        }
    } else {
        let best: Vec<&Value> = (0..arity)
            .map(|j| {
                if j == k {
                    &samples[0]
                } else {
                    v2f[edges.id(f, j)].best()
                }
            })
            .collect();
        for v in samples {
            w.push(score(&best, v));
        }
    }
    ParticleSet::weighted(samples.clone(), w)
}

/// Belief from all incoming factor messages: pooled union resampled to the belief size, with
/// duplicate copies jittered. Anchored variables re-weight their fixed particles by the product
/// of the messages instead.
pub fn update_belief<R: Rng + ?Sized>(
    anchored: bool,
    current: &ParticleSet,
    incoming: &[&ParticleSet],
    bandwidth: &JitterBandwidth,
    rng: &mut R,
) -> ParticleSet {
    if incoming.is_empty() {
        return current.clone();
    }
    if anchored {
        return aligned_product(current, incoming);
    }
    let mut s = union_resample(incoming, current.len(), rng);
    s.jitter_duplicates(bandwidth, rng);
    s
}

/// Runs up to `opts.iterations` synchronous iterations, stopping early once every variable's
/// highest-weight sample moves less than its kind's tolerance.
pub fn run_inference(net: &mut ConstraintNetwork, opts: &InferenceOptions) -> InferenceReport {
    let edges = Edges::new(net);
    let mut report = InferenceReport::default();
    let mut f2v: Vec<Option<ParticleSet>> = vec![None; edges.list.len()];
    let bandwidth = JitterBandwidth::from_tolerances(&opts.tolerances, opts.jitter);
    // anchored beliefs are evidence: every product starts from the weights they had on entry
    let evidence: Vec<ParticleSet> = net.variables.iter().map(|v| v.belief.clone()).collect();
    for it in 1..=opts.iterations {
        let view: &ConstraintNetwork = net;
        let v2f: Vec<ParticleSet> = map_range(edges.list.len(), opts.mode, |e| {
            let (f, k) = edges.list[e];
            let x = view.factors[f].scope[k];
            let var = &view.variables[x];
            let others: Vec<&ParticleSet> = var
                .neighbors
                .iter()
                .filter(|&&g| g != f)
                .filter_map(|&g| f2v[edges.of(view, x, g)].as_ref())
                .collect();
            let mut rng = stream_rng(opts.seed, phase_stream(PHASE_V2F, it), e as u64);
            let base = if var.anchored {
                &evidence[x]
            } else {
                &var.belief
            };
            v2f_from(var.anchored, base, &others, &mut rng)
        });
        let fresh: Vec<ParticleSet> = map_range(edges.list.len(), opts.mode, |e| {
            let (f, k) = edges.list[e];
            let mut rng = stream_rng(opts.seed, phase_stream(PHASE_F2V, it), e as u64);
            f2v_inner(view, &edges, f, k, &v2f, opts, &mut rng)
        });
        let beliefs: Vec<ParticleSet> = map_range(view.variables.len(), opts.mode, |x| {
            let var = &view.variables[x];
            let incoming: Vec<&ParticleSet> = var
                .neighbors
                .iter()
                .map(|&g| &fresh[edges.of(view, x, g)])
                .collect();
            let mut rng = stream_rng(opts.seed, phase_stream(PHASE_BELIEF, it), x as u64);
            let base = if var.anchored {
                &evidence[x]
            } else {
                &var.belief
            };
            update_belief(var.anchored, base, &incoming, &bandwidth, &mut rng)
        });
        if opts.trace {
            for (e, &(f, k)) in edges.list.iter().enumerate() {
                let fl = &view.factors[f].label;
                let vl = &view.variables[view.factors[f].scope[k]].label;
                report.trace.push(TraceRecord::new(
                    it,
                    MessageKind::VarToFactor,
                    vl,
                    fl,
                    &v2f[e],
                ));
                report.trace.push(TraceRecord::new(
                    it,
                    MessageKind::FactorToVar,
                    fl,
                    vl,
                    &fresh[e],
                ));
            }
            for (x, b) in beliefs.iter().enumerate() {
                let vl = &view.variables[x].label;
                report
                    .trace
                    .push(TraceRecord::new(it, MessageKind::Belief, vl, vl, b));
            }
        }
        // the starting beliefs are unweighted, so their best sample means nothing; anchored
        // particles never move, so their weights must settle as well
        let converged = it > 1
            && view.variables.iter().zip(&beliefs).all(|(v, b)| {
                v.belief.is_empty()
                    || (opts.tolerances.close(v.belief.best(), b.best())
                        && (!v.anchored || weights_settled(&v.belief, b)))
            });
        for (v, b) in net.variables.iter_mut().zip(beliefs) {
            v.belief = b;
        }
        net.messages.clone_from(&fresh);
        for (slot, m) in f2v.iter_mut().zip(fresh) {
            *slot = Some(m);
        }
        report.iterations = it;
        if converged {
            report.converged = true;
            break;
        }
    }
    report
}

/// Largest weight change at which an anchored belief counts as settled.
pub const WEIGHT_SETTLE_TOL: f64 = 1e-9;

fn weights_settled(a: &ParticleSet, b: &ParticleSet) -> bool {
    a.len() == b.len()
        && a.weights
            .iter()
            .zip(&b.weights)
            .all(|(x, y)| (x - y).abs() <= WEIGHT_SETTLE_TOL)
}

/// Highest-weight sample of every variable, lowest index on ties.
#[derive(Debug, Clone, PartialEq)]
pub struct Assignment(pub Vec<Value>);

impl Assignment {
    pub fn get(&self, v: VarId) -> &Value {
        &self.0[v]
    }
}

/// Highest-weight sample of every variable on its own.
pub fn max_product_assignment(net: &ConstraintNetwork) -> Assignment {
    Assignment(
        net.variables
            .iter()
            .map(|v| v.belief.best().clone())
            .collect(),
    )
}

/// Jointly consistent assignment read off the beliefs: variables are fixed in creation order,
/// each to the sample maximizing its belief weight times every factor whose other arguments
/// are already fixed. Where the last message from such a factor shares the belief's samples it
/// is divided out first, so the factor replaces it rather than counting twice. Lowest index
/// wins ties; when every score is zero the belief's best sample is kept.
pub fn decode_assignment(net: &ConstraintNetwork) -> Assignment {
    let edges = Edges::new(net);
    let aligned = |f: FactorId, k: usize, var: &VariableNode| {
        net.messages
            .get(edges.id(f, k))
            .filter(|m| m.values == var.belief.values)
    };
    let mut fixed: Vec<Option<Value>> = vec![None; net.variables.len()];
    for var in &net.variables {
        if var.belief.is_empty() {
            continue;
        }
        let ready: Vec<(FactorId, usize, Option<&ParticleSet>)> = var
            .neighbors
            .iter()
            .filter_map(|&f| {
                let scope = &net.factors[f].scope;
                let k = scope.iter().position(|&v| v == var.id)?;
                scope
                    .iter()
                    .enumerate()
                    .all(|(j, &v)| j == k || fixed[v].is_some())
                    .then(|| (f, k, aligned(f, k, var)))
            })
            .collect();
        let mut best = (var.belief.argmax(), 0.0);
        for (i, x) in var.belief.values.iter().enumerate() {
            let mut score = var.belief.weights[i];
            for &(f, k, msg) in &ready {
                if score == 0.0 {
                    break;
                }
                let args: Vec<&Value> = net.factors[f]
                    .scope
                    .iter()
                    .enumerate()
                    .map(|(j, &v)| {
                        if j == k {
                            x
                        } else {
                            fixed[v].as_ref().expect("fixed")
                        }
                    })
                    .collect();
                score *= evaluate(net, f, &args);
                if let Some(m) = msg {
                    score = if m.weights[i] > 0.0 {
                        score / m.weights[i]
                    } else {
                        0.0
                    };
                }
            }
            if score > best.1 {
                best = (i, score);
            }
        }
        fixed[var.id] = Some(var.belief.values[best.0].clone());
    }
    Assignment(
        fixed
            .into_iter()
            .map(|v| v.unwrap_or(Value::Discrete(0)))
            .collect(),
    )
}

/// Uniform weights for an all-zero weight vector, otherwise normalized weights.
pub fn normalized(mut w: Vec<f64>) -> Vec<f64> {
    normalize(&mut w);
    w
}
