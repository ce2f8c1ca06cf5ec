//! Breadth-first symbolic planner producing plan skeletons.

use crate::schema::{
    ground, ActionSchema, GroundAction, GroundLiteral, Literal, SchemaError, SymbolicState,
};
use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::sync::Arc;
use thiserror::Error;

pub const DEFAULT_DEPTH: usize = 40;

#[derive(Debug, Error, PartialEq)]
pub enum PlanError {
    #[error("goal unreachable within {0} actions")]
    Unsolvable(usize),
    #[error(transparent)]
    Schema(#[from] SchemaError),
}

/// Ground action as interned precondition and effect literal ids.
#[derive(Debug, Clone)]
struct Op {
    schema: usize,
    objects: Vec<String>,
    pre_pos: Vec<usize>,
    pre_neg: Vec<usize>,
    add: Vec<usize>,
    del: Vec<usize>,
}

#[derive(Default)]
struct Interner {
    ids: HashMap<GroundLiteral, usize>,
}

impl Interner {
    fn id(&mut self, l: GroundLiteral) -> usize {
        let n = self.ids.len();
        *self.ids.entry(l).or_insert(n)
    }
}

type Bits = Vec<u64>;

fn set(b: &mut Bits, i: usize) {
    b[i / 64] |= 1 << (i % 64);
}
fn clear(b: &mut Bits, i: usize) {
    b[i / 64] &= !(1 << (i % 64));
}
fn get(b: &Bits, i: usize) -> bool {
    b[i / 64] >> (i % 64) & 1 == 1
}

fn ground_lit(l: &Literal, binding: &BTreeMap<String, String>) -> GroundLiteral {
    GroundLiteral {
        predicate: l.predicate.clone(),
        args: l
            .args
            .iter()
            .map(|t| {
                binding
                    .get(t.name())
                    .cloned()
                    .unwrap_or_else(|| t.name().to_string())
            })
            .collect(),
    }
}

/// Literals mentioning a continuous parameter are geometric and skipped symbolically.
fn is_symbolic(l: &Literal, schema: &ActionSchema) -> bool {
    l.args.iter().all(|t| match schema.param(t.name()) {
        Some(p) => !p.kind.is_continuous(),
        None => true,
    })
}

/// Shortest skeleton from `init` to `goal`. Ground actions are expanded in lexicographic order
/// of (action name, object ids), so the result is deterministic.
pub fn plan(
    schemas: &[Arc<ActionSchema>],
    objects: &[String],
    init: &SymbolicState,
    goal: &[(GroundLiteral, bool)],
    max_depth: usize,
) -> Result<Vec<GroundAction>, PlanError> {
    plan_counted(schemas, objects, init, goal, max_depth).0
}

/// [`plan`] plus the number of search states generated.
pub fn plan_counted(
    schemas: &[Arc<ActionSchema>],
    objects: &[String],
    init: &SymbolicState,
    goal: &[(GroundLiteral, bool)],
    max_depth: usize,
) -> (Result<Vec<GroundAction>, PlanError>, usize) {
    if init.satisfies(goal) {
        return (Ok(Vec::new()), 0);
    }
    let mut objs: Vec<String> = objects.to_vec();
    objs.sort();
    objs.dedup();
    let mut order: Vec<usize> = (0..schemas.len()).collect();
    order.sort_by(|&a, &b| schemas[a].name.cmp(&schemas[b].name));

    // predicates no action changes are checked once against the initial state
    let fluent: BTreeSet<&str> = schemas
        .iter()
        .flat_map(|s| s.effects.iter().map(|l| l.predicate.as_str()))
        .collect();

    let mut lits = Interner::default();
    for l in init.iter() {
        lits.id(l.clone());
    }
    for (g, _) in goal {
        lits.id(g.clone());
    }
    let mut ops = Vec::new();
    for &si in &order {
        let s = &schemas[si];
        let syms: Vec<String> = s.symbols().map(|p| p.name.clone()).collect();
        let mut idx = vec![0usize; syms.len()];
        if objs.is_empty() && !syms.is_empty() {
            continue;
        }
        'enumerate: loop {
            let binding: BTreeMap<String, String> = syms
                .iter()
                .zip(&idx)
                .map(|(n, &i)| (n.clone(), objs[i].clone()))
                .collect();
            let mut ok = true;
            for l in s.preconditions.iter().filter(|l| is_symbolic(l, s)) {
                if !fluent.contains(l.predicate.as_str()) {
                    let g = ground_lit(l, &binding);
                    if init.holds(&g) == l.negated {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                let mut op = Op {
                    schema: si,
                    objects: idx.iter().map(|&i| objs[i].clone()).collect(),
                    pre_pos: Vec::new(),
                    pre_neg: Vec::new(),
                    add: Vec::new(),
                    del: Vec::new(),
                };
                for l in s.preconditions.iter().filter(|l| is_symbolic(l, s)) {
                    if fluent.contains(l.predicate.as_str()) {
                        let id = lits.id(ground_lit(l, &binding));
                        if l.negated {
                            op.pre_neg.push(id)
                        } else {
                            op.pre_pos.push(id)
                        }
                    }
                }
                for l in s.effects.iter().filter(|l| is_symbolic(l, s)) {
                    let id = lits.id(ground_lit(l, &binding));
                    if l.negated {
                        op.del.push(id)
                    } else {
                        op.add.push(id)
                    }
                }
                ops.push(op);
            }
            // odometer over object indices, last symbol fastest
            let mut k = syms.len();
            loop {
                if k == 0 {
                    break 'enumerate;
                }
                k -= 1;
                idx[k] += 1;
                if idx[k] < objs.len() {
                    break;
                }
                idx[k] = 0;
            }
        }
    }

    let words = lits.ids.len().div_ceil(64).max(1);
    let mut start = vec![0u64; words];
    for l in init.iter() {
        set(&mut start, lits.ids[l]);
    }
    let goal_ids: Vec<(usize, bool)> = goal.iter().map(|(g, neg)| (lits.ids[g], *neg)).collect();
    let satisfied = |b: &Bits| goal_ids.iter().all(|&(i, neg)| get(b, i) != neg);

    let mut seen: HashSet<Bits> = HashSet::new();
    // (state, parent index, op index, depth)
    let mut nodes: Vec<(Bits, usize, usize, usize)> =
        vec![(start.clone(), usize::MAX, usize::MAX, 0)];
    seen.insert(start);
    let mut queue = VecDeque::from([0usize]);
    while let Some(n) = queue.pop_front() {
        let depth = nodes[n].3;
        if depth >= max_depth {
            continue;
        }
        for (oi, op) in ops.iter().enumerate() {
            let b = &nodes[n].0;
            if !op.pre_pos.iter().all(|&i| get(b, i)) || op.pre_neg.iter().any(|&i| get(b, i)) {
                continue;
            }
            let mut next = b.clone();
            for &i in &op.del {
                clear(&mut next, i);
            }
            for &i in &op.add {
                set(&mut next, i);
            }
            if !seen.insert(next.clone()) {
                continue;
            }
            let done = satisfied(&next);
            nodes.push((next, n, oi, depth + 1));
            let id = nodes.len() - 1;
            if done {
                return (extract(schemas, &ops, &nodes, id), nodes.len());
            }
            queue.push_back(id);
        }
    }
    (Err(PlanError::Unsolvable(max_depth)), nodes.len())
}

fn extract(
    schemas: &[Arc<ActionSchema>],
    ops: &[Op],
    nodes: &[(Bits, usize, usize, usize)],
    mut id: usize,
) -> Result<Vec<GroundAction>, PlanError> {
    let mut seq = Vec::new();
    while nodes[id].1 != usize::MAX {
        seq.push(nodes[id].2);
        id = nodes[id].1;
    }
    seq.reverse();
    seq.into_iter()
        .map(|oi| {
            let op = &ops[oi];
            let s = &schemas[op.schema];
            let binding = s
                .symbols()
                .zip(&op.objects)
                .map(|(p, o)| (p.name.clone(), o.clone()))
                .collect();
            ground(s, &binding).map_err(PlanError::from)
        })
        .collect()
}

/// Replans from the post-observation state, replacing the unexecuted suffix.
pub fn update_plan_skeleton(
    schemas: &[Arc<ActionSchema>],
    objects: &[String],
    state: &SymbolicState,
    goal: &[(GroundLiteral, bool)],
    max_depth: usize,
) -> Result<Vec<GroundAction>, PlanError> {
    plan(schemas, objects, state, goal, max_depth)
}

/// Checks that `skeleton` applies action by action from `init` and ends in the goal.
pub fn validate(
    skeleton: &[GroundAction],
    init: &SymbolicState,
    goal: &[(GroundLiteral, bool)],
) -> bool {
    let mut s = init.clone();
    for a in skeleton {
        if !a.applicable(&s) {
            return false;
        }
        s = a.apply(&s);
    }
    s.satisfies(goal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schema::parse_domain;

    const BLOCKS: &str = "(define (domain lights)
      (:action toggle_on[x] :parameters () :constraints ()
        :preconditions (and (off x) (power)) :effects (and (lit x) (not (off x))))
      (:action power_up :parameters () :constraints ()
        :preconditions (and (not (power))) :effects (power)))";

    fn lits(s: &[(&str, &[&str])]) -> SymbolicState {
        s.iter().map(|(p, a)| GroundLiteral::new(p, a)).collect()
    }

    #[test]
    fn satisfied_goal_gives_empty_plan() {
        let d: Vec<_> = parse_domain(BLOCKS)
            .unwrap()
            .into_iter()
            .map(Arc::new)
            .collect();
        let init = lits(&[("lit", &["a"])]);
        let goal = vec![(GroundLiteral::new("lit", &["a"]), false)];
        assert!(plan(&d, &["a".into()], &init, &goal, 5).unwrap().is_empty());
    }

    #[test]
    fn negative_preconditions_and_order() {
        let d: Vec<_> = parse_domain(BLOCKS)
            .unwrap()
            .into_iter()
            .map(Arc::new)
            .collect();
        let init = lits(&[("off", &["a"]), ("off", &["b"])]);
        let goal = vec![
            (GroundLiteral::new("lit", &["b"]), false),
            (GroundLiteral::new("lit", &["a"]), false),
        ];
        let objs = vec!["b".to_string(), "a".to_string()];
        let p = plan(&d, &objs, &init, &goal, 5).unwrap();
        let names: Vec<String> = p.iter().map(|a| a.to_string()).collect();
        assert_eq!(names, vec!["power_up()", "toggle_on(a)", "toggle_on(b)"]);
        assert!(validate(&p, &init, &goal));
        assert_eq!(
            plan(&d, &objs, &init, &goal, 2),
            Err(PlanError::Unsolvable(2))
        );
    }
}
