//! Action schemas with continuous parameters and constraint lists.
//!
//! Domain files follow a PDDL-like s-expression layout:
//!
//! ```text
//! (define (domain kitchen)
//!   (:action pick[obj]
//!     :parameters (?phi ?p ?g ?tau)
//!     :constraints (CFree(?tau), Stable[obj](?p), GraspH[obj](?g) Kin[obj](?phi, ?p, ?g))
//!     :preconditions (and (at robot ?phi) (at obj ?p) (handempty))
//!     :effects (and (holding obj) (not (handempty)))))
//! ```
//!
//! Symbolic parameters appear in brackets after the action name. Continuous
//! parameters take their kind from an explicit `- kind` annotation or from the
//! name prefix (`phi` config, `p`/`o` pose, `g` grasp, `tau` trajectory).

use crate::library::ConstraintKind;
use crate::particles::Value;
use crate::sexpr::{Cursor, Tok, Token};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SchemaError {
    #[error("syntax error at {line}:{col}: {msg}")]
    Syntax {
        line: usize,
        col: usize,
        msg: String,
    },
    #[error("action `{action}` references undeclared parameter `{name}`")]
    UndeclaredParameter { action: String, name: String },
    #[error("unknown constraint `{name}` at {line}:{col}")]
    UnknownConstraint {
        name: String,
        line: usize,
        col: usize,
    },
    #[error("constraint `{name}` in action `{action}`: {msg}")]
    BadConstraintArgs {
        action: String,
        name: String,
        msg: String,
    },
    #[error("cannot infer the kind of parameter `{0}`; annotate it with `- kind`")]
    UnknownParamKind(String),
    #[error("missing binding for symbolic parameter `{0}`")]
    MissingBinding(String),
    #[error("type mismatch: `{0}` is not a symbolic parameter")]
    TypeMismatch(String),
}

fn syntax(at: (usize, usize), msg: impl Into<String>) -> SchemaError {
    SchemaError::Syntax {
        line: at.0,
        col: at.1,
        msg: msg.into(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ParamKind {
    Config,
    Pose,
    Grasp,
    Trajectory,
    Symbol,
}

impl ParamKind {
    pub fn keyword(self) -> &'static str {
        match self {
            ParamKind::Config => "config",
            ParamKind::Pose => "pose",
            ParamKind::Grasp => "grasp",
            ParamKind::Trajectory => "trajectory",
            ParamKind::Symbol => "symbol",
        }
    }

    fn from_keyword(s: &str) -> Option<Self> {
        Some(match s {
            "config" => ParamKind::Config,
            "pose" => ParamKind::Pose,
            "grasp" => ParamKind::Grasp,
            "trajectory" => ParamKind::Trajectory,
            "symbol" => ParamKind::Symbol,
            _ => return None,
        })
    }

    fn infer(name: &str) -> Option<Self> {
        if name.starts_with("phi") {
            Some(ParamKind::Config)
        } else if name.starts_with("tau") {
            Some(ParamKind::Trajectory)
        } else if name.starts_with('g') {
            Some(ParamKind::Grasp)
        } else if name.starts_with('p') || name.starts_with('o') {
            Some(ParamKind::Pose)
        } else {
            None
        }
    }

    pub fn is_continuous(self) -> bool {
        self != ParamKind::Symbol
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Parameter {
    pub name: String,
    pub kind: ParamKind,
}

/// A constraint attached to an action: catalog entry, bracketed symbol bindings, parameter arguments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintSpec {
    pub kind: ConstraintKind,
    pub bindings: Vec<String>,
    pub args: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    /// A declared action parameter.
    Param(String),
    Const(String),
}

impl Term {
    pub fn name(&self) -> &str {
        match self {
            Term::Param(s) | Term::Const(s) => s,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub predicate: String,
    pub args: Vec<Term>,
    pub negated: bool,
}

/// A variable-free literal; symbolic states hold the positive ones.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroundLiteral {
    pub predicate: String,
    pub args: Vec<String>,
}

impl GroundLiteral {
    pub fn new(predicate: &str, args: &[&str]) -> Self {
        Self {
            predicate: predicate.to_string(),
            args: args.iter().map(|s| s.to_string()).collect(),
        }
    }
}

impl fmt::Display for GroundLiteral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}", self.predicate)?;
        for a in &self.args {
            write!(f, " {a}")?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionSchema {
    pub name: String,
    pub parameters: Vec<Parameter>,
    pub constraints: Vec<ConstraintSpec>,
    pub preconditions: Vec<Literal>,
    pub effects: Vec<Literal>,
}

impl ActionSchema {
    pub fn param(&self, name: &str) -> Option<&Parameter> {
        self.parameters.iter().find(|p| p.name == name)
    }

    pub fn symbols(&self) -> impl Iterator<Item = &Parameter> {
        self.parameters
            .iter()
            .filter(|p| p.kind == ParamKind::Symbol)
    }

    pub fn continuous(&self) -> impl Iterator<Item = &Parameter> {
        self.parameters.iter().filter(|p| p.kind.is_continuous())
    }
}

/// Closed-world set of true ground literals.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymbolicState(pub BTreeSet<GroundLiteral>);

impl SymbolicState {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn holds(&self, l: &GroundLiteral) -> bool {
        self.0.contains(l)
    }

    pub fn insert(&mut self, l: GroundLiteral) {
        self.0.insert(l);
    }

    pub fn remove(&mut self, l: &GroundLiteral) {
        self.0.remove(l);
    }

    pub fn iter(&self) -> impl Iterator<Item = &GroundLiteral> {
        self.0.iter()
    }

    /// Every positive goal literal holds and every negated one does not.
    pub fn satisfies(&self, goal: &[(GroundLiteral, bool)]) -> bool {
        goal.iter().all(|(l, neg)| self.holds(l) != *neg)
    }
}

impl FromIterator<GroundLiteral> for SymbolicState {
    fn from_iter<I: IntoIterator<Item = GroundLiteral>>(iter: I) -> Self {
        Self(iter.into_iter().collect())
    }
}

/// Reference to an unresolved continuous parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarRef(pub u64);

static NEXT_VAR: AtomicU64 = AtomicU64::new(1);

impl VarRef {
    pub fn fresh() -> Self {
        VarRef(NEXT_VAR.fetch_add(1, Ordering::Relaxed))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Slot {
    Unresolved(VarRef),
    Resolved(Value),
}

#[derive(Debug, Clone)]
pub struct GroundAction {
    pub schema: Arc<ActionSchema>,
    /// Symbolic parameter name to object id.
    pub bindings: BTreeMap<String, String>,
    pub params: BTreeMap<String, Slot>,
}

impl PartialEq for GroundAction {
    fn eq(&self, other: &Self) -> bool {
        self.schema.name == other.schema.name && self.bindings == other.bindings
    }
}

impl GroundAction {
    pub fn name(&self) -> &str {
        &self.schema.name
    }

    /// Objects in declaration order of the symbolic parameters.
    pub fn objects(&self) -> Vec<&str> {
        self.schema
            .symbols()
            .map(|p| self.bindings[&p.name].as_str())
            .collect()
    }

    pub fn object(&self, symbol: &str) -> Option<&str> {
        self.bindings.get(symbol).map(String::as_str)
    }

    pub fn resolve(&mut self, name: &str, v: Value) {
        if let Some(slot) = self.params.get_mut(name) {
            *slot = Slot::Resolved(v);
        }
    }

    pub fn value(&self, name: &str) -> Option<&Value> {
        match self.params.get(name) {
            Some(Slot::Resolved(v)) => Some(v),
            _ => None,
        }
    }

    pub fn is_resolved(&self) -> bool {
        self.params.values().all(|s| matches!(s, Slot::Resolved(_)))
    }

    /// Grounds a literal; `None` when it mentions a continuous parameter.
    pub fn ground_literal(&self, l: &Literal) -> Option<GroundLiteral> {
        let mut args = Vec::with_capacity(l.args.len());
        for t in &l.args {
            match t {
                Term::Const(c) => args.push(c.clone()),
                Term::Param(p) => args.push(self.bindings.get(p)?.clone()),
            }
        }
        Some(GroundLiteral {
            predicate: l.predicate.clone(),
            args,
        })
    }

    pub fn applicable(&self, s: &SymbolicState) -> bool {
        self.schema
            .preconditions
            .iter()
            .all(|l| match self.ground_literal(l) {
                Some(g) => s.holds(&g) != l.negated,
                None => true,
            })
    }

    /// Applies delete effects, then add effects.
    pub fn apply(&self, s: &SymbolicState) -> SymbolicState {
        let mut next = s.clone();
        for l in self.schema.effects.iter().filter(|l| l.negated) {
            if let Some(g) = self.ground_literal(l) {
                next.remove(&g);
            }
        }
        for l in self.schema.effects.iter().filter(|l| !l.negated) {
            if let Some(g) = self.ground_literal(l) {
                next.insert(g);
            }
        }
        next
    }

    /// Object ids whose `holding` literal this action adds (`true`) or deletes (`false`).
    pub fn holding_effects(&self) -> Vec<(String, bool)> {
        self.schema
            .effects
            .iter()
            .filter(|l| l.predicate == "holding" && l.args.len() == 1)
            .filter_map(|l| {
                self.ground_literal(l)
                    .map(|g| (g.args[0].clone(), !l.negated))
            })
            .collect()
    }
}

impl fmt::Display for GroundAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.schema.name, self.objects().join(", "))
    }
}

/// Binds every symbolic parameter and emits fresh variable references for the continuous ones.
pub fn ground(
    schema: &Arc<ActionSchema>,
    bindings: &BTreeMap<String, String>,
) -> Result<GroundAction, SchemaError> {
    for key in bindings.keys() {
        match schema.param(key) {
            Some(p) if p.kind == ParamKind::Symbol => {}
            _ => return Err(SchemaError::TypeMismatch(key.clone())),
        }
    }
    for p in schema.symbols() {
        if !bindings.contains_key(&p.name) {
            return Err(SchemaError::MissingBinding(p.name.clone()));
        }
    }
    let params = schema
        .continuous()
        .map(|p| (p.name.clone(), Slot::Unresolved(VarRef::fresh())))
        .collect();
    Ok(GroundAction {
        schema: Arc::clone(schema),
        bindings: bindings.clone(),
        params,
    })
}

/// Convenience: bind symbolic parameters positionally.
pub fn ground_positional(
    schema: &Arc<ActionSchema>,
    objects: &[&str],
) -> Result<GroundAction, SchemaError> {
    let syms: Vec<_> = schema.symbols().map(|p| p.name.clone()).collect();
    let bindings = syms
        .iter()
        .zip(objects)
        .map(|(s, o)| (s.clone(), o.to_string()))
        .collect();
    ground(schema, &bindings)
}

fn normalize(name: &str) -> String {
    name.trim_start_matches('?').to_string()
}

fn atom(c: &mut Cursor, what: &str) -> Result<(String, (usize, usize)), SchemaError> {
    let at = c.here();
    match c.bump() {
        Some(Token {
            tok: Tok::Atom(a), ..
        }) => Ok((a, at)),
        _ => Err(syntax(at, format!("expected {what}"))),
    }
}

fn expect(c: &mut Cursor, tok: Tok, what: &str) -> Result<(), SchemaError> {
    let at = c.here();
    if c.eat(&tok) {
        Ok(())
    } else {
        Err(syntax(at, format!("expected {what}")))
    }
}

fn expect_keyword(c: &mut Cursor, kw: &str) -> Result<(), SchemaError> {
    let at = c.here();
    let (a, _) = atom(c, kw)?;
    if a.eq_ignore_ascii_case(kw) {
        Ok(())
    } else {
        Err(syntax(at, format!("expected `{kw}`, found `{a}`")))
    }
}

/// Parses `(define (domain NAME) (:action ...)*)`. Empty input yields no schemas.
pub fn parse_domain(text: &str) -> Result<Vec<ActionSchema>, SchemaError> {
    let mut c = Cursor::new(text);
    let mut out = Vec::new();
    if c.at_end() {
        return Ok(out);
    }
    expect(&mut c, Tok::Open, "`(`")?;
    expect_keyword(&mut c, "define")?;
    expect(&mut c, Tok::Open, "`(`")?;
    expect_keyword(&mut c, "domain")?;
    atom(&mut c, "domain name")?;
    expect(&mut c, Tok::Close, "`)`")?;
    loop {
        if c.eat(&Tok::Close) {
            break;
        }
        let at = c.here();
        if !matches!(c.peek_at(0).map(|t| &t.tok), Some(Tok::Open)) {
            return Err(syntax(at, "expected `(` or `)`"));
        }
        match c.peek_at(1).map(|t| &t.tok) {
            Some(Tok::Atom(a)) if a.eq_ignore_ascii_case(":action") => {
                c.bump();
                c.bump();
                out.push(parse_action(&mut c)?);
            }
            Some(Tok::Atom(a)) if a.starts_with(':') => {
                c.skip_group();
            }
            _ => return Err(syntax(at, "expected `(:action`")),
        }
    }
    if !c.at_end() {
        return Err(syntax(c.here(), "trailing input after domain"));
    }
    Ok(out)
}

fn parse_action(c: &mut Cursor) -> Result<ActionSchema, SchemaError> {
    let (name, _) = atom(c, "action name")?;
    let mut parameters = Vec::new();
    if c.eat(&Tok::LBracket) {
        loop {
            c.eat_commas();
            if c.eat(&Tok::RBracket) {
                break;
            }
            let (s, _) = atom(c, "symbolic parameter")?;
            parameters.push(Parameter {
                name: normalize(&s),
                kind: ParamKind::Symbol,
            });
        }
    }
    let mut raw_constraints = Vec::new();
    let mut preconditions = Vec::new();
    let mut effects = Vec::new();
    loop {
        if c.eat(&Tok::Close) {
            break;
        }
        let at = c.here();
        let (kw, _) = atom(c, "action section keyword")?;
        match kw.to_ascii_lowercase().as_str() {
            ":parameters" => parse_params(c, &mut parameters)?,
            ":constraints" => raw_constraints = parse_constraints(c)?,
            ":preconditions" | ":precondition" => preconditions = parse_literals(c)?,
            ":effects" | ":effect" => effects = parse_literals(c)?,
            other => return Err(syntax(at, format!("unknown action section `{other}`"))),
        }
    }
    let mut schema = ActionSchema {
        name,
        parameters,
        constraints: Vec::new(),
        preconditions,
        effects,
    };
    resolve_terms(&mut schema)?;
    schema.constraints = check_constraints(&schema, raw_constraints)?;
    Ok(schema)
}

fn parse_params(c: &mut Cursor, out: &mut Vec<Parameter>) -> Result<(), SchemaError> {
    expect(c, Tok::Open, "`(` after :parameters")?;
    loop {
        c.eat_commas();
        if c.eat(&Tok::Close) {
            return Ok(());
        }
        let (raw, _) = atom(c, "parameter name")?;
        let name = normalize(&raw);
        let kind = if c.is_atom("-") {
            c.bump();
            let (k, at) = atom(c, "parameter kind")?;
            ParamKind::from_keyword(&k).ok_or_else(|| syntax(at, format!("unknown kind `{k}`")))?
        } else {
            ParamKind::infer(&name).ok_or_else(|| SchemaError::UnknownParamKind(name.clone()))?
        };
        out.push(Parameter { name, kind });
    }
}

struct RawConstraint {
    name: String,
    at: (usize, usize),
    bindings: Vec<String>,
    args: Vec<String>,
}

fn parse_constraints(c: &mut Cursor) -> Result<Vec<RawConstraint>, SchemaError> {
    expect(c, Tok::Open, "`(` after :constraints")?;
    let mut out = Vec::new();
    loop {
        c.eat_commas();
        if c.eat(&Tok::Close) {
            return Ok(out);
        }
        let (name, at) = atom(c, "constraint name")?;
        let mut bindings = Vec::new();
        if c.eat(&Tok::LBracket) {
            loop {
                c.eat_commas();
                if c.eat(&Tok::RBracket) {
                    break;
                }
                bindings.push(normalize(&atom(c, "binding")?.0));
            }
        }
        expect(c, Tok::Open, "`(` opening constraint arguments")?;
        let mut args = Vec::new();
        loop {
            c.eat_commas();
            if c.eat(&Tok::Close) {
                break;
            }
            args.push(normalize(&atom(c, "constraint argument")?.0));
        }
        out.push(RawConstraint {
            name,
            at,
            bindings,
            args,
        });
    }
}

/// Literal list: `(and L...)`, a single literal, or `()`.
fn parse_literals(c: &mut Cursor) -> Result<Vec<Literal>, SchemaError> {
    expect(c, Tok::Open, "`(`")?;
    if c.eat(&Tok::Close) {
        return Ok(Vec::new());
    }
    if c.is_atom("and") {
        c.bump();
        let mut out = Vec::new();
        loop {
            if c.eat(&Tok::Close) {
                return Ok(out);
            }
            expect(c, Tok::Open, "`(` opening literal")?;
            out.push(parse_literal_body(c)?);
        }
    }
    Ok(vec![parse_literal_body(c)?])
}

/// Parses after the opening `(` of a literal, consuming its closing `)`.
fn parse_literal_body(c: &mut Cursor) -> Result<Literal, SchemaError> {
    if c.is_atom("not") {
        c.bump();
        let nested = c.eat(&Tok::Open);
        let mut lit = parse_atoms(c)?;
        if nested {
            expect(c, Tok::Close, "`)` closing `not`")?;
        }
        lit.negated = true;
        return Ok(lit);
    }
    parse_atoms(c)
}

fn parse_atoms(c: &mut Cursor) -> Result<Literal, SchemaError> {
    let (predicate, _) = atom(c, "predicate")?;
    let mut args = Vec::new();
    loop {
        c.eat_commas();
        if c.eat(&Tok::Close) {
            break;
        }
        let (a, _) = atom(c, "literal argument")?;
        args.push(Term::Const(a));
    }
    Ok(Literal {
        predicate,
        args,
        negated: false,
    })
}

fn resolve_terms(schema: &mut ActionSchema) -> Result<(), SchemaError> {
    let declared: BTreeSet<String> = schema.parameters.iter().map(|p| p.name.clone()).collect();
    let action = schema.name.clone();
    for l in schema
        .preconditions
        .iter_mut()
        .chain(schema.effects.iter_mut())
    {
        for t in l.args.iter_mut() {
            let raw = t.name().to_string();
            let name = normalize(&raw);
            if declared.contains(&name) {
                *t = Term::Param(name);
            } else if raw.starts_with('?') {
                return Err(SchemaError::UndeclaredParameter {
                    action: action.clone(),
                    name,
                });
            }
        }
    }
    Ok(())
}

fn check_constraints(
    schema: &ActionSchema,
    raw: Vec<RawConstraint>,
) -> Result<Vec<ConstraintSpec>, SchemaError> {
    let mut out = Vec::with_capacity(raw.len());
    for r in raw {
        let kind =
            ConstraintKind::from_name(&r.name).ok_or_else(|| SchemaError::UnknownConstraint {
                name: r.name.clone(),
                line: r.at.0,
                col: r.at.1,
            })?;
        for b in &r.bindings {
            match schema.param(b) {
                Some(p) if p.kind == ParamKind::Symbol => {}
                Some(_) => return Err(SchemaError::TypeMismatch(b.clone())),
                None => {
                    return Err(SchemaError::UndeclaredParameter {
                        action: schema.name.clone(),
                        name: b.clone(),
                    })
                }
            }
        }
        let mut kinds = Vec::with_capacity(r.args.len());
        for a in &r.args {
            let p = schema
                .param(a)
                .ok_or_else(|| SchemaError::UndeclaredParameter {
                    action: schema.name.clone(),
                    name: a.clone(),
                })?;
            kinds.push(p.kind);
        }
        if !kind.signatures().contains(&kinds.as_slice()) {
            return Err(SchemaError::BadConstraintArgs {
                action: schema.name.clone(),
                name: kind.name().to_string(),
                msg: format!(
                    "argument kinds {:?} match no signature of {:?}",
                    kinds,
                    kind.signatures()
                ),
            });
        }
        out.push(ConstraintSpec {
            kind,
            bindings: r.bindings,
            args: r.args,
        });
    }
    Ok(out)
}

fn print_literals(ls: &[Literal]) -> String {
    let body: Vec<String> = ls
        .iter()
        .map(|l| {
            let mut s = format!("({}", l.predicate);
            for a in &l.args {
                match a {
                    Term::Param(p) => s.push_str(&format!(" ?{p}")),
                    Term::Const(c) => s.push_str(&format!(" {c}")),
                }
            }
            s.push(')');
            if l.negated {
                format!("(not {s})")
            } else {
                s
            }
        })
        .collect();
    format!("(and {})", body.join(" "))
}

/// Renders schemas in the grammar accepted by [`parse_domain`].
pub fn print_domain(name: &str, schemas: &[ActionSchema]) -> String {
    let mut s = format!("(define (domain {name})\n");
    for a in schemas {
        let syms: Vec<_> = a.symbols().map(|p| p.name.clone()).collect();
        s.push_str(&format!("  (:action {}", a.name));
        if !syms.is_empty() {
            s.push_str(&format!("[{}]", syms.join(", ")));
        }
        let params: Vec<_> = a
            .continuous()
            .map(|p| format!("?{} - {}", p.name, p.kind.keyword()))
            .collect();
        s.push_str(&format!("\n    :parameters ({})", params.join(" ")));
        let cons: Vec<_> = a
            .constraints
            .iter()
            .map(|c| {
                let b = if c.bindings.is_empty() {
                    String::new()
                } else {
                    format!("[{}]", c.bindings.join(", "))
                };
                let args: Vec<_> = c.args.iter().map(|x| format!("?{x}")).collect();
                format!("{}{}({})", c.kind.name(), b, args.join(", "))
            })
            .collect();
        s.push_str(&format!("\n    :constraints ({})", cons.join(", ")));
        s.push_str(&format!(
            "\n    :preconditions {}",
            print_literals(&a.preconditions)
        ));
        s.push_str(&format!("\n    :effects {})\n", print_literals(&a.effects)));
    }
    s.push_str(")\n");
    s
}

#[derive(Debug, Clone, PartialEq)]
pub struct Problem {
    pub name: String,
    pub objects: Vec<String>,
    pub init: SymbolicState,
    /// Goal literals with their negation flag.
    pub goal: Vec<(GroundLiteral, bool)>,
}

fn ground_const(l: Literal) -> (GroundLiteral, bool) {
    (
        GroundLiteral {
            predicate: l.predicate,
            args: l.args.into_iter().map(|t| t.name().to_string()).collect(),
        },
        l.negated,
    )
}

/// Parses `(define (problem NAME) (:domain D)? (:objects ...) (:init ...) (:goal ...))`.
pub fn parse_problem(text: &str) -> Result<Problem, SchemaError> {
    let mut c = Cursor::new(text);
    expect(&mut c, Tok::Open, "`(`")?;
    expect_keyword(&mut c, "define")?;
    expect(&mut c, Tok::Open, "`(`")?;
    expect_keyword(&mut c, "problem")?;
    let (name, _) = atom(&mut c, "problem name")?;
    expect(&mut c, Tok::Close, "`)`")?;
    let mut p = Problem {
        name,
        objects: Vec::new(),
        init: SymbolicState::new(),
        goal: Vec::new(),
    };
    loop {
        if c.eat(&Tok::Close) {
            break;
        }
        expect(&mut c, Tok::Open, "`(`")?;
        let at = c.here();
        let (kw, _) = atom(&mut c, "problem section")?;
        match kw.to_ascii_lowercase().as_str() {
            ":domain" => {
                atom(&mut c, "domain name")?;
                expect(&mut c, Tok::Close, "`)`")?;
            }
            ":objects" => loop {
                c.eat_commas();
                if c.eat(&Tok::Close) {
                    break;
                }
                p.objects.push(atom(&mut c, "object")?.0);
            },
            ":init" => loop {
                if c.eat(&Tok::Close) {
                    break;
                }
                expect(&mut c, Tok::Open, "`(`")?;
                let (l, neg) = ground_const(parse_literal_body(&mut c)?);
                if neg {
                    return Err(syntax(at, "negative literal in :init"));
                }
                p.init.insert(l);
            },
            ":goal" => {
                p.goal = parse_literals(&mut c)?
                    .into_iter()
                    .map(ground_const)
                    .collect();
                expect(&mut c, Tok::Close, "`)`")?;
            }
            other => return Err(syntax(at, format!("unknown problem section `{other}`"))),
        }
    }
    Ok(p)
}

/// Parses a goal expression such as `(and (clean pear) (holding pear))`.
pub fn parse_goal(text: &str) -> Result<Vec<(GroundLiteral, bool)>, SchemaError> {
    let mut c = Cursor::new(text);
    let out = parse_literals(&mut c)?;
    if !c.at_end() {
        return Err(syntax(c.here(), "trailing input after goal"));
    }
    Ok(out.into_iter().map(ground_const).collect())
}
