//! Semantic values with free directions.
//!
//! Values are weak-head-normal forms that have been evaluated all the way
//! down; binders are represented either as closures (for term variables)
//! or by a generic point (for direction binders: a globally fresh
//! direction paired with the body evaluated at it). Restriction along a
//! direction substitution re-runs the smart constructors, so evaluation
//! commutes with reindexing by construction.

use std::fmt;
use std::rc::Rc;

use crate::face::Face;
use crate::interval::{Direction, Endpoint, IntervalTerm, Name};
use crate::syntax::Term;

#[derive(Clone, Debug)]
pub struct EvalError(pub String);

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for EvalError {}

pub type EvalResult<T> = Result<T, EvalError>;

pub fn eerr<T>(msg: impl Into<String>) -> EvalResult<T> {
    Err(EvalError(msg.into()))
}

/// Entry bound to a name in an evaluation environment.
#[derive(Clone, Debug)]
pub enum EnvEntry {
    Val(Rc<Value>),
    Dir(IntervalTerm),
}

#[derive(Clone, Debug, Default)]
pub struct Env(Option<Rc<EnvNode>>);

#[derive(Debug)]
struct EnvNode {
    name: Name,
    entry: EnvEntry,
    /// Closed nodes hold direction-free values (top-level definitions);
    /// restriction and direction collection stop there.
    closed: bool,
    rest: Env,
}

impl Env {
    pub fn new() -> Env {
        Env(None)
    }

    pub fn bind(&self, name: Name, entry: EnvEntry) -> Env {
        Env(Some(Rc::new(EnvNode { name, entry, closed: false, rest: self.clone() })))
    }

    /// Bind an entry known to contain no free directions.
    pub fn bind_closed(&self, name: Name, v: Rc<Value>) -> Env {
        Env(Some(Rc::new(EnvNode {
            name,
            entry: EnvEntry::Val(v),
            closed: true,
            rest: self.clone(),
        })))
    }

    pub fn bind_val(&self, name: Name, v: Rc<Value>) -> Env {
        self.bind(name, EnvEntry::Val(v))
    }

    pub fn bind_dir(&self, name: Name, t: IntervalTerm) -> Env {
        self.bind(name, EnvEntry::Dir(t))
    }

    pub fn lookup(&self, name: &str) -> Option<&EnvEntry> {
        let mut cur = self;
        while let Some(node) = &cur.0 {
            if &*node.name == name {
                return Some(&node.entry);
            }
            cur = &node.rest;
        }
        None
    }

    /// Entries above the closed tail (front first) plus the tail itself.
    pub fn split_open(&self) -> (Vec<(Name, EnvEntry)>, Env) {
        let mut open = Vec::new();
        let mut cur = self;
        while let Some(node) = &cur.0 {
            if node.closed {
                return (open, cur.clone());
            }
            open.push((node.name.clone(), node.entry.clone()));
            cur = &node.rest;
        }
        (open, Env::new())
    }
}

/// A binder body awaiting a value.
#[derive(Clone, Debug)]
pub enum Closure {
    /// Suspended term under an environment.
    Term { env: Env, param: Name, body: Rc<Term> },
    /// The function produced by composing in a dependent function line.
    PiComp(Rc<CompProblem>),
    /// Constant family.
    Const(Rc<Value>),
}

/// One partial-type component of a glueing.
#[derive(Clone, Debug)]
pub struct GluePart {
    pub ty: Rc<Value>,
    pub fun: Rc<Value>,
    pub equiv: Rc<Value>,
}

/// A composition request over a type line in a fresh direction. The tube
/// faces never constrain `dir`; each branch value may mention it.
#[derive(Clone, Debug)]
pub struct CompProblem {
    pub e: Endpoint,
    pub dir: Direction,
    pub line: Rc<Value>,
    pub sys: Vec<(Face, Rc<Value>)>,
    pub cap: Rc<Value>,
}

impl CompProblem {
    /// The extent of the tube system.
    pub fn extent(&self) -> Face {
        let mut phi = Face::bottom();
        for (f, _) in &self.sys {
            phi = crate::face::f_or(&phi, f);
        }
        phi
    }
}

#[derive(Clone, Debug)]
pub enum Value {
    U,
    Pi(Rc<Value>, Closure),
    Lam(Closure),
    Sigma(Rc<Value>, Closure),
    Pair(Rc<Value>, Rc<Value>),
    Nat,
    Zero,
    Suc(Rc<Value>),
    Sum(Rc<Value>, Rc<Value>),
    Inl(Rc<Value>),
    Inr(Rc<Value>),
    /// Path type with its two stored endpoints.
    Path(Rc<Value>, Rc<Value>, Rc<Value>),
    /// Direction binder at a generic point.
    PLam(Direction, Rc<Value>),
    Id(Rc<Value>, Rc<Value>, Rc<Value>),
    /// A path together with the cofibrant flag marking where it is
    /// known to be constant.
    IdPair(Rc<Value>, Face),
    /// Glue type: total type plus partial (type, function, equivalence)
    /// components. Never has a top face; that collapses at construction.
    Glue { base: Rc<Value>, parts: Vec<(Face, GluePart)> },
    /// Element of a glue type: partial elements of the partial types
    /// plus a total element of the base.
    GlueElem { parts: Vec<(Face, Rc<Value>)>, base: Rc<Value> },
    Neutral(Rc<Neutral>),
}

#[derive(Clone, Debug)]
pub enum Neutral {
    Var { name: Name, ty: Rc<Value> },
    App(Rc<Neutral>, Rc<Value>),
    Fst(Rc<Neutral>),
    Snd(Rc<Neutral>),
    NatRec { motive: Rc<Value>, z: Rc<Value>, s: Rc<Value>, scrut: Rc<Neutral> },
    Case { motive: Rc<Value>, l: Rc<Value>, r: Rc<Value>, scrut: Rc<Neutral> },
    PApp(Rc<Neutral>, IntervalTerm),
    IdJ { motive: Rc<Value>, base: Rc<Value>, scrut: Rc<Neutral> },
    Unglue { scrut: Rc<Neutral>, glue_ty: Rc<Value> },
    /// A composition stuck on a type line without a dispatchable head;
    /// it can become unstuck under restriction.
    Comp(Rc<CompProblem>),
}

impl Value {
    pub fn rc(self) -> Rc<Value> {
        Rc::new(self)
    }

    pub fn neutral(n: Neutral) -> Rc<Value> {
        Rc::new(Value::Neutral(Rc::new(n)))
    }

    pub fn var(name: Name, ty: Rc<Value>) -> Rc<Value> {
        Value::neutral(Neutral::Var { name, ty })
    }

    /// Fresh neutral variable of the given type.
    pub fn fresh_var(hint: &str, ty: Rc<Value>) -> Rc<Value> {
        let name: Name = format!("{hint}%{}", crate::interval::next_gen()).into();
        Value::var(name, ty)
    }

    pub fn head_name(&self) -> &'static str {
        match self {
            Value::U => "U",
            Value::Pi(_, _) => "Pi",
            Value::Lam(_) => "Lam",
            Value::Sigma(_, _) => "Sigma",
            Value::Pair(_, _) => "Pair",
            Value::Nat => "Nat",
            Value::Zero => "zero",
            Value::Suc(_) => "suc",
            Value::Sum(_, _) => "Sum",
            Value::Inl(_) => "inl",
            Value::Inr(_) => "inr",
            Value::Path(_, _, _) => "Path",
            Value::PLam(_, _) => "PLam",
            Value::Id(_, _, _) => "Id",
            Value::IdPair(_, _) => "idPair",
            Value::Glue { .. } => "Glue",
            Value::GlueElem { .. } => "glue",
            Value::Neutral(_) => "neutral",
        }
    }
}

/// Count the distinct free directions of a value, for tracing.
pub fn free_dirs_value(v: &Value, out: &mut std::collections::BTreeSet<Direction>) {
    match v {
        Value::U | Value::Nat | Value::Zero => {}
        Value::Pi(a, c) | Value::Sigma(a, c) => {
            free_dirs_value(a, out);
            free_dirs_closure(c, out);
        }
        Value::Lam(c) => free_dirs_closure(c, out),
        Value::Pair(a, b) | Value::Sum(a, b) => {
            free_dirs_value(a, out);
            free_dirs_value(b, out);
        }
        Value::Suc(a) | Value::Inl(a) | Value::Inr(a) => free_dirs_value(a, out),
        Value::Path(a, x, y) | Value::Id(a, x, y) => {
            free_dirs_value(a, out);
            free_dirs_value(x, out);
            free_dirs_value(y, out);
        }
        Value::PLam(d, body) => {
            free_dirs_value(body, out);
            out.remove(d);
        }
        Value::IdPair(p, phi) => {
            free_dirs_value(p, out);
            for d in phi.free_dirs() {
                out.insert(d);
            }
        }
        Value::Glue { base, parts } => {
            free_dirs_value(base, out);
            for (f, p) in parts {
                for d in f.free_dirs() {
                    out.insert(d);
                }
                free_dirs_value(&p.ty, out);
                free_dirs_value(&p.fun, out);
                free_dirs_value(&p.equiv, out);
            }
        }
        Value::GlueElem { parts, base } => {
            free_dirs_value(base, out);
            for (f, v) in parts {
                for d in f.free_dirs() {
                    out.insert(d);
                }
                free_dirs_value(v, out);
            }
        }
        Value::Neutral(n) => free_dirs_neutral(n, out),
    }
}

fn free_dirs_closure(c: &Closure, out: &mut std::collections::BTreeSet<Direction>) {
    match c {
        Closure::Term { env, .. } => {
            let (open, _) = env.split_open();
            for (_, entry) in open {
                match entry {
                    EnvEntry::Val(v) => free_dirs_value(&v, out),
                    EnvEntry::Dir(t) => out.extend(t.free_dirs()),
                }
            }
        }
        Closure::PiComp(pb) => free_dirs_problem(pb, out),
        Closure::Const(v) => free_dirs_value(v, out),
    }
}

pub fn free_dirs_problem(pb: &CompProblem, out: &mut std::collections::BTreeSet<Direction>) {
    free_dirs_value(&pb.line, out);
    for (f, v) in &pb.sys {
        for d in f.free_dirs() {
            out.insert(d);
        }
        free_dirs_value(v, out);
    }
    free_dirs_value(&pb.cap, out);
    out.remove(&pb.dir);
}

fn free_dirs_neutral(n: &Neutral, out: &mut std::collections::BTreeSet<Direction>) {
    match n {
        Neutral::Var { ty, .. } => free_dirs_value(ty, out),
        Neutral::App(f, a) => {
            free_dirs_neutral(f, out);
            free_dirs_value(a, out);
        }
        Neutral::Fst(m) | Neutral::Snd(m) => free_dirs_neutral(m, out),
        Neutral::NatRec { motive, z, s, scrut } => {
            free_dirs_value(motive, out);
            free_dirs_value(z, out);
            free_dirs_value(s, out);
            free_dirs_neutral(scrut, out);
        }
        Neutral::Case { motive, l, r, scrut } => {
            free_dirs_value(motive, out);
            free_dirs_value(l, out);
            free_dirs_value(r, out);
            free_dirs_neutral(scrut, out);
        }
        Neutral::PApp(m, t) => {
            free_dirs_neutral(m, out);
            out.extend(t.free_dirs());
        }
        Neutral::IdJ { motive, base, scrut } => {
            free_dirs_value(motive, out);
            free_dirs_value(base, out);
            free_dirs_neutral(scrut, out);
        }
        Neutral::Unglue { scrut, glue_ty } => {
            free_dirs_neutral(scrut, out);
            free_dirs_value(glue_ty, out);
        }
        Neutral::Comp(pb) => free_dirs_problem(pb, out),
    }
}

/// Whether a direction occurs free in a value.
pub fn mentions_dir(v: &Value, d: &Direction) -> bool {
    let mut set = std::collections::BTreeSet::new();
    free_dirs_value(v, &mut set);
    set.contains(d)
}
