//! Evaluation, eliminators, and restriction.
//!
//! Eliminators are "smart constructors": they reduce canonical forms and
//! wrap neutrals. Restriction (direction substitution) pushes a
//! substitution through a value and re-runs the same smart constructors,
//! so composition and evaluation commute with reindexing.

use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use crate::comp;
use crate::face::{self, apply_face, Face, FaceTruth};
use crate::interval::{Direction, DirSubst, Endpoint, IntervalTerm};
use crate::syntax::{FExpr, FExprKind, IExpr, IExprKind, SysEntry, Term, TermKind};
use crate::value::*;

// ---------------------------------------------------------------------
// Term evaluation

pub fn eval(env: &Env, t: &Term) -> EvalResult<Rc<Value>> {
    match &t.kind {
        TermKind::Var(x) => match env.lookup(x) {
            Some(EnvEntry::Val(v)) => Ok(v.clone()),
            Some(EnvEntry::Dir(_)) => eerr(format!("direction `{x}` used as a term")),
            None => eerr(format!("unbound variable `{x}`")),
        },
        TermKind::U => Ok(Value::U.rc()),
        TermKind::Pi(x, a, b) => Ok(Value::Pi(
            eval(env, a)?,
            Closure::Term { env: env.clone(), param: x.clone(), body: b.clone() },
        )
        .rc()),
        TermKind::Lam(x, body) => Ok(Value::Lam(Closure::Term {
            env: env.clone(),
            param: x.clone(),
            body: body.clone(),
        })
        .rc()),
        TermKind::App(f, a) => app(&eval(env, f)?, &eval(env, a)?),
        TermKind::Sigma(x, a, b) => Ok(Value::Sigma(
            eval(env, a)?,
            Closure::Term { env: env.clone(), param: x.clone(), body: b.clone() },
        )
        .rc()),
        TermKind::Pair(a, b) => Ok(Value::Pair(eval(env, a)?, eval(env, b)?).rc()),
        TermKind::Fst(p) => fst_v(&eval(env, p)?),
        TermKind::Snd(p) => snd_v(&eval(env, p)?),
        TermKind::Nat => Ok(Value::Nat.rc()),
        TermKind::Zero => Ok(Value::Zero.rc()),
        TermKind::Suc(n) => Ok(Value::Suc(eval(env, n)?).rc()),
        TermKind::NatRec(p, z, s, n) => natrec_v(
            &eval(env, p)?,
            &eval(env, z)?,
            &eval(env, s)?,
            &eval(env, n)?,
        ),
        TermKind::Sum(a, b) => Ok(Value::Sum(eval(env, a)?, eval(env, b)?).rc()),
        TermKind::Inl(a) => Ok(Value::Inl(eval(env, a)?).rc()),
        TermKind::Inr(b) => Ok(Value::Inr(eval(env, b)?).rc()),
        TermKind::Case(p, l, r, s) => case_v(
            &eval(env, p)?,
            &eval(env, l)?,
            &eval(env, r)?,
            &eval(env, s)?,
        ),
        TermKind::Path(a, x, y) => Ok(Value::Path(
            eval(env, a)?,
            eval(env, x)?,
            eval(env, y)?,
        )
        .rc()),
        TermKind::PLam(i, body) => {
            let d = Direction::fresh(i);
            let env2 = env.bind_dir(i.clone(), IntervalTerm::Dir(d.clone()));
            Ok(Value::PLam(d, eval(&env2, body)?).rc())
        }
        TermKind::PApp(p, r) => papp(&eval(env, p)?, &ieval(env, r)?),
        TermKind::Id(a, x, y) => {
            Ok(Value::Id(eval(env, a)?, eval(env, x)?, eval(env, y)?).rc())
        }
        TermKind::IdPair(p, phi) => {
            Ok(Value::IdPair(eval(env, p)?, feval(env, phi)?).rc())
        }
        TermKind::Refl(a) => {
            let v = eval(env, a)?;
            let d = Direction::fresh("_");
            Ok(Value::IdPair(Value::PLam(d, v).rc(), Face::Top).rc())
        }
        TermKind::IdJ(motive, base, target) => idj_v(
            &eval(env, motive)?,
            &eval(env, base)?,
            &eval(env, target)?,
        ),
        TermKind::Comp { e, dir, line, sys, cap } => {
            let d = Direction::fresh(dir);
            let env_i = env.bind_dir(dir.clone(), IntervalTerm::Dir(d.clone()));
            let pb = CompProblem {
                e: *e,
                dir: d.clone(),
                line: eval(&env_i, line)?,
                sys: eval_system(env, sys, &d)?,
                cap: eval(env, cap)?,
            };
            comp::compose(&pb)
        }
        TermKind::Fill { e, dir, line, sys, cap, at } => {
            let d = Direction::fresh(dir);
            let env_i = env.bind_dir(dir.clone(), IntervalTerm::Dir(d.clone()));
            let pb = CompProblem {
                e: *e,
                dir: d.clone(),
                line: eval(&env_i, line)?,
                sys: eval_system(env, sys, &d)?,
                cap: eval(env, cap)?,
            };
            comp::fill_at(&pb, &ieval(env, at)?)
        }
        TermKind::Glue(b, entries) => {
            let base = eval(env, b)?;
            let mut parts = Vec::new();
            for g in entries {
                let phi = feval(env, &g.face)?;
                if phi.is_bottom() {
                    continue;
                }
                parts.push((
                    phi,
                    GluePart {
                        ty: eval(env, &g.ty)?,
                        fun: eval(env, &g.fun)?,
                        equiv: eval(env, &g.equiv)?,
                    },
                ));
            }
            Ok(glue_eval(base, parts))
        }
        TermKind::GlueElem(sys, b) => {
            let base = eval(env, b)?;
            let mut parts = Vec::new();
            for entry in sys {
                let phi = feval(env, &entry.face)?;
                if phi.is_bottom() {
                    continue;
                }
                parts.push((phi, eval(env, &entry.body)?));
            }
            Ok(glue_intro(parts, base))
        }
        TermKind::Unglue(g) => {
            let v = eval(env, g)?;
            match &*v {
                Value::GlueElem { base, .. } => Ok(base.clone()),
                Value::Neutral(n) => {
                    let ty = infer_neutral_type(n)?;
                    unglue_at(&ty, &v)
                }
                _ => eerr("unglue applied outside a glue type"),
            }
        }
    }
}

/// Evaluate tube entries: faces in the ambient environment, branches
/// under the bound direction. Bottom faces are dropped.
pub fn eval_system(
    env: &Env,
    sys: &[SysEntry],
    dir: &Direction,
) -> EvalResult<Vec<(Face, Rc<Value>)>> {
    let mut out = Vec::new();
    for entry in sys {
        let phi = feval(env, &entry.face)?;
        if phi.is_bottom() {
            continue;
        }
        let branch_env = match &entry.dir {
            Some(j) => env.bind_dir(j.clone(), IntervalTerm::Dir(dir.clone())),
            None => env.clone(),
        };
        out.push((phi, eval(&branch_env, &entry.body)?));
    }
    Ok(out)
}

pub fn ieval(env: &Env, r: &IExpr) -> EvalResult<IntervalTerm> {
    match &r.kind {
        IExprKind::Zero => Ok(IntervalTerm::Zero),
        IExprKind::One => Ok(IntervalTerm::One),
        IExprKind::Var(x) => match env.lookup(x) {
            Some(EnvEntry::Dir(t)) => Ok(t.clone()),
            Some(EnvEntry::Val(_)) => eerr(format!("`{x}` is a term, not a direction")),
            None => eerr(format!("unbound direction `{x}`")),
        },
        IExprKind::Neg(a) => Ok(IntervalTerm::neg(ieval(env, a)?)),
        IExprKind::Meet(a, b) => Ok(IntervalTerm::meet(ieval(env, a)?, ieval(env, b)?)),
        IExprKind::Join(a, b) => Ok(IntervalTerm::join(ieval(env, a)?, ieval(env, b)?)),
    }
}

pub fn feval(env: &Env, f: &FExpr) -> EvalResult<Face> {
    match &f.kind {
        FExprKind::Eq(r, e) => Ok(face::face_eq(&ieval(env, r)?, *e)),
        FExprKind::And(a, b) => Ok(face::f_and(&feval(env, a)?, &feval(env, b)?)),
        FExprKind::Or(a, b) => Ok(face::f_or(&feval(env, a)?, &feval(env, b)?)),
        FExprKind::Forall(x, body) => {
            let d = Direction::fresh(x);
            let env2 = env.bind_dir(x.clone(), IntervalTerm::Dir(d.clone()));
            Ok(face::forall_dir(&d, &feval(&env2, body)?))
        }
    }
}

// ---------------------------------------------------------------------
// Eliminators

pub fn app(f: &Rc<Value>, a: &Rc<Value>) -> EvalResult<Rc<Value>> {
    match &**f {
        Value::Lam(clo) => apply_closure(clo, a),
        Value::Neutral(n) => Ok(Value::neutral(Neutral::App(n.clone(), a.clone()))),
        _ => eerr(format!("cannot apply a {}", f.head_name())),
    }
}

pub fn apply_closure(clo: &Closure, a: &Rc<Value>) -> EvalResult<Rc<Value>> {
    match clo {
        Closure::Term { env, param, body } => {
            eval(&env.bind_val(param.clone(), a.clone()), body)
        }
        Closure::PiComp(pb) => comp::pi_comp_apply(pb, a),
        Closure::Const(v) => Ok(v.clone()),
    }
}

pub fn fst_v(p: &Rc<Value>) -> EvalResult<Rc<Value>> {
    match &**p {
        Value::Pair(a, _) => Ok(a.clone()),
        Value::Neutral(n) => Ok(Value::neutral(Neutral::Fst(n.clone()))),
        _ => eerr(format!("cannot project from a {}", p.head_name())),
    }
}

pub fn snd_v(p: &Rc<Value>) -> EvalResult<Rc<Value>> {
    match &**p {
        Value::Pair(_, b) => Ok(b.clone()),
        Value::Neutral(n) => Ok(Value::neutral(Neutral::Snd(n.clone()))),
        _ => eerr(format!("cannot project from a {}", p.head_name())),
    }
}

pub fn natrec_v(
    motive: &Rc<Value>,
    z: &Rc<Value>,
    s: &Rc<Value>,
    n: &Rc<Value>,
) -> EvalResult<Rc<Value>> {
    match &**n {
        Value::Zero => Ok(z.clone()),
        Value::Suc(m) => {
            let ih = natrec_v(motive, z, s, m)?;
            app(&app(s, m)?, &ih)
        }
        Value::Neutral(ne) => Ok(Value::neutral(Neutral::NatRec {
            motive: motive.clone(),
            z: z.clone(),
            s: s.clone(),
            scrut: ne.clone(),
        })),
        _ => eerr(format!("natrec applied to a {}", n.head_name())),
    }
}

pub fn case_v(
    motive: &Rc<Value>,
    l: &Rc<Value>,
    r: &Rc<Value>,
    s: &Rc<Value>,
) -> EvalResult<Rc<Value>> {
    match &**s {
        Value::Inl(a) => app(l, a),
        Value::Inr(b) => app(r, b),
        Value::Neutral(ne) => Ok(Value::neutral(Neutral::Case {
            motive: motive.clone(),
            l: l.clone(),
            r: r.clone(),
            scrut: ne.clone(),
        })),
        _ => eerr(format!("case applied to a {}", s.head_name())),
    }
}

pub fn papp(p: &Rc<Value>, r: &IntervalTerm) -> EvalResult<Rc<Value>> {
    match &**p {
        Value::PLam(d, body) => restrict(body, &DirSubst::single(d.clone(), r.clone())),
        Value::Neutral(n) => {
            let dnf = crate::interval::normalize(r);
            if dnf.is_bottom() || dnf.is_top() {
                let ty = infer_neutral_type(n)?;
                if let Value::Path(_, a0, a1) = &*ty {
                    return Ok(if dnf.is_bottom() { a0.clone() } else { a1.clone() });
                }
            }
            Ok(Value::neutral(Neutral::PApp(n.clone(), r.clone())))
        }
        _ => eerr(format!("cannot apply a {} to an interval", p.head_name())),
    }
}

/// Identity elimination. The target must be an identity pair or neutral.
pub fn idj_v(
    motive: &Rc<Value>,
    base: &Rc<Value>,
    target: &Rc<Value>,
) -> EvalResult<Rc<Value>> {
    match &**target {
        Value::IdPair(p, phi) => {
            // Move the target along the connection square; on the flag
            // (and at the starting face) the line is constantly the
            // reflexivity pair, so the tube pins the result to `base`.
            let i = Direction::fresh("i");
            let j = Direction::fresh("j");
            let p_i = papp(p, &IntervalTerm::Dir(i.clone()))?;
            let p_conn = papp(
                p,
                &IntervalTerm::meet(IntervalTerm::Dir(i.clone()), IntervalTerm::Dir(j.clone())),
            )?;
            let flag_line = face::f_or(
                phi,
                &face::face_eq(&IntervalTerm::Dir(i.clone()), Endpoint::Zero),
            );
            let q_i = Value::IdPair(Value::PLam(j, p_conn).rc(), flag_line).rc();
            let line = app(&app(motive, &p_i)?, &q_i)?;
            let pb = CompProblem {
                e: Endpoint::Zero,
                dir: i,
                line,
                sys: vec![(phi.clone(), base.clone())],
                cap: base.clone(),
            };
            comp::compose(&pb)
        }
        Value::Neutral(n) => Ok(Value::neutral(Neutral::IdJ {
            motive: motive.clone(),
            base: base.clone(),
            scrut: n.clone(),
        })),
        _ => eerr(format!("idJ target is a {}", target.head_name())),
    }
}

/// Form a glue type; collapses strictly to the partial type when its
/// face is true.
pub fn glue_eval(base: Rc<Value>, parts: Vec<(Face, GluePart)>) -> Rc<Value> {
    let parts: Vec<(Face, GluePart)> =
        parts.into_iter().filter(|(f, _)| !f.is_bottom()).collect();
    for (f, p) in &parts {
        if f.is_top() {
            return p.ty.clone();
        }
    }
    Value::Glue { base, parts }.rc()
}

/// Form a glue element; collapses to the partial element when its face
/// is true.
pub fn glue_intro(parts: Vec<(Face, Rc<Value>)>, base: Rc<Value>) -> Rc<Value> {
    let parts: Vec<(Face, Rc<Value>)> =
        parts.into_iter().filter(|(f, _)| !f.is_bottom()).collect();
    for (f, v) in &parts {
        if f.is_top() {
            return v.clone();
        }
    }
    Value::GlueElem { parts, base }.rc()
}

/// Project the total component out of a glue element, given its glue
/// type. Under a true face this is the partial function applied to the
/// collapsed element.
pub fn unglue_at(glue_ty: &Rc<Value>, v: &Rc<Value>) -> EvalResult<Rc<Value>> {
    match &**glue_ty {
        Value::Glue { parts, .. } => {
            for (f, p) in parts {
                if f.is_top() {
                    return app(&p.fun, v);
                }
            }
            match &**v {
                Value::GlueElem { base, .. } => Ok(base.clone()),
                Value::Neutral(n) => Ok(Value::neutral(Neutral::Unglue {
                    scrut: n.clone(),
                    glue_ty: glue_ty.clone(),
                })),
                _ => eerr(format!("unglue of a {}", v.head_name())),
            }
        }
        _ => eerr(format!("unglue at non-glue type {}", glue_ty.head_name())),
    }
}

// ---------------------------------------------------------------------
// Restriction

pub fn restrict(v: &Rc<Value>, sigma: &DirSubst) -> EvalResult<Rc<Value>> {
    if sigma.is_empty() {
        return Ok(v.clone());
    }
    match &**v {
        Value::U | Value::Nat | Value::Zero => Ok(v.clone()),
        Value::Pi(a, c) => Ok(Value::Pi(restrict(a, sigma)?, restrict_closure(c, sigma)?).rc()),
        Value::Lam(c) => Ok(Value::Lam(restrict_closure(c, sigma)?).rc()),
        Value::Sigma(a, c) => {
            Ok(Value::Sigma(restrict(a, sigma)?, restrict_closure(c, sigma)?).rc())
        }
        Value::Pair(a, b) => Ok(Value::Pair(restrict(a, sigma)?, restrict(b, sigma)?).rc()),
        Value::Suc(n) => Ok(Value::Suc(restrict(n, sigma)?).rc()),
        Value::Sum(a, b) => Ok(Value::Sum(restrict(a, sigma)?, restrict(b, sigma)?).rc()),
        Value::Inl(a) => Ok(Value::Inl(restrict(a, sigma)?).rc()),
        Value::Inr(b) => Ok(Value::Inr(restrict(b, sigma)?).rc()),
        Value::Path(a, x, y) => Ok(Value::Path(
            restrict(a, sigma)?,
            restrict(x, sigma)?,
            restrict(y, sigma)?,
        )
        .rc()),
        Value::PLam(d, body) => {
            // Bound directions are globally fresh, so sigma can touch
            // neither `d` nor anything that mentions it.
            Ok(Value::PLam(d.clone(), restrict(body, sigma)?).rc())
        }
        Value::Id(a, x, y) => Ok(Value::Id(
            restrict(a, sigma)?,
            restrict(x, sigma)?,
            restrict(y, sigma)?,
        )
        .rc()),
        Value::IdPair(p, phi) => {
            Ok(Value::IdPair(restrict(p, sigma)?, apply_face(phi, sigma)).rc())
        }
        Value::Glue { base, parts } => {
            let base = restrict(base, sigma)?;
            let mut out = Vec::new();
            for (f, p) in parts {
                let f = apply_face(f, sigma);
                if f.is_bottom() {
                    continue;
                }
                out.push((
                    f,
                    GluePart {
                        ty: restrict(&p.ty, sigma)?,
                        fun: restrict(&p.fun, sigma)?,
                        equiv: restrict(&p.equiv, sigma)?,
                    },
                ));
            }
            Ok(glue_eval(base, out))
        }
        Value::GlueElem { parts, base } => {
            let base = restrict(base, sigma)?;
            let mut out = Vec::new();
            for (f, v) in parts {
                let f = apply_face(f, sigma);
                if f.is_bottom() {
                    continue;
                }
                out.push((f, restrict(v, sigma)?));
            }
            Ok(glue_intro(out, base))
        }
        Value::Neutral(n) => restrict_neutral(n, sigma),
    }
}

pub fn restrict_closure(c: &Closure, sigma: &DirSubst) -> EvalResult<Closure> {
    match c {
        Closure::Term { env, param, body } => Ok(Closure::Term {
            env: restrict_env(env, sigma)?,
            param: param.clone(),
            body: body.clone(),
        }),
        Closure::PiComp(pb) => Ok(Closure::PiComp(Rc::new(restrict_problem(pb, sigma)?))),
        Closure::Const(v) => Ok(Closure::Const(restrict(v, sigma)?)),
    }
}

pub fn restrict_env(env: &Env, sigma: &DirSubst) -> EvalResult<Env> {
    let (open, tail) = env.split_open();
    let mut out = tail;
    for (name, entry) in open.into_iter().rev() {
        let entry = match entry {
            EnvEntry::Val(v) => EnvEntry::Val(restrict(&v, sigma)?),
            EnvEntry::Dir(t) => EnvEntry::Dir(sigma.apply(&t)),
        };
        out = out.bind(name, entry);
    }
    Ok(out)
}

fn restrict_neutral(n: &Rc<Neutral>, sigma: &DirSubst) -> EvalResult<Rc<Value>> {
    match &**n {
        Neutral::Var { name, ty } => Ok(Value::var(name.clone(), restrict(ty, sigma)?)),
        Neutral::App(f, a) => {
            let f = restrict_neutral(f, sigma)?;
            app(&f, &restrict(a, sigma)?)
        }
        Neutral::Fst(p) => fst_v(&restrict_neutral(p, sigma)?),
        Neutral::Snd(p) => snd_v(&restrict_neutral(p, sigma)?),
        Neutral::NatRec { motive, z, s, scrut } => natrec_v(
            &restrict(motive, sigma)?,
            &restrict(z, sigma)?,
            &restrict(s, sigma)?,
            &restrict_neutral(scrut, sigma)?,
        ),
        Neutral::Case { motive, l, r, scrut } => case_v(
            &restrict(motive, sigma)?,
            &restrict(l, sigma)?,
            &restrict(r, sigma)?,
            &restrict_neutral(scrut, sigma)?,
        ),
        Neutral::PApp(p, r) => papp(&restrict_neutral(p, sigma)?, &sigma.apply(r)),
        Neutral::IdJ { motive, base, scrut } => idj_v(
            &restrict(motive, sigma)?,
            &restrict(base, sigma)?,
            &restrict_neutral(scrut, sigma)?,
        ),
        Neutral::Unglue { scrut, glue_ty } => {
            let ty = restrict(glue_ty, sigma)?;
            let g = restrict_neutral(scrut, sigma)?;
            match &*ty {
                Value::Glue { .. } => unglue_at(&ty, &g),
                // The glue type collapsed to its partial type: the
                // element is already there, apply the partial function.
                _ => {
                    let orig = match &**glue_ty {
                        Value::Glue { parts, .. } => parts.clone(),
                        _ => return eerr("unglue neutral with non-glue annotation"),
                    };
                    for (f, p) in &orig {
                        if apply_face(f, sigma).is_top() {
                            return app(&restrict(&p.fun, sigma)?, &g);
                        }
                    }
                    eerr("restricted glue type collapsed without a true face")
                }
            }
        }
        Neutral::Comp(pb) => comp::compose(&restrict_problem(pb, sigma)?),
    }
}

pub fn restrict_problem(pb: &CompProblem, sigma: &DirSubst) -> EvalResult<CompProblem> {
    let mut sys = Vec::new();
    for (f, v) in &pb.sys {
        let f = apply_face(f, sigma);
        if f.is_bottom() {
            continue;
        }
        sys.push((f, restrict(v, sigma)?));
    }
    Ok(CompProblem {
        e: pb.e,
        dir: pb.dir.clone(),
        line: restrict(&pb.line, sigma)?,
        sys,
        cap: restrict(&pb.cap, sigma)?,
    })
}

// ---------------------------------------------------------------------
// Type recovery for neutrals

pub fn infer_neutral_type(n: &Rc<Neutral>) -> EvalResult<Rc<Value>> {
    match &**n {
        Neutral::Var { ty, .. } => Ok(ty.clone()),
        Neutral::App(f, a) => match &*infer_neutral_type(f)? {
            Value::Pi(_, cod) => apply_closure(cod, a),
            other => eerr(format!("application head has type {}", other.head_name())),
        },
        Neutral::Fst(p) => match &*infer_neutral_type(p)? {
            Value::Sigma(dom, _) => Ok(dom.clone()),
            other => eerr(format!("projection from type {}", other.head_name())),
        },
        Neutral::Snd(p) => match &*infer_neutral_type(p)? {
            Value::Sigma(_, cod) => {
                let fst = Value::neutral(Neutral::Fst(p.clone()));
                apply_closure(cod, &fst)
            }
            other => eerr(format!("projection from type {}", other.head_name())),
        },
        Neutral::PApp(p, _) => match &*infer_neutral_type(p)? {
            Value::Path(a, _, _) => Ok(a.clone()),
            other => eerr(format!("path application at type {}", other.head_name())),
        },
        Neutral::NatRec { motive, scrut, .. } => {
            app(motive, &Rc::new(Value::Neutral(scrut.clone())))
        }
        Neutral::Case { motive, scrut, .. } => {
            app(motive, &Rc::new(Value::Neutral(scrut.clone())))
        }
        Neutral::IdJ { motive, scrut, .. } => match &*infer_neutral_type(scrut)? {
            Value::Id(_, _, a1) => app(
                &app(motive, a1)?,
                &Rc::new(Value::Neutral(scrut.clone())),
            ),
            other => eerr(format!("idJ target has type {}", other.head_name())),
        },
        Neutral::Unglue { glue_ty, .. } => match &**glue_ty {
            Value::Glue { base, .. } => Ok(base.clone()),
            other => eerr(format!("unglue at type {}", other.head_name())),
        },
        Neutral::Comp(pb) => restrict(
            &pb.line,
            &DirSubst::single(pb.dir.clone(), pb.e.flip().as_interval()),
        ),
    }
}

// ---------------------------------------------------------------------
// Internal type snippets

thread_local! {
    static SNIPPET_CACHE: RefCell<HashMap<usize, Term>> = RefCell::new(HashMap::new());
}

/// Evaluate a small internal type expression with the given bindings.
pub fn type_snippet(src: &'static str, bindings: &[(&str, Rc<Value>)]) -> EvalResult<Rc<Value>> {
    let term = SNIPPET_CACHE.with(|c| {
        let mut cache = c.borrow_mut();
        cache
            .entry(src.as_ptr() as usize)
            .or_insert_with(|| {
                crate::parse::parse_term(src).expect("internal type expression parses")
            })
            .clone()
    });
    let mut env = Env::new();
    for (name, v) in bindings {
        env = env.bind_val((*name).into(), v.clone());
    }
    eval(&env, &term)
}

/// The type of equivalence structures carried by glue components:
/// for every point of the base, the fibre is contractible.
pub fn equiv_type(a: &Rc<Value>, b: &Rc<Value>, f: &Rc<Value>) -> EvalResult<Rc<Value>> {
    type_snippet(
        "(b : B) -> (c : (x : A) * Path B (f x) b) \
         * ((c' : (x : A) * Path B (f x) b) -> Path ((x : A) * Path B (f x) b) c c')",
        &[("A", a.clone()), ("B", b.clone()), ("f", f.clone())],
    )
}

// Convenience used by tests and the checker.
pub fn truth_of(phi: &Face) -> FaceTruth {
    face::truth(phi)
}
