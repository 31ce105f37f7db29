//! Bidirectional type checking and conversion over values.
//!
//! Checking under a face proceeds by restricting the context along each
//! conjunct of the face; conversion under a face restricts both sides the
//! same way. Equality of functions and pairs is extensional up to eta,
//! and path abstractions are compared at a generic direction.

use std::fmt;
use std::rc::Rc;

use crate::eval::{
    self, app, apply_closure, equiv_type, eval, feval, fst_v, ieval, papp, restrict,
    snd_v, type_snippet, unglue_at,
};
use crate::face::{self, f_and, f_or, Face, FaceTruth};
use crate::interval::{iequal, Direction, DirSubst, Endpoint, IntervalTerm, Name};
use crate::readback::{show_type, show_value};
use crate::syntax::{Def, FExpr, Span, SysEntry, Term, TermKind};
use crate::value::*;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ErrorKind {
    Mismatch,
    Boundary,
    IncompatibleSystem,
    Scope,
    NotAType,
    Stuck,
}

impl fmt::Display for ErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ErrorKind::Mismatch => "mismatch",
            ErrorKind::Boundary => "boundary",
            ErrorKind::IncompatibleSystem => "incompatibleSystem",
            ErrorKind::Scope => "scope",
            ErrorKind::NotAType => "notAType",
            ErrorKind::Stuck => "stuck",
        };
        write!(f, "{s}")
    }
}

#[derive(Clone, Debug)]
pub struct TypeError {
    pub kind: ErrorKind,
    pub span: Span,
    pub msg: String,
    /// Rendered forms of the two offending values, where applicable.
    pub offending: Option<(String, String)>,
}

impl TypeError {
    fn new(kind: ErrorKind, span: Span, msg: impl Into<String>) -> TypeError {
        TypeError { kind, span, msg: msg.into(), offending: None }
    }

    fn with_values(mut self, expected: String, found: String) -> TypeError {
        self.offending = Some((expected, found));
        self
    }
}

impl fmt::Display for TypeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.kind, self.msg)?;
        if let Some((want, got)) = &self.offending {
            write!(f, " (expected {want}, found {got})")?;
        }
        Ok(())
    }
}

impl std::error::Error for TypeError {}

pub type CheckResult<T> = Result<T, TypeError>;

fn stuck(span: Span, e: EvalError) -> TypeError {
    TypeError::new(ErrorKind::Stuck, span, e.0)
}

// ---------------------------------------------------------------------
// Global definitions

#[derive(Clone)]
pub struct DefEntry {
    pub name: Name,
    pub ty: Rc<Value>,
    pub val: Rc<Value>,
    pub doc: String,
}

/// The append-only global definition environment.
#[derive(Clone, Default)]
pub struct Defs {
    entries: Vec<DefEntry>,
    env: Env,
}

impl Defs {
    pub fn new() -> Defs {
        Defs::default()
    }

    pub fn env(&self) -> &Env {
        &self.env
    }

    pub fn entries(&self) -> &[DefEntry] {
        &self.entries
    }

    pub fn lookup(&self, name: &str) -> Option<&DefEntry> {
        self.entries.iter().find(|d| &*d.name == name)
    }

    fn add(&mut self, entry: DefEntry) {
        self.env = self.env.bind_closed(entry.name.clone(), entry.val.clone());
        self.entries.push(entry);
    }
}

/// Check a parsed file against (and extending) the global environment.
pub fn check_defs(defs: &mut Defs, file: &[Def]) -> CheckResult<()> {
    for def in file {
        if defs.lookup(&def.name).is_some() {
            return Err(TypeError::new(
                ErrorKind::Scope,
                def.span,
                format!("duplicate top-level name `{}`", def.name),
            ));
        }
        let ctx = Ctx::from_defs(defs);
        check(&ctx, &def.ty, &Value::U.rc())?;
        let ty = ctx.eval(&def.ty)?;
        check(&ctx, &def.body, &ty)?;
        let val = ctx.eval(&def.body)?;
        defs.add(DefEntry {
            name: def.name.clone(),
            ty,
            val,
            doc: def.doc.clone(),
        });
    }
    Ok(())
}

// ---------------------------------------------------------------------
// Contexts

#[derive(Clone, Debug)]
enum ScopeEntry {
    Var(Name, Rc<Value>),
    Dir(Name, Direction),
}

/// Typing context: evaluation environment, scoped variable types and
/// directions, the accumulated face restriction, and the types of the
/// global definitions in scope.
#[derive(Clone)]
pub struct Ctx {
    pub env: Env,
    scope: Vec<ScopeEntry>,
    pub restriction: Face,
    globals: Rc<Vec<(Name, Rc<Value>)>>,
}

impl Ctx {
    pub fn new(env: Env) -> Ctx {
        Ctx {
            env,
            scope: Vec::new(),
            restriction: Face::Top,
            globals: Rc::new(Vec::new()),
        }
    }

    /// Context over the global definition environment.
    pub fn from_defs(defs: &Defs) -> Ctx {
        Ctx {
            env: defs.env().clone(),
            scope: Vec::new(),
            restriction: Face::Top,
            globals: Rc::new(
                defs.entries()
                    .iter()
                    .map(|d| (d.name.clone(), d.ty.clone()))
                    .collect(),
            ),
        }
    }

    fn eval(&self, t: &Term) -> CheckResult<Rc<Value>> {
        eval(&self.env, t).map_err(|e| stuck(t.span, e))
    }

    fn bind_var(&self, name: &Name, ty: Rc<Value>) -> (Ctx, Rc<Value>) {
        let v = Value::fresh_var(name, ty.clone());
        let mut ctx = self.clone();
        ctx.env = ctx.env.bind_val(name.clone(), v.clone());
        ctx.scope.push(ScopeEntry::Var(name.clone(), ty));
        (ctx, v)
    }

    fn bind_dir(&self, name: &Name) -> (Ctx, Direction) {
        let d = Direction::fresh(name);
        let mut ctx = self.clone();
        ctx.env = ctx.env.bind_dir(name.clone(), IntervalTerm::Dir(d.clone()));
        ctx.scope.push(ScopeEntry::Dir(name.clone(), d.clone()));
        (ctx, d)
    }

    fn bind_dir_as(&self, name: &Name, d: &Direction) -> Ctx {
        let mut ctx = self.clone();
        ctx.env = ctx.env.bind_dir(name.clone(), IntervalTerm::Dir(d.clone()));
        ctx.scope.push(ScopeEntry::Dir(name.clone(), d.clone()));
        ctx
    }

    fn lookup_var(&self, name: &str) -> Option<Result<Rc<Value>, ()>> {
        for entry in self.scope.iter().rev() {
            match entry {
                ScopeEntry::Var(n, ty) if &**n == name => return Some(Ok(ty.clone())),
                ScopeEntry::Dir(n, _) if &**n == name => return Some(Err(())),
                _ => {}
            }
        }
        None
    }

    /// Restrict the whole context along a conjunct substitution and
    /// record the face.
    fn restrict(&self, face: &Face, sigma: &DirSubst) -> EvalResult<Ctx> {
        let env = eval::restrict_env(&self.env, sigma)?;
        let mut scope = Vec::new();
        for entry in &self.scope {
            scope.push(match entry {
                ScopeEntry::Var(n, ty) => ScopeEntry::Var(n.clone(), restrict(ty, sigma)?),
                ScopeEntry::Dir(n, d) => ScopeEntry::Dir(n.clone(), d.clone()),
            });
        }
        Ok(Ctx {
            env,
            scope,
            restriction: f_and(&self.restriction, face),
            globals: self.globals.clone(),
        })
    }
}

// ---------------------------------------------------------------------
// Conversion

/// Semantic equality of two values at a type.
pub fn convert(a: &Rc<Value>, b: &Rc<Value>, ty: &Rc<Value>) -> EvalResult<bool> {
    match &**ty {
        Value::Pi(dom, cod) => {
            let x = Value::fresh_var("x", dom.clone());
            let cod_x = apply_closure(cod, &x)?;
            convert(&app(a, &x)?, &app(b, &x)?, &cod_x)
        }
        Value::Sigma(dom, cod) => {
            let fa = fst_v(a)?;
            let fb = fst_v(b)?;
            if !convert(&fa, &fb, dom)? {
                return Ok(false);
            }
            let cod_fa = apply_closure(cod, &fa)?;
            convert(&snd_v(a)?, &snd_v(b)?, &cod_fa)
        }
        Value::Path(inner, _, _) => {
            let d = Direction::fresh("i");
            let it = IntervalTerm::Dir(d);
            convert(&papp(a, &it)?, &papp(b, &it)?, inner)
        }
        Value::Id(inner, a0, a1) => match (&**a, &**b) {
            (Value::IdPair(p, phi), Value::IdPair(q, psi)) => {
                if phi != psi {
                    return Ok(false);
                }
                let pty = Value::Path(inner.clone(), a0.clone(), a1.clone()).rc();
                convert(p, q, &pty)
            }
            (Value::Neutral(m), Value::Neutral(n)) => Ok(conv_neutral(m, n)?.is_some()),
            _ => Ok(false),
        },
        Value::Nat => match (&**a, &**b) {
            (Value::Zero, Value::Zero) => Ok(true),
            (Value::Suc(x), Value::Suc(y)) => convert(x, y, ty),
            (Value::Neutral(m), Value::Neutral(n)) => Ok(conv_neutral(m, n)?.is_some()),
            _ => Ok(false),
        },
        Value::Sum(l, r) => match (&**a, &**b) {
            (Value::Inl(x), Value::Inl(y)) => convert(x, y, l),
            (Value::Inr(x), Value::Inr(y)) => convert(x, y, r),
            (Value::Neutral(m), Value::Neutral(n)) => Ok(conv_neutral(m, n)?.is_some()),
            _ => Ok(false),
        },
        Value::U => convert_types(a, b),
        Value::Glue { base, parts } => {
            let ua = unglue_at(ty, a)?;
            let ub = unglue_at(ty, b)?;
            if !convert(&ua, &ub, base)? {
                return Ok(false);
            }
            for (f, part) in parts {
                for c in f.conjuncts() {
                    let sigma = c.as_subst();
                    let ac = restrict(a, &sigma)?;
                    let bc = restrict(b, &sigma)?;
                    let tyc = restrict(&part.ty, &sigma)?;
                    if !convert(&ac, &bc, &tyc)? {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        }
        Value::Neutral(_) => match (&**a, &**b) {
            (Value::Neutral(m), Value::Neutral(n)) => Ok(conv_neutral(m, n)?.is_some()),
            _ => Ok(false),
        },
        other => eerr(format!("conversion at non-type {}", other.head_name())),
    }
}

/// Semantic equality of type values.
pub fn convert_types(a: &Rc<Value>, b: &Rc<Value>) -> EvalResult<bool> {
    match (&**a, &**b) {
        (Value::U, Value::U) | (Value::Nat, Value::Nat) => Ok(true),
        (Value::Pi(d1, c1), Value::Pi(d2, c2)) | (Value::Sigma(d1, c1), Value::Sigma(d2, c2)) => {
            if !convert_types(d1, d2)? {
                return Ok(false);
            }
            let x = Value::fresh_var("x", d1.clone());
            convert_types(&apply_closure(c1, &x)?, &apply_closure(c2, &x)?)
        }
        (Value::Sum(l1, r1), Value::Sum(l2, r2)) => {
            Ok(convert_types(l1, l2)? && convert_types(r1, r2)?)
        }
        (Value::Path(t1, x1, y1), Value::Path(t2, x2, y2))
        | (Value::Id(t1, x1, y1), Value::Id(t2, x2, y2)) => {
            if !convert_types(t1, t2)? {
                return Ok(false);
            }
            Ok(convert(x1, x2, t1)? && convert(y1, y2, t1)?)
        }
        (Value::Glue { base: b1, parts: p1 }, Value::Glue { base: b2, parts: p2 }) => {
            if !convert_types(b1, b2)? {
                return Ok(false);
            }
            let ext1 = parts_extent(p1);
            let ext2 = parts_extent(p2);
            if ext1 != ext2 {
                return Ok(false);
            }
            for c in ext1.conjuncts() {
                let sigma = c.as_subst();
                let (ty1, f1, e1) = collapse_part(p1, &sigma)?;
                let (ty2, f2, e2) = collapse_part(p2, &sigma)?;
                if !convert_types(&ty1, &ty2)? {
                    return Ok(false);
                }
                let base_c = restrict(b1, &sigma)?;
                let fun_ty = type_snippet("A -> B", &[("A", ty1.clone()), ("B", base_c.clone())])?;
                if !convert(&f1, &f2, &fun_ty)? {
                    return Ok(false);
                }
                let eq_ty = equiv_type(&ty1, &base_c, &f1)?;
                if !convert(&e1, &e2, &eq_ty)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        (Value::Neutral(m), Value::Neutral(n)) => Ok(conv_neutral(m, n)?.is_some()),
        _ => Ok(false),
    }
}

fn parts_extent(parts: &[(Face, GluePart)]) -> Face {
    let mut f = Face::bottom();
    for (g, _) in parts {
        f = f_or(&f, g);
    }
    f
}

fn collapse_part(
    parts: &[(Face, GluePart)],
    sigma: &DirSubst,
) -> EvalResult<(Rc<Value>, Rc<Value>, Rc<Value>)> {
    for (f, p) in parts {
        if face::apply_face(f, sigma).is_top() {
            return Ok((
                restrict(&p.ty, sigma)?,
                restrict(&p.fun, sigma)?,
                restrict(&p.equiv, sigma)?,
            ));
        }
    }
    eerr("no glue component is total on the given conjunct")
}

fn refl_value(a: &Rc<Value>) -> Rc<Value> {
    Value::IdPair(
        Value::PLam(Direction::fresh("_"), a.clone()).rc(),
        Face::Top,
    )
    .rc()
}

/// Structural comparison of neutrals, returning their common type.
fn conv_neutral(m: &Rc<Neutral>, n: &Rc<Neutral>) -> EvalResult<Option<Rc<Value>>> {
    match (&**m, &**n) {
        (Neutral::Var { name: a, ty }, Neutral::Var { name: b, .. }) => {
            Ok(if a == b { Some(ty.clone()) } else { None })
        }
        (Neutral::App(f1, a1), Neutral::App(f2, a2)) => {
            match conv_neutral(f1, f2)? {
                Some(fty) => match &*fty {
                    Value::Pi(dom, cod) => {
                        if convert(a1, a2, dom)? {
                            Ok(Some(apply_closure(cod, a1)?))
                        } else {
                            Ok(None)
                        }
                    }
                    _ => Ok(None),
                },
                None => Ok(None),
            }
        }
        (Neutral::Fst(p1), Neutral::Fst(p2)) => match conv_neutral(p1, p2)? {
            Some(pty) => match &*pty {
                Value::Sigma(dom, _) => Ok(Some(dom.clone())),
                _ => Ok(None),
            },
            None => Ok(None),
        },
        (Neutral::Snd(p1), Neutral::Snd(p2)) => match conv_neutral(p1, p2)? {
            Some(pty) => match &*pty {
                Value::Sigma(_, cod) => {
                    let fst = Value::neutral(Neutral::Fst(p1.clone()));
                    Ok(Some(apply_closure(cod, &fst)?))
                }
                _ => Ok(None),
            },
            None => Ok(None),
        },
        (Neutral::PApp(p1, r1), Neutral::PApp(p2, r2)) => match conv_neutral(p1, p2)? {
            Some(pty) => match &*pty {
                Value::Path(inner, _, _) => {
                    Ok(if iequal(r1, r2) { Some(inner.clone()) } else { None })
                }
                _ => Ok(None),
            },
            None => Ok(None),
        },
        (
            Neutral::NatRec { motive: m1, z: z1, s: s1, scrut: n1 },
            Neutral::NatRec { motive: m2, z: z2, s: s2, scrut: n2 },
        ) => {
            if conv_neutral(n1, n2)?.is_none() {
                return Ok(None);
            }
            let mty = type_snippet("Nat -> U", &[])?;
            if !convert(m1, m2, &mty)? {
                return Ok(None);
            }
            let zty = app(m1, &Value::Zero.rc())?;
            if !convert(z1, z2, &zty)? {
                return Ok(None);
            }
            let sty = type_snippet("(n : Nat) -> P n -> P (suc n)", &[("P", m1.clone())])?;
            if !convert(s1, s2, &sty)? {
                return Ok(None);
            }
            Ok(Some(app(m1, &Rc::new(Value::Neutral(n1.clone())))?))
        }
        (
            Neutral::Case { motive: m1, l: l1, r: r1, scrut: n1 },
            Neutral::Case { motive: m2, l: l2, r: r2, scrut: n2 },
        ) => {
            let sty = match conv_neutral(n1, n2)? {
                Some(t) => t,
                None => return Ok(None),
            };
            let (a, b) = match &*sty {
                Value::Sum(a, b) => (a.clone(), b.clone()),
                _ => return Ok(None),
            };
            let mty = type_snippet("S -> U", &[("S", sty.clone())])?;
            if !convert(m1, m2, &mty)? {
                return Ok(None);
            }
            let lty = type_snippet("(a : A) -> P (inl a)", &[("A", a), ("P", m1.clone())])?;
            if !convert(l1, l2, &lty)? {
                return Ok(None);
            }
            let rty = type_snippet("(b : B) -> P (inr b)", &[("B", b), ("P", m1.clone())])?;
            if !convert(r1, r2, &rty)? {
                return Ok(None);
            }
            Ok(Some(app(m1, &Rc::new(Value::Neutral(n1.clone())))?))
        }
        (
            Neutral::IdJ { motive: m1, base: b1, scrut: n1 },
            Neutral::IdJ { motive: m2, base: b2, scrut: n2 },
        ) => {
            let sty = match conv_neutral(n1, n2)? {
                Some(t) => t,
                None => return Ok(None),
            };
            let (a, a0, a1) = match &*sty {
                Value::Id(a, a0, a1) => (a.clone(), a0.clone(), a1.clone()),
                _ => return Ok(None),
            };
            let mty = type_snippet(
                "(x : A) -> Id A a x -> U",
                &[("A", a), ("a", a0.clone())],
            )?;
            if !convert(m1, m2, &mty)? {
                return Ok(None);
            }
            let bty = app(&app(m1, &a0)?, &refl_value(&a0))?;
            if !convert(b1, b2, &bty)? {
                return Ok(None);
            }
            Ok(Some(app(
                &app(m1, &a1)?,
                &Rc::new(Value::Neutral(n1.clone())),
            )?))
        }
        (Neutral::Unglue { scrut: g1, .. }, Neutral::Unglue { scrut: g2, .. }) => {
            match conv_neutral(g1, g2)? {
                Some(gty) => match &*gty {
                    Value::Glue { base, .. } => Ok(Some(base.clone())),
                    _ => Ok(None),
                },
                None => Ok(None),
            }
        }
        (Neutral::Comp(p1), Neutral::Comp(p2)) => conv_comp(p1, p2),
        _ => Ok(None),
    }
}

fn conv_comp(p1: &Rc<CompProblem>, p2: &Rc<CompProblem>) -> EvalResult<Option<Rc<Value>>> {
    if p1.e != p2.e {
        return Ok(None);
    }
    // Rename the second problem's direction to the first's.
    let rename = DirSubst::single(p2.dir.clone(), IntervalTerm::Dir(p1.dir.clone()));
    let line2 = restrict(&p2.line, &rename)?;
    if !convert_types(&p1.line, &line2)? {
        return Ok(None);
    }
    let ext1 = system_extent(&p1.sys);
    let ext2 = system_extent(&p2.sys);
    if ext1 != ext2 {
        return Ok(None);
    }
    for c in ext1.conjuncts() {
        let sigma = c.as_subst();
        let b1 = system_branch_on(&p1.sys, &sigma)?;
        let b2 = system_branch_on(&p2.sys, &sigma)?;
        let (b1, b2) = match (b1, b2) {
            (Some(x), Some(y)) => (x, restrict(&restrict(&y, &rename)?, &sigma)?),
            _ => return Ok(None),
        };
        let line_c = restrict(&p1.line, &sigma)?;
        if !convert(&b1, &b2, &line_c)? {
            return Ok(None);
        }
    }
    let at_e = restrict(&p1.line, &DirSubst::single(p1.dir.clone(), p1.e.as_interval()))?;
    if !convert(&p1.cap, &p2.cap, &at_e)? {
        return Ok(None);
    }
    Ok(Some(restrict(
        &p1.line,
        &DirSubst::single(p1.dir.clone(), p1.e.flip().as_interval()),
    )?))
}

fn system_extent(sys: &[(Face, Rc<Value>)]) -> Face {
    let mut f = Face::bottom();
    for (g, _) in sys {
        f = f_or(&f, g);
    }
    f
}

fn system_branch_on(
    sys: &[(Face, Rc<Value>)],
    sigma: &DirSubst,
) -> EvalResult<Option<Rc<Value>>> {
    for (f, v) in sys {
        if face::apply_face(f, sigma).is_top() {
            return Ok(Some(restrict(v, sigma)?));
        }
    }
    Ok(None)
}

/// Conversion under a face: both sides are restricted along every
/// conjunct. Vacuously true on the bottom face.
pub fn convert_on_face(
    phi: &Face,
    a: &Rc<Value>,
    b: &Rc<Value>,
    ty: &Rc<Value>,
) -> EvalResult<bool> {
    for c in phi.conjuncts() {
        let sigma = c.as_subst();
        let ac = restrict(a, &sigma)?;
        let bc = restrict(b, &sigma)?;
        let tyc = restrict(ty, &sigma)?;
        if !convert(&ac, &bc, &tyc)? {
            return Ok(false);
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------------
// Checking and inference

pub fn check(ctx: &Ctx, t: &Term, ty: &Rc<Value>) -> CheckResult<()> {
    match (&t.kind, &**ty) {
        (TermKind::Lam(x, body), Value::Pi(dom, cod)) => {
            let (ctx2, v) = ctx.bind_var(x, dom.clone());
            let cod_v = apply_closure(cod, &v).map_err(|e| stuck(t.span, e))?;
            check(&ctx2, body, &cod_v)
        }
        (TermKind::Lam(_, _), _) => Err(TypeError::new(
            ErrorKind::Mismatch,
            t.span,
            format!("function literal checked against {}", show_type(ty)),
        )),
        (TermKind::Pair(a, b), Value::Sigma(dom, cod)) => {
            check(ctx, a, dom)?;
            let va = ctx.eval(a)?;
            let cod_va = apply_closure(cod, &va).map_err(|e| stuck(t.span, e))?;
            check(ctx, b, &cod_va)
        }
        (TermKind::Pair(_, _), _) => Err(TypeError::new(
            ErrorKind::Mismatch,
            t.span,
            format!("pair checked against {}", show_type(ty)),
        )),
        (TermKind::PLam(i, body), Value::Path(inner, a0, a1)) => {
            let (ctx2, d) = ctx.bind_dir(i);
            check(&ctx2, body, inner)?;
            let v = ctx2.eval(body)?;
            for (ep, expected) in [(Endpoint::Zero, a0), (Endpoint::One, a1)] {
                let sigma = DirSubst::single(d.clone(), ep.as_interval());
                let at_ep = restrict(&v, &sigma).map_err(|e| stuck(t.span, e))?;
                let ok = convert(&at_ep, expected, inner).map_err(|e| stuck(t.span, e))?;
                if !ok {
                    return Err(TypeError::new(
                        ErrorKind::Boundary,
                        t.span,
                        format!("path endpoint at {ep} does not match"),
                    )
                    .with_values(show_value(expected, inner), show_value(&at_ep, inner)));
                }
            }
            Ok(())
        }
        (TermKind::Inl(a), Value::Sum(l, _)) => check(ctx, a, l),
        (TermKind::Inr(b), Value::Sum(_, r)) => check(ctx, b, r),
        (TermKind::Inl(_), _) | (TermKind::Inr(_), _) => Err(TypeError::new(
            ErrorKind::Mismatch,
            t.span,
            format!("injection checked against {}", show_type(ty)),
        )),
        (TermKind::GlueElem(sys, b), Value::Glue { base, parts }) => {
            check_glue_elem(ctx, t.span, sys, b, ty, base, parts)
        }
        (TermKind::GlueElem(_, _), _) => Err(TypeError::new(
            ErrorKind::Mismatch,
            t.span,
            format!("glue element checked against {}", show_type(ty)),
        )),
        _ => {
            let inferred = infer(ctx, t)?;
            let ok = convert_types(&inferred, ty).map_err(|e| stuck(t.span, e))?;
            if ok {
                Ok(())
            } else {
                Err(TypeError::new(ErrorKind::Mismatch, t.span, "type mismatch")
                    .with_values(show_type(ty), show_type(&inferred)))
            }
        }
    }
}

fn eval_face(ctx: &Ctx, f: &FExpr) -> CheckResult<Face> {
    feval(&ctx.env, f).map_err(|e| TypeError::new(ErrorKind::Scope, f.span, e.0))
}

fn eval_interval(ctx: &Ctx, r: &crate::syntax::IExpr) -> CheckResult<IntervalTerm> {
    ieval(&ctx.env, r).map_err(|e| TypeError::new(ErrorKind::Scope, r.span, e.0))
}

#[allow(clippy::too_many_arguments)]
fn check_glue_elem(
    ctx: &Ctx,
    span: Span,
    sys: &[SysEntry],
    b: &Term,
    glue_ty: &Rc<Value>,
    base: &Rc<Value>,
    parts: &[(Face, GluePart)],
) -> CheckResult<()> {
    check(ctx, b, base)?;
    let vb = ctx.eval(b)?;
    let mut covered = Face::bottom();
    let mut elems: Vec<(Face, Rc<Value>)> = Vec::new();
    for entry in sys {
        let phi = eval_face(ctx, &entry.face)?;
        if phi.is_bottom() {
            continue;
        }
        covered = f_or(&covered, &phi);
        // Each piece must land in the partial type and map onto the base
        // component under the partial function, conjunct by conjunct.
        for c in phi.conjuncts() {
            let sigma = c.as_subst();
            let face = if c.is_empty() { Face::Top } else { Face::Disj(vec![c.clone()]) };
            let ctx_c = ctx.restrict(&face, &sigma).map_err(|e| stuck(span, e))?;
            let (ty_c, fun_c, _) = collapse_or_part(parts, &sigma, span)?;
            check(&ctx_c, &entry.body, &ty_c)?;
            let va = ctx_c.eval(&entry.body)?;
            let fa = app(&fun_c, &va).map_err(|e| stuck(span, e))?;
            let vb_c = restrict(&vb, &sigma).map_err(|e| stuck(span, e))?;
            let base_c = restrict(base, &sigma).map_err(|e| stuck(span, e))?;
            let ok = convert(&fa, &vb_c, &base_c).map_err(|e| stuck(span, e))?;
            if !ok {
                return Err(TypeError::new(
                    ErrorKind::Boundary,
                    entry.body.span,
                    "glue element does not map onto its base component",
                )
                .with_values(show_value(&vb_c, &base_c), show_value(&fa, &base_c)));
            }
        }
        elems.push((phi, ctx.eval(&entry.body)?));
    }
    // The partial element must cover the whole extent of the glue type.
    let extent = parts_extent(parts);
    if !face::f_leq(&extent, &covered) {
        return Err(TypeError::new(
            ErrorKind::IncompatibleSystem,
            span,
            format!("glue element covers {covered} but the type requires {extent}"),
        ));
    }
    // Pairwise compatibility of the pieces.
    for i in 0..elems.len() {
        for j in i + 1..elems.len() {
            let meet = f_and(&elems[i].0, &elems[j].0);
            if meet.is_bottom() {
                continue;
            }
            let ok = convert_on_face(&meet, &elems[i].1, &elems[j].1, glue_ty)
                .map_err(|e| stuck(span, e))?;
            if !ok {
                return Err(TypeError::new(
                    ErrorKind::IncompatibleSystem,
                    span,
                    format!("glue pieces disagree on {meet}"),
                ));
            }
        }
    }
    Ok(())
}

fn collapse_or_part(
    parts: &[(Face, GluePart)],
    sigma: &DirSubst,
    span: Span,
) -> CheckResult<(Rc<Value>, Rc<Value>, Rc<Value>)> {
    collapse_part(parts, sigma).map_err(|e| stuck(span, e))
}

pub fn infer(ctx: &Ctx, t: &Term) -> CheckResult<Rc<Value>> {
    match &t.kind {
        TermKind::Var(x) => match ctx.lookup_var(x) {
            Some(Ok(ty)) => Ok(ty),
            Some(Err(())) => Err(TypeError::new(
                ErrorKind::Scope,
                t.span,
                format!("`{x}` is a direction, not a term"),
            )),
            None => match ctx.globals.iter().find(|(n, _)| n == x) {
                Some((_, ty)) => Ok(ty.clone()),
                None => Err(TypeError::new(
                    ErrorKind::Scope,
                    t.span,
                    format!("unbound variable `{x}`"),
                )),
            },
        },
        TermKind::U => Ok(Value::U.rc()),
        TermKind::Pi(x, a, b) | TermKind::Sigma(x, a, b) => {
            check(ctx, a, &Value::U.rc())?;
            let va = ctx.eval(a)?;
            let (ctx2, _) = ctx.bind_var(x, va);
            check(&ctx2, b, &Value::U.rc())?;
            Ok(Value::U.rc())
        }
        TermKind::Lam(_, _) => Err(TypeError::new(
            ErrorKind::Mismatch,
            t.span,
            "cannot infer the type of an unannotated function",
        )),
        TermKind::App(f, a) => {
            let fty = infer(ctx, f)?;
            match &*fty {
                Value::Pi(dom, cod) => {
                    check(ctx, a, dom)?;
                    let va = ctx.eval(a)?;
                    apply_closure(cod, &va).map_err(|e| stuck(t.span, e))
                }
                other => Err(TypeError::new(
                    ErrorKind::Mismatch,
                    f.span,
                    format!("not a function: has type {}", show_type(&fty)),
                )
                .with_values("a function type".into(), other.head_name().into())),
            }
        }
        TermKind::Pair(_, _) => Err(TypeError::new(
            ErrorKind::Mismatch,
            t.span,
            "cannot infer the type of a bare pair",
        )),
        TermKind::Fst(p) => {
            let pty = infer(ctx, p)?;
            match &*pty {
                Value::Sigma(dom, _) => Ok(dom.clone()),
                _ => Err(TypeError::new(
                    ErrorKind::Mismatch,
                    p.span,
                    format!("not a pair type: {}", show_type(&pty)),
                )),
            }
        }
        TermKind::Snd(p) => {
            let pty = infer(ctx, p)?;
            match &*pty {
                Value::Sigma(_, cod) => {
                    let vp = ctx.eval(p)?;
                    let fst = fst_v(&vp).map_err(|e| stuck(t.span, e))?;
                    apply_closure(cod, &fst).map_err(|e| stuck(t.span, e))
                }
                _ => Err(TypeError::new(
                    ErrorKind::Mismatch,
                    p.span,
                    format!("not a pair type: {}", show_type(&pty)),
                )),
            }
        }
        TermKind::Nat => Ok(Value::U.rc()),
        TermKind::Zero => Ok(Value::Nat.rc()),
        TermKind::Suc(n) => {
            check(ctx, n, &Value::Nat.rc())?;
            Ok(Value::Nat.rc())
        }
        TermKind::NatRec(p, z, s, n) => {
            let mty = type_snippet("Nat -> U", &[]).map_err(|e| stuck(t.span, e))?;
            check(ctx, p, &mty)?;
            let vp = ctx.eval(p)?;
            let zty = app(&vp, &Value::Zero.rc()).map_err(|e| stuck(t.span, e))?;
            check(ctx, z, &zty)?;
            let sty = type_snippet("(n : Nat) -> P n -> P (suc n)", &[("P", vp.clone())])
                .map_err(|e| stuck(t.span, e))?;
            check(ctx, s, &sty)?;
            check(ctx, n, &Value::Nat.rc())?;
            let vn = ctx.eval(n)?;
            app(&vp, &vn).map_err(|e| stuck(t.span, e))
        }
        TermKind::Sum(a, b) => {
            check(ctx, a, &Value::U.rc())?;
            check(ctx, b, &Value::U.rc())?;
            Ok(Value::U.rc())
        }
        TermKind::Inl(_) | TermKind::Inr(_) => Err(TypeError::new(
            ErrorKind::Mismatch,
            t.span,
            "cannot infer the type of a bare injection",
        )),
        TermKind::Case(p, l, r, s) => {
            let sty = infer(ctx, s)?;
            let (a, b) = match &*sty {
                Value::Sum(a, b) => (a.clone(), b.clone()),
                _ => {
                    return Err(TypeError::new(
                        ErrorKind::Mismatch,
                        s.span,
                        format!("case target is not a sum: {}", show_type(&sty)),
                    ))
                }
            };
            let mty = type_snippet("S -> U", &[("S", sty.clone())])
                .map_err(|e| stuck(t.span, e))?;
            check(ctx, p, &mty)?;
            let vp = ctx.eval(p)?;
            let lty = type_snippet("(a : A) -> P (inl a)", &[("A", a), ("P", vp.clone())])
                .map_err(|e| stuck(t.span, e))?;
            check(ctx, l, &lty)?;
            let rty = type_snippet("(b : B) -> P (inr b)", &[("B", b), ("P", vp.clone())])
                .map_err(|e| stuck(t.span, e))?;
            check(ctx, r, &rty)?;
            let vs = ctx.eval(s)?;
            app(&vp, &vs).map_err(|e| stuck(t.span, e))
        }
        TermKind::Path(a, x, y) | TermKind::Id(a, x, y) => {
            check(ctx, a, &Value::U.rc())?;
            let va = ctx.eval(a)?;
            check(ctx, x, &va)?;
            check(ctx, y, &va)?;
            Ok(Value::U.rc())
        }
        TermKind::PLam(i, body) => {
            let (ctx2, d) = ctx.bind_dir(i);
            let inner = infer(&ctx2, body)?;
            if mentions_dir(&inner, &d) {
                return Err(TypeError::new(
                    ErrorKind::NotAType,
                    t.span,
                    "the type of a path body must not depend on its direction",
                ));
            }
            let v = ctx2.eval(body)?;
            let v0 = restrict(&v, &DirSubst::single(d.clone(), IntervalTerm::Zero))
                .map_err(|e| stuck(t.span, e))?;
            let v1 = restrict(&v, &DirSubst::single(d, IntervalTerm::One))
                .map_err(|e| stuck(t.span, e))?;
            Ok(Value::Path(inner, v0, v1).rc())
        }
        TermKind::PApp(p, r) => {
            let pty = infer(ctx, p)?;
            match &*pty {
                Value::Path(inner, _, _) => {
                    eval_interval(ctx, r)?;
                    Ok(inner.clone())
                }
                _ => Err(TypeError::new(
                    ErrorKind::Mismatch,
                    p.span,
                    format!("not a path: has type {}", show_type(&pty)),
                )),
            }
        }
        TermKind::IdPair(p, phi) => {
            let pty = infer(ctx, p)?;
            let (inner, a0, a1) = match &*pty {
                Value::Path(a, x, y) => (a.clone(), x.clone(), y.clone()),
                _ => {
                    return Err(TypeError::new(
                        ErrorKind::Mismatch,
                        p.span,
                        format!("idPair needs a path, found {}", show_type(&pty)),
                    ))
                }
            };
            let face = eval_face(ctx, phi)?;
            // Where the flag holds, the path must be constantly its left
            // endpoint.
            let vp = ctx.eval(p)?;
            for c in face.conjuncts() {
                let sigma = c.as_subst();
                let p_c = restrict(&vp, &sigma).map_err(|e| stuck(t.span, e))?;
                let a0_c = restrict(&a0, &sigma).map_err(|e| stuck(t.span, e))?;
                let inner_c = restrict(&inner, &sigma).map_err(|e| stuck(t.span, e))?;
                let d = Direction::fresh("i");
                let at_d = papp(&p_c, &IntervalTerm::Dir(d)).map_err(|e| stuck(t.span, e))?;
                let ok = convert(&at_d, &a0_c, &inner_c).map_err(|e| stuck(t.span, e))?;
                if !ok {
                    return Err(TypeError::new(
                        ErrorKind::Boundary,
                        t.span,
                        "identity flag claims constancy but the path varies",
                    )
                    .with_values(
                        show_value(&a0_c, &inner_c),
                        show_value(&at_d, &inner_c),
                    ));
                }
            }
            Ok(Value::Id(inner, a0, a1).rc())
        }
        TermKind::Refl(a) => {
            let ty = infer(ctx, a)?;
            let va = ctx.eval(a)?;
            Ok(Value::Id(ty, va.clone(), va).rc())
        }
        TermKind::IdJ(motive, base, target) => {
            let tty = infer(ctx, target)?;
            let (a, a0, a1) = match &*tty {
                Value::Id(a, a0, a1) => (a.clone(), a0.clone(), a1.clone()),
                _ => {
                    return Err(TypeError::new(
                        ErrorKind::Mismatch,
                        target.span,
                        format!("idJ target is not an identity: {}", show_type(&tty)),
                    ))
                }
            };
            let mty = type_snippet(
                "(x : A) -> Id A a x -> U",
                &[("A", a), ("a", a0.clone())],
            )
            .map_err(|e| stuck(t.span, e))?;
            check(ctx, motive, &mty)?;
            let vm = ctx.eval(motive)?;
            let bty = app(&app(&vm, &a0).map_err(|e| stuck(t.span, e))?, &refl_value(&a0))
                .map_err(|e| stuck(t.span, e))?;
            check(ctx, base, &bty)?;
            let vt = ctx.eval(target)?;
            app(&app(&vm, &a1).map_err(|e| stuck(t.span, e))?, &vt)
                .map_err(|e| stuck(t.span, e))
        }
        TermKind::Comp { e, dir, line, sys, cap } => {
            let pb = check_comp_problem(ctx, t.span, *e, dir, line, sys, cap)?;
            restrict(
                &pb.line,
                &DirSubst::single(pb.dir.clone(), pb.e.flip().as_interval()),
            )
            .map_err(|er| stuck(t.span, er))
        }
        TermKind::Fill { e, dir, line, sys, cap, at } => {
            let pb = check_comp_problem(ctx, t.span, *e, dir, line, sys, cap)?;
            let r = eval_interval(ctx, at)?;
            restrict(&pb.line, &DirSubst::single(pb.dir.clone(), r))
                .map_err(|er| stuck(t.span, er))
        }
        TermKind::Glue(b, entries) => {
            check(ctx, b, &Value::U.rc())?;
            let vb = ctx.eval(b)?;
            let mut checked: Vec<(Face, Rc<Value>, Rc<Value>, Rc<Value>)> = Vec::new();
            for entry in entries {
                let phi = eval_face(ctx, &entry.face)?;
                if phi.is_bottom() {
                    continue;
                }
                for c in phi.conjuncts() {
                    let sigma = c.as_subst();
                    let face =
                        if c.is_empty() { Face::Top } else { Face::Disj(vec![c.clone()]) };
                    let ctx_c = ctx.restrict(&face, &sigma).map_err(|er| stuck(t.span, er))?;
                    check(&ctx_c, &entry.ty, &Value::U.rc())?;
                    let va = ctx_c.eval(&entry.ty)?;
                    let vb_c = restrict(&vb, &sigma).map_err(|er| stuck(t.span, er))?;
                    let fun_ty =
                        type_snippet("A -> B", &[("A", va.clone()), ("B", vb_c.clone())])
                            .map_err(|er| stuck(t.span, er))?;
                    check(&ctx_c, &entry.fun, &fun_ty)?;
                    let vf = ctx_c.eval(&entry.fun)?;
                    let eq_ty = equiv_type(&va, &vb_c, &vf).map_err(|er| stuck(t.span, er))?;
                    check(&ctx_c, &entry.equiv, &eq_ty)?;
                }
                checked.push((
                    phi,
                    ctx.eval(&entry.ty)?,
                    ctx.eval(&entry.fun)?,
                    ctx.eval(&entry.equiv)?,
                ));
            }
            // Pairwise compatibility of the partial components.
            for i in 0..checked.len() {
                for j in i + 1..checked.len() {
                    let meet = f_and(&checked[i].0, &checked[j].0);
                    for c in meet.conjuncts() {
                        let sigma = c.as_subst();
                        let ty1 = restrict(&checked[i].1, &sigma)
                            .map_err(|er| stuck(t.span, er))?;
                        let ty2 = restrict(&checked[j].1, &sigma)
                            .map_err(|er| stuck(t.span, er))?;
                        let tys_ok =
                            convert_types(&ty1, &ty2).map_err(|er| stuck(t.span, er))?;
                        let vb_c = restrict(&vb, &sigma).map_err(|er| stuck(t.span, er))?;
                        let fun_ty = type_snippet(
                            "A -> B",
                            &[("A", ty1.clone()), ("B", vb_c.clone())],
                        )
                        .map_err(|er| stuck(t.span, er))?;
                        let f1 = restrict(&checked[i].2, &sigma)
                            .map_err(|er| stuck(t.span, er))?;
                        let f2 = restrict(&checked[j].2, &sigma)
                            .map_err(|er| stuck(t.span, er))?;
                        let funs_ok =
                            tys_ok && convert(&f1, &f2, &fun_ty).map_err(|er| stuck(t.span, er))?;
                        let eq_ty = equiv_type(&ty1, &vb_c, &f1)
                            .map_err(|er| stuck(t.span, er))?;
                        let e1 = restrict(&checked[i].3, &sigma)
                            .map_err(|er| stuck(t.span, er))?;
                        let e2 = restrict(&checked[j].3, &sigma)
                            .map_err(|er| stuck(t.span, er))?;
                        let eqs_ok = funs_ok
                            && convert(&e1, &e2, &eq_ty).map_err(|er| stuck(t.span, er))?;
                        if !eqs_ok {
                            return Err(TypeError::new(
                                ErrorKind::IncompatibleSystem,
                                t.span,
                                "glue components disagree where both are defined",
                            ));
                        }
                    }
                }
            }
            Ok(Value::U.rc())
        }
        TermKind::GlueElem(_, _) => Err(TypeError::new(
            ErrorKind::Mismatch,
            t.span,
            "cannot infer the type of a glue element",
        )),
        TermKind::Unglue(g) => {
            let gty = infer(ctx, g)?;
            match &*gty {
                Value::Glue { base, .. } => Ok(base.clone()),
                _ => Err(TypeError::new(
                    ErrorKind::Mismatch,
                    g.span,
                    format!("unglue needs a glue type, found {}", show_type(&gty)),
                )),
            }
        }
    }
}

/// Elaborate and validate a composition problem: the line is a type over
/// a bound direction, tube faces are ambient, branches are checked under
/// their faces, the cap agrees with every tube at the starting endpoint,
/// and tubes agree pairwise on overlaps.
fn check_comp_problem(
    ctx: &Ctx,
    span: Span,
    e: Endpoint,
    dir: &Name,
    line: &Term,
    sys: &[SysEntry],
    cap: &Term,
) -> CheckResult<CompProblem> {
    let (ctx_i, d) = ctx.bind_dir(dir);
    check(&ctx_i, line, &Value::U.rc())?;
    let lv = ctx_i.eval(line)?;

    let mut tubes: Vec<(Face, Rc<Value>)> = Vec::new();
    for entry in sys {
        let phi = eval_face(ctx, &entry.face)?;
        if phi.is_bottom() {
            continue;
        }
        let ctx_branch = match &entry.dir {
            Some(j) => ctx.bind_dir_as(j, &d),
            None => ctx.clone(),
        };
        // Branch checked under each conjunct of its face, at the line type.
        for c in phi.conjuncts() {
            let sigma = c.as_subst();
            let face = if c.is_empty() { Face::Top } else { Face::Disj(vec![c.clone()]) };
            let ctx_c = ctx_branch.restrict(&face, &sigma).map_err(|er| stuck(span, er))?;
            let lv_c = restrict(&lv, &sigma).map_err(|er| stuck(span, er))?;
            check(&ctx_c, &entry.body, &lv_c)?;
        }
        let branch_v = eval(&ctx_branch.env, &entry.body).map_err(|er| stuck(entry.body.span, er))?;
        tubes.push((phi, branch_v));
    }

    let to_e = DirSubst::single(d.clone(), e.as_interval());
    let lv_e = restrict(&lv, &to_e).map_err(|er| stuck(span, er))?;
    check(ctx, cap, &lv_e)?;
    let cap_v = ctx.eval(cap)?;

    // Eq-side condition: each tube at the starting endpoint matches the cap.
    for (phi, branch) in &tubes {
        let branch_e = restrict(branch, &to_e).map_err(|er| stuck(span, er))?;
        let ok = convert_on_face(phi, &branch_e, &cap_v, &lv_e)
            .map_err(|er| stuck(span, er))?;
        if !ok {
            return Err(TypeError::new(
                ErrorKind::Boundary,
                span,
                format!("tube on {phi} disagrees with the cap at {e}"),
            )
            .with_values(show_value(&cap_v, &lv_e), show_value(&branch_e, &lv_e)));
        }
    }
    // Pairwise compatibility at the generic direction.
    for i in 0..tubes.len() {
        for j in i + 1..tubes.len() {
            let meet = f_and(&tubes[i].0, &tubes[j].0);
            if meet.is_bottom() {
                continue;
            }
            let ok = convert_on_face(&meet, &tubes[i].1, &tubes[j].1, &lv)
                .map_err(|er| stuck(span, er))?;
            if !ok {
                return Err(TypeError::new(
                    ErrorKind::IncompatibleSystem,
                    span,
                    format!("tubes disagree on {meet}"),
                ));
            }
        }
    }

    Ok(CompProblem { e, dir: d, line: lv, sys: tubes, cap: cap_v })
}

/// Decide a face at the current stage of a context.
pub fn face_truth_in(ctx: &Ctx, phi: &Face) -> FaceTruth {
    let _ = ctx;
    face::truth(phi)
}
