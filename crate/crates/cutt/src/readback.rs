//! Type-directed readback from values to concrete syntax.
//!
//! Binders come back with globally unique machine names; `prettify`
//! renames them to short source-level names before printing.

use std::collections::BTreeSet;
use std::rc::Rc;

use crate::eval::{app, apply_closure, fst_v, papp, restrict, snd_v, type_snippet, unglue_at};
use crate::face::{Conjunct, Face};
use crate::interval::{normalize, Direction, DirSubst, Endpoint, IntervalTerm, Name};
use crate::syntax::*;
use crate::value::*;

fn tm(kind: TermKind) -> Term {
    Term::new(Span::default(), kind)
}

fn closure_hint(c: &Closure) -> Name {
    match c {
        Closure::Term { param, .. } => {
            if &**param == "_" {
                "x".into()
            } else {
                param.clone()
            }
        }
        _ => "x".into(),
    }
}

pub fn iexpr_of(t: &IntervalTerm) -> IExpr {
    let dnf = normalize(t);
    let sp = Span::default();
    if dnf.is_bottom() {
        return IExpr { span: sp, kind: IExprKind::Zero };
    }
    if dnf.is_top() {
        return IExpr { span: sp, kind: IExprKind::One };
    }
    let mut join: Option<IExpr> = None;
    for clause in dnf.clauses() {
        let mut meet: Option<IExpr> = None;
        for lit in clause {
            let var = IExpr {
                span: sp,
                kind: IExprKind::Var(lit.dir.to_string().into()),
            };
            let atom = if lit.negated {
                IExpr { span: sp, kind: IExprKind::Neg(Rc::new(var)) }
            } else {
                var
            };
            meet = Some(match meet {
                None => atom,
                Some(m) => IExpr { span: sp, kind: IExprKind::Meet(Rc::new(m), Rc::new(atom)) },
            });
        }
        let m = meet.expect("nonempty clause");
        join = Some(match join {
            None => m,
            Some(j) => IExpr { span: sp, kind: IExprKind::Join(Rc::new(j), Rc::new(m)) },
        });
    }
    join.expect("nonempty dnf")
}

pub fn fexpr_of(face: &Face) -> FExpr {
    let sp = Span::default();
    let atom = |r: IExprKind, e: Endpoint| FExpr {
        span: sp,
        kind: FExprKind::Eq(IExpr { span: sp, kind: r }, e),
    };
    match face {
        Face::Top => atom(IExprKind::Zero, Endpoint::Zero),
        Face::Disj(cs) if cs.is_empty() => atom(IExprKind::Zero, Endpoint::One),
        Face::Disj(cs) => {
            let mut out: Option<FExpr> = None;
            for c in cs {
                let mut conj: Option<FExpr> = None;
                for (d, e) in c.atoms() {
                    let a = atom(IExprKind::Var(d.to_string().into()), *e);
                    conj = Some(match conj {
                        None => a,
                        Some(f) => FExpr {
                            span: sp,
                            kind: FExprKind::And(Rc::new(f), Rc::new(a)),
                        },
                    });
                }
                let cexp = conj.expect("nonempty conjunct");
                out = Some(match out {
                    None => cexp,
                    Some(f) => FExpr {
                        span: sp,
                        kind: FExprKind::Or(Rc::new(f), Rc::new(cexp)),
                    },
                });
            }
            out.expect("nonempty face")
        }
    }
}

fn conjunct_face(c: &Conjunct) -> Face {
    if c.is_empty() {
        Face::Top
    } else {
        Face::Disj(vec![c.clone()])
    }
}

fn refl_value(a: &Rc<Value>) -> Rc<Value> {
    Value::IdPair(
        Value::PLam(Direction::fresh("_"), a.clone()).rc(),
        Face::Top,
    )
    .rc()
}

/// Read a value back at a type.
pub fn readback(v: &Rc<Value>, ty: &Rc<Value>) -> EvalResult<Term> {
    match &**ty {
        Value::Pi(dom, cod) => {
            let hint = closure_hint(cod);
            let x = Value::fresh_var(&hint, dom.clone());
            let name: Name = match &*x {
                Value::Neutral(n) => match &**n {
                    Neutral::Var { name, .. } => name.clone(),
                    _ => unreachable!(),
                },
                _ => unreachable!(),
            };
            let body = app(v, &x)?;
            let bty = apply_closure(cod, &x)?;
            Ok(tm(TermKind::Lam(name, Rc::new(readback(&body, &bty)?))))
        }
        Value::Sigma(dom, cod) => {
            let a = fst_v(v)?;
            let b = snd_v(v)?;
            let bty = apply_closure(cod, &a)?;
            Ok(tm(TermKind::Pair(
                Rc::new(readback(&a, dom)?),
                Rc::new(readback(&b, &bty)?),
            )))
        }
        Value::Path(a, _, _) => {
            let d = Direction::fresh("i");
            let body = papp(v, &IntervalTerm::Dir(d.clone()))?;
            Ok(tm(TermKind::PLam(
                d.to_string().into(),
                Rc::new(readback(&body, a)?),
            )))
        }
        Value::U => readback_type(v),
        Value::Nat => match &**v {
            Value::Zero => Ok(tm(TermKind::Zero)),
            Value::Suc(n) => Ok(tm(TermKind::Suc(Rc::new(readback(n, ty)?)))),
            Value::Neutral(n) => Ok(readback_neutral(n)?.0),
            other => eerr(format!("readback: {} at Nat", other.head_name())),
        },
        Value::Sum(l, r) => match &**v {
            Value::Inl(a) => Ok(tm(TermKind::Inl(Rc::new(readback(a, l)?)))),
            Value::Inr(b) => Ok(tm(TermKind::Inr(Rc::new(readback(b, r)?)))),
            Value::Neutral(n) => Ok(readback_neutral(n)?.0),
            other => eerr(format!("readback: {} at Sum", other.head_name())),
        },
        Value::Id(a, a0, a1) => match &**v {
            Value::IdPair(p, phi) => {
                let pty = Value::Path(a.clone(), a0.clone(), a1.clone()).rc();
                Ok(tm(TermKind::IdPair(
                    Rc::new(readback(p, &pty)?),
                    fexpr_of(phi),
                )))
            }
            Value::Neutral(n) => Ok(readback_neutral(n)?.0),
            other => eerr(format!("readback: {} at Id", other.head_name())),
        },
        Value::Glue { base, parts } => match &**v {
            Value::Neutral(n) => Ok(readback_neutral(n)?.0),
            _ => {
                let mut sys = Vec::new();
                for (f, part) in parts {
                    for c in f.conjuncts() {
                        let sigma = c.as_subst();
                        let vc = restrict(v, &sigma)?;
                        let tyc = restrict(&part.ty, &sigma)?;
                        sys.push(SysEntry {
                            face: fexpr_of(&conjunct_face(&c)),
                            dir: None,
                            body: readback(&vc, &tyc)?,
                        });
                    }
                }
                let b = unglue_at(ty, v)?;
                Ok(tm(TermKind::GlueElem(sys, Rc::new(readback(&b, base)?))))
            }
        },
        Value::Neutral(_) => match &**v {
            Value::Neutral(n) => Ok(readback_neutral(n)?.0),
            other => eerr(format!("readback: {} at neutral type", other.head_name())),
        },
        other => eerr(format!("readback at non-type {}", other.head_name())),
    }
}

/// Read a type value back.
pub fn readback_type(v: &Rc<Value>) -> EvalResult<Term> {
    match &**v {
        Value::U => Ok(tm(TermKind::U)),
        Value::Nat => Ok(tm(TermKind::Nat)),
        Value::Pi(dom, cod) => {
            let hint = closure_hint(cod);
            let x = Value::fresh_var(&hint, dom.clone());
            let name = var_name(&x);
            let cod_v = apply_closure(cod, &x)?;
            Ok(tm(TermKind::Pi(
                name,
                Rc::new(readback_type(dom)?),
                Rc::new(readback_type(&cod_v)?),
            )))
        }
        Value::Sigma(dom, cod) => {
            let hint = closure_hint(cod);
            let x = Value::fresh_var(&hint, dom.clone());
            let name = var_name(&x);
            let cod_v = apply_closure(cod, &x)?;
            Ok(tm(TermKind::Sigma(
                name,
                Rc::new(readback_type(dom)?),
                Rc::new(readback_type(&cod_v)?),
            )))
        }
        Value::Sum(l, r) => Ok(tm(TermKind::Sum(
            Rc::new(readback_type(l)?),
            Rc::new(readback_type(r)?),
        ))),
        Value::Path(a, a0, a1) => Ok(tm(TermKind::Path(
            Rc::new(readback_type(a)?),
            Rc::new(readback(a0, a)?),
            Rc::new(readback(a1, a)?),
        ))),
        Value::Id(a, a0, a1) => Ok(tm(TermKind::Id(
            Rc::new(readback_type(a)?),
            Rc::new(readback(a0, a)?),
            Rc::new(readback(a1, a)?),
        ))),
        Value::Glue { base, parts } => {
            let mut entries = Vec::new();
            for (f, part) in parts {
                for c in f.conjuncts() {
                    let sigma = c.as_subst();
                    let tyc = restrict(&part.ty, &sigma)?;
                    let func = restrict(&part.fun, &sigma)?;
                    let eqc = restrict(&part.equiv, &sigma)?;
                    let basec = restrict(base, &sigma)?;
                    let fun_ty =
                        type_snippet("A -> B", &[("A", tyc.clone()), ("B", basec.clone())])?;
                    let eq_ty = crate::eval::equiv_type(&tyc, &basec, &func)?;
                    entries.push(GlueEntry {
                        face: fexpr_of(&conjunct_face(&c)),
                        ty: readback_type(&tyc)?,
                        fun: readback(&func, &fun_ty)?,
                        equiv: readback(&eqc, &eq_ty)?,
                    });
                }
            }
            Ok(tm(TermKind::Glue(Rc::new(readback_type(base)?), entries)))
        }
        Value::Neutral(n) => Ok(readback_neutral(n)?.0),
        other => eerr(format!("readback of a {} as a type", other.head_name())),
    }
}

fn var_name(v: &Rc<Value>) -> Name {
    match &**v {
        Value::Neutral(n) => match &**n {
            Neutral::Var { name, .. } => name.clone(),
            _ => unreachable!("var_name on non-var"),
        },
        _ => unreachable!("var_name on non-neutral"),
    }
}

/// Read a neutral back, returning the term and its inferred type.
pub fn readback_neutral(n: &Rc<Neutral>) -> EvalResult<(Term, Rc<Value>)> {
    match &**n {
        Neutral::Var { name, ty } => Ok((tm(TermKind::Var(name.clone())), ty.clone())),
        Neutral::App(f, a) => {
            let (ft, fty) = readback_neutral(f)?;
            match &*fty {
                Value::Pi(dom, cod) => {
                    let at = readback(a, dom)?;
                    Ok((
                        tm(TermKind::App(Rc::new(ft), Rc::new(at))),
                        apply_closure(cod, a)?,
                    ))
                }
                other => eerr(format!("application head has type {}", other.head_name())),
            }
        }
        Neutral::Fst(p) => {
            let (pt, pty) = readback_neutral(p)?;
            match &*pty {
                Value::Sigma(dom, _) => Ok((tm(TermKind::Fst(Rc::new(pt))), dom.clone())),
                other => eerr(format!("projection from type {}", other.head_name())),
            }
        }
        Neutral::Snd(p) => {
            let (pt, pty) = readback_neutral(p)?;
            match &*pty {
                Value::Sigma(_, cod) => {
                    let fst = Value::neutral(Neutral::Fst(p.clone()));
                    Ok((tm(TermKind::Snd(Rc::new(pt))), apply_closure(cod, &fst)?))
                }
                other => eerr(format!("projection from type {}", other.head_name())),
            }
        }
        Neutral::PApp(p, r) => {
            let (pt, pty) = readback_neutral(p)?;
            match &*pty {
                Value::Path(a, _, _) => Ok((
                    tm(TermKind::PApp(Rc::new(pt), iexpr_of(r))),
                    a.clone(),
                )),
                other => eerr(format!("path application at type {}", other.head_name())),
            }
        }
        Neutral::NatRec { motive, z, s, scrut } => {
            let mty = type_snippet("Nat -> U", &[])?;
            let mt = readback(motive, &mty)?;
            let zty = app(motive, &Value::Zero.rc())?;
            let zt = readback(z, &zty)?;
            let sty = type_snippet(
                "(n : Nat) -> P n -> P (suc n)",
                &[("P", motive.clone())],
            )?;
            let st = readback(s, &sty)?;
            let (nt, _) = readback_neutral(scrut)?;
            let scrut_v = Rc::new(Value::Neutral(scrut.clone()));
            Ok((
                tm(TermKind::NatRec(
                    Rc::new(mt),
                    Rc::new(zt),
                    Rc::new(st),
                    Rc::new(nt),
                )),
                app(motive, &scrut_v)?,
            ))
        }
        Neutral::Case { motive, l, r, scrut } => {
            let (st, sty) = readback_neutral(scrut)?;
            let (a, b) = match &*sty {
                Value::Sum(a, b) => (a.clone(), b.clone()),
                other => return eerr(format!("case target has type {}", other.head_name())),
            };
            let mty = type_snippet("S -> U", &[("S", sty.clone())])?;
            let mt = readback(motive, &mty)?;
            let lty = type_snippet(
                "(a : A) -> P (inl a)",
                &[("A", a), ("P", motive.clone())],
            )?;
            let rty = type_snippet(
                "(b : B) -> P (inr b)",
                &[("B", b), ("P", motive.clone())],
            )?;
            let lt = readback(l, &lty)?;
            let rt = readback(r, &rty)?;
            let scrut_v = Rc::new(Value::Neutral(scrut.clone()));
            Ok((
                tm(TermKind::Case(
                    Rc::new(mt),
                    Rc::new(lt),
                    Rc::new(rt),
                    Rc::new(st),
                )),
                app(motive, &scrut_v)?,
            ))
        }
        Neutral::IdJ { motive, base, scrut } => {
            let (st, sty) = readback_neutral(scrut)?;
            let (a, a0, a1) = match &*sty {
                Value::Id(a, a0, a1) => (a.clone(), a0.clone(), a1.clone()),
                other => return eerr(format!("idJ target has type {}", other.head_name())),
            };
            let mty = type_snippet(
                "(x : A) -> Id A a x -> U",
                &[("A", a), ("a", a0.clone())],
            )?;
            let mt = readback(motive, &mty)?;
            let b0ty = app(&app(motive, &a0)?, &refl_value(&a0))?;
            let bt = readback(base, &b0ty)?;
            let scrut_v = Rc::new(Value::Neutral(scrut.clone()));
            Ok((
                tm(TermKind::IdJ(Rc::new(mt), Rc::new(bt), Rc::new(st))),
                app(&app(motive, &a1)?, &scrut_v)?,
            ))
        }
        Neutral::Unglue { scrut, glue_ty } => {
            let (gt, _) = readback_neutral(scrut)?;
            match &**glue_ty {
                Value::Glue { base, .. } => {
                    Ok((tm(TermKind::Unglue(Rc::new(gt))), base.clone()))
                }
                other => eerr(format!("unglue at type {}", other.head_name())),
            }
        }
        Neutral::Comp(pb) => {
            let dir_name: Name = pb.dir.to_string().into();
            let line_t = readback_type(&pb.line)?;
            let mut sys = Vec::new();
            for (f, branch) in &pb.sys {
                sys.push(SysEntry {
                    face: fexpr_of(f),
                    dir: Some(dir_name.clone()),
                    body: readback(branch, &pb.line)?,
                });
            }
            let at_e = restrict(
                &pb.line,
                &DirSubst::single(pb.dir.clone(), pb.e.as_interval()),
            )?;
            let cap_t = readback(&pb.cap, &at_e)?;
            let at_bar = restrict(
                &pb.line,
                &DirSubst::single(pb.dir.clone(), pb.e.flip().as_interval()),
            )?;
            Ok((
                tm(TermKind::Comp {
                    e: pb.e,
                    dir: dir_name,
                    line: Rc::new(line_t),
                    sys,
                    cap: Rc::new(cap_t),
                }),
                at_bar,
            ))
        }
    }
}

// ---------------------------------------------------------------------
// Pretty renaming

struct Renamer {
    free_map: std::collections::HashMap<Name, Name>,
    taken: BTreeSet<String>,
}

impl Renamer {
    fn pretty_for(&mut self, hint: &str) -> Name {
        let base = hint.split('%').next().unwrap_or("x");
        let base = if base.is_empty() { "x" } else { base };
        if base == "_" {
            return "_".into();
        }
        if !self.taken.contains(base) {
            self.taken.insert(base.to_string());
            return base.into();
        }
        let mut n = 2;
        loop {
            let cand = format!("{base}{n}");
            if !self.taken.contains(&cand) {
                self.taken.insert(cand.clone());
                return cand.into();
            }
            n += 1;
        }
    }

    fn free(&mut self, name: &Name) -> Name {
        if !name.contains('%') {
            return name.clone();
        }
        if let Some(n) = self.free_map.get(name) {
            return n.clone();
        }
        let pretty = self.pretty_for(name);
        self.free_map.insert(name.clone(), pretty.clone());
        pretty
    }
}

type Scope = std::collections::HashMap<Name, Name>;

/// Rename machine-generated binders to short, source-level names.
pub fn prettify(t: &Term) -> Term {
    let mut r = Renamer { free_map: Default::default(), taken: Default::default() };
    collect_taken(t, &mut r.taken);
    pretty_term(t, &Scope::new(), &mut r)
}

fn collect_taken(t: &Term, taken: &mut BTreeSet<String>) {
    use TermKind::*;
    match &t.kind {
        Var(x) => {
            if !x.contains('%') {
                taken.insert(x.to_string());
            }
        }
        U | Nat | Zero => {}
        Pi(_, a, b) | Sigma(_, a, b) => {
            collect_taken(a, taken);
            collect_taken(b, taken);
        }
        Lam(_, b) | PLam(_, b) | Fst(b) | Snd(b) | Suc(b) | Inl(b) | Inr(b) | Refl(b)
        | Unglue(b) => collect_taken(b, taken),
        App(a, b) | Pair(a, b) | Sum(a, b) => {
            collect_taken(a, taken);
            collect_taken(b, taken);
        }
        NatRec(a, b, c, d) | Case(a, b, c, d) => {
            for x in [a, b, c, d] {
                collect_taken(x, taken);
            }
        }
        Path(a, b, c) | Id(a, b, c) | IdJ(a, b, c) => {
            for x in [a, b, c] {
                collect_taken(x, taken);
            }
        }
        PApp(a, _) => collect_taken(a, taken),
        IdPair(a, _) => collect_taken(a, taken),
        Comp { line, sys, cap, .. } | Fill { line, sys, cap, .. } => {
            collect_taken(line, taken);
            for s in sys {
                collect_taken(&s.body, taken);
            }
            collect_taken(cap, taken);
        }
        Glue(b, entries) => {
            collect_taken(b, taken);
            for g in entries {
                collect_taken(&g.ty, taken);
                collect_taken(&g.fun, taken);
                collect_taken(&g.equiv, taken);
            }
        }
        GlueElem(sys, b) => {
            for s in sys {
                collect_taken(&s.body, taken);
            }
            collect_taken(b, taken);
        }
    }
}

fn pretty_name(x: &Name, scope: &Scope, r: &mut Renamer) -> Name {
    match scope.get(x) {
        Some(n) => n.clone(),
        None => r.free(x),
    }
}

fn bind_pretty(x: &Name, scope: &Scope, r: &mut Renamer) -> (Name, Scope) {
    let pretty = if x.contains('%') {
        r.pretty_for(x)
    } else {
        x.clone()
    };
    let mut s2 = scope.clone();
    s2.insert(x.clone(), pretty.clone());
    (pretty, s2)
}

fn pretty_term(t: &Term, scope: &Scope, r: &mut Renamer) -> Term {
    use TermKind::*;
    let span = t.span;
    let kind = match &t.kind {
        Var(x) => Var(pretty_name(x, scope, r)),
        U => U,
        Nat => Nat,
        Zero => Zero,
        Pi(x, a, b) => {
            let a2 = pretty_term(a, scope, r);
            let (x2, s2) = bind_pretty(x, scope, r);
            Pi(x2, Rc::new(a2), Rc::new(pretty_term(b, &s2, r)))
        }
        Sigma(x, a, b) => {
            let a2 = pretty_term(a, scope, r);
            let (x2, s2) = bind_pretty(x, scope, r);
            Sigma(x2, Rc::new(a2), Rc::new(pretty_term(b, &s2, r)))
        }
        Lam(x, b) => {
            let (x2, s2) = bind_pretty(x, scope, r);
            Lam(x2, Rc::new(pretty_term(b, &s2, r)))
        }
        PLam(x, b) => {
            let (x2, s2) = bind_pretty(x, scope, r);
            PLam(x2, Rc::new(pretty_term(b, &s2, r)))
        }
        App(f, a) => App(
            Rc::new(pretty_term(f, scope, r)),
            Rc::new(pretty_term(a, scope, r)),
        ),
        Pair(a, b) => Pair(
            Rc::new(pretty_term(a, scope, r)),
            Rc::new(pretty_term(b, scope, r)),
        ),
        Fst(a) => Fst(Rc::new(pretty_term(a, scope, r))),
        Snd(a) => Snd(Rc::new(pretty_term(a, scope, r))),
        Suc(a) => Suc(Rc::new(pretty_term(a, scope, r))),
        NatRec(a, b, c, d) => NatRec(
            Rc::new(pretty_term(a, scope, r)),
            Rc::new(pretty_term(b, scope, r)),
            Rc::new(pretty_term(c, scope, r)),
            Rc::new(pretty_term(d, scope, r)),
        ),
        Sum(a, b) => Sum(
            Rc::new(pretty_term(a, scope, r)),
            Rc::new(pretty_term(b, scope, r)),
        ),
        Inl(a) => Inl(Rc::new(pretty_term(a, scope, r))),
        Inr(a) => Inr(Rc::new(pretty_term(a, scope, r))),
        Case(a, b, c, d) => Case(
            Rc::new(pretty_term(a, scope, r)),
            Rc::new(pretty_term(b, scope, r)),
            Rc::new(pretty_term(c, scope, r)),
            Rc::new(pretty_term(d, scope, r)),
        ),
        Path(a, b, c) => Path(
            Rc::new(pretty_term(a, scope, r)),
            Rc::new(pretty_term(b, scope, r)),
            Rc::new(pretty_term(c, scope, r)),
        ),
        PApp(a, i) => PApp(Rc::new(pretty_term(a, scope, r)), pretty_iexpr(i, scope, r)),
        Id(a, b, c) => Id(
            Rc::new(pretty_term(a, scope, r)),
            Rc::new(pretty_term(b, scope, r)),
            Rc::new(pretty_term(c, scope, r)),
        ),
        IdPair(a, f) => IdPair(
            Rc::new(pretty_term(a, scope, r)),
            pretty_fexpr(f, scope, r),
        ),
        Refl(a) => Refl(Rc::new(pretty_term(a, scope, r))),
        IdJ(a, b, c) => IdJ(
            Rc::new(pretty_term(a, scope, r)),
            Rc::new(pretty_term(b, scope, r)),
            Rc::new(pretty_term(c, scope, r)),
        ),
        Comp { e, dir, line, sys, cap } => {
            let (d2, s2) = bind_pretty(dir, scope, r);
            Comp {
                e: *e,
                dir: d2.clone(),
                line: Rc::new(pretty_term(line, &s2, r)),
                sys: sys
                    .iter()
                    .map(|entry| pretty_sys_entry(entry, scope, &d2, r))
                    .collect(),
                cap: Rc::new(pretty_term(cap, scope, r)),
            }
        }
        Fill { e, dir, line, sys, cap, at } => {
            let (d2, s2) = bind_pretty(dir, scope, r);
            Fill {
                e: *e,
                dir: d2.clone(),
                line: Rc::new(pretty_term(line, &s2, r)),
                sys: sys
                    .iter()
                    .map(|entry| pretty_sys_entry(entry, scope, &d2, r))
                    .collect(),
                cap: Rc::new(pretty_term(cap, scope, r)),
                at: pretty_iexpr(at, scope, r),
            }
        }
        Glue(b, entries) => Glue(
            Rc::new(pretty_term(b, scope, r)),
            entries
                .iter()
                .map(|g| GlueEntry {
                    face: pretty_fexpr(&g.face, scope, r),
                    ty: pretty_term(&g.ty, scope, r),
                    fun: pretty_term(&g.fun, scope, r),
                    equiv: pretty_term(&g.equiv, scope, r),
                })
                .collect(),
        ),
        GlueElem(sys, b) => GlueElem(
            sys.iter()
                .map(|entry| SysEntry {
                    face: pretty_fexpr(&entry.face, scope, r),
                    dir: None,
                    body: pretty_term(&entry.body, scope, r),
                })
                .collect(),
            Rc::new(pretty_term(b, scope, r)),
        ),
        Unglue(g) => Unglue(Rc::new(pretty_term(g, scope, r))),
    };
    Term::new(span, kind)
}

fn pretty_sys_entry(entry: &SysEntry, scope: &Scope, comp_dir: &Name, r: &mut Renamer) -> SysEntry {
    // Tube branches written back share the composition binder.
    let face = pretty_fexpr(&entry.face, scope, r);
    match &entry.dir {
        Some(d) => {
            let mut s2 = scope.clone();
            s2.insert(d.clone(), comp_dir.clone());
            SysEntry {
                face,
                dir: Some(comp_dir.clone()),
                body: pretty_term(&entry.body, &s2, r),
            }
        }
        None => SysEntry { face, dir: None, body: pretty_term(&entry.body, scope, r) },
    }
}

fn pretty_iexpr(i: &IExpr, scope: &Scope, r: &mut Renamer) -> IExpr {
    use IExprKind::*;
    let kind = match &i.kind {
        Zero => Zero,
        One => One,
        Var(x) => Var(pretty_name(x, scope, r)),
        Neg(a) => Neg(Rc::new(pretty_iexpr(a, scope, r))),
        Meet(a, b) => Meet(
            Rc::new(pretty_iexpr(a, scope, r)),
            Rc::new(pretty_iexpr(b, scope, r)),
        ),
        Join(a, b) => Join(
            Rc::new(pretty_iexpr(a, scope, r)),
            Rc::new(pretty_iexpr(b, scope, r)),
        ),
    };
    IExpr { span: i.span, kind }
}

fn pretty_fexpr(f: &FExpr, scope: &Scope, r: &mut Renamer) -> FExpr {
    use FExprKind::*;
    let kind = match &f.kind {
        Eq(i, e) => Eq(pretty_iexpr(i, scope, r), *e),
        And(a, b) => And(
            Rc::new(pretty_fexpr(a, scope, r)),
            Rc::new(pretty_fexpr(b, scope, r)),
        ),
        Or(a, b) => Or(
            Rc::new(pretty_fexpr(a, scope, r)),
            Rc::new(pretty_fexpr(b, scope, r)),
        ),
        Forall(x, body) => {
            let (x2, s2) = bind_pretty(x, scope, r);
            Forall(x2, Rc::new(pretty_fexpr(body, &s2, r)))
        }
    };
    FExpr { span: f.span, kind }
}

/// Display a value at a type, best effort.
pub fn show_value(v: &Rc<Value>, ty: &Rc<Value>) -> String {
    match readback(v, ty) {
        Ok(t) => crate::printer::print_term(&prettify(&t)),
        Err(_) => format!("<{}>", v.head_name()),
    }
}

/// Display a type value, best effort.
pub fn show_type(v: &Rc<Value>) -> String {
    match readback_type(v) {
        Ok(t) => crate::printer::print_term(&prettify(&t)),
        Err(_) => format!("<{}>", v.head_name()),
    }
}
