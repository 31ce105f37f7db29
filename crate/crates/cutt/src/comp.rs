//! Composition and filling structures.
//!
//! `compose` turns an extension of a partial path at one endpoint into an
//! extension at the other, dispatching on the head of the type line.
//! `fill_at` produces the whole filler from composition using the
//! connection algebra. Values composed in a glue line go through the
//! equivalence components, with the composition adapted along the face
//! where the partial type is total.

use std::rc::Rc;
use std::sync::atomic::{AtomicBool, Ordering};

use crate::eval::{
    app, apply_closure, fst_v, glue_intro, papp, restrict, restrict_problem, snd_v,
    type_snippet, unglue_at,
};
use crate::face::{self, apply_face, Conjunct, Face};
use crate::interval::{Direction, DirSubst, Endpoint, IntervalTerm};
use crate::value::*;

pub static TRACE_COMP: AtomicBool = AtomicBool::new(false);

pub fn set_trace(enabled: bool) {
    TRACE_COMP.store(enabled, Ordering::Relaxed);
}

fn trace_dispatch(pb: &CompProblem) {
    if TRACE_COMP.load(Ordering::Relaxed) {
        let mut dirs = std::collections::BTreeSet::new();
        free_dirs_problem(pb, &mut dirs);
        eprintln!(
            "comp: head={} face={} depth={}",
            pb.line.head_name(),
            pb.extent(),
            dirs.len()
        );
    }
}

fn conjunct_face(c: &Conjunct) -> Face {
    if c.is_empty() {
        Face::Top
    } else {
        Face::Disj(vec![c.clone()])
    }
}

/// Composition: from an extension at `e` to an extension at the flipped
/// endpoint. Tube faces never mention `pb.dir`; branch values may.
pub fn compose(pb: &CompProblem) -> EvalResult<Rc<Value>> {
    trace_dispatch(pb);
    let e_bar = pb.e.flip();
    let to_bar = DirSubst::single(pb.dir.clone(), e_bar.as_interval());

    // A total tube determines the answer directly.
    for (f, branch) in &pb.sys {
        if f.is_top() {
            return restrict(branch, &to_bar);
        }
    }

    match &*pb.line.clone() {
        Value::Nat => Ok(pb.cap.clone()),
        Value::Sigma(dom, cod) => sigma_comp(pb, dom, cod),
        Value::Pi(_, _) => Ok(Value::Lam(Closure::PiComp(Rc::new(pb.clone()))).rc()),
        Value::Path(a, a0, a1) => path_comp(pb, a, a0, a1),
        Value::Id(a, a0, a1) => id_comp(pb, a, a0, a1),
        Value::Sum(l, r) => sum_comp(pb, l, r),
        Value::Glue { base, parts } => glue_comp(pb, base, parts),
        Value::Neutral(_) | Value::U => Ok(Value::neutral(Neutral::Comp(Rc::new(pb.clone())))),
        other => eerr(format!("composition over a {} line", other.head_name())),
    }
}

/// The filler at an arbitrary point of the line, built from composition
/// with a connection: the original tubes are reparameterised along
/// `dir := r <> k` and the cap is glued in as an extra tube on `(r = e)`.
pub fn fill_at(pb: &CompProblem, r: &IntervalTerm) -> EvalResult<Rc<Value>> {
    if crate::interval::iequal(r, &pb.e.as_interval()) {
        return Ok(pb.cap.clone());
    }
    let k = Direction::fresh("k");
    let conn = IntervalTerm::connect(pb.e, r.clone(), IntervalTerm::Dir(k.clone()));
    let sigma = DirSubst::single(pb.dir.clone(), conn);
    let mut sys = Vec::new();
    for (f, branch) in &pb.sys {
        sys.push((f.clone(), restrict(branch, &sigma)?));
    }
    let cap_face = face::face_eq(r, pb.e);
    if !cap_face.is_bottom() {
        sys.push((cap_face, pb.cap.clone()));
    }
    compose(&CompProblem {
        e: pb.e,
        dir: k,
        line: restrict(&pb.line, &sigma)?,
        sys,
        cap: pb.cap.clone(),
    })
}

// ---------------------------------------------------------------------
// Per-former rules

fn sigma_comp(pb: &CompProblem, dom: &Rc<Value>, cod: &Closure) -> EvalResult<Rc<Value>> {
    let mut fst_sys = Vec::new();
    for (f, branch) in &pb.sys {
        fst_sys.push((f.clone(), fst_v(branch)?));
    }
    let fst_pb = CompProblem {
        e: pb.e,
        dir: pb.dir.clone(),
        line: dom.clone(),
        sys: fst_sys,
        cap: fst_v(&pb.cap)?,
    };
    let c1 = compose(&fst_pb)?;
    // The filler of the first component, at the generic direction.
    let w = fill_at(&fst_pb, &IntervalTerm::Dir(pb.dir.clone()))?;
    let cod_line = apply_closure(cod, &w)?;
    let mut snd_sys = Vec::new();
    for (f, branch) in &pb.sys {
        snd_sys.push((f.clone(), snd_v(branch)?));
    }
    let c2 = compose(&CompProblem {
        e: pb.e,
        dir: pb.dir.clone(),
        line: cod_line,
        sys: snd_sys,
        cap: snd_v(&pb.cap)?,
    })?;
    Ok(Value::Pair(c1, c2).rc())
}

/// Apply the function produced by composing in a dependent function
/// line: fill the argument backwards through the domain and compose in
/// the codomain over the resulting diagonal.
pub fn pi_comp_apply(pb: &CompProblem, arg: &Rc<Value>) -> EvalResult<Rc<Value>> {
    let (dom, cod) = match &*pb.line {
        Value::Pi(dom, cod) => (dom.clone(), cod.clone()),
        other => return eerr(format!("function composition over a {} line", other.head_name())),
    };
    let dom_pb = CompProblem {
        e: pb.e.flip(),
        dir: pb.dir.clone(),
        line: dom,
        sys: Vec::new(),
        cap: arg.clone(),
    };
    let w = fill_at(&dom_pb, &IntervalTerm::Dir(pb.dir.clone()))?;
    let w_e = fill_at(&dom_pb, &pb.e.as_interval())?;
    let cod_line = apply_closure(&cod, &w)?;
    let mut sys = Vec::new();
    for (f, branch) in &pb.sys {
        sys.push((f.clone(), app(branch, &w)?));
    }
    compose(&CompProblem {
        e: pb.e,
        dir: pb.dir.clone(),
        line: cod_line,
        sys,
        cap: app(&pb.cap, &w_e)?,
    })
}

fn path_comp(
    pb: &CompProblem,
    a: &Rc<Value>,
    a0: &Rc<Value>,
    a1: &Rc<Value>,
) -> EvalResult<Rc<Value>> {
    let j = Direction::fresh("j");
    let jt = IntervalTerm::Dir(j.clone());
    let mut sys = Vec::new();
    for (f, branch) in &pb.sys {
        sys.push((f.clone(), papp(branch, &jt)?));
    }
    sys.push((face::face_eq(&jt, Endpoint::Zero), a0.clone()));
    sys.push((face::face_eq(&jt, Endpoint::One), a1.clone()));
    let body = compose(&CompProblem {
        e: pb.e,
        dir: pb.dir.clone(),
        line: a.clone(),
        sys,
        cap: papp(&pb.cap, &jt)?,
    })?;
    Ok(Value::PLam(j, body).rc())
}

fn id_comp(
    pb: &CompProblem,
    a: &Rc<Value>,
    a0: &Rc<Value>,
    a1: &Rc<Value>,
) -> EvalResult<Rc<Value>> {
    let e_bar_subst = DirSubst::single(pb.dir.clone(), pb.e.flip().as_interval());
    let mut path_sys = Vec::new();
    let mut flag = Face::bottom();
    for (f, branch) in &pb.sys {
        match &**branch {
            Value::IdPair(p, branch_flag) => {
                path_sys.push((f.clone(), p.clone()));
                // The flag of the result holds where a tube holds and its
                // flag holds at the target endpoint.
                flag = face::f_or(&flag, &face::f_and(f, &apply_face(branch_flag, &e_bar_subst)));
            }
            Value::Neutral(_) => {
                return Ok(Value::neutral(Neutral::Comp(Rc::new(pb.clone()))));
            }
            other => return eerr(format!("identity tube is a {}", other.head_name())),
        }
    }
    let cap_path = match &*pb.cap {
        Value::IdPair(p, _) => p.clone(),
        Value::Neutral(_) => {
            return Ok(Value::neutral(Neutral::Comp(Rc::new(pb.clone()))));
        }
        other => return eerr(format!("identity cap is a {}", other.head_name())),
    };
    let path = compose(&CompProblem {
        e: pb.e,
        dir: pb.dir.clone(),
        line: Value::Path(a.clone(), a0.clone(), a1.clone()).rc(),
        sys: path_sys,
        cap: cap_path,
    })?;
    Ok(Value::IdPair(path, flag).rc())
}

fn sum_comp(pb: &CompProblem, l: &Rc<Value>, r: &Rc<Value>) -> EvalResult<Rc<Value>> {
    enum Side {
        Left,
        Right,
    }
    let side = match &*pb.cap {
        Value::Inl(_) => Side::Left,
        Value::Inr(_) => Side::Right,
        _ => return Ok(Value::neutral(Neutral::Comp(Rc::new(pb.clone())))),
    };
    let mut sys = Vec::new();
    for (f, branch) in &pb.sys {
        let inner = match (&side, &**branch) {
            (Side::Left, Value::Inl(v)) | (Side::Right, Value::Inr(v)) => v.clone(),
            _ => return Ok(Value::neutral(Neutral::Comp(Rc::new(pb.clone())))),
        };
        sys.push((f.clone(), inner));
    }
    match side {
        Side::Left => {
            let cap = match &*pb.cap {
                Value::Inl(v) => v.clone(),
                _ => unreachable!(),
            };
            let c = compose(&CompProblem {
                e: pb.e,
                dir: pb.dir.clone(),
                line: l.clone(),
                sys,
                cap,
            })?;
            Ok(Value::Inl(c).rc())
        }
        Side::Right => {
            let cap = match &*pb.cap {
                Value::Inr(v) => v.clone(),
                _ => unreachable!(),
            };
            let c = compose(&CompProblem {
                e: pb.e,
                dir: pb.dir.clone(),
                line: r.clone(),
                sys,
                cap,
            })?;
            Ok(Value::Inr(c).rc())
        }
    }
}

// ---------------------------------------------------------------------
// Glue composition

/// Unglue a value at the stage reached by `sigma`: if the restricted
/// glue type is still undecided this is the ordinary projection, and on
/// a collapsed stage it applies the (restricted) partial function.
fn unglue_on(
    line: &Rc<Value>,
    parts: &[(Face, GluePart)],
    sigma: &DirSubst,
    v: &Rc<Value>,
) -> EvalResult<Rc<Value>> {
    let line_r = restrict(line, sigma)?;
    match &*line_r {
        Value::Glue { .. } => unglue_at(&line_r, v),
        _ => {
            for (f, p) in parts {
                if apply_face(f, sigma).is_top() {
                    return app(&restrict(&p.fun, sigma)?, v);
                }
            }
            eerr("glue type collapsed without a true face")
        }
    }
}

fn glue_comp(
    pb: &CompProblem,
    base: &Rc<Value>,
    parts: &[(Face, GluePart)],
) -> EvalResult<Rc<Value>> {
    let e_bar = pb.e.flip();
    let to_bar = DirSubst::single(pb.dir.clone(), e_bar.as_interval());
    let to_e = DirSubst::single(pb.dir.clone(), pb.e.as_interval());

    // Adapt the composition along the face where the partial type is
    // total for the whole line: there the glue line is the partial type
    // and its own filler provides an extra tube.
    let mut phi_generic = Face::bottom();
    for (f, _) in parts {
        phi_generic = face::f_or(&phi_generic, f);
    }
    let delta = face::forall_dir(&pb.dir, &phi_generic);
    let mut sys_all = pb.sys.clone();
    for c in delta_conjuncts(&delta) {
        let sigma = c.as_subst();
        let pb_c = restrict_problem(pb, &sigma)?;
        let h = fill_at(&pb_c, &IntervalTerm::Dir(pb.dir.clone()))?;
        sys_all.push((conjunct_face(&c), h));
    }

    // First approximation: compose the unglued pieces in the base line.
    let mut b_sys = Vec::new();
    for (f, t) in &sys_all {
        for c in f.conjuncts() {
            let sigma = c.as_subst();
            let t_c = restrict(t, &sigma)?;
            let unglued = unglue_on(&pb.line, parts, &sigma, &t_c)?;
            b_sys.push((conjunct_face(&c), unglued));
        }
    }
    let cap_unglued = unglue_on(&pb.line, parts, &to_e, &pb.cap)?;
    let b1_approx = compose(&CompProblem {
        e: pb.e,
        dir: pb.dir.clone(),
        line: base.clone(),
        sys: b_sys,
        cap: cap_unglued,
    })?;

    // On each conjunct of the partial extent at the target stage, extend
    // the tube elements through the contractible fibre of the
    // equivalence to obtain the partial component and a correcting path.
    let base_bar = restrict(base, &to_bar)?;
    let mut a_parts: Vec<(Face, Rc<Value>)> = Vec::new();
    let mut fix_paths: Vec<(Face, Rc<Value>)> = Vec::new();
    for (f, part) in parts {
        let f_bar = apply_face(f, &to_bar);
        if f_bar.is_bottom() {
            continue;
        }
        for c in f_bar.conjuncts() {
            let c_face = conjunct_face(&c);
            if a_parts.iter().any(|(g, _)| *g == c_face) {
                continue;
            }
            let sigma_c = c.as_subst();
            let sigma_d = to_bar.then(&sigma_c);
            let ty_d = restrict(&part.ty, &sigma_d)?;
            let fun_d = restrict(&part.fun, &sigma_d)?;
            let equiv_d = restrict(&part.equiv, &sigma_d)?;
            let b1_d = restrict(&b1_approx, &sigma_c)?;
            let contr = app(&equiv_d, &b1_d)?;
            let center = fst_v(&contr)?;
            let contract = snd_v(&contr)?;
            // Fibre of the equivalence at the approximate base point.
            let fibre = type_snippet(
                "(x : A) * Path B (f x) b",
                &[
                    ("A", ty_d.clone()),
                    ("B", restrict(&base_bar, &sigma_c)?),
                    ("f", fun_d.clone()),
                    ("b", b1_d.clone()),
                ],
            )?;
            // Partial element of the fibre over the tube extent.
            let k = Direction::fresh("k");
            let mut ext_sys = Vec::new();
            for (g, t) in &sys_all {
                let g_c = apply_face(g, &sigma_c);
                if g_c.is_bottom() {
                    continue;
                }
                let t_d = restrict(t, &to_bar.then(&sigma_c))?;
                let fa = app(&fun_d, &t_d)?;
                let piece = Value::Pair(
                    t_d,
                    Value::PLam(Direction::fresh("_"), fa).rc(),
                )
                .rc();
                let path = app(&contract, &piece)?;
                ext_sys.push((g_c, papp(&path, &IntervalTerm::Dir(k.clone()))?));
            }
            let extended = compose(&CompProblem {
                e: Endpoint::Zero,
                dir: k,
                line: fibre,
                sys: ext_sys,
                cap: center,
            })?;
            a_parts.push((c_face.clone(), fst_v(&extended)?));
            fix_paths.push((c_face, snd_v(&extended)?));
        }
    }

    // Correct the approximate base component so it agrees with the
    // partial function on the partial extent.
    let m = Direction::fresh("m");
    let mt = IntervalTerm::Dir(m.clone());
    let mut corr_sys = Vec::new();
    for (f, p) in &fix_paths {
        corr_sys.push((f.clone(), papp(p, &mt)?));
    }
    for (f, t) in &sys_all {
        for c in f.conjuncts() {
            let sigma = to_bar.then(&c.as_subst());
            let t_bar = restrict(t, &sigma)?;
            let unglued = unglue_on(&pb.line, parts, &sigma, &t_bar)?;
            corr_sys.push((conjunct_face(&c), unglued));
        }
    }
    let b1 = compose(&CompProblem {
        e: Endpoint::One,
        dir: m,
        line: base_bar,
        sys: corr_sys,
        cap: b1_approx,
    })?;

    Ok(glue_intro(a_parts, b1))
}

fn delta_conjuncts(delta: &Face) -> Vec<Conjunct> {
    if delta.is_bottom() {
        Vec::new()
    } else {
        delta.conjuncts()
    }
}
