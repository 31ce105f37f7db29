//! Core term language and surface AST.

use std::fmt;
use std::rc::Rc;

use crate::interval::{Endpoint, Name};

/// Byte range into a source file.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct Span {
    pub start: u32,
    pub end: u32,
}

impl Span {
    pub fn new(start: u32, end: u32) -> Span {
        Span { start, end }
    }

    pub fn merge(self, other: Span) -> Span {
        Span {
            start: self.start.min(other.start),
            end: self.end.max(other.end),
        }
    }
}

/// Interval expression as written in the source.
#[derive(Clone, PartialEq, Debug)]
pub struct IExpr {
    pub span: Span,
    pub kind: IExprKind,
}

#[derive(Clone, PartialEq, Debug)]
pub enum IExprKind {
    Zero,
    One,
    Var(Name),
    Neg(Rc<IExpr>),
    Meet(Rc<IExpr>, Rc<IExpr>),
    Join(Rc<IExpr>, Rc<IExpr>),
}

/// Face expression as written in the source.
#[derive(Clone, PartialEq, Debug)]
pub struct FExpr {
    pub span: Span,
    pub kind: FExprKind,
}

#[derive(Clone, PartialEq, Debug)]
pub enum FExprKind {
    Eq(IExpr, Endpoint),
    And(Rc<FExpr>, Rc<FExpr>),
    Or(Rc<FExpr>, Rc<FExpr>),
    Forall(Name, Rc<FExpr>),
}

/// A system entry: face, optional bound direction for the branch, body.
#[derive(Clone, PartialEq, Debug)]
pub struct SysEntry {
    pub face: FExpr,
    pub dir: Option<Name>,
    pub body: Term,
}

/// A partial-type entry of a glueing: face plus (type, function, proof).
#[derive(Clone, PartialEq, Debug)]
pub struct GlueEntry {
    pub face: FExpr,
    pub ty: Term,
    pub fun: Term,
    pub equiv: Term,
}

#[derive(Clone, PartialEq, Debug)]
pub struct Term {
    pub span: Span,
    pub kind: TermKind,
}

impl Term {
    pub fn new(span: Span, kind: TermKind) -> Term {
        Term { span, kind }
    }
}

#[derive(Clone, PartialEq, Debug)]
pub enum TermKind {
    Var(Name),
    U,
    Pi(Name, Rc<Term>, Rc<Term>),
    Lam(Name, Rc<Term>),
    App(Rc<Term>, Rc<Term>),
    Sigma(Name, Rc<Term>, Rc<Term>),
    Pair(Rc<Term>, Rc<Term>),
    Fst(Rc<Term>),
    Snd(Rc<Term>),
    Nat,
    Zero,
    Suc(Rc<Term>),
    /// natrec P z s n
    NatRec(Rc<Term>, Rc<Term>, Rc<Term>, Rc<Term>),
    Sum(Rc<Term>, Rc<Term>),
    Inl(Rc<Term>),
    Inr(Rc<Term>),
    /// case P l r s
    Case(Rc<Term>, Rc<Term>, Rc<Term>, Rc<Term>),
    Path(Rc<Term>, Rc<Term>, Rc<Term>),
    /// <i> t
    PLam(Name, Rc<Term>),
    /// t @ r
    PApp(Rc<Term>, IExpr),
    Id(Rc<Term>, Rc<Term>, Rc<Term>),
    /// idPair p phi
    IdPair(Rc<Term>, FExpr),
    Refl(Rc<Term>),
    /// idJ B b e
    IdJ(Rc<Term>, Rc<Term>, Rc<Term>),
    /// comp e (<i> A) [sys] cap
    Comp {
        e: Endpoint,
        dir: Name,
        line: Rc<Term>,
        sys: Vec<SysEntry>,
        cap: Rc<Term>,
    },
    /// fill e (<i> A) [sys] cap r
    Fill {
        e: Endpoint,
        dir: Name,
        line: Rc<Term>,
        sys: Vec<SysEntry>,
        cap: Rc<Term>,
        at: IExpr,
    },
    /// Glue B [phi -> (A, f, pf)]
    Glue(Rc<Term>, Vec<GlueEntry>),
    /// glue [phi -> a] b
    GlueElem(Vec<SysEntry>, Rc<Term>),
    Unglue(Rc<Term>),
}

/// A top-level definition `def name : ty = body`.
#[derive(Clone, PartialEq, Debug)]
pub struct Def {
    pub span: Span,
    pub name: Name,
    pub ty: Term,
    pub body: Term,
    /// Comment lines immediately preceding the definition.
    pub doc: String,
}

/// Structural equality of terms ignoring spans, used by round-trip tests.
pub fn term_eq(a: &Term, b: &Term) -> bool {
    use TermKind::*;
    match (&a.kind, &b.kind) {
        (Var(x), Var(y)) => x == y,
        (U, U) | (Nat, Nat) | (Zero, Zero) => true,
        (Pi(x, a1, b1), Pi(y, a2, b2)) | (Sigma(x, a1, b1), Sigma(y, a2, b2)) => {
            x == y && term_eq(a1, a2) && term_eq(b1, b2)
        }
        (Lam(x, t1), Lam(y, t2)) | (PLam(x, t1), PLam(y, t2)) => x == y && term_eq(t1, t2),
        (App(f1, a1), App(f2, a2)) | (Pair(f1, a1), Pair(f2, a2)) | (Sum(f1, a1), Sum(f2, a2)) => {
            term_eq(f1, f2) && term_eq(a1, a2)
        }
        (Fst(t1), Fst(t2)) | (Snd(t1), Snd(t2)) | (Suc(t1), Suc(t2)) | (Inl(t1), Inl(t2))
        | (Inr(t1), Inr(t2)) | (Refl(t1), Refl(t2)) | (Unglue(t1), Unglue(t2)) => term_eq(t1, t2),
        (NatRec(a1, b1, c1, d1), NatRec(a2, b2, c2, d2))
        | (Case(a1, b1, c1, d1), Case(a2, b2, c2, d2)) => {
            term_eq(a1, a2) && term_eq(b1, b2) && term_eq(c1, c2) && term_eq(d1, d2)
        }
        (Path(a1, b1, c1), Path(a2, b2, c2))
        | (Id(a1, b1, c1), Id(a2, b2, c2))
        | (IdJ(a1, b1, c1), IdJ(a2, b2, c2)) => {
            term_eq(a1, a2) && term_eq(b1, b2) && term_eq(c1, c2)
        }
        (PApp(t1, r1), PApp(t2, r2)) => term_eq(t1, t2) && iexpr_eq(r1, r2),
        (IdPair(t1, f1), IdPair(t2, f2)) => term_eq(t1, t2) && fexpr_eq(f1, f2),
        (
            Comp { e: e1, dir: d1, line: l1, sys: s1, cap: c1 },
            Comp { e: e2, dir: d2, line: l2, sys: s2, cap: c2 },
        ) => {
            e1 == e2
                && d1 == d2
                && term_eq(l1, l2)
                && sys_eq(s1, s2)
                && term_eq(c1, c2)
        }
        (
            Fill { e: e1, dir: d1, line: l1, sys: s1, cap: c1, at: r1 },
            Fill { e: e2, dir: d2, line: l2, sys: s2, cap: c2, at: r2 },
        ) => {
            e1 == e2
                && d1 == d2
                && term_eq(l1, l2)
                && sys_eq(s1, s2)
                && term_eq(c1, c2)
                && iexpr_eq(r1, r2)
        }
        (Glue(b1, p1), Glue(b2, p2)) => {
            term_eq(b1, b2)
                && p1.len() == p2.len()
                && p1.iter().zip(p2).all(|(x, y)| {
                    fexpr_eq(&x.face, &y.face)
                        && term_eq(&x.ty, &y.ty)
                        && term_eq(&x.fun, &y.fun)
                        && term_eq(&x.equiv, &y.equiv)
                })
        }
        (GlueElem(s1, b1), GlueElem(s2, b2)) => sys_eq(s1, s2) && term_eq(b1, b2),
        _ => false,
    }
}

fn sys_eq(a: &[SysEntry], b: &[SysEntry]) -> bool {
    a.len() == b.len()
        && a.iter().zip(b).all(|(x, y)| {
            fexpr_eq(&x.face, &y.face) && x.dir == y.dir && term_eq(&x.body, &y.body)
        })
}

pub fn iexpr_eq(a: &IExpr, b: &IExpr) -> bool {
    use IExprKind::*;
    match (&a.kind, &b.kind) {
        (Zero, Zero) | (One, One) => true,
        (Var(x), Var(y)) => x == y,
        (Neg(x), Neg(y)) => iexpr_eq(x, y),
        (Meet(x1, y1), Meet(x2, y2)) | (Join(x1, y1), Join(x2, y2)) => {
            iexpr_eq(x1, x2) && iexpr_eq(y1, y2)
        }
        _ => false,
    }
}

pub fn fexpr_eq(a: &FExpr, b: &FExpr) -> bool {
    use FExprKind::*;
    match (&a.kind, &b.kind) {
        (Eq(r1, e1), Eq(r2, e2)) => iexpr_eq(r1, r2) && e1 == e2,
        (And(x1, y1), And(x2, y2)) | (Or(x1, y1), Or(x2, y2)) => {
            fexpr_eq(x1, x2) && fexpr_eq(y1, y2)
        }
        (Forall(x, f1), Forall(y, f2)) => x == y && fexpr_eq(f1, f2),
        _ => false,
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::printer::print_term(self))
    }
}
