//! The free de Morgan algebra over a finite set of directions.
//!
//! Interval terms are built from the endpoints `0` and `1`, generators
//! (directions), involution `~`, meet `/\` and join `\/`. The canonical
//! form is a join of meets of literals kept as an antichain under clause
//! inclusion, which makes equality a structural comparison.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::rc::Rc;
use std::sync::atomic::{AtomicU64, Ordering};

pub type Name = Rc<str>;

static FRESH_COUNTER: AtomicU64 = AtomicU64::new(1);

/// Draw a fresh generation number. Fresh directions and variables are
/// globally unique, so substitution never needs capture-avoiding renames.
pub fn next_gen() -> u64 {
    FRESH_COUNTER.fetch_add(1, Ordering::Relaxed)
}

/// A direction (dimension name). User-written directions have `gen = 0`;
/// generated ones carry a nonzero freshness counter and can never collide
/// with names in scope.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Direction {
    pub name: Name,
    pub gen: u64,
}

impl Direction {
    pub fn named(name: &str) -> Direction {
        Direction { name: name.into(), gen: 0 }
    }

    pub fn fresh(hint: &str) -> Direction {
        Direction { name: hint.into(), gen: next_gen() }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gen == 0 {
            write!(f, "{}", self.name)
        } else {
            write!(f, "{}%{}", self.name, self.gen)
        }
    }
}

impl fmt::Debug for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// One of the two interval endpoints.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Endpoint {
    Zero,
    One,
}

impl Endpoint {
    pub fn flip(self) -> Endpoint {
        match self {
            Endpoint::Zero => Endpoint::One,
            Endpoint::One => Endpoint::Zero,
        }
    }

    pub fn as_interval(self) -> IntervalTerm {
        match self {
            Endpoint::Zero => IntervalTerm::Zero,
            Endpoint::One => IntervalTerm::One,
        }
    }
}

impl fmt::Display for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Endpoint::Zero => write!(f, "0"),
            Endpoint::One => write!(f, "1"),
        }
    }
}

/// An element of the free de Morgan algebra dM(I).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum IntervalTerm {
    Zero,
    One,
    Dir(Direction),
    Neg(Rc<IntervalTerm>),
    Meet(Rc<IntervalTerm>, Rc<IntervalTerm>),
    Join(Rc<IntervalTerm>, Rc<IntervalTerm>),
}

impl IntervalTerm {
    pub fn dir(d: Direction) -> IntervalTerm {
        IntervalTerm::Dir(d)
    }

    pub fn neg(t: IntervalTerm) -> IntervalTerm {
        IntervalTerm::Neg(Rc::new(t))
    }

    pub fn meet(a: IntervalTerm, b: IntervalTerm) -> IntervalTerm {
        IntervalTerm::Meet(Rc::new(a), Rc::new(b))
    }

    pub fn join(a: IntervalTerm, b: IntervalTerm) -> IntervalTerm {
        IntervalTerm::Join(Rc::new(a), Rc::new(b))
    }

    /// Connection indexed by an endpoint: meet when composing from 0,
    /// join when composing from 1.
    pub fn connect(e: Endpoint, a: IntervalTerm, b: IntervalTerm) -> IntervalTerm {
        match e {
            Endpoint::Zero => IntervalTerm::meet(a, b),
            Endpoint::One => IntervalTerm::join(a, b),
        }
    }

    pub fn free_dirs(&self) -> BTreeSet<Direction> {
        let mut out = BTreeSet::new();
        self.collect_dirs(&mut out);
        out
    }

    fn collect_dirs(&self, out: &mut BTreeSet<Direction>) {
        match self {
            IntervalTerm::Zero | IntervalTerm::One => {}
            IntervalTerm::Dir(d) => {
                out.insert(d.clone());
            }
            IntervalTerm::Neg(t) => t.collect_dirs(out),
            IntervalTerm::Meet(a, b) | IntervalTerm::Join(a, b) => {
                a.collect_dirs(out);
                b.collect_dirs(out);
            }
        }
    }
}

/// A literal: a direction or its involution.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Literal {
    pub dir: Direction,
    pub negated: bool,
}

/// A meet of literals. The empty clause denotes 1.
pub type Clause = BTreeSet<Literal>;

/// Canonical disjunctive normal form: an antichain of clauses under
/// inclusion, denoting the join of their meets. The empty set of clauses
/// is 0 and the singleton empty clause is 1.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct IntervalDnf {
    clauses: BTreeSet<Clause>,
}

impl IntervalDnf {
    pub fn bottom() -> IntervalDnf {
        IntervalDnf { clauses: BTreeSet::new() }
    }

    pub fn top() -> IntervalDnf {
        let mut clauses = BTreeSet::new();
        clauses.insert(Clause::new());
        IntervalDnf { clauses }
    }

    pub fn literal(dir: Direction, negated: bool) -> IntervalDnf {
        let mut clause = Clause::new();
        clause.insert(Literal { dir, negated });
        let mut clauses = BTreeSet::new();
        clauses.insert(clause);
        IntervalDnf { clauses }
    }

    pub fn is_bottom(&self) -> bool {
        self.clauses.is_empty()
    }

    pub fn is_top(&self) -> bool {
        self.clauses.len() == 1 && self.clauses.iter().next().unwrap().is_empty()
    }

    pub fn clauses(&self) -> impl Iterator<Item = &Clause> {
        self.clauses.iter()
    }

    /// Rebuild a term denoting this canonical form.
    pub fn as_term(&self) -> IntervalTerm {
        if self.is_bottom() {
            return IntervalTerm::Zero;
        }
        let mut term: Option<IntervalTerm> = None;
        for clause in &self.clauses {
            let mut conj: Option<IntervalTerm> = None;
            for lit in clause {
                let l = if lit.negated {
                    IntervalTerm::neg(IntervalTerm::Dir(lit.dir.clone()))
                } else {
                    IntervalTerm::Dir(lit.dir.clone())
                };
                conj = Some(match conj {
                    None => l,
                    Some(c) => IntervalTerm::meet(c, l),
                });
            }
            let c = conj.unwrap_or(IntervalTerm::One);
            term = Some(match term {
                None => c,
                Some(t) => IntervalTerm::join(t, c),
            });
        }
        term.unwrap_or(IntervalTerm::Zero)
    }

    fn from_clauses(clauses: BTreeSet<Clause>) -> IntervalDnf {
        IntervalDnf { clauses: antichain(clauses) }
    }

    fn join(&self, other: &IntervalDnf) -> IntervalDnf {
        let mut clauses = self.clauses.clone();
        clauses.extend(other.clauses.iter().cloned());
        IntervalDnf::from_clauses(clauses)
    }

    fn meet(&self, other: &IntervalDnf) -> IntervalDnf {
        let mut clauses = BTreeSet::new();
        for a in &self.clauses {
            for b in &other.clauses {
                let mut c = a.clone();
                c.extend(b.iter().cloned());
                clauses.insert(c);
            }
        }
        IntervalDnf::from_clauses(clauses)
    }

    fn negate(&self) -> IntervalDnf {
        // De Morgan: the involution of a join of meets is a meet of joins
        // of flipped literals, redistributed into a join of meets.
        let mut acc = IntervalDnf::top();
        for clause in &self.clauses {
            let mut row = IntervalDnf::bottom();
            for lit in clause {
                row = row.join(&IntervalDnf::literal(lit.dir.clone(), !lit.negated));
            }
            acc = acc.meet(&row);
        }
        acc
    }
}

/// Drop every clause that includes another clause.
fn antichain(clauses: BTreeSet<Clause>) -> BTreeSet<Clause> {
    clauses
        .iter()
        .filter(|c| {
            !clauses
                .iter()
                .any(|d| d != *c && d.is_subset(c))
        })
        .cloned()
        .collect()
}

/// Canonicalise an interval term.
///
/// The result is the unique antichain normal form; `normalize` is
/// idempotent and preserves the denotation in every de Morgan algebra.
pub fn normalize(t: &IntervalTerm) -> IntervalDnf {
    match t {
        IntervalTerm::Zero => IntervalDnf::bottom(),
        IntervalTerm::One => IntervalDnf::top(),
        IntervalTerm::Dir(d) => IntervalDnf::literal(d.clone(), false),
        IntervalTerm::Neg(u) => normalize(u).negate(),
        IntervalTerm::Meet(a, b) => normalize(a).meet(&normalize(b)),
        IntervalTerm::Join(a, b) => normalize(a).join(&normalize(b)),
    }
}

/// Decidable equality in the free de Morgan algebra.
pub fn iequal(a: &IntervalTerm, b: &IntervalTerm) -> bool {
    normalize(a) == normalize(b)
}

/// An unbound direction encountered during substitution.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UnboundDirection(pub Direction);

impl fmt::Display for UnboundDirection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unbound direction `{}`", self.0)
    }
}

impl std::error::Error for UnboundDirection {}

/// A finite map of directions to interval terms, the morphism part of the
/// cube category. `apply` extends the map by the identity on directions it
/// does not mention; `isubst` instead demands full coverage.
#[derive(Clone, Default, PartialEq, Debug)]
pub struct DirSubst {
    map: BTreeMap<Direction, IntervalTerm>,
}

impl DirSubst {
    pub fn new() -> DirSubst {
        DirSubst { map: BTreeMap::new() }
    }

    pub fn single(d: Direction, t: IntervalTerm) -> DirSubst {
        let mut s = DirSubst::new();
        s.insert(d, t);
        s
    }

    pub fn insert(&mut self, d: Direction, t: IntervalTerm) {
        self.map.insert(d, t);
    }

    pub fn lookup(&self, d: &Direction) -> Option<&IntervalTerm> {
        self.map.get(d)
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Direction, &IntervalTerm)> {
        self.map.iter()
    }

    /// The unique homomorphism extension, identity outside the map.
    pub fn apply(&self, t: &IntervalTerm) -> IntervalTerm {
        match t {
            IntervalTerm::Zero => IntervalTerm::Zero,
            IntervalTerm::One => IntervalTerm::One,
            IntervalTerm::Dir(d) => match self.map.get(d) {
                Some(r) => r.clone(),
                None => t.clone(),
            },
            IntervalTerm::Neg(u) => IntervalTerm::neg(self.apply(u)),
            IntervalTerm::Meet(a, b) => IntervalTerm::meet(self.apply(a), self.apply(b)),
            IntervalTerm::Join(a, b) => IntervalTerm::join(self.apply(a), self.apply(b)),
        }
    }

    /// Compose with another substitution: `self.then(&tau)` acts as
    /// applying `self` first and `tau` afterwards.
    pub fn then(&self, tau: &DirSubst) -> DirSubst {
        let mut out = tau.clone();
        for (d, t) in &self.map {
            out.map.insert(d.clone(), tau.apply(t));
        }
        out
    }
}

/// Substitution along a cube-category morphism. Every free direction of
/// `t` must be covered by `sigma`.
pub fn isubst(t: &IntervalTerm, sigma: &DirSubst) -> Result<IntervalTerm, UnboundDirection> {
    for d in t.free_dirs() {
        if sigma.lookup(&d).is_none() {
            return Err(UnboundDirection(d));
        }
    }
    Ok(sigma.apply(t))
}

/// Render an interval term from its canonical form, with `~` applied to
/// generators, `/\` binding tighter than `\/`.
pub fn display_interval(t: &IntervalTerm) -> String {
    let dnf = normalize(t);
    if dnf.is_bottom() {
        return "0".to_string();
    }
    if dnf.is_top() {
        return "1".to_string();
    }
    let clause_strs: Vec<String> = dnf
        .clauses()
        .map(|clause| {
            let lits: Vec<String> = clause
                .iter()
                .map(|l| {
                    if l.negated {
                        format!("~{}", l.dir)
                    } else {
                        l.dir.to_string()
                    }
                })
                .collect();
            if lits.len() == 1 {
                lits[0].clone()
            } else {
                lits.join(" /\\ ")
            }
        })
        .collect();
    if clause_strs.len() == 1 {
        clause_strs[0].clone()
    } else {
        clause_strs
            .iter()
            .map(|c| {
                if c.contains("/\\") {
                    format!("({c})")
                } else {
                    c.clone()
                }
            })
            .collect::<Vec<_>>()
            .join(" \\/ ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(n: &str) -> Direction {
        Direction::named(n)
    }

    fn var(n: &str) -> IntervalTerm {
        IntervalTerm::Dir(d(n))
    }

    #[test]
    fn connection_laws() {
        use IntervalTerm::*;
        let x = var("x");
        assert!(iequal(&IntervalTerm::meet(Zero, x.clone()), &Zero));
        assert!(iequal(&IntervalTerm::meet(One, x.clone()), &x));
        assert!(iequal(&IntervalTerm::meet(x.clone(), One), &x));
        assert!(iequal(&IntervalTerm::join(Zero, x.clone()), &x));
        assert!(iequal(&IntervalTerm::join(One, x.clone()), &One));
    }

    #[test]
    fn involution_is_involutive() {
        let x = var("x");
        let nn = IntervalTerm::neg(IntervalTerm::neg(x.clone()));
        assert!(iequal(&nn, &x));
    }

    #[test]
    fn de_morgan_dual_join() {
        // x \/ y  =  ~(~x /\ ~y)
        let lhs = IntervalTerm::join(var("x"), var("y"));
        let rhs = IntervalTerm::neg(IntervalTerm::meet(
            IntervalTerm::neg(var("x")),
            IntervalTerm::neg(var("y")),
        ));
        assert!(iequal(&lhs, &rhs));
    }

    #[test]
    fn meet_with_involution_does_not_collapse() {
        // x /\ ~x is a genuine two-literal clause, not 0.
        let t = IntervalTerm::meet(var("x"), IntervalTerm::neg(var("x")));
        assert!(!iequal(&t, &IntervalTerm::Zero));
        let dnf = normalize(&t);
        assert_eq!(dnf.clauses().count(), 1);
        assert_eq!(dnf.clauses().next().unwrap().len(), 2);
    }

    #[test]
    fn absorption() {
        // x \/ (x /\ y) = x
        let t = IntervalTerm::join(var("x"), IntervalTerm::meet(var("x"), var("y")));
        assert!(iequal(&t, &var("x")));
    }

    #[test]
    fn commutativity() {
        let a = IntervalTerm::meet(var("x"), var("y"));
        let b = IntervalTerm::meet(var("y"), var("x"));
        assert!(iequal(&a, &b));
    }

    #[test]
    fn normalize_idempotent() {
        let t = IntervalTerm::neg(IntervalTerm::meet(
            var("x"),
            IntervalTerm::join(var("y"), IntervalTerm::neg(var("x"))),
        ));
        let once = normalize(&t);
        let twice = normalize(&once.as_term());
        assert_eq!(once, twice);
    }

    #[test]
    fn subst_examples() {
        // (x /\ y)[x := 0] = 0
        let t = IntervalTerm::meet(var("x"), var("y"));
        let mut sigma = DirSubst::single(d("x"), IntervalTerm::Zero);
        sigma.insert(d("y"), var("y"));
        let r = isubst(&t, &sigma).unwrap();
        assert!(iequal(&r, &IntervalTerm::Zero));

        // x[x := ~y] = ~y
        let sigma = DirSubst::single(d("x"), IntervalTerm::neg(var("y")));
        let r = isubst(&var("x"), &sigma).unwrap();
        assert!(iequal(&r, &IntervalTerm::neg(var("y"))));

        // (~x)[x := y /\ z] = ~y \/ ~z
        let sigma = DirSubst::single(d("x"), IntervalTerm::meet(var("y"), var("z")));
        let r = isubst(&IntervalTerm::neg(var("x")), &sigma).unwrap();
        let expected = IntervalTerm::join(
            IntervalTerm::neg(var("y")),
            IntervalTerm::neg(var("z")),
        );
        assert!(iequal(&r, &expected));
    }

    #[test]
    fn subst_scope_error() {
        let t = IntervalTerm::meet(var("x"), var("y"));
        let sigma = DirSubst::single(d("x"), IntervalTerm::Zero);
        assert_eq!(isubst(&t, &sigma), Err(UnboundDirection(d("y"))));
    }

    #[test]
    fn subst_commutes_with_normalize() {
        let t = IntervalTerm::neg(IntervalTerm::meet(var("x"), var("y")));
        let sigma = {
            let mut s = DirSubst::single(d("x"), IntervalTerm::join(var("u"), var("v")));
            s.insert(d("y"), IntervalTerm::neg(var("u")));
            s
        };
        let direct = normalize(&sigma.apply(&t));
        let via_canonical = normalize(&sigma.apply(&normalize(&t).as_term()));
        assert_eq!(direct, via_canonical);
    }

    #[test]
    fn display_is_reparseable_shape() {
        let t = IntervalTerm::join(
            IntervalTerm::meet(var("x"), IntervalTerm::neg(var("y"))),
            var("z"),
        );
        assert_eq!(display_interval(&t), "(x /\\ ~y) \\/ z");
    }
}
