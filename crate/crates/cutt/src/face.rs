//! The face lattice of cofibrant propositions.
//!
//! A face is kept in canonical disjunctive normal form: either the top
//! face, or an antichain of consistent conjuncts, each conjunct a finite
//! map from directions to endpoints. The empty antichain is the bottom
//! face. A conjunct that constrains a direction to both endpoints is
//! inconsistent and deleted outright.

use std::collections::BTreeMap;
use std::fmt;

use crate::interval::{
    normalize, Direction, DirSubst, Endpoint, IntervalTerm, UnboundDirection,
};

/// A consistent conjunction of atomic constraints `(x = e)`.
///
/// Each conjunct doubles as a direction substitution: restricting by it
/// sends every constrained direction to its endpoint.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Conjunct {
    atoms: BTreeMap<Direction, Endpoint>,
}

impl Conjunct {
    fn new() -> Conjunct {
        Conjunct { atoms: BTreeMap::new() }
    }

    pub fn atom(d: Direction, e: Endpoint) -> Conjunct {
        let mut atoms = BTreeMap::new();
        atoms.insert(d, e);
        Conjunct { atoms }
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn atoms(&self) -> impl Iterator<Item = (&Direction, &Endpoint)> {
        self.atoms.iter()
    }

    pub fn constrains(&self, d: &Direction) -> bool {
        self.atoms.contains_key(d)
    }

    /// Merge two conjuncts; `None` when the union is inconsistent.
    fn merge(&self, other: &Conjunct) -> Option<Conjunct> {
        let mut atoms = self.atoms.clone();
        for (d, e) in &other.atoms {
            match atoms.insert(d.clone(), *e) {
                Some(prev) if prev != *e => return None,
                _ => {}
            }
        }
        Some(Conjunct { atoms })
    }

    fn extends(&self, other: &Conjunct) -> bool {
        other
            .atoms
            .iter()
            .all(|(d, e)| self.atoms.get(d) == Some(e))
    }

    /// View the conjunct as the substitution sending each constrained
    /// direction to its endpoint.
    pub fn as_subst(&self) -> DirSubst {
        let mut sigma = DirSubst::new();
        for (d, e) in &self.atoms {
            sigma.insert(d.clone(), e.as_interval());
        }
        sigma
    }
}

/// An element of the face lattice in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Face {
    Top,
    /// Join of consistent conjuncts, an antichain under extension.
    /// The empty join is the bottom face.
    Disj(Vec<Conjunct>),
}

/// Three-valued truth of a face at a generic stage.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FaceTruth {
    True,
    False,
    Neither,
}

impl Face {
    pub fn bottom() -> Face {
        Face::Disj(Vec::new())
    }

    pub fn is_top(&self) -> bool {
        matches!(self, Face::Top)
    }

    pub fn is_bottom(&self) -> bool {
        matches!(self, Face::Disj(cs) if cs.is_empty())
    }

    pub fn conjuncts(&self) -> Vec<Conjunct> {
        match self {
            Face::Top => vec![Conjunct::new()],
            Face::Disj(cs) => cs.clone(),
        }
    }

    fn from_conjuncts(mut cs: Vec<Conjunct>) -> Face {
        if cs.iter().any(|c| c.is_empty()) {
            return Face::Top;
        }
        cs.sort();
        cs.dedup();
        let keep: Vec<Conjunct> = cs
            .iter()
            .filter(|c| !cs.iter().any(|d| *c != d && c.extends(d)))
            .cloned()
            .collect();
        Face::Disj(keep)
    }

    pub fn free_dirs(&self) -> Vec<Direction> {
        let mut out = Vec::new();
        if let Face::Disj(cs) = self {
            for c in cs {
                for (d, _) in c.atoms() {
                    if !out.contains(d) {
                        out.push(d.clone());
                    }
                }
            }
        }
        out
    }
}

/// The face-lattice image of the constraint `r = e`.
pub fn face_eq(r: &IntervalTerm, e: Endpoint) -> Face {
    // (r = 1) maps each canonical clause of r to a conjunct; (r = 0) is
    // (~r = 1) via the involution.
    let t = match e {
        Endpoint::One => r.clone(),
        Endpoint::Zero => IntervalTerm::neg(r.clone()),
    };
    let dnf = normalize(&t);
    if dnf.is_top() {
        return Face::Top;
    }
    let mut conjuncts = Vec::new();
    'clause: for clause in dnf.clauses() {
        let mut c = Conjunct::new();
        for lit in clause {
            let ep = if lit.negated { Endpoint::Zero } else { Endpoint::One };
            match c.atoms.insert(lit.dir.clone(), ep) {
                Some(prev) if prev != ep => continue 'clause,
                _ => {}
            }
        }
        conjuncts.push(c);
    }
    Face::from_conjuncts(conjuncts)
}

/// Lattice join.
pub fn f_or(a: &Face, b: &Face) -> Face {
    match (a, b) {
        (Face::Top, _) | (_, Face::Top) => Face::Top,
        (Face::Disj(x), Face::Disj(y)) => {
            let mut cs = x.clone();
            cs.extend(y.iter().cloned());
            Face::from_conjuncts(cs)
        }
    }
}

/// Lattice meet.
pub fn f_and(a: &Face, b: &Face) -> Face {
    match (a, b) {
        (Face::Top, f) | (f, Face::Top) => f.clone(),
        (Face::Disj(x), Face::Disj(y)) => {
            let mut cs = Vec::new();
            for cx in x {
                for cy in y {
                    if let Some(c) = cx.merge(cy) {
                        cs.push(c);
                    }
                }
            }
            Face::from_conjuncts(cs)
        }
    }
}

/// Image of a face under the lattice homomorphism induced by a direction
/// substitution: each atom `(x = e)` maps to `face_eq(sigma(x), e)`.
/// Every constrained direction must be covered by `sigma`.
pub fn fsubst(phi: &Face, sigma: &DirSubst) -> Result<Face, UnboundDirection> {
    for d in phi.free_dirs() {
        if sigma.lookup(&d).is_none() {
            return Err(UnboundDirection(d));
        }
    }
    Ok(apply_face(phi, sigma))
}

/// Identity-extended face substitution, used for restriction internally.
pub fn apply_face(phi: &Face, sigma: &DirSubst) -> Face {
    match phi {
        Face::Top => Face::Top,
        Face::Disj(cs) => {
            let mut acc = Face::bottom();
            for c in cs {
                let mut conj = Face::Top;
                for (d, e) in c.atoms() {
                    let r = sigma
                        .lookup(d)
                        .cloned()
                        .unwrap_or_else(|| IntervalTerm::Dir(d.clone()));
                    conj = f_and(&conj, &face_eq(&r, *e));
                }
                acc = f_or(&acc, &conj);
            }
            acc
        }
    }
}

/// Universal quantification over a direction: the greatest face not
/// mentioning `x` that entails `phi`, computed by deleting every conjunct
/// constraining `x`.
pub fn forall_dir(x: &Direction, phi: &Face) -> Face {
    match phi {
        Face::Top => Face::Top,
        Face::Disj(cs) => Face::Disj(
            cs.iter()
                .filter(|c| !c.constrains(x))
                .cloned()
                .collect(),
        ),
    }
}

/// Decide a face at the current stage.
pub fn truth(phi: &Face) -> FaceTruth {
    if phi.is_top() {
        FaceTruth::True
    } else if phi.is_bottom() {
        FaceTruth::False
    } else {
        FaceTruth::Neither
    }
}

/// Entailment in the face lattice.
pub fn f_leq(a: &Face, b: &Face) -> bool {
    f_or(a, b) == *b
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Face::Top => write!(f, "(0 = 0)"),
            Face::Disj(cs) if cs.is_empty() => write!(f, "(0 = 1)"),
            Face::Disj(cs) => {
                let parts: Vec<String> = cs
                    .iter()
                    .map(|c| {
                        let atoms: Vec<String> = c
                            .atoms()
                            .map(|(d, e)| format!("({d} = {e})"))
                            .collect();
                        atoms.join(" /\\ ")
                    })
                    .collect();
                if parts.len() == 1 {
                    write!(f, "{}", parts[0])
                } else {
                    let wrapped: Vec<String> = parts
                        .iter()
                        .map(|p| {
                            if p.contains("/\\") {
                                format!("({p})")
                            } else {
                                p.clone()
                            }
                        })
                        .collect();
                    write!(f, "{}", wrapped.join(" \\/ "))
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::IntervalTerm as I;

    fn d(n: &str) -> Direction {
        Direction::named(n)
    }

    fn x_eq(n: &str, e: Endpoint) -> Face {
        face_eq(&I::Dir(d(n)), e)
    }

    #[test]
    fn face_eq_examples() {
        // (x = 1) is the single conjunct {x -> 1}
        let f = x_eq("x", Endpoint::One);
        assert_eq!(f.conjuncts().len(), 1);
        // (0 = 0) is top, (0 = 1) is bottom
        assert!(face_eq(&I::Zero, Endpoint::Zero).is_top());
        assert!(face_eq(&I::Zero, Endpoint::One).is_bottom());
    }

    #[test]
    fn meet_of_opposite_constraints_is_bottom() {
        let f = f_and(&x_eq("x", Endpoint::Zero), &x_eq("x", Endpoint::One));
        assert!(f.is_bottom());
    }

    #[test]
    fn join_idempotent_and_absorption() {
        let x0 = x_eq("x", Endpoint::Zero);
        let y1 = x_eq("y", Endpoint::One);
        assert_eq!(f_or(&x0, &x0), x0);
        assert_eq!(f_and(&x0, &f_or(&x0, &y1)), x0);
    }

    #[test]
    fn involution_constraint() {
        // (~x /\ y = 1)  =  (x = 0) /\ (y = 1)
        let t = I::meet(I::neg(I::Dir(d("x"))), I::Dir(d("y")));
        let f = face_eq(&t, Endpoint::One);
        let expected = f_and(&x_eq("x", Endpoint::Zero), &x_eq("y", Endpoint::One));
        assert_eq!(f, expected);
    }

    #[test]
    fn inconsistent_clause_maps_to_bottom() {
        // (x /\ ~x = 1) = bottom
        let t = I::meet(I::Dir(d("x")), I::neg(I::Dir(d("x"))));
        assert!(face_eq(&t, Endpoint::One).is_bottom());
    }

    #[test]
    fn fsubst_examples() {
        // (x = 1)[x := 1] = top
        let f = x_eq("x", Endpoint::One);
        let sigma = DirSubst::single(d("x"), I::One);
        assert!(fsubst(&f, &sigma).unwrap().is_top());

        // (x = 1)[x := y /\ z] = (y = 1) /\ (z = 1)
        let sigma = DirSubst::single(d("x"), I::meet(I::Dir(d("y")), I::Dir(d("z"))));
        let expected = f_and(&x_eq("y", Endpoint::One), &x_eq("z", Endpoint::One));
        assert_eq!(fsubst(&f, &sigma).unwrap(), expected);

        // (x = 0)[x := ~y] = (y = 1)
        let f = x_eq("x", Endpoint::Zero);
        let sigma = DirSubst::single(d("x"), I::neg(I::Dir(d("y"))));
        assert_eq!(fsubst(&f, &sigma).unwrap(), x_eq("y", Endpoint::One));
    }

    #[test]
    fn fsubst_scope_error() {
        let f = x_eq("x", Endpoint::One);
        let sigma = DirSubst::new();
        assert!(fsubst(&f, &sigma).is_err());
    }

    #[test]
    fn forall_examples() {
        let x = d("x");
        // forall x. (y = 1) = (y = 1)
        let y1 = x_eq("y", Endpoint::One);
        assert_eq!(forall_dir(&x, &y1), y1);
        // forall x. (x = 0) = bottom
        assert!(forall_dir(&x, &x_eq("x", Endpoint::Zero)).is_bottom());
        // forall x. ((x = 0) \/ (y = 1)) = (y = 1)
        let f = f_or(&x_eq("x", Endpoint::Zero), &y1);
        assert_eq!(forall_dir(&x, &f), y1);
    }

    #[test]
    fn truth_examples() {
        assert_eq!(truth(&Face::Top), FaceTruth::True);
        assert_eq!(truth(&Face::bottom()), FaceTruth::False);
        assert_eq!(truth(&x_eq("x", Endpoint::Zero)), FaceTruth::Neither);
    }

    #[test]
    fn display_roundtrip_shape() {
        let f = f_or(
            &f_and(&x_eq("x", Endpoint::Zero), &x_eq("y", Endpoint::One)),
            &x_eq("z", Endpoint::Zero),
        );
        assert_eq!(f.to_string(), "((x = 0) /\\ (y = 1)) \\/ (z = 0)");
    }
}
