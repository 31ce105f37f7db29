//! Pretty printer producing re-parseable concrete syntax.

use crate::syntax::*;

#[derive(Clone, Copy, PartialEq, PartialOrd)]
enum Prec {
    Term = 0,
    Product = 1,
    PApp = 2,
    App = 3,
    Atom = 4,
}

pub fn print_term(t: &Term) -> String {
    term(t, Prec::Term)
}

pub fn print_iexpr(r: &IExpr) -> String {
    iexpr(r, 0)
}

pub fn print_fexpr(f: &FExpr) -> String {
    fexpr(f, 0)
}

fn paren(s: String, needed: bool) -> String {
    if needed {
        format!("({s})")
    } else {
        s
    }
}

fn term(t: &Term, p: Prec) -> String {
    use TermKind::*;
    match &t.kind {
        Var(x) => x.to_string(),
        U => "U".to_string(),
        Nat => "Nat".to_string(),
        Zero => "zero".to_string(),
        Pi(x, a, b) => {
            let s = if &**x == "_" {
                format!("{} -> {}", term(a, Prec::Product), term(b, Prec::Term))
            } else {
                format!("({} : {}) -> {}", x, term(a, Prec::Term), term(b, Prec::Term))
            };
            paren(s, p > Prec::Term)
        }
        Sigma(x, a, b) => {
            if &**x == "_" {
                let s = format!("{} * {}", term(a, Prec::PApp), term(b, Prec::Product));
                paren(s, p > Prec::Product)
            } else {
                let s = format!("({} : {}) * {}", x, term(a, Prec::Term), term(b, Prec::Product));
                paren(s, p > Prec::Term)
            }
        }
        Lam(x, body) => {
            let mut names = vec![x.clone()];
            let mut b = body;
            while let Lam(y, next) = &b.kind {
                names.push(y.clone());
                b = next;
            }
            let s = format!(
                "\\{}. {}",
                names.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(" "),
                term(b, Prec::Term)
            );
            paren(s, p > Prec::Term)
        }
        PLam(x, body) => {
            let mut names = vec![x.clone()];
            let mut b = body;
            while let PLam(y, next) = &b.kind {
                names.push(y.clone());
                b = next;
            }
            let s = format!(
                "<{}> {}",
                names.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(" "),
                term(b, Prec::Term)
            );
            paren(s, p > Prec::Term)
        }
        App(f, a) => {
            let s = format!("{} {}", term(f, Prec::App), term(a, Prec::Atom));
            paren(s, p > Prec::App)
        }
        PApp(f, r) => {
            let s = format!("{} @ {}", term(f, Prec::PApp), iexpr(r, 1));
            paren(s, p > Prec::PApp)
        }
        Pair(a, b) => format!("({}, {})", term(a, Prec::Term), term(b, Prec::Term)),
        Fst(a) => format!("{}.1", term(a, Prec::Atom)),
        Snd(a) => format!("{}.2", term(a, Prec::Atom)),
        Suc(a) => paren(format!("suc {}", term(a, Prec::Atom)), p > Prec::App),
        NatRec(m, z, s, n) => paren(
            format!(
                "natrec {} {} {} {}",
                term(m, Prec::Atom),
                term(z, Prec::Atom),
                term(s, Prec::Atom),
                term(n, Prec::Atom)
            ),
            p > Prec::App,
        ),
        Sum(a, b) => paren(
            format!("Sum {} {}", term(a, Prec::Atom), term(b, Prec::Atom)),
            p > Prec::App,
        ),
        Inl(a) => paren(format!("inl {}", term(a, Prec::Atom)), p > Prec::App),
        Inr(a) => paren(format!("inr {}", term(a, Prec::Atom)), p > Prec::App),
        Case(m, l, r, s) => paren(
            format!(
                "case {} {} {} {}",
                term(m, Prec::Atom),
                term(l, Prec::Atom),
                term(r, Prec::Atom),
                term(s, Prec::Atom)
            ),
            p > Prec::App,
        ),
        Path(a, x, y) => paren(
            format!(
                "Path {} {} {}",
                term(a, Prec::Atom),
                term(x, Prec::Atom),
                term(y, Prec::Atom)
            ),
            p > Prec::App,
        ),
        Id(a, x, y) => paren(
            format!(
                "Id {} {} {}",
                term(a, Prec::Atom),
                term(x, Prec::Atom),
                term(y, Prec::Atom)
            ),
            p > Prec::App,
        ),
        IdPair(q, f) => paren(
            format!("idPair {} {}", term(q, Prec::Atom), fexpr_atom(f)),
            p > Prec::App,
        ),
        Refl(a) => paren(format!("refl {}", term(a, Prec::Atom)), p > Prec::App),
        IdJ(b, base, target) => paren(
            format!(
                "idJ {} {} {}",
                term(b, Prec::Atom),
                term(base, Prec::Atom),
                term(target, Prec::Atom)
            ),
            p > Prec::App,
        ),
        Comp { e, dir, line, sys, cap } => paren(
            format!(
                "comp {} (<{}> {}) {} {}",
                e,
                dir,
                term(line, Prec::Term),
                system(sys),
                term(cap, Prec::Atom)
            ),
            p > Prec::App,
        ),
        Fill { e, dir, line, sys, cap, at } => paren(
            format!(
                "fill {} (<{}> {}) {} {} {}",
                e,
                dir,
                term(line, Prec::Term),
                system(sys),
                term(cap, Prec::Atom),
                iexpr(at, 2)
            ),
            p > Prec::App,
        ),
        Glue(b, entries) => {
            let parts: Vec<String> = entries
                .iter()
                .map(|g| {
                    format!(
                        "{} -> ({}, {}, {})",
                        fexpr(&g.face, 0),
                        term(&g.ty, Prec::Term),
                        term(&g.fun, Prec::Term),
                        term(&g.equiv, Prec::Term)
                    )
                })
                .collect();
            paren(
                format!("Glue {} [ {} ]", term(b, Prec::Atom), parts.join(", ")),
                p > Prec::App,
            )
        }
        GlueElem(sys, b) => paren(
            format!("glue {} {}", system(sys), term(b, Prec::Atom)),
            p > Prec::App,
        ),
        Unglue(g) => paren(format!("unglue {}", term(g, Prec::Atom)), p > Prec::App),
    }
}

fn system(sys: &[SysEntry]) -> String {
    if sys.is_empty() {
        return "[]".to_string();
    }
    let parts: Vec<String> = sys
        .iter()
        .map(|s| {
            let body = match &s.dir {
                Some(d) => format!("<{}> {}", d, term(&s.body, Prec::Term)),
                None => term(&s.body, Prec::Term),
            };
            format!("{} -> {}", fexpr(&s.face, 0), body)
        })
        .collect();
    format!("[ {} ]", parts.join(", "))
}

// Interval precedence: 0 join, 1 meet, 2 atom.
fn iexpr(r: &IExpr, p: u8) -> String {
    use IExprKind::*;
    match &r.kind {
        Zero => "0".to_string(),
        One => "1".to_string(),
        Var(x) => x.to_string(),
        Neg(a) => format!("~{}", iexpr(a, 2)),
        Meet(a, b) => {
            let s = format!("{} /\\ {}", iexpr(a, 2), iexpr(b, 1));
            if p > 1 {
                format!("({s})")
            } else {
                s
            }
        }
        Join(a, b) => {
            let s = format!("{} \\/ {}", iexpr(a, 1), iexpr(b, 0));
            if p > 0 {
                format!("({s})")
            } else {
                s
            }
        }
    }
}

// Face precedence: 0 or/forall, 1 and, 2 atom.
fn fexpr(f: &FExpr, p: u8) -> String {
    use FExprKind::*;
    match &f.kind {
        Eq(r, e) => format!("({} = {})", iexpr(r, 0), e),
        And(a, b) => {
            let s = format!("{} /\\ {}", fexpr(a, 2), fexpr(b, 1));
            if p > 1 {
                format!("({s})")
            } else {
                s
            }
        }
        Or(a, b) => {
            let s = format!("{} \\/ {}", fexpr(a, 1), fexpr(b, 0));
            if p > 0 {
                format!("({s})")
            } else {
                s
            }
        }
        Forall(x, body) => {
            let s = format!("forall {}. {}", x, fexpr(body, 0));
            if p > 0 {
                format!("({s})")
            } else {
                s
            }
        }
    }
}

fn fexpr_atom(f: &FExpr) -> String {
    match &f.kind {
        FExprKind::Eq(_, _) => fexpr(f, 2),
        _ => format!("({})", fexpr(f, 0)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_term;

    fn roundtrip(src: &str) {
        let t1 = parse_term(src).unwrap();
        let printed = print_term(&t1);
        let t2 = parse_term(&printed)
            .unwrap_or_else(|e| panic!("re-parse of `{printed}` failed: {e}"));
        assert!(term_eq(&t1, &t2), "round trip changed `{src}` -> `{printed}`");
        assert_eq!(printed, print_term(&t2));
    }

    #[test]
    fn roundtrips() {
        for src in [
            "\\A a. a",
            "(A : U) -> A -> A",
            "(x : A) * Path A x y",
            "<i> p @ i /\\ j",
            "suc (suc zero)",
            "natrec (\\n. Nat) zero (\\n ih. suc ih) two",
            "comp 0 (<i> Nat) [ (x = 0) -> <j> zero ] zero",
            "fill 1 (<i> P @ i) [ (x = 0) /\\ (y = 1) -> <j> a ] a (x \\/ ~y)",
            "Glue B [ (x = 0) -> (A, f, pf) ]",
            "glue [ (x = 0) -> a ] b",
            "idPair p ((x = 0) \\/ (y = 1))",
            "idJ B b (refl a)",
            "case (\\s. Nat) (\\a. zero) (\\b. suc zero) (inl zero)",
            "(f a).1 (g b).2",
            "unglue (glue [ (x = 0) -> a ] b)",
        ] {
            roundtrip(src);
        }
    }
}
