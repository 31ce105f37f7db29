//! End-to-end checks of the kernel: parsing, type checking, evaluation,
//! composition, filling, identity elimination and glueing.

use cutt::check::{check_defs, convert, Defs, ErrorKind};
use cutt::parse::parse_file;
use cutt::printer::print_term;
use cutt::readback::{prettify, readback};

fn load(src: &str) -> Defs {
    let mut defs = Defs::new();
    let parsed = parse_file(src).unwrap_or_else(|e| panic!("parse error: {e}"));
    check_defs(&mut defs, &parsed).unwrap_or_else(|e| panic!("check error: {e}"));
    defs
}

fn load_err(src: &str) -> cutt::check::TypeError {
    let mut defs = Defs::new();
    let parsed = parse_file(src).unwrap_or_else(|e| panic!("parse error: {e}"));
    match check_defs(&mut defs, &parsed) {
        Ok(()) => panic!("expected a type error"),
        Err(e) => e,
    }
}

fn norm(defs: &Defs, name: &str) -> String {
    let entry = defs.lookup(name).unwrap_or_else(|| panic!("no def {name}"));
    let t = readback(&entry.val, &entry.ty).unwrap_or_else(|e| panic!("readback: {e}"));
    print_term(&prettify(&t))
}

fn assert_defs_equal(defs: &Defs, a: &str, b: &str) {
    let ea = defs.lookup(a).unwrap();
    let eb = defs.lookup(b).unwrap();
    let ok = convert(&ea.val, &eb.val, &ea.ty).unwrap();
    assert!(ok, "expected {a} = {b}, got {} vs {}", norm(defs, a), norm(defs, b));
}

#[test]
fn basic_definitions() {
    let defs = load(
        "def id : (A : U) -> A -> A = \\A a. a\n\
         def two : Nat = suc (suc zero)\n\
         def applied : Nat = id Nat two",
    );
    assert_eq!(norm(&defs, "two"), "suc (suc zero)");
    assert_eq!(norm(&defs, "applied"), "suc (suc zero)");
}

#[test]
fn natrec_computes() {
    let defs = load(
        "def add : Nat -> Nat -> Nat = \\m n. natrec (\\k. Nat) m (\\k ih. suc ih) n\n\
         def two : Nat = suc (suc zero)\n\
         def four : Nat = add two two",
    );
    assert_eq!(norm(&defs, "four"), "suc (suc (suc (suc zero)))");
}

#[test]
fn path_boundary_enforced() {
    let defs = load("def p : Path Nat zero zero = <i> zero");
    assert_eq!(norm(&defs, "p"), "<i> zero");

    let err = load_err("def p : Path Nat zero (suc zero) = <i> zero");
    assert_eq!(err.kind, ErrorKind::Boundary);
}

#[test]
fn function_eta() {
    let defs = load(
        "def f : Nat -> Nat = \\n. suc n\n\
         def g : Nat -> Nat = \\n. f n",
    );
    assert_defs_equal(&defs, "f", "g");
}

#[test]
fn path_eta() {
    let defs = load(
        "def p : Path Nat zero zero = <i> zero\n\
         def q : Path Nat zero zero = <i> p @ i",
    );
    assert_defs_equal(&defs, "p", "q");
}

#[test]
fn case_computes() {
    let defs = load(
        "def swap : Sum Nat Nat -> Sum Nat Nat\n\
           = \\s. case (\\x. Sum Nat Nat) (\\a. inr a) (\\b. inl b) s\n\
         def l : Sum Nat Nat = inl zero\n\
         def r : Sum Nat Nat = swap l",
    );
    assert_eq!(norm(&defs, "r"), "inr zero");
}

#[test]
fn comp_nat_returns_cap() {
    let defs = load(
        "def c : Nat = comp 0 (<i> Nat) [] (suc zero)\n\
         def one : Nat = suc zero",
    );
    assert_eq!(norm(&defs, "c"), "suc zero");
    assert_defs_equal(&defs, "c", "one");
}

#[test]
fn comp_total_system_uses_tube() {
    // With a total tube the composite is the tube at the far end.
    let defs = load(
        "def p : Path Nat zero zero = <i> zero\n\
         def c : Nat = comp 0 (<i> Nat) [ (0 = 0) -> <j> p @ j ] (p @ 0)\n\
         def expected : Nat = zero",
    );
    assert_defs_equal(&defs, "c", "expected");
}

#[test]
fn comp_cap_mismatch_is_boundary_error() {
    let err = load_err(
        "def bad : Nat = comp 0 (<i> Nat) [ (0 = 0) -> <j> suc zero ] zero",
    );
    assert_eq!(err.kind, ErrorKind::Boundary);
}

#[test]
fn comp_incompatible_system_rejected() {
    // Two overlapping tubes that disagree at the generic point.
    let err = load_err(
        "def two : Nat = suc (suc zero)\n\
         def bad : Path Nat zero two -> Nat\n\
           = \\q. comp 0 (<i> Nat) [ (0 = 0) -> <j> zero, (0 = 0) -> <j> q @ j ] zero",
    );
    assert!(matches!(err.kind, ErrorKind::IncompatibleSystem | ErrorKind::Boundary));
}

#[test]
fn fill_endpoints() {
    let defs = load(
        "def c : Nat = comp 0 (<i> Nat) [] zero\n\
         def at0 : Nat = fill 0 (<i> Nat) [] zero 0\n\
         def at1 : Nat = fill 0 (<i> Nat) [] zero 1\n\
         def z : Nat = zero",
    );
    assert_defs_equal(&defs, "at0", "z");
    assert_defs_equal(&defs, "at1", "c");
}

#[test]
fn fill_as_connecting_path() {
    // The filler connects the cap to the composite.
    let defs = load(
        "def c : Nat = comp 0 (<i> Nat) [] zero\n\
         def h : Path Nat zero c = <i> fill 0 (<j> Nat) [] zero i",
    );
    assert_eq!(defs.entries().len(), 2);
}

#[test]
fn comp_sigma_componentwise() {
    let defs = load(
        "def pair : Nat * Nat = (zero, suc zero)\n\
         def c : Nat * Nat = comp 0 (<i> Nat * Nat) [] pair",
    );
    assert_defs_equal(&defs, "c", "pair");
}

#[test]
fn comp_pi_applies_pointwise() {
    let defs = load(
        "def f : Nat -> Nat = \\n. suc n\n\
         def c : Nat -> Nat = comp 0 (<i> Nat -> Nat) [] f",
    );
    assert_defs_equal(&defs, "c", "f");
}

#[test]
fn comp_path_line() {
    let defs = load(
        "def p : Path Nat zero zero = <i> zero\n\
         def c : Path Nat zero zero = comp 0 (<i> Path Nat zero zero) [] p",
    );
    assert_defs_equal(&defs, "c", "p");
}

#[test]
fn comp_sum_keeps_head() {
    let defs = load(
        "def s : Sum Nat Nat = inl (suc zero)\n\
         def c : Sum Nat Nat = comp 0 (<i> Sum Nat Nat) [] s",
    );
    assert_defs_equal(&defs, "c", "s");
    assert_eq!(norm(&defs, "c"), "inl (suc zero)");
}

#[test]
fn refl_is_constant_id_pair() {
    let defs = load(
        "def r : Id Nat zero zero = refl zero\n\
         def r2 : Id Nat zero zero = idPair (<i> zero) (0 = 0)",
    );
    assert_defs_equal(&defs, "r", "r2");
}

#[test]
fn id_pair_flag_must_be_constant() {
    let err = load_err(
        "def two : Nat = suc (suc zero)\n\
         def bad : Path Nat zero two -> Id Nat zero two = \\p. idPair p (0 = 0)",
    );
    assert_eq!(err.kind, ErrorKind::Boundary);
}

#[test]
fn idj_computes_on_refl() {
    let defs = load(
        "def j : Nat = idJ (\\x p. Nat) zero (refl zero)\n\
         def z : Nat = zero",
    );
    assert_defs_equal(&defs, "j", "z");
    assert_eq!(norm(&defs, "j"), "zero");
}

#[test]
fn idj_type_depends_on_target() {
    // Transport along an identity via its eliminator.
    let defs = load(
        "def cast : (A B : U) -> Id U A B -> A -> B\n\
           = \\A B q a. idJ (\\X p. X) a q\n\
         def n : Nat = cast Nat Nat (refl Nat) (suc zero)",
    );
    assert_eq!(norm(&defs, "n"), "suc zero");
}

#[test]
fn glue_strict_on_top_face() {
    // With a true face the glue type is the partial type itself.
    let defs = load(
        "def idfun : (A : U) -> A -> A = \\A a. a\n\
         def contrSingl : (A : U) -> (a : A) -> (c : (x : A) * Path A a x)\n\
             -> Path ((x : A) * Path A a x) (a, <i> a) c\n\
           = \\A a c. <i> (c.2 @ i, <j> c.2 @ i /\\ j)\n\
         def idEquiv : (A : U) -> (b : A) -> (c : (x : A) * Path A x b)\n\
             * ((c' : (x : A) * Path A x b) -> Path ((x : A) * Path A x b) c c')\n\
           = \\A b. ((b, <i> b),\n\
                    \\c. <i> (c.2 @ ~i, <j> c.2 @ ~i \\/ j))\n\
         def G : U = Glue Nat [ (0 = 0) -> (Nat, idfun Nat, idEquiv Nat) ]\n\
         def same : Path U G Nat = <i> G",
    );
    assert_eq!(defs.entries().len(), 5);
}

#[test]
fn unglue_of_glue_is_base() {
    let defs = load(
        "def idfun : (A : U) -> A -> A = \\A a. a\n\
         def idEquiv : (A : U) -> (b : A) -> (c : (x : A) * Path A x b)\n\
             * ((c' : (x : A) * Path A x b) -> Path ((x : A) * Path A x b) c c')\n\
           = \\A b. ((b, <i> b),\n\
                    \\c. <i> (c.2 @ ~i, <j> c.2 @ ~i \\/ j))\n\
         def G : (x : U) -> U = \\x. Glue Nat []\n\
         def g : G Nat = glue [] (suc zero)\n\
         def u : Nat = unglue g",
    );
    assert_eq!(norm(&defs, "u"), "suc zero");
}

#[test]
fn subject_reduction_on_projections() {
    let defs = load(
        "def swap : (A B : U) -> A * B -> B * A = \\A B p. (p.2, p.1)\n\
         def x : Nat * Nat = (zero, suc zero)\n\
         def y : Nat * Nat = swap Nat Nat x",
    );
    assert_eq!(norm(&defs, "y"), "(suc zero, zero)");
}

#[test]
fn scope_errors() {
    let err = load_err("def bad : Nat = n");
    assert_eq!(err.kind, ErrorKind::Scope);
    let err = load_err("def bad : Path Nat zero zero = <i> zero @ j");
    assert!(matches!(err.kind, ErrorKind::Scope | ErrorKind::Mismatch));
}

#[test]
fn direction_used_as_term_is_scope_error() {
    let err = load_err("def bad : Path Nat zero zero = <i> i");
    assert_eq!(err.kind, ErrorKind::Scope);
}

#[test]
fn connections_on_paths() {
    // ctr endpoints: at 0 the connection square degenerates.
    let defs = load(
        "def two : Nat = suc (suc zero)\n\
         def ctr : (A : U) -> (a0 a1 : A) -> (p : Path A a0 a1)\n\
             -> Path ((x : A) * Path A a0 x) (a0, <i> a0) (a1, p)\n\
           = \\A a0 a1 p. <i> (p @ i, <j> p @ i /\\ j)",
    );
    assert_eq!(defs.entries().len(), 2);
}
