use abduction_core::abduction::{
    extend_to_full, is_explanation, oracle_count_full, oracle_enumerate, oracle_solve, Explanation, Instance,
    SatCtx,
};
use abduction_core::io::parse_instance;
use abduction_core::par::Execution;
use abduction_core::solvers::*;
use abduction_core::AbdError;

const OR: &str = "fn or 2 0111\n";
const AND: &str = "fn and 2 0001\n";
const XOR3: &str = "fn xor3 3 01101001\n";
const H: &str = "fn h 2 0010\n";

fn inst(text: &str) -> Instance {
    parse_instance(text).unwrap()
}

fn expl(s: &str) -> Explanation {
    Explanation::parse(s).unwrap()
}

fn cfg() -> SolverConfig {
    SolverConfig::default()
}

fn agrees_with_oracle(p: &Instance) -> SolveOutcome {
    let out = solve(p, &cfg()).unwrap();
    let oracle = oracle_solve(p, Execution::Sequential).unwrap();
    assert_eq!(out.found(), oracle.is_some());
    if let Some(e) = &out.explanation {
        assert!(is_explanation(p, e).unwrap());
        assert!(out.certificate_checked);
    }
    out
}

#[test]
fn dispatch_picks_the_clone_method() {
    let p = inst(&format!("{OR}kb (or x q)\nhyp x\nquery q\n"));
    let out = agrees_with_oracle(&p);
    assert_eq!(out.method, Method::VWitness);
    assert_eq!(out.explanation, Some(expl("!x")));

    let p = inst(&format!("{XOR3}kb (xor3 x y q)\nhyp x y\nquery q\n"));
    assert_eq!(agrees_with_oracle(&p).method, Method::Affine);

    let p = inst(&format!("{H}kb (h x q)\nhyp x\nquery q\n"));
    let out = agrees_with_oracle(&p);
    assert_eq!(out.method, Method::General);
    assert!(!out.found());
}

#[test]
fn literal_kbs() {
    let p = inst(&format!("{AND}kb (and x q)\nquery q\n"));
    let out = agrees_with_oracle(&p);
    assert_eq!(out.method, Method::LiteralKb);
    assert_eq!(out.explanation, Some(Explanation::empty()));

    let p = inst("fn not 1 10\nkb (not x)\nquery x\n");
    assert!(!solve_literal_kb(&p, &cfg()).unwrap().found());

    let p = inst(&format!("{AND}kb (and x q)\nkb z\nclause q z\n"));
    assert_eq!(solve_literal_kb(&p, &cfg()).unwrap().explanation, Some(Explanation::empty()));
}

#[test]
fn disjunctive_kbs() {
    let p = inst(&format!("{OR}kb (or q x)\nhyp x\nquery q\n"));
    assert_eq!(solve_disjunctive_kb(&p, &cfg()).unwrap().explanation, Some(expl("!x")));

    let p = inst(&format!("{OR}kb (or q1 q2)\nclause q1 q2\n"));
    assert_eq!(solve_disjunctive_kb(&p, &cfg()).unwrap().explanation, Some(Explanation::empty()));

    let p = inst(&format!("{OR}kb (or q x)\nkb x\nhyp x\nquery q\n"));
    assert!(!solve_disjunctive_kb(&p, &cfg()).unwrap().found());
    assert!(oracle_solve(&p, Execution::Sequential).unwrap().is_none());
}

#[test]
fn affine_kbs() {
    let p = inst(&format!("{XOR3}kb (xor3 x y q)\nhyp x y\nquery q\n"));
    assert!(solve_affine(&p, &cfg()).unwrap().found());
    assert_eq!(count_affine(&p).unwrap(), 2);

    let p = inst(&format!("{XOR3}kb (xor3 q q q)\nquery q\n"));
    assert_eq!(solve_affine(&p, &cfg()).unwrap().explanation, Some(Explanation::empty()));
    assert_eq!(count_affine(&p).unwrap(), 1);

    let p = inst(&format!("{XOR3}kb (xor3 x x q)\nhyp x\nquery q\n"));
    assert_eq!(count_affine(&p).unwrap(), 2);

    let p = inst(&format!("{OR}kb (or x q)\nhyp x\nquery q\n"));
    assert!(matches!(count_affine(&p), Err(AbdError::Precondition(_))));
}

#[test]
fn monotone_and_general_paths() {
    let p = inst("fn or_and 3 00011111\nkb (or_and q x y)\nhyp x y\nquery q\n");
    let out = solve_monotone(&p, &cfg()).unwrap();
    assert_eq!(out.explanation, Some(expl("!x !y")));
    assert_eq!(out.method, Method::Monotone);

    let p = inst(&format!("{AND}kb (and x q)\nhyp x\nquery q\n"));
    assert_eq!(solve_general(&p, &cfg()).unwrap().explanation, Some(expl("x")));
    assert_eq!(count_full(&p, &cfg()).unwrap().count, 1);
}

#[test]
fn counting() {
    let p = inst(&format!("{OR}kb (or x1 (or x2 q))\nhyp x1 x2\nquery q\n"));
    assert_eq!(count_full(&p, &cfg()).unwrap().count, 1);
    let p = inst(&format!("{XOR3}kb (xor3 x y q)\nhyp x y\nquery q\n"));
    let c = count_full(&p, &cfg()).unwrap();
    assert_eq!((c.count, c.method), (2, Method::Affine));
}

#[test]
fn enumeration() {
    let p = inst(&format!("{XOR3}kb (xor3 x y q)\nhyp x y\nquery q\n"));
    assert_eq!(enumerate_full_vec(&p, &cfg()).unwrap(), vec![expl("!x !y"), expl("x y")]);
    let p = inst(&format!("{OR}kb (or q x)\nhyp x\nquery q\n"));
    assert_eq!(enumerate_full_vec(&p, &cfg()).unwrap(), vec![expl("!x")]);
    let p = inst(&format!("{OR}kb (or q x)\nhyp x\nquery !q\n"));
    assert!(enumerate_full_vec(&p, &cfg()).unwrap().is_empty());

    let p = inst(&format!("{H}kb (h x q)\nkb (h y q)\nhyp x y\nquery x\n"));
    assert!(matches!(enumerate_full_vec(&p, &cfg()), Err(AbdError::Unsupported(_))));
    let (scanned, _) = enumerate_scan(&p, &cfg()).unwrap();
    assert_eq!(scanned, oracle_enumerate(&p, Execution::Sequential).unwrap());
}

#[test]
fn forcing_a_method_checks_the_clone() {
    let p = inst(&format!("{H}kb (h x q)\nhyp x\nquery q\n"));
    assert!(matches!(solve_with_method(&p, Method::Affine, &cfg()), Err(AbdError::Precondition(_))));
    assert!(matches!(solve_monotone(&p, &cfg()), Err(AbdError::Precondition(_))));
}

#[test]
fn budget_is_enforced() {
    let p = inst(&format!("{H}kb (h (h a b) (h c q))\nhyp a b c\nquery q\n"));
    let tight = SolverConfig { budget: 4, ..cfg() };
    assert!(matches!(solve(&p, &tight), Err(AbdError::Budget(_))));
    assert!(solve(&p, &cfg()).is_ok());
}

#[test]
fn sequential_and_parallel_agree() {
    let p = inst(&format!("{H}kb (h a q)\nkb (h (h b c) d)\nhyp a b c d\nquery !q\n"));
    let seq = SolverConfig {
        exec: Execution::Sequential,
        ..cfg()
    };
    let par = SolverConfig {
        exec: Execution::Parallel,
        ..cfg()
    };
    assert_eq!(solve(&p, &seq).unwrap(), solve(&p, &par).unwrap());
    assert_eq!(count_full(&p, &seq).unwrap(), count_full(&p, &par).unwrap());
    assert_eq!(
        count_full(&p, &seq).unwrap().count,
        oracle_count_full(&p, Execution::Sequential).unwrap()
    );
}

#[test]
fn extending_partial_explanations() {
    let p = inst(&format!("{OR}kb (or x q)\nkb (or y y)\nhyp x y\nquery q\n"));
    let full = extend_to_full(&p, &expl("!x"), &SatCtx::default()).unwrap();
    assert_eq!(full, expl("!x y"));
}
