use std::collections::BTreeSet;

use crate::abduction::{Instance, Manifestation};
use crate::boolean::{named, FunctionSet};
use crate::error::{AbdError, Result};
use crate::formula::{balanced_tree, Formula, Literal};
use crate::lattice::{identify_tables, CloneId, Family};

use super::source::{ClauseSet, LinearSystem, Qbf2};
use super::{includes, rewrite_to_base, Std};

fn var(name: impl Into<String>) -> Formula {
    Formula::var(name)
}

fn x(i: usize) -> String {
    format!("x{i}")
}

fn xp(i: usize) -> String {
    format!("x{i}'")
}

fn query(name: &str) -> Manifestation {
    Manifestation::Query(Literal::new(name, true))
}

fn precondition(msg: &str) -> AbdError {
    AbdError::Precondition(msg.to_string())
}

fn mixed_monotone_core(base: &FunctionSet) -> bool {
    [Family::S00, Family::S10, Family::D2]
        .into_iter()
        .any(|f| includes(base, f))
}

/// Maps a linear system to `(Γ', ∅, q)`: the instance has an explanation
/// (necessarily `∅`) iff the system has no solution.
pub fn from_linear_system(s: &LinearSystem, base: &FunctionSet) -> Result<Instance> {
    if !includes(base, Family::L2) {
        return Err(precondition("the base must generate x ⊕ y ⊕ z"));
    }
    if s.equations.is_empty() {
        return Err(AbdError::Input("empty linear system".into()));
    }
    let std = Std::new();
    let mut kb = Vec::new();
    for (vars, c) in &s.equations {
        let mut odd = BTreeSet::new();
        for &v in vars {
            if !odd.insert(v) {
                odd.remove(&v);
            }
        }
        // φ_i ≡ x_{i1} ⊕ … ⊕ x_{ik} ⊕ ¬c, true exactly on the solutions
        let mut leaves: Vec<Formula> = odd.iter().map(|&v| var(x(v))).collect();
        if !*c {
            leaves.push(Formula::Const(true));
        }
        // at the all-ones point every leaf is 1
        if leaves.len() % 2 == 0 {
            leaves.push(var("_q"));
        }
        kb.push(balanced_tree(&std.xor3, leaves, None)?);
    }
    if !kb.iter().any(|f| f.vars().contains("_q")) {
        kb.push(std.app(&std.xor3, vec![var("_q"), var("_q"), Formula::Const(true)]));
    }
    let p = Instance::new(std.fns.clone(), kb, Vec::<String>::new(), query("_q"));
    rewrite_to_base(&p, base)
}

/// Maps a positive CNF with three distinct atoms per clause to an instance
/// with an explanation iff some assignment makes exactly two atoms of every
/// clause true.
pub fn from_two_in_three_sat(phi: &ClauseSet, base: &FunctionSet) -> Result<Instance> {
    let sig = identify_tables(&base.tables());
    if !mixed_monotone_core(base) || !crate::lattice::clone_leq(sig, CloneId::plain(Family::M)) {
        return Err(precondition(
            "the base must be monotone and generate S00, S10 or D2",
        ));
    }
    if phi.rows.is_empty() {
        return Err(AbdError::Input("empty CNF".into()));
    }
    for (i, c) in phi.rows.iter().enumerate() {
        let atoms: BTreeSet<i32> = c.iter().copied().collect();
        if c.len() != 3 || atoms.len() != 3 || c.iter().any(|&l| l < 0) {
            return Err(AbdError::Input(format!(
                "clause {} must have exactly three distinct positive atoms",
                i + 1
            )));
        }
    }
    let std = Std::new();
    let mut kb = Vec::new();
    let mut hyps: BTreeSet<String> = BTreeSet::new();
    let mut bigs = Vec::new();
    let mut qs = Vec::new();
    for (i, c) in phi.rows.iter().enumerate() {
        let a: Vec<Formula> = c.iter().map(|&l| var(x(l as usize))).collect();
        let qi = var(format!("_q{}", i + 1));
        hyps.extend(c.iter().map(|&l| x(l as usize)));
        hyps.insert(format!("_q{}", i + 1));
        kb.push(std.any(a.clone()));
        for (j, k) in [(0, 1), (0, 2), (1, 2)] {
            kb.push(std.any(vec![a[j].clone(), a[k].clone(), qi.clone()]));
        }
        bigs.push(std.all(a));
        qs.push(qi);
    }
    bigs.extend(qs);
    bigs.push(var("_q"));
    kb.push(std.any(bigs));
    let p = Instance::new(std.fns.clone(), kb, hyps, query("_q"));
    rewrite_to_base(&p, base)
}

/// Maps a CNF of width at most 3 to a term instance with an explanation iff
/// the CNF is satisfiable.
pub fn from_three_sat_term(phi: &ClauseSet, base: &FunctionSet) -> Result<Instance> {
    if !includes(base, Family::V2) {
        return Err(precondition("the base must generate OR"));
    }
    if phi.rows.is_empty() {
        return Err(AbdError::Input("empty CNF".into()));
    }
    if let Some(i) = phi.rows.iter().position(|c| c.is_empty() || c.len() > 3) {
        return Err(AbdError::Input(format!("clause {} must have 1 to 3 literals", i + 1)));
    }
    let std = Std::new();
    let mut kb = Vec::new();
    for c in &phi.rows {
        let lits = c
            .iter()
            .map(|&l| {
                let v = l.unsigned_abs() as usize;
                var(if l > 0 { x(v) } else { xp(v) })
            })
            .collect();
        kb.push(std.any(lits));
    }
    let vars = phi.occurring();
    let mut hyps = Vec::new();
    let mut term = Vec::new();
    for (i, &v) in vars.iter().enumerate() {
        let qi = format!("_q{}", i + 1);
        kb.push(std.any(vec![var(x(v)), var(xp(v))]));
        kb.push(std.any(vec![var(x(v)), var(&qi)]));
        kb.push(std.any(vec![var(xp(v)), var(&qi)]));
        hyps.push(x(v));
        hyps.push(xp(v));
        term.push(Literal::new(qi, true));
    }
    let p = Instance::new(std.fns.clone(), kb, hyps, Manifestation::Term(term));
    rewrite_to_base(&p, base)
}

/// Maps `∃x ∀y φ` with `φ` a DNF of width at most 3 to a formula instance
/// with an explanation iff the sentence is true.
pub fn from_qsat2_formula(chi: &Qbf2, base: &FunctionSet) -> Result<Instance> {
    if !mixed_monotone_core(base) {
        return Err(precondition("the base must generate S00, S10 or D2"));
    }
    if chi.matrix.rows.is_empty() {
        return Err(AbdError::Input("empty DNF".into()));
    }
    if let Some(i) = chi.matrix.rows.iter().position(|t| t.is_empty() || t.len() > 3) {
        return Err(AbdError::Input(format!("term {} must have 1 to 3 literals", i + 1)));
    }
    let n = chi.exists;
    let name = |v: usize, primed: bool| {
        let (s, i) = if v <= n { ("x", v) } else { ("y", v - n) };
        format!("{s}{i}{}", if primed { "'" } else { "" })
    };
    let std = Std::new();
    let q = var("_q");
    let mut kb = Vec::new();
    for t in &chi.matrix.rows {
        // ¬t as a clause with negative literals replaced by primed variables
        let mut lits: Vec<Formula> = t
            .iter()
            .map(|&l| var(name(l.unsigned_abs() as usize, l > 0)))
            .collect();
        lits.push(q.clone());
        kb.push(std.any(lits));
    }
    let mut hyps = Vec::new();
    let mut pairs = Vec::new();
    for v in 1..=chi.exists + chi.forall {
        let (a, b) = (var(name(v, false)), var(name(v, true)));
        kb.push(std.any(vec![a.clone(), b.clone()]));
        if v <= n {
            let (t, f) = (format!("_t{v}"), format!("_f{v}"));
            kb.push(std.any(vec![var(&f), a.clone()]));
            kb.push(std.any(vec![var(&t), b.clone()]));
            kb.push(std.any(vec![var(&f), var(&t)]));
            hyps.push(t);
            hyps.push(f);
        }
        pairs.push(std.app(&std.or_and, vec![q.clone(), a, b]));
    }
    let psi = if pairs.is_empty() { q } else { std.any(pairs) };
    let p = Instance::new(std.fns.clone(), kb, hyps, Manifestation::Formula(psi));
    rewrite_to_base(&p, base)
}

/// Maps `∀y φ(x, y)` with `φ` a DNF to a literal instance whose full
/// explanations are in one-to-one correspondence with its models over `x`.
pub fn from_pi1_count(psi: &Qbf2, base: &FunctionSet) -> Result<Instance> {
    let mut all = base.clone();
    for (n, t) in [("0", named::const0()), ("1", named::const1())] {
        all.insert_or_get(crate::boolean::Connective::new(n, t));
    }
    if identify_tables(&all.tables()) != CloneId::plain(Family::BF) {
        return Err(precondition("the base with constants must generate every function"));
    }
    let n = psi.exists;
    let name = |v: usize| if v <= n { x(v) } else { format!("y{}", v - n) };
    let std = Std::new();
    let mut kb = Vec::new();
    let mut hyps = Vec::new();
    let mut rs = Vec::new();
    for i in 1..=n {
        let r = var(format!("_r{i}"));
        kb.push(std.app(&std.imp, vec![var(x(i)), r.clone()]));
        kb.push(std.app(&std.imp, vec![var(xp(i)), r.clone()]));
        kb.push(std.any(vec![
            std.app(&std.not, vec![var(x(i))]),
            std.app(&std.not, vec![var(xp(i))]),
        ]));
        hyps.push(x(i));
        hyps.push(xp(i));
        rs.push(r);
    }
    let terms: Vec<Formula> = psi
        .matrix
        .rows
        .iter()
        .map(|t| {
            let lits = t
                .iter()
                .map(|&l| {
                    let v = var(name(l.unsigned_abs() as usize));
                    if l > 0 {
                        v
                    } else {
                        std.app(&std.not, vec![v])
                    }
                })
                .collect();
            std.all(lits)
        })
        .collect();
    let phi = if terms.is_empty() {
        Formula::Const(false)
    } else {
        std.any(terms)
    };
    let t = var("_t0");
    kb.push(std.app(&std.imp, vec![phi, t.clone()]));
    rs.push(t);
    kb.push(std.app(&std.imp, vec![std.all(rs), var("_q")]));
    let p = Instance::new(std.fns.clone(), kb, hyps, query("_q"));
    rewrite_to_base(&p, base)
}

/// Maps a positive 2-CNF over `x1..xn` to an instance whose number of full
/// explanations is `2^n` minus the number of models. Returns `n` as well.
pub fn from_pos2sat_count(phi: &ClauseSet, base: &FunctionSet) -> Result<(Instance, usize)> {
    if !includes(base, Family::V2) {
        return Err(precondition("the base must generate OR"));
    }
    if let Some(i) = phi.rows.iter().position(|c| c.len() != 2 || c.iter().any(|&l| l < 0)) {
        return Err(AbdError::Input(format!(
            "clause {} must have two positive literals",
            i + 1
        )));
    }
    let n = phi.num_vars;
    let std = Std::new();
    let mut kb: Vec<Formula> = phi
        .rows
        .iter()
        .map(|c| std.any(vec![var(x(c[0] as usize)), var(x(c[1] as usize)), var("_q")]))
        .collect();
    let used = phi.occurring();
    for j in (1..=n).filter(|j| !used.contains(j)) {
        kb.push(std.any(vec![var(x(j)), var(format!("_p{j}"))]));
    }
    if phi.rows.is_empty() {
        kb.push(std.any(vec![var("_q"), var("_p0")]));
    }
    let p = Instance::new(std.fns.clone(), kb, (1..=n).map(x), query("_q"));
    Ok((rewrite_to_base(&p, base)?, n))
}
