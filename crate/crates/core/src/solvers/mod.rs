//! Solving, counting and enumerating explanations, dispatched on the clone
//! generated by the connectives an instance actually uses.
//!
//! | clone of the instance | solve | count | enumerate |
//! |---|---|---|---|
//! | inside E or N | literal-KB | closed form | self-reduction |
//! | inside V | V-witness (Q, C, F), monotone (T) | monotone scan | self-reduction (Q, C, F) / scan (T) |
//! | inside L | affine | rank formula | self-reduction |
//! | inside M | monotone (Q, C, T), general (F) | scan | unsupported |
//! | otherwise | general | scan | unsupported |

mod affine;
mod disjunctive;
pub mod gf2;
mod general;
mod literal;
mod monotone;
mod search;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::abduction::{
    oracle_count_full, oracle_enumerate, oracle_solve, verify_with, Encodings, Explanation,
    Instance, Manifestation, SatCtx,
};
use crate::error::{AbdError, Result};
use crate::formula::{has_complementary, Formula};
use crate::lattice::{clone_leq, CloneId, Family, Variant};
use crate::par::Execution;
use crate::sat::DEFAULT_CONFLICT_LIMIT;

pub use affine::{affine_system, count_affine, solve_affine};
pub use gf2::{AffineSystem, Equation};
pub use monotone::monotone_satisfiable;

/// Default bound on the number of full candidates a scanning path may visit.
pub const DEFAULT_BUDGET: u64 = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverConfig {
    /// Maximum number of full candidates for exhaustive paths.
    pub budget: u64,
    /// Conflict cap per SAT call.
    pub conflict_limit: u64,
    pub exec: Execution,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            budget: DEFAULT_BUDGET,
            conflict_limit: DEFAULT_CONFLICT_LIMIT,
            exec: Execution::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Oracle,
    LiteralKb,
    VWitness,
    Affine,
    Monotone,
    General,
}

impl Method {
    pub const ALL: [Method; 6] = [
        Method::Oracle,
        Method::LiteralKb,
        Method::VWitness,
        Method::Affine,
        Method::Monotone,
        Method::General,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Oracle => "oracle",
            Method::LiteralKb => "literal-KB",
            Method::VWitness => "V-witness",
            Method::Affine => "affine",
            Method::Monotone => "monotone",
            Method::General => "general",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = AbdError;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| AbdError::Input(format!("unknown method `{s}`")))
    }
}

impl Serialize for Method {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SolveOutcome {
    pub explanation: Option<Explanation>,
    pub method: Method,
    /// Set whenever an explanation is reported: it passed the SAT-based check.
    pub certificate_checked: bool,
    pub candidates_tried: u64,
    pub sat_calls: u64,
}

impl SolveOutcome {
    pub fn found(&self) -> bool {
        self.explanation.is_some()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CountOutcome {
    pub count: u64,
    pub method: Method,
}

/// Result of one solving path before certification.
pub(crate) struct Search {
    pub explanation: Option<Explanation>,
    pub candidates: u64,
    pub sat_calls: u64,
}

fn inside(c: CloneId, f: Family) -> bool {
    clone_leq(c, CloneId::plain(f))
}

/// The path [`solve`] takes for `p`.
pub fn select_method(p: &Instance) -> Method {
    let c = p.effective_clone();
    let v = p.variant();
    if inside(c, Family::E) || inside(c, Family::N) {
        Method::LiteralKb
    } else if inside(c, Family::V) {
        if v == Variant::T {
            Method::Monotone
        } else {
            Method::VWitness
        }
    } else if inside(c, Family::L) {
        Method::Affine
    } else if inside(c, Family::M) && v != Variant::F {
        Method::Monotone
    } else {
        Method::General
    }
}

pub(crate) fn require(p: &Instance, m: Method) -> Result<()> {
    let c = p.effective_clone();
    let v = p.variant();
    let ok = match m {
        Method::Oracle | Method::General => true,
        Method::LiteralKb => inside(c, Family::E) || inside(c, Family::N),
        Method::VWitness => inside(c, Family::V) && v != Variant::T,
        Method::Affine => inside(c, Family::L),
        Method::Monotone => inside(c, Family::M) && (v != Variant::F || inside(c, Family::V)),
    };
    if ok {
        Ok(())
    } else {
        Err(AbdError::Precondition(format!(
            "the {m} path does not apply to clone {c} with variant {v}"
        )))
    }
}

pub fn solve(p: &Instance, cfg: &SolverConfig) -> Result<SolveOutcome> {
    solve_with_method(p, select_method(p), cfg)
}

pub fn solve_literal_kb(p: &Instance, cfg: &SolverConfig) -> Result<SolveOutcome> {
    solve_with_method(p, Method::LiteralKb, cfg)
}

pub fn solve_disjunctive_kb(p: &Instance, cfg: &SolverConfig) -> Result<SolveOutcome> {
    solve_with_method(p, Method::VWitness, cfg)
}

pub fn solve_monotone(p: &Instance, cfg: &SolverConfig) -> Result<SolveOutcome> {
    solve_with_method(p, Method::Monotone, cfg)
}

pub fn solve_general(p: &Instance, cfg: &SolverConfig) -> Result<SolveOutcome> {
    solve_with_method(p, Method::General, cfg)
}

/// Runs a specific path; fails with a precondition error when the path does
/// not apply to the instance.
pub fn solve_with_method(p: &Instance, m: Method, cfg: &SolverConfig) -> Result<SolveOutcome> {
    require(p, m)?;
    let ctx = SatCtx::new(cfg.conflict_limit);
    let s = match m {
        Method::Oracle => Search {
            explanation: oracle_solve(p, cfg.exec)?,
            candidates: 1u64 << p.hyps.len(),
            sat_calls: 0,
        },
        Method::LiteralKb => literal::solve(p, &ctx)?,
        Method::VWitness => disjunctive::solve(p, &ctx)?,
        Method::Affine => affine::solve(p)?,
        Method::Monotone => monotone::solve(p, cfg)?,
        Method::General => general::solve(p, cfg)?,
    };
    let mut sat_calls = s.sat_calls;
    let certificate_checked = match &s.explanation {
        Some(e) => {
            let check = SatCtx::new(cfg.conflict_limit);
            let v = verify_with(p, &Encodings::new(p), e, &check)?;
            sat_calls += check.calls();
            if !v.is_explanation {
                return Err(AbdError::Internal(format!(
                    "{m} path returned `{e}`, which is not an explanation"
                )));
            }
            true
        }
        None => false,
    };
    Ok(SolveOutcome {
        explanation: s.explanation,
        method: m,
        certificate_checked,
        candidates_tried: s.candidates,
        sat_calls,
    })
}

/// The path [`count_full`] takes for `p`.
pub fn select_count_method(p: &Instance) -> Method {
    match select_method(p) {
        Method::VWitness => Method::Monotone,
        m => m,
    }
}

/// Number of full explanations.
pub fn count_full(p: &Instance, cfg: &SolverConfig) -> Result<CountOutcome> {
    count_with_method(p, select_count_method(p), cfg)
}

pub fn count_with_method(p: &Instance, m: Method, cfg: &SolverConfig) -> Result<CountOutcome> {
    require(p, m)?;
    let count = match m {
        Method::Oracle => oracle_count_full(p, cfg.exec)?,
        Method::LiteralKb => literal::count(p, &SatCtx::new(cfg.conflict_limit))?,
        Method::Affine => affine::count(p)?,
        Method::VWitness | Method::Monotone => monotone::count(p, cfg)?,
        Method::General => general::count(p, cfg)?,
    };
    Ok(CountOutcome { count, method: m })
}

/// Whether [`enumerate_full`] applies: clones inside L, E, N or V.
pub fn enumeration_method(p: &Instance) -> Option<Method> {
    match select_method(p) {
        Method::Monotone if inside(p.effective_clone(), Family::V) => Some(Method::Monotone),
        m @ (Method::LiteralKb | Method::VWitness | Method::Affine) => Some(m),
        _ => None,
    }
}

/// Streams every full explanation in canonical order.
pub fn enumerate_full(
    p: &Instance,
    cfg: &SolverConfig,
    emit: &mut dyn FnMut(Explanation),
) -> Result<Method> {
    let m = enumeration_method(p).ok_or_else(|| {
        AbdError::Unsupported(format!(
            "enumeration needs a clone inside L, E, N or V, got {}",
            p.effective_clone()
        ))
    })?;
    let mut out = |bits: &[bool]| emit(Explanation::from_bits(&p.hyps, bits));
    match m {
        Method::LiteralKb => {
            let d = literal::LiteralDecider::new(p, &SatCtx::new(cfg.conflict_limit))?;
            search::enumerate(&d, p.hyps.len(), &mut out)?;
        }
        Method::VWitness => {
            let d = disjunctive::VDecider::new(p)?;
            search::enumerate(&d, p.hyps.len(), &mut out)?;
        }
        Method::Affine => {
            let d = affine::AffineDecider::new(p)?;
            search::enumerate(&d, p.hyps.len(), &mut out)?;
        }
        _ => {
            for e in monotone::enumerate(p, cfg)? {
                emit(e);
            }
        }
    }
    Ok(m)
}

/// [`enumerate_full`] collected into a vector.
pub fn enumerate_full_vec(p: &Instance, cfg: &SolverConfig) -> Result<Vec<Explanation>> {
    let mut out = Vec::new();
    enumerate_full(p, cfg, &mut |e| out.push(e))?;
    Ok(out)
}

/// Exhaustive enumeration for any instance within the candidate budget,
/// using the fastest applicable candidate check.
pub fn enumerate_scan(p: &Instance, cfg: &SolverConfig) -> Result<(Vec<Explanation>, Method)> {
    match select_count_method(p) {
        Method::Oracle => Ok((oracle_enumerate(p, cfg.exec)?, Method::Oracle)),
        Method::Monotone => Ok((monotone::enumerate(p, cfg)?, Method::Monotone)),
        _ => Ok((general::enumerate(p, cfg)?, Method::General)),
    }
}

/// What entailing the manifestation means once Γ ∧ E is satisfiable and
/// monotone in the non-hypothesis variables. Such a Γ ∧ E has the all-ones
/// model, so negative literals are never entailed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Goal {
    Always,
    Never,
    /// Some atom of the set must hold.
    AnyOf(Vec<String>),
    /// Every atom of the set must hold.
    AllOf(Vec<String>),
}

/// Goal for a monotone knowledge base. Formula manifestations are accepted
/// only inside V, where they normalize to a positive clause or a constant.
pub(crate) fn monotone_goal(p: &Instance) -> Result<Goal> {
    Ok(match &p.manifestation {
        Manifestation::Query(l) if l.positive => Goal::AnyOf(vec![l.var.clone()]),
        Manifestation::Query(_) => Goal::Never,
        Manifestation::Clause(ls) if has_complementary(ls) => Goal::Always,
        Manifestation::Clause(ls) => {
            let atoms = positive_atoms(ls.iter().filter(|l| l.positive).map(|l| &l.var));
            if atoms.is_empty() {
                Goal::Never
            } else {
                Goal::AnyOf(atoms)
            }
        }
        Manifestation::Term(ls) => {
            if ls.iter().any(|l| !l.positive) {
                Goal::Never
            } else {
                Goal::AllOf(positive_atoms(ls.iter().map(|l| &l.var)))
            }
        }
        Manifestation::Formula(f) => match disjunction_atoms(f)? {
            None => Goal::Always,
            Some(s) if s.is_empty() => Goal::Never,
            Some(s) => Goal::AnyOf(s),
        },
    })
}

fn positive_atoms<'a>(vars: impl Iterator<Item = &'a String>) -> Vec<String> {
    let mut v: Vec<String> = vars.cloned().collect();
    v.sort();
    v.dedup();
    v
}

/// Reads a formula over V as a disjunction: `None` for the constant 1,
/// otherwise the atoms whose lone truth makes it true (empty for 0).
pub(crate) fn disjunction_atoms(f: &Formula) -> Result<Option<Vec<String>>> {
    if f.eval_with(&|_| Some(false))? {
        return Ok(None);
    }
    let mut out = Vec::new();
    for x in f.vars() {
        if f.eval_with(&|v| Some(v == x))? {
            out.push(x);
        }
    }
    Ok(Some(out))
}

/// Reads a formula over E as a conjunction: `None` for the constant 0,
/// otherwise the atoms whose lone falsity makes it false (empty for 1).
pub(crate) fn conjunction_atoms(f: &Formula) -> Result<Option<Vec<String>>> {
    if !f.eval_with(&|_| Some(true))? {
        return Ok(None);
    }
    let mut out = Vec::new();
    for x in f.vars() {
        if !f.eval_with(&|v| Some(v != x))? {
            out.push(x);
        }
    }
    Ok(Some(out))
}

/// Reads an affine formula as `c0 ⊕ Σ x` over the returned atoms.
pub(crate) fn affine_form(f: &Formula) -> Result<(bool, Vec<String>)> {
    let c0 = f.eval_with(&|_| Some(false))?;
    let mut out = Vec::new();
    for x in f.vars() {
        if f.eval_with(&|v| Some(v == x))? != c0 {
            out.push(x);
        }
    }
    Ok((c0, out))
}

pub(crate) fn check_budget(p: &Instance, cfg: &SolverConfig) -> Result<u64> {
    let n = p.hyps.len();
    if n >= 63 || (1u64 << n) > cfg.budget {
        return Err(AbdError::Budget(format!(
            "2^{n} candidates exceed the budget of {}",
            cfg.budget
        )));
    }
    Ok(1u64 << n)
}
