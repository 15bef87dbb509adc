//! Knowledge bases over L form linear systems over GF(2).
//!
//! Let `S1` be the system of Γ and `P1` its projection onto the hypotheses.
//! A full assignment `a` is an explanation iff `a ∈ P1` and `S1(a)` entails
//! the manifestation. For literals, clauses and affine formulas, `¬ψ` is a
//! linear system too, so the explanations are `P1 \ P2` with `P2` the
//! projection of `S1 ∪ ¬ψ`; as `P2 ⊆ P1` their number is `|P1| - |P2|`.
//! For a term, each literal `v = b` must be determined by `a`: eliminating
//! with `v` as the last non-hypothesis column, `v` is determined iff it is a
//! pivot, and its pivot row reads `v = c ⊕ λ·a`. The explanations are then
//! `P1` cut by the equations `λ·a = c ⊕ b`.

use crate::abduction::{Instance, Manifestation};
use crate::error::{AbdError, Result};

use super::gf2::{projection_order, size_of, AffineSystem, Equation};
use super::search::{first_full, Decider};
use super::{affine_form, require, Method, Search, SolveOutcome, SolverConfig};

/// Columns are the instance's variables in sorted order; hypotheses occupy
/// the columns in `hyp_cols`.
pub(crate) struct AffineDecider {
    s1: AffineSystem,
    /// `S1 ∪ ¬ψ` for literals, clauses and formulas.
    s2: Option<AffineSystem>,
    /// Term literals as (column, value).
    term: Vec<(usize, bool)>,
    hyp_cols: Vec<usize>,
}

/// Linear system of the knowledge base of an instance over L, with columns
/// indexed by the sorted variables of the instance.
pub fn affine_system(p: &Instance) -> Result<AffineSystem> {
    let universe = p.universe();
    let col = |v: &str| universe.binary_search_by(|u| u.as_str().cmp(v)).unwrap();
    let mut s = AffineSystem::new(universe.len());
    for f in &p.kb {
        let (c0, atoms) = affine_form(f)?;
        let mut e = Equation::zero(universe.len());
        for a in &atoms {
            e.set(col(a), true);
        }
        e.rhs = !c0;
        s.push(e);
    }
    Ok(s)
}

impl AffineDecider {
    pub fn new(p: &Instance) -> Result<Self> {
        let universe = p.universe();
        let n = universe.len();
        let col = |v: &str| universe.binary_search_by(|u| u.as_str().cmp(v)).unwrap();
        let s1 = affine_system(p)?;
        let mut term = Vec::new();
        let s2 = match &p.manifestation {
            Manifestation::Query(l) => {
                let mut s = s1.clone();
                s.push(Equation::unit(n, col(&l.var), !l.positive));
                Some(s)
            }
            Manifestation::Clause(ls) => {
                let mut s = s1.clone();
                for l in ls {
                    s.push(Equation::unit(n, col(&l.var), !l.positive));
                }
                Some(s)
            }
            Manifestation::Formula(psi) => {
                let (c0, atoms) = affine_form(psi)?;
                let mut e = Equation::zero(n);
                for a in &atoms {
                    e.set(col(a), true);
                }
                e.rhs = c0;
                let mut s = s1.clone();
                s.push(e);
                Some(s)
            }
            Manifestation::Term(ls) => {
                term = ls.iter().map(|l| (col(&l.var), l.positive)).collect();
                None
            }
        };
        Ok(AffineDecider {
            s1,
            s2,
            term,
            hyp_cols: p.hyps.iter().map(|h| col(h)).collect(),
        })
    }

    fn with_prefix(&self, s: &AffineSystem, prefix: &[bool]) -> AffineSystem {
        let mut s = s.clone();
        for (&c, &b) in self.hyp_cols.iter().zip(prefix) {
            s.push(Equation::unit(s.ncols, c, b));
        }
        s
    }

    /// Number of full explanations extending `prefix`.
    fn count(&self, prefix: &[bool]) -> u128 {
        let s1 = self.with_prefix(&self.s1, prefix);
        match &self.s2 {
            Some(s2) => {
                let s2 = self.with_prefix(s2, prefix);
                size_of(s1.projection_dim(&self.hyp_cols)) - size_of(s2.projection_dim(&self.hyp_cols))
            }
            None => size_of(self.term_explanations(&s1).and_then(|g| g.projection_dim(&self.hyp_cols))),
        }
    }

    /// System over the hypothesis columns whose solutions are the
    /// explanations of a term manifestation.
    fn term_explanations(&self, s1: &AffineSystem) -> Option<AffineSystem> {
        let mut good = s1.project(&self.hyp_cols)?;
        for &(v, b) in &self.term {
            let mut order = projection_order(s1.ncols, &self.hyp_cols);
            order.retain(|&c| c != v);
            let split = order.len() - self.hyp_cols.len();
            order.insert(split, v);
            let ech = s1.echelon(&order);
            let (_, row) = ech.pivots.into_iter().find(|(c, _)| *c == v)?;
            let mut e = row;
            e.set(v, false);
            e.rhs ^= b;
            good.push(e);
        }
        Some(good)
    }
}

impl Decider for AffineDecider {
    fn decide(&self, prefix: &[bool]) -> Result<bool> {
        Ok(self.count(prefix) > 0)
    }
}

pub(crate) fn solve(p: &Instance) -> Result<Search> {
    let d = AffineDecider::new(p)?;
    let (bits, calls) = first_full(&d, p.hyps.len())?;
    Ok(Search {
        explanation: bits.map(|b| crate::abduction::Explanation::from_bits(&p.hyps, &b)),
        candidates: calls,
        sat_calls: 0,
    })
}

pub(crate) fn count(p: &Instance) -> Result<u64> {
    if p.hyps.len() >= 64 {
        return Err(AbdError::Budget(format!(
            "2^{} does not fit in 64 bits",
            p.hyps.len()
        )));
    }
    Ok(AffineDecider::new(p)?.count(&[]) as u64)
}

pub fn solve_affine(p: &Instance, cfg: &SolverConfig) -> Result<SolveOutcome> {
    super::solve_with_method(p, Method::Affine, cfg)
}

/// Number of full explanations of an instance over L.
pub fn count_affine(p: &Instance) -> Result<u64> {
    require(p, Method::Affine)?;
    count(p)
}
