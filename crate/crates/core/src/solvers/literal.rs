//! Knowledge bases over E or N are equivalent to sets of literals. If any
//! explanation exists then so does the empty one, and the full explanations
//! are exactly the hypothesis assignments consistent with the forced
//! literals.

use std::collections::BTreeMap;

use crate::abduction::{Explanation, Instance, Manifestation, SatCtx};
use crate::error::{AbdError, Result};
use crate::formula::{has_complementary, CnfBuilder, Formula};
use crate::lattice::{clone_leq, CloneId, Family};
use crate::sat::Lit;

use super::search::Decider;
use super::{conjunction_atoms, Search};

/// Literals forced by Γ, or `None` when Γ is unsatisfiable.
fn forced_literals(p: &Instance) -> Result<Option<BTreeMap<String, bool>>> {
    let as_conjunction = clone_leq(p.effective_clone(), CloneId::plain(Family::E));
    let mut forced = BTreeMap::new();
    for f in &p.kb {
        let lits = if as_conjunction {
            match conjunction_atoms(f)? {
                None => return Ok(None),
                Some(atoms) => atoms.into_iter().map(|a| (a, true)).collect(),
            }
        } else {
            match unary_literal(f)? {
                Err(false) => return Ok(None),
                Err(true) => vec![],
                Ok(l) => vec![l],
            }
        };
        for (v, b) in lits {
            if *forced.entry(v).or_insert(b) != b {
                return Ok(None);
            }
        }
    }
    Ok(Some(forced))
}

/// A formula over N: `Ok((x, polarity))`, or `Err(c)` for the constant `c`.
fn unary_literal(f: &Formula) -> Result<std::result::Result<(String, bool), bool>> {
    let c = f.eval_with(&|_| Some(false))?;
    for x in f.vars() {
        if f.eval_with(&|v| Some(v == x))? != c {
            return Ok(Ok((x, !c)));
        }
    }
    Ok(Err(c))
}

/// Whether Γ ≡ `forced` entails the manifestation.
fn entails(p: &Instance, forced: &BTreeMap<String, bool>, ctx: &SatCtx) -> Result<bool> {
    let has = |v: &str, b: bool| forced.get(v) == Some(&b);
    Ok(match &p.manifestation {
        Manifestation::Query(l) => has(&l.var, l.positive),
        Manifestation::Clause(ls) => has_complementary(ls) || ls.iter().any(|l| has(&l.var, l.positive)),
        Manifestation::Term(ls) => ls.iter().all(|l| has(&l.var, l.positive)),
        Manifestation::Formula(psi) => {
            let mut b = CnfBuilder::with_vars(&p.universe());
            b.assert_formula(psi, false);
            let units: Vec<Lit> = forced
                .iter()
                .map(|(v, &s)| Lit::new(b.var(v), s))
                .collect();
            !ctx.satisfiable(&b, &units)?
        }
    })
}

pub(crate) struct LiteralDecider {
    forced: Option<BTreeMap<String, bool>>,
    hyps: Vec<String>,
}

impl LiteralDecider {
    /// `forced` is kept only when the empty explanation works.
    pub fn new(p: &Instance, ctx: &SatCtx) -> Result<Self> {
        let forced = match forced_literals(p)? {
            Some(f) if entails(p, &f, ctx)? => Some(f),
            _ => None,
        };
        Ok(LiteralDecider {
            forced,
            hyps: p.hyps.clone(),
        })
    }
}

impl Decider for LiteralDecider {
    fn decide(&self, prefix: &[bool]) -> Result<bool> {
        let Some(forced) = &self.forced else {
            return Ok(false);
        };
        Ok(self
            .hyps
            .iter()
            .zip(prefix)
            .all(|(h, &b)| forced.get(h).is_none_or(|&f| f == b)))
    }
}

pub(crate) fn solve(p: &Instance, ctx: &SatCtx) -> Result<Search> {
    let d = LiteralDecider::new(p, ctx)?;
    Ok(Search {
        explanation: d.forced.as_ref().map(|_| Explanation::empty()),
        candidates: 1,
        sat_calls: ctx.calls(),
    })
}

/// `2^(|A| - |forced hypotheses|)` when an explanation exists, else 0.
pub(crate) fn count(p: &Instance, ctx: &SatCtx) -> Result<u64> {
    let d = LiteralDecider::new(p, ctx)?;
    let Some(forced) = &d.forced else {
        return Ok(0);
    };
    let free = p.hyps.iter().filter(|h| !forced.contains_key(*h)).count();
    if free >= 64 {
        return Err(AbdError::Budget(format!("2^{free} does not fit in 64 bits")));
    }
    Ok(1u64 << free)
}
