use std::sync::atomic::{AtomicU64, Ordering};

use serde::Serialize;

use crate::error::{AbdError, Result};
use crate::formula::{CnfBuilder, Literal};
use crate::sat::{solve_with, Lit, DEFAULT_CONFLICT_LIMIT};

use super::instance::{Explanation, Instance, Manifestation};

/// SAT access with a shared call counter and conflict cap.
#[derive(Debug)]
pub struct SatCtx {
    pub conflict_limit: u64,
    calls: AtomicU64,
}

impl Default for SatCtx {
    fn default() -> Self {
        SatCtx::new(DEFAULT_CONFLICT_LIMIT)
    }
}

impl SatCtx {
    pub fn new(conflict_limit: u64) -> Self {
        SatCtx {
            conflict_limit,
            calls: AtomicU64::new(0),
        }
    }

    pub fn calls(&self) -> u64 {
        self.calls.load(Ordering::Relaxed)
    }

    pub fn satisfiable(&self, b: &CnfBuilder, assumptions: &[Lit]) -> Result<bool> {
        self.calls.fetch_add(1, Ordering::Relaxed);
        Ok(solve_with(b.cnf(), assumptions, self.conflict_limit)?.is_sat())
    }

    pub fn model(&self, b: &CnfBuilder, assumptions: &[Lit]) -> Result<Option<Vec<bool>>> {
        self.calls.fetch_add(1, Ordering::Relaxed);
        Ok(solve_with(b.cnf(), assumptions, self.conflict_limit)?
            .model()
            .map(|m| m.to_vec()))
    }
}

/// Encodings reused across candidate checks: Γ alone, and for formula
/// manifestations Γ ∧ ¬ψ.
#[derive(Debug, Clone)]
pub struct Encodings {
    pub kb: CnfBuilder,
    pub kb_not_psi: Option<CnfBuilder>,
}

impl Encodings {
    pub fn new(p: &Instance) -> Self {
        let universe = p.universe();
        let mut kb = CnfBuilder::with_vars(&universe);
        for f in &p.kb {
            kb.assert_formula(f, true);
        }
        let kb_not_psi = match &p.manifestation {
            Manifestation::Formula(psi) => {
                let mut b = kb.clone();
                b.assert_formula(psi, false);
                Some(b)
            }
            _ => None,
        };
        Encodings { kb, kb_not_psi }
    }

    fn lit(&self, l: &Literal) -> Lit {
        let v = self
            .kb
            .lookup(&l.var)
            .expect("universe variables are registered");
        Lit::new(v, l.positive)
    }

    pub fn assumptions(&self, e: &Explanation) -> Vec<Lit> {
        e.literals.iter().map(|l| self.lit(l)).collect()
    }

    pub fn satisfiable_with(&self, ctx: &SatCtx, e: &Explanation) -> Result<bool> {
        ctx.satisfiable(&self.kb, &self.assumptions(e))
    }

    /// `Γ ∧ E ⊨ ψ`, vacuously true when `Γ ∧ E` is unsatisfiable.
    pub fn entails(&self, ctx: &SatCtx, p: &Instance, e: &Explanation) -> Result<bool> {
        let base = self.assumptions(e);
        let refutes = |extra: &[Lit]| -> Result<bool> {
            let mut a = base.clone();
            a.extend_from_slice(extra);
            Ok(!ctx.satisfiable(&self.kb, &a)?)
        };
        match &p.manifestation {
            Manifestation::Query(l) => refutes(&[!self.lit(l)]),
            Manifestation::Clause(ls) => {
                let neg: Vec<Lit> = ls.iter().map(|l| !self.lit(l)).collect();
                refutes(&neg)
            }
            Manifestation::Term(ls) => {
                for l in ls {
                    if !refutes(&[!self.lit(l)])? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            Manifestation::Formula(_) => {
                let b = self.kb_not_psi.as_ref().expect("built for formula manifestations");
                Ok(!ctx.satisfiable(b, &base)?)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Verification {
    pub is_explanation: bool,
    pub satisfiable_with_e: bool,
    pub entails_manifestation: bool,
}

/// Checks both explanation conditions. Literals outside the hypotheses or an
/// inconsistent set make the answer negative.
pub fn verify_explanation(p: &Instance, e: &Explanation, ctx: &SatCtx) -> Result<Verification> {
    let enc = Encodings::new(p);
    verify_with(p, &enc, e, ctx)
}

pub(crate) fn verify_with(
    p: &Instance,
    enc: &Encodings,
    e: &Explanation,
    ctx: &SatCtx,
) -> Result<Verification> {
    let well_formed = e.is_consistent() && e.literals.iter().all(|l| p.is_hyp(&l.var));
    if !well_formed {
        return Ok(Verification {
            is_explanation: false,
            satisfiable_with_e: false,
            entails_manifestation: false,
        });
    }
    let sat = enc.satisfiable_with(ctx, e)?;
    let ent = enc.entails(ctx, p, e)?;
    Ok(Verification {
        is_explanation: sat && ent,
        satisfiable_with_e: sat,
        entails_manifestation: ent,
    })
}

pub fn is_explanation(p: &Instance, e: &Explanation) -> Result<bool> {
    Ok(verify_explanation(p, e, &SatCtx::default())?.is_explanation)
}

/// Completes an explanation over the missing hypotheses in sorted order,
/// preferring the positive literal whenever Γ stays satisfiable.
pub fn extend_to_full(p: &Instance, e: &Explanation, ctx: &SatCtx) -> Result<Explanation> {
    let enc = Encodings::new(p);
    if !verify_with(p, &enc, e, ctx)?.is_explanation {
        return Err(AbdError::Precondition(format!(
            "`{e}` is not an explanation"
        )));
    }
    let mut cur = e.clone();
    for h in &p.hyps {
        if cur.value_of(h).is_some() {
            continue;
        }
        let mut lits = cur.literals.clone();
        lits.push(Literal::new(h.clone(), true));
        let pos = Explanation::new(lits.clone());
        if enc.satisfiable_with(ctx, &pos)? {
            cur = pos;
        } else {
            lits.pop();
            lits.push(Literal::new(h.clone(), false));
            cur = Explanation::new(lits);
        }
    }
    Ok(cur)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolean::{named, Connective, FunctionSet};
    use crate::formula::parse_formula;

    fn or_inst(kb: &[&str], hyps: &[&str], q: &str) -> Instance {
        let fns = FunctionSet::from_connectives([Connective::new("or", named::or())]).unwrap();
        let kb = kb.iter().map(|s| parse_formula(s, &fns).unwrap()).collect();
        Instance::new(
            fns,
            kb,
            hyps.iter().map(|s| s.to_string()),
            Manifestation::Query(Literal::new(q, true)),
        )
    }

    #[test]
    fn explanation_examples() {
        let p = or_inst(&["(or x q)"], &["x"], "q");
        assert!(is_explanation(&p, &Explanation::parse("!x").unwrap()).unwrap());
        let v = verify_explanation(&p, &Explanation::parse("x").unwrap(), &SatCtx::default()).unwrap();
        assert_eq!(
            v,
            Verification {
                is_explanation: false,
                satisfiable_with_e: true,
                entails_manifestation: false
            }
        );
        assert!(!is_explanation(&p, &Explanation::empty()).unwrap());
    }

    #[test]
    fn extension_prefers_positive() {
        let p = or_inst(&["(or x q)", "(or y y)"], &["x", "y"], "q");
        let ctx = SatCtx::default();
        let e = extend_to_full(&p, &Explanation::parse("!x").unwrap(), &ctx).unwrap();
        assert_eq!(e.to_string(), "!x y");
        assert_eq!(extend_to_full(&p, &e, &ctx).unwrap(), e);
        assert!(extend_to_full(&p, &Explanation::parse("x").unwrap(), &ctx).is_err());
        let empty = or_inst(&["q"], &[], "q");
        assert_eq!(extend_to_full(&empty, &Explanation::empty(), &ctx).unwrap(), Explanation::empty());
    }
}
