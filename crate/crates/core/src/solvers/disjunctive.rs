//! Knowledge bases over V: every formula is a positive clause or a constant.
//!
//! Once the hypotheses are fixed, what remains of Γ is a positive clause set
//! over the other variables. Such a set, when satisfiable, entails a positive
//! clause `M` exactly when one of its clauses is contained in `M` (otherwise
//! setting `M` to 0 and everything else to 1 is a countermodel). Hence an
//! explanation exists iff some clause `S` has its non-hypothesis part
//! nonempty and inside `M`, and zeroing its hypothesis part `X` leaves Γ
//! satisfiable, i.e. no clause lies inside `X`. The witness is `{¬x : x ∈ X}`.

use crate::abduction::{extend_to_full, Explanation, Instance, SatCtx};
use crate::error::Result;

use super::search::Decider;
use super::{disjunction_atoms, monotone_goal, Goal, Search};

/// Variables are numbered: hypotheses first (sorted), then the rest.
pub(crate) struct VDecider {
    nh: usize,
    /// `None` when some formula is the constant 0.
    clauses: Option<Vec<Vec<usize>>>,
    goal: Goal,
    /// Goal atoms as variable numbers.
    atoms: Vec<usize>,
}

impl VDecider {
    pub fn new(p: &Instance) -> Result<Self> {
        let universe = p.universe();
        let mut order: Vec<&String> = p.hyps.iter().collect();
        order.extend(universe.iter().filter(|v| !p.is_hyp(v)));
        let num = |v: &String| order.iter().position(|o| *o == v).unwrap();
        let mut clauses = Some(Vec::new());
        for f in &p.kb {
            match disjunction_atoms(f)? {
                None => {}
                Some(s) if s.is_empty() => clauses = None,
                Some(s) => {
                    if let Some(cs) = clauses.as_mut() {
                        cs.push(s.iter().map(num).collect());
                    }
                }
            }
        }
        let goal = monotone_goal(p)?;
        let atoms = match &goal {
            Goal::AnyOf(s) | Goal::AllOf(s) => s.iter().map(num).collect(),
            _ => vec![],
        };
        Ok(VDecider {
            nh: p.hyps.len(),
            clauses,
            goal,
            atoms,
        })
    }

    /// Clauses after fixing the prefix, or `None` if one became empty.
    fn reduced(&self, prefix: &[bool]) -> Option<Vec<Vec<usize>>> {
        let mut out = Vec::new();
        for c in self.clauses.as_ref()? {
            if c.iter().any(|&v| v < prefix.len() && prefix[v]) {
                continue;
            }
            let r: Vec<usize> = c.iter().copied().filter(|&v| v >= prefix.len()).collect();
            if r.is_empty() {
                return None;
            }
            out.push(r);
        }
        Some(out)
    }

    /// Hypothesis part of a witness clause for the reduced instance.
    fn witness(&self, prefix: &[bool]) -> Option<Vec<usize>> {
        let cs = self.reduced(prefix)?;
        match &self.goal {
            Goal::Always => Some(vec![]),
            Goal::Never | Goal::AllOf(_) => None,
            Goal::AnyOf(_) => cs.iter().find_map(|s| {
                let (x, rest): (Vec<usize>, Vec<usize>) = s.iter().partition(|&&v| v < self.nh);
                let fits = !rest.is_empty() && rest.iter().all(|v| self.atoms.contains(v));
                let consistent = !cs.iter().any(|t| t.iter().all(|v| x.contains(v)));
                (fits && consistent).then_some(x)
            }),
        }
    }
}

impl Decider for VDecider {
    fn decide(&self, prefix: &[bool]) -> Result<bool> {
        Ok(self.witness(prefix).is_some())
    }
}

pub(crate) fn solve(p: &Instance, ctx: &SatCtx) -> Result<Search> {
    let d = VDecider::new(p)?;
    let explanation = match d.witness(&[]) {
        None => None,
        Some(x) => {
            let e = Explanation::from_bits(
                &x.iter().map(|&i| p.hyps[i].clone()).collect::<Vec<_>>(),
                &vec![false; x.len()],
            );
            Some(extend_to_full(p, &Explanation::new(e.literals), ctx)?)
        }
    };
    Ok(Search {
        explanation,
        candidates: 1,
        sat_calls: ctx.calls(),
    })
}
