//! Knowledge bases over M. After substituting a candidate, Γ is monotone in
//! the remaining variables, so it is satisfiable iff the all-ones assignment
//! satisfies it, and it entails a positive clause iff setting the clause's
//! atoms to 0 (everything else to 1) falsifies it. Candidates are checked 64
//! at a time, one per lane of a machine word.

use std::collections::BTreeMap;

use crate::abduction::{Explanation, Instance};
use crate::boolean::function_properties;
use crate::error::{AbdError, Result};
use crate::formula::{block_words, lane_mask, Circuit, Formula};
use crate::par::{find_first, map_indices};

use super::{check_budget, monotone_goal, Goal, Search, SolverConfig};

/// Satisfiability of a set of monotone formulas: true iff all of them hold
/// when every variable is 1.
pub fn monotone_satisfiable(kb: &[Formula]) -> Result<bool> {
    for f in kb {
        for (name, c) in f.connectives() {
            if !function_properties(&c.table).monotone {
                return Err(AbdError::Precondition(format!(
                    "connective `{name}` is not monotone"
                )));
            }
        }
    }
    for f in kb {
        if !f.eval_with(&|_| Some(true))? {
            return Ok(false);
        }
    }
    Ok(true)
}

struct Scanner {
    kb: Circuit,
    nh: usize,
    nvars: usize,
    goal: Goal,
    atoms: Vec<usize>,
}

impl Scanner {
    fn new(p: &Instance) -> Result<Self> {
        let universe = p.universe();
        let mut index = BTreeMap::new();
        for (i, h) in p.hyps.iter().enumerate() {
            index.insert(h.clone(), i);
        }
        for v in universe.iter().filter(|v| !p.is_hyp(v)) {
            let i = index.len();
            index.insert(v.clone(), i);
        }
        let goal = monotone_goal(p)?;
        let atoms = match &goal {
            Goal::AnyOf(s) | Goal::AllOf(s) => s.iter().map(|a| index[a]).collect(),
            _ => vec![],
        };
        Ok(Scanner {
            kb: Circuit::compile(&p.kb, &index)?,
            nh: p.hyps.len(),
            nvars: universe.len(),
            goal,
            atoms,
        })
    }

    fn blocks(&self) -> u64 {
        if self.nh > 6 {
            1 << (self.nh - 6)
        } else {
            1
        }
    }

    /// Lanes of block `block` holding full explanations.
    fn good(&self, block: u64) -> u64 {
        let mut words = block_words(self.nh, block);
        words.resize(self.nvars, !0);
        let mut scratch = Vec::new();
        let sat = self.kb.eval_all_words(&words, &mut scratch) & lane_mask(self.nh);
        if sat == 0 {
            return 0;
        }
        let mut refuted_without = |atoms: &[usize]| {
            let mut w = words.clone();
            for &a in atoms {
                w[a] = 0;
            }
            !self.kb.eval_all_words(&w, &mut scratch)
        };
        let ent = match &self.goal {
            Goal::Always => !0,
            Goal::Never => 0,
            Goal::AnyOf(_) => refuted_without(&self.atoms),
            Goal::AllOf(_) => self
                .atoms
                .iter()
                .fold(!0, |acc, &a| acc & refuted_without(&[a])),
        };
        sat & ent
    }
}

pub(crate) fn solve(p: &Instance, cfg: &SolverConfig) -> Result<Search> {
    let total = check_budget(p, cfg)?;
    let s = Scanner::new(p)?;
    let hit = find_first(s.blocks(), cfg.exec, |b| Ok(s.good(b) != 0))?;
    Ok(match hit {
        Some(b) => {
            let idx = b * 64 + s.good(b).trailing_zeros() as u64;
            Search {
                explanation: Some(Explanation::from_index(&p.hyps, idx)),
                candidates: idx + 1,
                sat_calls: 0,
            }
        }
        None => Search {
            explanation: None,
            candidates: total,
            sat_calls: 0,
        },
    })
}

pub(crate) fn count(p: &Instance, cfg: &SolverConfig) -> Result<u64> {
    check_budget(p, cfg)?;
    let s = Scanner::new(p)?;
    Ok(map_indices(s.blocks(), cfg.exec, |b| s.good(b).count_ones() as u64)
        .into_iter()
        .sum())
}

pub(crate) fn enumerate(p: &Instance, cfg: &SolverConfig) -> Result<Vec<Explanation>> {
    check_budget(p, cfg)?;
    let s = Scanner::new(p)?;
    let words = map_indices(s.blocks(), cfg.exec, |b| s.good(b));
    let mut out = Vec::new();
    for (b, mut w) in words.into_iter().enumerate() {
        while w != 0 {
            let lane = w.trailing_zeros() as u64;
            out.push(Explanation::from_index(&p.hyps, b as u64 * 64 + lane));
            w &= w - 1;
        }
    }
    Ok(out)
}
