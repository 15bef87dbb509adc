use std::collections::BTreeMap;

use crate::error::{AbdError, Result};
use crate::formula::{block_words, lane_mask, Circuit};
use crate::par::{map_indices, Execution};

use super::instance::{Explanation, Instance, Manifestation};

pub const ORACLE_MAX_HYPS: usize = 16;
pub const ORACLE_MAX_VARS: usize = 20;

/// Truth-table evaluation of every full candidate. Entry `i` tells whether
/// the candidate with index `i` (canonical order) is a full explanation.
pub fn oracle_table(p: &Instance, exec: Execution) -> Result<Vec<bool>> {
    let universe = p.universe();
    if p.hyps.len() > ORACLE_MAX_HYPS || universe.len() > ORACLE_MAX_VARS {
        return Err(AbdError::Budget(format!(
            "oracle scale is |A| <= {ORACLE_MAX_HYPS}, |Vars| <= {ORACLE_MAX_VARS}; got {} and {}",
            p.hyps.len(),
            universe.len()
        )));
    }
    // hypotheses first, then the remaining variables as lanes
    let rest: Vec<&String> = universe.iter().filter(|v| !p.is_hyp(v)).collect();
    let mut index = BTreeMap::new();
    for (i, h) in p.hyps.iter().enumerate() {
        index.insert(h.clone(), i);
    }
    for (i, v) in rest.iter().enumerate() {
        index.insert((*v).clone(), p.hyps.len() + i);
    }
    let kb = Circuit::compile(&p.kb, &index)?;
    let psi = match &p.manifestation {
        Manifestation::Formula(f) => Some(Circuit::compile([f], &index)?),
        _ => None,
    };
    let nh = p.hyps.len();
    let nr = rest.len();
    let mask = lane_mask(nr);
    let blocks = if nr > 6 { 1u64 << (nr - 6) } else { 1 };
    let lits: Vec<(usize, bool)> = p
        .manifestation
        .literals()
        .unwrap_or(&[])
        .iter()
        .map(|l| (index[&l.var], l.positive))
        .collect();

    map_indices(1u64 << nh, exec, |cand| -> Result<bool> {
        let mut words = vec![0u64; nh + nr];
        let mut scratch = Vec::new();
        for j in 0..nh {
            words[j] = if (cand >> (nh - 1 - j)) & 1 == 1 { !0 } else { 0 };
        }
        let (mut sat, mut bad) = (false, false);
        for block in 0..blocks {
            words[nh..].copy_from_slice(&block_words(nr, block));
            let k = kb.eval_all_words(&words, &mut scratch) & mask;
            if k == 0 {
                continue;
            }
            sat = true;
            let lit = |&(i, pos): &(usize, bool)| if pos { words[i] } else { !words[i] };
            let m = match &p.manifestation {
                Manifestation::Query(_) | Manifestation::Clause(_) => {
                    lits.iter().map(lit).fold(0, |a, b| a | b)
                }
                Manifestation::Term(_) => lits.iter().map(lit).fold(!0, |a, b| a & b),
                Manifestation::Formula(_) => psi.as_ref().unwrap().eval_words(&words, &mut scratch)[0],
            };
            if k & !m != 0 {
                bad = true;
                break;
            }
        }
        Ok(sat && !bad)
    })
    .into_iter()
    .collect()
}

pub fn oracle_solve(p: &Instance, exec: Execution) -> Result<Option<Explanation>> {
    let t = oracle_table(p, exec)?;
    Ok(t.iter()
        .position(|&g| g)
        .map(|i| Explanation::from_index(&p.hyps, i as u64)))
}

pub fn oracle_count_full(p: &Instance, exec: Execution) -> Result<u64> {
    Ok(oracle_table(p, exec)?.iter().filter(|&&g| g).count() as u64)
}

pub fn oracle_enumerate(p: &Instance, exec: Execution) -> Result<Vec<Explanation>> {
    Ok(oracle_table(p, exec)?
        .iter()
        .enumerate()
        .filter(|(_, &g)| g)
        .map(|(i, _)| Explanation::from_index(&p.hyps, i as u64))
        .collect())
}
