use std::collections::HashMap;

use crate::boolean::{in_closure, FunctionSet, TruthTable, MAX_CLOSURE_ARITY};
use crate::error::{AbdError, Result};
use crate::formula::{gate_word, Formula, Template};

pub const DEFAULT_SYNTH_BUDGET: u64 = 1 << 22;

const PARAMS: [&str; 4] = ["x", "y", "z", "w"];

/// Finds a smallest formula over `base` computing `target`, breaking ties by
/// the structural order on formulas. `budget` caps the number of connective
/// applications tried.
pub fn synthesize_representation(
    base: &FunctionSet,
    target: &TruthTable,
    budget: u64,
) -> Result<Template> {
    let m = target.arity();
    if m > MAX_CLOSURE_ARITY {
        return Err(AbdError::Unsupported(format!(
            "synthesis is limited to arity {MAX_CLOSURE_ARITY}"
        )));
    }
    let member = if m == 0 {
        constant_closure(base).contains(&target.bit(0))
    } else {
        in_closure(&base.tables(), target)?
    };
    if !member {
        return Err(AbdError::NoRepresentation);
    }

    let mask = TruthTable::constant(m, true).bits();
    let mut best: HashMap<u64, Formula> = HashMap::new();
    // levels[s] lists the tables whose smallest formula has size s
    let mut levels: Vec<Vec<u64>> = vec![Vec::new(), Vec::new()];
    let mut first: Vec<(u64, Formula)> = Vec::new();
    for (j, p) in PARAMS.iter().enumerate().take(m) {
        first.push((TruthTable::projection(m, j).bits(), Formula::var(*p)));
    }
    for c in base.iter().filter(|c| c.arity() == 0) {
        let v = c.table.bit(0);
        first.push((if v { mask } else { 0 }, Formula::Const(v)));
    }
    for (t, f) in first {
        match best.get(&t) {
            Some(g) if *g <= f => {}
            _ => {
                if !levels[1].contains(&t) {
                    levels[1].push(t);
                }
                best.insert(t, f);
            }
        }
    }

    let mut spent = 0u64;
    let mut partial = Vec::new();
    let mut size = 1;
    while !best.contains_key(&target.bits()) {
        size += 1;
        let mut found: HashMap<u64, Formula> = HashMap::new();
        for c in base.iter().filter(|c| c.arity() > 0) {
            let k = c.arity();
            for parts in compositions(size - 1, k) {
                if parts.iter().any(|&s| levels.get(s).is_none_or(|l| l.is_empty())) {
                    continue;
                }
                let lists: Vec<&Vec<u64>> = parts.iter().map(|&s| &levels[s]).collect();
                let mut idx = vec![0usize; k];
                loop {
                    spent += 1;
                    if spent > budget {
                        return Err(AbdError::Budget(format!(
                            "synthesis tried {budget} applications"
                        )));
                    }
                    let args = idx.iter().zip(&lists).map(|(&i, l)| l[i]);
                    let t = gate_word(&c.table, args, &mut partial) & mask;
                    if !best.contains_key(&t) {
                        let cand = Formula::Apply(
                            c.clone(),
                            idx.iter().zip(&lists).map(|(&i, l)| best[&l[i]].clone()).collect(),
                        );
                        match found.get(&t) {
                            Some(g) if *g <= cand => {}
                            _ => {
                                found.insert(t, cand);
                            }
                        }
                    }
                    // advance the odometer, last position fastest
                    let mut p = k;
                    let done = loop {
                        if p == 0 {
                            break true;
                        }
                        p -= 1;
                        idx[p] += 1;
                        if idx[p] < lists[p].len() {
                            break false;
                        }
                        idx[p] = 0;
                    };
                    if done {
                        break;
                    }
                }
            }
        }
        let mut new: Vec<u64> = found.keys().copied().collect();
        new.sort_unstable();
        levels.push(new);
        best.extend(found);
    }

    let body = best.remove(&target.bits()).unwrap();
    let template = Template {
        params: PARAMS[..m].iter().map(|s| s.to_string()).collect(),
        body,
    };
    debug_assert_eq!(template.table().ok(), Some(*target));
    if template.table()? != *target {
        return Err(AbdError::Input("synthesized formula does not match the target".into()));
    }
    Ok(template)
}

/// Ordered ways to write `total` as `k` positive parts.
fn compositions(total: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(total: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == 1 {
            if total >= 1 {
                cur.push(total);
                out.push(cur.clone());
                cur.pop();
            }
            return;
        }
        for first in 1..total.saturating_sub(k - 2) {
            cur.push(first);
            rec(total - first, k - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if total >= k {
        rec(total, k, &mut Vec::new(), &mut out);
    }
    out
}

/// Constant values reachable by applying base functions to constants.
fn constant_closure(base: &FunctionSet) -> Vec<bool> {
    let mut have: Vec<bool> = Vec::new();
    for c in base.iter().filter(|c| c.arity() == 0) {
        if !have.contains(&c.table.bit(0)) {
            have.push(c.table.bit(0));
        }
    }
    loop {
        let before = have.len();
        for c in base.iter().filter(|c| c.arity() > 0) {
            let k = c.arity();
            for row in 0..c.table.rows() {
                let ok = (0..k).all(|j| have.contains(&((row >> (k - 1 - j)) & 1 == 1)));
                if ok && !have.contains(&c.table.bit(row)) {
                    have.push(c.table.bit(row));
                }
            }
        }
        if have.len() == before {
            return have;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolean::{named, Connective};

    fn set(fs: &[(&str, TruthTable)]) -> FunctionSet {
        FunctionSet::from_connectives(fs.iter().map(|(n, t)| Connective::new(*n, *t))).unwrap()
    }

    #[test]
    fn compositions_enumerate_all() {
        assert_eq!(compositions(3, 2), vec![vec![1, 2], vec![2, 1]]);
        assert_eq!(compositions(4, 3).len(), 3);
        assert!(compositions(1, 2).is_empty());
    }

    #[test]
    fn and_from_h() {
        let t = synthesize_representation(&set(&[("h", named::and_not())]), &named::and(), 1 << 20)
            .unwrap();
        assert_eq!(t.body.to_string(), "(h x (h x y))");
    }

    #[test]
    fn base_function_itself() {
        let t = synthesize_representation(&set(&[("f", named::or_and())]), &named::or_and(), 1000)
            .unwrap();
        assert_eq!(t.body.to_string(), "(f x y z)");
    }

    #[test]
    fn or3_from_or() {
        let t = synthesize_representation(
            &set(&[("or", named::or())]),
            &TruthTable::from_fn(3, |a| a[0] || a[1] || a[2]),
            1000,
        )
        .unwrap();
        assert_eq!(t.body.size(), 5);
        assert_eq!(t.body.to_string(), "(or x (or y z))");
    }

    #[test]
    fn constants() {
        let b = set(&[("xnor", named::xnor())]);
        assert_eq!(synthesize_representation(&b, &named::const1(), 100), Err(AbdError::NoRepresentation));
        let b = set(&[("imp", named::implies()), ("zero", named::const0())]);
        let t = synthesize_representation(&b, &named::const1(), 100).unwrap();
        assert_eq!(t.body.to_string(), "(imp 0 0)");
        let t = synthesize_representation(&b, &named::not(), 100).unwrap();
        assert_eq!(t.body.to_string(), "(imp x 0)");
    }

    #[test]
    fn outside_clone() {
        let b = set(&[("or", named::or())]);
        assert_eq!(
            synthesize_representation(&b, &named::and(), 1000),
            Err(AbdError::NoRepresentation)
        );
        assert!(synthesize_representation(&set(&[("and", named::and()), ("not", named::not())]), &named::xor(), 5)
            .unwrap_err()
            .is_budget());
    }
}
