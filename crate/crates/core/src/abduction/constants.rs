//! Removing the constants `1` and `0` from an instance.

use std::collections::BTreeSet;

use crate::boolean::{named, FunctionSet};
use crate::error::{AbdError, Result};
use crate::formula::{substitute_const, Formula};
use crate::lattice::{synthesize_representation, Variant, DEFAULT_SYNTH_BUDGET};

use super::instance::{Instance, Manifestation};

/// `prefix`, or `prefix` followed by the smallest index, avoiding `used`.
pub fn fresh_name(prefix: &str, used: &BTreeSet<String>) -> String {
    if !used.contains(prefix) {
        return prefix.to_string();
    }
    (1..)
        .map(|i| format!("{prefix}{i}"))
        .find(|n| !used.contains(n))
        .unwrap()
}

fn mentions_const(p: &Instance, c: bool) -> bool {
    p.all_formulas().any(|f| f.constants().contains(&c))
}

/// Replaces every `1` by a fresh variable `_t` and adds the formula `_t`.
/// Full explanations are in one-to-one correspondence.
pub fn eliminate_true(p: &Instance) -> Instance {
    if !mentions_const(p, true) {
        return p.clone();
    }
    let t = fresh_name("_t", &p.universe().into_iter().collect());
    let tv = Formula::var(&t);
    let mut kb: Vec<Formula> = p.kb.iter().map(|f| substitute_const(f, true, &tv)).collect();
    kb.push(tv.clone());
    let manifestation = match &p.manifestation {
        Manifestation::Formula(f) => Manifestation::Formula(substitute_const(f, true, &tv)),
        m => m.clone(),
    };
    Instance::new(p.fns.clone(), kb, p.hyps.clone(), manifestation)
}

/// [`eliminate_false_with`] using the instance's own connectives as base.
pub fn eliminate_false(p: &Instance) -> Result<Instance> {
    eliminate_false_with(p, &p.fns)
}

/// Replaces every formula `φ` by `φ[0/f] ∨ f` with a fresh hypothesis `f`,
/// where `∨` is written over `base`. Instances without `0` are returned
/// unchanged.
pub fn eliminate_false_with(p: &Instance, base: &FunctionSet) -> Result<Instance> {
    if !mentions_const(p, false) {
        return Ok(p.clone());
    }
    if p.variant() == Variant::F {
        return Err(AbdError::Precondition(
            "removing 0 applies to literal, clause and term manifestations".into(),
        ));
    }
    let or = synthesize_representation(base, &named::or(), DEFAULT_SYNTH_BUDGET).map_err(|e| match e {
        AbdError::NoRepresentation => {
            AbdError::Precondition("removing 0 needs OR in the clone of the base".into())
        }
        e => e,
    })?;
    let f = fresh_name("_f", &p.universe().into_iter().collect());
    let fv = Formula::var(&f);
    let kb = p
        .kb
        .iter()
        .map(|phi| or.instantiate(&[substitute_const(phi, false, &fv), fv.clone()]))
        .collect::<Result<Vec<_>>>()?;
    let mut fns = p.fns.clone();
    for (name, c) in or.body.connectives() {
        let stored = fns.insert_or_get((*c).clone());
        if stored.table != c.table {
            return Err(AbdError::Input(format!(
                "connective `{name}` is declared with a different table"
            )));
        }
    }
    let mut hyps = p.hyps.clone();
    hyps.push(f);
    Ok(Instance::new(fns, kb, hyps, p.manifestation.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abduction::oracle::{oracle_count_full, oracle_solve};
    use crate::boolean::Connective;
    use crate::formula::{parse_formula, Literal};
    use crate::par::Execution;

    fn fns() -> FunctionSet {
        FunctionSet::from_connectives([
            Connective::new("or", named::or()),
            Connective::new("xor3", named::xor3()),
        ])
        .unwrap()
    }

    fn inst(kb: &[&str], hyps: &[&str], q: &str) -> Instance {
        let fs = fns();
        let kb = kb.iter().map(|s| parse_formula(s, &fs).unwrap()).collect();
        Instance::new(fs, kb, hyps.iter().map(|s| s.to_string()), Manifestation::Query(Literal::new(q, true)))
    }

    #[test]
    fn fresh_names_avoid_collisions() {
        let used: BTreeSet<String> = ["_t".to_string(), "_t1".to_string()].into();
        assert_eq!(fresh_name("_t", &used), "_t2");
        assert_eq!(fresh_name("_q", &used), "_q");
    }

    #[test]
    fn true_becomes_a_variable() {
        let p = inst(&["(xor3 x y 1)"], &["x"], "y");
        let q = eliminate_true(&p);
        let kb: Vec<String> = q.kb.iter().map(|f| f.to_string()).collect();
        assert_eq!(kb, vec!["(xor3 x y _t)", "_t"]);
        assert_eq!(q.hyps, p.hyps);
        let e = Execution::Sequential;
        assert_eq!(oracle_count_full(&p, e).unwrap(), oracle_count_full(&q, e).unwrap());
        let plain = inst(&["(or x y)"], &["x"], "y");
        assert_eq!(eliminate_true(&plain), plain);
    }

    #[test]
    fn false_becomes_a_hypothesis() {
        let p = inst(&["(or (or x 0) q)"], &["x"], "q");
        let q = eliminate_false(&p).unwrap();
        assert_eq!(q.kb[0].to_string(), "(or (or (or x _f) q) _f)");
        assert_eq!(q.hyps, vec!["_f", "x"]);
        let e = Execution::Sequential;
        assert_eq!(
            oracle_solve(&p, e).unwrap().is_some(),
            oracle_solve(&q, e).unwrap().is_some()
        );
        let xonly = FunctionSet::from_connectives([Connective::new("xor3", named::xor3())]).unwrap();
        let r = inst(&["(xor3 x q 0)"], &["x"], "q");
        assert!(matches!(eliminate_false_with(&r, &xonly), Err(AbdError::Precondition(_))));
    }
}
