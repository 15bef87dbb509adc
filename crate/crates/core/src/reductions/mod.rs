//! Instance generators built from hardness reductions, and seeded random
//! instances for testing.
//!
//! Each construction first writes its instance over a fixed set of standard
//! connectives, then rewrites every connective into the requested base.
//! Templates are sought over `B`, then `B ∪ {1}`, then `B ∪ {0, 1}`; any
//! constants introduced this way are removed afterwards, `0` by a fresh
//! hypothesis and `1` by a fresh variable.
//!
//! Fresh variables use the reserved prefixes `_q`, `_r`, `_t`, `_f` and `_p`.

mod constructions;
mod random;
mod source;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;

use crate::abduction::{eliminate_false_with, eliminate_true, validate_instance, Instance, Manifestation};
use crate::boolean::{named, Connective, FunctionSet, TruthTable};
use crate::error::{AbdError, Result};
use crate::formula::{balanced_tree, replace_connectives, Formula, Template};
use crate::lattice::{
    clone_leq, identify_clone, synthesize_representation, CloneId, Family, Variant,
    DEFAULT_SYNTH_BUDGET,
};

pub use constructions::{
    from_linear_system, from_pi1_count, from_pos2sat_count, from_qsat2_formula,
    from_three_sat_term, from_two_in_three_sat,
};
pub use random::{gen_random_instance, random_source, RandomSizes};
pub use source::{ClauseSet, LinearSystem, Qbf2, MAX_SOURCE_VARS};

/// The implemented reductions, named as on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Reduction {
    LinSys,
    TwoInThree,
    ThreeSatTerm,
    Qsat2,
    Pi1Count,
    Pos2Sat,
}

impl Reduction {
    pub const ALL: [Reduction; 6] = [
        Reduction::LinSys,
        Reduction::TwoInThree,
        Reduction::ThreeSatTerm,
        Reduction::Qsat2,
        Reduction::Pi1Count,
        Reduction::Pos2Sat,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Reduction::LinSys => "linsys",
            Reduction::TwoInThree => "2in3",
            Reduction::ThreeSatTerm => "3sat-term",
            Reduction::Qsat2 => "qsat2",
            Reduction::Pi1Count => "pi1-count",
            Reduction::Pos2Sat => "pos2sat",
        }
    }
}

impl fmt::Display for Reduction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Reduction {
    type Err = AbdError;
    fn from_str(s: &str) -> Result<Self> {
        Reduction::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| AbdError::Input(format!("unknown reduction `{s}`")))
    }
}

/// A source problem of one of the reductions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    Linear(LinearSystem),
    Cnf(ClauseSet),
    Qbf(Qbf2),
}

impl Source {
    /// Parses the text format the reduction reads.
    pub fn parse(r: Reduction, text: &str) -> Result<Self> {
        Ok(match r {
            Reduction::LinSys => Source::Linear(LinearSystem::parse(text)?),
            Reduction::TwoInThree | Reduction::ThreeSatTerm | Reduction::Pos2Sat => {
                Source::Cnf(ClauseSet::parse(text)?)
            }
            Reduction::Qsat2 | Reduction::Pi1Count => Source::Qbf(Qbf2::parse(text)?),
        })
    }

    pub fn to_text(&self) -> String {
        match self {
            Source::Linear(s) => s.to_string(),
            Source::Cnf(c) => c.to_text("cnf"),
            Source::Qbf(q) => q.to_string(),
        }
    }
}

/// The property a generated instance is expected to have.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Sidecar {
    pub reduction: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expect_solvable: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected_count: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub formula_models: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct Generated {
    pub instance: Instance,
    pub sidecar: Sidecar,
}

/// `Some(v)` unless the source is too large to evaluate by enumeration.
fn within_scale<T>(r: Result<T>) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(AbdError::Budget(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Runs reduction `r` on `src` over `base` and computes the expected
/// property of the result when the source is small enough.
pub fn generate(r: Reduction, src: &Source, base: &FunctionSet) -> Result<Generated> {
    let mut sidecar = Sidecar {
        reduction: r.name().to_string(),
        ..Sidecar::default()
    };
    let instance = match (r, src) {
        (Reduction::LinSys, Source::Linear(s)) => {
            sidecar.expect_solvable = Some(!s.solvable());
            from_linear_system(s, base)?
        }
        (Reduction::TwoInThree, Source::Cnf(c)) => {
            let p = from_two_in_three_sat(c, base)?;
            sidecar.expect_solvable = within_scale(c.exactly_two_satisfiable())?;
            p
        }
        (Reduction::ThreeSatTerm, Source::Cnf(c)) => {
            let p = from_three_sat_term(c, base)?;
            sidecar.expect_solvable = within_scale(c.satisfiable())?;
            p
        }
        (Reduction::Qsat2, Source::Qbf(q)) => {
            let p = from_qsat2_formula(q, base)?;
            sidecar.expect_solvable = within_scale(q.truth())?;
            p
        }
        (Reduction::Pi1Count, Source::Qbf(q)) => {
            let p = from_pi1_count(q, base)?;
            sidecar.expected_count = within_scale(q.count_models())?;
            p
        }
        (Reduction::Pos2Sat, Source::Cnf(c)) => {
            let (p, n) = from_pos2sat_count(c, base)?;
            if let Some(m) = within_scale(c.count_models())? {
                sidecar.formula_models = Some(m);
                sidecar.expected_count = Some((1u64 << n) - m);
            }
            sidecar.n = Some(n);
            p
        }
        _ => return Err(AbdError::Input(format!("source kind does not fit reduction {r}"))),
    };
    Ok(Generated { instance, sidecar })
}

/// The connectives the constructions are written in.
pub(crate) struct Std {
    pub fns: FunctionSet,
    pub or: Arc<Connective>,
    pub and: Arc<Connective>,
    pub not: Arc<Connective>,
    pub imp: Arc<Connective>,
    pub xor3: Arc<Connective>,
    pub or_and: Arc<Connective>,
}

impl Std {
    pub fn new() -> Self {
        let mut fns = FunctionSet::new();
        let mut add = |n: &str, t: TruthTable| fns.insert_or_get(Connective::new(n, t));
        let or = add("or", named::or());
        let and = add("and", named::and());
        let not = add("not", named::not());
        let imp = add("imp", named::implies());
        let xor3 = add("xor3", named::xor3());
        let or_and = add("or_and", named::or_and());
        Std {
            fns,
            or,
            and,
            not,
            imp,
            xor3,
            or_and,
        }
    }

    pub fn app(&self, c: &Arc<Connective>, args: Vec<Formula>) -> Formula {
        Formula::Apply(c.clone(), args)
    }

    /// Disjunction of nonempty `items` as a balanced tree.
    pub fn any(&self, items: Vec<Formula>) -> Formula {
        balanced_tree(&self.or, items, None).expect("nonempty disjunction")
    }

    pub fn all(&self, items: Vec<Formula>) -> Formula {
        balanced_tree(&self.and, items, None).expect("nonempty conjunction")
    }
}

/// Whether `[base]` includes the plain clone `f`.
pub(crate) fn includes(base: &FunctionSet, f: Family) -> bool {
    clone_leq(CloneId::plain(f), identify_clone(base))
}

fn with_constants(base: &FunctionSet, consts: &[bool]) -> FunctionSet {
    let mut b = base.clone();
    for &c in consts {
        let (name, t) = if c { ("1", named::const1()) } else { ("0", named::const0()) };
        b.insert_or_get(Connective::new(name, t));
    }
    b
}

/// A template for `target` over `base`, adding `1` and then `0` if needed.
fn express(base: &FunctionSet, name: &str, target: &TruthTable, allow_false: bool) -> Result<Template> {
    let mut attempts = vec![base.clone(), with_constants(base, &[true])];
    if allow_false {
        attempts.push(with_constants(base, &[false, true]));
    }
    for b in &attempts {
        match synthesize_representation(b, target, DEFAULT_SYNTH_BUDGET) {
            Err(AbdError::NoRepresentation) => continue,
            r => return r,
        }
    }
    Err(AbdError::Precondition(format!(
        "`{name}` cannot be written over the base{}",
        if allow_false { " even with constants" } else { " and 1" }
    )))
}

/// Rewrites an instance over arbitrary connectives into `base`, then
/// removes the constants. Explanations and their number are preserved.
pub fn rewrite_to_base(p: &Instance, base: &FunctionSet) -> Result<Instance> {
    let mut base = base.clone();
    base.retain(|c| c.arity() > 0);
    let allow_false = p.variant() != Variant::F;
    let mut templates = BTreeMap::new();
    for f in p.all_formulas() {
        for (name, c) in f.connectives() {
            if !templates.contains_key(&name) {
                let t = express(&base, &name, &c.table, allow_false)?;
                templates.insert(name, t);
            }
        }
    }
    let kb = p
        .kb
        .iter()
        .map(|f| replace_connectives(f, &templates))
        .collect::<Result<Vec<_>>>()?;
    let manifestation = match &p.manifestation {
        Manifestation::Formula(f) => Manifestation::Formula(replace_connectives(f, &templates)?),
        m => m.clone(),
    };
    let q = Instance::new(base.clone(), kb, p.hyps.clone(), manifestation);
    let q = eliminate_false_with(&q, &with_constants(&base, &[true]))?;
    let q = eliminate_true(&q);
    let errs = validate_instance(&q);
    if !errs.is_empty() {
        return Err(AbdError::Internal(format!("generated instance is invalid: {}", errs.join("; "))));
    }
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abduction::{oracle_count_full, oracle_solve};
    use crate::formula::parse_formula;
    use crate::formula::Literal;
    use crate::par::Execution;

    #[test]
    fn names_round_trip() {
        for r in Reduction::ALL {
            assert_eq!(r.name().parse::<Reduction>().unwrap(), r);
        }
        assert!("3sat".parse::<Reduction>().is_err());
    }

    #[test]
    fn rewriting_keeps_counts() {
        let std = Std::new();
        let kb = ["(imp x q)", "(or (not y) q)", "(xor3 x y 1)"]
            .iter()
            .map(|s| parse_formula(s, &std.fns).unwrap())
            .collect();
        let p = Instance::new(
            std.fns.clone(),
            kb,
            ["x".to_string(), "y".to_string()],
            Manifestation::Query(Literal::new("q", true)),
        );
        let nand = FunctionSet::from_connectives([Connective::new(
            "nand",
            TruthTable::from_bitstring(2, "1110").unwrap(),
        )])
        .unwrap();
        let q = rewrite_to_base(&p, &nand).unwrap();
        assert!(q.fns.iter().all(|c| c.name == "nand"));
        assert_eq!(
            oracle_count_full(&q, Execution::Sequential).unwrap(),
            oracle_count_full(&p, Execution::Sequential).unwrap()
        );
        assert_eq!(
            oracle_solve(&q, Execution::Sequential).unwrap().is_some(),
            oracle_solve(&p, Execution::Sequential).unwrap().is_some()
        );
    }
}
