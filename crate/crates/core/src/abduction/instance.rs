use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::boolean::{named, Connective, FunctionSet, TruthTable};
use crate::error::{AbdError, Result};
use crate::formula::{is_identifier, parse_literal, render_literals, Formula, Literal};
use crate::lattice::{identify_tables, CloneId, Variant};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Manifestation {
    Query(Literal),
    Clause(Vec<Literal>),
    Term(Vec<Literal>),
    Formula(Formula),
}

impl Manifestation {
    pub fn variant(&self) -> Variant {
        match self {
            Manifestation::Query(_) => Variant::Q,
            Manifestation::Clause(_) => Variant::C,
            Manifestation::Term(_) => Variant::T,
            Manifestation::Formula(_) => Variant::F,
        }
    }

    pub fn vars(&self) -> BTreeSet<String> {
        match self {
            Manifestation::Query(l) => [l.var.clone()].into(),
            Manifestation::Clause(ls) | Manifestation::Term(ls) => {
                ls.iter().map(|l| l.var.clone()).collect()
            }
            Manifestation::Formula(f) => f.vars(),
        }
    }

    /// Literals of a query, clause or term.
    pub fn literals(&self) -> Option<&[Literal]> {
        match self {
            Manifestation::Query(l) => Some(std::slice::from_ref(l)),
            Manifestation::Clause(ls) | Manifestation::Term(ls) => Some(ls),
            Manifestation::Formula(_) => None,
        }
    }

    pub fn eval(&self, sigma: &impl Fn(&str) -> Option<bool>) -> Result<bool> {
        let lit = |l: &Literal| {
            sigma(&l.var)
                .map(|v| l.holds(v))
                .ok_or_else(|| AbdError::Unassigned(l.var.clone()))
        };
        match self {
            Manifestation::Query(l) => lit(l),
            Manifestation::Clause(ls) => {
                for l in ls {
                    if lit(l)? {
                        return Ok(true);
                    }
                }
                Ok(false)
            }
            Manifestation::Term(ls) => {
                for l in ls {
                    if !lit(l)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            Manifestation::Formula(f) => f.eval_with(sigma),
        }
    }
}

impl fmt::Display for Manifestation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Manifestation::Query(l) => write!(f, "query {l}"),
            Manifestation::Clause(ls) => write!(f, "clause {}", render_literals(ls)),
            Manifestation::Term(ls) => write!(f, "term {}", render_literals(ls)),
            Manifestation::Formula(x) => write!(f, "qformula {x}"),
        }
    }
}

/// An abduction instance `(Γ, A, ψ)` over a declared connective set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub fns: FunctionSet,
    pub kb: Vec<Formula>,
    pub hyps: Vec<String>,
    pub manifestation: Manifestation,
}

impl Instance {
    /// Collapses duplicate formulas (keeping first occurrences) and sorts the
    /// hypotheses.
    pub fn new(
        fns: FunctionSet,
        kb: Vec<Formula>,
        hyps: impl IntoIterator<Item = String>,
        manifestation: Manifestation,
    ) -> Self {
        let mut seen = BTreeSet::new();
        let kb = kb.into_iter().filter(|f| seen.insert(f.clone())).collect();
        let hyps: BTreeSet<String> = hyps.into_iter().collect();
        Instance {
            fns,
            kb,
            hyps: hyps.into_iter().collect(),
            manifestation,
        }
    }

    pub fn variant(&self) -> Variant {
        self.manifestation.variant()
    }

    pub fn kb_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for f in &self.kb {
            f.collect_vars(&mut out);
        }
        out
    }

    /// `Vars(Γ) ∪ A ∪ Vars(ψ)`, sorted.
    pub fn universe(&self) -> Vec<String> {
        let mut out = self.kb_vars();
        out.extend(self.hyps.iter().cloned());
        out.extend(self.manifestation.vars());
        out.into_iter().collect()
    }

    pub fn is_hyp(&self, v: &str) -> bool {
        self.hyps.binary_search_by(|h| h.as_str().cmp(v)).is_ok()
    }

    /// Connectives actually used by Γ (and by ψ for formula manifestations),
    /// plus the constants that occur, as nullary connectives `0` and `1`.
    pub fn effective_base(&self) -> FunctionSet {
        let mut conns = BTreeMap::new();
        let mut consts = BTreeSet::new();
        let mut scan = |f: &Formula| {
            f.collect_connectives(&mut conns);
            consts.extend(f.constants());
        };
        self.kb.iter().for_each(&mut scan);
        if let Manifestation::Formula(f) = &self.manifestation {
            scan(f);
        }
        let mut set = FunctionSet::new();
        for c in conns.into_values() {
            set.insert_or_get((*c).clone());
        }
        for b in consts {
            let t = if b { named::const1() } else { named::const0() };
            set.insert_or_get(Connective::new(if b { "1" } else { "0" }, t));
        }
        set
    }

    pub fn effective_clone(&self) -> CloneId {
        let tables: Vec<TruthTable> = self.effective_base().tables();
        identify_tables(&tables)
    }

    pub fn all_formulas(&self) -> impl Iterator<Item = &Formula> {
        self.kb.iter().chain(match &self.manifestation {
            Manifestation::Formula(f) => Some(f),
            _ => None,
        })
    }
}

/// A set of hypothesis literals, kept sorted by variable.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Explanation {
    pub literals: Vec<Literal>,
}

impl Explanation {
    pub fn new(mut literals: Vec<Literal>) -> Self {
        literals.sort();
        literals.dedup();
        Explanation { literals }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// Full assignment to `hyps` (sorted) from the bits of a candidate index,
    /// first hypothesis most significant, 0 meaning the negative literal.
    pub fn from_index(hyps: &[String], index: u64) -> Self {
        let n = hyps.len();
        Explanation {
            literals: hyps
                .iter()
                .enumerate()
                .map(|(j, h)| Literal::new(h.clone(), (index >> (n - 1 - j)) & 1 == 1))
                .collect(),
        }
    }

    pub fn from_bits(hyps: &[String], bits: &[bool]) -> Self {
        Explanation {
            literals: hyps
                .iter()
                .zip(bits)
                .map(|(h, &b)| Literal::new(h.clone(), b))
                .collect(),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let lits = text
            .split_whitespace()
            .map(parse_literal)
            .collect::<Result<Vec<_>>>()?;
        Ok(Explanation::new(lits))
    }

    pub fn is_consistent(&self) -> bool {
        self.literals.windows(2).all(|w| w[0].var != w[1].var)
    }

    pub fn is_full(&self, hyps: &[String]) -> bool {
        self.is_consistent()
            && self.literals.len() == hyps.len()
            && self.literals.iter().zip(hyps).all(|(l, h)| l.var == *h)
    }

    pub fn value_of(&self, v: &str) -> Option<bool> {
        self.literals
            .binary_search_by(|l| l.var.as_str().cmp(v))
            .ok()
            .map(|i| self.literals[i].positive)
    }
}

impl fmt::Display for Explanation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_literals(&self.literals))
    }
}

impl Serialize for Explanation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// All violations of the instance invariants; empty means valid.
pub fn validate_instance(p: &Instance) -> Vec<String> {
    let mut errs = Vec::new();
    let kb_vars = p.kb_vars();
    for h in &p.hyps {
        if !is_identifier(h) {
            errs.push(format!("invalid hypothesis name `{h}`"));
        }
        if !kb_vars.contains(h) {
            errs.push(format!("hypothesis `{h}` outside knowledge base"));
        }
    }
    for v in p.manifestation.vars() {
        if p.is_hyp(&v) {
            errs.push(format!("manifestation variable `{v}` overlaps hypotheses"));
        } else if !kb_vars.contains(&v) {
            errs.push(format!("manifestation variable `{v}` outside knowledge base"));
        }
    }
    match &p.manifestation {
        Manifestation::Clause(ls) | Manifestation::Term(ls) if ls.is_empty() => {
            errs.push("empty clause or term manifestation".into());
        }
        _ => {}
    }
    for (i, f) in p.all_formulas().enumerate() {
        for (name, c) in f.connectives() {
            match p.fns.get(&name) {
                Some(d) if d.table == c.table => {}
                Some(_) => errs.push(format!("formula {}: connective `{name}` differs from its declaration", i + 1)),
                None => errs.push(format!("formula {}: undeclared connective `{name}`", i + 1)),
            }
        }
    }
    errs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_formula;

    fn inst(kb: &[&str], hyps: &[&str], m: Manifestation) -> Instance {
        let fns = FunctionSet::from_connectives([Connective::new("or", named::or())]).unwrap();
        let kb = kb.iter().map(|s| parse_formula(s, &fns).unwrap()).collect();
        Instance::new(fns, kb, hyps.iter().map(|s| s.to_string()), m)
    }

    #[test]
    fn validation_examples() {
        let q = Manifestation::Query(Literal::new("q", true));
        assert!(validate_instance(&inst(&["(or x q)"], &["x"], q.clone())).is_empty());
        let e = validate_instance(&inst(&["(or x q)"], &["z"], q.clone()));
        assert!(e.iter().any(|m| m.contains("hypothesis `z` outside knowledge base")));
        let e = validate_instance(&inst(&["(or x q)"], &["q"], q));
        assert!(e.iter().any(|m| m.contains("overlaps hypotheses")));
    }

    #[test]
    fn kb_is_a_set() {
        let p = inst(&["(or x q)", "(or x q)", "x"], &["x", "x"], Manifestation::Query(Literal::new("q", true)));
        assert_eq!(p.kb.len(), 2);
        assert_eq!(p.hyps, vec!["x"]);
    }

    #[test]
    fn explanation_order_and_parse() {
        let hyps = vec!["a".to_string(), "b".to_string()];
        assert_eq!(Explanation::from_index(&hyps, 1).to_string(), "!a b");
        let e = Explanation::parse("b !a").unwrap();
        assert_eq!(e.to_string(), "!a b");
        assert!(e.is_full(&hyps));
        assert!(!Explanation::parse("a !a").unwrap().is_consistent());
    }

    #[test]
    fn effective_base_lists_used_connectives_and_constants() {
        let p = inst(&["(or x 1)"], &[], Manifestation::Query(Literal::new("x", true)));
        let names: Vec<String> = p.effective_base().iter().map(|c| c.name.clone()).collect();
        assert_eq!(names, vec!["or", "1"]);
    }
}
