use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::boolean::{Connective, TruthTable};
use crate::error::{AbdError, Result};

/// A formula over named connectives.
///
/// The derived order puts variables before constants before applications,
/// compares variables by name and applications by connective, then children.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Var(String),
    Const(bool),
    Apply(Arc<Connective>, Vec<Formula>),
}

impl Formula {
    pub fn var(name: impl Into<String>) -> Self {
        Formula::Var(name.into())
    }

    pub fn apply(c: &Arc<Connective>, args: Vec<Formula>) -> Result<Self> {
        if args.len() != c.arity() {
            return Err(AbdError::ArityMismatch {
                name: c.name.clone(),
                expected: c.arity(),
                found: args.len(),
                pos: None,
            });
        }
        Ok(Formula::Apply(c.clone(), args))
    }

    /// Every `Var`/`Const` counts 1, every application 1 plus its children.
    pub fn size(&self) -> usize {
        match self {
            Formula::Var(_) | Formula::Const(_) => 1,
            Formula::Apply(_, ch) => 1 + ch.iter().map(Formula::size).sum::<usize>(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::Var(_) | Formula::Const(_) => 0,
            Formula::Apply(_, ch) => 1 + ch.iter().map(Formula::depth).max().unwrap_or(0),
        }
    }

    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    pub(crate) fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Var(v) => {
                if !out.contains(v) {
                    out.insert(v.clone());
                }
            }
            Formula::Const(_) => {}
            Formula::Apply(_, ch) => ch.iter().for_each(|c| c.collect_vars(out)),
        }
    }

    /// Connectives used, deduplicated by name.
    pub fn connectives(&self) -> BTreeMap<String, Arc<Connective>> {
        let mut out = BTreeMap::new();
        self.collect_connectives(&mut out);
        out
    }

    pub(crate) fn collect_connectives(&self, out: &mut BTreeMap<String, Arc<Connective>>) {
        if let Formula::Apply(c, ch) = self {
            out.entry(c.name.clone()).or_insert_with(|| c.clone());
            ch.iter().for_each(|x| x.collect_connectives(out));
        }
    }

    pub fn constants(&self) -> BTreeSet<bool> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| {
            if let Formula::Const(b) = f {
                out.insert(*b);
            }
        });
        out
    }

    pub fn visit(&self, f: &mut impl FnMut(&Formula)) {
        f(self);
        if let Formula::Apply(_, ch) = self {
            ch.iter().for_each(|c| c.visit(f));
        }
    }

    /// Evaluates under `sigma`; unassigned variables are an error.
    pub fn eval_with(&self, sigma: &impl Fn(&str) -> Option<bool>) -> Result<bool> {
        match self {
            Formula::Var(v) => sigma(v).ok_or_else(|| AbdError::Unassigned(v.clone())),
            Formula::Const(b) => Ok(*b),
            Formula::Apply(c, ch) => {
                let mut row = 0usize;
                for x in ch {
                    row = row << 1 | x.eval_with(sigma)? as usize;
                }
                Ok(c.table.bit(row))
            }
        }
    }

    pub fn eval(&self, sigma: &BTreeMap<String, bool>) -> Result<bool> {
        self.eval_with(&|v| sigma.get(v).copied())
    }

    /// Truth table over `vars` in the given order (first is most significant).
    pub fn table_over(&self, vars: &[String]) -> Result<TruthTable> {
        if vars.len() > crate::boolean::MAX_ARITY {
            return Err(AbdError::Input("too many variables for a truth table".into()));
        }
        let mut bits = 0u64;
        for row in 0..(1usize << vars.len()) {
            let v = self.eval_with(&|name| {
                vars.iter()
                    .position(|x| x == name)
                    .map(|j| (row >> (vars.len() - 1 - j)) & 1 == 1)
            })?;
            if v {
                bits |= 1 << row;
            }
        }
        TruthTable::new(vars.len(), bits)
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Var(v) => write!(f, "{v}"),
            Formula::Const(b) => write!(f, "{}", *b as u8),
            Formula::Apply(c, ch) => {
                write!(f, "({}", c.name)?;
                for x in ch {
                    write!(f, " {x}")?;
                }
                write!(f, ")")
            }
        }
    }
}
