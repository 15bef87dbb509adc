use std::collections::BTreeMap;
use std::sync::Arc;

use crate::boolean::{Connective, TruthTable};
use crate::error::{AbdError, Result};

use super::ast::Formula;

/// A formula with positional parameters, used as a connective replacement.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct Template {
    pub params: Vec<String>,
    #[serde(serialize_with = "ser_display")]
    pub body: Formula,
}

fn ser_display<S: serde::Serializer>(f: &Formula, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(f)
}

impl Template {
    pub fn arity(&self) -> usize {
        self.params.len()
    }

    /// Substitutes all parameters at once, so arguments mentioning parameter
    /// names are not rewritten again.
    pub fn instantiate(&self, args: &[Formula]) -> Result<Formula> {
        if args.len() != self.params.len() {
            return Err(AbdError::Input(format!(
                "template expects {} argument(s), got {}",
                self.params.len(),
                args.len()
            )));
        }
        Ok(subst_map(&self.body, &|v| {
            self.params.iter().position(|p| p == v).map(|i| args[i].clone())
        }))
    }

    /// Truth table of the template body over its parameters.
    pub fn table(&self) -> Result<TruthTable> {
        self.body.table_over(&self.params)
    }
}

fn subst_map(f: &Formula, lookup: &impl Fn(&str) -> Option<Formula>) -> Formula {
    match f {
        Formula::Var(v) => lookup(v).unwrap_or_else(|| f.clone()),
        Formula::Const(_) => f.clone(),
        Formula::Apply(c, ch) => {
            Formula::Apply(c.clone(), ch.iter().map(|x| subst_map(x, lookup)).collect())
        }
    }
}

/// Replaces every occurrence of variable `v` by `beta`.
pub fn substitute_var(f: &Formula, v: &str, beta: &Formula) -> Formula {
    subst_map(f, &|name| (name == v).then(|| beta.clone()))
}

/// Replaces every constant `c` by `beta`.
pub fn substitute_const(f: &Formula, c: bool, beta: &Formula) -> Formula {
    match f {
        Formula::Const(b) if *b == c => beta.clone(),
        Formula::Var(_) | Formula::Const(_) => f.clone(),
        Formula::Apply(k, ch) => Formula::Apply(
            k.clone(),
            ch.iter().map(|x| substitute_const(x, c, beta)).collect(),
        ),
    }
}

/// Checks every regrouping identity of a `k`-ary connective over `2k - 1`
/// variables.
pub fn check_associative(op: &Connective) -> Result<()> {
    let k = op.arity();
    if k < 2 {
        return Err(AbdError::NotAssociative(op.name.clone()));
    }
    let n = 2 * k - 1;
    let t = &op.table;
    let eval = |args: &[bool]| t.bit(crate::boolean::args_to_row(args));
    for row in 0..(1usize << n) {
        let xs: Vec<bool> = (0..n).map(|j| (row >> (n - 1 - j)) & 1 == 1).collect();
        let mut reference = None;
        for i in 0..k {
            let inner = eval(&xs[i..i + k]);
            let mut outer: Vec<bool> = xs[..i].to_vec();
            outer.push(inner);
            outer.extend_from_slice(&xs[i + k..]);
            let v = eval(&outer);
            match reference {
                None => reference = Some(v),
                Some(r) if r != v => return Err(AbdError::NotAssociative(op.name.clone())),
                _ => {}
            }
        }
    }
    Ok(())
}

/// Combines `items` with the associative `op` into a tree of logarithmic
/// depth, grouping consecutive blocks bottom-up. A `k`-ary operator needs a
/// count of `1 mod (k - 1)` operands; otherwise `identity` is appended as
/// padding.
pub fn balanced_tree(
    op: &Arc<Connective>,
    mut items: Vec<Formula>,
    identity: Option<&Formula>,
) -> Result<Formula> {
    check_associative(op)?;
    let k = op.arity();
    if items.is_empty() {
        return identity
            .cloned()
            .ok_or_else(|| AbdError::Input("balanced_tree of no operands".into()));
    }
    while (items.len() - 1) % (k - 1) != 0 {
        match identity {
            Some(e) => items.push(e.clone()),
            None => {
                return Err(AbdError::Input(format!(
                    "{} operand(s) cannot be combined by a {k}-ary operator",
                    items.len()
                )))
            }
        }
    }
    while items.len() > 1 {
        let mut next = Vec::with_capacity(items.len() / k + k);
        let mut it = items.into_iter().peekable();
        loop {
            let group: Vec<Formula> = it.by_ref().take(k).collect();
            if group.len() == k {
                next.push(Formula::Apply(op.clone(), group));
            } else {
                next.extend(group);
                break;
            }
        }
        items = next;
    }
    Ok(items.pop().unwrap())
}

/// Replaces each connective by its template, innermost first.
pub fn replace_connectives(f: &Formula, templates: &BTreeMap<String, Template>) -> Result<Formula> {
    let out = replace_rec(f, templates)?;
    let size = f.size();
    let bound = 2 * (usize::BITS - (size.max(1) - 1).leading_zeros()) as usize;
    if f.depth() > bound.max(1) {
        log::warn!(
            "input formula has depth {} above 2*ceil(log2 {size}); output may grow",
            f.depth()
        );
    }
    Ok(out)
}

fn replace_rec(f: &Formula, templates: &BTreeMap<String, Template>) -> Result<Formula> {
    match f {
        Formula::Var(_) | Formula::Const(_) => Ok(f.clone()),
        Formula::Apply(c, ch) => {
            let t = templates
                .get(&c.name)
                .ok_or_else(|| AbdError::UncoveredConnective(c.name.clone()))?;
            let args = ch
                .iter()
                .map(|x| replace_rec(x, templates))
                .collect::<Result<Vec<_>>>()?;
            t.instantiate(&args)
        }
    }
}
