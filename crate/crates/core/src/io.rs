//! Line-oriented text formats for connective sets and instances.
//!
//! ```text
//! # comment
//! fn or 2 0111
//! kb (or x q)
//! hyp x
//! query q
//! ```

use crate::abduction::{Instance, Manifestation};
use crate::boolean::{Connective, FunctionSet, TruthTable};
use crate::error::{AbdError, Pos, Result};
use crate::formula::{is_identifier, parse_formula_at, parse_literal, render_literals, Literal};

fn syntax(line: usize, column: usize, msg: impl Into<String>) -> AbdError {
    AbdError::Syntax {
        pos: Pos { line, column },
        msg: msg.into(),
    }
}

/// Significant lines as (line number, keyword, rest, column of rest).
fn lines(text: &str) -> impl Iterator<Item = (usize, &str, &str, usize)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let trimmed = body.trim_start();
        if trimmed.trim().is_empty() {
            return None;
        }
        let indent = body.len() - trimmed.len();
        let (kw, rest) = trimmed.split_once(char::is_whitespace).unwrap_or((trimmed, ""));
        let col = indent + kw.len() + 2 + (rest.len() - rest.trim_start().len());
        Some((i + 1, kw, rest.trim(), col))
    })
}

/// Parses the arguments of an `fn <name> <arity> <bits>` line.
pub fn parse_fn_line(rest: &str, line: usize) -> Result<Connective> {
    let parts: Vec<&str> = rest.split_whitespace().collect();
    let [name, arity, bits] = parts[..] else {
        return Err(syntax(line, 1, "expected `fn <name> <arity> <bits>`"));
    };
    if !is_identifier(name) {
        return Err(syntax(line, 1, format!("invalid connective name `{name}`")));
    }
    let arity: usize = arity
        .parse()
        .map_err(|_| syntax(line, 1, format!("invalid arity `{arity}`")))?;
    let table = TruthTable::from_bitstring(arity, bits).map_err(|e| match e {
        AbdError::Input(m) => syntax(line, 1, m),
        e => e,
    })?;
    Ok(Connective::new(name, table))
}

/// A file of `fn` lines.
pub fn parse_base(text: &str) -> Result<FunctionSet> {
    let mut fns = FunctionSet::new();
    for (line, kw, rest, _) in lines(text) {
        match kw {
            "fn" => {
                fns.push(parse_fn_line(rest, line)?)
                    .map_err(|e| syntax(line, 1, e.to_string()))?;
            }
            other => return Err(syntax(line, 1, format!("expected `fn`, found `{other}`"))),
        }
    }
    Ok(fns)
}

pub fn write_base(fns: &FunctionSet) -> String {
    fns.iter().map(|c| c.to_line() + "\n").collect()
}

fn literals(rest: &str, line: usize) -> Result<Vec<Literal>> {
    rest.split_whitespace()
        .map(|t| parse_literal(t).map_err(|e| syntax(line, 1, e.to_string())))
        .collect()
}

/// Parses an instance. `fn` lines must precede the formulas using them.
/// Invariants are checked separately by `validate_instance`.
pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut fns = FunctionSet::new();
    let mut kb = Vec::new();
    let mut hyps = Vec::new();
    let mut manifestation: Option<Manifestation> = None;
    for (line, kw, rest, col) in lines(text) {
        let m = match kw {
            "fn" => {
                fns.push(parse_fn_line(rest, line)?)
                    .map_err(|e| syntax(line, 1, e.to_string()))?;
                None
            }
            "kb" => {
                kb.push(parse_formula_at(rest, &fns, line).map_err(|e| shift(e, col))?);
                None
            }
            "hyp" => {
                for h in rest.split_whitespace() {
                    if !is_identifier(h) {
                        return Err(syntax(line, col, format!("invalid hypothesis `{h}`")));
                    }
                    hyps.push(h.to_string());
                }
                None
            }
            "query" => {
                let ls = literals(rest, line)?;
                let [l] = &ls[..] else {
                    return Err(syntax(line, col, "query takes exactly one literal"));
                };
                Some(Manifestation::Query(l.clone()))
            }
            "clause" | "term" => {
                let ls = literals(rest, line)?;
                if ls.is_empty() {
                    return Err(syntax(line, col, format!("{kw} needs at least one literal")));
                }
                Some(if kw == "clause" {
                    Manifestation::Clause(ls)
                } else {
                    Manifestation::Term(ls)
                })
            }
            "qformula" => Some(Manifestation::Formula(
                parse_formula_at(rest, &fns, line).map_err(|e| shift(e, col))?,
            )),
            other => return Err(syntax(line, 1, format!("unknown directive `{other}`"))),
        };
        if let Some(m) = m {
            if manifestation.is_some() {
                return Err(syntax(line, 1, "more than one manifestation"));
            }
            manifestation = Some(m);
        }
    }
    let manifestation = manifestation.ok_or_else(|| {
        AbdError::Input("missing manifestation (query, clause, term or qformula)".into())
    })?;
    Ok(Instance::new(fns, kb, hyps, manifestation))
}

/// Moves a position reported relative to a directive's argument to the
/// column in the whole line.
fn shift(e: AbdError, col: usize) -> AbdError {
    let fix = |p: Pos| Pos {
        line: p.line,
        column: p.column + col - 1,
    };
    match e {
        AbdError::Syntax { pos, msg } => AbdError::Syntax { pos: fix(pos), msg },
        AbdError::UnknownConnective { name, pos } => AbdError::UnknownConnective { name, pos: fix(pos) },
        AbdError::ArityMismatch { name, expected, found, pos } => AbdError::ArityMismatch {
            name,
            expected,
            found,
            pos: pos.map(fix),
        },
        e => e,
    }
}

pub fn write_instance(p: &Instance) -> String {
    let mut out = write_base(&p.fns);
    for f in &p.kb {
        out += &format!("kb {f}\n");
    }
    out += "hyp";
    for h in &p.hyps {
        out += " ";
        out += h;
    }
    out += "\n";
    out += &match &p.manifestation {
        Manifestation::Query(l) => format!("query {l}"),
        Manifestation::Clause(ls) => format!("clause {}", render_literals(ls)),
        Manifestation::Term(ls) => format!("term {}", render_literals(ls)),
        Manifestation::Formula(f) => format!("qformula {f}"),
    };
    out += "\n";
    out
}
