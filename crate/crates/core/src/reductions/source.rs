//! Source problems of the hardness reductions, their text formats and
//! brute-force evaluation.

use std::fmt;

use crate::error::{AbdError, Pos, Result};
use crate::solvers::{AffineSystem, Equation};

/// Largest number of variables the brute-force evaluators accept.
pub const MAX_SOURCE_VARS: usize = 24;

fn syntax(line: usize, msg: impl Into<String>) -> AbdError {
    AbdError::Syntax {
        pos: Pos { line, column: 1 },
        msg: msg.into(),
    }
}

fn assignments(n: usize) -> Result<impl Iterator<Item = Vec<bool>>> {
    if n > MAX_SOURCE_VARS {
        return Err(AbdError::Budget(format!(
            "{n} variables exceed the evaluator limit of {MAX_SOURCE_VARS}"
        )));
    }
    Ok((0u64..1 << n).map(move |m| (0..n).map(|i| (m >> i) & 1 == 1).collect()))
}

fn lit_holds(l: i32, a: &[bool]) -> bool {
    a[l.unsigned_abs() as usize - 1] == (l > 0)
}

/// Clauses or terms in DIMACS-style signed indices, variables `1..=num_vars`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClauseSet {
    pub num_vars: usize,
    pub rows: Vec<Vec<i32>>,
}

impl ClauseSet {
    pub fn new(num_vars: usize, rows: Vec<Vec<i32>>) -> Result<Self> {
        for r in &rows {
            for &l in r {
                if l == 0 || l.unsigned_abs() as usize > num_vars {
                    return Err(AbdError::Input(format!(
                        "literal {l} outside variables 1..={num_vars}"
                    )));
                }
            }
        }
        Ok(ClauseSet { num_vars, rows })
    }

    pub fn eval_cnf(&self, a: &[bool]) -> bool {
        self.rows.iter().all(|c| c.iter().any(|&l| lit_holds(l, a)))
    }

    pub fn eval_dnf(&self, a: &[bool]) -> bool {
        self.rows.iter().any(|t| t.iter().all(|&l| lit_holds(l, a)))
    }

    pub fn satisfiable(&self) -> Result<bool> {
        Ok(assignments(self.num_vars)?.any(|a| self.eval_cnf(&a)))
    }

    pub fn count_models(&self) -> Result<u64> {
        Ok(assignments(self.num_vars)?.filter(|a| self.eval_cnf(a)).count() as u64)
    }

    /// Some assignment makes exactly two literals of every clause true.
    pub fn exactly_two_satisfiable(&self) -> Result<bool> {
        Ok(assignments(self.num_vars)?.any(|a| {
            self.rows
                .iter()
                .all(|c| c.iter().filter(|&&l| lit_holds(l, &a)).count() == 2)
        }))
    }

    /// Variables that occur in some row, ascending.
    pub fn occurring(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self
            .rows
            .iter()
            .flatten()
            .map(|l| l.unsigned_abs() as usize)
            .collect();
        v.sort();
        v.dedup();
        v
    }

    /// DIMACS-like text: optional `p cnf|dnf <vars> <rows>` header, `c`
    /// comments, rows of nonzero integers each terminated by `0`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut declared = None;
        let mut rows = Vec::new();
        let mut cur = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let t = line.trim();
            if t.is_empty() || t.starts_with('c') || t.starts_with('#') {
                continue;
            }
            if let Some(h) = t.strip_prefix('p') {
                let parts: Vec<&str> = h.split_whitespace().collect();
                match parts[..] {
                    [_, n, _] => {
                        declared = Some(n.parse().map_err(|_| syntax(i + 1, "bad header"))?)
                    }
                    _ => return Err(syntax(i + 1, "expected `p <kind> <vars> <rows>`")),
                }
                continue;
            }
            for tok in t.split_whitespace() {
                let l: i32 = tok
                    .parse()
                    .map_err(|_| syntax(i + 1, format!("invalid literal `{tok}`")))?;
                if l == 0 {
                    rows.push(std::mem::take(&mut cur));
                } else {
                    cur.push(l);
                }
            }
        }
        if !cur.is_empty() {
            rows.push(cur);
        }
        let max = rows.iter().flatten().map(|l| l.unsigned_abs() as usize).max().unwrap_or(0);
        ClauseSet::new(declared.unwrap_or(max), rows)
    }

    pub fn to_text(&self, kind: &str) -> String {
        let mut s = format!("p {kind} {} {}\n", self.num_vars, self.rows.len());
        for r in &self.rows {
            for l in r {
                s += &format!("{l} ");
            }
            s += "0\n";
        }
        s
    }
}

/// Equations `x_{i1} ⊕ … ⊕ x_{ik} = c` over variables `1..=num_vars`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSystem {
    pub num_vars: usize,
    pub equations: Vec<(Vec<usize>, bool)>,
}

impl LinearSystem {
    pub fn new(num_vars: usize, equations: Vec<(Vec<usize>, bool)>) -> Result<Self> {
        for (vs, _) in &equations {
            if let Some(&v) = vs.iter().find(|&&v| v == 0 || v > num_vars) {
                return Err(AbdError::Input(format!(
                    "variable {v} outside 1..={num_vars}"
                )));
            }
        }
        Ok(LinearSystem {
            num_vars,
            equations,
        })
    }

    pub fn solvable(&self) -> bool {
        let mut s = AffineSystem::new(self.num_vars);
        for (vs, c) in &self.equations {
            let mut e = Equation::zero(self.num_vars);
            for &v in vs {
                e.flip(v - 1);
            }
            e.rhs = *c;
            s.push(e);
        }
        s.is_consistent()
    }

    /// `eq i1 i2 … = c` lines, an optional `vars n` line, `#` comments.
    pub fn parse(text: &str) -> Result<Self> {
        let mut declared = None;
        let mut eqs = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let t = line.split('#').next().unwrap_or("").trim();
            if t.is_empty() {
                continue;
            }
            let parts: Vec<&str> = t.split_whitespace().collect();
            match parts[0] {
                "vars" if parts.len() == 2 => {
                    declared = Some(parts[1].parse().map_err(|_| syntax(i + 1, "bad vars line"))?)
                }
                "eq" => {
                    let eq_at = parts
                        .iter()
                        .position(|&p| p == "=")
                        .ok_or_else(|| syntax(i + 1, "missing `=`"))?;
                    let vs = parts[1..eq_at]
                        .iter()
                        .map(|p| p.parse::<usize>())
                        .collect::<std::result::Result<Vec<_>, _>>()
                        .map_err(|_| syntax(i + 1, "invalid variable index"))?;
                    let c = match parts.get(eq_at + 1..) {
                        Some(["0"]) => false,
                        Some(["1"]) => true,
                        _ => return Err(syntax(i + 1, "right-hand side must be 0 or 1")),
                    };
                    eqs.push((vs, c));
                }
                other => return Err(syntax(i + 1, format!("unknown directive `{other}`"))),
            }
        }
        let max = eqs.iter().flat_map(|(v, _)| v.iter().copied()).max().unwrap_or(0);
        LinearSystem::new(declared.unwrap_or(max), eqs)
    }
}

impl fmt::Display for LinearSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "vars {}", self.num_vars)?;
        for (vs, c) in &self.equations {
            write!(f, "eq")?;
            for v in vs {
                write!(f, " {v}")?;
            }
            writeln!(f, " = {}", *c as u8)?;
        }
        Ok(())
    }
}

/// `∃x_1…x_n ∀y_1…y_m φ` with `φ` in DNF. In `matrix`, index `i ≤ n` is
/// `x_i` and index `n + j` is `y_j`. Read as a counting problem, the `x`
/// variables are free.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Qbf2 {
    pub exists: usize,
    pub forall: usize,
    pub matrix: ClauseSet,
}

impl Qbf2 {
    pub fn new(exists: usize, forall: usize, terms: Vec<Vec<i32>>) -> Result<Self> {
        Ok(Qbf2 {
            exists,
            forall,
            matrix: ClauseSet::new(exists + forall, terms)?,
        })
    }

    fn valid_for(&self, x: &[bool]) -> Result<bool> {
        for y in assignments(self.forall)? {
            let mut a = x.to_vec();
            a.extend(y);
            if !self.matrix.eval_dnf(&a) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn truth(&self) -> Result<bool> {
        for x in assignments(self.exists)? {
            if self.valid_for(&x)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Number of `x` with `∀y φ(x, y)`.
    pub fn count_models(&self) -> Result<u64> {
        let mut n = 0;
        for x in assignments(self.exists)? {
            n += self.valid_for(&x)? as u64;
        }
        Ok(n)
    }

    /// `exists i…`, `forall j…` and `dnf` followed by DIMACS-style terms over
    /// the declared indices. Variables are renumbered in declaration order.
    pub fn parse(text: &str) -> Result<Self> {
        let mut ex: Vec<i32> = Vec::new();
        let mut fa: Vec<i32> = Vec::new();
        let mut body = String::new();
        let mut in_dnf = false;
        for (i, line) in text.lines().enumerate() {
            let t = line.split('#').next().unwrap_or("").trim();
            if t.is_empty() {
                continue;
            }
            if in_dnf {
                body += t;
                body += "\n";
                continue;
            }
            let (kw, rest) = t.split_once(char::is_whitespace).unwrap_or((t, ""));
            let ints = || {
                rest.split_whitespace()
                    .map(|p| p.parse::<i32>().map_err(|_| syntax(i + 1, "invalid index")))
                    .collect::<Result<Vec<_>>>()
            };
            match kw {
                "exists" => ex.extend(ints()?),
                "forall" => fa.extend(ints()?),
                "dnf" => {
                    in_dnf = true;
                    body += rest;
                    body += "\n";
                }
                other => return Err(syntax(i + 1, format!("unknown directive `{other}`"))),
            }
        }
        let order: Vec<i32> = ex.iter().chain(&fa).copied().collect();
        let mut seen = order.clone();
        seen.sort();
        seen.dedup();
        if seen.len() != order.len() || order.iter().any(|&v| v <= 0) {
            return Err(AbdError::Input("quantified indices must be positive and distinct".into()));
        }
        let raw = ClauseSet::parse(&body)?;
        let mut terms = Vec::new();
        for t in raw.rows {
            let mut out = Vec::new();
            for l in t {
                let pos = order
                    .iter()
                    .position(|&v| v == l.abs())
                    .ok_or_else(|| AbdError::Input(format!("variable {} is not quantified", l.abs())))?;
                out.push((pos as i32 + 1) * l.signum());
            }
            terms.push(out);
        }
        Qbf2::new(ex.len(), fa.len(), terms)
    }
}

impl fmt::Display for Qbf2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ex: Vec<String> = (1..=self.exists).map(|i| i.to_string()).collect();
        let fa: Vec<String> = (self.exists + 1..=self.exists + self.forall)
            .map(|i| i.to_string())
            .collect();
        writeln!(f, "exists {}", ex.join(" "))?;
        writeln!(f, "forall {}", fa.join(" "))?;
        writeln!(f, "dnf")?;
        for t in &self.matrix.rows {
            for l in t {
                write!(f, "{l} ")?;
            }
            writeln!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clause_sets() {
        let c = ClauseSet::parse("c demo\np cnf 3 1\n1 2 3 0\n").unwrap();
        assert!(c.exactly_two_satisfiable().unwrap());
        assert_eq!(c.count_models().unwrap(), 7);
        let same = ClauseSet::parse(&c.to_text("cnf")).unwrap();
        assert_eq!(same, c);
        let contra = ClauseSet::parse("1 0\n-1 0\n").unwrap();
        assert!(!contra.satisfiable().unwrap());
        assert!(ClauseSet::parse("p cnf 1 1\n2 0\n").is_err());
    }

    #[test]
    fn linear_systems() {
        let s = LinearSystem::parse("eq 1 = 1\neq 1 = 0\n").unwrap();
        assert!(!s.solvable());
        let t = LinearSystem::parse(&LinearSystem::new(2, vec![(vec![1, 2], true)]).unwrap().to_string()).unwrap();
        assert!(t.solvable());
        assert_eq!(t.num_vars, 2);
    }

    #[test]
    fn qbfs() {
        // ∃x1 ∀y1 (x1 ∧ y1) ∨ (x1 ∧ ¬y1)
        let q = Qbf2::parse("exists 1\nforall 2\ndnf\n1 2 0\n1 -2 0\n").unwrap();
        assert!(q.truth().unwrap());
        assert_eq!(q.count_models().unwrap(), 1);
        let r = Qbf2::parse("exists 5\nforall 7\ndnf 5 7 0\n").unwrap();
        assert_eq!(r.matrix.rows, vec![vec![1, 2]]);
        assert!(!r.truth().unwrap());
        assert_eq!(Qbf2::parse(&q.to_string()).unwrap(), q);
    }
}
