use std::collections::BTreeMap;

use crate::sat::{Cnf, Lit};

use super::ast::Formula;
use super::literal::Literal;

/// Value of a subformula during encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Enc {
    Const(bool),
    Lit(Lit),
}

/// Gate-by-gate (Tseitin style) CNF encoding. Named variables are numbered in
/// registration order; each gate gets a fresh variable.
#[derive(Debug, Clone, Default)]
pub struct CnfBuilder {
    cnf: Cnf,
    vars: BTreeMap<String, u32>,
    names: Vec<Option<String>>,
}

impl CnfBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_vars<'a>(names: impl IntoIterator<Item = &'a String>) -> Self {
        let mut b = Self::new();
        for n in names {
            b.var(n);
        }
        b
    }

    fn fresh(&mut self) -> u32 {
        let v = self.cnf.num_vars;
        self.cnf.num_vars += 1;
        self.names.push(None);
        v
    }

    pub fn var(&mut self, name: &str) -> u32 {
        if let Some(&v) = self.vars.get(name) {
            return v;
        }
        let v = self.fresh();
        self.names[v as usize] = Some(name.to_string());
        self.vars.insert(name.to_string(), v);
        v
    }

    pub fn lookup(&self, name: &str) -> Option<u32> {
        self.vars.get(name).copied()
    }

    pub fn literal(&mut self, l: &Literal) -> Lit {
        Lit::new(self.var(&l.var), l.positive)
    }

    pub fn add_clause(&mut self, c: Vec<Lit>) {
        self.cnf.add_clause(c);
    }

    /// Encodes `f` and returns its output.
    pub fn encode(&mut self, f: &Formula) -> Enc {
        match f {
            Formula::Var(v) => Enc::Lit(Lit::pos(self.var(v))),
            Formula::Const(b) => Enc::Const(*b),
            Formula::Apply(c, ch) => {
                let args: Vec<Enc> = ch.iter().map(|x| self.encode(x)).collect();
                let t = c.table;
                let k = args.len();
                // rows consistent with the constant children
                let rows: Vec<usize> = (0..t.rows())
                    .filter(|&row| {
                        args.iter().enumerate().all(|(j, a)| match a {
                            Enc::Const(b) => ((row >> (k - 1 - j)) & 1 == 1) == *b,
                            Enc::Lit(_) => true,
                        })
                    })
                    .collect();
                if rows.iter().all(|&r| t.bit(r)) {
                    return Enc::Const(true);
                }
                if rows.iter().all(|&r| !t.bit(r)) {
                    return Enc::Const(false);
                }
                let g = Lit::pos(self.fresh());
                for row in rows {
                    let mut clause = Vec::with_capacity(k + 1);
                    for (j, a) in args.iter().enumerate() {
                        if let Enc::Lit(l) = a {
                            let bit = (row >> (k - 1 - j)) & 1 == 1;
                            clause.push(if bit { !*l } else { *l });
                        }
                    }
                    clause.push(if t.bit(row) { g } else { !g });
                    self.cnf.add_clause(clause);
                }
                Enc::Lit(g)
            }
        }
    }

    pub fn assert_enc(&mut self, e: Enc, value: bool) {
        match e {
            Enc::Const(b) if b == value => {}
            Enc::Const(_) => self.cnf.add_clause(Vec::new()),
            Enc::Lit(l) => self.cnf.add_clause(vec![if value { l } else { !l }]),
        }
    }

    pub fn assert_formula(&mut self, f: &Formula, value: bool) {
        let e = self.encode(f);
        self.assert_enc(e, value);
    }

    pub fn cnf(&self) -> &Cnf {
        &self.cnf
    }

    pub fn num_vars(&self) -> u32 {
        self.cnf.num_vars
    }

    /// Reads named variables back from a model.
    pub fn decode(&self, model: &[bool]) -> BTreeMap<String, bool> {
        self.vars
            .iter()
            .map(|(n, &v)| (n.clone(), model.get(v as usize).copied().unwrap_or(false)))
            .collect()
    }
}

/// CNF of `formulas` together with unit clauses for `assumptions`.
pub fn encode_cnf<'a>(
    formulas: impl IntoIterator<Item = &'a Formula>,
    assumptions: &[Literal],
) -> CnfBuilder {
    let mut b = CnfBuilder::new();
    for f in formulas {
        b.assert_formula(f, true);
    }
    for a in assumptions {
        let l = b.literal(a);
        b.add_clause(vec![l]);
    }
    b
}
