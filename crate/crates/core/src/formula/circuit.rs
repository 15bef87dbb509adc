use std::collections::BTreeMap;

use crate::boolean::TruthTable;
use crate::error::{AbdError, Result};

use super::ast::Formula;

#[derive(Debug, Clone)]
enum Node {
    Var(usize),
    Const(bool),
    Gate(TruthTable, Vec<usize>),
}

/// Formulas flattened into a gate list over indexed variables, evaluated 64
/// assignments at a time.
#[derive(Debug, Clone)]
pub struct Circuit {
    nodes: Vec<Node>,
    roots: Vec<usize>,
    num_vars: usize,
}

impl Circuit {
    /// Compiles `formulas` with variables looked up in `index`.
    pub fn compile<'a>(
        formulas: impl IntoIterator<Item = &'a Formula>,
        index: &BTreeMap<String, usize>,
    ) -> Result<Self> {
        let mut c = Circuit {
            nodes: Vec::new(),
            roots: Vec::new(),
            num_vars: index.values().map(|&i| i + 1).max().unwrap_or(0),
        };
        for f in formulas {
            let r = c.add(f, index)?;
            c.roots.push(r);
        }
        Ok(c)
    }

    fn add(&mut self, f: &Formula, index: &BTreeMap<String, usize>) -> Result<usize> {
        let node = match f {
            Formula::Var(v) => Node::Var(
                *index
                    .get(v)
                    .ok_or_else(|| AbdError::Unassigned(v.clone()))?,
            ),
            Formula::Const(b) => Node::Const(*b),
            Formula::Apply(c, ch) => {
                let ids = ch
                    .iter()
                    .map(|x| self.add(x, index))
                    .collect::<Result<Vec<_>>>()?;
                Node::Gate(c.table, ids)
            }
        };
        self.nodes.push(node);
        Ok(self.nodes.len() - 1)
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    /// Evaluates every root on 64 assignments; `vars[i]` carries variable
    /// `i` in bit lane `b` of assignment `b`.
    pub fn eval_words(&self, vars: &[u64], scratch: &mut Vec<u64>) -> Vec<u64> {
        scratch.clear();
        scratch.reserve(self.nodes.len());
        let mut partial = Vec::new();
        for n in &self.nodes {
            let w = match n {
                Node::Var(i) => vars[*i],
                Node::Const(b) => {
                    if *b {
                        !0
                    } else {
                        0
                    }
                }
                Node::Gate(t, ids) => gate_word(t, ids.iter().map(|&i| scratch[i]), &mut partial),
            };
            scratch.push(w);
        }
        self.roots.iter().map(|&r| scratch[r]).collect()
    }

    /// AND of all roots on 64 lanes.
    pub fn eval_all_words(&self, vars: &[u64], scratch: &mut Vec<u64>) -> u64 {
        self.eval_words(vars, scratch)
            .into_iter()
            .fold(!0, |a, b| a & b)
    }

    pub fn eval_bits(&self, vars: &[bool]) -> Vec<bool> {
        let words: Vec<u64> = vars.iter().map(|&b| if b { !0 } else { 0 }).collect();
        let mut s = Vec::new();
        self.eval_words(&words, &mut s)
            .into_iter()
            .map(|w| w & 1 == 1)
            .collect()
    }
}

/// Applies a gate lane-wise as the OR of its minterms.
pub(crate) fn gate_word(t: &TruthTable, args: impl Iterator<Item = u64>, partial: &mut Vec<u64>) -> u64 {
    partial.clear();
    partial.push(!0);
    for a in args {
        let len = partial.len();
        partial.resize(2 * len, 0);
        for p in (0..len).rev() {
            let w = partial[p];
            partial[2 * p] = w & !a;
            partial[2 * p + 1] = w & a;
        }
    }
    let mut out = 0u64;
    for (row, &w) in partial.iter().enumerate() {
        if t.bit(row) {
            out |= w;
        }
    }
    out
}

/// Lane words enumerating the 64 assignments of block `block` over `n`
/// variables where variable 0 is the most significant bit.
pub fn block_words(n: usize, block: u64) -> Vec<u64> {
    const LOW: [u64; 6] = [
        0xAAAA_AAAA_AAAA_AAAA,
        0xCCCC_CCCC_CCCC_CCCC,
        0xF0F0_F0F0_F0F0_F0F0,
        0xFF00_FF00_FF00_FF00,
        0xFFFF_0000_FFFF_0000,
        0xFFFF_FFFF_0000_0000,
    ];
    (0..n)
        .map(|i| {
            let bit = n - 1 - i;
            if bit < 6 {
                LOW[bit]
            } else if (block >> (bit - 6)) & 1 == 1 {
                !0
            } else {
                0
            }
        })
        .collect()
}

/// Mask of valid lanes in a block when there are `n` variables.
pub fn lane_mask(n: usize) -> u64 {
    if n >= 6 {
        !0
    } else {
        (1u64 << (1 << n)) - 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolean::{named, Connective};
    use std::sync::Arc;

    #[test]
    fn words_match_pointwise_evaluation() {
        let maj = Arc::new(Connective::new("maj", named::maj3()));
        let imp = Arc::new(Connective::new("imp", named::implies()));
        let names = ["a", "b", "c", "d", "e", "f", "g"];
        let index: BTreeMap<String, usize> =
            names.iter().enumerate().map(|(i, s)| (s.to_string(), i)).collect();
        let f = Formula::Apply(
            imp.clone(),
            vec![
                Formula::Apply(maj, vec![Formula::var("a"), Formula::var("g"), Formula::Const(true)]),
                Formula::Apply(imp, vec![Formula::var("c"), Formula::var("d")]),
            ],
        );
        let c = Circuit::compile([&f], &index).unwrap();
        let n = names.len();
        let mut s = Vec::new();
        for block in 0..(1u64 << (n - 6)) {
            let w = c.eval_words(&block_words(n, block), &mut s)[0];
            for lane in 0..64u64 {
                let row = (block << 6) | lane;
                let sigma: BTreeMap<String, bool> = names
                    .iter()
                    .enumerate()
                    .map(|(i, v)| (v.to_string(), (row >> (n - 1 - i)) & 1 == 1))
                    .collect();
                assert_eq!(w >> lane & 1 == 1, f.eval(&sigma).unwrap());
            }
        }
    }

    #[test]
    fn small_blocks_are_masked() {
        assert_eq!(lane_mask(2), 0xF);
        let w = block_words(2, 0);
        assert_eq!(w[0] & lane_mask(2), 0b1100);
        assert_eq!(w[1] & lane_mask(2), 0b1010);
    }
}
