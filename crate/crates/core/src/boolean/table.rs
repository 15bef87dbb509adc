use std::fmt;
use std::sync::Arc;

use crate::error::{AbdError, Result};

/// Largest arity a declared connective may have; a table then fits in a `u64`.
pub const MAX_ARITY: usize = 6;

/// A Boolean function of fixed arity, stored as its `2^arity` output bits.
///
/// Row convention: the assignment `(a1, ..., an)` lives at index
/// `sum a_j * 2^(n-j)`, so `x1` is the most significant bit of the row index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TruthTable {
    arity: u8,
    bits: u64,
}

impl TruthTable {
    pub fn new(arity: usize, bits: u64) -> Result<Self> {
        if arity > MAX_ARITY {
            return Err(AbdError::Input(format!(
                "arity {arity} exceeds the maximum of {MAX_ARITY}"
            )));
        }
        let mask = Self::row_mask(arity);
        if bits & !mask != 0 {
            return Err(AbdError::Input(format!(
                "table bits exceed 2^{arity} rows"
            )));
        }
        Ok(TruthTable {
            arity: arity as u8,
            bits,
        })
    }

    /// Builds the table by evaluating `f` on every row.
    pub fn from_fn(arity: usize, f: impl Fn(&[bool]) -> bool) -> Self {
        assert!(arity <= MAX_ARITY, "arity {arity} exceeds MAX_ARITY");
        let mut bits = 0u64;
        let mut args = vec![false; arity];
        for row in 0..(1usize << arity) {
            row_to_args(row, arity, &mut args);
            if f(&args) {
                bits |= 1 << row;
            }
        }
        TruthTable {
            arity: arity as u8,
            bits,
        }
    }

    /// Parses a bitstring of `2^arity` characters, row 0 first.
    pub fn from_bitstring(arity: usize, s: &str) -> Result<Self> {
        if arity > MAX_ARITY {
            return Err(AbdError::Input(format!(
                "arity {arity} exceeds the maximum of {MAX_ARITY}"
            )));
        }
        let rows = 1usize << arity;
        if s.len() != rows {
            return Err(AbdError::Input(format!(
                "bitstring has {} characters, expected {rows}",
                s.len()
            )));
        }
        let mut bits = 0u64;
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => bits |= 1 << i,
                other => {
                    return Err(AbdError::Input(format!(
                        "invalid character `{other}` in bitstring"
                    )))
                }
            }
        }
        TruthTable::new(arity, bits)
    }

    pub fn constant(arity: usize, value: bool) -> Self {
        let bits = if value { Self::row_mask(arity) } else { 0 };
        TruthTable {
            arity: arity as u8,
            bits,
        }
    }

    /// The `k`-th (0-based) projection of the given arity.
    pub fn projection(arity: usize, k: usize) -> Self {
        assert!(k < arity);
        TruthTable::from_fn(arity, |a| a[k])
    }

    pub fn arity(&self) -> usize {
        self.arity as usize
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn rows(&self) -> usize {
        1 << self.arity
    }

    pub(crate) fn row_mask(arity: usize) -> u64 {
        if arity == MAX_ARITY {
            u64::MAX
        } else {
            (1u64 << (1usize << arity)) - 1
        }
    }

    #[inline]
    pub fn bit(&self, row: usize) -> bool {
        (self.bits >> row) & 1 == 1
    }

    pub fn eval(&self, args: &[bool]) -> Result<bool> {
        if args.len() != self.arity() {
            return Err(AbdError::Input(format!(
                "expected {} argument(s), got {}",
                self.arity(),
                args.len()
            )));
        }
        Ok(self.bit(args_to_row(args)))
    }

    /// `dual(f)(a) = !f(!a)`.
    pub fn dual(&self) -> Self {
        let top = self.rows() - 1;
        let mut bits = 0u64;
        for row in 0..self.rows() {
            if !self.bit(top - row) {
                bits |= 1 << row;
            }
        }
        TruthTable {
            arity: self.arity,
            bits,
        }
    }

    /// Row indices where the function takes value `c`.
    pub fn preimage(&self, c: bool) -> Vec<usize> {
        (0..self.rows()).filter(|&r| self.bit(r) == c).collect()
    }

    pub fn to_bitstring(&self) -> String {
        (0..self.rows())
            .map(|r| if self.bit(r) { '1' } else { '0' })
            .collect()
    }

    /// Same function with `extra` dummy variables appended after the real ones.
    pub fn lift(&self, arity: usize) -> Self {
        assert!(arity >= self.arity());
        let shift = arity - self.arity();
        TruthTable::from_fn(arity, |a| self.bit(args_to_row(&a[..arity - shift])))
    }
}

impl fmt::Display for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.arity, self.to_bitstring())
    }
}

/// Row index of an assignment under the x1-most-significant convention.
#[inline]
pub fn args_to_row(args: &[bool]) -> usize {
    args.iter().fold(0usize, |acc, &a| (acc << 1) | a as usize)
}

#[inline]
pub fn row_to_args(row: usize, arity: usize, out: &mut [bool]) {
    for (j, slot) in out.iter_mut().enumerate().take(arity) {
        *slot = (row >> (arity - 1 - j)) & 1 == 1;
    }
}

/// A named connective.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Connective {
    pub name: String,
    pub table: TruthTable,
}

impl Connective {
    pub fn new(name: impl Into<String>, table: TruthTable) -> Self {
        Connective {
            name: name.into(),
            table,
        }
    }

    pub fn arity(&self) -> usize {
        self.table.arity()
    }

    /// `fn <name> <arity> <bits>` declaration line.
    pub fn to_line(&self) -> String {
        format!("fn {} {}", self.name, self.table)
    }
}

/// An ordered set of connectives with unique names.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FunctionSet {
    functions: Vec<Arc<Connective>>,
}

impl FunctionSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_connectives(fns: impl IntoIterator<Item = Connective>) -> Result<Self> {
        let mut set = FunctionSet::new();
        for c in fns {
            set.push(c)?;
        }
        Ok(set)
    }

    pub fn push(&mut self, c: Connective) -> Result<Arc<Connective>> {
        if self.get(&c.name).is_some() {
            return Err(AbdError::Input(format!(
                "duplicate connective name `{}`",
                c.name
            )));
        }
        let c = Arc::new(c);
        self.functions.push(c.clone());
        Ok(c)
    }

    /// Adds `c` unless a connective with that name already exists; returns the
    /// stored connective either way.
    pub fn insert_or_get(&mut self, c: Connective) -> Arc<Connective> {
        match self.get(&c.name) {
            Some(existing) => existing.clone(),
            None => {
                let c = Arc::new(c);
                self.functions.push(c.clone());
                c
            }
        }
    }

    pub fn get(&self, name: &str) -> Option<&Arc<Connective>> {
        self.functions.iter().find(|c| c.name == name)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Arc<Connective>> {
        self.functions.iter()
    }

    pub fn tables(&self) -> Vec<TruthTable> {
        self.functions.iter().map(|c| c.table).collect()
    }

    pub fn len(&self) -> usize {
        self.functions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.functions.is_empty()
    }

    pub fn contains_table(&self, t: &TruthTable) -> bool {
        self.functions.iter().any(|c| c.table == *t)
    }

    pub fn retain(&mut self, keep: impl Fn(&Connective) -> bool) {
        self.functions.retain(|c| keep(c));
    }
}

/// Frequently used functions.
pub mod named {
    use super::TruthTable;

    pub fn and() -> TruthTable {
        TruthTable::from_fn(2, |a| a[0] && a[1])
    }
    pub fn or() -> TruthTable {
        TruthTable::from_fn(2, |a| a[0] || a[1])
    }
    pub fn not() -> TruthTable {
        TruthTable::from_fn(1, |a| !a[0])
    }
    pub fn id() -> TruthTable {
        TruthTable::from_fn(1, |a| a[0])
    }
    pub fn xor() -> TruthTable {
        TruthTable::from_fn(2, |a| a[0] ^ a[1])
    }
    pub fn xnor() -> TruthTable {
        TruthTable::from_fn(2, |a| !(a[0] ^ a[1]))
    }
    pub fn xor3() -> TruthTable {
        TruthTable::from_fn(3, |a| a[0] ^ a[1] ^ a[2])
    }
    pub fn xnor3() -> TruthTable {
        TruthTable::from_fn(3, |a| !(a[0] ^ a[1] ^ a[2]))
    }
    pub fn implies() -> TruthTable {
        TruthTable::from_fn(2, |a| !a[0] || a[1])
    }
    /// `x & !y`
    pub fn and_not() -> TruthTable {
        TruthTable::from_fn(2, |a| a[0] && !a[1])
    }
    pub fn maj3() -> TruthTable {
        h(2)
    }
    /// `x | (y & z)`
    pub fn or_and() -> TruthTable {
        TruthTable::from_fn(3, |a| a[0] || (a[1] && a[2]))
    }
    /// `x & (y | z)`
    pub fn and_or() -> TruthTable {
        TruthTable::from_fn(3, |a| a[0] && (a[1] || a[2]))
    }
    /// `x | (y & !z)`
    pub fn or_and_not() -> TruthTable {
        TruthTable::from_fn(3, |a| a[0] || (a[1] && !a[2]))
    }
    /// `x & (y | !z)`
    pub fn and_or_not() -> TruthTable {
        TruthTable::from_fn(3, |a| a[0] && (a[1] || !a[2]))
    }
    /// `x & (y xor z xor 1)`
    pub fn and_xnor() -> TruthTable {
        TruthTable::from_fn(3, |a| a[0] && !(a[1] ^ a[2]))
    }
    /// `(x & y) | (x & !z) | (y & !z)`
    pub fn d1() -> TruthTable {
        TruthTable::from_fn(3, |a| (a[0] && a[1]) || (a[0] && !a[2]) || (a[1] && !a[2]))
    }
    /// `(x & !y) | (x & !z) | (!y & !z)`
    pub fn d() -> TruthTable {
        TruthTable::from_fn(3, |a| (a[0] && !a[1]) || (a[0] && !a[2]) || (!a[1] && !a[2]))
    }
    pub fn const0() -> TruthTable {
        TruthTable::constant(0, false)
    }
    pub fn const1() -> TruthTable {
        TruthTable::constant(0, true)
    }
    /// `h_n`: at least `n` of the `n + 1` inputs are true.
    pub fn h(n: usize) -> TruthTable {
        assert!((1..super::MAX_ARITY).contains(&n));
        TruthTable::from_fn(n + 1, |a| a.iter().filter(|&&b| b).count() >= n)
    }
}
