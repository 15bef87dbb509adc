use super::table::TruthTable;
use crate::error::{AbdError, Result};

/// Largest arity for which [`clone_closure`] will enumerate a clone.
pub const MAX_CLOSURE_ARITY: usize = 4;

/// All `m`-ary members of the clone generated by `base`: the least set that
/// contains the `m`-ary projections and is closed under applying a base
/// function to members.
pub fn clone_closure(base: &[TruthTable], m: usize) -> Result<Vec<TruthTable>> {
    if m > MAX_CLOSURE_ARITY {
        return Err(AbdError::Input(format!(
            "closure arity {m} exceeds the oracle bound {MAX_CLOSURE_ARITY}"
        )));
    }
    let mut c = Closure::new(m);
    c.saturate(base);
    let mut out: Vec<TruthTable> = c
        .members
        .iter()
        .map(|&b| TruthTable::new(m, b).expect("closure member fits its arity"))
        .collect();
    out.sort();
    Ok(out)
}

/// Membership test that lifts 0-ary functions to unary constants, so that
/// constants can be compared with closures that start from projections.
pub fn in_closure(base: &[TruthTable], f: &TruthTable) -> Result<bool> {
    let m = f.arity().max(1);
    let target = f.lift(m);
    Ok(clone_closure(base, m)?.contains(&target))
}

pub(crate) struct Closure {
    m: usize,
    mask: u64,
    seen: Vec<u64>,
    members: Vec<u64>,
    space: usize,
}

impl Closure {
    pub(crate) fn new(m: usize) -> Self {
        let rows = 1usize << m;
        let space = 1usize << rows;
        let mask = TruthTable::row_mask(m);
        let mut c = Closure {
            m,
            mask,
            seen: vec![0; space.div_ceil(64)],
            members: Vec::new(),
            space,
        };
        for k in 0..m {
            c.insert(TruthTable::projection(m, k).bits());
        }
        c
    }

    fn insert(&mut self, t: u64) -> bool {
        let (w, b) = ((t / 64) as usize, t % 64);
        if self.seen[w] >> b & 1 == 1 {
            return false;
        }
        self.seen[w] |= 1 << b;
        self.members.push(t);
        true
    }

    fn full(&self) -> bool {
        self.members.len() == self.space
    }

    pub(crate) fn saturate(&mut self, base: &[TruthTable]) {
        for f in base.iter().filter(|f| f.arity() == 0) {
            let t = if f.bit(0) { self.mask } else { 0 };
            self.insert(t);
        }
        let funcs: Vec<&TruthTable> = base.iter().filter(|f| f.arity() > 0).collect();
        let mut old = 0usize;
        loop {
            let len = self.members.len();
            if len == old || self.full() {
                break;
            }
            let snapshot = self.members.clone();
            let mut fresh = Vec::new();
            for f in &funcs {
                let k = f.arity();
                // partition tuples by the first position holding a new member
                for first_new in 0..k {
                    let ranges: Vec<(usize, usize)> = (0..k)
                        .map(|j| match j.cmp(&first_new) {
                            std::cmp::Ordering::Less => (0, old),
                            std::cmp::Ordering::Equal => (old, len),
                            std::cmp::Ordering::Greater => (0, len),
                        })
                        .collect();
                    if ranges.iter().any(|&(a, b)| a >= b) {
                        continue;
                    }
                    let mut emit = |t: u64| fresh.push(t);
                    compose_all(f, &ranges, &snapshot, self.mask, 0, &[self.mask], &mut emit);
                }
            }
            old = len;
            for t in fresh {
                self.insert(t);
                if self.full() {
                    return;
                }
            }
        }
    }

    #[allow(dead_code)]
    pub(crate) fn arity(&self) -> usize {
        self.m
    }
}

/// Enumerates `f(t_1, ..., t_k)` for `t_j` drawn from `members[ranges[j]]`.
/// `partial[p]` holds the rows where the already chosen arguments match the
/// prefix pattern `p` (most significant argument first).
fn compose_all(
    f: &TruthTable,
    ranges: &[(usize, usize)],
    members: &[u64],
    mask: u64,
    j: usize,
    partial: &[u64],
    emit: &mut impl FnMut(u64),
) {
    let k = f.arity();
    if j + 1 == k {
        let mut a1 = 0u64;
        let mut a0 = 0u64;
        for (p, &w) in partial.iter().enumerate() {
            if f.bit(2 * p + 1) {
                a1 |= w;
            }
            if f.bit(2 * p) {
                a0 |= w;
            }
        }
        let (lo, hi) = ranges[j];
        for &t in &members[lo..hi] {
            emit((a1 & t) | (a0 & !t & mask));
        }
        return;
    }
    let (lo, hi) = ranges[j];
    let mut next = vec![0u64; partial.len() * 2];
    for &t in &members[lo..hi] {
        for (p, &w) in partial.iter().enumerate() {
            next[2 * p] = w & !t & mask;
            next[2 * p + 1] = w & t;
        }
        compose_all(f, ranges, members, mask, j + 1, &next, emit);
    }
}
