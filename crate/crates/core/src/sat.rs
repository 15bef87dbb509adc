//! A small DPLL solver: two-watched-literal unit propagation, chronological
//! backtracking, branching on the lowest unassigned variable with `false`
//! tried first.

use crate::error::{AbdError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lit(u32);

impl Lit {
    pub fn new(var: u32, positive: bool) -> Self {
        Lit(var << 1 | (!positive) as u32)
    }
    pub fn pos(var: u32) -> Self {
        Lit::new(var, true)
    }
    pub fn neg(var: u32) -> Self {
        Lit::new(var, false)
    }
    pub fn var(self) -> u32 {
        self.0 >> 1
    }
    pub fn is_positive(self) -> bool {
        self.0 & 1 == 0
    }
    #[inline]
    fn index(self) -> usize {
        self.0 as usize
    }
}

impl std::ops::Not for Lit {
    type Output = Lit;
    fn not(self) -> Lit {
        Lit(self.0 ^ 1)
    }
}

/// A clause set over variables `0..num_vars`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Cnf {
    pub num_vars: u32,
    pub clauses: Vec<Vec<Lit>>,
}

impl Cnf {
    pub fn new(num_vars: u32) -> Self {
        Cnf {
            num_vars,
            clauses: Vec::new(),
        }
    }

    pub fn add_clause(&mut self, clause: Vec<Lit>) {
        for l in &clause {
            if l.var() >= self.num_vars {
                self.num_vars = l.var() + 1;
            }
        }
        self.clauses.push(clause);
    }

    pub fn is_satisfied_by(&self, model: &[bool]) -> bool {
        self.clauses.iter().all(|c| {
            c.iter()
                .any(|l| model[l.var() as usize] == l.is_positive())
        })
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SatStats {
    pub decisions: u64,
    pub propagations: u64,
    pub conflicts: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SatStatus {
    Sat(Vec<bool>),
    Unsat,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SatResult {
    pub status: SatStatus,
    pub stats: SatStats,
}

impl SatResult {
    pub fn is_sat(&self) -> bool {
        matches!(self.status, SatStatus::Sat(_))
    }
    pub fn model(&self) -> Option<&[bool]> {
        match &self.status {
            SatStatus::Sat(m) => Some(m),
            SatStatus::Unsat => None,
        }
    }
}

pub const DEFAULT_CONFLICT_LIMIT: u64 = 1_000_000;

pub fn sat_solve(cnf: &Cnf) -> Result<SatResult> {
    solve_with(cnf, &[], DEFAULT_CONFLICT_LIMIT)
}

/// Decides `cnf` together with the unit `assumptions`.
pub fn solve_with(cnf: &Cnf, assumptions: &[Lit], conflict_limit: u64) -> Result<SatResult> {
    let mut num_vars = cnf.num_vars;
    for l in assumptions {
        num_vars = num_vars.max(l.var() + 1);
    }
    let mut s = Solver::new(num_vars as usize);
    let mut ok = true;
    for c in &cnf.clauses {
        ok &= s.add_clause(c);
    }
    for &a in assumptions {
        ok &= s.add_clause(&[a]);
    }
    let status = if ok && s.search(conflict_limit)? {
        let model: Vec<bool> = s.assign.iter().map(|&v| v == TRUE).collect();
        let mut full = cnf.clone();
        for &a in assumptions {
            full.add_clause(vec![a]);
        }
        assert!(full.is_satisfied_by(&model), "solver returned a non-model");
        SatStatus::Sat(model)
    } else {
        SatStatus::Unsat
    };
    Ok(SatResult {
        status,
        stats: s.stats,
    })
}

const UNDEF: u8 = 0;
const TRUE: u8 = 1;
const FALSE: u8 = 2;

struct Frame {
    trail_len: usize,
    var: u32,
    flipped: bool,
}

struct Solver {
    clauses: Vec<Vec<Lit>>,
    watches: Vec<Vec<usize>>,
    assign: Vec<u8>,
    trail: Vec<Lit>,
    qhead: usize,
    units: Vec<Lit>,
    frames: Vec<Frame>,
    stats: SatStats,
}

impl Solver {
    fn new(n: usize) -> Self {
        Solver {
            clauses: Vec::new(),
            watches: vec![Vec::new(); 2 * n],
            assign: vec![UNDEF; n],
            trail: Vec::new(),
            qhead: 0,
            units: Vec::new(),
            frames: Vec::new(),
            stats: SatStats::default(),
        }
    }

    /// Returns false if the clause is empty after simplification.
    fn add_clause(&mut self, lits: &[Lit]) -> bool {
        let mut c: Vec<Lit> = lits.to_vec();
        c.sort();
        c.dedup();
        if c.windows(2).any(|w| w[0].var() == w[1].var()) {
            return true; // tautology
        }
        match c.len() {
            0 => false,
            1 => {
                self.units.push(c[0]);
                true
            }
            _ => {
                let idx = self.clauses.len();
                self.watches[(!c[0]).index()].push(idx);
                self.watches[(!c[1]).index()].push(idx);
                self.clauses.push(c);
                true
            }
        }
    }

    #[inline]
    fn value(&self, l: Lit) -> u8 {
        let v = self.assign[l.var() as usize];
        if v == UNDEF {
            UNDEF
        } else if (v == TRUE) == l.is_positive() {
            TRUE
        } else {
            FALSE
        }
    }

    fn enqueue(&mut self, l: Lit) -> bool {
        match self.value(l) {
            TRUE => true,
            FALSE => false,
            _ => {
                self.assign[l.var() as usize] = if l.is_positive() { TRUE } else { FALSE };
                self.trail.push(l);
                true
            }
        }
    }

    /// Propagates pending trail literals; false on conflict.
    fn propagate(&mut self) -> bool {
        while self.qhead < self.trail.len() {
            let p = self.trail[self.qhead];
            self.qhead += 1;
            self.stats.propagations += 1;
            // clauses watching !p, indexed under p
            let mut ws = std::mem::take(&mut self.watches[p.index()]);
            let mut i = 0;
            let mut conflict = false;
            while i < ws.len() {
                let ci = ws[i];
                let false_lit = !p;
                {
                    let c = &mut self.clauses[ci];
                    if c[0] == false_lit {
                        c.swap(0, 1);
                    }
                }
                let first = self.clauses[ci][0];
                if self.value(first) == TRUE {
                    i += 1;
                    continue;
                }
                let len = self.clauses[ci].len();
                let mut moved = false;
                for k in 2..len {
                    let l = self.clauses[ci][k];
                    if self.value(l) != FALSE {
                        self.clauses[ci].swap(1, k);
                        self.watches[(!l).index()].push(ci);
                        ws.swap_remove(i);
                        moved = true;
                        break;
                    }
                }
                if moved {
                    continue;
                }
                if !self.enqueue(first) {
                    conflict = true;
                    break;
                }
                i += 1;
            }
            let rest = std::mem::replace(&mut self.watches[p.index()], ws);
            self.watches[p.index()].extend(rest);
            if conflict {
                self.qhead = self.trail.len();
                return false;
            }
        }
        true
    }

    fn undo_to(&mut self, len: usize) {
        while self.trail.len() > len {
            let l = self.trail.pop().unwrap();
            self.assign[l.var() as usize] = UNDEF;
        }
        self.qhead = len;
    }

    fn search(&mut self, conflict_limit: u64) -> Result<bool> {
        let units = std::mem::take(&mut self.units);
        for u in units {
            if !self.enqueue(u) {
                return Ok(false);
            }
        }
        if !self.propagate() {
            return Ok(false);
        }
        let mut next_var = 0usize;
        loop {
            while next_var < self.assign.len() && self.assign[next_var] != UNDEF {
                next_var += 1;
            }
            if next_var == self.assign.len() {
                return Ok(true);
            }
            self.stats.decisions += 1;
            self.frames.push(Frame {
                trail_len: self.trail.len(),
                var: next_var as u32,
                flipped: false,
            });
            self.enqueue(Lit::neg(next_var as u32));
            while !self.propagate() {
                next_var = 0;
                self.stats.conflicts += 1;
                if self.stats.conflicts > conflict_limit {
                    return Err(AbdError::Budget(format!(
                        "SAT conflict limit {conflict_limit} reached"
                    )));
                }
                loop {
                    let Some(frame) = self.frames.pop() else {
                        return Ok(false);
                    };
                    if frame.flipped {
                        continue;
                    }
                    self.undo_to(frame.trail_len);
                    self.frames.push(Frame {
                        flipped: true,
                        ..frame
                    });
                    self.enqueue(Lit::pos(frame.var));
                    break;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cnf(n: u32, cs: &[&[i32]]) -> Cnf {
        let mut c = Cnf::new(n);
        for cl in cs {
            c.add_clause(
                cl.iter()
                    .map(|&l| Lit::new(l.unsigned_abs() - 1, l > 0))
                    .collect(),
            );
        }
        c
    }

    #[test]
    fn trivial_cases() {
        assert!(sat_solve(&cnf(1, &[&[1]])).unwrap().is_sat());
        assert!(!sat_solve(&cnf(1, &[&[1], &[-1]])).unwrap().is_sat());
        assert!(!sat_solve(&cnf(1, &[&[]])).unwrap().is_sat());
        assert!(sat_solve(&Cnf::new(0)).unwrap().is_sat());
    }

    #[test]
    fn pigeonhole_three_into_two() {
        // p_{i,j}: pigeon i in hole j, var = 2*i + j + 1
        let v = |i: i32, j: i32| 2 * i + j + 1;
        let mut cs: Vec<Vec<i32>> = (0..3).map(|i| vec![v(i, 0), v(i, 1)]).collect();
        for j in 0..2 {
            for a in 0..3 {
                for b in (a + 1)..3 {
                    cs.push(vec![-v(a, j), -v(b, j)]);
                }
            }
        }
        let refs: Vec<&[i32]> = cs.iter().map(|c| c.as_slice()).collect();
        assert!(!sat_solve(&cnf(6, &refs)).unwrap().is_sat());
    }

    #[test]
    fn false_first_branching() {
        let r = sat_solve(&cnf(3, &[&[1, 2, 3]])).unwrap();
        assert_eq!(r.model().unwrap(), &[false, false, true]);
    }

    #[test]
    fn assumptions_and_duplicates() {
        let c = cnf(2, &[&[1, 1, 2], &[-1, 1]]);
        let r = solve_with(&c, &[Lit::neg(0)], 10).unwrap();
        assert_eq!(r.model().unwrap(), &[false, true]);
        let r = solve_with(&c, &[Lit::neg(0), Lit::neg(1)], 10).unwrap();
        assert!(!r.is_sat());
    }
}
