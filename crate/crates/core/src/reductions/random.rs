//! Seeded random instances and source problems.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::abduction::{Instance, Manifestation};
use crate::boolean::{Connective, FunctionSet};
use crate::formula::{Formula, Literal};
use crate::lattice::Variant;

use super::source::{ClauseSet, LinearSystem, Qbf2};
use super::{Reduction, Source};

/// Shape of a random instance. Nullary connectives of the base appear as
/// constant leaves.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomSizes {
    pub vars: usize,
    pub hyps: usize,
    pub formulas: usize,
    pub depth: usize,
    pub variant: Variant,
}

impl Default for RandomSizes {
    fn default() -> Self {
        RandomSizes {
            vars: 4,
            hyps: 2,
            formulas: 3,
            depth: 2,
            variant: Variant::Q,
        }
    }
}

struct Gen<'a> {
    rng: ChaCha8Rng,
    conns: &'a [Arc<Connective>],
    consts: Vec<bool>,
}

impl Gen<'_> {
    /// A random formula whose first leaf is `forced` when given.
    fn formula(&mut self, leaves: &[String], depth: usize, forced: &mut Option<String>) -> Formula {
        if depth == 0 || self.conns.is_empty() || self.rng.gen_bool(0.25) {
            if let Some(v) = forced.take() {
                return Formula::var(v);
            }
            if !self.consts.is_empty() && self.rng.gen_bool(0.15) {
                return Formula::Const(*self.consts.choose(&mut self.rng).unwrap());
            }
            return Formula::var(leaves.choose(&mut self.rng).unwrap());
        }
        let c = self.conns.choose(&mut self.rng).unwrap().clone();
        let args = (0..c.arity()).map(|_| self.formula(leaves, depth - 1, forced)).collect();
        Formula::Apply(c, args)
    }

    fn literal(&mut self, v: &str) -> Literal {
        Literal::new(v, self.rng.gen_bool(0.75))
    }
}

/// A random instance over `base`, the same for the same seed. Every
/// hypothesis and manifestation variable occurs in the knowledge base.
pub fn gen_random_instance(seed: u64, base: &FunctionSet, sizes: RandomSizes) -> Instance {
    let conns: Vec<Arc<Connective>> = base.iter().filter(|c| c.arity() > 0).cloned().collect();
    let consts = base.iter().filter(|c| c.arity() == 0).map(|c| c.table.bit(0)).collect();
    let mut fns = base.clone();
    fns.retain(|c| c.arity() > 0);
    let mut g = Gen {
        rng: ChaCha8Rng::seed_from_u64(seed),
        conns: &conns,
        consts,
    };
    let vars: Vec<String> = (1..=sizes.vars.max(1)).map(|i| format!("v{i}")).collect();
    let mut order = vars.clone();
    order.shuffle(&mut g.rng);
    let nh = sizes.hyps.min(vars.len() - 1);
    let hyps: Vec<String> = order[..nh].to_vec();
    let others: Vec<String> = order[nh..].to_vec();

    let manifestation = match sizes.variant {
        Variant::Q => {
            let v = others.choose(&mut g.rng).unwrap().clone();
            Manifestation::Query(g.literal(&v))
        }
        Variant::C | Variant::T => {
            let k = g.rng.gen_range(1..=others.len().min(3));
            let picked: Vec<String> = others.choose_multiple(&mut g.rng, k).cloned().collect();
            let mut ls: Vec<Literal> = picked.iter().map(|v| g.literal(v)).collect();
            ls.sort();
            if sizes.variant == Variant::C {
                Manifestation::Clause(ls)
            } else {
                Manifestation::Term(ls)
            }
        }
        Variant::F => {
            let depth = sizes.depth.min(2);
            Manifestation::Formula(g.formula(&others, depth, &mut None))
        }
    };

    let mut kb = Vec::new();
    for _ in 0..sizes.formulas {
        kb.push(g.formula(&vars, sizes.depth, &mut None));
    }
    let mut needed: Vec<String> = hyps.clone();
    needed.extend(manifestation.vars());
    for v in needed {
        if !kb.iter().any(|f| f.vars().contains(&v)) {
            let f = g.formula(&vars, sizes.depth, &mut Some(v));
            kb.push(f);
        }
    }
    Instance::new(fns, kb, hyps, manifestation)
}

fn signed(rng: &mut ChaCha8Rng, v: usize) -> i32 {
    if rng.gen_bool(0.5) {
        v as i32
    } else {
        -(v as i32)
    }
}

fn terms(rng: &mut ChaCha8Rng, nvars: usize, count: usize, widths: (usize, usize)) -> Vec<Vec<i32>> {
    (0..count)
        .map(|_| {
            let w = rng.gen_range(widths.0..=widths.1);
            (0..w)
                .map(|_| {
                    let v = rng.gen_range(1..=nvars);
                    signed(rng, v)
                })
                .collect()
        })
        .collect()
}

/// A small random source problem for reduction `r`.
pub fn random_source(r: Reduction, seed: u64) -> Source {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match r {
        Reduction::LinSys => {
            let n = rng.gen_range(1..=6);
            let m = rng.gen_range(1..=4);
            let eqs = (0..m)
                .map(|_| {
                    let vs = (1..=n).filter(|_| rng.gen_bool(0.5)).collect();
                    (vs, rng.gen_bool(0.5))
                })
                .collect();
            Source::Linear(LinearSystem::new(n, eqs).expect("indices in range"))
        }
        Reduction::TwoInThree => {
            let n = rng.gen_range(3..=5);
            let m = rng.gen_range(1..=3);
            let all: Vec<i32> = (1..=n).collect();
            let rows = (0..m)
                .map(|_| all.choose_multiple(&mut rng, 3).copied().collect())
                .collect();
            Source::Cnf(ClauseSet::new(n as usize, rows).expect("indices in range"))
        }
        Reduction::ThreeSatTerm => {
            let n = rng.gen_range(1..=5);
            let m = rng.gen_range(1..=6);
            let rows = terms(&mut rng, n, m, (3, 3));
            Source::Cnf(ClauseSet::new(n, rows).expect("indices in range"))
        }
        Reduction::Qsat2 | Reduction::Pi1Count => {
            let (n, m) = if r == Reduction::Qsat2 {
                (rng.gen_range(1..=2), rng.gen_range(1..=2))
            } else {
                (rng.gen_range(1..=3), rng.gen_range(0..=2))
            };
            let k = rng.gen_range(1..=3);
            let rows = terms(&mut rng, n + m, k, (1, 3));
            Source::Qbf(Qbf2::new(n, m, rows).expect("indices in range"))
        }
        Reduction::Pos2Sat => {
            let n = rng.gen_range(1..=6);
            let k = rng.gen_range(0..=6);
            let rows = (0..k)
                .map(|_| vec![rng.gen_range(1..=n) as i32, rng.gen_range(1..=n) as i32])
                .collect();
            Source::Cnf(ClauseSet::new(n, rows).expect("indices in range"))
        }
    }
}
