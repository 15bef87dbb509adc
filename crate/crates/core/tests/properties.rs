use std::collections::BTreeSet;

use proptest::prelude::*;

use abduction_core::abduction::{is_explanation, oracle_count_full, oracle_enumerate, oracle_solve};
use abduction_core::boolean::*;
use abduction_core::formula::encode_cnf;
use abduction_core::lattice::{base_of, clone_leq, identify_tables, CloneId, Variant};
use abduction_core::par::Execution;
use abduction_core::reductions::{gen_random_instance, RandomSizes};
use abduction_core::sat::sat_solve;
use abduction_core::solvers::{self, AffineSystem, Equation, SolverConfig};

const SEQ: Execution = Execution::Sequential;

fn table() -> impl Strategy<Value = TruthTable> {
    (0usize..=3).prop_flat_map(|n| {
        let rows = 1u64 << n;
        let mask = if rows == 64 { u64::MAX } else { (1u64 << rows) - 1 };
        (Just(n), 0..=mask).prop_map(|(n, b)| TruthTable::new(n, b).unwrap())
    })
}

/// Largest `k` such that every `k` rows of the preimage share a coordinate
/// equal to `c`, by enumerating subsets.
fn brute_sep(f: &TruthTable, c: bool) -> SepDegree {
    let n = f.arity();
    let pre: Vec<usize> = f.preimage(c);
    let shares = |rows: &[usize]| {
        (0..n).any(|i| rows.iter().all(|&r| ((r >> (n - 1 - i)) & 1 == 1) == c))
    };
    let mut k = 1;
    while k <= pre.len() {
        let mut ok = true;
        for mask in 0u64..(1 << pre.len()) {
            if mask.count_ones() as usize == k {
                let rows: Vec<usize> = (0..pre.len()).filter(|i| mask >> i & 1 == 1).map(|i| pre[i]).collect();
                ok &= shares(&rows);
            }
        }
        if !ok {
            return SepDegree::Finite((k - 1).max(1) as u32);
        }
        k += 1;
    }
    SepDegree::Infinite
}

fn bases() -> Vec<FunctionSet> {
    let mk = |ts: &[(&str, TruthTable)]| {
        FunctionSet::from_connectives(ts.iter().map(|(n, t)| Connective::new(*n, t.clone()))).unwrap()
    };
    vec![
        mk(&[("or", named::or())]),
        mk(&[("and", named::and())]),
        mk(&[("not", named::not())]),
        mk(&[("xor3", named::xor3())]),
        mk(&[("or_and", named::or_and())]),
        mk(&[("maj", named::maj3())]),
        mk(&[("h", named::and_not())]),
        mk(&[("and", named::and()), ("not", named::not())]),
    ]
}

fn variant() -> impl Strategy<Value = Variant> {
    prop_oneof![Just(Variant::Q), Just(Variant::C), Just(Variant::T), Just(Variant::F)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn separating_degree_matches_subsets(f in table(), c in any::<bool>()) {
        prop_assert_eq!(separating_degree(&f, c), brute_sep(&f, c));
    }

    #[test]
    fn identified_clone_is_least(fs in prop::collection::vec(table(), 1..=3)) {
        let c = identify_tables(&fs);
        let closure: BTreeSet<TruthTable> = clone_closure(&base_of(c).unwrap().tables(), 3)
            .unwrap().into_iter().collect();
        for f in &fs {
            prop_assert!(closure.contains(&f.lift(3)));
        }
        for d in CloneId::catalog(3) {
            if d != c && clone_leq(d, c) {
                let inside: BTreeSet<TruthTable> = clone_closure(&base_of(d).unwrap().tables(), 3)
                    .unwrap().into_iter().collect();
                prop_assert!(!fs.iter().all(|f| inside.contains(&f.lift(3))), "{} also holds the set", d);
            }
        }
    }

    #[test]
    fn cnf_encoding_matches_truth_table(seed in any::<u64>(), b in 0usize..8) {
        let p = gen_random_instance(seed, &bases()[b], RandomSizes { vars: 4, hyps: 0, formulas: 2, depth: 3, variant: Variant::Q });
        let vars = p.universe();
        let mut sat = false;
        for m in 0u64..(1 << vars.len()) {
            let sigma = |v: &str| vars.iter().position(|u| u == v).map(|i| m >> i & 1 == 1);
            let mut all = true;
            for f in &p.kb {
                all &= f.eval_with(&sigma).unwrap();
            }
            sat |= all;
        }
        let enc = encode_cnf(&p.kb, &[]);
        prop_assert_eq!(sat_solve(enc.cnf()).unwrap().is_sat(), sat);
    }

    #[test]
    fn solvers_agree_with_oracle(seed in any::<u64>(), b in 0usize..8, v in variant()) {
        let sizes = RandomSizes { vars: 6, hyps: 3, formulas: 3, depth: 2, variant: v };
        let p = gen_random_instance(seed, &bases()[b], sizes);
        let cfg = SolverConfig { exec: Execution::Sequential, ..SolverConfig::default() };
        let out = solvers::solve(&p, &cfg).unwrap();
        prop_assert_eq!(out.found(), oracle_solve(&p, SEQ).unwrap().is_some());
        if let Some(e) = &out.explanation {
            prop_assert!(is_explanation(&p, e).unwrap());
        }
        prop_assert_eq!(solvers::count_full(&p, &cfg).unwrap().count, oracle_count_full(&p, SEQ).unwrap());
        if solvers::enumeration_method(&p).is_some() {
            prop_assert_eq!(solvers::enumerate_full_vec(&p, &cfg).unwrap(), oracle_enumerate(&p, SEQ).unwrap());
        }
    }

    #[test]
    fn parallel_matches_sequential(seed in any::<u64>(), b in 0usize..8, v in variant()) {
        let sizes = RandomSizes { vars: 8, hyps: 5, formulas: 3, depth: 2, variant: v };
        let p = gen_random_instance(seed, &bases()[b], sizes);
        let seq = SolverConfig { exec: Execution::Sequential, ..SolverConfig::default() };
        let par = SolverConfig { exec: Execution::Parallel, ..SolverConfig::default() };
        prop_assert_eq!(solvers::solve(&p, &seq).unwrap(), solvers::solve(&p, &par).unwrap());
        prop_assert_eq!(solvers::count_full(&p, &seq).unwrap(), solvers::count_full(&p, &par).unwrap());
    }

    #[test]
    fn projection_keeps_exactly_the_projected_points(
        rows in prop::collection::vec((any::<u8>(), any::<bool>()), 0..5),
        keep in any::<u8>(),
    ) {
        let n = 6;
        let mut s = AffineSystem::new(n);
        for (mask, rhs) in &rows {
            let mut e = Equation::zero(n);
            for i in 0..n {
                if mask >> i & 1 == 1 {
                    e.flip(i);
                }
            }
            e.rhs = *rhs;
            s.push(e);
        }
        let cols: Vec<usize> = (0..n).filter(|i| keep >> i & 1 == 1).collect();
        let point = |m: u64| -> Vec<bool> { (0..n).map(|i| m >> i & 1 == 1).collect() };
        let key = |x: &[bool]| -> Vec<bool> { cols.iter().map(|&c| x[c]).collect() };
        let projected: BTreeSet<Vec<bool>> = (0..1u64 << n)
            .map(point)
            .filter(|x| s.rows.iter().all(|e| e.eval(x)))
            .map(|x| key(&x))
            .collect();
        match s.project(&cols) {
            None => prop_assert!(projected.is_empty()),
            Some(p) => {
                for r in &p.rows {
                    prop_assert!((0..n).all(|c| !r.get(c) || cols.contains(&c)));
                }
                let cut: BTreeSet<Vec<bool>> = (0..1u64 << n)
                    .map(point)
                    .filter(|x| p.rows.iter().all(|e| e.eval(x)))
                    .map(|x| key(&x))
                    .collect();
                prop_assert_eq!(cut, projected);
            }
        }
    }
}

