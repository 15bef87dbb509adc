//! Guess-and-check over full candidates in canonical order with two SAT
//! calls per candidate (one per literal for terms). Candidates are processed
//! in chunks so that the reported statistics do not depend on the number of
//! workers.

use crate::abduction::{Encodings, Explanation, Instance, SatCtx};
use crate::error::Result;
use crate::par::{filter_indices, map_indices};

use super::{check_budget, Search, SolverConfig};

const CHUNK: u64 = 256;

/// Whether candidate `idx` is a full explanation, and the SAT calls spent.
fn check(p: &Instance, enc: &Encodings, cfg: &SolverConfig, idx: u64) -> Result<(bool, u64)> {
    let ctx = SatCtx::new(cfg.conflict_limit);
    let e = Explanation::from_index(&p.hyps, idx);
    let good = enc.satisfiable_with(&ctx, &e)? && enc.entails(&ctx, p, &e)?;
    Ok((good, ctx.calls()))
}

pub(crate) fn solve(p: &Instance, cfg: &SolverConfig) -> Result<Search> {
    let total = check_budget(p, cfg)?;
    let enc = Encodings::new(p);
    let mut calls = 0;
    let mut start = 0;
    while start < total {
        let len = CHUNK.min(total - start);
        let results = map_indices(len, cfg.exec, |i| check(p, &enc, cfg, start + i));
        for (i, r) in results.into_iter().enumerate() {
            let (good, c) = r?;
            calls += c;
            if good {
                let idx = start + i as u64;
                return Ok(Search {
                    explanation: Some(Explanation::from_index(&p.hyps, idx)),
                    candidates: idx + 1,
                    sat_calls: calls,
                });
            }
        }
        start += len;
    }
    Ok(Search {
        explanation: None,
        candidates: total,
        sat_calls: calls,
    })
}

fn good_indices(p: &Instance, cfg: &SolverConfig) -> Result<Vec<u64>> {
    let total = check_budget(p, cfg)?;
    let enc = Encodings::new(p);
    filter_indices(total, cfg.exec, |i| Ok(check(p, &enc, cfg, i)?.0))
}

pub(crate) fn count(p: &Instance, cfg: &SolverConfig) -> Result<u64> {
    Ok(good_indices(p, cfg)?.len() as u64)
}

pub(crate) fn enumerate(p: &Instance, cfg: &SolverConfig) -> Result<Vec<Explanation>> {
    Ok(good_indices(p, cfg)?
        .into_iter()
        .map(|i| Explanation::from_index(&p.hyps, i))
        .collect())
}
