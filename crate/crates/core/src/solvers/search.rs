//! Self-reduction over the hypotheses: a decision procedure for "some full
//! completion of this prefix is an explanation" yields the canonical-first
//! explanation and an ordered enumeration.

use crate::error::Result;

pub(crate) trait Decider {
    /// Whether some full explanation starts with `prefix` (values of the
    /// first `prefix.len()` hypotheses, sorted by name).
    fn decide(&self, prefix: &[bool]) -> Result<bool>;
}

/// Canonical-first full explanation and the number of decisions taken.
pub(crate) fn first_full(d: &impl Decider, n: usize) -> Result<(Option<Vec<bool>>, u64)> {
    let mut calls = 1;
    if !d.decide(&[])? {
        return Ok((None, calls));
    }
    let mut prefix = Vec::with_capacity(n);
    for _ in 0..n {
        prefix.push(false);
        calls += 1;
        if !d.decide(&prefix)? {
            *prefix.last_mut().unwrap() = true;
        }
    }
    Ok((Some(prefix), calls))
}

/// Emits every full explanation in canonical order; returns decisions taken.
pub(crate) fn enumerate(d: &impl Decider, n: usize, emit: &mut dyn FnMut(&[bool])) -> Result<u64> {
    let mut calls = 1;
    if !d.decide(&[])? {
        return Ok(calls);
    }
    let mut prefix = Vec::with_capacity(n);
    walk(d, n, &mut prefix, emit, &mut calls)?;
    Ok(calls)
}

fn walk(
    d: &impl Decider,
    n: usize,
    prefix: &mut Vec<bool>,
    emit: &mut dyn FnMut(&[bool]),
    calls: &mut u64,
) -> Result<()> {
    if prefix.len() == n {
        emit(prefix);
        return Ok(());
    }
    for b in [false, true] {
        prefix.push(b);
        *calls += 1;
        if d.decide(prefix)? {
            walk(d, n, prefix, emit, calls)?;
        }
        prefix.pop();
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Accepts exactly the listed full vectors.
    struct Fixed(Vec<Vec<bool>>);

    impl Decider for Fixed {
        fn decide(&self, prefix: &[bool]) -> Result<bool> {
            Ok(self.0.iter().any(|v| v.starts_with(prefix)))
        }
    }

    #[test]
    fn first_and_all() {
        let d = Fixed(vec![vec![true, false], vec![false, true], vec![true, true]]);
        assert_eq!(first_full(&d, 2).unwrap().0, Some(vec![false, true]));
        let mut seen = Vec::new();
        enumerate(&d, 2, &mut |v| seen.push(v.to_vec())).unwrap();
        assert_eq!(seen, vec![vec![false, true], vec![true, false], vec![true, true]]);
        let none = Fixed(vec![]);
        assert_eq!(first_full(&none, 3).unwrap().0, None);
        let empty = Fixed(vec![vec![]]);
        assert_eq!(first_full(&empty, 0).unwrap().0, Some(vec![]));
    }
}
