//! Data-parallel helpers over index ranges.
//!
//! With the `parallel` feature the [`Execution::Parallel`] mode runs on the
//! rayon pool; without it both modes run sequentially. Results never depend on
//! the mode: searches report the lowest matching index and collections keep
//! index order.

use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }
}

/// Lowest `i < n` with `pred(i) == Ok(true)`. An error at a lower index than
/// the first match wins.
pub fn find_first<F>(n: u64, exec: Execution, pred: F) -> Result<Option<u64>>
where
    F: Fn(u64) -> Result<bool> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return (0..n)
            .into_par_iter()
            .find_map_first(|i| match pred(i) {
                Ok(true) => Some(Ok(i)),
                Ok(false) => None,
                Err(e) => Some(Err(e)),
            })
            .transpose();
    }
    let _ = exec;
    for i in 0..n {
        if pred(i)? {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

/// All `i < n` with `pred(i) == Ok(true)`, ascending.
pub fn filter_indices<F>(n: u64, exec: Execution, pred: F) -> Result<Vec<u64>>
where
    F: Fn(u64) -> Result<bool> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        let flags: Vec<Result<bool>> = (0..n).into_par_iter().map(&pred).collect();
        let mut out = Vec::new();
        for (i, f) in flags.into_iter().enumerate() {
            if f? {
                out.push(i as u64);
            }
        }
        return Ok(out);
    }
    let _ = exec;
    let mut out = Vec::new();
    for i in 0..n {
        if pred(i)? {
            out.push(i);
        }
    }
    Ok(out)
}

/// `f(i)` for every `i < n`, in index order.
pub fn map_indices<T, F>(n: u64, exec: Execution, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return (0..n).into_par_iter().map(f).collect();
    }
    let _ = exec;
    (0..n).map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::AbdError;

    #[test]
    fn modes_agree() {
        for exec in [Execution::Sequential, Execution::Parallel] {
            assert_eq!(find_first(1000, exec, |i| Ok(i * i > 500)).unwrap(), Some(23));
            assert_eq!(find_first(10, exec, |_| Ok(false)).unwrap(), None);
            assert_eq!(
                filter_indices(20, exec, |i| Ok(i % 7 == 0)).unwrap(),
                vec![0, 7, 14]
            );
            assert_eq!(map_indices(4, exec, |i| i * 2), vec![0, 2, 4, 6]);
        }
    }

    #[test]
    fn error_before_match_is_reported() {
        let r = find_first(100, Execution::Parallel, |i| {
            if i == 3 {
                Err(AbdError::Budget("x".into()))
            } else {
                Ok(i == 50)
            }
        });
        assert!(r.is_err());
    }
}
