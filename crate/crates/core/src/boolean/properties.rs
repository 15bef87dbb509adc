use serde::Serialize;

use super::table::TruthTable;

/// Syntactic shape of a function with respect to the clones V, E, N and I.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Shape {
    /// OR of at least two variables.
    Disjunction,
    /// AND of at least two variables.
    Conjunction,
    /// Negation of a single variable.
    EssentiallyUnary,
    ProjectionOrConstant,
    General,
}

impl Shape {
    /// Member of V (disjunctions of variables or constants).
    pub fn in_v(self) -> bool {
        matches!(self, Shape::Disjunction | Shape::ProjectionOrConstant)
    }
    /// Member of E (conjunctions of variables or constants).
    pub fn in_e(self) -> bool {
        matches!(self, Shape::Conjunction | Shape::ProjectionOrConstant)
    }
    /// Member of N (depends on at most one variable).
    pub fn in_n(self) -> bool {
        matches!(self, Shape::EssentiallyUnary | Shape::ProjectionOrConstant)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PropertyRecord {
    pub reproduces0: bool,
    pub reproduces1: bool,
    pub monotone: bool,
    pub self_dual: bool,
    pub affine: bool,
    pub shape: Shape,
}

/// Degree of c-separation. `Infinite` means fully c-separating.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum SepDegree {
    Finite(u32),
    Infinite,
}

impl SepDegree {
    pub fn at_least(self, k: u32) -> bool {
        match self {
            SepDegree::Infinite => true,
            SepDegree::Finite(d) => d >= k,
        }
    }
}

impl std::fmt::Display for SepDegree {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SepDegree::Finite(d) => write!(f, "{d}"),
            SepDegree::Infinite => write!(f, "inf"),
        }
    }
}

pub fn function_properties(f: &TruthTable) -> PropertyRecord {
    let n = f.arity();
    let top = f.rows() - 1;
    PropertyRecord {
        reproduces0: !f.bit(0),
        reproduces1: f.bit(top),
        monotone: is_monotone(f),
        self_dual: f.dual() == *f,
        affine: is_affine(f),
        shape: shape_of(f, n),
    }
}

fn is_monotone(f: &TruthTable) -> bool {
    let n = f.arity();
    (0..f.rows()).all(|row| {
        (0..n).all(|j| {
            let b = 1 << j;
            row & b != 0 || !f.bit(row) || f.bit(row | b)
        })
    })
}

/// Derives the candidate coefficients from the zero row and the unit rows,
/// then checks the candidate on every row.
fn is_affine(f: &TruthTable) -> bool {
    let n = f.arity();
    let c = f.bit(0);
    let coef: Vec<bool> = (0..n).map(|j| f.bit(1 << (n - 1 - j)) ^ c).collect();
    (0..f.rows()).all(|row| {
        let mut v = c;
        for (j, &cj) in coef.iter().enumerate() {
            if cj && (row >> (n - 1 - j)) & 1 == 1 {
                v = !v;
            }
        }
        v == f.bit(row)
    })
}

fn is_constant(f: &TruthTable) -> bool {
    f.bits() == 0 || f.bits() == TruthTable::row_mask(f.arity())
}

/// Variables the function actually depends on, as 0-based positions.
pub fn essential_variables(f: &TruthTable) -> Vec<usize> {
    let n = f.arity();
    (0..n)
        .filter(|&j| {
            let b = 1 << (n - 1 - j);
            (0..f.rows()).any(|row| row & b == 0 && f.bit(row) != f.bit(row | b))
        })
        .collect()
}

fn shape_of(f: &TruthTable, n: usize) -> Shape {
    if is_constant(f) {
        return Shape::ProjectionOrConstant;
    }
    let ess = essential_variables(f);
    if ess.len() == 1 {
        let j = ess[0];
        return if *f == TruthTable::projection(n, j) {
            Shape::ProjectionOrConstant
        } else {
            Shape::EssentiallyUnary
        };
    }
    let or_of = TruthTable::from_fn(n, |a| ess.iter().any(|&j| a[j]));
    if *f == or_of {
        return Shape::Disjunction;
    }
    let and_of = TruthTable::from_fn(n, |a| ess.iter().all(|&j| a[j]));
    if *f == and_of {
        return Shape::Conjunction;
    }
    Shape::General
}

/// Largest `k >= 2` such that every set of at most `k` rows of `f^{-1}(c)`
/// has a coordinate on which all of them equal `c`. Returns `Infinite` when
/// this holds for the whole preimage (including an empty one) and
/// `Finite(1)` when already the degree-2 condition fails.
///
/// A set of rows violates the condition exactly when, for every coordinate,
/// one of its rows differs from `c` there; so the condition holds up to
/// `s - 1` where `s` is the smallest such covering set.
pub fn separating_degree(f: &TruthTable, c: bool) -> SepDegree {
    let n = f.arity();
    let full = (1usize << n) - 1;
    let differ: Vec<usize> = f
        .preimage(c)
        .into_iter()
        .map(|r| if c { !r & full } else { r })
        .collect();
    match min_cover(&differ, full) {
        None => SepDegree::Infinite,
        Some(s) if s <= 2 => SepDegree::Finite(1),
        Some(s) => SepDegree::Finite(s as u32 - 1),
    }
}

/// Fewest masks whose union is `full`, by breadth-first search over unions.
fn min_cover(masks: &[usize], full: usize) -> Option<usize> {
    if masks.is_empty() {
        return None;
    }
    let mut dist = vec![usize::MAX; full + 1];
    let mut frontier = vec![0usize];
    dist[0] = 0;
    let mut steps = 0;
    while !frontier.is_empty() {
        steps += 1;
        let mut next = Vec::new();
        for &u in &frontier {
            for &m in masks {
                let v = u | m;
                if dist[v] == usize::MAX {
                    dist[v] = steps;
                    next.push(v);
                }
            }
        }
        if dist[full] != usize::MAX {
            return Some(dist[full].max(1));
        }
        frontier = next;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolean::named::*;

    #[test]
    fn or_properties() {
        let p = function_properties(&or());
        assert!(p.reproduces0 && p.reproduces1 && p.monotone);
        assert!(!p.self_dual && !p.affine);
        assert_eq!(p.shape, Shape::Disjunction);
    }

    #[test]
    fn xor_properties() {
        let p = function_properties(&xor());
        assert!(p.reproduces0 && !p.reproduces1 && !p.monotone && !p.self_dual && p.affine);
        assert_eq!(p.shape, Shape::General);
    }

    #[test]
    fn maj_properties() {
        let p = function_properties(&maj3());
        assert!(p.monotone && p.self_dual && !p.affine && p.reproduces0 && p.reproduces1);
        assert_eq!(p.shape, Shape::General);
    }

    #[test]
    fn shapes_of_small_functions() {
        assert_eq!(function_properties(&not()).shape, Shape::EssentiallyUnary);
        assert_eq!(function_properties(&id()).shape, Shape::ProjectionOrConstant);
        assert_eq!(function_properties(&const0()).shape, Shape::ProjectionOrConstant);
        assert_eq!(function_properties(&and()).shape, Shape::Conjunction);
        // x1 | x3 with a dummy x2 is still a disjunction
        let t = TruthTable::from_fn(3, |a| a[0] || a[2]);
        assert_eq!(function_properties(&t).shape, Shape::Disjunction);
        // projection onto the second of two variables
        assert_eq!(
            function_properties(&TruthTable::projection(2, 1)).shape,
            Shape::ProjectionOrConstant
        );
    }

    #[test]
    fn affine_uses_variable_subsets() {
        let t = TruthTable::from_fn(3, |a| a[0] ^ a[2] ^ true);
        assert!(function_properties(&t).affine);
        assert!(function_properties(&xor3()).affine);
        assert!(!function_properties(&and()).affine);
    }

    #[test]
    fn separating_examples() {
        assert_eq!(separating_degree(&implies(), false), SepDegree::Infinite);
        assert_eq!(separating_degree(&maj3(), true), SepDegree::Finite(2));
        assert_eq!(separating_degree(&and_not(), true), SepDegree::Infinite);
        // NOR: the only 1-row is all zeros, no common 1-coordinate at all
        let nor = TruthTable::from_fn(2, |a| !(a[0] || a[1]));
        assert_eq!(separating_degree(&nor, true), SepDegree::Finite(1));
        // constants: empty preimage is vacuously separating
        assert_eq!(separating_degree(&const0(), true), SepDegree::Infinite);
        assert_eq!(separating_degree(&const0(), false), SepDegree::Finite(1));
        for n in 2..=5 {
            assert_eq!(separating_degree(&h(n), true), SepDegree::Finite(n as u32));
            assert_eq!(
                separating_degree(&h(n).dual(), false),
                SepDegree::Finite(n as u32)
            );
        }
    }
}
