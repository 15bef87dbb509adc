//! Linear systems over GF(2) with bitset rows.

/// `Σ coefs·x = rhs` over GF(2).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equation {
    coefs: Vec<u64>,
    pub rhs: bool,
}

impl Equation {
    pub fn zero(ncols: usize) -> Self {
        Equation {
            coefs: vec![0; ncols.div_ceil(64)],
            rhs: false,
        }
    }

    /// `x_col = value`.
    pub fn unit(ncols: usize, col: usize, value: bool) -> Self {
        let mut e = Equation::zero(ncols);
        e.set(col, true);
        e.rhs = value;
        e
    }

    pub fn get(&self, col: usize) -> bool {
        (self.coefs[col / 64] >> (col % 64)) & 1 == 1
    }

    pub fn set(&mut self, col: usize, v: bool) {
        let m = 1u64 << (col % 64);
        if v {
            self.coefs[col / 64] |= m;
        } else {
            self.coefs[col / 64] &= !m;
        }
    }

    pub fn flip(&mut self, col: usize) {
        self.coefs[col / 64] ^= 1u64 << (col % 64);
    }

    pub fn add(&mut self, other: &Equation) {
        for (a, b) in self.coefs.iter_mut().zip(&other.coefs) {
            *a ^= b;
        }
        self.rhs ^= other.rhs;
    }

    pub fn is_trivial(&self) -> bool {
        self.coefs.iter().all(|&w| w == 0)
    }

    pub fn eval(&self, x: &[bool]) -> bool {
        let mut acc = false;
        for (i, &b) in x.iter().enumerate() {
            acc ^= b && self.get(i);
        }
        acc == self.rhs
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineSystem {
    pub ncols: usize,
    pub rows: Vec<Equation>,
}

/// Reduced row echelon form: each kept row has a pivot column that is zero in
/// every other row, and every coefficient before the pivot (in the chosen
/// column order) is zero.
#[derive(Debug, Clone)]
pub struct Echelon {
    pub pivots: Vec<(usize, Equation)>,
    pub consistent: bool,
}

impl AffineSystem {
    pub fn new(ncols: usize) -> Self {
        AffineSystem {
            ncols,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, e: Equation) {
        self.rows.push(e);
    }

    /// Gauss-Jordan elimination with columns visited in `order`, which must
    /// list every column once.
    pub fn echelon(&self, order: &[usize]) -> Echelon {
        debug_assert_eq!(order.len(), self.ncols);
        let mut rows = self.rows.clone();
        let mut pivots: Vec<(usize, Equation)> = Vec::new();
        for &col in order {
            let Some(i) = rows.iter().position(|r| r.get(col)) else {
                continue;
            };
            let p = rows.swap_remove(i);
            for r in rows.iter_mut() {
                if r.get(col) {
                    r.add(&p);
                }
            }
            for (_, r) in pivots.iter_mut() {
                if r.get(col) {
                    r.add(&p);
                }
            }
            pivots.push((col, p));
        }
        let consistent = rows.iter().all(|r| !r.rhs);
        Echelon { pivots, consistent }
    }

    pub fn is_consistent(&self) -> bool {
        let order: Vec<usize> = (0..self.ncols).collect();
        self.echelon(&order).consistent
    }

    /// Equations cutting out the projection of the solution set onto
    /// `cols`, or `None` when the system has no solution.
    pub fn project(&self, cols: &[usize]) -> Option<AffineSystem> {
        let order = projection_order(self.ncols, cols);
        let ech = self.echelon(&order);
        if !ech.consistent {
            return None;
        }
        let keep: Vec<bool> = (0..self.ncols).map(|c| cols.contains(&c)).collect();
        let mut out = AffineSystem::new(self.ncols);
        for (col, r) in ech.pivots {
            if keep[col] {
                out.push(r);
            }
        }
        Some(out)
    }

    /// `log2 |proj_cols(solutions)|`, `None` for an empty solution set.
    pub fn projection_dim(&self, cols: &[usize]) -> Option<usize> {
        self.project(cols).map(|p| cols.len() - p.rows.len())
    }
}

/// Columns outside `cols` first, then `cols`, each group ascending.
pub fn projection_order(ncols: usize, cols: &[usize]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..ncols).filter(|c| !cols.contains(c)).collect();
    order.extend((0..ncols).filter(|c| cols.contains(c)));
    order
}

/// `2^d`, or 0 for an empty set.
pub fn size_of(dim: Option<usize>) -> u128 {
    dim.map_or(0, |d| 1u128 << d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eq(ncols: usize, cols: &[usize], rhs: bool) -> Equation {
        let mut e = Equation::zero(ncols);
        for &c in cols {
            e.flip(c);
        }
        e.rhs = rhs;
        e
    }

    #[test]
    fn inconsistent_pair() {
        let mut s = AffineSystem::new(1);
        s.push(eq(1, &[0], true));
        assert!(s.is_consistent());
        s.push(eq(1, &[0], false));
        assert!(!s.is_consistent());
        assert_eq!(s.projection_dim(&[0]), None);
    }

    #[test]
    fn projection_of_a_line() {
        // x0 + x1 + x2 = 1, x1 + x2 = 0  =>  x0 = 1, x1 = x2
        let mut s = AffineSystem::new(3);
        s.push(eq(3, &[0, 1, 2], true));
        s.push(eq(3, &[1, 2], false));
        assert_eq!(s.projection_dim(&[0]), Some(0));
        assert_eq!(s.projection_dim(&[1]), Some(1));
        assert_eq!(s.projection_dim(&[1, 2]), Some(1));
        assert_eq!(s.projection_dim(&[]), Some(0));
        let p = s.project(&[0]).unwrap();
        assert!(p.rows[0].eval(&[true, false, false]));
        assert!(!p.rows[0].eval(&[false, true, true]));
    }

    #[test]
    fn wide_rows() {
        let mut s = AffineSystem::new(130);
        s.push(eq(130, &[0, 64, 129], true));
        s.push(eq(130, &[129], true));
        assert_eq!(s.projection_dim(&[0, 64]), Some(1));
    }
}
