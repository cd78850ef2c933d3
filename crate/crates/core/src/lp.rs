//! Exact two-phase simplex over the rationals with Bland's rule.
//!
//! Solves `maximize cᵀx subject to Ax = b, x ≥ 0`.

use num_traits::{Signed, Zero};

use crate::linalg::Matrix;
use crate::rational::Q;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { value: Q, x: Vec<Q> },
    Infeasible,
    Unbounded,
}

impl LpOutcome {
    pub fn value(&self) -> Option<&Q> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }
}

struct Tableau {
    /// Rows `[A | b]`.
    rows: Vec<Vec<Q>>,
    basis: Vec<usize>,
    ncols: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &Q {
        &self.rows[i][self.ncols]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        for v in self.rows[r].iter_mut() {
            *v = &*v / &p;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Runs simplex iterations for `cost` restricted to columns `< active`.
    /// Returns `false` if unbounded.
    fn optimize(&mut self, cost: &[Q], active: usize) -> bool {
        loop {
            let entering = (0..active).find(|&j| {
                if self.basis.contains(&j) {
                    return false;
                }
                let mut d = cost[j].clone();
                for (i, &b) in self.basis.iter().enumerate() {
                    if !cost[b].is_zero() && !self.rows[i][j].is_zero() {
                        d -= &cost[b] * &self.rows[i][j];
                    }
                }
                d.is_positive()
            });
            let Some(c) = entering else { return true };
            let mut best: Option<(usize, Q)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][c];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(i) / a;
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            let Some((r, _)) = best else { return false };
            self.pivot(r, c);
        }
    }

    fn solution(&self, n: usize) -> Vec<Q> {
        let mut x = vec![Q::zero(); n];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < n {
                x[b] = self.rhs(i).clone();
            }
        }
        x
    }
}

/// Maximizes `cᵀx` over `{x ≥ 0 : Ax = b}`.
pub fn maximize(c: &[Q], a: &Matrix, b: &[Q]) -> LpOutcome {
    let m = a.len();
    let n = c.len();
    assert_eq!(b.len(), m, "one right-hand side per row");
    let ncols = n + m;
    let mut rows = Vec::with_capacity(m);
    for (i, (row, bi)) in a.iter().zip(b).enumerate() {
        assert_eq!(row.len(), n, "row width");
        let flip = bi.is_negative();
        let mut r: Vec<Q> = row.iter().map(|v| if flip { -v } else { v.clone() }).collect();
        r.extend((0..m).map(|k| if k == i { Q::from_integer(1.into()) } else { Q::zero() }));
        r.push(if flip { -bi } else { bi.clone() });
        rows.push(r);
    }
    let mut t = Tableau { rows, basis: (n..n + m).collect(), ncols };

    let mut phase1 = vec![Q::zero(); ncols];
    for v in phase1.iter_mut().skip(n) {
        *v = Q::from_integer((-1).into());
    }
    t.optimize(&phase1, ncols);
    if (0..m).any(|i| t.basis[i] >= n && !t.rhs(i).is_zero()) {
        return LpOutcome::Infeasible;
    }
    // Drive zero-valued artificials out of the basis; drop redundant rows.
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= n {
            match (0..n).find(|&j| !t.rows[i][j].is_zero()) {
                Some(j) => t.pivot(i, j),
                None => {
                    t.rows.remove(i);
                    t.basis.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }

    let mut cost = c.to_vec();
    cost.resize(ncols, Q::zero());
    if !t.optimize(&cost, n) {
        return LpOutcome::Unbounded;
    }
    let x = t.solution(n);
    let value = c.iter().zip(&x).fold(Q::zero(), |acc, (ci, xi)| acc + ci * xi);
    LpOutcome::Optimal { value, x }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, q_frac};

    fn mat(rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect()
    }

    #[test]
    fn small_optimum() {
        // max x + y, x + 2y + s1 = 4, 3x + y + s2 = 6
        let out = maximize(&[q(1), q(1), q(0), q(0)], &mat(&[&[1, 2, 1, 0], &[3, 1, 0, 1]]), &[q(4), q(6)]);
        let LpOutcome::Optimal { value, x } = out else { panic!("expected optimum") };
        assert_eq!(value, q_frac(14, 5));
        assert_eq!(x[0], q_frac(8, 5));
        assert_eq!(x[1], q_frac(6, 5));
    }

    #[test]
    fn infeasible() {
        // x + y = -1 with x, y ≥ 0
        assert_eq!(maximize(&[q(0), q(0)], &mat(&[&[1, 1]]), &[q(-1)]), LpOutcome::Infeasible);
    }

    #[test]
    fn unbounded() {
        // max x, x - y = 1
        assert_eq!(maximize(&[q(1), q(0)], &mat(&[&[1, -1]]), &[q(1)]), LpOutcome::Unbounded);
    }

    #[test]
    fn redundant_rows() {
        let out = maximize(&[q(1), q(0)], &mat(&[&[1, 1], &[2, 2]]), &[q(3), q(6)]);
        assert_eq!(out.value(), Some(&q(3)));
    }

    #[test]
    fn degenerate_cycle_example() {
        // Beale's example, which cycles under the largest-coefficient rule.
        let a = mat(&[&[1, 0, 0, 1, 0, 0, 0], &[0, 1, 0, 0, 1, 0, 0], &[0, 0, 1, 0, 0, 1, 0]]);
        let mut a = a;
        let extra: [[Q; 4]; 3] =
            [[q_frac(1, 4), q(-8), q(-1), q(9)], [q_frac(1, 2), q(-12), q_frac(-1, 2), q(3)], [q(0), q(0), q(1), q(0)]];
        for (row, e) in a.iter_mut().zip(extra) {
            row.truncate(3);
            row.extend(e);
        }
        let c = [q(0), q(0), q(0), q_frac(3, 4), q(-20), q_frac(1, 2), q(-6)];
        let out = maximize(&c, &a, &[q(0), q(0), q(1)]);
        assert_eq!(out.value(), Some(&q_frac(5, 4)));
    }
}
