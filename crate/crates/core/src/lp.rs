//! Dense exact simplex over rationals.
//!
//! Problems are in standard form `min c·x` subject to `A x = b`, `x >= 0`.
//! Phase one minimizes the sum of artificial variables; Bland's rule picks
//! entering and leaving variables, so the method cannot cycle. Infeasible
//! systems come with a Farkas vector `y` such that `yᵀA >= 0` and `y·b < 0`.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { x: Vec<Rational>, value: Rational },
    Infeasible { farkas: Vec<Rational> },
    Unbounded,
}

impl LpOutcome {
    pub fn is_optimal(&self) -> bool {
        matches!(self, Self::Optimal { .. })
    }
}

struct Tableau {
    /// `rows × (cols + 1)`; the last entry is the right-hand side.
    rows: Vec<Vec<Rational>>,
    /// Reduced costs, last entry is minus the objective value.
    obj: Vec<Rational>,
    basis: Vec<usize>,
    cols: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        for v in self.rows[r].iter_mut() {
            *v /= &p;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (v, pv) in row.iter_mut().zip(&pivot_row) {
                    if !pv.is_zero() {
                        *v -= &f * pv;
                    }
                }
            }
        }
        if !self.obj[c].is_zero() {
            let f = self.obj[c].clone();
            for (v, pv) in self.obj.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Runs Bland's rule over the columns allowed by `eligible`. Returns
    /// `false` if the objective is unbounded below.
    fn optimize(&mut self, eligible: impl Fn(usize) -> bool) -> bool {
        loop {
            let Some(c) = (0..self.cols).find(|&j| eligible(j) && self.obj[j].is_negative()) else {
                return true;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if row[c].is_positive() {
                    let ratio = &row[self.cols] / &row[c];
                    let better = match &leave {
                        None => true,
                        Some((l, best)) => ratio < *best || (ratio == *best && self.basis[i] < self.basis[*l]),
                    };
                    if better {
                        leave = Some((i, ratio));
                    }
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, c),
                None => return false,
            }
        }
    }

    fn set_objective(&mut self, costs: &[Rational]) {
        let mut obj: Vec<Rational> = costs.to_vec();
        obj.resize(self.cols + 1, Rational::zero());
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            let cb = obj[b].clone();
            if !cb.is_zero() {
                for (o, v) in obj.iter_mut().zip(row) {
                    *o -= &cb * v;
                }
            }
        }
        self.obj = obj;
    }
}

/// Solves `min c·x, A x = b, x >= 0`. Rows of `a` must all have `c.len()` entries.
pub fn solve_standard(a: &[Vec<Rational>], b: &[Rational], c: &[Rational]) -> LpOutcome {
    let m = a.len();
    let n = c.len();
    assert_eq!(b.len(), m, "one right-hand side per row");
    assert!(a.iter().all(|r| r.len() == n), "rows must match the cost vector");

    // sign-normalize so every right-hand side is nonnegative
    let signs: Vec<bool> = b.iter().map(|v| v.is_negative()).collect();
    let cols = n + m;
    let rows = (0..m)
        .map(|i| {
            let mut row = Vec::with_capacity(cols + 1);
            for v in &a[i] {
                row.push(if signs[i] { -v } else { v.clone() });
            }
            for k in 0..m {
                row.push(if k == i { Rational::from_integer(1.into()) } else { Rational::zero() });
            }
            row.push(if signs[i] { -&b[i] } else { b[i].clone() });
            row
        })
        .collect();
    let mut t = Tableau { rows, obj: Vec::new(), basis: (n..cols).collect(), cols };

    let mut phase1 = vec![Rational::zero(); n];
    phase1.resize(cols, Rational::from_integer(1.into()));
    t.set_objective(&phase1);
    t.optimize(|_| true);
    let infeasibility = -t.obj[cols].clone();
    if infeasibility.is_positive() {
        // dual of the phase-one problem: π_i = 1 - reduced cost of artificial i
        let farkas = (0..m)
            .map(|i| {
                let pi = Rational::from_integer(1.into()) - &t.obj[n + i];
                if signs[i] {
                    pi
                } else {
                    -pi
                }
            })
            .collect();
        return LpOutcome::Infeasible { farkas };
    }

    // drive remaining artificials out of the basis; drop redundant rows
    let mut r = 0;
    while r < t.rows.len() {
        if t.basis[r] >= n {
            match (0..n).find(|&j| !t.rows[r][j].is_zero()) {
                Some(j) => t.pivot(r, j),
                None => {
                    t.rows.remove(r);
                    t.basis.remove(r);
                    continue;
                }
            }
        }
        r += 1;
    }

    let mut phase2 = c.to_vec();
    phase2.resize(cols, Rational::zero());
    t.set_objective(&phase2);
    if !t.optimize(|j| j < n) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![Rational::zero(); n];
    for (row, &bv) in t.rows.iter().zip(&t.basis) {
        if bv < n {
            x[bv] = row[cols].clone();
        }
    }
    let value = c.iter().zip(&x).map(|(ci, xi)| ci * xi).sum();
    LpOutcome::Optimal { x, value }
}

/// `yᵀA >= 0` componentwise and `y·b < 0`.
pub fn is_farkas_certificate(a: &[Vec<Rational>], b: &[Rational], y: &[Rational]) -> bool {
    if y.len() != a.len() {
        return false;
    }
    let n = a.first().map_or(0, |r| r.len());
    let combo_ok = (0..n).all(|j| {
        let s: Rational = a.iter().zip(y).map(|(row, yi)| &row[j] * yi).sum();
        !s.is_negative()
    });
    let rhs: Rational = b.iter().zip(y).map(|(bi, yi)| bi * yi).sum();
    combo_ok && rhs.is_negative()
}

/// Row-reduces a copy of `rows`; returns the reduced rows and pivot columns.
fn echelon(rows: &[Vec<Rational>], width: usize) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..width {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let pv = m[r][c].clone();
        for v in m[r].iter_mut() {
            *v /= &pv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (v, pv) in row.iter_mut().zip(&pivot_row) {
                    *v -= &f * pv;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    (m, pivots)
}

/// Rank of a rational matrix given by rows of equal length.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let width = rows.first().map_or(0, |r| r.len());
    echelon(rows, width).1.len()
}

/// The unique solution of `rows · x = rhs`, if the system is consistent and
/// has full column rank.
pub fn solve_unique(rows: &[Vec<Rational>], rhs: &[Rational], dim: usize) -> Option<Vec<Rational>> {
    let augmented: Vec<Vec<Rational>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut row = r.clone();
            row.push(b.clone());
            row
        })
        .collect();
    let (reduced, pivots) = echelon(&augmented, dim + 1);
    if pivots.contains(&dim) || pivots.len() != dim {
        return None;
    }
    Some(reduced.iter().map(|row| row[dim].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{frac, int};

    #[test]
    fn small_optimum() {
        // min -x - y, x + y + s = 4, x + 3y + t = 6
        let a = vec![vec![int(1), int(1), int(1), int(0)], vec![int(1), int(3), int(0), int(1)]];
        let b = vec![int(4), int(6)];
        let c = vec![int(-1), int(-1), int(0), int(0)];
        match solve_standard(&a, &b, &c) {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, int(-4)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn fractional_vertex() {
        // min -x - y, 2x + y + s = 2, x + 2y + t = 2: optimum at (2/3, 2/3)
        let a = vec![vec![int(2), int(1), int(1), int(0)], vec![int(1), int(2), int(0), int(1)]];
        let b = vec![int(2), int(2)];
        let c = vec![int(-1), int(-1), int(0), int(0)];
        match solve_standard(&a, &b, &c) {
            LpOutcome::Optimal { x, value } => {
                assert_eq!(value, frac(-4, 3));
                assert_eq!(x[..2], [frac(2, 3), frac(2, 3)]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infeasible_has_certificate() {
        // x + y = 1, x + y = 2 (second written with a negative rhs)
        let a = vec![vec![int(1), int(1)], vec![int(-1), int(-1)]];
        let b = vec![int(1), int(-2)];
        match solve_standard(&a, &b, &[int(0), int(0)]) {
            LpOutcome::Infeasible { farkas } => assert!(is_farkas_certificate(&a, &b, &farkas)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unbounded() {
        // min -x, x - y = 0
        let a = vec![vec![int(1), int(-1)]];
        assert_eq!(solve_standard(&a, &[int(0)], &[int(-1), int(0)]), LpOutcome::Unbounded);
    }

    #[test]
    fn redundant_rows_are_dropped() {
        let a = vec![vec![int(1), int(1)], vec![int(2), int(2)]];
        let b = vec![int(1), int(2)];
        match solve_standard(&a, &b, &[int(1), int(2)]) {
            LpOutcome::Optimal { x, value } => {
                assert_eq!(value, int(1));
                assert_eq!(x, vec![int(1), int(0)]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn rank_and_unique_solution() {
        let rows = vec![vec![int(1), int(1)], vec![int(1), int(-1)], vec![int(2), int(0)]];
        assert_eq!(rank(&rows), 2);
        assert_eq!(solve_unique(&rows, &[int(2), int(0), int(2)], 2), Some(vec![int(1), int(1)]));
        assert_eq!(solve_unique(&rows, &[int(2), int(0), int(3)], 2), None);
        assert_eq!(solve_unique(&rows[..1], &[int(2)], 2), None);
    }
}
