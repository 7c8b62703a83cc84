//! Self-contained dense two-phase simplex for equality-constrained LPs.
//!
//! Solves max cᵀx subject to Ax = b, x ≥ 0. Phase I introduces one
//! artificial variable per row and minimizes their sum; rows whose artificial
//! cannot be driven out afterwards are redundant and are deleted before
//! phase II. Bland's rule governs both phases, so degenerate pivots cannot
//! cycle. Dense tableau arithmetic is entirely adequate at the problem sizes
//! this crate produces.

use crate::error::{Error, Result};
use crate::tolerances;

const PIVOT_EPS: f64 = 1e-11;

pub(crate) struct LpSolution {
    pub objective: f64,
    pub x: Vec<f64>,
}

struct Tableau {
    cols: usize,
    // Each row has cols + 1 entries; the last column is the rhs.
    a: Vec<Vec<f64>>,
    basis: Vec<usize>,
}

impl Tableau {
    fn pivot(&mut self, row: usize, col: usize) {
        let scale = self.a[row][col];
        for v in self.a[row].iter_mut() {
            *v /= scale;
        }
        let pivot_row = self.a[row].clone();
        for (r, target) in self.a.iter_mut().enumerate() {
            if r == row {
                continue;
            }
            let factor = target[col];
            if factor == 0.0 {
                continue;
            }
            for (t, p) in target.iter_mut().zip(&pivot_row) {
                *t -= factor * p;
            }
        }
        self.basis[row] = col;
    }

    /// One simplex phase under Bland's rule: the entering variable is the
    /// lowest index below `active_cols` with positive reduced cost, the
    /// leaving row is the ratio-test winner with the lowest basis index.
    fn maximize(&mut self, cost: &[f64], active_cols: usize) -> f64 {
        loop {
            let mut reduced = cost.to_vec();
            let mut objective = 0.0;
            for (r, &bv) in self.basis.iter().enumerate() {
                let cb = cost[bv];
                if cb == 0.0 {
                    continue;
                }
                objective += cb * self.a[r][self.cols];
                for c in 0..self.cols {
                    reduced[c] -= cb * self.a[r][c];
                }
            }
            let entering = (0..active_cols).find(|&c| reduced[c] > tolerances::LP);
            let Some(col) = entering else {
                return objective;
            };
            let mut leaving: Option<(usize, f64)> = None;
            for r in 0..self.a.len() {
                let coeff = self.a[r][col];
                if coeff > PIVOT_EPS {
                    let ratio = self.a[r][self.cols] / coeff;
                    let better = match leaving {
                        None => true,
                        Some((lr, lratio)) => {
                            ratio < lratio - PIVOT_EPS
                                || (ratio < lratio + PIVOT_EPS && self.basis[r] < self.basis[lr])
                        }
                    };
                    if better {
                        leaving = Some((r, ratio));
                    }
                }
            }
            let Some((row, _)) = leaving else {
                // Unbounded direction; callers only pose bounded problems.
                return f64::INFINITY;
            };
            self.pivot(row, col);
        }
    }
}

/// Solves max cᵀx, Ax = b, x ≥ 0. `a` is row-major with one inner vec per
/// constraint. Returns the optimum and an optimal basic solution.
pub(crate) fn solve_equality_form(a: &[Vec<f64>], b: &[f64], cost: &[f64]) -> Result<LpSolution> {
    let rows = a.len();
    let n = cost.len();
    let cols = n + rows; // structural + artificial
    let mut tab = Tableau {
        cols,
        a: Vec::with_capacity(rows),
        basis: Vec::with_capacity(rows),
    };
    for (r, row) in a.iter().enumerate() {
        assert_eq!(row.len(), n, "constraint row length mismatch");
        let flip = if b[r] < 0.0 { -1.0 } else { 1.0 };
        let mut full: Vec<f64> = row.iter().map(|&v| flip * v).collect();
        full.resize(cols, 0.0);
        full[n + r] = 1.0;
        full.push(flip * b[r]);
        tab.a.push(full);
        tab.basis.push(n + r);
    }

    // Phase I: maximize minus the sum of artificials.
    let mut phase1 = vec![0.0; cols];
    for c in n..cols {
        phase1[c] = -1.0;
    }
    let infeasibility = -tab.maximize(&phase1, cols);
    if infeasibility > 1e-7 {
        return Err(Error::Contract(format!(
            "LP infeasible: phase-I residual {infeasibility}"
        )));
    }

    // Drive remaining artificials out of the basis; rows with no available
    // pivot are linearly dependent and get deleted before phase II.
    for r in 0..tab.a.len() {
        if tab.basis[r] >= n {
            if let Some(c) = (0..n).find(|&c| tab.a[r][c].abs() > PIVOT_EPS) {
                tab.pivot(r, c);
            }
        }
    }
    let mut keep = Vec::with_capacity(tab.a.len());
    let mut kept_basis = Vec::with_capacity(tab.basis.len());
    for (row, &bv) in tab.a.drain(..).zip(&tab.basis) {
        if bv < n {
            keep.push(row);
            kept_basis.push(bv);
        }
    }
    tab.a = keep;
    tab.basis = kept_basis;

    // Phase II on the structural objective; artificial columns stay out.
    let mut phase2 = cost.to_vec();
    phase2.resize(cols, 0.0);
    let objective = tab.maximize(&phase2, n);
    if !objective.is_finite() {
        return Err(Error::Contract("LP is unbounded".to_string()));
    }

    let mut x = vec![0.0; n];
    for (r, &bv) in tab.basis.iter().enumerate() {
        x[bv] = tab.a[r][tab.cols];
    }
    Ok(LpSolution { objective, x })
}
