//! No-signaling advice: linear programming over the no-signaling polytope
//! and the canonical extremal box.
//!
//! The feasible set is cut out by per-type-pair normalization, the marginal
//! equalities of the no-signaling condition, and nonnegativity. The uniform
//! behavior satisfies every equality, so the system is always feasible and
//! a maximizer exists for any Bell expression.

use crate::bell::BellExpression;
use crate::error::{Error, Result};
use crate::game::{average_payoffs, Behavior, Game, PayoffVector};
use crate::simplex;
use crate::tolerances;

/// Popescu-Rohrlich box: P(A1,A2|X1,X2) = 1/2 when A1 ⊕ A2 = X1·X2, else 0.
pub fn pr_box() -> Behavior {
    let mut data = Vec::with_capacity(16);
    for x1 in 0..2usize {
        for x2 in 0..2usize {
            for a1 in 0..2usize {
                for a2 in 0..2usize {
                    data.push(if (a1 ^ a2) == x1 * x2 { 0.5 } else { 0.0 });
                }
            }
        }
    }
    Behavior::new([2, 2], [2, 2], data).expect("static construction")
}

/// Equality system describing the no-signaling polytope for one scenario.
pub struct NsConstraintSystem {
    n_types: [usize; 2],
    n_actions: [usize; 2],
    rows: Vec<Vec<f64>>,
    rhs: Vec<f64>,
    normalization_rows: usize,
    marginal_rows: [usize; 2],
}

impl NsConstraintSystem {
    pub fn new(n_types: [usize; 2], n_actions: [usize; 2]) -> Self {
        let [nt1, nt2] = n_types;
        let [na1, na2] = n_actions;
        let n_vars = nt1 * nt2 * na1 * na2;
        let var = |x1: usize, x2: usize, a1: usize, a2: usize| -> usize {
            ((x1 * nt2 + x2) * na1 + a1) * na2 + a2
        };
        let mut rows = Vec::new();
        let mut rhs = Vec::new();

        // One normalization row per type pair.
        for x1 in 0..nt1 {
            for x2 in 0..nt2 {
                let mut row = vec![0.0; n_vars];
                for a1 in 0..na1 {
                    for a2 in 0..na2 {
                        row[var(x1, x2, a1, a2)] = 1.0;
                    }
                }
                rows.push(row);
                rhs.push(1.0);
            }
        }
        let normalization_rows = rows.len();

        // Player 1's marginal must not depend on x2: compare every x2 > 0
        // against x2 = 0.
        let mut marginal1 = 0;
        for x1 in 0..nt1 {
            for a1 in 0..na1 {
                for x2 in 1..nt2 {
                    let mut row = vec![0.0; n_vars];
                    for a2 in 0..na2 {
                        row[var(x1, x2, a1, a2)] += 1.0;
                        row[var(x1, 0, a1, a2)] -= 1.0;
                    }
                    rows.push(row);
                    rhs.push(0.0);
                    marginal1 += 1;
                }
            }
        }
        // Player 2 symmetrically.
        let mut marginal2 = 0;
        for x2 in 0..nt2 {
            for a2 in 0..na2 {
                for x1 in 1..nt1 {
                    let mut row = vec![0.0; n_vars];
                    for a1 in 0..na1 {
                        row[var(x1, x2, a1, a2)] += 1.0;
                        row[var(0, x2, a1, a2)] -= 1.0;
                    }
                    rows.push(row);
                    rhs.push(0.0);
                    marginal2 += 1;
                }
            }
        }

        NsConstraintSystem {
            n_types,
            n_actions,
            rows,
            rhs,
            normalization_rows,
            marginal_rows: [marginal1, marginal2],
        }
    }

    pub fn n_vars(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn normalization_rows(&self) -> usize {
        self.normalization_rows
    }

    pub fn marginal_rows(&self) -> [usize; 2] {
        self.marginal_rows
    }

    /// Marks rows that are linear combinations of earlier rows. Redundant
    /// rows are kept in the system; the solver's feasibility phase absorbs
    /// them.
    pub fn redundant_rows(&self) -> Vec<bool> {
        let mut work: Vec<Vec<f64>> = Vec::new();
        let mut flags = Vec::with_capacity(self.rows.len());
        for row in &self.rows {
            let mut reduced = row.clone();
            for pivot_row in &work {
                let lead = pivot_row
                    .iter()
                    .position(|&v| v.abs() > 1e-12)
                    .expect("stored rows are nonzero");
                let factor = reduced[lead] / pivot_row[lead];
                if factor != 0.0 {
                    for (r, p) in reduced.iter_mut().zip(pivot_row) {
                        *r -= factor * p;
                    }
                }
            }
            let dependent = reduced.iter().all(|v| v.abs() <= 1e-9);
            flags.push(dependent);
            if !dependent {
                work.push(reduced);
            }
        }
        flags
    }

    fn behavior_from_solution(&self, x: Vec<f64>) -> Result<Behavior> {
        // LP vertices satisfy the bounds up to solver tolerance; snap tiny
        // negatives before the constructor's stricter clamp.
        let cleaned: Vec<f64> = x
            .into_iter()
            .map(|v| if v.abs() < tolerances::LP { 0.0 } else { v })
            .collect();
        Behavior::new(self.n_types, self.n_actions, cleaned)
    }
}

/// Maximizes a Bell expression over the no-signaling polytope. Returns the
/// optimum (exact up to LP tolerance) and an optimal behavior.
pub fn ns_maximize(expression: &BellExpression) -> Result<(f64, Behavior)> {
    let n_types = expression.n_types();
    let n_actions = expression.n_actions();
    let n_vars = (n_types[0] * n_types[1] * n_actions[0] * n_actions[1]) as u128;
    if n_vars > tolerances::LP_VARIABLE_CAP {
        return Err(Error::ResourceLimit {
            what: "no-signaling LP variables",
            count: n_vars,
            cap: tolerances::LP_VARIABLE_CAP,
        });
    }
    let system = NsConstraintSystem::new(n_types, n_actions);
    let solution =
        simplex::solve_equality_form(&system.rows, &system.rhs, expression.coefficients())?;
    let behavior = system.behavior_from_solution(solution.x)?;
    Ok((solution.objective, behavior))
}

/// Average payoffs of a no-signaling behavior, tagged as such. Rejects
/// signaling inputs instead of silently evaluating them.
pub fn ns_payoff_point(game: &Game, behavior: &Behavior) -> Result<PayoffVector> {
    let check = behavior.is_no_signaling(tolerances::NO_SIGNALING);
    if !check.no_signaling {
        return Err(Error::Contract(format!(
            "behavior signals: max marginal discrepancy {}",
            check.max_violation
        )));
    }
    average_payoffs(game, behavior)
}
