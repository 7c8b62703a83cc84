//! Bell expressions and their link to average payoffs.
//!
//! Any average payoff is a linear functional of the behavior with coefficient
//! tensor α = μ·f, and so is any linear combination of the two players'
//! payoffs. The expressions built here are what the classical, quantum, and
//! no-signaling maximizers optimize.

use crate::error::{Error, Result};
use crate::game::{Behavior, Game, PayoffVector, Player};
use crate::tensor::Tensor4;

/// Linear functional S = Σ α_{X1,X2,A1,A2} P(A1,A2|X1,X2).
#[derive(Clone, Debug, PartialEq)]
pub struct BellExpression {
    alpha: Tensor4,
}

impl BellExpression {
    pub fn new(n_types: [usize; 2], n_actions: [usize; 2], coefficients: Vec<f64>) -> Result<Self> {
        let dims = [n_types[0], n_types[1], n_actions[0], n_actions[1]];
        if coefficients.iter().any(|c| !c.is_finite()) {
            return Err(Error::Contract(
                "Bell coefficients must be finite".to_string(),
            ));
        }
        let alpha = Tensor4::new(dims, coefficients).ok_or(Error::Dimension {
            context: "bell expression",
            expected: dims,
            actual: [0, 0, 0, 0],
        })?;
        Ok(BellExpression { alpha })
    }

    pub fn n_types(&self) -> [usize; 2] {
        let d = self.alpha.dims();
        [d[0], d[1]]
    }

    pub fn n_actions(&self) -> [usize; 2] {
        let d = self.alpha.dims();
        [d[2], d[3]]
    }

    pub fn coefficient(&self, x1: usize, x2: usize, a1: usize, a2: usize) -> f64 {
        self.alpha.at(x1, x2, a1, a2)
    }

    pub fn coefficients(&self) -> &[f64] {
        self.alpha.data()
    }

    /// Evaluates the expression against a behavior.
    pub fn evaluate(&self, behavior: &Behavior) -> Result<f64> {
        let expected = self.alpha.dims();
        let actual = {
            let t = behavior.n_types();
            let a = behavior.n_actions();
            [t[0], t[1], a[0], a[1]]
        };
        if expected != actual {
            return Err(Error::Dimension {
                context: "bell evaluation",
                expected,
                actual,
            });
        }
        Ok(self
            .alpha
            .data()
            .iter()
            .zip(behavior.flat())
            .map(|(a, p)| a * p)
            .sum())
    }

    /// Evaluates the expression against a deterministic strategy profile
    /// without materializing its behavior.
    pub(crate) fn evaluate_deterministic(&self, map1: &[usize], map2: &[usize]) -> f64 {
        let [nt1, nt2] = self.n_types();
        let mut s = 0.0;
        for x1 in 0..nt1 {
            for x2 in 0..nt2 {
                s += self.alpha.at(x1, x2, map1[x1], map2[x2]);
            }
        }
        s
    }
}

/// Half-space constraint β·F ≤ β0 in payoff space.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct FacetInequality {
    pub beta: [f64; 2],
    pub beta0: f64,
}

impl FacetInequality {
    pub fn new(beta: [f64; 2], beta0: f64) -> Result<Self> {
        if beta == [0.0, 0.0] {
            return Err(Error::Contract("facet normal must be nonzero".to_string()));
        }
        Ok(FacetInequality { beta, beta0 })
    }

    /// True when `v` satisfies the inequality within `tol`.
    pub fn satisfied_by(&self, v: &PayoffVector, tol: f64) -> bool {
        self.beta[0] * v.f1 + self.beta[1] * v.f2 <= self.beta0 + tol
    }
}

/// α = μ·f for one player, so that evaluating the result against any behavior
/// reproduces that player's average payoff.
pub fn payoff_to_bell(game: &Game, player: Player) -> BellExpression {
    combine_payoffs(
        game,
        match player {
            Player::One => [1.0, 0.0],
            Player::Two => [0.0, 1.0],
        },
    )
}

/// α = β1·μ·f1 + β2·μ·f2, the expression for the payoff combination β·F.
pub fn combine_payoffs(game: &Game, beta: [f64; 2]) -> BellExpression {
    let [nt1, nt2] = game.n_types();
    let [na1, na2] = game.n_actions();
    let mut coefficients = Vec::with_capacity(nt1 * nt2 * na1 * na2);
    for x1 in 0..nt1 {
        for x2 in 0..nt2 {
            let mu = game.prior(x1, x2);
            for a1 in 0..na1 {
                for a2 in 0..na2 {
                    coefficients.push(
                        mu * (beta[0] * game.payoff(Player::One, x1, x2, a1, a2)
                            + beta[1] * game.payoff(Player::Two, x1, x2, a1, a2)),
                    );
                }
            }
        }
    }
    BellExpression::new([nt1, nt2], [na1, na2], coefficients).expect("game tensors are finite")
}

/// The CHSH expression in behavior coefficients: S = E00 + E01 + E10 − E11.
pub fn chsh_expression() -> BellExpression {
    let mut coefficients = Vec::with_capacity(16);
    for x1 in 0..2usize {
        for x2 in 0..2usize {
            let sign = if x1 * x2 == 1 { -1.0 } else { 1.0 };
            for a1 in 0..2usize {
                for a2 in 0..2usize {
                    let parity = if a1 == a2 { 1.0 } else { -1.0 };
                    coefficients.push(sign * parity);
                }
            }
        }
    }
    BellExpression::new([2, 2], [2, 2], coefficients).expect("static shape")
}
