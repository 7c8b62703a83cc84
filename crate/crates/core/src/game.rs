//! Two-player Bayesian games, behaviors, and average-payoff evaluation.
//!
//! A game fixes type and action counts for both players, a prior over type
//! pairs, and one payoff tensor per player. Since the state of Nature is the
//! type pair itself, each player's type map is the corresponding projection;
//! it is never stored. A behavior is the joint conditional distribution
//! P(A1,A2|X1,X2), the single interface through which every advice model
//! (classical mixture, quantum strategy, no-signaling box) feeds payoff
//! evaluation.

use crate::error::{Error, Result, Violation};
use crate::tensor::Tensor4;
use crate::tolerances;

/// Which of the two players an operation refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Player {
    One,
    Two,
}

impl Player {
    pub fn index(self) -> usize {
        match self {
            Player::One => 0,
            Player::Two => 1,
        }
    }

    pub fn other(self) -> Player {
        match self {
            Player::One => Player::Two,
            Player::Two => Player::One,
        }
    }
}

/// Average payoff pair (F1, F2).
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct PayoffVector {
    pub f1: f64,
    pub f2: f64,
}

impl PayoffVector {
    pub fn new(f1: f64, f2: f64) -> Self {
        PayoffVector { f1, f2 }
    }

    pub fn get(&self, player: Player) -> f64 {
        match player {
            Player::One => self.f1,
            Player::Two => self.f2,
        }
    }
}

/// Normal form of a two-player Bayesian game.
#[derive(Clone, Debug)]
pub struct Game {
    label: String,
    n_types: [usize; 2],
    n_actions: [usize; 2],
    prior: Vec<f64>,
    payoffs: [Tensor4; 2],
    // Payoff slice lengths as supplied to the constructor, kept so that
    // validate() can report shape errors even after internal padding.
    recorded_shapes: [usize; 2],
}

impl Game {
    /// Builds a game and checks all invariants; the flat slices are row-major
    /// (`x1`-major, then `x2`, `a1`, `a2`).
    pub fn new(
        label: impl Into<String>,
        n_types: [usize; 2],
        n_actions: [usize; 2],
        prior: Vec<f64>,
        payoff1: Vec<f64>,
        payoff2: Vec<f64>,
    ) -> Result<Self> {
        let game = Game::assemble(label, n_types, n_actions, prior, payoff1, payoff2)?;
        let violations = game.validate();
        if violations.is_empty() {
            Ok(game)
        } else {
            Err(Error::InvalidGame(violations))
        }
    }

    /// Builds the structure without checking the numeric invariants, so that
    /// [`Game::validate`] can diagnose a questionable game. Shapes must still
    /// be consistent enough to index safely; for diagnosable shape errors use
    /// payoff vectors of the wrong length (kept as-is and reported).
    pub fn assemble(
        label: impl Into<String>,
        n_types: [usize; 2],
        n_actions: [usize; 2],
        prior: Vec<f64>,
        payoff1: Vec<f64>,
        payoff2: Vec<f64>,
    ) -> Result<Self> {
        if prior.len() != n_types[0] * n_types[1] {
            return Err(Error::Dimension {
                context: "prior",
                expected: [n_types[0], n_types[1], 1, 1],
                actual: [prior.len(), 1, 1, 1],
            });
        }
        let dims = [n_types[0], n_types[1], n_actions[0], n_actions[1]];
        let expected: usize = dims.iter().product();
        let mk = |data: Vec<f64>| {
            // Wrong-length payoff tensors are padded internally so the game
            // remains indexable; validate() reports the original length.
            Tensor4::new(dims, data.clone()).unwrap_or_else(|| {
                let mut padded = data;
                padded.resize(expected, 0.0);
                Tensor4::new(dims, padded).expect("padded to shape")
            })
        };
        let recorded_shapes = [payoff1.len(), payoff2.len()];
        Ok(Game {
            label: label.into(),
            n_types,
            n_actions,
            prior,
            payoffs: [mk(payoff1), mk(payoff2)],
            recorded_shapes,
        })
    }

    /// Checks every invariant and returns one entry per failure; an empty
    /// list means the game is valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.n_types[0] == 0 || self.n_types[1] == 0 {
            out.push(Violation::EmptyDimension("type"));
        }
        if self.n_actions[0] == 0 || self.n_actions[1] == 0 {
            out.push(Violation::EmptyDimension("action"));
        }
        let sum: f64 = self.prior.iter().sum();
        if (sum - 1.0).abs() > tolerances::WEIGHT_SUM {
            out.push(Violation::PriorSum(sum));
        }
        for x1 in 0..self.n_types[0] {
            for x2 in 0..self.n_types[1] {
                let v = self.prior[x1 * self.n_types[1] + x2];
                if v < 0.0 {
                    out.push(Violation::PriorNegative([x1, x2], v));
                }
            }
        }
        let expected: usize = [
            self.n_types[0],
            self.n_types[1],
            self.n_actions[0],
            self.n_actions[1],
        ]
        .iter()
        .product();
        for player in 0..2 {
            if self.recorded_shapes[player] != expected {
                out.push(Violation::PayoffShape {
                    player: player + 1,
                    expected,
                    actual: self.recorded_shapes[player],
                });
            }
            for (index, v) in self.payoffs[player].indexed() {
                if !v.is_finite() {
                    out.push(Violation::PayoffNotFinite {
                        player: player + 1,
                        index,
                    });
                }
            }
        }
        out
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn n_types(&self) -> [usize; 2] {
        self.n_types
    }

    pub fn n_actions(&self) -> [usize; 2] {
        self.n_actions
    }

    pub fn prior(&self, x1: usize, x2: usize) -> f64 {
        self.prior[x1 * self.n_types[1] + x2]
    }

    pub fn prior_flat(&self) -> &[f64] {
        &self.prior
    }

    pub fn payoff(&self, player: Player, x1: usize, x2: usize, a1: usize, a2: usize) -> f64 {
        self.payoffs[player.index()].at(x1, x2, a1, a2)
    }

    pub fn payoff_flat(&self, player: Player) -> &[f64] {
        self.payoffs[player.index()].data()
    }

    /// True when both players have exactly two actions.
    pub fn is_binary(&self) -> bool {
        self.n_actions == [2, 2]
    }
}

impl Game {
    fn shape_dims(&self) -> [usize; 4] {
        [
            self.n_types[0],
            self.n_types[1],
            self.n_actions[0],
            self.n_actions[1],
        ]
    }
}

/// Joint conditional distribution P(A1,A2|X1,X2).
#[derive(Clone, Debug, PartialEq)]
pub struct Behavior {
    p: Tensor4,
}

impl Behavior {
    /// Builds a behavior from a flat row-major slice, clamping negatives
    /// within [`tolerances::PROBABILITY_CLAMP`] to zero and rejecting larger
    /// negatives or non-normalized blocks.
    pub fn new(n_types: [usize; 2], n_actions: [usize; 2], data: Vec<f64>) -> Result<Self> {
        let dims = [n_types[0], n_types[1], n_actions[0], n_actions[1]];
        let mut p = Tensor4::new(dims, data).ok_or(Error::Dimension {
            context: "behavior",
            expected: dims,
            actual: [0, 0, 0, 0],
        })?;
        for (index, v) in p.indexed() {
            if v < -tolerances::PROBABILITY_CLAMP {
                return Err(Error::BehaviorNegative { index, value: v });
            }
        }
        for v in p.data_mut() {
            if *v < 0.0 {
                *v = 0.0;
            }
        }
        let b = Behavior { p };
        for x1 in 0..n_types[0] {
            for x2 in 0..n_types[1] {
                let mut sum = 0.0;
                for a1 in 0..n_actions[0] {
                    for a2 in 0..n_actions[1] {
                        sum += b.p.at(x1, x2, a1, a2);
                    }
                }
                if (sum - 1.0).abs() > tolerances::BEHAVIOR_NORMALIZATION {
                    return Err(Error::BehaviorNormalization { x1, x2, sum });
                }
            }
        }
        Ok(b)
    }

    /// The uniform behavior: every outcome pair equally likely for each
    /// type pair.
    pub fn uniform(n_types: [usize; 2], n_actions: [usize; 2]) -> Self {
        let dims = [n_types[0], n_types[1], n_actions[0], n_actions[1]];
        let v = 1.0 / (n_actions[0] * n_actions[1]) as f64;
        let mut p = Tensor4::zeros(dims);
        p.data_mut().fill(v);
        Behavior { p }
    }

    /// Convex combination `lambda * self + (1 - lambda) * other`.
    pub fn mix(&self, other: &Behavior, lambda: f64) -> Result<Self> {
        if self.p.dims() != other.p.dims() {
            return Err(Error::Dimension {
                context: "behavior mix",
                expected: self.p.dims(),
                actual: other.p.dims(),
            });
        }
        let data = self
            .p
            .data()
            .iter()
            .zip(other.p.data())
            .map(|(a, b)| lambda * a + (1.0 - lambda) * b)
            .collect();
        let dims = self.p.dims();
        Ok(Behavior {
            p: Tensor4::new(dims, data).expect("same shape"),
        })
    }

    pub fn n_types(&self) -> [usize; 2] {
        let d = self.p.dims();
        [d[0], d[1]]
    }

    pub fn n_actions(&self) -> [usize; 2] {
        let d = self.p.dims();
        [d[2], d[3]]
    }

    pub fn prob(&self, x1: usize, x2: usize, a1: usize, a2: usize) -> f64 {
        self.p.at(x1, x2, a1, a2)
    }

    pub fn flat(&self) -> &[f64] {
        self.p.data()
    }

    pub(crate) fn from_tensor_unchecked(p: Tensor4) -> Self {
        Behavior { p }
    }

    /// P(A1 = A2 | x1, x2) − P(A1 ≠ A2 | x1, x2) for binary-action scenarios.
    pub fn correlator(&self, x1: usize, x2: usize) -> Result<f64> {
        if self.n_actions() != [2, 2] {
            return Err(Error::UnsupportedScenario(format!(
                "correlator requires binary actions, scenario has {:?}",
                self.n_actions()
            )));
        }
        Ok(self.prob(x1, x2, 0, 0) + self.prob(x1, x2, 1, 1)
            - self.prob(x1, x2, 0, 1)
            - self.prob(x1, x2, 1, 0))
    }

    /// Tests the no-signaling condition: each player's marginal must not
    /// depend on the other player's type. Returns the verdict at tolerance
    /// `tol` together with the largest marginal discrepancy found.
    pub fn is_no_signaling(&self, tol: f64) -> NoSignalingCheck {
        let [nt1, nt2] = self.n_types();
        let [na1, na2] = self.n_actions();
        let mut worst = 0.0f64;
        // Player 1's marginal across player 2's types.
        for x1 in 0..nt1 {
            for a1 in 0..na1 {
                let marginal = |x2: usize| -> f64 {
                    (0..na2).map(|a2| self.prob(x1, x2, a1, a2)).sum()
                };
                let reference = marginal(0);
                for x2 in 1..nt2 {
                    worst = worst.max((marginal(x2) - reference).abs());
                }
            }
        }
        // Player 2's marginal across player 1's types.
        for x2 in 0..nt2 {
            for a2 in 0..na2 {
                let marginal = |x1: usize| -> f64 {
                    (0..na1).map(|a1| self.prob(x1, x2, a1, a2)).sum()
                };
                let reference = marginal(0);
                for x1 in 1..nt1 {
                    worst = worst.max((marginal(x1) - reference).abs());
                }
            }
        }
        NoSignalingCheck {
            no_signaling: worst <= tol,
            max_violation: worst,
        }
    }
}

/// Outcome of a no-signaling test.
#[derive(Clone, Copy, Debug)]
pub struct NoSignalingCheck {
    pub no_signaling: bool,
    pub max_violation: f64,
}

/// Average payoffs F_i = Σ μ(X1,X2) P(A1,A2|X1,X2) f_i(X1,X2,A1,A2).
pub fn average_payoffs(game: &Game, behavior: &Behavior) -> Result<PayoffVector> {
    let expected = game.shape_dims();
    let actual = {
        let t = behavior.n_types();
        let a = behavior.n_actions();
        [t[0], t[1], a[0], a[1]]
    };
    if expected != actual {
        return Err(Error::Dimension {
            context: "average_payoffs",
            expected,
            actual,
        });
    }
    let mut f = [0.0f64; 2];
    for x1 in 0..expected[0] {
        for x2 in 0..expected[1] {
            let mu = game.prior(x1, x2);
            if mu == 0.0 {
                continue;
            }
            for a1 in 0..expected[2] {
                for a2 in 0..expected[3] {
                    let p = mu * behavior.prob(x1, x2, a1, a2);
                    f[0] += p * game.payoff(Player::One, x1, x2, a1, a2);
                    f[1] += p * game.payoff(Player::Two, x1, x2, a1, a2);
                }
            }
        }
    }
    Ok(PayoffVector::new(f[0], f[1]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::games;
    use approx::assert_abs_diff_eq;

    #[test]
    fn example1_is_valid() {
        let g = games::example1();
        assert!(g.validate().is_empty());
    }

    #[test]
    fn bad_prior_sum_is_reported() {
        let g = Game::assemble(
            "halved",
            [1, 1],
            [1, 1],
            vec![0.5],
            vec![1.0],
            vec![1.0],
        )
        .unwrap();
        let vs = g.validate();
        assert_eq!(vs.len(), 1);
        assert!(matches!(vs[0], Violation::PriorSum(s) if (s - 0.5).abs() < 1e-15));
    }

    #[test]
    fn bad_payoff_shape_is_reported() {
        let g = Game::assemble(
            "short",
            [2, 2],
            [2, 2],
            vec![0.25; 4],
            vec![1.0; 15],
            vec![1.0; 16],
        )
        .unwrap();
        let vs = g.validate();
        assert_eq!(vs.len(), 1);
        assert!(matches!(
            vs[0],
            Violation::PayoffShape {
                player: 1,
                expected: 16,
                actual: 15
            }
        ));
    }

    #[test]
    fn uniform_behavior_scores_zero_on_example1() {
        let g = games::example1();
        let b = Behavior::uniform([2, 2], [2, 2]);
        let f = average_payoffs(&g, &b).unwrap();
        assert_abs_diff_eq!(f.f1, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(f.f2, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn pr_box_reaches_four_on_example1() {
        let g = games::example1();
        let b = crate::nosignaling::pr_box();
        let f = average_payoffs(&g, &b).unwrap();
        assert_abs_diff_eq!(f.f1, 4.0, epsilon = 1e-12);
        assert_abs_diff_eq!(f.f2, 4.0, epsilon = 1e-12);
    }

    use crate::test_support::tsirelson_behavior;

    #[test]
    fn tsirelson_behavior_scores_two_sqrt_two() {
        let g = games::example1();
        let f = average_payoffs(&g, &tsirelson_behavior()).unwrap();
        assert_abs_diff_eq!(f.f1, 2.0 * 2f64.sqrt(), epsilon = 1e-9);
        assert_abs_diff_eq!(f.f2, 2.0 * 2f64.sqrt(), epsilon = 1e-9);
    }

    #[test]
    fn shape_mismatch_is_a_dimension_error() {
        let g = games::example1();
        let b = Behavior::uniform([2, 2], [3, 2]);
        assert!(matches!(
            average_payoffs(&g, &b),
            Err(Error::Dimension { .. })
        ));
    }

    #[test]
    fn pr_box_is_no_signaling() {
        let check = crate::nosignaling::pr_box().is_no_signaling(tolerances::NO_SIGNALING);
        assert!(check.no_signaling);
        assert_eq!(check.max_violation, 0.0);
    }

    #[test]
    fn type_copying_behavior_signals() {
        // Player 1 outputs player 2's type deterministically; player 2 uniform.
        let mut data = vec![0.0; 16];
        for x1 in 0..2usize {
            for x2 in 0..2usize {
                for a2 in 0..2usize {
                    data[((x1 * 2 + x2) * 2 + x2) * 2 + a2] = 0.5;
                }
            }
        }
        let b = Behavior::new([2, 2], [2, 2], data).unwrap();
        let check = b.is_no_signaling(tolerances::NO_SIGNALING);
        assert!(!check.no_signaling);
        assert_abs_diff_eq!(check.max_violation, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn product_behaviors_never_signal() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        for (n_types, n_actions) in [([2, 2], [2, 2]), ([3, 2], [2, 4]), ([2, 4], [3, 2])] {
            for _ in 0..20 {
                let b = crate::test_support::random_product_behavior(&mut rng, n_types, n_actions);
                assert!(b.is_no_signaling(1e-12).no_signaling);
            }
        }
    }

    #[test]
    fn pr_box_correlators_alternate_sign() {
        let b = crate::nosignaling::pr_box();
        for x1 in 0..2 {
            for x2 in 0..2 {
                let expected = if x1 * x2 == 1 { -1.0 } else { 1.0 };
                assert_abs_diff_eq!(b.correlator(x1, x2).unwrap(), expected, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn uniform_correlator_is_zero() {
        let b = Behavior::uniform([2, 2], [2, 2]);
        assert_abs_diff_eq!(b.correlator(0, 0).unwrap(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn tsirelson_correlator_at_11() {
        let b = tsirelson_behavior();
        assert_abs_diff_eq!(
            b.correlator(1, 1).unwrap(),
            -1.0 / 2f64.sqrt(),
            epsilon = 1e-9
        );
    }

    #[test]
    fn correlator_rejects_non_binary() {
        let b = Behavior::uniform([2, 2], [3, 2]);
        assert!(matches!(
            b.correlator(0, 0),
            Err(Error::UnsupportedScenario(_))
        ));
    }

    #[test]
    fn construction_clamps_tiny_negatives_and_rejects_large() {
        let mut data = vec![0.25; 16];
        data[0] = -0.5e-12;
        data[1] = 0.5 + 0.5e-12;
        let b = Behavior::new([2, 2], [2, 2], data.clone()).unwrap();
        assert_eq!(b.prob(0, 0, 0, 0), 0.0);
        data[0] = -1e-9;
        assert!(matches!(
            Behavior::new([2, 2], [2, 2], data),
            Err(Error::BehaviorNegative { .. })
        ));
    }

    #[test]
    fn payoffs_are_linear_in_the_behavior() {
        let g = games::example2();
        let b1 = crate::nosignaling::pr_box();
        let b2 = Behavior::uniform([2, 2], [2, 2]);
        for &lambda in &[0.0, 0.25, 0.5, 0.9, 1.0] {
            let mixed = b1.mix(&b2, lambda).unwrap();
            let fm = average_payoffs(&g, &mixed).unwrap();
            let fa = average_payoffs(&g, &b1).unwrap();
            let fb = average_payoffs(&g, &b2).unwrap();
            assert_abs_diff_eq!(
                fm.f1,
                lambda * fa.f1 + (1.0 - lambda) * fb.f1,
                epsilon = 1e-9
            );
            assert_abs_diff_eq!(
                fm.f2,
                lambda * fa.f2 + (1.0 - lambda) * fb.f2,
                epsilon = 1e-9
            );
        }
    }
}
