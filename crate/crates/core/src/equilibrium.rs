//! Equilibrium certification under classical, quantum, and no-signaling
//! advice.
//!
//! A candidate profile is an equilibrium when no unilateral deviation within
//! its advice class improves the deviating player's average payoff by more
//! than the tolerance. Deviations are local wirings of the received advice
//! output (all classes), plus arbitrary measurement replacement for the
//! quantum class; these are exactly the operations a player can perform
//! without the advisor's cooperation. Stochastic wirings are convex mixtures
//! of deterministic ones and cannot increase the best gain, so deterministic
//! enumeration is exhaustive.

use crate::bell::payoff_to_bell;
use crate::classical::ClassicalMixture;
use crate::error::{Error, Result};
use crate::game::{average_payoffs, Behavior, Game, PayoffVector, Player};
use crate::quantum::{quantum_behavior, MeasurementChoice, QuantumStrategy};
use crate::tensor::Tensor4;
use crate::tolerances;

/// Advice class a certification ran under.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum AdviceClass {
    Classical,
    Quantum,
    NoSignaling,
}

/// Deterministic post-processing of received advice for one player:
/// `(own type, received output) -> action`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Wiring {
    /// `map[type][received]` is the played action.
    pub map: Vec<Vec<usize>>,
}

impl Wiring {
    fn identity(n_types: usize, n_actions: usize) -> Self {
        Wiring {
            map: (0..n_types).map(|_| (0..n_actions).collect()).collect(),
        }
    }

    fn from_index(mut index: u128, n_types: usize, n_actions: usize) -> Self {
        let mut map = vec![vec![0usize; n_actions]; n_types];
        for row in map.iter_mut() {
            for slot in row.iter_mut() {
                *slot = (index % n_actions as u128) as usize;
                index /= n_actions as u128;
            }
        }
        Wiring { map }
    }
}

/// Best unilateral deviation found for one player.
#[derive(Clone, Debug, serde::Serialize, serde::Deserialize)]
pub enum Deviation {
    /// Advice-output rewiring.
    Wiring(Wiring),
    /// Per-type measurement replacement or constant action.
    Measurements(Vec<MeasurementChoice>),
}

/// Outcome of an equilibrium certification.
#[derive(Clone, Debug, serde::Serialize, serde::Deserialize)]
pub struct EquilibriumReport {
    pub advice_class: AdviceClass,
    pub incumbent: PayoffVector,
    /// Best payoff improvement available to each player by unilateral
    /// deviation; at least 0 up to rounding since staying put is allowed.
    pub gains: [f64; 2],
    pub epsilon: f64,
    pub is_equilibrium: bool,
    pub best_deviations: [Deviation; 2],
}

fn wiring_count(n_types: usize, n_actions: usize) -> Result<u128> {
    let slots = (n_types * n_actions) as u32;
    let count = (n_actions as u128)
        .checked_pow(slots)
        .unwrap_or(u128::MAX);
    if count > tolerances::WIRING_CAP {
        return Err(Error::ResourceLimit {
            what: "deterministic wirings",
            count,
            cap: tolerances::WIRING_CAP,
        });
    }
    Ok(count)
}

/// Behavior after `player` rewires their advice output, the other side and
/// the advice source unchanged.
pub fn apply_wiring(behavior: &Behavior, player: Player, wiring: &Wiring) -> Behavior {
    let [nt1, nt2] = behavior.n_types();
    let [na1, na2] = behavior.n_actions();
    let mut p = Tensor4::zeros([nt1, nt2, na1, na2]);
    for x1 in 0..nt1 {
        for x2 in 0..nt2 {
            for r1 in 0..na1 {
                for r2 in 0..na2 {
                    let prob = behavior.prob(x1, x2, r1, r2);
                    if prob == 0.0 {
                        continue;
                    }
                    let (a1, a2) = match player {
                        Player::One => (wiring.map[x1][r1], r2),
                        Player::Two => (r1, wiring.map[x2][r2]),
                    };
                    *p.at_mut(x1, x2, a1, a2) += prob;
                }
            }
        }
    }
    Behavior::from_tensor_unchecked(p)
}

/// Certifies a behavior as a wiring equilibrium: for each player, the best
/// deterministic rewiring of the advice output must not improve that
/// player's payoff by more than `epsilon`.
pub fn check_wiring_equilibrium(
    game: &Game,
    behavior: &Behavior,
    epsilon: f64,
) -> Result<EquilibriumReport> {
    let incumbent = average_payoffs(game, behavior)?;
    let mut gains = [0.0f64; 2];
    let mut best = [
        Deviation::Wiring(Wiring::identity(game.n_types()[0], game.n_actions()[0])),
        Deviation::Wiring(Wiring::identity(game.n_types()[1], game.n_actions()[1])),
    ];
    for player in [Player::One, Player::Two] {
        let i = player.index();
        let (nt, na) = (game.n_types()[i], game.n_actions()[i]);
        let count = wiring_count(nt, na)?;
        let mut best_gain = f64::NEG_INFINITY;
        for w in 0..count {
            let wiring = Wiring::from_index(w, nt, na);
            let deviated = apply_wiring(behavior, player, &wiring);
            let payoff = average_payoffs(game, &deviated)?;
            let gain = payoff.get(player) - incumbent.get(player);
            if gain > best_gain {
                best_gain = gain;
                best[i] = Deviation::Wiring(wiring);
            }
        }
        gains[i] = best_gain;
    }
    Ok(EquilibriumReport {
        advice_class: AdviceClass::NoSignaling,
        incumbent,
        gains,
        epsilon,
        is_equilibrium: gains[0] <= epsilon && gains[1] <= epsilon,
        best_deviations: best,
    })
}

/// Correlated-equilibrium test for a classical mixture: each player may
/// deterministically remap `(own type, recommended action)` before playing.
pub fn check_classical_equilibrium(
    game: &Game,
    mixture: &ClassicalMixture,
    epsilon: f64,
) -> Result<EquilibriumReport> {
    let behavior = mixture.behavior(game.n_actions());
    let mut report = check_wiring_equilibrium(game, &behavior, epsilon)?;
    report.advice_class = AdviceClass::Classical;
    Ok(report)
}

/// Certifies a quantum strategy profile: the deviating player may replace
/// their per-type measurements (closed-form best response) and additionally
/// rewire the outcome, which for binary outcomes adds the two constant
/// actions per type. Both players' gains must stay within `epsilon`.
pub fn check_quantum_equilibrium(
    game: &Game,
    strategy: &QuantumStrategy,
    epsilon: f64,
) -> Result<EquilibriumReport> {
    if !game.is_binary() {
        return Err(Error::UnsupportedScenario(
            "quantum equilibrium check requires binary actions".to_string(),
        ));
    }
    let behavior = quantum_behavior(strategy);
    let incumbent = average_payoffs(game, &behavior)?;
    let mut gains = [0.0f64; 2];
    let mut best: [Deviation; 2] = [
        Deviation::Measurements(vec![]),
        Deviation::Measurements(vec![]),
    ];
    for player in [Player::One, Player::Two] {
        let i = player.index();
        let expression = payoff_to_bell(game, player);
        let (value, choices) =
            crate::quantum::quantum_best_response_with_wirings(&expression, strategy, player)?;
        gains[i] = value - incumbent.get(player);
        best[i] = Deviation::Measurements(choices);
    }
    Ok(EquilibriumReport {
        advice_class: AdviceClass::Quantum,
        incumbent,
        gains,
        epsilon,
        is_equilibrium: gains[0] <= epsilon && gains[1] <= epsilon,
        best_deviations: best,
    })
}
