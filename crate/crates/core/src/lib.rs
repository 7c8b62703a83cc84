//! Analysis of two-player Bayesian games as Bell-test scenarios.
//!
//! A Bayesian game's average payoff is a Bell expression with coefficients
//! μ·f, so the advice available to the players (shared classical randomness,
//! entangled quantum states, or general no-signaling boxes) bounds the
//! reachable payoffs exactly the way physical resources bound Bell-test
//! correlations. This crate computes those bounds and certifies equilibrium
//! points:
//!
//! - `game`: games, behaviors P(A1,A2|X1,X2), payoff evaluation, the
//!   no-signaling test.
//! - `bell`: payoff ↔ Bell-expression conversion and evaluation.
//! - `classical`: deterministic strategy enumeration, exact local bounds,
//!   and the classical payoff polytope with facets.
//! - `quantum`: two-qubit strategies, see-saw maximization with random
//!   restarts, best responses, and payoff-region boundary sweeps.
//! - `nosignaling`: the PR box and simplex LP maximization over the
//!   no-signaling polytope.
//! - `equilibrium`: unilateral-deviation certification per advice class.
//! - `format` / `report`: the game file grammar, bundled examples, analysis
//!   orchestration, and CSV/JSON emission.
//!
//! Enumeration, restarts, and boundary sweeps run data-parallel under the
//! `parallel` feature (enabled by default) with a sequential fallback that
//! produces bit-identical results.

pub mod bell;
pub mod classical;
pub mod equilibrium;
pub mod error;
mod exec;
pub mod format;
pub mod game;
pub mod games;
pub mod nosignaling;
pub mod quantum;
pub mod report;
mod simplex;
mod tensor;
#[cfg(test)]
mod test_support;
pub mod tolerances;

pub use bell::{chsh_expression, combine_payoffs, payoff_to_bell, BellExpression, FacetInequality};
pub use classical::{
    classical_payoff_polytope, enumerate_deterministic, local_bound, ClassicalMixture,
    DeterministicStrategy, PayoffPolytope,
};
pub use equilibrium::{
    check_classical_equilibrium, check_quantum_equilibrium, check_wiring_equilibrium, AdviceClass,
    EquilibriumReport,
};
pub use error::{Error, Result, Violation};
pub use game::{average_payoffs, Behavior, Game, NoSignalingCheck, PayoffVector, Player};
pub use nosignaling::{ns_maximize, ns_payoff_point, pr_box, NsConstraintSystem};
pub use quantum::{
    chsh_optimal, quantum_behavior, quantum_best_response, quantum_payoff_region_boundary,
    seesaw_maximize, OptimizationResult, QuantumStrategy, TwoQubitState,
};
pub use report::{emit_plot_data, run_analysis, AnalysisOptions, AnalysisReport};
