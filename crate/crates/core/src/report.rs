//! Analysis orchestration and machine-readable reports.
//!
//! `run_analysis` executes the classical, quantum, and no-signaling analyses
//! plus any requested equilibrium certifications, deterministically for a
//! fixed (game, options, seed) triple. Reports serialize to JSON with a
//! stable field order, so identical runs are byte-identical; plot data is
//! emitted as CSV at 17 significant digits.

use crate::bell::{combine_payoffs, payoff_to_bell};
use crate::classical::{
    classical_payoff_polytope, local_bound, ClassicalMixture, DeterministicStrategy,
    PayoffPolytope,
};
use crate::equilibrium::{
    check_quantum_equilibrium, check_wiring_equilibrium, EquilibriumReport,
};
use crate::error::Result;
use crate::game::{average_payoffs, Game, PayoffVector, Player};
use crate::nosignaling::{ns_maximize, pr_box};
use crate::quantum::{
    chsh_optimal, quantum_behavior, quantum_payoff_region_boundary, seesaw_maximize,
    QuantumStrategy, TwoQubitState,
};
use crate::tolerances;
use serde::{Deserialize, Serialize};

/// Candidate profiles the equilibrium checker knows how to construct.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EquilibriumCandidate {
    /// PR box under wiring deviations.
    PrBox,
    /// Canonical CHSH-optimal singlet strategy under quantum deviations.
    ChshOptimal,
    /// Best see-saw strategy for player 1's payoff under quantum deviations.
    BestQuantum,
    /// Best deterministic profile for player 1's payoff under classical
    /// deviations.
    BestClassical,
}

/// Knobs for a full analysis run.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AnalysisOptions {
    pub seed: u64,
    pub restarts: usize,
    /// Direction count for the quantum boundary sweep (0 skips the sweep).
    pub directions: usize,
    /// Payoff combinations to bound in addition to the per-player payoffs.
    pub betas: Vec<[f64; 2]>,
    pub equilibrium_candidates: Vec<EquilibriumCandidate>,
    pub epsilon_quantum: f64,
    pub epsilon_wiring: f64,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            seed: 0,
            restarts: tolerances::DEFAULT_RESTARTS,
            directions: 32,
            betas: vec![[1.0, 1.0]],
            equilibrium_candidates: vec![
                EquilibriumCandidate::PrBox,
                EquilibriumCandidate::BestQuantum,
            ],
            epsilon_quantum: tolerances::EQUILIBRIUM_QUANTUM,
            epsilon_wiring: tolerances::EQUILIBRIUM_EXACT,
        }
    }
}

/// A quantum strategy as angle lists: the Schmidt angle plus per-type
/// (polar, azimuthal) pairs for each player's Bloch vectors.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StrategyAngles {
    pub singlet: bool,
    pub schmidt_theta: f64,
    pub meas1: Vec<[f64; 2]>,
    pub meas2: Vec<[f64; 2]>,
}

impl StrategyAngles {
    pub fn from_strategy(s: &QuantumStrategy) -> Self {
        let spherical = |v: &[f64; 3]| -> [f64; 2] { [v[2].clamp(-1.0, 1.0).acos(), v[1].atan2(v[0])] };
        let (singlet, schmidt_theta) = match s.state {
            TwoQubitState::Singlet => (true, std::f64::consts::FRAC_PI_4),
            TwoQubitState::Schmidt { theta } => (false, theta),
        };
        StrategyAngles {
            singlet,
            schmidt_theta,
            meas1: s.meas1.iter().map(spherical).collect(),
            meas2: s.meas2.iter().map(spherical).collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LocalBoundEntry {
    pub target: BoundTarget,
    pub bound: f64,
    pub witness: DeterministicStrategy,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub enum BoundTarget {
    Payoff(Player),
    Combination([f64; 2]),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QuantumEntry {
    pub target: BoundTarget,
    pub value: f64,
    pub converged: bool,
    pub restarts: usize,
    pub strategy: StrategyAngles,
    /// Payoff pair realized by the maximizing strategy.
    pub payoffs: PayoffVector,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NoSignalingEntry {
    pub target: BoundTarget,
    pub value: f64,
    /// Flattened optimal behavior, row-major.
    pub behavior: Vec<f64>,
    pub payoffs: PayoffVector,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpecialPoint {
    pub label: String,
    pub point: PayoffVector,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NamedEquilibrium {
    pub candidate: EquilibriumCandidate,
    pub report: EquilibriumReport,
}

/// Full machine-readable analysis result.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub tool_version: String,
    pub game_label: String,
    pub seed: u64,
    pub options: AnalysisOptions,
    pub local_bounds: Vec<LocalBoundEntry>,
    pub polytope: PayoffPolytope,
    pub quantum: Vec<QuantumEntry>,
    pub quantum_boundary: Vec<PayoffVector>,
    pub no_signaling: Vec<NoSignalingEntry>,
    pub special_points: Vec<SpecialPoint>,
    pub equilibria: Vec<NamedEquilibrium>,
    /// Analyses skipped for this scenario (e.g. quantum steps on non-binary
    /// games), never silently dropped.
    pub skipped: Vec<String>,
}

fn bound_targets(options: &AnalysisOptions) -> Vec<BoundTarget> {
    let mut targets = vec![BoundTarget::Payoff(Player::One), BoundTarget::Payoff(Player::Two)];
    targets.extend(options.betas.iter().map(|&b| BoundTarget::Combination(b)));
    targets
}

fn expression_for(game: &Game, target: &BoundTarget) -> crate::bell::BellExpression {
    match target {
        BoundTarget::Payoff(p) => payoff_to_bell(game, *p),
        BoundTarget::Combination(beta) => combine_payoffs(game, *beta),
    }
}

/// Runs every analysis stage on the game. Deterministic for fixed inputs.
pub fn run_analysis(game: &Game, options: &AnalysisOptions) -> Result<AnalysisReport> {
    let mut skipped = Vec::new();

    let mut local_bounds = Vec::new();
    for target in bound_targets(options) {
        let e = expression_for(game, &target);
        let (bound, witness) = local_bound(&e)?;
        local_bounds.push(LocalBoundEntry {
            target,
            bound,
            witness,
        });
    }

    let polytope = classical_payoff_polytope(game)?;

    let mut quantum = Vec::new();
    let mut quantum_boundary = Vec::new();
    if game.is_binary() {
        for (i, target) in bound_targets(options).into_iter().enumerate() {
            let e = expression_for(game, &target);
            let result = seesaw_maximize(&e, options.restarts, options.seed.wrapping_add(i as u64))?;
            let payoffs = average_payoffs(game, &quantum_behavior(&result.strategy))?;
            quantum.push(QuantumEntry {
                target,
                value: result.value,
                converged: result.converged,
                restarts: result.restarts,
                strategy: StrategyAngles::from_strategy(&result.strategy),
                payoffs,
            });
        }
        if options.directions > 0 {
            quantum_boundary =
                quantum_payoff_region_boundary(game, options.directions, options.restarts, options.seed)?;
        }
    } else {
        skipped.push("quantum analysis (non-binary actions)".to_string());
    }

    let mut no_signaling = Vec::new();
    for target in bound_targets(options) {
        let e = expression_for(game, &target);
        let (value, behavior) = ns_maximize(&e)?;
        let payoffs = average_payoffs(game, &behavior)?;
        no_signaling.push(NoSignalingEntry {
            target,
            value,
            behavior: behavior.flat().to_vec(),
            payoffs,
        });
    }

    let special_points = special_points(&polytope, &quantum, &no_signaling);

    let mut equilibria = Vec::new();
    for &candidate in &options.equilibrium_candidates {
        match candidate {
            EquilibriumCandidate::PrBox => {
                if game.n_types() == [2, 2] && game.is_binary() {
                    let report = check_wiring_equilibrium(game, &pr_box(), options.epsilon_wiring)?;
                    equilibria.push(NamedEquilibrium { candidate, report });
                } else {
                    skipped.push("pr-box equilibrium (scenario is not 2x2x2x2)".to_string());
                }
            }
            EquilibriumCandidate::ChshOptimal => {
                if game.n_types() == [2, 2] && game.is_binary() {
                    let report =
                        check_quantum_equilibrium(game, &chsh_optimal(), options.epsilon_quantum)?;
                    equilibria.push(NamedEquilibrium { candidate, report });
                } else {
                    skipped.push("chsh-optimal equilibrium (scenario is not 2x2x2x2)".to_string());
                }
            }
            EquilibriumCandidate::BestQuantum => {
                if game.is_binary() {
                    let e = payoff_to_bell(game, Player::One);
                    let best = seesaw_maximize(&e, options.restarts, options.seed)?;
                    let report =
                        check_quantum_equilibrium(game, &best.strategy, options.epsilon_quantum)?;
                    equilibria.push(NamedEquilibrium { candidate, report });
                } else {
                    skipped.push("best-quantum equilibrium (non-binary actions)".to_string());
                }
            }
            EquilibriumCandidate::BestClassical => {
                let e = payoff_to_bell(game, Player::One);
                let (_, witness) = local_bound(&e)?;
                let mixture = ClassicalMixture::point(witness);
                let report = crate::equilibrium::check_classical_equilibrium(
                    game,
                    &mixture,
                    options.epsilon_wiring,
                )?;
                equilibria.push(NamedEquilibrium { candidate, report });
            }
        }
    }

    Ok(AnalysisReport {
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        game_label: game.label().to_string(),
        seed: options.seed,
        options: options.clone(),
        local_bounds,
        polytope,
        quantum,
        quantum_boundary,
        no_signaling,
        special_points,
        equilibria,
        skipped,
    })
}

/// Named payoff points per advice class, all for the symmetric-welfare
/// direction β = (1, 1): the best classical hull vertex, the best see-saw
/// point, and the LP maximizer's payoff pair.
fn special_points(
    polytope: &PayoffPolytope,
    quantum: &[QuantumEntry],
    no_signaling: &[NoSignalingEntry],
) -> Vec<SpecialPoint> {
    let mut out = Vec::new();
    if let Some(best) = polytope
        .vertices
        .iter()
        .max_by(|a, b| (a.f1 + a.f2).partial_cmp(&(b.f1 + b.f2)).unwrap())
    {
        out.push(SpecialPoint {
            label: "classical".to_string(),
            point: *best,
        });
    }
    let welfare = |entries: &[QuantumEntry]| -> Option<PayoffVector> {
        entries
            .iter()
            .find(|e| matches!(e.target, BoundTarget::Combination(b) if b == [1.0, 1.0]))
            .map(|e| e.payoffs)
    };
    if let Some(point) = welfare(quantum) {
        out.push(SpecialPoint {
            label: "quantum".to_string(),
            point,
        });
    }
    if let Some(entry) = no_signaling
        .iter()
        .find(|e| matches!(e.target, BoundTarget::Combination(b) if b == [1.0, 1.0]))
    {
        out.push(SpecialPoint {
            label: "no-signaling".to_string(),
            point: entry.payoffs,
        });
    }
    out
}

/// Serializes a report to its canonical JSON form (byte-identical for
/// identical inputs).
pub fn report_to_json(report: &AnalysisReport) -> String {
    serde_json::to_string_pretty(report).expect("report serializes")
}

pub fn report_from_json(text: &str) -> Result<AnalysisReport> {
    serde_json::from_str(text).map_err(|e| crate::error::Error::Contract(format!(
        "report deserialization failed: {e}"
    )))
}

/// CSV tables regenerating the payoff-space picture: classical hull
/// vertices, quantum boundary samples, and named special points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlotData {
    pub hull: String,
    pub quantum_boundary: String,
    pub special_points: String,
}

fn sig17(v: f64) -> String {
    format!("{v:.16e}")
}

/// Emits the plot tables for a report; absent sections yield header-only
/// tables.
pub fn emit_plot_data(report: &AnalysisReport) -> PlotData {
    let mut hull = String::from("f1,f2\n");
    for v in &report.polytope.vertices {
        hull.push_str(&format!("{},{}\n", sig17(v.f1), sig17(v.f2)));
    }
    let mut boundary = String::from("f1,f2\n");
    for v in &report.quantum_boundary {
        boundary.push_str(&format!("{},{}\n", sig17(v.f1), sig17(v.f2)));
    }
    let mut special = String::from("label,f1,f2\n");
    for s in &report.special_points {
        special.push_str(&format!(
            "{},{},{}\n",
            s.label,
            sig17(s.point.f1),
            sig17(s.point.f2)
        ));
    }
    PlotData {
        hull,
        quantum_boundary: boundary,
        special_points: special,
    }
}
