//! Quantum advice: two-qubit strategies with binary projective measurements,
//! behavior induction via the Born rule, and see-saw maximization of Bell
//! expressions.
//!
//! States are restricted to the Schmidt family cosθ|00⟩ + sinθ|11⟩ (plus the
//! singlet convention for hand-built strategies), which suffices for binary
//! projective correlation scenarios. Outcome +1 of an observable maps to
//! action 0 and −1 to action 1, fixed globally so payoff tables are
//! unambiguous.
//!
//! For the Schmidt state the two-point correlator of observables â·σ and
//! b̂·σ is âᵀ T b̂ with T = diag(sin 2θ, −sin 2θ, 1), and each marginal is
//! cos 2θ times the z-component of the local Bloch vector. For the singlet
//! T = −I with vanishing marginals. Everything the optimizer needs is linear
//! in each Bloch vector and in (sin 2θ, cos 2θ), which is what makes the
//! closed-form see-saw steps and the scalar line search exact.

use crate::bell::BellExpression;
use crate::error::{Error, Result};
use crate::game::{Behavior, Game, PayoffVector};
use crate::tensor::Tensor4;
use crate::{exec, tolerances};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use std::f64::consts::{FRAC_PI_4, PI};

pub type Vec3 = [f64; 3];

fn dot(a: Vec3, b: Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn norm(a: Vec3) -> f64 {
    dot(a, a).sqrt()
}

fn normalize(a: Vec3) -> Option<Vec3> {
    let n = norm(a);
    if n < 1e-14 {
        None
    } else {
        Some([a[0] / n, a[1] / n, a[2] / n])
    }
}

/// Shared two-qubit pure state.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub enum TwoQubitState {
    /// cosθ|00⟩ + sinθ|11⟩ with θ ∈ [0, π/4].
    Schmidt { theta: f64 },
    /// (|01⟩ − |10⟩)/√2.
    Singlet,
}

impl TwoQubitState {
    /// Diagonal of the correlation matrix T.
    fn t_diag(self) -> Vec3 {
        match self {
            TwoQubitState::Schmidt { theta } => {
                let s = (2.0 * theta).sin();
                [s, -s, 1.0]
            }
            TwoQubitState::Singlet => [-1.0, -1.0, -1.0],
        }
    }

    /// Factor multiplying the z-component of a local Bloch vector in the
    /// single-party marginal.
    fn marginal_factor(self) -> f64 {
        match self {
            TwoQubitState::Schmidt { theta } => (2.0 * theta).cos(),
            TwoQubitState::Singlet => 0.0,
        }
    }
}

/// Shared state plus one measurement direction per type and player.
#[derive(Clone, Debug, PartialEq)]
pub struct QuantumStrategy {
    pub state: TwoQubitState,
    pub meas1: Vec<Vec3>,
    pub meas2: Vec<Vec3>,
}

impl QuantumStrategy {
    pub fn new(state: TwoQubitState, meas1: Vec<Vec3>, meas2: Vec<Vec3>) -> Result<Self> {
        if let TwoQubitState::Schmidt { theta } = state {
            if !(0.0..=FRAC_PI_4 + 1e-12).contains(&theta) {
                return Err(Error::Contract(format!(
                    "Schmidt angle {theta} outside [0, pi/4]"
                )));
            }
        }
        for v in meas1.iter().chain(&meas2) {
            if (norm(*v) - 1.0).abs() > 1e-9 {
                return Err(Error::Contract(format!(
                    "Bloch vector {v:?} is not unit length"
                )));
            }
        }
        Ok(QuantumStrategy {
            state,
            meas1,
            meas2,
        })
    }

    pub fn n_types(&self) -> [usize; 2] {
        [self.meas1.len(), self.meas2.len()]
    }

    /// Correlator ⟨(â·σ)(b̂·σ)⟩ for one type pair.
    pub fn correlator(&self, x1: usize, x2: usize) -> f64 {
        let t = self.state.t_diag();
        let a = self.meas1[x1];
        let b = self.meas2[x2];
        t[0] * a[0] * b[0] + t[1] * a[1] * b[1] + t[2] * a[2] * b[2]
    }

    /// Marginal expectation ⟨â·σ⟩ for player 1 (and symmetrically player 2).
    pub fn marginal1(&self, x1: usize) -> f64 {
        self.state.marginal_factor() * self.meas1[x1][2]
    }

    pub fn marginal2(&self, x2: usize) -> f64 {
        self.state.marginal_factor() * self.meas2[x2][2]
    }
}

/// The CHSH-optimal strategy on the singlet: correlators (−1)^{X1 X2}/√2.
pub fn chsh_optimal() -> QuantumStrategy {
    let r = 1.0 / 2f64.sqrt();
    QuantumStrategy::new(
        TwoQubitState::Singlet,
        vec![[0.0, 0.0, 1.0], [1.0, 0.0, 0.0]],
        vec![[-r, 0.0, -r], [r, 0.0, -r]],
    )
    .expect("static construction")
}

/// Born-rule behavior of a strategy: for each type pair the outcome
/// distribution (1 + o1⟨A⟩ + o2⟨B⟩ + o1 o2 ⟨AB⟩)/4 with o = ±1 mapped to
/// actions 0/1.
pub fn quantum_behavior(strategy: &QuantumStrategy) -> Behavior {
    let [nt1, nt2] = strategy.n_types();
    let mut p = Tensor4::zeros([nt1, nt2, 2, 2]);
    for x1 in 0..nt1 {
        for x2 in 0..nt2 {
            let ma = strategy.marginal1(x1);
            let mb = strategy.marginal2(x2);
            let e = strategy.correlator(x1, x2);
            for a1 in 0..2usize {
                for a2 in 0..2usize {
                    let o1 = if a1 == 0 { 1.0 } else { -1.0 };
                    let o2 = if a2 == 0 { 1.0 } else { -1.0 };
                    let prob = (1.0 + o1 * ma + o2 * mb + o1 * o2 * e) / 4.0;
                    // Projective statistics can undershoot zero only by
                    // rounding; clamp like the public constructor would.
                    *p.at_mut(x1, x2, a1, a2) = prob.max(0.0);
                }
            }
        }
    }
    Behavior::from_tensor_unchecked(p)
}

/// Per-block coefficients of a Bell expression in ±1 outcome variables:
/// S = Σ_blocks c0 + c1⟨A⟩ + c2⟨B⟩ + c12⟨AB⟩.
struct OutcomeCoefficients {
    n_types: [usize; 2],
    c0_total: f64,
    c12: Vec<f64>,
    /// Marginal coefficients aggregated per type: row sums of c1 over x2
    /// and column sums of c2 over x1.
    c1_row: Vec<f64>,
    c2_col: Vec<f64>,
}

impl OutcomeCoefficients {
    fn from_expression(e: &BellExpression) -> Result<Self> {
        if e.n_actions() != [2, 2] {
            return Err(Error::UnsupportedScenario(format!(
                "quantum analysis requires binary actions, scenario has {:?}",
                e.n_actions()
            )));
        }
        let [nt1, nt2] = e.n_types();
        let mut c0_total = 0.0;
        let mut c12 = vec![0.0; nt1 * nt2];
        let mut c1_row = vec![0.0; nt1];
        let mut c2_col = vec![0.0; nt2];
        for x1 in 0..nt1 {
            for x2 in 0..nt2 {
                let g = |a1: usize, a2: usize| e.coefficient(x1, x2, a1, a2);
                let (p, q, r, s) = (g(0, 0), g(0, 1), g(1, 0), g(1, 1));
                c0_total += (p + q + r + s) / 4.0;
                c1_row[x1] += (p + q - r - s) / 4.0;
                c2_col[x2] += (p - q + r - s) / 4.0;
                c12[x1 * nt2 + x2] = (p - q - r + s) / 4.0;
            }
        }
        Ok(OutcomeCoefficients {
            n_types: [nt1, nt2],
            c0_total,
            c12,
            c1_row,
            c2_col,
        })
    }

    fn value(&self, s: &QuantumStrategy) -> f64 {
        let [nt1, nt2] = self.n_types;
        let mut total = self.c0_total;
        for x1 in 0..nt1 {
            total += self.c1_row[x1] * s.marginal1(x1);
        }
        for x2 in 0..nt2 {
            total += self.c2_col[x2] * s.marginal2(x2);
        }
        for x1 in 0..nt1 {
            for x2 in 0..nt2 {
                total += self.c12[x1 * nt2 + x2] * s.correlator(x1, x2);
            }
        }
        total
    }

    /// Gradient of S with respect to player 1's Bloch vector for type `x1`;
    /// the optimal measurement is its normalization.
    fn response_vector1(&self, s: &QuantumStrategy, x1: usize) -> Vec3 {
        let [_, nt2] = self.n_types;
        let t = s.state.t_diag();
        let mz = s.state.marginal_factor();
        let mut v = [0.0, 0.0, self.c1_row[x1] * mz];
        for x2 in 0..nt2 {
            let w = self.c12[x1 * nt2 + x2];
            let b = s.meas2[x2];
            v[0] += w * t[0] * b[0];
            v[1] += w * t[1] * b[1];
            v[2] += w * t[2] * b[2];
        }
        v
    }

    fn response_vector2(&self, s: &QuantumStrategy, x2: usize) -> Vec3 {
        let [nt1, nt2] = self.n_types;
        let t = s.state.t_diag();
        let mz = s.state.marginal_factor();
        let mut v = [0.0, 0.0, self.c2_col[x2] * mz];
        for x1 in 0..nt1 {
            let w = self.c12[x1 * nt2 + x2];
            let a = s.meas1[x1];
            v[0] += w * t[0] * a[0];
            v[1] += w * t[1] * a[1];
            v[2] += w * t[2] * a[2];
        }
        v
    }

    /// Decomposes S(θ) = u + v sin 2θ + w cos 2θ for fixed measurements.
    fn theta_profile(&self, s: &QuantumStrategy) -> (f64, f64, f64) {
        let [nt1, nt2] = self.n_types;
        let mut u = self.c0_total;
        let mut v = 0.0;
        let mut w = 0.0;
        for x1 in 0..nt1 {
            w += self.c1_row[x1] * s.meas1[x1][2];
        }
        for x2 in 0..nt2 {
            w += self.c2_col[x2] * s.meas2[x2][2];
        }
        for x1 in 0..nt1 {
            for x2 in 0..nt2 {
                let c = self.c12[x1 * nt2 + x2];
                let a = s.meas1[x1];
                let b = s.meas2[x2];
                v += c * (a[0] * b[0] - a[1] * b[1]);
                u += c * a[2] * b[2];
            }
        }
        (u, v, w)
    }
}

/// Result of a see-saw run: best value over all restarts with the winning
/// strategy, the winning restart's per-sweep trace, and convergence status.
#[derive(Clone, Debug)]
pub struct OptimizationResult {
    pub value: f64,
    pub strategy: QuantumStrategy,
    pub trace: Vec<f64>,
    pub restarts: usize,
    pub converged: bool,
}

fn derive_seed(seed: u64, restart: u64) -> u64 {
    // splitmix64 of (seed + golden-ratio stride), one stream per restart.
    let mut z = seed
        .wrapping_add(restart.wrapping_mul(0x9E37_79B9_7F4A_7C15))
        .wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn random_unit_vector(rng: &mut ChaCha8Rng) -> Vec3 {
    loop {
        let v: Vec3 = [
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
        ];
        if let Some(u) = normalize(v) {
            return u;
        }
    }
}

/// Golden-section maximization of a unimodal function on [lo, hi].
fn golden_section_max(mut lo: f64, mut hi: f64, f: impl Fn(f64) -> f64) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = hi - inv_phi * (hi - lo);
    let mut d = lo + inv_phi * (hi - lo);
    let mut fc = f(c);
    let mut fd = f(d);
    while hi - lo > tolerances::GOLDEN_SECTION {
        if fc > fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi * (hi - lo);
            fd = f(d);
        }
    }
    0.5 * (lo + hi)
}

fn seesaw_single(coeffs: &OutcomeCoefficients, seed: u64) -> (f64, QuantumStrategy, Vec<f64>, bool) {
    let [nt1, nt2] = coeffs.n_types;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let theta = rng.gen_range(0.0..FRAC_PI_4);
    let mut strategy = QuantumStrategy {
        state: TwoQubitState::Schmidt { theta },
        meas1: (0..nt1).map(|_| random_unit_vector(&mut rng)).collect(),
        meas2: (0..nt2).map(|_| random_unit_vector(&mut rng)).collect(),
    };

    let mut trace = Vec::new();
    let mut previous = f64::NEG_INFINITY;
    let mut converged = false;
    for _ in 0..tolerances::SEESAW_MAX_SWEEPS {
        for x1 in 0..nt1 {
            if let Some(u) = normalize(coeffs.response_vector1(&strategy, x1)) {
                strategy.meas1[x1] = u;
            }
        }
        for x2 in 0..nt2 {
            if let Some(u) = normalize(coeffs.response_vector2(&strategy, x2)) {
                strategy.meas2[x2] = u;
            }
        }
        let (u, v, w) = coeffs.theta_profile(&strategy);
        let phi = golden_section_max(0.0, PI / 2.0, |phi| u + v * phi.sin() + w * phi.cos());
        strategy.state = TwoQubitState::Schmidt { theta: phi / 2.0 };

        let value = coeffs.value(&strategy);
        trace.push(value);
        if value - previous < tolerances::SEESAW_IMPROVEMENT && previous.is_finite() {
            converged = true;
            break;
        }
        previous = value;
    }
    let value = *trace.last().expect("at least one sweep");
    (value, strategy, trace, converged)
}

/// Maximizes a Bell expression over two-qubit strategies by alternating
/// closed-form measurement updates with a golden-section line search on the
/// Schmidt angle, restarted from `restarts` random initial points. Restarts
/// run independently (in parallel when enabled) on seeds derived from
/// (`seed`, restart index); exact value ties go to the lower restart index,
/// so the result is reproducible for a fixed seed.
pub fn seesaw_maximize(
    expression: &BellExpression,
    restarts: usize,
    seed: u64,
) -> Result<OptimizationResult> {
    if restarts == 0 {
        return Err(Error::Contract("see-saw needs at least one restart".into()));
    }
    let coeffs = OutcomeCoefficients::from_expression(expression)?;
    let (_, value, (strategy, trace, converged)) = exec::argmax_by_key(restarts, |i| {
        let (value, strategy, trace, converged) = seesaw_single(&coeffs, derive_seed(seed, i as u64));
        (value, (strategy, trace, converged))
    })
    .expect("restarts >= 1");
    Ok(OptimizationResult {
        value,
        strategy,
        trace,
        restarts,
        converged,
    })
}

/// Exact single-player best response: holds the state and the other player's
/// measurements fixed and returns the optimal per-type measurements with the
/// achieved expression value.
pub fn quantum_best_response(
    expression: &BellExpression,
    incumbent: &QuantumStrategy,
    player: crate::game::Player,
) -> Result<(f64, Vec<Vec3>)> {
    let coeffs = OutcomeCoefficients::from_expression(expression)?;
    if coeffs.n_types != incumbent.n_types() {
        return Err(Error::Dimension {
            context: "quantum best response",
            expected: [coeffs.n_types[0], coeffs.n_types[1], 2, 2],
            actual: [incumbent.n_types()[0], incumbent.n_types()[1], 2, 2],
        });
    }
    let mut updated = incumbent.clone();
    match player {
        crate::game::Player::One => {
            for x1 in 0..coeffs.n_types[0] {
                if let Some(u) = normalize(coeffs.response_vector1(incumbent, x1)) {
                    updated.meas1[x1] = u;
                }
            }
        }
        crate::game::Player::Two => {
            for x2 in 0..coeffs.n_types[1] {
                if let Some(u) = normalize(coeffs.response_vector2(incumbent, x2)) {
                    updated.meas2[x2] = u;
                }
            }
        }
    }
    let value = coeffs.value(&updated);
    let meas = match player {
        crate::game::Player::One => updated.meas1,
        crate::game::Player::Two => updated.meas2,
    };
    Ok((value, meas))
}

/// Evaluates a Bell expression on a quantum strategy without materializing
/// the behavior.
pub fn expression_value(expression: &BellExpression, strategy: &QuantumStrategy) -> Result<f64> {
    let coeffs = OutcomeCoefficients::from_expression(expression)?;
    Ok(coeffs.value(strategy))
}

/// Per-type deviation choice for a quantum player: measure along an axis, or
/// ignore the device and play a constant action.
#[derive(Clone, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub enum MeasurementChoice {
    Measure(Vec3),
    Constant(usize),
}

/// Exact best response over measurement replacement combined with arbitrary
/// deterministic output wirings. Flips are absorbed into the measurement
/// axis, so the family reduces per type to the better of the optimal
/// measurement and the two constant actions; the objective separates across
/// types, making the per-type maximization exact.
pub fn quantum_best_response_with_wirings(
    expression: &BellExpression,
    incumbent: &QuantumStrategy,
    player: crate::game::Player,
) -> Result<(f64, Vec<MeasurementChoice>)> {
    let coeffs = OutcomeCoefficients::from_expression(expression)?;
    if coeffs.n_types != incumbent.n_types() {
        return Err(Error::Dimension {
            context: "quantum best response",
            expected: [coeffs.n_types[0], coeffs.n_types[1], 2, 2],
            actual: [incumbent.n_types()[0], incumbent.n_types()[1], 2, 2],
        });
    }
    let [nt1, nt2] = coeffs.n_types;
    let mut total = coeffs.c0_total;
    let mut choices = Vec::new();
    match player {
        crate::game::Player::One => {
            let other_marginals: Vec<f64> = (0..nt2).map(|x2| incumbent.marginal2(x2)).collect();
            for (x2, m) in other_marginals.iter().enumerate() {
                total += coeffs.c2_col[x2] * m;
            }
            for x1 in 0..nt1 {
                let v = coeffs.response_vector1(incumbent, x1);
                let measured = norm(v);
                let linear: f64 = coeffs.c1_row[x1]
                    + (0..nt2)
                        .map(|x2| coeffs.c12[x1 * nt2 + x2] * other_marginals[x2])
                        .sum::<f64>();
                total += append_choice(
                    measured,
                    linear,
                    v,
                    incumbent.meas1[x1],
                    &mut choices,
                );
            }
        }
        crate::game::Player::Two => {
            let other_marginals: Vec<f64> = (0..nt1).map(|x1| incumbent.marginal1(x1)).collect();
            for (x1, m) in other_marginals.iter().enumerate() {
                total += coeffs.c1_row[x1] * m;
            }
            for x2 in 0..nt2 {
                let v = coeffs.response_vector2(incumbent, x2);
                let measured = norm(v);
                let linear: f64 = coeffs.c2_col[x2]
                    + (0..nt1)
                        .map(|x1| coeffs.c12[x1 * nt2 + x2] * other_marginals[x1])
                        .sum::<f64>();
                total += append_choice(
                    measured,
                    linear,
                    v,
                    incumbent.meas2[x2],
                    &mut choices,
                );
            }
        }
    }
    Ok((total, choices))
}

/// Picks measurement vs constant for one type and returns its contribution.
fn append_choice(
    measured: f64,
    linear: f64,
    response: Vec3,
    fallback_axis: Vec3,
    choices: &mut Vec<MeasurementChoice>,
) -> f64 {
    let constant_best = linear.abs();
    if measured >= constant_best {
        let axis = normalize(response).unwrap_or(fallback_axis);
        choices.push(MeasurementChoice::Measure(axis));
        measured
    } else {
        // Outcome +1 maps to action 0.
        let action = if linear >= 0.0 { 0 } else { 1 };
        choices.push(MeasurementChoice::Constant(action));
        constant_best
    }
}

/// Inner approximation of the quantum payoff region boundary: for each of
/// `directions` unit vectors β on the circle, maximizes β·F by see-saw and
/// records the achieved payoff pair.
pub fn quantum_payoff_region_boundary(
    game: &Game,
    directions: usize,
    restarts: usize,
    seed: u64,
) -> Result<Vec<PayoffVector>> {
    if !game.is_binary() {
        return Err(Error::UnsupportedScenario(
            "payoff boundary sweep requires binary actions".to_string(),
        ));
    }
    let points = exec::map_collect(directions, |k| {
        let angle = 2.0 * PI * k as f64 / directions as f64;
        let beta = [angle.cos(), angle.sin()];
        let expression = crate::bell::combine_payoffs(game, beta);
        let result = seesaw_maximize(&expression, restarts, derive_seed(seed, 1_000_000 + k as u64))?;
        crate::game::average_payoffs(game, &quantum_behavior(&result.strategy))
    });
    points.into_iter().collect()
}
