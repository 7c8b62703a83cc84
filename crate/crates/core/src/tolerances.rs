//! Numeric tolerances used throughout the library.
//!
//! All thresholds sit well above double-precision accumulation error at the
//! problem sizes this crate handles, and are referenced by name rather than
//! repeated as magic numbers at call sites.

/// Prior and mixture weights must sum to 1 within this bound.
pub const WEIGHT_SUM: f64 = 1e-12;

/// Negative probabilities within this bound are clamped to 0 on construction.
pub const PROBABILITY_CLAMP: f64 = 1e-12;

/// Each conditional block of a behavior must sum to 1 within this bound.
pub const BEHAVIOR_NORMALIZATION: f64 = 1e-9;

/// Default tolerance for the no-signaling marginal test.
pub const NO_SIGNALING: f64 = 1e-7;

/// Payoff and bound comparisons across advice classes.
pub const PAYOFF_COMPARISON: f64 = 1e-6;

/// Collinearity threshold for the 2D convex hull and facet membership tests.
pub const HULL_GEOMETRY: f64 = 1e-9;

/// See-saw sweeps stop once a full sweep improves the value by less than this.
pub const SEESAW_IMPROVEMENT: f64 = 1e-10;

/// Bracket width at which the golden-section line search terminates.
pub const GOLDEN_SECTION: f64 = 1e-10;

/// Pivot and reduced-cost threshold for the dense simplex solver.
pub const LP: f64 = 1e-9;

/// Default cap on deterministic strategy-profile enumeration.
pub const PROFILE_CAP: u128 = 10_000_000;

/// Cap on deterministic wiring enumeration per player.
pub const WIRING_CAP: u128 = 1_000_000;

/// Cap on the number of LP variables in the no-signaling maximization.
pub const LP_VARIABLE_CAP: u128 = 100_000;

/// Hard limit on see-saw sweeps per restart.
pub const SEESAW_MAX_SWEEPS: usize = 500;

/// Default number of see-saw restarts.
pub const DEFAULT_RESTARTS: usize = 50;

/// Default deviation tolerance for classical and no-signaling equilibrium checks.
pub const EQUILIBRIUM_EXACT: f64 = 1e-9;

/// Default deviation tolerance for quantum equilibrium checks.
pub const EQUILIBRIUM_QUANTUM: f64 = 1e-6;
