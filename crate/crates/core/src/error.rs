//! Error types shared across the library.

use thiserror::Error;

/// A single failed invariant of a [`crate::game::Game`], with enough context
/// to point at the offending entry.
#[derive(Clone, Debug, PartialEq)]
pub enum Violation {
    /// Prior entries do not sum to 1 within tolerance; carries the actual sum.
    PriorSum(f64),
    /// A prior entry is negative; carries the index `[x1, x2]` and the value.
    PriorNegative([usize; 2], f64),
    /// A payoff tensor has the wrong number of entries.
    PayoffShape {
        player: usize,
        expected: usize,
        actual: usize,
    },
    /// A payoff entry is not finite.
    PayoffNotFinite { player: usize, index: [usize; 4] },
    /// A type or action count is zero.
    EmptyDimension(&'static str),
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::PriorSum(s) => write!(f, "prior sums to {s} instead of 1"),
            Violation::PriorNegative(ix, v) => {
                write!(f, "prior entry at ({},{}) is negative: {v}", ix[0], ix[1])
            }
            Violation::PayoffShape {
                player,
                expected,
                actual,
            } => write!(
                f,
                "payoff tensor for player {player} has {actual} entries, expected {expected}"
            ),
            Violation::PayoffNotFinite { player, index } => write!(
                f,
                "payoff for player {player} at ({},{},{},{}) is not finite",
                index[0], index[1], index[2], index[3]
            ),
            Violation::EmptyDimension(what) => write!(f, "{what} count must be positive"),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {context} expected {expected:?}, got {actual:?}")]
    Dimension {
        context: &'static str,
        expected: [usize; 4],
        actual: [usize; 4],
    },

    #[error("unsupported scenario: {0}")]
    UnsupportedScenario(String),

    #[error("resource limit exceeded: {what} requires {count} items, cap is {cap}")]
    ResourceLimit {
        what: &'static str,
        count: u128,
        cap: u128,
    },

    #[error("invalid game: {}", format_violations(.0))]
    InvalidGame(Vec<Violation>),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("behavior is not normalized: block ({x1},{x2}) sums to {sum}")]
    BehaviorNormalization { x1: usize, x2: usize, sum: f64 },

    #[error("behavior entry at ({},{},{},{}) is negative: {value}", index[0], index[1], index[2], index[3])]
    BehaviorNegative { index: [usize; 4], value: f64 },
}

fn format_violations(vs: &[Violation]) -> String {
    vs.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

pub type Result<T> = std::result::Result<T, Error>;
