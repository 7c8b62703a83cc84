//! Bundled example games, compiled in from `games/*.game`.

use crate::game::Game;

pub const EXAMPLE1_TEXT: &str = include_str!("../games/example1.game");
pub const EXAMPLE2_TEXT: &str = include_str!("../games/example2.game");
pub const EXAMPLE3_TEXT: &str = include_str!("../games/example3.game");

/// Symmetric CHSH game (classical 2, quantum 2√2, no-signaling 4).
pub fn example1() -> Game {
    crate::format::parse_game(EXAMPLE1_TEXT).expect("bundled example1 is valid")
}

/// Asymmetric CHSH variant with the square classical payoff polytope.
pub fn example2() -> Game {
    crate::format::parse_game(EXAMPLE2_TEXT).expect("bundled example2 is valid")
}

/// Two-company land-bidding game (classical 3/2, quantum ≈ 1.5365).
pub fn example3() -> Game {
    crate::format::parse_game(EXAMPLE3_TEXT).expect("bundled example3 is valid")
}

/// Looks up a bundled game by name.
pub fn bundled(name: &str) -> Option<&'static str> {
    match name {
        "example1" => Some(EXAMPLE1_TEXT),
        "example2" => Some(EXAMPLE2_TEXT),
        "example3" => Some(EXAMPLE3_TEXT),
        _ => None,
    }
}
