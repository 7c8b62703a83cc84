//! The game file format: line-oriented key/value text, hand-editable so
//! payoff tables can be transcribed directly from a reference.
//!
//! ```text
//! # comment
//! label: my game
//! types: 2 2
//! actions: 2 2
//! prior:
//! 0.25 0.25
//! 0.25 0.25
//! payoff1:
//! <nTypes1 * nTypes2 lines of nActions1 * nActions2 values>
//! payoff2:
//! ...
//! ```
//!
//! `types` and `actions` must precede the numeric blocks so their sizes are
//! known. Numeric blocks accept any whitespace layout; the emitter writes
//! one line per prior row and one line per type-pair payoff block. Decimal
//! points only, no locale-dependent separators.

use crate::error::{Error, Result};
use crate::game::{Game, Player};

struct Cursor<'a> {
    tokens: Vec<(usize, usize, &'a str)>,
    next: usize,
}

fn tokenize(text: &str) -> Vec<(usize, usize, &str)> {
    let mut tokens = Vec::new();
    for (line_idx, raw) in text.lines().enumerate() {
        let line = match raw.find('#') {
            Some(cut) => &raw[..cut],
            None => raw,
        };
        let mut col = 0;
        for piece in line.split_whitespace() {
            let start = line[col..].find(piece).expect("piece came from line") + col;
            tokens.push((line_idx + 1, start + 1, piece));
            col = start + piece.len();
        }
    }
    tokens
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<(usize, usize, &'a str)> {
        self.tokens.get(self.next).copied()
    }

    fn take(&mut self) -> Option<(usize, usize, &'a str)> {
        let t = self.peek();
        if t.is_some() {
            self.next += 1;
        }
        t
    }

    fn error(&self, message: impl Into<String>) -> Error {
        let (line, column) = self
            .peek()
            .map(|(l, c, _)| (l, c))
            .or_else(|| self.tokens.last().map(|&(l, c, t)| (l, c + t.len())))
            .unwrap_or((1, 1));
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    fn expect_count(&mut self, field: &str) -> Result<usize> {
        match self.take() {
            Some((line, column, tok)) => tok.parse::<usize>().map_err(|_| Error::Parse {
                line,
                column,
                message: format!("expected a positive integer for `{field}`, got `{tok}`"),
            }),
            None => Err(self.error(format!("missing value for `{field}`"))),
        }
    }

    fn expect_numbers(&mut self, field: &str, count: usize) -> Result<Vec<f64>> {
        let mut out = Vec::with_capacity(count);
        for _ in 0..count {
            match self.take() {
                Some((line, column, tok)) => {
                    // Reject a following directive sneaking into the block.
                    if tok.ends_with(':') {
                        return Err(Error::Parse {
                            line,
                            column,
                            message: format!(
                                "`{field}` block ended early: expected {count} numbers, found directive `{tok}`"
                            ),
                        });
                    }
                    let v = tok.parse::<f64>().map_err(|_| Error::Parse {
                        line,
                        column,
                        message: format!("expected a number in `{field}`, got `{tok}`"),
                    })?;
                    out.push(v);
                }
                None => {
                    return Err(self.error(format!(
                        "`{field}` block ended early: expected {count} numbers, found {}",
                        out.len()
                    )))
                }
            }
        }
        Ok(out)
    }
}

/// Parses a game document, returning a validated [`Game`].
pub fn parse_game(text: &str) -> Result<Game> {
    let mut cursor = Cursor {
        tokens: tokenize(text),
        next: 0,
    };

    let mut label: Option<String> = None;
    let mut n_types: Option<[usize; 2]> = None;
    let mut n_actions: Option<[usize; 2]> = None;
    let mut prior: Option<Vec<f64>> = None;
    let mut payoff1: Option<Vec<f64>> = None;
    let mut payoff2: Option<Vec<f64>> = None;

    while let Some((line, column, tok)) = cursor.take() {
        match tok {
            "label:" => {
                // The label is the rest of the physical line.
                let mut words = Vec::new();
                while let Some((l, _, w)) = cursor.peek() {
                    if l != line || w.ends_with(':') {
                        break;
                    }
                    words.push(w);
                    cursor.take();
                }
                label = Some(words.join(" "));
            }
            "types:" => {
                let a = cursor.expect_count("types")?;
                let b = cursor.expect_count("types")?;
                n_types = Some([a, b]);
            }
            "actions:" => {
                let a = cursor.expect_count("actions")?;
                let b = cursor.expect_count("actions")?;
                n_actions = Some([a, b]);
            }
            "prior:" => {
                let [t1, t2] = n_types.ok_or(Error::Parse {
                    line,
                    column,
                    message: "`prior` appears before `types`".to_string(),
                })?;
                prior = Some(cursor.expect_numbers("prior", t1 * t2)?);
            }
            "payoff1:" | "payoff2:" => {
                let ([t1, t2], [a1, a2]) = match (n_types, n_actions) {
                    (Some(t), Some(a)) => (t, a),
                    _ => {
                        return Err(Error::Parse {
                            line,
                            column,
                            message: format!("`{tok}` appears before `types`/`actions`"),
                        })
                    }
                };
                let data = cursor.expect_numbers(tok.trim_end_matches(':'), t1 * t2 * a1 * a2)?;
                if tok == "payoff1:" {
                    payoff1 = Some(data);
                } else {
                    payoff2 = Some(data);
                }
            }
            other => {
                return Err(Error::Parse {
                    line,
                    column,
                    message: format!("unknown directive `{other}`"),
                })
            }
        }
    }

    let missing = |field: &str| Error::Parse {
        line: cursor.tokens.last().map_or(1, |t| t.0),
        column: 1,
        message: format!("missing required field `{field}`"),
    };
    let game = Game::assemble(
        label.ok_or_else(|| missing("label"))?,
        n_types.ok_or_else(|| missing("types"))?,
        n_actions.ok_or_else(|| missing("actions"))?,
        prior.ok_or_else(|| missing("prior"))?,
        payoff1.ok_or_else(|| missing("payoff1"))?,
        payoff2.ok_or_else(|| missing("payoff2"))?,
    )?;
    let violations = game.validate();
    if violations.is_empty() {
        Ok(game)
    } else {
        Err(Error::InvalidGame(violations))
    }
}

fn format_number(v: f64) -> String {
    // Shortest representation that round-trips f64 exactly.
    let mut s = format!("{v}");
    if s == "-0" {
        s = "0".to_string();
    }
    s
}

/// Canonical text form of a game; `parse_game(emit_game(g))` reproduces the
/// game content exactly.
pub fn emit_game(game: &Game) -> String {
    let [t1, t2] = game.n_types();
    let [a1, a2] = game.n_actions();
    let mut out = String::new();
    out.push_str(&format!("label: {}\n", game.label()));
    out.push_str(&format!("types: {t1} {t2}\n"));
    out.push_str(&format!("actions: {a1} {a2}\n"));
    out.push_str("prior:\n");
    for x1 in 0..t1 {
        let row: Vec<String> = (0..t2)
            .map(|x2| format_number(game.prior(x1, x2)))
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    for player in [Player::One, Player::Two] {
        out.push_str(match player {
            Player::One => "payoff1:\n",
            Player::Two => "payoff2:\n",
        });
        for x1 in 0..t1 {
            for x2 in 0..t2 {
                let mut row = Vec::with_capacity(a1 * a2);
                for i1 in 0..a1 {
                    for i2 in 0..a2 {
                        row.push(format_number(game.payoff(player, x1, x2, i1, i2)));
                    }
                }
                out.push_str(&row.join(" "));
                out.push('\n');
            }
        }
    }
    out
}
