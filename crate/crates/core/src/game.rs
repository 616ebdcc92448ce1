//! The counter-strip game.
//!
//! Counters sit on a strip of seven cells, at most one per cell and evenly
//! many in total, so there are 64 legal positions. A move either slides a
//! counter to an empty cell strictly to its left or removes any two
//! counters; whoever removes the last two counters wins. Positions are the
//! weights of a 64-dimensional half-spin representation: a position maps to
//! the Ψ-root with minus half-coordinates exactly at the occupied cells,
//! every legal move adds a positive rank-7 root, and the empty strip is the
//! highest weight.
//!
//! The kernel (the set of positions in which the player who has just moved
//! wins) is solved retrogradely and coincides with the orthogonal 8-set of
//! the minimal packing; playing onto a kernel root whose reflection sends
//! the current weight negative is a winning strategy.

use std::fmt;
use std::io::{BufRead, Write};

use serde::Serialize;
use thiserror::Error;

use crate::e8::RootSystem;

/// A game position: bit `i-1` set means a counter occupies cell `i`.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct GamePos(pub u8);

/// The opening position: six counters filling the strip from the right.
/// It is the one legal position no move can produce.
pub const START: GamePos = GamePos(0b111_1110);

/// The eight kernel positions in figure order (top to bottom), ending with
/// the empty strip.
pub const FIGURE_KERNEL: [GamePos; 8] = [
    GamePos(0b011_1100), // 3 4 5 6
    GamePos(0b101_1010), // 2 4 5 7
    GamePos(0b110_0110), // 2 3 6 7
    GamePos(0b110_1001), // 1 4 6 7
    GamePos(0b101_0101), // 1 3 5 7
    GamePos(0b011_0011), // 1 2 5 6
    GamePos(0b000_1111), // 1 2 3 4
    GamePos(0b000_0000),
];

impl GamePos {
    pub fn from_cells(cells: &[u8]) -> GamePos {
        let mut m = 0;
        for &c in cells {
            assert!((1..=7).contains(&c));
            m |= 1 << (c - 1);
        }
        GamePos(m)
    }

    pub fn cells(self) -> Vec<u8> {
        (1..=7).filter(|&c| self.occupied(c)).collect()
    }

    pub fn occupied(self, cell: u8) -> bool {
        self.0 >> (cell - 1) & 1 == 1
    }

    pub fn count(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_legal(self) -> bool {
        self.0 < 128 && self.count() % 2 == 0
    }
}

impl fmt::Display for GamePos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in 1..=7 {
            write!(f, "[{}]", if self.occupied(c) { "o" } else { " " })?;
        }
        Ok(())
    }
}

#[derive(Copy, Clone, PartialEq, Eq, Debug, Serialize)]
pub enum GameMove {
    /// Move the counter at `from` to the empty cell `to`, with `to < from`.
    Slide { from: u8, to: u8 },
    /// Remove the two counters at `a < b`.
    Take { a: u8, b: u8 },
}

impl fmt::Display for GameMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GameMove::Slide { from, to } => write!(f, "slide {from}->{to}"),
            GameMove::Take { a, b } => write!(f, "take {a} {b}"),
        }
    }
}

impl std::str::FromStr for GameMove {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let cleaned = s.trim().to_lowercase().replace("->", " ");
        let mut parts = cleaned.split_whitespace();
        let verb = parts.next().ok_or("empty move")?;
        let nums: Vec<u8> = parts
            .map(|p| {
                p.parse::<u8>()
                    .ok()
                    .filter(|&v| (1..=7).contains(&v))
                    .ok_or_else(|| format!("bad cell {p:?}"))
            })
            .collect::<Result<_, _>>()?;
        match (verb, nums.as_slice()) {
            ("slide", [from, to]) => Ok(GameMove::Slide {
                from: *from,
                to: *to,
            }),
            ("take", [a, b]) if a != b => Ok(GameMove::Take {
                a: *a.min(b),
                b: *a.max(b),
            }),
            _ => Err(format!(
                "cannot parse move {s:?} (try 'slide 5->2' or 'take 3 6')"
            )),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GameError {
    #[error("illegal move: {0}")]
    Illegal(String),
    #[error("no winning move exists from this position")]
    NoWinningMove,
}

/// Every legal move from a position: removals first, then slides, in cell
/// order.
pub fn legal_moves(pos: GamePos) -> Vec<GameMove> {
    let mut out = Vec::new();
    let cells = pos.cells();
    for (i, &a) in cells.iter().enumerate() {
        for &b in &cells[i + 1..] {
            out.push(GameMove::Take { a, b });
        }
    }
    for &from in &cells {
        for to in 1..from {
            if !pos.occupied(to) {
                out.push(GameMove::Slide { from, to });
            }
        }
    }
    out
}

pub fn apply(pos: GamePos, mv: GameMove) -> Result<GamePos, GameError> {
    match mv {
        GameMove::Slide { from, to } => {
            if !(1..=7).contains(&from) || !(1..=7).contains(&to) {
                return Err(GameError::Illegal("cell out of range".into()));
            }
            if to >= from {
                return Err(GameError::Illegal(format!(
                    "slides go strictly left, {to} is not left of {from}"
                )));
            }
            if !pos.occupied(from) {
                return Err(GameError::Illegal(format!("cell {from} is empty")));
            }
            if pos.occupied(to) {
                return Err(GameError::Illegal(format!("cell {to} is occupied")));
            }
            Ok(GamePos(pos.0 ^ (1 << (from - 1)) ^ (1 << (to - 1))))
        }
        GameMove::Take { a, b } => {
            if a == b || !(1..=7).contains(&a) || !(1..=7).contains(&b) {
                return Err(GameError::Illegal("take needs two distinct cells".into()));
            }
            if !pos.occupied(a) || !pos.occupied(b) {
                return Err(GameError::Illegal(format!(
                    "cells {a} and {b} must both be occupied"
                )));
            }
            Ok(GamePos(pos.0 ^ (1 << (a - 1)) ^ (1 << (b - 1))))
        }
    }
}

/// Win/loss value of a position under optimal play.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Outcome {
    /// The player who has just moved wins (no escape for the mover).
    PreviousWins,
    /// The player to move wins.
    NextWins,
}

/// Retrograde solution over the 64 legal positions, indexed by mask.
pub fn solve() -> Vec<Option<Outcome>> {
    let mut table: Vec<Option<Outcome>> = vec![None; 128];
    // Every move decreases (count, cell sum), so that order is a valid
    // evaluation order.
    let mut order: Vec<u8> = (0u8..128).filter(|m| GamePos(*m).is_legal()).collect();
    order.sort_unstable_by_key(|&m| {
        (
            m.count_ones(),
            GamePos(m).cells().iter().map(|&c| c as u32).sum::<u32>(),
        )
    });
    for mask in order {
        let pos = GamePos(mask);
        let mut winning = false;
        for mv in legal_moves(pos) {
            let next = apply(pos, mv).unwrap();
            if table[next.0 as usize] == Some(Outcome::PreviousWins) {
                winning = true;
                break;
            }
        }
        table[mask as usize] = Some(if winning {
            Outcome::NextWins
        } else {
            Outcome::PreviousWins
        });
    }
    table
}

/// The kernel: all positions where the previous player wins.
pub fn kernel(table: &[Option<Outcome>]) -> Vec<GamePos> {
    (0u8..128)
        .filter(|&m| table[m as usize] == Some(Outcome::PreviousWins))
        .map(GamePos)
        .collect()
}

/// The Ψ-root of a position: minus half-coordinates at the occupied cells,
/// plus everywhere else.
pub fn pos_root(rs: &RootSystem, pos: GamePos) -> usize {
    let mut d2 = [1i32; 8];
    for c in 1..=7u8 {
        if pos.occupied(c) {
            d2[c as usize - 1] = -1;
        }
    }
    rs.id_of(&d2).expect("half-spin weights are roots")
}

/// Inverse of [`pos_root`] on Ψ.
pub fn root_pos(rs: &RootSystem, root: usize) -> Option<GamePos> {
    let r = &rs.roots[root];
    if r.coeffs[0] != 1 {
        return None;
    }
    let mut mask = 0u8;
    for c in 0..7 {
        if r.d2[c] < 0 {
            mask |= 1 << c;
        }
    }
    Some(GamePos(mask))
}

/// The root-order effect of a move: the difference of the two weights.
/// For every legal move this is a positive root of the rank-7 subsystem
/// (integer coordinates supported on the first seven cells).
pub fn move_delta_is_positive_rank7_root(rs: &RootSystem, pos: GamePos, mv: GameMove) -> bool {
    let after = match apply(pos, mv) {
        Ok(a) => a,
        Err(_) => return false,
    };
    let before = rs.roots[pos_root(rs, pos)].d2;
    let target = rs.roots[pos_root(rs, after)].d2;
    let mut delta = [0i32; 8];
    for k in 0..8 {
        delta[k] = target[k] - before[k];
    }
    match rs.id_of(&delta) {
        None => false,
        Some(id) => rs.is_positive(id) && delta[7] == 0 && delta.iter().all(|&x| x % 2 == 0),
    }
}

/// The winning move from a non-kernel position: play onto a kernel root
/// whose reflection sends the current weight negative.
pub fn strategy_move(
    rs: &RootSystem,
    kernel_roots: &[usize; 8],
    pos: GamePos,
) -> Result<GameMove, GameError> {
    let gamma = pos_root(rs, pos);
    for mv in legal_moves(pos) {
        let after = apply(pos, mv).unwrap();
        let beta = pos_root(rs, after);
        if kernel_roots.contains(&beta) && !rs.is_positive(rs.reflect(beta, gamma)) {
            return Ok(mv);
        }
    }
    Err(GameError::NoWinningMove)
}

/// Engine policy: the winning move when one exists, otherwise the move
/// leaving the most counters on the strip. Returns `None` only when the
/// game is over.
pub fn engine_move(rs: &RootSystem, kernel_roots: &[usize; 8], pos: GamePos) -> Option<GameMove> {
    if let Ok(mv) = strategy_move(rs, kernel_roots, pos) {
        return Some(mv);
    }
    legal_moves(pos)
        .into_iter()
        .max_by_key(|&mv| apply(pos, mv).unwrap().count())
}

#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Mover {
    Human,
    Engine,
}

impl Mover {
    pub fn name(self) -> &'static str {
        match self {
            Mover::Human => "human",
            Mover::Engine => "engine",
        }
    }

    fn other(self) -> Mover {
        match self {
            Mover::Human => Mover::Engine,
            Mover::Engine => Mover::Human,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TranscriptEntry {
    pub player: String,
    pub position: String,
    pub mv: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Transcript {
    pub moves: Vec<TranscriptEntry>,
    pub winner: String,
}

/// Interactive session on the given streams. The human's moves are parsed
/// and validated with re-prompts; the engine replies with the strategy
/// move. The winner is whoever removes the last two counters.
pub fn play<R: BufRead, W: Write>(
    first: Mover,
    mut input: R,
    out: &mut W,
    rs: &RootSystem,
    kernel_roots: &[usize; 8],
) -> std::io::Result<Transcript> {
    let mut pos = START;
    let mut turn = first;
    let mut transcript = Transcript {
        moves: Vec::new(),
        winner: String::new(),
    };
    writeln!(out, "counter strip; cells 1..7, leftmost first")?;
    loop {
        writeln!(out, "  1  2  3  4  5  6  7")?;
        writeln!(out, " {pos}")?;
        if legal_moves(pos).is_empty() {
            let winner = turn.other();
            transcript.winner = winner.name().to_string();
            writeln!(out, "no moves remain; the winner is the {}", winner.name())?;
            return Ok(transcript);
        }
        let mv = match turn {
            Mover::Engine => {
                let mv = engine_move(rs, kernel_roots, pos).expect("moves exist");
                writeln!(out, "engine plays: {mv}")?;
                mv
            }
            Mover::Human => loop {
                write!(out, "your move (slide p->q | take a b): ")?;
                out.flush()?;
                let mut line = String::new();
                if input.read_line(&mut line)? == 0 {
                    writeln!(out, "input closed; resigning for the human")?;
                    transcript.winner = Mover::Engine.name().to_string();
                    return Ok(transcript);
                }
                match line.parse::<GameMove>() {
                    Ok(mv) => match apply(pos, mv) {
                        Ok(_) => break mv,
                        Err(e) => writeln!(out, "{e}")?,
                    },
                    Err(e) => writeln!(out, "{e}")?,
                }
            },
        };
        transcript.moves.push(TranscriptEntry {
            player: turn.name().to_string(),
            position: pos
                .cells()
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(""),
            mv: mv.to_string(),
        });
        pos = apply(pos, mv).expect("validated move");
        turn = turn.other();
    }
}
