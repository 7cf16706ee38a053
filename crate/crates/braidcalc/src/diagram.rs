//! Oriented link diagrams in Morse position: a top-to-bottom sequence of
//! cup (opens two adjacent strands), cap (closes two), and crossing events.
//!
//! Columns are 1-based positions among the strands alive at each level. The
//! crossing sign convention, fixed once for the whole crate: `x+` means the
//! strand entering at the upper-left passes over (ending lower-right); with
//! both strands oriented downward this is the positive braid generator and
//! contributes +1 to the writhe.
//!
//! ```text
//!   x+ :  \ /     x- :  \ /
//!          \            /
//!         / \          / \
//!   (over strand: upper-left -> lower-right | upper-right -> lower-left)
//! ```

use crate::braid::Sign;
use crate::laurent::LaurentPoly;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

/// One horizontal stripe of the diagram.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Event {
    Cup { col: usize },
    Cap { col: usize },
    Cross { col: usize, sign: Sign },
}

impl Event {
    pub fn col(&self) -> usize {
        match *self {
            Event::Cup { col } | Event::Cap { col } | Event::Cross { col, .. } => col,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum DiagramError {
    #[error("event {index}: width would go negative")]
    NegativeWidth { index: usize },
    #[error("event {index}: column {col} out of range (width {width})")]
    ColumnOutOfRange { index: usize, col: usize, width: usize },
    #[error("final width is {width}, expected 0")]
    NonzeroFinalWidth { width: usize },
    #[error("diagram has no events")]
    Empty,
    #[error("crossing count {count} exceeds the state-sum cap {cap}")]
    CrossingCapExceeded { count: usize, cap: usize },
    #[error("event {index}: {expected} template does not match")]
    PatternMismatch { index: usize, expected: &'static str },
    #[error("crossing {index} already has both passes directed downward")]
    AllDown { index: usize },
    #[error("event {index} is not a crossing")]
    NotACrossing { index: usize },
}

/// Default cap on the number of crossings in the 2^c state sum.
pub const BRACKET_CROSSING_CAP: usize = 16;

/// Link diagram in general position as an event sequence.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MorseDiagram {
    events: Vec<Event>,
}

/// Travel direction along a strand segment.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Dir {
    Down,
    Up,
}

impl Dir {
    pub fn flip(self) -> Dir {
        match self {
            Dir::Down => Dir::Up,
            Dir::Up => Dir::Down,
        }
    }

    fn as_i64(self) -> i64 {
        match self {
            Dir::Down => 1,
            Dir::Up => -1,
        }
    }
}

/// Per-component direction assignment, tabulated per strand segment. The
/// cell (gap, col) is the segment crossing the horizontal level between
/// events gap-1 and gap at column col.
#[derive(Clone, Debug)]
pub struct Orientation {
    /// dirs[gap][col-1]
    pub dirs: Vec<Vec<Dir>>,
    /// component id per cell, numbered in first-cup order
    pub component_of: Vec<Vec<usize>>,
    pub components: usize,
}

impl MorseDiagram {
    pub fn new(events: Vec<Event>) -> Self {
        MorseDiagram { events }
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn crossing_count(&self) -> usize {
        self.events
            .iter()
            .filter(|e| matches!(e, Event::Cross { .. }))
            .count()
    }

    /// Width before each event plus the final width: length `len() + 1`.
    pub fn widths(&self) -> Result<Vec<usize>, DiagramError> {
        let mut w = 0usize;
        let mut out = Vec::with_capacity(self.events.len() + 1);
        out.push(0);
        for (index, e) in self.events.iter().enumerate() {
            match *e {
                Event::Cup { col } => {
                    if col < 1 || col > w + 1 {
                        return Err(DiagramError::ColumnOutOfRange { index, col, width: w });
                    }
                    w += 2;
                }
                Event::Cap { col } | Event::Cross { col, .. } => {
                    if w < 2 {
                        return Err(DiagramError::NegativeWidth { index });
                    }
                    if col < 1 || col > w - 1 {
                        return Err(DiagramError::ColumnOutOfRange { index, col, width: w });
                    }
                    if matches!(e, Event::Cap { .. }) {
                        w -= 2;
                    }
                }
            }
            out.push(w);
        }
        Ok(out)
    }

    /// Checks all Morse invariants; the error pinpoints the first offending
    /// event.
    pub fn validate(&self) -> Result<(), DiagramError> {
        let widths = self.widths()?;
        let final_width = *widths.last().unwrap();
        if final_width != 0 {
            return Err(DiagramError::NonzeroFinalWidth { width: final_width });
        }
        Ok(())
    }

    /// One traversal step. `gap` is the level index (0..=len), `col` the
    /// 1-based column at that level, moving in direction `dir`. Returns the
    /// next cell and direction; turns happen at caps (down becomes up) and
    /// cups (up becomes down).
    pub(crate) fn step(&self, gap: usize, col: usize, dir: Dir) -> (usize, usize, Dir) {
        match dir {
            Dir::Down => match self.events[gap] {
                Event::Cup { col: k } => {
                    let c = if col >= k { col + 2 } else { col };
                    (gap + 1, c, Dir::Down)
                }
                Event::Cap { col: k } => {
                    if col == k {
                        (gap, k + 1, Dir::Up)
                    } else if col == k + 1 {
                        (gap, k, Dir::Up)
                    } else {
                        let c = if col > k + 1 { col - 2 } else { col };
                        (gap + 1, c, Dir::Down)
                    }
                }
                Event::Cross { col: k, .. } => {
                    let c = if col == k {
                        k + 1
                    } else if col == k + 1 {
                        k
                    } else {
                        col
                    };
                    (gap + 1, c, Dir::Down)
                }
            },
            Dir::Up => match self.events[gap - 1] {
                Event::Cup { col: k } => {
                    if col == k {
                        (gap, k + 1, Dir::Down)
                    } else if col == k + 1 {
                        (gap, k, Dir::Down)
                    } else {
                        let c = if col > k + 1 { col - 2 } else { col };
                        (gap - 1, c, Dir::Up)
                    }
                }
                Event::Cap { col: k } => {
                    let c = if col >= k { col + 2 } else { col };
                    (gap - 1, c, Dir::Up)
                }
                Event::Cross { col: k, .. } => {
                    let c = if col == k {
                        k + 1
                    } else if col == k + 1 {
                        k
                    } else {
                        col
                    };
                    (gap - 1, c, Dir::Up)
                }
            },
        }
    }

    /// Deterministic orientation. Traverses components in order of their
    /// first-listed cup; by default that cup's left column is directed
    /// downward, and `flips[k]` reverses component k. Missing flags default
    /// to unflipped, extra flags are ignored.
    pub fn orient(&self, flips: &[bool]) -> Result<Orientation, DiagramError> {
        let widths = self.widths()?;
        if *widths.last().unwrap() != 0 {
            return Err(DiagramError::NonzeroFinalWidth {
                width: *widths.last().unwrap(),
            });
        }
        let mut dirs: Vec<Vec<Option<Dir>>> = widths.iter().map(|&w| vec![None; w]).collect();
        let mut comp: Vec<Vec<usize>> = widths.iter().map(|&w| vec![usize::MAX; w]).collect();
        let mut components = 0usize;
        for (idx, e) in self.events.iter().enumerate() {
            let Event::Cup { col } = *e else { continue };
            if dirs[idx + 1][col - 1].is_some() {
                continue;
            }
            let id = components;
            components += 1;
            let start = (idx + 1, col, Dir::Down);
            let (mut g, mut c, mut d) = start;
            loop {
                dirs[g][c - 1] = Some(d);
                comp[g][c - 1] = id;
                let next = self.step(g, c, d);
                if next == start {
                    break;
                }
                (g, c, d) = next;
            }
        }
        let mut dirs: Vec<Vec<Dir>> = dirs
            .into_iter()
            .map(|row| row.into_iter().map(|d| d.expect("all cells traversed")).collect())
            .collect();
        for (g, row) in dirs.iter_mut().enumerate() {
            for (c0, d) in row.iter_mut().enumerate() {
                let id = comp[g][c0];
                if flips.get(id).copied().unwrap_or(false) {
                    *d = d.flip();
                }
            }
        }
        Ok(Orientation {
            dirs,
            component_of: comp,
            components,
        })
    }

    /// Number of closed curves.
    pub fn components(&self) -> Result<usize, DiagramError> {
        Ok(self.orient(&[])?.components)
    }

    /// Sum of oriented crossing signs under the right-hand convention: an
    /// `x+` crossing with both passes downward counts +1, and reversing one
    /// pass flips the sign.
    pub fn writhe(&self, o: &Orientation) -> i64 {
        let mut total = 0;
        for (idx, e) in self.events.iter().enumerate() {
            if let Event::Cross { col, sign } = *e {
                let d1 = o.dirs[idx][col - 1];
                let d2 = o.dirs[idx][col];
                total += sign.as_i64() * d1.as_i64() * d2.as_i64();
            }
        }
        total
    }

    /// Kauffman bracket by the 2^c state sum, normalized so the unknot gives
    /// 1 (each state contributes A^(a-b) delta^(loops-1)).
    pub fn kauffman_bracket(&self) -> Result<LaurentPoly, DiagramError> {
        self.kauffman_bracket_capped(BRACKET_CROSSING_CAP)
    }

    pub fn kauffman_bracket_capped(&self, cap: usize) -> Result<LaurentPoly, DiagramError> {
        self.validate()?;
        if self.is_empty() {
            return Err(DiagramError::Empty);
        }
        let c = self.crossing_count();
        if c > cap {
            return Err(DiagramError::CrossingCapExceeded { count: c, cap });
        }
        let delta = LaurentPoly::delta();
        let mut delta_pows = vec![LaurentPoly::one()];
        let mut total = LaurentPoly::zero();
        for mask in 0u64..(1u64 << c) {
            let mut dsu = Dsu::new();
            let mut slots: Vec<usize> = Vec::new();
            let mut loops = 0usize;
            let mut a_minus_b = 0i64;
            let mut xi = 0usize;
            for e in &self.events {
                match *e {
                    Event::Cup { col } => {
                        let id = dsu.fresh();
                        slots.insert(col - 1, id);
                        slots.insert(col - 1, id);
                    }
                    Event::Cap { col } => {
                        let y = slots.remove(col);
                        let x = slots.remove(col - 1);
                        if dsu.union(x, y) {
                            loops += 1;
                        }
                    }
                    Event::Cross { col, sign } => {
                        let b_smoothing = (mask >> xi) & 1 == 1;
                        xi += 1;
                        a_minus_b += if b_smoothing { -1 } else { 1 };
                        // A-smoothing of x+ keeps the strands parallel; the
                        // other choice caps and re-cups the pair.
                        let parallel = (sign == Sign::Pos) != b_smoothing;
                        if !parallel {
                            let x = slots[col - 1];
                            let y = slots[col];
                            if dsu.union(x, y) {
                                loops += 1;
                            }
                            let id = dsu.fresh();
                            slots[col - 1] = id;
                            slots[col] = id;
                        }
                    }
                }
            }
            debug_assert!(slots.is_empty());
            debug_assert!(loops >= 1);
            while delta_pows.len() < loops {
                let next = &delta_pows[delta_pows.len() - 1] * &delta;
                delta_pows.push(next);
            }
            total += &delta_pows[loops - 1].mul_monomial(a_minus_b, 1);
        }
        Ok(total)
    }

    /// (-A^3)^(-writhe) . bracket: the normalized invariant, still in A.
    pub fn normalized_bracket(&self, o: &Orientation) -> Result<LaurentPoly, DiagramError> {
        let w = self.writhe(o);
        let bracket = self.kauffman_bracket()?;
        Ok(writhe_correction(&bracket, w))
    }
}

/// Multiply by (-A^3)^(-writhe).
pub fn writhe_correction(bracket: &LaurentPoly, writhe: i64) -> LaurentPoly {
    let sign = if writhe % 2 == 0 { 1 } else { -1 };
    bracket.mul_monomial(-3 * writhe, sign)
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new() -> Self {
        Dsu { parent: Vec::new() }
    }

    fn fresh(&mut self) -> usize {
        let id = self.parent.len();
        self.parent.push(id);
        id
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns true when x and y were already connected (a loop closes).
    fn union(&mut self, x: usize, y: usize) -> bool {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx == ry {
            return true;
        }
        self.parent[rx] = ry;
        false
    }
}

// ---------------------------------------------------------------------------
// Text and JSON formats
// ---------------------------------------------------------------------------

/// A diagram plus per-component orientation flags, as read from a file.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct DiagramFile {
    pub diagram: MorseDiagram,
    /// flips[k] reverses component k (first-cup order); missing entries
    /// default to unflipped.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub orient: Vec<bool>,
}

impl DiagramFile {
    pub fn plain(diagram: MorseDiagram) -> Self {
        DiagramFile {
            diagram,
            orient: Vec::new(),
        }
    }
}

impl Serialize for MorseDiagram {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Raw<'a> {
            events: &'a [Event],
        }
        Raw { events: &self.events }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MorseDiagram {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            events: Vec<Event>,
        }
        Ok(MorseDiagram::new(Raw::deserialize(deserializer)?.events))
    }
}

impl fmt::Display for MorseDiagram {
    /// One event per line: `cup <col>`, `cap <col>`, `x+ <col>`, `x- <col>`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.events {
            match *e {
                Event::Cup { col } => writeln!(f, "cup {col}")?,
                Event::Cap { col } => writeln!(f, "cap {col}")?,
                Event::Cross { col, sign: Sign::Pos } => writeln!(f, "x+ {col}")?,
                Event::Cross { col, sign: Sign::Neg } => writeln!(f, "x- {col}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Display for DiagramFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.orient.is_empty() {
            write!(f, "orient:")?;
            for (k, &flip) in self.orient.iter().enumerate() {
                write!(f, " {}{}", if flip { '-' } else { '+' }, k + 1)?;
            }
            writeln!(f)?;
        }
        write!(f, "{}", self.diagram)
    }
}

impl FromStr for DiagramFile {
    type Err = crate::braid::ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        use crate::braid::ParseError;
        let mut events = Vec::new();
        let mut orient: Vec<bool> = Vec::new();
        for (i, raw) in s.lines().enumerate() {
            let line = i + 1;
            let text = raw.split('#').next().unwrap_or("").trim();
            if text.is_empty() {
                continue;
            }
            let syntax = |msg: String| ParseError::Syntax { line, msg };
            if let Some(rest) = text.strip_prefix("orient:") {
                for tok in rest.split_whitespace() {
                    let (flip, num) = match tok.split_at(1) {
                        ("+", n) => (false, n),
                        ("-", n) => (true, n),
                        _ => return Err(syntax(format!("bad orient token `{tok}`"))),
                    };
                    let k: usize = num
                        .parse()
                        .map_err(|_| syntax(format!("bad orient token `{tok}`")))?;
                    if k == 0 {
                        return Err(syntax("component numbers are 1-based".into()));
                    }
                    if orient.len() < k {
                        orient.resize(k, false);
                    }
                    orient[k - 1] = flip;
                }
                continue;
            }
            let mut parts = text.split_whitespace();
            let (verb, col_str) = (parts.next().unwrap(), parts.next());
            let col_str = col_str.ok_or_else(|| syntax(format!("`{verb}` needs a column")))?;
            if parts.next().is_some() {
                return Err(syntax(format!("trailing tokens after `{verb} {col_str}`")));
            }
            let col: usize = col_str
                .parse()
                .map_err(|_| syntax(format!("invalid column `{col_str}`")))?;
            let event = match verb {
                "cup" => Event::Cup { col },
                "cap" => Event::Cap { col },
                "x+" => Event::Cross { col, sign: Sign::Pos },
                "x-" => Event::Cross { col, sign: Sign::Neg },
                other => return Err(syntax(format!("unknown event `{other}`"))),
            };
            events.push(event);
        }
        Ok(DiagramFile {
            diagram: MorseDiagram::new(events),
            orient,
        })
    }
}

// ---------------------------------------------------------------------------
// Named example diagrams used across tests and docs
// ---------------------------------------------------------------------------

/// [cup 1, cap 1]: the round unknot.
pub fn unknot() -> MorseDiagram {
    MorseDiagram::new(vec![Event::Cup { col: 1 }, Event::Cap { col: 1 }])
}

/// Hopf link with both crossings of the given sign.
pub fn hopf(sign: Sign) -> MorseDiagram {
    MorseDiagram::new(vec![
        Event::Cup { col: 1 },
        Event::Cup { col: 1 },
        Event::Cross { col: 2, sign },
        Event::Cross { col: 2, sign },
        Event::Cap { col: 1 },
        Event::Cap { col: 1 },
    ])
}
