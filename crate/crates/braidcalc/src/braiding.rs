//! Diagram-to-braid conversion via braiding moves (the LR algorithm), with
//! the crossing-rotation preparation (the KL algorithm), and braid closure
//! back to a diagram.
//!
//! The working state is always a closed Morse diagram. A braiding move on an
//! up-arc removes the arc, then reroutes its two ends: the top stub runs to
//! the top of the diagram and the bottom stub to the bottom, both passing
//! entirely over or entirely under every strand in between; the pair is
//! closed by an explicit return arc placed to the right of everything. After
//! every up-arc has been eliminated the diagram is a trace closure in
//! standard form (`cup 1..n`, crossings among columns 1..n-1, `cap n..1`)
//! and the braid word is read straight off the crossings.
//!
//! Hairpin bookkeeping: the cups opened by braiding moves form a prefix of
//! the event list and their caps a suffix, with the newest pair innermost.
//! Their return arcs are the only up-arcs exempt from further braiding.

use crate::braid::{BraidWord, Letter, Side, Sign};
use crate::diagram::{Dir, DiagramError, Event, MorseDiagram, Orientation};
use thiserror::Error;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Algorithm {
    /// Braid every up-arc directly, labelled over/under per crossing.
    Lr,
    /// Rotate crossings with upward passes first, then braid free up-arcs.
    Kl,
}

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum BraidingError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error("diagram has no events")]
    EmptyDiagram,
    #[error("up-arc has mixed over/under labels; split it first")]
    MixedLabels,
    #[error("side {side:?} does not match the arc's crossing label")]
    LabelMismatch { side: Side },
    #[error("braiding did not terminate within {limit} moves")]
    MoveLimitExceeded { limit: usize },
    #[error("internal error: {0}")]
    Internal(&'static str),
}

/// Trace closure of a braid word: n nested cups, the braid crossings, and n
/// nested caps, with the return arcs to the right of the braid.
pub fn closure(w: &BraidWord) -> MorseDiagram {
    let n = w.strands();
    let mut events = Vec::with_capacity(2 * n + w.len());
    for k in 1..=n {
        events.push(Event::Cup { col: k });
    }
    for l in w.letters() {
        events.push(Event::Cross {
            col: l.index,
            sign: l.sign,
        });
    }
    for k in (1..=n).rev() {
        events.push(Event::Cap { col: k });
    }
    MorseDiagram::new(events)
}

/// One upward traversal of a crossing.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct CrossingPass {
    /// Event index of the crossing.
    pub event: usize,
    /// Whether the arc is the over or the under strand there.
    pub label: Side,
}

/// Maximal upward-oriented run of strand segments. Runs from a cap (its
/// bottom endpoint) up through zero or more crossings to a cup.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UpArc {
    /// Segments as (gap, column), listed bottom to top.
    pub cells: Vec<(usize, usize)>,
    /// Event index of the cup at the top endpoint.
    pub top_cup: usize,
    /// Event index of the cap at the bottom endpoint.
    pub bottom_cap: usize,
    /// Crossings traversed, bottom to top, with over/under labels.
    pub passes: Vec<CrossingPass>,
    /// For each pass, the index into `cells` of the segment just below it.
    pub pass_cells: Vec<usize>,
}

impl UpArc {
    /// No crossings traversed.
    pub fn free(&self) -> bool {
        self.passes.is_empty()
    }

    /// (gap, column) of the topmost segment.
    pub fn top_endpoint(&self) -> (usize, usize) {
        *self.cells.last().unwrap()
    }

    pub fn bottom_endpoint(&self) -> (usize, usize) {
        self.cells[0]
    }

    /// The common label when all passes agree; None for mixed or free arcs.
    pub fn uniform_label(&self) -> Option<Side> {
        let first = self.passes.first()?.label;
        self.passes
            .iter()
            .all(|p| p.label == first)
            .then_some(first)
    }
}

/// All up-arcs of the oriented diagram, ordered topmost endpoint first and
/// leftmost on ties.
pub fn find_up_arcs(d: &MorseDiagram, o: &Orientation) -> Vec<UpArc> {
    let mut arcs = Vec::new();
    for (idx, e) in d.events().iter().enumerate() {
        let Event::Cap { col } = *e else { continue };
        let c = if o.dirs[idx][col - 1] == Dir::Up {
            col
        } else {
            debug_assert_eq!(o.dirs[idx][col], Dir::Up);
            col + 1
        };
        let mut cells = vec![(idx, c)];
        let mut passes = Vec::new();
        let mut pass_cells = Vec::new();
        let (mut g, mut c) = (idx, c);
        let top_cup = loop {
            let (ng, nc, nd) = d.step(g, c, Dir::Up);
            if nd == Dir::Down {
                break g - 1;
            }
            if let Event::Cross { col: k, sign } = d.events()[g - 1] {
                if c == k || c == k + 1 {
                    // pass occupies (above nc, below c); the upper-left to
                    // lower-right diagonal is the over strand of x+
                    let over = (nc == k) == (sign == Sign::Pos);
                    passes.push(CrossingPass {
                        event: g - 1,
                        label: if over { Side::Over } else { Side::Under },
                    });
                    pass_cells.push(cells.len() - 1);
                }
            }
            (g, c) = (ng, nc);
            cells.push((g, c));
        };
        arcs.push(UpArc {
            cells,
            top_cup,
            bottom_cap: idx,
            passes,
            pass_cells,
        });
    }
    arcs.sort_by_key(|a| {
        let (g, c) = a.top_endpoint();
        (g, c)
    });
    arcs
}

// ---------------------------------------------------------------------------
// The braiding move
// ---------------------------------------------------------------------------

/// What the pulled strand's lower end attaches to.
#[derive(Clone, Copy, Debug)]
enum PieceBottom {
    /// The arc's own cap; the whole run is consumed.
    Cap(usize),
    /// Mid-arc split just above the next differently-labelled pass; a new
    /// cup is inserted at this (gap, column) of the original diagram.
    Split { gap: usize, col: usize },
}

/// Label-uniform top portion of an up-arc, the unit one braiding move
/// eliminates.
#[derive(Clone, Debug)]
struct Piece {
    top_cup: usize,
    bottom: PieceBottom,
    /// (gap, col) bottom to top, exactly the segments being removed.
    cells: Vec<(usize, usize)>,
    /// Event indices of this piece's passes (de-crossed by the move).
    pass_events: Vec<usize>,
    label: Option<Side>,
}

/// The label-uniform top piece of an arc.
fn top_piece(arc: &UpArc) -> Piece {
    if let Some(label) = arc.uniform_label() {
        return Piece {
            top_cup: arc.top_cup,
            bottom: PieceBottom::Cap(arc.bottom_cap),
            cells: arc.cells.clone(),
            pass_events: arc.passes.iter().map(|p| p.event).collect(),
            label: Some(label),
        };
    }
    if arc.free() {
        return Piece {
            top_cup: arc.top_cup,
            bottom: PieceBottom::Cap(arc.bottom_cap),
            cells: arc.cells.clone(),
            pass_events: Vec::new(),
            label: None,
        };
    }
    // take the maximal equal-label run of topmost passes; the split sits on
    // the segment just below the run's lowest crossing
    let top_label = arc.passes.last().unwrap().label;
    let mut s = arc.passes.len();
    while s > 0 && arc.passes[s - 1].label == top_label {
        s -= 1;
    }
    debug_assert!(s > 0, "uniform arcs were handled above");
    let boundary = arc.pass_cells[s];
    let (g_low, c_low) = arc.cells[boundary];
    Piece {
        top_cup: arc.top_cup,
        bottom: PieceBottom::Split { gap: g_low, col: c_low },
        cells: arc.cells[boundary..].to_vec(),
        pass_events: arc.passes[s..].iter().map(|p| p.event).collect(),
        label: Some(top_label),
    }
}

/// Witness cell carrying a component's traversal direction across rewrites.
type Witness = (usize, usize, Dir);

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Slot {
    Old(u32),
    Pulled,
    Return,
}

/// Strand ids per gap of the original diagram, each id born at a cup.
struct OldIds {
    /// row occupancy per gap
    rows: Vec<Vec<u32>>,
}

fn assign_ids(d: &MorseDiagram) -> OldIds {
    let mut rows: Vec<Vec<u32>> = Vec::with_capacity(d.len() + 1);
    let mut row: Vec<u32> = Vec::new();
    let mut next = 0u32;
    rows.push(row.clone());
    for e in d.events() {
        match *e {
            Event::Cup { col } => {
                row.insert(col - 1, next);
                row.insert(col, next + 1);
                next += 2;
            }
            Event::Cap { col } => {
                row.remove(col);
                row.remove(col - 1);
            }
            Event::Cross { col, .. } => row.swap(col - 1, col),
        }
        rows.push(row.clone());
    }
    OldIds { rows }
}

/// Core rewrite: eliminate `piece` from `d`, routing the pulled ends past
/// everything on the given side and closing them with a fresh return arc.
/// `exempt` counts existing hairpin pairs (prefix cups / suffix caps).
/// Returns the new diagram, the new exempt count, and remapped witnesses.
fn braid_piece(
    d: &MorseDiagram,
    piece: &Piece,
    side: Side,
    exempt: usize,
    witnesses: &[Witness],
) -> Result<(MorseDiagram, usize, Vec<Witness>), BraidingError> {
    let m = d.len();
    let events = d.events();
    let ids = assign_ids(d);
    let internal = BraidingError::Internal;

    let cu = piece.top_cup;
    let Event::Cup { col: cu_col } = events[cu] else {
        return Err(internal("piece top is not a cup"));
    };
    let (_, arc_top_col) = *piece.cells.last().unwrap();
    let arc_id = ids.rows[cu + 1][arc_top_col - 1];
    let wt_id = if arc_top_col == cu_col {
        ids.rows[cu + 1][cu_col] // arc is the left branch
    } else {
        ids.rows[cu + 1][cu_col - 1]
    };

    // arc occupancy over the gaps where it is missing from the simulation;
    // at a split gap the remainder has already been re-opened by the time
    // the event there is processed
    let arc_removed_at = |gap: usize| -> Option<usize> {
        if let PieceBottom::Split { gap: g_low, .. } = piece.bottom {
            if gap == g_low {
                return None;
            }
        }
        piece
            .cells
            .iter()
            .find(|&&(g, _)| g == gap)
            .map(|&(_, c)| c)
    };

    let (dive_left_sign, dive_right_sign) = match side {
        Side::Over => (Sign::Neg, Sign::Pos),
        Side::Under => (Sign::Pos, Sign::Neg),
    };

    let return_ids: Vec<u32> = (0..exempt)
        .map(|j| {
            let Event::Cup { col } = events[j] else {
                unreachable!("exempt prefix is cups");
            };
            ids.rows[j + 1][col] // right branch
        })
        .collect();
    let is_return = |s: &Slot| match s {
        Slot::Return => true,
        Slot::Old(id) => return_ids.contains(id),
        Slot::Pulled => false,
    };

    let mut out: Vec<Event> = Vec::with_capacity(m + 8);
    let mut sim: Vec<Slot> = Vec::new();
    let mut new_witnesses: Vec<Witness> = Vec::with_capacity(witnesses.len());
    let mut witness_done = vec![false; witnesses.len()];

    let split: Option<(usize, usize)> = match piece.bottom {
        PieceBottom::Cap(_) => None,
        PieceBottom::Split { gap, col } => Some((gap, col)),
    };

    let mut pulled_down_active = false;

    for oi in 0..=m {
        // old gap `oi` is current; capture witnesses that live here
        for (wi, &(g, c, dir)) in witnesses.iter().enumerate() {
            if g != oi || witness_done[wi] {
                continue;
            }
            let id = ids.rows[g][c - 1];
            let pos = sim
                .iter()
                .position(|&s| s == Slot::Old(id))
                .ok_or(internal("witness strand missing from simulation"))?;
            new_witnesses.push((out.len(), pos + 1, dir));
            witness_done[wi] = true;
        }

        if oi == m {
            break;
        }

        // surgical insertions happen before the old event at this index
        if oi == exempt {
            // the new hairpin cup, innermost of the prefix block
            let z = sim.iter().position(is_return).unwrap_or(sim.len());
            out.push(Event::Cup { col: z + 1 });
            sim.insert(z, Slot::Pulled);
            sim.insert(z + 1, Slot::Return);
        }
        if let Some((g_low, c_low)) = split {
            if oi == g_low {
                // re-open the arc remainder plus the pulled-down strand
                let inspos = c_low - 1;
                out.push(Event::Cup { col: inspos + 1 });
                sim.insert(inspos, Slot::Old(arc_id));
                sim.insert(inspos + 1, Slot::Pulled);
                pulled_down_active = true;
                dive_right(&mut out, &mut sim, dive_right_sign, &is_return)?;
            }
        }

        let e = events[oi];

        // our cap must close before the old exempt suffix begins
        if pulled_down_active && oi == m - exempt {
            close_hairpin(&mut out, &mut sim)?;
            pulled_down_active = false;
        }

        if oi == cu {
            // delete the cup; dive the pulled strand onto the partner's slot
            let t = cu_col - 1;
            let mut p = sim
                .iter()
                .position(|&s| s == Slot::Pulled)
                .ok_or(internal("pulled strand missing"))?;
            while p > t {
                out.push(Event::Cross {
                    col: p,
                    sign: dive_left_sign,
                });
                sim.swap(p - 1, p);
                p -= 1;
            }
            sim[t] = Slot::Old(wt_id);
            continue;
        }
        if piece.pass_events.contains(&oi) {
            continue; // de-crossed with the arc
        }
        if let PieceBottom::Cap(ca) = piece.bottom {
            if oi == ca {
                // delete the cap; the partner strand becomes the pulled-down end
                let Event::Cap { col } = e else {
                    return Err(internal("piece bottom is not a cap"));
                };
                let wb_id = if ids.rows[oi][col - 1] == arc_id {
                    ids.rows[oi][col]
                } else {
                    ids.rows[oi][col - 1]
                };
                let pos = sim
                    .iter()
                    .position(|&s| s == Slot::Old(wb_id))
                    .ok_or(internal("cap partner missing"))?;
                sim[pos] = Slot::Pulled;
                pulled_down_active = true;
                dive_right(&mut out, &mut sim, dive_right_sign, &is_return)?;
                continue;
            }
        }

        match e {
            Event::Cup { col } => {
                let removed_left = match arc_removed_at(oi) {
                    Some(ac) => usize::from(ac < col),
                    None => 0,
                };
                let inspos = col - 1 - removed_left;
                out.push(Event::Cup { col: inspos + 1 });
                // ids born at this cup, read from the next old row
                let new_row = &ids.rows[oi + 1];
                let born_l = new_row[col - 1];
                let born_r = new_row[col];
                sim.insert(inspos, Slot::Old(born_l));
                sim.insert(inspos + 1, Slot::Old(born_r));
            }
            Event::Cap { col } => {
                let (a, b) = (ids.rows[oi][col - 1], ids.rows[oi][col]);
                let pos = sim
                    .iter()
                    .position(|&s| s == Slot::Old(a))
                    .ok_or(internal("cap strand missing"))?;
                if sim.get(pos + 1) != Some(&Slot::Old(b)) {
                    return Err(internal("cap strands not adjacent in simulation"));
                }
                out.push(Event::Cap { col: pos + 1 });
                sim.remove(pos + 1);
                sim.remove(pos);
            }
            Event::Cross { col, sign } => {
                let (a, b) = (ids.rows[oi][col - 1], ids.rows[oi][col]);
                let pos = sim
                    .iter()
                    .position(|&s| s == Slot::Old(a))
                    .ok_or(internal("crossing strand missing"))?;
                if sim.get(pos + 1) != Some(&Slot::Old(b)) {
                    return Err(internal("crossing strands not adjacent in simulation"));
                }
                out.push(Event::Cross { col: pos + 1, sign });
                sim.swap(pos, pos + 1);
            }
        }
    }

    if pulled_down_active {
        close_hairpin(&mut out, &mut sim)?;
    }
    if !sim.is_empty() {
        return Err(internal("simulation row not empty at the bottom"));
    }

    let result = MorseDiagram::new(out);
    debug_assert_eq!(result.validate(), Ok(()));
    Ok((result, exempt + 1, new_witnesses))
}

/// Send the pulled-down strand rightward until it sits against the return
/// zone, crossing intervening strands on the chosen side.
fn dive_right(
    out: &mut Vec<Event>,
    sim: &mut Vec<Slot>,
    sign: Sign,
    is_return: &dyn Fn(&Slot) -> bool,
) -> Result<(), BraidingError> {
    let mut p = sim
        .iter()
        .position(|&s| s == Slot::Pulled)
        .ok_or(BraidingError::Internal("pulled-down strand missing"))?;
    let z = sim
        .iter()
        .position(is_return)
        .unwrap_or(sim.len());
    while p + 1 < z {
        out.push(Event::Cross { col: p + 1, sign });
        sim.swap(p, p + 1);
        p += 1;
    }
    Ok(())
}

fn close_hairpin(out: &mut Vec<Event>, sim: &mut Vec<Slot>) -> Result<(), BraidingError> {
    let p = sim
        .iter()
        .position(|&s| s == Slot::Pulled)
        .ok_or(BraidingError::Internal("pulled-down strand missing"))?;
    if sim.get(p + 1) != Some(&Slot::Return) {
        return Err(BraidingError::Internal("return arc not adjacent to pulled strand"));
    }
    out.push(Event::Cap { col: p + 1 });
    sim.remove(p + 1);
    sim.remove(p);
    Ok(())
}

/// The basic braiding move on a whole up-arc: the arc is cut at its topmost
/// point and both ends are pulled past the diagram on `side`. The arc must
/// be free or carry `side` as its uniform label.
pub fn braiding_move(
    d: &MorseDiagram,
    arc: &UpArc,
    side: Side,
) -> Result<MorseDiagram, BraidingError> {
    if !arc.free() {
        match arc.uniform_label() {
            None => return Err(BraidingError::MixedLabels),
            Some(l) if l != side => return Err(BraidingError::LabelMismatch { side }),
            _ => {}
        }
    }
    let piece = top_piece(arc);
    let (out, _, _) = braid_piece(d, &piece, side, 0, &[])?;
    Ok(out)
}

// ---------------------------------------------------------------------------
// Crossing rotation (the KL preparation)
// ---------------------------------------------------------------------------

/// Replace the crossing at event `e` so both passes run downward, per the
/// half-twist (one upward pass, +2 events) or full-twist (both upward,
/// +4 events) templates. Uses the default orientation.
pub fn rotate_crossing(d: &MorseDiagram, e: usize) -> Result<MorseDiagram, BraidingError> {
    let o = d.orient(&[])?;
    let ws = initial_witnesses(&o);
    let (out, _) = rotate_with(d, e, &o, &ws)?;
    Ok(out)
}

/// Rotation with explicit orientation and witness remapping.
fn rotate_with(
    d: &MorseDiagram,
    e: usize,
    o: &Orientation,
    witnesses: &[Witness],
) -> Result<(MorseDiagram, Vec<Witness>), BraidingError> {
    let Some(Event::Cross { col: c, sign }) = d.events().get(e).copied() else {
        return Err(BraidingError::Diagram(DiagramError::NotACrossing { index: e }));
    };
    // pass with upper cell at col c runs NW-SE (lower cell c+1); the other
    // runs NE-SW. Rotation targets the pass entering from below.
    let nwse_up = o.dirs[e][c - 1] == Dir::Up;
    let nesw_up = o.dirs[e][c] == Dir::Up;
    if !nwse_up && !nesw_up {
        return Err(BraidingError::Diagram(DiagramError::AllDown { index: e }));
    }
    let remap = |ws: &[Witness]| -> Vec<Witness> {
        ws.iter()
            .map(|&(g, cc, dir)| if g > e { (g + 2, cc, dir) } else { (g, cc, dir) })
            .collect()
    };
    let mut events = d.events().to_vec();
    let flipped = sign.flip();
    let replacement = if nesw_up {
        // upward pass enters at lower column c and ascends on the left
        [
            Event::Cup { col: c },
            Event::Cross { col: c + 1, sign: flipped },
            Event::Cap { col: c + 2 },
        ]
    } else {
        // upward pass enters at lower column c+1 and ascends on the right
        [
            Event::Cup { col: c + 2 },
            Event::Cross { col: c + 1, sign: flipped },
            Event::Cap { col: c },
        ]
    };
    events.splice(e..=e, replacement);
    let once = MorseDiagram::new(events);
    debug_assert_eq!(once.validate(), Ok(()));
    let ws = remap(witnesses);
    if nwse_up && nesw_up {
        // full twist: the remaining upward pass now sits at event e+1
        let flags = flags_from_witnesses(&once, &ws)?;
        let o2 = once.orient(&flags)?;
        return rotate_with(&once, e + 1, &o2, &ws);
    }
    Ok((once, ws))
}

// ---------------------------------------------------------------------------
// The full pipeline
// ---------------------------------------------------------------------------

/// Pick one witness cell per component: its first downward segment.
fn initial_witnesses(o: &Orientation) -> Vec<Witness> {
    let mut seen = vec![false; o.components];
    let mut out = Vec::with_capacity(o.components);
    for (g, row) in o.dirs.iter().enumerate() {
        for (c0, &dir) in row.iter().enumerate() {
            let comp = o.component_of[g][c0];
            if dir == Dir::Down && !seen[comp] {
                seen[comp] = true;
                out.push((g, c0 + 1, Dir::Down));
            }
        }
    }
    debug_assert!(seen.iter().all(|&s| s));
    out
}

/// Recover per-component flips that reproduce the witnessed directions.
fn flags_from_witnesses(
    d: &MorseDiagram,
    witnesses: &[Witness],
) -> Result<Vec<bool>, BraidingError> {
    let o = d.orient(&[])?;
    let mut flags = vec![false; o.components];
    let mut pinned = vec![false; o.components];
    for &(g, c, dir) in witnesses {
        let comp = o.component_of[g][c - 1];
        let flip = o.dirs[g][c - 1] != dir;
        if pinned[comp] && flags[comp] != flip {
            return Err(BraidingError::Internal("inconsistent witnesses"));
        }
        flags[comp] = flip;
        pinned[comp] = true;
    }
    Ok(flags)
}

/// Run both braiding algorithms: rotate offending crossings first under
/// `Kl`, then repeatedly braid the topmost remaining up-arc (its topmost
/// label-uniform piece) until only the hairpins' return arcs remain, and
/// read the braid word off the standard-form result.
///
/// `flips` selects the input orientation per component; the orientation is
/// transported through every rewrite.
pub fn to_braid(
    d: &MorseDiagram,
    flips: &[bool],
    algorithm: Algorithm,
) -> Result<BraidWord, BraidingError> {
    d.validate()?;
    if d.is_empty() {
        return Err(BraidingError::EmptyDiagram);
    }
    let o = d.orient(flips)?;
    let mut witnesses = initial_witnesses(&o);
    let mut cur = d.clone();

    if algorithm == Algorithm::Kl {
        loop {
            let flags = flags_from_witnesses(&cur, &witnesses)?;
            let o = cur.orient(&flags)?;
            let target = cur.events().iter().enumerate().find_map(|(i, e)| match *e {
                Event::Cross { col, .. }
                    if o.dirs[i][col - 1] == Dir::Up || o.dirs[i][col] == Dir::Up =>
                {
                    Some(i)
                }
                _ => None,
            });
            let Some(i) = target else { break };
            let (next, ws) = rotate_with(&cur, i, &o, &witnesses)?;
            cur = next;
            witnesses = ws;
        }
    }

    let limit = 1000 + 50 * d.len();
    let mut exempt = 0usize;
    for step in 0..=limit {
        if step == limit {
            return Err(BraidingError::MoveLimitExceeded { limit });
        }
        let flags = flags_from_witnesses(&cur, &witnesses)?;
        let o = cur.orient(&flags)?;
        let arcs = find_up_arcs(&cur, &o);
        let Some(arc) = arcs
            .iter()
            .filter(|a| a.top_cup >= exempt)
            .min_by_key(|a| a.top_cup)
        else {
            break;
        };
        let piece = top_piece(arc);
        let side = piece.label.unwrap_or(Side::Over);
        let (next, ex, ws) = braid_piece(&cur, &piece, side, exempt, &witnesses)?;
        cur = next;
        exempt = ex;
        witnesses = ws;
    }

    extract_word(&cur, exempt)
}

/// Development aid: run the LR loop printing every move.
#[doc(hidden)]
pub fn debug_trace_to_braid(d: &MorseDiagram) {
    let o = d.orient(&[]).unwrap();
    let mut witnesses = initial_witnesses(&o);
    let mut cur = d.clone();
    let mut exempt = 0usize;
    for step in 0..200 {
        let flags = flags_from_witnesses(&cur, &witnesses).unwrap();
        let o = cur.orient(&flags).unwrap();
        let arcs = find_up_arcs(&cur, &o);
        let Some(arc) = arcs
            .iter()
            .filter(|a| a.top_cup >= exempt)
            .min_by_key(|a| a.top_cup)
        else {
            println!("done after {step} moves; exempt={exempt}");
            println!("{}", crate::diagram::DiagramFile::plain(cur.clone()));
            println!("word: {:?}", extract_word(&cur, exempt));
            return;
        };
        let piece = top_piece(arc);
        println!(
            "-- move {step}: arc top_cup={} passes={:?} piece cells={:?} bottom={:?} label={:?}",
            arc.top_cup,
            arc.passes,
            piece.cells,
            piece.bottom,
            piece.label
        );
        let side = piece.label.unwrap_or(Side::Over);
        match braid_piece(&cur, &piece, side, exempt, &witnesses) {
            Ok((next, ex, ws)) => {
                cur = next;
                exempt = ex;
                witnesses = ws;
                println!("   ok; diagram now {} events", cur.len());
            }
            Err(e) => {
                println!("   FAILED: {e}");
                println!("{}", crate::diagram::DiagramFile::plain(cur.clone()));
                return;
            }
        }
    }
}

/// Read the braid word off a standard-form trace closure with `exempt`
/// hairpin pairs.
fn extract_word(d: &MorseDiagram, exempt: usize) -> Result<BraidWord, BraidingError> {
    let m = d.len();
    let k = exempt;
    let internal = BraidingError::Internal;
    if k == 0 || m < 2 * k {
        return Err(internal("no hairpins to read the closure from"));
    }
    for j in 0..k {
        if d.events()[j] != (Event::Cup { col: j + 1 }) {
            return Err(internal("cup block not in standard form"));
        }
        if d.events()[m - 1 - j] != (Event::Cap { col: j + 1 }) {
            return Err(internal("cap block not in standard form"));
        }
    }
    let mut letters = Vec::with_capacity(m - 2 * k);
    for e in &d.events()[k..m - k] {
        let Event::Cross { col, sign } = *e else {
            return Err(internal("interior events are not all crossings"));
        };
        if col + 1 > k {
            return Err(internal("crossing touches a return arc"));
        }
        letters.push(Letter::new(col, sign));
    }
    BraidWord::new(k, letters).map_err(|_| internal("extracted word is malformed"))
}

/// Greedy closure-preserving canonicalization: free reduction, cyclic
/// cancellation (a conjugation), destabilization, and destabilization after
/// the half-twist flip i -> n-i. Every step is a Markov move or derived
/// from one, so the closure's isotopy class is untouched.
pub fn canonicalize(w: &BraidWord) -> BraidWord {
    let mut cur = w.free_reduce();
    loop {
        if cur.len() >= 2 {
            let first = cur.letters()[0];
            let last = *cur.letters().last().unwrap();
            if first.index == last.index && first.sign != last.sign {
                cur = cur.commute_rotate(1).unwrap().free_reduce();
                continue;
            }
        }
        if let Some(next) = cur.destabilize() {
            cur = next.free_reduce();
            continue;
        }
        if let Some(next) = cur.flip().destabilize() {
            cur = next.flip().free_reduce();
            continue;
        }
        return cur;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{hopf, unknot};
    use crate::laurent::LaurentPoly;
    use crate::oracle::normalized_jones;

    fn bw(strands: usize, letters: &[i64]) -> BraidWord {
        BraidWord::from_signed(strands, letters).unwrap()
    }

    #[test]
    fn closure_examples() {
        let d = closure(&BraidWord::identity(1));
        assert_eq!(d, unknot());
        let d = closure(&bw(2, &[1]));
        assert!(d.validate().is_ok());
        assert_eq!(d.components().unwrap(), 1);
        assert_eq!(d.writhe(&d.orient(&[]).unwrap()), 1);
        let d = closure(&bw(2, &[1, 1]));
        assert_eq!(
            d.kauffman_bracket().unwrap(),
            LaurentPoly::from_terms([(4, -1), (-4, -1)])
        );
    }

    #[test]
    fn closure_matches_braid_invariants_on_seeded_words() {
        let mut rng = crate::gen::SplitMix64::new(17);
        for _ in 0..100 {
            let w = crate::gen::random_word(&mut rng, 5, 9);
            let d = closure(&w);
            assert!(d.validate().is_ok());
            assert_eq!(d.components().unwrap(), w.closure_components());
            assert_eq!(d.writhe(&d.orient(&[]).unwrap()), w.exponent_sum());
        }
    }

    #[test]
    fn up_arcs_of_unknot_and_closures() {
        let d = unknot();
        let arcs = find_up_arcs(&d, &d.orient(&[]).unwrap());
        assert_eq!(arcs.len(), 1);
        assert!(arcs[0].free());
        assert_eq!(arcs[0].cells, vec![(1, 2)]);

        // in a braid closure the interior is all downward: up-arcs are the
        // n return arcs, all free
        let d = closure(&bw(3, &[1, -2]));
        let arcs = find_up_arcs(&d, &d.orient(&[]).unwrap());
        assert_eq!(arcs.len(), 3);
        assert!(arcs.iter().all(|a| a.free()));
    }

    #[test]
    fn up_arcs_of_hopf_by_hand() {
        // components: outer (free return) and inner (passes both crossings)
        let d = hopf(Sign::Pos);
        let arcs = find_up_arcs(&d, &d.orient(&[]).unwrap());
        assert_eq!(arcs.len(), 2);
        let crossing_arc = arcs.iter().find(|a| !a.free()).unwrap();
        assert_eq!(crossing_arc.passes.len(), 2);
        // labels alternate: over at one crossing, under at the other
        let labels: Vec<Side> = crossing_arc.passes.iter().map(|p| p.label).collect();
        assert!(labels.contains(&Side::Over) && labels.contains(&Side::Under));
        let free_arc = arcs.iter().find(|a| a.free()).unwrap();
        assert_eq!(free_arc.cells.len(), 5);
    }

    #[test]
    fn braiding_move_on_unknot_is_stable() {
        let d = unknot();
        let arcs = find_up_arcs(&d, &d.orient(&[]).unwrap());
        let out = braiding_move(&d, &arcs[0], Side::Over).unwrap();
        assert_eq!(out, unknot());
    }

    #[test]
    fn braiding_move_rejects_mixed_labels() {
        let d = hopf(Sign::Pos);
        let arcs = find_up_arcs(&d, &d.orient(&[]).unwrap());
        let mixed = arcs.iter().find(|a| !a.free()).unwrap();
        assert_eq!(
            braiding_move(&d, mixed, Side::Over),
            Err(BraidingError::MixedLabels)
        );
    }

    #[test]
    fn braiding_move_preserves_invariants() {
        let mut rng = crate::gen::SplitMix64::new(41);
        let mut done = 0;
        while done < 40 {
            let d = crate::gen::random_diagram(&mut rng, 5, 6);
            let o = d.orient(&[]).unwrap();
            let arcs = find_up_arcs(&d, &o);
            let Some(arc) = arcs.iter().find(|a| a.uniform_label().is_some() || a.free()) else {
                continue;
            };
            let side = arc.uniform_label().unwrap_or(Side::Over);
            let out = braiding_move(&d, arc, side).unwrap();
            assert!(out.validate().is_ok());
            assert_eq!(out.components().unwrap(), d.components().unwrap());
            let f_in = d.normalized_bracket(&o).unwrap();
            let f_out = out.normalized_bracket(&out.orient(&[]).unwrap()).unwrap();
            // the normalized invariant is orientation-independent for the
            // bracket part; writhe flips cancel componentwise
            assert_eq!(f_in, f_out, "move changed the invariant");
            done += 1;
        }
    }

    #[test]
    fn rotation_templates() {
        // closure(s1) flipped so the braid strand runs upward: its crossing
        // has an upward pass
        let d = closure(&bw(2, &[1]));
        let o = d.orient(&[true]).unwrap();
        let cross = 2;
        let up_passes = [o.dirs[cross][0], o.dirs[cross][1]]
            .iter()
            .filter(|&&x| x == Dir::Up)
            .count();
        assert!(up_passes >= 1);
        let (out, _) = rotate_with(&d, cross, &o, &[]).unwrap();
        assert!(out.validate().is_ok());
        assert_eq!(out.len(), d.len() + 2 * up_passes);
        assert_eq!(out.components().unwrap(), d.components().unwrap());
        assert_eq!(
            out.kauffman_bracket().unwrap(),
            d.kauffman_bracket().unwrap()
        );

        // all-down crossing refuses to rotate
        let o = d.orient(&[]).unwrap();
        assert_eq!(
            rotate_with(&d, cross, &o, &[]).err(),
            Some(BraidingError::Diagram(DiagramError::AllDown { index: cross }))
        );
    }

    #[test]
    fn to_braid_unknot() {
        for alg in [Algorithm::Lr, Algorithm::Kl] {
            let w = to_braid(&unknot(), &[], alg).unwrap();
            assert_eq!(w, BraidWord::identity(1));
        }
    }

    #[test]
    fn to_braid_of_closure_is_exact_roundtrip() {
        let mut rng = crate::gen::SplitMix64::new(53);
        for _ in 0..40 {
            let w = crate::gen::random_word(&mut rng, 4, 7);
            let back = to_braid(&closure(&w), &[], Algorithm::Lr).unwrap();
            assert_eq!(back, w, "LR roundtrip");
            let back = to_braid(&closure(&w), &[], Algorithm::Kl).unwrap();
            assert_eq!(back, w, "KL roundtrip");
        }
    }

    #[test]
    fn to_braid_hopf_jones_matches_diagram_orientation() {
        // default orientation: the two crossings join an up-arc to a
        // down-arc, so the oriented diagram is the writhe -2 Hopf link
        for alg in [Algorithm::Lr, Algorithm::Kl] {
            let d = hopf(Sign::Pos);
            let w = to_braid(&d, &[], alg).unwrap();
            let got = normalized_jones(&canonicalize(&w)).unwrap();
            let want = crate::oracle::jones_of_diagram(&d, &[]).unwrap();
            assert_eq!(got, want, "{alg:?}");
            // flipping the outer component makes it the writhe +2 Hopf,
            // the closure of s1^2
            let w = to_braid(&d, &[true], alg).unwrap();
            let got = normalized_jones(&canonicalize(&w)).unwrap();
            let want = normalized_jones(&bw(2, &[1, 1])).unwrap();
            assert_eq!(got, want, "{alg:?} flipped");
        }
    }

    #[test]
    fn to_braid_random_diagrams_preserve_component_count_and_jones() {
        let mut rng = crate::gen::SplitMix64::new(4242);
        for case in 0..30 {
            let d = crate::gen::random_diagram(&mut rng, 6, 8);
            let want_components = d.components().unwrap();
            let want_jones = crate::oracle::jones_of_diagram(&d, &[]).unwrap();
            for alg in [Algorithm::Lr, Algorithm::Kl] {
                let w = to_braid(&d, &[], alg).unwrap();
                assert_eq!(w.closure_components(), want_components, "case {case} {alg:?}");
                let reduced = canonicalize(&w);
                let got = crate::oracle::normalized_jones_capped(&reduced, 12)
                    .unwrap_or_else(|e| panic!("case {case} {alg:?}: {e} on {reduced}"));
                assert_eq!(got, want_jones, "case {case} {alg:?}");
            }
        }
    }

    #[test]
    fn canonicalize_strips_stabilizations() {
        let w = bw(3, &[1, 2]);
        assert_eq!(canonicalize(&w), bw(1, &[]));
        assert_eq!(canonicalize(&bw(2, &[1, -1])), BraidWord::identity(2));
    }
}
