//! Legendrian Reidemeister moves and planar commutations on event words.
//!
//! Local forms, 0-based, for a strand `s` at position `i`:
//! - kink below `s`: `L(i+1) X(i) R(i+1)`; kink above: `L(i) X(i+1) R(i)`
//! - left cusp poking through a strand above: `L(j)` = `L(j-1) X(j) X(j-1)`,
//!   below: `L(j)` = `L(j+1) X(j) X(j+1)`
//! - right cusp: `R(j)` = `X(j-1) X(j) R(j-1)` (strand above),
//!   `R(j)` = `X(j+1) X(j) R(j+1)` (strand below)
//! - triple point: `X(i) X(i+1) X(i)` = `X(i+1) X(i) X(i+1)`

use super::{Basepoint, Event, EventKind, PlatFront, Trace};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Move {
    /// Type I: add a kink on the strand at (`gap`, `pos`).
    KinkIn { gap: usize, pos: usize, above: bool },
    /// Type I inverse: remove the kink whose left cusp is event `at`.
    KinkOut { at: usize },
    /// Type II: the cusp at event `at` pokes through the neighbouring strand.
    PokeIn { at: usize, above: bool },
    /// Type II inverse: collapse the three events starting at `at`.
    PokeOut { at: usize },
    /// Type III at events `at..at+3`.
    Triangle { at: usize },
    /// Planar isotopy exchanging the x-order of events `at` and `at + 1`.
    Commute { at: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MoveType {
    I,
    II,
    III,
    Planar,
}

impl Move {
    pub fn kind(&self) -> MoveType {
        match self {
            Move::KinkIn { .. } | Move::KinkOut { .. } => MoveType::I,
            Move::PokeIn { .. } | Move::PokeOut { .. } => MoveType::II,
            Move::Triangle { .. } => MoveType::III,
            Move::Commute { .. } => MoveType::Planar,
        }
    }
}

fn merr(m: impl Into<String>) -> Error {
    Error::Move(m.into())
}

/// Replace `len` events starting at `at` by `new`. Basepoints strictly inside
/// the replaced window are not allowed; those after it are shifted.
fn splice(front: &PlatFront, at: usize, len: usize, new: &[Event]) -> Result<PlatFront> {
    let mut events = front.events().to_vec();
    events.splice(at..at + len, new.iter().copied());
    let mut bps = Vec::new();
    for b in front.basepoints() {
        let mut b = *b;
        if b.gap > at && b.gap < at + len {
            return Err(merr("a basepoint lies inside the move"));
        }
        if b.gap > at {
            b.gap = b.gap + new.len() - len;
        }
        bps.push(b);
    }
    PlatFront::new(events, bps)
}

fn ev(front: &PlatFront, i: usize) -> Option<Event> {
    front.events().get(i).copied()
}

fn footprint(e: Event, after: bool) -> (isize, isize) {
    // Positions doubled; a boundary between p-1 and p is 2p-1.
    let p = 2 * e.pos as isize;
    match (e.kind, after) {
        (EventKind::Left, false) | (EventKind::Right, true) => (p - 1, p - 1),
        _ => (p, p + 2),
    }
}

fn net(e: Event) -> isize {
    match e.kind {
        EventKind::Left => 2,
        EventKind::Right => -2,
        EventKind::Cross => 0,
    }
}

/// Exchange two consecutive events if they act on separate strands. Returns
/// the new pair in order. A right cusp followed by a left cusp at the same
/// spot keeps the right cusp on top.
pub fn commute_pair(a: Event, b: Event) -> Option<(Event, Event)> {
    let (a_lo, a_hi) = footprint(a, true);
    let (b_lo, b_hi) = footprint(b, false);
    let tie_below = a.kind == EventKind::Right && b.kind == EventKind::Left && a_lo == b_lo;
    // equal even ends would share a strand position
    if b_hi < a_lo {
        // b above a
        let a2 = Event { kind: a.kind, pos: (a.pos as isize + net(b)) as usize };
        Some((b, a2))
    } else if b_lo > a_hi || tie_below {
        let b2 = Event { kind: b.kind, pos: (b.pos as isize - net(a)) as usize };
        Some((b2, a))
    } else {
        None
    }
}

/// Where a basepoint in the middle gap of a commutation ends up: on the same
/// strand, in the new middle gap if the strand is there, otherwise in the
/// outer gap on its side.
fn relocate(front: &PlatFront, at: usize, new: &[Event; 2], b: Basepoint) -> Basepoint {
    let old = front.trace();
    let s = old.gaps[at + 1][b.pos];
    let touches = |i: usize| old.touched[i].0 == s || old.touched[i].1 == s;
    if front.events()[at].kind == EventKind::Left && touches(at) {
        let pos = old.gaps[at + 2].iter().position(|&x| x == s).unwrap();
        return Basepoint { gap: at + 2, pos, ..b };
    }
    if front.events()[at + 1].kind == EventKind::Right && touches(at + 1) {
        let pos = old.gaps[at].iter().position(|&x| x == s).unwrap();
        return Basepoint { gap: at, pos, ..b };
    }
    // s exists before `at`, where strand ids agree between the two words
    let mut events = front.events().to_vec();
    events[at] = new[0];
    events[at + 1] = new[1];
    let t = Trace::new(0, &events).expect("commuted word is valid");
    let pos = t.gaps[at + 1].iter().position(|&x| x == s).unwrap();
    Basepoint { gap: at + 1, pos, ..b }
}

pub fn apply_move(front: &PlatFront, m: Move) -> Result<PlatFront> {
    match m {
        Move::KinkIn { gap, pos, above } => {
            let trace = front.trace();
            if gap >= trace.gaps.len() || pos >= trace.gaps[gap].len() {
                return Err(merr("no strand at the given site"));
            }
            let new = if above {
                [Event::left(pos), Event::cross(pos + 1), Event::right(pos)]
            } else {
                [Event::left(pos + 1), Event::cross(pos), Event::right(pos + 1)]
            };
            splice(front, gap, 0, &new)
        }
        Move::KinkOut { at } => {
            let w: Vec<Event> = (at..at + 3).filter_map(|i| ev(front, i)).collect();
            let ok = w.len() == 3
                && w[0].kind == EventKind::Left
                && w[1].kind == EventKind::Cross
                && w[2].kind == EventKind::Right
                && w[2].pos == w[0].pos
                && (w[1].pos + 1 == w[0].pos || w[1].pos == w[0].pos + 1);
            if !ok {
                return Err(merr(format!("no kink at event {at}")));
            }
            splice(front, at, 3, &[])
        }
        Move::PokeIn { at, above } => {
            let e = ev(front, at).ok_or_else(|| merr("no such event"))?;
            let count = front.trace().gaps[at].len();
            let j = e.pos;
            let new = match (e.kind, above) {
                (EventKind::Left, true) if j >= 1 => [Event::left(j - 1), Event::cross(j), Event::cross(j - 1)],
                (EventKind::Left, false) if j < count => {
                    [Event::left(j + 1), Event::cross(j), Event::cross(j + 1)]
                }
                (EventKind::Right, true) if j >= 1 => [Event::cross(j - 1), Event::cross(j), Event::right(j - 1)],
                (EventKind::Right, false) if j + 2 < count => {
                    [Event::cross(j + 1), Event::cross(j), Event::right(j + 1)]
                }
                _ => return Err(merr(format!("event {at} has no neighbouring strand to poke"))),
            };
            splice(front, at, 1, &new)
        }
        Move::PokeOut { at } => {
            let w: Vec<Event> = (at..at + 3).filter_map(|i| ev(front, i)).collect();
            if w.len() < 3 {
                return Err(merr("window too short"));
            }
            use EventKind::*;
            let (a, b, c) = (w[0], w[1], w[2]);
            let single = match (a.kind, b.kind, c.kind) {
                (Left, Cross, Cross) if b.pos == a.pos + 1 && c.pos == a.pos => Some(Event::left(a.pos + 1)),
                (Left, Cross, Cross) if a.pos >= 1 && b.pos == a.pos - 1 && c.pos == a.pos => {
                    Some(Event::left(a.pos - 1))
                }
                (Cross, Cross, Right) if b.pos == a.pos + 1 && c.pos == a.pos => Some(Event::right(a.pos + 1)),
                (Cross, Cross, Right) if a.pos >= 1 && b.pos == a.pos - 1 && c.pos == a.pos => {
                    Some(Event::right(b.pos))
                }
                _ => None,
            };
            let single = single.ok_or_else(|| merr(format!("no type II pattern at event {at}")))?;
            splice(front, at, 3, &[single])
        }
        Move::Triangle { at } => {
            let w: Vec<Event> = (at..at + 3).filter_map(|i| ev(front, i)).collect();
            let ok = w.len() == 3
                && w.iter().all(|e| e.kind == EventKind::Cross)
                && w[0].pos == w[2].pos
                && (w[1].pos == w[0].pos + 1 || w[1].pos + 1 == w[0].pos);
            if !ok {
                return Err(merr(format!("no triple point at event {at}")));
            }
            let (i, k) = (w[0].pos, w[1].pos);
            splice(front, at, 3, &[Event::cross(k), Event::cross(i), Event::cross(k)])
        }
        Move::Commute { at } => {
            let (a, b) = (ev(front, at), ev(front, at + 1));
            let (a, b) = a.zip(b).ok_or_else(|| merr("no such events"))?;
            let (b2, a2) = commute_pair(a, b).ok_or_else(|| merr(format!("events {at} and {} interact", at + 1)))?;
            let mut events = front.events().to_vec();
            events[at] = b2;
            events[at + 1] = a2;
            let mut bps = Vec::new();
            for &bp in front.basepoints() {
                if bp.gap == at + 1 {
                    bps.push(relocate(front, at, &[b2, a2], bp));
                } else {
                    bps.push(bp);
                }
            }
            PlatFront::new(events, bps)
        }
    }
}

/// All moves that currently apply, with kinks offered on every strand of
/// every gap.
pub fn applicable_moves(front: &PlatFront) -> Vec<Move> {
    let mut out = Vec::new();
    let n = front.events().len();
    let trace = front.trace();
    for gap in 0..=n {
        for pos in 0..trace.gaps[gap].len() {
            out.push(Move::KinkIn { gap, pos, above: true });
            out.push(Move::KinkIn { gap, pos, above: false });
        }
    }
    for at in 0..n {
        let mut cands = vec![Move::KinkOut { at }, Move::PokeOut { at }, Move::Triangle { at }, Move::Commute { at }];
        if front.events()[at].is_cusp() {
            cands.push(Move::PokeIn { at, above: true });
            cands.push(Move::PokeIn { at, above: false });
        }
        for m in cands {
            if apply_move(front, m).is_ok() {
                out.push(m);
            }
        }
    }
    out
}

fn pin_orientation(front: &PlatFront) -> Result<PlatFront> {
    if front.basepoints().is_empty() {
        front.with_basepoints(front.basepoints_or_default())
    } else {
        Ok(front.clone())
    }
}

/// Legendrian isotopy to plat position: each stray left cusp pokes up to the
/// top strand and slides left past everything that is not a left cusp, then
/// each stray right cusp does the same to the right. Basepoints ride along;
/// with none given, the default one is pinned first.
pub fn plat_position(front: &PlatFront) -> Result<PlatFront> {
    let mut f = pin_orientation(front)?;
    let kind = |f: &PlatFront, i: usize| f.events()[i].kind;
    while let Some(mut at) = (1..f.events().len()).find(|&i| kind(&f, i) == EventKind::Left && kind(&f, i - 1) != EventKind::Left) {
        while at > 0 && kind(&f, at - 1) != EventKind::Left {
            match apply_move(&f, Move::Commute { at: at - 1 }) {
                Ok(g) => {
                    f = g;
                    at -= 1;
                }
                Err(_) => f = apply_move(&f, Move::PokeIn { at, above: true })?,
            }
        }
    }
    let len = |f: &PlatFront| f.events().len();
    while let Some(mut at) =
        (0..len(&f) - 1).rev().find(|&i| kind(&f, i) == EventKind::Right && kind(&f, i + 1) != EventKind::Right)
    {
        while at + 1 < len(&f) && kind(&f, at + 1) != EventKind::Right {
            match apply_move(&f, Move::Commute { at }) {
                Ok(g) => {
                    f = g;
                    at += 1;
                }
                Err(_) => {
                    f = apply_move(&f, Move::PokeIn { at, above: true })?;
                    at += 2;
                }
            }
        }
    }
    if !f.has_simple_right_cusps() {
        f = unnest_right_cusps(f)?;
    }
    debug_assert!(f.has_simple_right_cusps());
    Ok(f)
}

/// Brings every right cusp of the final run to the top position: a cusp
/// lower down pokes up and its two new crossings slide left of the cusps
/// already done.
fn unnest_right_cusps(mut f: PlatFront) -> Result<PlatFront> {
    let mut start = f.events().iter().position(|e| e.kind == EventKind::Right).unwrap_or(f.events().len());
    let mut at = start;
    while at < f.events().len() {
        while f.events()[at].pos > 0 {
            f = apply_move(&f, Move::PokeIn { at, above: true })?;
            for offset in 0..2 {
                let mut c = at + offset;
                while c > start + offset {
                    f = apply_move(&f, Move::Commute { at: c - 1 })?;
                    c -= 1;
                }
            }
            start += 2;
            at += 2;
        }
        at += 1;
    }
    Ok(f)
}

/// Add a zigzag so that tb drops by one and r moves by `+1` (positive) or
/// `-1`. The zigzag sits next to the basepoint; a plat front stays plat.
pub fn stabilize(front: &PlatFront, positive: bool) -> Result<PlatFront> {
    // Pin the orientation: the default one follows the first left cusp,
    // which changes below.
    let pinned = pin_orientation(front)?;
    let front = &pinned;
    let plat = front.is_plat();
    let dir = front.orientation()?;
    let trace = front.trace();
    let bp = front
        .basepoints_or_default()
        .first()
        .copied()
        .ok_or_else(|| Error::Precondition("empty front".into()))?;
    let comps = front.components();
    let comp = comps.of_strand[trace.gaps[bp.gap][bp.pos]];
    // For plat fronts the zigzag goes in the crossing region so that the new
    // cusps only have to pass crossings and cusps of their own kind.
    let (gap, pos) = if plat {
        let lo = front.count(EventKind::Left);
        let hi = lo + front.crossing_count();
        if (lo..=hi).contains(&bp.gap) {
            (bp.gap, bp.pos)
        } else {
            let pos = trace.gaps[lo].iter().position(|&s| comps.of_strand[s] == comp).unwrap();
            (lo, pos)
        }
    } else {
        (bp.gap, bp.pos)
    };
    let rightward = dir[trace.gaps[gap][pos]];
    let down = positive == rightward;
    let zig = if down {
        [Event::left(pos + 1), Event::right(pos)]
    } else {
        [Event::left(pos), Event::right(pos + 1)]
    };
    let mut f = splice(front, gap, 0, &zig)?;
    if !plat {
        return Ok(f);
    }
    let mut l_at = gap;
    let mut pokes = 0;
    while f.events()[l_at].pos > 0 {
        f = apply_move(&f, Move::PokeIn { at: l_at, above: true })?;
        pokes += 1;
    }
    while l_at > 0 {
        f = apply_move(&f, Move::Commute { at: l_at - 1 })?;
        l_at -= 1;
    }
    let mut r_at = gap + 1 + 2 * pokes;
    debug_assert_eq!(f.events()[r_at].kind, EventKind::Right);
    while f.events()[r_at].pos > 0 {
        f = apply_move(&f, Move::PokeIn { at: r_at, above: true })?;
        r_at += 2;
    }
    while r_at + 1 < f.events().len() {
        f = apply_move(&f, Move::Commute { at: r_at })?;
        r_at += 1;
    }
    if !f.has_simple_right_cusps() {
        f = unnest_right_cusps(f)?;
    }
    debug_assert!(f.has_simple_right_cusps());
    Ok(f)
}
