//! Lifting a ruling of K with at least as many switches as right cusps to a
//! ruling of S(K, A_2).
//!
//! The paired paths of the ruling bound disks, one per right cusp; switches
//! join two disks. With s >= c switches the graph of disks and switches has
//! a cycle, whose switches are called distinguished. The A_2 crossing goes
//! in the middle of the doubled crossing of the first distinguished switch
//! D, and the switches of the lift are chosen per doubled crossing of K:
//! none at doubled cusps or at doubled non-switches, and a fixed local
//! pattern at D, at the other distinguished switches and at the remaining
//! switches.
//!
//! The figure giving the three local patterns has no text description; the
//! table below was found by exhaustive search over all 2^13 choices on
//! T(2,3), T(2,5) and T(2,7) at p = 1, 2 (14 tables work for every ruling
//! with s >= c; this is the one that doubles plain switches).

use super::{involution_trace, ruling_with, Mode, NormalRuling};
use crate::diagram::{Event, EventKind, GradedFront, PlatFront};
use crate::error::{Error, Result};
use crate::satellite::{n_copy, Provenance, Source};

/// Copies (upper, lower) of the four crossings of a doubled crossing, in
/// x-order.
const BLOCK: [(usize, usize); 4] = [(1, 0), (0, 0), (1, 1), (0, 1)];

/// Switch patterns as bit masks over the crossings of a doubled crossing in
/// x-order. At D the A_2 crossing sits between the second and third, so its
/// mask has five bits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LiftTable {
    pub first: u8,
    pub distinguished: u8,
    pub plain: u8,
}

/// At a plain switch both copies switch on their own (u1×v1, u2×v2). At a
/// distinguished switch the copies trade places (u2×v1, u1×v2), and at D the
/// A_2 crossing switches as well.
pub const TABLE: LiftTable = LiftTable { first: 0b10101, distinguished: 0b1001, plain: 0b0110 };

/// Switches of `r` on a cycle of the disk graph, in x-order.
pub fn distinguished_switches(g: &GradedFront, r: &NormalRuling) -> Result<Vec<usize>> {
    let invs = involution_trace(g, r, Mode::Normal)?;
    // disk label of every position, carried along the sweep
    let mut disk: Vec<usize> = Vec::new();
    let mut next = 0;
    let mut edges: Vec<(usize, usize, usize)> = Vec::new();
    for (e, ev) in g.events.iter().enumerate() {
        let k = ev.pos;
        match ev.kind {
            EventKind::Left => {
                disk.splice(k..k, [next, next]);
                next += 1;
            }
            EventKind::Right => {
                disk.drain(k..k + 2);
            }
            EventKind::Cross => {
                if r.switches.binary_search(&e).is_ok() {
                    edges.push((disk[k], disk[k + 1], e));
                } else {
                    disk.swap(k, k + 1);
                }
            }
        }
        debug_assert!(invs[e + 1].iter().enumerate().all(|(a, &b)| disk[a] == disk[b]));
    }
    // first edge closing a cycle in a spanning forest
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; next];
    let mut root: Vec<usize> = (0..next).collect();
    fn find(root: &mut Vec<usize>, x: usize) -> usize {
        if root[x] != x {
            let r = find(root, root[x]);
            root[x] = r;
        }
        root[x]
    }
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); next];
    for &(a, b, e) in &edges {
        let (ra, rb) = (find(&mut root, a), find(&mut root, b));
        if ra == rb {
            // path from a to b in the forest, plus this edge
            let path = forest_path(&adj, a, b, &mut parent);
            let mut cycle: Vec<usize> = path.into_iter().chain([e]).collect();
            cycle.sort_unstable();
            return Ok(cycle);
        }
        root[ra] = rb;
        adj[a].push((b, e));
        adj[b].push((a, e));
    }
    Err(Error::Internal("no cycle in the disk graph".into()))
}

fn forest_path(adj: &[Vec<(usize, usize)>], a: usize, b: usize, parent: &mut [Option<(usize, usize)>]) -> Vec<usize> {
    parent.iter_mut().for_each(|p| *p = None);
    let mut seen = vec![false; adj.len()];
    let mut stack = vec![a];
    seen[a] = true;
    while let Some(x) = stack.pop() {
        for &(y, e) in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                parent[y] = Some((x, e));
                stack.push(y);
            }
        }
    }
    let mut path = Vec::new();
    let mut cur = b;
    while cur != a {
        let (p, e) = parent[cur].expect("connected in the forest");
        path.push(e);
        cur = p;
    }
    path
}

/// The front of S(K, A_2) with the pattern crossing inside the doubled
/// crossing `d`, and the events of every doubled crossing (five at `d`).
pub struct LiftFront {
    pub graded: GradedFront,
    pub blocks: Vec<(usize, Vec<usize>)>,
}

pub fn lift_front(k: &PlatFront, modulus: u32, d: usize) -> Result<LiftFront> {
    let double = n_copy(k, 2, modulus)?;
    let at = |m: usize, c: (usize, usize)| {
        double.event_of(&Provenance { source: Source::Crossing, event: m, upper: c.0, lower: c.1 }).expect("doubled crossing")
    };
    let insert_after = at(d, BLOCK[1]);
    let mut events: Vec<Event> = double.graded.events.clone();
    let kpos = k.events()[d].pos;
    events.insert(insert_after + 1, Event::cross(2 * kpos + 1));
    let renumber = |e: usize| if e > insert_after { e + 1 } else { e };
    let graded = GradedFront::from_parts(0, events, false, modulus, double.graded.mu.clone())?;
    let mut blocks = Vec::new();
    for (m, ev) in k.events().iter().enumerate() {
        if ev.kind != EventKind::Cross {
            continue;
        }
        let mut evs: Vec<usize> = BLOCK.iter().map(|&c| renumber(at(m, c))).collect();
        if m == d {
            evs.insert(2, insert_after + 1);
        }
        blocks.push((m, evs));
    }
    Ok(LiftFront { graded, blocks })
}

pub struct Lift {
    pub front: LiftFront,
    pub ruling: NormalRuling,
    pub distinguished: Vec<usize>,
}

fn switches_for(lf: &LiftFront, switch_of: &dyn Fn(usize) -> Option<u8>) -> Vec<usize> {
    let mut out = Vec::new();
    for (m, evs) in &lf.blocks {
        if let Some(mask) = switch_of(*m) {
            out.extend(evs.iter().enumerate().filter(|&(b, _)| mask >> b & 1 == 1).map(|(_, &e)| e));
        }
    }
    out
}

/// Companion switch events of `r` and the distinguished ones, as companion
/// event indices.
fn classify(k: &PlatFront, modulus: u32, r: &NormalRuling) -> Result<(GradedFront, Vec<usize>)> {
    let g = k.graded(modulus)?;
    let c = g.right_cusp_count();
    if r.switches.len() < c {
        return Err(Error::Precondition(format!("{} switches but {c} right cusps", r.switches.len())));
    }
    let dist = distinguished_switches(&g, r)?;
    Ok((g, dist))
}

fn mask_for(table: LiftTable, switches: &[usize], dist: &[usize], m: usize) -> Option<u8> {
    if m == dist[0] {
        Some(table.first)
    } else if dist.contains(&m) {
        Some(table.distinguished)
    } else if switches.contains(&m) {
        Some(table.plain)
    } else {
        None
    }
}

pub fn lift_ruling_to_double(k: &PlatFront, modulus: u32, r: &NormalRuling) -> Result<Lift> {
    lift_with_table(k, modulus, r, TABLE)
}

pub fn lift_with_table(k: &PlatFront, modulus: u32, r: &NormalRuling, table: LiftTable) -> Result<Lift> {
    let (_, dist) = classify(k, modulus, r)?;
    let lf = lift_front(k, modulus, dist[0])?;
    let switches = switches_for(&lf, &|m| mask_for(table, &r.switches, &dist, m));
    let ruling = ruling_with(&lf.graded, Vec::new(), switches, Mode::Normal)
        .map_err(|e| Error::Internal(format!("lifted switches do not form a ruling: {e}")))?;
    Ok(Lift { front: lf, ruling, distinguished: dist })
}

/// Every table that lifts `r`.
pub fn search_tables(k: &PlatFront, modulus: u32, r: &NormalRuling) -> Result<Vec<LiftTable>> {
    let (_, dist) = classify(k, modulus, r)?;
    let lf = lift_front(k, modulus, dist[0])?;
    let mut out = Vec::new();
    for first in 0..32u8 {
        for distinguished in 0..16u8 {
            for plain in 0..16u8 {
                let table = LiftTable { first, distinguished, plain };
                let switches = switches_for(&lf, &|m| mask_for(table, &r.switches, &dist, m));
                if ruling_with(&lf.graded, Vec::new(), switches, Mode::Normal).is_ok() {
                    out.push(table);
                }
            }
        }
    }
    Ok(out)
}
