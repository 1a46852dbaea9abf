//! Normal rulings of graded fronts.
//!
//! A ruling is swept left to right as an involution on strand positions:
//! left cusps pair their two new strands, right cusps need their two strands
//! paired, and at a crossing the involution is either conjugated by the
//! transposition (no switch) or kept (switch). Generalized rulings of
//! annulus fronts may have fixed points.

pub mod bijection;
pub mod lift;
pub mod poly;

use crate::diagram::{EventKind, GradedFront};
use crate::error::{Error, Result};
pub use poly::LaurentPoly;
use serde_json::{json, Value};
use std::collections::{BTreeMap, HashMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Normal,
    Generalized,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalRuling {
    /// Involution on the positions at the left edge (empty for plat fronts).
    pub initial: Vec<usize>,
    /// Event indices of the switched crossings, increasing.
    pub switches: Vec<usize>,
    /// #switches - #right cusps.
    pub j: i64,
}

impl NormalRuling {
    pub fn to_json(&self, g: &GradedFront) -> Value {
        let crossings = g.crossing_events();
        let number = |e: usize| crossings.iter().position(|&c| c == e).map_or(0, |k| k + 1);
        json!({
            "initial_pairing": self.initial.iter().map(|&q| q + 1).collect::<Vec<_>>(),
            "switches": self.switches.iter().map(|&e| number(e)).collect::<Vec<_>>(),
            "j": self.j,
        })
    }
}

/// All involutions of `0..n` (fixed-point free unless `fixed`), in
/// lexicographic order.
pub fn involutions(n: usize, fixed: bool) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, fixed: bool, out: &mut Vec<Vec<usize>>) {
        let Some(i) = cur.iter().position(|&x| x == usize::MAX) else {
            out.push(cur.clone());
            return;
        };
        if fixed {
            cur[i] = i;
            rec(cur, fixed, out);
            cur[i] = usize::MAX;
        }
        for j in i + 1..cur.len() {
            if cur[j] == usize::MAX {
                cur[i] = j;
                cur[j] = i;
                rec(cur, fixed, out);
                cur[i] = usize::MAX;
                cur[j] = usize::MAX;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut vec![usize::MAX; n], fixed, &mut out);
    out.sort();
    out
}

/// Pairs must join an upper strand of potential one more than the lower.
fn pairing_is_graded(g: &GradedFront, inv: &[usize]) -> bool {
    let strands = &g.trace.gaps[0];
    (0..inv.len()).all(|a| {
        let b = inv[a];
        b <= a || g.reduce(g.mu[strands[a]] - g.mu[strands[b]] - 1) == 0
    })
}

/// Whether a switch at the crossing of positions `k`, `k + 1` keeps the
/// ruling normal. Fixed strands must stay clear of the other strand's disk;
/// a crossing of two fixed strands never switches.
pub fn switch_is_normal(inv: &[usize], k: usize) -> bool {
    let (a, b) = (inv[k], inv[k + 1]);
    match (a == k, b == k + 1) {
        (true, true) => false,
        (true, false) => b > k + 1,
        (false, true) => a < k,
        (false, false) => (a < k && b > k + 1) || (b < a && a < k) || (k + 1 < b && b < a),
    }
}

fn after_left(inv: &[usize], k: usize) -> Vec<usize> {
    let shift = |q: usize| if q < k { q } else { q + 2 };
    let mut out = vec![0; inv.len() + 2];
    for (q, &p) in inv.iter().enumerate() {
        out[shift(q)] = shift(p);
    }
    out[k] = k + 1;
    out[k + 1] = k;
    out
}

fn after_right(inv: &[usize], k: usize) -> Vec<usize> {
    let shift = |q: usize| if q < k { q } else { q - 2 };
    let mut out = vec![0; inv.len() - 2];
    for (q, &p) in inv.iter().enumerate() {
        if q != k && q != k + 1 {
            out[shift(q)] = shift(p);
        }
    }
    out
}

fn transposed(inv: &[usize], k: usize) -> Vec<usize> {
    let t = |q: usize| if q == k { k + 1 } else if q == k + 1 { k } else { q };
    let mut out = vec![0; inv.len()];
    for (q, &p) in inv.iter().enumerate() {
        out[t(q)] = t(p);
    }
    out
}

/// Outcomes of one event: (without switch, with switch). `None` marks a
/// dead branch.
fn step(g: &GradedFront, e: usize, inv: &[usize], switchable: bool) -> (Option<Vec<usize>>, Option<Vec<usize>>) {
    let ev = g.events[e];
    let k = ev.pos;
    match ev.kind {
        EventKind::Left => (Some(after_left(inv, k)), None),
        EventKind::Right => {
            if inv[k] == k + 1 {
                (Some(after_right(inv, k)), None)
            } else {
                (None, None)
            }
        }
        EventKind::Cross => {
            if inv[k] == k + 1 {
                return (None, None);
            }
            let plain = Some(transposed(inv, k));
            let sw = (switchable && g.crossing_degree(e) == 0 && switch_is_normal(inv, k)).then(|| inv.to_vec());
            (plain, sw)
        }
    }
}

fn initial_pairings(g: &GradedFront, mode: Mode) -> Vec<Vec<usize>> {
    if !g.closed {
        return vec![Vec::new()];
    }
    involutions(g.start, mode == Mode::Generalized).into_iter().filter(|inv| pairing_is_graded(g, inv)).collect()
}

fn switchable_mask(g: &GradedFront, forbidden: &[usize]) -> Vec<bool> {
    let mut m = vec![true; g.events.len()];
    for &e in forbidden {
        m[e] = false;
    }
    m
}

/// Every ruling of `g`, with switches forbidden at the events in
/// `forbidden`. Sorted by (initial pairing, switch set).
pub fn enumerate_restricted(g: &GradedFront, mode: Mode, forbidden: &[usize]) -> Vec<NormalRuling> {
    let mask = switchable_mask(g, forbidden);
    let rights = g.right_cusp_count() as i64;
    let mut out = Vec::new();
    for init in initial_pairings(g, mode) {
        let mut switches = Vec::new();
        dfs(g, &mask, 0, init.clone(), &init, &mut switches, rights, &mut out);
    }
    out.sort();
    out
}

#[allow(clippy::too_many_arguments)]
fn dfs(
    g: &GradedFront,
    mask: &[bool],
    e: usize,
    inv: Vec<usize>,
    init: &[usize],
    switches: &mut Vec<usize>,
    rights: i64,
    out: &mut Vec<NormalRuling>,
) {
    if e == g.events.len() {
        if inv == init {
            out.push(NormalRuling { initial: init.to_vec(), switches: switches.clone(), j: switches.len() as i64 - rights });
        }
        return;
    }
    let (plain, sw) = step(g, e, &inv, mask[e]);
    if let Some(next) = plain {
        dfs(g, mask, e + 1, next, init, switches, rights, out);
    }
    if let Some(next) = sw {
        switches.push(e);
        dfs(g, mask, e + 1, next, init, switches, rights, out);
        switches.pop();
    }
}

pub fn enumerate(g: &GradedFront, mode: Mode) -> Vec<NormalRuling> {
    enumerate_restricted(g, mode, &[])
}

/// Ruling polynomial by a forward sweep over states, without listing the
/// rulings.
pub fn polynomial_restricted(g: &GradedFront, mode: Mode, forbidden: &[usize]) -> LaurentPoly {
    let mask = switchable_mask(g, forbidden);
    let rights = g.right_cusp_count() as i64;
    let mut total = LaurentPoly::zero();
    for init in initial_pairings(g, mode) {
        let mut layer: HashMap<Vec<usize>, BTreeMap<i64, u64>> = HashMap::new();
        layer.insert(init.clone(), BTreeMap::from([(0, 1)]));
        for e in 0..g.events.len() {
            let mut next: HashMap<Vec<usize>, BTreeMap<i64, u64>> = HashMap::new();
            for (inv, counts) in &layer {
                let (plain, sw) = step(g, e, inv, mask[e]);
                for (state, extra) in [(plain, 0), (sw, 1)] {
                    if let Some(state) = state {
                        let slot = next.entry(state).or_default();
                        for (&s, &c) in counts {
                            *slot.entry(s + extra).or_insert(0) += c;
                        }
                    }
                }
            }
            layer = next;
        }
        if let Some(counts) = layer.get(&init) {
            for (&s, &c) in counts {
                total.add_term(s - rights, c);
            }
        }
    }
    total
}

pub fn polynomial(g: &GradedFront, mode: Mode) -> LaurentPoly {
    polynomial_restricted(g, mode, &[])
}

/// Involution at every gap of `g` determined by `r`, after checking every
/// ruling condition.
pub fn involution_trace(g: &GradedFront, r: &NormalRuling, mode: Mode) -> Result<Vec<Vec<usize>>> {
    let bad = |msg: String| Err(Error::Precondition(format!("not a ruling: {msg}")));
    let expected_len = if g.closed { g.start } else { 0 };
    if r.initial.len() != expected_len {
        return bad("initial pairing has the wrong size".into());
    }
    let is_involution = r.initial.iter().enumerate().all(|(a, &b)| b < r.initial.len() && r.initial[b] == a);
    if !is_involution {
        return bad("initial pairing is not an involution".into());
    }
    if mode == Mode::Normal && r.initial.iter().enumerate().any(|(a, &b)| a == b) {
        return bad("fixed point in a normal ruling".into());
    }
    if !pairing_is_graded(g, &r.initial) {
        return bad("initial pairing violates the grading".into());
    }
    let mut inv = r.initial.clone();
    let mut out = vec![inv.clone()];
    for e in 0..g.events.len() {
        let switched = r.switches.binary_search(&e).is_ok();
        if switched && g.events[e].kind != EventKind::Cross {
            return bad(format!("switch at cusp event {e}"));
        }
        let (plain, sw) = step(g, e, &inv, true);
        inv = match (switched, plain, sw) {
            (false, Some(s), _) => s,
            (true, _, Some(s)) => s,
            _ => return bad(format!("fails at event {e}")),
        };
        out.push(inv.clone());
    }
    if inv != r.initial {
        return bad("does not close up".into());
    }
    if r.j != r.switches.len() as i64 - g.right_cusp_count() as i64 {
        return bad("wrong j".into());
    }
    Ok(out)
}

pub fn is_ruling(g: &GradedFront, r: &NormalRuling, mode: Mode) -> bool {
    involution_trace(g, r, mode).is_ok()
}

/// Ruling with the given switch set, if it is one (plat fronts, or annulus
/// fronts with an explicit initial pairing).
pub fn ruling_with(g: &GradedFront, initial: Vec<usize>, mut switches: Vec<usize>, mode: Mode) -> Result<NormalRuling> {
    switches.sort_unstable();
    switches.dedup();
    let j = switches.len() as i64 - g.right_cusp_count() as i64;
    let r = NormalRuling { initial, switches, j };
    involution_trace(g, &r, mode)?;
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::patterns::basic_product;
    use crate::parse_front;

    #[test]
    fn unknot_and_trefoil() {
        let u = parse_front("L1; R1").unwrap().graded(1).unwrap();
        let rs = enumerate(&u, Mode::Normal);
        assert_eq!(rs.len(), 1);
        assert_eq!(rs[0].j, -1);
        let t = parse_front("L1; L3; X2; X2; X2; R1; R3").unwrap().graded(1).unwrap();
        assert_eq!(polynomial(&t, Mode::Normal), LaurentPoly::from_terms(&[(1, 1), (-1, 2)]));
        assert_eq!(enumerate(&t, Mode::Normal).len(), 3);
    }

    #[test]
    fn basic_patterns() {
        let a11 = basic_product(&[(1, 0), (1, 0)]).unwrap().graded(1).unwrap();
        assert_eq!(enumerate(&a11, Mode::Normal).len(), 1);
        assert_eq!(enumerate(&a11, Mode::Generalized).len(), 2);
        assert_eq!(polynomial(&a11, Mode::Normal), LaurentPoly::monomial(0, 1));
        let a2 = basic_product(&[(2, 0)]).unwrap().graded(1).unwrap();
        assert!(enumerate(&a2, Mode::Normal).is_empty());
        assert_eq!(enumerate(&a2, Mode::Generalized).len(), 1);
    }

    #[test]
    fn involution_counts() {
        assert_eq!(involutions(4, false).len(), 3);
        assert_eq!(involutions(4, true).len(), 10);
        assert_eq!(involutions(0, false), vec![Vec::<usize>::new()]);
    }
}
