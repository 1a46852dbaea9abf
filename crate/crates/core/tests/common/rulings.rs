//! Rulings by brute force over switch sets, checked through the eyes they
//! cut the front into.

use legsat::diagram::GradedFront;
use legsat::ruling::LaurentPoly;
use legsat::EventKind;
use std::collections::BTreeSet;

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let p = self.0[x];
        if p == x {
            return x;
        }
        let r = self.find(p);
        self.0[x] = r;
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        self.0[a] = b;
    }
}

/// Whether the switch set is a normal ruling of a closed front graded as
/// in `g`: smoothing the switches leaves eyes, each with one left and one
/// right cusp and exactly two strands over every gap in between, crossings
/// that are not switched join different eyes, and the two eyes at a switch
/// are nested or disjoint there.
pub fn is_ruling_by_eyes(g: &GradedFront, switches: &BTreeSet<usize>) -> bool {
    let gaps = &g.trace.gaps;
    let mut offset = vec![0];
    for gap in gaps {
        offset.push(offset.last().unwrap() + gap.len());
    }
    let node = |gap: usize, pos: usize| offset[gap] + pos;
    let mut uf = UnionFind((0..*offset.last().unwrap()).collect());
    for (e, ev) in g.events.iter().enumerate() {
        let k = ev.pos;
        let before = gaps[e].len();
        match ev.kind {
            EventKind::Left => {
                for q in 0..before {
                    uf.union(node(e, q), node(e + 1, if q < k { q } else { q + 2 }));
                }
                uf.union(node(e + 1, k), node(e + 1, k + 1));
            }
            EventKind::Right => {
                for q in 0..before {
                    if q < k {
                        uf.union(node(e, q), node(e + 1, q));
                    } else if q > k + 1 {
                        uf.union(node(e, q), node(e + 1, q - 2));
                    }
                }
                uf.union(node(e, k), node(e, k + 1));
            }
            EventKind::Cross => {
                let switched = switches.contains(&e);
                if switched && g.crossing_degree(e) != 0 {
                    return false;
                }
                for q in 0..before {
                    let to = if switched || (q != k && q != k + 1) { q } else if q == k { k + 1 } else { k };
                    uf.union(node(e, q), node(e + 1, to));
                }
            }
        }
    }
    let eye = |uf: &mut UnionFind, gap: usize, pos: usize| uf.find(node(gap, pos));
    // each eye has exactly two positions in every gap it meets
    for (gi, gap) in gaps.iter().enumerate() {
        let ids: Vec<usize> = (0..gap.len()).map(|q| eye(&mut uf, gi, q)).collect();
        for &id in &ids {
            if ids.iter().filter(|&&x| x == id).count() != 2 {
                return false;
            }
        }
    }
    let mut lefts = std::collections::BTreeMap::new();
    let mut rights = std::collections::BTreeMap::new();
    for (e, ev) in g.events.iter().enumerate() {
        let k = ev.pos;
        match ev.kind {
            EventKind::Left => *lefts.entry(eye(&mut uf, e + 1, k)).or_insert(0) += 1,
            EventKind::Right => *rights.entry(eye(&mut uf, e, k)).or_insert(0) += 1,
            EventKind::Cross => {
                let (a, b) = (eye(&mut uf, e, k), eye(&mut uf, e, k + 1));
                if a == b {
                    return false;
                }
                if switches.contains(&e) {
                    let ids: Vec<usize> = (0..gaps[e].len()).map(|q| eye(&mut uf, e, q)).collect();
                    let other = |id: usize, not: usize| (0..ids.len()).find(|&q| ids[q] == id && q != not).unwrap();
                    let (pa, pb) = (other(a, k), other(b, k + 1));
                    let disjoint = pa < k && pb > k + 1;
                    let nested = (pb < pa && pa < k) || (k + 1 < pb && pb < pa);
                    if !(disjoint || nested) {
                        return false;
                    }
                }
            }
        }
    }
    lefts.values().all(|&c| c == 1) && rights.values().all(|&c| c == 1) && lefts.len() == rights.len()
}

pub fn naive_rulings(g: &GradedFront) -> Vec<BTreeSet<usize>> {
    let crossings = g.crossing_events();
    assert!(crossings.len() <= 20, "too many crossings for brute force");
    (0u64..1 << crossings.len())
        .map(|bits| (0..crossings.len()).filter(|&i| bits >> i & 1 == 1).map(|i| crossings[i]).collect())
        .filter(|s| is_ruling_by_eyes(g, s))
        .collect()
}

pub fn naive_polynomial(g: &GradedFront) -> LaurentPoly {
    let mut p = LaurentPoly::zero();
    for s in naive_rulings(g) {
        p.add_term(s.len() as i64 - g.right_cusp_count() as i64, 1);
    }
    p
}
