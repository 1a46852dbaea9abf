//! Brute-force disk count for small fronts, independent of the sweep.
//!
//! A disk is described by the cells it covers in every gap (cell c lies
//! between the strands at positions c and c+1). Every interval of cells is
//! tried in every gap, and a choice is kept when the picture around each
//! event is that of an embedded disk: cells away from the event continue
//! unchanged, a crossing is covered in 0, 1 (convex corner), 2 adjacent or
//! 4 quadrants, and a cusp is either inside the disk or closes it.
//! Right cusps are never negative corners, which holds once no right cusp
//! is nested inside another.

use super::{FreeDGA, GenKind};
use crate::diagram::{EventKind, PlatFront, Trace};
use crate::error::Result;
use crate::pathmatrix::ncpoly::{concat_into, inverse_letter, letter, Letter, NCPoly, Word};

/// Covered cells `a..b` of a gap; `None` once the disk has closed.
type Slice = Option<(usize, usize)>;

fn covered(s: Slice, c: isize) -> bool {
    matches!(s, Some((a, b)) if c >= a as isize && c < b as isize)
}

struct Search<'a> {
    front: &'a PlatFront,
    dga: &'a FreeDGA,
    trace: Trace,
    dir: Vec<bool>,
    max_corners: usize,
    found: Vec<(Word, Word)>,
}

impl Search<'_> {
    fn marks(&self, gap: usize, pos: usize, upper: bool) -> Word {
        let trace = &self.trace;
        let g = self.dga.generators.len();
        let mut out = Vec::new();
        let mut ids: Vec<usize> =
            (0..self.dga.basepoints.len()).filter(|&j| (self.dga.basepoints[j].gap, self.dga.basepoints[j].pos) == (gap, pos)).collect();
        let rightward = self.dir[trace.gaps[gap][pos]];
        if rightward {
            ids.reverse();
        }
        for j in ids {
            let sym = (g + j) as u32;
            // a boundary path counts +1 when it runs along the orientation:
            // the upper path runs leftward, the lower one rightward
            out.push(if upper != rightward { letter(sym) } else { inverse_letter(sym) });
        }
        out
    }

    /// Whether slices `left` and `right` fit around event `e`, and the corner
    /// letter it adds to the upper or the lower boundary.
    fn fits(&self, e: usize, left: Slice, right: Slice) -> Option<(Option<Letter>, Option<Letter>)> {
        let ev = self.front.events()[e];
        let j = ev.pos as isize;
        let trace = &self.trace;
        let n_left = trace.gaps[e].len() as isize;
        let cells = |n: isize| -1..n;
        match ev.kind {
            EventKind::Cross => {
                for c in cells(n_left) {
                    if c != j && covered(left, c) != covered(right, c) {
                        return None;
                    }
                }
                let q = (covered(right, j - 1), covered(left, j), covered(right, j), covered(right, j + 1));
                let a = self.dga.generators.iter().position(|g| g.event == e && g.kind == GenKind::Crossing)?;
                let a = letter(a as u32);
                match q {
                    (false, false, false, false) | (true, true, true, true) => Some((None, None)),
                    (true, true, false, false) | (true, false, true, false) | (false, true, false, true) | (false, false, true, true) => {
                        Some((None, None))
                    }
                    (true, false, false, false) => Some((None, Some(a))),
                    (false, false, false, true) => Some((Some(a), None)),
                    _ => None,
                }
            }
            EventKind::Left => {
                // right cells: c < j-1 and c > j+1 continue left cells c and c-2
                let n_right = n_left + 2;
                for c in cells(n_right) {
                    let l = if c < j - 1 {
                        c
                    } else if c > j + 1 {
                        c - 2
                    } else {
                        continue;
                    };
                    if covered(right, c) != covered(left, l) {
                        return None;
                    }
                }
                let (above, inside, below, outer) =
                    (covered(right, j - 1), covered(right, j), covered(right, j + 1), covered(left, j - 1));
                if above != outer || below != outer {
                    return None;
                }
                if outer && !inside {
                    return None;
                }
                Some((None, None))
            }
            EventKind::Right => {
                for c in cells(n_left) {
                    let r = if c < j - 1 {
                        c
                    } else if c > j + 1 {
                        c - 2
                    } else {
                        continue;
                    };
                    if covered(left, c) != covered(right, r) {
                        return None;
                    }
                }
                let (above, inside, below, outer) =
                    (covered(left, j - 1), covered(left, j), covered(left, j + 1), covered(right, j - 1));
                if above != outer || below != outer || inside != outer {
                    return None;
                }
                Some((None, None))
            }
        }
    }

    /// Extend a disk whose slice at `gap` is `s` to the left.
    fn extend(&mut self, gap: usize, s: (usize, usize), up: Word, low: Word, corners: usize) {
        let mut up = up;
        let mut low = low;
        up.extend(self.marks(gap, s.0, true));
        low.extend(self.marks(gap, s.1, false));
        if gap == 0 {
            return;
        }
        let e = gap - 1;
        let trace = &self.trace;
        let n = trace.gaps[e].len();
        // closing at a left cusp
        if let Some((None, None)) = self.fits(e, None, Some(s)) {
            if self.front.events()[e].kind == EventKind::Left {
                self.found.push((up.clone(), low.clone()));
            }
        }
        for a in 0..n {
            for b in a + 1..n {
                let Some((cu, cl)) = self.fits(e, Some((a, b)), Some(s)) else { continue };
                let extra = cu.is_some() as usize + cl.is_some() as usize;
                if corners + extra > self.max_corners {
                    continue;
                }
                let mut u2 = up.clone();
                u2.extend(cu);
                let mut l2 = low.clone();
                l2.extend(cl);
                self.extend(e, (a, b), u2, l2, corners + extra);
            }
        }
    }
}

/// The differential of `dga` (built from `front`) recomputed by brute force,
/// keeping disks with at most `max_corners` negative corners.
pub fn brute_force_differential(front: &PlatFront, dga: &FreeDGA, max_corners: usize) -> Result<Vec<NCPoly>> {
    let f = front.with_basepoints(dga.basepoints.clone())?;
    let mut search = Search { front: &f, dga, trace: f.trace(), dir: f.orientation()?, max_corners, found: Vec::new() };
    let mut out = Vec::new();
    for g in &dga.generators {
        search.found.clear();
        let k = f.events()[g.event].pos;
        search.extend(g.event, (k, k + 1), Vec::new(), Vec::new(), 0);
        let mut d = NCPoly::zero();
        for (up, low) in &search.found {
            let mut w: Word = Vec::new();
            concat_into(&mut w, up);
            let back: Word = low.iter().rev().copied().collect();
            concat_into(&mut w, &back);
            d.toggle(w);
        }
        if g.kind == GenKind::RightCusp {
            d.toggle(Vec::new());
        }
        out.push(d);
    }
    Ok(out)
}
