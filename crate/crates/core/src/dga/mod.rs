//! The Chekanov-Eliashberg DGA over Z/2 of the resolution of a plat front.
//!
//! Disks are found by sweeping left from the positive corner while tracking
//! the positions u < l of the strands bounding the disk from above and
//! below. At a crossing of positions j, j+1 the upper path on j+1 may turn
//! onto the other strand (a negative corner at the bottom quadrant) and the
//! lower path on j may turn (top quadrant). A disk closes at a left cusp
//! whose branches are exactly u and l. The word of a disk reads the corners
//! and basepoints met by the upper path from right to left, then those of
//! the lower path from left to right. A right cusp also bounds the invisible
//! disk inside its resolution loop, which contributes 1.

pub mod basepoints;
pub mod oracle;
pub mod satellite;

use crate::diagram::{Basepoint, Event, EventKind, GradedFront, PlatFront, Trace};
use crate::error::{Error, Result};
use crate::pathmatrix::ncpoly::{concat_into, inverse_letter, letter, symbol_of, Letter, NCPoly, Word};
use serde_json::{json, Map, Value};
use std::collections::HashMap;
use std::rc::Rc;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenKind {
    Crossing,
    RightCusp,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    /// Degree reduced mod the modulus of the DGA.
    pub degree: i64,
    pub event: usize,
    pub kind: GenKind,
}

/// Generator i is the letter with symbol i; basepoint j is the symbol
/// `generators.len() + j`, with an inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeDGA {
    pub generators: Vec<Generator>,
    pub basepoints: Vec<Basepoint>,
    pub modulus: u32,
    pub differential: Vec<NCPoly>,
}

pub(crate) fn reduce(v: i64, modulus: u32) -> i64 {
    if modulus == 0 {
        v
    } else {
        v.rem_euclid(modulus as i64)
    }
}

impl FreeDGA {
    pub fn gen(&self, i: usize) -> Letter {
        letter(i as u32)
    }

    pub fn t(&self, j: usize) -> Letter {
        letter((self.generators.len() + j) as u32)
    }

    pub fn t_inv(&self, j: usize) -> Letter {
        inverse_letter((self.generators.len() + j) as u32)
    }

    /// Index of the basepoint a letter refers to, if it is a t letter.
    pub fn t_index(&self, l: Letter) -> Option<usize> {
        (symbol_of(l) as usize).checked_sub(self.generators.len())
    }

    pub fn generator_index(&self, l: Letter) -> Option<usize> {
        let s = symbol_of(l) as usize;
        (s < self.generators.len()).then_some(s)
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn t_name(&self, j: usize) -> String {
        format!("t{}", j + 1)
    }

    pub fn name(&self, l: Letter) -> String {
        match self.t_index(l) {
            Some(j) if l & 1 == 1 => format!("{}^-1", self.t_name(j)),
            Some(j) => self.t_name(j),
            None => self.generators[symbol_of(l) as usize].name.clone(),
        }
    }

    pub fn word_degree(&self, w: &[Letter]) -> i64 {
        let d = w.iter().filter_map(|&l| self.generator_index(l)).map(|i| self.generators[i].degree).sum();
        reduce(d, self.modulus)
    }

    /// Leibniz rule on a word; t letters are cycles.
    pub fn d_word(&self, w: &[Letter]) -> NCPoly {
        let mut out = NCPoly::zero();
        for (i, &l) in w.iter().enumerate() {
            let Some(g) = self.generator_index(l) else { continue };
            let left = NCPoly::word(w[..i].to_vec());
            let right = NCPoly::word(w[i + 1..].to_vec());
            out.add_assign(&left.mul(&self.differential[g]).mul(&right));
        }
        out
    }

    pub fn d_poly(&self, p: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        for w in p.words() {
            out.add_assign(&self.d_word(w));
        }
        out
    }

    /// Generators whose ∂∂ is not zero.
    pub fn d_squared_failures(&self) -> Vec<usize> {
        (0..self.generators.len()).filter(|&g| !self.d_poly(&self.differential[g]).is_zero()).collect()
    }

    pub fn check_d_squared(&self) -> bool {
        self.d_squared_failures().is_empty()
    }

    /// Every monomial of ∂g has degree |g| - 1.
    pub fn check_degrees(&self) -> bool {
        self.generators.iter().zip(&self.differential).all(|(g, d)| {
            let want = reduce(g.degree - 1, self.modulus);
            d.words().all(|w| self.word_degree(w) == want)
        })
    }

    /// Degree of generator `i` mod `p` (which must divide the modulus).
    pub fn degree_mod(&self, i: usize, p: u32) -> i64 {
        reduce(self.generators[i].degree, p)
    }

    pub fn poly_to_string(&self, p: &NCPoly) -> String {
        p.to_string_with(&|l| self.name(l))
    }

    pub fn to_json(&self) -> Value {
        let gens: Vec<Value> =
            self.generators.iter().map(|g| json!({"name": g.name, "degree": g.degree})).collect();
        let ts: Vec<String> = (0..self.basepoints.len()).map(|j| self.t_name(j)).collect();
        let mut d = Map::new();
        for (g, p) in self.generators.iter().zip(&self.differential) {
            let words: Vec<Value> = p
                .words()
                .map(|w| {
                    if w.is_empty() {
                        json!(["1"])
                    } else {
                        json!(w.iter().map(|&l| self.name(l)).collect::<Vec<_>>())
                    }
                })
                .collect();
            d.insert(g.name.clone(), Value::Array(words));
        }
        json!({"generators": gens, "t": ts, "d": d, "modulus": self.modulus})
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for g in &self.generators {
            s.push_str(&format!("|{}| = {}\n", g.name, g.degree));
        }
        for (g, p) in self.generators.iter().zip(&self.differential) {
            s.push_str(&format!("d {} = {}\n", g.name, self.poly_to_string(p)));
        }
        s
    }

    /// Image of `p` under the algebra map sending generator i to `images[i]`
    /// and fixing every t letter.
    pub fn substitute(&self, p: &NCPoly, images: &[NCPoly]) -> NCPoly {
        let mut out = NCPoly::zero();
        for w in p.words() {
            let mut acc = NCPoly::one();
            for &l in w {
                let img = match self.generator_index(l) {
                    Some(g) => images[g].clone(),
                    None => NCPoly::letter(l),
                };
                acc = acc.mul(&img);
            }
            out.add_assign(&acc);
        }
        out
    }
}

/// Letters emitted by basepoints at one spot, as met by the upper path
/// (moving left) and by the lower path (moving left, read backwards later).
#[derive(Default, Clone)]
struct Marks {
    upper: Word,
    lower: Word,
}

struct Sweep<'a> {
    events: &'a [Event],
    gen_at: Vec<Option<Letter>>,
    marks: HashMap<(usize, usize), Marks>,
    memo: HashMap<(usize, usize, usize), Rc<Vec<(Word, Word)>>>,
}

impl Sweep<'_> {
    /// Disks in the part of the front left of `gap` whose slice at `gap` is
    /// bounded by positions u < l, as (upper letters, lower letters) in the
    /// order the paths meet them.
    fn disks(&mut self, gap: usize, u: usize, l: usize) -> Rc<Vec<(Word, Word)>> {
        if let Some(r) = self.memo.get(&(gap, u, l)) {
            return r.clone();
        }
        let empty = Marks::default();
        let mu = self.marks.get(&(gap, u)).unwrap_or(&empty).upper.clone();
        let ml = self.marks.get(&(gap, l)).unwrap_or(&empty).lower.clone();
        let mut out = Vec::new();
        if gap > 0 {
            let e = self.events[gap - 1];
            let j = e.pos;
            let mut next: Vec<(usize, usize, Option<Letter>, Option<Letter>)> = Vec::new();
            match e.kind {
                EventKind::Cross => {
                    let a = self.gen_at[gap - 1];
                    let ups: Vec<(usize, Option<Letter>)> = if u == j + 1 {
                        vec![(j, None), (j + 1, a)]
                    } else if u == j {
                        vec![(j + 1, None)]
                    } else {
                        vec![(u, None)]
                    };
                    let lows: Vec<(usize, Option<Letter>)> = if l == j {
                        vec![(j + 1, None), (j, a)]
                    } else if l == j + 1 {
                        vec![(j, None)]
                    } else {
                        vec![(l, None)]
                    };
                    for &(u2, a_u) in &ups {
                        for &(l2, a_l) in &lows {
                            if u2 < l2 {
                                next.push((u2, l2, a_u, a_l));
                            }
                        }
                    }
                }
                EventKind::Left => {
                    if u == j && l == j + 1 {
                        out.push((mu.clone(), ml.clone()));
                    } else if ![j, j + 1].contains(&u) && ![j, j + 1].contains(&l) {
                        let shift = |q: usize| if q > j + 1 { q - 2 } else { q };
                        next.push((shift(u), shift(l), None, None));
                    }
                }
                EventKind::Right => {
                    // the cusp may lie above, below or inside the slice
                    let shift = |q: usize| if q >= j { q + 2 } else { q };
                    next.push((shift(u), shift(l), None, None));
                }
            }
            for (u2, l2, a_u, a_l) in next {
                let rest = self.disks(gap - 1, u2, l2);
                for (ru, rl) in rest.iter() {
                    let mut wu = mu.clone();
                    wu.extend(a_u);
                    wu.extend_from_slice(ru);
                    let mut wl = ml.clone();
                    wl.extend(a_l);
                    wl.extend_from_slice(rl);
                    out.push((wu, wl));
                }
            }
        }
        let r = Rc::new(out);
        self.memo.insert((gap, u, l), r.clone());
        r
    }
}

/// Builds the DGA of the resolution of `events`. `dir` gives the direction
/// of each strand id (only read at basepoints) and `label` the name and
/// degree of the generator at an event.
pub(crate) fn assemble(
    events: &[Event],
    trace: &Trace,
    dir: &[bool],
    basepoints: &[Basepoint],
    modulus: u32,
    label: &dyn Fn(usize) -> (String, i64),
) -> Result<FreeDGA> {
    let mut generators = Vec::new();
    let mut gen_at = vec![None; events.len()];
    for (e, ev) in events.iter().enumerate() {
        let kind = match ev.kind {
            EventKind::Cross => GenKind::Crossing,
            EventKind::Right => GenKind::RightCusp,
            EventKind::Left => continue,
        };
        gen_at[e] = Some(letter(generators.len() as u32));
        let (name, degree) = label(e);
        generators.push(Generator { name, degree: reduce(degree, modulus), event: e, kind });
    }
    let g_count = generators.len();
    let mut marks: HashMap<(usize, usize), Marks> = HashMap::new();
    let mut order: Vec<(usize, usize)> = Vec::new();
    let mut at_spot: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (j, b) in basepoints.iter().enumerate() {
        let spot = (b.gap, b.pos);
        if !at_spot.contains_key(&spot) {
            order.push(spot);
        }
        at_spot.entry(spot).or_default().push(j);
    }
    for spot in order {
        let mut ids = at_spot[&spot].clone();
        let rightward = dir[trace.gaps[spot.0][spot.1]];
        // along the orientation the basepoints come in list order
        if rightward {
            ids.reverse();
        }
        let sym = |j: usize| (g_count + j) as u32;
        let (up, low): (Word, Word) = if rightward {
            (ids.iter().map(|&j| inverse_letter(sym(j))).collect(), ids.iter().map(|&j| letter(sym(j))).collect())
        } else {
            (ids.iter().map(|&j| letter(sym(j))).collect(), ids.iter().map(|&j| inverse_letter(sym(j))).collect())
        };
        marks.insert(spot, Marks { upper: up, lower: low });
    }
    let mut sweep = Sweep { events, gen_at, marks, memo: HashMap::new() };
    let mut differential = Vec::with_capacity(g_count);
    for g in &generators {
        let k = events[g.event].pos;
        let mut d = NCPoly::zero();
        for (wu, wl) in sweep.disks(g.event, k, k + 1).iter() {
            let mut w: Word = Vec::new();
            concat_into(&mut w, wu);
            let back: Word = wl.iter().rev().copied().collect();
            concat_into(&mut w, &back);
            d.toggle(w);
        }
        if g.kind == GenKind::RightCusp {
            d.toggle(Vec::new());
        }
        differential.push(d);
    }
    Ok(FreeDGA { generators, basepoints: basepoints.to_vec(), modulus, differential })
}

/// Checks ∂² = 0 and the degree rule; a failure is a bug in the sweep.
pub(crate) fn certify(dga: FreeDGA) -> Result<FreeDGA> {
    if let Some(&g) = dga.d_squared_failures().first() {
        return Err(Error::Internal(format!("d^2 {} != 0", dga.generators[g].name)));
    }
    if !dga.check_degrees() {
        return Err(Error::Internal("differential is not of degree -1".into()));
    }
    Ok(dga)
}

/// Modulus 2r of the grading of a knot front.
pub fn grading_modulus(front: &PlatFront) -> u32 {
    (2 * front.rotation_number().unsigned_abs()) as u32
}

/// DGA of a plat knot front with the given basepoints, graded mod 2r.
/// Generators are named a1, a2, ... in x-order.
pub fn build_dga(front: &PlatFront, basepoints: &[Basepoint]) -> Result<FreeDGA> {
    if !front.is_plat() {
        return Err(Error::Precondition("the DGA needs a front in plat position".into()));
    }
    if !front.has_simple_right_cusps() {
        return Err(Error::Precondition("the DGA needs right cusps that are not nested; use plat_position".into()))
    }
    if front.component_count() != 1 {
        return Err(Error::Precondition("the DGA needs a connected front".into()));
    }
    if basepoints.is_empty() {
        return Err(Error::Precondition("the DGA needs a basepoint".into()));
    }
    let f = front.with_basepoints(basepoints.to_vec())?;
    let modulus = grading_modulus(&f);
    let g = f.graded(modulus)?;
    let dir = f.orientation()?;
    let label = labels_a(&g);
    let dga = assemble(&g.events, &g.trace, &dir, basepoints, modulus, &label)?;
    certify(dga)
}

/// [`build_dga`] with the front's basepoints, or the default one.
pub fn build_default(front: &PlatFront) -> Result<FreeDGA> {
    build_dga(front, &front.basepoints_or_default())
}

fn labels_a(g: &GradedFront) -> impl Fn(usize) -> (String, i64) + '_ {
    let mut index = vec![0; g.events.len()];
    let mut n = 0;
    for (e, ev) in g.events.iter().enumerate() {
        if ev.kind != EventKind::Left {
            n += 1;
            index[e] = n;
        }
    }
    move |e| {
        let degree = match g.events[e].kind {
            EventKind::Cross => g.crossing_degree(e),
            _ => 1,
        };
        (format!("a{}", index[e]), degree)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::text::parse_front;

    #[test]
    fn unknot() {
        let u = parse_front("L1; R1").unwrap();
        let d = build_default(&u).unwrap();
        assert_eq!(d.generators.len(), 1);
        assert_eq!(d.generators[0].degree, 1);
        let s = d.poly_to_string(&d.differential[0]);
        assert!(s == "t1 + 1" || s == "t1^-1 + 1", "{s}");
    }

    #[test]
    fn trefoil() {
        let t = parse_front("L1; L3; X2; X2; X2; R1; R3").unwrap();
        let d = build_default(&t).unwrap();
        let degrees: Vec<i64> = d.generators.iter().map(|g| g.degree).collect();
        assert_eq!(degrees, vec![0, 0, 0, 1, 1]);
        for c in 3..5 {
            let p = &d.differential[c];
            assert!(p.words().any(|w| w.is_empty()));
            assert!(p.words().all(|w| d.word_degree(w) == 0));
        }
        assert!(d.check_d_squared());
    }
}
