//! Front diagrams as event words.
//!
//! A front is swept left to right. Each event is a left cusp (two strands
//! are born at positions `pos`, `pos + 1`), a crossing (positions `pos` and
//! `pos + 1` swap) or a right cusp (the strands at `pos`, `pos + 1` die).
//! Positions are 0-based here and 1-based in the text format.

pub mod invariants;
pub mod moves;
pub mod patterns;
pub mod text;

use crate::error::{Error, Result};
use std::collections::VecDeque;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EventKind {
    Left,
    Cross,
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Event {
    pub kind: EventKind,
    pub pos: usize,
}

impl Event {
    pub fn left(pos: usize) -> Self {
        Event { kind: EventKind::Left, pos }
    }
    pub fn cross(pos: usize) -> Self {
        Event { kind: EventKind::Cross, pos }
    }
    pub fn right(pos: usize) -> Self {
        Event { kind: EventKind::Right, pos }
    }

    pub fn is_cusp(&self) -> bool {
        self.kind != EventKind::Cross
    }

    /// Strand count after the event, or `None` if the index is out of range.
    pub fn count_after(&self, before: usize) -> Option<usize> {
        match self.kind {
            EventKind::Left if self.pos <= before => Some(before + 2),
            EventKind::Cross | EventKind::Right if self.pos < before.saturating_sub(1) => {
                Some(if self.kind == EventKind::Right { before - 2 } else { before })
            }
            _ => None,
        }
    }
}

/// Strand identities along an event word.
///
/// Strands are the arcs between cusps. Ids `0..start` are the strands present
/// at the left edge; each left cusp then creates `upper` and `lower`, in event
/// order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trace {
    /// Strand ids by position, for gaps `0..=events.len()`.
    pub gaps: Vec<Vec<usize>>,
    pub strand_count: usize,
    /// Cusps: (upper, lower). Crossings: (strand entering at `pos`, strand
    /// entering at `pos + 1`); the first one is the over strand.
    pub touched: Vec<(usize, usize)>,
}

impl Trace {
    pub fn new(start: usize, events: &[Event]) -> Result<Trace> {
        let mut cur: Vec<usize> = (0..start).collect();
        let mut next = start;
        let mut gaps = Vec::with_capacity(events.len() + 1);
        let mut touched = Vec::with_capacity(events.len());
        gaps.push(cur.clone());
        for (i, e) in events.iter().enumerate() {
            if e.count_after(cur.len()).is_none() {
                return Err(Error::BadIndex { event: i, index: e.pos + 1, count: cur.len() });
            }
            let k = e.pos;
            match e.kind {
                EventKind::Left => {
                    cur.splice(k..k, [next, next + 1]);
                    touched.push((next, next + 1));
                    next += 2;
                }
                EventKind::Cross => {
                    touched.push((cur[k], cur[k + 1]));
                    cur.swap(k, k + 1);
                }
                EventKind::Right => {
                    touched.push((cur[k], cur[k + 1]));
                    cur.drain(k..k + 2);
                }
            }
            gaps.push(cur.clone());
        }
        Ok(Trace { gaps, strand_count: next, touched })
    }

    pub fn end_count(&self) -> usize {
        self.gaps.last().map_or(0, |g| g.len())
    }
}

/// Relations among strand ids: cusps join an upper and a lower strand, and
/// for closed (annulus) fronts the strand leaving at position k continues
/// as the strand entering at position k.
fn strand_edges(events: &[Event], trace: &Trace, closed: bool) -> Vec<(usize, usize, i64)> {
    // (a, b, d) means mu(a) = mu(b) + d; for orientation, d odd flips direction.
    let mut edges = Vec::new();
    for (e, &(a, b)) in events.iter().zip(&trace.touched) {
        if e.is_cusp() {
            edges.push((a, b, 1));
        }
    }
    if closed {
        let first = &trace.gaps[0];
        let last = trace.gaps.last().unwrap();
        for (&a, &b) in last.iter().zip(first) {
            edges.push((a, b, 0));
        }
    }
    edges
}

fn adjacency(n: usize, edges: &[(usize, usize, i64)]) -> Vec<Vec<(usize, i64)>> {
    let mut adj = vec![Vec::new(); n];
    for &(a, b, d) in edges {
        adj[a].push((b, -d));
        adj[b].push((a, d));
    }
    adj
}

/// Connected components, numbered by first appearance: strands present at
/// the left edge from the bottom up, then left cusps in event order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Components {
    pub of_strand: Vec<usize>,
    pub count: usize,
    /// Root strand of each component: lowest strand at the left edge, or the
    /// lower branch of the component's first left cusp.
    pub root: Vec<usize>,
}

pub(crate) fn components(events: &[Event], trace: &Trace, closed: bool) -> Components {
    let n = trace.strand_count;
    let adj = adjacency(n, &strand_edges(events, trace, closed));
    let mut of_strand = vec![usize::MAX; n];
    let mut root = Vec::new();
    let mut seeds: Vec<usize> = trace.gaps[0].clone();
    seeds.reverse();
    // lowest initial strand first, then lower branches of left cusps
    for (e, &(_, lower)) in events.iter().zip(&trace.touched) {
        if e.kind == EventKind::Left {
            seeds.push(lower);
        }
    }
    let mut count = 0;
    for s in seeds {
        if of_strand[s] != usize::MAX {
            continue;
        }
        let mut queue = VecDeque::from([s]);
        of_strand[s] = count;
        while let Some(a) = queue.pop_front() {
            for &(b, _) in &adj[a] {
                if of_strand[b] == usize::MAX {
                    of_strand[b] = count;
                    queue.push_back(b);
                }
            }
        }
        root.push(s);
        count += 1;
    }
    Components { of_strand, count, root }
}

/// Direction of every strand (true = rightward). `pins` fix the direction of
/// individual strands; unpinned components orient their root rightward.
pub(crate) fn orient(
    events: &[Event],
    trace: &Trace,
    closed: bool,
    comps: &Components,
    pins: &[(usize, bool)],
) -> Result<Vec<bool>> {
    let n = trace.strand_count;
    let adj = adjacency(n, &strand_edges(events, trace, closed));
    let mut dir: Vec<Option<bool>> = vec![None; n];
    let mut seeds: Vec<(usize, bool)> = Vec::new();
    for c in 0..comps.count {
        match pins.iter().find(|&&(s, _)| comps.of_strand[s] == c) {
            Some(&pin) => seeds.push(pin),
            None => seeds.push((comps.root[c], true)),
        }
    }
    for (s, d) in seeds {
        dir[s] = Some(d);
        let mut queue = VecDeque::from([s]);
        while let Some(a) = queue.pop_front() {
            let da = dir[a].unwrap();
            for &(b, w) in &adj[a] {
                let db = if w % 2 == 0 { da } else { !da };
                match dir[b] {
                    None => {
                        dir[b] = Some(db);
                        queue.push_back(b);
                    }
                    Some(x) if x != db => {
                        return Err(Error::Internal("front is not orientable".into()))
                    }
                    _ => {}
                }
            }
        }
    }
    for &(s, d) in pins {
        if dir[s] != Some(d) {
            return Err(Error::Precondition("basepoints pin opposite orientations".into()));
        }
    }
    Ok(dir.into_iter().map(|d| d.unwrap_or(true)).collect())
}

fn reduce(v: i64, modulus: u32) -> i64 {
    if modulus == 0 {
        v
    } else {
        v.rem_euclid(modulus as i64)
    }
}

/// Solve the cusp rule for a potential on every strand. `known` gives values
/// of some strands; components with no known value normalize their root
/// (0, or 1 when the modulus is even and the root points left).
pub(crate) fn solve_maslov(
    events: &[Event],
    trace: &Trace,
    closed: bool,
    comps: &Components,
    dir: &[bool],
    modulus: u32,
    known: &[(usize, i64)],
) -> Result<Vec<i64>> {
    let n = trace.strand_count;
    let edges = strand_edges(events, trace, closed);
    let adj = adjacency(n, &edges);
    let mut mu: Vec<Option<i64>> = vec![None; n];
    let mut seeds: Vec<(usize, i64)> = known.to_vec();
    for c in 0..comps.count {
        if !known.iter().any(|&(s, _)| comps.of_strand[s] == c) {
            let r = comps.root[c];
            let v = if modulus.is_multiple_of(2) && !dir[r] { 1 } else { 0 };
            seeds.push((r, v));
        }
    }
    for (s, v) in seeds {
        if let Some(x) = mu[s] {
            if reduce(x - v, modulus) != 0 {
                return Err(Error::Grading(format!("inconsistent potential on strand {s}")));
            }
            continue;
        }
        mu[s] = Some(v);
        let mut queue = VecDeque::from([s]);
        while let Some(a) = queue.pop_front() {
            let va = mu[a].unwrap();
            for &(b, w) in &adj[a] {
                if mu[b].is_none() {
                    mu[b] = Some(va + w);
                    queue.push_back(b);
                }
            }
        }
    }
    let mu: Vec<i64> = mu.into_iter().map(|v| v.unwrap_or(0)).collect();
    for &(a, b, d) in &edges {
        if reduce(mu[a] - mu[b] - d, modulus) != 0 {
            return Err(Error::Grading(format!(
                "no Maslov potential mod {modulus}: the modulus must divide twice the rotation number"
            )));
        }
    }
    Ok(mu.into_iter().map(|v| reduce(v, modulus)).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Basepoint {
    /// Gap index: number of events to the left of the basepoint.
    pub gap: usize,
    pub pos: usize,
    /// Direction of the strand through the basepoint; fixes the orientation
    /// of its component.
    pub rightward: bool,
}

impl Basepoint {
    pub fn new(gap: usize, pos: usize) -> Self {
        Basepoint { gap, pos, rightward: true }
    }
}

/// A front in the plane, not necessarily in plat position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlatFront {
    events: Vec<Event>,
    basepoints: Vec<Basepoint>,
}

impl PlatFront {
    pub fn new(events: Vec<Event>, basepoints: Vec<Basepoint>) -> Result<Self> {
        let trace = Trace::new(0, &events)?;
        if trace.end_count() != 0 {
            return Err(Error::Unclosed(trace.end_count()));
        }
        for b in &basepoints {
            if b.gap >= trace.gaps.len() || b.pos >= trace.gaps[b.gap].len() {
                return Err(Error::BadBasepoint { gap: b.gap, pos: b.pos + 1 });
            }
        }
        let f = PlatFront { events, basepoints };
        f.orientation()?;
        Ok(f)
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }

    pub fn basepoints(&self) -> &[Basepoint] {
        &self.basepoints
    }

    pub fn with_basepoints(&self, basepoints: Vec<Basepoint>) -> Result<Self> {
        PlatFront::new(self.events.clone(), basepoints)
    }

    pub fn trace(&self) -> Trace {
        Trace::new(0, &self.events).expect("validated front")
    }

    pub fn crossing_count(&self) -> usize {
        self.events.iter().filter(|e| e.kind == EventKind::Cross).count()
    }

    pub fn count(&self, kind: EventKind) -> usize {
        self.events.iter().filter(|e| e.kind == kind).count()
    }

    /// All left cusps precede all crossings, which precede all right cusps.
    pub fn is_plat(&self) -> bool {
        let rank = |k: EventKind| match k {
            EventKind::Left => 0,
            EventKind::Cross => 1,
            EventKind::Right => 2,
        };
        self.events.windows(2).all(|w| rank(w[0].kind) <= rank(w[1].kind))
    }

    /// Plat, with each right cusp joining the strands at positions 2i, 2i+1
    /// of the gap before the first right cusp, so no right cusp sits inside
    /// another.
    pub fn has_simple_right_cusps(&self) -> bool {
        if !self.is_plat() {
            return false;
        }
        let first = self.events.iter().position(|e| e.kind == EventKind::Right).unwrap_or(self.events.len());
        let trace = self.trace();
        let layout = &trace.gaps[first];
        let at = |s: usize| layout.iter().position(|&x| x == s);
        trace.touched[first..].iter().all(|&(a, b)| match (at(a), at(b)) {
            (Some(pa), Some(pb)) => pa % 2 == 0 && pb == pa + 1,
            _ => false,
        })
    }

    pub fn components(&self) -> Components {
        components(&self.events, &self.trace(), false)
    }

    pub fn component_count(&self) -> usize {
        self.components().count
    }

    fn pins(&self, trace: &Trace) -> Vec<(usize, bool)> {
        self.basepoints.iter().map(|b| (trace.gaps[b.gap][b.pos], b.rightward)).collect()
    }

    /// Direction (true = rightward) of every strand id.
    pub fn orientation(&self) -> Result<Vec<bool>> {
        let trace = Trace::new(0, &self.events)?;
        let comps = components(&self.events, &trace, false);
        orient(&self.events, &trace, false, &comps, &self.pins(&trace))
    }

    /// Maslov potential mod `modulus` (0 for integer valued).
    pub fn graded(&self, modulus: u32) -> Result<GradedFront> {
        let trace = self.trace();
        let comps = components(&self.events, &trace, false);
        let dir = orient(&self.events, &trace, false, &comps, &self.pins(&trace))?;
        let mu = solve_maslov(&self.events, &trace, false, &comps, &dir, modulus, &[])?;
        Ok(GradedFront { start: 0, events: self.events.clone(), closed: false, modulus, mu, trace })
    }

    /// Basepoint used when none is given: the gap after the leading run of
    /// left cusps, on the topmost rightward strand.
    pub fn default_basepoint(&self) -> Option<Basepoint> {
        let gap = self.events.iter().take_while(|e| e.kind == EventKind::Left).count();
        let trace = self.trace();
        let dir = self.orientation().ok()?;
        let strands = trace.gaps.get(gap)?;
        let pos = strands.iter().position(|&s| dir[s]).or(if strands.is_empty() { None } else { Some(0) })?;
        Some(Basepoint { gap, pos, rightward: dir[strands[pos]] })
    }

    /// The given basepoints, or the default one if there are none.
    pub fn basepoints_or_default(&self) -> Vec<Basepoint> {
        if self.basepoints.is_empty() {
            self.default_basepoint().into_iter().collect()
        } else {
            self.basepoints.clone()
        }
    }
}

/// A front in the solid torus J¹(S¹), cut open at x = 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnnulusPattern {
    strands: usize,
    maslov: Vec<i64>,
    events: Vec<Event>,
}

impl AnnulusPattern {
    pub fn new(strands: usize, maslov: Vec<i64>, events: Vec<Event>) -> Result<Self> {
        if maslov.len() != strands {
            return Err(Error::Parse {
                at: 0,
                msg: format!("{} Maslov values for {} strands", maslov.len(), strands),
            });
        }
        let trace = Trace::new(strands, &events)?;
        if trace.end_count() != strands {
            return Err(Error::Unclosed(trace.end_count()));
        }
        Ok(AnnulusPattern { strands, maslov, events })
    }

    /// The trivial pattern with `n` parallel strands, all of potential 0.
    pub fn trivial(n: usize) -> Self {
        AnnulusPattern { strands: n, maslov: vec![0; n], events: Vec::new() }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn maslov(&self) -> &[i64] {
        &self.maslov
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }

    pub fn trace(&self) -> Trace {
        Trace::new(self.strands, &self.events).expect("validated pattern")
    }

    pub fn is_cusp_free(&self) -> bool {
        self.events.iter().all(|e| e.kind == EventKind::Cross)
    }

    pub fn crossing_count(&self) -> usize {
        self.events.iter().filter(|e| e.kind == EventKind::Cross).count()
    }

    pub fn components(&self) -> Components {
        components(&self.events, &self.trace(), true)
    }

    pub fn orientation(&self) -> Vec<bool> {
        let trace = self.trace();
        let comps = components(&self.events, &trace, true);
        orient(&self.events, &trace, true, &comps, &[]).expect("fronts are orientable")
    }

    pub fn shifted(&self, by: i64) -> AnnulusPattern {
        AnnulusPattern {
            strands: self.strands,
            maslov: self.maslov.iter().map(|m| m + by).collect(),
            events: self.events.clone(),
        }
    }

    pub fn graded(&self, modulus: u32) -> Result<GradedFront> {
        let trace = self.trace();
        let comps = components(&self.events, &trace, true);
        let dir = orient(&self.events, &trace, true, &comps, &[])?;
        let known: Vec<(usize, i64)> = self.maslov.iter().enumerate().map(|(i, &m)| (i, m)).collect();
        let mu = solve_maslov(&self.events, &trace, true, &comps, &dir, modulus, &known)?;
        Ok(GradedFront { start: self.strands, events: self.events.clone(), closed: true, modulus, mu, trace })
    }
}

/// A front together with a Maslov potential, the common input of ruling
/// enumeration and the DGA.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedFront {
    pub start: usize,
    pub events: Vec<Event>,
    /// Annulus front: the strands leaving on the right re-enter on the left.
    pub closed: bool,
    pub modulus: u32,
    /// Potential of each strand id, reduced mod `modulus`.
    pub mu: Vec<i64>,
    pub trace: Trace,
}

impl GradedFront {
    /// Assemble from explicit data; checks the cusp rule and closure mod the
    /// modulus.
    pub fn from_parts(start: usize, events: Vec<Event>, closed: bool, modulus: u32, mu: Vec<i64>) -> Result<Self> {
        let trace = Trace::new(start, &events)?;
        if closed && trace.end_count() != start || !closed && (start != 0 || trace.end_count() != 0) {
            return Err(Error::Unclosed(trace.end_count()));
        }
        if mu.len() != trace.strand_count {
            return Err(Error::Grading("potential has wrong length".into()));
        }
        for (a, b, d) in strand_edges(&events, &trace, closed) {
            if reduce(mu[a] - mu[b] - d, modulus) != 0 {
                return Err(Error::Grading(format!("cusp rule fails between strands {a} and {b}")));
            }
        }
        let mu = mu.into_iter().map(|v| reduce(v, modulus)).collect();
        Ok(GradedFront { start, events, closed, modulus, mu, trace })
    }

    pub fn reduce(&self, v: i64) -> i64 {
        reduce(v, self.modulus)
    }

    /// Same front with the potential reduced to a coarser modulus.
    pub fn with_modulus(&self, modulus: u32) -> Result<GradedFront> {
        if self.modulus != 0 && (modulus == 0 || !self.modulus.is_multiple_of(modulus)) {
            return Err(Error::Grading(format!("cannot pass from mod {} to mod {modulus}", self.modulus)));
        }
        let mut g = self.clone();
        g.modulus = modulus;
        g.mu = g.mu.iter().map(|&v| reduce(v, modulus)).collect();
        Ok(g)
    }

    /// mu(over) - mu(under) at crossing event `e`.
    pub fn crossing_degree(&self, e: usize) -> i64 {
        let (a, b) = self.trace.touched[e];
        self.reduce(self.mu[a] - self.mu[b])
    }

    pub fn crossing_events(&self) -> Vec<usize> {
        (0..self.events.len()).filter(|&i| self.events[i].kind == EventKind::Cross).collect()
    }

    pub fn right_cusp_count(&self) -> usize {
        self.events.iter().filter(|e| e.kind == EventKind::Right).count()
    }
}
