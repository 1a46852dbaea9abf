//! Satellites S(K, L): the n-copy of a companion front K with an annulus
//! pattern L inserted at the basepoint.
//!
//! Copy i of a companion strand sits i positions below its top copy. Each
//! companion event expands into a block:
//! - left cusp: n small cusps, then crossings w_i × u_(i+d) for d = 1..n-1,
//! - crossing: n² crossings u_i × v_j in increasing j - i,
//! - right cusp: crossings u_(i+d) × w_i for d = n-1 down to 1, then n cusps,
//!
//! where u, v are the strands entering the crossing or cusp from above and
//! w the lower branch.

use crate::diagram::patterns::reflect;
use crate::diagram::{AnnulusPattern, Basepoint, Event, EventKind, GradedFront, PlatFront, Trace};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Source {
    LeftCusp,
    Crossing,
    RightCusp,
    Pattern,
}

/// Where a satellite event comes from. For companion features `event` is
/// the companion event index and `upper`, `lower` the copies of the strands
/// entering at positions k and k + 1 (equal for the small cusps). For
/// pattern events `event` indexes the inserted pattern.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Provenance {
    pub source: Source,
    pub event: usize,
    pub upper: usize,
    pub lower: usize,
}

#[derive(Clone, Debug)]
pub struct SatelliteFront {
    pub front: PlatFront,
    pub graded: GradedFront,
    pub provenance: Vec<Provenance>,
    pub copies: usize,
    /// The pattern as inserted: reflected when the basepoint strand of the
    /// companion points left.
    pub pattern: AnnulusPattern,
    pub reflected: bool,
    /// Index of the first pattern event.
    pub pattern_start: usize,
    /// Position of the top copy where the pattern sits.
    pub pattern_pos: usize,
    pub companion: PlatFront,
    pub companion_basepoint: Basepoint,
}

impl SatelliteFront {
    /// Events that must not switch in a reduced ruling: crossings coming
    /// from left cusps of the companion.
    pub fn left_cusp_crossings(&self) -> Vec<usize> {
        (0..self.provenance.len())
            .filter(|&e| self.provenance[e].source == Source::LeftCusp && self.graded.events[e].kind == EventKind::Cross)
            .collect()
    }

    pub fn event_of(&self, p: &Provenance) -> Option<usize> {
        self.provenance.iter().position(|q| q == p)
    }

    pub fn to_json(&self) -> Value {
        let mut v = crate::diagram::text::front_to_json(&self.front);
        v["provenance"] = json!(self
            .provenance
            .iter()
            .map(|p| json!({"source": p.source, "event": p.event + 1, "copies": [p.upper + 1, p.lower + 1]}))
            .collect::<Vec<_>>());
        v
    }
}

/// Label of a position during construction: companion strand and copy, or
/// a strand inside the pattern region.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Label {
    Copy { strand: usize, copy: usize },
    Pattern,
}

struct Builder {
    events: Vec<Event>,
    provenance: Vec<Provenance>,
    labels: Vec<Label>,
    mu_at: Vec<i64>,
    /// Potentials of the two new strands of each left cusp, in order.
    born: Vec<(i64, i64)>,
    /// Label sequence at every gap.
    gap_labels: Vec<Vec<Label>>,
}

impl Builder {
    fn push(&mut self, e: Event, prov: Provenance, new: Option<[(Label, i64); 2]>) {
        let k = e.pos;
        match e.kind {
            EventKind::Left => {
                let [(la, ma), (lb, mb)] = new.expect("left cusp labels");
                self.labels.splice(k..k, [la, lb]);
                self.mu_at.splice(k..k, [ma, mb]);
                self.born.push((ma, mb));
            }
            EventKind::Cross => {
                self.labels.swap(k, k + 1);
                self.mu_at.swap(k, k + 1);
            }
            EventKind::Right => {
                self.labels.drain(k..k + 2);
                self.mu_at.drain(k..k + 2);
            }
        }
        self.events.push(e);
        self.provenance.push(prov);
        self.gap_labels.push(self.labels.clone());
    }

    fn position_of(&self, strand: usize, copy: usize) -> usize {
        self.labels.iter().position(|&l| l == Label::Copy { strand, copy }).expect("copy present")
    }

    fn cross_copies(&mut self, m: usize, source: Source, a: (usize, usize), b: (usize, usize)) {
        let pos = self.position_of(a.0, a.1);
        assert_eq!(self.labels[pos + 1], Label::Copy { strand: b.0, copy: b.1 }, "copies are adjacent");
        self.push(Event::cross(pos), Provenance { source, event: m, upper: a.1, lower: b.1 }, None);
    }
}

/// S(K, L) graded mod `modulus`.
pub fn satellite(k: &PlatFront, l: &AnnulusPattern, modulus: u32) -> Result<SatelliteFront> {
    if k.component_count() != 1 {
        return Err(Error::Precondition("the companion must be a knot".into()));
    }
    let bps = k.basepoints_or_default();
    if bps.len() != 1 {
        return Err(Error::Precondition("the companion needs exactly one basepoint".into()));
    }
    let bp = bps[0];
    let n = l.strands();
    let gk = k.with_basepoints(vec![bp])?.graded(modulus)?;
    if n == 0 {
        // the empty pattern: the satellite is empty
        let front = PlatFront::new(Vec::new(), Vec::new())?;
        return Ok(SatelliteFront {
            graded: front.graded(modulus)?,
            front,
            provenance: Vec::new(),
            copies: 0,
            pattern: l.clone(),
            reflected: false,
            pattern_start: 0,
            pattern_pos: 0,
            companion: k.with_basepoints(vec![bp])?,
            companion_basepoint: bp,
        });
    }
    let dir = k.with_basepoints(vec![bp])?.orientation()?;
    let tk = &gk.trace;
    let bp_strand = tk.gaps[bp.gap][bp.pos];
    let reflected = !dir[bp_strand];
    let pattern = if reflected { reflect(l) } else { l.clone() };
    let gl = pattern.graded(modulus)?;
    let eta = pattern.maslov().to_vec();

    let mut b = Builder {
        events: Vec::new(),
        provenance: Vec::new(),
        labels: Vec::new(),
        mu_at: Vec::new(),
        born: Vec::new(),
        gap_labels: vec![Vec::new()],
    };
    // Crossing blocks of left cusps wait until the next non-cusp event so
    // that a plat companion gives a plat satellite.
    let mut pending: Vec<(usize, usize, usize)> = Vec::new();
    let flush = |b: &mut Builder, pending: &mut Vec<(usize, usize, usize)>| {
        for (m, s1, s2) in pending.drain(..) {
            for d in 1..n {
                for i in 0..n - d {
                    b.cross_copies(m, Source::LeftCusp, (s2, i), (s1, i + d));
                }
            }
        }
    };
    // Likewise the small right cusps wait for the crossing blocks of the
    // following right cusps.
    let mut closing: Vec<(usize, usize)> = Vec::new();
    let close = |b: &mut Builder, closing: &mut Vec<(usize, usize)>| {
        for (m, s1) in closing.drain(..) {
            for i in 0..n {
                let pos = b.position_of(s1, i);
                let prov = Provenance { source: Source::RightCusp, event: m, upper: i, lower: i };
                b.push(Event::right(pos), prov, None);
            }
        }
    };
    let mut pattern_start = 0;
    for gap in 0..=k.events().len() {
        if gap == bp.gap {
            flush(&mut b, &mut pending);
            close(&mut b, &mut closing);
            pattern_start = b.events.len();
            let base = n * bp.pos;
            let shift = gk.mu[bp_strand];
            for (pe, &e) in pattern.events().iter().enumerate() {
                let ev = Event { kind: e.kind, pos: e.pos + base };
                let prov = Provenance { source: Source::Pattern, event: pe, upper: 0, lower: 0 };
                let new = (e.kind == EventKind::Left).then(|| {
                    let (up, lo) = gl.trace.touched[pe];
                    [(Label::Pattern, gl.reduce(shift + gl.mu[up])), (Label::Pattern, gl.reduce(shift + gl.mu[lo]))]
                });
                b.push(ev, prov, new);
            }
            // strands leaving the pattern continue as copies of the companion strand
            for i in 0..n {
                b.labels[base + i] = Label::Copy { strand: bp_strand, copy: i };
            }
            *b.gap_labels.last_mut().unwrap() = b.labels.clone();
        }
        if gap == k.events().len() {
            flush(&mut b, &mut pending);
            close(&mut b, &mut closing);
            break;
        }
        let e = k.events()[gap];
        let (s1, s2) = tk.touched[gap];
        let m = gap;
        // a cusp nested inside one whose copies are not yet sorted
        let inside_pending = e.pos > 0 && pending.iter().any(|&(_, up, _)| tk.gaps[gap][e.pos - 1] == up);
        if e.kind != EventKind::Left || inside_pending {
            flush(&mut b, &mut pending);
        }
        if e.kind != EventKind::Right {
            close(&mut b, &mut closing);
        }
        match e.kind {
            EventKind::Left => {
                let base = n * e.pos;
                for i in 0..n {
                    let prov = Provenance { source: Source::LeftCusp, event: m, upper: i, lower: i };
                    let new = [
                        (Label::Copy { strand: s1, copy: i }, gk.reduce(gk.mu[s1] + eta[i])),
                        (Label::Copy { strand: s2, copy: i }, gk.reduce(gk.mu[s2] + eta[i])),
                    ];
                    b.push(Event::left(base + 2 * i), prov, Some(new));
                }
                pending.push((m, s1, s2));
            }
            EventKind::Cross => {
                for d in -(n as i64 - 1)..=(n as i64 - 1) {
                    for i in 0..n as i64 {
                        let j = i + d;
                        if (0..n as i64).contains(&j) {
                            b.cross_copies(m, Source::Crossing, (s1, i as usize), (s2, j as usize));
                        }
                    }
                }
            }
            EventKind::Right => {
                let top = b.position_of(s1, 0);
                if b.position_of(s2, n - 1) != top + 2 * n - 1 {
                    // copies still separated by small cusps waiting to close
                    close(&mut b, &mut closing);
                }
                for d in (1..n).rev() {
                    for i in 0..n - d {
                        b.cross_copies(m, Source::RightCusp, (s1, i + d), (s2, i));
                    }
                }
                closing.push((m, s1));
            }
        }
    }

    let trace = Trace::new(0, &b.events)?;
    let mut mu = vec![0; trace.strand_count];
    for (c, &(up, lo)) in b.born.iter().enumerate() {
        mu[2 * c] = up;
        mu[2 * c + 1] = lo;
    }
    let graded = GradedFront::from_parts(0, b.events.clone(), false, modulus, mu)?;

    // orient every component along the companion where it runs as a copy
    let comps = crate::diagram::components(&b.events, &trace, false);
    let mut pinned = vec![false; comps.count];
    let mut pins = Vec::new();
    for (gap, labels) in b.gap_labels.iter().enumerate() {
        for (pos, l) in labels.iter().enumerate() {
            if let Label::Copy { strand, .. } = *l {
                let c = comps.of_strand[trace.gaps[gap][pos]];
                if !pinned[c] {
                    pinned[c] = true;
                    pins.push(Basepoint { gap, pos, rightward: dir[strand] });
                }
            }
        }
    }
    let front = PlatFront::new(b.events, pins)?;
    Ok(SatelliteFront {
        front,
        graded,
        provenance: b.provenance,
        copies: n,
        pattern,
        reflected,
        pattern_start,
        pattern_pos: n * bp.pos,
        companion: k.with_basepoints(vec![bp])?,
        companion_basepoint: bp,
    })
}

/// The n-copy of K: the satellite with n parallel strands of potential 0.
pub fn n_copy(k: &PlatFront, n: usize, modulus: u32) -> Result<SatelliteFront> {
    if n < 1 {
        return Err(Error::Precondition("n-copy needs n >= 1".into()));
    }
    satellite(k, &AnnulusPattern::trivial(n), modulus)
}

pub fn reflect_pattern(l: &AnnulusPattern) -> AnnulusPattern {
    reflect(l)
}
