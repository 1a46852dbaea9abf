//! Rulings of S(K, L) from a generalized ruling τ of L and a reduced ruling
//! σ of S(K, L^τ), where L^τ is the pattern traced by the fixed points of τ.
//!
//! The switches of the combined ruling are: the switches of τ in the
//! pattern; the switches of σ, carried to the fixed copies; and, for each
//! pair {i, j} of τ, the crossings of copies i and j next to every cusp of
//! K, which keep those two copies paired with each other along K.

use super::{involution_trace, ruling_with, Mode, NormalRuling};
use crate::diagram::{AnnulusPattern, Event, EventKind, PlatFront};
use crate::error::{Error, Result};
use crate::satellite::{satellite, Provenance, SatelliteFront, Source};
use std::collections::HashMap;

/// L^τ with the positions of the fixed strands at x = 0 and, for each of its
/// crossings, the event of L it comes from.
#[derive(Clone, Debug)]
pub struct FixedPart {
    pub pattern: AnnulusPattern,
    pub fixed: Vec<usize>,
    pub crossing_source: Vec<usize>,
}

pub fn fixed_subpattern(l: &AnnulusPattern, modulus: u32, tau: &NormalRuling) -> Result<FixedPart> {
    let g = l.graded(modulus)?;
    let invs = involution_trace(&g, tau, Mode::Generalized)?;
    let fixed: Vec<usize> = (0..l.strands()).filter(|&q| tau.initial[q] == q).collect();
    let mut events = Vec::new();
    let mut crossing_source = Vec::new();
    for (e, ev) in l.events().iter().enumerate() {
        let inv = &invs[e];
        let k = ev.pos;
        if ev.kind == EventKind::Cross && inv[k] == k && inv[k + 1] == k + 1 {
            let rank = (0..k).filter(|&q| inv[q] == q).count();
            events.push(Event::cross(rank));
            crossing_source.push(e);
        }
    }
    let maslov = fixed.iter().map(|&q| l.maslov()[q]).collect();
    let pattern = AnnulusPattern::new(fixed.len(), maslov, events)?;
    Ok(FixedPart { pattern, fixed, crossing_source })
}

/// Pairs {i, j}, i < j, of the positions paired by τ at x = 0.
fn thin_pairs(tau: &NormalRuling) -> Vec<(usize, usize)> {
    (0..tau.initial.len()).filter(|&i| tau.initial[i] > i).map(|i| (i, tau.initial[i])).collect()
}

fn lookup(s: &SatelliteFront) -> HashMap<Provenance, usize> {
    s.provenance.iter().enumerate().map(|(e, &p)| (p, e)).collect()
}

pub struct Composition {
    pub satellite: SatelliteFront,
    pub ruling: NormalRuling,
}

/// Φ(τ, σ). `sub` must be S(K, L^τ) built with the same companion and
/// modulus, and σ a reduced ruling of it.
pub fn compose(
    k: &PlatFront,
    l: &AnnulusPattern,
    modulus: u32,
    tau: &NormalRuling,
    sigma: &NormalRuling,
) -> Result<Composition> {
    let full = satellite(k, l, modulus)?;
    if full.reflected {
        return Err(Error::Precondition("compose expects the basepoint strand to point right".into()));
    }
    let fp = fixed_subpattern(l, modulus, tau)?;
    let sub = satellite(k, &fp.pattern, modulus)?;
    let reduced_forbidden = sub.left_cusp_crossings();
    if sigma.switches.iter().any(|e| reduced_forbidden.contains(e)) {
        return Err(Error::Precondition("σ is not reduced".into()));
    }
    involution_trace(&sub.graded, sigma, Mode::Normal)?;
    let index = lookup(&full);
    let mut switches: Vec<usize> = tau.switches.iter().map(|&e| full.pattern_start + e).collect();
    for &e in &sigma.switches {
        let p = sub.provenance[e];
        let target = if p.source == Source::Pattern {
            full.pattern_start + fp.crossing_source[p.event]
        } else {
            let q = Provenance { upper: fp.fixed[p.upper], lower: fp.fixed[p.lower], ..p };
            *index.get(&q).ok_or_else(|| Error::Internal(format!("no crossing {q:?} in S(K, L)")))?
        };
        switches.push(target);
    }
    for (i, j) in thin_pairs(tau) {
        for (m, ev) in k.events().iter().enumerate() {
            let q = match ev.kind {
                EventKind::Left => Provenance { source: Source::LeftCusp, event: m, upper: i, lower: j },
                EventKind::Right => Provenance { source: Source::RightCusp, event: m, upper: j, lower: i },
                EventKind::Cross => continue,
            };
            switches.push(index[&q]);
        }
    }
    let ruling = ruling_with(&full.graded, Vec::new(), switches, Mode::Normal)
        .map_err(|e| Error::Internal(format!("composed switch set is not a ruling: {e}")))?;
    debug_assert_eq!(ruling.j, tau.j + sigma.j);
    Ok(Composition { satellite: full, ruling })
}

/// Inverse of [`compose`]: the generalized ruling τ of L read off the
/// pattern region and the reduced ruling σ of S(K, L^τ) read off the fixed
/// copies. Fails if ρ is not constant on the paired copies away from the
/// cusps of K.
pub fn decompose(
    k: &PlatFront,
    l: &AnnulusPattern,
    modulus: u32,
    rho: &NormalRuling,
) -> Result<(NormalRuling, NormalRuling)> {
    let full = satellite(k, l, modulus)?;
    if full.reflected {
        return Err(Error::Precondition("decompose expects the basepoint strand to point right".into()));
    }
    let invs = involution_trace(&full.graded, rho, Mode::Normal)?;
    let n = full.copies;
    let base = full.pattern_pos;
    let start = &invs[full.pattern_start];
    let initial: Vec<usize> = (0..n)
        .map(|i| {
            let partner = start[base + i];
            if (base..base + n).contains(&partner) {
                partner - base
            } else {
                i
            }
        })
        .collect();
    let lg = l.graded(modulus)?;
    // walk τ through the pattern; crossings of two fixed strands belong to σ
    let mut inv = initial.clone();
    let mut tau_switches = Vec::new();
    let mut fixed_pattern_switches = Vec::new();
    for (pe, ev) in l.events().iter().enumerate() {
        let e = full.pattern_start + pe;
        let switched = rho.switches.binary_search(&e).is_ok();
        let kpos = ev.pos;
        let both_fixed = ev.kind == EventKind::Cross && inv[kpos] == kpos && inv[kpos + 1] == kpos + 1;
        if both_fixed && switched {
            fixed_pattern_switches.push(pe);
        } else if switched {
            tau_switches.push(pe);
        }
        let (plain, sw) = super::step(&lg, pe, &inv, true);
        inv = if switched && !both_fixed { sw } else { plain }
            .ok_or_else(|| Error::Internal(format!("restriction to the pattern fails at pattern event {pe}")))?;
    }
    let tau = ruling_with(&lg, initial, tau_switches, Mode::Generalized)
        .map_err(|e| Error::Internal(format!("restriction is not a generalized ruling: {e}")))?;
    let fp = fixed_subpattern(l, modulus, &tau)?;
    let sub = satellite(k, &fp.pattern, modulus)?;
    let sub_index = lookup(&sub);
    let rank = |copy: usize| fp.fixed.iter().position(|&f| f == copy);
    let thin: Vec<(usize, usize)> = thin_pairs(&tau);
    let mut sigma_switches = Vec::new();
    for &e in &rho.switches {
        let p = full.provenance[e];
        if p.source == Source::Pattern {
            continue;
        }
        match (rank(p.upper), rank(p.lower)) {
            (Some(a), Some(b)) => {
                let q = Provenance { upper: a, lower: b, ..p };
                sigma_switches.push(sub_index[&q]);
            }
            _ => {
                let pair = (p.upper.min(p.lower), p.upper.max(p.lower));
                let cusp_block = matches!(p.source, Source::LeftCusp | Source::RightCusp);
                if !(cusp_block && thin.contains(&pair)) {
                    return Err(Error::Internal(format!("switch {p:?} breaks the thin part")));
                }
            }
        }
    }
    for pe in fixed_pattern_switches {
        let lt = fp.crossing_source.iter().position(|&s| s == pe).expect("fixed crossing");
        let q = Provenance { source: Source::Pattern, event: lt, upper: 0, lower: 0 };
        sigma_switches.push(sub_index[&q]);
    }
    let sigma = ruling_with(&sub.graded, Vec::new(), sigma_switches, Mode::Normal)
        .map_err(|e| Error::Internal(format!("thick part is not a ruling: {e}")))?;
    let back = compose(k, l, modulus, &tau, &sigma)?;
    if back.ruling != *rho {
        return Err(Error::Internal("compose(decompose(ρ)) differs from ρ".into()));
    }
    Ok((tau, sigma))
}
