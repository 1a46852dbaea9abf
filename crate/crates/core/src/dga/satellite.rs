//! The DGA of a satellite S(K, L) and its matrix description in terms of
//! the DGA of K.
//!
//! Generators of S(K, L) are named after the companion feature they come
//! from: b{m}_{ij} at the m-th left cusp (copy i over copy j, i < j),
//! q{m}_{ij} at the m-th crossing, c{m}_{ij} at the m-th right cusp
//! (i >= j; c{m}_{ii} are the cusps themselves) and p{k} for the crossings
//! of L.

use super::{assemble, build_dga, certify, grading_modulus, FreeDGA};
use crate::diagram::{AnnulusPattern, Basepoint, EventKind, PlatFront};
use crate::error::{Error, Result};
use crate::pathmatrix::ncpoly::{Letter, NCMatrix, NCPoly};
use crate::pathmatrix::{path_matrix, path_matrix_inverse};
use crate::satellite::{satellite, Provenance, SatelliteFront, Source};
use std::collections::HashMap;

fn copies(i: usize, j: usize, n: usize) -> String {
    if n < 10 {
        format!("{}{}", i + 1, j + 1)
    } else {
        format!("{},{}", i + 1, j + 1)
    }
}

/// Name of the satellite generator at event `e`.
pub fn generator_name(s: &SatelliteFront, e: usize) -> String {
    let p = s.provenance[e];
    let rank = |kind: EventKind| s.companion.events()[..p.event].iter().filter(|ev| ev.kind == kind).count() + 1;
    let ij = copies(p.upper, p.lower, s.copies);
    match p.source {
        Source::LeftCusp => format!("b{}_{ij}", rank(EventKind::Left)),
        Source::Crossing => format!("q{}_{ij}", rank(EventKind::Cross)),
        Source::RightCusp => format!("c{}_{ij}", rank(EventKind::Right)),
        Source::Pattern => format!("p{}", p.event + 1),
    }
}

/// DGA of S(K, L), optionally with one basepoint on the top copy just left
/// of the pattern.
pub fn satellite_dga(s: &SatelliteFront, with_basepoint: bool) -> Result<FreeDGA> {
    let g = &s.graded;
    let dir = s.front.orientation()?;
    let basepoints: Vec<Basepoint> = if with_basepoint {
        let strand = g.trace.gaps[s.pattern_start][s.pattern_pos];
        vec![Basepoint { gap: s.pattern_start, pos: s.pattern_pos, rightward: dir[strand] }]
    } else {
        Vec::new()
    };
    let label = |e: usize| {
        let degree = match g.events[e].kind {
            EventKind::Cross => g.crossing_degree(e),
            _ => 1,
        };
        (generator_name(s, e), degree)
    };
    certify(assemble(&g.events, &g.trace, &dir, &basepoints, g.modulus, &label)?)
}

fn map_letters(p: &NCPoly, f: &dyn Fn(Letter) -> Letter) -> NCPoly {
    NCPoly::from_words(p.words().map(|w| w.iter().map(|&l| f(l)).collect()))
}

fn map_matrix(m: &NCMatrix, f: &dyn Fn(&NCPoly) -> NCPoly) -> NCMatrix {
    let n = m.size();
    let mut out = NCMatrix::zero(n);
    for i in 0..n {
        for j in 0..n {
            out.set(i, j, f(m.get(i, j)));
        }
    }
    out
}

/// The algebra map Φ_L from the DGA of (K, *) to n×n matrices over the DGA
/// of S(K, L): crossings and right cusps of K go to their matrices Q_m and
/// C_m, and t to the path matrix of L.
pub struct PhiL {
    pub n: usize,
    pub companion: FreeDGA,
    pub satellite: FreeDGA,
    pub front: SatelliteFront,
    /// Matrix of each companion generator.
    pub images: Vec<NCMatrix>,
    /// B_m for each left cusp event of K.
    pub left_cusps: Vec<(usize, NCMatrix)>,
    pub t_image: NCMatrix,
    pub t_inverse_image: NCMatrix,
}

impl PhiL {
    pub fn apply(&self, p: &NCPoly) -> NCMatrix {
        let mut out = NCMatrix::zero(self.n);
        for w in p.words() {
            let mut acc = NCMatrix::identity(self.n);
            for &l in w {
                let m = match (self.companion.generator_index(l), l & 1) {
                    (Some(g), _) => &self.images[g],
                    (None, 0) => &self.t_image,
                    (None, _) => &self.t_inverse_image,
                };
                acc = acc.mul(m);
            }
            out = out.add(&acc);
        }
        out
    }
}

/// Builds Φ_L for a plat knot K with one rightward basepoint and a
/// cusp-free pattern L.
pub fn phi_l(k: &PlatFront, l: &AnnulusPattern) -> Result<PhiL> {
    if !l.is_cusp_free() {
        return Err(Error::Precondition("Φ_L needs a cusp-free pattern".into()));
    }
    if !k.is_plat() {
        return Err(Error::Precondition("the companion must be in plat position".into()));
    }
    let bps = k.basepoints_or_default();
    if bps.len() != 1 {
        return Err(Error::Precondition("the companion needs exactly one basepoint".into()));
    }
    let k = k.with_basepoints(bps.clone())?;
    let companion = build_dga(&k, &bps)?;
    let modulus = grading_modulus(&k);
    let s = satellite(&k, l, modulus)?;
    if s.reflected {
        return Err(Error::Precondition("the basepoint of K must sit on a rightward strand".into()));
    }
    let sat = satellite_dga(&s, false)?;
    let n = s.copies;
    let by_prov: HashMap<Provenance, Letter> =
        sat.generators.iter().enumerate().map(|(g, gen)| (s.provenance[gen.event], sat.gen(g))).collect();
    let entry = |source: Source, m: usize, i: usize, j: usize| -> NCPoly {
        by_prov.get(&Provenance { source, event: m, upper: i, lower: j }).map_or(NCPoly::zero(), |&a| NCPoly::letter(a))
    };
    let block = |source: Source, m: usize, keep: &dyn Fn(usize, usize) -> bool| {
        let mut b = NCMatrix::zero(n);
        for i in 0..n {
            for j in 0..n {
                if keep(i, j) {
                    b.set(i, j, entry(source, m, i, j));
                }
            }
        }
        b
    };
    let images = companion
        .generators
        .iter()
        .map(|g| match k.events()[g.event].kind {
            EventKind::Cross => block(Source::Crossing, g.event, &|_, _| true),
            _ => block(Source::RightCusp, g.event, &|i, j| i >= j),
        })
        .collect();
    let left_cusps = (0..k.events().len())
        .filter(|&m| k.events()[m].kind == EventKind::Left)
        .map(|m| (m, block(Source::LeftCusp, m, &|i, j| i < j)))
        .collect();
    let rename = |l: Letter| {
        let pe = (l >> 1) as usize - 1;
        by_prov[&Provenance { source: Source::Pattern, event: pe, upper: 0, lower: 0 }] | (l & 1)
    };
    let t_image = map_matrix(&path_matrix(l)?, &|p| map_letters(p, &rename));
    let t_inverse_image = map_matrix(&path_matrix_inverse(l)?, &|p| map_letters(p, &rename));
    Ok(PhiL { n, companion, satellite: sat, front: s, images, left_cusps, t_image, t_inverse_image })
}

/// Outcome of the matrix identities for D on S(K, L).
#[derive(Clone, Debug, Default)]
pub struct MatrixDiffReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl MatrixDiffReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

fn in_b_ideal(p: &NCPoly, is_b: &dyn Fn(Letter) -> bool) -> bool {
    p.words().all(|w| w.iter().any(|&l| is_b(l)))
}

/// Checks D̄B = B², D̄Q ≡ Φ_L(∂q) and D̄C ≡ π_low Φ_L(∂c) modulo the ideal
/// of the b generators, Dp in that ideal, and the generator counts.
pub fn verify_matrix_differential(k: &PlatFront, l: &AnnulusPattern) -> Result<MatrixDiffReport> {
    let phi = phi_l(k, l)?;
    let sat = &phi.satellite;
    let n = phi.n;
    let is_b = |x: Letter| sat.generator_index(x).is_some_and(|g| phi.front.provenance[sat.generators[g].event].source == Source::LeftCusp);
    let d_bar = |m: &NCMatrix| map_matrix(m, &|p| sat.d_poly(p));
    let name = |g: usize| phi.companion.generators[g].name.clone();
    let mut report = MatrixDiffReport::default();
    let compare = |what: String, lhs: &NCMatrix, rhs: &NCMatrix, modulo_b: bool, report: &mut MatrixDiffReport| {
        for i in 0..n {
            for j in 0..n {
                report.checked += 1;
                let diff = lhs.get(i, j).add(rhs.get(i, j));
                let ok = if modulo_b { in_b_ideal(&diff, &is_b) } else { diff.is_zero() };
                if !ok {
                    report.failures.push(format!("{what} entry ({}, {}): {}", i + 1, j + 1, sat.poly_to_string(&diff)));
                }
            }
        }
    };
    for (m, b) in &phi.left_cusps {
        compare(format!("D B at left cusp event {}", m + 1), &d_bar(b), &b.mul(b), false, &mut report);
    }
    for (g, gen) in phi.companion.generators.iter().enumerate() {
        let lhs = d_bar(&phi.images[g]);
        let mut rhs = phi.apply(&phi.companion.differential[g]);
        if gen.kind == super::GenKind::RightCusp {
            for i in 0..n {
                for j in i + 1..n {
                    rhs.set(i, j, NCPoly::zero());
                }
            }
        }
        compare(format!("D of the matrix of {}", name(g)), &lhs, &rhs, true, &mut report);
    }
    for (g, gen) in sat.generators.iter().enumerate() {
        if phi.front.provenance[gen.event].source == Source::Pattern {
            report.checked += 1;
            if !in_b_ideal(&sat.differential[g], &is_b) {
                report.failures.push(format!("D {} is not in the b ideal", gen.name));
            }
        }
    }
    let count = |src: Source| phi.front.provenance.iter().zip(&phi.front.graded.events).filter(|(p, e)| p.source == src && e.kind != EventKind::Left).count();
    let kc = |kind: EventKind| k.count(kind);
    let expected = [
        (Source::LeftCusp, kc(EventKind::Left) * n * (n - 1) / 2),
        (Source::Crossing, kc(EventKind::Cross) * n * n),
        (Source::RightCusp, kc(EventKind::Right) * n * (n + 1) / 2),
        (Source::Pattern, l.crossing_count()),
    ];
    for (src, want) in expected {
        report.checked += 1;
        if count(src) != want {
            report.failures.push(format!("{src:?}: {} generators, expected {want}", count(src)));
        }
    }
    Ok(report)
}
