//! Changing basepoints: sliding one across a crossing, and collapsing a
//! cluster of basepoints into one.

use super::{build_dga, FreeDGA};
use crate::diagram::{Basepoint, EventKind, PlatFront};
use crate::error::{Error, Result};
use crate::pathmatrix::ncpoly::{Letter, NCPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// An algebra map given by the images of the generators of its source; t
/// letters map to `t_images`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Substitution {
    pub images: Vec<NCPoly>,
    pub t_images: Vec<NCPoly>,
    pub t_inverse_images: Vec<NCPoly>,
}

impl Substitution {
    pub fn apply(&self, source: &FreeDGA, p: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        for w in p.words() {
            let mut acc = NCPoly::one();
            for &l in w {
                acc = acc.mul(&self.image(source, l));
            }
            out.add_assign(&acc);
        }
        out
    }

    fn image(&self, source: &FreeDGA, l: Letter) -> NCPoly {
        match (source.generator_index(l), source.t_index(l)) {
            (Some(g), _) => self.images[g].clone(),
            (None, Some(j)) if l & 1 == 1 => self.t_inverse_images[j].clone(),
            (None, Some(j)) => self.t_images[j].clone(),
            _ => unreachable!(),
        }
    }

    /// φ∘∂ = ∂'∘φ on every generator of the source; returns the failures.
    pub fn chain_map_failures(&self, source: &FreeDGA, target: &FreeDGA) -> Vec<usize> {
        (0..source.generators.len())
            .filter(|&g| {
                let lhs = self.apply(source, &source.differential[g]);
                let rhs = target.d_poly(&self.images[g]);
                lhs != rhs
            })
            .collect()
    }
}

fn identity_on_t(source: &FreeDGA, target: &FreeDGA) -> (Vec<NCPoly>, Vec<NCPoly>) {
    let k = source.basepoints.len();
    ((0..k).map(|j| NCPoly::letter(target.t(j))).collect(), (0..k).map(|j| NCPoly::letter(target.t_inv(j))).collect())
}

/// Slide basepoint `i` of `front` across the crossing on the given side.
/// Returns the new front, its DGA, and the isomorphism φ from the old DGA
/// to the new one, which fixes every t_j. When the crossing involves the
/// basepoint's strand, φ(a) = t^∓1 a (over strand) or a t^±1 (under
/// strand), the sign being + when the slide follows the orientation.
pub fn move_basepoint(front: &PlatFront, i: usize, side: Side) -> Result<(PlatFront, FreeDGA, Substitution)> {
    let bps = front.basepoints().to_vec();
    let b = *bps.get(i).ok_or_else(|| Error::Precondition(format!("no basepoint {}", i + 1)))?;
    let e = match side {
        Side::Left => b.gap.checked_sub(1),
        Side::Right => (b.gap < front.events().len()).then_some(b.gap),
    }
    .ok_or_else(|| Error::Precondition("basepoint is at the end of the front".into()))?;
    let ev = front.events()[e];
    if ev.kind != EventKind::Cross {
        return Err(Error::Precondition(format!("basepoint {} is not next to a crossing", i + 1)));
    }
    let old = build_dga(front, &bps)?;
    let j = ev.pos;
    let swap = |q: usize| {
        if q == j {
            j + 1
        } else if q == j + 1 {
            j
        } else {
            q
        }
    };
    let new_gap = if side == Side::Left { b.gap - 1 } else { b.gap + 1 };
    let mut moved = bps.clone();
    moved[i] = Basepoint { gap: new_gap, pos: swap(b.pos), ..b };
    let new_front = front.with_basepoints(moved.clone())?;
    let new = build_dga(&new_front, &moved)?;
    let a = old.generators.iter().position(|g| g.event == e).expect("crossing generator");
    // position of the basepoint's strand on the left side of the crossing
    let left_pos = if side == Side::Left { moved[i].pos } else { b.pos };
    let along = (side == Side::Left) != b.rightward;
    let t = if along { new.t(i) } else { new.t_inv(i) };
    let mut images: Vec<NCPoly> = (0..old.generators.len()).map(|g| NCPoly::letter(new.gen(g))).collect();
    if left_pos == j {
        images[a] = NCPoly::letter(t ^ 1).mul(&images[a]);
    } else if left_pos == j + 1 {
        images[a] = images[a].mul(&NCPoly::letter(t));
    }
    let (t_images, t_inverse_images) = identity_on_t(&old, &new);
    let phi = Substitution { images, t_images, t_inverse_images };
    if let Some(&g) = phi.chain_map_failures(&old, &new).first() {
        return Err(Error::Internal(format!("basepoint move is not a chain map at {}", old.generators[g].name)));
    }
    Ok((new_front, new, phi))
}

/// The map from the one-basepoint DGA to the k-basepoint DGA of the same
/// front fixing every crossing and sending t to t_1 ⋯ t_k. The basepoints of
/// `multi` must share one spot, listed in the order the orientation meets
/// them, and `single` must have its basepoint there too.
pub fn merge_basepoints(multi: &FreeDGA, single: &FreeDGA) -> Result<Substitution> {
    if single.basepoints.len() != 1 || multi.basepoints.is_empty() {
        return Err(Error::Precondition("merge needs one basepoint on one side and some on the other".into()));
    }
    let spot = |b: &Basepoint| (b.gap, b.pos);
    if multi.basepoints.iter().any(|b| spot(b) != spot(&single.basepoints[0])) {
        return Err(Error::Precondition("basepoints are not clustered; move them together first".into()));
    }
    if multi.generators != single.generators {
        return Err(Error::Precondition("the two DGAs come from different fronts".into()));
    }
    let k = multi.basepoints.len();
    let images = (0..single.generators.len()).map(|g| NCPoly::letter(multi.gen(g))).collect();
    let prod = NCPoly::word((0..k).map(|j| multi.t(j)).collect());
    let inv = NCPoly::word((0..k).rev().map(|j| multi.t_inv(j)).collect());
    let phi = Substitution { images, t_images: vec![prod], t_inverse_images: vec![inv] };
    if let Some(&g) = phi.chain_map_failures(single, multi).first() {
        return Err(Error::Internal(format!("merge map is not a chain map at {}", single.generators[g].name)));
    }
    Ok(phi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::text::parse_front;

    fn trefoil() -> PlatFront {
        let t = parse_front("L1; L3; X2; X2; X2; R1; R3").unwrap();
        t.with_basepoints(t.basepoints_or_default()).unwrap()
    }

    #[test]
    fn slide_and_back() {
        let t = trefoil();
        let b = t.basepoints()[0];
        assert_eq!(b.gap, 2);
        let (f1, d1, phi) = move_basepoint(&t, 0, Side::Right).unwrap();
        let (f2, d2, psi) = move_basepoint(&f1, 0, Side::Left).unwrap();
        assert_eq!(f2, t);
        assert_eq!(d2, build_dga(&t, t.basepoints()).unwrap());
        // ψ∘φ is the identity on generators
        let d0 = build_dga(&t, t.basepoints()).unwrap();
        for g in 0..d0.generators.len() {
            let back = psi.apply(&d1, &phi.images[g]);
            assert_eq!(back, NCPoly::letter(d0.gen(g)));
        }
        assert!(phi.images.iter().any(|p| p.words().next().unwrap().len() == 2));
    }

    #[test]
    fn merge_three() {
        let t = trefoil();
        let b = t.basepoints()[0];
        let single = build_dga(&t, &[b]).unwrap();
        let multi = build_dga(&t, &[b, b, b]).unwrap();
        let phi = merge_basepoints(&multi, &single).unwrap();
        assert_eq!(multi.poly_to_string(&phi.t_images[0]), "t1.t2.t3");
        let one = build_dga(&t, &[b]).unwrap();
        let phi1 = merge_basepoints(&one, &single).unwrap();
        assert_eq!(phi1.t_images[0], NCPoly::letter(one.t(0)));
    }
}
