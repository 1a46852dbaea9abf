//! Constructors for annulus patterns: basic fronts, stacking, twists.

use super::{AnnulusPattern, Event, EventKind};
use crate::error::{Error, Result};
use std::collections::BTreeMap;

/// The closure of the braid σ1⋯σ(k-1) with constant potential `m`.
pub fn basic_front(k: usize, m: i64) -> Result<AnnulusPattern> {
    if k == 0 {
        return Err(Error::Precondition("basic front needs k >= 1".into()));
    }
    AnnulusPattern::new(k, vec![m; k], (0..k - 1).map(Event::cross).collect())
}

/// `top` stacked above `bottom`; the events of `top` come first.
pub fn product(top: &AnnulusPattern, bottom: &AnnulusPattern) -> AnnulusPattern {
    let n = top.strands();
    let mut events = top.events().to_vec();
    events.extend(bottom.events().iter().map(|e| Event { kind: e.kind, pos: e.pos + n }));
    let mut maslov = top.maslov().to_vec();
    maslov.extend_from_slice(bottom.maslov());
    AnnulusPattern::new(n + bottom.strands(), maslov, events).expect("stacking valid patterns")
}

/// A block list Λ: pairs (k, m) standing for A_k^m, stacked top to bottom.
pub type Blocks = Vec<(usize, i64)>;

/// A_Λ, the stacked product of basic fronts.
pub fn basic_product(blocks: &[(usize, i64)]) -> Result<AnnulusPattern> {
    let mut out = AnnulusPattern::trivial(0);
    for &(k, m) in blocks {
        out = product(&out, &basic_front(k, m)?);
    }
    Ok(out)
}

/// Graded dimension of a block list: number of strands at each potential,
/// reduced mod `modulus` (0 = integers).
pub fn graded_dimension(blocks: &[(usize, i64)], modulus: u32) -> BTreeMap<i64, usize> {
    let mut out = BTreeMap::new();
    for &(k, m) in blocks {
        let m = if modulus == 0 { m } else { m.rem_euclid(modulus as i64) };
        *out.entry(m).or_insert(0) += k;
    }
    out
}

/// Crossing word of the positive half twist on `n` strands: strands n-1,
/// n-2, ..., 1 in turn cross over every strand below them, so the word is
/// (X(n-1)) (X(n-2) X(n-1)) ⋯ (X1 ⋯ X(n-1)), 0-based here. Each entry of
/// the path matrix above the antidiagonal is then a single crossing.
pub fn half_twist_word(n: usize) -> Vec<Event> {
    let mut w = Vec::new();
    for start in (0..n.saturating_sub(1)).rev() {
        w.extend((start..n - 1).map(Event::cross));
    }
    w
}

pub fn half_twist(n: usize) -> Result<AnnulusPattern> {
    if n == 0 {
        return Err(Error::Precondition("half twist needs n >= 1".into()));
    }
    AnnulusPattern::new(n, vec![0; n], half_twist_word(n))
}

/// Full twist on blocks of strands: `dims[k]` strands with potential k, the
/// block of potential 0 on top.
pub fn full_twist(dims: &[usize]) -> Result<AnnulusPattern> {
    let n: usize = dims.iter().sum();
    if dims.is_empty() || n == 0 {
        return Err(Error::Precondition("full twist needs a nonempty graded dimension".into()));
    }
    let maslov: Vec<i64> = dims.iter().enumerate().flat_map(|(k, &d)| std::iter::repeat_n(k as i64, d)).collect();
    let mut events = half_twist_word(n);
    events.extend(half_twist_word(n));
    AnnulusPattern::new(n, maslov, events)
}

/// One strand with a zigzag: `L2; R1` when `descending`, else `L1; R2`.
/// The satellite of K with it is a stabilization of K.
pub fn zigzag(descending: bool) -> AnnulusPattern {
    let events = if descending { vec![Event::left(1), Event::right(0)] } else { vec![Event::left(0), Event::right(1)] };
    AnnulusPattern::new(1, vec![0], events).expect("valid zigzag")
}

/// Mirror in a vertical line: reversed x-order, left and right cusps swap.
pub fn reflect(p: &AnnulusPattern) -> AnnulusPattern {
    let events = p
        .events()
        .iter()
        .rev()
        .map(|e| Event {
            kind: match e.kind {
                EventKind::Left => EventKind::Right,
                EventKind::Right => EventKind::Left,
                EventKind::Cross => EventKind::Cross,
            },
            pos: e.pos,
        })
        .collect();
    AnnulusPattern::new(p.strands(), p.maslov().to_vec(), events).expect("reflection of a valid pattern")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_fronts() {
        let a = basic_front(3, 2).unwrap();
        assert_eq!(a.events(), &[Event::cross(0), Event::cross(1)]);
        assert_eq!(a.maslov(), &[2, 2, 2]);
        assert_eq!(basic_front(1, 0).unwrap().crossing_count(), 0);
        assert!(basic_front(0, 0).is_err());
        let p = product(&basic_front(2, 0).unwrap(), &basic_front(1, 1).unwrap());
        assert_eq!((p.strands(), p.crossing_count(), p.maslov().to_vec()), (3, 1, vec![0, 0, 1]));
    }

    #[test]
    fn graded_dimension_of_caption_example() {
        let blocks = [(3, 1), (2, 2), (2, 1)];
        let n = graded_dimension(&blocks, 0);
        assert_eq!(n.get(&1), Some(&5));
        assert_eq!(n.get(&2), Some(&2));
    }

    #[test]
    fn twists() {
        assert_eq!(half_twist(2).unwrap().crossing_count(), 1);
        assert_eq!(half_twist(5).unwrap().crossing_count(), 10);
        assert_eq!(full_twist(&[2]).unwrap().crossing_count(), 2);
        assert_eq!(full_twist(&[2, 1]).unwrap().maslov(), &[0, 0, 1]);
        assert!(full_twist(&[]).is_err());
    }

    #[test]
    fn reflection_is_an_involution() {
        let p = AnnulusPattern::new(2, vec![0, 0], vec![Event::left(0), Event::cross(1), Event::right(2)]).unwrap();
        assert_eq!(reflect(&reflect(&p)), p);
    }
}
