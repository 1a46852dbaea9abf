//! Path matrices of cusp-free annulus patterns, plus the GF(2) linear
//! algebra that relates them to representations.
//!
//! Crossing k of a pattern (counted from 1 in x-order) carries the letter
//! p_k. Its elementary matrix C_k is the identity except for the block
//! [[p_k, 1], [1, 0]] on the two positions it swaps, and P_L = C_1 ⋯ C_r.

pub mod gf2;
pub mod ncpoly;
pub mod normal_form;

use crate::diagram::{AnnulusPattern, EventKind};
use crate::error::{Error, Result};
use gf2::GF2Matrix;
use ncpoly::{letter, symbol_of, Letter, NCMatrix, NCPoly};

pub fn crossing_name(l: Letter) -> String {
    format!("p{}", symbol_of(l))
}

fn require_cusp_free(l: &AnnulusPattern) -> Result<()> {
    if l.is_cusp_free() {
        Ok(())
    } else {
        Err(Error::Precondition("path matrices need a cusp-free pattern".into()))
    }
}

fn elementary(n: usize, pos: usize, p: NCPoly, inverse: bool) -> NCMatrix {
    let mut c = NCMatrix::identity(n);
    let (a, b) = (pos, pos + 1);
    c.set(a, b, NCPoly::one());
    c.set(b, a, NCPoly::one());
    if inverse {
        c.set(a, a, NCPoly::zero());
        c.set(b, b, p);
    } else {
        c.set(a, a, p);
        c.set(b, b, NCPoly::zero());
    }
    c
}

/// P_L = C_1 ⋯ C_r.
pub fn path_matrix(l: &AnnulusPattern) -> Result<NCMatrix> {
    require_cusp_free(l)?;
    let n = l.strands();
    let mut m = NCMatrix::identity(n);
    for (k, e) in l.events().iter().enumerate() {
        m = m.mul(&elementary(n, e.pos, NCPoly::letter(letter(k as u32 + 1)), false));
    }
    Ok(m)
}

/// P_L^-1 = C_r^-1 ⋯ C_1^-1, with C_k^-1 = [[0, 1], [1, p_k]] on its block.
pub fn path_matrix_inverse(l: &AnnulusPattern) -> Result<NCMatrix> {
    require_cusp_free(l)?;
    let n = l.strands();
    let mut m = NCMatrix::identity(n);
    for (k, e) in l.events().iter().enumerate().rev() {
        m = m.mul(&elementary(n, e.pos, NCPoly::letter(letter(k as u32 + 1)), true));
    }
    Ok(m)
}

/// Degree of each crossing letter p_k: the potential of the over strand
/// minus that of the under strand.
pub fn crossing_degrees(l: &AnnulusPattern, modulus: u32) -> Result<Vec<i64>> {
    let g = l.graded(modulus)?;
    Ok(g.crossing_events().into_iter().map(|e| g.crossing_degree(e)).collect())
}

/// Image of an NC matrix under p_k ↦ assign[k - 1]. Letters without an
/// assigned value map to 0.
pub fn specialize(m: &NCMatrix, assign: &[bool]) -> GF2Matrix {
    let n = m.size();
    let mut out = GF2Matrix::zero(n);
    for i in 0..n {
        for j in 0..n {
            let bit = m.get(i, j).words().fold(false, |acc, w| {
                let v = w.iter().all(|&l| assign.get(symbol_of(l) as usize - 1).copied().unwrap_or(false));
                acc ^ v
            });
            out.set(i, j, bit);
        }
    }
    out
}

/// Whether `assign` only sends letters of degree 0 mod p to 1.
pub fn respects_grading(l: &AnnulusPattern, assign: &[bool], modulus: u32) -> Result<bool> {
    let degs = crossing_degrees(l, modulus)?;
    if assign.len() != degs.len() {
        return Err(Error::Precondition(format!("{} values for {} crossings", assign.len(), degs.len())));
    }
    Ok(assign.iter().zip(&degs).all(|(&a, &d)| !a || d == 0))
}

/// Specialized path matrix of `l`, rejecting assignments that break the
/// grading rule.
pub fn specialized_path_matrix(l: &AnnulusPattern, assign: &[bool], modulus: u32) -> Result<GF2Matrix> {
    if !respects_grading(l, assign, modulus)? {
        return Err(Error::Precondition("assignment sends a letter of nonzero degree to 1".into()));
    }
    Ok(specialize(&path_matrix(l)?, assign))
}

/// Independent computation of P_L by summing over paths: a path runs left to
/// right along the strands, and at a crossing the path on the upper position
/// may turn through the upper quadrant (keeping its position) at the cost
/// of the crossing's letter.
pub fn path_matrix_by_paths(l: &AnnulusPattern) -> Result<NCMatrix> {
    require_cusp_free(l)?;
    let n = l.strands();
    let mut m = NCMatrix::zero(n);
    for start in 0..n {
        let mut stack = vec![(0usize, start, Vec::<Letter>::new())];
        while let Some((at, pos, word)) = stack.pop() {
            if at == l.events().len() {
                let mut entry = m.get(start, pos).clone();
                entry.toggle(word);
                m.set(start, pos, entry);
                continue;
            }
            let e = l.events()[at];
            debug_assert_eq!(e.kind, EventKind::Cross);
            if pos == e.pos {
                let mut turned = word.clone();
                turned.push(letter(at as u32 + 1));
                stack.push((at + 1, pos, turned));
                stack.push((at + 1, pos + 1, word));
            } else if pos == e.pos + 1 {
                stack.push((at + 1, pos - 1, word));
            } else {
                stack.push((at + 1, pos, word));
            }
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::patterns::{basic_front, half_twist};

    #[test]
    fn basic_front_matrix() {
        let p = path_matrix(&basic_front(3, 0).unwrap()).unwrap();
        assert_eq!(p.get(0, 0), &NCPoly::letter(letter(1)));
        assert_eq!(p.get(0, 1), &NCPoly::letter(letter(2)));
        assert!(p.get(0, 2).is_one() && p.get(1, 0).is_one() && p.get(2, 1).is_one());
        assert!(p.get(1, 1).is_zero());
    }

    #[test]
    fn inverse_and_oracle() {
        let l = half_twist(4).unwrap();
        let p = path_matrix(&l).unwrap();
        assert!(p.mul(&path_matrix_inverse(&l).unwrap()).is_identity());
        assert_eq!(p, path_matrix_by_paths(&l).unwrap());
    }

    #[test]
    fn specialization() {
        let a2 = basic_front(2, 0).unwrap();
        let p = path_matrix(&a2).unwrap();
        assert_eq!(specialize(&p, &[false]), GF2Matrix::from_rows(&[&[0, 1], &[1, 0]]));
        assert_eq!(specialize(&p, &[true]), GF2Matrix::from_rows(&[&[1, 1], &[1, 0]]));
        let shifted = AnnulusPattern::new(2, vec![0, 1], vec![crate::Event::cross(0)]);
        // potentials 0 and 1 on the two strands cannot close up across one crossing
        assert!(shifted.is_err() || crossing_degrees(&shifted.unwrap(), 0).is_err());
    }
}
