//! Normal forms of invertible matrices over Z/2 in terms of basic fronts.
//!
//! Every invertible M is conjugate to a specialized path matrix of some A_Λ:
//! the blocks come from the rational canonical form of (M^-1)^T, since
//! (P_{A_k}^-1)^T is the companion matrix of x^k + p_(k-1) x^(k-1) + ... + p_1 x + 1.

use super::gf2::GF2Matrix;
use crate::error::{Error, Result};

/// Coordinates of `v` in the span of `basis` (bit k = coefficient of
/// basis[k]), or None if `v` is not in the span.
fn coords(basis: &[u64], v: u64) -> Option<u64> {
    // reduced echelon with tracking
    let mut rows: Vec<(u64, u64)> = Vec::new();
    for (k, &b) in basis.iter().enumerate() {
        let mut x = (b, 1u64 << k);
        for &(r, t) in &rows {
            let lead = 63 - r.leading_zeros();
            if x.0 >> lead & 1 == 1 {
                x = (x.0 ^ r, x.1 ^ t);
            }
        }
        if x.0 != 0 {
            let lead = 63 - x.0.leading_zeros();
            for row in rows.iter_mut() {
                if row.0 >> lead & 1 == 1 {
                    *row = (row.0 ^ x.0, row.1 ^ x.1);
                }
            }
            rows.push(x);
        }
    }
    let mut x = (v, 0u64);
    for &(r, t) in &rows {
        let lead = 63 - r.leading_zeros();
        if x.0 >> lead & 1 == 1 {
            x = (x.0 ^ r, x.1 ^ t);
        }
    }
    (x.0 == 0).then_some(x.1)
}

fn krylov(n: &GF2Matrix, v: u64) -> Vec<u64> {
    let mut basis = vec![v];
    loop {
        let next = n.apply(*basis.last().unwrap());
        if coords(&basis, next).is_some() {
            return basis;
        }
        basis.push(next);
    }
}

/// Extend `part` (independent) to a basis of span(`space`).
fn extend_basis(part: &[u64], space: &[u64]) -> Vec<u64> {
    let mut out = part.to_vec();
    for &s in space {
        if coords(&out, s).is_none() {
            out.push(s);
        }
    }
    out
}

/// Cyclic decomposition: a list of Krylov bases whose union is a basis and
/// whose spans are invariant under `n`. Each chosen vector has the largest
/// Krylov dimension available in the remaining invariant subspace.
pub fn cyclic_decomposition(n: &GF2Matrix) -> Vec<Vec<u64>> {
    let size = n.size();
    let mut space: Vec<u64> = (0..size).map(|i| 1u64 << i).collect();
    let mut out = Vec::new();
    while !space.is_empty() {
        let m = space.len();
        assert!(m <= 24, "cyclic decomposition by search is limited to small dimensions");
        let mut best: Vec<u64> = Vec::new();
        for combo in 1u64..1 << m {
            let v = (0..m).filter(|&k| combo >> k & 1 == 1).fold(0, |acc, k| acc ^ space[k]);
            let k = krylov(n, v);
            if k.len() > best.len() {
                best = k;
                if best.len() == m {
                    break;
                }
            }
        }
        let d = best.len();
        let full = extend_basis(&best, &space);
        // f(x) = coefficient of N^(d-1) v in the basis `full`
        let f = |x: u64| coords(&full, x).unwrap() >> (d - 1) & 1;
        // complement: w with f(N^i w) = 0 for i < d
        let images: Vec<u64> = space
            .iter()
            .map(|&w| {
                let mut bits = 0;
                let mut x = w;
                for i in 0..d {
                    bits |= f(x) << i;
                    x = n.apply(x);
                }
                bits
            })
            .collect();
        let mut kernel = Vec::new();
        // kernel of the map sum c_j w_j -> sum c_j images[j]
        let mut rows: Vec<(u64, u64)> = Vec::new();
        for (j, &img) in images.iter().enumerate() {
            let mut x = (img, 1u64 << j);
            for &(r, t) in &rows {
                let lead = 63 - r.leading_zeros();
                if x.0 >> lead & 1 == 1 {
                    x = (x.0 ^ r, x.1 ^ t);
                }
            }
            if x.0 == 0 {
                kernel.push((0..m).filter(|&k| x.1 >> k & 1 == 1).fold(0, |acc, k| acc ^ space[k]));
            } else {
                let lead = 63 - x.0.leading_zeros();
                for row in rows.iter_mut() {
                    if row.0 >> lead & 1 == 1 {
                        *row = (row.0 ^ x.0, row.1 ^ x.1);
                    }
                }
                rows.push(x);
            }
        }
        assert_eq!(kernel.len() + d, m, "complement has the wrong dimension");
        out.push(best);
        space = kernel;
    }
    out
}

/// Specialized path matrix of A_k: first row (p_1, ..., p_(k-1), 1) and ones
/// on the subdiagonal.
pub fn basic_block(ps: &[bool]) -> GF2Matrix {
    let k = ps.len() + 1;
    let mut m = GF2Matrix::zero(k);
    for (j, &p) in ps.iter().enumerate() {
        m.set(0, j, p);
    }
    m.set(0, k - 1, true);
    for i in 1..k {
        m.set(i, i - 1, true);
    }
    m
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RcfPattern {
    /// Block sizes λ, largest first.
    pub blocks: Vec<usize>,
    /// Values of the crossings p_1, p_2, ... of A_Λ, block by block.
    pub assign: Vec<bool>,
    /// C with C · P_{A_Λ}(assign) · C^-1 = M.
    pub conjugator: GF2Matrix,
}

impl RcfPattern {
    pub fn specialized(&self) -> GF2Matrix {
        let mut blocks = Vec::new();
        let mut at = 0;
        for &k in &self.blocks {
            blocks.push(basic_block(&self.assign[at..at + k - 1]));
            at += k - 1;
        }
        GF2Matrix::block_diag(&blocks)
    }
}

pub fn rcf_pattern(m: &GF2Matrix) -> Result<RcfPattern> {
    let inv = m.inverse().ok_or_else(|| Error::Precondition("matrix is singular".into()))?;
    let n = inv.transpose();
    let decomp = cyclic_decomposition(&n);
    let size = m.size();
    let mut basis = GF2Matrix::zero(size);
    let mut col = 0;
    let mut blocks = Vec::new();
    let mut assign = Vec::new();
    for kry in &decomp {
        let d = kry.len();
        let top = n.apply(kry[d - 1]);
        let c = coords(kry, top).expect("Krylov space is invariant");
        if c & 1 != 1 {
            return Err(Error::Internal("companion block with zero constant term".into()));
        }
        assign.extend((1..d).map(|i| c >> i & 1 == 1));
        blocks.push(d);
        for &v in kry {
            for i in 0..size {
                basis.set(i, col, v >> i & 1 == 1);
            }
            col += 1;
        }
    }
    let conjugator = basis.inverse().expect("basis").transpose();
    let out = RcfPattern { blocks, assign, conjugator };
    let check = out.conjugator.mul(&out.specialized()).mul(&out.conjugator.inverse().unwrap());
    if check != *m {
        return Err(Error::Internal("rational canonical form does not reproduce the matrix".into()));
    }
    Ok(out)
}

fn skew_blocks(ps: &[bool]) -> (GF2Matrix, GF2Matrix, GF2Matrix) {
    let n = ps.len() + 1;
    let mut s1 = GF2Matrix::zero(n);
    let mut s2 = GF2Matrix::zero(n);
    let mut u = GF2Matrix::identity(n);
    for i in 1..=n {
        for j in 1..=n {
            s1.set(i - 1, j - 1, i + j == n || i + j == n + 1);
            s2.set(i - 1, j - 1, i + j <= n + 1);
        }
    }
    for j in 2..=n {
        u.set(0, j - 1, !ps[j - 2]);
    }
    (s1, s2, u)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewFactorization {
    pub conjugator: GF2Matrix,
    pub s1: GF2Matrix,
    pub s2: GF2Matrix,
    pub u: GF2Matrix,
}

/// C^-1 M C = S1 S2 U with S1, S2 zero below the antidiagonal and U upper
/// triangular.
pub fn skew_factorization(m: &GF2Matrix) -> Result<SkewFactorization> {
    let inv = m.inverse().ok_or_else(|| Error::Precondition("matrix is singular".into()))?;
    // M^-1 = C P C^-1, so C^-1 M C = P^-1, block diagonal in P_{A_k}^-1.
    let r = rcf_pattern(&inv)?;
    let size = m.size();
    let mut s1 = GF2Matrix::zero(size);
    let mut s2 = GF2Matrix::zero(size);
    let mut us = Vec::new();
    let offsets: Vec<usize> = r.blocks.iter().scan(0, |acc, &k| {
        let o = *acc;
        *acc += k;
        Some(o)
    }).collect();
    let mut at = 0;
    for (idx, &k) in r.blocks.iter().enumerate() {
        let (b1, b2, bu) = skew_blocks(&r.assign[at..at + k - 1]);
        at += k - 1;
        us.push(bu);
        // S1: block in its own rows, columns in reversed block order.
        // S2: block in reversed rows, its own columns.
        let after: usize = r.blocks[idx + 1..].iter().sum();
        let row_rev = size - offsets[idx] - k;
        for i in 0..k {
            for j in 0..k {
                s1.set(offsets[idx] + i, after + j, b1.get(i, j));
                s2.set(row_rev + i, offsets[idx] + j, b2.get(i, j));
            }
        }
    }
    let u = GF2Matrix::block_diag(&us);
    let out = SkewFactorization { conjugator: r.conjugator, s1, s2, u };
    let lhs = out.conjugator.inverse().unwrap().mul(m).mul(&out.conjugator);
    if lhs != out.s1.mul(&out.s2).mul(&out.u) {
        return Err(Error::Internal("skew factorization does not reproduce the matrix".into()));
    }
    Ok(out)
}
