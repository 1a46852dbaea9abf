//! Square matrices over Z/2, rows packed into u64 (n <= 64).

use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GF2Matrix {
    n: usize,
    rows: Vec<u64>,
}

impl GF2Matrix {
    pub fn zero(n: usize) -> Self {
        assert!(n <= 64, "GF2Matrix supports n <= 64");
        GF2Matrix { n, rows: vec![0; n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = GF2Matrix::zero(n);
        for i in 0..n {
            m.rows[i] = 1 << i;
        }
        m
    }

    pub fn from_rows(rows: &[&[u8]]) -> Self {
        let mut m = GF2Matrix::zero(rows.len());
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), rows.len());
            for (j, &b) in r.iter().enumerate() {
                m.set(i, j, b & 1 == 1);
            }
        }
        m
    }

    /// Matrix whose entries are the bits of `code`, row-major.
    pub fn from_code(n: usize, code: u64) -> Self {
        let mut m = GF2Matrix::zero(n);
        for i in 0..n {
            m.rows[i] = (code >> (i * n)) & ((1u64 << n) - 1);
        }
        m
    }

    pub fn code(&self) -> u64 {
        self.rows.iter().enumerate().fold(0, |c, (i, &r)| c | r << (i * self.n))
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i] >> j & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        if v {
            self.rows[i] |= 1 << j;
        } else {
            self.rows[i] &= !(1 << j);
        }
    }

    pub fn row(&self, i: usize) -> u64 {
        self.rows[i]
    }

    pub fn set_row(&mut self, i: usize, r: u64) {
        self.rows[i] = r;
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|&r| r == 0)
    }

    pub fn add(&self, o: &GF2Matrix) -> GF2Matrix {
        GF2Matrix { n: self.n, rows: self.rows.iter().zip(&o.rows).map(|(a, b)| a ^ b).collect() }
    }

    pub fn mul(&self, o: &GF2Matrix) -> GF2Matrix {
        assert_eq!(self.n, o.n);
        let mut out = GF2Matrix::zero(self.n);
        for i in 0..self.n {
            let mut r = self.rows[i];
            let mut acc = 0;
            while r != 0 {
                let k = r.trailing_zeros() as usize;
                acc ^= o.rows[k];
                r &= r - 1;
            }
            out.rows[i] = acc;
        }
        out
    }

    /// Row vector times matrix, vectors as bitmasks.
    pub fn apply_row(&self, v: u64) -> u64 {
        let mut acc = 0;
        let mut r = v;
        while r != 0 {
            let k = r.trailing_zeros() as usize;
            acc ^= self.rows[k];
            r &= r - 1;
        }
        acc
    }

    /// Matrix times column vector.
    pub fn apply(&self, v: u64) -> u64 {
        let mut out = 0;
        for i in 0..self.n {
            if (self.rows[i] & v).count_ones() % 2 == 1 {
                out |= 1 << i;
            }
        }
        out
    }

    pub fn transpose(&self) -> GF2Matrix {
        let mut t = GF2Matrix::zero(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                if self.get(i, j) {
                    t.set(j, i, true);
                }
            }
        }
        t
    }

    pub fn pow(&self, mut e: u32) -> GF2Matrix {
        let mut base = self.clone();
        let mut acc = GF2Matrix::identity(self.n);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn inverse(&self) -> Option<GF2Matrix> {
        let n = self.n;
        let mut a = self.rows.clone();
        let mut b = GF2Matrix::identity(n).rows;
        for col in 0..n {
            let piv = (col..n).find(|&r| a[r] >> col & 1 == 1)?;
            a.swap(col, piv);
            b.swap(col, piv);
            for r in 0..n {
                if r != col && a[r] >> col & 1 == 1 {
                    a[r] ^= a[col];
                    b[r] ^= b[col];
                }
            }
        }
        Some(GF2Matrix { n, rows: b })
    }

    pub fn is_invertible(&self) -> bool {
        self.rank() == self.n
    }

    pub fn rank(&self) -> usize {
        rank_of(&self.rows)
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.n).all(|i| self.rows[i] & ((1u64 << i) - 1) == 0)
    }

    /// Zero below the antidiagonal: entry (i, j) (0-based) vanishes when
    /// i + j > n - 1.
    pub fn is_skew_upper_triangular(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| i + j < self.n || !self.get(i, j)))
    }

    /// Block diagonal assembly.
    pub fn block_diag(blocks: &[GF2Matrix]) -> GF2Matrix {
        let n = blocks.iter().map(|b| b.n).sum();
        let mut m = GF2Matrix::zero(n);
        let mut off = 0;
        for b in blocks {
            for i in 0..b.n {
                m.rows[off + i] = b.rows[i] << off;
            }
            off += b.n;
        }
        m
    }
}

pub fn rank_of(rows: &[u64]) -> usize {
    let mut basis: Vec<u64> = Vec::new();
    for &r in rows {
        let mut x = r;
        for &b in &basis {
            x = x.min(x ^ b);
        }
        if x != 0 {
            basis.push(x);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis.len()
}

impl fmt::Debug for GF2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GF2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            if i > 0 {
                writeln!(f)?;
            }
            for j in 0..self.n {
                write!(f, "{}", if self.get(i, j) { '1' } else { '0' })?;
            }
        }
        Ok(())
    }
}

/// Every invertible n x n matrix, n <= 4.
pub fn general_linear(n: usize) -> Vec<GF2Matrix> {
    assert!(n <= 4, "enumeration of GL_n limited to n <= 4");
    (0..1u64 << (n * n)).map(|c| GF2Matrix::from_code(n, c)).filter(|m| m.is_invertible()).collect()
}

/// One representative per conjugacy class of GL_n(Z/2), smallest code first.
pub fn conjugacy_class_representatives(n: usize) -> Vec<GF2Matrix> {
    let group = general_linear(n);
    let inverses: Vec<GF2Matrix> = group.iter().map(|g| g.inverse().unwrap()).collect();
    let mut seen = std::collections::HashSet::new();
    let mut reps = Vec::new();
    for m in &group {
        if seen.contains(&m.code()) {
            continue;
        }
        reps.push(m.clone());
        for (g, gi) in group.iter().zip(&inverses) {
            seen.insert(g.mul(m).mul(gi).code());
        }
    }
    reps
}

/// The three conjugacy classes of GL_2(Z/2): I, A = [[0,1],[1,0]] and
/// B = [[0,1],[1,1]].
pub fn two_dim_classes() -> [(&'static str, GF2Matrix); 3] {
    [
        ("I", GF2Matrix::identity(2)),
        ("A", GF2Matrix::from_rows(&[&[0, 1], &[1, 0]])),
        ("B", GF2Matrix::from_rows(&[&[0, 1], &[1, 1]])),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_matrices() {
        let [(_, i), (_, a), (_, b)] = two_dim_classes();
        assert_eq!(a.mul(&a), i);
        assert_eq!(b.pow(3), i);
        assert_ne!(b, i);
        assert_eq!(general_linear(2).len(), 6);
        assert_eq!(general_linear(3).len(), 168);
        assert_eq!(conjugacy_class_representatives(2).len(), 3);
        // class sizes 1 + 3 + 2
        let g = general_linear(2);
        let class = |m: &GF2Matrix| {
            let mut s: Vec<u64> = g.iter().map(|c| c.mul(m).mul(&c.inverse().unwrap()).code()).collect();
            s.sort();
            s.dedup();
            s.len()
        };
        assert_eq!([class(&i), class(&a), class(&b)], [1, 3, 2]);
    }

    #[test]
    fn inverse_and_transpose() {
        for m in general_linear(3) {
            assert_eq!(m.mul(&m.inverse().unwrap()), GF2Matrix::identity(3));
            assert_eq!(m.transpose().transpose(), m);
        }
        assert!(GF2Matrix::zero(2).inverse().is_none());
    }
}
