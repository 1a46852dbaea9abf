//! The free associative Z/2-algebra on named letters, with optional inverse
//! letters (t and t^-1) that cancel when adjacent.

use std::collections::BTreeSet;
use std::fmt::Write as _;

/// A letter is `(symbol << 1) | inverse_bit`.
pub type Letter = u32;
pub type Word = Vec<Letter>;

pub fn letter(symbol: u32) -> Letter {
    symbol << 1
}

pub fn inverse_letter(symbol: u32) -> Letter {
    (symbol << 1) | 1
}

pub fn symbol_of(l: Letter) -> u32 {
    l >> 1
}

pub fn invert(l: Letter) -> Letter {
    l ^ 1
}

/// Append `w` to `out`, cancelling x x^-1 at the junction.
pub fn concat_into(out: &mut Word, w: &[Letter]) {
    for &l in w {
        if out.last() == Some(&invert(l)) {
            out.pop();
        } else {
            out.push(l);
        }
    }
}

/// Sum of words with coefficients in Z/2.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NCPoly {
    words: BTreeSet<Word>,
}

impl NCPoly {
    pub fn zero() -> Self {
        NCPoly::default()
    }

    pub fn one() -> Self {
        NCPoly::word(Vec::new())
    }

    pub fn word(w: Word) -> Self {
        let mut p = NCPoly::zero();
        p.toggle(w);
        p
    }

    pub fn letter(l: Letter) -> Self {
        NCPoly::word(vec![l])
    }

    pub fn from_words(ws: impl IntoIterator<Item = Word>) -> Self {
        let mut p = NCPoly::zero();
        for w in ws {
            p.toggle(w);
        }
        p
    }

    pub fn toggle(&mut self, w: Word) {
        if !self.words.remove(&w) {
            self.words.insert(w);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.words.len() == 1 && self.words.iter().next().unwrap().is_empty()
    }

    pub fn words(&self) -> impl Iterator<Item = &Word> {
        self.words.iter()
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn add_assign(&mut self, other: &NCPoly) {
        for w in &other.words {
            self.toggle(w.clone());
        }
    }

    pub fn add(&self, other: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn mul(&self, other: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        for a in &self.words {
            for b in &other.words {
                let mut w = a.clone();
                concat_into(&mut w, b);
                out.toggle(w);
            }
        }
        out
    }

    pub fn to_string_with(&self, names: &dyn Fn(Letter) -> String) -> String {
        if self.words.is_empty() {
            return "0".into();
        }
        let mut parts: Vec<String> = self
            .words
            .iter()
            .map(|w| if w.is_empty() { "1".to_string() } else { w.iter().map(|&l| names(l)).collect::<Vec<_>>().join(".") })
            .collect();
        // constant term last, as in `p1.p3 + 1`
        parts.sort_by_key(|p| (p == "1", p.len(), p.clone()));
        let mut s = String::new();
        for (i, p) in parts.iter().enumerate() {
            if i > 0 {
                s.push_str(" + ");
            }
            let _ = write!(s, "{p}");
        }
        s
    }
}

/// Square matrix over the free algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NCMatrix {
    n: usize,
    entries: Vec<NCPoly>,
}

impl NCMatrix {
    pub fn zero(n: usize) -> Self {
        NCMatrix { n, entries: vec![NCPoly::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = NCMatrix::zero(n);
        for i in 0..n {
            m.set(i, i, NCPoly::one());
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &NCPoly {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: NCPoly) {
        self.entries[i * self.n + j] = p;
    }

    pub fn add(&self, other: &NCMatrix) -> NCMatrix {
        assert_eq!(self.n, other.n);
        NCMatrix { n: self.n, entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn mul(&self, other: &NCMatrix) -> NCMatrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = NCMatrix::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let prod = a.mul(b);
                        out.entries[i * n + j].add_assign(&prod);
                    }
                }
            }
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        *self == NCMatrix::identity(self.n)
    }

    pub fn to_string_with(&self, names: &dyn Fn(Letter) -> String) -> String {
        let cells: Vec<Vec<String>> =
            (0..self.n).map(|i| (0..self.n).map(|j| self.get(i, j).to_string_with(names)).collect()).collect();
        let width = cells.iter().flatten().map(|c| c.len()).max().unwrap_or(1);
        cells
            .iter()
            .map(|row| format!("[ {} ]", row.iter().map(|c| format!("{c:>width$}")).collect::<Vec<_>>().join("  ")))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_letters_cancel() {
        let t = NCPoly::letter(letter(5));
        let ti = NCPoly::letter(inverse_letter(5));
        assert!(t.mul(&ti).is_one());
        assert!(ti.mul(&t).is_one());
        let a = NCPoly::letter(letter(1));
        // ordinary letters never cancel
        assert_eq!(a.mul(&a).len(), 1);
        assert!(a.add(&a).is_zero());
    }

    #[test]
    fn printing() {
        let p = NCPoly::from_words([vec![], vec![letter(1), letter(3)]]);
        let s = p.to_string_with(&|l| format!("p{}", symbol_of(l)));
        assert_eq!(s, "p1.p3 + 1");
    }
}
