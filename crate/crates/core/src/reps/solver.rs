//! Backtracking over the entries of generator matrices with the image of t
//! fixed. Unknowns are numbered generator by generator in event order, and
//! each entry of f(∂a) becomes a Z/2 polynomial in them that is checked
//! once its largest unknown has a value.

use super::MatrixRep;
use crate::dga::{reduce, FreeDGA};
use crate::pathmatrix::gf2::GF2Matrix;
use std::collections::BTreeSet;
use std::time::Instant;

/// Product of unknowns, sorted.
type Monomial = Vec<u32>;

#[derive(Clone, Default)]
struct Poly(BTreeSet<Monomial>);

impl Poly {
    fn one() -> Self {
        Poly(BTreeSet::from([Vec::new()]))
    }

    fn toggle(&mut self, m: Monomial) {
        if !self.0.remove(&m) {
            self.0.insert(m);
        }
    }

    fn add_assign(&mut self, o: &Poly) {
        for m in &o.0 {
            self.toggle(m.clone());
        }
    }

    fn times_unknown(&self, x: u32) -> Poly {
        let mut out = Poly::default();
        for m in &self.0 {
            let mut m2 = m.clone();
            if let Err(at) = m2.binary_search(&x) {
                m2.insert(at, x);
            }
            out.toggle(m2);
        }
        out
    }
}

struct Equation {
    monomials: Vec<Monomial>,
    constant: bool,
}

impl Equation {
    fn holds(&self, values: &[bool]) -> bool {
        let mut v = self.constant;
        for m in &self.monomials {
            v ^= m.iter().all(|&x| values[x as usize]);
        }
        !v
    }
}

pub(super) enum Status {
    Done,
    TimedOut,
}

pub(super) struct Solver {
    n: usize,
    eta: Vec<i64>,
    t: Vec<GF2Matrix>,
    generators: usize,
    /// (generator, row, column) of each unknown.
    unknowns: Vec<(usize, usize, usize)>,
    equations: Vec<Equation>,
    /// Equations to check once unknown i is set.
    triggers: Vec<Vec<usize>>,
    /// Unknowns that occur in no equation.
    unconstrained: Vec<bool>,
    infeasible: bool,
    all: bool,
    deadline: Option<Instant>,
    nodes: u64,
    values: Vec<bool>,
    found: Vec<Vec<bool>>,
}

impl Solver {
    /// `all` collects every solution (unconstrained unknowns take both
    /// values); otherwise the search stops at the first one.
    pub fn new(dga: &FreeDGA, p: u32, eta: &[i64], t: &[GF2Matrix], all: bool, deadline: Option<Instant>) -> Self {
        let n = eta.len();
        let mut unknowns = Vec::new();
        let mut index: Vec<Vec<Option<u32>>> = Vec::new();
        for (g, gen) in dga.generators.iter().enumerate() {
            let mut cells = vec![None; n * n];
            for r in 0..n {
                for c in 0..n {
                    if reduce(eta[c] - eta[r] - gen.degree, p) == 0 {
                        cells[r * n + c] = Some(unknowns.len() as u32);
                        unknowns.push((g, r, c));
                    }
                }
            }
            index.push(cells);
        }
        let t_inv: Vec<GF2Matrix> = t.iter().map(|m| m.inverse().expect("invertible t")).collect();
        let mut equations = Vec::new();
        let mut infeasible = false;
        for d in &dga.differential {
            for r in 0..n {
                // row r of f(∂a), as polynomials in the unknowns
                let mut row = vec![Poly::default(); n];
                for w in d.words() {
                    let mut cur = vec![Poly::default(); n];
                    cur[r] = Poly::one();
                    for &l in w {
                        let mut next = vec![Poly::default(); n];
                        if let Some(g) = dga.generator_index(l) {
                            for k in 0..n {
                                for c in 0..n {
                                    if let Some(x) = index[g][k * n + c] {
                                        next[c].add_assign(&cur[k].times_unknown(x));
                                    }
                                }
                            }
                        } else {
                            let j = dga.t_index(l).expect("t letter");
                            let m = if l & 1 == 1 { &t_inv[j] } else { &t[j] };
                            for k in 0..n {
                                for c in 0..n {
                                    if m.get(k, c) {
                                        next[c].add_assign(&cur[k]);
                                    }
                                }
                            }
                        }
                        cur = next;
                    }
                    for c in 0..n {
                        row[c].add_assign(&cur[c]);
                    }
                }
                for entry in row {
                    let constant = entry.0.contains(&Vec::new());
                    let monomials: Vec<Monomial> = entry.0.into_iter().filter(|m| !m.is_empty()).collect();
                    if monomials.is_empty() {
                        infeasible |= constant;
                    } else {
                        equations.push(Equation { monomials, constant });
                    }
                }
            }
        }
        let mut triggers = vec![Vec::new(); unknowns.len()];
        let mut unconstrained = vec![true; unknowns.len()];
        for (e, eq) in equations.iter().enumerate() {
            let last = eq.monomials.iter().flat_map(|m| m.iter()).copied().max().expect("nonconstant");
            triggers[last as usize].push(e);
            for &x in eq.monomials.iter().flatten() {
                unconstrained[x as usize] = false;
            }
        }
        let count = unknowns.len();
        Solver {
            n,
            eta: eta.to_vec(),
            t: t.to_vec(),
            generators: dga.generators.len(),
            unknowns,
            equations,
            triggers,
            unconstrained,
            infeasible,
            all,
            deadline,
            nodes: 0,
            values: vec![false; count],
            found: Vec::new(),
        }
    }

    pub fn run(&mut self) -> Status {
        if self.infeasible {
            return Status::Done;
        }
        match self.descend(0) {
            Err(()) => Status::TimedOut,
            Ok(_) => Status::Done,
        }
    }

    /// Ok(true) when the search should stop (first solution found).
    fn descend(&mut self, i: usize) -> std::result::Result<bool, ()> {
        self.nodes += 1;
        if self.nodes.is_multiple_of(4096) && self.deadline.is_some_and(|d| Instant::now() > d) {
            return Err(());
        }
        if i == self.unknowns.len() {
            self.found.push(self.values.clone());
            return Ok(!self.all);
        }
        let choices: &[bool] = if self.unconstrained[i] && !self.all { &[false] } else { &[false, true] };
        for &v in choices {
            self.values[i] = v;
            if self.triggers[i].iter().all(|&e| self.equations[e].holds(&self.values)) && self.descend(i + 1)? {
                return Ok(true);
            }
        }
        self.values[i] = false;
        Ok(false)
    }

    pub fn solutions(&self) -> Vec<MatrixRep> {
        self.found
            .iter()
            .map(|vals| {
                let mut images = vec![GF2Matrix::zero(self.n); self.generators];
                for (x, &(g, r, c)) in self.unknowns.iter().enumerate() {
                    images[g].set(r, c, vals[x]);
                }
                MatrixRep { eta: self.eta.clone(), images, t_images: self.t.clone() }
            })
            .collect()
    }
}
