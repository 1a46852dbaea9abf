//! Augmentations and finite dimensional representations of a DGA over Z/2.
//!
//! A representation sends every generator to a matrix over Z/2 and each t
//! to an invertible matrix, subject to f∘∂ = 0. The search fixes the image
//! of t first (one candidate at a time, see [`TConstraint`]) and then
//! backtracks over the entries of the generator matrices in event order.
//! Every entry of f(∂a) is expanded once into a polynomial in those entries
//! and checked as soon as its last unknown is assigned.

mod solver;

use crate::dga::{reduce, FreeDGA};
use crate::diagram::AnnulusPattern;
use crate::error::{Error, Result};
use crate::pathmatrix::gf2::{general_linear, GF2Matrix};
use crate::pathmatrix::ncpoly::NCPoly;
use crate::pathmatrix::{crossing_degrees, path_matrix, specialize};
use serde_json::{json, Map, Value};
use solver::{Solver, Status};
use std::collections::HashSet;
use std::time::{Duration, Instant};

pub use crate::pathmatrix::gf2::two_dim_classes;

/// Default time budget of one search.
pub const DEFAULT_TIMEOUT: Duration = Duration::from_secs(60);

/// An augmentation: a value per generator, with every t sent to 1.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Augmentation {
    pub values: Vec<bool>,
}

impl Augmentation {
    pub fn to_json(&self, dga: &FreeDGA) -> Value {
        let mut m = Map::new();
        for (g, &v) in self.values.iter().enumerate() {
            m.insert(dga.generators[g].name.clone(), json!(v as u8));
        }
        Value::Object(m)
    }
}

/// A representation on the graded space with basis vectors of degrees
/// `eta`: generator images and one invertible matrix per basepoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixRep {
    pub eta: Vec<i64>,
    pub images: Vec<GF2Matrix>,
    pub t_images: Vec<GF2Matrix>,
}

fn rows_json(m: &GF2Matrix) -> Value {
    let n = m.size();
    json!((0..n).map(|i| (0..n).map(|j| m.get(i, j) as u8).collect::<Vec<_>>()).collect::<Vec<_>>())
}

impl MatrixRep {
    pub fn dim(&self) -> usize {
        self.eta.len()
    }

    /// f(a) = C f(a) C⁻¹ for every generator and t.
    pub fn conjugate(&self, c: &GF2Matrix) -> Option<MatrixRep> {
        let ci = c.inverse()?;
        let conj = |m: &GF2Matrix| c.mul(m).mul(&ci);
        Some(MatrixRep {
            eta: self.eta.clone(),
            images: self.images.iter().map(conj).collect(),
            t_images: self.t_images.iter().map(conj).collect(),
        })
    }

    pub fn to_json(&self, dga: &FreeDGA) -> Value {
        let mut m = Map::new();
        for (g, img) in self.images.iter().enumerate() {
            m.insert(dga.generators[g].name.clone(), rows_json(img));
        }
        for (j, img) in self.t_images.iter().enumerate() {
            m.insert(dga.t_name(j), rows_json(img));
        }
        json!({"eta": self.eta, "images": m})
    }

    pub fn to_text(&self, dga: &FreeDGA) -> String {
        let show = |m: &GF2Matrix| {
            (0..m.size()).map(|i| (0..m.size()).map(|j| if m.get(i, j) { '1' } else { '0' }).collect::<String>()).collect::<Vec<_>>().join(" ")
        };
        let mut lines = vec![format!("dimension {} (degrees {:?})", self.dim(), self.eta)];
        for (j, m) in self.t_images.iter().enumerate() {
            lines.push(format!("{} = [{}]", dga.t_name(j), show(m)));
        }
        for (g, m) in self.images.iter().enumerate() {
            lines.push(format!("{} = [{}]", dga.generators[g].name, show(m)));
        }
        lines.join("\n")
    }
}

/// Where the image of t may lie.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TConstraint {
    /// Any invertible matrix of degree 0.
    Any,
    Exact(GF2Matrix),
    /// Any degree 0 matrix conjugate to the given one.
    ConjClass(GF2Matrix),
    /// M_L U: the path matrix of the cusp-free pattern with each crossing
    /// of degree 0 set to 0 or 1 and the others to 0, times an upper
    /// triangular U.
    PathForm(AnnulusPattern),
}

/// Result of a search that may run out of time.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome<T> {
    Found(T),
    /// The search space was exhausted.
    None,
    /// The time budget ran out first.
    Unknown,
}

impl<T> Outcome<T> {
    pub fn is_found(&self) -> bool {
        matches!(self, Outcome::Found(_))
    }

    pub fn label(&self) -> &'static str {
        match self {
            Outcome::Found(_) => "found",
            Outcome::None => "NONE (exhaustive)",
            Outcome::Unknown => "UNKNOWN (timeout)",
        }
    }
}

fn check_modulus(dga: &FreeDGA, p: u32) -> Result<()> {
    if dga.modulus != 0 && (p == 0 || !dga.modulus.is_multiple_of(p)) {
        return Err(Error::Precondition(format!("grading mod {p} is not defined when the DGA is graded mod {}", dga.modulus)));
    }
    Ok(())
}

/// Whether `m` only has entries (r, c) with eta_c - eta_r = degree mod p.
pub fn respects_degree(m: &GF2Matrix, eta: &[i64], degree: i64, p: u32) -> bool {
    let n = eta.len();
    (0..n).all(|r| (0..n).all(|c| !m.get(r, c) || reduce(eta[c] - eta[r] - degree, p) == 0))
}

/// Every augmentation graded mod p: generators of degree 0 mod p may take
/// either value, the others are 0.
pub fn find_augmentations(dga: &FreeDGA, p: u32) -> Result<Vec<Augmentation>> {
    check_modulus(dga, p)?;
    let one = vec![GF2Matrix::identity(1); dga.basepoints.len()];
    let mut solver = Solver::new(dga, p, &[0], &one, true, None);
    solver.run();
    Ok(solver.solutions().into_iter().map(|r| Augmentation { values: r.images.iter().map(|m| m.get(0, 0)).collect() }).collect())
}

/// Whether ε∘∂ = 0, with ε(t) = 1 and ε zero off degree 0 mod p.
pub fn verify_augmentation(dga: &FreeDGA, p: u32, aug: &Augmentation) -> bool {
    let rep = MatrixRep {
        eta: vec![0],
        images: aug.values.iter().map(|&v| GF2Matrix::from_code(1, v as u64)).collect(),
        t_images: vec![GF2Matrix::identity(1); dga.basepoints.len()],
    };
    verify_representation(dga, p, &rep)
}

/// Degree 0 invertible matrices, for the given basis degrees.
fn graded_group(eta: &[i64], p: u32) -> Result<Vec<GF2Matrix>> {
    let n = eta.len();
    if n > 4 {
        return Err(Error::Precondition("conjugacy class searches are limited to dimension <= 4".into()));
    }
    Ok(general_linear(n).into_iter().filter(|m| respects_degree(m, eta, 0, p)).collect())
}

/// One representative per orbit of `set` under conjugation by `group`.
fn orbit_representatives(set: &[GF2Matrix], group: &[GF2Matrix]) -> Vec<GF2Matrix> {
    let inverses: Vec<GF2Matrix> = group.iter().map(|g| g.inverse().expect("group element")).collect();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for m in set {
        if seen.contains(m) {
            continue;
        }
        out.push(m.clone());
        for (g, gi) in group.iter().zip(&inverses) {
            seen.insert(g.mul(m).mul(gi));
        }
    }
    out
}

/// The t-images to try, one per conjugacy class under degree 0 changes of
/// basis (which carry representations to representations).
pub fn t_candidates(eta: &[i64], p: u32, tc: &TConstraint) -> Result<Vec<GF2Matrix>> {
    let n = eta.len();
    match tc {
        TConstraint::Exact(m) => {
            if m.size() != n || !m.is_invertible() || !respects_degree(m, eta, 0, p) {
                return Err(Error::Precondition("the image of t must be invertible of degree 0 and of the right size".into()));
            }
            Ok(vec![m.clone()])
        }
        TConstraint::Any => {
            let group = graded_group(eta, p)?;
            Ok(orbit_representatives(&group, &group))
        }
        TConstraint::ConjClass(m) => {
            if m.size() != n || !m.is_invertible() {
                return Err(Error::Precondition("class representative must be invertible of the right size".into()));
            }
            let all = general_linear(n);
            let class: HashSet<GF2Matrix> = all.iter().map(|c| c.mul(m).mul(&c.inverse().unwrap())).collect();
            let group = graded_group(eta, p)?;
            let mut members: Vec<GF2Matrix> = group.iter().filter(|g| class.contains(*g)).cloned().collect();
            members.sort();
            Ok(orbit_representatives(&members, &group))
        }
        TConstraint::PathForm(l) => {
            if !l.is_cusp_free() || l.strands() != n {
                return Err(Error::Precondition("PathForm needs a cusp-free pattern with one strand per basis vector".into()));
            }
            if l.maslov().iter().zip(eta).any(|(&m, &e)| reduce(m - e, p) != 0) {
                return Err(Error::Precondition("basis degrees must be the potentials of the pattern at x = 0".into()));
            }
            let pm = path_matrix(l)?;
            let free: Vec<usize> =
                crossing_degrees(l, p)?.iter().enumerate().filter(|&(_, &d)| d == 0).map(|(k, _)| k).collect();
            let uppers: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
            let mut out: Vec<GF2Matrix> = Vec::new();
            let mut seen = HashSet::new();
            for bits in 0..1u64 << free.len() {
                let mut assign = vec![false; l.crossing_count()];
                for (b, &k) in free.iter().enumerate() {
                    assign[k] = bits >> b & 1 == 1;
                }
                let ml = specialize(&pm, &assign);
                for ubits in 0..1u64 << uppers.len() {
                    let mut u = GF2Matrix::identity(n);
                    for (b, &(i, j)) in uppers.iter().enumerate() {
                        u.set(i, j, ubits >> b & 1 == 1);
                    }
                    let t = ml.mul(&u);
                    if respects_degree(&t, eta, 0, p) && seen.insert(t.clone()) {
                        out.push(t);
                    }
                }
            }
            Ok(out)
        }
    }
}

/// Search for a representation graded mod p on the space with basis
/// degrees `eta`, with t constrained by `tc`. A `Found` result has passed
/// [`verify_representation`].
pub fn find_representation(dga: &FreeDGA, p: u32, eta: &[i64], tc: &TConstraint, timeout: Duration) -> Result<Outcome<MatrixRep>> {
    check_modulus(dga, p)?;
    if eta.is_empty() {
        return Err(Error::Precondition("dimension must be positive".into()));
    }
    if dga.basepoints.len() != 1 {
        return Err(Error::Precondition("representations are searched for DGAs with one basepoint".into()));
    }
    let eta: Vec<i64> = eta.iter().map(|&e| reduce(e, p)).collect();
    let deadline = Instant::now() + timeout;
    let mut timed_out = false;
    for t in t_candidates(&eta, p, tc)? {
        let mut solver = Solver::new(dga, p, &eta, &[t], false, Some(deadline));
        match solver.run() {
            Status::Done => {
                if let Some(rep) = solver.solutions().into_iter().next() {
                    if !verify_representation(dga, p, &rep) {
                        return Err(Error::Internal("search returned a representation that fails f∘∂ = 0".into()));
                    }
                    return Ok(Outcome::Found(rep));
                }
            }
            Status::TimedOut => timed_out = true,
        }
    }
    Ok(if timed_out { Outcome::Unknown } else { Outcome::None })
}

/// Evaluates f on a polynomial by matrix arithmetic.
pub fn evaluate(dga: &FreeDGA, rep: &MatrixRep, poly: &NCPoly) -> Option<GF2Matrix> {
    let n = rep.dim();
    let t_inv: Vec<GF2Matrix> = rep.t_images.iter().map(|m| m.inverse()).collect::<Option<_>>()?;
    let mut out = GF2Matrix::zero(n);
    for w in poly.words() {
        let mut acc = GF2Matrix::identity(n);
        for &l in w {
            let m = match (dga.generator_index(l), dga.t_index(l)) {
                (Some(g), _) => &rep.images[g],
                (None, Some(j)) if l & 1 == 1 => &t_inv[j],
                (None, Some(j)) => &rep.t_images[j],
                _ => return None,
            };
            acc = acc.mul(m);
        }
        out = out.add(&acc);
    }
    Some(out)
}

/// f∘∂ = 0 on every generator, every image homogeneous of the degree of
/// its generator, and every t sent to an invertible matrix of degree 0.
pub fn verify_representation(dga: &FreeDGA, p: u32, rep: &MatrixRep) -> bool {
    let n = rep.dim();
    if rep.images.len() != dga.generators.len() || rep.t_images.len() != dga.basepoints.len() {
        return false;
    }
    if rep.images.iter().chain(&rep.t_images).any(|m| m.size() != n) {
        return false;
    }
    if !rep.t_images.iter().all(|m| m.is_invertible() && respects_degree(m, &rep.eta, 0, p)) {
        return false;
    }
    if !rep.images.iter().enumerate().all(|(g, m)| respects_degree(m, &rep.eta, dga.generators[g].degree, p)) {
        return false;
    }
    dga.differential.iter().all(|d| evaluate(dga, rep, d).is_some_and(|m| m.is_zero()))
}

/// Basis degrees listing `dims[k]` vectors of degree k.
pub fn eta_from_dims(dims: &[usize]) -> Vec<i64> {
    dims.iter().enumerate().flat_map(|(k, &d)| std::iter::repeat_n(k as i64, d)).collect()
}
