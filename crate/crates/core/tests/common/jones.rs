//! Jones polynomial of a front by a left-to-right Kauffman bracket sweep,
//! used to pin the knot types of atlas fronts.
//!
//! The state at a gap is the non-crossing matching of its positions made by
//! the part of the diagram to the left. The strand entering a crossing from
//! above passes over; for that picture the A-smoothing is the one joining
//! the two left ends to the two right ends at the same heights.

use legsat::{EventKind, PlatFront};
use std::collections::BTreeMap;

/// Laurent polynomial in A with integer coefficients.
pub type Poly = BTreeMap<i64, i64>;

fn add_into(out: &mut Poly, p: &Poly, shift: i64) {
    for (&e, &c) in p {
        *out.entry(e + shift).or_insert(0) += c;
    }
    out.retain(|_, c| *c != 0);
}

fn mul(p: &Poly, q: &Poly) -> Poly {
    let mut out = Poly::new();
    for (&e, &c) in q {
        let scaled: Poly = p.iter().map(|(&f, &d)| (f, d * c)).collect();
        add_into(&mut out, &scaled, e);
    }
    out
}

fn delta() -> Poly {
    Poly::from([(2, -1), (-2, -1)])
}

/// Kauffman bracket, normalized so that the unknot diagram without
/// crossings gives 1.
pub fn bracket(front: &PlatFront) -> Poly {
    // state: partner of each position
    let mut states: BTreeMap<Vec<usize>, Poly> = BTreeMap::from([(Vec::new(), Poly::from([(0, 1)]))]);
    for ev in front.events() {
        let j = ev.pos;
        let mut next: BTreeMap<Vec<usize>, Poly> = BTreeMap::new();
        let mut put = |m: Vec<usize>, p: Poly| {
            let e = next.entry(m).or_default();
            add_into(e, &p, 0);
        };
        for (m, p) in &states {
            match ev.kind {
                EventKind::Left => {
                    let mut n: Vec<usize> = m.iter().map(|&x| if x >= j { x + 2 } else { x }).collect();
                    n.splice(j..j, [j + 1, j]);
                    put(n, p.clone());
                }
                EventKind::Right => {
                    let (n, closed) = join(m, j);
                    let p = if closed { mul(p, &delta()) } else { p.clone() };
                    put(remove_pair(&n, j), p);
                }
                EventKind::Cross => {
                    let shift = |q: &Poly, by: i64| {
                        let mut o = Poly::new();
                        add_into(&mut o, q, by);
                        o
                    };
                    put(m.clone(), shift(p, 1));
                    let (mut n, closed) = join(m, j);
                    n[j] = j + 1;
                    n[j + 1] = j;
                    let q = if closed { mul(p, &delta()) } else { p.clone() };
                    put(n, shift(&q, -1));
                }
            }
        }
        states = next;
    }
    let total = states.remove(&Vec::new()).unwrap_or_default();
    // one loop is the unknot itself
    divide_delta(&total)
}

/// Joins the loose ends at positions j and j + 1; reports whether they
/// were already partners, which closes a loop.
fn join(m: &[usize], j: usize) -> (Vec<usize>, bool) {
    let mut n = m.to_vec();
    if n[j] == j + 1 {
        return (n, true);
    }
    let (a, b) = (n[j], n[j + 1]);
    n[a] = b;
    n[b] = a;
    (n, false)
}

fn remove_pair(m: &[usize], j: usize) -> Vec<usize> {
    m.iter()
        .enumerate()
        .filter(|&(i, _)| i != j && i != j + 1)
        .map(|(_, &x)| if x > j + 1 { x - 2 } else { x })
        .collect()
}

fn divide_delta(p: &Poly) -> Poly {
    let mut rem = p.clone();
    let mut out = Poly::new();
    while let Some((&top, &c)) = rem.iter().next_back() {
        // delta = -A^2 - A^-2, leading term -A^2
        out.insert(top - 2, -c);
        let sub: Poly = delta().iter().map(|(&e, &d)| (e + top - 2, c * d)).collect();
        add_into(&mut rem, &sub, 0);
        rem.retain(|_, c| *c != 0);
        assert!(rem.keys().next_back().is_none_or(|&t| t < top), "not divisible by delta");
    }
    out
}

/// The Jones polynomial as a Laurent polynomial in A (t = A^-4).
pub fn jones_in_a(front: &PlatFront) -> Poly {
    let w = front.writhe();
    let b = bracket(front);
    let sign = if w % 2 == 0 { 1 } else { -1 };
    b.iter().map(|(&e, &c)| (e - 3 * w, c * sign)).collect()
}

/// The Jones polynomial in t, failing when exponents are not multiples of 4.
pub fn jones(front: &PlatFront) -> BTreeMap<i64, i64> {
    jones_in_a(front)
        .into_iter()
        .map(|(e, c)| {
            assert_eq!(e % 4, 0, "Jones exponent not a multiple of 4");
            (-e / 4, c)
        })
        .collect()
}

/// Jones polynomial of the torus knot T(p, q) for coprime p, q > 1, or of
/// its mirror when `mirror` is set.
pub fn torus_jones(p: i64, q: i64, mirror: bool) -> BTreeMap<i64, i64> {
    // t^((p-1)(q-1)/2) (1 - t^(p+1) - t^(q+1) + t^(p+q)) / (1 - t^2)
    let mut num: BTreeMap<i64, i64> = BTreeMap::new();
    for (e, c) in [(0, 1), (p + 1, -1), (q + 1, -1), (p + q, 1)] {
        *num.entry(e).or_insert(0) += c;
    }
    let mut out = BTreeMap::new();
    // long division by 1 - t^2 from the bottom
    let top = p + q;
    let mut rem = num;
    for e in 0..=top {
        let c = rem.get(&e).copied().unwrap_or(0);
        if c != 0 {
            out.insert(e, c);
            *rem.entry(e + 2).or_insert(0) += c;
            rem.insert(e, 0);
        }
    }
    let shift = (p - 1) * (q - 1) / 2;
    out.into_iter()
        .filter(|&(e, c)| c != 0 && e <= top - 2)
        .map(|(e, c)| if mirror { (-(e + shift), c) } else { (e + shift, c) })
        .collect()
}
