use super::{EventKind, PlatFront};

/// +1 when both strands run the same way in x, -1 otherwise.
pub fn crossing_sign(dir: &[bool], over: usize, under: usize) -> i64 {
    if dir[over] == dir[under] {
        1
    } else {
        -1
    }
}

impl PlatFront {
    pub fn writhe(&self) -> i64 {
        let trace = self.trace();
        let dir = self.orientation().expect("validated front");
        self.events()
            .iter()
            .zip(&trace.touched)
            .filter(|(e, _)| e.kind == EventKind::Cross)
            .map(|(_, &(a, b))| crossing_sign(&dir, a, b))
            .sum()
    }

    pub fn cusp_count(&self) -> usize {
        self.events().iter().filter(|e| e.is_cusp()).count()
    }

    pub fn thurston_bennequin(&self) -> i64 {
        self.writhe() - self.cusp_count() as i64 / 2
    }

    /// Whether each cusp is traversed from its upper to its lower branch.
    pub fn cusp_directions(&self) -> Vec<(usize, bool)> {
        let trace = self.trace();
        let dir = self.orientation().expect("validated front");
        self.events()
            .iter()
            .enumerate()
            .filter_map(|(i, e)| {
                let (upper, lower) = trace.touched[i];
                match e.kind {
                    EventKind::Left => Some((i, dir[lower])),
                    EventKind::Right => Some((i, dir[upper])),
                    EventKind::Cross => None,
                }
            })
            .collect()
    }

    /// Rotation number of each component, (down - up) / 2.
    pub fn rotation_numbers(&self) -> Vec<i64> {
        let comps = self.components();
        let trace = self.trace();
        let mut twice = vec![0i64; comps.count];
        for (i, down) in self.cusp_directions() {
            let c = comps.of_strand[trace.touched[i].0];
            twice[c] += if down { 1 } else { -1 };
        }
        twice.into_iter().map(|t| t / 2).collect()
    }

    /// r of a knot; for links the gcd of the components' rotation numbers.
    pub fn rotation_number(&self) -> i64 {
        let rs = self.rotation_numbers();
        if rs.len() == 1 {
            rs[0]
        } else {
            rs.into_iter().fold(0, |g, r| gcd(g, r.abs()))
        }
    }
}

pub fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Check that `p` is a legal grading modulus for rotation number `r`.
pub fn check_modulus(p: u32, r: i64) -> crate::error::Result<()> {
    let two_r = 2 * r.abs();
    let ok = if p == 0 { two_r == 0 } else { two_r % p as i64 == 0 };
    if ok {
        Ok(())
    } else {
        Err(crate::error::Error::Grading(format!("p = {p} does not divide 2r = {two_r}")))
    }
}
