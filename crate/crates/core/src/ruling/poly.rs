//! Laurent polynomials in z with nonnegative integer coefficients.

use serde_json::{Map, Value};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, u64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn monomial(exp: i64, coeff: u64) -> Self {
        let mut p = LaurentPoly::zero();
        p.add_term(exp, coeff);
        p
    }

    pub fn from_terms(terms: &[(i64, u64)]) -> Self {
        let mut p = LaurentPoly::zero();
        for &(e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, exp: i64, coeff: u64) {
        if coeff > 0 {
            *self.coeffs.entry(exp).or_insert(0) += coeff;
        }
    }

    pub fn coeff(&self, exp: i64) -> u64 {
        self.coeffs.get(&exp).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, u64)> + '_ {
        self.coeffs.iter().map(|(&e, &c)| (e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Value at z = 1.
    pub fn count(&self) -> u64 {
        self.coeffs.values().sum()
    }

    pub fn add(&self, o: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in o.terms() {
            out.add_term(e, c);
        }
        out
    }

    pub fn mul(&self, o: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (a, x) in self.terms() {
            for (b, y) in o.terms() {
                out.add_term(a + b, x * y);
            }
        }
        out
    }

    pub fn shift(&self, by: i64) -> LaurentPoly {
        LaurentPoly { coeffs: self.coeffs.iter().map(|(&e, &c)| (e + by, c)).collect() }
    }

    /// Coefficientwise comparison.
    pub fn dominates(&self, o: &LaurentPoly) -> bool {
        o.terms().all(|(e, c)| self.coeff(e) >= c)
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        for (e, c) in self.terms() {
            m.insert(e.to_string(), Value::from(c));
        }
        Value::Object(m)
    }

    pub fn from_json(v: &Value) -> Option<LaurentPoly> {
        let mut p = LaurentPoly::zero();
        for (k, c) in v.as_object()? {
            p.add_term(k.parse().ok()?, c.as_u64()?);
        }
        Some(p)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .rev()
            .map(|(&e, &c)| {
                let var = match e {
                    0 => String::new(),
                    1 => "z".into(),
                    _ => format!("z^{e}"),
                };
                match (c, var.is_empty()) {
                    (_, true) => c.to_string(),
                    (1, false) => var,
                    _ => format!("{c}{var}"),
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
