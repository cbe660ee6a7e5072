//! Admissible Strichartz pairs (p,q) with 2/p = d(1/2 - 1/q), kept in
//! exact rational arithmetic.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{Result, SemiError};

/// A Lebesgue exponent: a positive rational or ∞.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Exponent {
    Finite(Ratio<i64>),
    Infinity,
}

impl Exponent {
    pub fn from_int(n: i64) -> Self {
        Exponent::Finite(Ratio::from_integer(n))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Exponent::Finite(Ratio::new(num, den))
    }

    /// 1/p, with 1/∞ = 0.
    pub fn reciprocal(&self) -> Ratio<i64> {
        match self {
            Exponent::Finite(r) => r.recip(),
            Exponent::Infinity => Ratio::from_integer(0),
        }
    }

    pub fn as_f64(&self) -> f64 {
        match self {
            Exponent::Finite(r) => *r.numer() as f64 / *r.denom() as f64,
            Exponent::Infinity => f64::INFINITY,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Exponent::Finite(_))
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(r) if r.is_integer() => write!(out, "{}", r.numer()),
            Exponent::Finite(r) => write!(out, "{}/{}", r.numer(), r.denom()),
            Exponent::Infinity => write!(out, "inf"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdmissiblePair {
    pub d: usize,
    pub p: Exponent,
    pub q: Exponent,
    /// The d ≥ 3 endpoint (2, 2d/(d-2)).
    pub endpoint: bool,
    /// False for pairs excluded from the theorem scope: (2,∞) in d = 2
    /// is never admissible, and (4,∞) in d = 1 is excluded.
    pub theorem_scope: bool,
}

impl AdmissiblePair {
    /// Exact defect of the scaling identity 2/p - d(1/2 - 1/q); zero for
    /// every constructed pair.
    pub fn scaling_defect(&self) -> Ratio<i64> {
        let two_over_p = Ratio::from_integer(2) * self.p.reciprocal();
        let rhs = Ratio::from_integer(self.d as i64)
            * (Ratio::new(1, 2) - self.q.reciprocal());
        two_over_p - rhs
    }
}

/// Solve 2/p = d(1/2 - 1/q) for each q in the list; non-admissible
/// combinations (p < 2, or the forbidden (2,2,∞)) are skipped.
pub fn enumerate_admissible(d: usize, q_list: &[Exponent]) -> Result<Vec<AdmissiblePair>> {
    if d == 0 {
        return Err(SemiError::InvalidParameter("dimension must be >= 1".into()));
    }
    let mut out = Vec::new();
    for &q in q_list {
        if let Exponent::Finite(r) = q {
            if r < Ratio::from_integer(2) {
                continue;
            }
        }
        // 1/p = d/2 (1/2 - 1/q)
        let inv_p = Ratio::new(d as i64, 2) * (Ratio::new(1, 2) - q.reciprocal());
        if inv_p < Ratio::from_integer(0) {
            continue;
        }
        let p = if inv_p == Ratio::from_integer(0) {
            Exponent::Infinity
        } else {
            let r = inv_p.recip();
            if r < Ratio::from_integer(2) {
                continue;
            }
            Exponent::Finite(r)
        };
        if d == 2 && p == Exponent::from_int(2) && q == Exponent::Infinity {
            continue;
        }
        let endpoint = d >= 3
            && p == Exponent::from_int(2)
            && q == Exponent::from_ratio(2 * d as i64, d as i64 - 2);
        let theorem_scope = !(d == 1 && p == Exponent::from_int(4) && q == Exponent::Infinity);
        out.push(AdmissiblePair { d, p, q, endpoint, theorem_scope });
    }
    Ok(out)
}
