//! Numeric avoidance constants for repetitive-path events.
//!
//! Events are grouped by half-length i; an event of group i has probability
//! C^{-i} under a uniform random C-coloring, and the number of paths of
//! length 2j-1 meeting a fixed path of length 2i-1 is at most
//! Delta_ij = 4·i·j·d^{2j} on graphs of maximum degree d. The avoidance
//! condition to certify, for all i, is
//! `C^{-i} <= a_i · prod_j (1 - a_j)^{Delta_ij}`,
//! evaluated in log space. The default weight family is the geometric
//! a_i = (2d^2)^{-i}; the constant family a_i = 1/(2d^2) is provided for
//! comparison but makes the product diverge, so no C satisfies it at large
//! cutoffs.

use num::{BigInt, BigRational, One};

use crate::error::{Error, Result};

/// The per-index weights a_i of the avoidance condition.
#[derive(Debug, Clone, PartialEq)]
pub enum AFamily {
    /// a_i = (2d^2)^{-i}
    Geometric,
    /// a_i = 1/(2d^2)
    Constant,
    /// explicit values for i = 1..=r_cut
    Explicit(Vec<f64>),
}

/// The dependency bounds Delta_ij.
#[derive(Debug, Clone, PartialEq)]
pub enum Delta {
    /// 4·i·j·d^{2j}, the count of length-(2j-1) paths meeting a fixed
    /// length-(2i-1) path on a degree-d graph.
    PathCount,
    /// explicit nonnegative values, indexed `[i-1][j-1]`
    Explicit(Vec<Vec<f64>>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct LllParameters {
    pub degree: usize,
    pub r_cut: usize,
    pub a: AFamily,
    pub delta: Delta,
}

impl LllParameters {
    pub fn geometric(degree: usize, r_cut: usize) -> Self {
        LllParameters {
            degree,
            r_cut,
            a: AFamily::Geometric,
            delta: Delta::PathCount,
        }
    }

    pub fn constant(degree: usize, r_cut: usize) -> Self {
        LllParameters {
            degree,
            r_cut,
            a: AFamily::Constant,
            delta: Delta::PathCount,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.degree == 0 || self.r_cut == 0 {
            return Err(Error::InvalidInput(
                "degree and truncation index must be positive".into(),
            ));
        }
        for i in 1..=self.r_cut {
            let a = self.a_value(i);
            if !(a > 0.0 && a < 1.0) && !(matches!(self.a, AFamily::Geometric) && a == 0.0) {
                // geometric weights may underflow to zero at large i; that
                // is handled exactly in log space
                return Err(Error::InvalidInput(format!(
                    "weight a_{i} = {a} outside (0, 1)"
                )));
            }
        }
        if let AFamily::Explicit(v) = &self.a {
            if v.len() != self.r_cut {
                return Err(Error::InvalidInput(format!(
                    "expected {} explicit weights, got {}",
                    self.r_cut,
                    v.len()
                )));
            }
        }
        if let Delta::Explicit(m) = &self.delta {
            if m.len() != self.r_cut || m.iter().any(|row| row.len() != self.r_cut) {
                return Err(Error::InvalidInput(format!(
                    "dependency bounds must be a {0}x{0} matrix",
                    self.r_cut
                )));
            }
            if m.iter().flatten().any(|&v| !(v >= 0.0)) {
                return Err(Error::InvalidInput(
                    "dependency bounds must be nonnegative".into(),
                ));
            }
        }
        Ok(())
    }

    /// a_i for 1-based i.
    pub fn a_value(&self, i: usize) -> f64 {
        let two_d2 = 2.0 * (self.degree as f64) * (self.degree as f64);
        match &self.a {
            AFamily::Geometric => (-(i as f64) * two_d2.ln()).exp(),
            AFamily::Constant => 1.0 / two_d2,
            AFamily::Explicit(v) => v[i - 1],
        }
    }

    fn ln_a(&self, i: usize) -> f64 {
        let two_d2 = 2.0 * (self.degree as f64) * (self.degree as f64);
        match &self.a {
            AFamily::Geometric => -(i as f64) * two_d2.ln(),
            AFamily::Constant => -two_d2.ln(),
            AFamily::Explicit(v) => v[i - 1].ln(),
        }
    }

    /// Delta_ij · ln(1 - a_j), kept finite for the geometric family by the
    /// cancellation d^{2j}·a_j = 2^{-j}: the term equals
    /// -4·i·j·2^{-j}·phi(a_j) with phi(a) = -ln(1-a)/a -> 1 as a -> 0.
    fn damping_term(&self, i: usize, j: usize) -> f64 {
        let d = self.degree as f64;
        let a_j = self.a_value(j);
        match (&self.a, &self.delta) {
            (AFamily::Geometric, Delta::PathCount) => {
                let phi = if a_j == 0.0 { 1.0 } else { -(-a_j).ln_1p() / a_j };
                -4.0 * (i as f64) * (j as f64) * 0.5f64.powi(j as i32) * phi
            }
            (_, Delta::PathCount) => {
                let ln_delta = (4.0 * (i as f64) * (j as f64)).ln() + 2.0 * (j as f64) * d.ln();
                let ln_neg_log = (-(-a_j).ln_1p()).ln();
                -(ln_delta + ln_neg_log).exp()
            }
            (_, Delta::Explicit(m)) => m[i - 1][j - 1] * (-a_j).ln_1p(),
        }
    }
}

/// Checks the avoidance condition for alphabet size `c`, every group index
/// i = 1..=r_cut, in log space.
pub fn lll_check(params: &LllParameters, c: u64) -> bool {
    if c < 2 {
        return false;
    }
    let ln_c = (c as f64).ln();
    for i in 1..=params.r_cut {
        let lhs = -(i as f64) * ln_c;
        let mut rhs = params.ln_a(i);
        for j in 1..=params.r_cut {
            rhs += params.damping_term(i, j);
        }
        if !(lhs <= rhs) {
            return false;
        }
    }
    true
}

/// Smallest integer alphabet size >= 2 passing the avoidance check with the
/// geometric weight family. The check is monotone in C, so the search is a
/// doubling phase followed by bisection.
pub fn lll_threshold(degree: usize, r_cut: usize) -> u64 {
    let params = LllParameters::geometric(degree, r_cut);
    lll_threshold_with(&params, u64::MAX / 2).expect("geometric family always certifies some C")
}

/// As above for an arbitrary parameter set; `None` if no C <= c_max passes
/// (the constant family diverges, for example).
pub fn lll_threshold_with(params: &LllParameters, c_max: u64) -> Option<u64> {
    params.validate().ok()?;
    if lll_check(params, 2) {
        return Some(2);
    }
    let mut hi = 4u64;
    while !lll_check(params, hi) {
        if hi >= c_max {
            return None;
        }
        hi = hi.saturating_mul(2).min(c_max);
    }
    let mut lo = hi / 2; // fails (or is 2, handled above)
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if lll_check(params, mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Some(hi)
}

/// The closed-form constant the avoidance argument yields with geometric
/// weights and the series sum(j/2^j) = 2: the ceiling of 2d^2·e^16,
/// evaluated by exact rational Taylor summation with a rigorous tail bound
/// so the ceiling is provably exact.
pub fn paper_constant(degree: u64) -> u64 {
    assert!(degree >= 1, "degree must be positive");
    const TERMS: u64 = 80;
    let mut term = BigRational::one();
    let mut sum = BigRational::one();
    for k in 1..=TERMS {
        term *= BigRational::new(BigInt::from(16u32), BigInt::from(k));
        sum += &term;
    }
    // remaining tail < next term · (N+2)/(N+2-16)
    let next = &term * BigRational::new(BigInt::from(16u32), BigInt::from(TERMS + 1));
    let tail = &next * BigRational::new(BigInt::from(TERMS + 2), BigInt::from(TERMS - 14));
    let scale = BigRational::from(BigInt::from(2 * degree * degree));
    let lo = (&scale * &sum).ceil();
    let hi = (&scale * (&sum + &tail)).ceil();
    assert_eq!(lo, hi, "tail bound too coarse for an exact ceiling");
    u64::try_from(lo.to_integer()).expect("constant fits in u64")
}
