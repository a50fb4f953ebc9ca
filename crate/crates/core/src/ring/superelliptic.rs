use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::scalar::{fmt_q, q, Q};

/// Element of the free ring `Q[t, t^-1, u]` (no relation imposed on `u`).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FreePoly {
    terms: BTreeMap<(i64, u32), Q>,
}

impl FreePoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(k: i64, e: u32, c: Q) -> Self {
        let mut p = Self::zero();
        p.add_term(k, e, c);
        p
    }

    /// Polynomial in `t` from ascending coefficients.
    pub fn from_t_coeffs(coeffs: &[Q]) -> Self {
        let mut p = Self::zero();
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term(i as i64, 0, c.clone());
        }
        p
    }

    pub fn add_term(&mut self, k: i64, e: u32, c: Q) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((k, e)).or_insert_with(Q::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(k, e));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (&(k, e), c) in &o.terms {
            r.add_term(k, e, c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&q(-1)))
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut r = Self::zero();
        for (&(k, e), v) in &self.terms {
            r.add_term(k, e, v * c);
        }
        r
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = Self::zero();
        for (&(k1, e1), c1) in &self.terms {
            for (&(k2, e2), c2) in &o.terms {
                r.add_term(k1 + k2, e1 + e2, c1 * c2);
            }
        }
        r
    }

    pub fn d_dt(&self) -> Self {
        let mut r = Self::zero();
        for (&(k, e), c) in &self.terms {
            r.add_term(k - 1, e, c * q(k));
        }
        r
    }

    pub fn d_du(&self) -> Self {
        let mut r = Self::zero();
        for (&(k, e), c) in &self.terms {
            if e > 0 {
                r.add_term(k, e - 1, c * q(e as i64));
            }
        }
        r
    }
}

impl fmt::Display for FreePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(&(k, e), c)| format!("{}*t^{}*u^{}", fmt_q(c), k, e))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperellipticReport {
    pub m: u32,
    /// `D1(u^m - P)`; must vanish.
    pub d1_remainder: FreePoly,
    /// `D2(u^m - P) - P'(u^m - P)`; must vanish.
    pub d2_remainder: FreePoly,
}

impl SuperellipticReport {
    pub fn passed(&self) -> bool {
        self.d1_remainder.is_zero() && self.d2_remainder.is_zero()
    }
}

/// Checks that `D1 = (P'/m) d/du + u^(m-1) d/dt` and `D2 = (u P'/m) d/du + P d/dt`
/// preserve the ideal generated by `u^m - P(t)` in the free ring.
///
/// `p` holds the coefficients of `P` in ascending powers of `t`.
pub fn superelliptic_check(m: u32, p: &[Q]) -> SuperellipticReport {
    assert!(m >= 2, "superelliptic exponent must be at least 2");
    let pp = FreePoly::from_t_coeffs(p);
    assert!(!pp.is_zero(), "P must be nonzero");
    let dp = pp.d_dt();
    let inv_m = q(1) / q(m as i64);
    let gen = FreePoly::monomial(0, m, q(1)).sub(&pp);

    let d1 = |f: &FreePoly| {
        dp.scale(&inv_m)
            .mul(&f.d_du())
            .add(&FreePoly::monomial(0, m - 1, q(1)).mul(&f.d_dt()))
    };
    let d2 = |f: &FreePoly| {
        FreePoly::monomial(0, 1, q(1))
            .mul(&dp)
            .scale(&inv_m)
            .mul(&f.d_du())
            .add(&pp.mul(&f.d_dt()))
    };

    SuperellipticReport {
        m,
        d1_remainder: d1(&gen),
        d2_remainder: d2(&gen).sub(&dp.mul(&gen)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example_curves_pass() {
        // three point: t^2 + 4t
        assert!(superelliptic_check(2, &[q(0), q(4), q(1)]).passed());
        // four point with b = 3: t^2 - 6t + 1
        assert!(superelliptic_check(2, &[q(1), q(-6), q(1)]).passed());
        // elliptic with b = 2: t^3 - 4t^2 + t
        assert!(superelliptic_check(2, &[q(0), q(1), q(-4), q(1)]).passed());
        // cubic superelliptic
        assert!(superelliptic_check(3, &[q(1), q(0), q(0), q(1)]).passed());
        assert!(superelliptic_check(5, &[q(-2), q(3), q(0), q(7)]).passed());
    }
}
