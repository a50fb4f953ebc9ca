//! Arithmetic in the 3-point coordinate ring `R = Q[t, t^-1, u] / (u^2 - t^2 - 4t)`.
//!
//! Elements are stored on the free `Q[t, t^-1]`-basis `{1, u}`, so every
//! element is `a(t) + b(t) u` with Laurent polynomials `a`, `b`.

mod derivation;
mod iso;
mod superelliptic;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use crate::scalar::{fmt_q, one, q, Q};

pub use derivation::{
    apply_d, basis_derivation, der_commutator, der_decompose, witt_bracket_geometric, RDerivation,
    WittKind, WittVector,
};
pub use iso::{iso_check, phi_s_to_r, r_to_s, IsoReport, SRingElem};
pub use superelliptic::{superelliptic_check, FreePoly, SuperellipticReport};

/// Element of `R`: sparse map `(t-exponent, u-power) -> coefficient` with `u-power` in `{0, 1}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RRingElem {
    terms: BTreeMap<(i64, u8), Q>,
}

impl RRingElem {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 0, one())
    }

    /// `c * t^k * u^e`, `e` in `{0, 1}`.
    pub fn monomial(k: i64, e: u8, c: Q) -> Self {
        assert!(e <= 1, "u-power must be reduced");
        let mut r = Self::zero();
        r.add_term(k, e, c);
        r
    }

    /// `t^k`.
    pub fn t_pow(k: i64) -> Self {
        Self::monomial(k, 0, one())
    }

    /// `t^k u`.
    pub fn tu_pow(k: i64) -> Self {
        Self::monomial(k, 1, one())
    }

    /// `P(t) = t^2 + 4t`.
    pub fn p() -> Self {
        Self::t_pow(2) + Self::monomial(1, 0, q(4))
    }

    pub fn from_terms<I: IntoIterator<Item = ((i64, u8), Q)>>(it: I) -> Self {
        let mut r = Self::zero();
        for ((k, e), c) in it {
            r.add_term(k, e, c);
        }
        r
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, k: i64, e: u8) -> Q {
        self.terms.get(&(k, e)).cloned().unwrap_or_else(Q::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, u8, &Q)> + '_ {
        self.terms.iter().map(|(&(k, e), c)| (k, e, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `c t^k u^e`, reducing `u^2` if needed.
    pub fn add_term(&mut self, k: i64, e: u8, c: Q) {
        match e {
            0 | 1 => {
                if c.is_zero() {
                    return;
                }
                let slot = self.terms.entry((k, e)).or_insert_with(Q::zero);
                *slot += c;
                if slot.is_zero() {
                    self.terms.remove(&(k, e));
                }
            }
            _ => {
                // u^e = u^(e-2) (t^2 + 4t)
                self.add_term(k + 2, e - 2, c.clone());
                self.add_term(k + 1, e - 2, c * q(4));
            }
        }
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    /// Product in `R` with `u^2` replaced by `t^2 + 4t`.
    pub fn mul_r(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (&(k1, e1), c1) in &self.terms {
            for (&(k2, e2), c2) in &other.terms {
                out.add_term(k1 + k2, e1 + e2, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc.mul_r(self);
        }
        acc
    }

    /// Splits `a(t) + b(t) u` into `(a, b)` as maps exponent -> coefficient.
    pub fn split(&self) -> (BTreeMap<i64, Q>, BTreeMap<i64, Q>) {
        let mut a = BTreeMap::new();
        let mut b = BTreeMap::new();
        for (&(k, e), c) in &self.terms {
            if e == 0 {
                a.insert(k, c.clone());
            } else {
                b.insert(k, c.clone());
            }
        }
        (a, b)
    }

    /// Largest absolute t-exponent present (0 for the zero element).
    pub fn t_span(&self) -> i64 {
        self.terms.keys().map(|(k, _)| k.abs()).max().unwrap_or(0)
    }
}

/// Product in `R` (free-standing form of [`RRingElem::mul_r`]).
pub fn r_mul(a: &RRingElem, b: &RRingElem) -> RRingElem {
    a.mul_r(b)
}

impl Add for RRingElem {
    type Output = RRingElem;
    fn add(mut self, rhs: RRingElem) -> RRingElem {
        for ((k, e), c) in rhs.terms {
            self.add_term(k, e, c);
        }
        self
    }
}

impl<'a> Add<&'a RRingElem> for &'a RRingElem {
    type Output = RRingElem;
    fn add(self, rhs: &RRingElem) -> RRingElem {
        self.clone() + rhs.clone()
    }
}

impl Neg for RRingElem {
    type Output = RRingElem;
    fn neg(self) -> RRingElem {
        Self {
            terms: self.terms.into_iter().map(|(k, c)| (k, -c)).collect(),
        }
    }
}

impl Sub for RRingElem {
    type Output = RRingElem;
    fn sub(self, rhs: RRingElem) -> RRingElem {
        self + (-rhs)
    }
}

impl<'a> Sub<&'a RRingElem> for &'a RRingElem {
    type Output = RRingElem;
    fn sub(self, rhs: &RRingElem) -> RRingElem {
        self.clone() - rhs.clone()
    }
}

impl Mul for RRingElem {
    type Output = RRingElem;
    fn mul(self, rhs: RRingElem) -> RRingElem {
        self.mul_r(&rhs)
    }
}

impl<'a> Mul<&'a RRingElem> for &'a RRingElem {
    type Output = RRingElem;
    fn mul(self, rhs: &RRingElem) -> RRingElem {
        self.mul_r(rhs)
    }
}

impl fmt::Display for RRingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(&(k, e), c)| {
                let u = if e == 1 { "*u" } else { "" };
                format!("{}*t^{}{}", fmt_q(c), k, u)
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::scalar::qr;
    use proptest::prelude::*;

    #[test]
    fn u_squared_reduces() {
        let u = RRingElem::tu_pow(0);
        assert_eq!(&u * &u, RRingElem::p());
    }

    #[test]
    fn identity_and_shifted_square() {
        let f = RRingElem::from_terms([((3, 1), qr(1, 2)), ((-2, 0), q(7))]);
        assert_eq!(&RRingElem::one() * &f, f);
        // (t^-1 u)(t u) = u^2
        let prod = &RRingElem::tu_pow(-1) * &RRingElem::tu_pow(1);
        assert_eq!(prod, RRingElem::p());
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let mut f = RRingElem::t_pow(3);
        f.add_term(3, 0, q(-1));
        assert!(f.is_zero());
        assert_eq!(f.len(), 0);
    }

    pub(crate) fn arb_r() -> impl Strategy<Value = RRingElem> {
        prop::collection::vec((-10i64..=10, 0u8..=1, -6i64..=6, 1i64..=3), 0..=4).prop_map(|v| {
            RRingElem::from_terms(v.into_iter().map(|(k, e, n, d)| ((k, e), qr(n, d))))
        })
    }

    proptest! {
        #[test]
        fn mul_commutative_associative(a in arb_r(), b in arb_r(), c in arb_r()) {
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }
    }
}
