use std::fmt;

use num_traits::Zero;

use super::RRingElem;
use crate::scalar::{fmt_q, q, qr, Q};

/// Element of `S = Q[s, s^-1, (s-1)^-1]` written as `num(s) / (s^a (s-1)^b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SRingElem {
    /// Dense coefficients of the numerator in ascending powers of `s`.
    num: Vec<Q>,
    a: u32,
    b: u32,
}

fn trim(v: &mut Vec<Q>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn poly_mul(x: &[Q], y: &[Q]) -> Vec<Q> {
    if x.is_empty() || y.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Q::zero(); x.len() + y.len() - 1];
    for (i, a) in x.iter().enumerate() {
        for (j, b) in y.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    trim(&mut out);
    out
}

fn poly_add(x: &[Q], y: &[Q]) -> Vec<Q> {
    let mut out = vec![Q::zero(); x.len().max(y.len())];
    for (i, a) in x.iter().enumerate() {
        out[i] += a;
    }
    for (i, b) in y.iter().enumerate() {
        out[i] += b;
    }
    trim(&mut out);
    out
}

/// Multiplies by `s^i (s-1)^j`.
fn shift(x: &[Q], i: u32, j: u32) -> Vec<Q> {
    let mut out: Vec<Q> = std::iter::repeat_n(Q::zero(), i as usize).chain(x.iter().cloned()).collect();
    for _ in 0..j {
        out = poly_mul(&out, &[q(-1), q(1)]);
    }
    trim(&mut out);
    out
}

fn eval(x: &[Q], at: &Q) -> Q {
    x.iter().rev().fold(Q::zero(), |acc, c| acc * at + c)
}

impl SRingElem {
    pub fn zero() -> Self {
        Self { num: Vec::new(), a: 0, b: 0 }
    }

    pub fn constant(c: Q) -> Self {
        Self::new(vec![c], 0, 0)
    }

    pub fn new(mut num: Vec<Q>, a: u32, b: u32) -> Self {
        trim(&mut num);
        let mut r = Self { num, a, b };
        r.normalize();
        r
    }

    pub fn s() -> Self {
        Self::new(vec![q(0), q(1)], 0, 0)
    }

    pub fn s_inv() -> Self {
        Self::new(vec![q(1)], 1, 0)
    }

    pub fn s_minus_one_inv() -> Self {
        Self::new(vec![q(1)], 0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    pub fn numerator(&self) -> &[Q] {
        &self.num
    }

    pub fn denominator_powers(&self) -> (u32, u32) {
        (self.a, self.b)
    }

    /// Cancels factors of `s` and `(s-1)` shared by numerator and denominator.
    fn normalize(&mut self) {
        if self.num.is_empty() {
            self.a = 0;
            self.b = 0;
            return;
        }
        while self.a > 0 && self.num[0].is_zero() {
            self.num.remove(0);
            self.a -= 1;
        }
        while self.b > 0 && eval(&self.num, &q(1)).is_zero() {
            // synthetic division by (s - 1)
            let n = self.num.len();
            let mut quot = vec![Q::zero(); n - 1];
            let mut carry = Q::zero();
            for i in (1..n).rev() {
                carry += &self.num[i];
                quot[i - 1] = carry.clone();
            }
            self.num = quot;
            trim(&mut self.num);
            self.b -= 1;
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let a = self.a.max(o.a);
        let b = self.b.max(o.b);
        let x = shift(&self.num, a - self.a, b - self.b);
        let y = shift(&o.num, a - o.a, b - o.b);
        Self::new(poly_add(&x, &y), a, b)
    }

    pub fn neg(&self) -> Self {
        Self { num: self.num.iter().map(|c| -c).collect(), a: self.a, b: self.b }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(poly_mul(&self.num, &o.num), self.a + o.a, self.b + o.b)
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::constant(q(1)), |acc, _| acc.mul(self))
    }
}

impl fmt::Display for SRingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num: Vec<String> = self
            .num
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("{}*s^{}", fmt_q(c), i))
            .collect();
        let num = if num.is_empty() { "0".to_string() } else { num.join(" + ") };
        write!(f, "({}) / (s^{} (s-1)^{})", num, self.a, self.b)
    }
}

/// The map `R -> S` given by `t -> (s-1)^2 / s`, `u -> s - s^-1`.
pub fn r_to_s(f: &RRingElem) -> SRingElem {
    let ft = SRingElem::new(vec![q(1), q(-2), q(1)], 1, 0);
    let ft_inv = SRingElem::new(vec![q(0), q(1)], 0, 2);
    let fu = SRingElem::new(vec![q(-1), q(0), q(1)], 1, 0);
    let mut out = SRingElem::zero();
    for (k, e, c) in f.terms() {
        let tk = if k >= 0 { ft.pow(k as u32) } else { ft_inv.pow(k.unsigned_abs() as u32) };
        let term = tk.mul(&fu.pow(e as u32)).mul(&SRingElem::constant(c.clone()));
        out = out.add(&term);
    }
    out
}

/// The inverse map `S -> R`: `s -> (t+2+u)/2`, `s^-1 -> (t+2-u)/2`,
/// and hence `(s-1)^-1 -> (u-t)/(2t)`.
pub fn phi_s_to_r(x: &SRingElem) -> RRingElem {
    let phi_s = RRingElem::from_terms([((1, 0), qr(1, 2)), ((0, 0), q(1)), ((0, 1), qr(1, 2))]);
    let phi_s_inv = RRingElem::from_terms([((1, 0), qr(1, 2)), ((0, 0), q(1)), ((0, 1), qr(-1, 2))]);
    let phi_sm1_inv = RRingElem::from_terms([((-1, 1), qr(1, 2)), ((0, 0), qr(-1, 2))]);
    let mut num = RRingElem::zero();
    let mut power = RRingElem::one();
    for c in &x.num {
        num = num + power.scale(c);
        power = &power * &phi_s;
    }
    let (a, b) = x.denominator_powers();
    &(&num * &phi_s_inv.pow(a)) * &phi_sm1_inv.pow(b)
}

#[derive(Clone, Debug)]
pub struct IsoReport {
    pub checks: Vec<(String, bool, String)>,
}

impl IsoReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|(_, ok, _)| *ok)
    }
}

/// Verifies that `t -> (s-1)^2/s`, `u -> s - 1/s` respects `u^2 = t^2 + 4t`
/// and is inverted by `s -> (t+2+u)/2`.
pub fn iso_check() -> IsoReport {
    let mut checks = Vec::new();
    let ft = r_to_s(&RRingElem::t_pow(1));
    let fu = r_to_s(&RRingElem::tu_pow(0));

    let rel = fu.mul(&fu).sub(&ft.mul(&ft)).sub(&ft.mul(&SRingElem::constant(q(4))));
    checks.push(("f(u)^2 - f(t)^2 - 4 f(t) = 0 in S".into(), rel.is_zero(), rel.to_string()));

    let back_t = phi_s_to_r(&ft) - RRingElem::t_pow(1);
    checks.push(("phi(f(t)) = t".into(), back_t.is_zero(), back_t.to_string()));
    let back_u = phi_s_to_r(&fu) - RRingElem::tu_pow(0);
    checks.push(("phi(f(u)) = u".into(), back_u.is_zero(), back_u.to_string()));

    let prod = phi_s_to_r(&SRingElem::s()) * phi_s_to_r(&SRingElem::s_inv()) - RRingElem::one();
    checks.push(("phi(s) phi(s^-1) = 1".into(), prod.is_zero(), prod.to_string()));

    let s_minus_one = SRingElem::s().sub(&SRingElem::constant(q(1)));
    let inv = phi_s_to_r(&s_minus_one) * phi_s_to_r(&SRingElem::s_minus_one_inv()) - RRingElem::one();
    checks.push(("phi(s-1) phi((s-1)^-1) = 1".into(), inv.is_zero(), inv.to_string()));
    IsoReport { checks }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::tests::arb_r;
    use proptest::prelude::*;

    #[test]
    fn iso_passes() {
        let rep = iso_check();
        assert!(rep.passed(), "{:?}", rep.checks);
    }

    #[test]
    fn phi_sum_of_s_and_inverse() {
        let sum = phi_s_to_r(&SRingElem::s()) + phi_s_to_r(&SRingElem::s_inv());
        assert_eq!(sum, RRingElem::t_pow(1) + RRingElem::monomial(0, 0, q(2)));
    }

    #[test]
    fn normalization_cancels_common_factors() {
        // (s^2 - s) / (s (s-1)) = 1
        let x = SRingElem::new(vec![q(0), q(-1), q(1)], 1, 1);
        assert_eq!(x, SRingElem::constant(q(1)));
        assert!(SRingElem::s().sub(&SRingElem::s()).is_zero());
    }

    proptest! {
        #[test]
        fn round_trip_through_s(f in arb_r()) {
            prop_assert_eq!(phi_s_to_r(&r_to_s(&f)), f);
        }

        #[test]
        fn r_to_s_is_multiplicative(f in arb_r(), g in arb_r()) {
            prop_assert_eq!(r_to_s(&(&f * &g)), r_to_s(&f).mul(&r_to_s(&g)));
        }
    }
}
