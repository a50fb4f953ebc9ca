use serde::{Deserialize, Serialize};

use crate::ring::WittKind;
use crate::scalar::{delta, double_factorial_odd, factorial, pow2, q, Q};

/// A scalar 2-cocycle candidate on the Witt algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Cocycle {
    Phi1,
    Phi2,
    Zero,
}

impl Cocycle {
    pub fn name(self) -> &'static str {
        match self {
            Cocycle::Phi1 => "phi1",
            Cocycle::Phi2 => "phi2",
            Cocycle::Zero => "zero",
        }
    }

    pub fn eval(self, a: WittKind, k: i64, b: WittKind, l: i64) -> Q {
        match self {
            Cocycle::Phi1 => phi1(a, k, b, l),
            Cocycle::Phi2 => phi2(a, k, b, l),
            Cocycle::Zero => q(0),
        }
    }
}

/// `6 (-1)^(k+l) 2^(k+l) (k-1) k l (2k+2l-3)!! / (k+l+1)!`, the value of
/// `phi1(d1_k, d_l)`. Defined as 0 when `k + l <= -2`.
pub fn phi_mixed_closed(k: i64, l: i64) -> Q {
    let s = k + l;
    if s + 1 < 0 {
        return q(0);
    }
    let sign = if s.rem_euclid(2) == 0 { q(1) } else { q(-1) };
    q(6) * sign * pow2(s) * q((k - 1) * k * l) * double_factorial_odd(2 * s - 3) / factorial(s + 1)
}

pub fn phi1(a: WittKind, k: i64, b: WittKind, l: i64) -> Q {
    use WittKind::{D, D1};
    match (a, b) {
        (D1, D1) => {
            q(2 * (l * l - l) * (2 * l - 1)) * delta(k + l, 1) + q(l * l * l - l) * delta(k + l, 0)
        }
        (D, D) => {
            q(l * (l + 1) * (l + 2)) * delta(k + l, -2)
                + q(4 * l * (2 * l + 1) * (l + 1)) * delta(k + l, -1)
                + q(4 * l * (2 * l - 1) * (2 * l + 1)) * delta(k + l, 0)
        }
        (D1, D) => phi_mixed_closed(k, l),
        (D, D1) => -phi_mixed_closed(l, k),
    }
}

pub fn phi2(a: WittKind, k: i64, b: WittKind, l: i64) -> Q {
    if a == b {
        q(-2) * phi1(a, k, b, l)
    } else {
        q(0)
    }
}

/// Value of the closed form for `mu_(m,n)` together with a flag recording
/// whether the factorial convention (`m + n <= -2` gives 0) was used.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MuValue {
    pub value: Q,
    pub by_convention: bool,
}

/// `m (-1)^(m+n+1) 2^(m+n) (2(m+n)-1)!! / (m+n+1)!`.
pub fn mu_closed_form(m: i64, n: i64) -> MuValue {
    let s = m + n;
    if s + 1 < 0 {
        return MuValue { value: q(0), by_convention: true };
    }
    let sign = if (s + 1).rem_euclid(2) == 0 { q(1) } else { q(-1) };
    let value = q(m) * sign * pow2(s) * double_factorial_odd(2 * s - 1) / factorial(s + 1);
    MuValue { value, by_convention: false }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kaehler::mu_oracle;
    use WittKind::{D, D1};

    #[test]
    fn phi1_examples() {
        assert_eq!(phi1(D1, -1, D1, 2), q(12));
        assert_eq!(phi1(D, -1, D, 1), q(12));
        assert_eq!(phi1(D1, 2, D, 1), q(-12));
        assert_eq!(phi1(D, 1, D1, 2), q(12));
    }

    #[test]
    fn phi2_examples() {
        assert_eq!(phi2(D1, -1, D1, 2), q(-24));
        assert_eq!(phi2(D1, 2, D, 1), q(0));
        assert_eq!(phi2(D, -1, D, 1), q(-24));
    }

    #[test]
    fn phi1_is_antisymmetric() {
        for a in [D, D1] {
            for b in [D, D1] {
                for k in -10..=10 {
                    for l in -10..=10 {
                        assert_eq!(phi1(a, k, b, l), -phi1(b, l, a, k), "{a:?}{k} {b:?}{l}");
                    }
                }
            }
        }
    }

    #[test]
    fn mixed_vanishing_pattern() {
        for k in -10..=10 {
            for l in -10..=10 {
                if k == 0 || k == 1 || l == 0 {
                    assert_eq!(phi1(D1, k, D, l), q(0));
                }
            }
        }
    }

    #[test]
    fn mu_examples() {
        for n in -5..=5 {
            assert_eq!(mu_closed_form(0, n).value, q(0));
        }
        assert_eq!(mu_closed_form(1, -1).value, q(-1));
        assert_eq!(mu_closed_form(1, 0).value, q(1));
        assert!(mu_closed_form(2, -5).by_convention);
    }

    #[test]
    fn mu_closed_form_matches_reduction() {
        for m in -10..=10 {
            for n in -10..=10 {
                assert_eq!(mu_closed_form(m, n).value, mu_oracle(m, n), "({m},{n})");
            }
        }
    }
}
