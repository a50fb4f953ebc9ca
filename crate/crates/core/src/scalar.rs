//! Exact rational scalars.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// Arbitrary-precision rational number used for every coefficient in the crate.
pub type Q = BigRational;

/// Integer as a rational.
pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// `num / den` as a rational. Panics if `den == 0`.
pub fn qr(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

pub fn zero() -> Q {
    Q::zero()
}

pub fn one() -> Q {
    Q::one()
}

/// Serializes as `p/q` with `q >= 1`, also for integers.
pub fn fmt_q(x: &Q) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Parses `p/q` or a bare integer `p`.
pub fn parse_q(s: &str) -> Result<Q, Error> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Q::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Q::from_integer(n))
        }
    }
}

/// `n!` for `n >= 0`.
pub fn factorial(n: i64) -> Q {
    assert!(n >= 0, "factorial of negative {n}");
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= k;
    }
    Q::from_integer(acc)
}

/// Double factorial of an odd integer.
///
/// `(2j-1)!! = (2j-1)(2j-3)...3*1` for `j >= 1`, `(-1)!! = 1`, and for negative
/// arguments `(-2j-1)!! = (-1)^j / (2j-1)!!`, so `(-3)!! = -1`, `(-5)!! = 1/3`.
pub fn double_factorial_odd(n: i64) -> Q {
    assert!(n % 2 != 0, "double factorial convention only covers odd arguments, got {n}");
    if n >= -1 {
        let mut acc = BigInt::one();
        let mut k = n;
        while k > 1 {
            acc *= k;
            k -= 2;
        }
        return Q::from_integer(acc);
    }
    let j = (-n - 1) / 2;
    let sign = if j % 2 == 0 { one() } else { -one() };
    sign / double_factorial_odd(2 * j - 1)
}

/// Generalized binomial coefficient `m choose j` for any integer `m` and `j >= 0`.
pub fn binom(m: i64, j: u32) -> Q {
    let mut acc = one();
    for i in 0..j as i64 {
        acc *= q(m - i);
    }
    acc / factorial(j as i64)
}

/// Falling factorial `x (x-1) ... (x-d+1)`.
pub fn falling(x: i64, d: u32) -> Q {
    let mut acc = one();
    for i in 0..d as i64 {
        acc *= q(x - i);
    }
    acc
}

pub fn pow2(e: i64) -> Q {
    let p = Q::from_integer(BigInt::one() << e.unsigned_abs());
    if e >= 0 {
        p
    } else {
        p.recip()
    }
}

pub fn is_neg(x: &Q) -> bool {
    x.is_negative()
}

pub fn delta(a: i64, b: i64) -> Q {
    if a == b {
        one()
    } else {
        zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn double_factorial_convention() {
        assert_eq!(double_factorial_odd(5), q(15));
        assert_eq!(double_factorial_odd(1), q(1));
        assert_eq!(double_factorial_odd(-1), q(1));
        assert_eq!(double_factorial_odd(-3), q(-1));
        assert_eq!(double_factorial_odd(-5), qr(1, 3));
        assert_eq!(double_factorial_odd(-7), qr(-1, 15));
    }

    #[test]
    fn rational_round_trip() {
        for s in ["3/1", "-1/2", "0/1", "22/7"] {
            assert_eq!(fmt_q(&parse_q(s).unwrap()), s);
        }
        assert_eq!(parse_q("4").unwrap(), q(4));
        assert_eq!(parse_q("6/4").unwrap(), qr(3, 2));
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("x").is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binom(5, 2), q(10));
        assert_eq!(binom(-1, 3), q(-1));
        assert_eq!(binom(-2, 2), q(3));
        assert_eq!(binom(7, 0), q(1));
        assert_eq!(falling(4, 3), q(24));
        assert_eq!(pow2(-3), qr(1, 8));
    }
}
