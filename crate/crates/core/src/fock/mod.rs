//! Polynomial Fock space `Q[x] (x) Q[y] (x) V` for the oscillator and
//! Heisenberg modes, with exact (untruncated) states.

mod nosum;
mod prim;
mod seeded;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{fmt_q, q, qr, Q};

pub use nosum::{
    commutator_apply, contraction_check, contraction_formula, no_sum_apply, no_sum_apply_naive, ModeTerm, Operator,
};
pub use prim::{apply_prim, heis_apply, is_annihilator, osc_apply, HeisKind, OscKind, Prim};
pub use seeded::{seeded_states, StateSpec};

/// Polynomial variable: `x_n`, `x1_n` (any `n`), `y_n`, `y1_n` (`n <= -1`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Var {
    X(i64),
    X1(i64),
    Y(i64),
    Y1(i64),
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::X(n) => write!(f, "x[{n}]"),
            Var::X1(n) => write!(f, "x1[{n}]"),
            Var::Y(n) => write!(f, "y[{n}]"),
            Var::Y1(n) => write!(f, "y1[{n}]"),
        }
    }
}

/// Monomial in the polynomial variables tensored with `v0` or `v1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FockMonomial {
    vars: BTreeMap<Var, u32>,
    v: u8,
}

impl FockMonomial {
    /// `|0> (x) v0`.
    pub fn vacuum() -> Self {
        Self::default()
    }

    pub fn new<I: IntoIterator<Item = (Var, u32)>>(vars: I, v: u8) -> Self {
        assert!(v <= 1, "V is two-dimensional");
        let mut m = Self { vars: BTreeMap::new(), v };
        for (x, e) in vars {
            m.mul_var(x, e);
        }
        m
    }

    fn check_var(x: Var) {
        if let Var::Y(n) | Var::Y1(n) = x {
            assert!(n <= -1, "Heisenberg variable index must be negative, got {x}");
        }
    }

    pub fn mul_var(&mut self, x: Var, e: u32) {
        if e == 0 {
            return;
        }
        Self::check_var(x);
        *self.vars.entry(x).or_insert(0) += e;
    }

    pub fn degree(&self, x: Var) -> u32 {
        self.vars.get(&x).copied().unwrap_or(0)
    }

    pub fn v(&self) -> u8 {
        self.v
    }

    pub fn with_v(&self, v: u8) -> Self {
        Self { vars: self.vars.clone(), v }
    }

    pub fn vars(&self) -> impl Iterator<Item = (Var, u32)> + '_ {
        self.vars.iter().map(|(x, e)| (*x, *e))
    }

    pub fn total_degree(&self) -> u32 {
        self.vars.values().sum()
    }

    /// `x * self`.
    pub fn times(&self, x: Var) -> Self {
        let mut m = self.clone();
        m.mul_var(x, 1);
        m
    }

    /// `d/dx self` as `(exponent, monomial)`; `None` if `x` does not occur.
    pub fn derive(&self, x: Var) -> Option<(u32, Self)> {
        let e = self.degree(x);
        if e == 0 {
            return None;
        }
        let mut m = self.clone();
        if e == 1 {
            m.vars.remove(&x);
        } else {
            m.vars.insert(x, e - 1);
        }
        Some((e, m))
    }
}

impl fmt::Display for FockMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (x, e) in &self.vars {
            if *e == 1 {
                write!(f, "{x}")?;
            } else {
                write!(f, "{x}^{e}")?;
            }
        }
        write!(f, "|0>v{}", self.v)
    }
}

/// Finite rational combination of Fock monomials.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FockState {
    terms: BTreeMap<FockMonomial, Q>,
}

impl FockState {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn vacuum() -> Self {
        Self::monomial(FockMonomial::vacuum(), q(1))
    }

    pub fn monomial(m: FockMonomial, c: Q) -> Self {
        let mut s = Self::zero();
        s.add_term(m, c);
        s
    }

    pub fn add_term(&mut self, m: FockMonomial, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(slot) => {
                *slot += c;
                if slot.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add_scaled(&mut self, o: &FockState, c: &Q) {
        if c.is_zero() {
            return;
        }
        for (m, v) in &o.terms {
            self.add_term(m.clone(), v * c);
        }
    }

    pub fn add(&mut self, o: &FockState) {
        for (m, v) in &o.terms {
            self.add_term(m.clone(), v.clone());
        }
    }

    pub fn scale(&self, c: &Q) -> FockState {
        let mut out = FockState::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn sub(&self, o: &FockState) -> FockState {
        let mut out = self.clone();
        out.add_scaled(o, &q(-1));
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &FockMonomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FockMonomial, &Q)> + '_ {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest `|index|` among the variables of the state.
    pub fn support_bound(&self) -> i64 {
        self.terms
            .keys()
            .flat_map(|m| m.vars.keys())
            .map(|x| match x {
                Var::X(n) | Var::X1(n) | Var::Y(n) | Var::Y1(n) => n.abs(),
            })
            .max()
            .unwrap_or(0)
    }
}

impl fmt::Display for FockState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(m, c)| format!("{}*{}", fmt_q(c), m)).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Parameters of the Heisenberg part and the choice of oscillator representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepParams {
    pub r: u8,
    pub kappa0: Q,
    pub b0: Q,
    /// `b1_0 v_i = b1[i][0] v0 + b1[i][1] v1`.
    pub b1: [[Q; 2]; 2],
    pub chi1: Q,
}

impl RepParams {
    pub fn new(r: u8, kappa0: Q, b0: Q, b1: [[Q; 2]; 2], chi1: Q) -> Result<Self> {
        let p = Self { r, kappa0, b0, b1, chi1 };
        p.validate()?;
        Ok(p)
    }

    /// `B0 = 1/2`, `B1 = [[1, 2], [-1, 1]]`, `chi1 = 0`.
    pub fn with_defaults(r: u8, kappa0: Q) -> Result<Self> {
        Self::new(r, kappa0, qr(1, 2), [[q(1), q(2)], [q(-1), q(1)]], q(0))
    }

    pub fn validate(&self) -> Result<()> {
        if self.r > 1 {
            return Err(Error::Config(format!("r must be 0 or 1, got {}", self.r)));
        }
        if self.b1[0][0] != self.b1[1][1] {
            return Err(Error::Config("B1 diagonal entries must be equal".into()));
        }
        if !self.chi1.is_zero() {
            return Err(Error::Config("chi1 must be 0".into()));
        }
        Ok(())
    }

    /// `chi0 = kappa0 + 4 [r = 0]`.
    pub fn chi0(&self) -> Q {
        &self.kappa0 + if self.r == 0 { q(4) } else { q(0) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_validation() {
        assert!(RepParams::with_defaults(0, q(1)).is_ok());
        assert!(RepParams::with_defaults(2, q(1)).is_err());
        assert!(RepParams::new(0, q(1), q(0), [[q(1), q(0)], [q(0), q(2)]], q(0)).is_err());
        assert!(RepParams::new(0, q(1), q(0), [[q(1), q(0)], [q(0), q(1)]], q(1)).is_err());
        assert_eq!(RepParams::with_defaults(0, q(2)).unwrap().chi0(), q(6));
        assert_eq!(RepParams::with_defaults(1, q(2)).unwrap().chi0(), q(2));
    }

    #[test]
    #[should_panic]
    fn heisenberg_indices_are_negative() {
        FockMonomial::new([(Var::Y(0), 1)], 0);
    }

    #[test]
    fn state_arithmetic() {
        let m = FockMonomial::new([(Var::X(2), 1)], 0);
        let mut s = FockState::monomial(m.clone(), q(3));
        s.add_term(m.clone(), q(-3));
        assert!(s.is_zero());
        let d = FockMonomial::new([(Var::X(2), 2)], 1).derive(Var::X(2)).unwrap();
        assert_eq!(d, (2, FockMonomial::new([(Var::X(2), 1)], 1)));
    }
}
