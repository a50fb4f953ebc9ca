//! Structure constants of the affine, Heisenberg, Witt and Virasoro 3-point
//! algebras, the two Virasoro cocycles, and checkers for the Lie axioms.

mod checks;
mod coboundary;
mod cocycle;
mod tables;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{fmt_q, q, Q};

pub use checks::{check_antisymmetry, check_cocycle_identity, check_jacobi, generators, CheckOutcome};
pub use coboundary::{coboundary_window_test, CoboundaryOutcome, CoboundarySystem};
pub use cocycle::{mu_closed_form, phi1, phi2, phi_mixed_closed, Cocycle, MuValue};
pub use tables::{
    affine_bracket, affine_bracket_kassel, heis_bracket, vir_bracket, witt_bracket, BracketTable,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Algebra {
    Affine,
    Heisenberg,
    Witt,
    Virasoro,
}

impl Algebra {
    pub fn name(self) -> &'static str {
        match self {
            Algebra::Affine => "affine",
            Algebra::Heisenberg => "heisenberg",
            Algebra::Witt => "witt",
            Algebra::Virasoro => "virasoro",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Symbol {
    E,
    F,
    H,
    E1,
    F1,
    H1,
    Omega0,
    Omega1,
    B,
    B1,
    One0,
    One1,
    /// Witt `d_n`.
    D,
    /// Witt `d1_n`.
    D1,
    /// Virasoro lift of `d_n`.
    VD,
    /// Virasoro lift of `d1_n`.
    VD1,
    C1,
    C2,
}

impl Symbol {
    pub fn name(self) -> &'static str {
        use Symbol::*;
        match self {
            E => "e",
            F => "f",
            H => "h",
            E1 => "e1",
            F1 => "f1",
            H1 => "h1",
            Omega0 => "omega0",
            Omega1 => "omega1",
            B => "b",
            B1 => "b1",
            One0 => "one0",
            One1 => "one1",
            D => "d",
            D1 => "d1",
            VD => "D",
            VD1 => "D1",
            C1 => "c1",
            C2 => "c2",
        }
    }

    pub fn algebra(self) -> Algebra {
        use Symbol::*;
        match self {
            E | F | H | E1 | F1 | H1 | Omega0 | Omega1 => Algebra::Affine,
            B | B1 | One0 | One1 => Algebra::Heisenberg,
            D | D1 => Algebra::Witt,
            VD | VD1 | C1 | C2 => Algebra::Virasoro,
        }
    }

    pub fn is_central(self) -> bool {
        use Symbol::*;
        matches!(self, Omega0 | Omega1 | One0 | One1 | C1 | C2)
    }

    /// The non-central symbols of an algebra.
    pub fn modes_of(alg: Algebra) -> &'static [Symbol] {
        use Symbol::*;
        match alg {
            Algebra::Affine => &[E, F, H, E1, F1, H1],
            Algebra::Heisenberg => &[B, B1],
            Algebra::Witt => &[D, D1],
            Algebra::Virasoro => &[VD, VD1],
        }
    }
}

/// Tagged generator: algebra, symbol and mode (0 for central symbols).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GenId {
    pub algebra: Algebra,
    pub symbol: Symbol,
    pub mode: i64,
}

impl GenId {
    pub fn new(algebra: Algebra, symbol: Symbol, mode: i64) -> Result<Self> {
        if symbol.algebra() != algebra {
            return Err(Error::IllegalGenerator {
                algebra: algebra.name().into(),
                symbol: symbol.name().into(),
            });
        }
        if symbol.is_central() && mode != 0 {
            return Err(Error::IllegalGenerator {
                algebra: algebra.name().into(),
                symbol: format!("{}_{} (central symbols carry mode 0)", symbol.name(), mode),
            });
        }
        Ok(Self { algebra, symbol, mode })
    }

    /// Generator with the algebra inferred from the symbol.
    pub fn of(symbol: Symbol, mode: i64) -> Self {
        Self::new(symbol.algebra(), symbol, mode).expect("illegal generator")
    }

    pub fn central(symbol: Symbol) -> Self {
        Self::of(symbol, 0)
    }

    pub fn is_central(&self) -> bool {
        self.symbol.is_central()
    }
}

impl fmt::Display for GenId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_central() {
            write!(f, "{}", self.symbol.name())
        } else {
            write!(f, "{}_{}", self.symbol.name(), self.mode)
        }
    }
}

/// Finite rational combination of generators.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct LieVector {
    terms: BTreeMap<GenId, Q>,
}

impl LieVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn gen(g: GenId) -> Self {
        Self::zero().with(g, q(1))
    }

    pub fn add_term(&mut self, g: GenId, c: Q) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(g).or_insert_with(Q::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&g);
        }
    }

    pub fn with(mut self, g: GenId, c: Q) -> Self {
        self.add_term(g, c);
        self
    }

    pub fn add(&mut self, other: &LieVector) {
        for (g, c) in &other.terms {
            self.add_term(*g, c.clone());
        }
    }

    pub fn add_scaled(&mut self, other: &LieVector, c: &Q) {
        if c.is_zero() {
            return;
        }
        for (g, v) in &other.terms {
            self.add_term(*g, v * c);
        }
    }

    pub fn scale(&self, c: &Q) -> LieVector {
        let mut out = LieVector::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn neg(&self) -> LieVector {
        self.scale(&q(-1))
    }

    pub fn sub(&self, o: &LieVector) -> LieVector {
        let mut out = self.clone();
        out.add_scaled(o, &q(-1));
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, g: &GenId) -> Q {
        self.terms.get(g).cloned().unwrap_or_else(Q::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GenId, &Q)> + '_ {
        self.terms.iter()
    }

    /// Part supported on central generators.
    pub fn central_part(&self) -> LieVector {
        LieVector {
            terms: self.terms.iter().filter(|(g, _)| g.is_central()).map(|(g, c)| (*g, c.clone())).collect(),
        }
    }

    pub fn non_central_part(&self) -> LieVector {
        LieVector {
            terms: self.terms.iter().filter(|(g, _)| !g.is_central()).map(|(g, c)| (*g, c.clone())).collect(),
        }
    }
}

impl fmt::Display for LieVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(g, c)| format!("{}*{}", fmt_q(c), g)).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_validation() {
        assert!(GenId::new(Algebra::Affine, Symbol::E, 3).is_ok());
        assert!(GenId::new(Algebra::Witt, Symbol::E, 3).is_err());
        assert!(GenId::new(Algebra::Affine, Symbol::Omega0, 1).is_err());
        assert!(GenId::new(Algebra::Virasoro, Symbol::C2, 0).is_ok());
    }

    #[test]
    fn vector_cancellation() {
        let g = GenId::of(Symbol::H, 2);
        let v = LieVector::gen(g).with(g, q(-1));
        assert!(v.is_zero());
        assert_eq!(v.to_string(), "0");
    }
}
