use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::RRingElem;
use crate::scalar::{fmt_q, q, Q};

/// Image of `f` under `D = (t+2) d/du + u d/dt`.
///
/// On monomials: `D(t^k) = k t^(k-1) u` and `D(t^k u) = (k+1) t^(k+1) + (4k+2) t^k`.
pub fn apply_d(f: &RRingElem) -> RRingElem {
    let mut out = RRingElem::zero();
    for (k, e, c) in f.terms() {
        if e == 0 {
            out.add_term(k - 1, 1, c * q(k));
        } else {
            out.add_term(k + 1, 0, c * q(k + 1));
            out.add_term(k, 0, c * q(4 * k + 2));
        }
    }
    out
}

/// Derivation `coeff * D` of `R`. Every derivation of `R` has this form.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RDerivation {
    pub coeff: RRingElem,
}

impl RDerivation {
    pub fn new(coeff: RRingElem) -> Self {
        Self { coeff }
    }

    pub fn apply(&self, f: &RRingElem) -> RRingElem {
        &self.coeff * &apply_d(f)
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum WittKind {
    /// `d_n = t^n u D`
    D,
    /// `d1_n = t^n D`
    D1,
}

impl WittKind {
    pub fn name(self) -> &'static str {
        match self {
            WittKind::D => "d",
            WittKind::D1 => "d1",
        }
    }
}

/// `d_n` or `d1_n` as a derivation.
pub fn basis_derivation(kind: WittKind, mode: i64) -> RDerivation {
    match kind {
        WittKind::D => RDerivation::new(RRingElem::tu_pow(mode)),
        WittKind::D1 => RDerivation::new(RRingElem::t_pow(mode)),
    }
}

/// `[aD, bD] = (a D(b) - b D(a)) D`.
pub fn der_commutator(a: &RDerivation, b: &RDerivation) -> RDerivation {
    let left = &a.coeff * &apply_d(&b.coeff);
    let right = &b.coeff * &apply_d(&a.coeff);
    RDerivation::new(left - right)
}

/// Finite combination of `d_n`, `d1_n`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct WittVector {
    terms: BTreeMap<(WittKind, i64), Q>,
}

impl WittVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(kind: WittKind, mode: i64) -> Self {
        let mut v = Self::zero();
        v.add(kind, mode, q(1));
        v
    }

    pub fn add(&mut self, kind: WittKind, mode: i64, c: Q) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((kind, mode)).or_insert_with(Q::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(kind, mode));
        }
    }

    pub fn with(mut self, kind: WittKind, mode: i64, c: Q) -> Self {
        self.add(kind, mode, c);
        self
    }

    pub fn coeff(&self, kind: WittKind, mode: i64) -> Q {
        self.terms.get(&(kind, mode)).cloned().unwrap_or_else(Q::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (WittKind, i64, &Q)> + '_ {
        self.terms.iter().map(|(&(k, m), c)| (k, m, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Expands back to `coeff * D`.
    pub fn to_derivation(&self) -> RDerivation {
        let mut coeff = RRingElem::zero();
        for (&(kind, m), c) in &self.terms {
            let e = match kind {
                WittKind::D => 1,
                WittKind::D1 => 0,
            };
            coeff.add_term(m, e, c.clone());
        }
        RDerivation::new(coeff)
    }
}

impl fmt::Display for WittVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(&(k, m), c)| format!("{}*{}_{}", fmt_q(c), k.name(), m))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Writes `coeff * D` over the basis `{t^n u D, t^n D}`: the `u`-part of the
/// coefficient gives `d`-modes, the pure-`t` part gives `d1`-modes.
pub fn der_decompose(a: &RDerivation) -> WittVector {
    let mut v = WittVector::zero();
    for (k, e, c) in a.coeff.terms() {
        let kind = if e == 1 { WittKind::D } else { WittKind::D1 };
        v.add(kind, k, c.clone());
    }
    v
}

/// Bracket of two basis derivations computed geometrically.
pub fn witt_bracket_geometric(i: (WittKind, i64), j: (WittKind, i64)) -> WittVector {
    der_decompose(&der_commutator(
        &basis_derivation(i.0, i.1),
        &basis_derivation(j.0, j.1),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::tests::arb_r;
    use proptest::prelude::*;
    use WittKind::{D, D1};

    #[test]
    fn d_on_monomials() {
        for n in -5..=5 {
            assert_eq!(apply_d(&RRingElem::t_pow(n)), RRingElem::tu_pow(n - 1).scale(&q(n)));
        }
        assert!(apply_d(&RRingElem::one()).is_zero());
        assert_eq!(
            apply_d(&RRingElem::tu_pow(0)),
            RRingElem::t_pow(1) + RRingElem::monomial(0, 0, q(2))
        );
    }

    #[test]
    fn commutator_examples() {
        let d0 = basis_derivation(D, 0);
        assert!(der_commutator(&d0, &d0).is_zero());
        let c = der_commutator(&basis_derivation(D1, 0), &basis_derivation(D1, 1));
        assert_eq!(c.coeff, RRingElem::tu_pow(0));
        let c = der_commutator(&d0, &basis_derivation(D1, 0));
        assert_eq!(c.coeff, -(RRingElem::t_pow(1) + RRingElem::monomial(0, 0, q(2))));
        assert_eq!(der_decompose(&c), WittVector::zero().with(D1, 1, q(-1)).with(D1, 0, q(-2)));
    }

    #[test]
    fn decompose_examples() {
        assert_eq!(der_decompose(&RDerivation::new(RRingElem::tu_pow(0))), WittVector::basis(D, 0));
        let c = RRingElem::t_pow(1) + RRingElem::monomial(0, 0, q(2));
        assert_eq!(
            der_decompose(&RDerivation::new(c)),
            WittVector::zero().with(D1, 1, q(1)).with(D1, 0, q(2))
        );
        let c = RRingElem::tu_pow(2) + RRingElem::monomial(1, 1, q(4));
        assert_eq!(
            der_decompose(&RDerivation::new(c)),
            WittVector::zero().with(D, 2, q(1)).with(D, 1, q(4))
        );
    }

    #[test]
    fn geometric_bracket_examples() {
        assert_eq!(
            witt_bracket_geometric((D, 1), (D, 2)),
            WittVector::zero().with(D, 4, q(1)).with(D, 3, q(4))
        );
        assert_eq!(witt_bracket_geometric((D1, 0), (D1, 1)), WittVector::basis(D, 0));
        for m in -3..=3 {
            assert!(witt_bracket_geometric((D, m), (D, m)).is_zero());
        }
    }

    #[test]
    fn commutator_antisymmetry_and_jacobi() {
        let w = 6;
        let basis: Vec<RDerivation> = [D, D1]
            .iter()
            .flat_map(|&k| (-w..=w).map(move |m| basis_derivation(k, m)))
            .collect();
        for a in &basis {
            for b in &basis {
                let ab = der_commutator(a, b);
                let ba = der_commutator(b, a);
                assert_eq!(ab.coeff, -ba.coeff);
            }
        }
        // Jacobi on a strided subset keeps the debug-mode runtime small; the
        // full window is covered by the liealg Jacobi checker.
        for a in basis.iter().step_by(3) {
            for b in basis.iter().step_by(2) {
                for c in &basis {
                    let j = der_commutator(a, &der_commutator(b, c)).coeff
                        + der_commutator(b, &der_commutator(c, a)).coeff
                        + der_commutator(c, &der_commutator(a, b)).coeff;
                    assert!(j.is_zero());
                }
            }
        }
    }

    proptest! {
        #[test]
        fn d_is_a_derivation(f in arb_r(), g in arb_r()) {
            let lhs = apply_d(&(&f * &g));
            let rhs = &apply_d(&f) * &g + &f * &apply_d(&g);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn decompose_inverts_expansion(v in prop::collection::vec((0u8..=1, -8i64..=8, -5i64..=5), 0..6)) {
            let mut w = WittVector::zero();
            for (k, m, c) in v {
                w.add(if k == 0 { D } else { D1 }, m, q(c));
            }
            prop_assert_eq!(der_decompose(&w.to_derivation()), w);
        }
    }
}
