use serde::{Deserialize, Serialize};

use super::cocycle::{mu_closed_form, phi1, phi2};
use super::{Algebra, GenId, LieVector, Symbol};
use crate::kaehler::pairing;
use crate::ring::{RRingElem, WittKind};
use crate::scalar::{delta, q, qr, Q};

/// A bracket on basis generators, extended bilinearly by [`BracketTable::bracket_vec`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BracketTable {
    /// The printed affine table with the closed-form `mu`.
    Affine,
    /// Affine bracket built from `sl2 (x) R` and the residue pairing.
    AffineKassel,
    Heisenberg,
    Witt,
    Virasoro,
}

impl BracketTable {
    pub fn name(self) -> &'static str {
        match self {
            BracketTable::Affine => "affine",
            BracketTable::AffineKassel => "affine-kassel",
            BracketTable::Heisenberg => "heisenberg",
            BracketTable::Witt => "witt",
            BracketTable::Virasoro => "virasoro",
        }
    }

    pub fn algebra(self) -> Algebra {
        match self {
            BracketTable::Affine | BracketTable::AffineKassel => Algebra::Affine,
            BracketTable::Heisenberg => Algebra::Heisenberg,
            BracketTable::Witt => Algebra::Witt,
            BracketTable::Virasoro => Algebra::Virasoro,
        }
    }

    pub fn bracket(self, a: &GenId, b: &GenId) -> LieVector {
        match self {
            BracketTable::Affine => affine_bracket(a, b),
            BracketTable::AffineKassel => affine_bracket_kassel(a, b),
            BracketTable::Heisenberg => heis_bracket(a, b),
            BracketTable::Witt => witt_bracket(a, b),
            BracketTable::Virasoro => vir_bracket(a, b),
        }
    }

    pub fn bracket_vec(self, x: &LieVector, y: &LieVector) -> LieVector {
        let mut out = LieVector::zero();
        for (a, ca) in x.terms() {
            for (b, cb) in y.terms() {
                out.add_scaled(&self.bracket(a, b), &(ca * cb));
            }
        }
        out
    }
}

fn g(s: Symbol, m: i64) -> GenId {
    GenId::of(s, m)
}

fn expect_algebra(a: &GenId, b: &GenId, alg: Algebra) {
    assert!(
        a.algebra == alg && b.algebra == alg,
        "{} bracket called on {a} and {b}",
        alg.name()
    );
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Sl2 {
    E,
    F,
    H,
}

fn split_affine(s: Symbol) -> (Sl2, bool) {
    match s {
        Symbol::E => (Sl2::E, false),
        Symbol::F => (Sl2::F, false),
        Symbol::H => (Sl2::H, false),
        Symbol::E1 => (Sl2::E, true),
        Symbol::F1 => (Sl2::F, true),
        Symbol::H1 => (Sl2::H, true),
        other => panic!("{} is not an sl2 loop symbol", other.name()),
    }
}

fn join_affine(x: Sl2, twisted: bool) -> Symbol {
    match (x, twisted) {
        (Sl2::E, false) => Symbol::E,
        (Sl2::F, false) => Symbol::F,
        (Sl2::H, false) => Symbol::H,
        (Sl2::E, true) => Symbol::E1,
        (Sl2::F, true) => Symbol::F1,
        (Sl2::H, true) => Symbol::H1,
    }
}

fn omega0() -> GenId {
    GenId::central(Symbol::Omega0)
}

fn omega1() -> GenId {
    GenId::central(Symbol::Omega1)
}

/// Entries of the printed table in the order they are listed; `None` means
/// the pair is only given through antisymmetry.
fn affine_listed(a: &GenId, b: &GenId) -> Option<LieVector> {
    use Sl2::*;
    let (x, xt) = split_affine(a.symbol);
    let (y, yt) = split_affine(b.symbol);
    let (m, n) = (a.mode, b.mode);
    let s = m + n;
    let z = LieVector::zero();
    let v = match (x, xt, y, yt) {
        (E, _, E, _) | (F, _, F, _) => z,
        (H, false, H, false) => z.with(omega0(), q(n - m) * delta(m, -n)),
        (H, true, H, true) => z.with(omega0(), q(n - m) * (delta(s, -2) + q(4) * delta(s, -1))),
        (H, false, H, true) => z.with(omega1(), q(-2) * mu_closed_form(m, n).value),
        (E, false, F, false) => z.with(g(Symbol::H, s), q(1)).with(omega0(), q(-m) * delta(m, -n)),
        (E, false, F, true) | (E, true, F, false) => {
            z.with(g(Symbol::H1, s), q(1)).with(omega1(), q(-m) * mu_closed_form(m, n).value)
        }
        (E, true, F, true) => z
            .with(g(Symbol::H, s + 2), q(1))
            .with(g(Symbol::H, s + 1), q(4))
            .with(omega0(), qr(1, 2) * q(n - m) * (delta(s, -2) + q(4) * delta(s, -1))),
        (H, false, E, t) => z.with(g(join_affine(E, t), s), q(2)),
        (H, true, E, false) => z.with(g(Symbol::E1, s), q(2)),
        (H, true, E, true) => z.with(g(Symbol::E, s + 2), q(2)).with(g(Symbol::E, s + 1), q(8)),
        (H, false, F, t) => z.with(g(join_affine(F, t), s), q(-2)),
        (H, true, F, false) => z.with(g(Symbol::F1, s), q(-2)),
        (H, true, F, true) => z.with(g(Symbol::F, s + 2), q(-2)).with(g(Symbol::F, s + 1), q(-8)),
        _ => return None,
    };
    Some(v)
}

/// The affine table with the closed-form `mu`, extended by antisymmetry.
pub fn affine_bracket(a: &GenId, b: &GenId) -> LieVector {
    expect_algebra(a, b, Algebra::Affine);
    if a.is_central() || b.is_central() {
        return LieVector::zero();
    }
    if let Some(v) = affine_listed(a, b) {
        return v;
    }
    affine_listed(b, a).expect("affine table covers every unordered pair").neg()
}

fn sl2_bracket(x: Sl2, y: Sl2) -> Option<(Sl2, Q)> {
    use Sl2::*;
    match (x, y) {
        (H, E) => Some((E, q(2))),
        (E, H) => Some((E, q(-2))),
        (H, F) => Some((F, q(-2))),
        (F, H) => Some((F, q(2))),
        (E, F) => Some((H, q(1))),
        (F, E) => Some((H, q(-1))),
        _ => None,
    }
}

/// Invariant form normalized by `(e, f) = 1`, `(h, h) = 2`.
fn sl2_form(x: Sl2, y: Sl2) -> Q {
    use Sl2::*;
    match (x, y) {
        (E, F) | (F, E) => q(1),
        (H, H) => q(2),
        _ => q(0),
    }
}

fn ring_of(twisted: bool, m: i64) -> RRingElem {
    if twisted {
        RRingElem::tu_pow(m)
    } else {
        RRingElem::t_pow(m)
    }
}

/// `[x (x) f, y (x) g] = [x, y] (x) fg + (x, y) [f dg]`.
pub fn affine_bracket_kassel(a: &GenId, b: &GenId) -> LieVector {
    expect_algebra(a, b, Algebra::Affine);
    if a.is_central() || b.is_central() {
        return LieVector::zero();
    }
    let (x, xt) = split_affine(a.symbol);
    let (y, yt) = split_affine(b.symbol);
    let f = ring_of(xt, a.mode);
    let gg = ring_of(yt, b.mode);
    let mut out = LieVector::zero();
    if let Some((zsym, c)) = sl2_bracket(x, y) {
        for (k, e, v) in (&f * &gg).terms() {
            out.add_term(g(join_affine(zsym, e == 1), k), &c * v);
        }
    }
    let form = sl2_form(x, y);
    if form != q(0) {
        let cls = pairing(&f, &gg);
        out.add_term(omega0(), &form * &cls.q0);
        out.add_term(omega1(), &form * &cls.q1);
    }
    out
}

pub fn heis_bracket(a: &GenId, b: &GenId) -> LieVector {
    expect_algebra(a, b, Algebra::Heisenberg);
    let one0 = GenId::central(Symbol::One0);
    let one1 = GenId::central(Symbol::One1);
    let (m, n) = (a.mode, b.mode);
    let s = m + n;
    let z = LieVector::zero();
    match (a.symbol, b.symbol) {
        (Symbol::B, Symbol::B) => z.with(one0, q(n - m) * delta(s, 0)),
        (Symbol::B1, Symbol::B1) => z.with(one0, q(n - m) * (delta(s, -2) + q(4) * delta(s, -1))),
        (Symbol::B1, Symbol::B) => z.with(one1, q(2) * mu_closed_form(m, n).value),
        (Symbol::B, Symbol::B1) => z.with(one1, q(-2) * mu_closed_form(n, m).value),
        _ => z,
    }
}

fn witt_kind(s: Symbol) -> WittKind {
    match s {
        Symbol::D | Symbol::VD => WittKind::D,
        Symbol::D1 | Symbol::VD1 => WittKind::D1,
        other => panic!("{} is not a Witt symbol", other.name()),
    }
}

/// Witt bracket in terms of `(kind, mode)` pairs.
fn witt_pairs(x: WittKind, m: i64, y: WittKind, n: i64) -> Vec<(WittKind, i64, Q)> {
    use WittKind::{D, D1};
    let s = m + n;
    match (x, y) {
        (D, D) => vec![(D, s + 1, q(n - m)), (D, s, q(4 * (n - m)))],
        (D1, D1) => vec![(D, s - 1, q(n - m))],
        (D, D1) => vec![(D1, s + 1, q(n - m - 1)), (D1, s, q(4 * n - 4 * m - 2))],
        (D1, D) => vec![(D1, s + 1, q(-(m - n - 1))), (D1, s, q(-(4 * m - 4 * n - 2)))],
    }
}

pub fn witt_bracket(a: &GenId, b: &GenId) -> LieVector {
    expect_algebra(a, b, Algebra::Witt);
    let mut out = LieVector::zero();
    for (k, mode, c) in witt_pairs(witt_kind(a.symbol), a.mode, witt_kind(b.symbol), b.mode) {
        let s = if k == WittKind::D { Symbol::D } else { Symbol::D1 };
        out.add_term(g(s, mode), c);
    }
    out
}

pub fn vir_bracket(a: &GenId, b: &GenId) -> LieVector {
    expect_algebra(a, b, Algebra::Virasoro);
    if a.is_central() || b.is_central() {
        return LieVector::zero();
    }
    let (x, y) = (witt_kind(a.symbol), witt_kind(b.symbol));
    let mut out = LieVector::zero();
    for (k, mode, c) in witt_pairs(x, a.mode, y, b.mode) {
        let s = if k == WittKind::D { Symbol::VD } else { Symbol::VD1 };
        out.add_term(g(s, mode), c);
    }
    out.add_term(GenId::central(Symbol::C1), phi1(x, a.mode, y, b.mode));
    out.add_term(GenId::central(Symbol::C2), phi2(x, a.mode, y, b.mode));
    out
}
