use serde::{Deserialize, Serialize};

use super::{FockMonomial, FockState, RepParams, Var};
use crate::scalar::{q, Q};

/// Mode families that act directly on the Fock space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Prim {
    A,
    AStar,
    A1,
    A1Star,
    B,
    B1,
}

impl Prim {
    pub fn name(self) -> &'static str {
        match self {
            Prim::A => "a",
            Prim::AStar => "a*",
            Prim::A1 => "a1",
            Prim::A1Star => "a1*",
            Prim::B => "b",
            Prim::B1 => "b1",
        }
    }

    /// `s` in `field(z) = sum_n p_n z^(-n-s)`.
    pub fn shift(self) -> i64 {
        match self {
            Prim::AStar | Prim::A1Star => 0,
            _ => 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum OscKind {
    A,
    AStar,
    A1,
    A1Star,
}

impl From<OscKind> for Prim {
    fn from(k: OscKind) -> Prim {
        match k {
            OscKind::A => Prim::A,
            OscKind::AStar => Prim::AStar,
            OscKind::A1 => Prim::A1,
            OscKind::A1Star => Prim::A1Star,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum HeisKind {
    B,
    B1,
}

impl From<HeisKind> for Prim {
    fn from(k: HeisKind) -> Prim {
        match k {
            HeisKind::B => Prim::B,
            HeisKind::B1 => Prim::B1,
        }
    }
}

/// Whether the mode sits in the annihilation part of its field under the
/// normal ordering fixed by `r`.
pub fn is_annihilator(p: Prim, n: i64, r: u8) -> bool {
    match p {
        Prim::A | Prim::A1 => r == 0 && n >= 0,
        Prim::AStar | Prim::A1Star => r == 1 || n >= 1,
        Prim::B | Prim::B1 => n >= 0,
    }
}

fn mult(out: &mut FockState, m: &FockMonomial, c: &Q, x: Var) {
    out.add_term(m.times(x), c.clone());
}

fn diff(out: &mut FockState, m: &FockMonomial, c: &Q, x: Var, factor: &Q) {
    if let Some((e, d)) = m.derive(x) {
        out.add_term(d, c * factor * q(e as i64));
    }
}

fn osc_var(p: Prim, n: i64) -> Var {
    match p {
        Prim::A | Prim::AStar => Var::X(n),
        _ => Var::X1(n),
    }
}

/// Adds `c * (p_n m)` to `out`.
pub fn apply_prim_mono(p: Prim, n: i64, m: &FockMonomial, c: &Q, params: &RepParams, out: &mut FockState) {
    let k0 = &params.kappa0;
    match p {
        Prim::A | Prim::A1 => {
            if is_annihilator(p, n, params.r) {
                diff(out, m, c, osc_var(p, n), &q(1));
            } else {
                mult(out, m, c, osc_var(p, n));
            }
        }
        Prim::AStar | Prim::A1Star => {
            if is_annihilator(p, n, params.r) {
                diff(out, m, c, osc_var(p, -n), &q(-1));
            } else {
                mult(out, m, c, osc_var(p, -n));
            }
        }
        Prim::B => {
            if n < 0 {
                mult(out, m, c, Var::Y(n));
            } else if n > 0 {
                diff(out, m, c, Var::Y(-n), &(q(-2 * n) * k0));
            } else {
                out.add_term(m.clone(), c * &params.b0);
            }
        }
        Prim::B1 => {
            if n < 0 {
                mult(out, m, c, Var::Y1(n));
                return;
            }
            diff(out, m, c, Var::Y1(-2 - n), &(q(-(2 + 2 * n)) * k0));
            diff(out, m, c, Var::Y1(-1 - n), &(q(-4 * (1 + 2 * n)) * k0));
            if n == 0 {
                let row = &params.b1[m.v() as usize];
                out.add_term(m.with_v(0), c * &row[0]);
                out.add_term(m.with_v(1), c * &row[1]);
            }
        }
    }
}

pub fn apply_prim(p: Prim, n: i64, s: &FockState, params: &RepParams) -> FockState {
    let mut out = FockState::zero();
    for (m, c) in s.terms() {
        apply_prim_mono(p, n, m, c, params, &mut out);
    }
    out
}

/// Oscillator mode action; only `params.r` matters.
pub fn osc_apply(which: OscKind, m: i64, s: &FockState, params: &RepParams) -> FockState {
    apply_prim(which.into(), m, s, params)
}

pub fn heis_apply(which: HeisKind, n: i64, s: &FockState, params: &RepParams) -> FockState {
    apply_prim(which.into(), n, s, params)
}
