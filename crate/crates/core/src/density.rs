//! The modules `U_alpha` with basis `a_k`, `abar_k` (formally `t^(alpha+k)` and
//! `t^(alpha+k) u`) over the Witt algebra.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::liealg::{witt_bracket, CheckOutcome, GenId, Symbol};
use crate::ring::WittKind;
use crate::scalar::{fmt_q, q, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DensitySym {
    A,
    ABar,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UAlphaVec {
    pub alpha: Q,
    terms: BTreeMap<(DensitySym, i64), Q>,
}

impl UAlphaVec {
    pub fn zero(alpha: Q) -> Self {
        Self { alpha, terms: BTreeMap::new() }
    }

    pub fn basis(alpha: Q, sym: DensitySym, k: i64) -> Self {
        let mut v = Self::zero(alpha);
        v.add_term(sym, k, q(1));
        v
    }

    pub fn add_term(&mut self, sym: DensitySym, k: i64, c: Q) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((sym, k)).or_insert_with(Q::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(sym, k));
        }
    }

    pub fn with(mut self, sym: DensitySym, k: i64, c: Q) -> Self {
        self.add_term(sym, k, c);
        self
    }

    pub fn add_scaled(&mut self, o: &UAlphaVec, c: &Q) {
        assert_eq!(self.alpha, o.alpha, "vectors from different modules");
        for (&(s, k), v) in &o.terms {
            self.add_term(s, k, v * c);
        }
    }

    pub fn coeff(&self, sym: DensitySym, k: i64) -> Q {
        self.terms.get(&(sym, k)).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl fmt::Display for UAlphaVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(&(s, k), c)| {
                let name = if s == DensitySym::A { "a" } else { "abar" };
                format!("{}*{}_{}", fmt_q(c), name, k)
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Action of `d_n` (kind `D`) or `d1_n` (kind `D1`).
pub fn density_act(kind: WittKind, n: i64, v: &UAlphaVec) -> UAlphaVec {
    use DensitySym::{ABar, A};
    let al = &v.alpha;
    let mut out = UAlphaVec::zero(al.clone());
    for (&(s, i), c) in &v.terms {
        let ai = al + q(i);
        match (kind, s) {
            (WittKind::D, A) => {
                out.add_term(A, i + n + 1, c * &ai);
                out.add_term(A, i + n, c * &ai * q(4));
            }
            (WittKind::D, ABar) => {
                out.add_term(ABar, n + i + 1, c * (&ai + q(1)));
                out.add_term(ABar, n + i, c * (q(4) * &ai + q(2)));
            }
            (WittKind::D1, A) => out.add_term(ABar, n + i - 1, c * &ai),
            (WittKind::D1, ABar) => {
                out.add_term(A, n + i + 1, c * (&ai + q(1)));
                out.add_term(A, n + i, c * q(2) * (q(2) * &ai + q(1)));
            }
        }
    }
    out
}

fn kind_of(g: &GenId) -> WittKind {
    if g.symbol == Symbol::D {
        WittKind::D
    } else {
        WittKind::D1
    }
}

fn act_vec(x: &crate::liealg::LieVector, v: &UAlphaVec) -> UAlphaVec {
    let mut out = UAlphaVec::zero(v.alpha.clone());
    for (g, c) in x.terms() {
        out.add_scaled(&density_act(kind_of(g), g.mode, v), c);
    }
    out
}

/// `[x, y] v = x (y v) - y (x v)` for basis `x, y` with `|mode| <= w` and
/// basis vectors `a_k`, `abar_k` with `|k| <= w`, one outcome per alpha and pair kind.
pub fn density_module_check(alphas: &[Q], w: i64) -> Vec<CheckOutcome> {
    let gens: Vec<GenId> = [Symbol::D, Symbol::D1]
        .iter()
        .flat_map(|&s| (-w..=w).map(move |m| GenId::of(s, m)))
        .collect();
    alphas
        .par_iter()
        .flat_map(|alpha| {
            let mut by_kind: BTreeMap<String, CheckOutcome> = BTreeMap::new();
            for x in &gens {
                for y in &gens {
                    let label = format!("alpha={}:[{},{}]", fmt_q(alpha), x.symbol.name(), y.symbol.name());
                    let out = by_kind.entry(label.clone()).or_insert_with(|| CheckOutcome::new(label));
                    let br = witt_bracket(x, y);
                    for sym in [DensitySym::A, DensitySym::ABar] {
                        for k in -w..=w {
                            let v = UAlphaVec::basis(alpha.clone(), sym, k);
                            let lhs = act_vec(&br, &v);
                            let mut rhs = density_act(kind_of(x), x.mode, &density_act(kind_of(y), y.mode, &v));
                            rhs.add_scaled(
                                &density_act(kind_of(y), y.mode, &density_act(kind_of(x), x.mode, &v)),
                                &q(-1),
                            );
                            let mut res = lhs;
                            res.add_scaled(&rhs, &q(-1));
                            out.record(
                                || format!("[{x}, {y}] on {v}"),
                                (!res.is_zero()).then(|| res.to_string()),
                            );
                        }
                    }
                }
            }
            by_kind.into_values().collect::<Vec<_>>()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::qr;
    use DensitySym::{ABar, A};

    #[test]
    fn action_examples() {
        let a = qr(3, 7);
        let v = density_act(WittKind::D, 0, &UAlphaVec::basis(a.clone(), A, 0));
        assert_eq!(v, UAlphaVec::zero(a.clone()).with(A, 1, a.clone()).with(A, 0, q(4) * &a));
        for n in -3..=3 {
            assert!(density_act(WittKind::D, n, &UAlphaVec::basis(q(0), A, 0)).is_zero());
        }
        let v = density_act(WittKind::D1, 2, &UAlphaVec::basis(q(1), ABar, 1));
        assert_eq!(v, UAlphaVec::zero(q(1)).with(A, 4, q(3)).with(A, 3, q(10)));
    }

    #[test]
    fn module_identity() {
        let alphas = [q(0), qr(1, 2), qr(-3, 4), q(2)];
        let out = density_module_check(&alphas, 6);
        assert!(out.iter().all(|o| o.passed()), "{:?}", out.iter().find(|o| !o.passed()));
    }
}
