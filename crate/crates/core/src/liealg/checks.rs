use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::cocycle::Cocycle;
use super::tables::BracketTable;
use super::{GenId, LieVector, Symbol};
use crate::ring::WittKind;
use crate::scalar::{fmt_q, Q};

/// How many failing cases are kept verbatim per outcome.
const KEPT_FAILURES: usize = 5;

/// Result of one family of checks (all cases sharing a symbol pattern).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub label: String,
    pub cases: usize,
    pub failed: usize,
    /// Up to a handful of `(case, residual)` pairs.
    pub failures: Vec<(String, String)>,
}

impl CheckOutcome {
    pub fn new(label: String) -> Self {
        Self { label, cases: 0, failed: 0, failures: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0
    }

    pub fn record(&mut self, case: impl FnOnce() -> String, residual: Option<String>) {
        self.cases += 1;
        if let Some(r) = residual {
            self.failed += 1;
            if self.failures.len() < KEPT_FAILURES {
                self.failures.push((case(), r));
            }
        }
    }

    pub fn merge(&mut self, o: CheckOutcome) {
        self.cases += o.cases;
        self.failed += o.failed;
        for f in o.failures {
            if self.failures.len() < KEPT_FAILURES {
                self.failures.push(f);
            }
        }
    }
}

/// Non-central generators of the table's algebra with `|mode| <= w`.
pub fn generators(table: BracketTable, w: i64) -> Vec<GenId> {
    Symbol::modes_of(table.algebra())
        .iter()
        .flat_map(|&s| (-w..=w).map(move |m| GenId::of(s, m)))
        .collect()
}

/// Merges per-task outcome maps in task order so reports do not depend on scheduling.
fn merge_ordered(parts: Vec<BTreeMap<String, CheckOutcome>>) -> Vec<CheckOutcome> {
    let mut all: BTreeMap<String, CheckOutcome> = BTreeMap::new();
    for part in parts {
        for (k, v) in part {
            match all.get_mut(&k) {
                Some(acc) => acc.merge(v),
                None => {
                    all.insert(k, v);
                }
            }
        }
    }
    all.into_values().collect()
}

fn class_label(syms: &[Symbol]) -> String {
    syms.iter().map(|s| s.name()).collect::<Vec<_>>().join(",")
}

/// `[a, b] + [b, a] = 0` on all pairs with `|mode| <= w`.
pub fn check_antisymmetry(table: BracketTable, w: i64) -> Vec<CheckOutcome> {
    let gens = generators(table, w);
    let parts = gens
        .par_iter()
        .map(|a| {
            let mut part: BTreeMap<String, CheckOutcome> = BTreeMap::new();
            for b in &gens {
                let mut r = table.bracket(a, b);
                r.add(&table.bracket(b, a));
                let mut syms = [a.symbol, b.symbol];
                syms.sort();
                let label = class_label(&syms);
                part.entry(label.clone())
                    .or_insert_with(|| CheckOutcome::new(label))
                    .record(|| format!("[{a}, {b}]"), (!r.is_zero()).then(|| r.to_string()));
            }
            part
        })
        .collect();
    merge_ordered(parts)
}

fn jacobiator(table: BracketTable, a: &GenId, b: &GenId, c: &GenId) -> LieVector {
    let mut r = LieVector::zero();
    let ga = LieVector::gen(*a);
    let gb = LieVector::gen(*b);
    let gc = LieVector::gen(*c);
    r.add(&table.bracket_vec(&ga, &table.bracket_vec(&gb, &gc)));
    r.add(&table.bracket_vec(&gb, &table.bracket_vec(&gc, &ga)));
    r.add(&table.bracket_vec(&gc, &table.bracket_vec(&ga, &gb)));
    r
}

/// Jacobi identity on all triples `a < b < c` of generators with `|mode| <= w`.
pub fn check_jacobi(table: BracketTable, w: i64) -> Vec<CheckOutcome> {
    let gens = generators(table, w);
    let parts = (0..gens.len())
        .into_par_iter()
        .map(|i| {
            let mut part: BTreeMap<String, CheckOutcome> = BTreeMap::new();
            let a = &gens[i];
            for j in i + 1..gens.len() {
                let b = &gens[j];
                for c in &gens[j + 1..] {
                    let r = jacobiator(table, a, b, c);
                    let mut syms = [a.symbol, b.symbol, c.symbol];
                    syms.sort();
                    let label = class_label(&syms);
                    part.entry(label.clone())
                        .or_insert_with(|| CheckOutcome::new(label))
                        .record(|| format!("({a}, {b}, {c})"), (!r.is_zero()).then(|| r.to_string()));
                }
            }
            part
        })
        .collect();
    merge_ordered(parts)
}

fn kind_of(s: Symbol) -> WittKind {
    if s == Symbol::D {
        WittKind::D
    } else {
        WittKind::D1
    }
}

/// `phi` evaluated on `[x, y]` (a Witt vector) and a basis element.
fn phi_on(phi: Cocycle, v: &LieVector, c: &GenId) -> Q {
    v.terms()
        .map(|(g, coef)| coef * phi.eval(kind_of(g.symbol), g.mode, kind_of(c.symbol), c.mode))
        .sum()
}

/// `phi([a,b],c) + phi([b,c],a) + phi([c,a],b) = 0` on Witt triples with `|mode| <= w`.
pub fn check_cocycle_identity(phi: Cocycle, w: i64) -> Vec<CheckOutcome> {
    let table = BracketTable::Witt;
    let gens = generators(table, w);
    let parts = (0..gens.len())
        .into_par_iter()
        .map(|i| {
            let mut part: BTreeMap<String, CheckOutcome> = BTreeMap::new();
            let a = &gens[i];
            for j in i + 1..gens.len() {
                let b = &gens[j];
                for c in &gens[j + 1..] {
                    let r = phi_on(phi, &table.bracket(a, b), c)
                        + phi_on(phi, &table.bracket(b, c), a)
                        + phi_on(phi, &table.bracket(c, a), b);
                    let mut syms = [a.symbol, b.symbol, c.symbol];
                    syms.sort();
                    let label = format!("{}:{}", phi.name(), class_label(&syms));
                    part.entry(label.clone())
                        .or_insert_with(|| CheckOutcome::new(label))
                        .record(|| format!("({a}, {b}, {c})"), (r != Q::default()).then(|| fmt_q(&r)));
                }
            }
            part
        })
        .collect();
    merge_ordered(parts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_pass(v: &[CheckOutcome]) -> bool {
        v.iter().all(|o| o.passed())
    }

    #[test]
    fn antisymmetry_of_all_tables() {
        for t in [
            BracketTable::Affine,
            BracketTable::AffineKassel,
            BracketTable::Heisenberg,
            BracketTable::Witt,
            BracketTable::Virasoro,
        ] {
            let out = check_antisymmetry(t, 10);
            assert!(all_pass(&out), "{}: {:?}", t.name(), out.iter().find(|o| !o.passed()));
        }
    }

    #[test]
    fn jacobi_small_windows() {
        for t in [BracketTable::Witt, BracketTable::Heisenberg, BracketTable::Virasoro] {
            assert!(all_pass(&check_jacobi(t, 4)), "{}", t.name());
        }
        assert!(all_pass(&check_jacobi(BracketTable::AffineKassel, 2)));
    }

    #[test]
    fn cocycle_identity_small_window() {
        assert!(all_pass(&check_cocycle_identity(Cocycle::Phi1, 4)));
        assert!(all_pass(&check_cocycle_identity(Cocycle::Phi2, 4)));
        assert!(all_pass(&check_cocycle_identity(Cocycle::Zero, 2)));
    }

    #[test]
    fn cases_are_counted() {
        let out = check_jacobi(BracketTable::Witt, 1);
        let total: usize = out.iter().map(|o| o.cases).sum();
        // 6 generators, C(6,3) triples
        assert_eq!(total, 20);
    }
}
