use std::collections::BTreeMap;

use num_traits::Zero;

use super::checks::generators;
use super::cocycle::Cocycle;
use super::tables::BracketTable;
use super::GenId;
use crate::ring::WittKind;
use crate::scalar::Q;

type SparseRow = BTreeMap<usize, Q>;

/// The linear system `f([x_i, x_j]) = phi(x_i, x_j)` for `i < j` in a window,
/// with one unknown `f(g)` per Witt basis element that occurs in a bracket.
#[derive(Clone, Debug)]
pub struct CoboundarySystem {
    pub phi: Cocycle,
    pub window: i64,
    pub unknowns: Vec<GenId>,
    /// `(x_i, x_j, lhs, rhs)`.
    pub rows: Vec<(GenId, GenId, SparseRow, Q)>,
}

#[derive(Clone, Debug)]
pub enum CoboundaryOutcome {
    /// `y^T A = 0` and `y^T b != 0`: no functional on the window solves the system.
    Infeasible { rank_a: usize, rank_ab: usize, certificate: Vec<(usize, Q)> },
    /// A solution exists on this window; this does not decide the question.
    Feasible { witness: BTreeMap<GenId, Q> },
}

impl CoboundaryOutcome {
    pub fn is_infeasible(&self) -> bool {
        matches!(self, CoboundaryOutcome::Infeasible { .. })
    }
}

fn kind_of(g: &GenId) -> WittKind {
    if g.symbol == super::Symbol::D {
        WittKind::D
    } else {
        WittKind::D1
    }
}

impl CoboundarySystem {
    pub fn build(phi: Cocycle, window: i64) -> Self {
        assert!(window >= 2, "coboundary window must be at least 2");
        let table = BracketTable::Witt;
        let gens = generators(table, window);
        let mut index: BTreeMap<GenId, usize> = BTreeMap::new();
        let mut unknowns = Vec::new();
        let mut rows = Vec::new();
        for (i, a) in gens.iter().enumerate() {
            for b in &gens[i + 1..] {
                let mut lhs = SparseRow::new();
                for (g, c) in table.bracket(a, b).terms() {
                    let next = unknowns.len();
                    let col = *index.entry(*g).or_insert_with(|| {
                        unknowns.push(*g);
                        next
                    });
                    lhs.insert(col, c.clone());
                }
                let rhs = phi.eval(kind_of(a), a.mode, kind_of(b), b.mode);
                rows.push((*a, *b, lhs, rhs));
            }
        }
        Self { phi, window, unknowns, rows }
    }

    /// Checks `y^T A = 0` and `y^T b != 0` directly on the stored rows.
    pub fn verify_certificate(&self, y: &[(usize, Q)]) -> bool {
        let mut combo = SparseRow::new();
        let mut rhs = Q::zero();
        for (r, c) in y {
            let (_, _, lhs, b) = &self.rows[*r];
            for (col, v) in lhs {
                *combo.entry(*col).or_insert_with(Q::zero) += c * v;
            }
            rhs += c * b;
        }
        combo.values().all(|v| v.is_zero()) && !rhs.is_zero()
    }

    /// Checks that `witness` satisfies every row.
    pub fn verify_witness(&self, witness: &BTreeMap<GenId, Q>) -> bool {
        self.rows.iter().all(|(_, _, lhs, rhs)| {
            let val: Q = lhs
                .iter()
                .map(|(col, c)| c * witness.get(&self.unknowns[*col]).cloned().unwrap_or_else(Q::zero))
                .sum();
            &val == rhs
        })
    }

    /// Exact Gaussian elimination tracking the row combination of each reduced row.
    pub fn solve(&self) -> CoboundaryOutcome {
        struct Pivot {
            col: usize,
            lhs: SparseRow,
            rhs: Q,
            combo: SparseRow,
        }
        let mut pivots: Vec<Pivot> = Vec::new();
        let mut certificate: Option<Vec<(usize, Q)>> = None;
        for (r, (_, _, lhs, rhs)) in self.rows.iter().enumerate() {
            let mut lhs = lhs.clone();
            let mut rhs = rhs.clone();
            let mut combo = SparseRow::from([(r, Q::from_integer(1.into()))]);
            for p in &pivots {
                let Some(c) = lhs.get(&p.col).cloned() else { continue };
                for (col, v) in &p.lhs {
                    let e = lhs.entry(*col).or_insert_with(Q::zero);
                    *e -= &c * v;
                    if e.is_zero() {
                        lhs.remove(col);
                    }
                }
                rhs -= &c * &p.rhs;
                for (row, v) in &p.combo {
                    let e = combo.entry(*row).or_insert_with(Q::zero);
                    *e -= &c * v;
                    if e.is_zero() {
                        combo.remove(row);
                    }
                }
            }
            match lhs.keys().next().copied() {
                Some(col) => {
                    let inv = lhs[&col].recip();
                    for v in lhs.values_mut() {
                        *v *= &inv;
                    }
                    rhs *= &inv;
                    for v in combo.values_mut() {
                        *v *= &inv;
                    }
                    // keep earlier pivots reduced against the new one
                    for p in pivots.iter_mut() {
                        let Some(c) = p.lhs.get(&col).cloned() else { continue };
                        for (k, v) in &lhs {
                            let e = p.lhs.entry(*k).or_insert_with(Q::zero);
                            *e -= &c * v;
                            if e.is_zero() {
                                p.lhs.remove(k);
                            }
                        }
                        p.rhs -= &c * &rhs;
                        for (k, v) in &combo {
                            let e = p.combo.entry(*k).or_insert_with(Q::zero);
                            *e -= &c * v;
                            if e.is_zero() {
                                p.combo.remove(k);
                            }
                        }
                    }
                    pivots.push(Pivot { col, lhs, rhs, combo });
                }
                None if !rhs.is_zero() && certificate.is_none() => {
                    certificate = Some(combo.into_iter().collect());
                }
                None => {}
            }
        }
        let rank_a = pivots.len();
        match certificate {
            Some(certificate) => CoboundaryOutcome::Infeasible { rank_a, rank_ab: rank_a + 1, certificate },
            None => {
                // fully reduced pivots: free unknowns set to zero
                let witness = pivots.iter().map(|p| (self.unknowns[p.col], p.rhs.clone())).collect();
                CoboundaryOutcome::Feasible { witness }
            }
        }
    }
}

pub fn coboundary_window_test(phi: Cocycle, window: i64) -> (CoboundarySystem, CoboundaryOutcome) {
    let sys = CoboundarySystem::build(phi, window);
    let out = sys.solve();
    (sys, out)
}
