use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use super::prim::{apply_prim_mono, is_annihilator, Prim};
use super::{FockMonomial, FockState, RepParams, Var};
use crate::error::{Error, Result};
use crate::scalar::{delta, q, Q};

pub type Coef = Arc<dyn Fn(&[i64]) -> Q + Send + Sync>;

/// `sum over n_1 + ... + n_k = total of coeff(n) :p1_(n_1) ... pk_(n_k):`.
///
/// With no factors the term is `coeff(&[])` times the identity when `total == 0`.
#[derive(Clone)]
pub struct ModeTerm {
    pub factors: Vec<Prim>,
    pub total: i64,
    coeff: Coef,
}

impl fmt::Debug for ModeTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.factors.iter().map(|p| p.name()).collect();
        write!(f, "sum :{}: (total {})", names.join(" "), self.total)
    }
}

impl ModeTerm {
    pub fn new(factors: Vec<Prim>, total: i64, coeff: impl Fn(&[i64]) -> Q + Send + Sync + 'static) -> Self {
        Self { factors, total, coeff: Arc::new(coeff) }
    }

    pub fn coeff_at(&self, idx: &[i64]) -> Q {
        (self.coeff)(idx)
    }

    pub fn scaled(&self, c: Q) -> Self {
        let inner = self.coeff.clone();
        Self { factors: self.factors.clone(), total: self.total, coeff: Arc::new(move |n| &c * inner(n)) }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Upper {
    Finite(i64),
    Unbounded,
}

/// Indices at which a factor can act nontrivially on a given monomial.
struct Allowed {
    ann: Vec<i64>,
    creation: Option<Upper>,
}

impl Allowed {
    fn of(p: Prim, r: u8, m: &FockMonomial) -> Self {
        let mut ann = Vec::new();
        for (x, _) in m.vars() {
            match (p, x) {
                (Prim::A, Var::X(j)) | (Prim::A1, Var::X1(j)) if is_annihilator(p, j, r) => ann.push(j),
                (Prim::AStar, Var::X(j)) | (Prim::A1Star, Var::X1(j)) if is_annihilator(p, -j, r) => ann.push(-j),
                (Prim::B, Var::Y(j)) => ann.push(-j),
                (Prim::B1, Var::Y1(j)) => {
                    // y1[j] is hit by b1_(-2-j) and b1_(-1-j)
                    for n in [-2 - j, -1 - j] {
                        if n >= 1 {
                            ann.push(n);
                        }
                    }
                }
                _ => {}
            }
        }
        if matches!(p, Prim::B | Prim::B1) {
            ann.push(0);
        }
        ann.sort_unstable();
        ann.dedup();
        let creation = match (p, r) {
            (Prim::A | Prim::A1, 0) => Some(Upper::Finite(-1)),
            (Prim::A | Prim::A1, _) => Some(Upper::Unbounded),
            (Prim::AStar | Prim::A1Star, 0) => Some(Upper::Finite(0)),
            (Prim::AStar | Prim::A1Star, _) => None,
            (Prim::B | Prim::B1, _) => Some(Upper::Finite(-1)),
        };
        Self { ann, creation }
    }

    fn upper(&self) -> Option<Upper> {
        let a = self.ann.last().copied();
        match (self.creation, a) {
            (Some(Upper::Unbounded), _) => Some(Upper::Unbounded),
            (Some(Upper::Finite(c)), Some(a)) => Some(Upper::Finite(c.max(a))),
            (Some(Upper::Finite(c)), None) => Some(Upper::Finite(c)),
            (None, Some(a)) => Some(Upper::Finite(a)),
            (None, None) => None,
        }
    }

    fn contains(&self, n: i64) -> bool {
        match self.creation {
            Some(Upper::Unbounded) => true,
            Some(Upper::Finite(c)) if n <= c => true,
            _ => self.ann.binary_search(&n).is_ok(),
        }
    }

    /// Candidates `>= lo`; the creation interval and `ann` are disjoint.
    fn candidates_from(&self, lo: i64) -> Vec<i64> {
        let mut out = Vec::new();
        if let Some(Upper::Finite(c)) = self.creation {
            out.extend(lo..=c);
        }
        out.extend(self.ann.iter().copied().filter(|&a| a >= lo));
        out
    }
}

/// Visits every index tuple that can contribute on monomial `m`.
fn for_each_tuple(term: &ModeTerm, m: &FockMonomial, r: u8, mut f: impl FnMut(&[i64])) -> Result<()> {
    let k = term.factors.len();
    if k == 0 {
        if term.total == 0 {
            f(&[]);
        }
        return Ok(());
    }
    let allowed: Vec<Allowed> = term.factors.iter().map(|&p| Allowed::of(p, r, m)).collect();
    let mut uppers = Vec::with_capacity(k);
    for a in &allowed {
        match a.upper() {
            Some(u) => uppers.push(u),
            None => return Ok(()),
        }
    }
    let unbounded: Vec<usize> = (0..k).filter(|&i| uppers[i] == Upper::Unbounded).collect();
    let mut idx = vec![0i64; k];
    match unbounded.len() {
        0 => {
            let ub: Vec<i64> = uppers
                .iter()
                .map(|u| match u {
                    Upper::Finite(c) => *c,
                    Upper::Unbounded => unreachable!(),
                })
                .collect();
            let sum_ub: i64 = ub.iter().sum();
            let lo: Vec<i64> = (0..k).map(|i| term.total - (sum_ub - ub[i])).collect();
            let cands: Vec<Vec<i64>> = (0..k - 1).map(|i| allowed[i].candidates_from(lo[i])).collect();
            rec_bounded(&cands, &allowed[k - 1], lo[k - 1], term.total, 0, &mut idx, &mut f);
        }
        1 => {
            let u = unbounded[0];
            for (i, a) in allowed.iter().enumerate() {
                if i != u && a.creation.is_some() {
                    return Err(Error::UnsupportedShape(format!(
                        "{term:?}: an unbounded factor next to a factor with creation modes gives an infinite sum"
                    )));
                }
            }
            let others: Vec<usize> = (0..k).filter(|&i| i != u).collect();
            rec_unbounded(&allowed, &others, u, term.total, 0, &mut idx, &mut f);
        }
        _ => {
            return Err(Error::UnsupportedShape(format!("{term:?}: more than one factor is unbounded")));
        }
    }
    Ok(())
}

fn rec_bounded(
    cands: &[Vec<i64>],
    last: &Allowed,
    last_lo: i64,
    remaining: i64,
    i: usize,
    idx: &mut [i64],
    f: &mut impl FnMut(&[i64]),
) {
    if i == cands.len() {
        if remaining >= last_lo && last.contains(remaining) {
            idx[i] = remaining;
            f(idx);
        }
        return;
    }
    for &n in &cands[i] {
        idx[i] = n;
        rec_bounded(cands, last, last_lo, remaining - n, i + 1, idx, f);
    }
}

fn rec_unbounded(
    allowed: &[Allowed],
    others: &[usize],
    u: usize,
    remaining: i64,
    pos: usize,
    idx: &mut [i64],
    f: &mut impl FnMut(&[i64]),
) {
    if pos == others.len() {
        idx[u] = remaining;
        f(idx);
        return;
    }
    let i = others[pos];
    for &n in &allowed[i].ann {
        idx[i] = n;
        rec_unbounded(allowed, others, u, remaining - n, pos + 1, idx, f);
    }
}

/// Normal-ordered product of modes applied to one monomial: annihilators act first.
fn apply_ordered(factors: &[Prim], idx: &[i64], m: &FockMonomial, c: &Q, p: &RepParams, out: &mut FockState) {
    let mut cur = FockState::monomial(m.clone(), c.clone());
    let order = factors
        .iter()
        .zip(idx)
        .filter(|(f, n)| is_annihilator(**f, **n, p.r))
        .chain(factors.iter().zip(idx).filter(|(f, n)| !is_annihilator(**f, **n, p.r)));
    for (f, n) in order {
        let mut next = FockState::zero();
        for (mm, cc) in cur.terms() {
            apply_prim_mono(*f, *n, mm, cc, p, &mut next);
        }
        if next.is_zero() {
            return;
        }
        cur = next;
    }
    out.add(&cur);
}

/// Exact value of a normal-ordered mode sum on a state.
pub fn no_sum_apply(term: &ModeTerm, s: &FockState, p: &RepParams) -> Result<FockState> {
    let mut out = FockState::zero();
    for (m, c) in s.terms() {
        for_each_tuple(term, m, p.r, |idx| {
            let k = term.coeff_at(idx);
            if !k.is_zero() {
                apply_ordered(&term.factors, idx, m, &(c * k), p, &mut out);
            }
        })?;
    }
    Ok(out)
}

/// Oracle for [`no_sum_apply`]: every tuple with all but the last index in a
/// box of radius `support + |total| + 10`, applied mode by mode.
pub fn no_sum_apply_naive(term: &ModeTerm, s: &FockState, p: &RepParams) -> FockState {
    let k = term.factors.len();
    let mut out = FockState::zero();
    if k == 0 {
        if term.total == 0 {
            out.add_scaled(s, &term.coeff_at(&[]));
        }
        return out;
    }
    let b = s.support_bound() + 2 + term.total.abs() + 10;
    let mut idx = vec![0i64; k];
    #[allow(clippy::too_many_arguments)]
    fn rec(
        term: &ModeTerm,
        s: &FockState,
        p: &RepParams,
        b: i64,
        i: usize,
        remaining: i64,
        idx: &mut Vec<i64>,
        out: &mut FockState,
    ) {
        let k = idx.len();
        if i == k - 1 {
            idx[i] = remaining;
            let c = term.coeff_at(idx);
            if c.is_zero() {
                return;
            }
            for (m, v) in s.terms() {
                apply_ordered(&term.factors, idx, m, &(v * &c), p, out);
            }
            return;
        }
        for n in -b..=b {
            idx[i] = n;
            rec(term, s, p, b, i + 1, remaining - n, idx, out);
        }
    }
    rec(term, s, p, b, 0, term.total, &mut idx, &mut out);
    out
}

/// Finite sum of mode terms plus a multiple of the identity.
#[derive(Clone, Debug, Default)]
pub struct Operator {
    pub terms: Vec<ModeTerm>,
    pub scalar: Q,
}

impl Operator {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn identity(c: Q) -> Self {
        Self { terms: Vec::new(), scalar: c }
    }

    pub fn single(t: ModeTerm) -> Self {
        Self { terms: vec![t], scalar: Q::zero() }
    }

    pub fn push(&mut self, t: ModeTerm) {
        self.terms.push(t);
    }

    pub fn add_scaled(&mut self, o: &Operator, c: &Q) {
        if c.is_zero() {
            return;
        }
        for t in &o.terms {
            self.terms.push(t.scaled(c.clone()));
        }
        self.scalar += &o.scalar * c;
    }

    pub fn scaled(&self, c: &Q) -> Operator {
        let mut out = Operator::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn apply(&self, s: &FockState, p: &RepParams) -> Result<FockState> {
        let mut out = s.scale(&self.scalar);
        for t in &self.terms {
            out.add(&no_sum_apply(t, s, p)?);
        }
        Ok(out)
    }
}

/// `A(B(s)) - B(A(s))`.
pub fn commutator_apply(a: &Operator, b: &Operator, s: &FockState, p: &RepParams) -> Result<FockState> {
    let ab = a.apply(&b.apply(s, p)?, p)?;
    let ba = b.apply(&a.apply(s, p)?, p)?;
    Ok(ab.sub(&ba))
}

fn partner_sign(a: Prim, b: Prim) -> Option<Q> {
    match (a, b) {
        (Prim::A, Prim::AStar) | (Prim::A1, Prim::A1Star) => Some(q(1)),
        (Prim::AStar, Prim::A) | (Prim::A1Star, Prim::A1) => Some(q(-1)),
        _ => None,
    }
}

/// Closed form of the contraction `[A_m^(ann part), B_n]` for an oscillator pair.
pub fn contraction_formula(a: Prim, b: Prim, m: i64, n: i64, r: u8) -> Q {
    match partner_sign(a, b) {
        Some(sign) if is_annihilator(a, m, r) => sign * delta(m + n, 0),
        _ => q(0),
    }
}

/// The same contraction measured on a probe state as an operator commutator.
pub fn contraction_check(a: Prim, b: Prim, m: i64, n: i64, r: u8) -> Result<Q> {
    let p = RepParams::with_defaults(r, q(1))?;
    let mut probe = FockState::vacuum();
    for j in [m, -m, n, -n] {
        probe.add_term(FockMonomial::new([(Var::X(j), 1)], 0), q(1));
        probe.add_term(FockMonomial::new([(Var::X1(j), 1)], 0), q(1));
    }
    let am = if is_annihilator(a, m, r) {
        Operator::single(ModeTerm::new(vec![a], m, |_| q(1)))
    } else {
        Operator::zero()
    };
    let bn = Operator::single(ModeTerm::new(vec![b], n, |_| q(1)));
    let out = commutator_apply(&am, &bn, &probe, &p)?;
    let c = out.coeff(&FockMonomial::vacuum());
    if out != probe.scale(&c) {
        return Err(Error::UnsupportedShape(format!("[{}_{m}, {}_{n}] is not a scalar", a.name(), b.name())));
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::seeded::{seeded_states, StateSpec};
    use crate::scalar::qr;

    fn params(r: u8) -> RepParams {
        RepParams::with_defaults(r, q(2)).unwrap()
    }

    fn quad(a: Prim, b: Prim, total: i64) -> ModeTerm {
        ModeTerm::new(vec![a, b], total, |n| q(n[0] - 3) + qr(1, 2))
    }

    #[test]
    fn vacuum_examples() {
        let t = ModeTerm::new(vec![Prim::A, Prim::AStar], 0, |_| q(1));
        assert!(no_sum_apply(&t, &FockState::vacuum(), &params(0)).unwrap().is_zero());
        assert!(no_sum_apply(&t, &FockState::zero(), &params(1)).unwrap().is_zero());
        let t = ModeTerm::new(vec![Prim::A, Prim::AStar], -1, |_| q(1));
        let s = FockState::monomial(FockMonomial::new([(Var::X(-1), 1)], 0), q(1));
        assert_eq!(no_sum_apply(&t, &s, &params(0)).unwrap(), no_sum_apply_naive(&t, &s, &params(0)));
    }

    #[test]
    fn agrees_with_naive_enumeration() {
        let states = seeded_states(&StateSpec::Random { count: 12, degree: 3 }, 3, 7);
        let shapes: Vec<Vec<Prim>> = vec![
            vec![Prim::A, Prim::AStar],
            vec![Prim::AStar, Prim::A],
            vec![Prim::A1, Prim::AStar],
            vec![Prim::A, Prim::A1Star],
            vec![Prim::B, Prim::B],
            vec![Prim::B1, Prim::B1],
            vec![Prim::B, Prim::B1],
            vec![Prim::B, Prim::AStar],
            vec![Prim::A, Prim::AStar, Prim::AStar],
            vec![Prim::A1, Prim::AStar, Prim::A1Star],
        ];
        for r in 0..=1 {
            let p = params(r);
            for shape in &shapes {
                for total in -3..=3 {
                    let t = ModeTerm::new(shape.clone(), total, |n| q(n[0] - 3) + qr(1, 2));
                    for s in &states {
                        let fast = no_sum_apply(&t, s, &p).unwrap();
                        let slow = no_sum_apply_naive(&t, s, &p);
                        assert_eq!(fast, slow, "r={r} {t:?} on {s}");
                    }
                }
            }
        }
    }

    #[test]
    fn rejects_infinite_shapes() {
        let t = ModeTerm::new(vec![Prim::A, Prim::A1], 0, |_| q(1));
        assert!(no_sum_apply(&t, &FockState::vacuum(), &params(1)).is_err());
        let t = quad(Prim::A, Prim::B, 0);
        assert!(no_sum_apply(&t, &FockState::vacuum(), &params(1)).is_err());
    }

    #[test]
    fn commutator_examples() {
        let p = params(0);
        let a1 = Operator::single(ModeTerm::new(vec![Prim::A], 1, |_| q(1)));
        let s = FockState::monomial(FockMonomial::new([(Var::X(3), 2)], 1), q(5));
        assert!(commutator_apply(&a1, &a1, &s, &p).unwrap().is_zero());
        let b1 = Operator::single(ModeTerm::new(vec![Prim::B], 1, |_| q(1)));
        let bm1 = Operator::single(ModeTerm::new(vec![Prim::B], -1, |_| q(1)));
        let y = FockState::monomial(FockMonomial::new([(Var::Y(-1), 1)], 0), q(1));
        assert_eq!(commutator_apply(&b1, &bm1, &y, &p).unwrap(), y.scale(&q(-4)));
        let as1 = Operator::single(ModeTerm::new(vec![Prim::AStar], -1, |_| q(1)));
        assert_eq!(commutator_apply(&a1, &as1, &FockState::vacuum(), &p).unwrap(), FockState::vacuum());
    }

    #[test]
    fn contraction_examples_and_closed_form() {
        assert_eq!(contraction_check(Prim::A, Prim::AStar, 2, -2, 0).unwrap(), q(1));
        assert_eq!(contraction_check(Prim::A, Prim::AStar, 2, -2, 1).unwrap(), q(0));
        assert_eq!(contraction_check(Prim::AStar, Prim::A, 3, -3, 1).unwrap(), q(-1));
        let pairs = [
            (Prim::A, Prim::AStar),
            (Prim::AStar, Prim::A),
            (Prim::A1, Prim::A1Star),
            (Prim::A1Star, Prim::A1),
        ];
        for r in 0..=1 {
            for (a, b) in pairs {
                for m in -4..=4 {
                    for n in -4..=4 {
                        assert_eq!(contraction_check(a, b, m, n, r).unwrap(), contraction_formula(a, b, m, n, r));
                    }
                }
            }
        }
    }

    #[test]
    fn both_orderings_sum_to_the_commutator() {
        for r in 0..=1 {
            for (a, b) in [(Prim::A, Prim::AStar), (Prim::A1, Prim::A1Star)] {
                for m in -4..=4 {
                    for n in -4..=4 {
                        let total = contraction_formula(a, b, m, n, r) - contraction_formula(b, a, n, m, r);
                        assert_eq!(total, delta(m + n, 0));
                    }
                }
            }
        }
    }
}
