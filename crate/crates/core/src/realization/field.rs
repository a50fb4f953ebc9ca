use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::fock::{ModeTerm, Operator, Prim};
use crate::scalar::{falling, fmt_q, q, Q};

/// Laurent polynomial in `z`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Laurent {
    terms: BTreeMap<i64, Q>,
}

impl Laurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Q) -> Self {
        Self::from_terms([(0, c)])
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, Q)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    /// `P(z) = z^2 + 4z`.
    pub fn p() -> Self {
        Self::from_terms([(2, q(1)), (1, q(4))])
    }

    pub fn add_term(&mut self, e: i64, c: Q) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(Q::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Q)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn add(&self, o: &Laurent) -> Laurent {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(*e, c.clone());
        }
        r
    }

    pub fn scale(&self, c: &Q) -> Laurent {
        Laurent::from_terms(self.terms.iter().map(|(e, v)| (*e, v * c)))
    }

    pub fn mul(&self, o: &Laurent) -> Laurent {
        let mut r = Laurent::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                r.add_term(e1 + e2, c1 * c2);
            }
        }
        r
    }

    pub fn deriv(&self) -> Laurent {
        Laurent::from_terms(self.terms.iter().map(|(e, c)| (e - 1, c * q(*e))))
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(e, c)| format!("{}*z^{}", fmt_q(c), e)).collect();
        write!(f, "({})", parts.join(" + "))
    }
}

/// `poly(z) :d^(k1) p1(z) ... d^(kn) pn(z):`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldTerm {
    pub poly: Laurent,
    pub factors: Vec<(Prim, u32)>,
}

/// Finite sum of normal-ordered field monomials with Laurent coefficients.
/// An empty factor list is a scalar field.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Field {
    pub terms: Vec<FieldTerm>,
}

impl Field {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `poly(z) :p1 ... pn:` with no derivatives.
    pub fn product(poly: Laurent, prims: &[Prim]) -> Self {
        Self::term(poly, prims.iter().map(|p| (*p, 0)).collect())
    }

    pub fn term(poly: Laurent, factors: Vec<(Prim, u32)>) -> Self {
        if poly.is_zero() {
            return Self::zero();
        }
        Self { terms: vec![FieldTerm { poly, factors }] }
    }

    pub fn prim(p: Prim) -> Self {
        Self::product(Laurent::constant(q(1)), &[p])
    }

    pub fn scalar(poly: Laurent) -> Self {
        Self::term(poly, Vec::new())
    }

    pub fn plus(mut self, o: Field) -> Field {
        self.terms.extend(o.terms);
        self
    }

    pub fn scale(&self, c: &Q) -> Field {
        self.mul_poly(&Laurent::constant(c.clone()))
    }

    pub fn mul_poly(&self, p: &Laurent) -> Field {
        Field {
            terms: self
                .terms
                .iter()
                .map(|t| FieldTerm { poly: t.poly.mul(p), factors: t.factors.clone() })
                .filter(|t| !t.poly.is_zero())
                .collect(),
        }
    }

    /// `d/dz`, distributing over the normal-ordered product.
    pub fn deriv(&self) -> Field {
        let mut out = Field::zero();
        for t in &self.terms {
            let dp = t.poly.deriv();
            if !dp.is_zero() {
                out.terms.push(FieldTerm { poly: dp, factors: t.factors.clone() });
            }
            for i in 0..t.factors.len() {
                let mut f = t.factors.clone();
                f[i].1 += 1;
                out.terms.push(FieldTerm { poly: t.poly.clone(), factors: f });
            }
        }
        out
    }

    /// Coefficient of `z^(-m-1)` as a mode operator.
    ///
    /// A factor `d^k p` with `p(z) = sum_n p_n z^(-n-s)` contributes
    /// `falling(-n-s, k) z^(-n-s-k)`, so `z^e` times the product lands on
    /// `z^(-m-1)` when `sum n_i = m + 1 + e - sum (s_i + k_i)`.
    pub fn mode(&self, m: i64) -> Operator {
        let mut op = Operator::zero();
        for t in &self.terms {
            let shift: i64 = t.factors.iter().map(|(p, k)| p.shift() + *k as i64).sum();
            let prims: Vec<Prim> = t.factors.iter().map(|(p, _)| *p).collect();
            let derivs: Vec<(i64, u32)> = t.factors.iter().map(|(p, k)| (p.shift(), *k)).collect();
            for (e, c) in t.poly.terms() {
                let total = m + 1 + e - shift;
                if prims.is_empty() {
                    if total == 0 {
                        op.scalar += c;
                    }
                    continue;
                }
                let c = c.clone();
                let derivs = derivs.clone();
                op.push(ModeTerm::new(prims.clone(), total, move |n| {
                    let mut acc = c.clone();
                    for (ni, (s, k)) in n.iter().zip(&derivs) {
                        if *k > 0 {
                            acc *= falling(-ni - s, *k);
                        }
                    }
                    acc
                }));
            }
        }
        op
    }
}
