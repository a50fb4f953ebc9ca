use super::field::{Field, Laurent};
use super::{pi_d1_field, pi_d_field, pi_witt_modes};
use crate::error::Result;
use crate::fock::{commutator_apply, FockState, Operator, Prim, RepParams};
use crate::ring::WittKind;
use crate::scalar::{binom, factorial, q, qr, Q};

/// Where the modes of one side of a lambda bracket come from.
#[derive(Clone, Debug)]
pub enum Source {
    Field(Field),
    /// The explicit mode sums of `pi(d)` or `pi(d1)`.
    Pi(WittKind),
}

impl Source {
    pub fn mode(&self, m: i64) -> Operator {
        match self {
            Source::Field(f) => f.mode(m),
            Source::Pi(k) => pi_witt_modes(*k, m),
        }
    }
}

/// `Sum_j binom(m, j) j! (F_j)_{m+n-j}`, the mode form of `sum_j lambda^j F_j`.
pub fn lambda_to_modes(coeffs: &[Field], m: i64, n: i64) -> Operator {
    let mut op = Operator::zero();
    for (j, f) in coeffs.iter().enumerate() {
        let c = binom(m, j as u32) * factorial(j as i64);
        if c != q(0) {
            op.add_scaled(&f.mode(m + n - j as i64), &c);
        }
    }
    op
}

/// `[a_lambda b] = sum_j lambda^j coeffs[j]`.
#[derive(Clone, Debug)]
pub struct LambdaIdentity {
    pub name: String,
    pub a: Source,
    pub b: Source,
    pub coeffs: Vec<Field>,
}

impl LambdaIdentity {
    /// `[a_m, b_n] s - (rhs)_{m,n} s`.
    pub fn residual(&self, m: i64, n: i64, s: &FockState, p: &RepParams) -> Result<FockState> {
        let lhs = commutator_apply(&self.a.mode(m), &self.b.mode(n), s, p)?;
        Ok(lhs.sub(&lambda_to_modes(&self.coeffs, m, n).apply(s, p)?))
    }
}

fn poly_p() -> Laurent {
    Laurent::p()
}

fn poly_dp() -> Laurent {
    Laurent::p().deriv()
}

fn k(x: Q) -> Laurent {
    Laurent::constant(x)
}

/// Scalar anomaly coefficients of the three Witt lambda brackets, in the
/// order of [`witt_lambda_identities`]; all zero unless `r = 0`.
pub fn witt_anomaly_coeffs(r: u8) -> [Vec<Field>; 3] {
    if r != 0 {
        return [vec![], vec![], vec![]];
    }
    let (p, dp) = (poly_p(), poly_dp());
    [
        vec![
            Field::zero(),
            Field::scalar(p.add(&dp.mul(&dp).scale(&qr(1, 4)))),
            Field::scalar(p.mul(&dp)),
            Field::scalar(p.mul(&p).scale(&qr(1, 3))),
        ],
        vec![Field::zero(), Field::zero(), Field::scalar(dp.scale(&qr(1, 2))), Field::scalar(p.scale(&qr(1, 3)))],
        vec![],
    ]
}

/// The Witt lambda brackets of `pi(d)`, `pi(d1)`, with the scalar anomaly
/// terms when `anomaly` is set.
pub fn witt_lambda_identities(r: u8, anomaly: bool) -> Vec<LambdaIdentity> {
    let (p, dp) = (poly_p(), poly_dp());
    let pd = pi_d_field();
    let pd1 = pi_d1_field();
    let regular = [
        vec![pd.deriv().mul_poly(&p).plus(pd.mul_poly(&dp)), pd.mul_poly(&p.scale(&q(2)))],
        vec![pd.deriv(), pd.scale(&q(2))],
        vec![pd1.deriv().mul_poly(&p).plus(pd1.mul_poly(&dp.scale(&qr(3, 2)))), pd1.mul_poly(&p.scale(&q(2)))],
    ];
    let anomalies = if anomaly { witt_anomaly_coeffs(r) } else { [vec![], vec![], vec![]] };
    let names = ["[pi(d)_l pi(d)]", "[pi(d1)_l pi(d1)]", "[pi(d)_l pi(d1)]"];
    let kinds = [(WittKind::D, WittKind::D), (WittKind::D1, WittKind::D1), (WittKind::D, WittKind::D1)];
    regular
        .into_iter()
        .zip(anomalies)
        .zip(names.iter().zip(kinds))
        .map(|((reg, anom), (name, (a, b)))| {
            let len = reg.len().max(anom.len());
            let coeffs = (0..len)
                .map(|j| {
                    let x = reg.get(j).cloned().unwrap_or_default();
                    x.plus(anom.get(j).cloned().unwrap_or_default())
                })
                .collect();
            LambdaIdentity { name: name.to_string(), a: Source::Pi(a), b: Source::Pi(b), coeffs }
        })
        .collect()
}

/// Four of the Heisenberg lambda brackets, with `one0 -> kappa0`:
/// `[b_l b]`, `[b1_l b1]`, `[P db_l P db]` and `[:b1 b1:_l :b1 b1:]`.
pub fn pairs_identities(kappa0: &Q) -> Vec<LambdaIdentity> {
    use Prim::*;
    let (p, dp) = (poly_p(), poly_dp());
    let k0 = kappa0.clone();
    let k2 = kappa0 * kappa0;
    let b = Field::prim(B);
    let b1 = Field::prim(B1);
    let p_db = Field::term(p.clone(), vec![(B, 1)]);
    let b1b1 = Field::product(k(q(1)), &[B1, B1]);
    let db1_b1 = Field::term(k(q(1)), vec![(B1, 1), (B1, 0)]);
    vec![
        LambdaIdentity {
            name: "[b_l b]".into(),
            a: Source::Field(b.clone()),
            b: Source::Field(b),
            coeffs: vec![Field::zero(), Field::scalar(k(q(-2) * &k0))],
        },
        LambdaIdentity {
            name: "[b1_l b1]".into(),
            a: Source::Field(b1.clone()),
            b: Source::Field(b1),
            coeffs: vec![Field::scalar(dp.scale(&-k0.clone())), Field::scalar(p.scale(&(q(-2) * &k0)))],
        },
        LambdaIdentity {
            name: "[P db_l P db]".into(),
            a: Source::Field(p_db.clone()),
            b: Source::Field(p_db),
            coeffs: vec![
                Field::zero(),
                Field::scalar(p.scale(&(q(12) * &k0))),
                Field::scalar(p.mul(&dp).scale(&(q(6) * &k0))),
                Field::scalar(p.mul(&p).scale(&(q(2) * &k0))),
            ],
        },
        LambdaIdentity {
            name: "[:b1 b1:_l :b1 b1:]".into(),
            a: Source::Field(b1b1.clone()),
            b: Source::Field(b1b1.clone()),
            coeffs: vec![
                b1b1.mul_poly(&dp.scale(&(q(-4) * &k0))).plus(db1_b1.mul_poly(&p.scale(&(q(-8) * &k0)))),
                b1b1.mul_poly(&p.scale(&(q(-8) * &k0))).plus(Field::scalar(dp.mul(&dp).scale(&(q(2) * &k2)))),
                Field::scalar(p.mul(&dp).scale(&(q(4) * &k2))),
                Field::scalar(p.mul(&p).scale(&(qr(4, 3) * &k2))),
            ],
        },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{seeded_states, StateSpec};
    use crate::liealg::{heis_bracket, GenId, Symbol};

    fn states() -> Vec<FockState> {
        seeded_states(&StateSpec::Random { count: 5, degree: 3 }, 3, 21)
    }

    #[test]
    fn zero_bracket_gives_zero_modes() {
        for m in -3..=3 {
            let op = lambda_to_modes(&[Field::zero(), Field::zero()], m, 2);
            assert!(op.terms.is_empty() && op.scalar == q(0));
        }
    }

    #[test]
    fn first_item_is_heisenberg_delta() {
        let id = &pairs_identities(&q(3))[0];
        for m in -3..=3 {
            let op = lambda_to_modes(&id.coeffs, m, -m);
            assert_eq!(op.scalar, q(-2 * m) * q(3));
            assert_eq!(lambda_to_modes(&id.coeffs, m, 1 - m).scalar, q(0));
        }
    }

    #[test]
    fn third_item_matches_heisenberg_table() {
        let k0 = q(2);
        let id = &pairs_identities(&k0)[1];
        for m in -4..=4 {
            for n in -4..=4 {
                let table = heis_bracket(&GenId::of(Symbol::B1, m), &GenId::of(Symbol::B1, n));
                let want = table.coeff(&GenId::central(Symbol::One0)) * &k0;
                let op = lambda_to_modes(&id.coeffs, m, n);
                assert!(op.terms.is_empty());
                assert_eq!(op.scalar, want, "m={m} n={n}");
            }
        }
    }

    #[test]
    fn pairs_items_hold() {
        for r in 0..=1 {
            let p = RepParams::with_defaults(r, q(2)).unwrap();
            for id in pairs_identities(&p.kappa0) {
                for m in -2..=2 {
                    for n in -2..=2 {
                        for s in &states() {
                            let res = id.residual(m, n, s, &p).unwrap();
                            assert!(res.is_zero(), "{} m={m} n={n} r={r}: {res}", id.name);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn witt_lambda_brackets_with_anomaly() {
        for r in 0..=1 {
            let p = RepParams::with_defaults(r, q(1)).unwrap();
            for id in witt_lambda_identities(r, true) {
                for m in -2..=2 {
                    for n in -2..=2 {
                        for s in &states() {
                            let res = id.residual(m, n, s, &p).unwrap();
                            assert!(res.is_zero(), "{} m={m} n={n} r={r}: {res}", id.name);
                        }
                    }
                }
            }
        }
    }
}
