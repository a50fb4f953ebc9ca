//! Free-field realizations on the Fock space: `tau` of the affine algebra,
//! `pi` of the Witt and Virasoro generators, and the translation of
//! lambda-bracket identities into mode identities.

mod field;
mod lambda;

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::{commutator_apply, FockState, HeisKind, ModeTerm, OscKind, Operator, Prim, RepParams};
use crate::liealg::{GenId, LieVector, Symbol};
use crate::ring::WittKind;
use crate::scalar::{q, qr, Q};

pub use field::{Field, FieldTerm, Laurent};
pub use lambda::{lambda_to_modes, witt_anomaly_coeffs, pairs_identities, witt_lambda_identities, LambdaIdentity, Source};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    TauE,
    TauF,
    TauH,
    TauE1,
    TauF1,
    TauH1,
    PiD,
    PiD1,
    /// `pi(D_k)`, the image of the Virasoro lift of `d_k`.
    PiVirD,
    PiVirD1,
    RawOsc(OscKind),
    RawHeis(HeisKind),
}

impl Family {
    fn tau_index(self) -> Option<usize> {
        use Family::*;
        Some(match self {
            TauE => 0,
            TauF => 1,
            TauH => 2,
            TauE1 => 3,
            TauF1 => 4,
            TauH1 => 5,
            _ => return None,
        })
    }
}

/// Names a realized mode operator; resolved against a [`Realization`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OperatorId {
    pub family: Family,
    pub mode: i64,
}

impl fmt::Display for OperatorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Family::*;
        let name = match self.family {
            TauE => "tau(e)",
            TauF => "tau(f)",
            TauH => "tau(h)",
            TauE1 => "tau(e1)",
            TauF1 => "tau(f1)",
            TauH1 => "tau(h1)",
            PiD => "pi(d)",
            PiD1 => "pi(d1)",
            PiVirD => "pi(D)",
            PiVirD1 => "pi(D1)",
            RawOsc(k) => Prim::from(k).name(),
            RawHeis(k) => Prim::from(k).name(),
        };
        write!(f, "{}_{}", name, self.mode)
    }
}

/// `tau(x)_m` for an affine generator `x` in `{e, f, h, e1, f1, h1}`.
pub fn tau_mode(gen: Symbol, m: i64) -> Result<OperatorId> {
    use Symbol::*;
    let family = match gen {
        E => Family::TauE,
        F => Family::TauF,
        H => Family::TauH,
        E1 => Family::TauE1,
        F1 => Family::TauF1,
        H1 => Family::TauH1,
        other => {
            return Err(Error::IllegalGenerator { algebra: "affine (tau)".into(), symbol: other.name().into() })
        }
    };
    Ok(OperatorId { family, mode: m })
}

pub fn pi_witt_mode(kind: WittKind, m: i64) -> OperatorId {
    let family = match kind {
        WittKind::D => Family::PiD,
        WittKind::D1 => Family::PiD1,
    };
    OperatorId { family, mode: m }
}

/// `pi(D_m)` or `pi(D1_m)`; needs `kappa0 != 0`.
pub fn pi_vir_mode(kind: WittKind, m: i64, p: &RepParams) -> Result<OperatorId> {
    if p.kappa0.is_zero() {
        return Err(Error::ZeroKappa);
    }
    let family = match kind {
        WittKind::D => Family::PiVirD,
        WittKind::D1 => Family::PiVirD1,
    };
    Ok(OperatorId { family, mode: m })
}

/// Coefficients of the Heisenberg correction terms in the Virasoro fields:
///
/// `D(z) = pi(d)(z) + gamma_p P :b b: + mu d b + gamma1 :b1 b1: + gamma2 b`,
/// `D1(z) = pi(d1)(z) + nu :b b1: + zeta d b1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VirParams {
    #[serde(serialize_with = "crate::report::ser_q")]
    pub nu: Q,
    #[serde(serialize_with = "crate::report::ser_q")]
    pub zeta: Q,
    #[serde(serialize_with = "crate::report::ser_q")]
    pub gamma_p: Q,
    #[serde(serialize_with = "crate::report::ser_q")]
    pub mu: Q,
    #[serde(serialize_with = "crate::report::ser_q")]
    pub gamma1: Q,
    #[serde(serialize_with = "crate::report::ser_q")]
    pub gamma2: Q,
}

impl VirParams {
    /// `nu = 1/(2 kappa0)`, `gamma_p = gamma1 = -1/(4 kappa0)`, the rest zero.
    pub fn canonical(kappa0: &Q) -> Result<Self> {
        if kappa0.is_zero() {
            return Err(Error::ZeroKappa);
        }
        let inv = kappa0.recip();
        Ok(Self {
            nu: &inv * qr(1, 2),
            zeta: q(0),
            gamma_p: &inv * qr(-1, 4),
            mu: q(0),
            gamma1: &inv * qr(-1, 4),
            gamma2: q(0),
        })
    }

    /// `-(delta_{r,0}/3 + (2/3) nu^2 kappa0^2 - 2 zeta^2 kappa0)`.
    pub fn central_charge(&self, r: u8, kappa0: &Q) -> Q {
        let d = if r == 0 { qr(1, 3) } else { q(0) };
        -(d + qr(2, 3) * &self.nu * &self.nu * kappa0 * kappa0 - q(2) * &self.zeta * &self.zeta * kappa0)
    }
}

/// Image of `c1 - 2 c2` (with `c2 -> 0`): `-(1/3)(delta_{r,0} + 1/2)`.
pub fn central_charge(r: u8) -> Q {
    let d = if r == 0 { q(1) } else { q(0) };
    -qr(1, 3) * (d + qr(1, 2))
}

fn pp() -> Laurent {
    Laurent::p()
}

/// `P'(z) = 2z + 4`.
fn dp() -> Laurent {
    Laurent::from_terms([(1, q(2)), (0, q(4))])
}

fn one() -> Laurent {
    Laurent::constant(q(1))
}

fn c(x: Q) -> Laurent {
    Laurent::constant(x)
}

/// `pi(d)(z) = P (:a d a*: + :a1 d a1*:) + (1/2) P' :a1 a1*:`.
pub fn pi_d_field() -> Field {
    use Prim::*;
    Field::term(pp(), vec![(A, 0), (AStar, 1)])
        .plus(Field::term(pp(), vec![(A1, 0), (A1Star, 1)]))
        .plus(Field::product(dp().scale(&qr(1, 2)), &[A1, A1Star]))
}

/// `pi(d1)(z) = :a1 d a*: + P :a d a1*: + (1/2) P' :a a1*:`.
pub fn pi_d1_field() -> Field {
    use Prim::*;
    Field::term(one(), vec![(A1, 0), (AStar, 1)])
        .plus(Field::term(pp(), vec![(A, 0), (A1Star, 1)]))
        .plus(Field::product(dp().scale(&qr(1, 2)), &[A, A1Star]))
}

/// The explicit double sums for `pi(d_m)` and `pi(d1_m)`.
pub fn pi_witt_modes(kind: WittKind, m: i64) -> Operator {
    use Prim::*;
    let mut op = Operator::zero();
    match kind {
        WittKind::D => {
            op.push(ModeTerm::new(vec![A, AStar], m + 1, move |n| q(n[0] - 1 - m)));
            op.push(ModeTerm::new(vec![A, AStar], m, move |n| q(4 * (n[0] - m))));
            op.push(ModeTerm::new(vec![A1, A1Star], m + 1, move |n| q(n[0] - m)));
            op.push(ModeTerm::new(vec![A1, A1Star], m, move |n| q(4 * (n[0] - m) + 2)));
        }
        WittKind::D1 => {
            op.push(ModeTerm::new(vec![A1, AStar], m - 1, move |n| q(n[0] + 1 - m)));
            op.push(ModeTerm::new(vec![A, A1Star], m + 1, move |n| q(n[0] - m)));
            op.push(ModeTerm::new(vec![A, A1Star], m, move |n| q(4 * (n[0] - m) + 2)));
        }
    }
    op
}

/// The affine fields `tau(x)(z)` in the order e, f, h, e1, f1, h1.
pub fn tau_fields(p: &RepParams) -> [Field; 6] {
    use Prim::*;
    let chi0 = p.chi0();
    let two = c(q(2));
    let e = Field::product(one(), &[A, AStar, AStar])
        .plus(Field::product(pp(), &[A, A1Star, A1Star]))
        .plus(Field::product(two.clone(), &[A1, AStar, A1Star]))
        .plus(Field::product(one(), &[B, AStar]))
        .plus(Field::product(one(), &[B1, A1Star]))
        .plus(Field::term(c(chi0.clone()), vec![(AStar, 1)]));
    let f = Field::prim(A).scale(&q(-1));
    let h = Field::product(two.clone(), &[A, AStar])
        .plus(Field::product(two.clone(), &[A1, A1Star]))
        .plus(Field::prim(B));
    let e1 = Field::product(one(), &[A1, AStar, AStar])
        .plus(Field::product(pp(), &[A1, A1Star, A1Star]))
        .plus(Field::product(pp().scale(&q(2)), &[A, AStar, A1Star]))
        .plus(Field::product(one(), &[B1, AStar]))
        .plus(Field::product(pp(), &[B, A1Star]))
        .plus(Field::term(pp().scale(&chi0), vec![(A1Star, 1)]))
        .plus(Field::product(Laurent::from_terms([(1, chi0.clone()), (0, q(2) * &chi0)]), &[A1Star]));
    let f1 = Field::prim(A1).scale(&q(-1));
    let h1 = Field::product(two.clone(), &[A1, AStar])
        .plus(Field::product(pp().scale(&q(2)), &[A, A1Star]))
        .plus(Field::prim(B1));
    [e, f, h, e1, f1, h1]
}

/// Heisenberg corrections `(D(z) - pi(d)(z), D1(z) - pi(d1)(z))`.
pub fn vir_correction_fields(vp: &VirParams) -> (Field, Field) {
    use Prim::*;
    let d = Field::product(pp().scale(&vp.gamma_p), &[B, B])
        .plus(Field::term(c(vp.mu.clone()), vec![(B, 1)]))
        .plus(Field::product(c(vp.gamma1.clone()), &[B1, B1]))
        .plus(Field::product(c(vp.gamma2.clone()), &[B]));
    let d1 = Field::product(c(vp.nu.clone()), &[B, B1]).plus(Field::term(c(vp.zeta.clone()), vec![(B1, 1)]));
    (d, d1)
}

/// Images of the Virasoro central elements `c1`, `c2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CentralMap {
    /// `c1 -> central_charge(r)`, `c2 -> 0`.
    Stated,
    /// `c1 -> 0`, `c2 -> -central_charge(r) / 2`. Also sends `c1 - 2 c2` to
    /// `central_charge(r)`, and matches the vanishing mixed central terms
    /// of the realized operators.
    Measured,
}

/// Resolves [`OperatorId`]s for one choice of parameters.
#[derive(Clone, Debug)]
pub struct Realization {
    pub params: RepParams,
    /// `None` when `kappa0 = 0`.
    pub vir: Option<VirParams>,
    pub central: CentralMap,
    tau: [Field; 6],
    vir_fields: Option<(Field, Field)>,
}

impl Realization {
    pub fn new(params: RepParams) -> Result<Self> {
        params.validate()?;
        let vir = VirParams::canonical(&params.kappa0).ok();
        Ok(Self::build(params, vir))
    }

    /// Uses the given Virasoro coefficients instead of the canonical ones.
    pub fn with_vir(params: RepParams, vp: VirParams) -> Result<Self> {
        params.validate()?;
        if params.kappa0.is_zero() {
            return Err(Error::ZeroKappa);
        }
        Ok(Self::build(params, Some(vp)))
    }

    fn build(params: RepParams, vir: Option<VirParams>) -> Self {
        let tau = tau_fields(&params);
        let vir_fields = vir.as_ref().map(vir_correction_fields);
        Self { params, vir, central: CentralMap::Stated, tau, vir_fields }
    }

    pub fn with_central(mut self, central: CentralMap) -> Self {
        self.central = central;
        self
    }

    pub fn tau_field(&self, gen: Symbol) -> Result<&Field> {
        let id = tau_mode(gen, 0)?;
        Ok(&self.tau[id.family.tau_index().expect("tau family")])
    }

    pub fn op(&self, id: &OperatorId) -> Result<Operator> {
        use Family::*;
        let m = id.mode;
        Ok(match id.family {
            PiD => pi_witt_modes(WittKind::D, m),
            PiD1 => pi_witt_modes(WittKind::D1, m),
            PiVirD | PiVirD1 => {
                let (fd, fd1) = self.vir_fields.as_ref().ok_or(Error::ZeroKappa)?;
                let (kind, extra) = if id.family == PiVirD { (WittKind::D, fd) } else { (WittKind::D1, fd1) };
                let mut op = pi_witt_modes(kind, m);
                op.add_scaled(&extra.mode(m), &q(1));
                op.scaled(&q(-1))
            }
            RawOsc(k) => Operator::single(ModeTerm::new(vec![k.into()], m, |_| q(1))),
            RawHeis(k) => Operator::single(ModeTerm::new(vec![k.into()], m, |_| q(1))),
            fam => self.tau[fam.tau_index().expect("tau family")].mode(m),
        })
    }

    pub fn apply(&self, id: &OperatorId, s: &FockState) -> Result<FockState> {
        self.op(id)?.apply(s, &self.params)
    }

    pub fn commutator(&self, a: &OperatorId, b: &OperatorId, s: &FockState) -> Result<FockState> {
        commutator_apply(&self.op(a)?, &self.op(b)?, s, &self.params)
    }

    /// Operator representing a single generator.
    ///
    /// Affine: `tau`, `omega0 -> chi0`, `omega1 -> 0`. Heisenberg: `b, b1`
    /// as primitives, `one0 -> kappa0`, `one1 -> chi1`. Witt: `x -> -pi(x)`.
    /// Virasoro: `pi(D), pi(D1)`, central elements per [`CentralMap`].
    pub fn gen_op(&self, g: &GenId) -> Result<Operator> {
        use Symbol::*;
        let m = g.mode;
        Ok(match g.symbol {
            Omega0 => Operator::identity(self.params.chi0()),
            Omega1 => Operator::zero(),
            One0 => Operator::identity(self.params.kappa0.clone()),
            One1 => Operator::identity(self.params.chi1.clone()),
            C1 | C2 => {
                let c = central_charge(self.params.r);
                match (self.central, g.symbol) {
                    (CentralMap::Stated, C1) => Operator::identity(c),
                    (CentralMap::Measured, C2) => Operator::identity(c * qr(-1, 2)),
                    _ => Operator::zero(),
                }
            }
            B => self.op(&OperatorId { family: Family::RawHeis(HeisKind::B), mode: m })?,
            B1 => self.op(&OperatorId { family: Family::RawHeis(HeisKind::B1), mode: m })?,
            D => pi_witt_modes(WittKind::D, m).scaled(&q(-1)),
            D1 => pi_witt_modes(WittKind::D1, m).scaled(&q(-1)),
            VD => self.op(&pi_vir_mode(WittKind::D, m, &self.params)?)?,
            VD1 => self.op(&pi_vir_mode(WittKind::D1, m, &self.params)?)?,
            s => self.op(&tau_mode(s, m)?)?,
        })
    }

    /// Applies the image of a Lie algebra element.
    pub fn apply_image(&self, v: &LieVector, s: &FockState) -> Result<FockState> {
        let mut out = FockState::zero();
        for (g, c) in v.terms() {
            out.add_scaled(&self.gen_op(g)?.apply(s, &self.params)?, c);
        }
        Ok(out)
    }

    /// `[img(x), img(y)] s - img(bracket(x, y)) s`.
    pub fn rep_residual(
        &self,
        x: &GenId,
        y: &GenId,
        bracket: &LieVector,
        s: &FockState,
    ) -> Result<FockState> {
        let lhs = commutator_apply(&self.gen_op(x)?, &self.gen_op(y)?, s, &self.params)?;
        Ok(lhs.sub(&self.apply_image(bracket, s)?))
    }
}

/// Finds a shift `k != 0` in `[-3, 3]` such that moving every non-central
/// mode of the bracket by `k` makes the representation identity hold on `s`.
pub fn audit_shift(
    rz: &Realization,
    x: &GenId,
    y: &GenId,
    bracket: &LieVector,
    s: &FockState,
) -> Result<Option<i64>> {
    let lhs = commutator_apply(&rz.gen_op(x)?, &rz.gen_op(y)?, s, &rz.params)?;
    for k in [-1, 1, -2, 2, -3, 3] {
        let mut shifted = LieVector::zero();
        for (g, c) in bracket.terms() {
            let g2 = if g.is_central() { *g } else { GenId { mode: g.mode + k, ..*g } };
            shifted.add_term(g2, c.clone());
        }
        if rz.apply_image(&shifted, s)? == lhs {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{seeded_states, StateSpec};
    use crate::liealg::{affine_bracket, heis_bracket, vir_bracket, witt_bracket};

    fn rz(r: u8, k: i64) -> Realization {
        Realization::new(RepParams::with_defaults(r, q(k)).unwrap()).unwrap()
    }

    fn states() -> Vec<FockState> {
        seeded_states(&StateSpec::Random { count: 8, degree: 3 }, 3, 7)
    }

    #[test]
    fn tau_f_is_minus_a() {
        for r in 0..=1 {
            let z = rz(r, 1);
            for m in -3..=3 {
                let raw = OperatorId { family: Family::RawOsc(OscKind::A), mode: m };
                let raw1 = OperatorId { family: Family::RawOsc(OscKind::A1), mode: m };
                for s in &states() {
                    let f = z.apply(&tau_mode(Symbol::F, m).unwrap(), s).unwrap();
                    assert_eq!(f, z.apply(&raw, s).unwrap().scale(&q(-1)));
                    let f1 = z.apply(&tau_mode(Symbol::F1, m).unwrap(), s).unwrap();
                    assert_eq!(f1, z.apply(&raw1, s).unwrap().scale(&q(-1)));
                }
            }
        }
        assert!(tau_mode(Symbol::D, 0).is_err());
    }

    #[test]
    fn tau_h_kills_vacuum_for_nonnegative_modes() {
        let z = rz(0, 1);
        // b_0 acts by B0, so drop the Heisenberg zero mode from the check.
        for m in 1..=4 {
            assert!(z.apply(&tau_mode(Symbol::H, m).unwrap(), &FockState::vacuum()).unwrap().is_zero());
        }
        let h0 = z.apply(&tau_mode(Symbol::H, 0).unwrap(), &FockState::vacuum()).unwrap();
        assert_eq!(h0, FockState::vacuum().scale(&z.params.b0));
    }

    #[test]
    fn e_f_example() {
        for r in 0..=1 {
            let z = rz(r, 2);
            let v = FockState::vacuum();
            let lhs = z.commutator(&tau_mode(Symbol::E, 1).unwrap(), &tau_mode(Symbol::F, -1).unwrap(), &v).unwrap();
            let mut want = z.apply(&tau_mode(Symbol::H, 0).unwrap(), &v).unwrap();
            want.add_scaled(&v, &-z.params.chi0());
            assert_eq!(lhs, want);
        }
    }

    #[test]
    fn affine_representation_small_window() {
        let gens = [Symbol::E, Symbol::F, Symbol::H, Symbol::E1, Symbol::F1, Symbol::H1];
        for r in 0..=1 {
            let z = rz(r, 1);
            let st = seeded_states(&StateSpec::Random { count: 3, degree: 2 }, 2, 3);
            for (i, &x) in gens.iter().enumerate() {
                for &y in &gens[i..] {
                    for m in -1..=1 {
                        for n in -1..=1 {
                            let (gx, gy) = (GenId::of(x, m), GenId::of(y, n));
                            let br = affine_bracket(&gx, &gy);
                            for s in &st {
                                let res = z.rep_residual(&gx, &gy, &br, s).unwrap();
                                assert!(res.is_zero(), "r={r} [{gx},{gy}] on {s}: {res}");
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn heisenberg_representation() {
        let z = rz(0, 3);
        for (a, b) in [(Symbol::B, Symbol::B), (Symbol::B1, Symbol::B1), (Symbol::B, Symbol::B1)] {
            for m in -3..=3 {
                for n in -3..=3 {
                    let (ga, gb) = (GenId::of(a, m), GenId::of(b, n));
                    for s in &states() {
                        assert!(z.rep_residual(&ga, &gb, &heis_bracket(&ga, &gb), s).unwrap().is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn field_forms_match_mode_sums() {
        for r in 0..=1 {
            let p = RepParams::with_defaults(r, q(1)).unwrap();
            for (kind, f) in [(WittKind::D, pi_d_field()), (WittKind::D1, pi_d1_field())] {
                for m in -4..=4 {
                    for s in &states() {
                        assert_eq!(
                            f.mode(m).apply(s, &p).unwrap(),
                            pi_witt_modes(kind, m).apply(s, &p).unwrap(),
                            "{kind:?} m={m} r={r}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn pi_d_kills_vacuum_for_large_modes() {
        let z = rz(0, 1);
        for m in 1..=6 {
            assert!(z.apply(&pi_witt_mode(WittKind::D, m), &FockState::vacuum()).unwrap().is_zero());
        }
    }

    #[test]
    fn pi_d1_bracket_example() {
        // pi satisfies the opposite bracket: [pi(d1_0), pi(d1_1)] = -pi(d_0) for r = 1.
        let z = rz(1, 1);
        for s in &states() {
            let lhs = z.commutator(&pi_witt_mode(WittKind::D1, 0), &pi_witt_mode(WittKind::D1, 1), s).unwrap();
            let d0 = z.apply(&pi_witt_mode(WittKind::D, 0), s).unwrap();
            assert_eq!(lhs, d0.scale(&q(-1)));
        }
    }

    #[test]
    fn witt_homomorphism_holds_for_r1() {
        let z = rz(1, 1);
        let st = seeded_states(&StateSpec::Random { count: 3, degree: 2 }, 2, 5);
        for a in [Symbol::D, Symbol::D1] {
            for b in [Symbol::D, Symbol::D1] {
                for m in -2..=2 {
                    for n in -2..=2 {
                        let (ga, gb) = (GenId::of(a, m), GenId::of(b, n));
                        for s in &st {
                            assert!(z.rep_residual(&ga, &gb, &witt_bracket(&ga, &gb), s).unwrap().is_zero());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn central_charges() {
        assert_eq!(central_charge(0), qr(-1, 2));
        assert_eq!(central_charge(1), qr(-1, 6));
        for k in [1, 2, -3] {
            let vp = VirParams::canonical(&q(k)).unwrap();
            for r in 0..=1 {
                assert_eq!(vp.central_charge(r, &q(k)), central_charge(r));
            }
        }
        assert!(VirParams::canonical(&q(0)).is_err());
        let p0 = RepParams::with_defaults(0, q(0)).unwrap();
        assert!(pi_vir_mode(WittKind::D, 0, &p0).is_err());
        let z = Realization::new(p0).unwrap();
        assert!(z.op(&OperatorId { family: Family::PiVirD, mode: 0 }).is_err());
    }

    #[test]
    fn virasoro_mixed_family_needs_measured_central_map() {
        let st = seeded_states(&StateSpec::Random { count: 2, degree: 2 }, 2, 4);
        for r in 0..=1 {
            let stated = rz(r, 2);
            let measured = rz(r, 2).with_central(CentralMap::Measured);
            let (ga, gb) = (GenId::of(Symbol::VD, -3), GenId::of(Symbol::VD1, 2));
            let br = vir_bracket(&ga, &gb);
            assert!(!stated.rep_residual(&ga, &gb, &br, &FockState::vacuum()).unwrap().is_zero());
            for a in [Symbol::VD, Symbol::VD1] {
                for b in [Symbol::VD, Symbol::VD1] {
                    for m in -2..=2 {
                        for n in -2..=2 {
                            let (ga, gb) = (GenId::of(a, m), GenId::of(b, n));
                            for s in &st {
                                let res = measured.rep_residual(&ga, &gb, &vir_bracket(&ga, &gb), s).unwrap();
                                assert!(res.is_zero(), "r={r} [{ga},{gb}] on {s}: {res}");
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn virasoro_dd_family_on_vacuum() {
        for r in 0..=1 {
            let z = rz(r, 1);
            let v = FockState::vacuum();
            for m in -2..=2 {
                for n in -2..=2 {
                    let (ga, gb) = (GenId::of(Symbol::VD, m), GenId::of(Symbol::VD, n));
                    let res = z.rep_residual(&ga, &gb, &vir_bracket(&ga, &gb), &v).unwrap();
                    assert!(res.is_zero(), "r={r} [{ga},{gb}]: {res}");
                }
            }
        }
    }
}
