use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{FockMonomial, FockState, Var};
use crate::error::{Error, Result};
use crate::scalar::{q, qr, Q};

/// Which states a suite runs on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum StateSpec {
    Vacuum,
    /// The vacuum followed by `count` random states of total degree `<= degree`.
    Random { count: usize, degree: u32 },
}

impl StateSpec {
    /// Parses `vacuum` or `random:K:D`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "vacuum" {
            return Ok(StateSpec::Vacuum);
        }
        let bad = || Error::Parse(format!("state spec must be vacuum or random:K:D, got {s:?}"));
        let rest = s.strip_prefix("random:").ok_or_else(bad)?;
        let (k, d) = rest.split_once(':').ok_or_else(bad)?;
        Ok(StateSpec::Random { count: k.parse().map_err(|_| bad())?, degree: d.parse().map_err(|_| bad())? })
    }

    pub fn label(&self) -> String {
        match self {
            StateSpec::Vacuum => "vacuum".into(),
            StateSpec::Random { count, degree } => format!("random:{count}:{degree}"),
        }
    }
}

fn coefficient(rng: &mut ChaCha8Rng) -> Q {
    let choices = [q(1), q(-1), q(2), q(-2), qr(1, 2), qr(-1, 2)];
    choices.choose(rng).expect("nonempty").clone()
}

fn variable(rng: &mut ChaCha8Rng, w: i64) -> Var {
    match rng.gen_range(0..4) {
        0 => Var::X(rng.gen_range(-w..=w)),
        1 => Var::X1(rng.gen_range(-w..=w)),
        2 => Var::Y(rng.gen_range(-w..=-1)),
        _ => Var::Y1(rng.gen_range(-w..=-1)),
    }
}

/// Deterministic states: the vacuum first, then (for `Random`) states with one
/// to three monomials, variable indices in `[-w, w]` (Heisenberg ones in
/// `[-w, -1]`), and coefficients in `{+-1, +-2, +-1/2}`.
pub fn seeded_states(spec: &StateSpec, w: i64, seed: u64) -> Vec<FockState> {
    assert!(w >= 1, "state window must be positive");
    let mut out = vec![FockState::vacuum()];
    let StateSpec::Random { count, degree } = *spec else {
        return out;
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    while out.len() < count + 1 {
        let mut s = FockState::zero();
        for _ in 0..rng.gen_range(1..=3) {
            let deg = rng.gen_range(0..=degree);
            let mut m = FockMonomial::new([], rng.gen_range(0..=1));
            for _ in 0..deg {
                m.mul_var(variable(&mut rng, w), 1);
            }
            s.add_term(m, coefficient(&mut rng));
        }
        if !s.is_zero() {
            out.push(s);
        }
    }
    out
}
