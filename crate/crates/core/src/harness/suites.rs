use std::collections::BTreeMap;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{Suite, SuiteConfig, THREADS_ENV};
use crate::error::{Error, Result};
use crate::fock::{commutator_apply, seeded_states, FockMonomial, FockState};
use crate::kaehler::{differential, mu_oracle, reduce_mod_dr, CohomClass, OneForm};
use crate::liealg::{
    affine_bracket, affine_bracket_kassel, check_cocycle_identity, check_jacobi, coboundary_window_test,
    heis_bracket, mu_closed_form, vir_bracket, witt_bracket, Algebra, BracketTable, CheckOutcome, CoboundaryOutcome,
    Cocycle, GenId, LieVector, Symbol,
};
use crate::realization::{
    audit_shift, central_charge, lambda_to_modes, pairs_identities, witt_anomaly_coeffs, witt_lambda_identities,
    Realization,
};
use crate::report::{Check, CheckReport};
use crate::ring::{witt_bracket_geometric, RRingElem, WittKind};
use crate::scalar::{fmt_q, q, qr, Q};
use crate::density::density_module_check;

/// Largest window tried by the coboundary suite before giving up.
const COBOUNDARY_MAX_WINDOW: i64 = 10;

/// Window and states of the convention audit.
const AUDIT_WINDOW: i64 = 1;

/// Runs a suite. Parallel work is capped by `THREEPV_THREADS` when set.
pub fn run_suite(cfg: &SuiteConfig) -> Result<CheckReport> {
    cfg.validate()?;
    let threads = match std::env::var(THREADS_ENV) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .map_err(|_| Error::Config(format!("{THREADS_ENV} must be a positive integer, got {v:?}")))?,
        Err(_) => 0,
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    pool.install(|| dispatch(cfg))
}

fn dispatch(cfg: &SuiteConfig) -> Result<CheckReport> {
    let mut params = cfg.params();
    let checks = match cfg.suite {
        Suite::RingWitt => ring_witt(cfg.window),
        Suite::KaehlerBasis => kaehler_basis(cfg.window),
        Suite::MuCompare => mu_compare(cfg.window),
        Suite::AffineJacobi => affine_jacobi(cfg.window),
        Suite::KasselVsTable => kassel_vs_table(cfg.window),
        Suite::CocycleIdentity => cocycle_identity(cfg.window),
        Suite::CoboundaryWindow => coboundary_window(cfg.window, &mut params),
        Suite::HeisenbergRep => heisenberg_rep(cfg)?,
        Suite::AffineRep => affine_rep(cfg)?,
        Suite::WittRep => witt_rep(cfg, &mut params)?,
        Suite::VirasoroRep => virasoro_rep(cfg, &mut params)?,
        Suite::PairsSubset => pairs_subset(cfg)?,
        Suite::DensityModule => density_module(cfg.window),
    };
    Ok(CheckReport::new(cfg.suite.name(), params, checks))
}

fn outcome_rows(outcomes: Vec<CheckOutcome>) -> Vec<Check> {
    outcomes
        .into_iter()
        .map(|o| {
            let residual = (!o.passed()).then(|| {
                let (case, res) = o.failures.first().cloned().unwrap_or_default();
                format!("{} of {} cases fail; first {case}: {res}", o.failed, o.cases)
            });
            Check::new(format!("{} ({} cases)", o.label, o.cases), "0", "-", residual)
        })
        .collect()
}

fn ring_witt(w: i64) -> Vec<Check> {
    let kinds = [WittKind::D, WittKind::D1];
    let mut cases = Vec::new();
    for a in kinds {
        for b in kinds {
            for m in -w..=w {
                for n in -w..=w {
                    cases.push((a, m, b, n));
                }
            }
        }
    }
    let sym = |k: WittKind| if k == WittKind::D { Symbol::D } else { Symbol::D1 };
    cases
        .par_iter()
        .map(|&(a, m, b, n)| {
            let table = witt_bracket(&GenId::of(sym(a), m), &GenId::of(sym(b), n));
            let geo = witt_bracket_geometric((a, m), (b, n));
            let mut diff = LieVector::zero();
            for (k, mode, c) in geo.terms() {
                diff.add_term(GenId::of(sym(k), mode), c.clone());
            }
            let diff = table.sub(&diff);
            Check::new(
                format!("table[{}_{m}, {}_{n}]", a.name(), b.name()),
                format!("geometric[{}_{m}, {}_{n}]", a.name(), b.name()),
                "-",
                (!diff.is_zero()).then(|| diff.to_string()),
            )
        })
        .collect()
}

fn kaehler_basis(w: i64) -> Vec<Check> {
    (-w..=w)
        .map(|k| {
            let got = reduce_mod_dr(&OneForm::new(RRingElem::t_pow(k), RRingElem::zero()));
            let want = if k == -1 { CohomClass::new(q(1), q(0)) } else { CohomClass::zero() };
            let res = CohomClass::new(&got.q0 - &want.q0, &got.q1 - &want.q1);
            Check::new(format!("reduce(t^{k} dt)"), want.to_string(), "-", (!res.is_zero()).then(|| res.to_string()))
        })
        .collect()
}

/// Deterministic ring elements with up to four terms `c t^k u^e`,
/// `|k| <= 10`, `c = n/d` with `|n| <= 6`, `1 <= d <= 3`.
pub fn seeded_ring_elems(count: usize, seed: u64) -> Vec<RRingElem> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let terms = rng.gen_range(1..=4);
            RRingElem::from_terms((0..terms).map(|_| {
                let k = rng.gen_range(-10..=10);
                let e = rng.gen_range(0..=1u8);
                ((k, e), qr(rng.gen_range(-6..=6), rng.gen_range(1..=3)))
            }))
        })
        .collect()
}

/// `reduce(d f) = 0` on seeded ring elements.
pub fn kaehler_exact_form_checks(count: usize, seed: u64) -> Vec<Check> {
    seeded_ring_elems(count, seed)
        .into_iter()
        .enumerate()
        .map(|(i, f)| {
            let got = reduce_mod_dr(&differential(&f));
            Check::new(format!("reduce(d f{i})"), "0", f.to_string(), (!got.is_zero()).then(|| got.to_string()))
        })
        .collect()
}

fn mu_compare(w: i64) -> Vec<Check> {
    let mut out = Vec::new();
    for m in -w..=w {
        for n in -w..=w {
            let closed = mu_closed_form(m, n);
            let oracle = mu_oracle(m, n);
            let tag = if closed.by_convention { " (by convention)" } else { "" };
            let diff = &closed.value - &oracle;
            out.push(Check::new(
                format!("mu_closed({m},{n}) = {}{tag}", fmt_q(&closed.value)),
                format!("mu_oracle({m},{n}) = {}", fmt_q(&oracle)),
                "-",
                (!diff.is_zero()).then(|| fmt_q(&diff)),
            ));
        }
    }
    out
}

fn affine_jacobi(w: i64) -> Vec<Check> {
    let mut out = Vec::new();
    for t in [BracketTable::AffineKassel, BracketTable::Heisenberg, BracketTable::Witt, BracketTable::Virasoro] {
        let rows = outcome_rows(check_jacobi(t, w));
        out.extend(rows.into_iter().map(|mut c| {
            c.lhs = format!("jacobi[{}] {}", t.name(), c.lhs);
            c
        }));
    }
    out
}

fn affine_gens(w: i64) -> Vec<GenId> {
    Symbol::modes_of(Algebra::Affine).iter().flat_map(|&s| (-w..=w).map(move |m| GenId::of(s, m))).collect()
}

fn kassel_vs_table(w: i64) -> Vec<Check> {
    let gens = affine_gens(w);
    let mut out = Vec::new();
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i..] {
            let diff = affine_bracket(a, b).sub(&affine_bracket_kassel(a, b));
            out.push(Check::new(
                format!("table[{a}, {b}]"),
                format!("kassel[{a}, {b}]"),
                "-",
                (!diff.is_zero()).then(|| diff.to_string()),
            ));
        }
    }
    out
}

fn cocycle_identity(w: i64) -> Vec<Check> {
    let mut out = outcome_rows(check_cocycle_identity(Cocycle::Phi1, w));
    out.extend(outcome_rows(check_cocycle_identity(Cocycle::Phi2, w)));
    out
}

fn coboundary_window(w: i64, params: &mut BTreeMap<String, String>) -> Vec<Check> {
    let mut out = Vec::new();
    for phi in [Cocycle::Phi1, Cocycle::Phi2] {
        let mut window = w;
        loop {
            let (sys, outcome) = coboundary_window_test(phi, window);
            let lhs = format!("f([x,y]) = {}(x,y), window {window}", phi.name());
            match outcome {
                CoboundaryOutcome::Infeasible { rank_a, rank_ab, certificate } => {
                    let ok = sys.verify_certificate(&certificate);
                    let rhs = format!(
                        "infeasible: rank A = {rank_a}, rank [A|b] = {rank_ab}, certificate with {} rows",
                        certificate.len()
                    );
                    let cert: Vec<String> =
                        certificate.iter().map(|(i, c)| format!("{}:{}", i, fmt_q(c))).collect();
                    params.insert(format!("certificate_{}", phi.name()), cert.join(" "));
                    out.push(Check::new(lhs, rhs, "-", (!ok).then(|| "certificate does not verify".to_string())));
                    break;
                }
                CoboundaryOutcome::Feasible { witness } => {
                    let verified = sys.verify_witness(&witness);
                    let msg = format!("feasible ({} unknowns, witness verified: {verified})", witness.len());
                    if window < COBOUNDARY_MAX_WINDOW {
                        params.insert(format!("escalated_{}", phi.name()), format!("{window} -> {COBOUNDARY_MAX_WINDOW}"));
                        out.push(Check::new(lhs, "infeasible", "-", Some(msg)));
                        window = COBOUNDARY_MAX_WINDOW;
                        continue;
                    }
                    out.push(Check::new(lhs, "infeasible", "-", Some(msg)));
                    break;
                }
            }
        }
    }
    out
}

fn named_states(cfg: &SuiteConfig) -> Vec<(String, FockState)> {
    seeded_states(&cfg.states, cfg.window.max(1), cfg.seed)
        .into_iter()
        .enumerate()
        .map(|(i, s)| (if i == 0 { "vacuum".to_string() } else { format!("s{i}") }, s))
        .collect()
}

fn image_name(alg: Algebra) -> &'static str {
    match alg {
        Algebra::Affine => "tau",
        Algebra::Heisenberg => "rho",
        Algebra::Witt => "-pi",
        Algebra::Virasoro => "pi",
    }
}

fn state_residual(res: FockState) -> Option<String> {
    (!res.is_zero()).then(|| res.to_string())
}

/// `[img x, img y] s = img([x, y]) s` over all pairs and states.
fn rep_rows(
    rz: &Realization,
    pairs: &[(GenId, GenId)],
    bracket: fn(&GenId, &GenId) -> LieVector,
    states: &[(String, FockState)],
) -> Result<Vec<Check>> {
    let cases: Vec<(usize, usize)> =
        (0..pairs.len()).flat_map(|i| (0..states.len()).map(move |j| (i, j))).collect();
    cases
        .par_iter()
        .map(|&(i, j)| {
            let (x, y) = &pairs[i];
            let (name, s) = &states[j];
            let br = bracket(x, y);
            let img = image_name(x.algebra);
            let res = rz.rep_residual(x, y, &br, s)?;
            Ok(Check::new(format!("[{img}({x}), {img}({y})]"), format!("{img}({br})"), name.clone(), state_residual(res)))
        })
        .collect()
}

/// Small vacuum-only window that reports the integer mode shift which would
/// repair a failing identity, if any.
fn audit_rows(rz: &Realization, pairs: &[(GenId, GenId)], bracket: fn(&GenId, &GenId) -> LieVector) -> Result<Vec<Check>> {
    let small: Vec<&(GenId, GenId)> =
        pairs.iter().filter(|(x, y)| x.mode.abs() <= AUDIT_WINDOW && y.mode.abs() <= AUDIT_WINDOW).collect();
    small
        .par_iter()
        .map(|(x, y)| {
            let br = bracket(x, y);
            let v = FockState::vacuum();
            let res = rz.rep_residual(x, y, &br, &v)?;
            let residual = if res.is_zero() {
                None
            } else {
                Some(match audit_shift(rz, x, y, &br, &v)? {
                    Some(k) => format!("{res}; observed mode shift {k}"),
                    None => format!("{res}; no mode shift in [-3,3] repairs it"),
                })
            };
            let img = image_name(x.algebra);
            Ok(Check::new(format!("audit [{img}({x}), {img}({y})]"), format!("{img}({br})"), "vacuum", residual))
        })
        .collect()
}

fn mode_pairs(syms: &[(Symbol, Symbol)], w: i64) -> Vec<(GenId, GenId)> {
    let mut out = Vec::new();
    for &(a, b) in syms {
        for m in -w..=w {
            for n in -w..=w {
                out.push((GenId::of(a, m), GenId::of(b, n)));
            }
        }
    }
    out
}

fn realization(cfg: &SuiteConfig) -> Result<Realization> {
    Realization::new(cfg.rep_params()?)
}

fn heisenberg_rep(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    use Symbol::{B, B1};
    let rz = realization(cfg)?;
    let pairs = mode_pairs(&[(B, B), (B1, B1), (B, B1), (B1, B)], cfg.window);
    rep_rows(&rz, &pairs, heis_bracket, &named_states(cfg))
}

fn affine_rep(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let rz = realization(cfg)?;
    let syms = Symbol::modes_of(Algebra::Affine);
    let mut sym_pairs = Vec::new();
    for (i, &a) in syms.iter().enumerate() {
        for &b in &syms[i..] {
            sym_pairs.push((a, b));
        }
    }
    let pairs = mode_pairs(&sym_pairs, cfg.window);
    let mut out = rep_rows(&rz, &pairs, affine_bracket, &named_states(cfg))?;
    out.extend(audit_rows(&rz, &pairs, affine_bracket)?);
    Ok(out)
}

fn witt_rep(cfg: &SuiteConfig, params: &mut BTreeMap<String, String>) -> Result<Vec<Check>> {
    let rz = realization(cfg)?;
    let p = &rz.params;
    let states = named_states(cfg);
    let w = cfg.window;
    let ids = witt_lambda_identities(p.r, true);
    let mut cases = Vec::new();
    for i in 0..ids.len() {
        for m in -w..=w {
            for n in -w..=w {
                for j in 0..states.len() {
                    cases.push((i, m, n, j));
                }
            }
        }
    }
    let mut out: Vec<Check> = cases
        .par_iter()
        .map(|&(i, m, n, j)| {
            let id = &ids[i];
            let (name, s) = &states[j];
            let res = id.residual(m, n, s, p)?;
            let (a, b) = (source_name(&id.a), source_name(&id.b));
            Ok(Check::new(format!("[{a}_{m}, {b}_{n}]"), format!("modes of {}", id.name), name.clone(), state_residual(res)))
        })
        .collect::<Result<_>>()?;

    // Central terms of x -> -pi(x), measured on the vacuum against the anomaly terms.
    let anomalies = witt_anomaly_coeffs(p.r);
    let fams = [(Symbol::D, Symbol::D), (Symbol::D1, Symbol::D1), (Symbol::D, Symbol::D1)];
    let mut nonzero = 0usize;
    for (f, &(a, b)) in fams.iter().enumerate() {
        for m in -w..=w {
            for n in -w..=w {
                let (x, y) = (GenId::of(a, m), GenId::of(b, n));
                let v = FockState::vacuum();
                let measured = rz.rep_residual(&x, &y, &witt_bracket(&x, &y), &v)?;
                let predicted = lambda_to_modes(&anomalies[f], m, n).scalar;
                let c = measured.coeff(&FockMonomial::vacuum());
                if !c.is_zero() {
                    nonzero += 1;
                }
                let res = measured.sub(&v.scale(&predicted));
                out.push(Check::new(
                    format!("central[-pi({x}), -pi({y})] = {}", fmt_q(&c)),
                    format!("anomaly = {}", fmt_q(&predicted)),
                    "vacuum",
                    state_residual(res),
                ));
            }
        }
    }
    params.insert("anomalous_brackets".into(), nonzero.to_string());
    params.insert("honest_witt_rep".into(), (nonzero == 0).to_string());
    Ok(out)
}

fn source_name(s: &crate::realization::Source) -> String {
    match s {
        crate::realization::Source::Pi(k) => format!("pi({})", k.name()),
        crate::realization::Source::Field(_) => "field".into(),
    }
}

fn virasoro_rep(cfg: &SuiteConfig, params: &mut BTreeMap<String, String>) -> Result<Vec<Check>> {
    use Symbol::{VD, VD1};
    let rz = realization(cfg)?;
    let r = rz.params.r;
    let cbar = central_charge(r);
    if let Some(vp) = &rz.vir {
        params.insert("nu".into(), fmt_q(&vp.nu));
        params.insert("gamma_p".into(), fmt_q(&vp.gamma_p));
        params.insert("gamma1".into(), fmt_q(&vp.gamma1));
    }
    params.insert("central_charge".into(), fmt_q(&cbar));
    params.insert("central_map".into(), "c1 -> central_charge, c2 -> 0".into());
    let pairs = mode_pairs(&[(VD, VD), (VD1, VD1), (VD, VD1)], cfg.window);
    let mut out = rep_rows(&rz, &pairs, vir_bracket, &named_states(cfg))?;

    // Pure-central checks: the non-central part kills the vacuum.
    let v = FockState::vacuum();
    for (x, y) in &pairs {
        let br = vir_bracket(x, y);
        let central = br.central_part();
        if central.is_zero() || !rz.apply_image(&br.non_central_part(), &v)?.is_zero() {
            continue;
        }
        let lhs = commutator_apply(&rz.gen_op(x)?, &rz.gen_op(y)?, &v, &rz.params)?;
        let phi1 = central.coeff(&GenId::central(Symbol::C1));
        let want = &phi1 * &cbar;
        out.push(Check::new(
            format!("central [pi({x}), pi({y})]|0>"),
            format!("phi1 * c = {} * {} = {}", fmt_q(&phi1), fmt_q(&cbar), fmt_q(&want)),
            "vacuum",
            state_residual(lhs.sub(&v.scale(&want))),
        ));
    }
    out.extend(audit_rows(&rz, &pairs, vir_bracket)?);
    Ok(out)
}

fn pairs_subset(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let p = cfg.rep_params()?;
    let ids = pairs_identities(&p.kappa0);
    let states = named_states(cfg);
    let w = cfg.window;
    let mut cases = Vec::new();
    for i in 0..ids.len() {
        for m in -w..=w {
            for n in -w..=w {
                for j in 0..states.len() {
                    cases.push((i, m, n, j));
                }
            }
        }
    }
    cases
        .par_iter()
        .map(|&(i, m, n, j)| {
            let id = &ids[i];
            let (name, s) = &states[j];
            let res = id.residual(m, n, s, &p)?;
            Ok(Check::new(format!("{} at ({m}, {n})", id.name), "lambda_to_modes", name.clone(), state_residual(res)))
        })
        .collect()
}

/// Alphas of the density-module suite.
fn density_alphas() -> [Q; 4] {
    [q(0), qr(1, 2), qr(-3, 4), q(2)]
}

fn density_module(w: i64) -> Vec<Check> {
    outcome_rows(density_module_check(&density_alphas(), w))
}
