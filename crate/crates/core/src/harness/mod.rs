//! Suite configuration and the suite runner behind the `3pv` CLI.

mod suites;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::fock::{RepParams, StateSpec};
use crate::report::Format;
use crate::scalar::{fmt_q, parse_q, q, qr, Q};

pub use suites::{kaehler_exact_form_checks, run_suite, seeded_ring_elems};

/// Environment variable capping the worker threads used by a suite.
pub const THREADS_ENV: &str = "THREEPV_THREADS";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    RingWitt,
    KaehlerBasis,
    MuCompare,
    AffineJacobi,
    KasselVsTable,
    CocycleIdentity,
    CoboundaryWindow,
    HeisenbergRep,
    AffineRep,
    WittRep,
    VirasoroRep,
    PairsSubset,
    DensityModule,
}

impl Suite {
    pub const ALL: [Suite; 13] = [
        Suite::RingWitt,
        Suite::KaehlerBasis,
        Suite::MuCompare,
        Suite::AffineJacobi,
        Suite::KasselVsTable,
        Suite::CocycleIdentity,
        Suite::CoboundaryWindow,
        Suite::HeisenbergRep,
        Suite::AffineRep,
        Suite::WittRep,
        Suite::VirasoroRep,
        Suite::PairsSubset,
        Suite::DensityModule,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::RingWitt => "ring-witt",
            Suite::KaehlerBasis => "kaehler-basis",
            Suite::MuCompare => "mu-compare",
            Suite::AffineJacobi => "affine-jacobi",
            Suite::KasselVsTable => "kassel-vs-table",
            Suite::CocycleIdentity => "cocycle-identity",
            Suite::CoboundaryWindow => "coboundary-window",
            Suite::HeisenbergRep => "heisenberg-rep",
            Suite::AffineRep => "affine-rep",
            Suite::WittRep => "witt-rep",
            Suite::VirasoroRep => "virasoro-rep",
            Suite::PairsSubset => "pairs-subset",
            Suite::DensityModule => "density-module",
        }
    }

    /// Window used when none is configured.
    pub fn default_window(self) -> i64 {
        match self {
            Suite::RingWitt => 12,
            Suite::KaehlerBasis => 20,
            Suite::MuCompare => 6,
            Suite::AffineJacobi => 5,
            Suite::KasselVsTable => 5,
            Suite::CocycleIdentity => 8,
            Suite::CoboundaryWindow => 6,
            Suite::HeisenbergRep => 4,
            Suite::AffineRep | Suite::WittRep | Suite::VirasoroRep | Suite::PairsSubset => 3,
            Suite::DensityModule => 6,
        }
    }

    pub fn needs_kappa(self) -> bool {
        self == Suite::VirasoroRep
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| Error::UnknownSuite(s.to_string()))
    }
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            _ => Err(Error::Parse(format!("format must be text or json, got {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub suite: Suite,
    pub r: u8,
    pub kappa0: Q,
    pub b0: Q,
    pub b1: [[Q; 2]; 2],
    pub window: i64,
    pub states: StateSpec,
    pub seed: u64,
    pub format: Format,
}

/// Keys accepted in config files and as CLI flags.
pub const CONFIG_KEYS: [&str; 8] = ["r", "kappa0", "b0", "b1", "window", "states", "seed", "format"];

impl SuiteConfig {
    /// Defaults: `r = 0`, `kappa0 = 1`, `B0 = 1/2`, `B1 = 1,2;-1,1`, the suite's
    /// default window, `random:20:3` states, seed 0, text output.
    pub fn new(suite: Suite) -> Self {
        Self {
            suite,
            r: 0,
            kappa0: q(1),
            b0: qr(1, 2),
            b1: [[q(1), q(2)], [q(-1), q(1)]],
            window: suite.default_window(),
            states: StateSpec::Random { count: 20, degree: 3 },
            seed: 0,
            format: Format::Text,
        }
    }

    /// Applies `key = value` settings; later calls override earlier ones.
    pub fn apply(&mut self, settings: &BTreeMap<String, String>) -> Result<()> {
        for (k, v) in settings {
            let v = v.trim();
            match k.as_str() {
                "r" => self.r = v.parse().map_err(|_| Error::Parse(format!("r must be 0 or 1, got {v:?}")))?,
                "kappa0" => self.kappa0 = parse_q(v)?,
                "b0" => self.b0 = parse_q(v)?,
                "b1" => self.b1 = parse_matrix(v)?,
                "window" => {
                    self.window = v.parse().map_err(|_| Error::Parse(format!("window must be an integer, got {v:?}")))?
                }
                "states" => self.states = StateSpec::parse(v)?,
                "seed" => self.seed = v.parse().map_err(|_| Error::Parse(format!("seed must be an integer, got {v:?}")))?,
                "format" => self.format = v.parse()?,
                other => return Err(Error::Config(format!("unknown config key {other:?}"))),
            }
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        if self.window < 1 {
            return Err(Error::Config(format!("window must be >= 1, got {}", self.window)));
        }
        if self.suite.needs_kappa() && self.kappa0.is_zero() {
            return Err(Error::ZeroKappa);
        }
        self.rep_params().map(|_| ())
    }

    pub fn rep_params(&self) -> Result<RepParams> {
        RepParams::new(self.r, self.kappa0.clone(), self.b0.clone(), self.b1.clone(), q(0))
    }

    /// The configuration as report parameters.
    pub fn params(&self) -> BTreeMap<String, String> {
        let b1 = &self.b1;
        BTreeMap::from([
            ("r".into(), self.r.to_string()),
            ("kappa0".into(), fmt_q(&self.kappa0)),
            ("b0".into(), fmt_q(&self.b0)),
            ("b1".into(), format!("{},{};{},{}", fmt_q(&b1[0][0]), fmt_q(&b1[0][1]), fmt_q(&b1[1][0]), fmt_q(&b1[1][1]))),
            ("window".into(), self.window.to_string()),
            ("states".into(), self.states.label()),
            ("seed".into(), self.seed.to_string()),
        ])
    }
}

/// Parses a flat `key = value` file; blank lines and `#` comments are skipped.
pub fn parse_config_file(text: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("line {}: expected key = value, got {line:?}", i + 1)))?;
        let k = k.trim().to_string();
        if !CONFIG_KEYS.contains(&k.as_str()) {
            return Err(Error::Config(format!("line {}: unknown config key {k:?}", i + 1)));
        }
        out.insert(k, v.trim().to_string());
    }
    Ok(out)
}

/// Parses `a,b;c,d` into `[[a, b], [c, d]]`.
pub fn parse_matrix(s: &str) -> Result<[[Q; 2]; 2]> {
    let bad = || Error::Parse(format!("matrix must look like a,b;c,d, got {s:?}"));
    let rows: Vec<&str> = s.split(';').collect();
    if rows.len() != 2 {
        return Err(bad());
    }
    let mut m = [[q(0), q(0)], [q(0), q(0)]];
    for (i, row) in rows.iter().enumerate() {
        let cells: Vec<&str> = row.split(',').collect();
        if cells.len() != 2 {
            return Err(bad());
        }
        for (j, c) in cells.iter().enumerate() {
            m[i][j] = parse_q(c.trim())?;
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!(matches!("nope".parse::<Suite>(), Err(Error::UnknownSuite(_))));
    }

    #[test]
    fn file_then_flags() {
        let file = parse_config_file("# comment\nr = 1\nkappa0 = 3/2\nwindow=2\n\nb1 = 2,0;1,2\n").unwrap();
        let mut cfg = SuiteConfig::new(Suite::AffineRep);
        cfg.apply(&file).unwrap();
        cfg.apply(&BTreeMap::from([("window".to_string(), "1".to_string())])).unwrap();
        assert_eq!(cfg.r, 1);
        assert_eq!(cfg.kappa0, qr(3, 2));
        assert_eq!(cfg.window, 1);
        assert_eq!(cfg.b1[1][0], q(1));
        cfg.validate().unwrap();
    }

    #[test]
    fn rejects_bad_configs() {
        assert!(parse_config_file("colour = red").is_err());
        assert!(parse_config_file("r 1").is_err());
        assert!(parse_matrix("1,2,3;4").is_err());
        let mut cfg = SuiteConfig::new(Suite::VirasoroRep);
        cfg.kappa0 = q(0);
        assert_eq!(cfg.validate(), Err(Error::ZeroKappa));
        let mut cfg = SuiteConfig::new(Suite::RingWitt);
        cfg.window = 0;
        assert!(cfg.validate().is_err());
        cfg.window = 1;
        cfg.r = 2;
        assert!(cfg.validate().is_err());
    }
}
