use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::Parser;
use threepv::harness::{parse_config_file, run_suite, Suite, SuiteConfig};
use threepv::report::emit_report;

/// Runs one verification suite and prints its report.
///
/// Exit status: 0 if every check passes, 1 if any check fails, 2 on
/// configuration or usage errors.
#[derive(Debug, Parser)]
#[command(name = "3pv", version)]
struct Cli {
    /// ring-witt, kaehler-basis, mu-compare, affine-jacobi, kassel-vs-table,
    /// cocycle-identity, coboundary-window, heisenberg-rep, affine-rep,
    /// witt-rep, virasoro-rep, pairs-subset or density-module.
    suite: String,
    /// Normal-ordering choice, 0 or 1.
    #[arg(long)]
    r: Option<String>,
    /// Heisenberg level as P/Q.
    #[arg(long)]
    kappa0: Option<String>,
    /// Action of b_0 on the Fock vacuum space, as P/Q.
    #[arg(long)]
    b0: Option<String>,
    /// Action of b1_0 on V as a,b;c,d.
    #[arg(long)]
    b1: Option<String>,
    /// Mode window.
    #[arg(long)]
    window: Option<String>,
    /// vacuum or random:K:D.
    #[arg(long)]
    states: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    /// text or json.
    #[arg(long)]
    format: Option<String>,
    /// Flat key = value file; flags override its entries.
    #[arg(long)]
    config: Option<PathBuf>,
}

impl Cli {
    fn flag_settings(&self) -> BTreeMap<String, String> {
        let flags = [
            ("r", &self.r),
            ("kappa0", &self.kappa0),
            ("b0", &self.b0),
            ("b1", &self.b1),
            ("window", &self.window),
            ("states", &self.states),
            ("seed", &self.seed),
            ("format", &self.format),
        ];
        flags.into_iter().filter_map(|(k, v)| v.clone().map(|v| (k.to_string(), v))).collect()
    }
}

fn run(cli: &Cli) -> anyhow::Result<bool> {
    let suite: Suite = cli.suite.parse()?;
    let mut cfg = SuiteConfig::new(suite);
    if let Some(path) = &cli.config {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        cfg.apply(&parse_config_file(&text)?)?;
    }
    cfg.apply(&cli.flag_settings())?;
    let report = run_suite(&cfg)?;
    let mut out = std::io::stdout().lock();
    out.write_all(emit_report(&report, cfg.format).as_bytes())?;
    out.flush()?;
    Ok(report.all_passed())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("3pv: {e:#}");
            ExitCode::from(2)
        }
    }
}
