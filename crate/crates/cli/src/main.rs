use clap::Parser;
use orbitlab_cli::{execute, write_reports, Mode, PartialConfig, RunConfig};
use std::path::PathBuf;
use std::process::ExitCode;

/// Runs the verification suites and writes `reports.jsonl` and `summary.csv`.
#[derive(Debug, Parser)]
#[command(name = "orbitlab", version)]
struct Args {
    /// Key-value config file (TOML); flags override its entries.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    mode: Option<Mode>,
    #[arg(short)]
    p: Option<u32>,
    #[arg(short)]
    q: Option<u32>,
    #[arg(short)]
    r: Option<u32>,
    #[arg(long)]
    jmax: Option<usize>,
    #[arg(long)]
    samples: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Comma-separated list, e.g. `2,3,5`.
    #[arg(long, value_delimiter = ',')]
    primes: Option<Vec<u32>>,
    #[arg(long)]
    nmax: Option<usize>,
    /// Suite names; repeat the flag or separate with commas.
    #[arg(long)]
    suite: Option<Vec<String>>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Args {
    fn partial(&self) -> PartialConfig {
        PartialConfig {
            mode: self.mode,
            p: self.p,
            q: self.q,
            r: self.r,
            primes: self.primes.clone(),
            nmax: self.nmax,
            jmax: self.jmax,
            samples: self.samples,
            seed: self.seed,
            out: self.out.clone(),
            suites: self.suite.clone(),
        }
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    let run = || -> anyhow::Result<bool> {
        let base = match &args.config {
            Some(path) => PartialConfig::from_file(path)?,
            None => PartialConfig::default(),
        };
        let cfg = RunConfig::resolve(base.merge(args.partial()))?;
        let outcome = execute(&cfg);
        write_reports(&cfg.out, &outcome.reports)?;
        for r in &outcome.reports {
            println!("{}", r.line());
        }
        for m in &outcome.missing {
            println!("missing result for claim {m}");
        }
        let failed = outcome.reports.iter().filter(|r| !r.pass).count();
        println!(
            "{} reports, {failed} failed, {} claims missing; written to {}",
            outcome.reports.len(),
            outcome.missing.len(),
            cfg.out.display()
        );
        Ok(outcome.success())
    };
    match run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
