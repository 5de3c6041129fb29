//! Configuration, suite dispatch and report output for the `orbitlab` binary.

use anyhow::{bail, Context, Result};
use orbitlab::exactnum::coprime;
use orbitlab::report::{sort_reports, write_csv, write_jsonl, VerificationReport};
use orbitlab::stability::StabilityConfig;
use orbitlab::suites::{self, missing_claims, Suite};
use orbitlab::vaes::VaesConfig;
use serde::Deserialize;
use std::fs::{self, File};
use std::io::BufWriter;
use std::path::{Path, PathBuf};
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Bs,
    Vaes,
    All,
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "bs" => Ok(Mode::Bs),
            "vaes" => Ok(Mode::Vaes),
            "all" => Ok(Mode::All),
            _ => Err(format!("mode must be bs, vaes or all, got {s:?}")),
        }
    }
}

/// Every field optional; flags fill in on top of the file.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartialConfig {
    pub mode: Option<Mode>,
    pub p: Option<u32>,
    pub q: Option<u32>,
    pub r: Option<u32>,
    pub primes: Option<Vec<u32>>,
    pub nmax: Option<usize>,
    pub jmax: Option<usize>,
    pub samples: Option<u64>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub suites: Option<Vec<String>>,
}

impl PartialConfig {
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("parsing {}", path.display()))
    }

    /// Fields set in `other` win.
    pub fn merge(self, other: PartialConfig) -> PartialConfig {
        PartialConfig {
            mode: other.mode.or(self.mode),
            p: other.p.or(self.p),
            q: other.q.or(self.q),
            r: other.r.or(self.r),
            primes: other.primes.or(self.primes),
            nmax: other.nmax.or(self.nmax),
            jmax: other.jmax.or(self.jmax),
            samples: other.samples.or(self.samples),
            seed: other.seed.or(self.seed),
            out: other.out.or(self.out),
            suites: other.suites.or(self.suites),
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub mode: Mode,
    pub bs: Option<StabilityConfig>,
    pub vaes: Option<VaesConfig>,
    pub suites: Vec<Suite>,
    pub out: PathBuf,
}

pub const DEFAULT_PRIMES: [u32; 5] = [2, 3, 5, 7, 11];

impl RunConfig {
    pub fn resolve(c: PartialConfig) -> Result<RunConfig> {
        let mode = c.mode.unwrap_or(Mode::Bs);
        let samples = c.samples.unwrap_or(100_000);
        let seed = c.seed.unwrap_or(0);
        if samples == 0 {
            bail!("samples must be positive");
        }
        let bs = if mode != Mode::Vaes {
            let (p, q, r) = (c.p.unwrap_or(2), c.q.unwrap_or(3), c.r.unwrap_or(1));
            if p < 1 || p >= q {
                bail!("need 1 <= p < q, got p={p} q={q}");
            }
            if !coprime(p, q) {
                bail!("p and q must be coprime, got p={p} q={q}");
            }
            if r < 1 || r * p < 2 {
                bail!("need r >= 1 and rp >= 2, got r={r} p={p}");
            }
            let mut s = StabilityConfig::new(p, q, r)?.with_samples(samples).with_seed(seed);
            if let Some(j) = c.jmax {
                s = s.with_j_max(j);
            }
            Some(s)
        } else {
            None
        };
        let vaes = if mode != Mode::Bs {
            let mut primes = c.primes.unwrap_or_else(|| DEFAULT_PRIMES.to_vec());
            if let Some(n) = c.nmax {
                if n >= primes.len() {
                    bail!("nmax={n} needs {} primes, only {} given", n + 1, primes.len());
                }
                primes.truncate(n + 1);
            }
            let mut v = VaesConfig::new(primes)?;
            v.samples = samples;
            v.seed = seed;
            Some(v)
        } else {
            None
        };
        let available: Vec<Suite> = match mode {
            Mode::Bs => Suite::BS.to_vec(),
            Mode::Vaes => vec![Suite::Vaes],
            Mode::All => Suite::BS.iter().copied().chain([Suite::Vaes]).collect(),
        };
        let suites = match c.suites {
            None => available,
            Some(names) => {
                let mut picked = Vec::new();
                for n in names.iter().flat_map(|n| n.split(',')).map(str::trim).filter(|n| !n.is_empty()) {
                    let s: Suite = n.parse().map_err(anyhow::Error::msg)?;
                    if !available.contains(&s) {
                        bail!("suite {n} does not run in mode {mode:?}");
                    }
                    if !picked.contains(&s) {
                        picked.push(s);
                    }
                }
                picked.sort();
                picked
            }
        };
        Ok(RunConfig {
            mode,
            bs,
            vaes,
            suites,
            out: c.out.unwrap_or_else(|| PathBuf::from("reports")),
        })
    }

    /// Claim ids the selected suites must cover.
    pub fn manifest(&self) -> Vec<&'static str> {
        let p = self.bs.map_or(2, |b| b.p);
        let mut out: Vec<&'static str> = self.suites.iter().flat_map(|s| s.claims(p)).collect();
        out.sort();
        out.dedup();
        out
    }
}

pub struct RunOutcome {
    pub reports: Vec<VerificationReport>,
    pub missing: Vec<String>,
}

impl RunOutcome {
    pub fn success(&self) -> bool {
        self.missing.is_empty() && self.reports.iter().all(|r| r.pass)
    }
}

pub fn execute(cfg: &RunConfig) -> RunOutcome {
    let mut reports = Vec::new();
    for &s in &cfg.suites {
        match (s, &cfg.bs, &cfg.vaes) {
            (Suite::Vaes, _, Some(v)) => reports.extend(suites::run_vaes(v)),
            (Suite::Vaes, _, None) => {}
            (_, Some(b), _) => reports.extend(suites::run_bs(b, s)),
            (_, None, _) => {}
        }
    }
    sort_reports(&mut reports);
    let missing = missing_claims(&cfg.manifest(), &reports);
    RunOutcome { reports, missing }
}

/// Writes `reports.jsonl` and `summary.csv` under `dir`.
pub fn write_reports(dir: &Path, reports: &[VerificationReport]) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    write_jsonl(BufWriter::new(File::create(dir.join("reports.jsonl"))?), reports)?;
    write_csv(BufWriter::new(File::create(dir.join("summary.csv"))?), reports)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn partial(p: u32, q: u32, r: u32) -> PartialConfig {
        PartialConfig {
            p: Some(p),
            q: Some(q),
            r: Some(r),
            ..Default::default()
        }
    }

    #[test]
    fn m_is_least_with_power_above_r() {
        assert_eq!(RunConfig::resolve(partial(2, 3, 1)).unwrap().bs.unwrap().m, 1);
        assert_eq!(RunConfig::resolve(partial(1, 2, 2)).unwrap().bs.unwrap().m, 2);
    }

    #[test]
    fn violations_name_the_constraint() {
        let e = RunConfig::resolve(partial(2, 4, 1)).unwrap_err().to_string();
        assert!(e.contains("coprime"), "{e}");
        let e = RunConfig::resolve(partial(3, 2, 1)).unwrap_err().to_string();
        assert!(e.contains("p < q"), "{e}");
        let e = RunConfig::resolve(partial(1, 2, 1)).unwrap_err().to_string();
        assert!(e.contains("rp >= 2"), "{e}");
    }

    #[test]
    fn flags_override_file() {
        let file: PartialConfig = toml::from_str("mode = \"vaes\"\nprimes = [2, 3, 5]\nseed = 4\n").unwrap();
        let flags = PartialConfig {
            seed: Some(9),
            nmax: Some(1),
            ..Default::default()
        };
        let cfg = RunConfig::resolve(file.merge(flags)).unwrap();
        let v = cfg.vaes.unwrap();
        assert_eq!(v.primes, vec![2, 3]);
        assert_eq!(v.seed, 9);
        assert_eq!(cfg.suites, vec![Suite::Vaes]);
        assert!(cfg.bs.is_none());
    }

    #[test]
    fn suite_filter_and_manifest() {
        let mut c = partial(1, 2, 2);
        c.suites = Some(vec!["gap,carry".into()]);
        let cfg = RunConfig::resolve(c).unwrap();
        assert_eq!(cfg.suites, vec![Suite::Gap, Suite::Carry]);
        assert_eq!(cfg.manifest(), vec!["claim-eq", "lem-1-ac.ii"]);
        let mut c = partial(2, 3, 1);
        c.suites = Some(vec!["vaes".into()]);
        assert!(RunConfig::resolve(c).is_err());
        assert!(toml::from_str::<PartialConfig>("colour = 1").is_err());
    }
}
