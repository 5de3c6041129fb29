//! Named verification suites and the claim manifest they cover.

use crate::actions::{
    claim_eq_digits, coinduced_exponent, coinduced_sym_diff, tail_set_estimate, theta_stabilization,
    LemmaCylinder, Shape, YPoint, YWord, ZCylinder,
};
use crate::bsgroup::{index2_iso_check, CosetRep, GroupWord};
use crate::exactnum::{ratio_pow, ExactRational};
use crate::report::VerificationReport;
use crate::stability::{
    chi_square_pi, chi_square_tau, check_commutation, check_disjoint_exact, check_pi_pushforward_exact,
    estimate_sym_diff, v_suite, Generator, Mover, StabilityConfig,
};
use crate::stats::sample_seed;
use crate::vaes::{vaes_suite, VaesConfig};
use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Relations,
    TInvariance,
    Pushforward,
    Gap,
    Decay,
    Commutation,
    Theta,
    Carry,
    HStable,
    Coinduced,
    Britton,
    Vaes,
}

impl Suite {
    pub const BS: [Suite; 11] = [
        Suite::Relations,
        Suite::TInvariance,
        Suite::Pushforward,
        Suite::Gap,
        Suite::Decay,
        Suite::Commutation,
        Suite::Theta,
        Suite::Carry,
        Suite::HStable,
        Suite::Coinduced,
        Suite::Britton,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Relations => "relations",
            Suite::TInvariance => "t-invariance",
            Suite::Pushforward => "pushforward",
            Suite::Gap => "gap",
            Suite::Decay => "decay",
            Suite::Commutation => "commutation",
            Suite::Theta => "theta",
            Suite::Carry => "carry",
            Suite::HStable => "h-stable",
            Suite::Coinduced => "coinduced",
            Suite::Britton => "britton",
            Suite::Vaes => "vaes",
        }
    }

    /// Claim ids a run of this suite must report on.
    pub fn claims(self, p: u32) -> Vec<&'static str> {
        let one = p == 1;
        match self {
            Suite::Relations => vec!["y-action.relations"],
            Suite::TInvariance => vec!["y-action.t-measure"],
            Suite::Pushforward if one => vec!["lem-1-pi.i", "thm-h-stable.tau"],
            Suite::Pushforward => vec!["lem-2-ai.i", "thm-h-stable.tau"],
            Suite::Gap if one => vec!["lem-1-ac.ii"],
            Suite::Gap => vec!["lem-2-ac.ii"],
            Suite::Decay => vec!["lem-ai"],
            Suite::Commutation if one => vec!["lem-1-ac.i"],
            Suite::Commutation => vec!["lem-2-ac.i"],
            Suite::Theta => vec!["lem-theta", "claim-a-zero"],
            Suite::Carry => vec!["claim-eq"],
            Suite::HStable => vec!["thm-h-stable.1", "thm-h-stable.2", "thm-h-stable.3"],
            Suite::Coinduced => vec!["lem-co-ind"],
            Suite::Britton => vec!["britton.sound", "thm-stable.index2"],
            Suite::Vaes => vec!["thm-s-v.1", "thm-s-v.2", "thm-s-v.3"],
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Suite::BS
            .iter()
            .chain([Suite::Vaes].iter())
            .find(|x| x.name() == s)
            .copied()
            .ok_or_else(|| format!("unknown suite {s:?}"))
    }
}

/// Claims in `expected` with no report.
pub fn missing_claims(expected: &[&str], reports: &[VerificationReport]) -> Vec<String> {
    expected
        .iter()
        .filter(|c| !reports.iter().any(|r| r.claim == **c))
        .map(|c| c.to_string())
        .collect()
}

fn rng_for(cfg: &StabilityConfig, label: &str) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(sample_seed(cfg.seed, label, 0))
}

pub fn run_bs(cfg: &StabilityConfig, suite: Suite) -> Vec<VerificationReport> {
    match suite {
        Suite::Relations => vec![relations(cfg, 100, 64)],
        Suite::TInvariance => vec![t_invariance(cfg)],
        Suite::Pushforward => pushforward(cfg),
        Suite::Gap => (0..=cfg.j_max).map(|j| check_disjoint_exact(cfg, j)).collect(),
        Suite::Decay => decay(cfg, cfg.j_max + 2),
        Suite::Commutation => commutation(cfg),
        Suite::Theta => theta(cfg),
        Suite::Carry => vec![carry(cfg, 1000)],
        Suite::HStable => v_suite(cfg, cfg.samples),
        Suite::Coinduced => vec![coinduced(cfg)],
        Suite::Britton => britton(cfg, 1000, 100),
        Suite::Vaes => Vec::new(),
    }
}

pub fn run_vaes(cfg: &VaesConfig) -> Vec<VerificationReport> {
    vaes_suite(cfg, 100, cfg.samples)
}

/// `a_{i+1}^p = a_i^q`, `t a_i t^-1 = a_{i+1}` and `[a_i, a_j] = 1` on sampled points, both sides
/// by single steps and the left side also through the normal form.
pub fn relations(cfg: &StabilityConfig, points: u64, digits: usize) -> VerificationReport {
    let (p, q) = (cfg.p, cfg.q);
    let mut pairs: Vec<(YWord, YWord)> = Vec::new();
    for i in -3i64..=3 {
        pairs.push((YWord::a(i + 1, p as i64), YWord::a(i, q as i64)));
        pairs.push((YWord::t(1).mul(&YWord::a(i, 1)).mul(&YWord::t(-1)), YWord::a(i + 1, 1)));
        for j in -3i64..=3 {
            let comm = YWord::a(i, 1).mul(&YWord::a(j, 1)).mul(&YWord::a(i, -1)).mul(&YWord::a(j, -1));
            pairs.push((comm, YWord::default()));
        }
    }
    let shape = Shape::uniform(digits);
    let mut bad = 0u64;
    for s in 0..points {
        let y = YPoint::new(p, q, sample_seed(cfg.seed, "relations", s));
        for (lhs, rhs) in &pairs {
            let a = y.steps_from_base(lhs, shape);
            let b = y.steps_from_base(rhs, shape);
            let c = y.act_word(lhs).window(shape);
            let ok = matches!((&a, &b, &c), (Ok(a), Ok(b), Ok(c)) if a == b && a == c);
            bad += !ok as u64;
        }
    }
    let total = points * pairs.len() as u64;
    VerificationReport::exact(
        "y-action.relations",
        format!("{} points={points} digits={digits}", cfg.params()),
        format!("{bad}/{total}"),
        "0",
        bad == 0,
    )
}

fn lemma_cylinders(cfg: &StabilityConfig, max_len: usize, random: usize) -> Vec<LemmaCylinder> {
    let (p, q) = (cfg.p, cfg.q);
    let pos_base = if p == 1 { 1 } else { p };
    let count = |n: usize, m: usize| (q as u64).pow(n as u32) * (p * q) as u64 * (pos_base as u64).pow(m as u32);
    let total: u64 = (1..=max_len).flat_map(|n| (0..=max_len).map(move |m| (n, m))).map(|(n, m)| count(n, m)).sum();
    let digits = |mut code: u64, len: usize, base: u32| -> Vec<u32> {
        (0..len)
            .map(|_| {
                let d = (code % base as u64) as u32;
                code /= base as u64;
                d
            })
            .collect()
    };
    let mut out = Vec::new();
    if total <= 20_000 {
        for n in 1..=max_len {
            for m in 0..=(if p == 1 { 0 } else { max_len }) {
                for code in 0..count(n, m) {
                    let neg = digits(code, n, q);
                    let rest = code / (q as u64).pow(n as u32);
                    let c = (rest % (p * q) as u64) as u32;
                    let pos = digits(rest / (p * q) as u64, m, pos_base);
                    out.push(LemmaCylinder::with_digit(p, q, neg, c, pos));
                }
            }
        }
    } else {
        let mut rng = rng_for(cfg, "lemma-cylinders");
        for _ in 0..random {
            let n = rng.random_range(1..=max_len);
            let m = if p == 1 { 0 } else { rng.random_range(0..=max_len) };
            let neg = (0..n).map(|_| rng.random_range(0..q)).collect();
            let pos = (0..m).map(|_| rng.random_range(0..pos_base)).collect();
            out.push(LemmaCylinder::with_digit(p, q, neg, rng.random_range(0..p * q), pos));
        }
    }
    out
}

/// `ν(tB) = ν(B)` over cylinders fixing `N` digits of `Y-`, one of `Y0` and `M` of `Y+`, with the
/// product formula as the reference and sampled points of `B` landing in `tB`.
pub fn t_invariance(cfg: &StabilityConfig) -> VerificationReport {
    let (p, q) = (cfg.p, cfg.q);
    let cylinders = lemma_cylinders(cfg, 3, 100);
    let mut bad = 0;
    for (k, b) in cylinders.iter().enumerate() {
        let pos_factor = if p == 1 { 1 } else { p.pow(b.pos.len() as u32) };
        let formula = ExactRational::new(
            BigInt::from(1),
            BigInt::from(q).pow(b.neg.len() as u32) * BigInt::from(p * q) * BigInt::from(pos_factor),
        );
        let Some(tb) = b.t_image() else {
            bad += 1;
            continue;
        };
        let mut ok = b.measure() == formula && tb.measure() == formula;
        if k % 10 == 0 {
            let y = YPoint::from_tape(p, q, b.sample_inside(sample_seed(cfg.seed, "t-witness", k as u64)));
            let ty = y.acted(&crate::bsgroup::AffineElement::new(p, q, ExactRational::zero(), 1));
            ok &= matches!(ty.window(tb.shape()), Ok(w) if tb.contains(&w));
        }
        bad += !ok as usize;
    }
    VerificationReport::exact(
        "y-action.t-measure",
        format!("{} cylinders={}", cfg.params(), cylinders.len()),
        format!("{bad}/{}", cylinders.len()),
        "0",
        bad == 0,
    )
}

fn pushforward(cfg: &StabilityConfig) -> Vec<VerificationReport> {
    let mut out = Vec::new();
    if cfg.p == 1 {
        out.extend((0..=2).map(|d| check_pi_pushforward_exact(cfg, d)));
    }
    let claim = cfg.claim("lem-1-pi.i", "lem-2-ai.i");
    for j in [1, 3] {
        let (stat, pv) = chi_square_pi(cfg, j, cfg.samples);
        out.push(
            VerificationReport::exact(&claim, format!("{} chi-square pi j={j}", cfg.params()), format!("{pv:.4}"), "> 0.01", pv > 0.01)
                .with_note(format!("statistic {stat:.3}")),
        );
        let (stat, pv) = chi_square_tau(cfg, j, cfg.samples);
        out.push(
            VerificationReport::exact(
                "thm-h-stable.tau",
                format!("{} chi-square tau j={j}", cfg.params()),
                format!("{pv:.4}"),
                "> 0.01",
                pv > 0.01,
            )
            .with_note(format!("statistic {stat:.3}")),
        );
    }
    out
}

/// `ω(t B_j △ B_j) <= 2^-j` for `j <= top`; `ω(a B_j △ B_j)` at `top` against `j = 0, 2`.
pub fn decay(cfg: &StabilityConfig, top: usize) -> Vec<VerificationReport> {
    let mut out = Vec::new();
    let t = Mover::Word(GroupWord::t(1));
    for j in 0..=top {
        let f = estimate_sym_diff(cfg, j, &t, cfg.samples);
        let bound = 0.5f64.powi(j as i32);
        out.push(VerificationReport::mc(
            "lem-ai",
            format!("{} g=t j={j:02}", cfg.params()),
            f.estimate,
            format!("{bound:.6}"),
            f.ci,
            f.estimate <= bound + f.half_width(),
        ));
    }
    let a = Mover::Word(GroupWord::a(1));
    let fa: Vec<_> = [0, 2, top].iter().map(|&j| estimate_sym_diff(cfg, j, &a, cfg.samples)).collect();
    let (f0, f2, ft) = (&fa[0], &fa[1], &fa[2]);
    let strict = ft.estimate < f2.estimate;
    let pass = ft.estimate < 0.05 && ft.estimate <= f2.estimate && ft.estimate < f0.estimate;
    let mut rep = VerificationReport::mc(
        "lem-ai",
        format!("{} g=a j={top:02}", cfg.params()),
        ft.estimate,
        format!("< 0.05, j=2 {:.6}, j=0 {:.6}", f2.estimate, f0.estimate),
        ft.ci,
        pass,
    );
    if !strict {
        rep = rep.with_note(format!("j=2 and j={top} tie at {} hits", ft.hits));
    }
    out.push(rep);
    out
}

fn commutation(cfg: &StabilityConfig) -> Vec<VerificationReport> {
    let claim = cfg.claim("lem-1-ac.i", "lem-2-ac.i");
    let samples = cfg.samples.min(10_000);
    let mut out = Vec::new();
    for j in [0, 2, 4] {
        let c = check_commutation(cfg, j, Generator::A, samples);
        out.push(VerificationReport::exact(
            &claim,
            format!("{} g=a j={j}", cfg.params()),
            format!("{}/{samples}", c.overall.hits),
            "0",
            c.overall.hits == 0,
        ));
        let c = check_commutation(cfg, j, Generator::T, samples);
        let bound = 0.5f64.powi(j as i32 + 1);
        out.push(
            VerificationReport::mc(
                &claim,
                format!("{} g=t j={j}", cfg.params()),
                c.overall.estimate,
                format!("{bound:.6}"),
                c.overall.ci,
                c.overall.estimate <= bound + c.overall.half_width() && c.outside_disagreements == 0,
            )
            .with_note(format!("{}/{} outside X(1..1)", c.outside_disagreements, c.outside)),
        );
    }
    out
}

/// Stabilization index for `s = 1` and `s = (q/p)^-1`; `ν(A_k) <= (p/q)^{k+1}` for `k <= 6`.
pub fn theta(cfg: &StabilityConfig) -> Vec<VerificationReport> {
    let (p, q) = (cfg.p, cfg.q);
    let mut out = Vec::new();
    for (name, s) in [("1", ExactRational::from_integer(1.into())), ("(q/p)^-1", ratio_pow(p, q, -1))] {
        let found = (0..100)
            .filter(|&i| {
                let y = YPoint::new(p, q, sample_seed(cfg.seed, "theta", i));
                theta_stabilization(&s, &y, 64, 8).is_some()
            })
            .count();
        out.push(VerificationReport::exact(
            "lem-theta",
            format!("{} s={name} cap=64", cfg.params()),
            format!("{found}/100"),
            ">= 99/100",
            found >= 99,
        ));
    }
    let samples = cfg.samples.min(20_000);
    for k in 0..=6 {
        let f = tail_set_estimate(p, q, k, samples, cfg.seed);
        let bound = (p as f64 / q as f64).powi(k as i32 + 1);
        out.push(VerificationReport::mc(
            "claim-a-zero",
            format!("{} k={k}", cfg.params()),
            f.estimate,
            format!("{bound:.6}"),
            f.ci,
            f.estimate <= bound + 3.0 * f.sigma_at(bound),
        ));
    }
    out
}

/// Random carry instances: the returned digits spell `q (q/p)^{-n-m} + sum z_l (q/p)^l`.
pub fn carry(cfg: &StabilityConfig, instances: usize) -> VerificationReport {
    let (p, q) = (cfg.p, cfg.q);
    let mut rng = rng_for(cfg, "claim-eq");
    let mut bad = 0;
    for _ in 0..instances {
        let n = rng.random_range(1..6usize);
        let m = rng.random_range(1..7usize);
        let mut z: Vec<u32> = (0..m).map(|_| rng.random_range(0..q)).collect();
        z[m - 1] = rng.random_range(0..q - p);
        let low = -((n + m) as i64) + 1;
        let value = |d: &[u32]| -> ExactRational {
            d.iter()
                .enumerate()
                .map(|(k, &x)| ExactRational::from_integer(x.into()) * ratio_pow(p, q, low + k as i64))
                .sum()
        };
        let target = ExactRational::from_integer(q.into()) * ratio_pow(p, q, low - 1) + value(&z);
        let ok = match claim_eq_digits(p, q, n, &z) {
            Ok(out) => out.iter().all(|&d| d < q) && value(&out) == target,
            Err(_) => false,
        };
        bad += !ok as usize;
    }
    VerificationReport::exact(
        "claim-eq",
        format!("{} instances={instances}", cfg.params()),
        format!("{bad}/{instances}"),
        "0",
        bad == 0,
    )
}

/// `ξ(a^{r n (pq)^k} D △ D)` for a fixed cylinder `D`, at `k = 4` against `k = 0`.
pub fn coinduced(cfg: &StabilityConfig) -> VerificationReport {
    let g = cfg.group();
    let d = ZCylinder {
        constraints: vec![
            (CosetRep::identity(g.presentation()), 1, 1),
            (g.coset_of(&GroupWord::t(1)), 0, 0),
            (g.coset_of(&GroupWord::t(-1)), 2, 1),
        ],
    };
    let samples = cfg.samples.min(5000);
    let f0 = coinduced_sym_diff(g, &d, &coinduced_exponent(g, 1, 0), samples, cfg.seed);
    let f4 = coinduced_sym_diff(g, &d, &coinduced_exponent(g, 1, 4), samples, cfg.seed);
    VerificationReport::mc(
        "lem-co-ind",
        format!("{} n=1 k=4", cfg.params()),
        f4.estimate,
        format!("< k=0 {:.6}", f0.estimate),
        f4.ci,
        f4.estimate < f0.estimate,
    )
}

/// Inserting a conjugate of the relator never changes the normal form; distinct `a`-powers stay distinct.
pub fn britton(cfg: &StabilityConfig, pairs: usize, relators: usize) -> Vec<VerificationReport> {
    let g = cfg.group();
    let mut rng = rng_for(cfg, "britton");
    let rel = g.relator();
    let mut bad = 0;
    for _ in 0..pairs {
        let lens: [usize; 3] = [rng.random_range(0..6), rng.random_range(0..6), rng.random_range(0..4)];
        let u = GroupWord::random(&mut rng, lens[0], 4);
        let v = GroupWord::random(&mut rng, lens[1], 4);
        let c = GroupWord::random(&mut rng, lens[2], 3);
        let r = if rng.random_bool(0.5) { rel.clone() } else { rel.inverse() };
        let plain = u.mul(&v);
        let inserted = u.mul(&r.conjugate(&c)).mul(&v);
        let control = plain.mul(&GroupWord::a(1));
        let same = g.britton_reduce(&plain) == g.britton_reduce(&inserted);
        let separated = g.britton_reduce(&plain) != g.britton_reduce(&control);
        bad += !(same && separated) as usize;
    }
    let rp = (cfg.r * cfg.p) as i64;
    let rq = (cfg.r * cfg.q) as i64;
    vec![
        VerificationReport::exact(
            "britton.sound",
            format!("{} pairs={pairs}", cfg.params()),
            format!("{bad}/{pairs}"),
            "0",
            bad == 0,
        ),
        index2_iso_check(&mut rng, rp, rq, relators),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::BS.iter().chain([Suite::Vaes].iter()) {
            assert_eq!(s.name().parse::<Suite>().unwrap(), *s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn missing_claims_lists_gaps() {
        let r = vec![VerificationReport::exact("claim-eq", "", "0", "0", true)];
        assert_eq!(missing_claims(&["claim-eq", "lem-theta"], &r), vec!["lem-theta".to_string()]);
    }

    #[test]
    fn small_runs_pass() {
        let cfg = StabilityConfig::new(2, 3, 1).unwrap().with_samples(2000);
        assert!(relations(&cfg, 3, 16).pass);
        assert!(carry(&cfg, 50).pass);
        for r in britton(&cfg, 50, 10) {
            assert!(r.pass, "{}", r.line());
        }
        let y = YPoint::new(2, 3, 1);
        let shape = Shape::uniform(16);
        let wrong = y.steps_from_base(&YWord::a(1, 2), shape).unwrap();
        assert_ne!(wrong, y.steps_from_base(&YWord::a(0, 2), shape).unwrap());
        assert_eq!(wrong, y.steps_from_base(&YWord::a(0, 3), shape).unwrap());
        let cyl = lemma_cylinders(&cfg, 2, 10);
        assert_eq!(cyl.len(), (3 + 9) * 6 * (1 + 2 + 4));
    }

    #[test]
    fn conjugate_relator_expands() {
        let g = StabilityConfig::new(1, 2, 2).unwrap().group();
        let w = g.relator().conjugate(&GroupWord::t(1));
        assert!(g.britton_reduce(&w).is_identity());
        assert!(!g.britton_reduce(&GroupWord::a(1)).is_identity());
    }
}
