//! Acceptance criteria 1 to 11, one PASS/FAIL line each. Exits non-zero if any criterion fails.

use num_bigint::BigInt;
use num_rational::BigRational;
use orbitlab::report::VerificationReport;
use orbitlab::stability::StabilityConfig;
use orbitlab::suites::{self, Suite};
use orbitlab::vaes::VaesConfig;
use std::time::{Duration, Instant};

const SAMPLES: u64 = 100_000;

fn cfg(p: u32, q: u32, r: u32) -> StabilityConfig {
    StabilityConfig::new(p, q, r).unwrap().with_samples(SAMPLES).with_seed(2024)
}

fn p1() -> StabilityConfig {
    cfg(1, 2, 2)
}

fn p2() -> StabilityConfig {
    cfg(2, 3, 1)
}

fn frac(n: i64, d: BigInt) -> String {
    BigRational::new(BigInt::from(n), d).to_string()
}

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn failures(reports: &[VerificationReport]) -> Vec<String> {
    reports.iter().filter(|r| !r.pass).map(|r| r.line()).collect()
}

fn all_pass(reports: &[VerificationReport], extra: &str) -> Outcome {
    let bad = failures(reports);
    Outcome {
        pass: bad.is_empty(),
        detail: if bad.is_empty() {
            format!("{} reports{extra}", reports.len())
        } else {
            bad.join(" | ")
        },
    }
}

fn c1() -> Outcome {
    let reports: Vec<_> = [cfg(1, 2, 2), cfg(2, 3, 1), cfg(3, 5, 2)]
        .iter()
        .map(|c| suites::relations(c, 100, 64))
        .collect();
    let values: Vec<_> = reports.iter().map(|r| r.value.clone()).collect();
    all_pass(&reports, &format!(", disagreements {}", values.join(" ")))
}

fn c2() -> Outcome {
    let reports = vec![suites::t_invariance(&p2()), suites::t_invariance(&cfg(3, 5, 2))];
    let sizes: Vec<_> = reports.iter().map(|r| r.params.clone()).collect();
    all_pass(&reports, &format!(", {}", sizes.join("; ")))
}

fn c3() -> Outcome {
    let mut reports = suites::run_bs(&p1(), Suite::Pushforward);
    reports.extend(suites::run_bs(&p2(), Suite::Pushforward));
    let q = BigInt::from(2);
    let mut bad = Vec::new();
    for d in 0..=2usize {
        let expect = frac(1, q.pow(((d + 1) * 2) as u32));
        let found = reports.iter().find(|r| r.claim == "lem-1-pi.i" && r.params.ends_with(&format!("d={d}")));
        if found.map(|r| r.value.as_str()) != Some(expect.as_str()) {
            bad.push(format!("d={d} expected {expect}"));
        }
    }
    let mut out = all_pass(&reports, "");
    if !bad.is_empty() {
        out.pass = false;
        out.detail = format!("{} {}", out.detail, bad.join(" "));
    }
    let pvals: Vec<_> = reports.iter().filter(|r| r.bound == "> 0.01").map(|r| r.value.clone()).collect();
    out.detail = format!("{}, p-values {}", out.detail, pvals.join(" "));
    out
}

fn exact_gap(reports: &[VerificationReport], c: &StabilityConfig, claim: &str, j_max: usize) -> Vec<String> {
    let alphabet = BigInt::from(c.p * c.q).pow(c.m as u32);
    let expect = frac(2, alphabet);
    let hits: Vec<_> = reports.iter().filter(|r| r.claim == claim).collect();
    let mut bad: Vec<String> = hits
        .iter()
        .filter(|r| r.value != expect || !r.pass)
        .map(|r| r.line())
        .collect();
    if hits.len() != j_max + 1 {
        bad.push(format!("{claim}: {} levels reported", hits.len()));
    }
    bad
}

fn c4() -> Outcome {
    let start = Instant::now();
    let a = suites::run_bs(&p1(), Suite::Gap);
    let b = suites::run_bs(&p2(), Suite::Gap);
    let elapsed = start.elapsed();
    let mut bad = exact_gap(&a, &p1(), "lem-1-ac.ii", 8);
    bad.extend(exact_gap(&b, &p2(), "lem-2-ac.ii", 8));
    let fast = elapsed < Duration::from_secs(120);
    Outcome {
        pass: bad.is_empty() && fast && a[0].value == "1/2" && b[0].value == "1/3",
        detail: format!("p=1 {}, p=2 {}, j<=8 in {:.1?} {}", a[0].value, b[0].value, elapsed, bad.join(" | ")),
    }
}

fn decay_value<'a>(reports: &'a [VerificationReport], g: &str) -> Vec<&'a VerificationReport> {
    reports.iter().filter(|r| r.params.contains(&format!("g={g} "))).collect()
}

fn c5() -> Outcome {
    let a = suites::run_bs(&p1(), Suite::Decay);
    let b = suites::run_bs(&p2(), Suite::Decay);
    let t_ok = decay_value(&a, "t").len() == 11 && decay_value(&b, "t").len() == 11;
    let a1 = decay_value(&a, "a")[0];
    let a2 = decay_value(&b, "a")[0];
    let strict = a1.notes.is_empty();
    let mut out = all_pass(&[a.clone(), b.clone()].concat(), "");
    out.pass &= t_ok && strict;
    out.detail = format!(
        "{}; a-decay p=1 j=10 {} vs {}; p=2 j=10 {} vs {} {}",
        out.detail,
        a1.value,
        a1.bound,
        a2.value,
        a2.bound,
        a2.notes.join(" ")
    );
    out
}

fn c6() -> Outcome {
    let mut reports = suites::run_bs(&p1(), Suite::Commutation);
    reports.extend(suites::run_bs(&p2(), Suite::Commutation));
    all_pass(&reports, " (a exact over 10^4, t within 2^-(j+1), none outside X(1..1))")
}

fn c7() -> Outcome {
    let reports = suites::theta(&p2());
    let found: Vec<_> = reports.iter().filter(|r| r.claim == "lem-theta").map(|r| r.value.clone()).collect();
    all_pass(&reports, &format!(", stabilized {}", found.join(" ")))
}

fn c8() -> Outcome {
    let reports: Vec<_> = [cfg(1, 2, 2), cfg(2, 3, 1), cfg(3, 5, 2)]
        .iter()
        .map(|c| suites::carry(c, 1000))
        .collect();
    all_pass(&reports, "")
}

fn c9() -> Outcome {
    let a = suites::run_bs(&p1(), Suite::HStable);
    let b = suites::run_bs(&p2(), Suite::HStable);
    let mut bad = exact_gap(&a, &p1(), "thm-h-stable.3", 8);
    bad.extend(exact_gap(&b, &p2(), "thm-h-stable.3", 8));
    let mut out = all_pass(&[a.clone(), b].concat(), "");
    out.pass &= bad.is_empty();
    let comm: Vec<_> = a.iter().filter(|r| r.claim == "thm-h-stable.2").map(|r| r.params.clone()).collect();
    out.detail = format!("{} {}; {}", out.detail, bad.join(" | "), comm.join("; "));
    out
}

fn c10() -> Outcome {
    let start = Instant::now();
    let mut c = VaesConfig::new(vec![2, 3, 5, 7, 11]).unwrap();
    c.samples = SAMPLES;
    c.seed = 2024;
    let reports = suites::run_vaes(&c);
    let elapsed = start.elapsed();
    let gaps: Vec<_> = reports.iter().filter(|r| r.claim == "thm-s-v.3").map(|r| r.value.clone()).collect();
    let expect: Vec<_> = [2i64, 3, 5, 7, 11]
        .iter()
        .map(|&p| {
            let order = p * p * p;
            frac(2 * ((order + 2) / 3), BigInt::from(order))
        })
        .collect();
    let mut out = all_pass(&reports, &format!(", gaps {} in {elapsed:.1?}", gaps.join(" ")));
    out.pass &= gaps == expect && elapsed < Duration::from_secs(120);
    out
}

fn c11(start: Instant) -> Outcome {
    let mut reports = Vec::new();
    for c in [cfg(1, 2, 2), cfg(2, 3, 1), cfg(3, 5, 2)] {
        reports.extend(suites::run_bs(&c, Suite::Britton));
    }
    let total = start.elapsed();
    let mut out = all_pass(&reports, &format!(", suite wall clock {total:.1?}"));
    out.pass &= total < Duration::from_secs(300);
    out
}

fn main() {
    let start = Instant::now();
    let criteria: [Criterion; 10] = [
        ("relations exact", c1),
        ("t preserves measure", c2),
        ("pi push-forward", c3),
        ("a.c. gap exact", c4),
        ("a.i. decay", c5),
        ("commutation", c6),
        ("theta stabilization and A_k", c7),
        ("carry oracle", c8),
        ("W1 suite", c9),
        ("Vaes suite", c10),
    ];
    let mut all = true;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let o = f();
        all &= o.pass;
        println!(
            "criterion {:>2} {}: {} [{:.1?}] {}",
            i + 1,
            if o.pass { "PASS" } else { "FAIL" },
            name,
            t.elapsed(),
            o.detail
        );
    }
    let t = Instant::now();
    let o = c11(start);
    all &= o.pass;
    println!(
        "criterion 11 {}: Britton soundness [{:.1?}] {} (total {:.1?})",
        if o.pass { "PASS" } else { "FAIL" },
        t.elapsed(),
        o.detail,
        start.elapsed()
    );
    if !all {
        std::process::exit(1);
    }
}
