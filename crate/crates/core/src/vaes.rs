//! Desk-scale model of `G = K ⋊ Λ` with `H_n = (Z/p_n)^3`, `Λ = SL(3, Z)` acting through its
//! reductions, the greedy sets `I_n` and the full-group elements `U_n`.

use crate::exactnum::{ExactError, ExactRational, Result};
use crate::report::VerificationReport;
use crate::spaces::{SpaceSpec, TapePoint};
use crate::stats::{chi_square_uniform, sample_seed, Frequency};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::collections::{HashSet, VecDeque};

/// Element of `H_n`.
pub type Triple = [u32; 3];

/// 3×3 matrix over `Z/p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Mat3 {
    pub p: u32,
    pub m: [[u32; 3]; 3],
}

fn inv_mod(a: u32, p: u32) -> u32 {
    let (mut t, mut new_t, mut r, mut new_r) = (0i64, 1i64, p as i64, a as i64);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    assert_eq!(r, 1, "{a} is not invertible mod {p}");
    t.rem_euclid(p as i64) as u32
}

impl Mat3 {
    pub fn identity(p: u32) -> Self {
        let mut m = [[0; 3]; 3];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1 % p;
        }
        Mat3 { p, m }
    }

    /// `I + s e_{ij}` for `i != j`.
    pub fn elementary(p: u32, i: usize, j: usize, s: i64) -> Self {
        assert_ne!(i, j);
        let mut e = Mat3::identity(p);
        e.m[i][j] = s.rem_euclid(p as i64) as u32;
        e
    }

    pub fn mul(&self, other: &Mat3) -> Mat3 {
        let p = self.p as u64;
        let mut m = [[0; 3]; 3];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                let s: u64 = (0..3).map(|k| self.m[i][k] as u64 * other.m[k][j] as u64).sum();
                *cell = (s % p) as u32;
            }
        }
        Mat3 { p: self.p, m }
    }

    pub fn det(&self) -> u32 {
        let p = self.p as i64;
        let a = |i: usize, j: usize| self.m[i][j] as i64;
        let d = a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) - a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0))
            + a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
        d.rem_euclid(p) as u32
    }

    /// Adjugate over the determinant.
    pub fn inverse(&self) -> Mat3 {
        let p = self.p as i64;
        let a = |i: usize, j: usize| self.m[i % 3][j % 3] as i64;
        let di = inv_mod(self.det(), self.p) as i64;
        let mut m = [[0; 3]; 3];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                let c = a(j + 1, i + 1) * a(j + 2, i + 2) - a(j + 1, i + 2) * a(j + 2, i + 1);
                *cell = (c.rem_euclid(p) * di).rem_euclid(p) as u32;
            }
        }
        Mat3 { p: self.p, m }
    }

    pub fn apply(&self, v: &Triple) -> Triple {
        let p = self.p as u64;
        let mut out = [0; 3];
        for (i, o) in out.iter_mut().enumerate() {
            *o = ((0..3).map(|k| self.m[i][k] as u64 * v[k] as u64).sum::<u64>() % p) as u32;
        }
        out
    }

    /// Uniform on `SL(3, F_p)`: a uniform invertible matrix with its first row scaled by `det^-1`.
    pub fn random_sl3<R: Rng + ?Sized>(rng: &mut R, p: u32) -> Mat3 {
        loop {
            let mut m = [[0; 3]; 3];
            for row in m.iter_mut() {
                for cell in row.iter_mut() {
                    *cell = rng.random_range(0..p);
                }
            }
            let a = Mat3 { p, m };
            let d = a.det();
            if d == 0 {
                continue;
            }
            let s = inv_mod(d, p) as u64;
            let mut b = a;
            for cell in b.m[0].iter_mut() {
                *cell = (*cell as u64 * s % p as u64) as u32;
            }
            return b;
        }
    }
}

/// `|SL(3, F_p)| = p^3 (p^2 - 1)(p^3 - 1)`.
pub fn sl3_order(p: u64) -> u64 {
    p.pow(3) * (p * p - 1) * (p.pow(3) - 1)
}

/// Size of the subgroup of `GL(3, F_p)` generated by the elementary matrices `E_ij(1)`.
pub fn elementary_closure_size(p: u32) -> usize {
    let gens: Vec<Mat3> = (0..3)
        .flat_map(|i| (0..3).filter(move |&j| j != i).map(move |j| Mat3::elementary(p, i, j, 1)))
        .collect();
    let mut seen = HashSet::from([Mat3::identity(p)]);
    let mut queue = VecDeque::from([Mat3::identity(p)]);
    while let Some(g) = queue.pop_front() {
        for e in &gens {
            let h = e.mul(&g);
            if seen.insert(h) {
                queue.push_back(h);
            }
        }
    }
    seen.len()
}

/// Element of `Λ = SL(3, Z)` as a product of elementary matrices `E_ij(s)`, leftmost outermost.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LambdaWord(pub Vec<(usize, usize, i64)>);

impl LambdaWord {
    pub fn generator(i: usize, j: usize, s: i64) -> Self {
        LambdaWord(vec![(i, j, s)])
    }

    pub fn mul(&self, other: &LambdaWord) -> LambdaWord {
        LambdaWord(self.0.iter().chain(&other.0).copied().collect())
    }

    pub fn inverse(&self) -> LambdaWord {
        LambdaWord(self.0.iter().rev().map(|&(i, j, s)| (i, j, -s)).collect())
    }

    pub fn reduce(&self, p: u32) -> Mat3 {
        self.0
            .iter()
            .fold(Mat3::identity(p), |acc, &(i, j, s)| acc.mul(&Mat3::elementary(p, i, j, s)))
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R, len: usize) -> LambdaWord {
        LambdaWord(
            (0..len)
                .map(|_| {
                    let i = rng.random_range(0..3);
                    let j = (i + rng.random_range(1..3)) % 3;
                    let s = if rng.random_bool(0.5) { 1 } else { -1 };
                    (i, j, s)
                })
                .collect(),
        )
    }
}

/// Generators of `G0 = K ⋊ Λ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VaesGen {
    Lambda(LambdaWord),
    /// `h ∈ H_m`.
    H { m: usize, h: Triple },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VaesConfig {
    pub primes: Vec<u32>,
    pub samples: u64,
    pub seed: u64,
}

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

impl VaesConfig {
    pub fn new(primes: Vec<u32>) -> Result<Self> {
        let distinct: HashSet<_> = primes.iter().collect();
        if primes.is_empty() || distinct.len() != primes.len() || !primes.iter().all(|&p| is_prime(p)) {
            return Err(ExactError::InvalidParameters(format!("need distinct primes, got {primes:?}")));
        }
        Ok(VaesConfig {
            primes,
            samples: 100_000,
            seed: 0,
        })
    }

    pub fn n_max(&self) -> usize {
        self.primes.len() - 1
    }

    pub fn order(&self, n: usize) -> u32 {
        self.primes[n].pow(3)
    }

    /// `h_n`: the first nonzero triple in lexicographic order.
    pub fn h(&self, _n: usize) -> Triple {
        [0, 0, 1]
    }

    pub fn params(&self) -> String {
        format!("primes={:?}", self.primes)
    }
}

fn encode(v: &Triple, p: u32) -> usize {
    ((v[0] * p + v[1]) * p + v[2]) as usize
}

fn decode(i: usize, p: u32) -> Triple {
    let i = i as u32;
    [i / (p * p), (i / p) % p, i % p]
}

fn add(a: &Triple, b: &Triple, p: u32) -> Triple {
    [(a[0] + b[0]) % p, (a[1] + b[1]) % p, (a[2] + b[2]) % p]
}

fn neg(a: &Triple, p: u32) -> Triple {
    [(p - a[0]) % p, (p - a[1]) % p, (p - a[2]) % p]
}

/// Greedy `I ⊂ Z/size` with `(I + h) ∩ I = ∅` and `|I| = ⌈size/3⌉`, elements taken in
/// increasing order among those outside `L - h`, `L`, `L + h`.
pub fn greedy_set(size: usize, h: usize) -> Vec<usize> {
    assert!(!h.is_multiple_of(size) && size >= 2);
    let target = size.div_ceil(3);
    let mut blocked = vec![false; size];
    let mut out = Vec::with_capacity(target);
    let mut next = 0;
    while out.len() < target {
        while blocked[next] {
            next += 1;
        }
        out.push(next);
        for d in [0, h, size - h % size] {
            blocked[(next + d) % size] = true;
        }
    }
    out
}

/// `I_n` for `H = (Z/p)^3`, by the same rule with translation by `h` in the group.
pub fn build_i_n(p: u32, h: &Triple) -> Vec<Triple> {
    assert_ne!(*h, [0, 0, 0]);
    let size = p.pow(3) as usize;
    let target = size.div_ceil(3);
    let mut blocked = vec![false; size];
    let mut out = Vec::with_capacity(target);
    let mut next = 0;
    while out.len() < target {
        while blocked[next] {
            next += 1;
        }
        let l = decode(next, p);
        out.push(l);
        for v in [l, add(&l, h, p), add(&l, &neg(h, p), p)] {
            blocked[encode(&v, p)] = true;
        }
    }
    out
}

/// Truncated point of `X = lim Λ/Λ_n`: one `SL(3, F_{p_n})` matrix per level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaCosetPoint {
    pub mats: Vec<Mat3>,
}

impl LambdaCosetPoint {
    pub fn sample(cfg: &VaesConfig, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(sample_seed(seed, "vaes-X", 0));
        LambdaCosetPoint {
            mats: cfg.primes.iter().map(|&p| Mat3::random_sl3(&mut rng, p)).collect(),
        }
    }

    pub fn identity(cfg: &VaesConfig) -> Self {
        LambdaCosetPoint {
            mats: cfg.primes.iter().map(|&p| Mat3::identity(p)).collect(),
        }
    }
}

/// Point of `Y = ∏ H_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VaesYPoint {
    pub coords: Vec<Triple>,
}

impl VaesYPoint {
    /// Coordinates read from a tape over `∏ H_n`, one digit per level.
    pub fn sample(cfg: &VaesConfig, seed: u64) -> Self {
        let sizes: Vec<u32> = (0..cfg.primes.len()).map(|n| cfg.order(n)).collect();
        let tape = TapePoint::new(&SpaceSpec::product("H", &sizes), seed);
        VaesYPoint {
            coords: cfg
                .primes
                .iter()
                .enumerate()
                .map(|(n, &p)| decode(tape.digit(n, 0) as usize, p))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VaesPoint {
    pub x: LambdaCosetPoint,
    pub y: VaesYPoint,
}

impl VaesPoint {
    pub fn sample(cfg: &VaesConfig, seed: u64) -> Self {
        VaesPoint {
            x: LambdaCosetPoint::sample(cfg, seed),
            y: VaesYPoint::sample(cfg, seed),
        }
    }
}

/// Left multiplication on each level; `K` acts trivially.
pub fn act_vaes_x(g: &VaesGen, x: &LambdaCosetPoint) -> LambdaCosetPoint {
    match g {
        VaesGen::Lambda(w) => LambdaCosetPoint {
            mats: x.mats.iter().map(|m| w.reduce(m.p).mul(m)).collect(),
        },
        VaesGen::H { .. } => x.clone(),
    }
}

/// `Λ` acts diagonally by automorphisms, `h ∈ H_m` translates coordinate `m`.
pub fn act_vaes_y(cfg: &VaesConfig, g: &VaesGen, y: &VaesYPoint) -> VaesYPoint {
    match g {
        VaesGen::Lambda(w) => VaesYPoint {
            coords: y
                .coords
                .iter()
                .zip(&cfg.primes)
                .map(|(v, &p)| w.reduce(p).apply(v))
                .collect(),
        },
        VaesGen::H { m, h } => {
            let mut out = y.clone();
            out.coords[*m] = add(&out.coords[*m], h, cfg.primes[*m]);
            out
        }
    }
}

pub fn act_vaes(cfg: &VaesConfig, g: &VaesGen, w: &VaesPoint) -> VaesPoint {
    VaesPoint {
        x: act_vaes_x(g, &w.x),
        y: act_vaes_y(cfg, g, &w.y),
    }
}

/// `π(w)_n = λ^-1 y_n` for the level-`n` matrix `λ` of `x`.
pub fn pi_vaes(x: &LambdaCosetPoint, y: &VaesYPoint, n: usize) -> Triple {
    x.mats[n].inverse().apply(&y.coords[n])
}

/// `U_n = λ h_n λ^-1` on the level-`n` coset of `λ`: adds `λ h_n` to `y_n`.
pub fn u_n_apply(cfg: &VaesConfig, n: usize, w: &VaesPoint) -> VaesPoint {
    let k = w.x.mats[n].apply(&cfg.h(n));
    act_vaes(cfg, &VaesGen::H { m: n, h: k }, w)
}

pub fn in_b_n(n: usize, i_n: &HashSet<Triple>, w: &VaesPoint) -> bool {
    i_n.contains(&pi_vaes(&w.x, &w.y, n))
}

fn i_set(cfg: &VaesConfig, n: usize) -> HashSet<Triple> {
    build_i_n(cfg.primes[n], &cfg.h(n)).into_iter().collect()
}

/// `|h I △ I| / |H| = 2⌈|H|/3⌉/|H| >= 2/3`, by enumeration of `H`.
pub fn check_gap_exact(cfg: &VaesConfig, n: usize) -> VerificationReport {
    let p = cfg.primes[n];
    let h = cfg.h(n);
    let i_n = i_set(cfg, n);
    let shifted: HashSet<Triple> = i_n.iter().map(|v| add(v, &h, p)).collect();
    let sym = i_n.symmetric_difference(&shifted).count();
    let order = cfg.order(n) as usize;
    let ratio = ExactRational::new(BigInt::from(sym), BigInt::from(order));
    let expect = ExactRational::new(BigInt::from(2 * order.div_ceil(3)), BigInt::from(order));
    let pass = i_n.is_disjoint(&shifted) && ratio == expect && ratio >= ExactRational::new(2.into(), 3.into());
    VerificationReport::exact("thm-s-v.3", format!("p={p} n={n}"), ratio.to_string(), expect.to_string(), pass)
}

/// `U_n` commutes with random `Λ`-words and with `H_m` for `m < n`, on sampled points.
pub fn check_u_commutation(cfg: &VaesConfig, words: usize, points: u64) -> VerificationReport {
    let mut rng = ChaCha8Rng::seed_from_u64(sample_seed(cfg.seed, "vaes-words", 0));
    let mut gens: Vec<VaesGen> = (0..words).map(|_| VaesGen::Lambda(LambdaWord::random(&mut rng, 6))).collect();
    let mut bad = 0u64;
    let mut checked = 0u64;
    for n in 0..=cfg.n_max() {
        for m in 0..n {
            let p = cfg.primes[m];
            gens.push(VaesGen::H {
                m,
                h: [rng.random_range(0..p), rng.random_range(0..p), 1],
            });
        }
        for (k, g) in gens.iter().enumerate() {
            if let VaesGen::H { m, .. } = g {
                if *m >= n {
                    continue;
                }
            }
            for i in 0..points {
                let w = VaesPoint::sample(cfg, sample_seed(cfg.seed, "vaes-commute", (k as u64) << 20 | i));
                let lhs = u_n_apply(cfg, n, &act_vaes(cfg, g, &w));
                let rhs = act_vaes(cfg, g, &u_n_apply(cfg, n, &w));
                checked += 1;
                bad += (lhs != rhs) as u64;
            }
        }
        gens.truncate(words);
    }
    VerificationReport::exact("thm-s-v.2", cfg.params(), format!("{bad}/{checked}"), "0", bad == 0)
}

/// `π(λx, λy) = π(x, y)` at every level for random `λ`.
pub fn check_pi_invariance(cfg: &VaesConfig, words: usize) -> VerificationReport {
    let mut rng = ChaCha8Rng::seed_from_u64(sample_seed(cfg.seed, "vaes-invariance", 0));
    let mut bad = 0;
    for i in 0..words {
        let g = VaesGen::Lambda(LambdaWord::random(&mut rng, 8));
        let w = VaesPoint::sample(cfg, sample_seed(cfg.seed, "vaes-pi", i as u64));
        let moved = act_vaes(cfg, &g, &w);
        bad += (0..=cfg.n_max())
            .filter(|&n| pi_vaes(&w.x, &w.y, n) != pi_vaes(&moved.x, &moved.y, n))
            .count();
    }
    VerificationReport::exact("thm-s-v.1", format!("{} lambda-invariance", cfg.params()), format!("{bad}/{words}"), "0", bad == 0)
}

/// Chi-square test of `π(.)_n` against the uniform law on `H_n`.
pub fn chi_square_pi_vaes(cfg: &VaesConfig, n: usize, samples: u64) -> (f64, f64) {
    let p = cfg.primes[n];
    let cells: Vec<usize> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let w = VaesPoint::sample(cfg, sample_seed(cfg.seed, "vaes-chi", i));
            encode(&pi_vaes(&w.x, &w.y, n), p)
        })
        .collect();
    let mut counts = vec![0u64; cfg.order(n) as usize];
    for c in cells {
        counts[c] += 1;
    }
    chi_square_uniform(&counts)
}

/// Monte Carlo `ω(g B_n △ B_n)`.
pub fn estimate_b_sym_diff(cfg: &VaesConfig, n: usize, g: &VaesGen, samples: u64) -> Frequency {
    let i_n = i_set(cfg, n);
    let inverse = match g {
        VaesGen::Lambda(w) => VaesGen::Lambda(w.inverse()),
        VaesGen::H { m, h } => VaesGen::H {
            m: *m,
            h: neg(h, cfg.primes[*m]),
        },
    };
    let label = format!("vaes-symdiff:{n}:{g:?}");
    let hits = (0..samples)
        .into_par_iter()
        .filter(|&i| {
            let w = VaesPoint::sample(cfg, sample_seed(cfg.seed, &label, i));
            in_b_n(n, &i_n, &w) != in_b_n(n, &i_n, &act_vaes(cfg, &inverse, &w))
        })
        .count() as u64;
    Frequency::new(hits, samples)
}

/// Exact gap, commutation, invariance and decay of `B_n` under a fixed generator of `H_0`.
pub fn vaes_suite(cfg: &VaesConfig, words: usize, samples: u64) -> Vec<VerificationReport> {
    let mut out: Vec<_> = (0..=cfg.n_max()).map(|n| check_gap_exact(cfg, n)).collect();
    out.push(check_u_commutation(cfg, words, 10));
    out.push(check_pi_invariance(cfg, words));
    let sizes: Vec<String> = [2u32, 3]
        .iter()
        .map(|&p| format!("{}/{}", elementary_closure_size(p), sl3_order(p as u64)))
        .collect();
    out.push(VerificationReport::exact(
        "thm-s-v.1",
        "reduction onto SL3(F_p) p=2,3",
        sizes.join(" "),
        "equal",
        [2u32, 3].iter().all(|&p| elementary_closure_size(p) as u64 == sl3_order(p as u64)),
    ));
    let g = VaesGen::H { m: 0, h: [0, 0, 1] };
    let last = cfg.n_max();
    let f0 = estimate_b_sym_diff(cfg, 0, &g, samples);
    let fl = estimate_b_sym_diff(cfg, last, &g, samples);
    out.push(VerificationReport::mc(
        "thm-s-v.1",
        format!("{} g=H0:e3 n={last} vs n=0", cfg.params()),
        fl.estimate,
        format!("{:.6}", f0.estimate),
        fl.ci,
        fl.estimate < f0.estimate,
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> VaesConfig {
        VaesConfig::new(vec![2, 3, 5, 7, 11]).unwrap()
    }

    #[test]
    fn config_rejects_repeats_and_composites() {
        assert!(VaesConfig::new(vec![2, 2]).is_err());
        assert!(VaesConfig::new(vec![2, 4]).is_err());
        assert!(VaesConfig::new(vec![]).is_err());
    }

    #[test]
    fn matrix_inverse_and_det() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for p in [2, 3, 5, 7, 11] {
            for _ in 0..50 {
                let a = Mat3::random_sl3(&mut rng, p);
                assert_eq!(a.det(), 1);
                assert_eq!(a.mul(&a.inverse()), Mat3::identity(p));
                let e = Mat3::elementary(p, 0, 1, 1);
                assert_eq!(e.mul(&a).det(), 1);
            }
        }
    }

    #[test]
    fn elementary_matrices_generate_sl3() {
        for p in [2u32, 3] {
            assert_eq!(elementary_closure_size(p) as u64, sl3_order(p as u64));
        }
        assert_eq!(sl3_order(2), 168);
    }

    #[test]
    fn sl3_sampling_is_uniform_on_small_group() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let mut counts = std::collections::HashMap::new();
        for _ in 0..168 * 60 {
            *counts.entry(Mat3::random_sl3(&mut rng, 2)).or_insert(0u64) += 1;
        }
        assert_eq!(counts.len(), 168);
        let cells: Vec<u64> = counts.into_values().collect();
        assert!(chi_square_uniform(&cells).1 > 0.001);
    }

    #[test]
    fn greedy_examples() {
        let i = build_i_n(2, &[0, 0, 1]);
        assert_eq!(i.len(), 3);
        assert_eq!(build_i_n(5, &[0, 0, 1]).len(), 42);
        assert_eq!(greedy_set(2, 1), vec![0]);
        for p in [2, 3, 5] {
            for code in 1..p * p * p {
                let h = decode(code as usize, p);
                let i: HashSet<Triple> = build_i_n(p, &h).into_iter().collect();
                assert!(i.iter().all(|v| !i.contains(&add(v, &h, p))));
            }
        }
    }

    #[test]
    fn gap_values() {
        let c = cfg();
        let values: Vec<String> = (0..5).map(|n| check_gap_exact(&c, n).value).collect();
        assert_eq!(values, ["3/4", "2/3", "84/125", "230/343", "888/1331"]);
    }

    #[test]
    fn actions_and_pi_basics() {
        let c = cfg();
        let w = VaesPoint::sample(&c, 3);
        let id = LambdaCosetPoint::identity(&c);
        for n in 0..5 {
            assert_eq!(pi_vaes(&id, &w.y, n), w.y.coords[n]);
        }
        let e = VaesGen::Lambda(LambdaWord::generator(0, 1, 1));
        let moved = act_vaes_x(&e, &w.x);
        assert!(moved.mats.iter().all(|m| m.det() == 1));
        let h = VaesGen::H { m: 2, h: [1, 2, 3] };
        assert_eq!(act_vaes_x(&h, &w.x), w.x);
        let hy = act_vaes_y(&c, &h, &w.y);
        assert_eq!(hy.coords[..2], w.y.coords[..2]);
        let wu = u_n_apply(&c, 1, &VaesPoint { x: id, y: w.y.clone() });
        assert_eq!(wu.y.coords[1], add(&w.y.coords[1], &c.h(1), 3));
    }

    #[test]
    fn semidirect_law_on_samples() {
        let c = cfg();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for i in 0..50 {
            let lam = LambdaWord::random(&mut rng, 5);
            let h = [1, 0, 2];
            let y = VaesYPoint::sample(&c, i);
            let lhs = act_vaes_y(&c, &VaesGen::H { m: 2, h: lam.reduce(5).apply(&h) }, &y);
            let rhs = act_vaes_y(
                &c,
                &VaesGen::Lambda(lam.clone()),
                &act_vaes_y(&c, &VaesGen::H { m: 2, h }, &act_vaes_y(&c, &VaesGen::Lambda(lam.inverse()), &y)),
            );
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn b_flip_and_suite() {
        let c = cfg();
        for n in 0..5 {
            let i_n = i_set(&c, n);
            for s in 0..200 {
                let w = VaesPoint::sample(&c, s);
                if in_b_n(n, &i_n, &w) {
                    assert!(!in_b_n(n, &i_n, &u_n_apply(&c, n, &w)));
                }
            }
        }
        for rep in vaes_suite(&c, 100, 4000) {
            assert!(rep.pass, "{}", rep.line());
        }
        let lam = VaesGen::Lambda(LambdaWord::generator(1, 2, 1));
        assert_eq!(estimate_b_sym_diff(&c, 2, &lam, 500).hits, 0);
    }

    #[test]
    fn pi_is_uniform() {
        assert!(chi_square_pi_vaes(&cfg(), 1, 20_000).1 > 0.001);
    }
}
