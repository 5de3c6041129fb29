//! The factor maps `pi`, `tau`, the sets `B_j`, `A_j` and the full-group elements `U_j`, `V_j`,
//! with exact and Monte Carlo checks.

use crate::actions::{act_w, act_w1, Shape, W1Point, WPoint, YPoint};
use crate::bsgroup::{AffineElement, BsGroup, GroupWord};
use crate::exactnum::{coprime, pow_u, ExactError, ExactRational, Result};
use crate::report::VerificationReport;
use crate::spaces::{CylinderSet, SpaceSpec, XPoint};
use crate::stats::{chi_square_uniform, sample_seed, Frequency};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

/// Parameters of one stability configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StabilityConfig {
    pub p: u32,
    pub q: u32,
    pub r: u32,
    /// Least `M >= 1` with `(pq)^M > r`.
    pub m: usize,
    pub j_max: usize,
    pub samples: u64,
    pub seed: u64,
}

impl StabilityConfig {
    pub fn new(p: u32, q: u32, r: u32) -> Result<Self> {
        if p == 0 || p >= q || !coprime(p, q) || r == 0 || r * p < 2 {
            return Err(ExactError::InvalidParameters(format!(
                "need coprime 1 <= p < q and rp >= 2, got p={p} q={q} r={r}"
            )));
        }
        let base = (p * q) as u64;
        let mut m = 1;
        while base.pow(m as u32) <= r as u64 {
            m += 1;
        }
        Ok(StabilityConfig {
            p,
            q,
            r,
            m,
            j_max: 8,
            samples: 100_000,
            seed: 0,
        })
    }

    pub fn with_samples(mut self, samples: u64) -> Self {
        self.samples = samples;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_j_max(mut self, j_max: usize) -> Self {
        self.j_max = j_max;
        self
    }

    pub fn group(&self) -> BsGroup {
        BsGroup::new(self.r, self.p, self.q)
    }

    /// Digit base of `Y0`; equals `q` when `p = 1`.
    pub fn base(&self) -> u32 {
        self.p * self.q
    }

    /// Size of the alphabet of `S`.
    pub fn alphabet(&self) -> u64 {
        (self.base() as u64).pow(self.m as u32)
    }

    /// First `Y0` position read by `pi(.)_j`.
    pub fn window_start(&self, j: usize) -> usize {
        if self.p == 1 {
            j * self.m
        } else {
            d_j(j)
        }
    }

    /// `(pq)^-M`, the measure of `B_j` and `A_j`.
    pub fn set_measure(&self) -> ExactRational {
        ExactRational::new(BigInt::one(), BigInt::from(self.alphabet()))
    }

    pub fn params(&self) -> String {
        format!("p={} q={} r={} M={}", self.p, self.q, self.r, self.m)
    }

    /// `p1` for `p = 1`, `p2` otherwise.
    pub fn claim(&self, p1: &str, p2: &str) -> String {
        if self.p == 1 { p1 } else { p2 }.to_string()
    }
}

/// `d_j = j + 2^{j+1}`.
pub fn d_j(j: usize) -> usize {
    j + (1 << (j + 1))
}

/// `x_0 + 2 x_1 + ... + 2^j x_j`.
pub fn x_level(x: &XPoint, j: usize) -> u64 {
    x.bits(j + 1).iter().rev().fold(0, |acc, &b| 2 * acc + b as u64)
}

fn window_value(digits: &[u32], base: u32) -> u64 {
    digits.iter().rev().fold(0, |acc, &d| acc * base as u64 + d as u64)
}

fn value_digits(mut v: u64, base: u32, len: usize) -> Vec<u32> {
    (0..len)
        .map(|_| {
            let d = (v % base as u64) as u32;
            v /= base as u64;
            d
        })
        .collect()
}

/// `pi(lambda)_j`: the `M` digits of `Y0` from `window_start(j)` on, read on `t^-l lambda`.
pub fn pi_map(cfg: &StabilityConfig, x: &XPoint, y: &YPoint, j: usize) -> Result<u64> {
    let l = x_level(x, j) as i64;
    let moved = y.acted(&AffineElement::new(cfg.p, cfg.q, ExactRational::zero(), -l));
    let digits = moved.y0_digits(cfg.window_start(j), cfg.m)?;
    Ok(window_value(&digits, cfg.base()))
}

/// `tau(y)_j`: the `M` digits of `Y0` from `jM` on.
pub fn tau_map(cfg: &StabilityConfig, y: &YPoint, j: usize) -> Result<u64> {
    let digits = y.y0_digits(j * cfg.m, cfg.m)?;
    Ok(window_value(&digits, cfg.base()))
}

pub fn in_b(cfg: &StabilityConfig, j: usize, w: &WPoint) -> bool {
    pi_map(cfg, &w.x, &w.y, j).expect("pi is defined on every point") == 0
}

fn bits_of(l: u64, len: usize) -> Vec<u32> {
    (0..len).map(|i| ((l >> i) & 1) as u32).collect()
}

/// `X` and `Y` families side by side: `X`, `Y-`, `Y0`, `Y+`.
pub fn xy_spec(p: u32, q: u32) -> SpaceSpec {
    let mut families = SpaceSpec::x().families;
    families.extend(SpaceSpec::y(p, q).families);
    SpaceSpec::new(families)
}

const XY_X: usize = 0;
const XY_Y0: usize = 2;

/// `X(x_bits) x t^shift { y : Y0 digits from start equal digits }`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BPiece {
    pub x_bits: Vec<u32>,
    pub shift: u64,
    pub start: usize,
    pub digits: Vec<u32>,
}

/// Two pieces whose `Y` parts are moved by different powers of `t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("pieces with different shifts and compatible X parts")]
pub struct Undecided;

impl BPiece {
    /// Product of `2^-|x_bits|` and the cylinder measure; `t` preserves the latter.
    pub fn measure(&self, base: u32) -> ExactRational {
        let den = BigInt::from(2u32).pow(self.x_bits.len() as u32) * BigInt::from((*pow_u(base, self.digits.len())).clone());
        ExactRational::new(BigInt::one(), den)
    }

    pub fn contains(&self, w: &WPoint) -> bool {
        if w.x.bits(self.x_bits.len()) != self.x_bits {
            return false;
        }
        let (p, q) = (w.y.p(), w.y.q());
        let back = w.y.acted(&AffineElement::new(p, q, ExactRational::zero(), -(self.shift as i64)));
        back.y0_digits(self.start, self.digits.len()).expect("window") == self.digits
    }

    pub fn intersect(&self, other: &BPiece) -> std::result::Result<Option<BPiece>, Undecided> {
        let n = self.x_bits.len().min(other.x_bits.len());
        if self.x_bits[..n] != other.x_bits[..n] {
            return Ok(None);
        }
        if self.shift != other.shift || self.start != other.start || self.digits.len() != other.digits.len() {
            return Err(Undecided);
        }
        if self.digits != other.digits {
            return Ok(None);
        }
        let longer = if self.x_bits.len() >= other.x_bits.len() { self } else { other };
        Ok(Some(longer.clone()))
    }

    /// For `p = 1` the `Y` part is a plain cylinder: `t^-s` reads `y_{n+s}` at `n`.
    pub fn as_cylinder(&self, q: u32) -> Option<CylinderSet> {
        CylinderSet::full(&xy_spec(1, q))
            .fix_run(XY_X, 0, &self.x_bits)?
            .fix_run(XY_Y0, (self.start as u64 + self.shift) as i64, &self.digits)
    }

    /// A point of the piece: the `X` tape is translated onto `x_bits`, the `Y` tape gets the
    /// window overwritten and is then moved by `t^shift`.
    pub fn sample_inside(&self, group: BsGroup, seed: u64) -> WPoint {
        let mut w = WPoint::sample(group, seed);
        let len = self.x_bits.len();
        let have = w.x.bits(len).iter().rev().fold(0i64, |acc, &b| 2 * acc + b as i64);
        let want = self.x_bits.iter().rev().fold(0i64, |acc, &b| 2 * acc + b as i64);
        w.x = w.x.translated(&BigInt::from(want - have));
        let mut tape = w.y.tape().clone();
        tape.set_digits(1, self.start as i64, &self.digits);
        let (p, q) = (group.p, group.q);
        w.y = YPoint::from_tape(p, q, tape).acted(&AffineElement::new(p, q, ExactRational::zero(), self.shift as i64));
        w
    }
}

/// `B_j` as `2^{j+1}` pieces, one per value `l` of the `X` prefix.
pub fn b_set(cfg: &StabilityConfig, j: usize) -> Vec<BPiece> {
    let len = j + 1;
    (0..1u64 << len)
        .map(|l| BPiece {
            x_bits: bits_of(l, len),
            shift: l,
            start: cfg.window_start(j),
            digits: vec![0; cfg.m],
        })
        .collect()
}

/// `U_j`: on `X(l_0, ..., l_j)` the power of `a` conjugate by `t^l` to `a^{r (pq)^{D}}`,
/// with `D = jM` for `p = 1` and `D = d_j` otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ACElement {
    pub cfg: StabilityConfig,
    pub j: usize,
}

impl ACElement {
    pub fn new(cfg: StabilityConfig, j: usize) -> Self {
        ACElement { cfg, j }
    }

    pub fn pieces(&self) -> u64 {
        1 << (self.j + 1)
    }

    /// `r q^{jM+l}` for `p = 1`, `r p^{d_j - l} q^{d_j + l}` otherwise.
    pub fn exponent(&self, l: u64) -> BigInt {
        let c = &self.cfg;
        let d = c.window_start(self.j);
        let r = BigInt::from(c.r);
        if c.p == 1 {
            r * BigInt::from(c.q).pow((d as u64 + l) as u32)
        } else {
            r * BigInt::from(c.p).pow((d as u64 - l) as u32) * BigInt::from(c.q).pow((d as u64 + l) as u32)
        }
    }

    /// `t^l a^{r (pq)^D} t^-l`.
    pub fn conjugate_word(&self, l: u64) -> GroupWord {
        let c = &self.cfg;
        let d = c.window_start(self.j);
        let inner = GroupWord::a_big(BigInt::from(c.r) * BigInt::from(c.base()).pow(d as u32));
        GroupWord::t(l as i64).mul(&inner).mul(&GroupWord::t(-(l as i64)))
    }

    pub fn exponent_at(&self, w: &WPoint) -> BigInt {
        self.exponent(x_level(&w.x, self.j))
    }

    pub fn apply(&self, w: &WPoint) -> WPoint {
        act_w(&self.cfg.group(), &GroupWord::a_big(self.exponent_at(w)), w)
    }

    pub fn apply_inverse(&self, w: &WPoint) -> WPoint {
        act_w(&self.cfg.group(), &GroupWord::a_big(-self.exponent_at(w)), w)
    }

    /// The piece `U_j` maps `piece` onto, or `None` when the window value would carry out.
    ///
    /// The exponent is first checked against the conjugate in `G(p,q)`.
    pub fn image_piece(&self, piece: &BPiece) -> Option<BPiece> {
        let c = &self.cfg;
        let l = piece.shift;
        let eps = c.group().epsilon(&self.conjugate_word(l));
        if eps.shift != 0 || eps.translation != ExactRational::from_integer(self.exponent(l)) {
            return None;
        }
        let value = window_value(&piece.digits, c.base()) + c.r as u64;
        if value >= c.alphabet() {
            return None;
        }
        Some(BPiece {
            digits: value_digits(value, c.base(), piece.digits.len()),
            ..piece.clone()
        })
    }
}

fn sum_measure(pieces: &[BPiece], base: u32) -> ExactRational {
    pieces.iter().map(|p| p.measure(base)).sum()
}

/// Exact `U_j B_j ∩ B_j = ∅` and `ω(U_j B_j △ B_j) = 2 (pq)^-M`, piece by piece.
pub fn check_disjoint_exact(cfg: &StabilityConfig, j: usize) -> VerificationReport {
    let claim = cfg.claim("lem-1-ac.ii", "lem-2-ac.ii");
    let params = format!("{} j={j}", cfg.params());
    let u = ACElement::new(*cfg, j);
    let b = b_set(cfg, j);
    let ub: Option<Vec<BPiece>> = b.iter().map(|piece| u.image_piece(piece)).collect();
    let Some(ub) = ub else {
        return VerificationReport::exact(&claim, params, "carry", "no carry", false)
            .with_note("U_j image leaves the window form");
    };
    let mut overlap = ExactRational::zero();
    let mut notes = Vec::new();
    for (i, x) in b.iter().enumerate() {
        for (k, y) in b.iter().enumerate().skip(i + 1) {
            if !matches!(x.intersect(y), Ok(None)) {
                notes.push(format!("B pieces {i},{k} meet"));
            }
            if !matches!(ub[i].intersect(&ub[k]), Ok(None)) {
                notes.push(format!("UB pieces {i},{k} meet"));
            }
        }
        for y in &ub {
            match x.intersect(y) {
                Ok(None) => {}
                Ok(Some(z)) => overlap += z.measure(cfg.base()),
                Err(e) => notes.push(e.to_string()),
            }
        }
    }
    let base = cfg.base();
    let (mb, mub) = (sum_measure(&b, base), sum_measure(&ub, base));
    if cfg.p == 1 {
        let cyl = |v: &[BPiece]| -> Option<ExactRational> {
            v.iter().map(|p| p.as_cylinder(cfg.q).map(|c| c.measure())).sum()
        };
        if cyl(&b) != Some(mb.clone()) || cyl(&ub) != Some(mub.clone()) {
            notes.push("cylinder measure disagrees".into());
        }
        for x in &b {
            for y in &ub {
                let meet = x.as_cylinder(cfg.q).unwrap().intersect(&y.as_cylinder(cfg.q).unwrap());
                if !matches!(meet, Ok(None)) {
                    notes.push("cylinders meet".into());
                }
            }
        }
    }
    let sym = &mb + &mub - &overlap * ExactRational::from_integer(2.into());
    let expect = cfg.set_measure() * ExactRational::from_integer(2.into());
    let pass = notes.is_empty() && overlap.is_zero() && mb == cfg.set_measure() && sym == expect;
    let mut rep = VerificationReport::exact(&claim, params, sym.to_string(), expect.to_string(), pass);
    for n in notes {
        rep = rep.with_note(n);
    }
    rep
}

/// `(μ×ν)(π^-1(T)) = (pq)^{-(d+1)M}` for every cylinder `T` on the first `d+1` coordinates,
/// by explicit cylinders on `X × Y` (`p = 1`).
pub fn check_pi_pushforward_exact(cfg: &StabilityConfig, d: usize) -> VerificationReport {
    assert_eq!(cfg.p, 1, "explicit cylinders need p = 1");
    let spec = xy_spec(1, cfg.q);
    let alphabet = cfg.alphabet();
    let expect = ExactRational::new(BigInt::one(), BigInt::from(alphabet).pow((d + 1) as u32));
    let mut worst = expect.clone();
    let mut pass = true;
    let tuples = alphabet.pow((d + 1) as u32);
    for code in 0..tuples {
        let h = value_digits(code, alphabet as u32, d + 1);
        let mut total = ExactRational::zero();
        for l in 0..1u64 << (d + 1) {
            let mut c = CylinderSet::full(&spec).fix_run(XY_X, 0, &bits_of(l, d + 1));
            for (jj, &hj) in h.iter().enumerate() {
                let shift = l & ((1 << (jj + 1)) - 1);
                let at = (jj * cfg.m) as i64 + shift as i64;
                c = c.and_then(|c| c.fix_run(XY_Y0, at, &value_digits(hj as u64, cfg.q, cfg.m)));
            }
            if let Some(c) = c {
                total += c.measure();
            }
        }
        if total != expect {
            pass = false;
            worst = total;
        }
    }
    VerificationReport::exact(
        "lem-1-pi.i",
        format!("{} d={d}", cfg.params()),
        worst.to_string(),
        expect.to_string(),
        pass,
    )
}

/// A transformation whose effect on `B_j` is estimated.
#[derive(Debug, Clone)]
pub enum Mover {
    Word(GroupWord),
    Ac(ACElement),
}

impl Mover {
    fn apply_inverse(&self, group: &BsGroup, w: &WPoint) -> WPoint {
        match self {
            Mover::Word(g) => act_w(group, &g.inverse(), w),
            Mover::Ac(u) => u.apply_inverse(w),
        }
    }

    fn label(&self) -> String {
        match self {
            Mover::Word(g) => g.to_string(),
            Mover::Ac(u) => format!("U{}", u.j),
        }
    }
}

fn count_hits(samples: u64, hit: impl Fn(u64) -> bool + Sync) -> u64 {
    (0..samples).into_par_iter().filter(|&i| hit(i)).count() as u64
}

/// Monte Carlo `ω(g B_j △ B_j)`: `w` lies in `g B_j` iff `g^-1 w` lies in `B_j`.
pub fn estimate_sym_diff(cfg: &StabilityConfig, j: usize, g: &Mover, samples: u64) -> Frequency {
    let group = cfg.group();
    let label = format!("symdiff:{}:{j}:{}", cfg.params(), g.label());
    let hits = count_hits(samples, |i| {
        let w = WPoint::sample(group, sample_seed(cfg.seed, &label, i));
        in_b(cfg, j, &w) != in_b(cfg, j, &g.apply_inverse(&group, &w))
    });
    Frequency::new(hits, samples)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Generator {
    A,
    T,
}

impl Generator {
    pub fn word(self) -> GroupWord {
        match self {
            Generator::A => GroupWord::a(1),
            Generator::T => GroupWord::t(1),
        }
    }
}

/// Disagreements of `U_j g` and `g U_j`, overall and outside `X(1, ..., 1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Commutation {
    pub overall: Frequency,
    pub outside: u64,
    pub outside_disagreements: u64,
}

fn same_w(a: &WPoint, b: &WPoint, group: BsGroup, y0: usize) -> bool {
    let shape = Shape::new(8, y0, 8);
    let cosets = [GroupWord::identity(), GroupWord::t(1), GroupWord::t(-1)];
    a.x.bits(64) == b.x.bits(64)
        && a.y.window(shape).ok() == b.y.window(shape).ok()
        && cosets.iter().all(|c| {
            let alpha = group.coset_of(c);
            a.z.coordinate(&alpha, 8) == b.z.coordinate(&alpha, 8)
        })
}

pub fn check_commutation(cfg: &StabilityConfig, j: usize, g: Generator, samples: u64) -> Commutation {
    let group = cfg.group();
    let u = ACElement::new(*cfg, j);
    let word = g.word();
    let label = format!("commute:{}:{j}:{g:?}", cfg.params());
    let y0 = cfg.window_start(j) + cfg.m;
    let results: Vec<(bool, bool)> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let w = WPoint::sample(group, sample_seed(cfg.seed, &label, i));
            let lhs = u.apply(&act_w(&group, &word, &w));
            let rhs = act_w(&group, &word, &u.apply(&w));
            let ones = w.x.bits(j + 1).iter().all(|&b| b == 1);
            (ones, !same_w(&lhs, &rhs, group, y0))
        })
        .collect();
    let hits = results.iter().filter(|r| r.1).count() as u64;
    let outside = results.iter().filter(|r| !r.0).count() as u64;
    let outside_disagreements = results.iter().filter(|r| !r.0 && r.1).count() as u64;
    Commutation {
        overall: Frequency::new(hits, samples),
        outside,
        outside_disagreements,
    }
}

/// Chi-square test of uniformity for `pi(.)_j` on `X × Y`.
pub fn chi_square_pi(cfg: &StabilityConfig, j: usize, samples: u64) -> (f64, f64) {
    let group = cfg.group();
    let label = format!("chi-pi:{}:{j}", cfg.params());
    let values: Vec<u64> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let w = WPoint::sample(group, sample_seed(cfg.seed, &label, i));
            pi_map(cfg, &w.x, &w.y, j).expect("pi")
        })
        .collect();
    chi_square_uniform(&tally(&values, cfg.alphabet()))
}

/// Chi-square test of uniformity for `tau(.)_j` on `Y`.
pub fn chi_square_tau(cfg: &StabilityConfig, j: usize, samples: u64) -> (f64, f64) {
    let label = format!("chi-tau:{}:{j}", cfg.params());
    let values: Vec<u64> = (0..samples)
        .into_par_iter()
        .map(|i| tau_map(cfg, &YPoint::new(cfg.p, cfg.q, sample_seed(cfg.seed, &label, i)), j).expect("tau"))
        .collect();
    chi_square_uniform(&tally(&values, cfg.alphabet()))
}

fn tally(values: &[u64], cells: u64) -> Vec<u64> {
    let mut counts = vec![0u64; cells as usize];
    for &v in values {
        counts[v as usize] += 1;
    }
    counts
}

/// `A_j = tau^-1(C_j) × Z` as a cylinder on `Y`.
pub fn a_set(cfg: &StabilityConfig, j: usize, value: u64) -> CylinderSet {
    CylinderSet::full(&SpaceSpec::y(cfg.p, cfg.q))
        .fix_run(1, (j * cfg.m) as i64, &value_digits(value, cfg.base(), cfg.m))
        .expect("a single run never conflicts")
}

/// `V_j = a^{r (pq)^{jM}}` on `W1 = Y × Z`.
pub fn v_exponent(cfg: &StabilityConfig, j: usize) -> BigInt {
    BigInt::from(cfg.r) * BigInt::from(cfg.base()).pow((j * cfg.m) as u32)
}

/// Exact disjointness and measure of `V_j A_j △ A_j`, with sampled points of `A_j` checked to
/// land in the image cylinder.
pub fn check_v_disjoint_exact(cfg: &StabilityConfig, j: usize, witnesses: u64) -> VerificationReport {
    let params = format!("{} j={j}", cfg.params());
    let a = a_set(cfg, j, 0);
    let va = a_set(cfg, j, cfg.r as u64);
    let meet = a.intersect(&va).expect("same space");
    let sym = a.measure() + va.measure();
    let expect = cfg.set_measure() * ExactRational::from_integer(2.into());
    let group = cfg.group();
    let v = GroupWord::a_big(v_exponent(cfg, j));
    let start = (j * cfg.m) as i64;
    let mut landed = true;
    for i in 0..witnesses {
        let mut tape = YPoint::new(cfg.p, cfg.q, sample_seed(cfg.seed, "v-witness", i)).tape().clone();
        tape.set_digits(1, start, &vec![0; cfg.m]);
        let w = W1Point {
            y: YPoint::from_tape(cfg.p, cfg.q, tape),
            z: crate::spaces::ZPoint::new(group, i),
        };
        let moved = act_w1(&group, &v, &w);
        let win = moved.y.window(Shape::new(0, start as usize + cfg.m, 0)).expect("window");
        let inside = va.member_by(|f, k| -> std::result::Result<u32, ()> {
            match f {
                1 => Ok(win.y0.digit(k as usize).unwrap()),
                _ => Err(()),
            }
        });
        landed &= inside == Ok(true);
    }
    let pass = meet.is_none() && sym == expect && landed;
    VerificationReport::exact("thm-h-stable.3", params, sym.to_string(), expect.to_string(), pass)
}

/// `V_j h = h V_j` in the group and on sampled points of `W1`, once `jM` passes the
/// threshold from `conj_exponents(h)`.
pub fn check_v_commutation(cfg: &StabilityConfig, h: &GroupWord, samples: u64) -> VerificationReport {
    let group = cfg.group();
    let Some(ce) = group.conj_exponents(h, 32) else {
        return VerificationReport::exact("thm-h-stable.2", format!("{} h={h}", cfg.params()), "none", "threshold", false)
            .with_note("no conjugation exponents found");
    };
    let threshold = ce.k.max(ce.l).max(ce.k_prime).max(ce.l_prime) as usize;
    let j = threshold.div_ceil(cfg.m);
    let params = format!("{} h={h} j={j}", cfg.params());
    let v = GroupWord::a_big(v_exponent(cfg, j));
    let in_group = group.equal(&v.mul(h), &h.mul(&v));
    let label = format!("v-commute:{params}");
    let bad = count_hits(samples, |i| {
        let w = W1Point::sample(group, sample_seed(cfg.seed, &label, i));
        let lhs = act_w1(&group, &v, &act_w1(&group, h, &w));
        let rhs = act_w1(&group, h, &act_w1(&group, &v, &w));
        let shape = Shape::uniform(16);
        let cosets = [GroupWord::identity(), GroupWord::t(1), GroupWord::t(-1)];
        lhs.y.window(shape).ok() != rhs.y.window(shape).ok()
            || cosets.iter().any(|c| {
                let alpha = group.coset_of(c);
                lhs.z.coordinate(&alpha, 8) != rhs.z.coordinate(&alpha, 8)
            })
    });
    VerificationReport::exact(
        "thm-h-stable.2",
        params,
        format!("{bad}/{samples}"),
        "0",
        in_group && bad == 0,
    )
}

/// Monte Carlo `ω1(h A_j △ A_j)`.
pub fn estimate_a_sym_diff(cfg: &StabilityConfig, j: usize, h: &GroupWord, samples: u64) -> Frequency {
    let group = cfg.group();
    let eps = group.epsilon(&h.inverse());
    let label = format!("a-symdiff:{}:{j}:{h}", cfg.params());
    let hits = count_hits(samples, |i| {
        let y = YPoint::new(cfg.p, cfg.q, sample_seed(cfg.seed, &label, i));
        let inside = |y: &YPoint| tau_map(cfg, y, j).expect("tau") == 0;
        inside(&y) != inside(&y.acted(&eps))
    });
    Frequency::new(hits, samples)
}

/// The `W1` checks for `H`: exact disjointness for `j <= j_max`, commutation with
/// `a`, `t a t^-1`, `t^-1 a t`, and decay of `h A_j △ A_j`.
pub fn v_suite(cfg: &StabilityConfig, samples: u64) -> Vec<VerificationReport> {
    let mut out: Vec<_> = (0..=cfg.j_max).map(|j| check_v_disjoint_exact(cfg, j, 20)).collect();
    let hs: [GroupWord; 3] = ["a".parse().unwrap(), "t a t^-1".parse().unwrap(), "t^-1 a t".parse().unwrap()];
    for h in &hs {
        out.push(check_v_commutation(cfg, h, samples.min(1000)));
    }
    for h in &hs {
        let f0 = estimate_a_sym_diff(cfg, 0, h, samples);
        let f2 = estimate_a_sym_diff(cfg, 2, h, samples);
        let bound = 2.0 * (cfg.base() as f64).powi(-2 * cfg.m as i32);
        out.push(VerificationReport::mc(
            "thm-h-stable.1",
            format!("{} h={h} j=2", cfg.params()),
            f2.estimate,
            format!("{bound:.6}"),
            f2.ci,
            f2.estimate <= bound + f2.half_width() && f2.estimate <= f0.estimate,
        ));
    }
    out
}
