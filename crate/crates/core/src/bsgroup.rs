//! Words in BS(rp, rq), their HNN normal forms, and the maps out of the group.

use crate::exactnum::{ratio_pow, ExactRational};
use crate::report::VerificationReport;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Syllable {
    A(BigInt),
    /// Always +1 or -1.
    T(i8),
}

/// A word in the generators `a`, `t`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GroupWord {
    syllables: Vec<Syllable>,
}

impl GroupWord {
    pub fn identity() -> Self {
        GroupWord::default()
    }

    pub fn a(k: i64) -> Self {
        GroupWord::a_big(BigInt::from(k))
    }

    pub fn a_big(k: BigInt) -> Self {
        let mut w = GroupWord::identity();
        w.push_a(k);
        w
    }

    pub fn t(k: i64) -> Self {
        let mut w = GroupWord::identity();
        w.push_t(k);
        w
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Appends `a^k`, merging with a trailing `a`-syllable.
    pub fn push_a(&mut self, k: BigInt) {
        if k.is_zero() {
            return;
        }
        if let Some(Syllable::A(last)) = self.syllables.last_mut() {
            *last += k;
            if last.is_zero() {
                self.syllables.pop();
            }
        } else {
            self.syllables.push(Syllable::A(k));
        }
    }

    /// Appends `t^k` as |k| unit syllables, cancelling free `t t^-1` pairs.
    pub fn push_t(&mut self, k: i64) {
        let e: i8 = if k >= 0 { 1 } else { -1 };
        for _ in 0..k.unsigned_abs() {
            if self.syllables.last() == Some(&Syllable::T(-e)) {
                self.syllables.pop();
            } else {
                self.syllables.push(Syllable::T(e));
            }
        }
    }

    pub fn mul(&self, other: &GroupWord) -> GroupWord {
        let mut w = self.clone();
        for s in &other.syllables {
            match s {
                Syllable::A(k) => w.push_a(k.clone()),
                Syllable::T(e) => w.push_t(*e as i64),
            }
        }
        w
    }

    pub fn inverse(&self) -> GroupWord {
        let mut w = GroupWord::identity();
        for s in self.syllables.iter().rev() {
            match s {
                Syllable::A(k) => w.push_a(-k),
                Syllable::T(e) => w.push_t(-(*e as i64)),
            }
        }
        w
    }

    pub fn pow(&self, n: i64) -> GroupWord {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut w = GroupWord::identity();
        for _ in 0..n.unsigned_abs() {
            w = w.mul(&base);
        }
        w
    }

    pub fn conjugate(&self, g: &GroupWord) -> GroupWord {
        g.mul(self).mul(&g.inverse())
    }

    /// Uniform random word with `len` syllables; `a`-exponents in `[-max_exp, max_exp]`.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, len: usize, max_exp: i64) -> GroupWord {
        let mut w = GroupWord::identity();
        for _ in 0..len {
            if rng.random_bool(0.5) {
                w.push_a(BigInt::from(rng.random_range(-max_exp..=max_exp)));
            } else {
                w.push_t(if rng.random_bool(0.5) { 1 } else { -1 });
            }
        }
        w
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return write!(f, "e");
        }
        let mut first = true;
        for s in &self.syllables {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            match s {
                Syllable::A(k) if k.is_one() => write!(f, "a")?,
                Syllable::A(k) => write!(f, "a^{k}")?,
                Syllable::T(1) => write!(f, "t")?,
                Syllable::T(_) => write!(f, "t^-1")?,
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse group word token `{0}`")]
pub struct ParseWordError(pub String);

impl FromStr for GroupWord {
    type Err = ParseWordError;

    /// Accepts space-separated tokens `a`, `t`, `a^k`, `t^k`; `e` or `1` is the identity.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut w = GroupWord::identity();
        for tok in s.split_whitespace() {
            if tok == "e" || tok == "1" {
                continue;
            }
            let (gen, exp) = match tok.split_once('^') {
                Some((g, e)) => (g, e.parse::<BigInt>().map_err(|_| ParseWordError(tok.into()))?),
                None => (tok, BigInt::one()),
            };
            match gen {
                "a" => w.push_a(exp),
                "t" => {
                    let k: i64 = exp.try_into().map_err(|_| ParseWordError(tok.into()))?;
                    w.push_t(k)
                }
                _ => return Err(ParseWordError(tok.into())),
            }
        }
        Ok(w)
    }
}

/// The presentation `<a, t | t a^m t^-1 = a^n>` with signed `m`, `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Presentation {
    pub m: i64,
    pub n: i64,
}

/// Normal form `a^{k_0} t^{e_1} a^{k_1} ... t^{e_n} a^{k_n}`.
///
/// Since `a^n t = t a^m` and `a^m t^-1 = t^-1 a^n`, an exponent in front of `t`
/// is reduced into `[0, |n|)` and one in front of `t^-1` into `[0, |m|)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BrittonForm {
    pres: (i64, i64),
    exps: Vec<BigInt>,
    ts: Vec<i8>,
}

impl BrittonForm {
    pub fn identity(pres: Presentation) -> Self {
        BrittonForm {
            pres: (pres.m, pres.n),
            exps: vec![BigInt::zero()],
            ts: Vec::new(),
        }
    }

    pub fn presentation(&self) -> Presentation {
        Presentation {
            m: self.pres.0,
            n: self.pres.1,
        }
    }

    pub fn exponents(&self) -> &[BigInt] {
        &self.exps
    }

    pub fn t_letters(&self) -> &[i8] {
        &self.ts
    }

    pub fn t_length(&self) -> usize {
        self.ts.len()
    }

    pub fn is_identity(&self) -> bool {
        self.ts.is_empty() && self.exps[0].is_zero()
    }

    pub fn trailing(&self) -> &BigInt {
        self.exps.last().expect("non-empty exponent list")
    }

    /// `Some(k)` when the element is `a^k`.
    pub fn as_a_power(&self) -> Option<&BigInt> {
        self.ts.is_empty().then(|| &self.exps[0])
    }

    pub fn push_a(&mut self, k: &BigInt) {
        *self.exps.last_mut().unwrap() += k;
    }

    pub fn push_t(&mut self, e: i8) {
        let (m, n) = self.pres;
        if let Some(&last) = self.ts.last() {
            if last == -e {
                let k = self.exps.last().unwrap();
                let (div, mul) = if last == 1 { (m, n) } else { (n, m) };
                let div = BigInt::from(div);
                if k.is_multiple_of(&div) {
                    let moved = k / &div * mul;
                    self.exps.pop();
                    self.ts.pop();
                    *self.exps.last_mut().unwrap() += moved;
                    return;
                }
            }
        }
        let (modulus, mul) = if e == 1 { (n, m) } else { (m, n) };
        let k = self.exps.pop().unwrap();
        let md = BigInt::from(modulus);
        let rem = k.mod_floor(&md.abs());
        let c = (&k - &rem) / &md;
        self.exps.push(rem);
        self.ts.push(e);
        self.exps.push(c * mul);
    }

    pub fn push_word(&mut self, w: &GroupWord) {
        for s in w.syllables() {
            match s {
                Syllable::A(k) => self.push_a(k),
                Syllable::T(e) => self.push_t(*e),
            }
        }
    }

    pub fn mul(&self, other: &BrittonForm) -> BrittonForm {
        debug_assert_eq!(self.pres, other.pres);
        let mut out = self.clone();
        out.push_a(&other.exps[0]);
        for (e, k) in other.ts.iter().zip(&other.exps[1..]) {
            out.push_t(*e);
            out.push_a(k);
        }
        out
    }

    pub fn inverse(&self) -> BrittonForm {
        reduce(self.presentation(), &self.to_word().inverse())
    }

    pub fn to_word(&self) -> GroupWord {
        let mut w = GroupWord::identity();
        w.push_a(self.exps[0].clone());
        for (e, k) in self.ts.iter().zip(&self.exps[1..]) {
            w.syllables.push(Syllable::T(*e));
            w.push_a(k.clone());
        }
        w
    }

    fn with_trailing_zero(mut self) -> (BrittonForm, BigInt) {
        let b = std::mem::take(self.exps.last_mut().unwrap());
        (self, b)
    }
}

impl fmt::Display for BrittonForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_word())
    }
}

pub fn reduce(pres: Presentation, w: &GroupWord) -> BrittonForm {
    let mut f = BrittonForm::identity(pres);
    f.push_word(w);
    f
}

/// `x + t^n` in G(p,q): the pair `(x, n)` acting by `y -> x + (q/p)^n y`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AffineElement {
    pub p: u32,
    pub q: u32,
    pub translation: ExactRational,
    pub shift: i64,
}

impl AffineElement {
    pub fn identity(p: u32, q: u32) -> Self {
        AffineElement {
            p,
            q,
            translation: ExactRational::zero(),
            shift: 0,
        }
    }

    pub fn new(p: u32, q: u32, translation: ExactRational, shift: i64) -> Self {
        AffineElement { p, q, translation, shift }
    }

    pub fn is_identity(&self) -> bool {
        self.translation.is_zero() && self.shift == 0
    }

    pub fn compose(&self, other: &AffineElement) -> AffineElement {
        AffineElement {
            p: self.p,
            q: self.q,
            translation: &self.translation + ratio_pow(self.p, self.q, self.shift) * &other.translation,
            shift: self.shift + other.shift,
        }
    }

    pub fn inverse(&self) -> AffineElement {
        AffineElement {
            p: self.p,
            q: self.q,
            translation: -(ratio_pow(self.p, self.q, -self.shift) * &self.translation),
            shift: -self.shift,
        }
    }

    pub fn apply(&self, y: &ExactRational) -> ExactRational {
        &self.translation + ratio_pow(self.p, self.q, self.shift) * y
    }
}

impl fmt::Display for AffineElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.translation, self.shift)
    }
}

/// Left coset `gE` of `E = <a>`, stored as its normal form with trailing exponent 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CosetRep(BrittonForm);

impl CosetRep {
    pub fn identity(pres: Presentation) -> Self {
        CosetRep(BrittonForm::identity(pres))
    }

    pub fn section(&self) -> &BrittonForm {
        &self.0
    }

    pub fn of(form: BrittonForm) -> (CosetRep, BigInt) {
        let (f, b) = form.with_trailing_zero();
        (CosetRep(f), b)
    }
}

impl fmt::Display for CosetRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}E", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ConjExponents {
    pub k: u32,
    pub k_prime: u32,
    pub l: u32,
    pub l_prime: u32,
}

/// The group `BS(rp, rq)` with its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BsGroup {
    pub r: u32,
    pub p: u32,
    pub q: u32,
}

impl BsGroup {
    pub fn new(r: u32, p: u32, q: u32) -> Self {
        BsGroup { r, p, q }
    }

    pub fn presentation(&self) -> Presentation {
        Presentation {
            m: (self.r * self.p) as i64,
            n: (self.r * self.q) as i64,
        }
    }

    pub fn britton_reduce(&self, w: &GroupWord) -> BrittonForm {
        reduce(self.presentation(), w)
    }

    pub fn equal(&self, u: &GroupWord, v: &GroupWord) -> bool {
        self.britton_reduce(u) == self.britton_reduce(v)
    }

    pub fn relator(&self) -> GroupWord {
        let pres = self.presentation();
        GroupWord::a(pres.m).conjugate(&GroupWord::t(1)).mul(&GroupWord::a(-pres.n))
    }

    pub fn epsilon(&self, w: &GroupWord) -> AffineElement {
        let t = AffineElement::new(self.p, self.q, ExactRational::zero(), 1);
        let mut g = AffineElement::identity(self.p, self.q);
        for s in w.syllables() {
            match s {
                Syllable::A(k) => {
                    let x = &g.translation + ratio_pow(self.p, self.q, g.shift) * ExactRational::from_integer(k.clone());
                    g.translation = x;
                }
                Syllable::T(e) => g = g.compose(&if *e == 1 { t.clone() } else { t.inverse() }),
            }
        }
        g
    }

    pub fn is_in_kernel(&self, w: &GroupWord) -> bool {
        self.epsilon(w).is_identity()
    }

    /// `(beta, b)` with `s(beta) a^b = g^-1 s(alpha)`.
    pub fn coind_transfer(&self, g: &GroupWord, alpha: &CosetRep) -> (CosetRep, BigInt) {
        let mut f = self.britton_reduce(&g.inverse());
        f = f.mul(alpha.section());
        CosetRep::of(f)
    }

    pub fn coset_of(&self, g: &GroupWord) -> CosetRep {
        CosetRep::of(self.britton_reduce(g)).0
    }

    /// Least `K + L` with `g a^{r p^K q^L} g^-1 = a^{r p^K' q^L'}` and `K' + L' = K + L`,
    /// checked also with one extra factor of `pq` on both sides. Searches `K + L <= max_sum`.
    pub fn conj_exponents(&self, g: &GroupWord, max_sum: u32) -> Option<ConjExponents> {
        let gf = self.britton_reduce(g);
        let gi = gf.inverse();
        let conj = |e: &BigInt| -> Option<BigInt> {
            let mut f = gf.clone();
            f.push_a(e);
            let f = f.mul(&gi);
            f.as_a_power().cloned()
        };
        let r = BigInt::from(self.r);
        let pw = |k: u32, l: u32| -> BigInt { &r * BigInt::from(self.p).pow(k) * BigInt::from(self.q).pow(l) };
        for s in 0..=max_sum {
            for k in (0..=s).rev() {
                let l = s - k;
                let Some(img) = conj(&pw(k, l)) else { continue };
                for kp in (0..=s).rev() {
                    let lp = s - kp;
                    if img != pw(kp, lp) {
                        continue;
                    }
                    if conj(&pw(k + 1, l + 1)) == Some(pw(kp + 1, lp + 1)) {
                        return Some(ConjExponents {
                            k,
                            k_prime: kp,
                            l,
                            l_prime: lp,
                        });
                    }
                }
            }
        }
        None
    }

    pub fn t_exponent_sum(w: &GroupWord) -> i64 {
        w.syllables()
            .iter()
            .map(|s| match s {
                Syllable::T(e) => *e as i64,
                Syllable::A(_) => 0,
            })
            .sum()
    }
}

pub fn t_exponent_sum(w: &GroupWord) -> i64 {
    BsGroup::t_exponent_sum(w)
}

/// Word in the generators `a`, `c = t a t^-1`, `d = t^2` of the index-two subgroup.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SubgroupWord(pub Vec<(SubGen, i64)>);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubGen {
    A,
    C,
    D,
}

impl SubgroupWord {
    pub fn inverse(&self) -> SubgroupWord {
        SubgroupWord(self.0.iter().rev().map(|&(g, e)| (g, -e)).collect())
    }

    pub fn mul(&self, other: &SubgroupWord) -> SubgroupWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        SubgroupWord(v)
    }

    pub fn conjugate(&self, g: &SubgroupWord) -> SubgroupWord {
        g.mul(self).mul(&g.inverse())
    }

    fn map(&self, images: [&GroupWord; 3]) -> GroupWord {
        let mut w = GroupWord::identity();
        for &(g, e) in &self.0 {
            let img = match g {
                SubGen::A => images[0],
                SubGen::C => images[1],
                SubGen::D => images[2],
            };
            w = w.mul(&img.pow(e));
        }
        w
    }

    /// The inclusion into `BS(rp, rq)`.
    pub fn in_gamma(&self) -> GroupWord {
        let a = GroupWord::a(1);
        let c = a.conjugate(&GroupWord::t(1));
        let d = GroupWord::t(2);
        self.map([&a, &c, &d])
    }

    /// `phi`: `a -> b`, `c -> u b^-1 u^-1`, `d -> u^2` in `BS(rp, -rq)`, written with `a`, `t` for `b`, `u`.
    pub fn phi(&self) -> GroupWord {
        let b = GroupWord::a(1);
        let c = GroupWord::a(-1).conjugate(&GroupWord::t(1));
        let d = GroupWord::t(2);
        self.map([&b, &c, &d])
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R, len: usize, max_exp: i64) -> SubgroupWord {
        let gens = [SubGen::A, SubGen::C, SubGen::D];
        SubgroupWord(
            (0..len)
                .map(|_| {
                    let g = gens[rng.random_range(0..3)];
                    let mut e = rng.random_range(1..=max_exp);
                    if rng.random_bool(0.5) {
                        e = -e;
                    }
                    (g, e)
                })
                .collect(),
        )
    }
}

impl fmt::Display for SubgroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "e");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(g, e)| {
                let n = match g {
                    SubGen::A => "a",
                    SubGen::C => "c",
                    SubGen::D => "d",
                };
                if *e == 1 {
                    n.to_string()
                } else {
                    format!("{n}^{e}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Defining relators of the index-two subgroup: `c^{rp} a^{-rq}` and `d a^{rp} d^-1 c^{-rq}`.
pub fn subgroup_relators(rp: i64, rq: i64) -> [SubgroupWord; 2] {
    [
        SubgroupWord(vec![(SubGen::C, rp), (SubGen::A, -rq)]),
        SubgroupWord(vec![(SubGen::D, 1), (SubGen::A, rp), (SubGen::D, -1), (SubGen::C, -rq)]),
    ]
}

/// Random product of conjugates of the defining relators (and their inverses).
pub fn random_consequence<R: Rng + ?Sized>(rng: &mut R, rp: i64, rq: i64, factors: usize) -> SubgroupWord {
    let rels = subgroup_relators(rp, rq);
    let mut w = SubgroupWord::default();
    for _ in 0..factors {
        let mut rel = rels[rng.random_range(0..2)].clone();
        if rng.random_bool(0.5) {
            rel = rel.inverse();
        }
        let len = rng.random_range(0..4);
        let g = SubgroupWord::random(rng, len, 2);
        w = w.mul(&rel.conjugate(&g));
    }
    w
}

/// Checks that `phi` kills the trivial relator, both defining relators and
/// `count` random consequences; each relator is first confirmed trivial in `BS(rp, rq)`.
pub fn index2_iso_check<R: Rng + ?Sized>(rng: &mut R, rp: i64, rq: i64, count: usize) -> VerificationReport {
    let gamma = Presentation { m: rp, n: rq };
    let lambda = Presentation { m: rp, n: -rq };
    let mut checked: Vec<SubgroupWord> = vec![SubgroupWord::default()];
    checked.extend(subgroup_relators(rp, rq));
    for _ in 0..count {
        let factors = rng.random_range(1..=3);
        checked.push(random_consequence(rng, rp, rq, factors));
    }
    let mut failures = Vec::new();
    for w in &checked {
        let in_gamma = reduce(gamma, &w.in_gamma()).is_identity();
        let in_lambda = reduce(lambda, &w.phi()).is_identity();
        if !(in_gamma && in_lambda) {
            failures.push(w.to_string());
        }
    }
    let passed = checked.len() - failures.len();
    let mut rep = VerificationReport::exact(
        "thm-stable.index2",
        format!("rp={rp},rq={rq}"),
        format!("{passed}/{}", checked.len()),
        format!("{}/{}", checked.len(), checked.len()),
        failures.is_empty(),
    );
    for w in checked.iter().take(3) {
        rep = rep.with_note(format!("relator {w}"));
    }
    for f in failures.iter().take(5) {
        rep = rep.with_note(format!("failed {f}"));
    }
    rep
}
