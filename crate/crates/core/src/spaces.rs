//! Digit spaces, seeded random points and cylinder sets.

use crate::bsgroup::{BsGroup, BrittonForm, CosetRep, GroupWord};
use crate::exactnum::{AdicWindow, ExactRational};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};
use std::cell::RefCell;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IndexRange {
    /// `0, 1, 2, ...`
    Naturals,
    /// `..., -2, -1`
    Negative,
    /// `1, 2, 3, ...`
    Positive,
    Integers,
}

impl IndexRange {
    pub fn contains(self, i: i64) -> bool {
        match self {
            IndexRange::Naturals => i >= 0,
            IndexRange::Negative => i < 0,
            IndexRange::Positive => i > 0,
            IndexRange::Integers => true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Family {
    pub name: String,
    pub range: IndexRange,
    pub alphabet: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SpaceSpec {
    pub families: Vec<Family>,
}

impl SpaceSpec {
    pub fn new(families: Vec<Family>) -> Self {
        assert!(families.iter().all(|f| f.alphabet >= 1), "alphabet sizes must be >= 1");
        SpaceSpec { families }
    }

    fn single(name: &str, range: IndexRange, alphabet: u32) -> Self {
        SpaceSpec::new(vec![Family {
            name: name.into(),
            range,
            alphabet,
        }])
    }

    /// `{0,1}^N`.
    pub fn x() -> Self {
        SpaceSpec::single("X", IndexRange::Naturals, 2)
    }

    /// `Y- x Y0 x Y+` with alphabets `q`, `pq`, `p`.
    pub fn y(p: u32, q: u32) -> Self {
        SpaceSpec::new(vec![
            Family {
                name: "Y-".into(),
                range: IndexRange::Negative,
                alphabet: q,
            },
            Family {
                name: "Y0".into(),
                range: IndexRange::Naturals,
                alphabet: p * q,
            },
            Family {
                name: "Y+".into(),
                range: IndexRange::Positive,
                alphabet: p,
            },
        ])
    }

    pub fn z0(p: u32, q: u32) -> Self {
        SpaceSpec::single("Z0", IndexRange::Naturals, p * q)
    }

    /// `prod_n H_n`, one coordinate per `n`, alphabet `|H_n|`.
    pub fn product(name: &str, sizes: &[u32]) -> Self {
        SpaceSpec::new(
            sizes
                .iter()
                .enumerate()
                .map(|(n, &s)| Family {
                    name: format!("{name}{n}"),
                    range: IndexRange::Naturals,
                    alphabet: s,
                })
                .collect(),
        )
    }

    pub fn family_index(&self, name: &str) -> Option<usize> {
        self.families.iter().position(|f| f.name == name)
    }

    pub fn alphabet(&self, family: usize) -> u32 {
        self.families[family].alphabet
    }
}

const BLOCK: usize = 32;

/// Uniform digits over `{0, ..., alphabet-1}` at every integer index, from a keyed stream cipher.
#[derive(Debug, Clone)]
pub struct DigitTape {
    key: [u8; 32],
    alphabet: u32,
    blocks: RefCell<HashMap<i64, Box<[u32; BLOCK]>>>,
}

impl DigitTape {
    pub fn new(seed: u64, label: &str, alphabet: u32) -> Self {
        let mut h = Sha256::new();
        h.update(seed.to_le_bytes());
        h.update(label.as_bytes());
        DigitTape {
            key: h.finalize().into(),
            alphabet,
            blocks: RefCell::new(HashMap::new()),
        }
    }

    pub fn alphabet(&self) -> u32 {
        self.alphabet
    }

    fn fill(&self, block: i64) -> Box<[u32; BLOCK]> {
        let mut out = Box::new([0u32; BLOCK]);
        if self.alphabet == 1 {
            return out;
        }
        let mut rng = ChaCha8Rng::from_seed(self.key);
        // Zigzag the block number onto the stream; two words per digit.
        let z = ((block << 1) ^ (block >> 63)) as u128;
        rng.set_word_pos(z * (2 * BLOCK as u128));
        for d in out.iter_mut() {
            *d = ((rng.next_u64() as u128 * self.alphabet as u128) >> 64) as u32;
        }
        out
    }

    pub fn digit(&self, i: i64) -> u32 {
        let block = i.div_euclid(BLOCK as i64);
        let off = i.rem_euclid(BLOCK as i64) as usize;
        let mut blocks = self.blocks.borrow_mut();
        blocks.entry(block).or_insert_with(|| self.fill(block))[off]
    }

    /// Digits at `start, start+1, ..., start+len-1`.
    pub fn digits(&self, start: i64, len: usize) -> Vec<u32> {
        let mut out = Vec::with_capacity(len);
        let mut blocks = self.blocks.borrow_mut();
        let end = start + len as i64;
        let mut i = start;
        while i < end {
            let block = i.div_euclid(BLOCK as i64);
            let off = i.rem_euclid(BLOCK as i64) as usize;
            let take = (BLOCK - off).min((end - i) as usize);
            let data = blocks.entry(block).or_insert_with(|| self.fill(block));
            out.extend_from_slice(&data[off..off + take]);
            i += take as i64;
        }
        out
    }
}

/// A sampled point of a product space: one tape per family plus explicit overrides.
#[derive(Debug, Clone)]
pub struct TapePoint {
    spec: SpaceSpec,
    seed: u64,
    tapes: Vec<DigitTape>,
    overrides: BTreeMap<(usize, i64), u32>,
}

pub fn sample_point(spec: &SpaceSpec, seed: u64) -> TapePoint {
    TapePoint::new(spec, seed)
}

impl TapePoint {
    pub fn new(spec: &SpaceSpec, seed: u64) -> Self {
        TapePoint {
            tapes: spec
                .families
                .iter()
                .map(|f| DigitTape::new(seed, &f.name, f.alphabet))
                .collect(),
            spec: spec.clone(),
            seed,
            overrides: BTreeMap::new(),
        }
    }

    pub fn spec(&self) -> &SpaceSpec {
        &self.spec
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn with_override(mut self, family: usize, index: i64, digit: u32) -> Self {
        assert!(digit < self.spec.alphabet(family));
        self.overrides.insert((family, index), digit);
        self
    }

    pub fn set_digits(&mut self, family: usize, start: i64, digits: &[u32]) {
        for (k, &d) in digits.iter().enumerate() {
            assert!(d < self.spec.alphabet(family));
            self.overrides.insert((family, start + k as i64), d);
        }
    }

    pub fn digit(&self, family: usize, index: i64) -> u32 {
        debug_assert!(self.spec.families[family].range.contains(index));
        match self.overrides.get(&(family, index)) {
            Some(&d) => d,
            None => self.tapes[family].digit(index),
        }
    }

    pub fn digits(&self, family: usize, start: i64, len: usize) -> Vec<u32> {
        let mut out = self.tapes[family].digits(start, len);
        for (&(_, i), &d) in self.overrides.range((family, start)..(family, start + len as i64)) {
            out[(i - start) as usize] = d;
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpaceError {
    #[error("cylinder sets live on different spaces")]
    SpecMismatch,
}

/// Finitely many coordinate constraints; an unconstrained coordinate is free.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CylinderSet {
    spec: SpaceSpec,
    constraints: BTreeMap<(usize, i64), BTreeSet<u32>>,
}

impl CylinderSet {
    pub fn full(spec: &SpaceSpec) -> Self {
        CylinderSet {
            spec: spec.clone(),
            constraints: BTreeMap::new(),
        }
    }

    pub fn spec(&self) -> &SpaceSpec {
        &self.spec
    }

    pub fn constraints(&self) -> &BTreeMap<(usize, i64), BTreeSet<u32>> {
        &self.constraints
    }

    /// Adds a constraint; `None` if it empties the set.
    pub fn constrain(mut self, family: usize, index: i64, allowed: impl IntoIterator<Item = u32>) -> Option<Self> {
        let alphabet = self.spec.alphabet(family);
        let new: BTreeSet<u32> = allowed.into_iter().filter(|&d| d < alphabet).collect();
        let merged: BTreeSet<u32> = match self.constraints.get(&(family, index)) {
            Some(old) => old.intersection(&new).copied().collect(),
            None => new,
        };
        if merged.is_empty() {
            return None;
        }
        if merged.len() as u32 == alphabet {
            self.constraints.remove(&(family, index));
        } else {
            self.constraints.insert((family, index), merged);
        }
        Some(self)
    }

    pub fn fix(self, family: usize, index: i64, digit: u32) -> Option<Self> {
        self.constrain(family, index, [digit])
    }

    /// Fixes `digits[k]` at `start + k`.
    pub fn fix_run(self, family: usize, start: i64, digits: &[u32]) -> Option<Self> {
        let mut c = self;
        for (k, &d) in digits.iter().enumerate() {
            c = c.fix(family, start + k as i64, d)?;
        }
        Some(c)
    }

    pub fn measure(&self) -> ExactRational {
        let mut m = ExactRational::one();
        for ((family, _), allowed) in &self.constraints {
            m *= ExactRational::new(BigInt::from(allowed.len()), BigInt::from(self.spec.alphabet(*family)));
        }
        m
    }

    pub fn intersect(&self, other: &CylinderSet) -> Result<Option<CylinderSet>, SpaceError> {
        if self.spec != other.spec {
            return Err(SpaceError::SpecMismatch);
        }
        let mut c = self.clone();
        for (&(family, index), allowed) in &other.constraints {
            match c.constrain(family, index, allowed.iter().copied()) {
                Some(next) => c = next,
                None => return Ok(None),
            }
        }
        Ok(Some(c))
    }

    /// Membership with digits supplied by `digit(family, index)`.
    pub fn member_by<E>(&self, mut digit: impl FnMut(usize, i64) -> Result<u32, E>) -> Result<bool, E> {
        for (&(family, index), allowed) in &self.constraints {
            if !allowed.contains(&digit(family, index)?) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn member(&self, pt: &TapePoint) -> Result<bool, SpaceError> {
        if pt.spec() != &self.spec {
            return Err(SpaceError::SpecMismatch);
        }
        self.member_by(|f, i| Ok(pt.digit(f, i)))
    }

    /// `X(l_0, ..., l_j)`.
    pub fn x_prefix(bits: &[u32]) -> Self {
        CylinderSet::full(&SpaceSpec::x())
            .fix_run(0, 0, bits)
            .expect("bits must be 0 or 1")
    }
}

impl fmt::Display for CylinderSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.constraints.is_empty() {
            return write!(f, "Ω");
        }
        let parts: Vec<String> = self
            .constraints
            .iter()
            .map(|(&(family, index), allowed)| {
                let set: Vec<String> = allowed.iter().map(|d| d.to_string()).collect();
                format!("{}[{}]∈{{{}}}", self.spec.families[family].name, index, set.join(","))
            })
            .collect();
        write!(f, "{}", parts.join(" ∩ "))
    }
}

/// Point of `X = {0,1}^N` moved by `t^shift`; `t` is the dyadic odometer.
#[derive(Debug, Clone)]
pub struct XPoint {
    tape: DigitTape,
    shift: BigInt,
}

impl XPoint {
    pub fn new(seed: u64) -> Self {
        XPoint {
            tape: DigitTape::new(seed, "X", 2),
            shift: BigInt::zero(),
        }
    }

    pub fn shift(&self) -> &BigInt {
        &self.shift
    }

    pub fn translated(&self, k: &BigInt) -> XPoint {
        XPoint {
            tape: self.tape.clone(),
            shift: &self.shift + k,
        }
    }

    pub fn base_bits(&self, len: usize) -> Vec<u32> {
        self.tape.digits(0, len)
    }

    /// First `len` bits of the moved point.
    pub fn bits(&self, len: usize) -> Vec<u32> {
        let w = AdicWindow::from_digits(2, &self.base_bits(len)).expect("bits");
        w.odometer_add(&self.shift).digits()
    }
}

/// Point of `Z = prod over cosets of Z0`, moved by an accumulated group element `g`.
///
/// The coordinate at `alpha` is `b^-1 z(beta)` where `s(beta) b = g^-1 s(alpha)`.
#[derive(Debug, Clone)]
pub struct ZPoint {
    group: BsGroup,
    seed: u64,
    element: BrittonForm,
    tapes: RefCell<HashMap<CosetRep, DigitTape>>,
}

impl ZPoint {
    pub fn new(group: BsGroup, seed: u64) -> Self {
        ZPoint {
            group,
            seed,
            element: BrittonForm::identity(group.presentation()),
            tapes: RefCell::new(HashMap::new()),
        }
    }

    pub fn element(&self) -> &BrittonForm {
        &self.element
    }

    pub fn acted(&self, g: &GroupWord) -> ZPoint {
        ZPoint {
            group: self.group,
            seed: self.seed,
            element: self.group.britton_reduce(g).mul(&self.element),
            tapes: self.tapes.clone(),
        }
    }

    pub fn acted_form(&self, g: &BrittonForm) -> ZPoint {
        ZPoint {
            group: self.group,
            seed: self.seed,
            element: g.mul(&self.element),
            tapes: self.tapes.clone(),
        }
    }

    /// Unmoved coordinate at a coset.
    pub fn base_digits(&self, coset: &CosetRep, len: usize) -> Vec<u32> {
        let mut tapes = self.tapes.borrow_mut();
        let tape = tapes
            .entry(coset.clone())
            .or_insert_with(|| DigitTape::new(self.seed, &format!("Z:{coset}"), self.group.p * self.group.q));
        tape.digits(0, len)
    }

    pub fn materialized_cosets(&self) -> usize {
        self.tapes.borrow().len()
    }

    /// First `len` digits of the coordinate at `alpha`.
    pub fn coordinate(&self, alpha: &CosetRep, len: usize) -> Vec<u32> {
        let g = self.element.to_word();
        let (beta, b) = self.group.coind_transfer(&g, alpha);
        let base = self.base_digits(&beta, len);
        AdicWindow::from_digits(self.group.p * self.group.q, &base)
            .expect("tape digits")
            .odometer_add(&-b)
            .digits()
    }
}
