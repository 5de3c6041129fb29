//! Exact digit arithmetic on l-adic windows and mixed (q/p)-expansions.
//!
//! An [`AdicWindow`] is a residue modulo `base^precision`; the digit list is
//! only a view of that residue. All carry logic in the rest of the crate
//! reduces to big-integer modular arithmetic performed here.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::rc::Rc;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Exact rationals. Values of `Z[1/p, 1/q]` are rationals whose reduced
/// denominator only contains the primes of `p` and `q`.
pub type ExactRational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("digit {digit} out of range for base {base}")]
    DigitOutOfRange { digit: u64, base: u32 },
    #[error("window value is not divisible by {divisor}")]
    NotDivisible { divisor: u32 },
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("expansion needs depth {needed}, only {available} available")]
    DepthInsufficient { needed: usize, available: usize },
    #[error("{0} is not an element of Z[1/p,1/q]")]
    NotInRing(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
}

pub type Result<T> = std::result::Result<T, ExactError>;

type InverseCache = HashMap<(u32, usize, u32, usize), Rc<BigUint>>;

thread_local! {
    static POW_CACHE: RefCell<HashMap<(u32, usize), Rc<BigUint>>> = RefCell::new(HashMap::new());
    static INVERSES: RefCell<InverseCache> = RefCell::new(HashMap::new());
}

/// `b^e` inverted modulo `c^d`, memoized per thread.
pub fn inverse_pow(b: u32, e: usize, c: u32, d: usize) -> Rc<BigUint> {
    INVERSES.with(|cache| {
        if let Some(v) = cache.borrow().get(&(b, e, c, d)) {
            return v.clone();
        }
        let m = pow_u(c, d);
        let v = Rc::new(mod_inverse(&(&*pow_u(b, e) % &*m), &m));
        cache.borrow_mut().insert((b, e, c, d), v.clone());
        v
    })
}

/// `base^exp`, memoized per thread.
pub fn pow_u(base: u32, exp: usize) -> Rc<BigUint> {
    POW_CACHE.with(|cache| {
        if let Some(v) = cache.borrow().get(&(base, exp)) {
            return v.clone();
        }
        let v = Rc::new(num_traits::pow(BigUint::from(base), exp));
        let mut c = cache.borrow_mut();
        if c.len() > 4096 {
            c.clear();
        }
        c.insert((base, exp), v.clone());
        v
    })
}

/// Reduce a signed integer into `[0, modulus)`.
pub fn mod_floor_big(x: &BigInt, modulus: &BigUint) -> BigUint {
    let m = BigInt::from_biguint(Sign::Plus, modulus.clone());
    x.mod_floor(&m).to_biguint().expect("mod_floor is non-negative")
}

/// Modular inverse of `a` modulo `m` (`gcd(a, m) = 1` is the caller's contract).
pub fn mod_inverse(a: &BigUint, m: &BigUint) -> BigUint {
    if m.is_one() {
        return BigUint::zero();
    }
    let a = BigInt::from_biguint(Sign::Plus, a % m);
    let mm = BigInt::from_biguint(Sign::Plus, m.clone());
    let ext = a.extended_gcd(&mm);
    assert!(ext.gcd.is_one(), "mod_inverse: arguments are not coprime");
    mod_floor_big(&ext.x, m)
}

/// `gcd(p, q) == 1`.
pub fn coprime(p: u32, q: u32) -> bool {
    p.gcd(&q) == 1
}

/// A finite window `d_0 .. d_{D-1}` of an l-adic integer, least significant
/// digit first, with value semantics modulo `l^D`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AdicWindow {
    base: u32,
    precision: usize,
    value: BigUint,
}

impl AdicWindow {
    pub fn zero(base: u32, precision: usize) -> Self {
        assert!(base >= 1, "base must be positive");
        AdicWindow {
            base,
            precision,
            value: BigUint::zero(),
        }
    }

    /// Build from little-endian digits. Fails if a digit is out of range.
    pub fn from_digits(base: u32, digits: &[u32]) -> Result<Self> {
        assert!(base >= 1, "base must be positive");
        if let Some(&d) = digits.iter().find(|&&d| d >= base.max(1) && !(base == 1 && d == 0)) {
            return Err(ExactError::DigitOutOfRange {
                digit: d as u64,
                base,
            });
        }
        let value = if base == 1 || digits.is_empty() {
            BigUint::zero()
        } else if base <= 256 {
            let bytes: Vec<u8> = digits.iter().map(|&d| d as u8).collect();
            BigUint::from_radix_le(&bytes, base).expect("digits checked")
        } else {
            digits
                .iter()
                .rev()
                .fold(BigUint::zero(), |acc, &d| acc * base + d)
        };
        Ok(AdicWindow {
            base,
            precision: digits.len(),
            value,
        })
    }

    /// Window holding `value mod base^precision`.
    pub fn from_value(base: u32, precision: usize, value: &BigInt) -> Self {
        let modulus = pow_u(base, precision);
        AdicWindow {
            base,
            precision,
            value: mod_floor_big(value, &modulus),
        }
    }

    pub fn from_biguint(base: u32, precision: usize, value: BigUint) -> Self {
        let modulus = pow_u(base, precision);
        let value = if value >= *modulus { value % &*modulus } else { value };
        AdicWindow {
            base,
            precision,
            value,
        }
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    /// Canonical representative in `[0, base^precision)`.
    pub fn value(&self) -> &BigUint {
        &self.value
    }

    pub fn modulus(&self) -> Rc<BigUint> {
        pow_u(self.base, self.precision)
    }

    pub fn digits(&self) -> Vec<u32> {
        if self.base == 1 {
            return vec![0; self.precision];
        }
        let mut out = if self.value.is_zero() {
            Vec::new()
        } else if self.base <= 256 {
            self.value
                .to_radix_le(self.base)
                .into_iter()
                .map(u32::from)
                .collect()
        } else {
            let mut v = self.value.clone();
            let mut out = Vec::new();
            while !v.is_zero() {
                let (q, r) = v.div_rem(&BigUint::from(self.base));
                out.push(r.to_u32().unwrap());
                v = q;
            }
            out
        };
        out.resize(self.precision, 0);
        out
    }

    /// Digits `start .. start + len` (all must lie below the precision).
    pub fn digit_range(&self, start: usize, len: usize) -> Result<Vec<u32>> {
        if start + len > self.precision {
            return Err(ExactError::PrecisionExhausted(format!(
                "digits {}..{} requested from window of precision {}",
                start,
                start + len,
                self.precision
            )));
        }
        let shifted = &self.value / &*pow_u(self.base, start);
        Ok(AdicWindow::from_biguint(self.base, len, shifted).digits())
    }

    pub fn digit(&self, i: usize) -> Result<u32> {
        Ok(self.digit_range(i, 1)?[0])
    }

    /// Drop to a lower precision.
    pub fn truncate(&self, precision: usize) -> Self {
        assert!(precision <= self.precision, "truncate cannot raise precision");
        AdicWindow::from_biguint(self.base, precision, self.value.clone())
    }

    /// Odometer addition: `value + k mod base^D`, same precision.
    pub fn odometer_add(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return self.clone();
        }
        let modulus = self.modulus();
        let v = BigInt::from_biguint(Sign::Plus, self.value.clone()) + k;
        AdicWindow {
            base: self.base,
            precision: self.precision,
            value: mod_floor_big(&v, &modulus),
        }
    }

    pub fn odometer_add_u(&self, k: &BigUint) -> Self {
        if k.is_zero() {
            return self.clone();
        }
        let modulus = self.modulus();
        let mut v = &self.value + k;
        if v >= *modulus {
            v %= &*modulus;
        }
        AdicWindow {
            base: self.base,
            precision: self.precision,
            value: v,
        }
    }

    /// `value mod m` for a divisor `m` of the base.
    fn residue(&self, m: u32) -> u32 {
        assert!(
            m >= 1 && self.base.is_multiple_of(m),
            "residue modulus must divide the base"
        );
        assert!(self.precision >= 1, "residue needs at least one digit");
        (&self.value % m).to_u32().unwrap()
    }
}

impl fmt::Debug for AdicWindow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AdicWindow(base {}, {:?})", self.base, self.digits())
    }
}

/// The residue `x mod p` of a base-`pq` window, i.e. the unique `e` in
/// `{0..p-1}` with `x - e` in `p E_pq`.
pub fn eta(w: &AdicWindow, p: u32) -> u32 {
    w.residue(p)
}

/// The residue `x mod q` of a base-`pq` window.
pub fn zeta(w: &AdicWindow, q: u32) -> u32 {
    w.residue(q)
}

/// Multiply a base-`pq` window divisible by `p` by `q/p`.
///
/// One digit of precision is lost: the result `r` has precision `D - 1` and
/// satisfies `p r = q v` modulo `p (pq)^(D-1)`. Called with `(q, p)` it
/// multiplies by `p/q` instead.
pub fn div_p_mul_q(w: &AdicWindow, p: u32, q: u32) -> Result<AdicWindow> {
    if !w.base.is_multiple_of(p) || !w.base.is_multiple_of(q) {
        return Err(ExactError::InvalidParameters(format!(
            "base {} is not a multiple of {} and {}",
            w.base, p, q
        )));
    }
    if w.precision < 2 {
        return Err(ExactError::PrecisionExhausted(
            "div_p_mul_q needs at least two digits".into(),
        ));
    }
    if !(&w.value % p).is_zero() {
        return Err(ExactError::NotDivisible { divisor: p });
    }
    let v = (&w.value / p) * q;
    Ok(AdicWindow::from_biguint(w.base, w.precision - 1, v))
}

/// Finite block of a (q/p)-expansion
/// `sum_{n=low}^{-1} y_n (q/p)^n + integer + sum_{m=1}^{M} y_m (q/p)^m`.
///
/// Digits are kept as `u64` so that a single out-of-range digit (after an
/// addition) can be represented before [`carry_normalize`] runs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedRadixExpansion {
    pub p: u32,
    pub q: u32,
    /// `neg[i]` is the digit at position `low_position + i`; `neg.len() == -low_position`.
    pub neg: Vec<u64>,
    pub integer: AdicWindow,
    /// `pos[i]` is the digit at position `i + 1`.
    pub pos: Vec<u64>,
}

impl MixedRadixExpansion {
    pub fn zero(p: u32, q: u32, neg_len: usize, precision: usize, pos_len: usize) -> Self {
        MixedRadixExpansion {
            p,
            q,
            neg: vec![0; neg_len],
            integer: AdicWindow::zero(p * q, precision),
            pos: vec![0; pos_len],
        }
    }

    pub fn low_position(&self) -> i64 {
        -(self.neg.len() as i64)
    }

    pub fn neg_digit(&self, position: i64) -> Option<u64> {
        if position >= 0 {
            return None;
        }
        let idx = position - self.low_position();
        if idx < 0 {
            None
        } else {
            self.neg.get(idx as usize).copied()
        }
    }

    pub fn neg_digit_mut(&mut self, position: i64) -> Option<&mut u64> {
        let idx = position - self.low_position();
        if position >= 0 || idx < 0 {
            None
        } else {
            self.neg.get_mut(idx as usize)
        }
    }

    pub fn in_range(&self) -> bool {
        self.neg.iter().all(|&d| d < self.q as u64)
            && self.pos.iter().all(|&d| d < self.p as u64)
    }

    /// Exact value, reading the integer part as its representative in `[0, (pq)^D)`.
    pub fn to_rational(&self) -> ExactRational {
        let ratio = ExactRational::new(BigInt::from(self.q), BigInt::from(self.p));
        let mut acc = ExactRational::from_integer(BigInt::from_biguint(
            Sign::Plus,
            self.integer.value().clone(),
        ));
        let low = self.low_position();
        for (i, &d) in self.neg.iter().enumerate() {
            let pos = low + i as i64;
            acc += ExactRational::from_integer(BigInt::from(d)) * ratio.pow(pos as i32);
        }
        for (i, &d) in self.pos.iter().enumerate() {
            acc += ExactRational::from_integer(BigInt::from(d)) * ratio.pow(i as i32 + 1);
        }
        acc
    }
}

/// Bring every digit back into range.
///
/// Carries move `q` units at negative position `l` to `p` units at `l + 1`,
/// and `p` units at positive position `m` to `q` units at `m - 1`; whatever
/// reaches position 0 is absorbed by odometer addition on the integer part.
pub fn carry_normalize(e: &MixedRadixExpansion) -> MixedRadixExpansion {
    let (p, q) = (e.p as u64, e.q as u64);
    let mut out = e.clone();
    let mut into_integer = BigUint::zero();

    let mut carry: u64 = 0;
    for d in out.neg.iter_mut() {
        let s = *d + carry;
        *d = s % q;
        carry = (s / q) * p;
    }
    into_integer += carry;

    let mut carry = BigUint::zero();
    for d in out.pos.iter_mut().rev() {
        let s = &carry + *d;
        let (quot, rem) = s.div_rem(&BigUint::from(p));
        *d = rem.to_u64().unwrap();
        carry = quot * q;
    }
    into_integer += carry;

    out.integer = out.integer.odometer_add_u(&into_integer);
    out
}

/// The (q/p)-expansion of `x` in `Z[1/p,1/q]`.
///
/// Negative digits are fixed lowest position first (each is the unique
/// residue solving a congruence modulo `q`), positive digits highest position
/// first (modulo `p`); the integer remainder is stored modulo `(pq)^depth`.
/// Both fractional blocks are limited to `depth` positions.
pub fn requantize(x: &ExactRational, p: u32, q: u32, depth: usize) -> Result<MixedRadixExpansion> {
    if p == 0 || q < 2 || p >= q || !coprime(p, q) {
        return Err(ExactError::InvalidParameters(format!(
            "need coprime 1 <= p < q, got p={p}, q={q}"
        )));
    }
    let (p_exp, q_exp) = denominator_exponents(x.denom(), p, q)
        .ok_or_else(|| ExactError::NotInRing(x.to_string()))?;
    if q_exp > depth || p_exp > depth {
        return Err(ExactError::DepthInsufficient {
            needed: q_exp.max(p_exp),
            available: depth,
        });
    }
    let scale = num_traits::pow(BigInt::from(p), p_exp) * num_traits::pow(BigInt::from(q), q_exp);
    let scaled = x * ExactRational::from_integer(scale);
    debug_assert!(scaled.is_integer());
    expand_with_exponents(&scaled.to_integer(), p, q, p_exp, q_exp, depth)
}

/// Smallest `(j, k)` with `denom | p^j q^k`, or `None` if another prime divides it.
fn denominator_exponents(denom: &BigInt, p: u32, q: u32) -> Option<(usize, usize)> {
    let mut rest = denom.clone();
    let mut split = |f: u32| {
        let mut part = BigInt::one();
        for prime in small_prime_factors(f) {
            let bp = BigInt::from(prime);
            while (&rest % &bp).is_zero() {
                rest /= &bp;
                part *= &bp;
            }
        }
        part
    };
    let d_p = if p > 1 { split(p) } else { BigInt::one() };
    let d_q = split(q);
    if !rest.is_one() {
        return None;
    }
    let smallest = |d: &BigInt, f: u32| {
        let mut e = 0usize;
        let mut acc = BigInt::one();
        while !(&acc % d).is_zero() {
            acc *= f;
            e += 1;
        }
        e
    };
    Some((smallest(&d_p, p), smallest(&d_q, q)))
}

fn small_prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut f = 2;
    while f * f <= n {
        if n.is_multiple_of(f) {
            out.push(f);
            while n.is_multiple_of(f) {
                n /= f;
            }
        }
        f += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Expansion of `numer / (p^j q^k)`.
fn expand_with_exponents(
    numer: &BigInt,
    p: u32,
    q: u32,
    j: usize,
    k: usize,
    depth: usize,
) -> Result<MixedRadixExpansion> {
    let bp = BigInt::from(p);
    let bq = BigInt::from(q);
    // Negative block: sum_{s=1}^k a_{-s} p^s q^{k-s} = numer p^{-j} (mod q^k). With
    // v = numer p^{-j-s} (mod q^s) the digit at -s is v mod q, and v moves on to p (v div q).
    let mut neg = vec![0u64; k];
    if k > 0 {
        let qk = pow_u(q, k);
        let mut v = mod_floor_big(numer, &qk) * &*inverse_pow(p, j + k, q, k) % &*qk;
        let (bq_u, bp_u) = (BigUint::from(q), BigUint::from(p));
        for s in (1..=k).rev() {
            let (quot, a) = v.div_rem(&bq_u);
            neg[k - s] = a.to_u64().unwrap();
            v = quot * &bp_u;
        }
    }

    // Positive block: sum_{m=1}^j b_m q^m p^{j-m} = numer q^{-k} (mod p^j), the same flow
    // with p and q exchanged.
    let mut pos = vec![0u64; j];
    if j > 0 {
        let pj = pow_u(p, j);
        let mut v = mod_floor_big(numer, &pj) * &*inverse_pow(q, k + j, p, j) % &*pj;
        let (bq_u, bp_u) = (BigUint::from(q), BigUint::from(p));
        for m in (1..=j).rev() {
            let (quot, b) = v.div_rem(&bp_u);
            pos[m - 1] = b.to_u64().unwrap();
            v = quot * &bq_u;
        }
    }

    // Over the common denominator p^j q^k the negative block is sum_s a_{-s} p^{s+j} q^{k-s}
    // and the positive block sum_m b_m q^{m+k} p^{j-m}; both are evaluated by Horner.
    let mut neg_sum = BigInt::zero();
    let mut ps = BigInt::one();
    for s in 1..=k {
        ps *= &bp;
        neg_sum = neg_sum * &bq + BigInt::from(neg[k - s]) * &ps;
    }
    let mut pos_sum = BigInt::zero();
    let mut qm = BigInt::one();
    for m in 1..=j {
        qm *= &bq;
        pos_sum = pos_sum * &bp + BigInt::from(pos[m - 1]) * &qm;
    }
    let (den_p, den_q) = (num_traits::pow(bp.clone(), j), num_traits::pow(bq.clone(), k));
    let rest = numer - neg_sum * &den_p - pos_sum * &den_q;
    let (remainder, leftover) = rest.div_mod_floor(&(den_p * den_q));
    if !leftover.is_zero() {
        return Err(ExactError::NotInRing(format!("{numer}/({p}^{j} {q}^{k})")));
    }
    Ok(MixedRadixExpansion {
        p,
        q,
        neg,
        integer: AdicWindow::from_value(p * q, depth, &remainder),
        pos,
    })
}

/// Integer part of a requantized rational as a signed integer (no modular wrap).
pub fn integer_remainder(x: &ExactRational, e: &MixedRadixExpansion) -> BigInt {
    let mut frac = e.clone();
    frac.integer = AdicWindow::zero(e.p * e.q, 0);
    let r = x - frac.to_rational();
    debug_assert!(r.is_integer());
    r.to_integer()
}

/// `(q/p)^n` as an exact rational.
pub fn ratio_pow(p: u32, q: u32, n: i64) -> ExactRational {
    let ratio = ExactRational::new(BigInt::from(q), BigInt::from(p));
    ratio.pow(n as i32)
}

pub fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

pub fn is_nonneg(x: &BigInt) -> bool {
    !x.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(base: u32, digits: &[u32]) -> AdicWindow {
        AdicWindow::from_digits(base, digits).unwrap()
    }

    #[test]
    fn odometer_examples() {
        assert_eq!(w(6, &[5, 5, 0]).odometer_add(&big(1)).digits(), vec![0, 0, 1]);
        assert_eq!(w(2, &[1, 1, 1]).odometer_add(&big(1)).digits(), vec![0, 0, 0]);
        let x = w(6, &[3, 1, 4]);
        assert_eq!(x.odometer_add(&big(0)), x);
        assert_eq!(x.odometer_add(&big(-1)).odometer_add(&big(1)), x);
    }

    #[test]
    fn digits_out_of_range_rejected() {
        assert!(matches!(
            AdicWindow::from_digits(6, &[6]),
            Err(ExactError::DigitOutOfRange { .. })
        ));
    }

    #[test]
    fn eta_zeta_examples() {
        let five = AdicWindow::from_value(6, 3, &big(5));
        assert_eq!(eta(&five, 2), 1);
        assert_eq!(zeta(&five, 3), 2);
        let zero = AdicWindow::zero(6, 3);
        assert_eq!(eta(&zero, 2), 0);
        assert_eq!(zeta(&zero, 3), 0);
        let seven = AdicWindow::from_value(15, 2, &big(7));
        assert_eq!(eta(&seven, 3), 1);
        assert_eq!(zeta(&seven, 5), 2);
    }

    #[test]
    fn div_p_mul_q_examples() {
        let four = AdicWindow::from_value(6, 3, &big(4));
        let r = div_p_mul_q(&four, 2, 3).unwrap();
        assert_eq!(r.precision(), 2);
        assert_eq!(r.digits(), vec![0, 1]);
        let ten = AdicWindow::from_value(6, 3, &big(10));
        assert_eq!(div_p_mul_q(&ten, 2, 3).unwrap().digits(), vec![3, 2]);
        let zero = AdicWindow::zero(6, 3);
        assert_eq!(div_p_mul_q(&zero, 2, 3).unwrap(), AdicWindow::zero(6, 2));
    }

    #[test]
    fn div_p_mul_q_errors() {
        let five = AdicWindow::from_value(6, 3, &big(5));
        assert_eq!(
            div_p_mul_q(&five, 2, 3),
            Err(ExactError::NotDivisible { divisor: 2 })
        );
        let short = AdicWindow::from_value(6, 1, &big(4));
        assert!(matches!(
            div_p_mul_q(&short, 2, 3),
            Err(ExactError::PrecisionExhausted(_))
        ));
    }

    #[test]
    fn carry_normalize_claim_example() {
        // 3 (3/2)^-2 + 0 (3/2)^-1 = 2 (3/2)^-1
        let mut e = MixedRadixExpansion::zero(2, 3, 2, 2, 0);
        e.neg[0] = 3;
        let before = e.to_rational();
        let n = carry_normalize(&e);
        assert_eq!(n.neg, vec![0, 2]);
        assert!(n.integer.value().is_zero());
        assert_eq!(n.to_rational(), before);
    }

    #[test]
    fn carry_normalize_positive_side() {
        // 2 (3/2)^1 = 3: the carry lands in the integer part.
        let mut e = MixedRadixExpansion::zero(2, 3, 0, 3, 1);
        e.pos[0] = 2;
        let n = carry_normalize(&e);
        assert_eq!(n.pos, vec![0]);
        assert_eq!(n.integer.value(), &BigUint::from(3u32));
    }

    #[test]
    fn requantize_examples() {
        let half = ExactRational::new(big(1), big(2));
        let e = requantize(&half, 2, 3, 6).unwrap();
        assert!(e.in_range());
        let diff = e.to_rational() - &half;
        assert!(diff.is_integer());
        assert!((diff.to_integer() % BigInt::from(6u32.pow(6))).is_zero());
        assert_eq!(e.pos, vec![1]);

        let zero = requantize(&ExactRational::zero(), 2, 3, 4).unwrap();
        assert!(zero.neg.is_empty() && zero.pos.is_empty() && zero.integer.value().is_zero());

        let five = requantize(&ExactRational::from_integer(big(5)), 1, 2, 3).unwrap();
        assert_eq!(five.integer.digits(), vec![1, 0, 1]);
    }

    #[test]
    fn requantize_rejects_foreign_primes_and_shallow_depth() {
        let x = ExactRational::new(big(1), big(7));
        assert!(matches!(requantize(&x, 2, 3, 5), Err(ExactError::NotInRing(_))));
        let deep = ratio_pow(2, 3, -5);
        assert!(matches!(
            requantize(&deep, 2, 3, 3),
            Err(ExactError::DepthInsufficient { .. })
        ));
        let e = requantize(&deep, 2, 3, 5).unwrap();
        assert_eq!(e.neg, vec![1, 0, 0, 0, 0]);
    }

    #[test]
    fn requantize_composite_parameters() {
        // p = 4, q = 9: 1/2 needs a full power of 4 in the denominator.
        let half = ExactRational::new(big(1), big(2));
        let e = requantize(&half, 4, 9, 4).unwrap();
        assert!(e.in_range());
        assert!((e.to_rational() - &half).is_integer());
    }
}
