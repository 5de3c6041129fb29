use crate::bsgroup::AffineElement;
use crate::exactnum::{
    carry_normalize, div_p_mul_q, eta, ratio_pow, requantize, zeta, AdicWindow, ExactError, ExactRational,
    MixedRadixExpansion, Result,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use std::fmt;

/// How many digits of each block a window covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Shape {
    /// Positions `-neg .. -1` of `Y-`.
    pub neg: usize,
    /// Digits `0 .. y0` of `Y0`.
    pub y0: usize,
    /// Positions `1 ..= pos` of `Y+`.
    pub pos: usize,
}

impl Shape {
    pub fn new(neg: usize, y0: usize, pos: usize) -> Self {
        Shape { neg, y0, pos }
    }

    pub fn uniform(n: usize) -> Self {
        Shape::new(n, n, n)
    }

    pub fn covers(&self, other: &Shape) -> bool {
        self.neg >= other.neg && self.y0 >= other.y0 && self.pos >= other.pos
    }

    pub fn max(&self, other: &Shape) -> Shape {
        Shape::new(self.neg.max(other.neg), self.y0.max(other.y0), self.pos.max(other.pos))
    }
}

/// Finitely many digits of a point of `Y = Y- x Y0 x Y+`.
///
/// For `p = 1` the `Y+` block is a single point; its digits are all zero and
/// any number of them is known.
#[derive(Clone, PartialEq, Eq)]
pub struct YWindow {
    pub p: u32,
    pub q: u32,
    /// `neg[i]` is the digit at position `-neg.len() + i`.
    pub neg: Vec<u32>,
    pub y0: AdicWindow,
    /// `pos[i]` is the digit at position `i + 1`.
    pub pos: Vec<u32>,
}

impl fmt::Debug for YWindow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "YWindow(neg {:?}, y0 {:?}, pos {:?})", self.neg, self.y0.digits(), self.pos)
    }
}

impl YWindow {
    pub fn new(p: u32, q: u32, neg: Vec<u32>, y0: AdicWindow, pos: Vec<u32>) -> Self {
        debug_assert!(neg.iter().all(|&d| d < q));
        debug_assert!(pos.iter().all(|&d| d < p.max(1)));
        YWindow { p, q, neg, y0, pos }
    }

    pub fn shape(&self) -> Shape {
        Shape::new(
            self.neg.len(),
            self.y0.precision(),
            if self.p == 1 { usize::MAX } else { self.pos.len() },
        )
    }

    /// Digit at position `n < 0` of `Y-`.
    pub fn neg_digit(&self, n: i64) -> Option<u32> {
        let idx = self.neg.len() as i64 + n;
        (n < 0 && idx >= 0).then(|| self.neg[idx as usize])
    }

    /// Digit at position `m > 0` of `Y+`.
    pub fn pos_digit(&self, m: i64) -> Option<u32> {
        if self.p == 1 && m > 0 {
            return Some(0);
        }
        (m > 0).then(|| self.pos.get(m as usize - 1).copied()).flatten()
    }

    pub fn y0_digits(&self) -> Vec<u32> {
        self.y0.digits()
    }

    /// Restriction to a smaller shape.
    pub fn crop(&self, shape: Shape) -> Result<YWindow> {
        let have = self.shape();
        if !have.covers(&shape) {
            return Err(ExactError::PrecisionExhausted(format!(
                "window {have:?} does not cover {shape:?}"
            )));
        }
        let pos = if self.p == 1 {
            vec![0; shape.pos]
        } else {
            self.pos[..shape.pos].to_vec()
        };
        Ok(YWindow {
            p: self.p,
            q: self.q,
            neg: self.neg[self.neg.len() - shape.neg..].to_vec(),
            y0: self.y0.truncate(shape.y0),
            pos,
        })
    }

    /// Exact value of the finite block `sum_{n} y_n (q/p)^n` with `Y0` read in `[0, (pq)^D)`.
    pub fn to_rational(&self) -> ExactRational {
        let mut acc = ExactRational::from_integer(BigInt::from(self.y0.value().clone()));
        let low = -(self.neg.len() as i64);
        for (i, &d) in self.neg.iter().enumerate() {
            acc += ExactRational::from_integer(d.into()) * ratio_pow(self.p, self.q, low + i as i64);
        }
        for (i, &d) in self.pos.iter().enumerate() {
            acc += ExactRational::from_integer(d.into()) * ratio_pow(self.p, self.q, i as i64 + 1);
        }
        acc
    }

    fn exhausted(what: &str) -> ExactError {
        ExactError::PrecisionExhausted(what.to_string())
    }

    /// Adds `amount * (q/p)^i`, rippling carries toward `Y0`.
    pub fn add_unit(&self, i: i64, amount: &BigInt) -> Result<YWindow> {
        let mut w = self.clone();
        let (p, q) = (BigInt::from(self.p), BigInt::from(self.q));
        let mut carry = amount.clone();
        if i < 0 {
            let start = w.neg.len() as i64 + i;
            if start < 0 {
                return Err(Self::exhausted("a_i below the Y- window"));
            }
            for d in w.neg[start as usize..].iter_mut() {
                if carry.is_zero() {
                    break;
                }
                let s = BigInt::from(*d) + &carry;
                let (c, r) = s.div_mod_floor(&q);
                *d = r.to_u32().unwrap();
                carry = c * &p;
            }
        } else if i > 0 {
            if self.p == 1 {
                carry *= num_traits::pow(q.clone(), i as usize);
            } else {
                if (i as usize) > w.pos.len() {
                    return Err(Self::exhausted("a_i above the Y+ window"));
                }
                for d in w.pos[..i as usize].iter_mut().rev() {
                    if carry.is_zero() {
                        break;
                    }
                    let s = BigInt::from(*d) + &carry;
                    let (c, r) = s.div_mod_floor(&p);
                    *d = r.to_u32().unwrap();
                    carry = c * &q;
                }
            }
        }
        w.y0 = w.y0.odometer_add(&carry);
        Ok(w)
    }

    /// One application of `t`.
    pub fn t(&self) -> Result<YWindow> {
        let Some(&y_m1) = self.neg.last() else {
            return Err(Self::exhausted("t needs y_-1"));
        };
        let e = eta(&self.y0, self.p);
        let shifted = self.y0.odometer_add(&-BigInt::from(e));
        let y0 = div_p_mul_q(&shifted, self.p, self.q)?.odometer_add(&BigInt::from(y_m1));
        let mut neg = Vec::with_capacity(self.neg.len());
        neg.extend_from_slice(&self.neg[..self.neg.len() - 1]);
        let mut pos = Vec::with_capacity(self.pos.len() + 1);
        if self.p > 1 {
            pos.push(e);
            pos.extend_from_slice(&self.pos);
        }
        Ok(YWindow {
            p: self.p,
            q: self.q,
            neg,
            y0,
            pos,
        })
    }

    /// One application of `t^-1`.
    pub fn t_inv(&self) -> Result<YWindow> {
        let Some(y1) = self.pos_digit(1) else {
            return Err(Self::exhausted("t^-1 needs y_1"));
        };
        let z = zeta(&self.y0, self.q);
        let shifted = self.y0.odometer_add(&-BigInt::from(z));
        let y0 = div_p_mul_q(&shifted, self.q, self.p)?.odometer_add(&BigInt::from(y1));
        let mut neg = Vec::with_capacity(self.neg.len());
        if !self.neg.is_empty() {
            neg.extend_from_slice(&self.neg[1..]);
        }
        neg.push(z);
        let pos = if self.p > 1 { self.pos[1..].to_vec() } else { Vec::new() };
        Ok(YWindow {
            p: self.p,
            q: self.q,
            neg,
            y0,
            pos,
        })
    }

    /// Adds an element of `Z[1/p,1/q]` through its mixed-radix expansion.
    pub fn translate(&self, x: &ExactRational) -> Result<YWindow> {
        if x.is_zero() {
            return Ok(self.clone());
        }
        let precision = self.y0.precision();
        let e = match requantize(x, self.p, self.q, precision.max(1)) {
            Err(ExactError::DepthInsufficient { needed, .. }) => requantize(x, self.p, self.q, needed)?,
            other => other?,
        };
        self.add_expansion(&e)
    }

    /// Adds an expansion whose fractional blocks fit inside the window.
    pub fn add_expansion(&self, e: &MixedRadixExpansion) -> Result<YWindow> {
        if e.neg.len() > self.neg.len() || (self.p > 1 && e.pos.len() > self.pos.len()) {
            return Err(Self::exhausted("translation reaches outside the window"));
        }
        let precision = self.y0.precision();
        let mut neg: Vec<u64> = self.neg.iter().map(|&d| d as u64).collect();
        let off = neg.len() - e.neg.len();
        for (k, &d) in e.neg.iter().enumerate() {
            neg[off + k] += d;
        }
        let mut pos: Vec<u64> = self.pos.iter().map(|&d| d as u64).collect();
        for (k, &d) in e.pos.iter().enumerate() {
            pos[k] += d;
        }
        let integer = if e.integer.precision() >= precision {
            e.integer.truncate(precision)
        } else {
            return Err(Self::exhausted("translation integer part too short"));
        };
        let sum = MixedRadixExpansion {
            p: self.p,
            q: self.q,
            neg,
            integer: self.y0.odometer_add_u(integer.value()),
            pos,
        };
        let n = carry_normalize(&sum);
        Ok(YWindow {
            p: self.p,
            q: self.q,
            neg: n.neg.into_iter().map(|d| d as u32).collect(),
            y0: n.integer,
            pos: n.pos.into_iter().map(|d| d as u32).collect(),
        })
    }
}

/// Generators of `G(p,q)` as they act on `Y`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum YStep {
    /// `a_i^k`: add `k (q/p)^i`.
    A { i: i64, k: i64 },
    T(i64),
}

/// A word in the generators `a_i`, `t`; the rightmost letter acts first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct YWord(pub Vec<YStep>);

impl YWord {
    pub fn a(i: i64, k: i64) -> Self {
        YWord(vec![YStep::A { i, k }])
    }

    pub fn t(k: i64) -> Self {
        YWord(vec![YStep::T(k)])
    }

    pub fn then(mut self, other: YWord) -> YWord {
        let mut v = other.0;
        v.append(&mut self.0);
        YWord(v)
    }

    pub fn mul(&self, other: &YWord) -> YWord {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        YWord(v)
    }

    pub fn inverse(&self) -> YWord {
        YWord(
            self.0
                .iter()
                .rev()
                .map(|s| match s {
                    YStep::A { i, k } => YStep::A { i: *i, k: -k },
                    YStep::T(k) => YStep::T(-k),
                })
                .collect(),
        )
    }

    /// The element of `G(p,q)` the word spells.
    pub fn affine(&self, p: u32, q: u32) -> AffineElement {
        let mut g = AffineElement::identity(p, q);
        for s in &self.0 {
            let h = match s {
                YStep::A { i, k } => AffineElement::new(p, q, ratio_pow(p, q, *i) * ExactRational::from_integer((*k).into()), 0),
                YStep::T(k) => AffineElement::new(p, q, ExactRational::zero(), *k),
            };
            g = g.compose(&h);
        }
        g
    }

    /// `t` letters lost per digit of precision, and the reach of the `a_i` letters.
    pub fn cost(&self) -> (usize, i64, i64) {
        let mut t_letters = 0usize;
        let (mut lo, mut hi) = (0i64, 0i64);
        let mut shift = 0i64;
        for s in self.0.iter().rev() {
            match s {
                YStep::A { i, .. } => {
                    lo = lo.min(i - shift);
                    hi = hi.max(i - shift);
                }
                YStep::T(k) => {
                    t_letters += k.unsigned_abs() as usize;
                    shift += k;
                }
            }
        }
        (t_letters, lo, hi)
    }
}

/// Step engine: apply the letters one by one, rightmost first.
pub fn apply_steps(w: &YWindow, word: &YWord) -> Result<YWindow> {
    let mut cur = w.clone();
    for s in word.0.iter().rev() {
        cur = match s {
            YStep::A { i, k } => cur.add_unit(*i, &BigInt::from(*k))?,
            YStep::T(k) => {
                let mut c = cur;
                for _ in 0..k.unsigned_abs() {
                    c = if *k > 0 { c.t()? } else { c.t_inv()? };
                }
                c
            }
        };
    }
    Ok(cur)
}
