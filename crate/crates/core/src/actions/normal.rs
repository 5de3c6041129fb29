use super::window::{apply_steps, Shape, YWindow, YWord};
use crate::bsgroup::AffineElement;
use crate::exactnum::{inverse_pow, mod_floor_big, pow_u, requantize, AdicWindow, ExactError, ExactRational, Result};
use crate::spaces::{SpaceSpec, TapePoint};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

const NEG: usize = 0;
const Y0: usize = 1;
const POS: usize = 2;

/// Steps per batch so that `max(b, c)^e` stays below `2^62`.
fn batch_len(b: u32, c: u32) -> usize {
    let m = b.max(c).max(2) as u128;
    let mut e = 0;
    let mut acc = 1u128;
    while acc * m < (1u128 << 62) {
        acc *= m;
        e += 1;
    }
    e
}

thread_local! {
}

/// The exact part of the flow `w -> c floor(w / b) + in_{k+1}`, with remainders `w mod b`.
///
/// `w` must hold the start value modulo `b^(d + inputs.len())`; the result is modulo `b^d`.
fn main_flow(b: u32, c: u32, mut w: BigUint, inputs: &[u32], d: usize) -> (Vec<u32>, BigUint) {
    let l = inputs.len();
    if b == 1 {
        return (vec![0; l], BigUint::zero());
    }
    let mut rem = Vec::with_capacity(l);
    let e = batch_len(b, c);
    let (b128, c128) = (b as u128, c as u128);
    let mut k = 0;
    while k < l {
        let step = e.min(l - k);
        let bb = (b as u64).pow(step as u32);
        let cc = (c as u64).pow(step as u32);
        let (h, low) = w.div_rem(&BigUint::from(bb));
        let mut low = low.to_u64().unwrap() as u128;
        for &input in &inputs[k..k + step] {
            rem.push((low % b128) as u32);
            low = c128 * (low / b128) + input as u128;
        }
        w = h * cc + BigUint::from(low);
        k += step;
    }
    (rem, w % &*pow_u(b, d))
}

/// The other prime's component: `z -> c b^-1 (z - r_k) + in_{k+1}` modulo `c^d`, from step `s0`.
///
/// Unrolled, `b^L z_l = sum_k c^(l-k) b^(k-s0) v_k` with `L = l - s0`, accumulated
/// by Horner's rule and divided by `b^L` once at the end.
fn tail_flow(b: u32, c: u32, z: BigUint, rem: &[u32], inputs: &[u32], s0: usize, d: usize) -> BigUint {
    let modulus = pow_u(c, d);
    if modulus.is_one() {
        return BigUint::zero();
    }
    let l = inputs.len();
    if s0 >= l {
        return z % &*modulus;
    }
    let e = batch_len(b, c);
    let mut h = BigInt::from(z) - BigInt::from(rem[s0]);
    let mut bpow = BigInt::one();
    let mut k = s0;
    while k < l {
        let step = e.min(l - k);
        let mut s: i128 = 0;
        for i in 1..=step {
            let mut v = inputs[k + i - 1] as i128;
            if k + i < l {
                v -= rem[k + i] as i128;
            }
            s += v * (c as i128).pow((step - i) as u32) * (b as i128).pow(i as u32);
        }
        h = h * (c as u64).pow(step as u32) + &bpow * s;
        bpow *= (b as u64).pow(step as u32);
        k += step;
    }
    mod_floor_big(&h, &modulus) * &*inverse_pow(b, l - s0, c, d) % &*modulus
}

/// Remainders and `Y0` window of `t^n y` for the unmoved point.
#[derive(Debug, Clone)]
pub struct ShiftData {
    /// `zeta_k` for `n < 0`, `eta_k` for `n > 0`.
    pub rem: Vec<u32>,
    pub y0: AdicWindow,
}

fn shift_data(pt: &TapePoint, p: u32, q: u32, n: i64, d: usize) -> ShiftData {
    let pq = p * q;
    if n == 0 {
        return ShiftData {
            rem: Vec::new(),
            y0: AdicWindow::from_digits(pq, &pt.digits(Y0, 0, d)).unwrap(),
        };
    }
    let l = n.unsigned_abs() as usize;
    let (b, c, inputs): (u32, u32, Vec<u32>) = if n < 0 {
        let inputs = if p == 1 { vec![0; l] } else { pt.digits(POS, 1, l) };
        (q, p, inputs)
    } else {
        (p, q, (1..=l as i64).map(|k| pt.digit(NEG, -k)).collect())
    };
    let start = AdicWindow::from_digits(pq, &pt.digits(Y0, 0, d + l)).unwrap();
    let start = start.value();
    let (rem, main) = if b == 1 {
        (vec![0; l], BigUint::zero())
    } else {
        main_flow(b, c, start % &*pow_u(b, d + l), &inputs, d)
    };
    let tail = if c == 1 || d == 0 {
        BigUint::zero()
    } else if l >= d {
        tail_flow(b, c, BigUint::zero(), &rem, &inputs, l - d, d)
    } else {
        tail_flow(b, c, start % &*pow_u(c, d), &rem, &inputs, 0, d)
    };
    let value = crt(b, c, d, main, tail);
    ShiftData {
        rem,
        y0: AdicWindow::from_biguint(pq, d, value),
    }
}

/// The residue modulo `(bc)^d` with the given parts modulo `b^d` and `c^d`.
fn crt(b: u32, c: u32, d: usize, mod_b: BigUint, mod_c: BigUint) -> BigUint {
    let bd = pow_u(b, d);
    let cd = pow_u(c, d);
    if cd.is_one() {
        return mod_b;
    }
    if bd.is_one() {
        return mod_c;
    }
    let inv = inverse_pow(b, d, c, d);
    let diff = mod_floor_big(&(BigInt::from(mod_c) - BigInt::from(mod_b.clone())), &cd);
    mod_b + &*bd * (diff * &*inv % &*cd)
}

struct YBase {
    p: u32,
    q: u32,
    pt: TapePoint,
    memo: RefCell<HashMap<i64, Rc<ShiftData>>>,
}

/// `x = k (q/p)^i` with a machine-size `k`, the exponent read off the denominator.
fn single_term(x: &ExactRational, p: u32, q: u32) -> Option<(i64, i64)> {
    let (numer, denom) = (x.numer(), x.denom());
    let (base, other) = if denom.is_one() {
        return numer.to_i64().map(|k| (0, k));
    } else if p > 1 && (denom % p).is_zero() {
        (p, q)
    } else {
        (q, p)
    };
    let bits = denom.bits() as f64;
    let guess = (bits / (base as f64).log2()).round() as usize;
    let v = (guess.saturating_sub(1)..=guess + 1).find(|&v| {
        let pw = BigInt::from((*pow_u(base, v)).clone());
        &pw == denom
    })?;
    let scale = BigInt::from((*pow_u(other, v)).clone());
    let (k, rest) = numer.div_rem(&scale);
    if !rest.is_zero() {
        return None;
    }
    let i = if base == q { -(v as i64) } else { v as i64 };
    k.to_i64().map(|k| (i, k))
}

/// A point `g y` of `Y`: a sampled base point `y` and an element `g` of `G(p,q)`.
#[derive(Clone)]
pub struct YPoint {
    base: Rc<YBase>,
    g: AffineElement,
}

impl std::fmt::Debug for YPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "YPoint(seed {}, g {})", self.base.pt.seed(), self.g)
    }
}

impl YPoint {
    pub fn new(p: u32, q: u32, seed: u64) -> Self {
        YPoint::from_tape(p, q, TapePoint::new(&SpaceSpec::y(p, q), seed))
    }

    pub fn from_tape(p: u32, q: u32, pt: TapePoint) -> Self {
        assert_eq!(pt.spec(), &SpaceSpec::y(p, q), "tape must live on Y");
        YPoint {
            base: Rc::new(YBase {
                p,
                q,
                pt,
                memo: RefCell::new(HashMap::new()),
            }),
            g: AffineElement::identity(p, q),
        }
    }

    pub fn p(&self) -> u32 {
        self.base.p
    }

    pub fn q(&self) -> u32 {
        self.base.q
    }

    pub fn tape(&self) -> &TapePoint {
        &self.base.pt
    }

    pub fn element(&self) -> &AffineElement {
        &self.g
    }

    /// `h (g y)`.
    pub fn acted(&self, h: &AffineElement) -> YPoint {
        YPoint {
            base: self.base.clone(),
            g: h.compose(&self.g),
        }
    }

    pub fn act_word(&self, w: &YWord) -> YPoint {
        self.acted(&w.affine(self.p(), self.q()))
    }

    /// Window of the unmoved point read straight from the tapes.
    pub fn base_window(&self, shape: Shape) -> YWindow {
        let (p, q) = (self.p(), self.q());
        let pt = &self.base.pt;
        YWindow::new(
            p,
            q,
            pt.digits(NEG, -(shape.neg as i64), shape.neg),
            AdicWindow::from_digits(p * q, &pt.digits(Y0, 0, shape.y0)).unwrap(),
            if p == 1 { vec![0; shape.pos] } else { pt.digits(POS, 1, shape.pos) },
        )
    }

    fn shift_data(&self, n: i64, d: usize) -> Rc<ShiftData> {
        if let Some(s) = self.base.memo.borrow().get(&n) {
            if s.y0.precision() >= d {
                return s.clone();
            }
        }
        let s = Rc::new(shift_data(&self.base.pt, self.p(), self.q(), n, d));
        self.base.memo.borrow_mut().insert(n, s.clone());
        s
    }

    /// Window of `t^n y` for the unmoved point `y`.
    pub fn shift_window(&self, n: i64, shape: Shape) -> YWindow {
        let (p, q) = (self.p(), self.q());
        let pt = &self.base.pt;
        let data = self.shift_data(n, shape.y0);
        let y0 = data.y0.truncate(shape.y0);
        let l = n.abs();
        let neg: Vec<u32> = (-(shape.neg as i64)..0)
            .map(|v| {
                if n < 0 && v >= -l {
                    data.rem[(l + v) as usize]
                } else {
                    pt.digit(NEG, v - n)
                }
            })
            .collect();
        let pos: Vec<u32> = if p == 1 {
            vec![0; shape.pos]
        } else {
            (1..=shape.pos as i64)
                .map(|i| {
                    if n > 0 && i <= l {
                        data.rem[(l - i) as usize]
                    } else {
                        pt.digit(POS, i - n)
                    }
                })
                .collect()
        };
        YWindow::new(p, q, neg, y0, pos)
    }

    /// Window of `g y`.
    pub fn window(&self, shape: Shape) -> Result<YWindow> {
        let x = &self.g.translation;
        let (p, q) = (self.p(), self.q());
        if x.is_zero() {
            return Ok(self.shift_window(self.g.shift, shape));
        }
        if let Some((i, k)) = single_term(x, p, q) {
            let reach = i.unsigned_abs() as usize;
            let wide = match i.signum() {
                -1 => shape.max(&Shape::new(reach, 0, 0)),
                1 if p > 1 => shape.max(&Shape::new(0, 0, reach)),
                _ => shape,
            };
            let w = self.shift_window(self.g.shift, wide).add_unit(i, &BigInt::from(k))?;
            return w.crop(shape);
        }
        let depth = shape.y0.max(1);
        let e = match requantize(x, p, q, depth) {
            Err(ExactError::DepthInsufficient { needed, .. }) => requantize(x, p, q, needed)?,
            other => other?,
        };
        let wide = shape.max(&Shape::new(e.neg.len(), 0, if p == 1 { 0 } else { e.pos.len() }));
        let w = self.shift_window(self.g.shift, wide).add_expansion(&e)?;
        w.crop(shape)
    }

    /// `Y0` digits `start .. start + len` of `g y`.
    pub fn y0_digits(&self, start: usize, len: usize) -> Result<Vec<u32>> {
        self.window(Shape::new(0, start + len, 0))?.y0.digit_range(start, len)
    }

    /// Step engine: evaluate `word` on the unmoved point one letter at a time.
    pub fn steps_from_base(&self, word: &YWord, shape: Shape) -> Result<YWindow> {
        let (t_letters, lo, hi) = word.cost();
        let reach = lo.unsigned_abs().max(hi.unsigned_abs()) as usize;
        let start = Shape::new(
            shape.neg + t_letters + reach + 1,
            shape.y0 + t_letters,
            shape.pos + t_letters + reach + 1,
        );
        apply_steps(&self.base_window(start), word)?.crop(shape)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::ratio_pow;
    use crate::actions::window::YStep;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_word(rng: &mut ChaCha8Rng, len: usize, reach: i64, t_max: i64) -> YWord {
        YWord(
            (0..len)
                .map(|_| {
                    if rng.random_bool(0.5) {
                        YStep::A {
                            i: rng.random_range(-reach..=reach),
                            k: rng.random_range(-3..=3),
                        }
                    } else {
                        YStep::T(rng.random_range(-t_max..=t_max))
                    }
                })
                .collect(),
        )
    }

    #[test]
    fn flows_match_step_engine_for_pure_shifts() {
        for (p, q) in [(2, 3), (1, 2), (3, 5), (2, 5)] {
            for seed in 0..6 {
                let y = YPoint::new(p, q, seed);
                for n in [-70i64, -33, -5, -1, 1, 4, 40, 90] {
                    let shape = Shape::new(12, 20, 12);
                    let fast = y.shift_window(n, shape);
                    let slow = y.steps_from_base(&YWord::t(n), shape).unwrap();
                    assert_eq!(fast, slow, "p={p} q={q} seed={seed} n={n}");
                }
            }
        }
    }

    #[test]
    fn normal_form_matches_step_engine_on_words() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for (p, q) in [(2, 3), (1, 2), (3, 5)] {
            for s in 0..40 {
                let y = YPoint::new(p, q, s);
                let word = random_word(&mut rng, 8, 4, 6);
                let shape = Shape::new(10, 16, 10);
                let fast = y.act_word(&word).window(shape).unwrap();
                let slow = y.steps_from_base(&word, shape).unwrap();
                assert_eq!(fast, slow, "p={p} q={q} word={word:?}");
            }
        }
    }

    #[test]
    fn long_shift_crosses_batches() {
        let y = YPoint::new(2, 3, 77);
        let shape = Shape::new(8, 10, 8);
        let n = -300;
        let fast = y.shift_window(n, shape);
        let slow = y.steps_from_base(&YWord::t(n), shape).unwrap();
        assert_eq!(fast, slow);
        let fast = y.shift_window(-n, shape);
        let slow = y.steps_from_base(&YWord::t(-n), shape).unwrap();
        assert_eq!(fast, slow);
    }

    #[test]
    fn single_terms_agree_with_requantized_translation() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for (p, q) in [(2u32, 3u32), (1, 2), (3, 5)] {
            let y = YPoint::new(p, q, 9);
            for _ in 0..200 {
                let i = rng.random_range(-40..=40i64);
                let k = rng.random_range(-50..=50i64);
                let n = rng.random_range(-30..=30i64);
                let x = ratio_pow(p, q, i) * ExactRational::from_integer(k.into());
                if k != 0 && p > 1 {
                    assert!(single_term(&x, p, q).is_some(), "{x}");
                }
                let shape = Shape::new(12, 24, 12);
                let fast = y.acted(&AffineElement::new(p, q, x.clone(), n)).window(shape).unwrap();
                let wide = Shape::new(60, 24, 60);
                let slow = y.shift_window(n, wide).translate(&x).unwrap().crop(shape).unwrap();
                assert_eq!(fast, slow, "p={p} q={q} i={i} k={k} n={n}");
            }
        }
    }
}
