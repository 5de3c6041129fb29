use super::normal::YPoint;
use super::window::{Shape, YWindow};
use crate::bsgroup::{AffineElement, BsGroup, CosetRep, GroupWord};
use crate::exactnum::{pow_u, ratio_pow, AdicWindow, ExactError, ExactRational, Result};
use crate::spaces::{CylinderSet, SpaceSpec, TapePoint, ZPoint};
use crate::stats::{sample_seed, Frequency};
use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};

/// Least `K <= cap` with `Y0(t^-k s y) = Y0(t^-k y)` on `probe` digits for every `K <= k <= cap`.
pub fn theta_stabilization(s: &ExactRational, y: &YPoint, cap: usize, probe: usize) -> Option<usize> {
    let (p, q) = (y.p(), y.q());
    let mut last_bad: Option<usize> = None;
    for k in 0..=cap {
        let back = AffineElement::new(p, q, ExactRational::zero(), -(k as i64));
        let moved = AffineElement::new(p, q, ratio_pow(p, q, -(k as i64)) * s, -(k as i64));
        let lhs = y.acted(&moved).y0_digits(0, probe).ok()?;
        let rhs = y.acted(&back).y0_digits(0, probe).ok()?;
        if lhs != rhs {
            last_bad = Some(k);
        }
    }
    match last_bad {
        None => Some(0),
        Some(k) if k < cap => Some(k + 1),
        Some(_) => None,
    }
}

/// `tau_m(y)` for `m = 0..=k`: the `Y-` digit at `-1` of `t^{-m-1} y`.
pub fn tau_digits(y: &YPoint, k: usize) -> Vec<u32> {
    let w = y.shift_window(-(k as i64) - 1, Shape::new(k + 1, 1, 0));
    // Slot m of the window sits at position m-k-1 and holds tau_m.
    (0..=k).map(|m| w.neg[m]).collect()
}

/// Membership in `A_k = { tau_m >= q - p for all m <= k }`.
pub fn in_tail_set(y: &YPoint, k: usize) -> bool {
    let bound = y.q() - y.p();
    tau_digits(y, k).iter().all(|&d| d >= bound)
}

pub fn tail_set_estimate(p: u32, q: u32, k: usize, samples: u64, seed: u64) -> Frequency {
    let label = format!("tail-set:{p}:{q}:{k}");
    let hits = (0..samples)
        .filter(|&i| in_tail_set(&YPoint::new(p, q, sample_seed(seed, &label, i)), k))
        .count() as u64;
    Frequency::new(hits, samples)
}

/// Digits `z'_l` for `l = -n-m+1 ..= -n` with
/// `q (q/p)^{-n-m} + sum z_l (q/p)^l = sum z'_l (q/p)^l`, by carrying inside a window.
///
/// `z[0]` is the digit at `-n-m+1`. Fails if the carry escapes above `-n`.
pub fn claim_eq_digits(p: u32, q: u32, n: usize, z: &[u32]) -> Result<Vec<u32>> {
    let m = z.len();
    let mut neg = vec![0u32];
    neg.extend_from_slice(z);
    neg.extend(std::iter::repeat_n(0, n - 1));
    let w = YWindow::new(p, q, neg, AdicWindow::zero(p * q, 1), Vec::new());
    let out = w.add_unit(-((n + m) as i64), &BigInt::from(q))?;
    let escaped = out.neg[0] != 0 || out.neg[m + 1..].iter().any(|&d| d != 0) || !out.y0.value().is_zero();
    if escaped {
        return Err(ExactError::PrecisionExhausted("carry left the block".into()));
    }
    Ok(out.neg[1..=m].to_vec())
}

/// `{ y_n = k_n on [-N, -1], y0 = residue mod modulus, y_m = l_m on [1, M] }`.
///
/// The modulus divides a power of `pq`, so the `Y0` condition is a finite union of cylinders.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaCylinder {
    pub p: u32,
    pub q: u32,
    /// `k_{-N}, ..., k_{-1}`.
    pub neg: Vec<u32>,
    pub modulus: BigUint,
    pub residue: BigUint,
    /// `l_1, ..., l_M`.
    pub pos: Vec<u32>,
}

impl LemmaCylinder {
    /// `Y0` digit 0 fixed to `c`.
    pub fn with_digit(p: u32, q: u32, neg: Vec<u32>, c: u32, pos: Vec<u32>) -> Self {
        LemmaCylinder {
            p,
            q,
            neg,
            modulus: BigUint::from(p * q),
            residue: BigUint::from(c),
            pos,
        }
    }

    /// Least `K` with `modulus | (pq)^K`.
    pub fn y0_depth(&self) -> usize {
        let pq = BigUint::from(self.p * self.q);
        let mut acc = BigUint::from(1u32);
        let mut k = 0;
        while !(&acc % &self.modulus).is_zero() {
            acc *= &pq;
            k += 1;
            assert!(k < 4096, "modulus must divide a power of pq");
        }
        k
    }

    pub fn shape(&self) -> Shape {
        Shape::new(self.neg.len(), self.y0_depth(), self.pos.len())
    }

    /// Explicit disjoint union of product cylinders on `Y`.
    pub fn to_cylinders(&self) -> Vec<CylinderSet> {
        let spec = SpaceSpec::y(self.p, self.q);
        let pq = self.p * self.q;
        let depth = self.y0_depth();
        let n = self.neg.len() as i64;
        let mut base = CylinderSet::full(&spec).fix_run(0, -n, &self.neg);
        if self.p > 1 {
            base = base.and_then(|c| c.fix_run(2, 1, &self.pos));
        }
        let Some(base) = base else { return Vec::new() };
        let total = pow_u(pq, depth);
        let mut out = Vec::new();
        let mut v = self.residue.clone() % &self.modulus;
        while v < *total {
            let digits = AdicWindow::from_biguint(pq, depth, v.clone()).digits();
            if let Some(c) = base.clone().fix_run(1, 0, &digits) {
                out.push(c);
            }
            v += &self.modulus;
        }
        out
    }

    /// Measure as the sum over the explicit cylinder decomposition.
    pub fn measure(&self) -> ExactRational {
        self.to_cylinders().iter().map(|c| c.measure()).sum()
    }

    pub fn contains(&self, w: &YWindow) -> bool {
        let n = self.neg.len();
        let wn = w.neg.len();
        if wn < n || w.y0.precision() < self.y0_depth() {
            return false;
        }
        if w.neg[wn - n..] != self.neg[..] {
            return false;
        }
        if self.p > 1 && (w.pos.len() < self.pos.len() || w.pos[..self.pos.len()] != self.pos[..]) {
            return false;
        }
        w.y0.value() % &self.modulus == self.residue.clone() % &self.modulus
    }

    /// The image under `t`: the `Y-` block shifts up, `y_{-1}` enters `Y0`, the residue
    /// `i` of `Y0` modulo `p` becomes `y_1`.
    pub fn t_image(&self) -> Option<LemmaCylinder> {
        let (p, q) = (BigUint::from(self.p), BigUint::from(self.q));
        if !(&self.modulus % &p).is_zero() || self.neg.is_empty() {
            return None;
        }
        let i = &self.residue % &p;
        let k_last = *self.neg.last().unwrap();
        let modulus = &self.modulus / &p * &q;
        let residue = (BigUint::from(k_last) + (&self.residue - &i) / &p * &q) % &modulus;
        let mut pos = Vec::with_capacity(self.pos.len() + 1);
        if self.p > 1 {
            pos.push(i.to_u32().unwrap());
            pos.extend_from_slice(&self.pos);
        }
        Some(LemmaCylinder {
            p: self.p,
            q: self.q,
            neg: self.neg[..self.neg.len() - 1].to_vec(),
            modulus,
            residue,
            pos,
        })
    }

    /// A tape point inside the set: the given seed with the constrained digits overwritten.
    pub fn sample_inside(&self, seed: u64) -> TapePoint {
        let spec = SpaceSpec::y(self.p, self.q);
        let mut pt = TapePoint::new(&spec, seed);
        pt.set_digits(0, -(self.neg.len() as i64), &self.neg);
        if self.p > 1 {
            pt.set_digits(2, 1, &self.pos);
        }
        let pq = self.p * self.q;
        let depth = self.y0_depth();
        let total = pow_u(pq, depth);
        let free = AdicWindow::from_digits(pq, &pt.digits(1, 0, depth)).unwrap();
        let count = &*total / &self.modulus;
        let pick = free.value() % &count;
        let v = (&self.residue % &self.modulus) + pick * &self.modulus;
        pt.set_digits(1, 0, &AdicWindow::from_biguint(pq, depth, v).digits());
        pt
    }
}

/// Finitely many digit constraints at chosen cosets of `Z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZCylinder {
    pub constraints: Vec<(CosetRep, usize, u32)>,
}

impl ZCylinder {
    pub fn contains(&self, z: &ZPoint) -> bool {
        self.constraints.iter().all(|(c, i, d)| z.coordinate(c, i + 1)[*i] == *d)
    }
}

/// Monte Carlo `xi(a^N B sym-diff B)`: `z` lies in `a^N B` iff `a^-N z` lies in `B`.
pub fn coinduced_sym_diff(group: BsGroup, b: &ZCylinder, n: &BigInt, samples: u64, seed: u64) -> Frequency {
    let back = GroupWord::a_big(-n);
    let label = format!("coind:{n}");
    let hits = (0..samples)
        .filter(|&i| {
            let z = ZPoint::new(group, sample_seed(seed, &label, i));
            b.contains(&z) != b.contains(&z.acted(&back))
        })
        .count() as u64;
    Frequency::new(hits, samples)
}

/// `r n (pq)^k`.
pub fn coinduced_exponent(group: BsGroup, n: u64, k: u32) -> BigInt {
    BigInt::from(group.r) * BigInt::from(n) * BigInt::from(group.p * group.q).pow(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::actions::product::act_y_t;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn theta_identity_is_immediate() {
        let y = YPoint::new(2, 3, 1);
        assert_eq!(theta_stabilization(&ExactRational::zero(), &y, 16, 8), Some(0));
    }

    #[test]
    fn theta_stabilizes_for_unit_and_ratio() {
        for s in [ExactRational::from_integer(1.into()), ratio_pow(2, 3, -1)] {
            let found = (0..100)
                .filter(|&seed| theta_stabilization(&s, &YPoint::new(2, 3, seed), 64, 8).is_some())
                .count();
            assert!(found >= 99, "{found}");
        }
    }

    #[test]
    fn tau_matches_single_steps() {
        let y = YPoint::new(2, 3, 4);
        let taus = tau_digits(&y, 5);
        for (m, &t) in taus.iter().enumerate() {
            let w = y.shift_window(-(m as i64) - 1, Shape::new(1, 1, 0));
            assert_eq!(w.neg[0], t, "m={m}");
        }
    }

    #[test]
    fn tail_set_frequencies() {
        let f = tail_set_estimate(2, 3, 3, 20_000, 1);
        let bound = (2.0f64 / 3.0).powi(4);
        assert!(f.estimate <= bound + 3.0 * f.sigma_at(bound));
        let f0 = tail_set_estimate(2, 3, 0, 20_000, 2);
        assert!((f0.estimate - 2.0 / 3.0).abs() < 3.0 * f0.sigma_at(2.0 / 3.0));
        let f = tail_set_estimate(1, 2, 2, 20_000, 3);
        assert!(f.estimate <= 0.125 + 3.0 * f.sigma_at(0.125));
    }

    #[test]
    fn claim_eq_matches_rational() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for (p, q) in [(2u32, 3u32), (3, 5), (1, 2)] {
            for _ in 0..300 {
                let n = rng.random_range(1..5usize);
                let m = rng.random_range(1..6usize);
                let mut z: Vec<u32> = (0..m).map(|_| rng.random_range(0..q)).collect();
                z[m - 1] = rng.random_range(0..q - p);
                let out = claim_eq_digits(p, q, n, &z).unwrap();
                let val = |d: &[u32]| -> ExactRational {
                    d.iter()
                        .enumerate()
                        .map(|(k, &x)| ExactRational::from_integer(x.into()) * ratio_pow(p, q, k as i64 - (n + m) as i64 + 1))
                        .sum()
                };
                let lhs = ExactRational::from_integer(q.into()) * ratio_pow(p, q, -((n + m) as i64)) + val(&z);
                assert_eq!(lhs, val(&out));
            }
        }
    }

    #[test]
    fn lemma_cylinder_t_image_measure_and_points() {
        let b = LemmaCylinder::with_digit(2, 3, vec![2, 0, 1], 5, vec![1, 0]);
        let tb = b.t_image().unwrap();
        assert_eq!(b.measure(), tb.measure());
        assert_eq!(tb.modulus, BigUint::from(9u32));
        for seed in 0..50 {
            let y = YPoint::from_tape(2, 3, b.sample_inside(seed));
            assert!(b.contains(&y.window(b.shape()).unwrap()));
            let ty = act_y_t(&y);
            assert!(tb.contains(&ty.window(tb.shape()).unwrap()));
        }
    }

    #[test]
    fn coinduced_decay_shrinks() {
        let g = BsGroup::new(1, 2, 3);
        let b = ZCylinder {
            constraints: vec![
                (CosetRep::identity(g.presentation()), 1, 2),
                (g.coset_of(&GroupWord::t(1)), 0, 3),
            ],
        };
        let f0 = coinduced_sym_diff(g, &b, &coinduced_exponent(g, 1, 0), 2000, 1);
        let f4 = coinduced_sym_diff(g, &b, &coinduced_exponent(g, 1, 4), 2000, 1);
        assert!(f4.estimate < f0.estimate, "{} {}", f4.estimate, f0.estimate);
        assert_eq!(f4.hits, 0);
    }
}
