use super::normal::YPoint;
use crate::bsgroup::{t_exponent_sum, AffineElement, BsGroup, GroupWord};
use crate::exactnum::{ratio_pow, ExactRational};
use crate::spaces::{XPoint, ZPoint};
use num_bigint::BigInt;
use num_traits::Zero;

/// `t^k` on `X`; the generator `a` acts trivially.
pub fn act_x(k: &BigInt, x: &XPoint) -> XPoint {
    x.translated(k)
}

/// `a_i^k`: adds `k (q/p)^i`.
pub fn act_y_a(i: i64, k: i64, y: &YPoint) -> YPoint {
    let x = ratio_pow(y.p(), y.q(), i) * ExactRational::from_integer(k.into());
    y.acted(&AffineElement::new(y.p(), y.q(), x, 0))
}

pub fn act_y_t(y: &YPoint) -> YPoint {
    y.acted(&AffineElement::new(y.p(), y.q(), ExactRational::zero(), 1))
}

pub fn act_y_t_inv(y: &YPoint) -> YPoint {
    y.acted(&AffineElement::new(y.p(), y.q(), ExactRational::zero(), -1))
}

pub fn act_z(g: &GroupWord, z: &ZPoint) -> ZPoint {
    z.acted(g)
}

/// Point of `W = X x Y x Z`.
#[derive(Debug, Clone)]
pub struct WPoint {
    pub x: XPoint,
    pub y: YPoint,
    pub z: ZPoint,
}

impl WPoint {
    /// All three components from one seed; the tapes are separated by label.
    pub fn sample(group: BsGroup, seed: u64) -> Self {
        WPoint {
            x: XPoint::new(seed),
            y: YPoint::new(group.p, group.q, seed),
            z: ZPoint::new(group, seed),
        }
    }
}

pub fn act_w(group: &BsGroup, g: &GroupWord, w: &WPoint) -> WPoint {
    WPoint {
        x: act_x(&BigInt::from(t_exponent_sum(g)), &w.x),
        y: w.y.acted(&group.epsilon(g)),
        z: act_z(g, &w.z),
    }
}

/// Point of `W1 = Y x Z`.
#[derive(Debug, Clone)]
pub struct W1Point {
    pub y: YPoint,
    pub z: ZPoint,
}

impl W1Point {
    pub fn sample(group: BsGroup, seed: u64) -> Self {
        W1Point {
            y: YPoint::new(group.p, group.q, seed),
            z: ZPoint::new(group, seed),
        }
    }
}

pub fn act_w1(group: &BsGroup, g: &GroupWord, w: &W1Point) -> W1Point {
    W1Point {
        y: w.y.acted(&group.epsilon(g)),
        z: act_z(g, &w.z),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::actions::Shape;
    use crate::bsgroup::CosetRep;
    use crate::exactnum::AdicWindow;
    use num_traits::One;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn x_odometer_examples() {
        let x = XPoint::new(5);
        let bits = x.base_bits(16);
        let moved = act_x(&BigInt::one(), &x).bits(16);
        let expect = AdicWindow::from_digits(2, &bits).unwrap().odometer_add(&BigInt::one()).digits();
        assert_eq!(moved, expect);
        assert_eq!(act_x(&BigInt::zero(), &x).bits(16), bits);
        let back = act_x(&BigInt::one(), &act_x(&BigInt::from(-1), &x));
        assert_eq!(back.bits(64), x.base_bits(64));
    }

    #[test]
    fn a_on_w_leaves_x_alone() {
        let g = BsGroup::new(1, 2, 3);
        let w = WPoint::sample(g, 3);
        let aw = act_w(&g, &GroupWord::a(1), &w);
        assert_eq!(aw.x.bits(32), w.x.bits(32));
        let y0 = w.y.y0_digits(0, 8).unwrap();
        let expect = AdicWindow::from_digits(6, &y0).unwrap().odometer_add(&BigInt::one()).digits();
        assert_eq!(aw.y.y0_digits(0, 8).unwrap(), expect);
        let e = CosetRep::identity(g.presentation());
        let z = AdicWindow::from_digits(6, &w.z.coordinate(&e, 8)).unwrap().odometer_add(&BigInt::one()).digits();
        assert_eq!(aw.z.coordinate(&e, 8), z);
    }

    #[test]
    fn defining_relation_is_trivial_on_w() {
        for (r, p, q) in [(1, 2, 3), (2, 1, 2)] {
            let g = BsGroup::new(r, p, q);
            let rel = g.relator();
            for seed in 0..100 {
                let w = WPoint::sample(g, seed);
                let moved = act_w(&g, &rel, &w);
                assert_eq!(moved.x.bits(64), w.x.bits(64));
                let shape = Shape::uniform(64);
                assert_eq!(moved.y.window(shape).unwrap(), w.y.window(shape).unwrap());
                let cosets = [
                    CosetRep::identity(g.presentation()),
                    g.coset_of(&GroupWord::t(1)),
                    g.coset_of(&"t^-1 a".parse().unwrap()),
                ];
                for c in &cosets {
                    assert_eq!(moved.z.coordinate(c, 64), w.z.coordinate(c, 64));
                }
            }
        }
    }

    #[test]
    fn z_action_law_on_random_pairs() {
        let g = BsGroup::new(1, 2, 3);
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for seed in 0..100 {
            let z = ZPoint::new(g, seed);
            let g1 = GroupWord::random(&mut rng, 6, 3);
            let g2 = GroupWord::random(&mut rng, 6, 3);
            let lhs = act_z(&g1, &act_z(&g2, &z));
            let rhs = act_z(&g1.mul(&g2), &z);
            for _ in 0..8 {
                let alpha = g.coset_of(&GroupWord::random(&mut rng, 4, 3));
                assert_eq!(lhs.coordinate(&alpha, 16), rhs.coordinate(&alpha, 16));
            }
        }
    }

    #[test]
    fn t_round_trip_on_y() {
        for (p, q) in [(2, 3), (1, 2), (3, 5)] {
            for seed in 0..100 {
                let y = YPoint::new(p, q, seed);
                let back = act_y_t_inv(&act_y_t(&y));
                let shape = Shape::uniform(64);
                assert_eq!(back.window(shape).unwrap(), y.window(shape).unwrap());
            }
        }
    }

    #[test]
    fn p_one_a_is_odometer_on_base_q() {
        let y = YPoint::new(1, 2, 8);
        let before = y.window(Shape::new(16, 32, 0)).unwrap();
        let after = act_y_a(0, 1, &y).window(Shape::new(16, 32, 0)).unwrap();
        assert_eq!(after.neg, before.neg);
        assert_eq!(after.y0, before.y0.odometer_add(&BigInt::one()));
    }
}
