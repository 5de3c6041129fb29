use orbitlab::actions::{Shape, YPoint, YWord};
use orbitlab::bsgroup::{BsGroup, GroupWord};
use orbitlab::stats::clopper_pearson;
use orbitlab::vaes::{greedy_set, Mat3};
use proptest::prelude::*;

fn word() -> impl Strategy<Value = GroupWord> {
    prop::collection::vec((any::<bool>(), -4i64..=4), 0..8).prop_map(|letters| {
        letters
            .into_iter()
            .map(|(is_t, k)| if is_t { GroupWord::t(k.signum()) } else { GroupWord::a(k) })
            .fold(GroupWord::identity(), |acc, w| acc.mul(&w))
    })
}

fn y_word() -> impl Strategy<Value = YWord> {
    prop::collection::vec((any::<bool>(), -3i64..=3, -3i64..=3), 0..6).prop_map(|letters| {
        letters
            .into_iter()
            .map(|(is_t, i, k)| if is_t { YWord::t(i.signum()) } else { YWord::a(i, k) })
            .fold(YWord::default(), |acc, w| acc.mul(&w))
    })
}

fn mat(p: u32) -> impl Strategy<Value = Mat3> {
    prop::array::uniform3(prop::array::uniform3(0..p)).prop_map(move |m| Mat3 { p, m })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn britton_form_is_compatible_with_products(u in word(), v in word()) {
        let g = BsGroup::new(1, 2, 3);
        let left = g.britton_reduce(&g.britton_reduce(&u).to_word().mul(&v));
        prop_assert_eq!(left, g.britton_reduce(&u.mul(&v)));
        prop_assert!(g.britton_reduce(&u.mul(&u.inverse())).is_identity());
    }

    #[test]
    fn engines_agree_on_random_words(w in y_word(), seed in 0u64..1000) {
        let y = YPoint::new(2, 3, seed);
        let shape = Shape::uniform(12);
        prop_assert_eq!(y.act_word(&w).window(shape).unwrap(), y.steps_from_base(&w, shape).unwrap());
        prop_assert_eq!(y.act_word(&w.mul(&w.inverse())).window(shape).unwrap(), y.window(shape).unwrap());
    }

    #[test]
    fn mat3_inverse_and_multiplicative_det(a in mat(7), b in mat(7)) {
        prop_assert_eq!(a.mul(&b).det(), a.det() * b.det() % 7);
        if a.det() != 0 {
            prop_assert_eq!(a.mul(&a.inverse()), Mat3::identity(7));
            prop_assert_eq!(a.inverse().mul(&a), Mat3::identity(7));
        }
    }

    #[test]
    fn greedy_set_avoids_its_translate(size in 2usize..300, h in 1usize..300) {
        let h = h % size;
        prop_assume!(h != 0);
        let set = greedy_set(size, h);
        prop_assert_eq!(set.len(), size.div_ceil(3));
        let members: std::collections::HashSet<_> = set.iter().copied().collect();
        prop_assert!(set.iter().all(|x| !members.contains(&((x + h) % size))));
    }

    #[test]
    fn clopper_pearson_brackets_the_estimate(n in 1u64..5000, frac in 0.0f64..=1.0) {
        let k = (frac * n as f64) as u64;
        let (lo, hi) = clopper_pearson(k, n, 0.99);
        let est = k as f64 / n as f64;
        prop_assert!(lo <= est && est <= hi && 0.0 <= lo && hi <= 1.0);
    }
}
