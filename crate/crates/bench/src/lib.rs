//! Fixed inputs shared by the benchmarks.

use orbitlab::bsgroup::GroupWord;
use orbitlab::exactnum::{ratio_pow, ExactRational};

/// `sum_{i < n} (q/p)^{i - n/2}`, a rational with large numerator and denominator.
pub fn wide_rational(p: u32, q: u32, n: i64) -> ExactRational {
    (0..n).map(|i| ratio_pow(p, q, i - n / 2)).sum()
}

/// `(t a)^n (a^-1 t^-1)^n`, a word of length `4n` that reduces to the identity.
pub fn cancelling_word(n: i64) -> GroupWord {
    let ta = GroupWord::t(1).mul(&GroupWord::a(1));
    ta.pow(n).mul(&ta.inverse().pow(n))
}
