#![allow(dead_code)]

use hnf_core::corpus::{self, Kind, Options};
use hnf_core::{PiecewiseFn, Rational};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn from_seed(seed: u64, kind: Kind, allow_zero: bool) -> PiecewiseFn {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let opts = Options {
        allow_zero_segments: allow_zero,
        ..Options::default()
    };
    corpus::random_fn(&mut rng, kind, &opts)
}

pub fn kind() -> impl Strategy<Value = Kind> {
    prop_oneof![Just(Kind::Continuous), Just(Kind::Jump), Just(Kind::Pole)]
}

/// Random corpus member of any kind.
pub fn arb_fn() -> impl Strategy<Value = PiecewiseFn> {
    (any::<u64>(), kind(), any::<bool>()).prop_map(|(s, k, z)| from_seed(s, k, z))
}

/// Random member without identically vanishing segments.
pub fn arb_fn_nonzero() -> impl Strategy<Value = PiecewiseFn> {
    (any::<u64>(), kind()).prop_map(|(s, k)| from_seed(s, k, false))
}

/// `count` rationals in `(-1, 1)` with denominators up to 997 that avoid the
/// generated breakpoints.
pub fn sample_points(count: usize, salt: u64) -> Vec<Rational> {
    (0..count as u64)
        .map(|k| {
            let m = (k.wrapping_mul(7919).wrapping_add(salt.wrapping_mul(104_729))) % 1993;
            q(m as i64 - 996, 997)
        })
        .collect()
}
