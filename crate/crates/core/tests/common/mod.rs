//! Seeded generators shared by the integration tests.

#![allow(dead_code)]

pub mod strategies;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use riordan_core::rational::rat;
use riordan_core::{PowerSeries, Rational, RiordanMatrix};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A small rational `p/q` with `|p| <= 4`, `1 <= q <= 3`.
pub fn small_rational(r: &mut ChaCha8Rng) -> Rational {
    rat(r.gen_range(-4..=4), r.gen_range(1..=3))
}

pub fn nonzero_rational(r: &mut ChaCha8Rng) -> Rational {
    loop {
        let q = small_rational(r);
        if q != rat(0, 1) {
            return q;
        }
    }
}

/// Random series with a nonzero constant term; higher terms are zero with
/// probability one half so that sparse and dense inputs both appear.
pub fn series(r: &mut ChaCha8Rng, order: usize) -> PowerSeries {
    let mut c = vec![nonzero_rational(r)];
    for _ in 1..order {
        c.push(if r.gen_bool(0.5) { small_rational(r) } else { rat(0, 1) });
    }
    PowerSeries::new(c).unwrap()
}

pub fn matrix(r: &mut ChaCha8Rng, order: usize) -> RiordanMatrix {
    RiordanMatrix::from_t(series(r, order), series(r, order), order).unwrap()
}
