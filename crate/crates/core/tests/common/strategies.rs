//! Proptest strategies over small exact values.

use proptest::prelude::*;
use riordan_core::rational::rat;
use riordan_core::{PowerSeries, Rational, RiordanMatrix};

pub fn rational() -> impl Strategy<Value = Rational> {
    (-4i64..=4, 1i64..=3).prop_map(|(p, q)| rat(p, q))
}

pub fn nonzero_rational() -> impl Strategy<Value = Rational> {
    (prop_oneof![-4i64..=-1, 1i64..=4], 1i64..=3).prop_map(|(p, q)| rat(p, q))
}

pub fn series(order: usize) -> impl Strategy<Value = PowerSeries> {
    prop::collection::vec(rational(), order).prop_map(|c| PowerSeries::new(c).unwrap())
}

/// Series with a nonzero constant term.
pub fn unit_series(order: usize) -> impl Strategy<Value = PowerSeries> {
    (nonzero_rational(), prop::collection::vec(rational(), order - 1)).prop_map(|(c0, rest)| {
        let mut c = vec![c0];
        c.extend(rest);
        PowerSeries::new(c).unwrap()
    })
}

/// `h` with `h(0) = 0`, `h'(0) != 0`.
pub fn substitution(order: usize) -> impl Strategy<Value = PowerSeries> {
    (nonzero_rational(), prop::collection::vec(rational(), order - 2)).prop_map(|(h1, rest)| {
        let mut c = vec![rat(0, 1), h1];
        c.extend(rest);
        PowerSeries::new(c).unwrap()
    })
}

pub fn matrix(order: usize) -> impl Strategy<Value = RiordanMatrix> {
    (unit_series(order), unit_series(order)).prop_map(move |(f, g)| RiordanMatrix::from_t(f, g, order).unwrap())
}
