//! Reference tables with the library calls that regenerate them.
//!
//! Each fixture stores its expected table as rendered rational strings and
//! a list of checks. Regeneration compares strings exactly. Bi-infinite
//! displays are kept as stored tables; only the blocks that can be tied to
//! a library object are checked.

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::delannoy::{poly_rows_to_strings, q_matrix_symbolic};
use crate::dense::DenseMatrix;
use crate::diagonals::diagonal_family;
use crate::error::RiordanError;
use crate::rational::{binomial, parse_rational, Rational};
use crate::riordan::{rows_to_strings, RiordanMatrix};
use crate::series::PowerSeries;

type Builder = fn(usize) -> Result<RiordanMatrix, RiordanError>;

#[derive(Clone, Copy)]
pub enum Check {
    /// Every stored row equals the matrix row.
    Rows(Builder),
    /// Every stored row equals the symbolic palindromic `(a,b)`-Delannoy row.
    SymbolicQ,
    /// The `size x size` block at `(row0, col0)` equals the matrix prefix.
    Block { row0: usize, col0: usize, size: usize, build: Builder },
    /// All cells in the rectangle are zero or blank.
    Zero { rows: (usize, usize), cols: (usize, usize) },
    /// The `size x size` block at `(row0, col0)` squares to the identity.
    Involution { row0: usize, col0: usize, size: usize },
}

pub struct Fixture {
    pub name: &'static str,
    pub description: &'static str,
    pub expected: &'static [&'static [&'static str]],
    pub checks: &'static [Check],
}

/// A closed form printed with a fixture, and the series the fixture uses.
pub struct FixtureExpression {
    pub fixture: &'static str,
    pub label: &'static str,
    pub text: &'static str,
    pub series: fn(usize) -> PowerSeries,
}

fn series_from(coeff: impl Fn(usize) -> Rational, order: usize) -> PowerSeries {
    PowerSeries::from_rationals(&(0..order).map(coeff).collect::<Vec<_>>(), order)
}

fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn sign(n: usize) -> i64 {
    if n.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn catalan_number(n: usize) -> Rational {
    Rational::new(binomial(2 * n as u64, n as u64), BigInt::from(n + 1))
}

pub fn catalan_series(order: usize) -> PowerSeries {
    series_from(catalan_number, order)
}

/// `1/C(z) = 1 - z C(z)`.
fn catalan_g(order: usize) -> PowerSeries {
    PowerSeries::one(order).sub(&catalan_series(order).shift_mul(1))
}

pub fn pascal(order: usize) -> Result<RiordanMatrix, RiordanError> {
    RiordanMatrix::from_t(PowerSeries::one(order), PowerSeries::from_ints(&[1, -1], order), order)
}

pub fn catalan(order: usize) -> Result<RiordanMatrix, RiordanError> {
    RiordanMatrix::from_t(PowerSeries::one(order), catalan_g(order), order)
}

/// `(1, z C(z)) = T(1/C | 1/C)`.
pub fn catalan_unit(order: usize) -> Result<RiordanMatrix, RiordanError> {
    RiordanMatrix::from_t(catalan_g(order), catalan_g(order), order)
}

/// `f_n = n + 1`.
fn motivating_f(order: usize) -> PowerSeries {
    series_from(|n| int(n as i64 + 1), order)
}

/// `f_n = n - 1`.
fn motivating_f_tilde(order: usize) -> PowerSeries {
    series_from(|n| int(n as i64 - 1), order)
}

pub fn motivating_d(order: usize) -> Result<RiordanMatrix, RiordanError> {
    RiordanMatrix::from_t(motivating_f(order), PowerSeries::from_ints(&[-1, 2], order), order)
}

pub fn motivating_d_tilde(order: usize) -> Result<RiordanMatrix, RiordanError> {
    RiordanMatrix::from_t(motivating_f_tilde(order), PowerSeries::from_ints(&[-1, 2], order), order)
}

/// `f_n = (-1)^n`.
fn delannoy_f(order: usize) -> PowerSeries {
    series_from(|n| int(sign(n)), order)
}

/// `g_0 = 1`, `g_n = 2 (-1)^n`.
fn delannoy_g(order: usize) -> PowerSeries {
    series_from(|n| if n == 0 { int(1) } else { int(2 * sign(n)) }, order)
}

pub fn delannoy(order: usize) -> Result<RiordanMatrix, RiordanError> {
    RiordanMatrix::from_t(delannoy_f(order), delannoy_g(order), order)
}

fn built(build: Builder, order: usize) -> RiordanMatrix {
    build(order).expect("fixture generators are admissible")
}

const PASCAL: &[&[&str]] = &[
    &["1"],
    &["1", "1"],
    &["1", "2", "1"],
    &["1", "3", "3", "1"],
    &["1", "4", "6", "4", "1"],
    &["1", "5", "10", "10", "5", "1"],
];

const CATALAN: &[&[&str]] = &[
    &["1"],
    &["1", "1"],
    &["2", "2", "1"],
    &["5", "5", "3", "1"],
    &["14", "14", "9", "4", "1"],
];

const MOTIVATING_D: &[&[&str]] = &[
    &["-1"],
    &["-4", "1"],
    &["-11", "6", "-1"],
    &["-26", "23", "-8", "1"],
    &["-57", "72", "-39", "10", "-1"],
    &["-120", "201", "-150", "59", "-12", "1"],
];

const MOTIVATING_D_TILDE: &[&[&str]] = &[
    &["1"],
    &["2", "-1"],
    &["3", "-4", "1"],
    &["4", "-11", "6", "-1"],
    &["5", "-26", "23", "-8", "1"],
    &["6", "-57", "72", "-39", "10", "-1"],
    &["7", "-120", "201", "-150", "59", "-12", "1"],
];

const DELANNOY: &[&[&str]] = &[
    &["1"],
    &["1", "1"],
    &["1", "3", "1"],
    &["1", "5", "5", "1"],
    &["1", "7", "13", "7", "1"],
    &["1", "9", "25", "25", "9", "1"],
    &["1", "11", "41", "63", "41", "11", "1"],
];

const Q_AB: &[&[&str]] = &[
    &["1"],
    &["a", "a"],
    &["a^2", "a^2 + b", "a^2"],
    &["a^3", "a^3 + 2*a*b", "a^3 + 2*a*b", "a^3"],
    &["a^4", "a^4 + 3*a^2*b", "a^4 + 4*a^2*b + b^2", "a^4 + 3*a^2*b", "a^4"],
    &["a^5", "a^5 + 4*a^3*b", "a^5 + 6*a^3*b + 3*a*b^2", "a^5 + 6*a^3*b + 3*a*b^2", "a^5 + 4*a^3*b", "a^5"],
];

const PASCAL_BI_INFINITE: &[&[&str]] = &[
    &["1", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0"],
    &["-5", "1", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0"],
    &["10", "-4", "1", "0", "0", "0", "0", "0", "0", "0", "0", "0"],
    &["-10", "6", "-3", "1", "0", "0", "0", "0", "0", "0", "0", "0"],
    &["5", "-4", "3", "-2", "1", "0", "0", "0", "0", "0", "0", "0"],
    &["-1", "1", "-1", "1", "-1", "1", "0", "0", "0", "0", "0", "0"],
    &["0", "0", "0", "0", "0", "0", "1", "0", "0", "0", "0", "0"],
    &["0", "0", "0", "0", "0", "0", "1", "1", "0", "0", "0", "0"],
    &["0", "0", "0", "0", "0", "0", "1", "2", "1", "0", "0", "0"],
    &["0", "0", "0", "0", "0", "0", "1", "3", "3", "1", "0", "0"],
    &["0", "0", "0", "0", "0", "0", "1", "4", "6", "4", "1", "0"],
    &["0", "0", "0", "0", "0", "0", "1", "5", "10", "10", "5", "1"],
];

const BANPAS_BI_INFINITE: &[&[&str]] = &[
    &["-1", "0", "0", "0", "0", "0", "0", "0", "0", "0"],
    &["8", "1", "0", "0", "0", "0", "0", "0", "0", "0"],
    &["-23", "-6", "-1", "0", "0", "0", "0", "0", "0", "0"],
    &["26", "11", "4", "1", "0", "0", "0", "0", "0", "0"],
    &["-5", "-4", "-3", "-2", "-1", "0", "0", "0", "0", "0"],
    &["-4", "-3", "-2", "-1", "0", "1", "0", "0", "0", "0"],
    &["-3", "-2", "-1", "0", "1", "2", "-1", "0", "0", "0"],
    &["-2", "-1", "0", "1", "2", "3", "-4", "1", "0", "0"],
    &["-1", "0", "1", "2", "3", "4", "-11", "6", "-1", "0"],
    &["0", "1", "2", "3", "4", "5", "-26", "23", "-8", "1"],
];

const CATALAN_BI_INFINITE: &[&[&str]] = &[
    &["1"],
    &["-5", "1"],
    &["5", "-4", "1"],
    &["0", "2", "-3", "1"],
    &["0", "0", "0", "-2", "1"],
    &["-1", "-1", "-1", "-1", "-1", "1"],
    &["-5", "-4", "-3", "-2", "-1", "0", "1"],
    &["-20", "-14", "-9", "-5", "-2", "0", "1", "1"],
    &["-75", "-48", "-28", "-14", "-5", "0", "2", "2", "1"],
    &["-275", "-165", "-90", "-42", "-14", "0", "5", "5", "3", "1"],
];

const SELF_DUAL_INVOLUTION: &[&[&str]] = &[
    &["-1"],
    &["7", "1"],
    &["-35/2", "-5", "-1"],
    &["35/2", "15/2", "3", "1"],
    &["-35/8", "-5/2", "-3/2", "-1", "-1"],
    &["-7/8", "-5/8", "-1/2", "-1/2", "-1", "1"],
    &["-7/16", "-3/8", "-3/8", "-1/2", "-3/2", "3", "-1"],
    &["-5/16", "-5/16", "-3/8", "-5/8", "-5/2", "15/2", "-5", "1"],
    &["-35/128", "-5/16", "-7/16", "-7/8", "-35/8", "35/2", "-35/2", "7", "-1"],
];

pub const FIXTURES: &[Fixture] = &[
    Fixture {
        name: "pascal",
        description: "Pascal's triangle T(1 | 1-x)",
        expected: PASCAL,
        checks: &[Check::Rows(pascal)],
    },
    Fixture {
        name: "catalan",
        description: "Catalan array T(1 | (1+sqrt(1-4z))/2)",
        expected: CATALAN,
        checks: &[Check::Rows(catalan)],
    },
    Fixture {
        name: "motivating-D",
        description: "T(1/(1-x)^2 | 2x-1)",
        expected: MOTIVATING_D,
        checks: &[Check::Rows(motivating_d)],
    },
    Fixture {
        name: "motivating-D-tilde",
        description: "T((2x-1)/(1-x)^2 | 2x-1)",
        expected: MOTIVATING_D_TILDE,
        checks: &[Check::Rows(motivating_d_tilde)],
    },
    Fixture {
        name: "delannoy",
        description: "Delannoy triangle T(1/(1+x) | (1-x)/(1+x))",
        expected: DELANNOY,
        checks: &[Check::Rows(delannoy)],
    },
    Fixture {
        name: "q-ab",
        description: "palindromic (a,b)-Delannoy matrix, symbolic in a and b",
        expected: Q_AB,
        checks: &[Check::SymbolicQ],
    },
    Fixture {
        name: "pascal-bi-infinite",
        description: "bi-infinite Pascal display; lower-right block is T(1 | 1-x), B = O",
        expected: PASCAL_BI_INFINITE,
        checks: &[
            Check::Block { row0: 6, col0: 6, size: 6, build: pascal },
            Check::Zero { rows: (0, 6), cols: (6, 12) },
            Check::Zero { rows: (6, 12), cols: (0, 6) },
        ],
    },
    Fixture {
        name: "banpas-bi-infinite",
        description: "bi-infinite display whose lower-right block is T((2x-1)/(1-x)^2 | 2x-1)",
        expected: BANPAS_BI_INFINITE,
        checks: &[
            Check::Block { row0: 5, col0: 5, size: 5, build: motivating_d_tilde },
            Check::Zero { rows: (0, 5), cols: (5, 10) },
        ],
    },
    Fixture {
        name: "catalan-bi-infinite",
        description: "bi-infinite display whose lower-right block is (1, zC(z))",
        expected: CATALAN_BI_INFINITE,
        checks: &[
            Check::Block { row0: 5, col0: 5, size: 5, build: catalan_unit },
            Check::Zero { rows: (0, 5), cols: (5, 10) },
        ],
    },
    Fixture {
        name: "self-dual-involution",
        description: "bi-infinite self-dual involution; the displayed window squares to I",
        expected: SELF_DUAL_INVOLUTION,
        checks: &[Check::Involution { row0: 0, col0: 0, size: 9 }],
    },
];

pub fn find(name: &str) -> Option<&'static Fixture> {
    FIXTURES.iter().find(|f| f.name == name)
}

pub fn names() -> Vec<&'static str> {
    FIXTURES.iter().map(|f| f.name).collect()
}

/// Missing and blank cells read as zero.
fn cell(table: &'static [&'static [&'static str]], i: usize, j: usize) -> &'static str {
    match table.get(i).and_then(|r| r.get(j)) {
        Some(&s) if !s.is_empty() => s,
        _ => "0",
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub row: usize,
    pub col: usize,
    pub expected: String,
    pub got: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixtureReport {
    pub name: &'static str,
    pub mismatches: Vec<Mismatch>,
    pub failures: Vec<String>,
}

impl FixtureReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.failures.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "passed": self.passed(),
            "mismatches": self.mismatches.iter().map(|m| json!({
                "row": m.row, "col": m.col, "expected": m.expected, "got": m.got,
            })).collect::<Vec<_>>(),
            "failures": self.failures,
        })
    }
}

impl Fixture {
    /// The table the fixture's first check regenerates, or the stored
    /// table when the fixture is display only.
    pub fn regenerate(&self) -> Vec<Vec<String>> {
        let rows = self.expected.len();
        match self.checks.first() {
            Some(Check::Rows(build)) => rows_to_strings(built(*build, rows).rows()),
            Some(Check::SymbolicQ) => poly_rows_to_strings(&q_matrix_symbolic(rows)),
            _ => self.stored(),
        }
    }

    pub fn stored(&self) -> Vec<Vec<String>> {
        self.expected
            .iter()
            .map(|r| r.iter().map(|s| s.to_string()).collect())
            .collect()
    }

    pub fn verify(&self) -> FixtureReport {
        let mut report = FixtureReport {
            name: self.name,
            mismatches: Vec::new(),
            failures: Vec::new(),
        };
        let compare = |report: &mut FixtureReport, i: usize, j: usize, got: String| {
            let expected = cell(self.expected, i, j);
            if expected != got {
                report.mismatches.push(Mismatch {
                    row: i,
                    col: j,
                    expected: expected.to_string(),
                    got,
                });
            }
        };
        for check in self.checks {
            match *check {
                Check::Rows(_) | Check::SymbolicQ => {
                    let got = self.regenerate();
                    for (i, row) in self.expected.iter().enumerate() {
                        if row.len() != got[i].len() {
                            report.failures.push(format!("row {i} has {} entries, regenerated {}", row.len(), got[i].len()));
                        }
                        for (j, g) in got[i].iter().enumerate() {
                            compare(&mut report, i, j, g.clone());
                        }
                    }
                }
                Check::Block { row0, col0, size, build } => {
                    let m = built(build, size);
                    for i in 0..size {
                        for j in 0..size {
                            let got = if j <= i { m.rows()[i][j].to_string() } else { "0".into() };
                            compare(&mut report, row0 + i, col0 + j, got);
                        }
                    }
                }
                Check::Zero { rows, cols } => {
                    for i in rows.0..rows.1 {
                        for j in cols.0..cols.1 {
                            compare(&mut report, i, j, "0".into());
                        }
                    }
                }
                Check::Involution { row0, col0, size } => {
                    let parsed = (0..size)
                        .flat_map(|i| (0..size).map(move |j| (i, j)))
                        .map(|(i, j)| parse_rational(cell(self.expected, row0 + i, col0 + j)))
                        .collect::<Result<Vec<_>, _>>();
                    match parsed {
                        Ok(vals) => {
                            let m = DenseMatrix::from_fn(size, |i, j| vals[i * size + j].clone());
                            if !m.mul(&m).is_identity() {
                                report.failures.push(format!("{size}x{size} block does not square to the identity"));
                            }
                        }
                        Err(e) => report.failures.push(e.to_string()),
                    }
                }
            }
        }
        report
    }
}

pub fn verify_all() -> Vec<FixtureReport> {
    FIXTURES.iter().map(Fixture::verify).collect()
}

fn diag_of(build: Builder, n: usize, order: usize) -> PowerSeries {
    let m = built(build, order + n);
    diagonal_family(&m, n + 1, order).expect("budget covers the diagonal").get(n).clone()
}

pub const EXPRESSIONS: &[FixtureExpression] = &[
    FixtureExpression { fixture: "pascal", label: "f", text: "1", series: |n| built(pascal, n).f().clone() },
    FixtureExpression { fixture: "pascal", label: "g", text: "1-x", series: |n| built(pascal, n).g().clone() },
    FixtureExpression { fixture: "pascal", label: "d", text: "1/(1-x)", series: |n| built(pascal, n).d() },
    FixtureExpression { fixture: "pascal", label: "h", text: "x/(1-x)", series: |n| built(pascal, n).h().truncate(n) },
    FixtureExpression { fixture: "pascal", label: "Delta_0", text: "1/(1-x)", series: |n| diag_of(pascal, 0, n) },
    FixtureExpression { fixture: "pascal", label: "Delta_3", text: "1/(1-x)^4", series: |n| diag_of(pascal, 3, n) },
    FixtureExpression {
        fixture: "catalan",
        label: "C",
        text: "(1-sqrt(1-4*z))/(2*z)",
        series: |n| built(catalan, n).d(),
    },
    FixtureExpression { fixture: "catalan", label: "f", text: "1", series: |n| built(catalan, n).f().clone() },
    FixtureExpression {
        fixture: "catalan",
        label: "g",
        text: "(1+sqrt(1-4*z))/2",
        series: |n| built(catalan, n).g().clone(),
    },
    FixtureExpression {
        fixture: "catalan",
        label: "g = 1/C",
        text: "1/((1-sqrt(1-4*z))/(2*z))",
        series: |n| built(catalan, n).g().clone(),
    },
    FixtureExpression { fixture: "catalan", label: "Delta_0", text: "1/(1-x)", series: |n| diag_of(catalan, 0, n) },
    FixtureExpression {
        fixture: "motivating-D",
        label: "f",
        text: "1/(1-x)^2",
        series: |n| built(motivating_d, n).f().clone(),
    },
    FixtureExpression {
        fixture: "motivating-D",
        label: "g",
        text: "2*x-1",
        series: |n| built(motivating_d, n).g().clone(),
    },
    FixtureExpression {
        fixture: "motivating-D",
        label: "Delta_0",
        text: "-1/(1+x)",
        series: |n| diag_of(motivating_d, 0, n),
    },
    FixtureExpression {
        fixture: "motivating-D-tilde",
        label: "f",
        text: "(2*x-1)/(1-x)^2",
        series: |n| built(motivating_d_tilde, n).f().clone(),
    },
    FixtureExpression {
        fixture: "motivating-D-tilde",
        label: "g",
        text: "2*x-1",
        series: |n| built(motivating_d_tilde, n).g().clone(),
    },
    FixtureExpression {
        fixture: "motivating-D-tilde",
        label: "Delta_0",
        text: "1/(1+x)",
        series: |n| diag_of(motivating_d_tilde, 0, n),
    },
    FixtureExpression { fixture: "delannoy", label: "f", text: "1/(1+x)", series: |n| built(delannoy, n).f().clone() },
    FixtureExpression {
        fixture: "delannoy",
        label: "g",
        text: "(1-x)/(1+x)",
        series: |n| built(delannoy, n).g().clone(),
    },
    FixtureExpression { fixture: "delannoy", label: "d", text: "1/(1-x)", series: |n| built(delannoy, n).d() },
    FixtureExpression {
        fixture: "delannoy",
        label: "h",
        text: "x*(1+x)/(1-x)",
        series: |n| built(delannoy, n).h().truncate(n),
    },
];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_series;

    #[test]
    fn every_fixture_verifies() {
        for r in verify_all() {
            assert!(r.passed(), "{}: {:?} {:?}", r.name, r.mismatches, r.failures);
        }
    }

    #[test]
    fn corrupted_table_is_caught() {
        const BAD: &[&[&str]] = &[&["1"], &["1", "1"], &["1", "3", "1"]];
        let fx = Fixture { name: "bad", description: "", expected: BAD, checks: &[Check::Rows(pascal)] };
        let r = fx.verify();
        assert_eq!(r.mismatches, vec![Mismatch { row: 2, col: 1, expected: "3".into(), got: "2".into() }]);
    }

    #[test]
    fn expressions_match_fixture_series() {
        for e in EXPRESSIONS {
            let parsed = parse_series(e.text, 10).unwrap();
            assert_eq!(parsed, (e.series)(10), "{} {}", e.fixture, e.label);
        }
    }

    #[test]
    fn builders_agree_with_oracles() {
        assert_eq!(catalan_series(6), PowerSeries::from_ints(&[1, 1, 2, 5, 14, 42], 6));
        assert_eq!(catalan_unit(4).unwrap().d(), PowerSeries::one(4));
        assert_eq!(delannoy(5).unwrap().g(), &PowerSeries::from_ints(&[1, -2, 2, -2, 2], 5));
        assert_eq!(names().len(), FIXTURES.len());
        assert!(find("motivating-D").is_some() && find("nope").is_none());
    }
}
