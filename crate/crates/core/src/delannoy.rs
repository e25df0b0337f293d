//! Weighted Delannoy paths modulo the swap `HV <-> VH`.
//!
//! A path from `(0,0)` to `(n,m)` uses `H = (1,0)`, `V = (0,1)` and
//! `D = (1,1)`. Every equivalence class has a unique word with no `HV`
//! factor, and a class with `k` diagonal steps weighs `a^{n+m-2k} b^k`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::dense::DenseMatrix;
use crate::error::{DomainError, RiordanError};
use crate::palindromic::{construct, kim_to_params, KimParams};
use crate::par::{map_collect, Exec};
use crate::poly::WeightPoly;
use crate::rational::{binomial, pow, Rational};
use crate::riordan::RiordanMatrix;
use crate::series::PowerSeries;

/// Largest `n` or `m` accepted by the exhaustive oracles.
pub const ENUMERATION_CAP: usize = 8;

fn check_cap(what: &'static str, n: usize, m: usize) -> Result<(), DomainError> {
    let got = n.max(m);
    if got > ENUMERATION_CAP {
        return Err(DomainError::OracleBudget {
            what,
            max: ENUMERATION_CAP,
            got,
        });
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PathWord(Vec<u8>);

impl PathWord {
    pub fn new(steps: &str) -> Result<Self, DomainError> {
        match steps.bytes().find(|s| !matches!(s, b'H' | b'V' | b'D')) {
            Some(bad) => Err(DomainError::Parameter(format!(
                "path step must be H, V or D, got {:?}",
                bad as char
            ))),
            None => Ok(Self(steps.as_bytes().to_vec())),
        }
    }

    pub fn steps(&self) -> &[u8] {
        &self.0
    }

    pub fn as_str(&self) -> &str {
        std::str::from_utf8(&self.0).expect("ASCII steps")
    }

    fn count(&self, step: u8) -> usize {
        self.0.iter().filter(|&&s| s == step).count()
    }

    pub fn endpoint(&self) -> (usize, usize) {
        let d = self.diagonals();
        (self.count(b'H') + d, self.count(b'V') + d)
    }

    pub fn diagonals(&self) -> usize {
        self.count(b'D')
    }

    pub fn has_hv(&self) -> bool {
        self.0.windows(2).any(|w| w == b"HV")
    }
}

impl fmt::Display for PathWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

fn extend_paths(n: usize, m: usize, prefix: &mut Vec<u8>, out: &mut Vec<PathWord>) {
    if n == 0 && m == 0 {
        out.push(PathWord(prefix.clone()));
        return;
    }
    // D < H < V in byte order, so this emits words already sorted.
    let moves = [(b'D', 1, 1), (b'H', 1, 0), (b'V', 0, 1)];
    for (step, dn, dm) in moves {
        if n >= dn && m >= dm {
            prefix.push(step);
            extend_paths(n - dn, m - dm, prefix, out);
            prefix.pop();
        }
    }
}

pub fn enumerate_paths(n: usize, m: usize) -> Result<Vec<PathWord>, DomainError> {
    enumerate_paths_with(n, m, Exec::default())
}

/// All paths to `(n, m)` in lexicographic order, partitioned by first step.
pub fn enumerate_paths_with(n: usize, m: usize, exec: Exec) -> Result<Vec<PathWord>, DomainError> {
    check_cap("enumerate_paths", n, m)?;
    if n == 0 && m == 0 {
        return Ok(vec![PathWord(Vec::new())]);
    }
    let firsts: Vec<(u8, usize, usize)> = [(b'D', 1, 1), (b'H', 1, 0), (b'V', 0, 1)]
        .into_iter()
        .filter(|&(_, dn, dm)| n >= dn && m >= dm)
        .collect();
    let parts = map_collect(exec, &firsts, |&(step, dn, dm)| {
        let mut out = Vec::new();
        extend_paths(n - dn, m - dm, &mut vec![step], &mut out);
        out
    });
    Ok(parts.into_iter().flatten().collect())
}

/// `sum_k C(n,k) C(m,k) 2^k`.
pub fn delannoy_number(n: usize, m: usize) -> BigInt {
    (0..=n.min(m))
        .map(|k| binomial(n as u64, k as u64) * binomial(m as u64, k as u64) * (BigInt::one() << k))
        .sum()
}

/// The word `V^{v_0} H^{h_0} D V^{v_1} H^{h_1} D ... D V^{v_k} H^{h_k}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassRepresentative {
    v: Vec<usize>,
    h: Vec<usize>,
}

impl ClassRepresentative {
    pub fn new(v: Vec<usize>, h: Vec<usize>) -> Result<Self, DomainError> {
        if v.is_empty() || v.len() != h.len() {
            return Err(DomainError::Parameter(
                "v and h must be nonempty compositions of equal length".into(),
            ));
        }
        Ok(Self { v, h })
    }

    pub fn k(&self) -> usize {
        self.v.len() - 1
    }

    pub fn v(&self) -> &[usize] {
        &self.v
    }

    pub fn h(&self) -> &[usize] {
        &self.h
    }

    pub fn endpoint(&self) -> (usize, usize) {
        let k = self.k();
        (self.h.iter().sum::<usize>() + k, self.v.iter().sum::<usize>() + k)
    }

    /// Number of words in the class: each block of `v` V's and `h` H's can
    /// be shuffled freely, giving `prod_i C(v_i + h_i, v_i)`.
    pub fn class_size(&self) -> BigInt {
        self.v
            .iter()
            .zip(&self.h)
            .map(|(&v, &h)| binomial((v + h) as u64, v as u64))
            .product()
    }

    pub fn word(&self) -> PathWord {
        let mut w = Vec::new();
        for (i, (&v, &h)) in self.v.iter().zip(&self.h).enumerate() {
            if i > 0 {
                w.push(b'D');
            }
            w.extend(std::iter::repeat_n(b'V', v));
            w.extend(std::iter::repeat_n(b'H', h));
        }
        PathWord(w)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "k": self.k(),
            "v": self.v,
            "h": self.h,
            "word": self.word().to_string(),
            "size": self.class_size().to_string(),
        })
    }
}

/// Counts `V`s and `H`s in each block between diagonal steps.
pub fn canonicalize(w: &PathWord) -> ClassRepresentative {
    let mut v = vec![0];
    let mut h = vec![0];
    for &s in w.steps() {
        match s {
            b'V' => *v.last_mut().unwrap() += 1,
            b'H' => *h.last_mut().unwrap() += 1,
            _ => {
                v.push(0);
                h.push(0);
            }
        }
    }
    ClassRepresentative { v, h }
}

/// Weak compositions of `total` into `parts` parts, in lexicographic order.
fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Every class representative for `(n, m)`, built directly from pairs of
/// compositions; no enumeration bound applies.
pub fn equivalence_classes(n: usize, m: usize) -> Vec<ClassRepresentative> {
    let mut out = Vec::new();
    for k in 0..=n.min(m) {
        let hs = compositions(n - k, k + 1);
        for v in compositions(m - k, k + 1) {
            for h in &hs {
                out.push(ClassRepresentative { v: v.clone(), h: h.clone() });
            }
        }
    }
    out.sort();
    out
}

/// Classes found by canonicalizing every path, with class sizes.
pub fn equivalence_classes_oracle(n: usize, m: usize) -> Result<Vec<(ClassRepresentative, usize)>, DomainError> {
    let mut classes = BTreeMap::new();
    for w in enumerate_paths(n, m)? {
        *classes.entry(canonicalize(&w)).or_insert(0) += 1;
    }
    Ok(classes.into_iter().collect())
}

/// A commutative ring the path weights can live in.
pub trait Weight:
    Clone + PartialEq + Zero + One + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + From<BigInt>
{
}

impl<T> Weight for T where
    T: Clone + PartialEq + Zero + One + Add<Output = T> + Sub<Output = T> + Mul<Output = T> + From<BigInt>
{
}

fn power<W: Weight>(base: &W, exp: usize) -> W {
    (0..exp).fold(W::one(), |acc, _| acc * base.clone())
}

/// `a` per unit step, `b` per diagonal.
pub fn path_weight<W: Weight>(w: &PathWord, a: &W, b: &W) -> W {
    let k = w.diagonals();
    power(a, w.steps().len() - k) * power(b, k)
}

/// `sum_k C(n,k) C(m,k) a^{n+m-2k} b^k`.
pub fn weight_closed<W: Weight>(n: usize, m: usize, a: &W, b: &W) -> W {
    (0..=n.min(m)).fold(W::zero(), |acc, k| {
        let c = binomial(n as u64, k as u64) * binomial(m as u64, k as u64);
        acc + W::from(c) * power(a, n + m - 2 * k) * power(b, k)
    })
}

/// The grid `w(i, j)` for `i < rows`, `j < cols` from
/// `w = a w(n-1,m) + a w(n,m-1) + (b - a^2) w(n-1,m-1)`.
pub fn weight_grid<W: Weight>(rows: usize, cols: usize, a: &W, b: &W) -> Vec<Vec<W>> {
    let corr = b.clone() - a.clone() * a.clone();
    let mut grid: Vec<Vec<W>> = Vec::with_capacity(rows);
    for i in 0..rows {
        let mut row: Vec<W> = Vec::with_capacity(cols);
        for j in 0..cols {
            let w = if i == 0 || j == 0 {
                power(a, i + j)
            } else {
                a.clone() * grid[i - 1][j].clone()
                    + a.clone() * row[j - 1].clone()
                    + corr.clone() * grid[i - 1][j - 1].clone()
            };
            row.push(w);
        }
        grid.push(row);
    }
    grid
}

pub fn weight_recursive<W: Weight>(n: usize, m: usize, a: &W, b: &W) -> W {
    weight_grid(n + 1, m + 1, a, b)[n][m].clone()
}

/// Total weight of the quotient set, one representative per class.
pub fn weight_by_classes<W: Weight>(n: usize, m: usize, a: &W, b: &W) -> Result<W, DomainError> {
    Ok(equivalence_classes_oracle(n, m)?
        .iter()
        .fold(W::zero(), |acc, (c, _)| acc + path_weight(&c.word(), a, b)))
}

/// `(a + (b - a^2) z)^n / (1 - a z)^{n+1}` to `order` coefficients.
pub fn wn_generating_function(n: usize, a: &Rational, b: &Rational, order: usize) -> PowerSeries {
    let lin = PowerSeries::from_rationals(&[a.clone(), b - a * a], order);
    let geo = PowerSeries::geometric(a, order);
    lin.pow(n as u32).mul(&geo.pow(n as u32 + 1))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedDelannoyMatrix {
    a: Rational,
    b: Rational,
    grid: Vec<Vec<Rational>>,
}

impl WeightedDelannoyMatrix {
    pub fn new(a: Rational, b: Rational, size: usize) -> Self {
        let grid = weight_grid(size, size, &a, &b);
        Self { a, b, grid }
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn size(&self) -> usize {
        self.grid.len()
    }

    pub fn get(&self, n: usize, m: usize) -> &Rational {
        &self.grid[n][m]
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.grid
    }

    pub fn to_dense(&self) -> DenseMatrix {
        DenseMatrix::from_fn(self.size(), |i, j| self.grid[i][j].clone())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "kind": "delannoy-weights",
            "a": self.a.to_string(),
            "b": self.b.to_string(),
            "grid": crate::riordan::rows_to_strings(&self.grid),
        })
    }
}

/// `P_a = [C(n,k) a^{n-k}]`.
pub fn weighted_pascal(a: &Rational, size: usize) -> DenseMatrix {
    DenseMatrix::from_fn(size, |n, k| {
        if k > n {
            Rational::zero()
        } else {
            Rational::from_integer(binomial(n as u64, k as u64)) * pow(a, (n - k) as i64)
        }
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorizationReport {
    pub weights: DenseMatrix,
    pub product: DenseMatrix,
}

impl FactorizationReport {
    pub fn holds(&self) -> bool {
        self.weights == self.product
    }

    pub fn to_json(&self) -> Value {
        json!({
            "kind": "delannoy-factorization",
            "size": self.weights.size(),
            "holds": self.holds(),
            "product": crate::riordan::rows_to_strings(self.product.rows()),
        })
    }
}

/// Compares the weight grid with `P_a D_b P_a^T` on the `size x size` prefix.
pub fn pascal_factorization_check(a: &Rational, b: &Rational, size: usize) -> FactorizationReport {
    let p = weighted_pascal(a, size);
    let diag: Vec<Rational> = (0..size).map(|k| pow(b, k as i64)).collect();
    let product = p.mul(&DenseMatrix::diagonal(&diag)).mul(&p.transpose());
    FactorizationReport {
        weights: WeightedDelannoyMatrix::new(a.clone(), b.clone(), size).to_dense(),
        product,
    }
}

fn q_rows<W: Weight>(a: &W, b: &W, rows: usize) -> Vec<Vec<W>> {
    let grid = weight_grid(rows.max(1), rows.max(1), a, b);
    (0..rows)
        .map(|n| (0..=n).map(|k| grid[n - k][k].clone()).collect())
        .collect()
}

/// `q(n, k) = w(n - k, k)` for `n < rows`.
pub fn q_matrix(a: &Rational, b: &Rational, rows: usize) -> Result<Vec<Vec<Rational>>, DomainError> {
    if a.is_zero() {
        return Err(DomainError::Parameter(
            "a must be nonzero: with a = 0 the table is not a Riordan array".into(),
        ));
    }
    Ok(q_rows(a, b, rows))
}

pub fn q_matrix_symbolic(rows: usize) -> Vec<Vec<WeightPoly>> {
    q_rows(&WeightPoly::a(), &WeightPoly::b(), rows)
}

/// `(1/(1 - a z), a z + b z^2/(1 - a z))`.
pub fn q_riordan(a: &Rational, b: &Rational, rows: usize) -> Result<RiordanMatrix, DomainError> {
    let kim = KimParams::new(Rational::one(), a.clone(), b.clone())?;
    Ok(kim.matrix(rows)?)
}

/// The same matrix reached through the palindromic parameterization.
pub fn q_palindromic(a: &Rational, b: &Rational, rows: usize) -> Result<RiordanMatrix, DomainError> {
    let kim = KimParams::new(Rational::one(), a.clone(), b.clone())?;
    construct(&kim_to_params(&kim), rows).map_err(|e: RiordanError| e.into())
}

pub fn poly_rows_to_strings(rows: &[Vec<WeightPoly>]) -> Vec<Vec<String>> {
    rows.iter().map(|r| r.iter().map(|p| p.to_string()).collect()).collect()
}
