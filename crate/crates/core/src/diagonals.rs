//! Diagonal generating functions of Riordan matrices.
//!
//! The `n`-th diagonal of `D = T(f | g)` is `Delta_n(x) = sum_k d_{n+k,k} x^k`.
//! The family obeys
//!
//! ```text
//! Delta_n(x) = (f_n - sum_{l=1}^{n} g_l Delta_{n-l}(x)) / (g_0 - x)
//! ```
//!
//! and collects into the bivariate function `f(z) / (g(z) - x)`.

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{DomainError, RiordanError};
use crate::par::{map_range, Exec};
use crate::rational::{int, Rational};
use crate::riordan::RiordanMatrix;
use crate::series::PowerSeries;

/// `Delta_0 .. Delta_{rows-1}`, each truncated to `cols` coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalFamily {
    diagonals: Vec<PowerSeries>,
}

impl DiagonalFamily {
    pub fn diagonals(&self) -> &[PowerSeries] {
        &self.diagonals
    }

    pub fn get(&self, n: usize) -> &PowerSeries {
        &self.diagonals[n]
    }

    pub fn len(&self) -> usize {
        self.diagonals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diagonals.is_empty()
    }

    pub fn cols(&self) -> usize {
        self.diagonals.first().map_or(0, PowerSeries::order)
    }

    /// Row `n` is the coefficient list of `Delta_n`.
    pub fn to_grid(&self) -> CoefficientGrid {
        CoefficientGrid {
            cells: self.diagonals.iter().map(|d| d.coeffs().to_vec()).collect(),
        }
    }

    /// Pairs `(n, k)` where `[x^k] Delta_n` differs from `d_{n+k,k}`, for
    /// every `n + k` inside the matrix budget.
    pub fn mismatches_against(&self, d: &RiordanMatrix) -> Vec<(usize, usize)> {
        let mut bad = Vec::new();
        for (n, delta) in self.diagonals.iter().enumerate() {
            for k in 0..delta.order() {
                if n + k >= d.order() {
                    break;
                }
                if delta.c(k) != &d.rows()[n + k][k] {
                    bad.push((n, k));
                }
            }
        }
        bad
    }
}

/// Dense grid of coefficients `c[n][k]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientGrid {
    cells: Vec<Vec<Rational>>,
}

impl CoefficientGrid {
    pub fn from_cells(cells: Vec<Vec<Rational>>) -> Self {
        Self { cells }
    }

    pub fn get(&self, n: usize, k: usize) -> &Rational {
        &self.cells[n][k]
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.cells
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.cells.len(), self.cells.first().map_or(0, Vec::len))
    }

    pub fn to_json(&self, kind: &str) -> Value {
        json!({ "kind": kind, "cells": crate::riordan::rows_to_strings(&self.cells) })
    }
}

fn check(requested: usize, available: usize) -> Result<(), RiordanError> {
    if requested > available {
        Err(RiordanError::Budget {
            requested,
            available,
        })
    } else {
        Ok(())
    }
}

/// `Delta_0 .. Delta_{rows-1}` by the diagonal recurrence, each to `cols`
/// coefficients. Every diagonal consumes all earlier ones, so this runs in
/// order of `n`.
pub fn diagonal_family(d: &RiordanMatrix, rows: usize, cols: usize) -> Result<DiagonalFamily, RiordanError> {
    check(rows, d.order())?;
    check(cols, d.order())?;
    if cols == 0 {
        return Err(RiordanError::Budget {
            requested: 0,
            available: d.order(),
        });
    }
    let (f, g) = (d.f(), d.g());
    // 1 / (g_0 - x)
    let g0_inv = g.c(0).recip();
    let kernel = PowerSeries::geometric(&g0_inv, cols).scale(&g0_inv);
    let mut out: Vec<PowerSeries> = Vec::with_capacity(rows);
    for n in 0..rows {
        let mut acc = PowerSeries::constant(f.c(n).clone(), cols);
        for l in 1..=n {
            let gl = g.c(l);
            if !gl.is_zero() {
                acc = acc.sub(&out[n - l].scale(gl));
            }
        }
        out.push(acc.mul(&kernel));
    }
    Ok(DiagonalFamily { diagonals: out })
}

/// `[z^n x^k] f(z) / (g(z) - x)`, expanded as `sum_k x^k f(z) / g(z)^{k+1}`
/// without touching the diagonal recurrence.
pub fn bivariate_gf(d: &RiordanMatrix, rows: usize, cols: usize) -> Result<CoefficientGrid, RiordanError> {
    bivariate_gf_with(d, rows, cols, Exec::default())
}

pub fn bivariate_gf_with(d: &RiordanMatrix, rows: usize, cols: usize, exec: Exec) -> Result<CoefficientGrid, RiordanError> {
    check(rows, d.order())?;
    check(cols, d.order())?;
    let ginv = d.g().invert()?;
    let f = d.f();
    let columns: Vec<PowerSeries> = map_range(exec, cols, |k| f.mul(&ginv.pow(k as u32 + 1)));
    let cells = (0..rows)
        .map(|n| (0..cols).map(|k| columns[k].c(n).clone()).collect())
        .collect();
    Ok(CoefficientGrid { cells })
}

/// `[z^n x^k] f(z) / (g(z) - x z)`: entry `(n, k)` is `d_{n,k}`.
pub fn sprugnoli_bgf(d: &RiordanMatrix, rows: usize, cols: usize) -> Result<CoefficientGrid, RiordanError> {
    check(rows, d.order())?;
    check(cols, d.order())?;
    let ginv = d.g().invert()?;
    let f = d.f();
    let columns: Vec<PowerSeries> = map_range(Exec::default(), cols, |k| f.mul(&ginv.pow(k as u32 + 1)));
    let cells = (0..rows)
        .map(|n| {
            (0..cols)
                .map(|k| if k <= n { columns[k].c(n - k).clone() } else { Rational::zero() })
                .collect()
        })
        .collect();
    Ok(CoefficientGrid { cells })
}

/// Checks `f(z)/(g(z) - xz) = sum_n z^n Delta_n(xz)` coefficient-wise on a
/// `size x size` window, with the diagonals taken from the recurrence.
pub fn sprugnoli_identity_holds(d: &RiordanMatrix, size: usize) -> Result<bool, RiordanError> {
    let s = sprugnoli_bgf(d, size, size)?;
    let fam = diagonal_family(d, size, size)?;
    for i in 0..size {
        for j in 0..size {
            let rhs = if j <= i { fam.get(i - j).c(j).clone() } else { Rational::zero() };
            if s.get(i, j) != &rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Outcome of a family of coefficient identities.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self, kind: &str) -> Value {
        json!({
            "kind": kind,
            "passed": self.passed(),
            "checked": self.checked,
            "failures": self.failures,
        })
    }

    fn expect_eq(&mut self, what: impl FnOnce() -> String, got: &Rational, want: &Rational) {
        self.checked += 1;
        if got != want {
            self.failures.push(format!("{}: got {got}, expected {want}", what()));
        }
    }
}

/// Verifies the first diagonals of `T(g | g)` for `g in 1 + x^{k-1} K[[x]]`:
/// `d_{j+m,j}` is `1` for `m = 0`, `0` for `1 <= m <= k-2`, and
/// `-j g_m = j h_{m+1}` for `k-1 <= m <= 2k-3`, over `0 <= j <= max_j`.
pub fn gk_diagonal_check(g: &PowerSeries, k: usize, max_j: usize) -> Result<CheckReport, DomainError> {
    if k < 2 {
        return Err(DomainError::Parameter(format!("k must be at least 2, got {k}")));
    }
    if !g.c(0).is_one() {
        return Err(DomainError::Parameter(format!("g(0) must be 1, got {}", g.c(0))));
    }
    if let Some(m) = (1..=k - 2).find(|&m| m < g.order() && !g.c(m).is_zero()) {
        return Err(DomainError::Parameter(format!(
            "g is not in 1 + x^{}K[[x]]: coefficient {m} is {}",
            k - 1,
            g.c(m)
        )));
    }
    let order = max_j + 2 * k - 2;
    let m = RiordanMatrix::from_t(g.clone(), g.clone(), order)?;
    let h = m.h();
    let mut report = CheckReport::default();
    for mm in 0..=2 * k - 3 {
        for j in 0..=max_j {
            let got = &m.rows()[j + mm][j];
            let theorem = match mm {
                0 => Rational::one(),
                _ if mm <= k - 2 => Rational::zero(),
                _ => -int(j as i64) * g.c(mm),
            };
            report.expect_eq(|| format!("theorem d[{}][{j}] (m={mm})", j + mm), got, &theorem);
            let corollary = match mm {
                0 => Rational::one(),
                _ if mm <= k - 2 => Rational::zero(),
                _ => int(j as i64) * h.c(mm + 1),
            };
            report.expect_eq(|| format!("corollary d[{}][{j}] (m={mm})", j + mm), got, &corollary);
        }
    }
    Ok(report)
}

/// Builds `T(f | g)` and `T(fg | g)` and checks `Dt_n = f_n + x Delta_n`
/// for `n < rows`, on `cols` coefficients.
pub fn tfgg_relation_check(
    f: &PowerSeries,
    g: &PowerSeries,
    order: usize,
    rows: usize,
    cols: usize,
) -> Result<CheckReport, RiordanError> {
    let base = RiordanMatrix::from_t(f.clone(), g.clone(), order)?;
    let lifted = RiordanMatrix::from_t(f.mul(g), g.clone(), order)?;
    tfgg_relation_between(&base, &lifted, rows, cols)
}

/// Same identity for an explicitly given pair, where `lifted` is claimed
/// to be `T(fg | g)` for `base = T(f | g)`.
pub fn tfgg_relation_between(
    base: &RiordanMatrix,
    lifted: &RiordanMatrix,
    rows: usize,
    cols: usize,
) -> Result<CheckReport, RiordanError> {
    let fam = diagonal_family(base, rows, cols)?;
    let fam_t = diagonal_family(lifted, rows, cols)?;
    let mut report = CheckReport::default();
    for n in 0..rows {
        let mut rhs = fam.get(n).shift_mul(1);
        rhs = rhs.add(&PowerSeries::constant(base.f().c(n).clone(), cols));
        for k in 0..cols {
            report.expect_eq(|| format!("[x^{k}] of diagonal {n}"), fam_t.get(n).c(k), rhs.c(k));
        }
    }
    Ok(report)
}

/// `F_{m,q}` and `Fbar_{m,q}`: `T((m+(q-m)x)/(q(1-x)) | (1-x)/q)` and
/// `T((m+(q-m)x)/q^2 | (1-x)/q)`.
pub fn qcone_matrices(m: i64, q: i64, order: usize) -> Result<(RiordanMatrix, RiordanMatrix), DomainError> {
    if m < 1 || q < 1 {
        return Err(DomainError::Parameter(format!("q-cones need m, q >= 1, got m={m}, q={q}")));
    }
    let (mr, qr) = (int(m), int(q));
    let num = PowerSeries::from_rationals(&[mr.clone(), &qr - &mr], order);
    let g = PowerSeries::from_rationals(&[qr.recip(), -qr.recip()], order);
    let f = num.mul(&PowerSeries::geometric(&Rational::one(), order)).scale(&qr.recip());
    let fbar = num.scale(&(&qr * &qr).recip());
    let big = RiordanMatrix::from_t(f, g.clone(), order)?;
    let bar = RiordanMatrix::from_t(fbar, g, order)?;
    Ok((big, bar))
}

/// Checks the closed forms of both q-cone diagonal families:
/// `Delta_n = Delta_0/(1-qx)^n + q sum_{k=1}^n (1-qx)^{-k}` with
/// `Delta_0 = m/(1-qx)`, and `Dbar_0 = m/(q(1-qx))`,
/// `Dbar_n = 1 + x Delta_0/(1-qx)^n + sum_{k=1}^n qx/(1-qx)^k`.
pub fn qcone_check(m: i64, q: i64, order: usize, rows: usize) -> Result<CheckReport, DomainError> {
    let (big, bar) = qcone_matrices(m, q, order)?;
    let fam = diagonal_family(&big, rows, order)?;
    let fam_bar = diagonal_family(&bar, rows, order)?;
    let qr = int(q);
    let kernel = PowerSeries::geometric(&qr, order);
    let delta0 = kernel.scale(&int(m));
    let mut report = CheckReport::default();
    let compare = |name: &str, got: &PowerSeries, want: &PowerSeries, report: &mut CheckReport| {
        for k in 0..order {
            report.expect_eq(|| format!("{name}: [x^{k}]"), got.c(k), want.c(k));
        }
    };
    compare("Delta_0", fam.get(0), &delta0, &mut report);
    compare("Dbar_0", fam_bar.get(0), &delta0.scale(&qr.recip()), &mut report);
    for n in 1..rows {
        let mut tail = PowerSeries::zero(order);
        for k in 1..=n {
            tail = tail.add(&kernel.pow(k as u32));
        }
        let want = delta0.mul(&kernel.pow(n as u32)).add(&tail.scale(&qr));
        compare(&format!("Delta_{n}"), fam.get(n), &want, &mut report);
        let want_bar = PowerSeries::one(order)
            .add(&delta0.mul(&kernel.pow(n as u32)).shift_mul(1))
            .add(&tail.scale(&qr).shift_mul(1));
        compare(&format!("Dbar_{n}"), fam_bar.get(n), &want_bar, &mut report);
    }
    Ok(report)
}
