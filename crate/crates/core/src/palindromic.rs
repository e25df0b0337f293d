//! Palindromic Riordan matrices.
//!
//! Every palindromic `T(f | g)` is determined by three numbers
//! `f_0 != 0`, `g_0 != 0` and a free `f_1`:
//!
//! ```text
//! f = f_0^2 / (f_0 - f_1 x),    g = f_0 (g_0 - x) / (f_0 - f_1 x).
//! ```
//!
//! Palindromicity of an arbitrary matrix is only ever decided on a finite
//! prefix; the checks here report "palindromic up to `n` rows".

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::dense::DenseMatrix;
use crate::diagonals::{bivariate_gf, diagonal_family, sprugnoli_bgf};
use crate::error::{DomainError, RiordanError};
use crate::rational::{binomial, pow, Rational};
use crate::riordan::{RiordanMatrix, RowPolynomial};
use crate::series::PowerSeries;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PalindromicParams {
    f0: Rational,
    g0: Rational,
    f1: Rational,
}

impl PalindromicParams {
    pub fn new(f0: Rational, g0: Rational, f1: Rational) -> Result<Self, DomainError> {
        if f0.is_zero() {
            return Err(DomainError::Parameter("f0 must be nonzero".into()));
        }
        if g0.is_zero() {
            return Err(DomainError::Parameter("g0 must be nonzero".into()));
        }
        Ok(Self { f0, g0, f1 })
    }

    pub fn f0(&self) -> &Rational {
        &self.f0
    }

    pub fn g0(&self) -> &Rational {
        &self.g0
    }

    pub fn f1(&self) -> &Rational {
        &self.f1
    }

    /// `g_1 = (f_1 g_0 - f_0) / f_0`, forced by `d_{1,0} = d_{1,1}`.
    pub fn g1(&self) -> Rational {
        (&self.f1 * &self.g0 - &self.f0) / &self.f0
    }

    /// `f_1 / f_0`, the common ratio of both generating series.
    fn ratio(&self) -> Rational {
        &self.f1 / &self.f0
    }

    pub fn f_series(&self, order: usize) -> PowerSeries {
        PowerSeries::geometric(&self.ratio(), order).scale(&self.f0)
    }

    pub fn g_series(&self, order: usize) -> PowerSeries {
        let lin = PowerSeries::from_rationals(&[self.g0.clone(), -Rational::one()], order);
        lin.mul(&PowerSeries::geometric(&self.ratio(), order))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "f0": self.f0.to_string(),
            "g0": self.g0.to_string(),
            "f1": self.f1.to_string(),
        })
    }
}

/// `(d_0, h_1, h_2)` with `d = d_0/(1 - h_1 z)` and
/// `h = h_1 z + h_2 z^2/(1 - h_1 z)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KimParams {
    d0: Rational,
    h1: Rational,
    h2: Rational,
}

impl KimParams {
    pub fn new(d0: Rational, h1: Rational, h2: Rational) -> Result<Self, DomainError> {
        if d0.is_zero() {
            return Err(DomainError::Parameter("d0 must be nonzero".into()));
        }
        if h1.is_zero() {
            return Err(DomainError::Parameter("h1 must be nonzero".into()));
        }
        Ok(Self { d0, h1, h2 })
    }

    pub fn d0(&self) -> &Rational {
        &self.d0
    }

    pub fn h1(&self) -> &Rational {
        &self.h1
    }

    pub fn h2(&self) -> &Rational {
        &self.h2
    }

    pub fn d_series(&self, order: usize) -> PowerSeries {
        PowerSeries::geometric(&self.h1, order).scale(&self.d0)
    }

    pub fn h_series(&self, order: usize) -> PowerSeries {
        let tail = PowerSeries::geometric(&self.h1, order).shift_mul(2).scale(&self.h2);
        PowerSeries::from_rationals(&[Rational::zero(), self.h1.clone()], order).add(&tail)
    }

    /// The matrix `(d, h)` built directly from this parameterization.
    pub fn matrix(&self, order: usize) -> Result<RiordanMatrix, RiordanError> {
        RiordanMatrix::from_dh(self.d_series(order), self.h_series(order + 1), order)
    }
}

pub fn construct(p: &PalindromicParams, order: usize) -> Result<RiordanMatrix, RiordanError> {
    RiordanMatrix::from_t(p.f_series(order), p.g_series(order), order)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PalindromeCheck {
    pub rows: usize,
    /// First `(n, k)` in row-major order with `d_{n,k} != d_{n,n-k}`.
    pub counterexample: Option<(usize, usize)>,
}

impl PalindromeCheck {
    pub fn is_palindromic(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Entry symmetry `d_{n,k} = d_{n,n-k}` on rows `0..rows`.
pub fn is_palindromic(d: &RiordanMatrix, rows: usize) -> Result<PalindromeCheck, RiordanError> {
    let prefix = d.prefix(rows)?;
    let counterexample = prefix.iter().enumerate().find_map(|(n, row)| {
        (0..=n / 2).find(|&k| row[k] != row[n - k]).map(|k| (n, k))
    });
    Ok(PalindromeCheck { rows, counterexample })
}

/// `C_n(x) = x^n Delta_n(x)` for every `n < rows`, with the columns taken
/// from `x^n f / g^{n+1}` and the diagonals from their recurrence.
pub fn criterion_columns_equal_diagonals(d: &RiordanMatrix, rows: usize) -> Result<bool, RiordanError> {
    let fam = diagonal_family(d, rows, rows)?;
    for n in 0..rows {
        let col = d.column_gf(n)?.truncate(rows);
        let diag = fam.get(n).shift_mul(n);
        if col != diag {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `Delta(z, xz) = Delta(xz, z)` compared on total `z`-degree below `rows`.
///
/// `[z^i x^j] Delta(z, xz)` is read off `f(z)/(g(z) - xz)` and
/// `[z^i x^j] Delta(xz, z)` is `[z^j x^{i-j}]` of `f(z)/(g(z) - x)`.
pub fn criterion_bivariate_swap(d: &RiordanMatrix, rows: usize) -> Result<bool, RiordanError> {
    let left = sprugnoli_bgf(d, rows, rows)?;
    let delta = bivariate_gf(d, rows, rows)?;
    for i in 0..rows {
        for j in 0..=i {
            if left.get(i, j) != delta.get(j, i - j) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `(f_0, g_0, f_1)` read off any matrix.
pub fn extract_params(d: &RiordanMatrix) -> Result<PalindromicParams, DomainError> {
    let f = d.f();
    let f1 = f.coeff(1).cloned().unwrap_or_else(|_| Rational::zero());
    PalindromicParams::new(f.c(0).clone(), d.g().c(0).clone(), f1)
}

/// Regenerates `f` and `g` from the extracted triple and compares them with
/// the matrix's own series on every known coefficient.
pub fn regenerates_exactly(d: &RiordanMatrix) -> Result<bool, DomainError> {
    let p = extract_params(d)?;
    let n = d.order();
    Ok(&p.f_series(n) == d.f() && &p.g_series(n) == d.g())
}

/// `d_{n,k} = (f_0/g_0^{n+1}) sum_j C(k,j) C(n-j,k) (-f_1 g_0/f_0)^j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedFormEntry {
    pub value: Rational,
    /// Set for `k > n`, where the value is zero by convention.
    pub above_diagonal: bool,
}

pub fn closed_form_entry(p: &PalindromicParams, n: usize, k: usize) -> ClosedFormEntry {
    if k > n {
        return ClosedFormEntry {
            value: Rational::zero(),
            above_diagonal: true,
        };
    }
    let t = -(&p.f1 * &p.g0) / &p.f0;
    let mut sum = Rational::zero();
    for j in 0..=k.min(n - k) {
        let c = binomial(k as u64, j as u64) * binomial((n - j) as u64, k as u64);
        sum += Rational::from_integer(c) * pow(&t, j as i64);
    }
    ClosedFormEntry {
        value: &p.f0 / pow(&p.g0, n as i64 + 1) * sum,
        above_diagonal: false,
    }
}

fn poly_add_scaled(acc: &mut Vec<Rational>, p: &[Rational], scale: &Rational, shift: usize) {
    if acc.len() < p.len() + shift {
        acc.resize(p.len() + shift, Rational::zero());
    }
    for (i, c) in p.iter().enumerate() {
        acc[i + shift] += c * scale;
    }
}

/// `p_0 = f_0/g_0`, `p_1 = (f_0/g_0^2)(1+t)`, and
/// `g_0 p_n = (1+t) p_{n-1} - (f_1/f_0) t p_{n-2}`.
pub fn row_poly_recurrence(p: &PalindromicParams, rows: usize) -> Vec<RowPolynomial> {
    let g0_inv = p.g0.recip();
    let r = p.ratio();
    let mut out: Vec<Vec<Rational>> = Vec::with_capacity(rows);
    if rows >= 1 {
        out.push(vec![&p.f0 * &g0_inv]);
    }
    if rows >= 2 {
        let c = &p.f0 * &g0_inv * &g0_inv;
        out.push(vec![c.clone(), c]);
    }
    for n in 2..rows {
        let mut acc = Vec::new();
        poly_add_scaled(&mut acc, &out[n - 1], &g0_inv, 0);
        poly_add_scaled(&mut acc, &out[n - 1], &g0_inv, 1);
        poly_add_scaled(&mut acc, &out[n - 2], &(-&r * &g0_inv), 1);
        acc.resize(n + 1, Rational::zero());
        out.push(acc);
    }
    out.into_iter().map(RowPolynomial::new).collect()
}

/// The long-form recurrence obtained by substituting the palindromic `f_n`
/// and `g_n` into the general row recurrence:
///
/// `g_0 p_n = (t - g_1) p_{n-1} + r^{n-1} p_0 - g_1 r sum_{k=0}^{n-3} r^k p_{n-2-k}`
///
/// with `r = f_1/f_0`, valid for `n >= 2`.
pub fn row_poly_recurrence_long(p: &PalindromicParams, rows: usize) -> Vec<RowPolynomial> {
    let mut out: Vec<Vec<Rational>> = row_poly_recurrence(p, rows.min(2))
        .into_iter()
        .map(|r| r.coeffs().to_vec())
        .collect();
    let g0_inv = p.g0.recip();
    let g1 = p.g1();
    let r = p.ratio();
    for n in 2..rows {
        let mut acc = Vec::new();
        poly_add_scaled(&mut acc, &out[n - 1], &g0_inv, 1);
        poly_add_scaled(&mut acc, &out[n - 1], &(-&g1 * &g0_inv), 0);
        poly_add_scaled(&mut acc, &out[0], &(pow(&r, n as i64 - 1) * &g0_inv), 0);
        for k in 0..n.saturating_sub(2) {
            let s = -&g1 * &r * pow(&r, k as i64) * &g0_inv;
            poly_add_scaled(&mut acc, &out[n - 2 - k], &s, 0);
        }
        acc.resize(n + 1, Rational::zero());
        out.push(acc);
    }
    out.into_iter().map(RowPolynomial::new).collect()
}

/// `d_0 = f_0/g_0`, `h_1 = 1/g_0`, `h_2 = -g_1/g_0^2`, read off the series
/// `d = f/g` and `h = x/g` of the constructed matrix.
pub fn kim_params(p: &PalindromicParams) -> KimParams {
    let m = construct(p, 3).expect("valid parameters");
    let d = m.d();
    let h = m.h();
    KimParams::new(d.c(0).clone(), h.c(1).clone(), h.c(2).clone()).expect("d0, h1 nonzero")
}

pub fn kim_to_params(k: &KimParams) -> PalindromicParams {
    let g0 = k.h1.recip();
    let f0 = &k.d0 * &g0;
    let g1 = -&k.h2 / (&k.h1 * &k.h1);
    let f1 = &f0 * (Rational::one() + g1) / &g0;
    PalindromicParams::new(f0, g0, f1).expect("d0, h1 nonzero")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InvolutionClass {
    Involution,
    PseudoInvolution,
    Neither,
}

/// Decides `D^2 = I` and, failing that, `(DM)^2 = I` with
/// `M = diag(1, -1, 1, ...)`, on the `rows x rows` prefix.
pub fn classify_involution(p: &PalindromicParams, rows: usize) -> Result<InvolutionClass, RiordanError> {
    let d = construct(p, rows)?;
    Ok(classify_dense(&d.to_dense()))
}

pub fn classify_dense(d: &DenseMatrix) -> InvolutionClass {
    if d.mul(d).is_identity() {
        return InvolutionClass::Involution;
    }
    let dm = d.alternate_columns();
    if dm.mul(&dm).is_identity() {
        InvolutionClass::PseudoInvolution
    } else {
        InvolutionClass::Neither
    }
}

/// JSON report for an arbitrary `T(f | g)`.
pub fn check_report(d: &RiordanMatrix, rows: usize) -> Result<Value, DomainError> {
    let check = is_palindromic(d, rows)?;
    let params = if check.is_palindromic() {
        Some(extract_params(d)?.to_json())
    } else {
        None
    };
    Ok(json!({
        "palindromic": check.is_palindromic(),
        "rows": rows,
        "counterexample": check.counterexample.map(|(n, k)| json!([n, k])),
        "params": params,
    }))
}
