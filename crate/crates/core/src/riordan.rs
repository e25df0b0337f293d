//! Riordan matrices in `T(f | g)` notation.
//!
//! `T(f | g)` is the lower-triangular matrix whose `j`-th column has
//! generating function `x^j f / g^{j+1}`; in `(d, h)` notation
//! `d = f / g` and `h = x / g`. The pair `(f, g)` is the stored form and
//! the leading `order x order` block of entries is computed once at
//! construction from the column recurrences.

use std::fmt::Write as _;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::dense::DenseMatrix;
use crate::error::RiordanError;
use crate::par::{map_range, Exec};
use crate::rational::Rational;
use crate::series::PowerSeries;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RiordanMatrix {
    f: PowerSeries,
    g: PowerSeries,
    order: usize,
    prefix: Vec<Vec<Rational>>,
}

/// Row `n` of a Riordan matrix read as a polynomial, `sum_k d_{n,k} x^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowPolynomial {
    coeffs: Vec<Rational>,
}

impl RowPolynomial {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        Self { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_palindromic(&self) -> bool {
        self.coeffs.iter().eq(self.coeffs.iter().rev())
    }
}

impl std::fmt::Display for RowPolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c < &Rational::zero();
            let mag = if neg { -c } else { c.clone() };
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => {}
                (_, false) => write!(f, "{mag}*")?,
            }
            match k {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

fn check_budget(requested: usize, available: usize) -> Result<(), RiordanError> {
    if requested > available {
        Err(RiordanError::Budget {
            requested,
            available,
        })
    } else {
        Ok(())
    }
}

impl RiordanMatrix {
    /// `T(f | g)` with an `order x order` prefix.
    pub fn from_t(f: PowerSeries, g: PowerSeries, order: usize) -> Result<Self, RiordanError> {
        if order == 0 {
            return Err(RiordanError::Budget {
                requested: 0,
                available: 0,
            });
        }
        if f.c(0).is_zero() {
            return Err(RiordanError::ZeroConstant { which: "f" });
        }
        if g.c(0).is_zero() {
            return Err(RiordanError::ZeroConstant { which: "g" });
        }
        check_budget(order, f.order())?;
        check_budget(order, g.order())?;
        let f = f.truncate(order);
        let g = g.truncate(order);
        let prefix = recurrence_prefix(&f, &g);
        let m = Self {
            f,
            g,
            order,
            prefix,
        };
        #[cfg(debug_assertions)]
        debug_assert_eq!(
            m.prefix,
            m.direct_prefix(),
            "column recurrence disagrees with direct extraction"
        );
        Ok(m)
    }

    /// `T(f | g)` at the largest order both series support.
    pub fn new(f: PowerSeries, g: PowerSeries) -> Result<Self, RiordanError> {
        let order = f.order().min(g.order());
        Self::from_t(f, g, order)
    }

    /// `(d, h)` notation. `h` must be known to `order + 1` coefficients,
    /// since `g = x / h` loses one.
    pub fn from_dh(d: PowerSeries, h: PowerSeries, order: usize) -> Result<Self, RiordanError> {
        if d.c(0).is_zero() {
            return Err(RiordanError::ZeroConstant { which: "d" });
        }
        if h.order() < 2 || !h.c(0).is_zero() || h.c(1).is_zero() {
            return Err(RiordanError::BadH);
        }
        check_budget(order, d.order())?;
        check_budget(order + 1, h.order())?;
        let g = h.truncate(order + 1).shift_divide(1)?.invert()?;
        let f = d.truncate(order).mul(&g);
        Self::from_t(f, g, order)
    }

    pub fn identity(order: usize) -> Self {
        Self::from_t(PowerSeries::one(order), PowerSeries::one(order), order)
            .expect("identity is admissible")
    }

    pub fn f(&self) -> &PowerSeries {
        &self.f
    }

    pub fn g(&self) -> &PowerSeries {
        &self.g
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// `d = f / g` to `order` coefficients.
    pub fn d(&self) -> PowerSeries {
        self.f.div(&self.g).expect("g(0) != 0")
    }

    /// `h = x / g` to `order + 1` coefficients.
    pub fn h(&self) -> PowerSeries {
        let ginv = self.g.invert().expect("g(0) != 0");
        let mut coeffs = vec![Rational::zero()];
        coeffs.extend(ginv.into_coeffs());
        PowerSeries::new(coeffs).expect("nonempty")
    }

    pub fn entry(&self, i: usize, j: usize) -> Result<Rational, RiordanError> {
        check_budget(i + 1, self.order)?;
        check_budget(j + 1, self.order)?;
        Ok(self.prefix[i].get(j).cloned().unwrap_or_else(Rational::zero))
    }

    /// Ragged lower-triangular rows `0..n`.
    pub fn prefix(&self, n: usize) -> Result<&[Vec<Rational>], RiordanError> {
        check_budget(n, self.order)?;
        Ok(&self.prefix[..n])
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.prefix
    }

    pub fn to_dense(&self) -> DenseMatrix {
        DenseMatrix::from_lower(&self.prefix)
    }

    /// Entries as `[x^i] d h^j`, computed from series powers and never from
    /// the column recurrence.
    pub fn direct_prefix(&self) -> Vec<Vec<Rational>> {
        self.direct_prefix_with(Exec::default())
    }

    pub fn direct_prefix_with(&self, exec: Exec) -> Vec<Vec<Rational>> {
        let n = self.order;
        let d = self.d();
        let h = self.h().truncate(n);
        let cols: Vec<PowerSeries> = map_range(exec, n, |j| d.mul(&h.pow(j as u32)));
        (0..n)
            .map(|i| (0..=i).map(|j| cols[j].c(i).clone()).collect())
            .collect()
    }

    /// `T(f | g) T(l | m) = T(f l(x/g) | g m(x/g))`.
    pub fn product(&self, other: &Self) -> Result<Self, RiordanError> {
        let order = self.order.min(other.order);
        let h = self.h().truncate(order);
        let f = self.f.truncate(order).mul(&other.f.compose(&h)?);
        let g = self.g.truncate(order).mul(&other.g.compose(&h)?);
        Self::from_t(f, g, order)
    }

    /// `T(1 / f(x/A) | A)` where `x/A` is the compositional inverse of `x/g`.
    pub fn inverse(&self) -> Result<Self, RiordanError> {
        let hbar = self.h().comp_inverse()?;
        let a = hbar.shift_divide(1)?.invert()?;
        let f_inv = self.f.compose(&hbar)?.invert()?;
        Self::from_t(f_inv, a, self.order)
    }

    /// The A-sequence: `d_{i,j} = sum_k a_k d_{i-1, j-1+k}` for `i, j >= 1`.
    pub fn a_sequence(&self, n: usize) -> Result<PowerSeries, RiordanError> {
        check_budget(n, self.order)?;
        let hbar = self.h().comp_inverse()?;
        Ok(hbar.shift_divide(1)?.invert()?.truncate(n))
    }

    /// Fundamental theorem: `T(f | g) gamma = (f/g) gamma(x/g)`.
    pub fn apply(&self, gamma: &PowerSeries) -> Result<PowerSeries, RiordanError> {
        let h = self.h().truncate(self.order);
        Ok(self.d().mul(&gamma.compose(&h)?))
    }

    /// `x^n f / g^{n+1}`.
    pub fn column_gf(&self, n: usize) -> Result<PowerSeries, RiordanError> {
        check_budget(n + 1, self.order)?;
        let ginv = self.g.invert()?;
        Ok(self.f.mul(&ginv.pow(n as u32 + 1)).shift_mul(n))
    }

    /// Rows `0..order` as polynomials, computed from the row recurrence
    ///
    /// `p_n = ((x - g_1)/g_0) p_{n-1} - sum_{l=2}^n (g_l/g_0) p_{n-l} + f_n/g_0`.
    pub fn row_polynomials(&self) -> Vec<RowPolynomial> {
        let n = self.order;
        let g0_inv = self.g.c(0).recip();
        let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(n);
        rows.push(vec![self.f.c(0) * &g0_inv]);
        for r in 1..n {
            let mut p = vec![Rational::zero(); r + 1];
            // (x - g_1) p_{r-1}
            for (k, c) in rows[r - 1].iter().enumerate() {
                p[k + 1] += c;
                p[k] -= self.g.c(1) * c;
            }
            for l in 2..=r {
                let gl = self.g.c(l);
                if gl.is_zero() {
                    continue;
                }
                for (k, c) in rows[r - l].iter().enumerate() {
                    p[k] -= gl * c;
                }
            }
            p[0] += self.f.c(r);
            for c in &mut p {
                *c *= &g0_inv;
            }
            rows.push(p);
        }
        rows.into_iter().map(RowPolynomial::new).collect()
    }

    pub fn row_polynomial(&self, n: usize) -> Result<RowPolynomial, RiordanError> {
        check_budget(n + 1, self.order)?;
        Ok(self.row_polynomials().swap_remove(n))
    }

    pub fn to_json(&self) -> Value {
        let strs = |s: &PowerSeries| s.coeffs().iter().map(ToString::to_string).collect::<Vec<_>>();
        json!({
            "kind": "riordan",
            "f": strs(&self.f),
            "g": strs(&self.g),
            "order": self.order,
            "prefix": rows_to_strings(&self.prefix),
        })
    }

    /// Full JSON export with a prefix cut to `rows` rows.
    pub fn to_json_rows(&self, rows: usize) -> Result<Value, RiordanError> {
        let mut v = self.to_json();
        v["prefix"] = json!(rows_to_strings(self.prefix(rows)?));
        Ok(v)
    }
}

/// Column recurrences: with `f_i`, `g_l` the coefficients,
///
/// `d_{i,0} = (f_i - sum_{l=1}^{i} g_l d_{i-l,0}) / g_0`
/// `d_{i,j} = (d_{i-1,j-1} - sum_{l=1}^{i-j} g_l d_{i-l,j}) / g_0`.
fn recurrence_prefix(f: &PowerSeries, g: &PowerSeries) -> Vec<Vec<Rational>> {
    let n = f.order();
    let g0_inv = g.c(0).recip();
    let mut d: Vec<Vec<Rational>> = (0..n).map(|i| vec![Rational::zero(); i + 1]).collect();
    for i in 0..n {
        for j in 0..=i {
            let mut acc = if j == 0 {
                f.c(i).clone()
            } else {
                d[i - 1][j - 1].clone()
            };
            for l in 1..=i - j {
                let gl = g.c(l);
                if !gl.is_zero() {
                    acc -= gl * &d[i - l][j];
                }
            }
            d[i][j] = acc * &g0_inv;
        }
    }
    d
}

pub fn rows_to_strings(rows: &[Vec<Rational>]) -> Vec<Vec<String>> {
    rows.iter()
        .map(|r| r.iter().map(ToString::to_string).collect())
        .collect()
}

/// CSV with one line per row; cells above the diagonal are left blank.
pub fn rows_to_csv(rows: &[Vec<String>]) -> String {
    let width = rows.iter().map(Vec::len).max().unwrap_or(0);
    let mut out = String::new();
    for r in rows {
        let mut cells: Vec<&str> = r.iter().map(String::as_str).collect();
        cells.resize(width, "");
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

/// Right-aligned columns separated by two spaces.
pub fn rows_to_table(rows: &[Vec<String>]) -> String {
    let width = rows.iter().flatten().map(String::len).max().unwrap_or(1);
    let mut out = String::new();
    for r in rows {
        let line: Vec<String> = r.iter().map(|c| format!("{c:>width$}")).collect();
        let _ = writeln!(out, "{}", line.join("  ").trim_end());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn ints(v: &[i64], n: usize) -> PowerSeries {
        PowerSeries::from_ints(v, n)
    }

    fn pascal(n: usize) -> RiordanMatrix {
        RiordanMatrix::from_t(ints(&[1], n), ints(&[1, -1], n), n).unwrap()
    }

    fn catalan_array(n: usize) -> RiordanMatrix {
        let catalan = [1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796, 58786, 208012];
        let c = ints(&catalan, n + 1);
        let xc = c.shift_mul(1);
        RiordanMatrix::from_dh(c, xc, n).unwrap()
    }

    fn row(m: &RiordanMatrix, i: usize) -> Vec<Rational> {
        m.rows()[i].clone()
    }

    fn irow(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn pascal_entries() {
        let p = pascal(8);
        assert_eq!(p.entry(4, 2).unwrap(), int(6));
        assert_eq!(p.entry(5, 2).unwrap(), int(10));
        assert_eq!(p.entry(2, 5).unwrap(), int(0));
    }

    #[test]
    fn motivating_matrix_rows() {
        let f = PowerSeries::from_ints(&[1, 2, 3, 4, 5, 6, 7, 8], 8);
        let g = ints(&[-1, 2], 8);
        let d = RiordanMatrix::from_t(f, g, 6).unwrap();
        assert_eq!(row(&d, 0), irow(&[-1]));
        assert_eq!(row(&d, 1), irow(&[-4, 1]));
        assert_eq!(row(&d, 2), irow(&[-11, 6, -1]));
        assert_eq!(row(&d, 3), irow(&[-26, 23, -8, 1]));
        assert_eq!(d.entry(5, 1).unwrap(), int(201));
    }

    #[test]
    fn construction_errors() {
        let err = RiordanMatrix::from_t(ints(&[0, 1], 4), ints(&[1], 4), 4).unwrap_err();
        assert_eq!(err, RiordanError::ZeroConstant { which: "f" });
        let err = RiordanMatrix::from_t(ints(&[1], 4), ints(&[0, 1], 4), 4).unwrap_err();
        assert_eq!(err, RiordanError::ZeroConstant { which: "g" });
        let err = RiordanMatrix::from_t(ints(&[1], 3), ints(&[1], 4), 4).unwrap_err();
        assert!(matches!(err, RiordanError::Budget { requested: 4, available: 3 }));
        assert_eq!(
            RiordanMatrix::from_dh(ints(&[1], 4), ints(&[1, 1], 5), 4).unwrap_err(),
            RiordanError::BadH
        );
        assert_eq!(
            RiordanMatrix::from_dh(ints(&[1], 4), ints(&[0, 0, 1], 5), 4).unwrap_err(),
            RiordanError::BadH
        );
    }

    #[test]
    fn budget_is_enforced() {
        let p = pascal(5);
        assert!(matches!(p.entry(5, 0), Err(RiordanError::Budget { .. })));
        assert!(p.prefix(6).is_err());
        assert!(p.column_gf(5).is_err());
        assert!(p.row_polynomial(5).is_err());
    }

    #[test]
    fn dh_notation() {
        let n = 8;
        let from_dh = RiordanMatrix::from_dh(
            PowerSeries::geometric(&int(1), n),
            PowerSeries::geometric(&int(1), n + 1).shift_mul(1),
            n,
        )
        .unwrap();
        assert_eq!(from_dh, pascal(n));
        let id = RiordanMatrix::from_dh(PowerSeries::one(n), PowerSeries::x(n + 1), n).unwrap();
        assert_eq!(id, RiordanMatrix::identity(n));
        let p = pascal(n);
        assert_eq!(RiordanMatrix::from_dh(p.d(), p.h(), n).unwrap(), p);
    }

    #[test]
    fn catalan_rows() {
        let c = catalan_array(6);
        assert_eq!(row(&c, 2), irow(&[2, 2, 1]));
        assert_eq!(row(&c, 4), irow(&[14, 14, 9, 4, 1]));
        assert_eq!(c.entry(4, 2).unwrap(), int(9));
        assert_eq!(c.g().coeffs()[..4], irow(&[1, -1, -1, -2])[..]);
    }

    #[test]
    fn pascal_squared() {
        let p = pascal(8);
        let sq = p.product(&p).unwrap();
        assert_eq!(sq, RiordanMatrix::from_t(ints(&[1], 8), ints(&[1, -2], 8), 8).unwrap());
        assert_eq!(sq.to_dense(), p.to_dense().mul(&p.to_dense()));
        assert_eq!(sq.entry(5, 2).unwrap(), int(80));
    }

    #[test]
    fn inverse_pascal_alternates() {
        let inv = pascal(6).inverse().unwrap();
        assert_eq!(row(&inv, 1), irow(&[-1, 1]));
        assert_eq!(row(&inv, 2), irow(&[1, -2, 1]));
        assert_eq!(row(&inv, 3), irow(&[-1, 3, -3, 1]));
        assert_eq!(pascal(6).product(&inv).unwrap(), RiordanMatrix::identity(6));
        assert_eq!(RiordanMatrix::identity(6).inverse().unwrap(), RiordanMatrix::identity(6));
    }

    #[test]
    fn a_sequences() {
        assert_eq!(pascal(8).a_sequence(8).unwrap(), ints(&[1, 1], 8));
        assert_eq!(catalan_array(8).a_sequence(8).unwrap(), PowerSeries::geometric(&int(1), 8));
        assert_eq!(RiordanMatrix::identity(5).a_sequence(5).unwrap(), PowerSeries::one(5));
    }

    #[test]
    fn fundamental_theorem() {
        let p = pascal(8);
        let got = p.apply(&PowerSeries::geometric(&int(1), 8)).unwrap();
        assert_eq!(got, PowerSeries::geometric(&int(2), 8));
        let gamma = ints(&[3, -1, 4, 1, -5], 8);
        assert_eq!(RiordanMatrix::identity(8).apply(&gamma).unwrap(), gamma);
    }

    #[test]
    fn rows_and_columns() {
        let p = pascal(6);
        assert_eq!(p.row_polynomial(3).unwrap().coeffs(), &irow(&[1, 3, 3, 1])[..]);
        assert_eq!(p.row_polynomial(3).unwrap().to_string(), "1 + 3*x + 3*x^2 + x^3");
        assert_eq!(p.column_gf(0).unwrap(), PowerSeries::geometric(&int(1), 6));
        assert_eq!(p.column_gf(1).unwrap(), ints(&[0, 1, 2, 3, 4, 5], 6));
        let m = RiordanMatrix::from_t(ints(&[3, 1], 6), ints(&[2, -1, 1], 6), 6).unwrap();
        assert_eq!(m.row_polynomial(0).unwrap().coeffs(), &[Rational::new(3.into(), 2.into())]);
        for (n, poly) in m.row_polynomials().iter().enumerate() {
            assert_eq!(poly.coeffs(), &m.rows()[n][..]);
            assert_eq!(poly.degree(), n);
        }
    }

    #[test]
    fn exports() {
        let p = pascal(3);
        assert_eq!(
            p.to_json().to_string(),
            r#"{"kind":"riordan","f":["1","0","0"],"g":["1","-1","0"],"order":3,"prefix":[["1"],["1","1"],["1","2","1"]]}"#
        );
        assert_eq!(rows_to_csv(&rows_to_strings(p.rows())), "1,,\n1,1,\n1,2,1\n");
        assert_eq!(rows_to_table(&rows_to_strings(p.rows())), "1\n1  1\n1  2  1\n");
    }
}
