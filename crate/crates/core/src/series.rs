//! Truncated formal power series over the rationals.
//!
//! A `PowerSeries` stores exactly `order` known coefficients. Binary
//! operations truncate to the smaller order of their operands and never
//! extrapolate past what is known.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::SeriesError;
use crate::rational::{exact_sqrt, int, parse_rational, Rational};

/// Truncation order used when a caller does not choose one.
pub const DEFAULT_ORDER: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PowerSeries {
    coeffs: Vec<Rational>,
}

impl PowerSeries {
    pub fn new(coeffs: Vec<Rational>) -> Result<Self, SeriesError> {
        if coeffs.is_empty() {
            return Err(SeriesError::Empty);
        }
        Ok(Self { coeffs })
    }

    /// Integer coefficients, zero-padded (or cut) to `order`.
    pub fn from_ints(values: &[i64], order: usize) -> Self {
        assert!(order >= 1, "truncation order must be at least 1");
        let coeffs = (0..order)
            .map(|i| values.get(i).map_or_else(Rational::zero, |&v| int(v)))
            .collect();
        Self { coeffs }
    }

    /// Rational coefficients, zero-padded (or cut) to `order`.
    pub fn from_rationals(values: &[Rational], order: usize) -> Self {
        assert!(order >= 1, "truncation order must be at least 1");
        let coeffs = (0..order)
            .map(|i| values.get(i).cloned().unwrap_or_else(Rational::zero))
            .collect();
        Self { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::from_ints(&[], order)
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Rational::one(), order)
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        Self::from_rationals(&[c], order)
    }

    /// The series `x`.
    pub fn x(order: usize) -> Self {
        Self::from_ints(&[0, 1], order)
    }

    /// `1 / (1 - r x)`.
    pub fn geometric(ratio: &Rational, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order);
        let mut acc = Rational::one();
        for _ in 0..order {
            coeffs.push(acc.clone());
            acc *= ratio;
        }
        Self::new(coeffs).expect("order >= 1")
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    /// `[x^i]` of the series; an error past the truncation order.
    pub fn coeff(&self, i: usize) -> Result<&Rational, SeriesError> {
        self.coeffs.get(i).ok_or(SeriesError::OutOfRange {
            index: i,
            order: self.order(),
        })
    }

    pub(crate) fn c(&self, i: usize) -> &Rational {
        &self.coeffs[i]
    }

    /// Keeps the first `min(n, order)` coefficients.
    pub fn truncate(&self, n: usize) -> Self {
        let n = n.clamp(1, self.order());
        Self {
            coeffs: self.coeffs[..n].to_vec(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Index of the first nonzero coefficient, if any is known.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Agreement on the common known prefix.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let n = self.order().min(other.order());
        self.coeffs[..n] == other.coeffs[..n]
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let coeffs = (0..n).map(|i| &self.coeffs[i] + &other.coeffs[i]).collect();
        Self { coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let coeffs = (0..n).map(|i| &self.coeffs[i] - &other.coeffs[i]).collect();
        Self { coeffs }
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|v| v * c).collect(),
        }
    }

    /// Cauchy product.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let mut coeffs = vec![Rational::zero(); n];
        for (i, a) in self.coeffs[..n].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..n - i].iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        Self { coeffs }
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut acc = Self::one(self.order());
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Multiplicative inverse; needs a nonzero constant term.
    pub fn invert(&self) -> Result<Self, SeriesError> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(SeriesError::NotInvertible);
        }
        let inv0 = a0.recip();
        let n = self.order();
        let mut out: Vec<Rational> = Vec::with_capacity(n);
        out.push(inv0.clone());
        for k in 1..n {
            let mut acc = Rational::zero();
            for i in 1..=k {
                let a = &self.coeffs[i];
                if !a.is_zero() {
                    acc += a * &out[k - i];
                }
            }
            out.push(-acc * &inv0);
        }
        Ok(Self { coeffs: out })
    }

    /// `self / other`.
    pub fn div(&self, other: &Self) -> Result<Self, SeriesError> {
        Ok(self.mul(&other.invert()?))
    }

    /// Divides by `x^k`; the first `k` coefficients must vanish. The result
    /// loses `k` orders of truncation.
    pub fn shift_divide(&self, k: usize) -> Result<Self, SeriesError> {
        if k == 0 {
            return Ok(self.clone());
        }
        if k >= self.order() {
            return Err(SeriesError::ShiftExhausted {
                k,
                order: self.order(),
            });
        }
        if let Some(index) = self.coeffs[..k].iter().position(|c| !c.is_zero()) {
            return Err(SeriesError::NotDivisible { k, index });
        }
        Ok(Self {
            coeffs: self.coeffs[k..].to_vec(),
        })
    }

    /// Multiplies by `x^k`, keeping the truncation order.
    pub fn shift_mul(&self, k: usize) -> Self {
        let n = self.order();
        let coeffs = (0..n)
            .map(|i| {
                if i < k {
                    Rational::zero()
                } else {
                    self.coeffs[i - k].clone()
                }
            })
            .collect();
        Self { coeffs }
    }

    /// `self(inner(x))` by Horner's rule; `inner(0)` must be zero.
    pub fn compose(&self, inner: &Self) -> Result<Self, SeriesError> {
        if !inner.coeffs[0].is_zero() {
            return Err(SeriesError::CompositionDomain);
        }
        let n = self.order().min(inner.order());
        let inner = inner.truncate(n);
        let mut acc = Self::constant(self.coeffs[n - 1].clone(), n);
        for i in (0..n - 1).rev() {
            acc = acc.mul(&inner);
            acc.coeffs[0] += &self.coeffs[i];
        }
        Ok(acc)
    }

    /// Compositional inverse `hbar` with `h(hbar(x)) = hbar(h(x)) = x`.
    ///
    /// Coefficients are fixed one at a time: `[x^n] h(hbar)` is linear in
    /// `hbar_n` with slope `h_1`.
    pub fn comp_inverse(&self) -> Result<Self, SeriesError> {
        let n = self.order();
        if !self.coeffs[0].is_zero() || n < 2 || self.coeffs[1].is_zero() {
            return Err(SeriesError::NotInvertibleSubstitution);
        }
        let h1_inv = self.coeffs[1].recip();
        let mut out = vec![Rational::zero(); n];
        out[1] = h1_inv.clone();
        for k in 2..n {
            let partial = Self {
                coeffs: out[..=k].to_vec(),
            };
            let head = self.truncate(k + 1).compose(&partial)?;
            out[k] = -&head.coeffs[k] * &h1_inv;
        }
        Ok(Self { coeffs: out })
    }

    /// Square root with nonnegative constant term.
    pub fn sqrt(&self) -> Result<Self, SeriesError> {
        let s0 = &self.coeffs[0];
        let r0 = match exact_sqrt(s0) {
            Some(r) if !r.is_zero() => r,
            _ if self.is_zero() => return Ok(self.clone()),
            _ => return Err(SeriesError::SqrtDomain(s0.to_string())),
        };
        let n = self.order();
        let two_r0_inv = (int(2) * &r0).recip();
        let mut out = Vec::with_capacity(n);
        out.push(r0);
        for k in 1..n {
            let mut acc = self.coeffs[k].clone();
            for i in 1..k {
                acc -= &out[i] * &out[k - i];
            }
            out.push(acc * &two_r0_inv);
        }
        Ok(Self { coeffs: out })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "coeffs": self.coeffs.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "order": self.order(),
        })
    }

    pub fn from_json(value: &Value) -> Result<Self, SeriesError> {
        let bad = |m: &str| SeriesError::Format(m.to_string());
        let coeffs = value
            .get("coeffs")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing `coeffs` array"))?;
        let coeffs = coeffs
            .iter()
            .map(|c| {
                let s = c.as_str().ok_or_else(|| bad("coefficients must be strings"))?;
                parse_rational(s).map_err(|e| bad(&e.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if let Some(order) = value.get("order") {
            let order = order.as_u64().ok_or_else(|| bad("`order` must be an integer"))?;
            if order as usize != coeffs.len() {
                return Err(bad("`order` does not match the number of coefficients"));
            }
        }
        Self::new(coeffs)
    }

    /// Parses a comma-separated coefficient list such as `1,-1,0,3/2`.
    pub fn parse_coeffs(text: &str) -> Result<Self, SeriesError> {
        let coeffs = text
            .split(',')
            .map(|t| parse_rational(t).map_err(|e| SeriesError::Format(e.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(coeffs)
    }
}

impl fmt::Display for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(ToString::to_string).collect();
        write!(f, "[{}] + O(x^{})", parts.join(", "), self.order())
    }
}

impl Add for &PowerSeries {
    type Output = PowerSeries;
    fn add(self, rhs: Self) -> PowerSeries {
        PowerSeries::add(self, rhs)
    }
}

impl Sub for &PowerSeries {
    type Output = PowerSeries;
    fn sub(self, rhs: Self) -> PowerSeries {
        PowerSeries::sub(self, rhs)
    }
}

impl Mul for &PowerSeries {
    type Output = PowerSeries;
    fn mul(self, rhs: Self) -> PowerSeries {
        PowerSeries::mul(self, rhs)
    }
}

impl Neg for &PowerSeries {
    type Output = PowerSeries;
    fn neg(self) -> PowerSeries {
        PowerSeries::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn ints(v: &[i64]) -> PowerSeries {
        PowerSeries::from_ints(v, v.len())
    }

    fn ones(n: usize) -> PowerSeries {
        PowerSeries::geometric(&int(1), n)
    }

    #[test]
    fn coeff_extraction() {
        assert_eq!(ones(8).coeff(5).unwrap(), &int(1));
        let sq = ones(8).mul(&ones(8));
        assert_eq!(sq.coeff(3).unwrap(), &int(4));
        let tele = ints(&[1, -1, 0, 0, 0, 0]).mul(&ones(6));
        for k in 0..6 {
            assert_eq!(tele.coeff(k).unwrap(), &int(i64::from(k == 0)));
        }
    }

    #[test]
    fn coeff_past_truncation_is_an_error() {
        assert_eq!(
            ones(4).coeff(4),
            Err(SeriesError::OutOfRange { index: 4, order: 4 })
        );
    }

    #[test]
    fn additive_inverse() {
        let s = ones(6);
        assert!(s.add(&s.neg()).is_zero());
        assert!(s.sub(&s).is_zero());
    }

    #[test]
    fn scaled_catalan() {
        let catalan = ints(&[1, 1, 2, 5, 14]);
        assert_eq!(catalan.scale(&int(2)).coeff(3).unwrap(), &int(10));
    }

    #[test]
    fn binary_ops_take_min_order() {
        let a = ones(5);
        let b = ones(3);
        assert_eq!(a.add(&b).order(), 3);
        assert_eq!(a.mul(&b).order(), 3);
        assert_eq!(a.compose(&PowerSeries::x(4)).unwrap().order(), 4);
    }

    #[test]
    fn inverse_pairs() {
        assert_eq!(ints(&[1, -1, 0, 0, 0]).mul(&ones(5)), PowerSeries::one(5));
        assert_eq!(ints(&[1, -1, 0, 0, 0]).invert().unwrap(), ones(5));
        let s = ints(&[-1, 2, 0, 0, 0]);
        let inv = s.invert().unwrap();
        assert_eq!(inv, ints(&[-1, -2, -4, -8, -16]));
        assert_eq!(s.mul(&inv), PowerSeries::one(5));
    }

    #[test]
    fn invert_needs_constant_term() {
        assert_eq!(ints(&[0, 1, 2]).invert(), Err(SeriesError::NotInvertible));
    }

    #[test]
    fn compose_geometric_with_pascal_h() {
        // x/(1-x) = x + x^2 + ...
        let h = ints(&[0, 1, 1, 1, 1, 1, 1, 1]);
        let got = ones(8).compose(&h).unwrap();
        // (1-x)/(1-2x): 1, 1, 2, 4, 8, ...
        assert_eq!(got, ints(&[1, 1, 2, 4, 8, 16, 32, 64]));
        assert_eq!(got, ints(&[1, -1, 0, 0, 0, 0, 0, 0]).div(&ints(&[1, -2, 0, 0, 0, 0, 0, 0])).unwrap());
        assert_eq!(ones(8).compose(&PowerSeries::x(8)).unwrap(), ones(8));
        assert_eq!(ones(3).compose(&ones(3)), Err(SeriesError::CompositionDomain));
    }

    #[test]
    fn reversion_of_x_over_one_minus_x() {
        let h = ints(&[0, 1, 1, 1, 1, 1, 1, 1]);
        let inv = h.comp_inverse().unwrap();
        assert_eq!(inv, ints(&[0, 1, -1, 1, -1, 1, -1, 1]));
        assert_eq!(h.compose(&inv).unwrap(), PowerSeries::x(8));
        assert_eq!(inv.compose(&h).unwrap(), PowerSeries::x(8));
        assert_eq!(PowerSeries::x(6).comp_inverse().unwrap(), PowerSeries::x(6));
        assert_eq!(
            ints(&[0, 0, 1]).comp_inverse(),
            Err(SeriesError::NotInvertibleSubstitution)
        );
    }

    #[test]
    fn sqrt_of_one_minus_four_x() {
        let r = ints(&[1, -4, 0, 0, 0, 0]).sqrt().unwrap();
        assert_eq!(r, ints(&[1, -2, -2, -4, -10, -28]));
        assert_eq!(r.mul(&r), ints(&[1, -4, 0, 0, 0, 0]));
        assert_eq!(PowerSeries::one(4).sqrt().unwrap(), PowerSeries::one(4));
        let quarter = PowerSeries::from_rationals(&[rat(1, 4), int(1)], 4);
        let q = quarter.sqrt().unwrap();
        assert_eq!(q.coeff(0).unwrap(), &rat(1, 2));
        assert_eq!(q.mul(&q), quarter);
        assert!(matches!(ints(&[2, 1]).sqrt(), Err(SeriesError::SqrtDomain(_))));
        assert!(matches!(ints(&[-1, 1]).sqrt(), Err(SeriesError::SqrtDomain(_))));
    }

    #[test]
    fn catalan_from_sqrt() {
        let n = 6;
        let root = PowerSeries::from_ints(&[1, -4], n).sqrt().unwrap();
        let num = PowerSeries::one(n).sub(&root);
        let c = num.shift_divide(1).unwrap().scale(&rat(1, 2));
        assert_eq!(c, ints(&[1, 1, 2, 5, 14]));
    }

    #[test]
    fn shift_divide_checks_leading_zeros() {
        assert_eq!(
            ints(&[0, 1, 2]).shift_divide(2),
            Err(SeriesError::NotDivisible { k: 2, index: 1 })
        );
        assert_eq!(ints(&[0, 0, 3, 4]).shift_divide(2).unwrap(), ints(&[3, 4]));
        assert!(matches!(ints(&[0, 0]).shift_divide(2), Err(SeriesError::ShiftExhausted { .. })));
    }

    #[test]
    fn json_shape() {
        let s = PowerSeries::from_rationals(&[int(1), rat(-35, 2), rat(15, 2)], 3);
        let v = s.to_json();
        assert_eq!(v.to_string(), r#"{"coeffs":["1","-35/2","15/2"],"order":3}"#);
        assert_eq!(PowerSeries::from_json(&v).unwrap(), s);
        assert!(PowerSeries::from_json(&json!({"coeffs": ["1"], "order": 2})).is_err());
        assert!(PowerSeries::from_json(&json!({"coeffs": [1]})).is_err());
    }

    #[test]
    fn parse_coeff_list() {
        let s = PowerSeries::parse_coeffs("1, -1, 0, 3/2").unwrap();
        assert_eq!(s.coeffs(), &[int(1), int(-1), int(0), rat(3, 2)]);
        assert!(PowerSeries::parse_coeffs("1,,2").is_err());
    }
}
