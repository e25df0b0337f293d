//! Polynomials in the two path weights `a` and `b` with integer
//! coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::rational::{pow, Rational};

/// `sum c_{i,j} a^i b^j`, stored sparsely without zero terms.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct WeightPoly {
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl WeightPoly {
    pub fn monomial(coeff: impl Into<BigInt>, a_exp: u32, b_exp: u32) -> Self {
        let mut p = Self::default();
        p.add_term((a_exp, b_exp), coeff.into());
        p
    }

    pub fn a() -> Self {
        Self::monomial(1, 1, 0)
    }

    pub fn b() -> Self {
        Self::monomial(1, 0, 1)
    }

    fn add_term(&mut self, exps: (u32, u32), c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(exps).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&exps);
        }
    }

    pub fn coeff(&self, a_exp: u32, b_exp: u32) -> BigInt {
        self.terms.get(&(a_exp, b_exp)).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &BigInt)> {
        self.terms.iter().map(|(&(i, j), c)| (i, j, c))
    }

    pub fn eval(&self, a: &Rational, b: &Rational) -> Rational {
        self.terms
            .iter()
            .map(|(&(i, j), c)| Rational::from_integer(c.clone()) * pow(a, i.into()) * pow(b, j.into()))
            .fold(Rational::zero(), |acc, t| acc + t)
    }
}

impl From<BigInt> for WeightPoly {
    fn from(c: BigInt) -> Self {
        Self::monomial(c, 0, 0)
    }
}

impl Zero for WeightPoly {
    fn zero() -> Self {
        Self::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for WeightPoly {
    fn one() -> Self {
        Self::monomial(1, 0, 0)
    }
}

impl Add for WeightPoly {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (e, c) in rhs.terms {
            self.add_term(e, c);
        }
        self
    }
}

impl Neg for WeightPoly {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl Sub for WeightPoly {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Mul for WeightPoly {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = Self::default();
        for (&(i, j), c) in &self.terms {
            for (&(k, l), d) in &rhs.terms {
                out.add_term((i + k, j + l), c * d);
            }
        }
        out
    }
}

/// Terms by descending power of `a`, then of `b`, e.g. `a^4 + 4*a^2*b + b^2`.
impl fmt::Display for WeightPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(x, _), (y, _)| y.cmp(x));
        for (n, (&(i, j), c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            match (n, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            let mut factors = Vec::new();
            if !mag.is_one() || (i == 0 && j == 0) {
                factors.push(mag.to_string());
            }
            for (var, e) in [("a", i), ("b", j)] {
                match e {
                    0 => {}
                    1 => factors.push(var.to_string()),
                    _ => factors.push(format!("{var}^{e}")),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn renders_sorted_monomials() {
        let a = WeightPoly::a();
        let b = WeightPoly::b();
        let p = a.clone() * a.clone() * a.clone() * a.clone()
            + WeightPoly::from(BigInt::from(4)) * a.clone() * a.clone() * b.clone()
            + b.clone() * b.clone();
        assert_eq!(p.to_string(), "a^4 + 4*a^2*b + b^2");
        assert_eq!((a.clone() - b.clone()).to_string(), "a - b");
        assert_eq!((-a.clone() + WeightPoly::one()).to_string(), "-a + 1");
        assert_eq!(WeightPoly::zero().to_string(), "0");
        assert_eq!((a.clone() - a).to_string(), "0");
    }

    #[test]
    fn evaluation() {
        let p = WeightPoly::monomial(3, 1, 2) + WeightPoly::one();
        assert_eq!(p.eval(&int(2), &int(3)), int(55));
    }
}
