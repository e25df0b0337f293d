//! Dense square matrices over the rationals, used for the numeric
//! product oracles on matrix prefixes.

use num_traits::{One, Zero};

use crate::par::{map_range, Exec};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseMatrix {
    rows: Vec<Vec<Rational>>,
}

impl DenseMatrix {
    pub fn from_fn(n: usize, mut entry: impl FnMut(usize, usize) -> Rational) -> Self {
        let rows = (0..n).map(|i| (0..n).map(|j| entry(i, j)).collect()).collect();
        Self { rows }
    }

    /// Pads a ragged lower-triangular table with zeros above the diagonal.
    pub fn from_lower(rows: &[Vec<Rational>]) -> Self {
        let n = rows.len();
        Self::from_fn(n, |i, j| rows[i].get(j).cloned().unwrap_or_else(Rational::zero))
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { Rational::one() } else { Rational::zero() })
    }

    pub fn diagonal(values: &[Rational]) -> Self {
        Self::from_fn(values.len(), |i, j| if i == j { values[i].clone() } else { Rational::zero() })
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.rows[i][j]
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.size(), |i, j| self.rows[j][i].clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.mul_with(other, Exec::default())
    }

    /// Row-parallel product.
    pub fn mul_with(&self, other: &Self, exec: Exec) -> Self {
        let n = self.size();
        assert_eq!(n, other.size(), "dimension mismatch");
        let rows = map_range(exec, n, |i| {
            (0..n)
                .map(|j| {
                    let mut acc = Rational::zero();
                    for k in 0..n {
                        let a = &self.rows[i][k];
                        if !a.is_zero() {
                            acc += a * &other.rows[k][j];
                        }
                    }
                    acc
                })
                .collect()
        });
        Self { rows }
    }

    /// Flips the sign of every odd-indexed column (right product with
    /// `diag(1, -1, 1, ...)`).
    pub fn alternate_columns(&self) -> Self {
        Self::from_fn(self.size(), |i, j| {
            if j % 2 == 1 {
                -&self.rows[i][j]
            } else {
                self.rows[i][j].clone()
            }
        })
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.size())
    }

    /// The ragged lower-triangular rows (entries `j <= i`).
    pub fn lower_rows(&self) -> Vec<Vec<Rational>> {
        self.rows.iter().enumerate().map(|(i, r)| r[..=i].to_vec()).collect()
    }

    /// True when every entry above the diagonal is zero.
    pub fn is_lower_triangular(&self) -> bool {
        self.rows
            .iter()
            .enumerate()
            .all(|(i, r)| r[i + 1..].iter().all(Zero::is_zero))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn identity_is_neutral() {
        let a = DenseMatrix::from_fn(4, |i, j| int((i * 3 + j) as i64));
        let id = DenseMatrix::identity(4);
        assert_eq!(a.mul(&id), a);
        assert_eq!(id.mul_with(&a, Exec::Sequential), a);
    }

    #[test]
    fn modes_agree() {
        let a = DenseMatrix::from_fn(6, |i, j| int(i as i64 - 2 * j as i64));
        let b = a.transpose();
        assert_eq!(a.mul_with(&b, Exec::Sequential), a.mul_with(&b, Exec::Parallel));
    }

    #[test]
    fn sign_flip() {
        let a = DenseMatrix::from_fn(2, |_, _| int(1));
        assert_eq!(a.alternate_columns().get(0, 1), &int(-1));
        assert_eq!(a.alternate_columns().get(1, 0), &int(1));
    }
}
