//! Integer matrices acting on simple-root coordinates.
//!
//! Column `j` holds the image of the `j`-th simple root, so applying a matrix
//! to a coefficient vector is an ordinary matrix-vector product.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{rat, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticeMatrix {
    rows: Vec<Vec<i64>>,
}

impl LatticeMatrix {
    pub fn identity(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
        LatticeMatrix { rows }
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self> {
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::Dimension {
                expected: n,
                got: bad.len(),
            });
        }
        Ok(LatticeMatrix { rows })
    }

    /// Builds the matrix whose `j`-th column is `cols[j]`.
    pub fn from_columns(cols: &[Vec<i64>]) -> Result<Self> {
        let n = cols.len();
        if let Some(bad) = cols.iter().find(|c| c.len() != n) {
            return Err(Error::Dimension {
                expected: n,
                got: bad.len(),
            });
        }
        let rows = (0..n).map(|i| (0..n).map(|j| cols[j][i]).collect()).collect();
        Ok(LatticeMatrix { rows })
    }

    /// Tries to convert a rational matrix; every entry must be integral.
    pub fn from_rational_rows(rows: &[Vec<Rational>]) -> Result<Self> {
        let conv = rows
            .iter()
            .map(|r| {
                crate::rational::to_integers(r).ok_or_else(|| {
                    Error::input("lattice involutions must have integer entries")
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(conv)
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.rows[i][j]
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        self.rows.iter().map(|r| r[j]).collect()
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        self.rows
            .iter()
            .map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn apply_rational(&self, v: &[Rational]) -> Vec<Rational> {
        self.rows
            .iter()
            .map(|r| r.iter().zip(v).map(|(&a, b)| rat(a) * b).sum())
            .collect()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LatticeMatrix) -> LatticeMatrix {
        let n = self.dim();
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|k| self.rows[i][k] * other.rows[k][j]).sum())
                    .collect()
            })
            .collect();
        LatticeMatrix { rows }
    }

    pub fn negate(&self) -> LatticeMatrix {
        LatticeMatrix {
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().map(|x| -x).collect())
                .collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.dim())
    }

    pub fn to_rational_rows(&self) -> Vec<Vec<Rational>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|&x| rat(x)).collect())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn columns_are_images() {
        let m = LatticeMatrix::from_columns(&[vec![0, -1], vec![-1, 0]]).unwrap();
        assert_eq!(m.apply(&[1, 0]), vec![0, -1]);
        assert!(m.compose(&m).is_identity());
        assert!(LatticeMatrix::from_rows(vec![vec![1, 2]]).is_err());
    }
}
