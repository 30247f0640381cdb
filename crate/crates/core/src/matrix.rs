//! Dense row-major matrices over arbitrary-precision integers.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows; `cols` is needed to shape the empty-row case.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>], cols: usize) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::Ragged {
                    row: r,
                    len: row.len(),
                    expected: cols,
                });
            }
            data.extend(row.iter().cloned().map(Into::into));
        }
        Ok(IntMatrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Shorthand for small literal matrices in constructors and tests.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let owned: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
        Self::from_rows(&owned, cols).expect("literal matrix must be rectangular")
    }

    pub fn from_columns(columns: &[Vec<BigInt>], rows: usize) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column {j} has wrong length");
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn checked_mul(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn scaled(&self, k: &BigInt) -> Self {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * k).collect(),
        }
    }

    pub fn negated(&self) -> Self {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| -x).collect(),
        }
    }

    /// Block-diagonal matrix `[[a, 0], [0, b]]`.
    pub fn block_diag(a: &IntMatrix, b: &IntMatrix) -> Self {
        let mut out = Self::zeros(a.rows + b.rows, a.cols + b.cols);
        for i in 0..a.rows {
            for j in 0..a.cols {
                out[(i, j)] = a[(i, j)].clone();
            }
        }
        for i in 0..b.rows {
            for j in 0..b.cols {
                out[(a.rows + i, a.cols + j)] = b[(i, j)].clone();
            }
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        self.first_asymmetry().is_none()
    }

    pub(crate) fn first_asymmetry(&self) -> Option<(usize, usize)> {
        if !self.is_square() {
            return Some((0, 0));
        }
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                if self[(i, j)] != self[(j, i)] {
                    return Some((i, j));
                }
            }
        }
        None
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;

    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;

    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        self.checked_mul(rhs).expect("matrix dimensions must agree")
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}
