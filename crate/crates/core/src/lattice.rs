//! Integer symmetric bilinear forms and their classifying invariants.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

/// Gram matrix of a symmetric bilinear form on a free abelian group.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GramMatrix(IntMatrix);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn as_str(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Inertia counts `(n_plus, n_zero, n_minus)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Signature {
    pub n_plus: usize,
    pub n_zero: usize,
    pub n_minus: usize,
}

impl Signature {
    pub fn new(n_plus: usize, n_zero: usize, n_minus: usize) -> Self {
        Signature {
            n_plus,
            n_zero,
            n_minus,
        }
    }

    pub fn swapped(self) -> Self {
        Signature {
            n_plus: self.n_minus,
            n_zero: self.n_zero,
            n_minus: self.n_plus,
        }
    }

    pub fn is_positive_definite(&self) -> bool {
        self.n_zero == 0 && self.n_minus == 0
    }

    pub fn is_negative_definite(&self) -> bool {
        self.n_zero == 0 && self.n_plus == 0
    }
}

/// The `(b2+, b2-, parity)` triple that classifies an indefinite unimodular
/// form up to isometry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FormInvariants {
    pub b2_plus: u64,
    pub b2_minus: u64,
    pub parity: Parity,
}

impl FormInvariants {
    pub fn new(b2_plus: u64, b2_minus: u64, parity: Parity) -> Self {
        FormInvariants {
            b2_plus,
            b2_minus,
            parity,
        }
    }

    pub fn rank(&self) -> u64 {
        self.b2_plus + self.b2_minus
    }

    pub fn signature(&self) -> i64 {
        self.b2_plus as i64 - self.b2_minus as i64
    }

    pub fn is_even(&self) -> bool {
        self.parity == Parity::Even
    }
}

impl fmt::Display for FormInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.b2_plus, self.b2_minus, self.parity)
    }
}

impl GramMatrix {
    pub fn new(m: IntMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "Gram matrix must be square, got {}x{}",
                m.rows(),
                m.cols()
            )));
        }
        if let Some((i, j)) = m.first_asymmetry() {
            return Err(Error::Asymmetric { i, j });
        }
        Ok(GramMatrix(m))
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let owned: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
        Self::new(IntMatrix::from_rows(&owned, cols)?)
    }

    pub fn diagonal<I: IntoIterator<Item = i64>>(entries: I) -> Self {
        let entries: Vec<i64> = entries.into_iter().collect();
        let mut m = IntMatrix::zeros(entries.len(), entries.len());
        for (i, &x) in entries.iter().enumerate() {
            m[(i, i)] = BigInt::from(x);
        }
        GramMatrix(m)
    }

    pub fn empty() -> Self {
        GramMatrix(IntMatrix::zeros(0, 0))
    }

    pub fn rank(&self) -> usize {
        self.0.rows()
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> IntMatrix {
        self.0
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        &self.0[(i, j)]
    }

    /// `ᵗu · G · v`.
    pub fn pair(&self, u: &[BigInt], v: &[BigInt]) -> BigInt {
        let n = self.rank();
        let mut acc = BigInt::zero();
        for i in 0..n {
            if u[i].is_zero() {
                continue;
            }
            let mut row = BigInt::zero();
            for j in 0..n {
                if !v[j].is_zero() {
                    row += &self.0[(i, j)] * &v[j];
                }
            }
            acc += &u[i] * row;
        }
        acc
    }

    pub fn norm(&self, v: &[BigInt]) -> BigInt {
        self.pair(v, v)
    }

    /// Exact determinant by fraction-free Bareiss elimination.
    pub fn determinant(&self) -> BigInt {
        bareiss_determinant(&self.0)
    }

    pub fn signature(&self) -> Signature {
        congruence_signature(&self.0)
    }

    pub fn parity(&self) -> Parity {
        let two = BigInt::from(2);
        if (0..self.rank()).all(|i| (&self.0[(i, i)] % &two).is_zero()) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn is_unimodular(&self) -> bool {
        self.determinant().abs().is_one()
    }

    pub fn invariants(&self) -> Result<FormInvariants> {
        let sig = self.signature();
        if sig.n_zero > 0 {
            return Err(Error::Degenerate { zeros: sig.n_zero });
        }
        let det = self.determinant();
        if !det.abs().is_one() {
            return Err(Error::NotUnimodular { det: det.to_string() });
        }
        Ok(FormInvariants::new(
            sig.n_plus as u64,
            sig.n_minus as u64,
            self.parity(),
        ))
    }

    pub fn direct_sum(&self, other: &GramMatrix) -> GramMatrix {
        GramMatrix(IntMatrix::block_diag(&self.0, &other.0))
    }

    pub fn scale(&self, k: i64) -> Result<GramMatrix> {
        self.scale_big(&BigInt::from(k))
    }

    pub fn scale_big(&self, k: &BigInt) -> Result<GramMatrix> {
        if k.is_zero() {
            return Err(Error::ZeroScale);
        }
        Ok(GramMatrix(self.0.scaled(k)))
    }

    pub fn negated(&self) -> GramMatrix {
        GramMatrix(self.0.negated())
    }

    /// `ᵗP · G · P`, the Gram matrix of the vectors given by the columns of `P`.
    pub fn congruent(&self, p: &IntMatrix) -> Result<GramMatrix> {
        let gp = self.0.checked_mul(p)?;
        Ok(GramMatrix(p.transpose().checked_mul(&gp)?))
    }
}

impl fmt::Debug for GramMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gram{}", self.0)
    }
}

impl fmt::Display for GramMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

pub fn direct_sum_all<'a, I: IntoIterator<Item = &'a GramMatrix>>(parts: I) -> GramMatrix {
    parts.into_iter().fold(GramMatrix::empty(), |acc, g| acc.direct_sum(g))
}

fn bareiss_determinant(m: &IntMatrix) -> BigInt {
    let n = m.rows();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m.to_rows();
    let mut sign = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = !sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                // exact by Sylvester's identity
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if sign {
        -det
    } else {
        det
    }
}

/// Symmetric congruence diagonalization over the rationals.
fn congruence_signature(m: &IntMatrix) -> Signature {
    let n = m.rows();
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| (0..n).map(|j| BigRational::from_integer(m[(i, j)].clone())).collect())
        .collect();
    let mut active: Vec<usize> = (0..n).collect();
    let mut sig = Signature::new(0, 0, 0);

    while !active.is_empty() {
        let pivot = match active.iter().copied().find(|&p| !a[p][p].is_zero()) {
            Some(p) => p,
            None => {
                let pair = active.iter().enumerate().find_map(|(s, &i)| {
                    active[s + 1..]
                        .iter()
                        .copied()
                        .find(|&j| !a[i][j].is_zero())
                        .map(|j| (i, j))
                });
                let Some((i, j)) = pair else {
                    sig.n_zero += active.len();
                    break;
                };
                // row_i += row_j, then col_i += col_j; the new a_ii equals 2 a_ij
                for c in 0..n {
                    let v = a[j][c].clone();
                    a[i][c] += v;
                }
                for r in 0..n {
                    let v = a[r][j].clone();
                    a[r][i] += v;
                }
                i
            }
        };
        let piv = a[pivot][pivot].clone();
        if piv.is_positive() {
            sig.n_plus += 1;
        } else {
            sig.n_minus += 1;
        }
        active.retain(|&q| q != pivot);
        for &q in &active {
            if a[q][pivot].is_zero() {
                continue;
            }
            let f = &a[q][pivot] / &piv;
            for &c in &active {
                let v = &f * &a[pivot][c];
                a[q][c] -= v;
            }
            a[q][pivot] = BigRational::zero();
        }
        for &q in &active {
            a[pivot][q] = BigRational::zero();
        }
    }
    sig
}
