//! Embedding certificates `d·G_N ↪ G_M` and the constructive building blocks
//! used to assemble them.
//!
//! An [`Embedding`] stores an `m × n` integer matrix `T` whose `j`-th column is
//! the image of the `j`-th source basis vector, and satisfies
//! `ᵗT · G_M · T = d · G_N`. Every constructor in this module checks that
//! identity before returning; a failure there is a bug, not an input error.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::forms::{diag_form, e8_form, hyperbolic_plane, Sign};
use crate::lattice::GramMatrix;
use crate::matrix::IntMatrix;
use crate::oracle::orthogonal_frame_search;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Embedding {
    degree: u64,
    source: GramMatrix,
    target: GramMatrix,
    matrix: IntMatrix,
}

impl Embedding {
    /// Checks shapes only; call [`Embedding::verify`] for the isometry identity.
    pub fn from_parts(degree: u64, source: GramMatrix, target: GramMatrix, matrix: IntMatrix) -> Result<Self> {
        if degree == 0 {
            return Err(Error::ZeroDegree);
        }
        if matrix.rows() != target.rank() || matrix.cols() != source.rank() {
            return Err(Error::DimensionMismatch(format!(
                "matrix is {}x{}, expected {}x{} (target rank x source rank)",
                matrix.rows(),
                matrix.cols(),
                target.rank(),
                source.rank()
            )));
        }
        Ok(Embedding {
            degree,
            source,
            target,
            matrix,
        })
    }

    fn certified(degree: u64, source: GramMatrix, target: GramMatrix, matrix: IntMatrix) -> Self {
        let e = Self::from_parts(degree, source, target, matrix).expect("constructor shapes agree");
        assert!(e.verify(), "constructed embedding failed verification: {e:?}");
        e
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn source(&self) -> &GramMatrix {
        &self.source
    }

    pub fn target(&self) -> &GramMatrix {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// `ᵗT · G_M · T == d · G_N`, exactly.
    pub fn verify(&self) -> bool {
        let (m, n) = (self.target.rank(), self.source.rank());
        if self.matrix.rows() != m || self.matrix.cols() != n {
            return false;
        }
        // T and both Gram matrices are sparse for every construction here
        let columns: Vec<Vec<(usize, &BigInt)>> = (0..n)
            .map(|j| {
                (0..m)
                    .filter_map(|i| Some((i, &self.matrix[(i, j)])).filter(|(_, x)| !x.is_zero()))
                    .collect()
            })
            .collect();
        let g_rows: Vec<Vec<(usize, &BigInt)>> = (0..m)
            .map(|i| {
                (0..m)
                    .filter_map(|k| Some((k, self.target.entry(i, k))).filter(|(_, x)| !x.is_zero()))
                    .collect()
            })
            .collect();
        let d = BigInt::from(self.degree);
        let mut image = vec![BigInt::zero(); m];
        for j in 0..n {
            image.iter_mut().for_each(|x| x.set_zero());
            for &(r, v) in &columns[j] {
                for &(k, g) in &g_rows[r] {
                    image[k] += g * v;
                }
            }
            for i in 0..=j {
                let lhs = columns[i]
                    .iter()
                    .fold(BigInt::zero(), |acc, &(r, v)| acc + v * &image[r]);
                if lhs != &d * self.source.entry(i, j) {
                    return false;
                }
            }
        }
        true
    }

    pub fn identity(g: &GramMatrix) -> Self {
        Self::certified(1, g.clone(), g.clone(), IntMatrix::identity(g.rank()))
    }

    /// `inner: N → P` followed by `outer: P → M`; degrees multiply.
    pub fn compose(inner: &Embedding, outer: &Embedding) -> Result<Embedding> {
        if inner.target != outer.source {
            return Err(Error::ChainMismatch);
        }
        let matrix = &outer.matrix * &inner.matrix;
        Ok(Self::certified(
            inner.degree * outer.degree,
            inner.source.clone(),
            outer.target.clone(),
            matrix,
        ))
    }

    pub fn direct_sum(a: &Embedding, b: &Embedding) -> Result<Embedding> {
        if a.degree != b.degree {
            return Err(Error::DegreeMismatch(a.degree, b.degree));
        }
        Ok(Self::certified(
            a.degree,
            a.source.direct_sum(&b.source),
            a.target.direct_sum(&b.target),
            IntMatrix::block_diag(&a.matrix, &b.matrix),
        ))
    }

    /// Multiplies `T` by `h`, which multiplies the degree by `h²`.
    pub fn amplify(&self, h: u64) -> Embedding {
        assert!(h >= 1, "amplification factor must be positive");
        Self::certified(
            self.degree * h * h,
            self.source.clone(),
            self.target.clone(),
            self.matrix.scaled(&BigInt::from(h)),
        )
    }

    /// Same matrix with both Gram matrices negated.
    pub fn negate(&self) -> Embedding {
        Self::certified(
            self.degree,
            self.source.negated(),
            self.target.negated(),
            self.matrix.clone(),
        )
    }

    /// Reads the same matrix against the target `c·G_M`, giving degree `c·d`.
    pub fn scale_target(&self, c: u64) -> Embedding {
        assert!(c >= 1);
        let target = self.target.scale_big(&BigInt::from(c)).expect("c is nonzero");
        Self::certified(self.degree * c, self.source.clone(), target, self.matrix.clone())
    }

    /// If the source is `f·S`, reinterpret as an embedding of `S` of degree `f·d`.
    pub fn absorb_source_factor(&self, f: u64) -> Result<Embedding> {
        let fb = BigInt::from(f);
        let n = self.source.rank();
        let mut reduced = IntMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let x = self.source.entry(i, j);
                if f == 0 || !(x % &fb).is_zero() {
                    return Err(Error::DimensionMismatch(format!("source is not divisible by {f}")));
                }
                reduced[(i, j)] = x / &fb;
            }
        }
        let source = GramMatrix::new(reduced)?;
        Ok(Self::certified(
            self.degree * f,
            source,
            self.target.clone(),
            self.matrix.clone(),
        ))
    }

    /// Restriction to the sub-basis of the source given by `columns`.
    pub fn restrict(&self, columns: &[usize]) -> Embedding {
        let n = columns.len();
        let mut src = IntMatrix::zeros(n, n);
        for (a, &i) in columns.iter().enumerate() {
            for (b, &j) in columns.iter().enumerate() {
                src[(a, b)] = self.source.entry(i, j).clone();
            }
        }
        let cols: Vec<Vec<BigInt>> = columns.iter().map(|&j| self.matrix.column(j)).collect();
        let matrix = IntMatrix::from_columns(&cols, self.target.rank());
        Self::certified(
            self.degree,
            GramMatrix::new(src).expect("principal submatrix"),
            self.target.clone(),
            matrix,
        )
    }
}

/// Principal submatrix of `g` on `idx`.
pub(crate) fn principal(g: &GramMatrix, idx: &[usize]) -> GramMatrix {
    let n = idx.len();
    let mut m = IntMatrix::zeros(n, n);
    for (a, &i) in idx.iter().enumerate() {
        for (b, &j) in idx.iter().enumerate() {
            m[(a, b)] = g.entry(i, j).clone();
        }
    }
    GramMatrix::new(m).expect("principal submatrix of a symmetric matrix")
}

/// Assembles an embedding between fixed source and target Gram matrices
/// from pieces, each placed on a set of source indices and target indices.
pub struct Assembly {
    degree: u64,
    source: GramMatrix,
    target: GramMatrix,
    matrix: IntMatrix,
    used_source: Vec<bool>,
    used_target: Vec<bool>,
}

impl Assembly {
    pub fn new(degree: u64, source: GramMatrix, target: GramMatrix) -> Self {
        let (n, m) = (source.rank(), target.rank());
        Assembly {
            degree,
            source,
            target,
            matrix: IntMatrix::zeros(m, n),
            used_source: vec![false; n],
            used_target: vec![false; m],
        }
    }

    pub fn place(&mut self, piece: &Embedding, src: &[usize], tgt: &[usize]) -> Result<()> {
        let bad = |msg: String| Err(Error::AllocationInfeasible(msg));
        if piece.degree != self.degree {
            return bad(format!("piece degree {} differs from {}", piece.degree, self.degree));
        }
        if src.len() != piece.source.rank() || tgt.len() != piece.target.rank() {
            return bad("piece placed on index sets of the wrong size".into());
        }
        if src.iter().any(|&i| i >= self.used_source.len() || self.used_source[i])
            || tgt.iter().any(|&i| i >= self.used_target.len() || self.used_target[i])
        {
            return bad(format!("overlapping or out-of-range placement src={src:?} tgt={tgt:?}"));
        }
        if principal(&self.source, src) != piece.source || principal(&self.target, tgt) != piece.target {
            return bad(format!("piece does not match the blocks at src={src:?} tgt={tgt:?}"));
        }
        for (b, &j) in src.iter().enumerate() {
            self.used_source[j] = true;
            for (a, &i) in tgt.iter().enumerate() {
                self.matrix[(i, j)] = piece.matrix[(a, b)].clone();
            }
        }
        for &i in tgt {
            self.used_target[i] = true;
        }
        Ok(())
    }

    pub fn finish(self) -> Result<Embedding> {
        if let Some(j) = self.used_source.iter().position(|&u| !u) {
            return Err(Error::AllocationInfeasible(format!(
                "source generator {j} was not placed"
            )));
        }
        let e = Embedding::from_parts(self.degree, self.source, self.target, self.matrix)?;
        if !e.verify() {
            return Err(Error::AllocationInfeasible(
                "assembled matrix fails verification".into(),
            ));
        }
        Ok(e)
    }
}

pub fn direct_sum_embed(a: &Embedding, b: &Embedding) -> Result<Embedding> {
    Embedding::direct_sum(a, b)
}

/// `⟨2k⟩ ⊕ ⟨-2k⟩ ↪ H` via `e₁ + k e₂` and `e₁ - k e₂`, as a degree-`2k`
/// embedding of `diag(1, -1)`.
pub fn hyperbolic_pair(k: u64) -> Embedding {
    assert!(k >= 1);
    let k = k as i64;
    Embedding::certified(
        2 * k as u64,
        diag_form(1, 1),
        hyperbolic_plane(),
        IntMatrix::from_i64(&[&[1, 1], &[k, -k]]),
    )
}

/// `⟨±2k⟩ ↪ H` via `e₁ ± k e₂`, at degree 1.
pub fn single_into_h(k: u64, sign: Sign) -> Embedding {
    assert!(k >= 1);
    let s = sign.as_i64();
    let k = k as i64;
    Embedding::certified(
        1,
        GramMatrix::diagonal([2 * k * s]),
        hyperbolic_plane(),
        IntMatrix::from_i64(&[&[1], &[s * k]]),
    )
}

pub fn l2_matrix() -> IntMatrix {
    IntMatrix::from_i64(&[
        &[1, 2, 1, 0, 0, 0, 0, 0],
        &[0, 0, 1, 2, 1, 0, 0, 0],
        &[0, 0, 0, 0, 1, 2, 1, 0],
        &[0, 0, 0, 0, 1, 0, 0, 2],
        &[0, 0, 1, 0, -1, 0, 1, 0],
        &[1, 0, -1, 0, 0, 0, 1, 0],
        &[1, 0, 0, 0, 0, 0, -1, 0],
        &[-1, 0, 0, 0, 0, 0, 0, 0],
    ])
}

fn block_repeat(block: &IntMatrix, copies: usize) -> IntMatrix {
    (0..copies).fold(IntMatrix::zeros(0, 0), |acc, _| IntMatrix::block_diag(&acc, block))
}

/// Four copies of `[[1, 1], [1, -1]]`; `ᵗG₂G₂ = 2I₈`.
pub fn g2_matrix() -> IntMatrix {
    block_repeat(&IntMatrix::from_i64(&[&[1, 1], &[1, -1]]), 4)
}

/// Two copies of a 4×4 block with `ᵗB B = 3I₄`.
pub fn g3_matrix() -> IntMatrix {
    let b = IntMatrix::from_i64(&[&[1, 1, 1, 0], &[1, -1, 0, 1], &[-1, 0, 1, 1], &[0, 1, -1, 1]]);
    block_repeat(&b, 2)
}

/// `d·E8 ↪ ⟨1⟩⁸` for `d ∈ {2, 4, 6}`: `L₂`, `G₂L₂` or `G₃L₂`.
pub fn l_matrix(d: u64) -> Result<Embedding> {
    let l2 = l2_matrix();
    let matrix = match d {
        2 => l2,
        4 => &g2_matrix() * &l2,
        6 => &g3_matrix() * &l2,
        _ => return Err(Error::UnsupportedDegree(d)),
    };
    Ok(Embedding::certified(d, e8_form(Sign::Plus), diag_form(8, 0), matrix))
}

/// `d·(±E8) ↪ ⊕₈H` for `d ∈ {4, 8, 12}`, through `⊕₈⟨±2⟩`.
pub fn e8_into_hyperbolic(d: u64, sign: Sign) -> Result<Embedding> {
    if !matches!(d, 4 | 8 | 12) {
        return Err(Error::UnsupportedDegree(d));
    }
    // E8 → ⟨2⟩⁸ at degree d
    let mut inner = l_matrix(d / 2)?.scale_target(2);
    if sign == Sign::Minus {
        inner = inner.negate();
    }
    let piece = single_into_h(1, sign);
    let outer = (1..8).try_fold(piece.clone(), |acc, _| Embedding::direct_sum(&acc, &piece))?;
    Embedding::compose(&inner, &outer)
}

static FRAMES: [OnceLock<Option<IntMatrix>>; 17] = [const { OnceLock::new() }; 17];

/// Eight pairwise-orthogonal norm-`k` vectors of E8 as the columns of an 8×8
/// matrix `F` with `ᵗF · E8 · F = k·I₈`, or `None` if no such frame exists.
pub fn frame_in_e8(k: u64) -> Option<IntMatrix> {
    let compute =
        || orthogonal_frame_search(&e8_form(Sign::Plus), &BigInt::from(k), 8).expect("E8 is positive definite");
    match FRAMES.get(k as usize) {
        Some(cell) => cell.get_or_init(compute).clone(),
        None => compute(),
    }
}

/// `d·(±E8) ↪ ±E8` for `d ∈ {4, 8, 12}`, as `F_{d/2} · L₂`.
pub fn e8_into_e8(d: u64, sign: Sign) -> Result<Embedding> {
    if !matches!(d, 4 | 8 | 12) {
        return Err(Error::UnsupportedDegree(d));
    }
    let frame = frame_in_e8(d / 2).ok_or(Error::FrameNotFound(d / 2))?;
    let outer = Embedding::certified(d / 2, diag_form(8, 0), e8_form(Sign::Plus), frame);
    let e = Embedding::compose(&l_matrix(2)?, &outer)?;
    Ok(match sign {
        Sign::Plus => e,
        Sign::Minus => e.negate(),
    })
}

/// Orthogonal frame of norm `k` inside `sign·E8` as an embedding of
/// `⟨sign⟩^count` of degree `k`, using the first `count` frame vectors.
pub fn diagonal_into_e8(k: u64, count: usize, sign: Sign) -> Result<Embedding> {
    assert!(count <= 8);
    let frame = frame_in_e8(k).ok_or(Error::FrameNotFound(k))?;
    let full = Embedding::certified(k, diag_form(8, 0), e8_form(Sign::Plus), frame);
    let full = match sign {
        Sign::Plus => full,
        Sign::Minus => full.negate(),
    };
    Ok(full.restrict(&(0..count).collect::<Vec<_>>()))
}

/// `k·H ↪ H` via `T = diag(1, k)`.
pub fn h_into_h(k: u64) -> Embedding {
    assert!(k >= 1);
    Embedding::certified(
        k,
        hyperbolic_plane(),
        hyperbolic_plane(),
        IntMatrix::from_i64(&[&[1, 0], &[0, k as i64]]),
    )
}

/// `2k·H ↪ diag(1, -1)` via the isotropic columns `(1, 1)` and `(k, -k)`.
pub fn two_k_h_into_diag(k: u64) -> Embedding {
    assert!(k >= 1);
    let k = k as i64;
    Embedding::certified(
        2 * k as u64,
        hyperbolic_plane(),
        diag_form(1, 1),
        IntMatrix::from_i64(&[&[1, k], &[1, -k]]),
    )
}

/// `5·⟨±1⟩² ↪ ⟨±1⟩²` via columns `(1, 2)` and `(2, -1)`.
pub fn five_pair_same_sign(sign: Sign) -> Embedding {
    let g = match sign {
        Sign::Plus => diag_form(2, 0),
        Sign::Minus => diag_form(0, 2),
    };
    Embedding::certified(5, g.clone(), g, IntMatrix::from_i64(&[&[1, 2], &[2, -1]]))
}

/// `5·diag(1, -1) ↪ diag(1, -1)` via columns `(3, 2)` and `(2, 3)`.
pub fn five_pair_mixed() -> Embedding {
    Embedding::certified(
        5,
        diag_form(1, 1),
        diag_form(1, 1),
        IntMatrix::from_i64(&[&[3, 2], &[2, 3]]),
    )
}

pub fn negate_adapter(e: &Embedding) -> Embedding {
    e.negate()
}
