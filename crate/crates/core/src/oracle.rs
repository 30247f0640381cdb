//! Brute-force lattice search: short vectors of a given norm in a definite
//! lattice, orthogonal frames, and exhaustive embedding search.
//!
//! Coordinate bounds come from an exact rational LDLᵀ decomposition, so the
//! enumeration is complete. Indefinite targets only get a bounded box search
//! whose negative answers are flagged as inconclusive.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::embedding::Embedding;
use crate::error::{Error, Result};
use crate::lattice::GramMatrix;
use crate::matrix::IntMatrix;

/// Upper-triangular data of `Q(x) = Σ_i q_ii (x_i + Σ_{j>i} q_ij x_j)²`.
struct Decomposition {
    q: Vec<Vec<BigRational>>,
}

impl Decomposition {
    fn new(g: &GramMatrix) -> Self {
        let n = g.rank();
        let mut q: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| BigRational::from_integer(g.entry(i, j).clone()))
                    .collect()
            })
            .collect();
        for i in 0..n {
            for j in i + 1..n {
                q[j][i] = q[i][j].clone();
                q[i][j] = &q[i][j] / &q[i][i];
            }
            for k in i + 1..n {
                for l in k..n {
                    let v = &q[k][i] * &q[i][l];
                    q[k][l] -= v;
                }
            }
        }
        Decomposition { q }
    }
}

fn floor_rational(x: &BigRational) -> BigInt {
    x.floor().to_integer()
}

fn ceil_rational(x: &BigRational) -> BigInt {
    x.ceil().to_integer()
}

/// All `v` with `ᵗv·G·v = k` in a positive-definite lattice, sorted
/// lexicographically. Both `v` and `-v` are listed.
pub fn enumerate_vectors_of_norm(g: &GramMatrix, k: &BigInt) -> Result<Vec<Vec<BigInt>>> {
    if !g.signature().is_positive_definite() {
        return Err(Error::NotPositiveDefinite);
    }
    let n = g.rank();
    if !k.is_positive() || n == 0 {
        return Ok(Vec::new());
    }
    let dec = Decomposition::new(g);
    let target = BigRational::from_integer(k.clone());
    let mut out = Vec::new();
    let mut x = vec![BigInt::zero(); n];
    descend(&dec, n, &target, &mut x, &mut out);
    out.sort();
    Ok(out)
}

fn descend(dec: &Decomposition, level: usize, remaining: &BigRational, x: &mut [BigInt], out: &mut Vec<Vec<BigInt>>) {
    if level == 0 {
        if remaining.is_zero() {
            out.push(x.to_vec());
        }
        return;
    }
    let i = level - 1;
    let n = x.len();
    let q = &dec.q;
    let mut center = BigRational::zero();
    for j in i + 1..n {
        if !x[j].is_zero() {
            center -= &q[i][j] * BigRational::from_integer(x[j].clone());
        }
    }
    let t = remaining / &q[i][i];
    // s >= sqrt(t)
    let s = BigRational::from_integer(floor_rational(&t).sqrt() + 1);
    let lo = ceil_rational(&(&center - &s));
    let hi = floor_rational(&(&center + &s));
    let mut xi = lo;
    while xi <= hi {
        let diff = BigRational::from_integer(xi.clone()) - &center;
        let used = &q[i][i] * &diff * &diff;
        if used <= *remaining {
            x[i] = xi.clone();
            let rest = remaining - used;
            descend(dec, i, &rest, x, out);
        }
        xi += 1;
    }
    x[i] = BigInt::zero();
}

/// A candidate column together with `G·v`, so pairings become dot products.
#[derive(Clone)]
struct Candidate {
    v: Vec<BigInt>,
    gv: Vec<BigInt>,
}

impl Candidate {
    fn new(g: &GramMatrix, v: Vec<BigInt>) -> Self {
        let n = g.rank();
        let gv = (0..n)
            .map(|i| (0..n).fold(BigInt::zero(), |acc, j| acc + g.entry(i, j) * &v[j]))
            .collect();
        Candidate { v, gv }
    }

    fn pair(&self, other: &Candidate) -> BigInt {
        self.v.iter().zip(&other.gv).fold(
            BigInt::zero(),
            |acc, (a, b)| {
                if a.is_zero() {
                    acc
                } else {
                    acc + a * b
                }
            },
        )
    }
}

/// `m` pairwise-orthogonal vectors of norm `k`, returned as the columns of a
/// `rank × m` matrix. The answer is the lexicographically least sequence of
/// vectors drawn in increasing order from the sorted candidate list; `None`
/// means the exhaustive search found no frame.
pub fn orthogonal_frame_search(g: &GramMatrix, k: &BigInt, m: usize) -> Result<Option<IntMatrix>> {
    let vectors = enumerate_vectors_of_norm(g, k)?;
    let cands: Vec<Candidate> = vectors.into_iter().map(|v| Candidate::new(g, v)).collect();
    let all: Vec<usize> = (0..cands.len()).collect();
    let mut chosen = Vec::with_capacity(m);
    if frame_backtrack(&cands, &all, m, &mut chosen) {
        let cols: Vec<Vec<BigInt>> = chosen.iter().map(|&i| cands[i].v.clone()).collect();
        Ok(Some(IntMatrix::from_columns(&cols, g.rank())))
    } else {
        Ok(None)
    }
}

fn frame_backtrack(cands: &[Candidate], pool: &[usize], m: usize, chosen: &mut Vec<usize>) -> bool {
    if chosen.len() == m {
        return true;
    }
    let need = m - chosen.len();
    for (pos, &i) in pool.iter().enumerate() {
        if pool.len() - pos < need {
            break;
        }
        let next: Vec<usize> = pool[pos + 1..]
            .iter()
            .copied()
            .filter(|&j| cands[i].pair(&cands[j]).is_zero())
            .collect();
        if next.len() + 1 < need {
            continue;
        }
        chosen.push(i);
        if frame_backtrack(cands, &next, m, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(Embedding),
    /// Exhaustive search over a definite target: no embedding exists.
    Impossible,
    /// Box search over an indefinite target found nothing; inconclusive.
    NotFoundWithinBound {
        bound: u64,
    },
}

impl SearchOutcome {
    pub fn embedding(&self) -> Option<&Embedding> {
        match self {
            SearchOutcome::Found(e) => Some(e),
            _ => None,
        }
    }
}

enum TargetKind {
    Positive,
    Negative,
    Indefinite,
}

/// Reusable search state for a fixed target and degree. Candidate column
/// lists are cached per norm, so many sources can be tested cheaply.
pub struct EmbeddingSearcher {
    target: GramMatrix,
    // positive-definite copy used for enumeration when the target is definite
    search_gram: GramMatrix,
    degree: u64,
    bound: u64,
    kind: TargetKind,
    cache: HashMap<BigInt, Vec<Candidate>>,
    box_vectors: Option<Vec<Vec<BigInt>>>,
}

impl EmbeddingSearcher {
    pub fn new(target: &GramMatrix, degree: u64, bound: u64) -> Result<Self> {
        if degree == 0 {
            return Err(Error::ZeroDegree);
        }
        let sig = target.signature();
        let kind = if target.rank() > 0 && sig.is_positive_definite() {
            TargetKind::Positive
        } else if target.rank() > 0 && sig.is_negative_definite() {
            TargetKind::Negative
        } else {
            TargetKind::Indefinite
        };
        let search_gram = match kind {
            TargetKind::Negative => target.negated(),
            _ => target.clone(),
        };
        Ok(EmbeddingSearcher {
            target: target.clone(),
            search_gram,
            degree,
            bound,
            kind,
            cache: HashMap::new(),
            box_vectors: None,
        })
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self.kind, TargetKind::Indefinite)
    }

    fn candidates(&mut self, norm: &BigInt) -> Result<&[Candidate]> {
        if !self.cache.contains_key(norm) {
            let m = self.search_gram.rank();
            let list: Vec<Vec<BigInt>> = match self.kind {
                TargetKind::Indefinite => {
                    let bound = self.bound;
                    let gram = &self.search_gram;
                    self.box_vectors
                        .get_or_insert_with(|| box_vectors(m, bound))
                        .iter()
                        .filter(|v| &gram.norm(v) == norm)
                        .cloned()
                        .collect()
                }
                _ if norm.is_zero() => vec![vec![BigInt::zero(); m]],
                _ if norm.is_negative() => Vec::new(),
                _ => enumerate_vectors_of_norm(&self.search_gram, norm)?,
            };
            let cands = list.into_iter().map(|v| Candidate::new(&self.search_gram, v)).collect();
            self.cache.insert(norm.clone(), cands);
        }
        Ok(&self.cache[norm])
    }

    /// Least embedding `degree · source ↪ target` in the fixed search order.
    pub fn search(&mut self, source: &GramMatrix) -> Result<SearchOutcome> {
        let n = source.rank();
        let d = BigInt::from(self.degree);
        let flip = matches!(self.kind, TargetKind::Negative);
        // required pairings, in the sign convention of search_gram
        let required: Vec<Vec<BigInt>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let r = &d * source.entry(i, j);
                        if flip {
                            -r
                        } else {
                            r
                        }
                    })
                    .collect()
            })
            .collect();
        let mut lists: Vec<Vec<Candidate>> = Vec::with_capacity(n);
        for (j, row) in required.iter().enumerate() {
            let c = self.candidates(&row[j])?;
            if c.is_empty() {
                return Ok(self.not_found());
            }
            lists.push(c.to_vec());
        }
        let mut chosen: Vec<usize> = Vec::with_capacity(n);
        if embed_backtrack(&lists, &required, &mut chosen) {
            let cols: Vec<Vec<BigInt>> = chosen.iter().enumerate().map(|(j, &i)| lists[j][i].v.clone()).collect();
            let matrix = IntMatrix::from_columns(&cols, self.target.rank());
            let e = Embedding::from_parts(self.degree, source.clone(), self.target.clone(), matrix)?;
            assert!(e.verify(), "oracle produced an invalid embedding");
            Ok(SearchOutcome::Found(e))
        } else {
            Ok(self.not_found())
        }
    }

    fn not_found(&self) -> SearchOutcome {
        if self.is_exact() {
            SearchOutcome::Impossible
        } else {
            SearchOutcome::NotFoundWithinBound { bound: self.bound }
        }
    }
}

fn embed_backtrack(lists: &[Vec<Candidate>], required: &[Vec<BigInt>], chosen: &mut Vec<usize>) -> bool {
    let j = chosen.len();
    if j == lists.len() {
        return true;
    }
    'cand: for (idx, c) in lists[j].iter().enumerate() {
        for (i, &prev) in chosen.iter().enumerate() {
            if lists[i][prev].pair(c) != required[i][j] {
                continue 'cand;
            }
        }
        chosen.push(idx);
        if embed_backtrack(lists, required, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

fn box_vectors(m: usize, bound: u64) -> Vec<Vec<BigInt>> {
    let b = bound as i64;
    let mut out = vec![Vec::new()];
    for _ in 0..m {
        let mut next = Vec::with_capacity(out.len() * (2 * bound as usize + 1));
        for prefix in &out {
            for x in -b..=b {
                let mut v: Vec<BigInt> = prefix.clone();
                v.push(BigInt::from(x));
                next.push(v);
            }
        }
        out = next;
    }
    out
}

/// Exhaustive search for `degree · G_N ↪ G_M`. Exact when `G_M` is definite;
/// otherwise coordinates are limited to `|x| ≤ bound`.
pub fn brute_force_embedding(
    source: &GramMatrix,
    target: &GramMatrix,
    degree: u64,
    bound: u64,
) -> Result<SearchOutcome> {
    EmbeddingSearcher::new(target, degree, bound)?.search(source)
}
