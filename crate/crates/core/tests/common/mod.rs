//! Reference implementations used to cross-check the library. None of them
//! share code with it: determinants by cofactor expansion, inertia from the
//! characteristic polynomial, embeddings by plain box search, and the degree
//! table written out directly.

#![allow(dead_code, clippy::needless_range_loop)]

use lattice_cover::{FormInvariants, GramMatrix, IntMatrix, Parity};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

pub fn to_rows(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    m.to_rows()
}

pub fn gram(rows: &[Vec<i64>]) -> GramMatrix {
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    GramMatrix::from_i64(&refs).expect("symmetric test matrix")
}

/// Laplace expansion along the first row.
pub fn cofactor_det(a: &[Vec<BigInt>]) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut total = BigInt::zero();
    for j in 0..n {
        if a[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<BigInt>> = a[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let term = &a[0][j] * cofactor_det(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// Coefficients `c_0..c_n` of `det(xI - A)` by the Faddeev–LeVerrier recursion.
pub fn char_poly(a: &[Vec<BigInt>]) -> Vec<BigRational> {
    let n = a.len();
    let q = |x: &BigInt| BigRational::from_integer(x.clone());
    let mut coeffs = vec![BigRational::zero(); n + 1];
    coeffs[n] = BigRational::one();
    let mut m = vec![vec![BigRational::zero(); n]; n];
    for k in 1..=n {
        // M_k = A·M_{k-1} + c_{n-k+1}·I
        let mut next = vec![vec![BigRational::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut s = BigRational::zero();
                for l in 0..n {
                    if !a[i][l].is_zero() && !m[l][j].is_zero() {
                        s += q(&a[i][l]) * &m[l][j];
                    }
                }
                if i == j {
                    s += &coeffs[n - k + 1];
                }
                next[i][j] = s;
            }
        }
        m = next;
        let mut trace = BigRational::zero();
        for i in 0..n {
            for l in 0..n {
                trace += q(&a[i][l]) * &m[l][i];
            }
        }
        coeffs[n - k] = -trace / BigRational::from_integer(BigInt::from(k));
    }
    coeffs
}

fn sign_changes(cs: &[BigRational]) -> usize {
    let signs: Vec<bool> = cs.iter().filter(|c| !c.is_zero()).map(|c| c.is_positive()).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// `(n_plus, n_zero, n_minus)` of a symmetric matrix. All roots of its
/// characteristic polynomial are real, so Descartes' rule is exact.
pub fn inertia(a: &[Vec<BigInt>]) -> (usize, usize, usize) {
    let cs = char_poly(a);
    let zeros = cs.iter().position(|c| !c.is_zero()).unwrap_or(0);
    let positive = sign_changes(&cs);
    let mirrored: Vec<BigRational> = cs
        .iter()
        .enumerate()
        .map(|(i, c)| if i % 2 == 1 { -c.clone() } else { c.clone() })
        .collect();
    let negative = sign_changes(&mirrored);
    (positive, zeros, negative)
}

pub fn parity_of(a: &[Vec<BigInt>]) -> Parity {
    let two = BigInt::from(2);
    if a.iter().enumerate().all(|(i, row)| (&row[i] % &two).is_zero()) {
        Parity::Even
    } else {
        Parity::Odd
    }
}

pub fn random_symmetric(rng: &mut impl Rng, n: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let mut a = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in i..n {
            let x = rng.gen_range(lo..=hi);
            a[i][j] = x;
            a[j][i] = x;
        }
    }
    a
}

/// Unimodular matrix with entries in `[-bound, bound]`, built from signed
/// permutations and elementary row operations that stay within the bound.
pub fn random_unimodular(rng: &mut impl Rng, n: usize, steps: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut p: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    for i in (1..n).rev() {
        let j = rng.gen_range(0..=i);
        p.swap(i, j);
    }
    for row in p.iter_mut() {
        if rng.gen_bool(0.5) {
            row.iter_mut().for_each(|x| *x = -*x);
        }
    }
    if n < 2 {
        return p;
    }
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        let c = if rng.gen_bool(0.5) { 1 } else { -1 };
        let candidate: Vec<i64> = (0..n).map(|k| p[i][k] + c * p[j][k]).collect();
        if candidate.iter().all(|x| x.abs() <= bound) {
            p[i] = candidate;
        }
    }
    p
}

/// Every valid invariant triple with `b2± ≤ max`.
pub fn invariant_grid(max: u64) -> Vec<FormInvariants> {
    let mut out = Vec::new();
    for p in 0..=max {
        for q in 0..=max {
            if p + q == 0 {
                continue;
            }
            out.push(FormInvariants::new(p, q, Parity::Odd));
            if (p as i64 - q as i64) % 8 == 0 {
                out.push(FormInvariants::new(p, q, Parity::Even));
            }
        }
    }
    out
}

fn perfect_square(n: u64) -> bool {
    let r = (n as f64).sqrt().round() as u64;
    (r.saturating_sub(1)..=r + 1).any(|s| s * s == n)
}

fn in_square_closure(base: &[u64], d: u64) -> bool {
    base.iter().any(|&b| d.is_multiple_of(b) && perfect_square(d / b))
}

fn sigma(inv: &FormInvariants) -> i64 {
    inv.b2_plus as i64 - inv.b2_minus as i64
}

/// Applicable rows of the degree table, written out case by case.
pub fn golden_rows(n: &FormInvariants, m: &FormInvariants) -> Vec<u8> {
    if n.b2_plus > m.b2_plus || n.b2_minus > m.b2_minus {
        return Vec::new();
    }
    let b2 = |x: &FormInvariants| x.b2_plus + x.b2_minus;
    match (n.parity, m.parity) {
        (Parity::Odd, Parity::Odd) if 2 * b2(n) <= b2(m) => vec![1, 2],
        (Parity::Odd, Parity::Odd) => vec![1],
        (Parity::Odd, Parity::Even) if sigma(m) == 0 => vec![3],
        (Parity::Odd, Parity::Even) => vec![4],
        (Parity::Even, Parity::Odd) if sigma(n) == 0 => vec![5],
        (Parity::Even, Parity::Odd) => vec![6],
        (Parity::Even, Parity::Even) if sigma(n) == 0 => vec![7],
        (Parity::Even, Parity::Even) => vec![8],
    }
}

pub fn golden_row_contains(row: u8, d: u64) -> bool {
    match row {
        1 => in_square_closure(&[1], d),
        2 => in_square_closure(&[5], d),
        3 | 5 => d.is_multiple_of(2),
        4 | 6 => in_square_closure(&[2, 4, 6], d),
        7 => true,
        8 => in_square_closure(&[4, 8, 12], d),
        _ => unreachable!(),
    }
}

pub fn golden_guaranteed(n: &FormInvariants, m: &FormInvariants, d: u64) -> bool {
    golden_rows(n, m).into_iter().any(|r| golden_row_contains(r, d))
}

fn det_i64(a: &[Vec<i64>]) -> i64 {
    match a.len() {
        0 => 1,
        1 => a[0][0],
        2 => a[0][0] * a[1][1] - a[0][1] * a[1][0],
        3 => {
            a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
                + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
        }
        _ => unimplemented!("reference search handles rank <= 3"),
    }
}

fn minor(a: &[Vec<i64>], skip: usize) -> Vec<Vec<i64>> {
    a.iter()
        .enumerate()
        .filter(|&(i, _)| i != skip)
        .map(|(_, row)| {
            row.iter()
                .enumerate()
                .filter(|&(j, _)| j != skip)
                .map(|(_, &x)| x)
                .collect()
        })
        .collect()
}

/// Positive definiteness by leading principal minors.
pub fn is_positive_definite(a: &[Vec<i64>]) -> bool {
    (1..=a.len()).all(|k| {
        let lead: Vec<Vec<i64>> = a[..k].iter().map(|r| r[..k].to_vec()).collect();
        det_i64(&lead) > 0
    })
}

fn norm(a: &[Vec<i64>], v: &[i64]) -> i64 {
    pair(a, v, v)
}

fn pair(a: &[Vec<i64>], u: &[i64], v: &[i64]) -> i64 {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| u[i] * a[i][j] * v[j]).sum::<i64>()).sum()
}

/// Reference search for `T` with `ᵗT·B·T = d·A`, `B` positive definite of
/// rank ≤ 3. Coordinates of a norm-`K` vector satisfy
/// `x_i² ≤ K·(B⁻¹)_ii = K·adj(B)_ii / det(B)`, so the search box is exact.
pub struct ReferenceSearch {
    target: Vec<Vec<i64>>,
    det: i64,
    adj_diag: Vec<i64>,
    by_norm: std::collections::HashMap<i64, Vec<Vec<i64>>>,
}

impl ReferenceSearch {
    pub fn new(target: &[Vec<i64>]) -> Self {
        assert!(is_positive_definite(target));
        let det = det_i64(target);
        let adj_diag = (0..target.len()).map(|i| det_i64(&minor(target, i))).collect();
        ReferenceSearch {
            target: target.to_vec(),
            det,
            adj_diag,
            by_norm: Default::default(),
        }
    }

    fn vectors(&mut self, k: i64) -> &[Vec<i64>] {
        if !self.by_norm.contains_key(&k) {
            let m = self.target.len();
            let mut found = Vec::new();
            if k >= 0 {
                let radius: Vec<i64> = (0..m)
                    .map(|i| {
                        let cap = k * self.adj_diag[i];
                        let mut r = 0;
                        while (r + 1) * (r + 1) * self.det <= cap {
                            r += 1;
                        }
                        r
                    })
                    .collect();
                let mut v = vec![0i64; m];
                box_walk(&radius, 0, &mut v, &mut |v| {
                    if norm(&self.target, v) == k {
                        found.push(v.to_vec());
                    }
                });
            }
            self.by_norm.insert(k, found);
        }
        &self.by_norm[&k]
    }

    /// Whether `d·source` embeds. `source` may be any symmetric matrix.
    pub fn exists(&mut self, source: &[Vec<i64>], d: i64) -> bool {
        let n = source.len();
        let lists: Vec<Vec<Vec<i64>>> = (0..n).map(|i| self.vectors(d * source[i][i]).to_vec()).collect();
        if lists.iter().any(Vec::is_empty) {
            return false;
        }
        let mut chosen: Vec<&[i64]> = Vec::with_capacity(n);
        self.extend(source, d, &lists, &mut chosen)
    }

    fn extend<'a>(&self, source: &[Vec<i64>], d: i64, lists: &'a [Vec<Vec<i64>>], chosen: &mut Vec<&'a [i64]>) -> bool {
        let j = chosen.len();
        if j == lists.len() {
            return true;
        }
        for v in &lists[j] {
            if (0..j).all(|i| pair(&self.target, chosen[i], v) == d * source[i][j]) {
                chosen.push(v);
                if self.extend(source, d, lists, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
}

fn box_walk(radius: &[i64], i: usize, v: &mut Vec<i64>, f: &mut impl FnMut(&[i64])) {
    if i == radius.len() {
        f(v);
        return;
    }
    for x in -radius[i]..=radius[i] {
        v[i] = x;
        box_walk(radius, i + 1, v, f);
    }
}

/// All symmetric `n×n` matrices with entries in `[lo, hi]`.
pub fn all_symmetric(n: usize, lo: i64, hi: i64) -> Vec<Vec<Vec<i64>>> {
    let slots: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let width = (hi - lo + 1) as usize;
    let total = width.pow(slots.len() as u32);
    (0..total)
        .map(|mut code| {
            let mut a = vec![vec![0i64; n]; n];
            for &(i, j) in &slots {
                let x = lo + (code % width) as i64;
                code /= width;
                a[i][j] = x;
                a[j][i] = x;
            }
            a
        })
        .collect()
}
