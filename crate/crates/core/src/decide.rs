//! Which degrees `d` admit `d·I_N ↪ I_M`, explicit embeddings between normal
//! forms for the guaranteed ones, and the branched-covering consequences.
//!
//! Rows of the degree table, selected by the parities of `N` and `M` and the
//! vanishing of a signature:
//!
//! | row | d         | N    | M    | condition             |
//! |-----|-----------|------|------|-----------------------|
//! | 1   | 1         | odd  | odd  |                       |
//! | 2   | 5         | odd  | odd  | `2·b2(N) ≤ b2(M)`     |
//! | 3   | 2k        | odd  | even | `σ(M) = 0`            |
//! | 4   | 2, 4, 6   | odd  | even | `σ(M) ≠ 0`            |
//! | 5   | 2k        | even | odd  | `σ(N) = 0`            |
//! | 6   | 2, 4, 6   | even | odd  | `σ(N) ≠ 0`            |
//! | 7   | k         | even | even | `σ(N) = 0`            |
//! | 8   | 4, 8, 12  | even | even | `σ(N) ≠ 0`            |
//!
//! Every attainable `d` stays attainable after multiplying by `h²`. The table
//! is sufficient, not exhaustive: degrees outside it are reported as unknown
//! unless an obstruction rules them out.
//!
//! For a K3 source and an even target, row 8 makes 12 a guaranteed degree
//! alongside 4 and 8; all three are reported.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Roots;

use crate::embedding::{
    diagonal_into_e8, e8_into_e8, e8_into_hyperbolic, five_pair_mixed, five_pair_same_sign, h_into_h, hyperbolic_pair,
    l_matrix, single_into_h, two_k_h_into_diag, Assembly, Embedding,
};
use crate::error::{Error, Result};
use crate::forms::{serre_normal_form, validate_invariants, Sign};
use crate::lattice::{FormInvariants, GramMatrix, Parity};

/// A set of degrees, closed under multiplication by perfect squares when
/// given by a base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DegreeFamily {
    Empty,
    All,
    AllEven,
    SquareClosure(Vec<u64>),
}

fn is_square(n: u64) -> Option<u64> {
    let r = n.sqrt();
    (r * r == n).then_some(r)
}

impl DegreeFamily {
    /// Canonical square-closure: sorted, deduplicated, no element equal to
    /// another element times a square.
    pub fn square_closure<I: IntoIterator<Item = u64>>(base: I) -> Self {
        let mut b: Vec<u64> = base.into_iter().filter(|&x| x > 0).collect();
        b.sort_unstable();
        b.dedup();
        let reduced: Vec<u64> = b
            .iter()
            .copied()
            .filter(|&x| !b.iter().any(|&y| y < x && x % y == 0 && is_square(x / y).is_some()))
            .collect();
        if reduced.is_empty() {
            DegreeFamily::Empty
        } else {
            DegreeFamily::SquareClosure(reduced)
        }
    }

    pub fn contains(&self, d: u64) -> bool {
        self.decompose(d).is_some()
    }

    /// Writes `d = h²·b` with `b` a base degree (the smallest such `b`); for
    /// `All`/`AllEven` the base is `d` itself.
    pub fn decompose(&self, d: u64) -> Option<(u64, u64)> {
        if d == 0 {
            return None;
        }
        match self {
            DegreeFamily::Empty => None,
            DegreeFamily::All => Some((d, 1)),
            DegreeFamily::AllEven => d.is_multiple_of(2).then_some((d, 1)),
            DegreeFamily::SquareClosure(base) => base
                .iter()
                .find_map(|&b| d.is_multiple_of(b).then(|| is_square(d / b)).flatten().map(|h| (b, h))),
        }
    }

    pub fn kind_str(&self) -> &'static str {
        match self {
            DegreeFamily::Empty => "empty",
            DegreeFamily::All => "all",
            DegreeFamily::AllEven => "all_even",
            DegreeFamily::SquareClosure(_) => "square_closure",
        }
    }

    pub fn base(&self) -> &[u64] {
        match self {
            DegreeFamily::SquareClosure(b) => b,
            _ => &[],
        }
    }
}

impl fmt::Display for DegreeFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DegreeFamily::Empty => write!(f, "none"),
            DegreeFamily::All => write!(f, "every d >= 1"),
            DegreeFamily::AllEven => write!(f, "every even d"),
            DegreeFamily::SquareClosure(b) => {
                let parts: Vec<String> = b.iter().map(u64::to_string).collect();
                write!(f, "h^2 * d for d in {{{}}}, h >= 1", parts.join(", "))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum DegreeStatus {
    Guaranteed,
    Impossible,
    Unknown,
}

impl DegreeStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            DegreeStatus::Guaranteed => "guaranteed",
            DegreeStatus::Impossible => "impossible",
            DegreeStatus::Unknown => "unknown",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoveringStatus {
    GuaranteedCovering,
    Impossible,
    Unknown,
    BelowTheoremRange,
}

impl CoveringStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            CoveringStatus::GuaranteedCovering => "guaranteed-covering",
            CoveringStatus::Impossible => "impossible",
            CoveringStatus::Unknown => "unknown",
            CoveringStatus::BelowTheoremRange => "below-theorem-range",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BranchRegularity {
    /// at most nodal singularities (degree 4)
    Nodal,
    /// locally flat PL surface (degree ≥ 5)
    LocallyFlat,
}

impl BranchRegularity {
    pub fn for_degree(d: u64) -> Option<Self> {
        match d {
            4 => Some(BranchRegularity::Nodal),
            d if d >= 5 => Some(BranchRegularity::LocallyFlat),
            _ => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            BranchRegularity::Nodal => "nodal",
            BranchRegularity::LocallyFlat => "locally_flat",
        }
    }
}

/// Why some or all degrees are ruled out.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Obstruction {
    /// `b2+(N) > b2+(M)`: rules out every degree.
    PlusRankExceeds { source: u64, target: u64 },
    /// `b2-(N) > b2-(M)`: rules out every degree.
    MinusRankExceeds { source: u64, target: u64 },
    /// For odd `d`, `d·I_N` is odd and cannot sit inside the even `I_M`.
    OddIntoEven,
}

impl Obstruction {
    pub fn applies_to(&self, d: u64) -> bool {
        match self {
            Obstruction::OddIntoEven => d % 2 == 1,
            _ => true,
        }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            Obstruction::PlusRankExceeds { .. } => "b2_plus_exceeds",
            Obstruction::MinusRankExceeds { .. } => "b2_minus_exceeds",
            Obstruction::OddIntoEven => "odd_into_even",
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Obstruction::PlusRankExceeds { source, target } => {
                format!("b2+(N) = {source} exceeds b2+(M) = {target}; no degree works")
            }
            Obstruction::MinusRankExceeds { source, target } => {
                format!("b2-(N) = {source} exceeds b2-(M) = {target}; no degree works")
            }
            Obstruction::OddIntoEven => "N is odd and M is even: no odd degree works".to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecisionReport {
    pub source: FormInvariants,
    pub target: FormInvariants,
    pub embeddable: bool,
    /// All applicable table rows, ascending.
    pub cases: Vec<u8>,
    pub guaranteed: DegreeFamily,
    pub obstructions: Vec<Obstruction>,
    pub covering: BTreeMap<u64, CoveringStatus>,
    pub branch_regularity: BTreeMap<u64, BranchRegularity>,
    pub assume_no_13_handles: bool,
}

impl DecisionReport {
    pub fn case(&self) -> Option<u8> {
        self.cases.first().copied()
    }
}

/// Degrees reported by [`covering_report`] when the caller does not ask for
/// specific ones.
pub const DEFAULT_REPORT_DEGREES: std::ops::RangeInclusive<u64> = 1..=12;

fn check(inv: &FormInvariants) -> Result<()> {
    validate_invariants(inv).map_err(|e| Error::InvalidInvariants(format!("{inv}: {e}")))
}

pub fn embeddable_any_d(n: &FormInvariants, m: &FormInvariants) -> Result<bool> {
    check(n)?;
    check(m)?;
    Ok(n.b2_plus <= m.b2_plus && n.b2_minus <= m.b2_minus)
}

/// Applicable table rows; empty when the rank inequalities fail.
pub fn applicable_cases(n: &FormInvariants, m: &FormInvariants) -> Result<Vec<u8>> {
    if !embeddable_any_d(n, m)? {
        return Ok(Vec::new());
    }
    Ok(match (n.parity, m.parity) {
        (Parity::Odd, Parity::Odd) => {
            if 2 * n.rank() <= m.rank() {
                vec![1, 2]
            } else {
                vec![1]
            }
        }
        (Parity::Odd, Parity::Even) => vec![if m.signature() == 0 { 3 } else { 4 }],
        (Parity::Even, Parity::Odd) => vec![if n.signature() == 0 { 5 } else { 6 }],
        (Parity::Even, Parity::Even) => vec![if n.signature() == 0 { 7 } else { 8 }],
    })
}

fn case_family(case: u8) -> DegreeFamily {
    match case {
        1 => DegreeFamily::square_closure([1]),
        2 => DegreeFamily::square_closure([5]),
        3 | 5 => DegreeFamily::AllEven,
        4 | 6 => DegreeFamily::square_closure([2, 4, 6]),
        7 => DegreeFamily::All,
        8 => DegreeFamily::square_closure([4, 8, 12]),
        _ => unreachable!("table has eight rows"),
    }
}

pub fn guaranteed_degrees(n: &FormInvariants, m: &FormInvariants) -> Result<DegreeFamily> {
    let cases = applicable_cases(n, m)?;
    Ok(match cases.as_slice() {
        [] => DegreeFamily::Empty,
        [c] => case_family(*c),
        many => {
            let base: Vec<u64> = many.iter().flat_map(|&c| case_family(c).base().to_vec()).collect();
            DegreeFamily::square_closure(base)
        }
    })
}

pub fn obstructions(n: &FormInvariants, m: &FormInvariants) -> Result<Vec<Obstruction>> {
    check(n)?;
    check(m)?;
    let mut out = Vec::new();
    if n.b2_plus > m.b2_plus {
        out.push(Obstruction::PlusRankExceeds {
            source: n.b2_plus,
            target: m.b2_plus,
        });
    }
    if n.b2_minus > m.b2_minus {
        out.push(Obstruction::MinusRankExceeds {
            source: n.b2_minus,
            target: m.b2_minus,
        });
    }
    if n.parity == Parity::Odd && m.parity == Parity::Even {
        out.push(Obstruction::OddIntoEven);
    }
    Ok(out)
}

pub fn degree_status(n: &FormInvariants, m: &FormInvariants, d: u64) -> Result<DegreeStatus> {
    if d == 0 {
        return Err(Error::ZeroDegree);
    }
    if obstructions(n, m)?.iter().any(|o| o.applies_to(d)) {
        return Ok(DegreeStatus::Impossible);
    }
    if guaranteed_degrees(n, m)?.contains(d) {
        Ok(DegreeStatus::Guaranteed)
    } else {
        Ok(DegreeStatus::Unknown)
    }
}

pub fn covering_report(n: &FormInvariants, m: &FormInvariants, no_13_handles: bool) -> Result<DecisionReport> {
    let degrees: Vec<u64> = DEFAULT_REPORT_DEGREES.collect();
    covering_report_for(n, m, no_13_handles, &degrees)
}

/// Decision report restricted to the given degrees. The handle hypothesis on
/// `N` is an assertion supplied by the caller; without it no covering is
/// reported as guaranteed.
pub fn covering_report_for(
    n: &FormInvariants,
    m: &FormInvariants,
    no_13_handles: bool,
    degrees: &[u64],
) -> Result<DecisionReport> {
    let embeddable = embeddable_any_d(n, m)?;
    let cases = applicable_cases(n, m)?;
    let guaranteed = guaranteed_degrees(n, m)?;
    let obstructions = obstructions(n, m)?;
    let mut covering = BTreeMap::new();
    let mut branch_regularity = BTreeMap::new();
    for &d in degrees {
        let status = match degree_status(n, m, d)? {
            _ if d <= 3 => CoveringStatus::BelowTheoremRange,
            DegreeStatus::Guaranteed if no_13_handles => CoveringStatus::GuaranteedCovering,
            DegreeStatus::Impossible => CoveringStatus::Impossible,
            _ => CoveringStatus::Unknown,
        };
        if status == CoveringStatus::GuaranteedCovering {
            if let Some(r) = BranchRegularity::for_degree(d) {
                branch_regularity.insert(d, r);
            }
        }
        covering.insert(d, status);
    }
    Ok(DecisionReport {
        source: *n,
        target: *m,
        embeddable,
        cases,
        guaranteed,
        obstructions,
        covering,
        branch_regularity,
        assume_no_13_handles: no_13_handles,
    })
}

/// Index layout of a normal form: odd forms list positive then negative
/// diagonal generators; even forms list E8 blocks then H blocks.
struct Layout {
    plus: Vec<usize>,
    minus: Vec<usize>,
    e8_blocks: Vec<[usize; 8]>,
    e8_sign: Sign,
    h_blocks: Vec<[usize; 2]>,
}

impl Layout {
    fn of(inv: &FormInvariants) -> Self {
        let (p, q) = (inv.b2_plus as usize, inv.b2_minus as usize);
        match inv.parity {
            Parity::Odd => Layout {
                plus: (0..p).collect(),
                minus: (p..p + q).collect(),
                e8_blocks: Vec::new(),
                e8_sign: Sign::Plus,
                h_blocks: Vec::new(),
            },
            Parity::Even => {
                let sigma = inv.signature();
                let a = (sigma.unsigned_abs() / 8) as usize;
                let e8_blocks = (0..a).map(|b| std::array::from_fn(|i| 8 * b + i)).collect();
                let h = p.min(q);
                let h_blocks = (0..h).map(|i| [8 * a + 2 * i, 8 * a + 2 * i + 1]).collect();
                Layout {
                    plus: Vec::new(),
                    minus: Vec::new(),
                    e8_blocks,
                    e8_sign: if sigma >= 0 { Sign::Plus } else { Sign::Minus },
                    h_blocks,
                }
            }
        }
    }

    fn diagonal(&self, sign: Sign) -> &[usize] {
        match sign {
            Sign::Plus => &self.plus,
            Sign::Minus => &self.minus,
        }
    }
}

fn infeasible<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::AllocationInfeasible(msg.into()))
}

/// Explicit `d·G_N ↪ G_M` between the normal forms of `n` and `m`, for a
/// degree in the guaranteed family. Built at a base degree and multiplied by
/// `h` when `d = h²·base`.
pub fn construct_embedding(n: &FormInvariants, m: &FormInvariants, d: u64) -> Result<Embedding> {
    if degree_status(n, m, d)? != DegreeStatus::Guaranteed {
        return Err(Error::NotGuaranteed(d));
    }
    let cases = applicable_cases(n, m)?;
    let (case, base, h) = cases
        .iter()
        .find_map(|&c| case_family(c).decompose(d).map(|(b, h)| (c, b, h)))
        .expect("guaranteed degree decomposes in some applicable row");

    let source = serre_normal_form(n)?;
    let target = serre_normal_form(m)?;
    let src = Layout::of(n);
    let tgt = Layout::of(m);
    let mut asm = Assembly::new(base, source, target);
    match case {
        1 => allocate_identity(&mut asm, &src, &tgt)?,
        2 => allocate_five(&mut asm, &src, &tgt)?,
        3 | 4 => allocate_odd_into_even(&mut asm, &src, &tgt, base)?,
        5 | 6 => allocate_even_into_odd(&mut asm, &src, &tgt, base)?,
        7 | 8 => allocate_even_into_even(&mut asm, &src, &tgt, base, n.signature() * m.signature())?,
        _ => unreachable!(),
    }
    let e = asm.finish()?;
    Ok(if h > 1 { e.amplify(h) } else { e })
}

fn unit(sign: Sign) -> GramMatrix {
    GramMatrix::diagonal([sign.as_i64()])
}

fn allocate_identity(asm: &mut Assembly, src: &Layout, tgt: &Layout) -> Result<()> {
    for sign in [Sign::Plus, Sign::Minus] {
        let piece = Embedding::identity(&unit(sign));
        let (s, t) = (src.diagonal(sign), tgt.diagonal(sign));
        if s.len() > t.len() {
            return infeasible("not enough diagonal slots");
        }
        for (&i, &j) in s.iter().zip(t) {
            asm.place(&piece, &[i], &[j])?;
        }
    }
    Ok(())
}

fn allocate_five(asm: &mut Assembly, src: &Layout, tgt: &Layout) -> Result<()> {
    let mut free_plus: Vec<usize> = tgt.plus.iter().rev().copied().collect();
    let mut free_minus: Vec<usize> = tgt.minus.iter().rev().copied().collect();
    let mut leftover = [None, None];
    for (k, sign) in [Sign::Plus, Sign::Minus].into_iter().enumerate() {
        let piece = five_pair_same_sign(sign);
        let free = if sign == Sign::Plus {
            &mut free_plus
        } else {
            &mut free_minus
        };
        let gens = src.diagonal(sign);
        for pair in gens.chunks(2) {
            if pair.len() == 1 {
                leftover[k] = Some(pair[0]);
                continue;
            }
            let (Some(a), Some(b)) = (free.pop(), free.pop()) else {
                return infeasible("not enough same-sign slot pairs for degree 5");
            };
            asm.place(&piece, pair, &[a, b])?;
        }
    }
    match leftover {
        [Some(p), Some(q)] => {
            let (Some(a), Some(b)) = (free_plus.pop(), free_minus.pop()) else {
                return infeasible("no mixed slot pair for the leftover generators");
            };
            asm.place(&five_pair_mixed(), &[p, q], &[a, b])?;
        }
        [Some(p), None] => place_five_single(asm, p, Sign::Plus, &mut free_plus, &mut free_minus)?,
        [None, Some(q)] => place_five_single(asm, q, Sign::Minus, &mut free_minus, &mut free_plus)?,
        [None, None] => {}
    }
    Ok(())
}

/// One leftover generator of degree 5: a mixed slot pair if available, else
/// two slots of its own sign.
fn place_five_single(
    asm: &mut Assembly,
    gen: usize,
    sign: Sign,
    same: &mut Vec<usize>,
    other: &mut Vec<usize>,
) -> Result<()> {
    if !same.is_empty() && !other.is_empty() {
        let (s, o) = (same.pop().unwrap(), other.pop().unwrap());
        // five_pair_mixed has source diag(1, -1) and target slots (+, -)
        let (col, tgt) = match sign {
            Sign::Plus => (0, [s, o]),
            Sign::Minus => (1, [o, s]),
        };
        asm.place(&five_pair_mixed().restrict(&[col]), &[gen], &tgt)
    } else if same.len() >= 2 {
        let (a, b) = (same.pop().unwrap(), same.pop().unwrap());
        asm.place(&five_pair_same_sign(sign).restrict(&[0]), &[gen], &[a, b])
    } else {
        infeasible("no slots left for a degree-5 leftover generator")
    }
}

fn allocate_odd_into_even(asm: &mut Assembly, src: &Layout, tgt: &Layout, d: u64) -> Result<()> {
    let k = d / 2;
    let mut h_free = tgt.h_blocks.iter();
    let pairs = src.plus.len().min(src.minus.len());
    let pair_piece = hyperbolic_pair(k);
    for (&p, &q) in src.plus.iter().zip(&src.minus) {
        let Some(hb) = h_free.next() else {
            return infeasible("not enough hyperbolic planes for (+, -) pairs");
        };
        asm.place(&pair_piece, &[p, q], hb)?;
    }
    let (rest_sign, rest) = if src.plus.len() > pairs {
        (Sign::Plus, &src.plus[pairs..])
    } else {
        (Sign::Minus, &src.minus[pairs..])
    };
    let single = single_into_h(k, rest_sign).absorb_source_factor(d)?;
    let mut rest = rest.iter().copied();
    for hb in h_free.by_ref() {
        let Some(g) = rest.next() else { break };
        asm.place(&single, &[g], hb)?;
    }
    let rest: Vec<usize> = rest.collect();
    if rest.is_empty() {
        return Ok(());
    }
    if tgt.e8_sign != rest_sign || rest.len() > 8 * tgt.e8_blocks.len() {
        return infeasible("leftover diagonal generators do not fit in matching E8 blocks");
    }
    for (chunk, block) in rest.chunks(8).zip(&tgt.e8_blocks) {
        let piece = diagonal_into_e8(d, chunk.len(), rest_sign)?;
        asm.place(&piece, chunk, block)?;
    }
    Ok(())
}

fn allocate_even_into_odd(asm: &mut Assembly, src: &Layout, tgt: &Layout, d: u64) -> Result<()> {
    let mut plus = tgt.plus.iter().copied();
    let mut minus = tgt.minus.iter().copied();
    if !src.e8_blocks.is_empty() {
        let sign = src.e8_sign;
        let mut piece = l_matrix(d)?;
        if sign == Sign::Minus {
            piece = piece.negate();
        }
        for block in &src.e8_blocks {
            let slots: Vec<usize> = match sign {
                Sign::Plus => plus.by_ref().take(8).collect(),
                Sign::Minus => minus.by_ref().take(8).collect(),
            };
            if slots.len() < 8 {
                return infeasible("not enough diagonal slots for an E8 block");
            }
            asm.place(&piece, block, &slots)?;
        }
    }
    let piece = two_k_h_into_diag(d / 2);
    for hb in &src.h_blocks {
        let (Some(a), Some(b)) = (plus.next(), minus.next()) else {
            return infeasible("not enough (+, -) slot pairs for hyperbolic planes");
        };
        asm.place(&piece, hb, &[a, b])?;
    }
    Ok(())
}

fn allocate_even_into_even(asm: &mut Assembly, src: &Layout, tgt: &Layout, d: u64, sigma_product: i64) -> Result<()> {
    let mut h_free = tgt.h_blocks.iter();
    let h_piece = h_into_h(d);
    for hb in &src.h_blocks {
        let Some(t) = h_free.next() else {
            return infeasible("not enough hyperbolic planes in the target");
        };
        asm.place(&h_piece, hb, t)?;
    }
    if src.e8_blocks.is_empty() {
        return Ok(());
    }
    let sign = src.e8_sign;
    let mut e8_rest = src.e8_blocks.as_slice();
    if sigma_product > 0 {
        let direct = e8_rest.len().min(tgt.e8_blocks.len());
        let piece = e8_into_e8(d, sign)?;
        for (s, t) in e8_rest[..direct].iter().zip(&tgt.e8_blocks) {
            asm.place(&piece, s, t)?;
        }
        e8_rest = &e8_rest[direct..];
    }
    if e8_rest.is_empty() {
        return Ok(());
    }
    let piece = e8_into_hyperbolic(d, sign)?;
    for block in e8_rest {
        let hs: Vec<usize> = h_free.by_ref().take(8).flat_map(|hb| hb.iter().copied()).collect();
        if hs.len() < 16 {
            return infeasible("not enough hyperbolic planes for an E8 block");
        }
        asm.place(&piece, block, &hs)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::hyperbolic_pair;
    use crate::forms::{e8_form, hyperbolic_sum};

    fn inv(p: u64, q: u64, even: bool) -> FormInvariants {
        FormInvariants::new(p, q, if even { Parity::Even } else { Parity::Odd })
    }

    const K3: FormInvariants = FormInvariants {
        b2_plus: 3,
        b2_minus: 19,
        parity: Parity::Even,
    };

    #[test]
    fn family_canonical_form() {
        assert_eq!(
            DegreeFamily::square_closure([6, 2, 4]),
            DegreeFamily::SquareClosure(vec![2, 4, 6])
        );
        assert_eq!(
            DegreeFamily::square_closure([1, 4, 9, 5]),
            DegreeFamily::SquareClosure(vec![1, 5])
        );
        assert_eq!(
            DegreeFamily::square_closure([2, 8]),
            DegreeFamily::SquareClosure(vec![2])
        );
        let f = DegreeFamily::square_closure([4, 8, 12]);
        assert!(f.contains(16) && f.contains(32) && f.contains(48) && !f.contains(24));
        assert_eq!(f.decompose(32), Some((8, 2)));
        assert!(DegreeFamily::AllEven.contains(10) && !DegreeFamily::AllEven.contains(9));
        assert!(!DegreeFamily::Empty.contains(1));
    }

    #[test]
    fn embeddable_examples() {
        assert!(embeddable_any_d(&K3, &K3).unwrap());
        assert!(!embeddable_any_d(&K3, &inv(2, 30, false)).unwrap());
        assert!(matches!(
            embeddable_any_d(&inv(2, 3, true), &K3),
            Err(Error::InvalidInvariants(_))
        ));
    }

    #[test]
    fn table_rows() {
        assert_eq!(
            guaranteed_degrees(&K3, &inv(4, 20, false)).unwrap(),
            DegreeFamily::SquareClosure(vec![2, 4, 6])
        );
        assert_eq!(
            guaranteed_degrees(&inv(1, 1, false), &inv(2, 2, false)).unwrap(),
            DegreeFamily::SquareClosure(vec![1, 5])
        );
        assert_eq!(
            guaranteed_degrees(&inv(1, 1, false), &inv(2, 1, false)).unwrap(),
            DegreeFamily::SquareClosure(vec![1])
        );
        assert_eq!(
            guaranteed_degrees(&inv(2, 2, true), &inv(3, 3, true)).unwrap(),
            DegreeFamily::All
        );
        assert_eq!(
            guaranteed_degrees(&K3, &K3).unwrap(),
            DegreeFamily::SquareClosure(vec![4, 8, 12])
        );
        assert_eq!(
            guaranteed_degrees(&K3, &inv(2, 30, false)).unwrap(),
            DegreeFamily::Empty
        );
    }

    #[test]
    fn statuses() {
        assert_eq!(
            degree_status(&inv(1, 0, false), &inv(1, 1, true), 3).unwrap(),
            DegreeStatus::Impossible
        );
        assert_eq!(degree_status(&K3, &K3, 4).unwrap(), DegreeStatus::Guaranteed);
        assert_eq!(
            degree_status(&inv(1, 1, false), &inv(2, 1, false), 7).unwrap(),
            DegreeStatus::Unknown
        );
        assert_eq!(degree_status(&K3, &K3, 0), Err(Error::ZeroDegree));
    }

    #[test]
    fn k3_covering() {
        let r = covering_report(&K3, &inv(4, 20, false), true).unwrap();
        assert_eq!(r.covering[&4], CoveringStatus::GuaranteedCovering);
        assert_eq!(r.covering[&6], CoveringStatus::GuaranteedCovering);
        assert_eq!(r.covering[&5], CoveringStatus::Unknown);
        assert_eq!(r.covering[&2], CoveringStatus::BelowTheoremRange);
        assert_eq!(r.branch_regularity[&4], BranchRegularity::Nodal);
        assert_eq!(r.branch_regularity[&6], BranchRegularity::LocallyFlat);
        assert_eq!(r.case(), Some(6));

        let r = covering_report(&K3, &K3, true).unwrap();
        for d in [4, 8, 12] {
            assert_eq!(r.covering[&d], CoveringStatus::GuaranteedCovering);
        }
        let r = covering_report(&K3, &K3, false).unwrap();
        assert!(r.covering.values().all(|s| *s != CoveringStatus::GuaranteedCovering));
        assert!(r.branch_regularity.is_empty());
    }

    #[test]
    fn constructions_from_examples() {
        let e = construct_embedding(&inv(1, 1, false), &inv(1, 1, true), 2).unwrap();
        assert_eq!(e, hyperbolic_pair(1));

        let e = construct_embedding(&K3, &K3, 4).unwrap();
        let expected = [e8_into_e8(4, Sign::Minus).unwrap(), e8_into_e8(4, Sign::Minus).unwrap()]
            .iter()
            .chain(std::iter::repeat_n(&h_into_h(4), 3))
            .cloned()
            .reduce(|a, b| Embedding::direct_sum(&a, &b).unwrap())
            .unwrap();
        assert_eq!(e, expected);

        let e = construct_embedding(&inv(1, 1, false), &inv(1, 1, false), 9).unwrap();
        assert_eq!(e.matrix(), &crate::matrix::IntMatrix::from_i64(&[&[3, 0], &[0, 3]]));

        assert_eq!(construct_embedding(&K3, &K3, 6), Err(Error::NotGuaranteed(6)));
    }

    #[test]
    fn case_eight_into_hyperbolic_planes() {
        // σ(N)σ(M) < 0: both E8 blocks go into H's
        let n = inv(0, 16, true);
        let m = inv(16, 16, true);
        let e = construct_embedding(&n, &m, 8).unwrap();
        assert_eq!(e.target(), &hyperbolic_sum(16));
        // same sign with spill-over: one E8 to E8, one into eight H's
        let n = inv(16, 0, true);
        let m = inv(16, 8, true);
        let e = construct_embedding(&n, &m, 12).unwrap();
        assert_eq!(e.target(), &e8_form(Sign::Plus).direct_sum(&hyperbolic_sum(8)));
    }

    #[test]
    fn case_two_leftovers() {
        // single positive leftover with no negative slots
        let e = construct_embedding(&inv(1, 0, false), &inv(2, 0, false), 5).unwrap();
        assert!(e.verify());
        for (n, m) in [((3, 1), (6, 2)), ((1, 3), (1, 7)), ((2, 1), (3, 3)), ((3, 3), (6, 6))] {
            let e = construct_embedding(&inv(n.0, n.1, false), &inv(m.0, m.1, false), 5).unwrap();
            assert!(e.verify());
        }
    }
}
