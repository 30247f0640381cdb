//! Standard lattices and the normal form of a form given its invariants.
//!
//! Odd forms normalize to `diag(+1, ..., -1, ...)`. Even forms normalize to
//! `|σ|/8` copies of `±E8` followed by `min(b2+, b2-)` hyperbolic planes; the
//! block order is fixed so that embedding matrices built on top of it are
//! reproducible.

use crate::error::{Error, Result};
use crate::lattice::{direct_sum_all, FormInvariants, GramMatrix, Parity};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn of(x: i64) -> Option<Sign> {
        match x.signum() {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }
}

pub const E8_ROWS: [[i64; 8]; 8] = [
    [2, 1, 0, 0, 0, 0, 0, 0],
    [1, 2, 1, 0, 0, 0, 0, 0],
    [0, 1, 2, 1, 0, 0, 0, 0],
    [0, 0, 1, 2, 1, 0, 0, 0],
    [0, 0, 0, 1, 2, 1, 0, 1],
    [0, 0, 0, 0, 1, 2, 1, 0],
    [0, 0, 0, 0, 0, 1, 2, 0],
    [0, 0, 0, 0, 1, 0, 0, 2],
];

/// `diag(+1 × p, -1 × q)`.
pub fn diag_form(p: u64, q: u64) -> GramMatrix {
    GramMatrix::diagonal(std::iter::repeat_n(1, p as usize).chain(std::iter::repeat_n(-1, q as usize)))
}

pub fn hyperbolic_plane() -> GramMatrix {
    GramMatrix::from_i64(&[&[0, 1], &[1, 0]]).expect("H is symmetric")
}

/// `n` copies of the hyperbolic plane.
pub fn hyperbolic_sum(n: u64) -> GramMatrix {
    let h = hyperbolic_plane();
    direct_sum_all(std::iter::repeat_n(&h, n as usize))
}

pub fn e8_form(sign: Sign) -> GramMatrix {
    let rows: Vec<&[i64]> = E8_ROWS.iter().map(|r| r.as_slice()).collect();
    let g = GramMatrix::from_i64(&rows).expect("E8 is symmetric");
    match sign {
        Sign::Plus => g,
        Sign::Minus => g.negated(),
    }
}

pub fn validate_invariants(inv: &FormInvariants) -> Result<()> {
    if inv.rank() == 0 {
        return Err(Error::InvalidInvariants("rank must be at least 1".into()));
    }
    if inv.parity == Parity::Even {
        let sigma = inv.signature();
        if sigma % 8 != 0 {
            return Err(Error::EvenSignatureNotMultipleOf8 { signature: sigma });
        }
    }
    Ok(())
}

pub fn serre_normal_form(inv: &FormInvariants) -> Result<GramMatrix> {
    validate_invariants(inv)?;
    Ok(match inv.parity {
        Parity::Odd => diag_form(inv.b2_plus, inv.b2_minus),
        Parity::Even => {
            let sigma = inv.signature();
            let e8 = e8_form(if sigma >= 0 { Sign::Plus } else { Sign::Minus });
            let blocks = (sigma.unsigned_abs() / 8) as usize;
            let e8s = direct_sum_all(std::iter::repeat_n(&e8, blocks));
            e8s.direct_sum(&hyperbolic_sum(inv.b2_plus.min(inv.b2_minus)))
        }
    })
}
