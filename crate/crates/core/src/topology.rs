//! Framed-link presentations of 2-handlebodies and named manifolds.
//!
//! A framed link `L₁ ∪ … ∪ Lₙ` gives the intersection form directly: the
//! diagonal entries are the framings and the off-diagonal entries are the
//! pairwise linking numbers. Linking numbers are taken as input; nothing
//! here reads link diagrams.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::lattice::{FormInvariants, GramMatrix, Parity};
use crate::matrix::IntMatrix;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FramedLinkData {
    pub framings: Vec<BigInt>,
    /// Diagonal is ignored.
    pub linking: IntMatrix,
}

impl FramedLinkData {
    pub fn new(framings: Vec<BigInt>, linking: IntMatrix) -> Result<Self> {
        let n = framings.len();
        if linking.rows() != n || linking.cols() != n {
            return Err(Error::DimensionMismatch(format!(
                "{} framings but a {}x{} linking matrix",
                n,
                linking.rows(),
                linking.cols()
            )));
        }
        Ok(FramedLinkData { framings, linking })
    }

    pub fn from_i64(framings: &[i64], linking: &[&[i64]]) -> Result<Self> {
        let m = if linking.is_empty() {
            IntMatrix::zeros(0, 0)
        } else {
            IntMatrix::from_i64(linking)
        };
        Self::new(framings.iter().map(|&f| BigInt::from(f)).collect(), m)
    }

    pub fn components(&self) -> usize {
        self.framings.len()
    }
}

pub fn gram_from_framed_link(data: &FramedLinkData) -> Result<GramMatrix> {
    let n = data.components();
    let mut g = data.linking.clone();
    for i in 0..n {
        for j in i + 1..n {
            if g[(i, j)] != g[(j, i)] {
                return Err(Error::AsymmetricLinking { i, j });
            }
        }
        g[(i, i)] = data.framings[i].clone();
    }
    GramMatrix::new(g)
}

pub const PRESET_NAMES: [&str; 4] = ["K3", "CP2", "CP2bar", "S2xS2"];

pub fn preset(name: &str) -> Result<FormInvariants> {
    match name {
        "K3" => Ok(FormInvariants::new(3, 19, Parity::Even)),
        "CP2" => Ok(FormInvariants::new(1, 0, Parity::Odd)),
        "CP2bar" => Ok(FormInvariants::new(0, 1, Parity::Odd)),
        "S2xS2" => Ok(FormInvariants::new(1, 1, Parity::Even)),
        _ => Err(Error::UnknownPreset(name.to_string())),
    }
}

/// A framed-link presentation for the presets that have a small one.
pub fn preset_link(name: &str) -> Result<Option<FramedLinkData>> {
    preset(name)?;
    Ok(match name {
        "CP2" => Some(FramedLinkData::from_i64(&[1], &[&[0]])?),
        "CP2bar" => Some(FramedLinkData::from_i64(&[-1], &[&[0]])?),
        "S2xS2" => Some(FramedLinkData::from_i64(&[0, 0], &[&[0, 1], &[1, 0]])?),
        _ => None,
    })
}
