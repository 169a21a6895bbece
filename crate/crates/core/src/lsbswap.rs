//! X-position LSB swap.
//!
//! The encoder strips the least-significant bit from every nonzero
//! coefficient's column index. That bit plane (the swap/trash qubit) is never
//! sent as-is: only the indices of its set bits are transmitted, and the
//! decoder regenerates the full plane from them. An empty index list means an
//! all-zero plane of the recorded length, so the "all zero" case is just the
//! general rule with nothing to set.

use crate::error::{Error, Result};
use crate::transform::SparseCoeff;

/// One bit per coefficient in canonical order: `x & 1`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LsbPlane {
    pub bits: Vec<bool>,
}

impl LsbPlane {
    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }
}

/// Positions of the set bits of an [`LsbPlane`] together with its length.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct OnesList {
    pub total: usize,
    pub indices: Vec<usize>,
}

impl OnesList {
    pub fn new(total: usize, indices: Vec<usize>) -> Result<Self> {
        let list = Self { total, indices };
        list.validate()?;
        Ok(list)
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(&last) = self.indices.last() {
            if last >= self.total {
                return Err(Error::Invalid(format!("ones index {last} >= total {}", self.total)));
            }
        }
        if self.indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Invalid("ones indices not strictly increasing".into()));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    /// Membership test; indices are sorted.
    pub fn contains(&self, i: usize) -> bool {
        self.indices.binary_search(&i).is_ok()
    }
}

/// Splits raw column indices into their high bits and the LSB plane.
pub fn split_positions(xs: &[u8]) -> (Vec<u8>, LsbPlane) {
    let high = xs.iter().map(|&x| x >> 1).collect();
    let bits = xs.iter().map(|&x| x & 1 == 1).collect();
    (high, LsbPlane { bits })
}

pub fn split_lsb(coeffs: &[SparseCoeff]) -> (Vec<u8>, LsbPlane) {
    let xs: Vec<u8> = coeffs.iter().map(|c| c.x).collect();
    split_positions(&xs)
}

pub fn encode_ones(plane: &LsbPlane) -> OnesList {
    OnesList {
        total: plane.len(),
        indices: plane.bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect(),
    }
}

pub fn regenerate(ones: &OnesList) -> Result<LsbPlane> {
    ones.validate()?;
    let mut bits = vec![false; ones.total];
    for &i in &ones.indices {
        bits[i] = true;
    }
    Ok(LsbPlane { bits })
}

/// `x = (high << 1) | lsb`.
pub fn join(x_high: &[u8], plane: &LsbPlane) -> Result<Vec<u8>> {
    if x_high.len() != plane.len() {
        return Err(Error::Invalid(format!(
            "{} high parts for a {}-bit plane",
            x_high.len(),
            plane.len()
        )));
    }
    x_high
        .iter()
        .zip(&plane.bits)
        .map(|(&h, &b)| {
            if h >= 4 {
                Err(Error::Invalid(format!("x high part {h} exceeds 3")))
            } else {
                Ok((h << 1) | b as u8)
            }
        })
        .collect()
}
