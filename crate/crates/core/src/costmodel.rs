//! Gate-budget rate model.
//!
//! Every circuit connection counts as one gate (and one transmitted bit):
//!
//! `b_total = q_ones + b_state + b_sign + b_aux + b_gpp`, `gpp = b_total / pixels`
//!
//! * `q_ones`: one value gate per set magnitude bit.
//! * `b_state`: position connections, `Tc_nz·(n_x + n_y − 1) + |ones|`. The
//!   X-LSB qubit is dropped from every coefficient and paid back only for the
//!   coefficients whose column is odd.
//! * `b_sign`: one sign bit per nonzero coefficient.
//! * `b_aux`: aux connection plus reset, two per coefficient.
//! * `b_gpp`: block addressing, `⌈log2 Bw⌉ + ⌈log2 Bh⌉` per nonzero block.

pub mod jpeg;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::circuit::{ceil_log2, QubitLayout};
use crate::error::{Error, Result};
use crate::lsbswap::OnesList;
use crate::transform::SparseCoeff;

pub use jpeg::{jpeg_like_bits, JpegEstimate};

/// How the `X_LSB,ones` term of the state-connection count is charged.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum StateModel {
    /// Ones counted once for the whole image.
    #[default]
    Adopted,
    /// Parenthesis taken literally: the ones count is added to every
    /// coefficient's position cost.
    Literal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SignModel {
    #[default]
    PerCoefficient,
    NegativeOnly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CostModel {
    pub state: StateModel,
    pub sign: SignModel,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct GateBudget {
    pub q_ones: u64,
    pub b_state: u64,
    pub b_sign: u64,
    pub b_aux: u64,
    pub b_gpp: u64,
    pub b_total: u64,
    pub pixels: u64,
}

impl GateBudget {
    fn assemble(q_ones: u64, b_state: u64, b_sign: u64, b_aux: u64, b_gpp: u64, pixels: u64) -> Self {
        Self { q_ones, b_state, b_sign, b_aux, b_gpp, b_total: q_ones + b_state + b_sign + b_aux + b_gpp, pixels }
    }

    pub fn is_additive(&self) -> bool {
        self.b_total == self.q_ones + self.b_state + self.b_sign + self.b_aux + self.b_gpp
    }

    pub fn gpp(&self) -> Result<f64> {
        gpp(self)
    }
}

/// Gates per pixel.
pub fn gpp(budget: &GateBudget) -> Result<f64> {
    if budget.pixels == 0 {
        return Err(Error::Invalid("gpp of a zero-pixel image".into()));
    }
    Ok(budget.b_total as f64 / budget.pixels as f64)
}

pub fn count_q_ones(coeffs: &[SparseCoeff]) -> u64 {
    coeffs.iter().map(|c| c.magnitude.count_ones() as u64).sum()
}

pub fn count_b_state(coeffs: &[SparseCoeff], ones: &OnesList, layout: &QubitLayout, model: StateModel) -> u64 {
    let tc = coeffs.len() as u64;
    let per = (layout.x_bits + layout.y_bits) as u64 - 1;
    let ones = ones.len() as u64;
    match model {
        StateModel::Adopted => tc * per + ones,
        StateModel::Literal => tc * (per + ones),
    }
}

/// Position connections without the LSB swap: every position qubit for every
/// coefficient.
pub fn zscneqr_b_state(coeffs: &[SparseCoeff], layout: &QubitLayout) -> u64 {
    coeffs.len() as u64 * (layout.x_bits + layout.y_bits) as u64
}

pub fn count_b_sign(coeffs: &[SparseCoeff], model: SignModel) -> u64 {
    match model {
        SignModel::PerCoefficient => coeffs.len() as u64,
        SignModel::NegativeOnly => coeffs.iter().filter(|c| c.sign.is_negative()).count() as u64,
    }
}

pub fn count_b_aux(coeffs: &[SparseCoeff]) -> u64 {
    2 * coeffs.len() as u64
}

/// Block-address bits for every block holding at least one coefficient.
///
/// This is the loosest-defined term of the budget; it is kept in one place so
/// that an alternative reading only has to change this function.
pub fn count_b_gpp(coeffs: &[SparseCoeff], grid: (usize, usize)) -> u64 {
    let nz_blocks = coeffs.iter().map(|c| c.block_index).collect::<BTreeSet<_>>().len() as u64;
    nz_blocks * (ceil_log2(grid.0.max(1)) + ceil_log2(grid.1.max(1))) as u64
}

/// Full budget for the swap-qubit block circuit.
///
/// `grid` is the block grid as (blocks per row, block rows); `pixels` the
/// original image's pixel count.
pub fn count_b_total(
    coeffs: &[SparseCoeff],
    ones: &OnesList,
    layout: &QubitLayout,
    grid: (usize, usize),
    pixels: u64,
    model: CostModel,
) -> GateBudget {
    GateBudget::assemble(
        count_q_ones(coeffs),
        count_b_state(coeffs, ones, layout, model.state),
        count_b_sign(coeffs, model.sign),
        count_b_aux(coeffs),
        count_b_gpp(coeffs, grid),
        pixels,
    )
}

/// Same block circuit without the LSB swap.
pub fn zscneqr_budget(
    coeffs: &[SparseCoeff],
    layout: &QubitLayout,
    grid: (usize, usize),
    pixels: u64,
    model: CostModel,
) -> GateBudget {
    GateBudget::assemble(
        count_q_ones(coeffs),
        zscneqr_b_state(coeffs, layout),
        count_b_sign(coeffs, model.sign),
        count_b_aux(coeffs),
        count_b_gpp(coeffs, grid),
        pixels,
    )
}

/// Full-image zero-discarded NEQR baseline: each coefficient is addressed
/// with `⌈log2 W⌉ + 1` and `⌈log2 H⌉ + 1` position connections, one sign and
/// one aux connection. No LSB discount and no block addressing.
pub fn nzneqr_budget(coeffs: &[SparseCoeff], width: usize, height: usize, pixels: u64, model: CostModel) -> GateBudget {
    let tc = coeffs.len() as u64;
    let position = (ceil_log2(width.max(1)) + 1 + ceil_log2(height.max(1)) + 1) as u64;
    GateBudget::assemble(count_q_ones(coeffs), tc * position, count_b_sign(coeffs, model.sign), tc, 0, pixels)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Method {
    JpegLike,
    Nzneqr,
    Palqa,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::JpegLike, Method::Nzneqr, Method::Palqa];

    pub fn as_str(self) -> &'static str {
        match self {
            Method::JpegLike => "jpeg_like",
            Method::Nzneqr => "nzneqr",
            Method::Palqa => "palqa",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown method {s:?}")))
    }
}

/// One rate-distortion sample.
///
/// `budget` is `None` for the JPEG-style baseline, whose rate is a bit count
/// rather than a gate budget; its `gpp` column carries bits per pixel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RdPoint {
    pub method: Method,
    pub q: u32,
    pub gpp: f64,
    pub bpp: f64,
    pub psnr_db: f64,
    pub budget: Option<GateBudget>,
    pub tc_nz: usize,
    pub saturated: usize,
}
