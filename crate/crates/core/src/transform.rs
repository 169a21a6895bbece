//! 8×8 orthonormal DCT-II with JPEG level shift, flat scalar quantization and
//! sparse extraction of nonzero quantized coefficients.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::image::{PixelBlock, BLOCK};

const N: usize = BLOCK * BLOCK;

/// Largest magnitude representable on the eight value qubits.
pub const MAX_MAGNITUDE: u32 = 255;

/// Real transform coefficients, row-major: index `u * 8 + v` with `u` the
/// vertical (row) frequency and `v` the horizontal one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoeffBlock(pub [f64; N]);

/// Quantized coefficients, same layout as [`CoeffBlock`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuantBlock(pub [i32; N]);

impl QuantBlock {
    pub const ZERO: Self = Self([0; N]);

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> i32 {
        self.0[y * BLOCK + x]
    }

    #[inline]
    pub fn set(&mut self, x: usize, y: usize, v: i32) {
        self.0[y * BLOCK + x] = v;
    }

    pub fn nonzero_count(&self) -> usize {
        self.0.iter().filter(|&&q| q != 0).count()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn of(v: i32) -> Self {
        if v < 0 {
            Sign::Negative
        } else {
            Sign::Positive
        }
    }

    pub fn apply(self, magnitude: u32) -> i32 {
        match self {
            Sign::Positive => magnitude as i32,
            Sign::Negative => -(magnitude as i32),
        }
    }

    pub fn is_negative(self) -> bool {
        self == Sign::Negative
    }
}

/// One nonzero quantized coefficient.
///
/// `x` is the within-block column (horizontal frequency), `y` the row.
/// Ordering is the canonical stream order: block, then row, then column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SparseCoeff {
    pub block_index: usize,
    pub y: u8,
    pub x: u8,
    pub sign: Sign,
    pub magnitude: u8,
}

impl SparseCoeff {
    pub fn key(&self) -> (usize, u8, u8) {
        (self.block_index, self.y, self.x)
    }

    pub fn value(&self) -> i32 {
        self.sign.apply(self.magnitude as u32)
    }
}

/// `basis[u][k] = α(u)·cos((2k+1)uπ/16)`.
fn basis() -> &'static [[f64; BLOCK]; BLOCK] {
    static BASIS: OnceLock<[[f64; BLOCK]; BLOCK]> = OnceLock::new();
    BASIS.get_or_init(|| {
        let mut m = [[0.0; BLOCK]; BLOCK];
        for (u, row) in m.iter_mut().enumerate() {
            let alpha = if u == 0 { (1.0 / 8.0f64).sqrt() } else { (2.0 / 8.0f64).sqrt() };
            for (k, v) in row.iter_mut().enumerate() {
                *v = alpha * (((2 * k + 1) * u) as f64 * std::f64::consts::PI / 16.0).cos();
            }
        }
        m
    })
}

/// Separable orthonormal 2-D DCT-II of an arbitrary real 8×8 array.
pub fn dct2_real(samples: &[f64; N]) -> CoeffBlock {
    let a = basis();
    // rows first: tmp[y][v] = Σ_x s[y][x]·a[v][x]
    let mut tmp = [0.0; N];
    for y in 0..BLOCK {
        for v in 0..BLOCK {
            tmp[y * BLOCK + v] = (0..BLOCK).map(|x| samples[y * BLOCK + x] * a[v][x]).sum();
        }
    }
    let mut out = [0.0; N];
    for u in 0..BLOCK {
        for v in 0..BLOCK {
            out[u * BLOCK + v] = (0..BLOCK).map(|y| a[u][y] * tmp[y * BLOCK + v]).sum();
        }
    }
    CoeffBlock(out)
}

/// Inverse of [`dct2_real`], without level shift or rounding.
pub fn idct2_real(coeffs: &CoeffBlock) -> [f64; N] {
    let a = basis();
    let c = &coeffs.0;
    let mut tmp = [0.0; N];
    for y in 0..BLOCK {
        for v in 0..BLOCK {
            tmp[y * BLOCK + v] = (0..BLOCK).map(|u| a[u][y] * c[u * BLOCK + v]).sum();
        }
    }
    let mut out = [0.0; N];
    for y in 0..BLOCK {
        for x in 0..BLOCK {
            out[y * BLOCK + x] = (0..BLOCK).map(|v| tmp[y * BLOCK + v] * a[v][x]).sum();
        }
    }
    out
}

/// Forward transform of a pixel block after subtracting 128.
pub fn dct2(block: &PixelBlock) -> CoeffBlock {
    let mut shifted = [0.0; N];
    for (d, &s) in shifted.iter_mut().zip(&block.samples) {
        *d = s as f64 - 128.0;
    }
    dct2_real(&shifted)
}

/// Inverse transform, +128, rounded to nearest and clamped to 8 bits.
pub fn idct2(coeffs: &CoeffBlock, origin: (usize, usize)) -> PixelBlock {
    let real = idct2_real(coeffs);
    let mut samples = [0u8; N];
    for (d, &r) in samples.iter_mut().zip(&real) {
        *d = (r + 128.0).round().clamp(0.0, 255.0) as u8;
    }
    PixelBlock::new(samples, origin)
}

/// `round(c / q)` elementwise, halves rounded away from zero.
pub fn quantize(coeffs: &CoeffBlock, q: u32) -> Result<QuantBlock> {
    if q < 1 {
        return Err(Error::QuantFactor(q));
    }
    let q = q as f64;
    let mut out = [0i32; N];
    for (d, &c) in out.iter_mut().zip(&coeffs.0) {
        *d = (c / q).round() as i32;
    }
    Ok(QuantBlock(out))
}

pub fn dequantize(block: &QuantBlock, q: u32) -> CoeffBlock {
    let mut out = [0.0; N];
    for (d, &v) in out.iter_mut().zip(&block.0) {
        *d = v as f64 * q as f64;
    }
    CoeffBlock(out)
}

/// Nonzero coefficients of raster-ordered blocks in canonical order, plus the
/// number of magnitudes that had to be clipped to [`MAX_MAGNITUDE`].
pub fn extract_sparse(blocks: &[QuantBlock]) -> (Vec<SparseCoeff>, usize) {
    let mut out = Vec::new();
    let mut saturated = 0;
    for (block_index, block) in blocks.iter().enumerate() {
        for y in 0..BLOCK {
            for x in 0..BLOCK {
                let v = block.get(x, y);
                if v == 0 {
                    continue;
                }
                let mag = v.unsigned_abs();
                if mag > MAX_MAGNITUDE {
                    saturated += 1;
                }
                out.push(SparseCoeff {
                    block_index,
                    y: y as u8,
                    x: x as u8,
                    sign: Sign::of(v),
                    magnitude: mag.min(MAX_MAGNITUDE) as u8,
                });
            }
        }
    }
    (out, saturated)
}

/// Scatters sparse coefficients into `block_count` zeroed blocks.
///
/// This is the decoder's "adder": every recovered (block, y, x) position gets
/// its signed magnitude, everything else stays zero.
pub fn scatter_sparse(coeffs: &[SparseCoeff], block_count: usize) -> Result<Vec<QuantBlock>> {
    let mut blocks = vec![QuantBlock::ZERO; block_count];
    for c in coeffs {
        if c.block_index >= block_count || c.x as usize >= BLOCK || c.y as usize >= BLOCK {
            return Err(Error::Invalid(format!(
                "coefficient at block {} ({}, {}) outside {block_count} blocks",
                c.block_index, c.x, c.y
            )));
        }
        if c.magnitude == 0 {
            return Err(Error::Invalid("zero magnitude in sparse list".into()));
        }
        let b = &mut blocks[c.block_index];
        if b.get(c.x as usize, c.y as usize) != 0 {
            return Err(Error::Invalid(format!("duplicate coefficient at {:?}", c.key())));
        }
        b.set(c.x as usize, c.y as usize, c.value());
    }
    Ok(blocks)
}
