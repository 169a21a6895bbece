//! Compressed stream format.
//!
//! ```text
//! offset  size  field
//!  0      4     magic "PALQ"
//!  4      1     version (1)
//!  5      1     block size (8)
//!  6      2     width
//!  8      2     height
//! 10      2     quantization factor
//! 12      4     coefficient count
//! 16      4     LSB ones count
//! 20      ...   body
//! ```
//!
//! Header integers are big-endian. The body is a bit stream, MSB first within
//! each byte, zero-padded to a byte boundary:
//!
//! * `coeff_count` records of `block(⌈log2 nblocks⌉) y(4) x_high(3) sign(1)
//!   magnitude(8)`, sign 1 meaning negative;
//! * `ones_count` coefficient indices of `⌈log2 max(coeff_count, 2)⌉` bits,
//!   strictly increasing.

use crate::circuit::ceil_log2;
use crate::error::{Error, PayloadError, Result};
use crate::image::BLOCK;
use crate::lsbswap::OnesList;
use crate::transform::{Sign, SparseCoeff};

pub const MAGIC: [u8; 4] = *b"PALQ";
pub const VERSION: u8 = 1;
pub const HEADER_LEN: usize = 20;

const Y_BITS: u32 = 4;
const X_HIGH_BITS: u32 = 3;
const MAG_BITS: u32 = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PayloadHeader {
    pub width: u16,
    pub height: u16,
    pub q: u16,
    pub coeff_count: u32,
    pub ones_count: u32,
}

impl PayloadHeader {
    pub fn block_grid(&self) -> (usize, usize) {
        (
            (self.width as usize).div_ceil(BLOCK),
            (self.height as usize).div_ceil(BLOCK),
        )
    }

    pub fn block_count(&self) -> usize {
        let (bw, bh) = self.block_grid();
        bw * bh
    }
}

/// A transmitted coefficient: column LSB stripped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoeffRecord {
    pub block_index: usize,
    pub y: u8,
    pub x_high: u8,
    pub sign: Sign,
    pub magnitude: u8,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodedPayload {
    pub header: PayloadHeader,
    pub records: Vec<CoeffRecord>,
    pub ones: OnesList,
}

fn block_bits(nblocks: usize) -> u32 {
    ceil_log2(nblocks.max(1)) as u32
}

fn index_bits(coeff_count: usize) -> u32 {
    ceil_log2(coeff_count.max(2)) as u32
}

/// Body size in bits before byte padding.
pub fn body_bits(coeff_count: usize, ones_count: usize, nblocks: usize) -> u64 {
    let record = (block_bits(nblocks) + Y_BITS + X_HIGH_BITS + 1 + MAG_BITS) as u64;
    coeff_count as u64 * record + ones_count as u64 * index_bits(coeff_count) as u64
}

#[derive(Default)]
struct BitWriter {
    bytes: Vec<u8>,
    used: u32,
}

impl BitWriter {
    fn put(&mut self, value: u64, bits: u32) {
        for i in (0..bits).rev() {
            if self.used == 0 {
                self.bytes.push(0);
            }
            let bit = ((value >> i) & 1) as u8;
            *self.bytes.last_mut().expect("pushed above") |= bit << (7 - self.used);
            self.used = (self.used + 1) % 8;
        }
    }
}

struct BitReader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl BitReader<'_> {
    fn get(&mut self, bits: u32) -> std::result::Result<u64, PayloadError> {
        if self.pos + bits as usize > self.bytes.len() * 8 {
            return Err(PayloadError::Truncated);
        }
        let mut v = 0u64;
        for _ in 0..bits {
            let bit = (self.bytes[self.pos / 8] >> (7 - self.pos % 8)) & 1;
            v = (v << 1) | bit as u64;
            self.pos += 1;
        }
        Ok(v)
    }
}

/// Serializes coefficients (canonical order), their column high parts, the
/// LSB ones list, the original image size and the quantization factor.
pub fn serialize(
    coeffs: &[SparseCoeff],
    x_high: &[u8],
    ones: &OnesList,
    dims: (usize, usize),
    q: u32,
) -> Result<Vec<u8>> {
    let overflow = |what: String| Error::Payload(PayloadError::Overflow(what));
    let (width, height) = dims;
    let width: u16 = width.try_into().map_err(|_| overflow(format!("width {width}")))?;
    let height: u16 = height.try_into().map_err(|_| overflow(format!("height {height}")))?;
    if width == 0 || height == 0 {
        return Err(Error::Dimensions(format!("{width}x{height}")));
    }
    let q_field: u16 = q.try_into().map_err(|_| overflow(format!("quantization factor {q}")))?;
    if q == 0 {
        return Err(Error::QuantFactor(q));
    }
    let coeff_count: u32 = coeffs
        .len()
        .try_into()
        .map_err(|_| overflow(format!("{} coefficients", coeffs.len())))?;
    if x_high.len() != coeffs.len() || ones.total != coeffs.len() {
        return Err(Error::Invalid(format!(
            "{} coefficients, {} high parts, plane of {}",
            coeffs.len(),
            x_high.len(),
            ones.total
        )));
    }
    ones.validate()?;
    let header = PayloadHeader { width, height, q: q_field, coeff_count, ones_count: ones.len() as u32 };
    let nblocks = header.block_count();

    let mut out = Vec::with_capacity(HEADER_LEN + body_bits(coeffs.len(), ones.len(), nblocks).div_ceil(8) as usize);
    out.extend_from_slice(&MAGIC);
    out.push(VERSION);
    out.push(BLOCK as u8);
    out.extend_from_slice(&width.to_be_bytes());
    out.extend_from_slice(&height.to_be_bytes());
    out.extend_from_slice(&q_field.to_be_bytes());
    out.extend_from_slice(&coeff_count.to_be_bytes());
    out.extend_from_slice(&header.ones_count.to_be_bytes());

    let mut w = BitWriter::default();
    let bb = block_bits(nblocks);
    for (c, &h) in coeffs.iter().zip(x_high) {
        if c.block_index >= nblocks || c.y as usize >= BLOCK || h >= 4 || c.magnitude == 0 {
            return Err(Error::Invalid(format!("coefficient {:?} / high part {h} not encodable", c.key())));
        }
        w.put(c.block_index as u64, bb);
        w.put(c.y as u64, Y_BITS);
        w.put(h as u64, X_HIGH_BITS);
        w.put(c.sign.is_negative() as u64, 1);
        w.put(c.magnitude as u64, MAG_BITS);
    }
    let ib = index_bits(coeffs.len());
    for &i in &ones.indices {
        w.put(i as u64, ib);
    }
    out.extend_from_slice(&w.bytes);
    Ok(out)
}

pub fn deserialize(bytes: &[u8]) -> std::result::Result<DecodedPayload, PayloadError> {
    if bytes.len() < 4 || bytes[..4] != MAGIC {
        let mut m = [0u8; 4];
        let n = bytes.len().min(4);
        m[..n].copy_from_slice(&bytes[..n]);
        return Err(PayloadError::BadMagic(m));
    }
    if bytes.len() < HEADER_LEN {
        return Err(PayloadError::Truncated);
    }
    if bytes[4] != VERSION {
        return Err(PayloadError::Version(bytes[4]));
    }
    if bytes[5] as usize != BLOCK {
        return Err(PayloadError::BlockSize(bytes[5]));
    }
    let u16_at = |i: usize| u16::from_be_bytes([bytes[i], bytes[i + 1]]);
    let u32_at = |i: usize| u32::from_be_bytes([bytes[i], bytes[i + 1], bytes[i + 2], bytes[i + 3]]);
    let header = PayloadHeader {
        width: u16_at(6),
        height: u16_at(8),
        q: u16_at(10),
        coeff_count: u32_at(12),
        ones_count: u32_at(16),
    };
    let range = |msg: String| PayloadError::OutOfRange(msg);
    if header.width == 0 || header.height == 0 {
        return Err(range(format!("dimensions {}x{}", header.width, header.height)));
    }
    if header.q == 0 {
        return Err(range("quantization factor 0".into()));
    }
    if header.ones_count > header.coeff_count {
        return Err(range(format!("{} ones for {} coefficients", header.ones_count, header.coeff_count)));
    }
    let cc = header.coeff_count as usize;
    let nblocks = header.block_count();
    let body_len = body_bits(cc, header.ones_count as usize, nblocks).div_ceil(8);
    let body = &bytes[HEADER_LEN..];
    if (body.len() as u64) < body_len {
        return Err(PayloadError::Truncated);
    }
    if body.len() as u64 > body_len {
        return Err(range(format!("{} trailing bytes", body.len() as u64 - body_len)));
    }

    let mut r = BitReader { bytes: body, pos: 0 };
    let bb = block_bits(nblocks);
    let mut records = Vec::with_capacity(cc);
    for _ in 0..cc {
        let block_index = r.get(bb)? as usize;
        let y = r.get(Y_BITS)? as u8;
        let x_high = r.get(X_HIGH_BITS)? as u8;
        let sign = if r.get(1)? == 1 { Sign::Negative } else { Sign::Positive };
        let magnitude = r.get(MAG_BITS)? as u8;
        if block_index >= nblocks {
            return Err(range(format!("block {block_index} of {nblocks}")));
        }
        if y as usize >= BLOCK || x_high >= 4 {
            return Err(range(format!("position y={y} x_high={x_high}")));
        }
        if magnitude == 0 {
            return Err(range("zero magnitude".into()));
        }
        records.push(CoeffRecord { block_index, y, x_high, sign, magnitude });
    }
    let ib = index_bits(cc);
    let mut indices = Vec::with_capacity(header.ones_count as usize);
    for _ in 0..header.ones_count {
        let i = r.get(ib)? as usize;
        if i >= cc || indices.last().is_some_and(|&p| p >= i) {
            return Err(range(format!("ones index {i}")));
        }
        indices.push(i);
    }
    // padding must be zero
    let pad = (body.len() * 8 - r.pos) as u32;
    if r.get(pad)? != 0 {
        return Err(range("nonzero padding bits".into()));
    }
    Ok(DecodedPayload { header, records, ones: OnesList { total: cc, indices } })
}

/// Bits per pixel of a payload against the original image size.
pub fn bpp(payload_len: usize, width: usize, height: usize) -> f64 {
    8.0 * payload_len as f64 / (width * height) as f64
}
