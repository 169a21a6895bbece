//! Grayscale raster, binary PGM I/O, 8×8 block partitioning and PSNR.

use crate::error::{Error, Result};

/// Side length of a transform block.
pub const BLOCK: usize = 8;

/// An 8-bit grayscale image, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrayImage {
    width: usize,
    height: usize,
    pixels: Vec<u8>,
}

impl GrayImage {
    pub fn new(width: usize, height: usize, pixels: Vec<u8>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::Dimensions(format!("{width}x{height} image")));
        }
        if pixels.len() != width * height {
            return Err(Error::Dimensions(format!(
                "{} samples for a {width}x{height} image",
                pixels.len()
            )));
        }
        Ok(Self { width, height, pixels })
    }

    /// Image filled with a single value.
    pub fn filled(width: usize, height: usize, value: u8) -> Result<Self> {
        Self::new(width, height, vec![value; width * height])
    }

    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> u8) -> Result<Self> {
        let mut pixels = Vec::with_capacity(width * height);
        for y in 0..height {
            for x in 0..width {
                pixels.push(f(x, y));
            }
        }
        Self::new(width, height, pixels)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    pub fn len(&self) -> usize {
        self.pixels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pixels.is_empty()
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> u8 {
        self.pixels[y * self.width + x]
    }

    /// Top-left `width`×`height` region.
    pub fn crop(&self, width: usize, height: usize) -> Result<Self> {
        if width > self.width || height > self.height {
            return Err(Error::Dimensions(format!(
                "cannot crop {}x{} to {width}x{height}",
                self.width, self.height
            )));
        }
        Self::from_fn(width, height, |x, y| self.get(x, y))
    }
}

/// One 8×8 block of samples and its (row, col) position in the block grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PixelBlock {
    pub samples: [u8; BLOCK * BLOCK],
    pub origin: (usize, usize),
}

impl PixelBlock {
    pub fn new(samples: [u8; BLOCK * BLOCK], origin: (usize, usize)) -> Self {
        Self { samples, origin }
    }
}

fn pgm_err(msg: impl Into<String>) -> Error {
    Error::Pgm(msg.into())
}

/// Parses a binary (P5) PGM with maxval 255. Header whitespace and `#`
/// comments are accepted anywhere between header tokens.
pub fn read_pgm(bytes: &[u8]) -> Result<GrayImage> {
    if bytes.len() < 2 || &bytes[..2] != b"P5" {
        return Err(pgm_err("bad magic"));
    }
    let mut pos = 2;
    let mut fields = [0usize; 3];
    for field in fields.iter_mut() {
        // skip whitespace and comments
        loop {
            match bytes.get(pos) {
                Some(b) if b.is_ascii_whitespace() => pos += 1,
                Some(b'#') => {
                    while let Some(&b) = bytes.get(pos) {
                        pos += 1;
                        if b == b'\n' {
                            break;
                        }
                    }
                }
                Some(_) => break,
                None => return Err(pgm_err("truncated header")),
            }
        }
        let start = pos;
        while bytes.get(pos).is_some_and(u8::is_ascii_digit) {
            pos += 1;
        }
        if start == pos {
            return Err(pgm_err("expected a decimal header field"));
        }
        let text = std::str::from_utf8(&bytes[start..pos]).expect("ascii digits");
        *field = text.parse().map_err(|_| pgm_err(format!("header field {text} too large")))?;
    }
    let [width, height, maxval] = fields;
    if width == 0 || height == 0 {
        return Err(pgm_err(format!("nonpositive dimensions {width}x{height}")));
    }
    if maxval != 255 {
        return Err(pgm_err(format!("maxval {maxval}, only 255 is supported")));
    }
    // exactly one whitespace byte separates the header from the raster
    match bytes.get(pos) {
        Some(b) if b.is_ascii_whitespace() => pos += 1,
        _ => return Err(pgm_err("truncated header")),
    }
    let n = width
        .checked_mul(height)
        .ok_or_else(|| pgm_err("dimensions overflow"))?;
    let raster = bytes
        .get(pos..pos + n)
        .ok_or_else(|| pgm_err(format!("truncated payload: need {n} samples")))?;
    GrayImage::new(width, height, raster.to_vec())
}

/// Canonical P5 encoding: `"P5\n<w> <h>\n255\n"` followed by the raw samples.
pub fn write_pgm(img: &GrayImage) -> Vec<u8> {
    let mut out = format!("P5\n{} {}\n255\n", img.width, img.height).into_bytes();
    out.extend_from_slice(&img.pixels);
    out
}

/// Rounds both dimensions up to a multiple of `side`, replicating the last
/// column and row into the new area.
pub fn pad_to_blocks(img: &GrayImage, side: usize) -> GrayImage {
    assert!(side >= 1, "block side must be positive");
    let w = img.width.div_ceil(side) * side;
    let h = img.height.div_ceil(side) * side;
    if w == img.width && h == img.height {
        return img.clone();
    }
    GrayImage::from_fn(w, h, |x, y| img.get(x.min(img.width - 1), y.min(img.height - 1)))
        .expect("padded dimensions are positive")
}

/// Splits an image whose dimensions are multiples of 8 into blocks in
/// raster order over the block grid.
pub fn partition(img: &GrayImage) -> Result<Vec<PixelBlock>> {
    if !img.width.is_multiple_of(BLOCK) || !img.height.is_multiple_of(BLOCK) {
        return Err(Error::Dimensions(format!(
            "{}x{} is not a multiple of {BLOCK}",
            img.width, img.height
        )));
    }
    let (bw, bh) = (img.width / BLOCK, img.height / BLOCK);
    let mut blocks = Vec::with_capacity(bw * bh);
    for br in 0..bh {
        for bc in 0..bw {
            let mut samples = [0u8; BLOCK * BLOCK];
            for r in 0..BLOCK {
                let row = (br * BLOCK + r) * img.width + bc * BLOCK;
                samples[r * BLOCK..(r + 1) * BLOCK].copy_from_slice(&img.pixels[row..row + BLOCK]);
            }
            blocks.push(PixelBlock::new(samples, (br, bc)));
        }
    }
    Ok(blocks)
}

/// Reassembles blocks (any order) into a `width`×`height` image. Every grid
/// position must be covered exactly once.
pub fn merge(blocks: &[PixelBlock], width: usize, height: usize) -> Result<GrayImage> {
    if width == 0 || height == 0 || !width.is_multiple_of(BLOCK) || !height.is_multiple_of(BLOCK) {
        return Err(Error::Dimensions(format!(
            "merge target {width}x{height} is not a positive multiple of {BLOCK}"
        )));
    }
    let (bw, bh) = (width / BLOCK, height / BLOCK);
    if blocks.len() != bw * bh {
        return Err(Error::Dimensions(format!(
            "{} blocks for a {bw}x{bh} grid",
            blocks.len()
        )));
    }
    let mut seen = vec![false; bw * bh];
    let mut pixels = vec![0u8; width * height];
    for block in blocks {
        let (br, bc) = block.origin;
        if br >= bh || bc >= bw {
            return Err(Error::Dimensions(format!("block origin ({br}, {bc}) outside grid")));
        }
        let slot = &mut seen[br * bw + bc];
        if *slot {
            return Err(Error::Dimensions(format!("duplicate block origin ({br}, {bc})")));
        }
        *slot = true;
        for r in 0..BLOCK {
            let row = (br * BLOCK + r) * width + bc * BLOCK;
            pixels[row..row + BLOCK].copy_from_slice(&block.samples[r * BLOCK..(r + 1) * BLOCK]);
        }
    }
    GrayImage::new(width, height, pixels)
}

/// Peak signal-to-noise ratio in dB, `10·log10(255²/MSE)`.
/// Identical images give `f64::INFINITY`.
pub fn psnr(a: &GrayImage, b: &GrayImage) -> Result<f64> {
    if a.width != b.width || a.height != b.height {
        return Err(Error::Dimensions(format!(
            "psnr of {}x{} against {}x{}",
            a.width, a.height, b.width, b.height
        )));
    }
    let sse: u64 = a
        .pixels
        .iter()
        .zip(&b.pixels)
        .map(|(&p, &q)| {
            let d = p as i64 - q as i64;
            (d * d) as u64
        })
        .sum();
    if sse == 0 {
        return Ok(f64::INFINITY);
    }
    let mse = sse as f64 / a.len() as f64;
    Ok(10.0 * (255.0f64 * 255.0 / mse).log10())
}
