//! End-to-end encode/decode and rate-distortion sweeps.
//!
//! Encoder: pad → partition → DCT → quantize → sparse extraction → LSB split
//! → ones list → payload. The decoder reads the payload (not a statevector),
//! regenerates the LSB plane, rejoins the columns, scatters coefficients into
//! zeroed blocks, dequantizes, inverts the DCT, merges and crops.

use std::fmt::Write as _;

use crate::circuit::{build_palqa, build_zscneqr, ceil_log2, Circuit, Gate, GateCounts, QubitLayout};
use crate::costmodel::{self, CostModel, GateBudget, Method, RdPoint};
use crate::error::{Error, Result};
use crate::image::{self, GrayImage, BLOCK};
use crate::lsbswap::{self, OnesList};
use crate::payload::{self, HEADER_LEN};
use crate::simulator::{self, DecodedEntry};
use crate::transform::{self, QuantBlock, Sign, SparseCoeff};

/// Exact CSV header of sweep output.
pub const CSV_HEADER: &str = "method,Q,gpp,bpp,psnr_db,q_ones,b_state,b_sign,b_aux,b_gpp,b_total,tc_nz,saturated";

/// Classical front half of the encoder for one image and factor.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub width: usize,
    pub height: usize,
    pub padded_width: usize,
    pub padded_height: usize,
    pub q: u32,
    pub blocks: Vec<QuantBlock>,
    pub coeffs: Vec<SparseCoeff>,
    pub saturated: usize,
    pub x_high: Vec<u8>,
    pub ones: OnesList,
}

impl Analysis {
    /// Block grid as (blocks per row, block rows).
    pub fn grid(&self) -> (usize, usize) {
        (self.padded_width / BLOCK, self.padded_height / BLOCK)
    }

    pub fn pixels(&self) -> u64 {
        (self.width * self.height) as u64
    }

    /// Coefficients of one block, still in canonical order.
    pub fn block_coeffs(&self, block_index: usize) -> &[SparseCoeff] {
        let start = self.coeffs.partition_point(|c| c.block_index < block_index);
        let end = self.coeffs.partition_point(|c| c.block_index <= block_index);
        &self.coeffs[start..end]
    }

    pub fn budget(&self, model: CostModel) -> GateBudget {
        costmodel::count_b_total(&self.coeffs, &self.ones, &QubitLayout::BLOCK, self.grid(), self.pixels(), model)
    }
}

pub fn analyze(img: &GrayImage, q: u32) -> Result<Analysis> {
    if q < 1 {
        return Err(Error::QuantFactor(q));
    }
    let padded = image::pad_to_blocks(img, BLOCK);
    let blocks = image::partition(&padded)?
        .iter()
        .map(|b| transform::quantize(&transform::dct2(b), q))
        .collect::<Result<Vec<_>>>()?;
    let (coeffs, saturated) = transform::extract_sparse(&blocks);
    let (x_high, plane) = lsbswap::split_lsb(&coeffs);
    let ones = lsbswap::encode_ones(&plane);
    Ok(Analysis {
        width: img.width(),
        height: img.height(),
        padded_width: padded.width(),
        padded_height: padded.height(),
        q,
        blocks,
        coeffs,
        saturated,
        x_high,
        ones,
    })
}

#[derive(Debug, Clone, Copy, Default)]
pub struct EncodeOptions {
    pub cost: CostModel,
    /// Build every block's circuit and tally its gates.
    pub build_circuits: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Diagnostics {
    pub tc_nz: usize,
    pub ones: usize,
    pub saturated: usize,
}

#[derive(Debug, Clone)]
pub struct EncodeResult {
    pub payload: Vec<u8>,
    pub budget: GateBudget,
    /// Aggregate gate tally over all block circuits, when requested.
    pub circuits: Option<GateCounts>,
    pub diagnostics: Diagnostics,
}

impl EncodeResult {
    pub fn gpp(&self) -> f64 {
        self.budget.gpp().expect("encoded images have pixels")
    }
}

pub fn encode(img: &GrayImage, q: u32) -> Result<EncodeResult> {
    encode_with(img, q, &EncodeOptions::default())
}

pub fn encode_with(img: &GrayImage, q: u32, opts: &EncodeOptions) -> Result<EncodeResult> {
    let a = analyze(img, q)?;
    encode_analysis(&a, opts)
}

pub fn encode_analysis(a: &Analysis, opts: &EncodeOptions) -> Result<EncodeResult> {
    let payload = payload::serialize(&a.coeffs, &a.x_high, &a.ones, (a.width, a.height), a.q)?;
    let circuits = if opts.build_circuits {
        let mut total = GateCounts::default();
        for b in 0..a.blocks.len() {
            total += block_circuit(a, b, CircuitKind::Palqa)?.counts();
        }
        Some(total)
    } else {
        None
    };
    Ok(EncodeResult {
        payload,
        budget: a.budget(opts.cost),
        circuits,
        diagnostics: Diagnostics { tc_nz: a.coeffs.len(), ones: a.ones.len(), saturated: a.saturated },
    })
}

pub fn decode(bytes: &[u8]) -> Result<GrayImage> {
    let d = payload::deserialize(bytes)?;
    let plane = lsbswap::regenerate(&d.ones)?;
    let x_high: Vec<u8> = d.records.iter().map(|r| r.x_high).collect();
    let xs = lsbswap::join(&x_high, &plane)?;
    let coeffs: Vec<SparseCoeff> = d
        .records
        .iter()
        .zip(xs)
        .map(|(r, x)| SparseCoeff { block_index: r.block_index, y: r.y, x, sign: r.sign, magnitude: r.magnitude })
        .collect();
    let (bw, bh) = d.header.block_grid();
    let blocks = transform::scatter_sparse(&coeffs, bw * bh)?;
    let q = d.header.q as u32;
    let pixel_blocks: Vec<_> = blocks
        .iter()
        .enumerate()
        .map(|(i, b)| transform::idct2(&transform::dequantize(b, q), (i / bw, i % bw)))
        .collect();
    let padded = image::merge(&pixel_blocks, bw * BLOCK, bh * BLOCK)?;
    padded.crop(d.header.width as usize, d.header.height as usize)
}

/// Purely classical lossy path with no sparse/LSB/payload stages.
pub fn reference_reconstruction(img: &GrayImage, q: u32) -> Result<GrayImage> {
    let padded = image::pad_to_blocks(img, BLOCK);
    let mut out = Vec::new();
    for b in image::partition(&padded)? {
        let qb = transform::quantize(&transform::dct2(&b), q)?;
        out.push(transform::idct2(&transform::dequantize(&qb, q), b.origin));
    }
    image::merge(&out, padded.width(), padded.height())?.crop(img.width(), img.height())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CircuitKind {
    Zscneqr,
    Palqa,
}

/// State-preparation circuit for one block of an analysis.
pub fn block_circuit(a: &Analysis, block_index: usize, kind: CircuitKind) -> Result<Circuit> {
    if block_index >= a.blocks.len() {
        return Err(Error::Invalid(format!("block {block_index} of {}", a.blocks.len())));
    }
    let coeffs = a.block_coeffs(block_index);
    match kind {
        CircuitKind::Zscneqr => build_zscneqr(coeffs),
        CircuitKind::Palqa => {
            let (high, plane) = lsbswap::split_lsb(coeffs);
            build_palqa(coeffs, &high, &lsbswap::encode_ones(&plane))
        }
    }
}

/// Outcome of simulating one block circuit.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockCheck {
    pub kind: CircuitKind,
    pub gates: usize,
    pub entries: usize,
    /// Largest deviation from the uniform branch magnitude.
    pub magnitude_spread: f64,
    pub reconstructed: Option<QuantBlock>,
    pub error: Option<String>,
    pub matches: bool,
}

impl BlockCheck {
    pub fn uniform(&self) -> bool {
        self.magnitude_spread < 1e-10
    }

    pub fn passed(&self) -> bool {
        self.matches && self.uniform() && self.error.is_none()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub block_index: usize,
    pub expected: QuantBlock,
    pub checks: Vec<BlockCheck>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(BlockCheck::passed)
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "block={} nonzero={}", self.block_index, self.expected.nonzero_count());
        for c in &self.checks {
            let name = match c.kind {
                CircuitKind::Zscneqr => "zscneqr",
                CircuitKind::Palqa => "palqa",
            };
            let _ = writeln!(
                s,
                "{name}: gates={} entries={} amplitude_spread={:.3e} uniform={} reconstruction={}{}",
                c.gates,
                c.entries,
                c.magnitude_spread,
                if c.uniform() { "pass" } else { "fail" },
                if c.matches { "pass" } else { "fail" },
                c.error.as_deref().map(|e| format!(" ({e})")).unwrap_or_default(),
            );
        }
        let _ = writeln!(s, "result={}", if self.passed() { "PASS" } else { "FAIL" });
        s
    }
}

/// Decodes a simulated block state into a quantized block. The swap-qubit
/// circuit's state is resolved first.
pub fn reconstruct_from_state(
    entries: &[DecodedEntry],
    kind: CircuitKind,
    signs: &[Sign],
) -> Result<QuantBlock> {
    match kind {
        CircuitKind::Zscneqr => simulator::reconstruct_block(entries, signs),
        CircuitKind::Palqa => simulator::reconstruct_block(&simulator::resolve_lsb_swap(entries), signs),
    }
}

/// Simulates one circuit and compares its decoded block with `expected`.
pub fn check_circuit(c: &Circuit, kind: CircuitKind, signs: &[Sign], expected: &QuantBlock, cap: usize) -> BlockCheck {
    let mut check = BlockCheck {
        kind,
        gates: c.len(),
        entries: 0,
        magnitude_spread: f64::INFINITY,
        reconstructed: None,
        error: None,
        matches: false,
    };
    let state = match simulator::simulate_with_cap(c, cap) {
        Ok(s) => s,
        Err(e) => {
            check.error = Some(e.to_string());
            return check;
        }
    };
    let entries = simulator::decode_state(&state, &c.layout);
    check.entries = entries.len();
    check.magnitude_spread = simulator::magnitude_spread(&entries, simulator::expected_magnitude(&c.layout));
    match reconstruct_from_state(&entries, kind, signs) {
        Ok(b) => {
            check.matches = b == *expected;
            check.reconstructed = Some(b);
        }
        Err(e) => check.error = Some(e.to_string()),
    }
    check
}

/// Builds both block circuits, simulates them and checks that each decodes
/// to the block's quantized coefficients. `tamper` appends a stray X on the
/// value LSB to both circuits.
pub fn verify_block(a: &Analysis, block_index: usize, tamper: bool, cap: usize) -> Result<VerifyReport> {
    let coeffs = a.block_coeffs(block_index);
    let expected = transform::scatter_sparse(
        &coeffs.iter().map(|c| SparseCoeff { block_index: 0, ..*c }).collect::<Vec<_>>(),
        1,
    )?[0];
    let signs: Vec<Sign> = coeffs.iter().map(|c| c.sign).collect();
    let mut checks = Vec::new();
    for kind in [CircuitKind::Zscneqr, CircuitKind::Palqa] {
        let mut c = block_circuit(a, block_index, kind)?;
        if tamper {
            c.push(Gate::x(c.layout.value_qubit(0)))?;
        }
        checks.push(check_circuit(&c, kind, &signs, &expected, cap));
    }
    Ok(VerifyReport { block_index, expected, checks })
}

/// Raw NZ-NEQR stream size: header plus, per coefficient, full-image
/// position bits, sign and eight magnitude bits.
fn nzneqr_stream_bits(a: &Analysis) -> u64 {
    let pos = (ceil_log2(a.padded_width) + ceil_log2(a.padded_height)) as u64;
    HEADER_LEN as u64 * 8 + a.coeffs.len() as u64 * (pos + 1 + 8)
}

/// One RD point per (method, factor), sorted by method name then factor.
///
/// All methods share the same lossy stage, so their PSNR at a given factor
/// is identical. For `jpeg_like` both rate columns carry the estimated bits
/// per pixel.
pub fn rd_sweep(img: &GrayImage, qs: &[u32], methods: &[Method], cost: CostModel) -> Result<Vec<RdPoint>> {
    if qs.is_empty() {
        return Err(Error::Invalid("empty quantization factor list".into()));
    }
    let mut qs = qs.to_vec();
    qs.sort_unstable();
    qs.dedup();
    let mut methods = methods.to_vec();
    methods.sort_by_key(|m| m.as_str());
    methods.dedup();

    let mut points = Vec::new();
    for &q in &qs {
        let a = analyze(img, q)?;
        let enc = encode_analysis(&a, &EncodeOptions { cost, build_circuits: false })?;
        let psnr_db = image::psnr(img, &decode(&enc.payload)?)?;
        let pixels = a.pixels();
        for &method in &methods {
            let (gpp, bpp, budget) = match method {
                Method::Palqa => {
                    (enc.gpp(), payload::bpp(enc.payload.len(), a.width, a.height), Some(enc.budget))
                }
                Method::Nzneqr => {
                    let b = costmodel::nzneqr_budget(&a.coeffs, a.padded_width, a.padded_height, pixels, cost);
                    (b.gpp()?, nzneqr_stream_bits(&a) as f64 / pixels as f64, Some(b))
                }
                Method::JpegLike => {
                    let bits = costmodel::jpeg_like_bits(&a.blocks).bits as f64 / pixels as f64;
                    (bits, bits, None)
                }
            };
            points.push(RdPoint {
                method,
                q,
                gpp,
                bpp,
                psnr_db,
                budget,
                tc_nz: a.coeffs.len(),
                saturated: a.saturated,
            });
        }
    }
    points.sort_by(|a, b| (a.method.as_str(), a.q).cmp(&(b.method.as_str(), b.q)));
    Ok(points)
}

fn fmt_db(v: f64) -> String {
    if v.is_infinite() {
        "inf".into()
    } else {
        format!("{v}")
    }
}

/// CSV text with [`CSV_HEADER`]; budget columns are empty for rows without a
/// gate budget.
pub fn to_csv(points: &[RdPoint]) -> String {
    let mut s = String::new();
    s.push_str(CSV_HEADER);
    s.push('\n');
    for p in points {
        let budget = match p.budget {
            Some(b) => format!("{},{},{},{},{},{}", b.q_ones, b.b_state, b.b_sign, b.b_aux, b.b_gpp, b.b_total),
            None => ",,,,,".into(),
        };
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{},{}",
            p.method,
            p.q,
            p.gpp,
            p.bpp,
            fmt_db(p.psnr_db),
            budget,
            p.tc_nz,
            p.saturated
        );
    }
    s
}
