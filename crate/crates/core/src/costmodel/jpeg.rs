//! JPEG-style bit estimate for quantized blocks: zigzag scan, DC prediction,
//! (run, size) AC symbols with ZRL/EOB, and per-image optimal Huffman code
//! lengths. Only the bit count is produced; no bitstream is written.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap};

use crate::transform::QuantBlock;

/// Zigzag scan order as raster indices.
pub const ZIGZAG: [usize; 64] = [
    0, 1, 8, 16, 9, 2, 3, 10, 17, 24, 32, 25, 18, 11, 4, 5, 12, 19, 26, 33, 40, 48, 41, 34, 27, 20, 13, 6, 7, 14, 21,
    28, 35, 42, 49, 56, 57, 50, 43, 36, 29, 22, 15, 23, 30, 37, 44, 51, 58, 59, 52, 45, 38, 31, 39, 46, 53, 60, 61,
    54, 47, 55, 62, 63,
];

const EOB: u8 = 0x00;
const ZRL: u8 = 0xF0;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct JpegEstimate {
    /// Huffman-coded symbol bits plus magnitude bits.
    pub bits: u64,
    pub symbol_bits: u64,
    pub size_bits: u64,
    /// Self-information of the symbol stream under its own statistics.
    pub entropy_bits: f64,
}

/// Magnitude category: number of bits needed for `|v|`.
fn category(v: i32) -> u8 {
    (32 - v.unsigned_abs().leading_zeros()) as u8
}

/// Optimal (unbounded) Huffman code lengths. A lone symbol gets length 1.
/// Ties are broken by symbol value so the result is deterministic.
pub fn huffman_lengths(freqs: &BTreeMap<u8, u64>) -> BTreeMap<u8, u32> {
    let mut lengths: BTreeMap<u8, u32> = freqs.keys().map(|&s| (s, 0)).collect();
    if freqs.len() == 1 {
        lengths.values_mut().for_each(|l| *l = 1);
        return lengths;
    }
    // each heap node: (weight, tiebreak, member symbols)
    let mut heap: BinaryHeap<Reverse<(u64, u16, Vec<u8>)>> =
        freqs.iter().map(|(&s, &f)| Reverse((f, s as u16, vec![s]))).collect();
    let mut next_id = 256u16;
    while heap.len() > 1 {
        let Reverse((fa, _, a)) = heap.pop().expect("len > 1");
        let Reverse((fb, _, b)) = heap.pop().expect("len > 1");
        let mut merged = a;
        merged.extend(b);
        for s in &merged {
            *lengths.get_mut(s).expect("known symbol") += 1;
        }
        heap.push(Reverse((fa + fb, next_id, merged)));
        next_id += 1;
    }
    lengths
}

fn self_information(freqs: &BTreeMap<u8, u64>) -> f64 {
    let n: u64 = freqs.values().sum();
    freqs.values().map(|&f| f as f64 * -(f as f64 / n as f64).log2()).sum()
}

/// Estimated JPEG-style size of raster-ordered quantized blocks.
pub fn jpeg_like_bits(blocks: &[QuantBlock]) -> JpegEstimate {
    let mut dc_freq: BTreeMap<u8, u64> = BTreeMap::new();
    let mut ac_freq: BTreeMap<u8, u64> = BTreeMap::new();
    let mut size_bits = 0u64;
    let mut prev_dc = 0i32;
    for b in blocks {
        let dc = b.0[ZIGZAG[0]];
        let s = category(dc - prev_dc);
        prev_dc = dc;
        *dc_freq.entry(s).or_default() += 1;
        size_bits += s as u64;

        let mut run = 0u8;
        for &idx in &ZIGZAG[1..] {
            let v = b.0[idx];
            if v == 0 {
                run += 1;
                continue;
            }
            while run >= 16 {
                *ac_freq.entry(ZRL).or_default() += 1;
                run -= 16;
            }
            let s = category(v);
            *ac_freq.entry((run << 4) | s).or_default() += 1;
            size_bits += s as u64;
            run = 0;
        }
        if run > 0 {
            *ac_freq.entry(EOB).or_default() += 1;
        }
    }
    let coded = |freqs: &BTreeMap<u8, u64>| -> u64 {
        let lengths = huffman_lengths(freqs);
        freqs.iter().map(|(s, &f)| f * lengths[s] as u64).sum()
    };
    let symbol_bits = coded(&dc_freq) + coded(&ac_freq);
    JpegEstimate {
        bits: symbol_bits + size_bits,
        symbol_bits,
        size_bits,
        entropy_bits: self_information(&dc_freq) + self_information(&ac_freq),
    }
}
