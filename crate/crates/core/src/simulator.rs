//! Dense statevector simulation of the circuit IR and decoding of prepared
//! states back into coefficient blocks.
//!
//! Basis index bit `k` is qubit `k`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_complex::Complex64;

use crate::circuit::{Circuit, Gate, GateKind, Polarity, QubitLayout};
use crate::error::{Error, Result};
use crate::image::BLOCK;
use crate::transform::{QuantBlock, Sign};

pub const DEFAULT_MAX_QUBITS: usize = 24;

/// Amplitudes below this magnitude are treated as zero when decoding.
pub const DECODE_THRESHOLD: f64 = 1e-9;

/// Tolerance for deciding that a qubit is in a definite basis state.
pub const RESET_TOLERANCE: f64 = 1e-10;

/// Cap from `PALQA_MAX_QUBITS`, falling back to [`DEFAULT_MAX_QUBITS`].
pub fn max_qubits_from_env() -> usize {
    std::env::var("PALQA_MAX_QUBITS")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_QUBITS)
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// |0…0⟩ on `n_qubits` qubits.
    pub fn zero(n_qubits: usize, cap: usize) -> Result<Self> {
        if n_qubits > cap {
            return Err(Error::Simulator(format!("{n_qubits} qubits exceeds the cap of {cap}")));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n_qubits];
        amps[0] = Complex64::new(1.0, 0.0);
        Ok(Self { n_qubits, amps })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Probability of measuring `qubit` as |1⟩.
    pub fn prob_one(&self, qubit: usize) -> f64 {
        let bit = 1usize << qubit;
        self.amps.iter().enumerate().filter(|(i, _)| i & bit != 0).map(|(_, a)| a.norm_sqr()).sum()
    }

    pub fn apply(&mut self, gate: &Gate) -> Result<()> {
        gate.validate(self.n_qubits).map_err(|e| Error::Simulator(e.to_string()))?;
        match gate.kind {
            GateKind::Reset => self.reset(gate.target),
            GateKind::H => {
                let s = std::f64::consts::FRAC_1_SQRT_2;
                self.apply_2x2(gate, [[s, s], [s, -s]]);
                Ok(())
            }
            GateKind::X => {
                self.apply_x(gate);
                Ok(())
            }
            GateKind::Ry(theta) => {
                let (s, c) = (theta / 2.0).sin_cos();
                self.apply_2x2(gate, [[c, -s], [s, c]]);
                Ok(())
            }
        }
    }

    /// Indices with the target bit clear and every control satisfied.
    fn matching_indices(&self, gate: &Gate) -> impl Iterator<Item = usize> {
        let mut fixed_mask = 1usize << gate.target;
        let mut fixed_value = 0usize;
        for c in &gate.controls {
            fixed_mask |= 1 << c.qubit;
            if c.polarity == Polarity::Positive {
                fixed_value |= 1 << c.qubit;
            }
        }
        let free: Vec<usize> = (0..self.n_qubits).filter(|q| fixed_mask & (1 << q) == 0).collect();
        (0..1usize << free.len()).map(move |k| {
            let mut idx = fixed_value;
            for (j, &q) in free.iter().enumerate() {
                idx |= ((k >> j) & 1) << q;
            }
            idx
        })
    }

    fn apply_x(&mut self, gate: &Gate) {
        let bit = 1usize << gate.target;
        if gate.controls.is_empty() {
            // swap the halves of every 2·bit chunk
            for chunk in self.amps.chunks_exact_mut(bit << 1) {
                let (lo, hi) = chunk.split_at_mut(bit);
                lo.swap_with_slice(hi);
            }
            return;
        }
        let idx: Vec<usize> = self.matching_indices(gate).collect();
        for i in idx {
            self.amps.swap(i, i | bit);
        }
    }

    fn apply_2x2(&mut self, gate: &Gate, m: [[f64; 2]; 2]) {
        let bit = 1usize << gate.target;
        let idx: Vec<usize> = self.matching_indices(gate).collect();
        for i in idx {
            let (a0, a1) = (self.amps[i], self.amps[i | bit]);
            self.amps[i] = a0 * m[0][0] + a1 * m[0][1];
            self.amps[i | bit] = a0 * m[1][0] + a1 * m[1][1];
        }
    }

    /// Relabels a qubit in a definite basis state to |0⟩. A qubit in
    /// superposition or entangled with the rest is rejected.
    fn reset(&mut self, qubit: usize) -> Result<()> {
        let p1 = self.prob_one(qubit);
        let bit = 1usize << qubit;
        if p1 <= RESET_TOLERANCE {
            for (i, a) in self.amps.iter_mut().enumerate() {
                if i & bit != 0 {
                    *a = Complex64::new(0.0, 0.0);
                }
            }
            Ok(())
        } else if p1 >= 1.0 - RESET_TOLERANCE {
            for chunk in self.amps.chunks_exact_mut(bit << 1) {
                let (lo, hi) = chunk.split_at_mut(bit);
                lo.copy_from_slice(hi);
                hi.fill(Complex64::new(0.0, 0.0));
            }
            Ok(())
        } else {
            Err(Error::Simulator(format!(
                "reset of q{qubit} with P(1) = {p1:.6} is not deterministic"
            )))
        }
    }

    /// Lines `<binary index, qubit 0 rightmost> <re> <im>` for amplitudes
    /// above the decode threshold.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (i, a) in self.amps.iter().enumerate() {
            if a.norm() > DECODE_THRESHOLD {
                let _ = writeln!(out, "{:0width$b} {} {}", i, a.re, a.im, width = self.n_qubits.max(1));
            }
        }
        out
    }
}

pub fn simulate(c: &Circuit) -> Result<StateVector> {
    simulate_with_cap(c, max_qubits_from_env())
}

pub fn simulate_with_cap(c: &Circuit, cap: usize) -> Result<StateVector> {
    let mut s = StateVector::zero(c.n_qubits(), cap)?;
    for g in c.gates() {
        s.apply(g)?;
    }
    Ok(s)
}

/// One basis state of a prepared image state, with its register fields.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecodedEntry {
    pub value: u32,
    pub aux: bool,
    pub x: u32,
    pub y: u32,
    pub amplitude: Complex64,
}

fn field(index: usize, offset: usize, bits: usize) -> u32 {
    ((index >> offset) & ((1 << bits) - 1)) as u32
}

/// Slices every basis state with non-negligible amplitude into its registers.
pub fn decode_state(s: &StateVector, layout: &QubitLayout) -> Vec<DecodedEntry> {
    let aux_off = layout.value_bits;
    let x_off = aux_off + layout.aux as usize;
    let y_off = x_off + layout.x_bits;
    s.amps
        .iter()
        .enumerate()
        .filter(|(_, a)| a.norm() > DECODE_THRESHOLD)
        .map(|(i, &amplitude)| DecodedEntry {
            value: field(i, 0, layout.value_bits),
            aux: layout.aux && (i >> aux_off) & 1 == 1,
            x: field(i, x_off, layout.x_bits),
            y: field(i, y_off, layout.y_bits),
            amplitude,
        })
        .collect()
}

/// Largest deviation of any entry's magnitude from `expected`.
pub fn magnitude_spread(entries: &[DecodedEntry], expected: f64) -> f64 {
    entries.iter().map(|e| (e.amplitude.norm() - expected).abs()).fold(0.0, f64::max)
}

/// Magnitude every branch of a builder state should carry: `2^(-h/2)` for
/// `h` Hadamards.
pub fn expected_magnitude(layout: &QubitLayout) -> f64 {
    0.5f64.powf(layout.hadamard_count() as f64 / 2.0)
}

/// Undoes the swap-qubit encoding of a block circuit's decoded state.
///
/// Even-column coefficients are written to both halves of their
/// `(x >> 1, y)` pair, so each odd-column branch holds the XOR of the pair.
/// XOR-ing the even partner back out restores plain per-position values.
pub fn resolve_lsb_swap(entries: &[DecodedEntry]) -> Vec<DecodedEntry> {
    let even: BTreeMap<(u32, u32), u32> =
        entries.iter().filter(|e| e.x & 1 == 0).map(|e| ((e.x, e.y), e.value)).collect();
    entries
        .iter()
        .map(|e| {
            let mut e = *e;
            if e.x & 1 == 1 {
                e.value ^= even.get(&(e.x - 1, e.y)).copied().unwrap_or(0);
            }
            e
        })
        .collect()
}

/// Scatters decoded entries into a quantized block. `signs` lists the sign of
/// each nonzero entry in canonical (row, then column) order.
pub fn reconstruct_block(entries: &[DecodedEntry], signs: &[Sign]) -> Result<QuantBlock> {
    let mut by_pos = BTreeMap::new();
    for e in entries {
        if e.aux {
            return Err(Error::Invalid(format!("aux qubit set at ({}, {})", e.x, e.y)));
        }
        if e.x as usize >= BLOCK || e.y as usize >= BLOCK {
            return Err(Error::Invalid(format!("decoded position ({}, {}) outside the block", e.x, e.y)));
        }
        if by_pos.insert((e.y, e.x), e.value).is_some() {
            return Err(Error::Invalid(format!("duplicate decoded position ({}, {})", e.x, e.y)));
        }
    }
    let nonzero: Vec<_> = by_pos.into_iter().filter(|(_, v)| *v != 0).collect();
    if nonzero.len() != signs.len() {
        return Err(Error::Invalid(format!(
            "{} nonzero entries but {} signs",
            nonzero.len(),
            signs.len()
        )));
    }
    let mut block = QuantBlock::ZERO;
    for (((y, x), v), sign) in nonzero.into_iter().zip(signs) {
        block.set(x as usize, y as usize, sign.apply(v));
    }
    Ok(block)
}
