//! Gate-level circuit IR.
//!
//! A [`Circuit`] is an ordered gate list over a [`QubitLayout`]. Controls carry
//! their own polarity, so an anti-control is a single control entry rather
//! than an X-gate sandwich.

mod builders;
mod text;

pub use builders::{build_frqi, build_neqr, build_nzneqr, build_palqa, build_zscneqr};
pub use text::{format_angle, parse_text};

use crate::error::{Error, Result};

/// Register layout. Qubits are numbered value bits first (qubit 0 is the
/// value LSB), then the optional auxiliary qubit, then the X register (LSB
/// first), then the Y register (LSB first).
///
/// `x_superposed`/`y_superposed` count the low position bits that receive a
/// Hadamard; the remaining high position qubits are held at |0⟩.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QubitLayout {
    pub value_bits: usize,
    pub aux: bool,
    pub x_bits: usize,
    pub y_bits: usize,
    pub x_superposed: usize,
    pub y_superposed: usize,
}

impl QubitLayout {
    /// Per-block layout: 8 value qubits, aux, 4 + 4 position qubits with the
    /// low 3 of each axis superposed. 17 qubits.
    pub const BLOCK: Self = Self {
        value_bits: 8,
        aux: true,
        x_bits: 4,
        y_bits: 4,
        x_superposed: 3,
        y_superposed: 3,
    };

    /// Two-by-two FRQI layout: one color qubit, one position qubit per axis.
    pub const FRQI: Self = Self {
        value_bits: 1,
        aux: false,
        x_bits: 1,
        y_bits: 1,
        x_superposed: 1,
        y_superposed: 1,
    };

    /// Plain NEQR for a `2^k × 2^k` image.
    pub fn neqr(k: usize) -> Self {
        Self { value_bits: 8, aux: false, x_bits: k, y_bits: k, x_superposed: k, y_superposed: k }
    }

    /// Full-image NZ-NEQR layout: `⌈log2 W⌉ + 1` X qubits and `⌈log2 H⌉ + 1`
    /// Y qubits, the extra one held at |0⟩.
    pub fn nzneqr(width: usize, height: usize) -> Self {
        let bx = ceil_log2(width);
        let by = ceil_log2(height);
        Self {
            value_bits: 8,
            aux: true,
            x_bits: bx + 1,
            y_bits: by + 1,
            x_superposed: bx,
            y_superposed: by,
        }
    }

    /// A layout with no register structure, used for parsed circuits.
    pub fn opaque(n: usize) -> Self {
        Self { value_bits: n, aux: false, x_bits: 0, y_bits: 0, x_superposed: 0, y_superposed: 0 }
    }

    pub fn total(&self) -> usize {
        self.value_bits + self.aux as usize + self.x_bits + self.y_bits
    }

    pub fn value_qubit(&self, bit: usize) -> usize {
        debug_assert!(bit < self.value_bits);
        bit
    }

    pub fn aux_qubit(&self) -> Option<usize> {
        self.aux.then_some(self.value_bits)
    }

    pub fn x_qubit(&self, bit: usize) -> usize {
        debug_assert!(bit < self.x_bits);
        self.value_bits + self.aux as usize + bit
    }

    pub fn y_qubit(&self, bit: usize) -> usize {
        debug_assert!(bit < self.y_bits);
        self.value_bits + self.aux as usize + self.x_bits + bit
    }

    /// The swap/trash qubit: LSB of the X register.
    pub fn x_lsb(&self) -> usize {
        self.x_qubit(0)
    }

    pub fn hadamard_count(&self) -> usize {
        self.x_superposed + self.y_superposed
    }

    pub fn validate(&self) -> Result<()> {
        if self.x_superposed > self.x_bits || self.y_superposed > self.y_bits {
            return Err(Error::Invalid(format!("superposed bits exceed register width in {self:?}")));
        }
        Ok(())
    }
}

/// `⌈log2 n⌉`, with `ceil_log2(1) = 0`.
pub fn ceil_log2(n: usize) -> usize {
    assert!(n >= 1);
    (usize::BITS - (n - 1).leading_zeros()) as usize
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Polarity {
    /// Fires on |1⟩.
    Positive,
    /// Fires on |0⟩.
    Negative,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Control {
    pub qubit: usize,
    pub polarity: Polarity,
}

impl Control {
    pub fn pos(qubit: usize) -> Self {
        Self { qubit, polarity: Polarity::Positive }
    }

    pub fn neg(qubit: usize) -> Self {
        Self { qubit, polarity: Polarity::Negative }
    }

    /// Control that fires when `qubit` holds `bit`.
    pub fn on(qubit: usize, bit: bool) -> Self {
        if bit {
            Self::pos(qubit)
        } else {
            Self::neg(qubit)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GateKind {
    H,
    X,
    /// `RY(θ) = [[cos θ/2, −sin θ/2], [sin θ/2, cos θ/2]]`.
    Ry(f64),
    Reset,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Gate {
    pub kind: GateKind,
    pub target: usize,
    pub controls: Vec<Control>,
}

impl Gate {
    pub fn h(target: usize) -> Self {
        Self { kind: GateKind::H, target, controls: vec![] }
    }

    pub fn x(target: usize) -> Self {
        Self { kind: GateKind::X, target, controls: vec![] }
    }

    pub fn mcx(controls: Vec<Control>, target: usize) -> Self {
        Self { kind: GateKind::X, target, controls }
    }

    pub fn ry(angle: f64, target: usize) -> Self {
        Self { kind: GateKind::Ry(angle), target, controls: vec![] }
    }

    pub fn reset(target: usize) -> Self {
        Self { kind: GateKind::Reset, target, controls: vec![] }
    }

    pub fn with_controls(mut self, controls: Vec<Control>) -> Self {
        self.controls = controls;
        self
    }

    /// Whether `qubit` is this gate's target or one of its controls.
    pub fn touches(&self, qubit: usize) -> bool {
        self.target == qubit || self.controls.iter().any(|c| c.qubit == qubit)
    }

    pub fn validate(&self, n_qubits: usize) -> Result<()> {
        let bad = |msg: String| Err(Error::Invalid(msg));
        if self.target >= n_qubits {
            return bad(format!("target q{} outside {n_qubits} qubits", self.target));
        }
        for (i, c) in self.controls.iter().enumerate() {
            if c.qubit >= n_qubits {
                return bad(format!("control q{} outside {n_qubits} qubits", c.qubit));
            }
            if c.qubit == self.target {
                return bad(format!("q{} is both target and control", c.qubit));
            }
            if self.controls[..i].iter().any(|d| d.qubit == c.qubit) {
                return bad(format!("duplicate control q{}", c.qubit));
            }
        }
        match self.kind {
            GateKind::Reset if !self.controls.is_empty() => bad("reset cannot be controlled".into()),
            GateKind::Ry(a) if !a.is_finite() => bad(format!("non-finite angle {a}")),
            _ => Ok(()),
        }
    }
}

/// Structural gate tally.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct GateCounts {
    pub h: usize,
    pub x: usize,
    pub mcx: usize,
    pub ry: usize,
    pub cry: usize,
    pub ch: usize,
    pub reset: usize,
}

impl GateCounts {
    pub fn total(&self) -> usize {
        self.h + self.x + self.mcx + self.ry + self.cry + self.ch + self.reset
    }
}

impl std::ops::AddAssign for GateCounts {
    fn add_assign(&mut self, o: Self) {
        self.h += o.h;
        self.x += o.x;
        self.mcx += o.mcx;
        self.ry += o.ry;
        self.cry += o.cry;
        self.ch += o.ch;
        self.reset += o.reset;
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    pub layout: QubitLayout,
    pub label: String,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(layout: QubitLayout, label: impl Into<String>) -> Self {
        Self { layout, label: label.into(), gates: Vec::new() }
    }

    /// Builds a circuit from a gate list, validating every gate.
    pub fn from_gates(layout: QubitLayout, label: impl Into<String>, gates: Vec<Gate>) -> Result<Self> {
        let mut c = Self::new(layout, label);
        for g in gates {
            c.push(g)?;
        }
        Ok(c)
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        gate.validate(self.n_qubits())?;
        self.gates.push(gate);
        Ok(())
    }

    pub fn n_qubits(&self) -> usize {
        self.layout.total()
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn counts(&self) -> GateCounts {
        let mut c = GateCounts::default();
        for g in &self.gates {
            let controlled = !g.controls.is_empty();
            match (g.kind, controlled) {
                (GateKind::H, false) => c.h += 1,
                (GateKind::H, true) => c.ch += 1,
                (GateKind::X, false) => c.x += 1,
                (GateKind::X, true) => c.mcx += 1,
                (GateKind::Ry(_), false) => c.ry += 1,
                (GateKind::Ry(_), true) => c.cry += 1,
                (GateKind::Reset, _) => c.reset += 1,
            }
        }
        c
    }

    /// Number of gates that target or are controlled by `qubit`.
    pub fn touch_count(&self, qubit: usize) -> usize {
        self.gates.iter().filter(|g| g.touches(qubit)).count()
    }

    /// Sum of control connections over all gates.
    pub fn control_count(&self) -> usize {
        self.gates.iter().map(|g| g.controls.len()).sum()
    }

    pub fn export_text(&self) -> String {
        text::export(self)
    }

    /// Parses `text` and attaches `layout`/`label`; the declared qubit count
    /// must match the layout.
    pub fn from_text(text: &str, layout: QubitLayout, label: impl Into<String>) -> Result<Self> {
        let (n, gates) = parse_text(text)?;
        if n != layout.total() {
            return Err(Error::Invalid(format!(
                "text declares {n} qubits, layout has {}",
                layout.total()
            )));
        }
        Self::from_gates(layout, label, gates)
    }
}
