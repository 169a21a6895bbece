//! State-preparation circuit builders.
//!
//! Value gates are only emitted for set bits; a zero bit would be an
//! identity and is dropped.
//!
//! The block builders (`build_zscneqr`, `build_palqa`) emit, per coefficient:
//! one X on the auxiliary qubit (the connection), one multi-controlled X per
//! set magnitude bit controlled on the aux qubit and the coefficient's
//! position pattern, then a reset of the aux qubit. The aux qubit is |1⟩ on
//! every branch when it is reset, so the reset is deterministic.

use super::{Circuit, Control, Gate, QubitLayout};
use crate::error::{Error, Result};
use crate::image::{GrayImage, BLOCK};
use crate::lsbswap::OnesList;
use crate::transform::SparseCoeff;

fn hadamards(c: &mut Circuit) -> Result<()> {
    let l = c.layout;
    for b in 0..l.x_superposed {
        c.push(Gate::h(l.x_qubit(b)))?;
    }
    for b in 0..l.y_superposed {
        c.push(Gate::h(l.y_qubit(b)))?;
    }
    Ok(())
}

fn pattern(qubit_of: impl Fn(usize) -> usize, bits: usize, value: usize) -> impl Iterator<Item = Control> {
    (0..bits).map(move |b| Control::on(qubit_of(b), (value >> b) & 1 == 1))
}

/// FRQI for a 2×2 image: position `p = 2y + x` gets a doubly controlled
/// `RY(2θ_p)` on the color qubit.
pub fn build_frqi(angles: &[f64]) -> Result<Circuit> {
    if angles.len() != 4 {
        return Err(Error::Invalid(format!("FRQI needs 4 angles, got {}", angles.len())));
    }
    if let Some(a) = angles.iter().find(|a| !(0.0..=std::f64::consts::FRAC_PI_2).contains(*a)) {
        return Err(Error::Invalid(format!("angle {a} outside [0, pi/2]")));
    }
    let l = QubitLayout::FRQI;
    let mut c = Circuit::new(l, "frqi");
    hadamards(&mut c)?;
    for (p, &theta) in angles.iter().enumerate() {
        let controls = vec![Control::on(l.x_qubit(0), p & 1 == 1), Control::on(l.y_qubit(0), p & 2 == 2)];
        c.push(Gate::ry(2.0 * theta, l.value_qubit(0)).with_controls(controls))?;
    }
    Ok(c)
}

/// NEQR for a square power-of-two image up to 8×8.
pub fn build_neqr(img: &GrayImage) -> Result<Circuit> {
    let side = img.width();
    if img.height() != side || !side.is_power_of_two() || side > 8 {
        return Err(Error::Invalid(format!(
            "NEQR needs a square power-of-two image up to 8x8, got {}x{}",
            img.width(),
            img.height()
        )));
    }
    let k = side.trailing_zeros() as usize;
    let l = QubitLayout::neqr(k);
    let mut c = Circuit::new(l, "neqr");
    hadamards(&mut c)?;
    for y in 0..side {
        for x in 0..side {
            let v = img.get(x, y);
            for b in (0..8).filter(|b| v >> b & 1 == 1) {
                let controls = pattern(|i| l.x_qubit(i), k, x).chain(pattern(|i| l.y_qubit(i), k, y)).collect();
                c.push(Gate::mcx(controls, l.value_qubit(b)))?;
            }
        }
    }
    Ok(c)
}

/// Zero-discarded NEQR over full-image positions of the coefficients.
///
/// `width`/`height` are the (block-padded) image dimensions. Each coefficient
/// toggles the aux qubit once; its value gates are controlled on whatever
/// state the aux qubit is in after the toggle, so no reset is needed.
pub fn build_nzneqr(coeffs: &[SparseCoeff], width: usize, height: usize) -> Result<Circuit> {
    if width == 0 || height == 0 || !width.is_multiple_of(BLOCK) || !height.is_multiple_of(BLOCK) {
        return Err(Error::Dimensions(format!("{width}x{height} is not block aligned")));
    }
    let l = QubitLayout::nzneqr(width, height);
    let aux = l.aux_qubit().expect("nzneqr layout has aux");
    let blocks_per_row = width / BLOCK;
    let mut c = Circuit::new(l, "nzneqr");
    hadamards(&mut c)?;
    let mut aux_state = false;
    for co in coeffs {
        let gx = (co.block_index % blocks_per_row) * BLOCK + co.x as usize;
        let gy = (co.block_index / blocks_per_row) * BLOCK + co.y as usize;
        if gx >= width || gy >= height || co.x as usize >= BLOCK || co.y as usize >= BLOCK {
            return Err(Error::Invalid(format!("coefficient {:?} outside {width}x{height}", co.key())));
        }
        c.push(Gate::x(aux))?;
        aux_state = !aux_state;
        for b in (0..8).filter(|b| co.magnitude >> b & 1 == 1) {
            let controls = std::iter::once(Control::on(aux, aux_state))
                .chain(pattern(|i| l.x_qubit(i), l.x_bits, gx))
                .chain(pattern(|i| l.y_qubit(i), l.y_bits, gy))
                .collect();
            c.push(Gate::mcx(controls, l.value_qubit(b)))?;
        }
    }
    Ok(c)
}

fn check_single_block(coeffs: &[SparseCoeff]) -> Result<()> {
    if let Some(first) = coeffs.first() {
        if coeffs.iter().any(|c| c.block_index != first.block_index) {
            return Err(Error::Invalid("block circuit given coefficients from several blocks".into()));
        }
    }
    if let Some(c) = coeffs.iter().find(|c| c.x as usize >= BLOCK || c.y as usize >= BLOCK) {
        return Err(Error::Invalid(format!("position ({}, {}) outside the block", c.x, c.y)));
    }
    Ok(())
}

fn push_coefficient(c: &mut Circuit, magnitude: u8, position: &[Control]) -> Result<()> {
    let aux = c.layout.aux_qubit().expect("block layout has aux");
    c.push(Gate::x(aux))?;
    for b in (0..8).filter(|b| magnitude >> b & 1 == 1) {
        let controls = std::iter::once(Control::pos(aux)).chain(position.iter().copied()).collect();
        c.push(Gate::mcx(controls, c.layout.value_qubit(b)))?;
    }
    c.push(Gate::reset(aux))
}

/// Block-wise zero-discarded state connection circuit with per-coefficient
/// aux reset. Position controls span all 4 + 4 position qubits.
pub fn build_zscneqr(coeffs: &[SparseCoeff]) -> Result<Circuit> {
    check_single_block(coeffs)?;
    let l = QubitLayout::BLOCK;
    let mut c = Circuit::new(l, "zscneqr");
    hadamards(&mut c)?;
    for co in coeffs {
        let position: Vec<Control> = pattern(|i| l.x_qubit(i), l.x_bits, co.x as usize)
            .chain(pattern(|i| l.y_qubit(i), l.y_bits, co.y as usize))
            .collect();
        push_coefficient(&mut c, co.magnitude, &position)?;
    }
    Ok(c)
}

/// Block circuit with the X-position LSB used as the swap qubit.
///
/// Every coefficient's X controls use only the three high X qubits. Only
/// coefficients listed in `ones` (odd column) are additionally connected to
/// the X-LSB qubit; even-column coefficients never touch it. The prepared
/// state therefore holds, on the odd branch of each (x_high, y) pair, the XOR
/// of the even and odd coefficients; see
/// [`crate::simulator::resolve_lsb_swap`] for the inverse.
pub fn build_palqa(coeffs: &[SparseCoeff], x_high: &[u8], ones: &OnesList) -> Result<Circuit> {
    check_single_block(coeffs)?;
    ones.validate()?;
    if x_high.len() != coeffs.len() || ones.total != coeffs.len() {
        return Err(Error::Invalid(format!(
            "{} coefficients, {} high parts, plane of {}",
            coeffs.len(),
            x_high.len(),
            ones.total
        )));
    }
    let l = QubitLayout::BLOCK;
    let mut c = Circuit::new(l, "palqa");
    hadamards(&mut c)?;
    for (i, (co, &high)) in coeffs.iter().zip(x_high).enumerate() {
        let odd = ones.contains(i);
        if (co.x >> 1, co.x & 1 == 1) != (high, odd) {
            return Err(Error::Invalid(format!(
                "coefficient {i} at x={} disagrees with high part {high} / lsb {odd}",
                co.x
            )));
        }
        let position: Vec<Control> = odd
            .then(|| Control::pos(l.x_lsb()))
            .into_iter()
            .chain(pattern(|b| l.x_qubit(b + 1), l.x_bits - 1, high as usize))
            .chain(pattern(|b| l.y_qubit(b), l.y_bits, co.y as usize))
            .collect();
        push_coefficient(&mut c, co.magnitude, &position)?;
    }
    Ok(c)
}
