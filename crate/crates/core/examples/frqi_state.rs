//! FRQI state of a 2×2 image: cos/sin amplitude pairs per position.

use palqa::circuit::build_frqi;
use palqa::simulator::simulate;

fn main() -> palqa::Result<()> {
    let pixels = [0u8, 64, 128, 255];
    let angles: Vec<f64> = pixels.iter().map(|&p| p as f64 / 255.0 * std::f64::consts::FRAC_PI_2).collect();
    let c = build_frqi(&angles)?;
    let state = simulate(&c)?;
    let amps = state.amplitudes();
    for (p, theta) in angles.iter().enumerate() {
        // colour qubit is qubit 0, position above it
        let (c0, c1) = (amps[p << 1], amps[(p << 1) | 1]);
        println!(
            "position {p}: theta={theta:.4}  cos-branch {:.6} (expect {:.6})  sin-branch {:.6} (expect {:.6})",
            c0.re,
            0.5 * theta.cos(),
            c1.re,
            0.5 * theta.sin()
        );
    }
    Ok(())
}
