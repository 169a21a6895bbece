//! Prepare and simulate the NEQR state of a 2×2 image.

use palqa::circuit::build_neqr;
use palqa::simulator::{decode_state, simulate};
use palqa::GrayImage;

fn main() -> palqa::Result<()> {
    let img = GrayImage::new(2, 2, vec![0, 100, 200, 255])?;
    let c = build_neqr(&img)?;
    println!("{} qubits, {} gates", c.n_qubits(), c.len());
    let state = simulate(&c)?;
    for e in decode_state(&state, &c.layout) {
        println!("|{:3}> |y={} x={}>  amplitude {:.6}", e.value, e.y, e.x, e.amplitude);
    }
    Ok(())
}
