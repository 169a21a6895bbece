//! Simulate one block's circuits and check them against the quantized block,
//! then repeat with a tampered circuit.
//!
//! Uses a 17-qubit dense statevector; build with `--release`.

use palqa::codec::{analyze, verify_block};
use palqa::{corpus, simulator};

fn main() -> palqa::Result<()> {
    let img = corpus::natural(64, 64, corpus::NATURAL_SEED);
    let a = analyze(&img, 8)?;
    let cap = simulator::max_qubits_from_env();
    let block = 9;
    print!("{}", verify_block(&a, block, false, cap)?.render());
    println!("-- with one extra X gate --");
    print!("{}", verify_block(&a, block, true, cap)?.render());
    Ok(())
}
