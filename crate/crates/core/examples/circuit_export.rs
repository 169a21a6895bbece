//! Export one block's ZSCNEQR and PALQA circuits as text and parse them back.

use palqa::circuit::{Circuit, QubitLayout};
use palqa::codec::{analyze, block_circuit, CircuitKind};
use palqa::corpus;

fn main() -> palqa::Result<()> {
    let img = corpus::natural(32, 32, corpus::NATURAL_SEED);
    let a = analyze(&img, 16)?;
    let block = 5;
    for kind in [CircuitKind::Zscneqr, CircuitKind::Palqa] {
        let c = block_circuit(&a, block, kind)?;
        let text = c.export_text();
        let back = Circuit::from_text(&text, QubitLayout::BLOCK, c.label.clone())?;
        assert_eq!(back.gates(), c.gates());
        let lsb = c.layout.x_lsb();
        println!("== {kind:?}: {} gates, q{lsb} touched {} times", c.len(), c.touch_count(lsb));
        print!("{text}");
    }
    Ok(())
}
