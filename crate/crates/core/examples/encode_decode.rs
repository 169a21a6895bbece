//! Encode an image to a payload, decode it back and report budget and PSNR.
//!
//! `cargo run --example encode_decode [image.pgm] [Q]`; without arguments a
//! bundled natural-style image is used.

use palqa::{codec, corpus, image, EncodeOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let img = match args.next() {
        Some(path) => image::read_pgm(&std::fs::read(path)?)?,
        None => corpus::natural(128, 96, corpus::NATURAL_SEED),
    };
    let q: u32 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(16);

    let enc = codec::encode_with(&img, q, &EncodeOptions { build_circuits: true, ..Default::default() })?;
    let back = codec::decode(&enc.payload)?;
    assert_eq!(back, codec::reference_reconstruction(&img, q)?);

    let b = enc.budget;
    println!("image {}x{}, Q={q}", img.width(), img.height());
    println!("nonzero coefficients {}, odd columns {}", enc.diagnostics.tc_nz, enc.diagnostics.ones);
    println!(
        "gates: q_ones={} b_state={} b_sign={} b_aux={} b_gpp={} total={} ({:.4} gpp)",
        b.q_ones,
        b.b_state,
        b.b_sign,
        b.b_aux,
        b.b_gpp,
        b.b_total,
        enc.gpp()
    );
    if let Some(c) = enc.circuits {
        println!("block circuits: {} gates, {} mcx, {} resets", c.total(), c.mcx, c.reset);
    }
    println!(
        "payload {} bytes ({:.4} bpp), PSNR {:.3} dB",
        enc.payload.len(),
        palqa::payload::bpp(enc.payload.len(), img.width(), img.height()),
        image::psnr(&img, &back)?
    );
    Ok(())
}
