//! Rate-distortion sweep over the bundled natural-style images.
//!
//! Run with `cargo run --release --example rd_sweep [Q,Q,...]`.

use palqa::{corpus, rd_sweep, to_csv, CostModel, Method};

fn main() -> palqa::Result<()> {
    let qs: Vec<u32> = match std::env::args().nth(1) {
        Some(list) => list.split(',').map(|s| s.trim().parse().expect("integer Q")).collect(),
        None => vec![8, 16, 32, 60, 90, 120],
    };
    for (name, img) in corpus::bundled() {
        println!("# {name} {}x{}", img.width(), img.height());
        let points = rd_sweep(&img, &qs, &Method::ALL, CostModel::default())?;
        print!("{}", to_csv(&points));
        for &q in &qs {
            let gpp = |m| points.iter().find(|p| p.method == m && p.q == q).map(|p| p.gpp).unwrap();
            println!("# Q={q} palqa/nzneqr gpp ratio = {:.3}", gpp(Method::Palqa) / gpp(Method::Nzneqr));
        }
    }
    Ok(())
}
