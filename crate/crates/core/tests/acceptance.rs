//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the lines are always printed. The
//! process exits nonzero if any criterion fails.

use std::f64::consts::{FRAC_PI_2, PI};
use std::time::{Duration, Instant};

use num_complex::Complex64;
use palqa::circuit::{build_frqi, build_neqr, Circuit, Control, Gate, GateKind, QubitLayout};
use palqa::codec::{self, block_circuit, check_circuit, CircuitKind};
use palqa::costmodel::{self, CostModel, GateBudget, Method, SignModel, StateModel};
use palqa::image::{pad_to_blocks, partition, read_pgm, write_pgm, GrayImage, PixelBlock, BLOCK};
use palqa::lsbswap::{encode_ones, join, regenerate, split_lsb, split_positions};
use palqa::payload;
use palqa::simulator::{simulate, DEFAULT_MAX_QUBITS};
use palqa::transform::{dct2, extract_sparse, idct2, quantize, Sign, SparseCoeff};
use palqa::{corpus, rd_sweep};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn random_pixels(rng: &mut ChaCha8Rng) -> PixelBlock {
    PixelBlock::new(std::array::from_fn(|_| rng.gen()), (0, 0))
}

/// Direct double-sum 2-D DCT-II with the −128 level shift.
fn dct_oracle(samples: &[u8; 64]) -> [f64; 64] {
    let alpha = |k: usize| if k == 0 { (0.125f64).sqrt() } else { 0.5 };
    let mut out = [0.0; 64];
    for u in 0..8 {
        for v in 0..8 {
            let mut acc = 0.0;
            for y in 0..8 {
                for x in 0..8 {
                    acc += (samples[y * 8 + x] as f64 - 128.0)
                        * (((2 * y + 1) * u) as f64 * PI / 16.0).cos()
                        * (((2 * x + 1) * v) as f64 * PI / 16.0).cos();
                }
            }
            out[u * 8 + v] = alpha(u) * alpha(v) * acc;
        }
    }
    out
}

fn criterion_1() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let blocks: Vec<PixelBlock> = (0..1000).map(|_| random_pixels(&mut rng)).collect();
    let oracles: Vec<[f64; 64]> = blocks.iter().map(|b| dct_oracle(&b.samples)).collect();
    let t = Instant::now();
    let mut max_err = 0.0f64;
    let mut mismatched = 0;
    for (b, want) in blocks.iter().zip(&oracles) {
        let c = dct2(b);
        for (g, w) in c.0.iter().zip(want) {
            max_err = max_err.max((g - w).abs());
        }
        if idct2(&c, b.origin) != *b {
            mismatched += 1;
        }
    }
    let elapsed = t.elapsed();
    outcome(
        max_err < 1e-9 && mismatched == 0 && elapsed < Duration::from_secs(2),
        format!("max |dct2 - oracle| = {max_err:.2e}, {mismatched} inverse mismatches, {elapsed:.2?}"),
    )
}

fn criterion_2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let inputs: Vec<Vec<u8>> = (0..10_000)
        .map(|_| {
            let len = rng.gen_range(0..=4096);
            (0..len).map(|_| rng.gen_range(0..8)).collect()
        })
        .collect();
    let t = Instant::now();
    let mut mismatches = 0usize;
    for xs in &inputs {
        let (high, plane) = split_positions(xs);
        let ones = encode_ones(&plane);
        let ok = regenerate(&ones).is_ok_and(|p| p == plane)
            && regenerate(&ones).and_then(|p| join(&high, &p)).is_ok_and(|back| &back == xs);
        mismatches += !ok as usize;
    }
    let elapsed = t.elapsed();
    outcome(
        mismatches == 0 && elapsed < Duration::from_secs(1),
        format!("{mismatches} mismatches over 10000 planes, {elapsed:.2?}"),
    )
}

fn basis_index(layout: &QubitLayout, value: usize, x: usize, y: usize) -> usize {
    let mut i = value;
    for b in 0..layout.x_bits {
        i |= ((x >> b) & 1) << layout.x_qubit(b);
    }
    for b in 0..layout.y_bits {
        i |= ((y >> b) & 1) << layout.y_qubit(b);
    }
    i
}

fn criterion_3() -> Outcome {
    let run = || -> palqa::Result<Outcome> {
        let img = GrayImage::new(2, 2, vec![0, 100, 200, 255])?;
        let c = build_neqr(&img)?;
        let s = simulate(&c)?;
        let expected: Vec<(usize, usize)> = [(0, 0b00), (100, 0b01), (200, 0b10), (255, 0b11)]
            .iter()
            .map(|&(v, p)| (basis_index(&c.layout, v, p & 1, p >> 1), v))
            .collect();
        let nonzero: Vec<usize> = (0..s.amplitudes().len()).filter(|&i| s.amplitudes()[i].norm() > 1e-12).collect();
        let mut worst = 0.0f64;
        for &(i, _) in &expected {
            worst = worst.max((s.amplitudes()[i] - Complex64::new(0.5, 0.0)).norm());
        }
        let mut want: Vec<usize> = expected.iter().map(|e| e.0).collect();
        want.sort_unstable();
        Ok(outcome(
            nonzero == want && worst < 1e-12,
            format!("{} nonzero amplitudes, max deviation from 0.5 = {worst:.1e}", nonzero.len()),
        ))
    };
    run().unwrap_or_else(|e| outcome(false, e.to_string()))
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let angles: Vec<f64> = (0..4).map(|_| rng.gen_range(0.0..=FRAC_PI_2)).collect();
        let c = match build_frqi(&angles).and_then(|c| simulate(&c).map(|s| (c, s))) {
            Ok(v) => v,
            Err(e) => return outcome(false, e.to_string()),
        };
        let (c, s) = c;
        let amps = s.amplitudes();
        for (p, &theta) in angles.iter().enumerate() {
            let base = basis_index(&c.layout, 0, p & 1, p >> 1);
            let one = base | (1 << c.layout.value_qubit(0));
            worst = worst.max((amps[base] - Complex64::new(0.5 * theta.cos(), 0.0)).norm());
            worst = worst.max((amps[one] - Complex64::new(0.5 * theta.sin(), 0.0)).norm());
        }
        worst = worst.max((s.norm_sqr() - 1.0).abs());
    }
    outcome(worst < 1e-12, format!("max amplitude error {worst:.1e} over 100 angle vectors"))
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut failures = Vec::new();
    let mut worst_spread = 0.0f64;
    let mut sims = 0;
    for i in 0..100 {
        // mix of noise and smooth blocks so coefficient counts vary widely
        let smooth = i % 2 == 0;
        let (a0, gx, gy) = (rng.gen_range(0.0..255.0), rng.gen_range(-30.0..30.0), rng.gen_range(-30.0..30.0));
        let img = GrayImage::from_fn(8, 8, |x, y| {
            if smooth {
                (a0 + gx * x as f64 / 8.0 + gy * y as f64 / 8.0 + rng.gen_range(-6.0..6.0)).clamp(0.0, 255.0) as u8
            } else {
                rng.gen()
            }
        })
        .expect("8x8");
        for q in [8, 16] {
            let a = codec::analyze(&img, q).expect("analyze");
            let expected = a.blocks[0];
            let signs: Vec<Sign> = a.coeffs.iter().map(|c| c.sign).collect();
            for kind in [CircuitKind::Zscneqr, CircuitKind::Palqa] {
                let c = block_circuit(&a, 0, kind).expect("circuit");
                let check = check_circuit(&c, kind, &signs, &expected, DEFAULT_MAX_QUBITS);
                sims += 1;
                worst_spread = worst_spread.max(check.magnitude_spread);
                if !(check.matches && check.magnitude_spread < 1e-10) {
                    failures.push(format!("image {i} Q={q} {kind:?}"));
                }
            }
        }
    }
    outcome(
        failures.is_empty(),
        format!("{sims} simulations, max amplitude spread {worst_spread:.1e}, failures {failures:?}"),
    )
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut bad = Vec::new();
    for i in 0..50 {
        let (w, h) = (rng.gen_range(1..=64), rng.gen_range(1..=64));
        let img = if i % 2 == 0 {
            GrayImage::from_fn(w, h, |_, _| rng.gen()).expect("size")
        } else {
            corpus::natural(w, h, rng.gen())
        };
        for q in [8, 16, 32] {
            let same = codec::encode(&img, q)
                .and_then(|e| codec::decode(&e.payload))
                .and_then(|d| codec::reference_reconstruction(&img, q).map(|r| r == d));
            if !matches!(same, Ok(true)) {
                bad.push(format!("{w}x{h} Q={q}"));
            }
        }
    }
    outcome(bad.is_empty(), format!("150 encode/decode runs, mismatches {bad:?}"))
}

fn criterion_7() -> Outcome {
    let (_, img) = corpus::bundled().into_iter().find(|(n, _)| *n == "natural256").expect("bundled");
    let qs = [8, 16, 32, 70, 90];
    let pts = match rd_sweep(&img, &qs, &[Method::Nzneqr, Method::Palqa], CostModel::default()) {
        Ok(p) => p,
        Err(e) => return outcome(false, e.to_string()),
    };
    let row = |m, q| pts.iter().find(|p| p.method == m && p.q == q).expect("row");
    let mut dominance = true;
    for &q in &qs {
        let (p, n) = (row(Method::Palqa, q), row(Method::Nzneqr, q));
        dominance &= p.psnr_db.to_bits() == n.psnr_db.to_bits() && p.gpp < n.gpp;
    }
    let ratio = row(Method::Palqa, 8).gpp / row(Method::Nzneqr, 8).gpp;
    let ratios: Vec<String> =
        qs.iter().map(|&q| format!("{q}:{:.3}", row(Method::Palqa, q).gpp / row(Method::Nzneqr, q).gpp)).collect();
    outcome(
        dominance && ratio < 0.5,
        format!(
            "equal PSNR and lower gpp at every Q: {dominance}; gpp ratio at Q=8 = {ratio:.3} (required < 0.5); ratios {}",
            ratios.join(" ")
        ),
    )
}

fn criterion_8() -> Outcome {
    let qs = [8, 16, 32, 60, 90, 120];
    let mut notes = Vec::new();
    let mut pass = true;
    for (name, img) in corpus::bundled() {
        let pts = match rd_sweep(&img, &qs, &[Method::Palqa], CostModel::default()) {
            Ok(p) => p,
            Err(e) => return outcome(false, e.to_string()),
        };
        let gpp_ok = pts.windows(2).all(|w| w[1].gpp <= w[0].gpp);
        let psnr_ok = pts.windows(2).all(|w| w[1].psnr_db <= w[0].psnr_db);
        pass &= gpp_ok && psnr_ok;
        notes.push(format!(
            "{name}: gpp {:.3}->{:.3} psnr {:.2}->{:.2} monotone={}",
            pts[0].gpp,
            pts[pts.len() - 1].gpp,
            pts[0].psnr_db,
            pts[pts.len() - 1].psnr_db,
            gpp_ok && psnr_ok
        ));
    }
    outcome(pass, notes.join("; "))
}

fn random_coeffs(rng: &mut ChaCha8Rng, nblocks: usize) -> Vec<SparseCoeff> {
    let p = rng.gen_range(0.0..0.6);
    let mut cs = Vec::new();
    for b in 0..nblocks {
        for y in 0..8u8 {
            for x in 0..8u8 {
                if rng.gen_bool(p) {
                    let sign = if rng.gen() { Sign::Negative } else { Sign::Positive };
                    cs.push(SparseCoeff { block_index: b, y, x, sign, magnitude: rng.gen_range(1..=255) });
                }
            }
        }
    }
    cs
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let models = [
        CostModel { state: StateModel::Adopted, sign: SignModel::PerCoefficient },
        CostModel { state: StateModel::Literal, sign: SignModel::PerCoefficient },
        CostModel { state: StateModel::Adopted, sign: SignModel::NegativeOnly },
        CostModel { state: StateModel::Literal, sign: SignModel::NegativeOnly },
    ];
    let mut broken = 0;
    for _ in 0..1000 {
        let grid = (rng.gen_range(1..6), rng.gen_range(1..6));
        let cs = random_coeffs(&mut rng, grid.0 * grid.1);
        let (_, plane) = split_lsb(&cs);
        let ones = encode_ones(&plane);
        let pixels = (grid.0 * grid.1 * 64) as u64;
        for m in models {
            let b = costmodel::count_b_total(&cs, &ones, &QubitLayout::BLOCK, grid, pixels, m);
            let sum = b.q_ones + b.b_state + b.b_sign + b.b_aux + b.b_gpp;
            broken += !(b.is_additive() && b.b_total == sum) as usize;
            let n = costmodel::nzneqr_budget(&cs, grid.0 * 8, grid.1 * 8, pixels, m);
            broken += !n.is_additive() as usize;
        }
    }
    let one = [SparseCoeff { block_index: 0, y: 0, x: 0, sign: Sign::Positive, magnitude: 1 }];
    let (_, plane) = split_lsb(&one);
    let b: GateBudget =
        costmodel::count_b_total(&one, &encode_ones(&plane), &QubitLayout::BLOCK, (1, 1), 64, CostModel::default());
    let example = b.b_total == 11 && b.gpp().ok() == Some(11.0 / 64.0);
    outcome(
        broken == 0 && example,
        format!("{broken} non-additive budgets over 8000; single-coefficient example b_total={} gpp={:?}", b.b_total, b.gpp()),
    )
}

fn random_circuit(rng: &mut ChaCha8Rng) -> Circuit {
    let n = rng.gen_range(1..24);
    let mut c = Circuit::new(QubitLayout::opaque(n), "");
    for _ in 0..rng.gen_range(0..50) {
        let target = rng.gen_range(0..n);
        let mut controls = Vec::new();
        for q in (0..n).filter(|&q| q != target) {
            if rng.gen_bool(0.2) {
                controls.push(Control::on(q, rng.gen()));
            }
        }
        let kind = match rng.gen_range(0..4) {
            0 => GateKind::H,
            1 => GateKind::X,
            2 => GateKind::Ry(rng.gen_range(-10.0..10.0) * rng.gen::<f64>().powi(rng.gen_range(1..8))),
            _ => {
                controls.clear();
                GateKind::Reset
            }
        };
        c.push(Gate { kind, target, controls }).expect("valid gate");
    }
    c
}

fn criterion_10() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut failures = [0usize; 3];
    for _ in 0..1000 {
        // payload
        let (w, h) = (rng.gen_range(1..120), rng.gen_range(1..120));
        let img = GrayImage::from_fn(w, h, |_, _| rng.gen()).expect("size");
        let padded = pad_to_blocks(&img, BLOCK);
        let q = rng.gen_range(1..200);
        let blocks: Vec<_> = partition(&padded)
            .expect("padded")
            .iter()
            .map(|b| quantize(&dct2(b), q).expect("q >= 1"))
            .collect();
        let (cs, _) = extract_sparse(&blocks);
        let (high, plane) = split_lsb(&cs);
        let ones = encode_ones(&plane);
        let ok = payload::serialize(&cs, &high, &ones, (w, h), q).and_then(|bytes| {
            let d = payload::deserialize(&bytes)?;
            let back_plane = regenerate(&d.ones)?;
            let xs = join(&d.records.iter().map(|r| r.x_high).collect::<Vec<_>>(), &back_plane)?;
            let back: Vec<SparseCoeff> = d
                .records
                .iter()
                .zip(xs)
                .map(|(r, x)| SparseCoeff { block_index: r.block_index, y: r.y, x, sign: r.sign, magnitude: r.magnitude })
                .collect();
            let again = payload::serialize(&back, &high, &d.ones, (w, h), q)?;
            Ok(back == cs && again == bytes && d.header.q as u32 == q)
        });
        failures[0] += !matches!(ok, Ok(true)) as usize;

        // PGM
        let bytes = write_pgm(&img);
        let ok = read_pgm(&bytes).is_ok_and(|back| back == img && write_pgm(&back) == bytes);
        failures[1] += !ok as usize;

        // circuit text
        let c = random_circuit(&mut rng);
        let text = c.export_text();
        let ok = Circuit::from_text(&text, c.layout, c.label.clone())
            .is_ok_and(|back| back.gates() == c.gates() && back.export_text() == text);
        failures[2] += !ok as usize;
    }
    outcome(
        failures == [0, 0, 0],
        format!("failures: payload {}, pgm {}, circuit {} (1000 each)", failures[0], failures[1], failures[2]),
    )
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("DCT fidelity", criterion_1),
        ("LSB-swap losslessness", criterion_2),
        ("NEQR 2x2 state", criterion_3),
        ("FRQI closed form", criterion_4),
        ("block preparation and reconstruction", criterion_5),
        ("quantum-stage transparency", criterion_6),
        ("RD dominance over NZ-NEQR", criterion_7),
        ("RD monotonicity", criterion_8),
        ("cost-model arithmetic", criterion_9),
        ("format round-trips", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let o = f();
        failed += !o.pass as usize;
        println!(
            "criterion {:>2} {:<38} {}  [{:.2?}] {}",
            i + 1,
            name,
            if o.pass { "PASS" } else { "FAIL" },
            t.elapsed(),
            o.detail
        );
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
