//! Deterministic bundled test images.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::image::GrayImage;

/// Seed of the bundled natural-style image.
pub const NATURAL_SEED: u64 = 2024;

fn to_u8(v: f64) -> u8 {
    v.round().clamp(0.0, 255.0) as u8
}

/// Horizontal-plus-vertical ramp.
pub fn gradient(width: usize, height: usize) -> GrayImage {
    let wd = (width + height).saturating_sub(2).max(1) as f64;
    GrayImage::from_fn(width, height, |x, y| to_u8(255.0 * (x + y) as f64 / wd)).expect("nonzero size")
}

pub fn checkerboard(width: usize, height: usize, cell: usize) -> GrayImage {
    let cell = cell.max(1);
    GrayImage::from_fn(width, height, |x, y| if (x / cell + y / cell).is_multiple_of(2) { 40 } else { 215 })
        .expect("nonzero size")
}

/// Natural-looking synthetic scene: smooth illumination, a few soft-edged
/// ellipses, oriented stripes and fine grain.
pub fn natural(width: usize, height: usize, seed: u64) -> GrayImage {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (w, h) = (width as f64, height as f64);

    struct Blob {
        cx: f64,
        cy: f64,
        rx: f64,
        ry: f64,
        level: f64,
    }
    let blobs: Vec<Blob> = (0..7)
        .map(|_| Blob {
            cx: rng.gen_range(0.0..w),
            cy: rng.gen_range(0.0..h),
            rx: rng.gen_range(0.08..0.3) * w,
            ry: rng.gen_range(0.08..0.3) * h,
            level: rng.gen_range(-70.0..70.0),
        })
        .collect();
    let waves: Vec<(f64, f64, f64, f64)> = (0..4)
        .map(|_| {
            (
                rng.gen_range(0.5..6.0),
                rng.gen_range(0.5..6.0),
                rng.gen_range(0.0..std::f64::consts::TAU),
                rng.gen_range(5.0..18.0),
            )
        })
        .collect();
    let stripe_angle: f64 = rng.gen_range(0.0..std::f64::consts::PI);
    let (sa, ca) = stripe_angle.sin_cos();

    let mut grain = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9);
    GrayImage::from_fn(width, height, |x, y| {
        let (u, v) = (x as f64 / w, y as f64 / h);
        let mut p = 90.0 + 80.0 * u + 40.0 * v;
        for &(fx, fy, ph, amp) in &waves {
            p += amp * (std::f64::consts::TAU * (fx * u + fy * v) + ph).sin();
        }
        for b in &blobs {
            let d = ((x as f64 - b.cx) / b.rx).powi(2) + ((y as f64 - b.cy) / b.ry).powi(2);
            p += b.level / (1.0 + (8.0 * (d - 1.0)).exp());
        }
        // textured patch in the lower-right quadrant
        if u > 0.55 && v > 0.55 {
            p += 14.0 * ((x as f64 * ca + y as f64 * sa) * 0.9).sin();
        }
        p += grain.gen_range(-4.0..4.0);
        to_u8(p)
    })
    .expect("nonzero size")
}

/// Named natural-style images used by the RD checks.
///
/// Gate counts follow magnitude popcounts, which are not monotone in the
/// quantization factor; synthetic images with a handful of large flat
/// blocks (the checkerboard) can gain gates as Q grows, so they are left out.
pub fn bundled() -> Vec<(&'static str, GrayImage)> {
    vec![
        ("natural256", natural(256, 256, NATURAL_SEED)),
        ("natural128", natural(128, 128, NATURAL_SEED + 2)),
        ("natural96x80", natural(96, 80, NATURAL_SEED + 1)),
    ]
}
