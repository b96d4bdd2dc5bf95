//! Seeded random draws shared by the sampled validators and the test kit.
//!
//! Each draw stream is addressed by `(seed, stream)`, so any sample can be
//! regenerated independently of evaluation order.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

/// Coordinates on the lattice `k / 16`, `|k| <= 64`. Sums, negations and
/// products with small dyadic weights stay exact in binary floating point.
pub fn lattice_vector(rng: &mut impl Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(-64i32..=64) as f64 / 16.0).collect()
}

/// Nonzero lattice vector.
pub fn nonzero_lattice_vector(rng: &mut impl Rng, n: usize) -> Vec<f64> {
    loop {
        let v = lattice_vector(rng, n);
        if v.iter().any(|&c| c != 0.0) {
            return v;
        }
    }
}

/// Nonzero dyadic scalar `m / 4`, `|m| <= 16`.
pub fn lattice_scalar(rng: &mut impl Rng) -> f64 {
    loop {
        let m = rng.gen_range(-16i32..=16);
        if m != 0 {
            return m as f64 / 4.0;
        }
    }
}

/// A random nonzero direction. Three shapes alternate by `mode`: uniform in
/// the cube, sparse (log-normal magnitudes, concentrating on one
/// coordinate), and near-diagonal (all magnitudes close to 1). Together they
/// reach the vertices of both cross-polytope and cube shaped unit balls.
pub fn direction(rng: &mut impl Rng, n: usize, mode: u64) -> Vec<f64> {
    loop {
        let d: Vec<f64> = (0..n)
            .map(|_| {
                let sign = if rng.gen::<bool>() { 1.0 } else { -1.0 };
                match mode % 3 {
                    0 => rng.gen_range(-1.0..=1.0),
                    1 => {
                        let g: f64 = rng.sample(StandardNormal);
                        sign * (4.0 * g).exp()
                    }
                    _ => sign * (1.0 - 0.02 * rng.gen::<f64>()),
                }
            })
            .collect();
        if d.iter().any(|c| *c != 0.0 && c.is_finite()) && d.iter().all(|c| c.is_finite()) {
            return d;
        }
    }
}
