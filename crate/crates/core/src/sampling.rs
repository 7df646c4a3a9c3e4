//! Deterministic sample-point generation (SplitMix64 underneath), so that
//! verification sweeps are reproducible for a given seed.

use num_complex::Complex64;

#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in [0, 1).
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }
}

/// `count` points in the square [-radius, radius]^2.
pub fn sample_points(seed: u64, count: usize, radius: f64) -> Vec<Complex64> {
    let mut rng = SplitMix64::new(seed);
    (0..count)
        .map(|_| {
            let re = (2.0 * rng.next_f64() - 1.0) * radius;
            let im = (2.0 * rng.next_f64() - 1.0) * radius;
            Complex64::new(re, im)
        })
        .collect()
}

/// A rectangular nx-by-ny grid covering [re0, re1] x [im0, im1].
pub fn grid_points(re0: f64, re1: f64, im0: f64, im1: f64, nx: usize, ny: usize) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(nx * ny);
    for j in 0..ny {
        for i in 0..nx {
            let fr = if nx > 1 { i as f64 / (nx - 1) as f64 } else { 0.5 };
            let fi = if ny > 1 { j as f64 / (ny - 1) as f64 } else { 0.5 };
            out.push(Complex64::new(re0 + fr * (re1 - re0), im0 + fi * (im1 - im0)));
        }
    }
    out
}
