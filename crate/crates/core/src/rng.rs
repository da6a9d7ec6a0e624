//! Seeded random streams.
//!
//! Every random draw in the crate goes through [`stream`], which maps a
//! `(seed, tag)` pair onto an independent ChaCha8 stream: the seed fixes the
//! 256-bit key (via `seed_from_u64`) and the FNV-1a hash of the tag selects
//! the 64-bit stream id. Two call sites with different tags never share
//! random numbers, and the mapping is identical on every platform.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub type Stream = ChaCha8Rng;

/// FNV-1a, 64 bit.
pub fn tag_hash(tag: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in tag.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

pub fn stream(seed: u64, tag: &str) -> Stream {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(tag_hash(tag));
    rng
}

/// Standard complex normal: real and imaginary parts each N(0, 1/2).
pub fn complex_normal<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> DMatrix<Complex64> {
    // column-major fill order so the draw sequence is fixed
    DMatrix::from_fn(rows, cols, |_, _| complex_normal(rng))
}

/// `cols` orthonormal columns in C^rows, Haar distributed.
pub fn orthonormal_columns<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> DMatrix<Complex64> {
    assert!(cols <= rows, "cannot fit {cols} orthonormal columns in dimension {rows}");
    let g = complex_gaussian(rng, rows, cols);
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    // fix the phase of each column so the distribution is Haar
    for j in 0..cols {
        let d = r[(j, j)];
        let n = d.norm();
        if n > 0.0 {
            let phase = d / n;
            for i in 0..rows {
                q[(i, j)] *= phase;
            }
        }
    }
    q
}

pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> DMatrix<Complex64> {
    orthonormal_columns(rng, n, n)
}
