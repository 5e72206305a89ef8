//! Seeded generators for random hermitian matrices, pencils, unit vectors
//! and directions. Shared by the duality sampler, tests and benchmarks.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::linalg::HermitianMatrix;
use crate::pencil::Pencil;

/// Random hermitian matrix with entries of order one.
pub fn hermitian(rng: &mut impl Rng, d: usize) -> HermitianMatrix {
    let entries: Vec<Complex64> = (0..d * d)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    HermitianMatrix::symmetrized(d, entries)
}

/// Random pencil of `k` hermitian coefficient matrices of order `d`.
pub fn pencil(rng: &mut impl Rng, d: usize, k: usize) -> Pencil {
    Pencil::new((0..k).map(|_| hermitian(rng, d)).collect()).expect("k >= 1")
}

/// Haar-ish random unit vector in `C^d` (normalized complex gaussian).
pub fn unit_vector(rng: &mut impl Rng, d: usize) -> Vec<Complex64> {
    loop {
        let v: Vec<Complex64> = (0..d)
            .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-6 {
            return v.into_iter().map(|z| z / norm).collect();
        }
    }
}

/// Uniform random unit direction in `R^k` (normalized gaussian).
pub fn unit_direction(rng: &mut impl Rng, k: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..k).map(|_| rng.sample(StandardNormal)).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-6 {
            return v.into_iter().map(|x| x / norm).collect();
        }
    }
}

/// Random unitary with orthonormal columns, row-major `u[i*d + j]`.
/// Gram-Schmidt on a complex gaussian matrix.
pub fn unitary(rng: &mut impl Rng, d: usize) -> Vec<Complex64> {
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(d);
    while cols.len() < d {
        let mut v: Vec<Complex64> = (0..d)
            .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        for prev in &cols {
            let proj: Complex64 = prev.iter().zip(&v).map(|(p, x)| p.conj() * x).sum();
            for (x, p) in v.iter_mut().zip(prev) {
                *x -= proj * p;
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-6 {
            for x in v.iter_mut() {
                *x /= norm;
            }
            cols.push(v);
        }
    }
    let mut u = vec![Complex64::new(0.0, 0.0); d * d];
    for (j, col) in cols.iter().enumerate() {
        for i in 0..d {
            u[i * d + j] = col[i];
        }
    }
    u
}
