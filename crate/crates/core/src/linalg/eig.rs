//! Cyclic complex Jacobi eigensolver for hermitian matrices.
//!
//! Each rotation annihilates one off-diagonal entry with a unitary plane
//! rotation; the off-diagonal mass decays quadratically across sweeps.
//! Backward stable and self-contained, adequate for the desk-scale orders
//! (d <= ~50) this crate works at.

use num_complex::Complex64;
use std::ops::Range;

use super::HermitianMatrix;
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 100;
/// Convergence: off-diagonal Frobenius mass below `1e-14 * ||H||_F`.
const OFF_DIAG_TOL: f64 = 1e-14;

/// Ascending eigenvalues with orthonormal eigenvectors.
///
/// The phase of every eigenvector is fixed so that its largest-magnitude
/// component is real and positive (ties broken by lowest index), which
/// makes the decomposition deterministic for a fixed input.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    eigenvalues: Vec<f64>,
    /// `vectors[j]` is the unit eigenvector for `eigenvalues[j]`.
    vectors: Vec<Vec<Complex64>>,
}

impl EigenDecomposition {
    pub fn order(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenvalue(&self, j: usize) -> f64 {
        self.eigenvalues[j]
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn max_eigenvalue(&self) -> f64 {
        *self.eigenvalues.last().unwrap()
    }

    pub fn vector(&self, j: usize) -> &[Complex64] {
        &self.vectors[j]
    }
}

/// Diagonalizes a hermitian matrix with cyclic Jacobi rotations.
///
/// Errors with [`Error::NoConvergence`] if the off-diagonal mass has not
/// dropped below the threshold after the sweep cap; it never returns a
/// silently inaccurate decomposition.
pub fn eig_hermitian(h: &HermitianMatrix) -> Result<EigenDecomposition> {
    let d = h.order();
    let mut a: Vec<Complex64> = h.entries().to_vec();
    // Accumulated eigenvectors, column-major: column j at q[j*d..(j+1)*d].
    let mut q = vec![Complex64::new(0.0, 0.0); d * d];
    for i in 0..d {
        q[i * d + i] = Complex64::new(1.0, 0.0);
    }

    let tol = OFF_DIAG_TOL * h.fro_norm();
    if d > 1 {
        let mut sweeps = 0;
        loop {
            let off = off_diag_norm(&a, d);
            if off <= tol {
                break;
            }
            if sweeps == MAX_SWEEPS {
                return Err(Error::NoConvergence {
                    sweeps: MAX_SWEEPS,
                    off,
                });
            }
            for p in 0..d - 1 {
                for r in p + 1..d {
                    rotate(&mut a, &mut q, d, p, r);
                }
            }
            sweeps += 1;
        }
    }

    // Sort ascending; ties keep the lower pre-sort index first.
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&i, &j| a[i * d + i].re.total_cmp(&a[j * d + j].re).then(i.cmp(&j)));

    let eigenvalues: Vec<f64> = order.iter().map(|&i| a[i * d + i].re).collect();
    let vectors: Vec<Vec<Complex64>> = order
        .iter()
        .map(|&i| {
            let mut col = q[i * d..(i + 1) * d].to_vec();
            fix_phase(&mut col);
            col
        })
        .collect();

    Ok(EigenDecomposition {
        eigenvalues,
        vectors,
    })
}

/// One unitary Jacobi rotation annihilating `a[p][r]` (p < r), with the
/// eigenvector product accumulated in `q`. Hermiticity is maintained
/// exactly by mirroring the touched entries.
fn rotate(a: &mut [Complex64], q: &mut [Complex64], d: usize, p: usize, r: usize) {
    let apr = a[p * d + r];
    let mag = apr.norm();
    if mag == 0.0 {
        return;
    }
    let phase = apr / mag; // e^{i arg}
    let app = a[p * d + p].re;
    let arr = a[r * d + r].re;
    let tau = (arr - app) / (2.0 * mag);
    // Smaller root of t^2 + 2 tau t - 1 = 0.
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let sp = s * phase.conj();
    let cp = c * phase.conj();

    for i in 0..d {
        if i == p || i == r {
            continue;
        }
        let aip = a[i * d + p];
        let air = a[i * d + r];
        let new_ip = c * aip - sp * air;
        let new_ir = s * aip + cp * air;
        a[i * d + p] = new_ip;
        a[p * d + i] = new_ip.conj();
        a[i * d + r] = new_ir;
        a[r * d + i] = new_ir.conj();
    }
    a[p * d + p] = Complex64::new(app - t * mag, 0.0);
    a[r * d + r] = Complex64::new(arr + t * mag, 0.0);
    a[p * d + r] = Complex64::new(0.0, 0.0);
    a[r * d + p] = Complex64::new(0.0, 0.0);

    let (qp, qr) = split_columns(q, d, p, r);
    for (zp, zr) in qp.iter_mut().zip(qr.iter_mut()) {
        let vp = *zp;
        let vr = *zr;
        *zp = c * vp - sp * vr;
        *zr = s * vp + cp * vr;
    }
}

fn split_columns(
    q: &mut [Complex64],
    d: usize,
    p: usize,
    r: usize,
) -> (&mut [Complex64], &mut [Complex64]) {
    debug_assert!(p < r);
    let (head, tail) = q.split_at_mut(r * d);
    (&mut head[p * d..(p + 1) * d], &mut tail[..d])
}

fn off_diag_norm(a: &[Complex64], d: usize) -> f64 {
    let mut sum = 0.0;
    for i in 0..d {
        for j in i + 1..d {
            sum += a[i * d + j].norm_sqr();
        }
    }
    (2.0 * sum).sqrt()
}

/// Largest-magnitude component made real positive; ties broken by lowest
/// index.
fn fix_phase(col: &mut [Complex64]) {
    let mut best = 0;
    let mut best_norm = col[0].norm_sqr();
    for (i, z) in col.iter().enumerate().skip(1) {
        let n = z.norm_sqr();
        if n > best_norm {
            best = i;
            best_norm = n;
        }
    }
    let z = col[best];
    let mag = z.norm();
    if mag == 0.0 {
        return;
    }
    let rot = z.conj() / mag;
    for elem in col.iter_mut() {
        *elem *= rot;
    }
}

/// Gap below which adjacent eigenvalues of `m` count as degenerate:
/// `1e-8 * (1 + ||m||_F)`.
pub fn degeneracy_gap(m: &HermitianMatrix) -> f64 {
    1e-8 * (1.0 + m.fro_norm())
}

/// Compression `C[l][m] = <basis[l], B basis[m]>` of `b` onto the span of
/// orthonormal vectors; symmetrized so the result is exactly hermitian.
pub fn compression(b: &HermitianMatrix, basis: &[&[Complex64]]) -> HermitianMatrix {
    let c = basis.len();
    let images: Vec<Vec<Complex64>> = basis.iter().map(|v| b.apply(v)).collect();
    let mut data = vec![Complex64::new(0.0, 0.0); c * c];
    for (l, left) in basis.iter().enumerate() {
        for (m, image) in images.iter().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for (x, y) in left.iter().zip(image) {
                acc += x.conj() * y;
            }
            data[l * c + m] = acc;
        }
    }
    HermitianMatrix::symmetrized(c, data)
}

/// Splits ascending eigenvalues into clusters: adjacent values closer than
/// `gap` belong to the same cluster.
pub fn cluster_ranges(sorted: &[f64], gap: f64) -> Vec<Range<usize>> {
    let mut ranges = Vec::new();
    if sorted.is_empty() {
        return ranges;
    }
    let mut start = 0;
    for j in 1..sorted.len() {
        if sorted[j] - sorted[j - 1] >= gap {
            ranges.push(start..j);
            start = j;
        }
    }
    ranges.push(start..sorted.len());
    ranges
}

/// Linear combination `sum_l w[l] * basis[l]` of orthonormal columns;
/// lifts an eigenvector of a compressed matrix back to the full space.
pub fn lift(basis: &[&[Complex64]], w: &[Complex64]) -> Vec<Complex64> {
    assert_eq!(basis.len(), w.len());
    let d = basis[0].len();
    let mut out = vec![Complex64::new(0.0, 0.0); d];
    for (coeff, col) in w.iter().zip(basis) {
        for (acc, z) in out.iter_mut().zip(col.iter()) {
            *acc += coeff * z;
        }
    }
    out
}
