//! Dense complex linear algebra for hermitian matrices: construction,
//! determinants, characteristic polynomials and the Jacobi eigensolver.

pub use num_complex::Complex64;

use crate::error::{Error, Result};

mod eig;

pub use eig::{
    cluster_ranges, compression, degeneracy_gap, eig_hermitian, lift, EigenDecomposition,
};

/// Relative asymmetry tolerated by [`HermitianMatrix::new`].
pub const HERMITIAN_TOL: f64 = 1e-12;

/// A complex `d x d` matrix with `A = A*`, stored exactly hermitian.
///
/// Construction symmetrizes the input to `(A + A*)/2`, which removes
/// roundoff asymmetry at the source. Real linear combinations of
/// hermitian matrices stay exactly hermitian in floating point, so all
/// derived matrices keep the invariant without re-checking.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    d: usize,
    /// Row-major entries, `data[i * d + j]`.
    data: Vec<Complex64>,
}

impl HermitianMatrix {
    /// Builds a hermitian matrix from row-major entries, rejecting inputs
    /// whose asymmetry exceeds `HERMITIAN_TOL` relative to the largest
    /// absolute entry.
    pub fn new(d: usize, entries: Vec<Complex64>) -> Result<Self> {
        Self::with_tolerance(d, entries, HERMITIAN_TOL)
    }

    /// Same as [`new`](Self::new) with a caller-chosen relative tolerance.
    pub fn with_tolerance(d: usize, entries: Vec<Complex64>, tol_rel: f64) -> Result<Self> {
        if d == 0 {
            return Err(Error::EmptyMatrix);
        }
        if entries.len() != d * d {
            return Err(Error::DimensionMismatch {
                expected: d * d,
                got: entries.len(),
            });
        }
        let scale = entries.iter().map(|z| z.norm()).fold(0.0_f64, f64::max);
        let mut asymmetry = 0.0_f64;
        for i in 0..d {
            for j in i..d {
                let diff = (entries[i * d + j] - entries[j * d + i].conj()).norm();
                asymmetry = asymmetry.max(diff);
            }
        }
        let tol = tol_rel * scale.max(f64::MIN_POSITIVE);
        if asymmetry > tol {
            return Err(Error::NotHermitian { asymmetry, tol });
        }
        Ok(Self::symmetrized(d, entries))
    }

    /// Symmetrizes unconditionally: stores `(A + A*)/2`.
    ///
    /// For internally generated data (eigenspace compressions, sums of
    /// hermitian terms) whose asymmetry is pure roundoff.
    pub(crate) fn symmetrized(d: usize, mut entries: Vec<Complex64>) -> Self {
        assert_eq!(entries.len(), d * d);
        for i in 0..d {
            entries[i * d + i] = Complex64::new(entries[i * d + i].re, 0.0);
            for j in (i + 1)..d {
                let avg = 0.5 * (entries[i * d + j] + entries[j * d + i].conj());
                entries[i * d + j] = avg;
                entries[j * d + i] = avg.conj();
            }
        }
        Self { d, data: entries }
    }

    /// Exactly hermitian input, no checks beyond a debug assertion.
    fn from_parts_unchecked(d: usize, data: Vec<Complex64>) -> Self {
        debug_assert_eq!(data.len(), d * d);
        debug_assert!((0..d).all(|i| (0..d).all(|j| data[i * d + j] == data[j * d + i].conj())));
        Self { d, data }
    }

    pub fn zeros(d: usize) -> Self {
        Self {
            d,
            data: vec![Complex64::new(0.0, 0.0); d * d],
        }
    }

    pub fn identity(d: usize) -> Self {
        let mut m = Self::zeros(d);
        for i in 0..d {
            m.data[i * d + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        let d = diag.len();
        let mut m = Self::zeros(d);
        for (i, &x) in diag.iter().enumerate() {
            m.data[i * d + i] = Complex64::new(x, 0.0);
        }
        m
    }

    /// Hermitian matrix from a real symmetric row-major array.
    pub fn from_real(d: usize, entries: &[f64]) -> Result<Self> {
        Self::new(d, entries.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// Real linear combination `sum_t c_t H_t`; exact hermiticity is
    /// preserved because real scaling and addition commute with
    /// conjugation entrywise.
    pub fn linear_combination(terms: &[(f64, &HermitianMatrix)]) -> Result<Self> {
        let d = match terms.first() {
            Some((_, h)) => h.d,
            None => return Err(Error::EmptyPencil),
        };
        let mut data = vec![Complex64::new(0.0, 0.0); d * d];
        for (c, h) in terms {
            if h.d != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    got: h.d,
                });
            }
            for (acc, z) in data.iter_mut().zip(h.data.iter()) {
                *acc += c * z;
            }
        }
        Ok(Self::from_parts_unchecked(d, data))
    }

    /// Adds `c` to every diagonal entry.
    pub fn shift_diagonal(&self, c: f64) -> Self {
        let mut out = self.clone();
        for i in 0..self.d {
            out.data[i * self.d + i] += c;
        }
        out
    }

    pub fn order(&self) -> usize {
        self.d
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.d + j]
    }

    pub fn fro_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn trace(&self) -> f64 {
        (0..self.d).map(|i| self.data[i * self.d + i].re).sum()
    }

    pub fn max_abs_entry(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Matrix-vector product `H v`.
    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.d);
        (0..self.d)
            .map(|i| {
                let row = &self.data[i * self.d..(i + 1) * self.d];
                row.iter().zip(v).map(|(a, x)| a * x).sum()
            })
            .collect()
    }

    /// Rayleigh quotient numerator `<v|H v>`; real up to roundoff for
    /// hermitian `H`, the imaginary part is discarded.
    pub fn quadratic_form(&self, v: &[Complex64]) -> f64 {
        let hv = self.apply(v);
        v.iter()
            .zip(hv.iter())
            .map(|(x, y)| (x.conj() * y).re)
            .sum()
    }

    pub fn to_complex(&self) -> ComplexMatrix {
        ComplexMatrix {
            d: self.d,
            data: self.data.clone(),
        }
    }

    pub(crate) fn entries(&self) -> &[Complex64] {
        &self.data
    }
}

/// General dense square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    d: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn new(d: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != d * d {
            return Err(Error::DimensionMismatch {
                expected: d * d,
                got: data.len(),
            });
        }
        Ok(Self { d, data })
    }

    pub fn zeros(d: usize) -> Self {
        Self {
            d,
            data: vec![Complex64::new(0.0, 0.0); d * d],
        }
    }

    pub fn identity(d: usize) -> Self {
        let mut m = Self::zeros(d);
        for i in 0..d {
            m.data[i * d + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(d: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let data = (0..d * d).map(|idx| f(idx / d, idx % d)).collect();
        Self { d, data }
    }

    pub fn order(&self) -> usize {
        self.d
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.d + j]
    }

    pub fn set(&mut self, i: usize, j: usize, z: Complex64) {
        self.data[i * self.d + j] = z;
    }

    pub fn mul(&self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.d, other.d);
        let d = self.d;
        let mut out = ComplexMatrix::zeros(d);
        for i in 0..d {
            for k in 0..d {
                let a = self.data[i * d + k];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..d {
                    out.data[i * d + j] += a * other.data[k * d + j];
                }
            }
        }
        out
    }

    pub fn add_diagonal(&mut self, c: f64) {
        for i in 0..self.d {
            self.data[i * self.d + i] += c;
        }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.d).map(|i| self.data[i * self.d + i]).sum()
    }
}

/// `tr(A B)` without forming the product.
fn trace_of_product(a: &ComplexMatrix, b: &ComplexMatrix) -> Complex64 {
    let d = a.d;
    let mut t = Complex64::new(0.0, 0.0);
    for i in 0..d {
        for k in 0..d {
            t += a.data[i * d + k] * b.data[k * d + i];
        }
    }
    t
}

/// Determinant by gaussian elimination with partial pivoting.
///
/// Singular inputs return (approximately) zero rather than an error.
pub fn det_complex(m: &ComplexMatrix) -> Complex64 {
    let d = m.d;
    let mut a = m.data.clone();
    let mut det = Complex64::new(1.0, 0.0);
    for col in 0..d {
        let pivot_row = (col..d)
            .max_by(|&r, &s| {
                a[r * d + col]
                    .norm_sqr()
                    .total_cmp(&a[s * d + col].norm_sqr())
            })
            .unwrap();
        let pivot = a[pivot_row * d + col];
        if pivot == Complex64::new(0.0, 0.0) {
            return Complex64::new(0.0, 0.0);
        }
        if pivot_row != col {
            for j in 0..d {
                a.swap(col * d + j, pivot_row * d + j);
            }
            det = -det;
        }
        det *= pivot;
        for r in (col + 1)..d {
            let factor = a[r * d + col] / pivot;
            if factor == Complex64::new(0.0, 0.0) {
                continue;
            }
            for j in col..d {
                let sub = factor * a[col * d + j];
                a[r * d + j] -= sub;
            }
        }
    }
    det
}

/// Coefficients of `det(x 1 - H) = sum_j c_j x^(d-j)` with `c_0 = 1`,
/// computed by the Faddeev-LeVerrier trace recursion.
pub fn char_poly(h: &HermitianMatrix) -> Vec<f64> {
    let d = h.order();
    let a = h.to_complex();
    let mut coeffs = vec![0.0_f64; d + 1];
    coeffs[0] = 1.0;
    let mut m = ComplexMatrix::zeros(d);
    for j in 1..=d {
        // M_j = A M_{j-1} + c_{j-1} 1,  c_j = -tr(A M_j) / j
        m = a.mul(&m);
        m.add_diagonal(coeffs[j - 1]);
        let c = -trace_of_product(&a, &m) / (j as f64);
        coeffs[j] = c.re;
    }
    coeffs
}

/// Evaluates `sum_j c_j x^(d-j)` by Horner's rule.
pub fn eval_poly(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().fold(0.0, |acc, &c| acc * x + c)
}
