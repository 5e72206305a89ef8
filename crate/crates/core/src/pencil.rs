//! The hermitian tuple `(F_1, ..., F_k)`: evaluation of the linear pencil
//! `L(u) = u_0 1 + u_1 F_1 + ... + u_k F_k`, of the rotated aggregate
//! `A(theta) = cos(theta) F_1 + sin(theta) F_2` and its derivative, and of
//! direction matrices `u . F`.
//!
//! The determinantal variety `det(L(u)) = 0` is exposed only through the
//! pointwise membership residual [`Pencil::variety_residual`]; its full
//! polynomial is never materialized. Dual-space points live in the affine
//! chart `u_0 = 1`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{det_complex, ComplexMatrix, HermitianMatrix};

/// Unit-norm check tolerance for direction vectors.
const UNIT_TOL: f64 = 1e-12;

/// Tuple of `k >= 1` hermitian matrices sharing one order `d`.
#[derive(Debug, Clone)]
pub struct Pencil {
    d: usize,
    f: Vec<HermitianMatrix>,
}

impl Pencil {
    pub fn new(f: Vec<HermitianMatrix>) -> Result<Self> {
        let d = f.first().ok_or(Error::EmptyPencil)?.order();
        for m in &f {
            if m.order() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    got: m.order(),
                });
            }
        }
        Ok(Self { d, f })
    }

    pub fn pair(f1: HermitianMatrix, f2: HermitianMatrix) -> Result<Self> {
        Self::new(vec![f1, f2])
    }

    /// Splits a complex matrix into its hermitian real and imaginary parts
    /// `(A + A*)/2` and `(A - A*)/(2i)`; the numerical range of `A` is the
    /// convex support of the resulting k = 2 pencil.
    pub fn from_matrix(a: &ComplexMatrix) -> Self {
        let d = a.order();
        let mut re = vec![Complex64::new(0.0, 0.0); d * d];
        let mut im = vec![Complex64::new(0.0, 0.0); d * d];
        let half_i = Complex64::new(0.0, -0.5);
        for i in 0..d {
            for j in 0..d {
                let z = a.get(i, j);
                let w = a.get(j, i).conj();
                re[i * d + j] = 0.5 * (z + w);
                im[i * d + j] = half_i * (z - w);
            }
        }
        Self {
            d,
            f: vec![
                HermitianMatrix::symmetrized(d, re),
                HermitianMatrix::symmetrized(d, im),
            ],
        }
    }

    /// Matrix order `d`.
    pub fn order(&self) -> usize {
        self.d
    }

    /// Number of coefficient matrices `k`.
    pub fn arity(&self) -> usize {
        self.f.len()
    }

    pub fn coefficient(&self, i: usize) -> &HermitianMatrix {
        &self.f[i]
    }

    pub fn coefficients(&self) -> &[HermitianMatrix] {
        &self.f
    }

    /// `sqrt(sum_i ||F_i||_F^2)`, the scale of the tuple.
    pub fn tuple_norm(&self) -> f64 {
        self.f
            .iter()
            .map(|m| m.fro_norm().powi(2))
            .sum::<f64>()
            .sqrt()
    }

    /// Unconstrained combination `u_1 F_1 + ... + u_k F_k`.
    pub fn combination(&self, u: &[f64]) -> Result<HermitianMatrix> {
        if u.len() != self.arity() {
            return Err(Error::DimensionMismatch {
                expected: self.arity(),
                got: u.len(),
            });
        }
        let terms: Vec<(f64, &HermitianMatrix)> = u.iter().copied().zip(self.f.iter()).collect();
        HermitianMatrix::linear_combination(&terms)
    }

    /// `L(u) = u_0 1 + u_1 F_1 + ... + u_k F_k`.
    pub fn evaluate_l(&self, u0: f64, u: &[f64]) -> Result<HermitianMatrix> {
        Ok(self.combination(u)?.shift_diagonal(u0))
    }

    /// `A(theta) = cos(theta) F_1 + sin(theta) F_2`; requires k = 2.
    pub fn aggregate_a(&self, theta: f64) -> Result<HermitianMatrix> {
        self.require_pair()?;
        self.combination(&[theta.cos(), theta.sin()])
    }

    /// `A'(theta) = -sin(theta) F_1 + cos(theta) F_2`; requires k = 2.
    pub fn aggregate_a_prime(&self, theta: f64) -> Result<HermitianMatrix> {
        self.require_pair()?;
        self.combination(&[-theta.sin(), theta.cos()])
    }

    /// `u . F` for a unit direction `u`.
    pub fn direction_matrix(&self, u: &[f64]) -> Result<HermitianMatrix> {
        let norm = u.iter().map(|x| x * x).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > UNIT_TOL {
            return Err(Error::NotUnit {
                deviation: (norm - 1.0).abs(),
            });
        }
        self.combination(u)
    }

    /// Membership residual `|det L(-lambda, u)|` of the determinantal
    /// variety at the projective point `(-lambda : u_1 : ... : u_k)`.
    pub fn variety_residual(&self, lambda: f64, u: &[f64]) -> Result<f64> {
        let l = self.evaluate_l(-lambda, u)?;
        Ok(det_complex(&l.to_complex()).norm())
    }

    /// Scale-aware residual bound `1e-8 (1 + ||F||)^d` used by the variety
    /// membership checks.
    pub fn residual_tolerance(&self) -> f64 {
        1e-8 * (1.0 + self.tuple_norm()).powi(self.d as i32)
    }

    fn require_pair(&self) -> Result<()> {
        if self.arity() != 2 {
            return Err(Error::WrongArity {
                expected: 2,
                got: self.arity(),
            });
        }
        Ok(())
    }
}
