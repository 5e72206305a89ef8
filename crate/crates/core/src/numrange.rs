//! The k = 2 engine: support lines of the planar convex support W, boundary
//! touch points, Kippenhahn curve samples from every eigenvalue branch, and
//! the certification that conv(curve) equals W on a grid.
//!
//! For a unit direction (cos t, sin t) the support value of W is the top
//! eigenvalue of `A(t) = cos(t) F_1 + sin(t) F_2`. Each eigenvalue branch j
//! contributes the curve point
//!
//! ```text
//! x(t) = (l cos t - l' sin t,  l sin t + l' cos t)
//! ```
//!
//! with `l = lambda_j(t)` and the branch derivative `l'` obtained from the
//! eigenvector (`l' = <psi, A'(t) psi>`). Inside a degenerate cluster the
//! derivatives are the eigenvalues of `A'(t)` compressed onto the cluster
//! eigenspace. Branches are indexed by ascending-sort position per angle;
//! relabeling at branch crossings does not change the emitted point set,
//! which is all the hull comparison consumes.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hull2d;
use crate::linalg::{cluster_ranges, compression, degeneracy_gap, eig_hermitian, lift};
use crate::par;
use crate::pencil::Pencil;

/// Unit-norm check tolerance for state vectors.
const UNIT_TOL: f64 = 1e-12;

/// One sample of the boundary generating curve.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveSample {
    pub theta: f64,
    /// Eigenvalue index in ascending order, 0..d.
    pub branch: usize,
    pub lambda: f64,
    pub lambda_prime: f64,
    /// `(l cos t - l' sin t, l sin t + l' cos t)`.
    pub point: [f64; 2],
}

/// Support line of W in direction `(cos theta, sin theta)` together with
/// the points of tangency.
#[derive(Debug, Clone, PartialEq)]
pub struct SupportLine {
    pub theta: f64,
    /// Support value: top eigenvalue of `A(theta)`.
    pub h: f64,
    /// One point, or the two endpoints of the exposed face when the top
    /// eigenvalue is degenerate.
    pub touch_points: Vec<[f64; 2]>,
}

/// Outcome of the conv(curve) = W certification.
#[derive(Debug, Clone, PartialEq)]
pub struct TheoremReport {
    /// Two-sided Hausdorff distance between the touch-point hull and the
    /// curve-sample hull.
    pub hausdorff: f64,
    /// `1 +` diameter of the touch-point hull.
    pub scale: f64,
    pub pass: bool,
}

/// Outcome of the curve-inside-W certification.
#[derive(Debug, Clone, PartialEq)]
pub struct InclusionReport {
    /// Largest signed excess of a curve sample over a support line.
    pub max_violation: f64,
    /// `1 +` diameter of the touch-point hull.
    pub scale: f64,
    pub pass: bool,
}

/// `(<psi, F_1 psi>, <psi, F_2 psi>)` for a unit vector `psi`.
pub fn nr_map(p: &Pencil, psi: &[Complex64]) -> Result<[f64; 2]> {
    if p.arity() != 2 {
        return Err(Error::WrongArity {
            expected: 2,
            got: p.arity(),
        });
    }
    check_unit(psi)?;
    Ok([
        p.coefficient(0).quadratic_form(psi),
        p.coefficient(1).quadratic_form(psi),
    ])
}

/// Support line of W in direction `(cos theta, sin theta)`.
///
/// With a degenerate top eigenvalue the exposed face is a segment; its
/// endpoints come from the extreme eigenvectors of `A'(theta)` compressed
/// onto the top eigenspace.
pub fn support(p: &Pencil, theta: f64) -> Result<SupportLine> {
    let a = p.aggregate_a(theta)?;
    let eig = eig_hermitian(&a)?;
    let gap = degeneracy_gap(&a);
    let top = cluster_ranges(eig.eigenvalues(), gap)
        .pop()
        .expect("non-empty spectrum");
    let h = eig.max_eigenvalue();

    let touch_points = if top.len() == 1 {
        vec![nr_map(p, eig.vector(top.start))?]
    } else {
        let a_prime = p.aggregate_a_prime(theta)?;
        let basis: Vec<&[Complex64]> = top.clone().map(|j| eig.vector(j)).collect();
        let inner = eig_hermitian(&compression(&a_prime, &basis))?;
        let lo = lift(&basis, inner.vector(0));
        let hi = lift(&basis, inner.vector(inner.order() - 1));
        vec![nr_map(p, &lo)?, nr_map(p, &hi)?]
    };
    Ok(SupportLine {
        theta,
        h,
        touch_points,
    })
}

/// Support lines at the angles `theta_i = 2 pi i / n` plus all their touch
/// points flattened in angle order. The touch points generate the inner
/// polygonal approximation of W; the lines bound the outer one.
pub fn boundary_samples(p: &Pencil, n: usize) -> Result<(Vec<[f64; 2]>, Vec<SupportLine>)> {
    require_grid(n, 3)?;
    let lines = collect_results(par::map_indexed(n, |i| support(p, theta_at(i, n))))?;
    let touch = lines
        .iter()
        .flat_map(|l| l.touch_points.iter().copied())
        .collect();
    Ok((touch, lines))
}

/// Curve samples at every grid angle and eigenvalue branch, `n * d` total,
/// ordered by angle index then branch index.
pub fn kippenhahn_samples(p: &Pencil, n: usize) -> Result<Vec<CurveSample>> {
    require_grid(n, 3)?;
    let per_angle = par::map_indexed(n, |i| samples_at(p, theta_at(i, n)));
    let mut samples = Vec::with_capacity(n * p.order());
    for group in per_angle {
        samples.extend(group?);
    }
    Ok(samples)
}

fn samples_at(p: &Pencil, theta: f64) -> Result<Vec<CurveSample>> {
    let a = p.aggregate_a(theta)?;
    let a_prime = p.aggregate_a_prime(theta)?;
    let eig = eig_hermitian(&a)?;
    let gap = degeneracy_gap(&a);
    let mut out = Vec::with_capacity(p.order());
    for cluster in cluster_ranges(eig.eigenvalues(), gap) {
        if cluster.len() == 1 {
            let j = cluster.start;
            let lambda_prime = a_prime.quadratic_form(eig.vector(j));
            out.push(make_sample(theta, j, eig.eigenvalue(j), lambda_prime));
        } else {
            // Hellmann-Feynman needs the basis that diagonalizes the
            // first-order splitting; the compression supplies it.
            let basis: Vec<&[Complex64]> = cluster.clone().map(|j| eig.vector(j)).collect();
            let inner = eig_hermitian(&compression(&a_prime, &basis))?;
            for (m, j) in cluster.enumerate() {
                out.push(make_sample(theta, j, eig.eigenvalue(j), inner.eigenvalue(m)));
            }
        }
    }
    Ok(out)
}

fn make_sample(theta: f64, branch: usize, lambda: f64, lambda_prime: f64) -> CurveSample {
    CurveSample {
        theta,
        branch,
        lambda,
        lambda_prime,
        point: tangent_point(lambda, lambda_prime, theta),
    }
}

/// `(l cos t - l' sin t, l sin t + l' cos t)`: the tangency point of the
/// support line `{x : <x, (cos t, sin t)> = l}` with the curve.
pub fn tangent_point(lambda: f64, lambda_prime: f64, theta: f64) -> [f64; 2] {
    let (s, c) = theta.sin_cos();
    [lambda * c - lambda_prime * s, lambda * s + lambda_prime * c]
}

/// Certifies conv(curve samples) = conv(touch points) on an `n`-angle grid:
/// the two-sided Hausdorff distance of the hulls must be at most
/// `tol * (1 + diameter)`.
pub fn verify_theorem(p: &Pencil, n: usize, tol: f64) -> Result<TheoremReport> {
    require_grid(n, 16)?;
    let (touch, _) = boundary_samples(p, n)?;
    let curve = kippenhahn_samples(p, n)?;
    let curve_points: Vec<[f64; 2]> = curve.iter().map(|s| s.point).collect();
    let touch_hull = hull2d::convex_hull(&touch)?;
    let curve_hull = hull2d::convex_hull(&curve_points)?;
    let hausdorff = touch_hull.hausdorff(&curve_hull);
    let scale = 1.0 + touch_hull.diameter();
    Ok(TheoremReport {
        hausdorff,
        scale,
        pass: hausdorff <= tol * scale,
    })
}

/// Certifies that every curve sample obeys every support half-plane
/// `<x, (cos t, sin t)> <= h(t)` up to `tol * (1 + diameter)`.
pub fn verify_curve_in_range(p: &Pencil, n: usize, tol: f64) -> Result<InclusionReport> {
    require_grid(n, 16)?;
    let (touch, lines) = boundary_samples(p, n)?;
    let curve = kippenhahn_samples(p, n)?;
    let scale = 1.0 + hull2d::convex_hull(&touch)?.diameter();

    let half_planes: Vec<[f64; 3]> = lines
        .iter()
        .map(|l| {
            let (s, c) = l.theta.sin_cos();
            [c, s, l.h]
        })
        .collect();
    let per_sample = par::map_indexed(curve.len(), |i| {
        let [x, y] = curve[i].point;
        half_planes
            .iter()
            .map(|&[c, s, h]| x * c + y * s - h)
            .fold(f64::NEG_INFINITY, f64::max)
    });
    let max_violation = per_sample.into_iter().fold(f64::NEG_INFINITY, f64::max);
    Ok(InclusionReport {
        max_violation,
        scale,
        pass: max_violation <= tol * scale,
    })
}

pub(crate) fn theta_at(i: usize, n: usize) -> f64 {
    std::f64::consts::TAU * i as f64 / n as f64
}

fn require_grid(n: usize, min: usize) -> Result<()> {
    if n < min {
        return Err(Error::GridTooSmall { min, got: n });
    }
    Ok(())
}

pub(crate) fn check_unit(psi: &[Complex64]) -> Result<()> {
    let norm = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > UNIT_TOL {
        return Err(Error::NotUnit {
            deviation: (norm - 1.0).abs(),
        });
    }
    Ok(())
}

fn collect_results<T>(items: Vec<Result<T>>) -> Result<Vec<T>> {
    items.into_iter().collect()
}
