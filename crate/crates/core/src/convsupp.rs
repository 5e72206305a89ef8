//! General-k convex support: joint numerical range samples, boundary
//! generating hypersurface branches, spectrahedron membership, and the
//! numerical certification that the spectrahedron `S = {u : L(1,u) >= 0}`
//! is the convex dual of the support set W.
//!
//! Only the eigenvector-swept affine chart of the dual variety is sampled:
//! real unit directions u, one sample per eigenvalue branch of `u . F`.
//! For k = 3 the real dual variety can also contain unbounded line
//! components; those never arise from eigenvectors of real directions and
//! are not produced here (the axes-containment checks for the classical
//! quartic below substitute symbolically).

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{eig_hermitian, HermitianMatrix};
use crate::numrange::check_unit;
use crate::par;
use crate::pencil::Pencil;
use crate::sample;

/// Margin below which a point counts as outside the spectrahedron / dual.
const MEMBER_TOL: f64 = 1e-10;

/// Pairwise duality slack: `1 + <u, x>` must stay above the negative of
/// this for every sampled pair.
const PAIR_TOL: f64 = 1e-9;

/// Scale cap past which a direction counts as unbounded in S.
const SCALE_CAP: f64 = 1e6;

/// Bisection steps for locating the boundary scale along a direction.
const BISECT_STEPS: usize = 30;

/// One sample of the boundary generating hypersurface: an eigenvalue
/// branch of `u . F` evaluated at a unit direction.
#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceSample {
    /// Unit direction in R^k.
    pub direction: Vec<f64>,
    /// Eigenvalue index in ascending order, 0..d.
    pub branch: usize,
    pub lambda: f64,
    /// `(<psi, F_1 psi>, ..., <psi, F_k psi>)` for the branch eigenvector.
    pub point: Vec<f64>,
}

/// Membership outcome for the spectrahedron or its dual description.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Membership {
    pub inside: bool,
    /// Smallest eigenvalue margin; nonnegative inside, negative outside.
    pub margin: f64,
}

/// Outcome of the sampled S = W* certification.
#[derive(Debug, Clone, PartialEq)]
pub struct DualityReport {
    pub trials: usize,
    pub agreements: usize,
    /// Largest violation `-(1 + <u, x>)` over all sampled pairs; negative
    /// values mean every pair had slack.
    pub max_gap: f64,
    pub pass: bool,
}

/// `(<psi, F_1 psi>, ..., <psi, F_k psi>)` for a unit vector `psi`.
pub fn jnr_sample(p: &Pencil, psi: &[Complex64]) -> Result<Vec<f64>> {
    check_unit(psi)?;
    Ok(p.coefficients().iter().map(|f| f.quadratic_form(psi)).collect())
}

/// Top-branch sample in direction `u`: the support value of W and a point
/// of the exposed face it defines.
pub fn support_point(p: &Pencil, u: &[f64]) -> Result<SurfaceSample> {
    let m = p.direction_matrix(u)?;
    let eig = eig_hermitian(&m)?;
    let top = eig.order() - 1;
    Ok(SurfaceSample {
        direction: u.to_vec(),
        branch: top,
        lambda: eig.max_eigenvalue(),
        point: jnr_sample(p, eig.vector(top))?,
    })
}

/// One sample per eigenvalue branch of `u . F`. Degenerate clusters emit
/// one sample per vector of the eigensolver's orthonormal cluster basis;
/// tangency and variety residuals hold for any such choice.
pub fn surface_branches(p: &Pencil, u: &[f64]) -> Result<Vec<SurfaceSample>> {
    let m = p.direction_matrix(u)?;
    let eig = eig_hermitian(&m)?;
    (0..eig.order())
        .map(|j| {
            Ok(SurfaceSample {
                direction: u.to_vec(),
                branch: j,
                lambda: eig.eigenvalue(j),
                point: jnr_sample(p, eig.vector(j))?,
            })
        })
        .collect()
}

/// Membership in the spectrahedron `S = {u : L(1, u) >= 0}`.
pub fn spectrahedron_member(p: &Pencil, u: &[f64]) -> Result<Membership> {
    let l = p.evaluate_l(1.0, u)?;
    let margin = eig_hermitian(&l)?.min_eigenvalue();
    Ok(Membership {
        inside: margin >= -MEMBER_TOL,
        margin,
    })
}

/// Membership in the dual of W, evaluated directly on the support side:
/// `1 + min_{x in W} <u, x> = 1 + lambda_min(u . F)`.
pub fn dual_member(p: &Pencil, u: &[f64]) -> Result<Membership> {
    let m = p.combination(u)?;
    let margin = 1.0 + eig_hermitian(&m)?.min_eigenvalue();
    Ok(Membership {
        inside: margin >= -MEMBER_TOL,
        margin,
    })
}

/// Samples pairs (u in S, x in conv(0, W)) and verifies the weak-duality
/// inequality `1 + <u, x> >= 0` on every pair, up to the pairwise slack.
///
/// Per trial: u comes from scaling a random direction to a point of S
/// located by bisection (directions that stay feasible up to the scale cap
/// count as unbounded and contribute the capped point); x runs over a
/// support point at a random direction, a random state's joint numerical
/// range point, a random shrink of the support point toward 0, and 0
/// itself. Trials are independent and seeded, so the report is
/// deterministic for a fixed seed regardless of parallel execution.
pub fn duality_check(p: &Pencil, trials: usize, seed: u64) -> Result<DualityReport> {
    if trials == 0 {
        return Err(Error::GridTooSmall { min: 1, got: 0 });
    }
    let k = p.arity();
    let d = p.order();
    let outcomes = par::map_indexed(trials, |trial| -> Result<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(1 + trial as u64);

        let v = sample::unit_direction(&mut rng, k);
        let t = boundary_scale(p, &v)?.unwrap_or(SCALE_CAP);
        let s: f64 = rng.gen_range(0.0..=1.0);
        let u: Vec<f64> = v.iter().map(|x| s * t * x).collect();

        let w_dir = sample::unit_direction(&mut rng, k);
        let x_support = support_point(p, &w_dir)?.point;
        let psi = sample::unit_vector(&mut rng, d);
        let x_state = jnr_sample(p, &psi)?;
        let shrink: f64 = rng.gen_range(0.0..=1.0);
        let x_mixed: Vec<f64> = x_support.iter().map(|x| shrink * x).collect();
        let x_origin = vec![0.0; k];

        let worst = [x_support, x_state, x_mixed, x_origin]
            .iter()
            .map(|x| -(1.0 + dot(&u, x)))
            .fold(f64::NEG_INFINITY, f64::max);
        Ok(worst)
    });

    let mut agreements = 0;
    let mut max_gap = f64::NEG_INFINITY;
    for outcome in outcomes {
        let worst = outcome?;
        if worst <= PAIR_TOL {
            agreements += 1;
        }
        max_gap = max_gap.max(worst);
    }
    Ok(DualityReport {
        trials,
        agreements,
        max_gap,
        pass: agreements == trials,
    })
}

/// Scale `t >= 0` at which `t * v` reaches the boundary of S, at bisection
/// resolution, always returning the feasible bracket endpoint. `None` when
/// the margin stays nonnegative up to the scale cap.
fn boundary_scale(p: &Pencil, v: &[f64]) -> Result<Option<f64>> {
    let margin = |t: f64| -> Result<f64> {
        let u: Vec<f64> = v.iter().map(|x| t * x).collect();
        Ok(spectrahedron_member(p, &u)?.margin)
    };
    let mut lo = 0.0_f64;
    let mut hi = 1.0_f64;
    loop {
        if margin(hi)? < 0.0 {
            break;
        }
        lo = hi;
        hi *= 2.0;
        if lo >= SCALE_CAP {
            return Ok(None);
        }
    }
    for _ in 0..BISECT_STEPS {
        let mid = 0.5 * (lo + hi);
        if margin(mid)? >= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(Some(lo))
}

/// Unit directions for a surface sweep: the angular grid for k = 2, both
/// endpoints for k = 1, a Fibonacci-sphere grid plus a quarter as many
/// seeded random directions for k = 3, and seeded random directions for
/// higher k.
pub fn direction_grid(k: usize, directions: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match k {
        1 => vec![vec![1.0], vec![-1.0]],
        2 => (0..directions)
            .map(|i| {
                let (s, c) = (std::f64::consts::TAU * i as f64 / directions as f64).sin_cos();
                vec![c, s]
            })
            .collect(),
        3 => {
            let mut dirs: Vec<Vec<f64>> = fibonacci_sphere(directions)
                .into_iter()
                .map(|u| u.to_vec())
                .collect();
            dirs.extend((0..directions / 4).map(|_| sample::unit_direction(&mut rng, 3)));
            dirs
        }
        _ => (0..directions)
            .map(|_| sample::unit_direction(&mut rng, k))
            .collect(),
    }
}

/// All branch samples over a direction sweep, ordered by direction index
/// then branch.
pub fn surface_sweep(p: &Pencil, directions: usize, seed: u64) -> Result<Vec<SurfaceSample>> {
    if directions == 0 {
        return Err(Error::GridTooSmall {
            min: 1,
            got: 0,
        });
    }
    let dirs = direction_grid(p.arity(), directions, seed);
    let per_dir = par::map_indexed(dirs.len(), |i| surface_branches(p, &dirs[i]));
    let mut out = Vec::with_capacity(dirs.len() * p.order());
    for group in per_dir {
        out.extend(group?);
    }
    Ok(out)
}

/// Low-discrepancy unit vectors on the 2-sphere (golden-angle spiral).
pub fn fibonacci_sphere(n: usize) -> Vec<[f64; 3]> {
    let golden_angle = std::f64::consts::PI * (3.0 - 5.0_f64.sqrt());
    (0..n)
        .map(|i| {
            let z = 1.0 - (2.0 * i as f64 + 1.0) / n as f64;
            let r = (1.0 - z * z).sqrt();
            let (s, c) = (golden_angle * i as f64).sin_cos();
            [r * c, r * s, z]
        })
        .collect()
}

/// The classical 3x3 tuple whose boundary generating surface is Steiner's
/// Roman surface: `(F_i)_{jl} = 1/2` exactly when `{i, j, l} = {1, 2, 3}`.
pub fn roman_pencil() -> Pencil {
    let f = (0..3)
        .map(|i| {
            let mut m = vec![0.0; 9];
            let j = (i + 1) % 3;
            let l = (i + 2) % 3;
            m[j * 3 + l] = 0.5;
            m[l * 3 + j] = 0.5;
            HermitianMatrix::from_real(3, &m).unwrap()
        })
        .collect();
    Pencil::new(f).unwrap()
}

/// Closed form for `det L(u)` of the [`roman_pencil`], from cofactor
/// expansion of the symbolic 3x3 determinant.
pub fn roman_det(u0: f64, u1: f64, u2: f64, u3: f64) -> f64 {
    u0.powi(3) - u0 * (u1 * u1 + u2 * u2 + u3 * u3) / 4.0 + u1 * u2 * u3 / 4.0
}

/// Defining quartic of the Roman surface,
/// `x1 x2 x3 - x1^2 x2^2 - x1^2 x3^2 - x2^2 x3^2`; its real zero set
/// contains every branch sample of the [`roman_pencil`] as well as all
/// three coordinate axes (each monomial has two distinct coordinates).
pub fn roman_quartic(x: &[f64]) -> f64 {
    let [a, b, c] = [x[0], x[1], x[2]];
    a * b * c - a * a * b * b - a * a * c * c - b * b * c * c
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numrange;
    use rand::Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn unit3(x: f64, y: f64, z: f64) -> Vec<f64> {
        let n = (x * x + y * y + z * z).sqrt();
        vec![x / n, y / n, z / n]
    }

    #[test]
    fn jnr_vanishes_on_basis_vectors_of_roman() {
        let p = roman_pencil();
        for j in 0..3 {
            let mut psi = vec![c(0.0, 0.0); 3];
            psi[j] = c(1.0, 0.0);
            assert_eq!(jnr_sample(&p, &psi).unwrap(), vec![0.0, 0.0, 0.0]);
        }
    }

    #[test]
    fn jnr_on_diagonal_state_of_roman() {
        let p = roman_pencil();
        let s = 1.0 / 3.0_f64.sqrt();
        let psi = vec![c(s, 0.0); 3];
        for v in jnr_sample(&p, &psi).unwrap() {
            assert!((v - 1.0 / 3.0).abs() < 1e-15);
        }
    }

    #[test]
    fn jnr_reads_diagonal_entries_for_k1() {
        let p = Pencil::new(vec![HermitianMatrix::from_diagonal(&[0.4, -0.7])]).unwrap();
        let psi = vec![c(0.0, 0.0), c(1.0, 0.0)];
        assert_eq!(jnr_sample(&p, &psi).unwrap(), vec![-0.7]);
    }

    #[test]
    fn jnr_rejects_non_unit() {
        let p = roman_pencil();
        let psi = vec![c(1.0, 0.0); 3];
        assert!(matches!(jnr_sample(&p, &psi), Err(Error::NotUnit { .. })));
    }

    #[test]
    fn support_point_of_roman_diagonal_direction() {
        // u . F is the all-ones off-diagonal matrix scaled by 1/(2 sqrt 3):
        // spectrum {1/sqrt(3), -1/(2 sqrt 3) twice}, top vector (1,1,1)/sqrt(3).
        let p = roman_pencil();
        let sp = support_point(&p, &unit3(1.0, 1.0, 1.0)).unwrap();
        assert!((sp.lambda - 1.0 / 3.0_f64.sqrt()).abs() < 1e-12);
        for v in &sp.point {
            assert!((v - 1.0 / 3.0).abs() < 1e-10);
        }
        assert_eq!(sp.branch, 2);
    }

    #[test]
    fn support_point_reduces_to_k2_support() {
        let mut rng = ChaCha8Rng::seed_from_u64(61);
        let p = sample::pencil(&mut rng, 4, 2);
        for i in 0..24 {
            let theta = std::f64::consts::TAU * i as f64 / 24.0;
            let (s, co) = theta.sin_cos();
            let sp = support_point(&p, &[co, s]).unwrap();
            let line = numrange::support(&p, theta).unwrap();
            assert!((sp.lambda - line.h).abs() < 1e-12);
            if line.touch_points.len() == 1 {
                let [x, y] = line.touch_points[0];
                assert!((sp.point[0] - x).abs() < 1e-10);
                assert!((sp.point[1] - y).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn support_point_of_single_matrix_is_max_diagonal() {
        let p = Pencil::new(vec![HermitianMatrix::from_diagonal(&[0.3, 2.5, -1.0])]).unwrap();
        let sp = support_point(&p, &[1.0]).unwrap();
        assert_eq!(sp.lambda, 2.5);
        assert_eq!(sp.point, vec![2.5]);
    }

    #[test]
    fn roman_branches_lie_on_the_quartic() {
        let p = roman_pencil();
        let samples = surface_branches(&p, &unit3(1.0, 1.0, 1.0)).unwrap();
        assert_eq!(samples.len(), 3);
        let top = &samples[2];
        for v in &top.point {
            assert!((v - 1.0 / 3.0).abs() < 1e-10);
        }
        for s in &samples {
            assert!(roman_quartic(&s.point).abs() <= 1e-12);
        }
    }

    #[test]
    fn roman_branches_lie_on_the_quartic_at_random_directions() {
        let p = roman_pencil();
        let mut rng = ChaCha8Rng::seed_from_u64(67);
        for _ in 0..200 {
            let u = sample::unit_direction(&mut rng, 3);
            for s in surface_branches(&p, &u).unwrap() {
                assert!(
                    roman_quartic(&s.point).abs() <= 1e-9,
                    "direction {u:?} branch {}",
                    s.branch
                );
            }
        }
    }

    #[test]
    fn quartic_contains_all_axes() {
        for t in [-2.0, -0.5, 0.0, 1.0, 3.7] {
            assert_eq!(roman_quartic(&[t, 0.0, 0.0]), 0.0);
            assert_eq!(roman_quartic(&[0.0, t, 0.0]), 0.0);
            assert_eq!(roman_quartic(&[0.0, 0.0, t]), 0.0);
        }
    }

    #[test]
    fn branch_samples_satisfy_tangency_and_residual() {
        let mut rng = ChaCha8Rng::seed_from_u64(71);
        let p = sample::pencil(&mut rng, 4, 3);
        let tol = p.residual_tolerance();
        for _ in 0..50 {
            let u = sample::unit_direction(&mut rng, 3);
            for s in surface_branches(&p, &u).unwrap() {
                let contact = dot(&s.point, &s.direction);
                assert!((contact - s.lambda).abs() <= 1e-9 * (1.0 + s.lambda.abs()));
                let r = p.variety_residual(s.lambda, &s.direction).unwrap();
                assert!(r <= tol, "residual {r} above {tol}");
            }
        }
    }

    #[test]
    fn top_branch_stays_inside_probe_halfspaces() {
        let mut rng = ChaCha8Rng::seed_from_u64(73);
        for p in [roman_pencil(), sample::pencil(&mut rng, 4, 3)] {
            let u = sample::unit_direction(&mut rng, 3);
            let x = support_point(&p, &u).unwrap().point;
            for _ in 0..100 {
                let v = sample::unit_direction(&mut rng, 3);
                let bound = support_point(&p, &v).unwrap().lambda;
                assert!(dot(&x, &v) <= bound + 1e-8);
            }
        }
    }

    #[test]
    fn spectrahedron_contains_origin_with_unit_margin() {
        let p = roman_pencil();
        let m = spectrahedron_member(&p, &[0.0, 0.0, 0.0]).unwrap();
        assert!(m.inside);
        assert!((m.margin - 1.0).abs() < 1e-15);
    }

    #[test]
    fn interval_spectrahedron_boundary() {
        let p = Pencil::new(vec![HermitianMatrix::from_diagonal(&[1.0, -1.0])]).unwrap();
        let m = spectrahedron_member(&p, &[1.0]).unwrap();
        assert!(m.margin.abs() < 1e-14);
        assert!(m.inside);
        assert!(!spectrahedron_member(&p, &[1.5]).unwrap().inside);
    }

    #[test]
    fn roman_diagonal_ray_boundary_matches_closed_form() {
        // Brute-force sweep oracle: u . F at u = (t,t,t) has spectrum
        // {t, -t/2, -t/2}, so the margin of L(1,u) is min(1+t, 1-t/2):
        // boundary hits at t = -1 and t = 2.
        let p = roman_pencil();
        for i in 0..61 {
            let t = -1.5 + i as f64 * (4.0 / 60.0);
            let m = spectrahedron_member(&p, &[t, t, t]).unwrap();
            let want = (1.0 + t).min(1.0 - t / 2.0);
            assert!((m.margin - want).abs() < 1e-12, "t={t}");
        }
        assert!(
            spectrahedron_member(&p, &[-1.0, -1.0, -1.0])
                .unwrap()
                .margin
                .abs()
                < 1e-12
        );
    }

    #[test]
    fn dual_member_interval_and_unit_diagonal() {
        let p = Pencil::new(vec![HermitianMatrix::from_diagonal(&[1.0, -1.0])]).unwrap();
        let m = dual_member(&p, &[1.0]).unwrap();
        assert!(m.margin.abs() < 1e-14);

        // At -sqrt(3) times the unit diagonal direction the dual margin of
        // the Roman pencil vanishes: u . F = -(J - 1)/2 has bottom eigenvalue -1.
        let p = roman_pencil();
        let t = -3.0_f64.sqrt();
        let u: Vec<f64> = unit3(1.0, 1.0, 1.0).iter().map(|x| t * x).collect();
        let m = dual_member(&p, &u).unwrap();
        assert!(m.margin.abs() < 1e-12);

        let m0 = dual_member(&p, &[0.0, 0.0, 0.0]).unwrap();
        assert!(m0.inside && (m0.margin - 1.0).abs() < 1e-15);
    }

    #[test]
    fn membership_margins_agree() {
        // L(1, u) = 1 + u . F shifts the spectrum by exactly 1, so both
        // membership tests must agree to eigensolver accuracy.
        let mut rng = ChaCha8Rng::seed_from_u64(79);
        for _ in 0..10 {
            let d = rng.gen_range(2..=5);
            let k = rng.gen_range(1..=4);
            let p = sample::pencil(&mut rng, d, k);
            for _ in 0..20 {
                let u: Vec<f64> = (0..k).map(|_| rng.gen_range(-2.0..2.0)).collect();
                let a = spectrahedron_member(&p, &u).unwrap();
                let b = dual_member(&p, &u).unwrap();
                assert_eq!(a.inside, b.inside);
                assert!((a.margin - b.margin).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn duality_holds_for_roman_pencil() {
        let report = duality_check(&roman_pencil(), 300, 5).unwrap();
        assert!(report.pass, "max_gap {}", report.max_gap);
        assert_eq!(report.agreements, 300);
        assert!(report.max_gap <= 1e-9);
    }

    #[test]
    fn duality_holds_for_interval() {
        let p = Pencil::new(vec![HermitianMatrix::from_diagonal(&[1.0, -1.0])]).unwrap();
        let report = duality_check(&p, 400, 6).unwrap();
        assert!(report.pass, "max_gap {}", report.max_gap);
        assert!(report.max_gap <= 1e-9);
    }

    #[test]
    fn duality_report_is_deterministic() {
        let mut rng = ChaCha8Rng::seed_from_u64(83);
        let p = sample::pencil(&mut rng, 3, 3);
        let a = duality_check(&p, 100, 42).unwrap();
        let b = duality_check(&p, 100, 42).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn duality_rejects_zero_trials() {
        assert!(duality_check(&roman_pencil(), 0, 1).is_err());
    }

    #[test]
    fn fibonacci_sphere_gives_unit_vectors() {
        let dirs = fibonacci_sphere(500);
        assert_eq!(dirs.len(), 500);
        for [x, y, z] in dirs {
            assert!((x * x + y * y + z * z - 1.0).abs() < 1e-13);
        }
    }

    #[test]
    fn surface_sweep_orders_by_direction_then_branch() {
        let p = roman_pencil();
        let n = 40;
        let sweep = surface_sweep(&p, n, 9).unwrap();
        assert_eq!(sweep.len(), (n + n / 4) * 3);
        for (i, s) in sweep.iter().enumerate() {
            assert_eq!(s.branch, i % 3);
            let norm = dot(&s.direction, &s.direction).sqrt();
            assert!((norm - 1.0).abs() < 1e-12);
        }
        let again = surface_sweep(&p, n, 9).unwrap();
        assert_eq!(sweep, again);
    }

    #[test]
    fn roman_det_matches_brute_force_spectrum() {
        // The eigenvalue product of L(u) is an independent oracle for the
        // closed-form determinant.
        let p = roman_pencil();
        let mut rng = ChaCha8Rng::seed_from_u64(89);
        for _ in 0..20 {
            let u0 = rng.gen_range(-1.0..1.0);
            let u: Vec<f64> = (0..3).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let l = p.evaluate_l(u0, &u).unwrap();
            let prod: f64 = eig_hermitian(&l).unwrap().eigenvalues().iter().product();
            assert!((prod - roman_det(u0, u[0], u[1], u[2])).abs() < 1e-12);
        }
    }
}
