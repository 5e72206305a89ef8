//! The four subcommands. Each one loads a tuple file, runs the relevant
//! sweep or certification, writes its artifacts (CSV, SVG) into the output
//! directory and returns a [`RunReport`]; the binary turns the report's
//! pass flags into the exit status.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use numrange::convsupp::{
    dual_member, duality_check, roman_pencil, roman_quartic, spectrahedron_member, surface_sweep,
};
use numrange::hull2d::{convex_hull, Polygon2D};
use numrange::numrange::{boundary_samples, kippenhahn_samples, verify_curve_in_range, verify_theorem};
use numrange::render::{render_svg, write_curve_csv, write_surface_csv, write_text, Layer, PlotSpec};
use numrange::Pencil;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::input::{self, LoadedInput};
use crate::report::RunReport;

/// Relative tangency slack allowed on surface samples, `|<u,x> - lambda|`
/// against `1 + |lambda|`.
const TANGENCY_TOL: f64 = 1e-9;

/// Max Roman-quartic residual accepted when the input is the standard
/// Roman-surface tuple.
const ROMAN_TOL: f64 = 1e-9;

/// Margins of the two membership tests must agree to this absolute slack;
/// they evaluate the same matrix, so only eigensolver noise separates them.
const MARGIN_TOL: f64 = 1e-12;

/// Inclusion checks run at a hundredth of the Hausdorff tolerance: half-plane
/// violations are first-order while hull gaps are second-order in the grid.
const CURVE_TOL_RATIO: f64 = 1e-2;

const CANVAS: u32 = 800;

/// Samples the support lines of W, writes the touch points, their convex
/// hull and a plot of both.
pub fn boundary(input: &Path, grid: usize, out: &Path) -> Result<RunReport> {
    let (loaded, mut report) = prepare("boundary", input, out)?;
    let p = require_pair(&loaded, "boundary")?;
    report.set("grid", grid);

    let (touch, lines) = boundary_samples(p, grid)?;
    let hull = convex_hull(&touch)?;

    let mut csv = String::from("theta,h,x1,x2\n");
    for line in &lines {
        for pt in &line.touch_points {
            let _ = writeln!(csv, "{:.16e},{:.16e},{:.16e},{:.16e}", line.theta, line.h, pt[0], pt[1]);
        }
    }
    write_text(&out.join("boundary.csv"), &csv)?;
    write_text(&out.join("hull.csv"), &vertex_csv(&hull))?;

    let plot = PlotSpec::fitted(
        CANVAS,
        CANVAS,
        vec![
            Layer::polygon(hull.vertices().to_vec(), "#888888", 1.0),
            Layer::points(touch.clone(), "#1f77b4", 2.0),
        ],
    )?;
    write_text(&out.join("boundary.svg"), &render_svg(&plot)?)?;

    let norms: Vec<f64> = touch.iter().map(|p| p[0].hypot(p[1])).collect();
    report.set("support_lines", lines.len());
    report.set("touch_points", touch.len());
    report.set("hull_vertices", hull.len());
    report.set_metric("hull_diameter", hull.diameter());
    report.set_metric("touch_norm_min", norms.iter().cloned().fold(f64::INFINITY, f64::min));
    report.set_metric("touch_norm_max", norms.iter().cloned().fold(0.0, f64::max));
    Ok(report)
}

/// Samples the Kippenhahn curve, certifies that its hull matches the touch
/// hull and that no sample leaves W, and plots the curve over the hull.
pub fn kippenhahn(input: &Path, grid: usize, tol: f64, out: &Path) -> Result<RunReport> {
    let (loaded, mut report) = prepare("kippenhahn", input, out)?;
    let p = require_pair(&loaded, "kippenhahn")?;
    if !tol.is_finite() || tol <= 0.0 {
        bail!("tolerance must be positive, got {tol}");
    }
    let curve_tol = tol * CURVE_TOL_RATIO;
    report.set("grid", grid);
    report.set_metric("tol", tol);
    report.set_metric("curve_tol", curve_tol);

    let curve = kippenhahn_samples(p, grid)?;
    let (touch, _) = boundary_samples(p, grid)?;
    let hull = convex_hull(&touch)?;
    let theorem = verify_theorem(p, grid, tol)?;
    let inclusion = verify_curve_in_range(p, grid, curve_tol)?;

    write_curve_csv(&curve, &out.join("curve.csv"))?;
    let plot = PlotSpec::fitted(
        CANVAS,
        CANVAS,
        vec![
            Layer::polygon(hull.vertices().to_vec(), "#888888", 1.0),
            Layer::points(curve.iter().map(|s| s.point).collect(), "#d62728", 1.5),
        ],
    )?;
    write_text(&out.join("kippenhahn.svg"), &render_svg(&plot)?)?;

    report.set("curve_points", curve.len());
    report.set_metric("hull_diameter", hull.diameter());
    report.set_metric("hausdorff", theorem.hausdorff);
    report.set_metric("hausdorff_scale", theorem.scale);
    report.set_metric("max_violation", inclusion.max_violation);
    report.set_metric("violation_scale", inclusion.scale);
    report.set_flag("theorem_pass", theorem.pass);
    report.set_flag("curve_pass", inclusion.pass);
    Ok(report)
}

/// Sweeps boundary-generating samples of the convex support over a
/// direction grid, writes them with coordinate-plane projections, and
/// checks the tangency and variety residuals. For the standard
/// Roman-surface tuple the quartic residual is reported as well.
pub fn surface(input: &Path, directions: usize, seed: u64, out: &Path) -> Result<RunReport> {
    let (loaded, mut report) = prepare("surface", input, out)?;
    let p = &loaded.pencil;
    let k = p.arity();
    report.set("directions", directions);
    report.set("seed", seed);

    let samples = surface_sweep(p, directions, seed)?;
    write_surface_csv(&samples, k, &out.join("surface.csv"))?;
    for (i, j) in projection_pairs(k) {
        let data: Vec<[f64; 2]> = samples
            .iter()
            .map(|s| if i == j { [s.point[i], 0.0] } else { [s.point[i], s.point[j]] })
            .collect();
        let plot = PlotSpec::fitted(CANVAS, CANVAS, vec![Layer::points(data, "#1f77b4", 1.5)])?;
        let name = if i == j {
            format!("surface_x{}.svg", i + 1)
        } else {
            format!("surface_x{}x{}.svg", i + 1, j + 1)
        };
        write_text(&out.join(name), &render_svg(&plot)?)?;
    }

    let mut tangency_max = 0.0_f64;
    let mut residual_max = 0.0_f64;
    for s in &samples {
        let contact = dot(&s.direction, &s.point);
        tangency_max = tangency_max.max((contact - s.lambda).abs() / (1.0 + s.lambda.abs()));
        residual_max = residual_max.max(p.variety_residual(s.lambda, &s.direction)?);
    }
    report.set("samples", samples.len());
    report.set_metric("tangency_max", tangency_max);
    report.set_metric("residual_max", residual_max);
    report.set_metric("residual_tol", p.residual_tolerance());
    report.set_flag("tangency_pass", tangency_max <= TANGENCY_TOL);
    report.set_flag("residual_pass", residual_max <= p.residual_tolerance());

    if is_roman(p) {
        let roman_max = samples
            .iter()
            .map(|s| roman_quartic(&s.point).abs())
            .fold(0.0, f64::max);
        report.set_metric("roman_residual_max", roman_max);
        report.set_flag("roman_pass", roman_max <= ROMAN_TOL);
    }
    Ok(report)
}

/// Runs the seeded weak-duality check and a margin-agreement sweep between
/// the spectrahedron test `lambda_min(L(1,u)) >= 0` and the support-side
/// test `1 + lambda_min(u.F) >= 0`.
pub fn duality(input: &Path, trials: usize, seed: u64, out: &Path) -> Result<RunReport> {
    let (loaded, mut report) = prepare("duality", input, out)?;
    let p = &loaded.pencil;
    if trials == 0 {
        bail!("duality requires at least one trial");
    }
    report.set("trials", trials);
    report.set("seed", seed);

    let check = duality_check(p, trials, seed)?;

    // Streams 1..=trials are taken by duality_check; the sweep draws from
    // the default stream of the same seed.
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut margin_gap_max = 0.0_f64;
    let mut flags_agree = true;
    for _ in 0..trials {
        let u: Vec<f64> = (0..p.arity()).map(|_| rng.gen_range(-3.0..3.0)).collect();
        let a = spectrahedron_member(p, &u)?;
        let b = dual_member(p, &u)?;
        margin_gap_max = margin_gap_max.max((a.margin - b.margin).abs());
        flags_agree &= a.inside == b.inside;
    }

    report.set("agreements", check.agreements);
    report.set_metric("duality_gap_max", check.max_gap);
    report.set_metric("margin_gap_max", margin_gap_max);
    report.set_flag("duality_pass", check.pass);
    report.set_flag("margins_pass", flags_agree && margin_gap_max <= MARGIN_TOL);
    Ok(report)
}

fn prepare(command: &str, input: &Path, out: &Path) -> Result<(LoadedInput, RunReport)> {
    let loaded = input::load(input)?;
    fs::create_dir_all(out)
        .with_context(|| format!("cannot create output directory {}", out.display()))?;
    let mut report = RunReport::new(command);
    report.set("input", loaded.path.display());
    report.set("input_sha256", &loaded.digest);
    report.set("d", loaded.pencil.order());
    report.set("k", loaded.pencil.arity());
    Ok((loaded, report))
}

fn require_pair<'a>(loaded: &'a LoadedInput, command: &str) -> Result<&'a Pencil> {
    if loaded.pencil.arity() != 2 {
        bail!(
            "{command} works on a pair of matrices (k = 2), but {} has k = {}",
            loaded.path.display(),
            loaded.pencil.arity()
        );
    }
    Ok(&loaded.pencil)
}

/// Coordinate planes to project onto: the real line for k = 1, the plane
/// itself for k = 2, and the three planes spanned by the first three
/// coordinates otherwise.
fn projection_pairs(k: usize) -> Vec<(usize, usize)> {
    match k {
        1 => vec![(0, 0)],
        2 => vec![(0, 1)],
        _ => vec![(0, 1), (0, 2), (1, 2)],
    }
}

fn vertex_csv(hull: &Polygon2D) -> String {
    let mut csv = String::from("x1,x2\n");
    for v in hull.vertices() {
        let _ = writeln!(csv, "{:.16e},{:.16e}", v[0], v[1]);
    }
    csv
}

fn is_roman(p: &Pencil) -> bool {
    p.order() == 3 && p.arity() == 3 && p.coefficients() == roman_pencil().coefficients()
}

fn dot(u: &[f64], x: &[f64]) -> f64 {
    u.iter().zip(x).map(|(a, b)| a * b).sum()
}
