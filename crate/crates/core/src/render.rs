//! Static plot and table output: scalable-vector-graphics documents for
//! point clouds, polylines and polygons, and comma-separated tables of
//! curve and surface samples with full-precision reals.

use std::fmt::Write as _;
use std::path::Path;

use crate::convsupp::SurfaceSample;
use crate::error::{Error, Result};
use crate::numrange::CurveSample;

/// Axis-aligned data-space rectangle mapped onto the pixel canvas.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Viewport {
    pub min_x: f64,
    pub min_y: f64,
    pub max_x: f64,
    pub max_y: f64,
}

impl Viewport {
    /// Bounding box of `points` expanded 10% (a 5% margin on each side),
    /// the default viewport; degenerate boxes get a unit margin so the
    /// area stays positive.
    pub fn around(points: impl IntoIterator<Item = [f64; 2]>) -> Result<Viewport> {
        let mut any = false;
        let (mut min_x, mut min_y) = (f64::INFINITY, f64::INFINITY);
        let (mut max_x, mut max_y) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
        for [x, y] in points {
            any = true;
            min_x = min_x.min(x);
            min_y = min_y.min(y);
            max_x = max_x.max(x);
            max_y = max_y.max(y);
        }
        if !any {
            return Err(Error::EmptyPointSet);
        }
        let pad = |lo: f64, hi: f64| {
            let margin = if hi > lo { 0.05 * (hi - lo) } else { 1.0 };
            (lo - margin, hi + margin)
        };
        let (min_x, max_x) = pad(min_x, max_x);
        let (min_y, max_y) = pad(min_y, max_y);
        Ok(Viewport {
            min_x,
            min_y,
            max_x,
            max_y,
        })
    }

    pub fn width(&self) -> f64 {
        self.max_x - self.min_x
    }

    pub fn height(&self) -> f64 {
        self.max_y - self.min_y
    }

    /// Affine data-to-pixel map with the y axis flipped.
    pub fn to_pixel(&self, point: [f64; 2], width: u32, height: u32) -> [f64; 2] {
        let px = (point[0] - self.min_x) / self.width() * width as f64;
        let py = (1.0 - (point[1] - self.min_y) / self.height()) * height as f64;
        [px, py]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LayerKind {
    Points,
    Polyline,
    Polygon,
}

/// One drawable layer: a point cloud, an open polyline, or a closed
/// polygon outline.
#[derive(Debug, Clone, PartialEq)]
pub struct Layer {
    pub kind: LayerKind,
    pub data: Vec<[f64; 2]>,
    /// Stroke (and point fill) color name.
    pub color: String,
    pub stroke_width: f64,
    pub point_radius: f64,
}

impl Layer {
    pub fn points(data: Vec<[f64; 2]>, color: &str, radius: f64) -> Layer {
        Layer {
            kind: LayerKind::Points,
            data,
            color: color.to_string(),
            stroke_width: 0.0,
            point_radius: radius,
        }
    }

    pub fn polyline(data: Vec<[f64; 2]>, color: &str, stroke_width: f64) -> Layer {
        Layer {
            kind: LayerKind::Polyline,
            data,
            color: color.to_string(),
            stroke_width,
            point_radius: 0.0,
        }
    }

    pub fn polygon(data: Vec<[f64; 2]>, color: &str, stroke_width: f64) -> Layer {
        Layer {
            kind: LayerKind::Polygon,
            data,
            color: color.to_string(),
            stroke_width,
            point_radius: 0.0,
        }
    }
}

/// Full description of one plot; rendering is a pure function of it.
#[derive(Debug, Clone, PartialEq)]
pub struct PlotSpec {
    pub width: u32,
    pub height: u32,
    pub viewport: Viewport,
    pub layers: Vec<Layer>,
}

impl PlotSpec {
    /// Plot with the default viewport around all layer data.
    pub fn fitted(width: u32, height: u32, layers: Vec<Layer>) -> Result<PlotSpec> {
        let viewport = Viewport::around(layers.iter().flat_map(|l| l.data.iter().copied()))?;
        Ok(PlotSpec {
            width,
            height,
            viewport,
            layers,
        })
    }
}

/// Renders the spec to a scalable-vector-graphics document. Deterministic:
/// equal specs produce byte-identical documents.
pub fn render_svg(spec: &PlotSpec) -> Result<String> {
    if spec.width == 0 || spec.height == 0 {
        return Err(Error::InvalidPlot(format!(
            "canvas must have positive pixel area, got {}x{}",
            spec.width, spec.height
        )));
    }
    if !(spec.viewport.width() > 0.0 && spec.viewport.height() > 0.0) {
        return Err(Error::InvalidPlot(format!(
            "viewport must have positive area, got {:?}",
            spec.viewport
        )));
    }
    for (i, layer) in spec.layers.iter().enumerate() {
        if layer.data.is_empty() {
            return Err(Error::InvalidPlot(format!("layer {i} has no data")));
        }
    }

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
        w = spec.width,
        h = spec.height
    );
    let _ = writeln!(
        out,
        r#"<rect width="{}" height="{}" fill="white"/>"#,
        spec.width, spec.height
    );
    for layer in &spec.layers {
        let px: Vec<[f64; 2]> = layer
            .data
            .iter()
            .map(|&p| spec.viewport.to_pixel(p, spec.width, spec.height))
            .collect();
        match layer.kind {
            LayerKind::Points => {
                for [x, y] in &px {
                    let _ = writeln!(
                        out,
                        r#"<circle cx="{x:.3}" cy="{y:.3}" r="{r}" fill="{c}"/>"#,
                        r = layer.point_radius,
                        c = layer.color
                    );
                }
            }
            LayerKind::Polyline => {
                let _ = write!(out, r#"<polyline points=""#);
                for (i, [x, y]) in px.iter().enumerate() {
                    let sep = if i == 0 { "" } else { " " };
                    let _ = write!(out, "{sep}{x:.3},{y:.3}");
                }
                let _ = writeln!(
                    out,
                    r#"" fill="none" stroke="{}" stroke-width="{}"/>"#,
                    layer.color, layer.stroke_width
                );
            }
            LayerKind::Polygon => {
                let _ = write!(out, r#"<path d=""#);
                for (i, [x, y]) in px.iter().enumerate() {
                    let cmd = if i == 0 { "M" } else { "L" };
                    let sep = if i == 0 { "" } else { " " };
                    let _ = write!(out, "{sep}{cmd} {x:.3} {y:.3}");
                }
                let _ = writeln!(
                    out,
                    r#" Z" fill="none" stroke="{}" stroke-width="{}"/>"#,
                    layer.color, layer.stroke_width
                );
            }
        }
    }
    let _ = writeln!(out, "</svg>");
    Ok(out)
}

/// Full-precision decimal for exact round-tripping of binary doubles
/// (17 significant digits).
fn full(x: f64) -> String {
    format!("{x:.16e}")
}

/// Writes curve samples as comma-separated values with a header row.
pub fn write_curve_csv(samples: &[CurveSample], path: &Path) -> Result<()> {
    let mut out = String::from("theta,branch,lambda,lambda_prime,x1,x2\n");
    for s in samples {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            full(s.theta),
            s.branch,
            full(s.lambda),
            full(s.lambda_prime),
            full(s.point[0]),
            full(s.point[1])
        );
    }
    write_text(path, &out)
}

/// Writes surface samples as comma-separated values with a header row;
/// direction and point components are expanded per coordinate.
pub fn write_surface_csv(samples: &[SurfaceSample], k: usize, path: &Path) -> Result<()> {
    let mut out = String::new();
    for i in 1..=k {
        let _ = write!(out, "u{i},");
    }
    out.push_str("branch,lambda");
    for i in 1..=k {
        let _ = write!(out, ",x{i}");
    }
    out.push('\n');
    for s in samples {
        for i in 0..k {
            let _ = write!(out, "{},", full(s.direction[i]));
        }
        let _ = write!(out, "{},{}", s.branch, full(s.lambda));
        for i in 0..k {
            let _ = write!(out, ",{}", full(s.point[i]));
        }
        out.push('\n');
    }
    write_text(path, &out)
}

/// Writes a rendered document (or any text) with path-context errors.
pub fn write_text(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ComplexMatrix;
    use crate::numrange::kippenhahn_samples;
    use crate::pencil::Pencil;
    use crate::{hull2d, numrange};
    use num_complex::Complex64;

    fn square_layer(kind: LayerKind) -> Layer {
        Layer {
            kind,
            data: vec![[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]],
            color: "black".to_string(),
            stroke_width: 1.0,
            point_radius: 2.0,
        }
    }

    #[test]
    fn single_point_renders_one_circle() {
        let spec = PlotSpec::fitted(100, 100, vec![Layer::points(vec![[0.5, 0.5]], "red", 2.0)])
            .unwrap();
        let svg = render_svg(&spec).unwrap();
        assert_eq!(svg.matches("<circle").count(), 1);
        assert!(svg.starts_with("<?xml"));
        assert!(svg.trim_end().ends_with("</svg>"));
    }

    #[test]
    fn polygon_square_is_one_closed_path_with_four_segments() {
        let spec = PlotSpec::fitted(100, 100, vec![square_layer(LayerKind::Polygon)]).unwrap();
        let svg = render_svg(&spec).unwrap();
        assert_eq!(svg.matches("<path").count(), 1);
        let d = svg.split("d=\"").nth(1).unwrap().split('"').next().unwrap();
        assert_eq!(d.matches('M').count(), 1);
        assert_eq!(d.matches('L').count(), 3);
        assert!(d.trim_end().ends_with('Z'));
    }

    #[test]
    fn rendering_is_deterministic() {
        let spec = PlotSpec::fitted(
            640,
            480,
            vec![
                square_layer(LayerKind::Polyline),
                Layer::points(vec![[0.25, 0.5], [0.75, 0.5]], "blue", 1.5),
            ],
        )
        .unwrap();
        assert_eq!(render_svg(&spec).unwrap(), render_svg(&spec).unwrap());
    }

    #[test]
    fn invalid_specs_are_rejected() {
        let vp = Viewport {
            min_x: 0.0,
            min_y: 0.0,
            max_x: 0.0,
            max_y: 1.0,
        };
        let spec = PlotSpec {
            width: 100,
            height: 100,
            viewport: vp,
            layers: vec![square_layer(LayerKind::Points)],
        };
        assert!(matches!(render_svg(&spec), Err(Error::InvalidPlot(_))));

        let empty = PlotSpec {
            width: 100,
            height: 100,
            viewport: Viewport {
                min_x: 0.0,
                min_y: 0.0,
                max_x: 1.0,
                max_y: 1.0,
            },
            layers: vec![Layer::points(vec![], "red", 1.0)],
        };
        assert!(matches!(render_svg(&empty), Err(Error::InvalidPlot(_))));
    }

    #[test]
    fn disk_curve_and_hull_render_concentric() {
        // Radius-1/2 disk oracle: curve samples and hull vertices must land
        // on the same pixel circle, centered in the canvas, within 1 pixel.
        let mut a = ComplexMatrix::zeros(2);
        a.set(0, 1, Complex64::new(1.0, 0.0));
        let p = Pencil::from_matrix(&a);
        let curve: Vec<[f64; 2]> = kippenhahn_samples(&p, 360)
            .unwrap()
            .iter()
            .map(|s| s.point)
            .collect();
        let (touch, _) = numrange::boundary_samples(&p, 360).unwrap();
        let hull = hull2d::convex_hull(&touch).unwrap();
        let spec = PlotSpec::fitted(
            1000,
            1000,
            vec![
                Layer::polyline(curve.clone(), "blue", 1.0),
                Layer::polygon(hull.vertices().to_vec(), "black", 1.0),
            ],
        )
        .unwrap();
        let expect_radius = 0.5 / 1.1 * 1000.0;
        for &pt in curve.iter().chain(hull.vertices()) {
            let [x, y] = spec.viewport.to_pixel(pt, 1000, 1000);
            let r = (x - 500.0).hypot(y - 500.0);
            assert!((r - expect_radius).abs() <= 1.0, "pixel radius {r}");
        }
        let svg = render_svg(&spec).unwrap();
        assert_eq!(svg.matches("<polyline").count(), 1);
        assert_eq!(svg.matches("<path").count(), 1);
    }

    #[test]
    fn pixel_map_flips_y() {
        let vp = Viewport {
            min_x: 0.0,
            min_y: 0.0,
            max_x: 2.0,
            max_y: 1.0,
        };
        assert_eq!(vp.to_pixel([0.0, 0.0], 200, 100), [0.0, 100.0]);
        assert_eq!(vp.to_pixel([2.0, 1.0], 200, 100), [200.0, 0.0]);
        assert_eq!(vp.to_pixel([1.0, 0.5], 200, 100), [100.0, 50.0]);
    }

    #[test]
    fn curve_csv_roundtrips_bit_exactly() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("curve.csv");
        let samples: Vec<CurveSample> = (0..3)
            .map(|i| {
                let theta = 0.1 + i as f64 / 3.0;
                let lambda = (-1.0_f64).powi(i) / 3.0;
                CurveSample {
                    theta,
                    branch: i as usize,
                    lambda,
                    lambda_prime: lambda.sin(),
                    point: numrange::tangent_point(lambda, lambda.sin(), theta),
                }
            })
            .collect();
        write_curve_csv(&samples, &path).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 4);
        assert_eq!(lines[0], "theta,branch,lambda,lambda_prime,x1,x2");
        for (s, line) in samples.iter().zip(&lines[1..]) {
            let f: Vec<&str> = line.split(',').collect();
            assert_eq!(f[0].parse::<f64>().unwrap(), s.theta);
            assert_eq!(f[1].parse::<usize>().unwrap(), s.branch);
            assert_eq!(f[2].parse::<f64>().unwrap(), s.lambda);
            assert_eq!(f[3].parse::<f64>().unwrap(), s.lambda_prime);
            assert_eq!(f[4].parse::<f64>().unwrap(), s.point[0]);
            assert_eq!(f[5].parse::<f64>().unwrap(), s.point[1]);
        }
    }

    #[test]
    fn surface_csv_has_expanded_columns() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("surface.csv");
        let sample = crate::convsupp::SurfaceSample {
            direction: vec![0.6, 0.8, 0.0],
            branch: 1,
            lambda: 0.25,
            point: vec![0.1, -0.2, 0.3],
        };
        write_surface_csv(std::slice::from_ref(&sample), 3, &path).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "u1,u2,u3,branch,lambda,x1,x2,x3");
        assert_eq!(lines.len(), 2);
        let f: Vec<&str> = lines[1].split(',').collect();
        assert_eq!(f[1].parse::<f64>().unwrap(), 0.8);
        assert_eq!(f[6].parse::<f64>().unwrap(), -0.2);

        write_surface_csv(&[], 3, &path).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(text, "u1,u2,u3,branch,lambda,x1,x2,x3\n");
    }

    #[test]
    fn io_errors_carry_the_path() {
        let err = write_text(Path::new("/nonexistent-dir/out.svg"), "x").unwrap_err();
        match err {
            Error::Io { path, .. } => {
                assert_eq!(path, Path::new("/nonexistent-dir/out.svg"))
            }
            other => panic!("unexpected error {other:?}"),
        }
    }
}
