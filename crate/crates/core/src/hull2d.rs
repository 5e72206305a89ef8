//! Planar convex hulls, point-to-region distances, and the two-sided
//! Hausdorff distance between convex regions. These back the hull
//! comparison in the k = 2 theorem certification.

use crate::error::{Error, Result};

/// Absolute tolerance on the cross product of unit-normalized consecutive
/// edges; turns below it are pruned as collinear.
const COLLINEAR_TOL: f64 = 1e-12;

/// Consecutive vertices closer than this are merged.
const DEDUP_TOL: f64 = 1e-12;

/// Convex polygon with counterclockwise vertices, no duplicate and no three
/// nearly collinear consecutive vertices. Degenerate regions are allowed:
/// one vertex (a point) or two (a segment).
#[derive(Debug, Clone, PartialEq)]
pub struct Polygon2D {
    vertices: Vec<[f64; 2]>,
}

impl Polygon2D {
    pub fn vertices(&self) -> &[[f64; 2]] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Largest pairwise vertex distance; 0 for a single vertex.
    pub fn diameter(&self) -> f64 {
        let mut best = 0.0_f64;
        for (i, p) in self.vertices.iter().enumerate() {
            for q in &self.vertices[i + 1..] {
                best = best.max(dist(*p, *q));
            }
        }
        best
    }

    /// Euclidean distance from `x` to the closed region; 0 inside.
    pub fn distance(&self, x: [f64; 2]) -> f64 {
        match self.vertices.len() {
            0 => f64::INFINITY,
            1 => dist(x, self.vertices[0]),
            2 => segment_distance(x, self.vertices[0], self.vertices[1]),
            m => {
                let inside = (0..m).all(|i| {
                    let a = self.vertices[i];
                    let b = self.vertices[(i + 1) % m];
                    cross(sub(b, a), sub(x, a)) >= 0.0
                });
                if inside {
                    return 0.0;
                }
                (0..m)
                    .map(|i| {
                        segment_distance(x, self.vertices[i], self.vertices[(i + 1) % m])
                    })
                    .fold(f64::INFINITY, f64::min)
            }
        }
    }

    /// True iff `x` lies within distance `tol` of the closed region.
    pub fn contains(&self, x: [f64; 2], tol: f64) -> bool {
        self.distance(x) <= tol
    }

    /// Two-sided Hausdorff distance between the closed convex regions. For
    /// convex sets the directed distance is attained at a vertex, so the
    /// vertex sweep is exact.
    pub fn hausdorff(&self, other: &Polygon2D) -> f64 {
        directed_hausdorff(self, other).max(directed_hausdorff(other, self))
    }
}

fn directed_hausdorff(from: &Polygon2D, to: &Polygon2D) -> f64 {
    from.vertices
        .iter()
        .map(|&v| to.distance(v))
        .fold(0.0, f64::max)
}

/// Monotone-chain convex hull. Collinear and near-duplicate points are
/// pruned; fully degenerate inputs yield 1- or 2-vertex polygons.
pub fn convex_hull(points: &[[f64; 2]]) -> Result<Polygon2D> {
    if points.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    pts.dedup();

    if pts.len() == 1 {
        return Ok(Polygon2D { vertices: pts });
    }

    let mut lower = Vec::with_capacity(pts.len());
    for &p in &pts {
        push_chain(&mut lower, p);
    }
    let mut upper = Vec::with_capacity(pts.len());
    for &p in pts.iter().rev() {
        push_chain(&mut upper, p);
    }

    lower.pop();
    upper.pop();
    lower.extend(upper);
    // A segment traversed forth and back collapses to its two endpoints.
    if lower.len() == 2 && dist(lower[0], lower[1]) <= DEDUP_TOL {
        lower.pop();
    }
    Ok(Polygon2D { vertices: lower })
}

fn push_chain(chain: &mut Vec<[f64; 2]>, p: [f64; 2]) {
    while chain.len() >= 2 && !strict_left_turn(chain[chain.len() - 2], chain[chain.len() - 1], p)
    {
        chain.pop();
    }
    if let Some(&last) = chain.last() {
        if dist(last, p) <= DEDUP_TOL {
            return;
        }
    }
    chain.push(p);
}

fn strict_left_turn(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> bool {
    let u = sub(b, a);
    let v = sub(c, b);
    let scale = norm(u) * norm(v);
    cross(u, v) > COLLINEAR_TOL * scale
}

/// Largest pairwise distance of a point set.
pub fn diameter(points: &[[f64; 2]]) -> f64 {
    let mut best = 0.0_f64;
    for (i, p) in points.iter().enumerate() {
        for q in &points[i + 1..] {
            best = best.max(dist(*p, *q));
        }
    }
    best
}

fn sub(a: [f64; 2], b: [f64; 2]) -> [f64; 2] {
    [a[0] - b[0], a[1] - b[1]]
}

fn cross(u: [f64; 2], v: [f64; 2]) -> f64 {
    u[0] * v[1] - u[1] * v[0]
}

fn norm(u: [f64; 2]) -> f64 {
    u[0].hypot(u[1])
}

fn dist(a: [f64; 2], b: [f64; 2]) -> f64 {
    norm(sub(a, b))
}

fn segment_distance(x: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    let ab = sub(b, a);
    let len2 = ab[0] * ab[0] + ab[1] * ab[1];
    if len2 == 0.0 {
        return dist(x, a);
    }
    let t = ((x[0] - a[0]) * ab[0] + (x[1] - a[1]) * ab[1]) / len2;
    let t = t.clamp(0.0, 1.0);
    dist(x, [a[0] + t * ab[0], a[1] + t * ab[1]])
}
