//! Planar primitives: points, `(θ, d)`-parametrized lines, convex polygons,
//! half-plane clipping.
//!
//! A line with orientation angle `θ ∈ [0, π)` and signed distance `d` is the
//! set `{(x, y) : -x sin θ + y cos θ = d}`; `d` is the coordinate of the line
//! along its left normal `(-sin θ, cos θ)`. Angles outside `[0, π)` are
//! understood modulo π.

use std::f64::consts::PI;
use std::ops::{Add, Mul, Sub};
use thiserror::Error;

/// Angular tolerance below which two continuous directions count as parallel.
pub const EPS_PARALLEL: f64 = 1e-12;

/// Relative tolerance for collinear-vertex cleanup and convexity checks.
pub const COLLINEAR_REL_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    pub fn new(x: f64, y: f64) -> Point {
        Point { x, y }
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dist(self, other: Point) -> f64 {
        (self - other).norm()
    }

    pub fn dot(self, other: Point) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the cross product `self × other`.
    pub fn cross(self, other: Point) -> f64 {
        self.x * other.y - self.y * other.x
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, s: f64) -> Point {
        Point::new(self.x * s, self.y * s)
    }
}

/// Normalize an angle into `[0, π)` (directions are identified modulo π).
pub fn normalize_angle(a: f64) -> f64 {
    let r = a.rem_euclid(PI);
    if r >= PI {
        0.0
    } else {
        r
    }
}

/// Unit vector at the given angle.
pub fn unit_vec(a: f64) -> Point {
    Point::new(a.cos(), a.sin())
}

#[derive(Clone, Copy, Debug)]
pub struct Line {
    /// Orientation angle in `[0, π)`.
    pub theta: f64,
    /// Signed distance to the origin along the left normal.
    pub d: f64,
    /// Index of the direction atom for lines drawn from a discrete
    /// distribution. Lines sharing an atom are parallel by construction and
    /// never intersect, regardless of floating-point noise in `theta`.
    pub atom: Option<u32>,
}

impl Line {
    pub fn new(theta: f64, d: f64) -> Line {
        Line {
            theta: normalize_angle(theta),
            d,
            atom: None,
        }
    }

    pub fn with_atom(theta: f64, d: f64, atom: u32) -> Line {
        Line {
            theta: normalize_angle(theta),
            d,
            atom: Some(atom),
        }
    }

    /// The line through `p` with orientation `angle`.
    pub fn through(p: Point, angle: f64) -> Line {
        let theta = normalize_angle(angle);
        Line::new(theta, -p.x * theta.sin() + p.y * theta.cos())
    }

    pub fn direction(&self) -> Point {
        unit_vec(self.theta)
    }

    /// Left normal; `signed_offset` grows in this direction.
    pub fn normal(&self) -> Point {
        Point::new(-self.theta.sin(), self.theta.cos())
    }

    /// Signed distance of `p` from the line (positive on the left-normal side).
    pub fn signed_offset(&self, p: Point) -> f64 {
        -p.x * self.theta.sin() + p.y * self.theta.cos() - self.d
    }

    /// Point at parameter `t` along the direction, starting from the foot of
    /// the perpendicular from the origin.
    pub fn point_at(&self, t: f64) -> Point {
        self.normal() * self.d + self.direction() * t
    }

    /// Parameter of the orthogonal projection of `p` onto the line.
    pub fn param_of(&self, p: Point) -> f64 {
        p.dot(self.direction())
    }

    /// Whether the line meets the closed segment `[a, b]`.
    pub fn hits_segment(&self, a: Point, b: Point) -> bool {
        self.signed_offset(a) * self.signed_offset(b) <= 0.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum LineIntersection {
    Point(Point),
    Parallel,
}

/// Intersection of two lines. Lines from the same direction atom are
/// parallel structurally; continuous directions fall back to an angular
/// tolerance test.
pub fn intersect_lines(a: &Line, b: &Line) -> LineIntersection {
    if let (Some(ia), Some(ib)) = (a.atom, b.atom) {
        if ia == ib {
            return LineIntersection::Parallel;
        }
    }
    let det = (b.theta - a.theta).sin();
    if det.abs() < EPS_PARALLEL {
        return LineIntersection::Parallel;
    }
    let (sa, ca) = a.theta.sin_cos();
    let (sb, cb) = b.theta.sin_cos();
    // Cramer on  -sa x + ca y = da ; -sb x + cb y = db  (determinant = sin(θb-θa)).
    let x = (a.d * cb - ca * b.d) / det;
    let y = (a.d * sb - sa * b.d) / det;
    LineIntersection::Point(Point::new(x, y))
}

#[derive(Debug, Error, PartialEq)]
pub enum PolygonError {
    #[error("polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("polygon is not convex")]
    NotConvex,
    #[error("polygon has non-positive area")]
    ZeroArea,
}

#[derive(Debug, Error, PartialEq)]
pub enum ClipError {
    #[error("anchor lies on the clipping line (|offset| = {0:.3e})")]
    AnchorOnLine(f64),
}

/// Convex polygon with counter-clockwise vertices and no three consecutive
/// collinear vertices.
#[derive(Clone, Debug)]
pub struct ConvexPolygon {
    verts: Vec<Point>,
}

impl ConvexPolygon {
    /// Validate a vertex list as-is (must already be CCW, convex, cleaned).
    pub fn new(verts: Vec<Point>) -> Result<ConvexPolygon, PolygonError> {
        if verts.len() < 3 {
            return Err(PolygonError::TooFewVertices(verts.len()));
        }
        let poly = ConvexPolygon { verts };
        let area = poly.area();
        if area <= 0.0 {
            return Err(PolygonError::ZeroArea);
        }
        let n = poly.verts.len();
        for i in 0..n {
            let a = poly.verts[i];
            let b = poly.verts[(i + 1) % n];
            let c = poly.verts[(i + 2) % n];
            let ab = b - a;
            let bc = c - b;
            let tol = COLLINEAR_REL_TOL * ab.norm() * bc.norm();
            if ab.cross(bc) < -tol {
                return Err(PolygonError::NotConvex);
            }
        }
        Ok(poly)
    }

    /// Build from a raw traversal loop: orients CCW, drops duplicate and
    /// near-collinear vertices (middle vertex closer than `tol_abs` to the
    /// chord through its neighbours), then validates convexity.
    pub fn from_loop(verts: &[Point], tol_abs: f64) -> Result<ConvexPolygon, PolygonError> {
        let mut vs: Vec<Point> = Vec::with_capacity(verts.len());
        for &p in verts {
            if vs.last().map_or(true, |&q| p.dist(q) > tol_abs) {
                vs.push(p);
            }
        }
        while vs.len() > 1 && vs[0].dist(*vs.last().unwrap()) <= tol_abs {
            vs.pop();
        }
        if vs.len() < 3 {
            return Err(PolygonError::TooFewVertices(vs.len()));
        }
        if signed_area(&vs) < 0.0 {
            vs.reverse();
        }
        // Iterate collinear removal to a fixed point; each pass is O(n).
        loop {
            let n = vs.len();
            if n < 3 {
                return Err(PolygonError::TooFewVertices(n));
            }
            let mut removed = false;
            let mut i = 0;
            while i < vs.len() && vs.len() >= 3 {
                let n = vs.len();
                let a = vs[(i + n - 1) % n];
                let b = vs[i];
                let c = vs[(i + 1) % n];
                let ac = c - a;
                let dist_num = (b - a).cross(ac).abs();
                if dist_num <= tol_abs * ac.norm().max(f64::MIN_POSITIVE) {
                    vs.remove(i);
                    removed = true;
                } else {
                    i += 1;
                }
            }
            if !removed {
                break;
            }
        }
        ConvexPolygon::new(vs)
    }

    /// Triangle from three vertices (any orientation).
    pub fn triangle(a: Point, b: Point, c: Point) -> Result<ConvexPolygon, PolygonError> {
        let mut vs = vec![a, b, c];
        if signed_area(&vs) < 0.0 {
            vs.reverse();
        }
        ConvexPolygon::new(vs)
    }

    pub fn vertices(&self) -> &[Point] {
        &self.verts
    }

    pub fn vertex_count(&self) -> usize {
        self.verts.len()
    }

    pub fn area(&self) -> f64 {
        signed_area(&self.verts)
    }

    pub fn centroid(&self) -> Point {
        let n = self.verts.len() as f64;
        let mut c = Point::ORIGIN;
        for &v in &self.verts {
            c = c + v;
        }
        c * (1.0 / n)
    }

    /// Vertex minimal in `(x, then y)` order.
    pub fn lex_min_vertex(&self) -> Point {
        *self
            .verts
            .iter()
            .min_by(|a, b| (a.x, a.y).partial_cmp(&(b.x, b.y)).unwrap())
            .unwrap()
    }

    /// Length of the interval `{-x sin θ + y cos θ : (x, y) ∈ polygon}`, i.e.
    /// the range of signed distances `d` of direction-`θ` lines hitting it.
    pub fn projection_width(&self, theta: f64) -> f64 {
        let (s, c) = theta.sin_cos();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for v in &self.verts {
            let p = -v.x * s + v.y * c;
            lo = lo.min(p);
            hi = hi.max(p);
        }
        hi - lo
    }

    /// Whether the line meets the closed polygon.
    pub fn hit_by(&self, line: &Line) -> bool {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for &v in &self.verts {
            let s = line.signed_offset(v);
            lo = lo.min(s);
            hi = hi.max(s);
        }
        lo <= 0.0 && hi >= 0.0
    }

    /// Smallest centroid-centred disk containing the polygon.
    pub fn enclosing_disk(&self) -> (Point, f64) {
        let c = self.centroid();
        let r = self
            .verts
            .iter()
            .map(|&v| v.dist(c))
            .fold(0.0_f64, f64::max);
        (c, r)
    }

    /// Intersection with the closed half-plane bounded by `line` that
    /// contains `anchor`. Returns `None` when the intersection has no area.
    ///
    /// `eps_on` is the absolute distance below which the anchor counts as
    /// lying on the line (callers use `1e-9 ×` their window scale).
    pub fn clip_halfplane(
        &self,
        line: &Line,
        anchor: Point,
        eps_on: f64,
    ) -> Result<Option<ConvexPolygon>, ClipError> {
        let a_off = line.signed_offset(anchor);
        if a_off.abs() <= eps_on {
            return Err(ClipError::AnchorOnLine(a_off.abs()));
        }
        let side = a_off.signum();
        let n = self.verts.len();
        let mut out: Vec<Point> = Vec::with_capacity(n + 1);
        for i in 0..n {
            let p = self.verts[i];
            let q = self.verts[(i + 1) % n];
            let sp = side * line.signed_offset(p);
            let sq = side * line.signed_offset(q);
            if sp >= 0.0 {
                out.push(p);
            }
            if (sp > 0.0 && sq < 0.0) || (sp < 0.0 && sq > 0.0) {
                let t = sp / (sp - sq);
                out.push(p + (q - p) * t);
            }
        }
        let scale = self
            .verts
            .iter()
            .map(|v| v.norm())
            .fold(1e-300_f64, f64::max);
        match ConvexPolygon::from_loop(&out, COLLINEAR_REL_TOL * scale) {
            Ok(poly) => Ok(Some(poly)),
            Err(_) => Ok(None),
        }
    }
}

/// Shoelace signed area (positive for CCW).
pub fn signed_area(verts: &[Point]) -> f64 {
    let n = verts.len();
    let mut s = 0.0;
    for i in 0..n {
        let a = verts[i];
        let b = verts[(i + 1) % n];
        s += a.cross(b);
    }
    s / 2.0
}
