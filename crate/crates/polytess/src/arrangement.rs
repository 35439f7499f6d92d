//! Planar subdivision of a disk window induced by a finite set of lines,
//! with face enumeration and per-cell statistics.
//!
//! Lines are clipped to chords; chord endpoints and pairwise crossings are
//! snapped (tolerance `1e-9 × R`) and connected into a half-edge structure
//! whose faces are traced by the standard clockwise-rotation rule. Window
//! boundary arcs are first-class edges, so bounded boundary faces carry
//! exact areas (polygon part plus circular-segment corrections) and the
//! whole complex satisfies Euler's formula.

use crate::directional::IntensityProfile;
use crate::estimate::EstimateResult;
use crate::geometry::{intersect_lines, ConvexPolygon, Line, LineIntersection, Point};
use crate::lineproc::{sample_lines_hitting_disk, SimulationConfig};
use crate::stream::stream_rng;
use rayon::prelude::*;
use std::collections::BTreeSet;
use std::collections::HashMap;
use std::f64::consts::PI;

/// Relative snapping tolerance (times the window radius).
const SNAP_REL: f64 = 1e-9;

#[derive(Clone, Copy, Debug)]
enum EdgeKind {
    Segment,
    /// Window arc; traversing it forward runs counter-clockwise along the
    /// circle over the stored positive angular span.
    Arc { span: f64 },
}

#[derive(Clone, Debug)]
struct UndirectedEdge {
    a: u32,
    b: u32,
    kind: EdgeKind,
}

/// One traced face of the subdivision.
#[derive(Clone, Debug)]
pub struct Face {
    /// Vertex indices along the traversal (CCW for bounded faces). Empty for
    /// the line-free window face.
    pub cycle: Vec<u32>,
    /// Enclosed area; includes circular-segment corrections for arc edges.
    pub area: f64,
    /// Whether the face closure meets the window boundary circle.
    pub touches_boundary: bool,
    pub is_outer: bool,
}

/// The subdivision of the disk window induced by a set of lines.
#[derive(Clone, Debug)]
pub struct CellComplex {
    vertices: Vec<Point>,
    near_boundary: Vec<bool>,
    edges: Vec<UndirectedEdge>,
    faces: Vec<Face>,
    window_radius: f64,
    n_lines_kept: usize,
    trace_consistent: bool,
}

/// Summary statistics over a collection of interior cells.
#[derive(Clone, Debug)]
pub struct CellStats {
    pub n_cells_interior: usize,
    pub n_triangles: usize,
    /// Cell count per vertex count.
    pub vertex_count_histogram: std::collections::BTreeMap<usize, u64>,
    /// `n_triangles / n_cells_interior` (NaN when there are no cells).
    pub triangle_proportion: f64,
    pub mean_vertex_count: f64,
    pub areas: Vec<f64>,
}

/// Header of the per-replicate CSV emitted by the window simulation.
pub const SIMULATE_CSV_HEADER: &str =
    "replicate,seed,R,gamma,n_lines,n_cells,n_triangles,proportion,mean_vertices";

impl CellComplex {
    /// Build the subdivision of the origin-centred disk of radius `radius`.
    pub fn build(lines: &[Line], radius: f64) -> CellComplex {
        let eps = SNAP_REL * radius;

        // Keep lines that cut a non-degenerate chord; drop exact duplicates.
        let mut seen: BTreeSet<(u64, u64)> = BTreeSet::new();
        let mut kept: Vec<Line> = Vec::with_capacity(lines.len());
        for l in lines {
            if l.d.abs() >= radius {
                continue;
            }
            let half = (radius * radius - l.d * l.d).sqrt();
            if half <= 10.0 * eps {
                continue;
            }
            if seen.insert((l.theta.to_bits(), l.d.to_bits())) {
                kept.push(*l);
            }
        }

        if kept.is_empty() {
            // The bare window: one bounded face plus the outer face.
            return CellComplex {
                vertices: Vec::new(),
                near_boundary: Vec::new(),
                edges: Vec::new(),
                faces: vec![
                    Face {
                        cycle: Vec::new(),
                        area: PI * radius * radius,
                        touches_boundary: true,
                        is_outer: false,
                    },
                    Face {
                        cycle: Vec::new(),
                        area: -PI * radius * radius,
                        touches_boundary: true,
                        is_outer: true,
                    },
                ],
                window_radius: radius,
                n_lines_kept: 0,
                trace_consistent: true,
            };
        }

        // Snap-cluster chord endpoints and interior crossings.
        let mut snap = SnapGrid::new(eps);
        let n = kept.len();
        let mut chord_ends = Vec::with_capacity(n);
        for l in &kept {
            let half = (radius * radius - l.d * l.d).sqrt();
            let mid = l.normal() * l.d;
            let lo = snap.insert(mid + l.direction() * (-half), true);
            let hi = snap.insert(mid + l.direction() * half, true);
            chord_ends.push((lo, hi));
        }
        let mut events: Vec<Vec<(f64, u32)>> = vec![Vec::new(); n];
        for i in 0..n {
            for j in (i + 1)..n {
                if let LineIntersection::Point(p) = intersect_lines(&kept[i], &kept[j]) {
                    if p.norm() < radius {
                        let id = snap.insert(p, false);
                        events[i].push((kept[i].param_of(p), id));
                        events[j].push((kept[j].param_of(p), id));
                    }
                }
            }
        }
        let SnapGrid {
            points,
            on_circle,
            ..
        } = snap;
        // Pull snapped-on-circle representatives exactly onto the circle.
        let vertices: Vec<Point> = points
            .iter()
            .zip(&on_circle)
            .map(|(&p, &circ)| {
                if circ {
                    p * (radius / p.norm())
                } else {
                    p
                }
            })
            .collect();

        // Segment edges: consecutive distinct events along each line.
        let mut edge_set: BTreeSet<(u32, u32)> = BTreeSet::new();
        let mut edges: Vec<UndirectedEdge> = Vec::new();
        for (i, l) in kept.iter().enumerate() {
            let (lo, hi) = chord_ends[i];
            let mut evs = std::mem::take(&mut events[i]);
            evs.push((l.param_of(vertices[lo as usize]), lo));
            evs.push((l.param_of(vertices[hi as usize]), hi));
            evs.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
            evs.dedup_by_key(|e| e.1);
            for w in evs.windows(2) {
                let (a, b) = (w[0].1, w[1].1);
                if a != b && edge_set.insert((a.min(b), a.max(b))) {
                    edges.push(UndirectedEdge {
                        a,
                        b,
                        kind: EdgeKind::Segment,
                    });
                }
            }
        }

        // Window arcs between angularly consecutive circle vertices.
        let mut circ: Vec<(f64, u32)> = vertices
            .iter()
            .enumerate()
            .filter(|&(i, _)| on_circle[i])
            .map(|(i, p)| (p.y.atan2(p.x), i as u32))
            .collect();
        circ.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let m = circ.len();
        for i in 0..m {
            let (ang_a, va) = circ[i];
            let (ang_b, vb) = circ[(i + 1) % m];
            let span = (ang_b - ang_a).rem_euclid(2.0 * PI);
            edges.push(UndirectedEdge {
                a: va,
                b: vb,
                kind: EdgeKind::Arc { span },
            });
        }

        let near_boundary: Vec<bool> = vertices
            .iter()
            .map(|p| (p.norm() - radius).abs() <= eps)
            .collect();

        let (faces, trace_consistent) = trace_faces(&vertices, &edges, radius);

        CellComplex {
            vertices,
            near_boundary,
            edges,
            faces,
            window_radius: radius,
            n_lines_kept: kept.len(),
            trace_consistent,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Number of faces including the outer face.
    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn vertex(&self, id: u32) -> Point {
        self.vertices[id as usize]
    }

    pub fn window_radius(&self) -> f64 {
        self.window_radius
    }

    pub fn n_lines(&self) -> usize {
        self.n_lines_kept
    }

    /// `V - E + F = 2` on the clipped complex, one outer face, and a
    /// consistent half-edge traversal.
    pub fn euler_check(&self) -> bool {
        let v = self.vertices.len() as i64;
        let e = self.edges.len() as i64;
        let f = self.faces.len() as i64;
        let outer = self.faces.iter().filter(|f| f.is_outer).count();
        self.trace_consistent && outer == 1 && v - e + f == 2
    }

    /// Total area of the bounded faces; equals the window area when the
    /// complex is consistent.
    pub fn bounded_area(&self) -> f64 {
        self.faces
            .iter()
            .filter(|f| !f.is_outer)
            .map(|f| f.area)
            .sum()
    }

    pub fn window_area(&self) -> f64 {
        PI * self.window_radius * self.window_radius
    }

    fn face_is_interior(&self, f: &Face) -> bool {
        !f.is_outer
            && !f.touches_boundary
            && !f.cycle.is_empty()
            && f.cycle.iter().all(|&v| !self.near_boundary[v as usize])
    }

    /// Number of faces whose closure stays clear of the window boundary.
    pub fn interior_cell_count(&self) -> usize {
        self.faces
            .iter()
            .filter(|f| self.face_is_interior(f))
            .count()
    }

    /// Interior faces as cleaned convex polygons. The length matches
    /// [`Self::interior_cell_count`] unless a face degenerates below the
    /// cleanup tolerance, which the tests treat as a build defect.
    pub fn interior_cells(&self) -> Vec<ConvexPolygon> {
        let tol = 2.0 * SNAP_REL * self.window_radius;
        self.faces
            .iter()
            .filter(|f| self.face_is_interior(f))
            .filter_map(|f| {
                let pts: Vec<Point> = f
                    .cycle
                    .iter()
                    .map(|&v| self.vertices[v as usize])
                    .collect();
                ConvexPolygon::from_loop(&pts, tol).ok()
            })
            .collect()
    }
}

/// Counts and histogram over interior cells; a triangle is a cell whose
/// cleaned polygon has exactly three vertices.
pub fn cell_statistics(cells: &[ConvexPolygon]) -> CellStats {
    let mut histogram = std::collections::BTreeMap::new();
    let mut n_triangles = 0;
    let mut vertex_sum = 0usize;
    let mut areas = Vec::with_capacity(cells.len());
    for c in cells {
        let k = c.vertex_count();
        *histogram.entry(k).or_insert(0u64) += 1;
        if k == 3 {
            n_triangles += 1;
        }
        vertex_sum += k;
        areas.push(c.area());
    }
    let n = cells.len();
    CellStats {
        n_cells_interior: n,
        n_triangles,
        vertex_count_histogram: histogram,
        triangle_proportion: n_triangles as f64 / n as f64,
        mean_vertex_count: vertex_sum as f64 / n as f64,
        areas,
    }
}

/// One replicate of the window simulation.
#[derive(Clone, Debug)]
pub struct ReplicateSummary {
    pub replicate: u32,
    pub n_lines: usize,
    pub n_cells: usize,
    pub n_triangles: usize,
    pub proportion: f64,
    pub mean_vertices: f64,
    pub euler_ok: bool,
    /// Face areas sum to the window area within 1e-6 relative.
    pub area_ok: bool,
}

/// Pooled window estimate of the triangle proportion.
#[derive(Clone, Debug)]
pub struct WindowEstimate {
    pub replicates: Vec<ReplicateSummary>,
    /// Pooled ratio Σ triangles / Σ cells with a between-replicate
    /// (cluster) standard error.
    pub pooled: EstimateResult,
    pub total_cells: u64,
    pub total_triangles: u64,
}

/// Run `cfg.replicates` independent window simulations (replicate `r` on
/// stream `r` of `cfg.seed`), in parallel, and pool the triangle counts.
pub fn simulate_window(profile: &IntensityProfile, cfg: &SimulationConfig) -> WindowEstimate {
    let replicates: Vec<ReplicateSummary> = (0..cfg.replicates)
        .into_par_iter()
        .map(|rep| {
            let mut rng = stream_rng(cfg.seed, rep as u64);
            let lines = sample_lines_hitting_disk(profile, cfg, &mut rng);
            let complex = CellComplex::build(&lines, cfg.radius);
            let cells = complex.interior_cells();
            let stats = cell_statistics(&cells);
            let area_rel =
                (complex.bounded_area() - complex.window_area()).abs() / complex.window_area();
            ReplicateSummary {
                replicate: rep,
                n_lines: lines.len(),
                n_cells: stats.n_cells_interior,
                n_triangles: stats.n_triangles,
                proportion: stats.triangle_proportion,
                mean_vertices: stats.mean_vertex_count,
                euler_ok: complex.euler_check(),
                area_ok: area_rel < 1e-6,
            }
        })
        .collect();

    let total_cells: u64 = replicates.iter().map(|r| r.n_cells as u64).sum();
    let total_triangles: u64 = replicates.iter().map(|r| r.n_triangles as u64).sum();
    let p = total_triangles as f64 / total_cells as f64;
    // Cluster standard error of the pooled ratio over replicates.
    let nr = replicates.len() as f64;
    let mut ss = 0.0;
    for r in &replicates {
        let resid = r.n_triangles as f64 - p * r.n_cells as f64;
        ss += resid * resid;
    }
    let se = if nr > 1.0 {
        (ss * nr / (nr - 1.0)).sqrt() / total_cells as f64
    } else {
        f64::NAN
    };
    WindowEstimate {
        replicates,
        pooled: EstimateResult {
            estimate: p,
            std_error: se,
            n_samples: total_cells,
            seed: cfg.seed,
        },
        total_cells,
        total_triangles,
    }
}

struct SnapGrid {
    eps: f64,
    points: Vec<Point>,
    on_circle: Vec<bool>,
    grid: HashMap<(i64, i64), Vec<u32>>,
}

impl SnapGrid {
    fn new(eps: f64) -> SnapGrid {
        SnapGrid {
            eps,
            points: Vec::new(),
            on_circle: Vec::new(),
            grid: HashMap::new(),
        }
    }

    fn insert(&mut self, p: Point, circle: bool) -> u32 {
        let kx = (p.x / self.eps).floor() as i64;
        let ky = (p.y / self.eps).floor() as i64;
        for dx in -1..=1 {
            for dy in -1..=1 {
                if let Some(ids) = self.grid.get(&(kx + dx, ky + dy)) {
                    for &id in ids {
                        if self.points[id as usize].dist(p) <= self.eps {
                            self.on_circle[id as usize] |= circle;
                            return id;
                        }
                    }
                }
            }
        }
        let id = self.points.len() as u32;
        self.points.push(p);
        self.on_circle.push(circle);
        self.grid.entry((kx, ky)).or_default().push(id);
        id
    }
}

/// Trace all face cycles of the half-edge structure. Returns the faces and
/// whether the traversal was consistent (every directed edge in exactly one
/// cycle, exactly one negative-area cycle).
fn trace_faces(vertices: &[Point], edges: &[UndirectedEdge], radius: f64) -> (Vec<Face>, bool) {
    let ne = edges.len();
    // Directed edge 2e is a→b, 2e+1 is b→a; twin(h) = h ^ 1.
    let tail = |h: usize| {
        let e = &edges[h / 2];
        if h % 2 == 0 {
            e.a
        } else {
            e.b
        }
    };
    let angle_at_tail = |h: usize| -> f64 {
        let e = &edges[h / 2];
        match e.kind {
            EdgeKind::Segment => {
                let (from, to) = if h % 2 == 0 { (e.a, e.b) } else { (e.b, e.a) };
                let d = vertices[to as usize] - vertices[from as usize];
                d.y.atan2(d.x)
            }
            EdgeKind::Arc { .. } => {
                let (from, ccw) = if h % 2 == 0 { (e.a, true) } else { (e.b, false) };
                let p = vertices[from as usize];
                let ang = p.y.atan2(p.x);
                let t = if ccw { ang + PI / 2.0 } else { ang - PI / 2.0 };
                // Keep the atan2 range for comparable sorting.
                (t + PI).rem_euclid(2.0 * PI) - PI
            }
        }
    };

    let nv = vertices.len();
    let mut rotation: Vec<Vec<u32>> = vec![Vec::new(); nv];
    for h in 0..(2 * ne) {
        rotation[tail(h) as usize].push(h as u32);
    }
    let mut pos = vec![0u32; 2 * ne];
    for rot in &mut rotation {
        rot.sort_by(|&x, &y| {
            angle_at_tail(x as usize)
                .partial_cmp(&angle_at_tail(y as usize))
                .unwrap()
                .then(x.cmp(&y))
        });
        for (i, &h) in rot.iter().enumerate() {
            pos[h as usize] = i as u32;
        }
    }

    let mut visited = vec![false; 2 * ne];
    let mut faces = Vec::new();
    let mut consistent = true;
    for start in 0..(2 * ne) {
        if visited[start] {
            continue;
        }
        let mut cycle_edges = Vec::new();
        let mut h = start;
        loop {
            visited[h] = true;
            cycle_edges.push(h);
            let t = h ^ 1;
            let rot = &rotation[tail(t) as usize];
            let i = pos[t] as usize;
            let next = rot[(i + rot.len() - 1) % rot.len()] as usize;
            h = next;
            if h == start {
                break;
            }
            if visited[h] {
                consistent = false;
                break;
            }
        }
        let cycle: Vec<u32> = cycle_edges.iter().map(|&h| tail(h)).collect();
        let mut area = 0.0;
        for w in 0..cycle.len() {
            let a = vertices[cycle[w] as usize];
            let b = vertices[cycle[(w + 1) % cycle.len()] as usize];
            area += a.cross(b) / 2.0;
        }
        let mut touches = false;
        for &h in &cycle_edges {
            let e = &edges[h / 2];
            if let EdgeKind::Arc { span } = e.kind {
                let seg = radius * radius * (span - span.sin()) / 2.0;
                area += if h % 2 == 0 { seg } else { -seg };
                touches = true;
            }
        }
        faces.push(Face {
            cycle,
            area,
            touches_boundary: touches,
            is_outer: false,
        });
    }

    // Exactly one cycle (the window boundary traversed clockwise) has
    // negative area; everything else must be positive.
    let mut outer_idx = None;
    for (i, f) in faces.iter().enumerate() {
        if f.area < 0.0 {
            if outer_idx.is_some() {
                consistent = false;
            }
            outer_idx = Some(i);
        }
    }
    match outer_idx {
        Some(i) => faces[i].is_outer = true,
        None => consistent = false,
    }
    (faces, consistent)
}
