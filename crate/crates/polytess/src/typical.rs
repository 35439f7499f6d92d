//! Direct sampling of the typical cell of a Poisson line tessellation.
//!
//! The typical cell is anchored at its lowest vertex `v₁` (the unique vertex
//! from which the cell opens upward). Its law is reproduced by drawing
//!
//! * the ordered direction pair `(φ₀, φ₁)`, `φ₀ < φ₁`, of the two lines
//!   through `v₁`,
//! * the length `z₁ ~ Exp(γ λ(φ₁))` of the edge from `v₁` at angle `φ₁`,
//!   ending at `v₂`,
//! * the direction `φ₂ ∈ [φ₁ - π, φ₁)` of the cell edge leaving `v₂`,
//!
//! and intersecting the resulting base region `Δ` with the half-planes of an
//! independent line process from which every line hitting the segment
//! `v₁v₂` has been removed. When `φ₂ < φ₀` the base region closes into a
//! triangle and the cell is a triangle exactly when no remaining line cuts
//! `Δ`, which happens with probability
//! `exp(-γ/2 (λ(φ₂)z₂ + λ(φ₃)z₃ - λ(φ₁)z₁))`; averaging that survival weight
//! over construction draws estimates the triangle probability without any
//! clipping at all.
//!
//! For pseudo-isotropic distributions (`G_k`, uniform) the initial angle is
//! pinned to `φ₀ = 0` and `φ₁` is drawn from the angle-gap law; for general
//! discrete distributions the pair is drawn from the joint law. Both paths
//! feed the same downstream construction.

use crate::directional::IntensityProfile;
use crate::estimate::{run_sharded, Accumulator, EstimateResult};
use crate::geometry::{unit_vec, ConvexPolygon, Line, Point};
use crate::lineproc::{sample_lines_hitting_disk_at, sample_lines_hitting_triangle_excluding_edge};
use crate::stream::stream_rng;
use rand::Rng;
use std::collections::BTreeMap;
use std::f64::consts::PI;
use thiserror::Error;

/// Sines smaller than this close no usable triangle; such draws take the
/// unbounded-region path (or fail there as pathological).
const SIN_FLOOR: f64 = 1e-12;

/// Box growth attempts for the unbounded construction path.
const MAX_DOUBLINGS: usize = 8;

#[derive(Debug, Error, PartialEq)]
pub enum WeightError {
    #[error("survival exponent is negative ({0:.3e}); construction variables are inconsistent")]
    NegativeExponent(f64),
}

#[derive(Debug, Error, PartialEq)]
pub enum CellSampleError {
    #[error("cell still touches the bounding box after {MAX_DOUBLINGS} doublings")]
    BoxOverflow,
    #[error("degenerate construction geometry")]
    Degenerate,
}

/// Which sampling path produced a construction draw.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConstructionPath {
    PseudoIsotropic,
    General,
}

/// The construction variables of a closed typical triangle, anchored at
/// `v₁ = (0,0)`, with vertices labelled clockwise.
#[derive(Clone, Copy, Debug)]
pub struct TypicalTriangleVars {
    pub phi0: f64,
    pub phi1: f64,
    pub z1: f64,
    /// In `[φ₁ - π, φ₀)`; negative values are directions modulo π.
    pub phi2: f64,
    pub z2: f64,
    pub z3: f64,
    /// `φ₀ - π`: direction of the closing edge from `v₃` back to `v₁`.
    pub phi3: f64,
    pub v1: Point,
    pub v2: Point,
    pub v3: Point,
}

/// One raw draw of the construction variables, before classification.
#[derive(Clone, Copy, Debug)]
pub struct ConstructionSample {
    pub path: ConstructionPath,
    pub phi0: f64,
    pub phi1: f64,
    pub z1: f64,
    pub phi2: f64,
}

impl ConstructionSample {
    /// Close the triangle if the draw admits one: requires `φ₂ < φ₀` with
    /// all three edge sines positive.
    pub fn triangle(&self) -> Option<TypicalTriangleVars> {
        let s02 = (self.phi0 - self.phi2).sin();
        let s10 = (self.phi1 - self.phi0).sin();
        let s12 = (self.phi1 - self.phi2).sin();
        if !(self.phi2 < self.phi0 && s02 > SIN_FLOOR && s10 > SIN_FLOOR && s12 > SIN_FLOOR) {
            return None;
        }
        let z2 = self.z1 * s10 / s02;
        let z3 = self.z1 * s12 / s02;
        let v1 = Point::ORIGIN;
        let v2 = unit_vec(self.phi1) * self.z1;
        let v3 = v2 + unit_vec(self.phi2) * z2;
        Some(TypicalTriangleVars {
            phi0: self.phi0,
            phi1: self.phi1,
            z1: self.z1,
            phi2: self.phi2,
            z2,
            z3,
            phi3: self.phi0 - PI,
            v1,
            v2,
            v3,
        })
    }
}

/// Draw the raw construction variables at line intensity `gamma`.
pub fn sample_construction<R: Rng>(
    profile: &IntensityProfile,
    gamma: f64,
    rng: &mut R,
) -> ConstructionSample {
    let (path, phi0, phi1) = if profile.dist().is_pseudo_isotropic() {
        (
            ConstructionPath::PseudoIsotropic,
            0.0,
            profile.sample_phi1_pseudo(rng),
        )
    } else {
        let (a, b) = profile.sample_angle_pair(rng);
        (ConstructionPath::General, a.min(b), a.max(b))
    };
    let rate = gamma * profile.lambda_at(phi1);
    let u: f64 = rng.random();
    let z1 = -(1.0 - u).ln() / rate;
    let phi2 = profile.sample_phi2(phi1, rng);
    ConstructionSample {
        path,
        phi0,
        phi1,
        z1,
        phi2,
    }
}

/// Draw the typical-triangle variables at intensity 1; `None` when the draw
/// belongs to a cell with four or more vertices.
pub fn sample_typical_triangle_vars<R: Rng>(
    profile: &IntensityProfile,
    rng: &mut R,
) -> Option<TypicalTriangleVars> {
    sample_construction(profile, 1.0, rng).triangle()
}

/// Probability that no further line of the (intensity-1) process cuts the
/// second and third triangle edges:
/// `exp(-(λ(φ₂)z₂ + λ(φ₃)z₃ - λ(φ₁)z₁)/2)`.
pub fn triangle_weight(
    profile: &IntensityProfile,
    t: &TypicalTriangleVars,
) -> Result<f64, WeightError> {
    let m = 0.5
        * (profile.lambda_at(t.phi2) * t.z2 + profile.lambda_at(t.phi3) * t.z3
            - profile.lambda_at(t.phi1) * t.z1);
    if m < -1e-9 {
        return Err(WeightError::NegativeExponent(m));
    }
    Ok((-m.max(0.0)).exp())
}

/// Unbiased survival-weight estimator of the triangle probability: each of
/// `n` construction draws contributes its weight when it closes into a
/// triangle and zero otherwise. Sharded across streams of `seed`; the result
/// is independent of thread count.
pub fn estimate_p3_by_weighting(profile: &IntensityProfile, n: u64, seed: u64) -> EstimateResult {
    let parts = run_sharded(n, |shard, len| {
        let mut rng = stream_rng(seed, shard);
        let mut acc = Accumulator::default();
        for _ in 0..len {
            let sample = sample_construction(profile, 1.0, &mut rng);
            let w = match sample.triangle() {
                Some(t) => triangle_weight(profile, &t).unwrap_or(1.0),
                None => 0.0,
            };
            acc.push(w);
        }
        acc
    });
    let mut total = Accumulator::default();
    for p in &parts {
        total.merge(p);
    }
    total.result(seed)
}

/// Replay the exact construction draws consumed by
/// [`estimate_p3_by_weighting`] in deterministic order, for audit dumps.
pub fn for_each_construction_sample<F>(profile: &IntensityProfile, n: u64, seed: u64, mut f: F)
where
    F: FnMut(u64, &ConstructionSample, f64, bool),
{
    let shards = n.div_ceil(crate::estimate::SHARD_SIZE);
    let mut index = 0u64;
    for shard in 0..shards {
        let len = crate::estimate::SHARD_SIZE.min(n - shard * crate::estimate::SHARD_SIZE);
        let mut rng = stream_rng(seed, shard);
        for _ in 0..len {
            let sample = sample_construction(profile, 1.0, &mut rng);
            let (weight, is_triangle) = match sample.triangle() {
                Some(t) => (triangle_weight(profile, &t).unwrap_or(1.0), true),
                None => (0.0, false),
            };
            f(index, &sample, weight, is_triangle);
            index += 1;
        }
    }
}

/// Draw one typical cell: build the base region of the construction, sample
/// the independent line process thinned of every line hitting the first
/// edge, and clip.
pub fn sample_typical_cell<R: Rng>(
    profile: &IntensityProfile,
    gamma: f64,
    rng: &mut R,
) -> Result<ConvexPolygon, CellSampleError> {
    let sample = sample_construction(profile, gamma, rng);
    let v1 = Point::ORIGIN;
    let v2 = unit_vec(sample.phi1) * sample.z1;

    if let Some(t) = sample.triangle() {
        // Bounded case: the cell is a subset of the closed triangle.
        // v₁ → v₂ → v₃ is clockwise, so [v₁, v₃, v₂] is CCW and the first
        // construction edge is the polygon edge with index 2.
        let tri =
            ConvexPolygon::new(vec![t.v1, t.v3, t.v2]).map_err(|_| CellSampleError::Degenerate)?;
        let scale = t.z1.max(t.z2).max(t.z3);
        let eps_on = 1e-9 * scale;
        let lines = sample_lines_hitting_triangle_excluding_edge(profile, gamma, &tri, 2, rng)
            .map_err(|_| CellSampleError::Degenerate)?;
        let mut cell = tri;
        for l in &lines {
            cell = cell
                .clip_halfplane(l, v1, eps_on)
                .map_err(|_| CellSampleError::Degenerate)?
                .ok_or(CellSampleError::Degenerate)?;
        }
        return Ok(cell);
    }

    // Unbounded case: clip the wedge to an adaptive box and grow the line
    // set with the box until the cell stays clear of it.
    let aux = v2 + unit_vec(sample.phi2) * sample.z1;
    let mut h = 4.0 * sample.z1.max(v2.norm()).max(aux.norm());
    let mut kept: Vec<Line> = Vec::new();
    let mut prev_region: Option<ConvexPolygon> = None;
    for _ in 0..=MAX_DOUBLINGS {
        let region = boxed_wedge(&sample, v2, h).ok_or(CellSampleError::Degenerate)?;
        let (center, radius) = region.enclosing_disk();
        let fresh = sample_lines_hitting_disk_at(profile, gamma, center, radius * 1.0000001, rng);
        for l in fresh {
            if region.hit_by(&l)
                && !l.hits_segment(v1, v2)
                && prev_region.as_ref().is_none_or(|p| !p.hit_by(&l))
            {
                kept.push(l);
            }
        }
        let eps_on = 1e-9 * h;
        let mut cell = region.clone();
        for l in &kept {
            cell = cell
                .clip_halfplane(l, v1, eps_on)
                .map_err(|_| CellSampleError::Degenerate)?
                .ok_or(CellSampleError::Degenerate)?;
        }
        let lim = h * (1.0 - 1e-7);
        if cell
            .vertices()
            .iter()
            .all(|p| p.x.abs() < lim && p.y.abs() < lim)
        {
            return Ok(cell);
        }
        prev_region = Some(region);
        h *= 2.0;
    }
    Err(CellSampleError::BoxOverflow)
}

/// The base region of a non-triangle draw clipped to the centred box of
/// half-width `h`: the wedge at `v₁` between the rays at `φ₀` and `φ₁`,
/// cut by the line through `v₂` at `φ₂` on the side of `v₁`.
fn boxed_wedge(sample: &ConstructionSample, v2: Point, h: f64) -> Option<ConvexPolygon> {
    let square = ConvexPolygon::new(vec![
        Point::new(-h, -h),
        Point::new(h, -h),
        Point::new(h, h),
        Point::new(-h, h),
    ])
    .ok()?;
    // A point strictly between the two rays anchors the wedge half-planes.
    let bis = unit_vec(sample.phi0) + unit_vec(sample.phi1);
    let bn = bis.norm();
    if bn < 1e-12 {
        return None;
    }
    let anchor = bis * (1e-3 * h / bn);
    let eps_on = 1e-12 * h;
    let mut region = square
        .clip_halfplane(&Line::through(Point::ORIGIN, sample.phi0), anchor, eps_on)
        .ok()??;
    region = region
        .clip_halfplane(&Line::through(Point::ORIGIN, sample.phi1), anchor, eps_on)
        .ok()??;
    region
        .clip_halfplane(&Line::through(v2, sample.phi2), Point::ORIGIN, eps_on)
        .ok()?
}

/// Vertex-count distribution of the typical cell over `n` sampled cells.
#[derive(Clone, Debug)]
pub struct VertexDistribution {
    /// Cells per vertex count.
    pub histogram: BTreeMap<usize, u64>,
    pub n_cells: u64,
    /// Pathological draws (box overflow or degenerate geometry), excluded
    /// from the histogram and reported separately.
    pub n_failed: u64,
    pub mean_vertices: EstimateResult,
    pub seed: u64,
}

impl VertexDistribution {
    /// Share of cells with exactly `k` vertices, with binomial standard
    /// error.
    pub fn share(&self, k: usize) -> EstimateResult {
        let n = self.n_cells as f64;
        let p = *self.histogram.get(&k).unwrap_or(&0) as f64 / n;
        EstimateResult {
            estimate: p,
            std_error: (p * (1.0 - p) / n).sqrt(),
            n_samples: self.n_cells,
            seed: self.seed,
        }
    }
}

/// Sample `n` typical cells and tabulate their vertex counts. Sharded like
/// the weighting estimator; deterministic for fixed `seed`.
pub fn typical_cell_vertex_distribution(
    profile: &IntensityProfile,
    gamma: f64,
    n: u64,
    seed: u64,
) -> VertexDistribution {
    struct Part {
        histogram: BTreeMap<usize, u64>,
        acc: Accumulator,
        failed: u64,
    }
    let parts = run_sharded(n, |shard, len| {
        let mut rng = stream_rng(seed, shard);
        let mut part = Part {
            histogram: BTreeMap::new(),
            acc: Accumulator::default(),
            failed: 0,
        };
        for _ in 0..len {
            match sample_typical_cell(profile, gamma, &mut rng) {
                Ok(cell) => {
                    let k = cell.vertex_count();
                    *part.histogram.entry(k).or_insert(0) += 1;
                    part.acc.push(k as f64);
                }
                Err(_) => part.failed += 1,
            }
        }
        part
    });
    let mut histogram = BTreeMap::new();
    let mut acc = Accumulator::default();
    let mut failed = 0;
    for p in &parts {
        for (&k, &c) in &p.histogram {
            *histogram.entry(k).or_insert(0) += c;
        }
        acc.merge(&p.acc);
        failed += p.failed;
    }
    VertexDistribution {
        histogram,
        n_cells: acc.n,
        n_failed: failed,
        mean_vertices: acc.result(seed),
        seed,
    }
}
