//! Sampling stationary Poisson line processes restricted to windows.
//!
//! A line process of intensity `γ` and directional distribution `G` hits a
//! disk of radius `r` in a Poisson(2γr) number of lines, each independent
//! with `θ ~ G` and signed distance uniform across the disk. Restrictions to
//! smaller hit events are obtained by thinning, which preserves the law.

use crate::directional::IntensityProfile;
use crate::geometry::{ConvexPolygon, Line, Point};
use rand::Rng;
use rand_distr::{Distribution, Poisson};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("gamma must be positive, got {0}")]
    BadGamma(f64),
    #[error("window radius must be positive, got {0}")]
    BadRadius(f64),
    #[error("need at least one replicate")]
    NoReplicates,
}

#[derive(Debug, Error, PartialEq)]
pub enum LineProcessError {
    #[error("triangle is degenerate (area {0:.3e})")]
    DegenerateTriangle(f64),
    #[error("edge index {0} out of range for a triangle")]
    BadEdgeIndex(usize),
    #[error("closed-form mean is negative ({0:.3e}); sides do not form a triangle")]
    InvalidExcludedEdge(f64),
}

/// Window-simulation configuration.
#[derive(Clone, Copy, Debug)]
pub struct SimulationConfig {
    /// Lines per unit length of signed distance.
    pub gamma: f64,
    /// Disk window radius.
    pub radius: f64,
    /// Master seed; replicate `r` uses stream `r`.
    pub seed: u64,
    pub replicates: u32,
}

impl SimulationConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if !(self.gamma > 0.0) || !self.gamma.is_finite() {
            return Err(ConfigError::BadGamma(self.gamma));
        }
        if !(self.radius > 0.0) || !self.radius.is_finite() {
            return Err(ConfigError::BadRadius(self.radius));
        }
        if self.replicates == 0 {
            return Err(ConfigError::NoReplicates);
        }
        Ok(())
    }
}

fn poisson_count<R: Rng>(mean: f64, rng: &mut R) -> u64 {
    if mean <= 0.0 {
        return 0;
    }
    let dist = Poisson::new(mean).expect("positive finite mean");
    dist.sample(rng) as u64
}

/// All lines of the process hitting the disk of radius `radius` centred at
/// `center`: a Poisson(2γr) count, each line with `θ ~ G` and offset uniform
/// over the chord range.
pub fn sample_lines_hitting_disk_at<R: Rng>(
    profile: &IntensityProfile,
    gamma: f64,
    center: Point,
    radius: f64,
    rng: &mut R,
) -> Vec<Line> {
    let n = poisson_count(2.0 * gamma * radius, rng);
    let mut lines = Vec::with_capacity(n as usize);
    for _ in 0..n {
        let (theta, atom) = profile.sample_direction(rng);
        // Offset of the disk centre along the line's left normal.
        let proj = -center.x * theta.sin() + center.y * theta.cos();
        let d = proj + (rng.random::<f64>() * 2.0 - 1.0) * radius;
        lines.push(Line {
            theta,
            d,
            atom,
        });
    }
    lines
}

/// Lines hitting the origin-centred window disk of `cfg`.
pub fn sample_lines_hitting_disk<R: Rng>(
    profile: &IntensityProfile,
    cfg: &SimulationConfig,
    rng: &mut R,
) -> Vec<Line> {
    sample_lines_hitting_disk_at(profile, cfg.gamma, Point::ORIGIN, cfg.radius, rng)
}

fn triangle_guard(tri: &ConvexPolygon, edge_index: usize) -> Result<(), LineProcessError> {
    if tri.vertex_count() != 3 {
        return Err(LineProcessError::DegenerateTriangle(tri.area()));
    }
    if edge_index >= 3 {
        return Err(LineProcessError::BadEdgeIndex(edge_index));
    }
    let (_, r) = tri.enclosing_disk();
    if tri.area() <= 1e-12 * r * r {
        return Err(LineProcessError::DegenerateTriangle(tri.area()));
    }
    Ok(())
}

/// Lines of the process that hit the triangle but miss edge `edge_index`
/// (edge `i` joins vertices `i` and `i+1 mod 3`). Sampled on the enclosing
/// disk and thinned, which leaves the law of the restricted process intact.
pub fn sample_lines_hitting_triangle_excluding_edge<R: Rng>(
    profile: &IntensityProfile,
    gamma: f64,
    tri: &ConvexPolygon,
    edge_index: usize,
    rng: &mut R,
) -> Result<Vec<Line>, LineProcessError> {
    triangle_guard(tri, edge_index)?;
    let (center, radius) = tri.enclosing_disk();
    let a = tri.vertices()[edge_index];
    let b = tri.vertices()[(edge_index + 1) % 3];
    let lines = sample_lines_hitting_disk_at(profile, gamma, center, radius * 1.0000001, rng);
    Ok(lines
        .into_iter()
        .filter(|l| tri.hit_by(l) && !l.hits_segment(a, b))
        .collect())
}

/// Closed-form mean of the count produced by
/// [`sample_lines_hitting_triangle_excluding_edge`]:
/// `(γ/2) (Σ_{i≠e} t_i λ(θ_i) - t_e λ(θ_e))`.
pub fn mean_hits_excluding_edge(
    profile: &IntensityProfile,
    gamma: f64,
    tri: &ConvexPolygon,
    edge_index: usize,
) -> Result<f64, LineProcessError> {
    triangle_guard(tri, edge_index)?;
    let vs = tri.vertices();
    let side = |i: usize| {
        let e = vs[(i + 1) % 3] - vs[i];
        (e.norm(), e.y.atan2(e.x))
    };
    let sides = [side(0), side(1), side(2)];
    mean_hits_excluding_edge_raw(&sides, edge_index, gamma, profile)
}

/// Same closed form from raw `(length, direction)` sides; guards against
/// side data violating the λ-weighted triangle inequality, which cannot
/// happen for sides read off a genuine triangle.
pub fn mean_hits_excluding_edge_raw(
    sides: &[(f64, f64); 3],
    edge_index: usize,
    gamma: f64,
    profile: &IntensityProfile,
) -> Result<f64, LineProcessError> {
    let term = |i: usize| sides[i].0 * profile.lambda_theta(sides[i].1);
    let mut mean = 0.0;
    for i in 0..3 {
        if i == edge_index {
            mean -= term(i);
        } else {
            mean += term(i);
        }
    }
    mean *= gamma / 2.0;
    if mean < -1e-12 {
        return Err(LineProcessError::InvalidExcludedEdge(mean));
    }
    Ok(mean.max(0.0))
}
