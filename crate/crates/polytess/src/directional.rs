//! Directional distributions of line orientations and the derived
//! intersection intensities.
//!
//! A distribution `G` lives on `[0, π)` and is either a finite set of
//! weighted atoms or the uniform (isotropic) distribution. From `G` we get
//! the intensity `λ(θ) = ∫ |sin(θ - θ')| G(dθ')` of intersection points on a
//! fixed line of direction `θ`, and its average `λ̄ = ∫ λ(θ) G(dθ)`.
//!
//! [`IntensityProfile`] precomputes the categorical tables used by the
//! typical-cell construction samplers, which sit in the hot loop of the
//! weighting estimator.

use crate::geometry::normalize_angle;
use rand::Rng;
use std::f64::consts::PI;
use thiserror::Error;

/// Discrete atoms that differ by less than this are considered duplicates.
const ATOM_MERGE_TOL: f64 = 1e-12;

/// Weight-sum validation tolerance.
const WEIGHT_SUM_TOL: f64 = 1e-12;

#[derive(Debug, Error, PartialEq)]
pub enum DistributionError {
    #[error("weights must be positive, got {0}")]
    NonPositiveWeight(f64),
    #[error("weights sum to {0}, expected 1 within 1e-12")]
    WeightsDoNotSumToOne(f64),
    #[error("distribution is degenerate: atom at {angle} carries weight {weight} >= 1")]
    Degenerate { angle: f64, weight: f64 },
    #[error("need at least two distinct atoms, got {0}")]
    TooFewAtoms(usize),
    #[error("duplicate atom at angle {0}")]
    DuplicateAtom(f64),
    #[error("weight parameters must lie in the open simplex")]
    OutsideSimplex,
    #[error("k must be at least 2, got {0}")]
    KTooSmall(u32),
}

#[derive(Clone, Debug, PartialEq)]
enum Kind {
    Discrete { angles: Vec<f64>, weights: Vec<f64> },
    Uniform,
}

/// A directional distribution on `[0, π)`.
#[derive(Clone, Debug, PartialEq)]
pub struct DirectionalDistribution {
    kind: Kind,
    /// Set for the equal-weight `G_k` family and the uniform distribution:
    /// the process law is invariant under rotations that permute atoms, so
    /// the construction may pin the initial angle to zero.
    pseudo_isotropic: bool,
}

impl DirectionalDistribution {
    /// Uniform (isotropic) distribution on `[0, π)`.
    pub fn uniform() -> DirectionalDistribution {
        DirectionalDistribution {
            kind: Kind::Uniform,
            pseudo_isotropic: true,
        }
    }

    /// `k` equally spread directions `{ℓπ/k : ℓ = 0..k-1}`, weight `1/k` each.
    pub fn gk(k: u32) -> Result<DirectionalDistribution, DistributionError> {
        if k < 2 {
            return Err(DistributionError::KTooSmall(k));
        }
        let angles = (0..k).map(|l| l as f64 * PI / k as f64).collect();
        let weights = vec![1.0 / k as f64; k as usize];
        Ok(DirectionalDistribution {
            kind: Kind::Discrete { angles, weights },
            pseudo_isotropic: true,
        })
    }

    /// Atoms `{0, π/3, 2π/3}` with weights `p`, `q`, `1-p-q`.
    pub fn g3(p: f64, q: f64) -> Result<DirectionalDistribution, DistributionError> {
        if !(p > 0.0 && q > 0.0 && p + q < 1.0) {
            return Err(DistributionError::OutsideSimplex);
        }
        Ok(DirectionalDistribution {
            kind: Kind::Discrete {
                angles: vec![0.0, PI / 3.0, 2.0 * PI / 3.0],
                weights: vec![p, q, 1.0 - p - q],
            },
            pseudo_isotropic: false,
        })
    }

    /// Atoms `{0, π/4, π/2, 3π/4}` with weights `p`, `q`, `r`, `1-p-q-r`.
    pub fn g4(p: f64, q: f64, r: f64) -> Result<DirectionalDistribution, DistributionError> {
        if !(p > 0.0 && q > 0.0 && r > 0.0 && p + q + r < 1.0) {
            return Err(DistributionError::OutsideSimplex);
        }
        Ok(DirectionalDistribution {
            kind: Kind::Discrete {
                angles: vec![0.0, PI / 4.0, PI / 2.0, 3.0 * PI / 4.0],
                weights: vec![p, q, r, 1.0 - p - q - r],
            },
            pseudo_isotropic: false,
        })
    }

    /// General discrete distribution from `(angle, weight)` pairs. Angles are
    /// normalized modulo π and sorted; weights must be positive and sum to 1.
    pub fn discrete(atoms: &[(f64, f64)]) -> Result<DirectionalDistribution, DistributionError> {
        let mut pairs: Vec<(f64, f64)> = Vec::with_capacity(atoms.len());
        let mut sum = 0.0;
        for &(a, w) in atoms {
            if w <= 0.0 {
                return Err(DistributionError::NonPositiveWeight(w));
            }
            sum += w;
            pairs.push((normalize_angle(a), w));
        }
        if (sum - 1.0).abs() > WEIGHT_SUM_TOL {
            return Err(DistributionError::WeightsDoNotSumToOne(sum));
        }
        pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        for w in pairs.windows(2) {
            if (w[1].0 - w[0].0).abs() <= ATOM_MERGE_TOL {
                return Err(DistributionError::DuplicateAtom(w[0].0));
            }
        }
        if pairs.len() < 2 {
            return Err(DistributionError::TooFewAtoms(pairs.len()));
        }
        for &(a, w) in &pairs {
            if w >= 1.0 {
                return Err(DistributionError::Degenerate { angle: a, weight: w });
            }
        }
        let (angles, weights) = pairs.into_iter().unzip();
        Ok(DirectionalDistribution {
            kind: Kind::Discrete { angles, weights },
            pseudo_isotropic: false,
        })
    }

    pub fn is_uniform(&self) -> bool {
        matches!(self.kind, Kind::Uniform)
    }

    pub fn is_pseudo_isotropic(&self) -> bool {
        self.pseudo_isotropic
    }

    /// Atom angles and weights for discrete distributions.
    pub fn atoms(&self) -> Option<(&[f64], &[f64])> {
        match &self.kind {
            Kind::Discrete { angles, weights } => Some((angles, weights)),
            Kind::Uniform => None,
        }
    }

    /// Intensity of intersection points on a fixed line of direction `theta`
    /// (per unit length, at line-process intensity 1). Any real angle is
    /// accepted; directions are π-periodic.
    pub fn lambda_theta(&self, theta: f64) -> f64 {
        let t = normalize_angle(theta);
        match &self.kind {
            Kind::Uniform => 2.0 / PI,
            Kind::Discrete { angles, weights } => angles
                .iter()
                .zip(weights)
                .map(|(&a, &w)| w * (t - a).sin().abs())
                .sum(),
        }
    }

    /// `G`-average of `lambda_theta`.
    pub fn lambda_bar(&self) -> f64 {
        match &self.kind {
            Kind::Uniform => 2.0 / PI,
            Kind::Discrete { angles, weights } => angles
                .iter()
                .zip(weights)
                .map(|(&a, &w)| w * self.lambda_theta(a))
                .sum(),
        }
    }
}

/// Directional distribution plus the cached tables needed by the samplers.
///
/// Immutable after construction; shareable across threads. All sampling
/// methods take an explicit RNG.
#[derive(Clone, Debug)]
pub struct IntensityProfile {
    dist: DirectionalDistribution,
    lambda_bar: f64,
    /// Per-atom `λ(θ_i)` (discrete only).
    atom_lambda: Vec<f64>,
    /// Cumulative weights of the atoms (discrete only), for drawing a single
    /// direction `θ ~ G`.
    atom_cdf: Vec<f64>,
    /// Cumulative law of the ordered pair `(i, j)`, `i ≠ j`, with
    /// probabilities `w_i w_j |sin(θ_i - θ_j)| / λ̄` (discrete only).
    pair_cdf: Vec<f64>,
    pair_ij: Vec<(u32, u32)>,
    /// Row `i`: conditional law of the second construction angle given the
    /// first one is atom `i`; entries are `(representative in [θ_i - π, θ_i),
    /// cumulative probability)`.
    phi2_rows: Vec<Vec<(f64, f64)>>,
    /// Pseudo-isotropic discrete case: cumulative law of the angle gap
    /// `iπ/k`, `i = 1..k-1`, with probabilities `2(k-i) sin(iπ/k) / (k² λ̄)`.
    gap_cdf: Vec<f64>,
}

impl IntensityProfile {
    pub fn new(dist: DirectionalDistribution) -> IntensityProfile {
        let lambda_bar = dist.lambda_bar();
        let mut atom_lambda = Vec::new();
        let mut atom_cdf = Vec::new();
        let mut pair_cdf = Vec::new();
        let mut pair_ij = Vec::new();
        let mut phi2_rows = Vec::new();
        let mut gap_cdf = Vec::new();

        if let Some((angles, weights)) = dist.atoms() {
            let k = angles.len();
            atom_lambda = angles.iter().map(|&a| dist.lambda_theta(a)).collect();

            let mut acc = 0.0;
            for &w in weights {
                acc += w;
                atom_cdf.push(acc);
            }

            let mut pacc = 0.0;
            for i in 0..k {
                for j in 0..k {
                    if i == j {
                        continue;
                    }
                    let p =
                        weights[i] * weights[j] * (angles[i] - angles[j]).sin().abs() / lambda_bar;
                    if p > 0.0 {
                        pacc += p;
                        pair_cdf.push(pacc);
                        pair_ij.push((i as u32, j as u32));
                    }
                }
            }

            for i in 0..k {
                let phi1 = angles[i];
                let mut row: Vec<(f64, f64)> = Vec::new();
                let mut racc = 0.0;
                for j in 0..k {
                    // The atom equal to φ₁ shifts to the sin-zero endpoint
                    // φ₁ - π and is dropped exactly, not given a rounded
                    // near-zero weight.
                    if j == i {
                        continue;
                    }
                    // Shift each atom to its representative in [φ₁ - π, φ₁).
                    let rep = if angles[j] >= phi1 {
                        angles[j] - PI
                    } else {
                        angles[j]
                    };
                    let p = weights[j] * (phi1 - rep).sin();
                    debug_assert!(p > 0.0);
                    racc += p;
                    row.push((rep, racc));
                }
                // The normalizer of the φ₂ density is exactly λ(φ₁).
                for e in &mut row {
                    e.1 /= racc;
                }
                debug_assert!((racc - atom_lambda[i]).abs() <= 1e-9 * atom_lambda[i]);
                phi2_rows.push(row);
            }

            if dist.is_pseudo_isotropic() {
                let kf = k as f64;
                let mut gacc = 0.0;
                for i in 1..k {
                    gacc += 2.0 * (k - i) as f64 * (i as f64 * PI / kf).sin()
                        / (kf * kf * lambda_bar);
                    gap_cdf.push(gacc);
                }
                debug_assert!((gacc - 1.0).abs() < 1e-9);
            }
        }

        IntensityProfile {
            dist,
            lambda_bar,
            atom_lambda,
            atom_cdf,
            pair_cdf,
            pair_ij,
            phi2_rows,
            gap_cdf,
        }
    }

    pub fn dist(&self) -> &DirectionalDistribution {
        &self.dist
    }

    pub fn lambda_bar(&self) -> f64 {
        self.lambda_bar
    }

    pub fn lambda_theta(&self, theta: f64) -> f64 {
        self.dist.lambda_theta(theta)
    }

    /// `λ(θ)` when `θ` is a construction angle known to sit on an atom
    /// (or any angle in the uniform case); falls back to direct evaluation.
    pub(crate) fn lambda_at(&self, theta: f64) -> f64 {
        match self.atom_index(theta) {
            Some(i) => self.atom_lambda[i],
            None => self.dist.lambda_theta(theta),
        }
    }

    fn atom_index(&self, theta: f64) -> Option<usize> {
        let (angles, _) = self.dist.atoms()?;
        let t = normalize_angle(theta);
        let i = angles.partition_point(|&a| a < t);
        for cand in [i.wrapping_sub(1), i, i + 1] {
            if let Some(&a) = angles.get(cand) {
                if (a - t).abs() <= 1e-9 {
                    return Some(cand);
                }
            }
        }
        // A normalized angle just below π matches the atom at 0.
        if let Some(&first) = angles.first() {
            if (t - PI).abs() <= 1e-9 && first.abs() <= 1e-9 {
                return Some(0);
            }
        }
        None
    }

    /// Draw a direction `θ ~ G` together with its atom index.
    pub fn sample_direction<R: Rng>(&self, rng: &mut R) -> (f64, Option<u32>) {
        match self.dist.atoms() {
            None => (rng.random::<f64>() * PI, None),
            Some((angles, _)) => {
                let u: f64 = rng.random();
                let i = self.atom_cdf.partition_point(|&c| c < u);
                let i = i.min(angles.len() - 1);
                (angles[i], Some(i as u32))
            }
        }
    }

    /// Draw an ordered angle pair with density `|sin(θ - θ')| / λ̄` with
    /// respect to `G ⊗ G`: the law of the two line directions at a typical
    /// intersection point.
    pub fn sample_angle_pair<R: Rng>(&self, rng: &mut R) -> (f64, f64) {
        match self.dist.atoms() {
            Some((angles, _)) => {
                let u: f64 = rng.random();
                let idx = self.pair_cdf.partition_point(|&c| c < u);
                let (i, j) = self.pair_ij[idx.min(self.pair_ij.len() - 1)];
                (angles[i as usize], angles[j as usize])
            }
            None => {
                // First coordinate is uniform; second has conditional density
                // |sin(u - v)| / 2 on [0, π), inverted in closed form.
                let u = rng.random::<f64>() * PI;
                let w: f64 = rng.random();
                let half = (1.0 - u.cos()) / 2.0;
                let v = if w <= half {
                    u - (2.0 * w + u.cos()).clamp(-1.0, 1.0).acos()
                } else {
                    u + (2.0 - 2.0 * w - u.cos()).clamp(-1.0, 1.0).acos()
                };
                (u, v.clamp(0.0, PI - f64::EPSILON))
            }
        }
    }

    /// Draw the construction angle `φ₂` given `φ₁`: density
    /// `sin(φ₁ - φ₂) / λ(φ₁)` with respect to `G` shifted into
    /// `[φ₁ - π, φ₁)`.
    pub fn sample_phi2<R: Rng>(&self, phi1: f64, rng: &mut R) -> f64 {
        match self.dist.atoms() {
            Some(_) => {
                let i = self
                    .atom_index(phi1)
                    .expect("phi1 must be an atom of a discrete distribution");
                let row = &self.phi2_rows[i];
                let u: f64 = rng.random();
                let idx = row.partition_point(|&(_, c)| c < u);
                row[idx.min(row.len() - 1)].0
            }
            None => {
                // CDF from φ₁ - π is (1 + cos(φ₁ - x)) / 2.
                let u: f64 = rng.random();
                phi1 - (2.0 * u - 1.0).clamp(-1.0, 1.0).acos()
            }
        }
    }

    /// Pseudo-isotropic shortcut: with the initial angle pinned to 0, draw
    /// the first construction angle `φ₁` (the angle gap at the vertex).
    ///
    /// Only meaningful for pseudo-isotropic distributions (`G_k`, uniform).
    pub fn sample_phi1_pseudo<R: Rng>(&self, rng: &mut R) -> f64 {
        debug_assert!(self.dist.is_pseudo_isotropic());
        match self.dist.atoms() {
            Some((angles, _)) => {
                let u: f64 = rng.random();
                let i = self.gap_cdf.partition_point(|&c| c < u);
                angles[(i + 1).min(angles.len() - 1)]
            }
            None => {
                let u = rng
                    .random::<f64>()
                    .clamp(f64::EPSILON, 1.0 - f64::EPSILON);
                invert_uniform_gap_cdf(u)
            }
        }
    }
}

/// CDF of the uniform-case gap density `(π - t) sin t / π` on `[0, π]`.
pub fn uniform_gap_cdf(t: f64) -> f64 {
    (1.0 - t.cos()) - (t.sin() - t * t.cos()) / PI
}

/// Invert `uniform_gap_cdf` by bisection-guarded Newton to 1e-12.
fn invert_uniform_gap_cdf(u: f64) -> f64 {
    let mut lo = 0.0;
    let mut hi = PI;
    let mut t = PI / 2.0;
    for _ in 0..200 {
        let f = uniform_gap_cdf(t) - u;
        if f.abs() < 1e-13 {
            break;
        }
        if f > 0.0 {
            hi = t;
        } else {
            lo = t;
        }
        let dfdt = (PI - t) * t.sin() / PI;
        let next = if dfdt > 1e-18 { t - f / dfdt } else { f64::NAN };
        t = if next.is_finite() && next >= lo && next <= hi {
            next
        } else {
            (lo + hi) / 2.0
        };
        if hi - lo < 1e-12 {
            break;
        }
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stream::stream_rng;

    const SQRT3: f64 = 1.732050807568877293527446341505872367_f64;

    #[test]
    fn lambda_g3_matches_closed_forms() {
        let p = 0.2;
        let q = 0.5;
        let g = DirectionalDistribution::g3(p, q).unwrap();
        assert!((g.lambda_theta(0.0) - SQRT3 / 2.0 * (1.0 - p)).abs() < 1e-14);
        assert!((g.lambda_theta(PI / 3.0) - SQRT3 / 2.0 * (1.0 - q)).abs() < 1e-14);
        assert!((g.lambda_theta(2.0 * PI / 3.0) - SQRT3 / 2.0 * (p + q)).abs() < 1e-14);
        let lb = SQRT3 * (p + q - p * p - q * q - p * q);
        assert!((g.lambda_bar() - lb).abs() < 1e-14);
    }

    #[test]
    fn lambda_gk_is_cot_over_k() {
        for k in [3u32, 4, 5, 6, 9] {
            let g = DirectionalDistribution::gk(k).unwrap();
            let expect = (PI / (2.0 * k as f64)).tan().recip() / k as f64;
            assert!((g.lambda_theta(0.0) - expect).abs() < 1e-13);
            assert!((g.lambda_bar() - expect).abs() < 1e-13);
            // Pseudo-isotropy: identical at every atom.
            for l in 0..k {
                let a = l as f64 * PI / k as f64;
                assert!((g.lambda_theta(a) - g.lambda_theta(0.0)).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn lambda_uniform_is_two_over_pi() {
        let g = DirectionalDistribution::uniform();
        assert_eq!(g.lambda_theta(1.234), 2.0 / PI);
        assert_eq!(g.lambda_bar(), 2.0 / PI);
    }

    #[test]
    fn lambda_g3_equal_weights() {
        let g = DirectionalDistribution::g3(1.0 / 3.0, 1.0 / 3.0).unwrap();
        // Plugging p = q = 1/3 into the closed form gives sqrt(3)/3.
        assert!((g.lambda_bar() - SQRT3 / 3.0).abs() < 1e-14);
        for a in [0.0, PI / 3.0, 2.0 * PI / 3.0] {
            assert!((g.lambda_theta(a) - SQRT3 / 3.0).abs() < 1e-14);
        }
    }

    #[test]
    fn lambda_is_pi_periodic() {
        let g = DirectionalDistribution::g4(0.1, 0.2, 0.3).unwrap();
        for &t in &[0.0, 0.7, 2.9] {
            assert!((g.lambda_theta(t) - g.lambda_theta(t + PI)).abs() < 1e-12);
            assert!((g.lambda_theta(t) - g.lambda_theta(t - PI)).abs() < 1e-12);
        }
    }

    #[test]
    fn constructor_guards() {
        assert!(DirectionalDistribution::g3(0.5, 0.6).is_err());
        assert!(DirectionalDistribution::g3(0.0, 0.5).is_err());
        assert!(DirectionalDistribution::g4(0.3, 0.3, 0.4).is_err());
        assert!(DirectionalDistribution::gk(1).is_err());
        assert!(DirectionalDistribution::discrete(&[(0.0, 1.0)]).is_err());
        assert!(DirectionalDistribution::discrete(&[(0.0, 0.5), (0.0, 0.5)]).is_err());
        assert!(DirectionalDistribution::discrete(&[(0.0, 0.6), (1.0, 0.5)]).is_err());
        assert!(DirectionalDistribution::discrete(&[(0.0, 0.5), (1.0, 0.5)]).is_ok());
    }

    #[test]
    fn gk_reduces_to_named_families() {
        let gk3 = DirectionalDistribution::gk(3).unwrap();
        let g3 = DirectionalDistribution::g3(1.0 / 3.0, 1.0 / 3.0).unwrap();
        let (a1, w1) = gk3.atoms().unwrap();
        let (a2, w2) = g3.atoms().unwrap();
        for (x, y) in a1.iter().zip(a2) {
            assert!((x - y).abs() < 1e-15);
        }
        for (x, y) in w1.iter().zip(w2) {
            assert!((x - y).abs() < 1e-15);
        }
    }

    #[test]
    fn pair_law_enumeration_g3_equal_weights() {
        // All nine ordered atom pairs: the three diagonal ones have sin = 0,
        // the six mixed ones share |sin| = sqrt(3)/2, so each has mass 1/6.
        let profile =
            IntensityProfile::new(DirectionalDistribution::g3(1.0 / 3.0, 1.0 / 3.0).unwrap());
        assert_eq!(profile.pair_ij.len(), 6);
        let mut prev = 0.0;
        for &c in &profile.pair_cdf {
            assert!((c - prev - 1.0 / 6.0).abs() < 1e-12);
            prev = c;
        }
    }

    #[test]
    fn phi2_law_enumeration_g3_equal_weights() {
        // Given φ₁ = π/3 the atoms shift to {0, -2π/3, -π/3}; the -2π/3
        // representative sits at the sin-zero endpoint and is dropped,
        // leaving {0, -π/3} with probability 1/2 each.
        let profile =
            IntensityProfile::new(DirectionalDistribution::g3(1.0 / 3.0, 1.0 / 3.0).unwrap());
        let row = &profile.phi2_rows[1];
        assert_eq!(row.len(), 2);
        let mut reps: Vec<f64> = row.iter().map(|e| e.0).collect();
        reps.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((reps[0] + PI / 3.0).abs() < 1e-12);
        assert!(reps[1].abs() < 1e-12);
        assert!((row[0].1 - 0.5).abs() < 1e-12);
        assert!((row[1].1 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn phi2_endpoints_have_zero_mass() {
        // Sampled φ₂ never equals φ₁ or φ₁ - π.
        let profile = IntensityProfile::new(DirectionalDistribution::gk(5).unwrap());
        let mut rng = stream_rng(3, 0);
        for _ in 0..2000 {
            let (a, b) = profile.sample_angle_pair(&mut rng);
            let phi1 = a.max(b);
            let phi2 = profile.sample_phi2(phi1, &mut rng);
            assert!(phi2 >= phi1 - PI && phi2 < phi1);
            assert!((phi2 - phi1).abs() > 1e-9);
            assert!((phi2 - (phi1 - PI)).abs() > 1e-9);
        }
    }

    #[test]
    fn uniform_phi2_density_shape() {
        // φ₁ = π/2: density cos(φ₂)/2 on [-π/2, π/2); check the sampled CDF
        // at a few quantiles against the closed form (1 + sin x) / 2.
        let profile = IntensityProfile::new(DirectionalDistribution::uniform());
        let mut rng = stream_rng(11, 0);
        let n = 200_000;
        let mut xs: Vec<f64> = (0..n)
            .map(|_| profile.sample_phi2(PI / 2.0, &mut rng))
            .collect();
        xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for &q in &[0.1, 0.25, 0.5, 0.75, 0.9] {
            let emp = xs[(q * n as f64) as usize];
            let exact = (2.0f64 * q - 1.0).asin();
            assert!(
                (emp - exact).abs() < 0.02,
                "quantile {q}: {emp} vs {exact}"
            );
        }
    }

    #[test]
    fn uniform_gap_cdf_inverts() {
        for &u in &[1e-6, 0.1, 0.3, 0.5, 0.7, 0.9, 1.0 - 1e-6] {
            let t = invert_uniform_gap_cdf(u);
            assert!((uniform_gap_cdf(t) - u).abs() < 1e-10);
        }
        assert!((uniform_gap_cdf(PI) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn gap_law_matches_pair_gap_for_gk() {
        // The pinned-initial-angle gap law must agree with the gap of the
        // ordered pair sampler.
        let profile = IntensityProfile::new(DirectionalDistribution::gk(5).unwrap());
        let mut rng = stream_rng(5, 0);
        let n = 400_000;
        let mut hist_pair = [0u64; 5];
        let mut hist_gap = [0u64; 5];
        for _ in 0..n {
            let (a, b) = profile.sample_angle_pair(&mut rng);
            let gap = (a - b).abs();
            let i = (gap / (PI / 5.0)).round() as usize;
            hist_pair[i] += 1;
            let g = profile.sample_phi1_pseudo(&mut rng);
            let j = (g / (PI / 5.0)).round() as usize;
            hist_gap[j] += 1;
        }
        for i in 1..5 {
            let p = hist_pair[i] as f64 / n as f64;
            let q = hist_gap[i] as f64 / n as f64;
            let se = (p * (1.0 - p) / n as f64).sqrt() * 2.0;
            assert!((p - q).abs() < 4.0 * se, "gap {i}: {p} vs {q}");
        }
    }

    #[test]
    fn lambda_bar_matches_monte_carlo_average() {
        let g = DirectionalDistribution::g4(0.15, 0.25, 0.35).unwrap();
        let profile = IntensityProfile::new(g.clone());
        let mut rng = stream_rng(17, 0);
        let n = 200_000;
        let mut sum = 0.0;
        let mut sumsq = 0.0;
        for _ in 0..n {
            let (theta, _) = profile.sample_direction(&mut rng);
            let v = g.lambda_theta(theta);
            sum += v;
            sumsq += v * v;
        }
        let mean = sum / n as f64;
        let se = ((sumsq - sum * sum / n as f64) / (n as f64 - 1.0) / n as f64).sqrt();
        assert!((mean - g.lambda_bar()).abs() < 3.0 * se.max(1e-12));
    }
}
