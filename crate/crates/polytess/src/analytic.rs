//! Closed-form and quadrature values of the triangle (and quadrangle)
//! probabilities for the supported directional distributions.

use crate::quadrature::{gauss_legendre, gauss_legendre_on};
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum DomainError {
    #[error("weights must lie in the open simplex")]
    OutsideSimplex,
    #[error("k must be at least 3, got {0}")]
    KTooSmall(u32),
    #[error("index i must satisfy 1 <= i <= k-2, got i={i} for k={k}")]
    BadIndex { k: u32, i: u32 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Form {
    ClosedForm,
    Series,
    Quadrature,
}

/// A numeric value together with how it was obtained and an error bound
/// (zero for closed forms).
#[derive(Clone, Copy, Debug)]
pub struct AnalyticValue {
    pub value: f64,
    pub form: Form,
    pub error_bound: f64,
}

impl AnalyticValue {
    fn closed(value: f64) -> AnalyticValue {
        AnalyticValue {
            value,
            form: Form::ClosedForm,
            error_bound: 0.0,
        }
    }
}

/// Triangle probability for three directions `{0, π/3, 2π/3}` with weights
/// `p`, `q`, `1-p-q`:  `2pq(1-p-q) / (p+q-p²-q²-pq)`.
pub fn p3_g3(p: f64, q: f64) -> Result<AnalyticValue, DomainError> {
    if !(p > 0.0 && q > 0.0 && p + q < 1.0) {
        return Err(DomainError::OutsideSimplex);
    }
    let value = 2.0 * p * q * (1.0 - p - q) / (p + q - p * p - q * q - p * q);
    Ok(AnalyticValue::closed(value))
}

/// Maximizer of `p3_g3` over the open simplex: coarse grid scan followed by
/// a compass search refined to 1e-9 in the arguments.
pub fn argmax_p3_g3() -> (f64, f64) {
    let n = 200;
    let mut best = (f64::NEG_INFINITY, 0.0, 0.0);
    for i in 1..n {
        for j in 1..(n - i) {
            let p = i as f64 / n as f64;
            let q = j as f64 / n as f64;
            let v = p3_g3(p, q).unwrap().value;
            if v > best.0 {
                best = (v, p, q);
            }
        }
    }
    let (mut fv, mut p, mut q) = best;
    let mut step = 1.0 / n as f64;
    while step > 1e-9 {
        let mut moved = false;
        for (dp, dq) in [(step, 0.0), (-step, 0.0), (0.0, step), (0.0, -step)] {
            let (np, nq) = (p + dp, q + dq);
            if np > 0.0 && nq > 0.0 && np + nq < 1.0 {
                let v = p3_g3(np, nq).unwrap().value;
                if v > fv {
                    fv = v;
                    p = np;
                    q = nq;
                    moved = true;
                }
            }
        }
        if !moved {
            step /= 2.0;
        }
    }
    (p, q)
}

/// Triangle probability for four directions `{0, π/4, π/2, 3π/4}` with
/// weights `p`, `q`, `r`, `1-p-q-r`.
pub fn p3_g4(p: f64, q: f64, r: f64) -> Result<AnalyticValue, DomainError> {
    if !(p > 0.0 && q > 0.0 && r > 0.0 && p + q + r < 1.0) {
        return Err(DomainError::OutsideSimplex);
    }
    let s2 = 2f64.sqrt();
    let w = 1.0 - p - q - r;
    let lead = 2.0 * p
        / (s2 * p + 2.0 * q + s2 * r
            - s2 * p * p
            - 2.0 * q * q
            - s2 * r * r
            - 2.0 * p * q
            + (2.0 - 2.0 * s2) * p * r
            - 2.0 * q * r);
    let t1 = 3.0 * q * r / (2.0 + p * (-2.0 + s2) - q + r * (-2.0 + s2));
    let t2 = 3.0 * s2 * q * w / (2.0 + (-2.0 + s2) * p + r * (-2.0 + 2.0 * s2));
    let t3 = 2.0 * r * s2 * w / (s2 + p * (2.0 - s2) + s2 * q + r * (2.0 - s2));
    Ok(AnalyticValue::closed(lead * (t1 + t2 + t3)))
}

/// Triangle probability for `k` equally spread directions:
/// `(4/k) tan²(π/2k) Σ_{i=1}^{k-2} (k-i) Σ_{j=1}^{k-i-1}
///  sin(iπ/k) sin(jπ/k) sin((i+j)π/k) / (sin(iπ/k)+sin(jπ/k)+sin((i+j)π/k))`.
pub fn p3_gk(k: u32) -> Result<AnalyticValue, DomainError> {
    if k < 3 {
        return Err(DomainError::KTooSmall(k));
    }
    let kf = k as f64;
    let mut outer = 0.0;
    for i in 1..=(k - 2) {
        let si = (i as f64 * PI / kf).sin();
        let mut inner = 0.0;
        for j in 1..=(k - i - 1) {
            let sj = (j as f64 * PI / kf).sin();
            let sij = ((i + j) as f64 * PI / kf).sin();
            inner += si * sj * sij / (si + sj + sij);
        }
        outer += (k - i) as f64 * inner;
    }
    let t = (PI / (2.0 * kf)).tan();
    Ok(AnalyticValue::closed(4.0 / kf * t * t * outer))
}

/// Radical closed forms for the small `G_k` cases.
pub fn p3_gk_exact_small(k: u32) -> Option<f64> {
    match k {
        3 => Some(2.0 / 9.0),
        4 => Some(4.0 * (5.0 * 2f64.sqrt() - 7.0)),
        5 => Some(32.0 / 5f64.sqrt() - 14.0),
        6 => Some(4.0 / 3.0 * (70.0 * 3f64.sqrt() - 121.0)),
        _ => None,
    }
}

/// Number of atoms `φ₀ ∈ {0, π/k, …, (k-1)π/k}` with `φ₀ < π - iπ/k`.
/// Equals `k - i`; the comparison is exact in integer arithmetic.
pub fn sigma_k(k: u32, i: u32) -> Result<u32, DomainError> {
    if k < 3 {
        return Err(DomainError::KTooSmall(k));
    }
    if i < 1 || i > k - 2 {
        return Err(DomainError::BadIndex { k, i });
    }
    // ℓπ/k < π - iπ/k  ⇔  ℓ < k - i.
    Ok((0..k).filter(|&l| l < k - i).count() as u32)
}

/// Isotropic triangle probability `2 - π²/6`.
pub fn p3_uniform() -> AnalyticValue {
    AnalyticValue::closed(2.0 - PI * PI / 6.0)
}

/// Isotropic quadrangle probability
/// `π² log 2 - 1/3 - 7π²/36 - (7/2) Σ_{i≥1} 1/i³`, with the cubic series
/// summed until its tail bound `1/(2N²)` drops below 1e-14.
pub fn p4_uniform() -> AnalyticValue {
    let (zeta3, tail) = zeta3_series(1e-14);
    let value = PI * PI * 2f64.ln() - 1.0 / 3.0 - 7.0 * PI * PI / 36.0 - 3.5 * zeta3;
    AnalyticValue {
        value,
        form: Form::Series,
        error_bound: 3.5 * tail,
    }
}

/// Partial sum of `Σ 1/i³` with tail bound below `tol`; the tail beyond `N`
/// is less than `1/(2N²)`. Summed from the small end to limit rounding.
pub fn zeta3_series(tol: f64) -> (f64, f64) {
    let n = (1.0 / (2.0 * tol)).sqrt().ceil() as u64;
    let mut sum = 0.0;
    for i in (1..=n).rev() {
        let x = i as f64;
        sum += 1.0 / (x * x * x);
    }
    (sum, 1.0 / (2.0 * (n * n) as f64))
}

fn limit_integrand(t: f64, s: f64) -> f64 {
    let st = (PI * t).sin();
    let ss = (PI * s).sin();
    let sts = ((t + s) * PI).sin();
    st * ss * sts / (st + ss + sts)
}

fn limit_integral_raw(grid: usize) -> f64 {
    // Map the triangle {0 < s < 1-t} to the unit square via s = (1-t) u;
    // the Jacobian (1-t) joins the (1-t) prefactor.
    let (xs, ws) = gauss_legendre_on(grid, 0.0, 1.0);
    let mut total = 0.0;
    for (&t, &wt) in xs.iter().zip(&ws) {
        let mut inner = 0.0;
        for (&u, &wu) in xs.iter().zip(&ws) {
            inner += wu * limit_integrand(t, (1.0 - t) * u);
        }
        total += wt * (1.0 - t) * (1.0 - t) * inner;
    }
    PI * PI * total
}

/// The limiting double integral
/// `π² ∫₀¹ (1-t) ∫₀^{1-t} sin(πt) sin(πs) sin((t+s)π) /
///  (sin(πt)+sin(πs)+sin((t+s)π)) ds dt`
/// by tensor Gauss–Legendre; the error bound is the grid-doubling difference.
pub fn limit_integral(grid: usize) -> AnalyticValue {
    let grid = grid.max(16);
    let value = limit_integral_raw(grid);
    let coarse = limit_integral_raw(grid / 2);
    AnalyticValue {
        value,
        form: Form::Quadrature,
        error_bound: (value - coarse).abs(),
    }
}

fn iso_double_raw(grid: usize) -> f64 {
    // ∫₀^π (π-φ₁)/π ∫_{φ₁-π}^0 sinφ₁ sinφ₂ sin(φ₁-φ₂)
    //                 / (sinφ₂ - sinφ₁ - sin(φ₁-φ₂)) dφ₂ dφ₁
    let (xs, ws) = gauss_legendre_on(grid, 0.0, PI);
    let (us, vs) = gauss_legendre(grid);
    let mut total = 0.0;
    for (&p1, &w1) in xs.iter().zip(&ws) {
        let len = PI - p1;
        let mut inner = 0.0;
        for (&u, &wu) in us.iter().zip(&vs) {
            // φ₂ spans [φ₁ - π, 0]; map from [-1, 1].
            let p2 = (p1 - PI) * (1.0 - u) / 2.0;
            let num = p1.sin() * p2.sin() * (p1 - p2).sin();
            let den = p2.sin() - p1.sin() - (p1 - p2).sin();
            inner += wu * (len / 2.0) * num / den;
        }
        total += w1 * len / PI * inner;
    }
    total
}

fn iso_single_raw(grid: usize) -> f64 {
    // (1/2π) ∫₀^π (π-φ)(2 sinφ - (π-φ)(1 - cosφ)) dφ
    let (xs, ws) = gauss_legendre_on(grid, 0.0, PI);
    let mut total = 0.0;
    for (&p, &w) in xs.iter().zip(&ws) {
        total += w * (PI - p) * (2.0 * p.sin() - (PI - p) * (1.0 - p.cos()));
    }
    total / (2.0 * PI)
}

/// The isotropic double integral over `(φ₁, φ₂)`.
pub fn iso_double_integral(grid: usize) -> AnalyticValue {
    let grid = grid.max(16);
    let value = iso_double_raw(grid);
    AnalyticValue {
        value,
        form: Form::Quadrature,
        error_bound: (value - iso_double_raw(grid / 2)).abs(),
    }
}

/// The reduced single integral of the isotropic case.
pub fn iso_single_integral(grid: usize) -> AnalyticValue {
    let grid = grid.max(16);
    let value = iso_single_raw(grid);
    AnalyticValue {
        value,
        form: Form::Quadrature,
        error_bound: (value - iso_single_raw(grid / 2)).abs(),
    }
}

/// Evaluate both isotropic quadrature routes; both must agree with
/// `2 - π²/6` within their error bounds.
pub fn iso_integral_reduction_check(grid: usize) -> (AnalyticValue, AnalyticValue) {
    (iso_double_integral(grid), iso_single_integral(grid))
}

fn t_kernel(phi0: f64, phi1: f64, phi2: f64) -> f64 {
    let den = phi1.sin() + phi2.sin() + (phi1 - phi2).sin();
    (phi0 - phi1).sin() * phi1.sin() * phi2.sin() * (phi1 - phi2).sin() / den
}

fn indicator(phi0: f64, phi1: f64, phi2: f64) -> bool {
    phi0 < PI - phi1 && phi1 < phi2
}

/// Pointwise integrand whose `G_k ⊗ G_k ⊗ G_k` integral is `p3(G_k)`:
/// `4k² tan²(π/2k) · T(φ₀,φ₁,φ₂) · 1{φ₀ < π-φ₁, φ₁ < φ₂}`.
pub fn fk_integrand(k: u32, phi0: f64, phi1: f64, phi2: f64) -> f64 {
    if !indicator(phi0, phi1, phi2) {
        return 0.0;
    }
    let kf = k as f64;
    let t = (PI / (2.0 * kf)).tan();
    4.0 * kf * kf * t * t * t_kernel(phi0, phi1, phi2)
}

/// Pointwise limit of `fk_integrand` as `k → ∞`:
/// `π² · T(φ₀,φ₁,φ₂) · 1{φ₀ < π-φ₁, φ₁ < φ₂}`.
pub fn f_limit_integrand(phi0: f64, phi1: f64, phi2: f64) -> f64 {
    if !indicator(phi0, phi1, phi2) {
        return 0.0;
    }
    PI * PI * t_kernel(phi0, phi1, phi2)
}
