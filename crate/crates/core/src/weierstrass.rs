//! Weierstrass `℘` for rectangular lattices (real invariants, `Δ > 0`).
//!
//! `℘` is evaluated through the Jacobian sine,
//! `℘(z) = e₃ + (e₁ − e₃) / sn²(z·√(e₁ − e₃), k)` with
//! `k² = (e₂ − e₃)/(e₁ − e₃)`, so there is no lattice sum to truncate.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::hypergeom::{complete_k, complete_k_comp};
use crate::jacobi::jacobi_complex_parts;
use crate::numeric::{CPoint, Value, POLE_THRESHOLD};

/// Invariants, midpoint values and the associated Jacobian parameter of a
/// rectangular period lattice.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticeData {
    pub g2: f64,
    pub g3: f64,
    /// Discriminant `g2³ − 27 g3²`.
    pub delta: f64,
    pub e1: f64,
    pub e2: f64,
    pub e3: f64,
    /// Jacobian parameter `k² = (e2 − e3)/(e1 − e3)`.
    pub m: f64,
    /// `√(e1 − e3)`.
    pub scale: f64,
}

/// Half-periods `K` (real) and `K′` (imaginary part of the second
/// half-period); the full periods are `2K` and `2iK′`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeriodPair {
    pub k: f64,
    pub k_prime: f64,
}

impl PeriodPair {
    pub fn ratio(&self) -> f64 {
        self.k_prime / self.k
    }
}

fn cubic(g2: f64, g3: f64, w: f64) -> f64 {
    (4.0 * w * w - g2) * w - g3
}

fn polish(g2: f64, g3: f64, mut w: f64) -> f64 {
    for _ in 0..3 {
        let r = cubic(g2, g3, w);
        let d = 12.0 * w * w - g2;
        if r == 0.0 || d == 0.0 {
            break;
        }
        let next = w - r / d;
        if cubic(g2, g3, next).abs() < r.abs() {
            w = next;
        } else {
            break;
        }
    }
    w
}

/// Roots of `4w³ − g2·w − g3` and derived lattice data.
pub fn lattice_from_invariants(g2: f64, g3: f64) -> Result<LatticeData> {
    let delta = g2 * g2 * g2 - 27.0 * g3 * g3;
    if !(delta > 0.0) || !(g2 > 0.0) {
        return Err(Error::Unsupported(format!(
            "lattice with g2 = {g2}, g3 = {g3} has discriminant {delta}; only rectangular lattices (Δ > 0) are supported"
        )));
    }
    // Trigonometric form for a cubic with three real roots.
    let amp = 2.0 * (g2 / 12.0).sqrt();
    let arg = (3.0 * 3f64.sqrt() * g3 / g2.powf(1.5)).clamp(-1.0, 1.0);
    let theta = arg.acos() / 3.0;
    let mut roots =
        [0, 1, 2].map(|j| polish(g2, g3, amp * (theta - 2.0 * PI * j as f64 / 3.0).cos()));
    roots.sort_by(|a, b| b.total_cmp(a));
    let [e1, e2, e3] = roots;
    Ok(LatticeData {
        g2,
        g3,
        delta,
        e1,
        e2,
        e3,
        m: (e2 - e3) / (e1 - e3),
        scale: (e1 - e3).sqrt(),
    })
}

/// `℘(z)` on the lattice, or a pole marker at lattice points.
pub fn wp(z: CPoint, lat: &LatticeData) -> Result<Value<CPoint>> {
    Ok(wp_minus_e3(z, lat)?.map(|v| lat.e3 + v))
}

/// `℘(z) − e3 = (e1 − e3)/sn²`, free of the cancellation that forming `℘`
/// first would cause near the zeros of `℘ − e3`.
pub fn wp_minus_e3(z: CPoint, lat: &LatticeData) -> Result<Value<CPoint>> {
    let parts = jacobi_complex_parts(z * lat.scale, lat.m)?;
    let num_sq = parts.sn_num * parts.sn_num;
    let den_sq = parts.denom * parts.denom;
    // Both vanish only where sn itself has a pole, and there ℘ = e3.
    if num_sq.norm() == 0.0 && den_sq == 0.0 {
        return Ok(Value::Finite(CPoint::new(0.0, 0.0)));
    }
    // sn² below the threshold means z sits on a lattice point.
    if num_sq.norm() < POLE_THRESHOLD * den_sq {
        return Ok(Value::Pole);
    }
    Ok(Value::Finite((lat.e1 - lat.e3) * den_sq / num_sq))
}

/// Real and imaginary half-periods `ω = K(k²)/√(e1 − e3)`,
/// `ω′ = i·K(1 − k²)/√(e1 − e3)`.
pub fn wp_halfperiods(lat: &LatticeData) -> Result<PeriodPair> {
    Ok(PeriodPair {
        k: complete_k(lat.m)? / lat.scale,
        k_prime: complete_k_comp(lat.m)? / lat.scale,
    })
}
