//! The signature-four elliptic function `dn2` and its companions.
//!
//! For a modulus `κ ∈ (0, 1)` with complement `λ = √(1 − κ²)`:
//!
//! * `f(T) = ∫₀ᵀ F(1/4, 3/4; 1/2; κ² sin² t) dt` is increasing on the real
//!   line, `φ` is its inverse, and `sin ψ = κ sin φ`;
//! * `dn2 = cos ψ`, `s2 = sin φ`, so `dn2² + κ² s2² = 1`;
//! * globally `dn2(z) = 1 − (1 − λ) sn²(z √((1+λ)/2), k)` with
//!   `k² = (1 − λ)/(1 + λ)`, and equivalently
//!   `dn2 = 1 − (κ²/2)/(1/3 + ℘)` for the `℘` with invariants
//!   `g2 = 4/3 − κ²`, `g3 = 8/27 − κ²/3`.
//!
//! `dn2` has periods `2K`, `2iK′` and a double pole at `iK′`.

use std::f64::consts::{FRAC_PI_2, PI, SQRT_2};
use std::fmt;
use std::str::FromStr;

use crate::error::{domain, Error, Result};
use crate::hypergeom::{
    complete_k, complete_k_comp, f14_34_12_closed, gauss_2f1, gauss_2f1_complement, HyperParams,
};
use crate::jacobi::{jacobi_complex_parts, jacobi_real};
use crate::numeric::{
    integrate, integrate_with_offsets, try_newton_invert_in, CPoint, Singular, Value,
    POLE_THRESHOLD,
};
use crate::weierstrass::{lattice_from_invariants, wp_minus_e3, LatticeData};

pub use crate::weierstrass::PeriodPair;

/// Relative refinement tolerance for the smooth incomplete integral.
const FORWARD_TOL: f64 = 1e-14;
/// Relative refinement tolerance for the endpoint-singular period integrals.
const SINGULAR_TOL: f64 = 1e-13;
const PHI_TOL: f64 = 1e-14;

/// The modulus `κ` together with `λ = √(1 − κ²)` and the acute angles
/// `α = arccos κ`, `β = arccos λ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Modulus {
    kappa: f64,
    lambda: f64,
    alpha: f64,
    beta: f64,
}

impl Modulus {
    pub fn new(kappa: f64) -> Result<Self> {
        if !(kappa > 0.0 && kappa < 1.0) {
            return Err(domain("kappa", kappa, "0 < kappa < 1"));
        }
        let lambda = ((1.0 - kappa) * (1.0 + kappa)).sqrt();
        Ok(Modulus {
            kappa,
            lambda,
            alpha: lambda.atan2(kappa),
            beta: kappa.atan2(lambda),
        })
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// The modulus `λ`, whose complement is `κ`.
    pub fn complement(&self) -> Modulus {
        Modulus {
            kappa: self.lambda,
            lambda: self.kappa,
            alpha: self.beta,
            beta: self.alpha,
        }
    }

    /// `1 − λ = κ²/(1 + λ)`, free of cancellation for small `κ`.
    pub fn one_minus_lambda(&self) -> f64 {
        self.kappa * self.kappa / (1.0 + self.lambda)
    }

    /// Jacobian parameter `k² = (1 − λ)/(1 + λ)`.
    pub fn sn_parameter(&self) -> f64 {
        self.one_minus_lambda() / (1.0 + self.lambda)
    }

    /// Argument scale `√((1 + λ)/2)` of the Jacobian representation.
    pub fn sn_scale(&self) -> f64 {
        (0.5 * (1.0 + self.lambda)).sqrt()
    }
}

/// Evaluation route for `dn2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Route {
    /// Jacobian sine closed form.
    Sn,
    /// Coperiodic Weierstrass function.
    Wp,
    /// Inversion of the incomplete integral; real arguments only.
    Phi,
}

impl Route {
    pub const ALL: [Route; 3] = [Route::Sn, Route::Wp, Route::Phi];

    pub fn name(self) -> &'static str {
        match self {
            Route::Sn => "sn",
            Route::Wp => "wp",
            Route::Phi => "phi",
        }
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Route {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sn" => Ok(Route::Sn),
            "wp" => Ok(Route::Wp),
            "phi" => Ok(Route::Phi),
            other => Err(Error::Usage(format!("unknown route '{other}'"))),
        }
    }
}

/// Formula used for the half-periods.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PeriodMethod {
    /// `K = I(β)`, `K′ = √2·I(α)` by singular quadrature.
    Integral,
    /// Complete elliptic integrals at `(1−λ)/(1+λ)` and `2λ/(1+λ)`.
    Elliptic,
    /// `K = (π/2) F(1/4,3/4;1;κ²)`, `K′ = √2 (π/2) F(1/4,3/4;1;λ²)`.
    Hyper,
}

impl PeriodMethod {
    pub const ALL: [PeriodMethod; 3] = [
        PeriodMethod::Integral,
        PeriodMethod::Elliptic,
        PeriodMethod::Hyper,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PeriodMethod::Integral => "integral",
            PeriodMethod::Elliptic => "elliptic",
            PeriodMethod::Hyper => "hyper",
        }
    }
}

impl FromStr for PeriodMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "integral" => Ok(PeriodMethod::Integral),
            "elliptic" => Ok(PeriodMethod::Elliptic),
            "hyper" => Ok(PeriodMethod::Hyper),
            other => Err(Error::Usage(format!("unknown period method '{other}'"))),
        }
    }
}

/// Lattice of the coperiodic `℘`: `g2 = 4/3 − κ²`, `g3 = 8/27 − κ²/3`.
///
/// The cubic factors as `(w + 1/3)(4w² − 4w/3 − (1/3 − κ²))`, so the roots
/// `1/6 ± λ/2` and `−1/3` are filled in exactly. Recovering them from the
/// rounded invariants would cost digits whenever `e2` and `e3` are close.
pub fn invariants_of(modulus: &Modulus) -> Result<LatticeData> {
    let k2 = modulus.kappa * modulus.kappa;
    let (g2, g3) = (4.0 / 3.0 - k2, 8.0 / 27.0 - k2 / 3.0);
    // Validates Δ > 0 and supplies g2, g3, Δ.
    let numeric = lattice_from_invariants(g2, g3)?;
    let half_lambda = 0.5 * modulus.lambda;
    Ok(LatticeData {
        e1: 1.0 / 6.0 + half_lambda,
        e2: 1.0 / 6.0 - half_lambda,
        e3: -1.0 / 3.0,
        m: modulus.sn_parameter(),
        scale: modulus.sn_scale(),
        ..numeric
    })
}

/// `dn2(z)` by the chosen route.
pub fn dn2(z: CPoint, modulus: &Modulus, route: Route) -> Result<Value<CPoint>> {
    match route {
        Route::Sn => dn2_sn(z, modulus),
        Route::Wp => dn2_wp(z, modulus),
        Route::Phi => {
            if z.im != 0.0 {
                return Err(Error::Usage(format!(
                    "route phi is defined on the real axis only (got Im z = {})",
                    z.im
                )));
            }
            Ok(Value::Finite(CPoint::new(dn2_phi(z.re, modulus)?, 0.0)))
        }
    }
}

fn dn2_sn(z: CPoint, modulus: &Modulus) -> Result<Value<CPoint>> {
    let parts = jacobi_complex_parts(z * modulus.sn_scale(), modulus.sn_parameter())?;
    if parts.is_pole() {
        return Ok(Value::Pole);
    }
    let sn = parts.sn_num / parts.denom;
    Ok(Value::Finite(1.0 - modulus.one_minus_lambda() * sn * sn))
}

fn dn2_wp(z: CPoint, modulus: &Modulus) -> Result<Value<CPoint>> {
    let lat = invariants_of(modulus)?;
    match wp_minus_e3(z, &lat)? {
        // ℘ → ∞ sends dn2 to 1.
        Value::Pole => Ok(Value::Finite(CPoint::new(1.0, 0.0))),
        Value::Finite(p) => {
            // 1/3 + ℘ = (e3 + 1/3) + (℘ − e3).
            let shifted = (lat.e3 + 1.0 / 3.0) + p;
            if shifted.norm() < POLE_THRESHOLD {
                return Ok(Value::Pole);
            }
            Ok(Value::Finite(
                1.0 - 0.5 * modulus.kappa * modulus.kappa / shifted,
            ))
        }
    }
}

fn dn2_phi(x: f64, modulus: &Modulus) -> Result<f64> {
    let s = s2(x, modulus)?;
    Ok((1.0 - modulus.kappa * modulus.kappa * s * s).sqrt())
}

/// Real derivative of `dn2` through the Jacobian route:
/// `−2(1 − λ)·sn·cn·dn·√((1+λ)/2)`.
pub fn dn2_derivative(x: f64, modulus: &Modulus) -> Result<f64> {
    let scale = modulus.sn_scale();
    let t = jacobi_real(x * scale, modulus.sn_parameter())?;
    Ok(-2.0 * modulus.one_minus_lambda() * t.sn * t.cn * t.dn * scale)
}

/// Companion function `s2 = sin φ` on the real line.
pub fn s2(x: f64, modulus: &Modulus) -> Result<f64> {
    Ok(phi(x, modulus)?.sin())
}

fn integrand(kappa2: f64, t: f64) -> f64 {
    let s = t.sin();
    f14_34_12_closed(kappa2 * s * s).unwrap_or(f64::NAN)
}

fn forward_direct(t: f64, modulus: &Modulus) -> Result<f64> {
    if t == 0.0 {
        return Ok(0.0);
    }
    let k2 = modulus.kappa * modulus.kappa;
    let (lo, hi, sign) = if t > 0.0 {
        (0.0, t, 1.0)
    } else {
        (t, 0.0, -1.0)
    };
    let r = integrate(|s| integrand(k2, s), lo, hi, Singular::None, FORWARD_TOL)?;
    Ok(sign * r.value)
}

/// The incomplete integral `f(T) = ∫₀ᵀ F(1/4, 3/4; 1/2; κ² sin² t) dt`.
///
/// Arguments outside `[−π/2, π/2]` are reduced with `f(T + π) = f(T) + 2f(π/2)`,
/// which holds because the integrand is even and `π`-periodic.
pub fn f_forward(t: f64, modulus: &Modulus) -> Result<f64> {
    if !t.is_finite() {
        return Err(domain("T", t, "finite"));
    }
    if t.abs() <= FRAC_PI_2 {
        return forward_direct(t, modulus);
    }
    let n = (t / PI).round();
    let r = t - n * PI;
    let half = forward_direct(FRAC_PI_2, modulus)?;
    Ok(2.0 * n * half + forward_direct(r, modulus)?)
}

/// Inverse `φ` of [`f_forward`] on the real line.
pub fn phi(u: f64, modulus: &Modulus) -> Result<f64> {
    if !u.is_finite() {
        return Err(domain("u", u, "finite"));
    }
    if u == 0.0 {
        return Ok(0.0);
    }
    let half = forward_direct(FRAC_PI_2, modulus)?;
    let n = (u / (2.0 * half)).round();
    let r = u - 2.0 * n * half;
    let k2 = modulus.kappa * modulus.kappa;
    let guess = r * FRAC_PI_2 / half;
    let t = try_newton_invert_in(
        |t| forward_direct(t, modulus),
        |t| Ok(integrand(k2, t)),
        r,
        (-FRAC_PI_2, FRAC_PI_2),
        guess,
        PHI_TOL * r.abs().max(1.0),
    )?;
    Ok(n * PI + t)
}

/// `I(γ) = ∫₀^γ cos(t/2) / √(cos²t − cos²γ) dt` for an acute angle `γ`.
pub fn i_gamma(gamma: f64) -> Result<f64> {
    if !(gamma > 0.0 && gamma < FRAC_PI_2) {
        return Err(domain("gamma", gamma, "0 < gamma < pi/2"));
    }
    // cos²t − cos²γ = sin(γ − t)·sin(γ + t), with γ − t taken from the node offset.
    let r = integrate_with_offsets(
        |t, _, to_gamma| Some((0.5 * t).cos() / (to_gamma.sin() * (gamma + t).sin()).sqrt()),
        0.0,
        gamma,
        SINGULAR_TOL,
    )?;
    Ok(r.value)
}

/// Half-periods `(K, K′)` of `dn2` by the chosen method.
pub fn periods(modulus: &Modulus, method: PeriodMethod) -> Result<PeriodPair> {
    let lambda = modulus.lambda;
    match method {
        PeriodMethod::Integral => Ok(PeriodPair {
            k: i_gamma(modulus.beta)?,
            k_prime: SQRT_2 * i_gamma(modulus.alpha)?,
        }),
        PeriodMethod::Elliptic => {
            let factor = (2.0 / (1.0 + lambda)).sqrt();
            let m = modulus.sn_parameter();
            Ok(PeriodPair {
                k: factor * complete_k(m)?,
                // K(2λ/(1+λ)) = K(1 − m).
                k_prime: factor * complete_k_comp(m)?,
            })
        }
        PeriodMethod::Hyper => {
            let p = HyperParams::SIGNATURE_FOUR;
            let kappa2 = modulus.kappa * modulus.kappa;
            Ok(PeriodPair {
                k: FRAC_PI_2 * gauss_2f1(p, kappa2)?,
                // F(1/4,3/4;1;λ²) with 1 − λ² = κ² passed exactly.
                k_prime: SQRT_2 * FRAC_PI_2 * gauss_2f1_complement(p, kappa2)?,
            })
        }
    }
}

/// Quadrature-minus-closed-form residuals for the two cubic integrals with
/// `T = (t − a)(t − b)(t − c)`, `a > b > c`:
///
/// * `∫_b^a dt/√(−T) − (2/√(a−c))·K((a−b)/(a−c))`
/// * `∫_c^b dt/√T − (2/√(a−c))·K((b−c)/(a−c))`
pub fn greenhill_check(a: f64, b: f64, c: f64) -> Result<(f64, f64)> {
    if !(a > b && b > c) {
        return Err(Error::Usage(format!(
            "greenhill_check needs a > b > c, got ({a}, {b}, {c})"
        )));
    }
    let ac = a - c;
    let factor = 2.0 / ac.sqrt();
    let upper = integrate_with_offsets(
        |_, from_b, to_a| Some(1.0 / (to_a * from_b * (from_b + (b - c))).sqrt()),
        b,
        a,
        SINGULAR_TOL,
    )?
    .value;
    let lower = integrate_with_offsets(
        |_, from_c, to_b| Some(1.0 / ((to_b + (a - b)) * to_b * from_c).sqrt()),
        c,
        b,
        SINGULAR_TOL,
    )?
    .value;
    Ok((
        upper - factor * complete_k((a - b) / ac)?,
        lower - factor * complete_k_comp((a - b) / ac)?,
    ))
}

/// Point at arclength `s` along the counterclockwise perimeter walk of the
/// half-period rectangle, starting at the pole `iK′`:
/// `iK′ → 0 → K → K + iK′ → iK′`.
pub fn perimeter_point(p: &PeriodPair, s: f64) -> CPoint {
    let (k, kp) = (p.k, p.k_prime);
    if s <= kp {
        CPoint::new(0.0, kp - s)
    } else if s <= kp + k {
        CPoint::new(s - kp, 0.0)
    } else if s <= 2.0 * kp + k {
        CPoint::new(k, s - kp - k)
    } else {
        CPoint::new(k - (s - 2.0 * kp - k), kp)
    }
}

/// `n` evenly spaced points of the perimeter walk, keeping arclength
/// `exclusion` clear of the pole at both ends.
pub fn perimeter_walk(p: &PeriodPair, n: usize, exclusion: f64) -> Vec<CPoint> {
    let total = 2.0 * (p.k + p.k_prime);
    let span = total - 2.0 * exclusion;
    match n {
        0 => Vec::new(),
        1 => vec![perimeter_point(p, 0.5 * total)],
        _ => (0..n)
            .map(|j| perimeter_point(p, exclusion + span * j as f64 / (n - 1) as f64))
            .collect(),
    }
}

/// Locates the point `x + iK′` on the upper edge where `dn2` takes the real
/// value `level < −λ`, by bisection in `x ∈ (0, K)`.
pub fn locate_on_upper_edge(modulus: &Modulus, level: f64) -> Result<CPoint> {
    if !(level < -modulus.lambda) {
        return Err(domain("level", level, "level < -lambda"));
    }
    let p = periods(modulus, PeriodMethod::Elliptic)?;
    let at = |x: f64| -> Result<f64> {
        match dn2(CPoint::new(x, p.k_prime), modulus, Route::Sn)? {
            Value::Finite(v) => Ok(v.re),
            Value::Pole => Ok(f64::NEG_INFINITY),
        }
    };
    // dn2 increases from −∞ at iK′ to −λ at K + iK′ along this edge.
    let (mut lo, mut hi) = (0.0, p.k);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if at(mid)? < level {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(CPoint::new(0.5 * (lo + hi), p.k_prime))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(kappa: f64) -> Modulus {
        Modulus::new(kappa).unwrap()
    }

    #[test]
    fn modulus_invariants() {
        for kappa in [0.01, 0.3, 0.6, 0.99] {
            let md = m(kappa);
            assert!((md.kappa().powi(2) + md.lambda().powi(2) - 1.0).abs() <= 1e-15);
            assert!((md.alpha() + md.beta() - FRAC_PI_2).abs() <= 1e-14);
            assert!((md.alpha().cos() - kappa).abs() < 1e-15);
            assert!((md.beta().cos() - md.lambda()).abs() < 1e-15);
        }
        assert!(Modulus::new(0.0).is_err());
        assert!(Modulus::new(1.0).is_err());
        assert!(Modulus::new(f64::NAN).is_err());
    }

    #[test]
    fn invariants_examples() {
        let lat = invariants_of(&m(2.0 * SQRT_2 / 3.0)).unwrap();
        assert!(lat.g3.abs() <= 1e-15);

        let lat = invariants_of(&m(0.6)).unwrap();
        assert!((lat.e1 - lat.e3 - 0.9).abs() < 1e-14);
        assert!((lat.e2 - lat.e3 - 0.1).abs() < 1e-14);

        let md = m(1.0 / SQRT_2);
        let lat = invariants_of(&md).unwrap();
        let expected = (SQRT_2 - 1.0).powi(2);
        assert!((lat.m - expected).abs() < 1e-13);
        assert!((md.sn_parameter() - expected).abs() < 1e-15);
    }

    #[test]
    fn exact_roots_agree_with_cubic_solver() {
        for kappa in [0.05, 0.2, 0.6, 0.99] {
            let lat = invariants_of(&m(kappa)).unwrap();
            let num = lattice_from_invariants(lat.g2, lat.g3).unwrap();
            for (e, f) in [(lat.e1, num.e1), (lat.e2, num.e2), (lat.e3, num.e3)] {
                assert!((4.0 * e * e * e - lat.g2 * e - lat.g3).abs() <= 1e-12);
                assert!((e - f).abs() <= 1e-12, "{kappa}: {e} vs {f}");
            }
            assert!((lat.e1 + lat.e2 + lat.e3).abs() <= 1e-13);
        }
    }

    #[test]
    fn discriminant_and_parameter() {
        for kappa in [0.1, 0.4, 0.7, 0.95] {
            let md = m(kappa);
            let lat = invariants_of(&md).unwrap();
            let l = md.lambda();
            assert!((lat.delta - kappa.powi(4) * l * l).abs() <= 1e-13);
            assert!((lat.m - (1.0 - l) / (1.0 + l)).abs() <= 1e-13, "{kappa}");
        }
    }

    #[test]
    fn dn2_at_origin_all_routes() {
        let md = m(0.6);
        for r in Route::ALL {
            let v = dn2(CPoint::new(0.0, 0.0), &md, r)
                .unwrap()
                .expect_finite("origin");
            assert!((v - 1.0).norm() < 1e-15, "{r}");
        }
    }

    #[test]
    fn phi_route_rejects_complex() {
        let e = dn2(CPoint::new(0.1, 0.2), &m(0.5), Route::Phi).unwrap_err();
        assert!(matches!(e, Error::Usage(_)));
    }

    #[test]
    fn pole_at_imaginary_half_period() {
        let md = m(0.6);
        let p = periods(&md, PeriodMethod::Elliptic).unwrap();
        let z = CPoint::new(0.0, p.k_prime);
        assert!(dn2(z, &md, Route::Sn).unwrap().is_pole());
        assert!(dn2(z, &md, Route::Wp).unwrap().is_pole());
    }

    #[test]
    fn forward_reduction_consistent_with_direct() {
        let md = m(0.8);
        let half = f_forward(FRAC_PI_2, &md).unwrap();
        for t in [-2.0, 0.4, 1.3] {
            let shifted = f_forward(t + PI, &md).unwrap();
            let direct = integrate(|s| integrand(0.64, s), t, t + PI, Singular::None, 1e-14)
                .unwrap()
                .value;
            assert!((direct - 2.0 * half).abs() < 1e-13);
            assert!((shifted - f_forward(t, &md).unwrap() - 2.0 * half).abs() < 1e-12);
        }
    }

    #[test]
    fn phi_is_odd_and_periodic() {
        let md = m(0.45);
        let k = periods(&md, PeriodMethod::Elliptic).unwrap().k;
        let a = phi(0.9, &md).unwrap();
        assert!((phi(-0.9, &md).unwrap() + a).abs() < 1e-13);
        assert!((phi(0.9 + 2.0 * k, &md).unwrap() - a - PI).abs() < 1e-12);
    }

    #[test]
    fn i_gamma_small_angle_scaling() {
        // Near 0 the integrand behaves like 1/√(γ² − t²), so I(γ) → π/2.
        for g in [1e-2, 1e-3] {
            let v = i_gamma(g).unwrap();
            assert!((v - FRAC_PI_2).abs() < 10.0 * g, "{g}: {v}");
        }
        assert!(i_gamma(0.0).is_err());
        assert!(i_gamma(FRAC_PI_2).is_err());
    }

    #[test]
    fn greenhill_rejects_unordered_roots() {
        assert!(greenhill_check(0.0, 1.0, 2.0).is_err());
    }

    #[test]
    fn perimeter_walk_endpoints() {
        let p = PeriodPair {
            k: 2.0,
            k_prime: 1.0,
        };
        let w = perimeter_walk(&p, 5, 0.0);
        assert_eq!(w[0], CPoint::new(0.0, 1.0));
        assert_eq!(w[2], CPoint::new(2.0, 0.0));
        assert_eq!(w[4], CPoint::new(0.0, 1.0));
    }

    #[test]
    fn minus_one_on_upper_edge() {
        let md = m(0.6);
        let w = locate_on_upper_edge(&md, -1.0).unwrap();
        let v = dn2(w, &md, Route::Sn).unwrap().expect_finite("w");
        assert!((v.re + 1.0).abs() < 1e-10 && v.im.abs() < 1e-10);
        assert!(locate_on_upper_edge(&md, -0.5).is_err());
    }
}
