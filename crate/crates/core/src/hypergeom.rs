//! Gauss hypergeometric function and the complete elliptic integral.
//!
//! `gauss_2f1` sums the power series directly for `x <= 0.75`. Above the
//! cutover the zero-balanced case `c = a + b` switches to the logarithmic
//! connection formula around `x = 1`:
//!
//! ```text
//! F(a,b;a+b;x) = Γ(a+b)/(Γ(a)Γ(b)) Σ (a)ₙ(b)ₙ/(n!)² [2ψ(n+1) − ψ(a+n) − ψ(b+n) − ln(1−x)] (1−x)ⁿ
//! ```
//!
//! Both `(1/4, 3/4; 1)` and `(1/2, 1/2; 1)` are zero-balanced.

use std::f64::consts::{FRAC_PI_2, PI};

use statrs::function::gamma::{digamma, gamma};

use crate::error::{domain, Error, Result};
use crate::numeric::sum_series;

/// Above this argument the zero-balanced family uses the connection formula.
pub const SERIES_CUTOVER: f64 = 0.75;
/// Families without a connection formula are summed directly up to here and
/// rejected beyond.
pub const SERIES_LIMIT: f64 = 0.95;

const SERIES_TOL: f64 = 1e-17;
const MAX_TERMS: usize = 5000;

/// Parameters `(a, b; c)` of `2F1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HyperParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl HyperParams {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && c.is_finite()) {
            return Err(Error::Usage(format!(
                "non-finite 2F1 parameters ({a}, {b}; {c})"
            )));
        }
        if is_non_positive_integer(c) {
            return Err(domain("c", c, "c not zero or a negative integer"));
        }
        Ok(HyperParams { a, b, c })
    }

    /// `(1/4, 3/4; 1)`, the signature-four base.
    pub const SIGNATURE_FOUR: HyperParams = HyperParams {
        a: 0.25,
        b: 0.75,
        c: 1.0,
    };
    /// `(1/2, 1/2; 1)`, the classical base.
    pub const CLASSICAL: HyperParams = HyperParams {
        a: 0.5,
        b: 0.5,
        c: 1.0,
    };
    /// `(1/4, 3/4; 1/2)`, the integrand of the incomplete integral.
    pub const INTEGRAND: HyperParams = HyperParams {
        a: 0.25,
        b: 0.75,
        c: 0.5,
    };

    fn zero_balanced(&self) -> bool {
        (self.c - self.a - self.b).abs() <= 1e-15 * self.c.abs().max(1.0)
    }

    fn terminates(&self) -> bool {
        is_non_positive_integer(self.a) || is_non_positive_integer(self.b)
    }
}

fn is_non_positive_integer(v: f64) -> bool {
    v <= 0.0 && v == v.round()
}

/// `2F1(a, b; c; x)` for `0 <= x < 1`.
pub fn gauss_2f1(p: HyperParams, x: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&x) {
        return Err(domain("x", x, "0 <= x < 1"));
    }
    evaluate(p, x, 1.0 - x)
}

/// `2F1(a, b; c; 1 − w)` for `0 < w <= 1`.
///
/// Callers that already hold `1 − x` in closed form (`λ²`, `y²`, …) should
/// use this: near `x = 1` the logarithmic term depends on `1 − x`, which
/// cannot be recovered accurately from a rounded `x`.
pub fn gauss_2f1_complement(p: HyperParams, w: f64) -> Result<f64> {
    if !(w > 0.0 && w <= 1.0) {
        return Err(domain("1 - x", w, "0 < 1 - x <= 1"));
    }
    evaluate(p, 1.0 - w, w)
}

fn evaluate(p: HyperParams, x: f64, w: f64) -> Result<f64> {
    let p = HyperParams::new(p.a, p.b, p.c)?;
    if x == 0.0 {
        return Ok(1.0);
    }
    if x <= SERIES_CUTOVER || p.terminates() {
        return power_series(p, x);
    }
    if p.zero_balanced() {
        return log_connection(p, w);
    }
    if x <= SERIES_LIMIT {
        return power_series(p, x);
    }
    Err(Error::Unsupported(format!(
        "2F1({}, {}; {}; {x}): only c = a + b is supported above x = {SERIES_LIMIT}",
        p.a, p.b, p.c
    )))
}

fn power_series(p: HyperParams, x: f64) -> Result<f64> {
    let mut t = 1.0;
    sum_series(
        |n| {
            if n > 0 {
                let k = (n - 1) as f64;
                t *= (p.a + k) * (p.b + k) / ((p.c + k) * (k + 1.0)) * x;
            }
            t
        },
        SERIES_TOL,
        MAX_TERMS,
    )
}

/// Zero-balanced connection formula in the complementary variable `w = 1 - x`.
fn log_connection(p: HyperParams, w: f64) -> Result<f64> {
    let prefactor = gamma(p.a + p.b) / (gamma(p.a) * gamma(p.b));
    let ln_w = w.ln();
    let mut coeff = 1.0;
    let mut psi_n1 = digamma(1.0);
    let mut psi_a = digamma(p.a);
    let mut psi_b = digamma(p.b);
    let s = sum_series(
        |n| {
            if n > 0 {
                let k = (n - 1) as f64;
                coeff *= (p.a + k) * (p.b + k) / ((k + 1.0) * (k + 1.0)) * w;
                psi_n1 += 1.0 / (k + 1.0);
                psi_a += 1.0 / (p.a + k);
                psi_b += 1.0 / (p.b + k);
            }
            coeff * (2.0 * psi_n1 - psi_a - psi_b - ln_w)
        },
        SERIES_TOL,
        MAX_TERMS,
    )?;
    Ok(prefactor * s)
}

/// Closed form of `F(1/4, 3/4; 1/2; u)`: with `sin ψ = √u`, the value is
/// `cos(ψ/2) / cos ψ`.
pub fn f14_34_12_closed(u: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&u) {
        return Err(domain("u", u, "0 <= u < 1"));
    }
    let cos_psi = (1.0 - u).sqrt();
    let cos_half = (0.5 * (1.0 + cos_psi)).sqrt();
    Ok(cos_half / cos_psi)
}

/// Arithmetic-geometric mean of two positive numbers.
pub fn agm(mut a: f64, mut b: f64) -> f64 {
    for _ in 0..64 {
        if (a - b).abs() <= 1e-15 * a {
            break;
        }
        let next = 0.5 * (a + b);
        b = (a * b).sqrt();
        a = next;
    }
    0.5 * (a + b)
}

/// Complete elliptic integral of the first kind in the parameter
/// convention `K(m) = ∫₀^{π/2} dθ / √(1 − m sin²θ)`, `m = k²`.
pub fn complete_k(m: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&m) {
        return Err(domain("m", m, "0 <= m < 1"));
    }
    if m == 0.0 {
        return Ok(FRAC_PI_2);
    }
    Ok(PI / (2.0 * agm(1.0, (1.0 - m).sqrt())))
}

/// `K(1 − mc)`, taking the complementary parameter directly so that
/// parameters close to 1 keep full precision.
pub fn complete_k_comp(mc: f64) -> Result<f64> {
    if !(mc > 0.0 && mc <= 1.0) {
        return Err(domain("1 - m", mc, "0 < 1 - m <= 1"));
    }
    if mc == 1.0 {
        return Ok(FRAC_PI_2);
    }
    Ok(PI / (2.0 * agm(1.0, mc.sqrt())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_argument_is_one() {
        for p in [
            HyperParams::SIGNATURE_FOUR,
            HyperParams::CLASSICAL,
            HyperParams::new(-2.5, 3.0, 7.25).unwrap(),
        ] {
            assert_eq!(gauss_2f1(p, 0.0).unwrap(), 1.0);
        }
    }

    #[test]
    fn domain_errors() {
        assert!(gauss_2f1(HyperParams::CLASSICAL, 1.0).is_err());
        assert!(gauss_2f1(HyperParams::CLASSICAL, -0.1).is_err());
        assert!(HyperParams::new(1.0, 1.0, -2.0).is_err());
        assert!(HyperParams::new(1.0, 1.0, 0.0).is_err());
        assert!(f14_34_12_closed(1.0).is_err());
        assert!(complete_k(1.0).is_err());
        assert!(complete_k(-0.5).is_err());
    }

    #[test]
    fn unbalanced_family_refuses_near_one() {
        let e = gauss_2f1(HyperParams::INTEGRAND, 0.97).unwrap_err();
        assert!(matches!(e, Error::Unsupported(_)));
    }

    #[test]
    fn digamma_special_values() {
        // ψ(1/4) = −γ − π/2 − 3 ln 2, ψ(3/4) = −γ + π/2 − 3 ln 2, ψ(1/2) = −γ − 2 ln 2.
        let g = 0.577_215_664_901_532_9_f64;
        let ln2 = std::f64::consts::LN_2;
        assert!((digamma(0.25) - (-g - FRAC_PI_2 - 3.0 * ln2)).abs() < 1e-14);
        assert!((digamma(0.75) - (-g + FRAC_PI_2 - 3.0 * ln2)).abs() < 1e-14);
        assert!((digamma(0.5) - (-g - 2.0 * ln2)).abs() < 1e-14);
    }

    #[test]
    fn terminating_series_is_polynomial() {
        // F(-2, b; c; x) = 1 - 2b/c x + b(b+1)/(c(c+1)) x².
        let p = HyperParams::new(-2.0, 1.5, 2.0).unwrap();
        let x = 0.9;
        let expected = 1.0 - 2.0 * 1.5 / 2.0 * x + 1.5 * 2.5 / (2.0 * 3.0) * x * x;
        assert!((gauss_2f1(p, x).unwrap() - expected).abs() < 1e-15);
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(f14_34_12_closed(0.0).unwrap(), 1.0);
        let psi = std::f64::consts::FRAC_PI_4;
        let expected = (psi / 2.0).cos() / psi.cos();
        assert!((f14_34_12_closed(0.5).unwrap() - expected).abs() < 1e-15);
    }

    #[test]
    fn series_and_connection_agree_across_cutover() {
        for p in [HyperParams::SIGNATURE_FOUR, HyperParams::CLASSICAL] {
            for j in 0..=10 {
                let x = 0.7 + 0.01 * j as f64;
                let s = power_series(p, x).unwrap();
                let c = log_connection(p, 1.0 - x).unwrap();
                assert!((s - c).abs() <= 1e-14 * s, "x={x}: {s} vs {c}");
            }
        }
    }

    #[test]
    fn k_at_zero() {
        assert_eq!(complete_k(0.0).unwrap(), FRAC_PI_2);
    }
}
