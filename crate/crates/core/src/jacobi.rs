//! Jacobian elliptic functions `sn`, `cn`, `dn` at parameter `m = k²`.
//!
//! Real arguments go through the descending Landen (AGM) recursion after
//! reduction to `[0, K/2]`. Complex arguments are assembled from two real
//! evaluations, at `x` with parameter `m` and at `y` with the complementary
//! parameter `1 − m`, via the addition formula with Jacobi's imaginary
//! transformation.

use crate::error::{domain, Result};
use crate::hypergeom::complete_k;
use crate::numeric::{CPoint, Value, POLE_THRESHOLD};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiTriple {
    pub sn: f64,
    pub cn: f64,
    pub dn: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexTriple {
    pub sn: CPoint,
    pub cn: CPoint,
    pub dn: CPoint,
}

/// Numerators of `sn`, `cn`, `dn` over their shared real denominator.
///
/// Kept separate so callers can form `1/sn²` and similar without dividing by
/// a vanishing denominator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexParts {
    pub sn_num: CPoint,
    pub cn_num: CPoint,
    pub dn_num: CPoint,
    pub denom: f64,
}

impl ComplexParts {
    pub fn is_pole(&self) -> bool {
        self.denom.abs() < POLE_THRESHOLD
    }

    pub fn triple(&self) -> Value<ComplexTriple> {
        if self.is_pole() {
            return Value::Pole;
        }
        Value::Finite(ComplexTriple {
            sn: self.sn_num / self.denom,
            cn: self.cn_num / self.denom,
            dn: self.dn_num / self.denom,
        })
    }
}

/// `sn`, `cn`, `dn` of a real argument, `0 <= m < 1`.
pub fn jacobi_real(x: f64, m: f64) -> Result<JacobiTriple> {
    if !(0.0..1.0).contains(&m) {
        return Err(domain("m", m, "0 <= m < 1"));
    }
    if !x.is_finite() {
        return Err(domain("x", x, "finite"));
    }
    jacobi_real_closed(x, m)
}

/// As [`jacobi_real`] but also accepting the degenerate `m = 1`, where
/// `sn = tanh`, `cn = dn = sech`.
fn jacobi_real_closed(x: f64, m: f64) -> Result<JacobiTriple> {
    if m == 1.0 {
        let sech = 1.0 / x.cosh();
        return Ok(JacobiTriple {
            sn: x.tanh(),
            cn: sech,
            dn: sech,
        });
    }
    let k = complete_k(m)?;
    let sign = if x < 0.0 { -1.0 } else { 1.0 };
    let mut r = x.abs();
    let period = 4.0 * k;
    if r >= period {
        r -= period * (r / period).floor();
    }
    // sn(u + 2K) = −sn u, cn(u + 2K) = −cn u.
    let mut sn_sign = sign;
    let mut cn_sign = 1.0;
    if r >= 2.0 * k {
        r -= 2.0 * k;
        sn_sign = -sn_sign;
        cn_sign = -cn_sign;
    }
    // sn(2K − u) = sn u, cn(2K − u) = −cn u.
    if r > k {
        r = 2.0 * k - r;
        cn_sign = -cn_sign;
    }
    let t = if r > 0.5 * k {
        // Shift by the quarter period so cn keeps relative precision near K.
        let kc = (1.0 - m).sqrt();
        let s = landen(k - r, m);
        JacobiTriple {
            sn: s.cn / s.dn,
            cn: kc * s.sn / s.dn,
            dn: kc / s.dn,
        }
    } else {
        landen(r, m)
    };
    Ok(JacobiTriple {
        sn: sn_sign * t.sn,
        cn: cn_sign * t.cn,
        dn: t.dn,
    })
}

/// Descending Landen recursion; accurate for `0 <= u <= K/2`.
fn landen(u: f64, m: f64) -> JacobiTriple {
    let mut a = [0.0f64; 32];
    let mut c = [0.0f64; 32];
    a[0] = 1.0;
    c[0] = m.sqrt();
    let mut b = (1.0 - m).sqrt();
    let mut n = 0;
    while c[n].abs() > 1e-16 * a[n] && n + 1 < a.len() {
        a[n + 1] = 0.5 * (a[n] + b);
        c[n + 1] = 0.5 * (a[n] - b);
        b = (a[n] * b).sqrt();
        n += 1;
    }
    let mut phi = (1u64 << n) as f64 * a[n] * u;
    for j in (1..=n).rev() {
        phi = 0.5 * (phi + (c[j] / a[j] * phi.sin()).asin());
    }
    let sn = phi.sin();
    JacobiTriple {
        sn,
        cn: phi.cos(),
        dn: (1.0 - m * sn * sn).sqrt(),
    }
}

/// Numerator/denominator form of `sn`, `cn`, `dn` at `z = x + iy`.
pub fn jacobi_complex_parts(z: CPoint, m: f64) -> Result<ComplexParts> {
    if !(0.0..1.0).contains(&m) {
        return Err(domain("m", m, "0 <= m < 1"));
    }
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(domain("z", z.norm(), "finite"));
    }
    let JacobiTriple {
        sn: s,
        cn: c,
        dn: d,
    } = jacobi_real_closed(z.re, m)?;
    let JacobiTriple {
        sn: s1,
        cn: c1,
        dn: d1,
    } = jacobi_real_closed(z.im, 1.0 - m)?;
    Ok(ComplexParts {
        sn_num: CPoint::new(s * d1, c * d * s1 * c1),
        cn_num: CPoint::new(c * c1, -s * d * s1 * d1),
        dn_num: CPoint::new(d * c1 * d1, -m * s * c * s1),
        denom: c1 * c1 + m * s * s * s1 * s1,
    })
}

/// `sn`, `cn`, `dn` at a complex argument, or a pole marker where the
/// shared denominator vanishes.
pub fn jacobi_complex(z: CPoint, m: f64) -> Result<Value<ComplexTriple>> {
    Ok(jacobi_complex_parts(z, m)?.triple())
}
