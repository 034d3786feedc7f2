//! Numerical kernel: complex values, double-exponential quadrature,
//! safeguarded Newton inversion and series summation.
//!
//! Everything here is a pure function of its inputs.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// A point of the complex plane, `re + i·im`.
pub type CPoint = Complex64;

/// Magnitude below which a denominator is treated as vanishing and the
/// evaluation is reported as a pole.
pub const POLE_THRESHOLD: f64 = 1e-13;

/// Result of evaluating a meromorphic function: either a finite value or a
/// pole marker. Poles are never reported as large numbers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Value<T> {
    Finite(T),
    Pole,
}

impl<T: Copy> Value<T> {
    pub fn finite(self) -> Option<T> {
        match self {
            Value::Finite(v) => Some(v),
            Value::Pole => None,
        }
    }

    pub fn is_pole(&self) -> bool {
        matches!(self, Value::Pole)
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Value<U> {
        match self {
            Value::Finite(v) => Value::Finite(f(v)),
            Value::Pole => Value::Pole,
        }
    }

    /// Unwraps a finite value, panicking on a pole.
    #[track_caller]
    pub fn expect_finite(self, msg: &str) -> T {
        match self {
            Value::Finite(v) => v,
            Value::Pole => panic!("{msg}: unexpected pole"),
        }
    }
}

/// Outcome of a quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    /// Absolute difference between the last two refinement levels.
    pub err_estimate: f64,
    pub evaluations: usize,
}

/// Which endpoints of the interval carry an integrable singularity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Singular {
    #[default]
    None,
    Left,
    Right,
    Both,
}

impl Singular {
    pub fn from_flags(left: bool, right: bool) -> Self {
        match (left, right) {
            (false, false) => Singular::None,
            (true, false) => Singular::Left,
            (false, true) => Singular::Right,
            (true, true) => Singular::Both,
        }
    }

    fn left(self) -> bool {
        matches!(self, Singular::Left | Singular::Both)
    }

    fn right(self) -> bool {
        matches!(self, Singular::Right | Singular::Both)
    }
}

const MIN_LEVEL: usize = 3;
const MAX_LEVEL: usize = 12;

/// Tanh-sinh quadrature of `f` over `[a, b]`.
///
/// Nodes are never placed on the endpoints themselves. A node that rounds
/// onto a flagged singular endpoint is dropped; on an unflagged endpoint it
/// is evaluated normally.
pub fn integrate<F>(f: F, a: f64, b: f64, singular: Singular, tol: f64) -> Result<QuadResult>
where
    F: Fn(f64) -> f64,
{
    integrate_with_offsets(
        |x, from_a, to_b| {
            if (from_a == 0.0 || x == a) && singular.left() {
                return None;
            }
            if (to_b == 0.0 || x == b) && singular.right() {
                return None;
            }
            Some(f(x))
        },
        a,
        b,
        tol,
    )
}

/// Tanh-sinh quadrature for integrands that need the exact distance to
/// each endpoint.
///
/// `f(x, x - a, b - x)` receives both offsets computed directly from the
/// transformation rather than by subtraction, so factors such as
/// `1/sqrt(b - x)` keep full relative precision arbitrarily close to the
/// endpoint. Returning `None` drops the node.
pub fn integrate_with_offsets<F>(f: F, a: f64, b: f64, tol: f64) -> Result<QuadResult>
where
    F: Fn(f64, f64, f64) -> Option<f64>,
{
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(Error::Usage(format!(
            "integrate: need finite a < b, got [{a}, {b}]"
        )));
    }
    if !(tol > 0.0) {
        return Err(crate::error::domain("tol", tol, "tol > 0"));
    }

    let half = 0.5 * (b - a);
    let evaluations = std::cell::Cell::new(0usize);

    // Weighted contribution of the node pair at abscissa t >= 0.
    let node = |t: f64| -> Result<Option<f64>> {
        let u = FRAC_PI_2 * t.sinh();
        // 1 - tanh(u), computed without cancellation.
        let comp = 2.0 / ((2.0 * u).exp() + 1.0);
        let cosh_u = u.cosh();
        let w = FRAC_PI_2 * t.cosh() / (cosh_u * cosh_u);
        if !(w > 0.0) || !(comp * half > 0.0) {
            return Ok(None);
        }
        let near = half * comp;
        let far = half * (2.0 - comp);
        let eval = |x: f64, from_a: f64, to_b: f64| -> Result<f64> {
            match f(x, from_a, to_b) {
                None => Ok(0.0),
                Some(v) if v.is_finite() => {
                    evaluations.set(evaluations.get() + 1);
                    Ok(v)
                }
                Some(_) => Err(Error::NonFinite {
                    routine: "integrate",
                    at: x,
                }),
            }
        };
        let s = if t == 0.0 {
            eval(a + half, half, half)?
        } else {
            eval(b - near, far, near)? + eval(a + near, near, far)?
        };
        Ok(Some(w * s))
    };

    let mut prev = f64::NAN;
    let mut sum = 0.0;
    let mut h = 1.0;
    let mut estimate = 0.0;
    let mut delta = f64::INFINITY;
    for level in 0..=MAX_LEVEL {
        // Level 0 uses every integer multiple of h; finer levels add the odd
        // multiples only.
        let (start, stride) = if level == 0 { (0usize, 1usize) } else { (1, 2) };
        let mut k = start;
        while let Some(c) = node(k as f64 * h)? {
            sum += c;
            k += stride;
        }
        estimate = half * h * sum;
        if level > 0 {
            delta = (estimate - prev).abs();
            if level >= MIN_LEVEL && delta <= tol * estimate.abs().max(1.0) {
                return Ok(QuadResult {
                    value: estimate,
                    err_estimate: delta,
                    evaluations: evaluations.get().max(1),
                });
            }
        }
        prev = estimate;
        h *= 0.5;
    }
    Err(Error::NoConvergence {
        routine: "integrate",
        best: estimate,
        err_estimate: delta,
    })
}

const MAX_NEWTON_ITERATIONS: usize = 200;
const MAX_BRACKET_EXPANSIONS: usize = 100;

/// Solves `f(x) = target` for an increasing `f` with derivative `fprime`.
///
/// A bracket is grown outward from `x0`, then Newton steps are taken inside
/// it; any step that leaves the bracket is replaced by bisection.
pub fn newton_invert<F, D>(f: F, fprime: D, target: f64, x0: f64, tol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
    D: Fn(f64) -> f64,
{
    let g = |x: f64| -> Result<f64> {
        let v = f(x) - target;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFinite {
                routine: "newton_invert",
                at: x,
            })
        }
    };
    let g0 = g(x0)?;
    if g0.abs() <= tol {
        return Ok(x0);
    }
    let mut step = (0.1 * x0.abs()).max(0.1);
    let mut inner = x0;
    let mut bracket = None;
    for _ in 0..MAX_BRACKET_EXPANSIONS {
        let probe = if g0 < 0.0 { x0 + step } else { x0 - step };
        let gp = g(probe)?;
        if (gp >= 0.0) == (g0 < 0.0) {
            bracket = Some(if g0 < 0.0 {
                (inner, probe)
            } else {
                (probe, inner)
            });
            break;
        }
        inner = probe;
        step *= 2.0;
    }
    let (lo, hi) = bracket.ok_or(Error::NoBracket { target, x0 })?;
    let start = 0.5 * (lo + hi);
    try_newton_invert_in(
        |x| Ok(f(x)),
        |x| Ok(fprime(x)),
        target,
        (lo, hi),
        start,
        tol,
    )
}

/// Safeguarded Newton inside a known bracket `(lo, hi)` with
/// `f(lo) <= target <= f(hi)`, for fallible `f` and `fprime`.
pub fn try_newton_invert_in<F, D>(
    mut f: F,
    mut fprime: D,
    target: f64,
    (mut lo, mut hi): (f64, f64),
    x0: f64,
    tol: f64,
) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
    D: FnMut(f64) -> Result<f64>,
{
    if !(lo <= hi) {
        return Err(Error::Usage(format!(
            "newton: invalid bracket [{lo}, {hi}]"
        )));
    }
    let mut x = x0.clamp(lo, hi);
    let mut gx = f(x)? - target;
    for _ in 0..MAX_NEWTON_ITERATIONS {
        if !gx.is_finite() {
            return Err(Error::NonFinite {
                routine: "newton",
                at: x,
            });
        }
        if gx.abs() <= tol {
            return Ok(x);
        }
        if gx < 0.0 {
            lo = x;
        } else {
            hi = x;
        }
        if hi - lo <= 4.0 * f64::EPSILON * x.abs().max(f64::MIN_POSITIVE) {
            break;
        }
        let d = fprime(x)?;
        let newton = x - gx / d;
        x = if d > 0.0 && newton.is_finite() && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        gx = f(x)? - target;
    }
    Err(Error::NoConvergence {
        routine: "newton",
        best: x,
        err_estimate: gx.abs(),
    })
}

/// Sums `Σ term(n)` for `n = 0, 1, 2, ...`.
///
/// `term` is called once per index, in increasing order, so it may carry the
/// running product of a recurrence. The sum stops once the tail bound
/// `|t_n|·r/(1-r)`, with `r` the last term ratio, drops to `tol`.
pub fn sum_series<T>(mut term: T, tol: f64, max_terms: usize) -> Result<f64>
where
    T: FnMut(usize) -> f64,
{
    // Neumaier compensated summation.
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    let mut prev = f64::NAN;
    for n in 0..max_terms {
        let t = term(n);
        if !t.is_finite() {
            return Err(Error::NonFinite {
                routine: "sum_series",
                at: n as f64,
            });
        }
        let s = sum + t;
        if sum.abs() >= t.abs() {
            comp += (sum - s) + t;
        } else {
            comp += (t - s) + sum;
        }
        sum = s;
        if n > 0 {
            let tail = if t == 0.0 {
                0.0
            } else if prev == 0.0 {
                f64::INFINITY
            } else {
                let r = (t / prev).abs();
                if r < 1.0 {
                    t.abs() * r / (1.0 - r)
                } else {
                    f64::INFINITY
                }
            };
            if tail <= tol {
                return Ok(sum + comp);
            }
        }
        prev = t;
    }
    Err(Error::NoConvergence {
        routine: "sum_series",
        best: sum + comp,
        err_estimate: prev.abs(),
    })
}
