//! Independent reference computations shared by the integration tests.
//!
//! None of these go through the library's own evaluation paths.

#![allow(dead_code)]

use num::bigint::BigInt;
use num::Zero;

/// `2F1(A/4, B/4; C/4; p/q)` summed term by term in fixed-point big-integer
/// arithmetic with `digits` decimal places, then rounded once to `f64`.
pub fn series_oracle(a4: i64, b4: i64, c4: i64, p: i64, q: i64, digits: u32) -> f64 {
    let scale = BigInt::from(10).pow(digits);
    let mut term = scale.clone();
    let mut sum = BigInt::zero();
    let mut n: i64 = 0;
    while !term.is_zero() {
        sum += &term;
        // t_{n+1} = t_n (a+n)(b+n)/((c+n)(n+1)) · p/q, with quarter parameters.
        let num = BigInt::from(a4 + 4 * n) * BigInt::from(b4 + 4 * n) * BigInt::from(p);
        let den =
            BigInt::from(4) * BigInt::from(c4 + 4 * n) * BigInt::from(n + 1) * BigInt::from(q);
        term = term * num / den;
        n += 1;
        assert!(n < 20_000, "oracle series did not terminate");
    }
    fixed_to_f64(&sum, digits)
}

fn fixed_to_f64(v: &BigInt, digits: u32) -> f64 {
    let s = v.to_string();
    let (neg, s) = match s.strip_prefix('-') {
        Some(rest) => (true, rest.to_string()),
        None => (false, s),
    };
    let d = digits as usize;
    let padded = if s.len() <= d {
        format!("{}{}", "0".repeat(d + 1 - s.len()), s)
    } else {
        s
    };
    let (int, frac) = padded.split_at(padded.len() - d);
    let out: f64 = format!("{int}.{frac}").parse().unwrap();
    if neg {
        -out
    } else {
        out
    }
}

/// Classical fourth-order Runge-Kutta for `y' = f(y)`, `n` steps over `[0, t]`.
pub fn rk4<const N: usize>(
    f: impl Fn(&[f64; N]) -> [f64; N],
    y0: [f64; N],
    t: f64,
    n: usize,
) -> [f64; N] {
    let h = t / n as f64;
    let mut y = y0;
    let axpy = |y: &[f64; N], k: &[f64; N], s: f64| {
        let mut out = *y;
        for i in 0..N {
            out[i] += s * k[i];
        }
        out
    };
    for _ in 0..n {
        let k1 = f(&y);
        let k2 = f(&axpy(&y, &k1, 0.5 * h));
        let k3 = f(&axpy(&y, &k2, 0.5 * h));
        let k4 = f(&axpy(&y, &k3, h));
        for i in 0..N {
            y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
    }
    y
}

/// Composite Gauss-Legendre (5 points per panel) for smooth integrands.
pub fn gauss_legendre(f: impl Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
    const X: [f64; 5] = [
        0.0,
        0.538_469_310_105_683_1,
        -0.538_469_310_105_683_1,
        0.906_179_845_938_664,
        -0.906_179_845_938_664,
    ];
    const W: [f64; 5] = [
        0.568_888_888_888_888_9,
        0.478_628_670_499_366_5,
        0.478_628_670_499_366_5,
        0.236_926_885_056_189_1,
        0.236_926_885_056_189_1,
    ];
    let h = (b - a) / panels as f64;
    let mut total = 0.0;
    for p in 0..panels {
        let mid = a + (p as f64 + 0.5) * h;
        let s: f64 = X.iter().zip(W).map(|(x, w)| w * f(mid + 0.5 * h * x)).sum();
        total += 0.5 * h * s;
    }
    total
}
