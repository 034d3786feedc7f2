//! Shen's signature-four elliptic function `dn2`.
//!
//! The function is evaluated by three independent routes (Jacobian `sn`,
//! Weierstrass `℘` and direct inversion of the incomplete hypergeometric
//! integral), its half-periods by three independent formulas, and the
//! surrounding hypergeometric identities are exposed as residual checks.
//!
//! Module map:
//!
//! * [`numeric`]: complex alias, tanh-sinh quadrature, safeguarded Newton,
//!   series summation.
//! * [`hypergeom`]: Gauss `2F1`, the closed form of `F(1/4,3/4;1/2;u)`,
//!   complete elliptic integral `K(m)`.
//! * [`jacobi`]: `sn`, `cn`, `dn` for real and complex arguments.
//! * [`weierstrass`]: lattice data from invariants and `℘` via `sn`.
//! * [`shen`]: the modulus, `dn2`, `s2`, `φ` and the half-periods.
//! * [`identities`]: residual reports for the hypergeometric identities and
//!   period relations.

pub mod error;
pub mod hypergeom;
pub mod identities;
pub mod jacobi;
pub mod numeric;
pub mod shen;
pub mod weierstrass;

pub use error::{Error, Result};
pub use numeric::{CPoint, QuadResult, Value};
pub use shen::{Modulus, PeriodMethod, PeriodPair, Route};
pub use weierstrass::LatticeData;
