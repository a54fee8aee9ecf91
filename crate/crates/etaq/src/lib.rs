//! Truncated q-series arithmetic and congruence verification for eta
//! quotients whose coefficients vanish identically modulo 4, 9 and 25.
//!
//! Module layout:
//! - [`ring`], [`series`]: the three coefficient rings and dense truncated
//!   series arithmetic (the universal value type).
//! - [`eta`], [`jsymbol`], [`theta`]: expansion of eta quotients,
//!   triple-product symbols, the hexagonal-lattice theta function, and the
//!   Gaussian-integer Hecke theta families.
//! - [`verify`]: the identity/congruence registry and the three
//!   infinite-family theorem checkers (two mod 4, one mod 9).
//! - [`arith`], [`hecke`], [`oracles`]: factorization, two-square and
//!   x^2+5y^2 representations, prime-power recurrences, and the closed-form
//!   mod-25 vanishing predicates cross-validated against series expansion.
//! - [`scan`]: the quintuple scans over candidate eta quotients and the
//!   table reproduction (CSV + JSON digests).
//! - [`combinatorics`]: partition-theoretic consequences (parity of
//!   representation counts, bipartition congruences, dissection identities).

pub mod arith;
pub mod combinatorics;
pub mod error;
pub mod eta;
pub mod hecke;
pub mod jsymbol;
pub mod oracles;
pub mod report;
pub mod ring;
pub mod scan;
pub mod series;
pub mod theta;
pub mod verify;

mod par;

pub use error::Error;
pub use par::configure_threads;
pub use eta::EtaQuotient;
pub use report::{VerifyReport, VerifyStatus};
pub use ring::{CoefficientRing, GaussInt, Value};
pub use series::{linear_combine, DissectionResult, TruncatedSeries};
