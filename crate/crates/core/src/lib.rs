//! Exact-arithmetic kernel for classical modular forms and their congruences.
//!
//! The crate is organised bottom-up:
//!
//! - [`qseries`]: truncated power series in `q` over exact rationals.
//! - [`arithfun`]: divisor sums, partitions, theta series and representation numbers,
//!   together with the classical product/sum identity checks.
//! - [`modforms`]: Bernoulli numbers, Eisenstein series in three normalisations,
//!   the discriminant `Δ`, the `j`-invariant, dimension formulas and the
//!   coefficient congruence checkers.
//! - [`tau`]: Ramanujan's `τ` computed by independent algorithms, plus the
//!   multiplicativity, Deligne-bound, mod-691 and non-vanishing sweeps.
//! - [`padic`]: fixed-precision `Z_p` arithmetic, power sums, regularised zeta values,
//!   Kummer congruences and the moment calculus of the Mazur measure.
//!
//! Every checker returns a [`CongruenceReport`]. No floating point is used except in
//! [`arithfun::hardy_ramanujan_estimate`], which is an asymptotic approximation by nature.

#![allow(clippy::manual_is_multiple_of)]

pub mod arithfun;
pub mod error;
pub mod modforms;
pub mod padic;
pub mod qseries;
pub mod report;
pub mod tau;

pub use error::{Error, Result};
pub use num_bigint::BigInt;
pub use qseries::{QSeries, Rational};
pub use report::{CongruenceReport, Modulus, ReportEntry, Valuation};

/// Kernel version echoed by front-ends.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
