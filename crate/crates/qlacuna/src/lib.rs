//! Exact arithmetic for lacunary q-binomial sums and their cyclotomic
//! divisors, with machine-checked congruence certificates.
//!
//! The crate constructs lacunary sums of Gaussian binomial coefficients,
//! computes the cyclotomic products guaranteed to divide them, and
//! verifies the divisibility together with the Lucas-type,
//! Wolstenholme–Ljunggren-type and unit q-congruences satisfied by the
//! normalized T- and S-sums — all over `Z[q]`, emitting explicit
//! quotient/remainder certificates. The integer (`q = 1`) shadows of every
//! statement are verified on the side.
//!
//! Modules:
//! - [`polyring`]: dense `Z[q]` and `Z[q][z]` arithmetic with exact
//!   division and reduction modulo monic polynomials.
//! - [`cyclotomic`]: `Phi_d`, cyclotomic valuations and factorizations.
//! - [`qcombo`]: q-integers, q-factorials, Gaussian binomials,
//!   q-Pochhammer products.
//! - [`lacunary`]: the lacunary sums, their divisors, and verification.
//! - [`congruence`]: normalized T/S-sums and the cross-multiplied
//!   congruence checks.
//! - [`classical`]: the integer-side valuations and bounds.
//! - [`sweep`]: parameter-sweep orchestration behind the CLI.

pub mod certificate;
pub mod classical;
pub mod congruence;
pub mod cyclotomic;
pub mod error;
pub mod lacunary;
pub mod polyring;
pub mod qcombo;
pub mod sweep;

mod util;

pub use certificate::{Certificate, Flag, Witness};
pub use error::{Error, Result};
pub use polyring::{BiPoly, IntPoly, ZMode};
