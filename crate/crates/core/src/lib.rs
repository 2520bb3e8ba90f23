//! Exact arithmetic for the Kummer theory of dihedral polynomial families.
//!
//! Brumer's quintic family, the generic cubic `X^3 + bX + a` and a septic
//! family are each attached to a pair of isogenous elliptic curves over Q.
//! The weak Mordell-Weil quotient `E(Q) / phi*(E*(Q))` then indexes the
//! splitting fields of the specialised polynomials. Everything in this crate
//! is exact; the only approximate computation is the root finder behind
//! [`classify::reducibility_oracle`], whose answers are confirmed by exact
//! polynomial division.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod classify;
pub mod cubic;
pub mod curves;
pub mod diagram;
mod error;
pub mod exact;
pub mod isogeny;
pub mod quintic;
pub mod septic;

pub use error::{Error, Result};
pub use exact::{Field, QuadExt, RatFunc, Rational, UniPoly};
