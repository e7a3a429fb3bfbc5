//! Exact-arithmetic toolkit for Kloosterman sums over `F_{p^m}` and the
//! binomial p-ary functions attached to them.
//!
//! The crate computes, with no floating point anywhere:
//!
//! - Kloosterman sums `K_q(a) = Σ_x ζ^{Tr(x^{q-2} + ax)}` as exact elements
//!   of `Z[ζ_p]` ([`cyclotomic`]), via trace histograms over `F_{p^m}`
//!   ([`fields`], [`kloosterman`]);
//! - π-adic expansions in the ramified extension `Z_p[π]/(π^{p-1} + p)`,
//!   including the expansion of ζ itself and of the special values
//!   `1 - 2/(ζ^b + ζ^{-b})` ([`padic`]);
//! - the same Kloosterman digits three independent ways: exponent counts,
//!   closed-form trace formulas, and a Gauss-sum reconstruction through
//!   Stickelberger's congruence ([`kloosterman`]);
//! - exhaustive special-value searches with staged trace filters, the
//!   rescaling census, and the exact subfield algebra that rules out
//!   solutions in `F_{p^2}` ([`special`]);
//! - exact Walsh spectra and regular-bentness tests for the binomial
//!   functions `f_{a,b,t}`, scanned against the Kloosterman criterion
//!   ([`bent`]).
//!
//! Every runnable capability has an example under `examples/`; the `kseeker`
//! binary exposes the same operations as subcommands, and
//! `kseeker verify-paper` (or `cargo test`) runs the built-in verification
//! suite end to end.

pub mod bent;
pub mod cli;
pub mod cyclotomic;
pub mod fields;
pub mod kloosterman;
pub mod padic;
pub mod special;
pub mod verify;

mod error;

pub use error::{Error, Result};
