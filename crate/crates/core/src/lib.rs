//! Workbench for generalized covering radii and generalized Hamming weights of
//! binary double-error-correcting BCH codes.
//!
//! The crate is organized bottom-up:
//!
//! * [`gf2m`] — exact arithmetic in GF(2^m) (polynomial basis), trace, cube
//!   tests, Artin–Schreier and quadratic solving, discrete-log tables.
//! * [`bitlin`] — GF(2) linear algebra over packed bit vectors: RREF, rank,
//!   span membership and span enumeration.
//! * [`codes`] — binary linear codes: minimum distance, generalized Hamming
//!   weights, tiny-code classification up to permutation equivalence.
//! * [`bch`] — the double-error-correcting BCH family: syndrome columns
//!   (x, x³) over GF(2^m), binary parity-check expansion, syndromes.
//! * [`cover`] — the exact covering engine: minimum covering sets, exact
//!   generalized covering radii with and without symmetry reduction,
//!   exhaustive no-cover certificates, and arithmetic bound reports.
//! * [`construct`] — the explicit "2k+1 columns" covering construction and
//!   the exact solution counter behind it.
//! * [`charsum`] — exact character sums over GF(2^m) (multiplicative order-3
//!   and additive), Weil/Cochrane-type bound checks, and the polynomial
//!   identity verification suite.

pub mod bch;
pub mod bitlin;
pub mod charsum;
pub mod codes;
pub mod construct;
pub mod cover;
pub mod gf2m;

pub(crate) mod util;
