//! Exact census of primitive square-tiled surfaces of genus two, broken down
//! by cylinder diagram.
//!
//! A square-tiled surface (origami) is encoded by a pair of permutations on
//! its squares: a right permutation and a top permutation. The principal
//! genus-two stratum H(1,1) admits exactly four cylinder diagrams, here
//! called A, B, C and D. This crate provides three independent routes to the
//! number of primitive n-square surfaces with each diagram:
//!
//! * closed-form counts built from Jordan totients, divisor sums and one
//!   Dirichlet-of-additive convolution term ([`formulas`]),
//! * enumeration of the unique parameter sets for each diagram, with gcd
//!   primitivity predicates ([`params`]),
//! * a brute-force sweep over all permutation pairs, classified through the
//!   monodromy-group machinery ([`origami`]).
//!
//! The [`verify`] module cross-checks the three routes against each other
//! and against the arithmetic identities the closed forms rely on.
//!
//! All counting arithmetic is exact: tables and counts are signed 128-bit
//! integers and any overflow is a hard error. Floating point appears only in
//! the asymptotic-density diagnostics.

pub mod arith;
pub mod formulas;
pub mod origami;
pub mod params;
pub mod verify;

pub use formulas::{CensusRow, H2Row, LimitDensities};
pub use origami::{Origami, Stratum};
pub use params::Diagram;
