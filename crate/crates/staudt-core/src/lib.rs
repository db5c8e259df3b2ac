//! Projective lines over small finite rings.
//!
//! This crate materializes the projective line `P(R²)` over a table-based
//! finite ring `R`, its distant graph and harmonic quadruples, the elementary
//! matrix groups `E₂(R) ⊆ GE₂(R) ⊆ GL₂(R)` with word certificates, and the
//! harmonicity preservers between two such lines. Preservers can be built
//! from Jordan homomorphisms (and from ring homomorphisms or
//! antihomomorphisms as special cases), classified exhaustively by a
//! propagating backtracking search, and matched back to Jordan data, which
//! verifies the von Staudt description of harmonicity preservers at desk
//! scale.
//!
//! Everything is exact: ring arithmetic is table lookup, matrix invertibility
//! is decided by bijectivity of the row action (no determinants, so
//! noncommutative rings are handled soundly), and all enumeration results are
//! deterministic regardless of thread count.

pub mod caps;
pub mod error;
pub mod group;
pub mod harmonic;
pub mod mat2;
pub mod preservers;
pub mod projline;
pub mod report;
pub mod ring;
pub mod rng;

pub use caps::Caps;
pub use error::{Error, Result};
pub use ring::{Elem, FiniteRing, Ring};
