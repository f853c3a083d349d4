//! A computational engine for finite and model gyrogroups.
//!
//! The crate certifies gyrogroup axioms and the classical identity suite on
//! Cayley tables, classifies subgyrogroups in the
//! normal-sufficient ⇒ strongly-L ⇒ L ⇒ subgyrogroup hierarchy, builds and
//! verifies coset quotients G/H, validates the Möbius disk and Einstein ball
//! models in floating point, and exhaustively searches small orders for an
//! L-subgyrogroup that is not strongly-L.
//!
//! Exhaustive scans run data-parallel under the default `parallel` feature
//! and fall back to sequential loops without it; results are identical either
//! way.

pub mod axioms;
pub mod exec;
pub mod fixtures;
pub mod mask;
pub mod models;
pub mod quotient;
pub mod search;
pub mod subgyro;
pub mod table;

pub use mask::SubsetMask;
pub use table::{GyroTable, Permutation, Side, TableFormat};
