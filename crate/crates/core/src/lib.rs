//! Exact enumeration of polygon edge gluings.
//!
//! Gluing edges of an `N`-gon pairwise (orientably) produces a surface of
//! genus `g` whose unglued edges form `L` polygonal boundaries of sizes
//! `n_1, ..., n_L`. This crate counts the inequivalent gluings that realise
//! a given boundary signature three independent ways:
//!
//! * [`formula::count_closed`] evaluates the closed-form sum over ordered
//!   compositions of the genus,
//! * [`recursion::count_recursive`] runs the boundary-cutting recursion with
//!   a memo table that can be persisted to disk,
//! * [`gluing::count_brute`] enumerates semi-Gaussian words exhaustively and
//!   classifies each glued surface.
//!
//! The [`hz`] module derives the Harer-Zagier numbers from the same
//! machinery, and [`series`] provides the exact truncated power series used
//! for the `tanh` representation and the generating-function identity.
//!
//! All arithmetic on counting paths is exact.

pub mod cli;
mod error;
pub mod exact;
pub mod exec;
pub mod formula;
pub mod gluing;
pub mod hz;
pub mod recursion;
pub mod series;
mod signature;
pub mod verify;

pub use error::{Error, Result};
pub use exact::{BigCount, Composition};
pub use exec::Execution;
pub use signature::SurfaceSignature;
