//! Exact computer algebra for quasi-Poisson Lie theory.
//!
//! Everything in this crate is computed over arbitrary-precision rationals:
//! there is no floating point anywhere, and every check either proves an
//! identity as an exact polynomial statement or evaluates it at exact
//! rational sample points of a constrained group.
//!
//! The layers, bottom to top:
//!
//! - [`rational`], [`poly`], [`multivector`] — sparse multivariate
//!   polynomials and the graded calculus of polyvector fields and forms
//!   (wedge, Schouten bracket, interior product, de Rham differential).
//! - [`lie`] — finite-dimensional Lie algebras given by structure constants,
//!   invariant pairings, the Casimir element `t` and the Cartan trivector φ.
//! - [`manin`] — Manin quadruples, the equivalence with Lie g-quasi-bialgebras
//!   in both directions, and the parabolic sl(N) family.
//! - [`group`] — block-unipotent matrix group models, the extended action ρ̂,
//!   the quasi-Poisson bivector and the group-level identities.
//! - [`fusion`] — algebraic quasi-Poisson spaces and (internal) fusion.
//! - [`moment`] — the twisted differentials d±, Lie algebroid brackets on
//!   1-forms, and moment-map verification.
//! - [`moduli`] — surface moduli spaces over SL(n): disks, gluings, the
//!   annulus and triangle checks.
//! - [`report`], [`jsonio`] — check reports and the JSON input schemas used
//!   by the `qp` command-line tool.

pub mod rational;
pub mod poly;
pub mod multivector;
pub mod linalg;
pub mod jet;
pub mod lie;
pub mod manin;
pub mod group;
pub mod fusion;
pub mod moment;
pub mod sample;
pub mod moduli;
pub mod report;
pub mod jsonio;

mod book;

pub use rational::Rat;
pub use poly::{Coords, Poly};
pub use multivector::{PolyForm, PolyVectorField};

use thiserror::Error;

/// Errors shared by the whole crate. Invalid inputs are reported here;
/// *failing identities* are never errors, they are `Fail` entries in a
/// [`report::CheckReport`].
#[derive(Debug, Error)]
pub enum Error {
    #[error("coordinate lists differ: {0}")]
    CoordMismatch(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("degenerate pairing: {0}")]
    DegeneratePairing(String),
    #[error("acting algebras do not match: {0}")]
    AlgebraMismatch(String),
    #[error("gauss decomposition undefined: singular trailing block minor {0}")]
    DecompositionUndefined(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
