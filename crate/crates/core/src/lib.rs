//! Exact rational toolkit for optimistic multilevel (k-level) linear programs.
//!
//! Everything is computed over arbitrary-precision rationals: Fourier–Motzkin projection of
//! generalized polyhedra, piecewise-linear value functions, the bottom-up multilevel solver,
//! instance transformations and independent oracles used to cross-check the solver.

pub mod cli;
pub mod error;
pub mod exactnum;
pub mod genpoly;
pub mod io;
pub mod mlp;
pub mod oracle;
pub mod pwl;
pub mod transforms;

pub use error::{Error, Result};
pub use exactnum::{QMat, QVec, Rational};
pub use genpoly::{ExtReal, GenPoly, Ineq};
pub use mlp::{Level, MlpInstance, SolveReport, Status};
pub use pwl::{Piece, PwlFunc};
