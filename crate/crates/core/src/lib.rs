//! Exact verification engine for braidings, quadratic algebras and differential
//! calculi on quantum irreducible flag manifolds.

pub mod braiding;
pub mod error;
pub mod hkcalc;
pub mod kahlercert;
pub mod quantalg;
pub mod rootdata;
pub mod runner;
pub mod scalars;
pub mod uqrep;

pub use error::{Error, Result};
