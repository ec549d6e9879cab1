//! Numerical laboratory for the noncommutative arithmetic–geometric mean
//! inequality: exact and Monte Carlo expectations of random matrix products,
//! inequality checkers, harmonic frames, Wishart-type ensembles,
//! incremental-gradient and Kaczmarz experiments, and the combinatorial
//! identities behind the harmonic-frame analysis.

pub mod acceptance;
pub mod combinatorics;
pub mod error;
pub mod expectations;
pub mod frames;
pub mod inequalities;
pub mod linalg;
pub mod randmat;
pub mod rng;
pub mod solvers;

pub use error::{AgmError, Result};
