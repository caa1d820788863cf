//! Models of computation as dynamical systems.
//!
//! The crate connects five pictures of one computation and checks the
//! connections exactly:
//!
//! - [`tm`]: Turing machines as step maps on (state, tape) configurations;
//! - [`gshift`]: generalized shifts on two-sided binary words, with a
//!   compiler from machines whose shift is conjugate to the step map;
//! - [`cantor`]: the square Cantor set with exact rational coordinates,
//!   where bijective shifts become volume-preserving piecewise affine maps;
//! - [`bordism`]: thickened machine graphs whose reaching function runs a
//!   whole computation in one sweep, with cycle-rank and path-length
//!   complexity measures;
//! - [`murec`]: the partial recursive calculus with an interpreter, a
//!   register flowchart compiler and a single-tape machine backend.
//!
//! [`hamdemo`] adds a numeric check that a vector field lifts to a
//! Hamiltonian system fixing the zero section. [`corpus`] holds the shared
//! reference machines and programs, [`verify`] the seeded verification
//! suites, and [`cli`] the command-line entry points.

pub mod bordism;
pub mod cantor;
pub mod cli;
pub mod corpus;
pub mod gshift;
pub mod hamdemo;
pub mod murec;
pub mod tm;
pub mod verify;
