//! Net-based numerics in two halves.
//!
//! The first half (`lcspace`, `measure`, `bochner`) integrates vector-valued
//! functions into concrete locally convex spaces by driving nets of simple
//! functions until their seminorm defects fall below threshold.
//!
//! The second half (`opcalc`) is a finite-section calculus on Hilbert-space
//! operators: principal trace and determinant minors along subspace
//! filtrations, trace-class and determinant-class probes, and Fredholm
//! determinants evaluated by two independent routes.
//!
//! `netcore` supplies the shared machinery: directed index sets, nets,
//! numerical convergence probing, and dominated summation for nets of
//! sequences. `seq` holds closed-form scalar sequences whose tails can be
//! bounded rigorously; every tail correction in the crate goes through it.

pub mod bochner;
pub mod lcspace;
pub mod measure;
pub mod netcore;
pub mod opcalc;
pub mod seq;

pub use num_complex::Complex64;
