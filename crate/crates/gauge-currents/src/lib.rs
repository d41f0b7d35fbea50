//! Exact computer algebra for gauge current algebras on the circle and the
//! 3-torus: the central and abelian extension cocycles, matrix-valued Fourier
//! forms, an infinite-dimensional Clifford algebra with its Fock
//! representations, supersymmetric charge families, and a mechanical
//! verification suite for the algebraic identities tying them together.
//!
//! Everything is computed over `Q(i, sqrt2, sqrt3)` extended by a formal
//! invertible symbol `pi`; there are no floating-point numbers anywhere.
//!
//! The `examples/` directory has one runnable example per major capability;
//! the `verify` binary runs the identity suites from a JSON config and emits
//! a machine-readable report.

pub mod algebra;
pub mod apoly;
pub mod lie;
pub mod linalg;
pub mod mode;
pub mod cocycle;
pub mod forms;
pub mod scalar;
